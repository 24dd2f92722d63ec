//! The equations in context, each as a pair of derivation scripts.

use serde::Serialize;

use super::{canonical_equal, canonicalize, EquationError};
use crate::typing::elaborate_text;

#[derive(Clone, Copy, Debug)]
pub struct Law {
    pub name: &'static str,
    pub lhs: &'static str,
    pub rhs: &'static str,
}

const D3: &str = "(der (der (der (par-elim (par-elim (axiom z (par (par a a) a)) (axiom u (par a a)) (axiom w a) 0) (axiom x a) (axiom y a) 0) 0) 1) 2)";
const DER_BOX: &str = "(der (der (par-elim (axiom x (par a b)) (axiom p a) (axiom q b) 0) 0) 1)";
const CONTR_MAJ: &str = "(der (der (par-elim (axiom v (par c c)) (axiom p c) (axiom q c) 0) 0) 1)";
const ALG_BOX: &str = "(der (der (par-elim (axiom x (par a a)) (axiom p a) (axiom q a) 0) 0) 1)";

pub fn builtin_laws() -> Vec<(String, String, String)> {
    let fixed = [
        Law {
            name: "par-beta",
            lhs: "(par-elim (par-intro (sub-intro (axiom z a) (axiom w b)) 0 1) (bot-intro (axiom x (sub a b)) 0) (axiom y b) 0)",
            rhs: "(cut (sub-intro (axiom z a) (axiom w b)) (bot-intro (axiom x (sub a b)) 0) 0)",
        },
        Law {
            name: "par-eta",
            lhs: "(par-intro (par-elim (axiom z (par a b)) (axiom x a) (axiom y b) 0) 0 1)",
            rhs: "(axiom z (par a b))",
        },
        Law {
            name: "sub-beta",
            lhs: "(sub-elim (sub-intro (axiom x a) (bot-intro (axiom y b) 0)) (sub-intro (axiom z a) (axiom u b)) 0 1)",
            rhs: "(cut (sub-intro (axiom x a) (axiom u b)) (bot-intro (axiom y b) 0) 1)",
        },
        Law {
            name: "sub-eta",
            lhs: "(sub-elim (axiom z (sub a b)) (sub-intro (axiom x a) (axiom y b)) 0 1)",
            rhs: "(axiom z (sub a b))",
        },
        Law { name: "bot-beta", lhs: "(cut (bot-intro (axiom x a) 0) (bot-elim y) 1)", rhs: "(axiom x a)" },
        Law { name: "bot-eta", lhs: "(bot-intro (bot-elim x) 0)", rhs: "(axiom x bot)" },
        Law { name: "monoid-unit-left", lhs: "(contr (weak (der (axiom x a) 0) (? a) 0) 0 1)", rhs: "(der (axiom x a) 0)" },
        Law { name: "monoid-unit-right", lhs: "(contr (weak (der (axiom x a) 0) (? a) 0) 1 0)", rhs: "(der (axiom x a) 0)" },
        Law {
            name: "monoid-comm",
            lhs: "(contr (der (der (par-elim (axiom z (par a a)) (axiom x a) (axiom y a) 0) 0) 1) 0 1)",
            rhs: "(contr (der (der (par-elim (axiom z (par a a)) (axiom x a) (axiom y a) 0) 0) 1) 1 0)",
        },
        Law { name: "store-weakening", lhs: "(store (weak (axiom v b) (? c) 0) (der (axiom x c) 0) 1)", rhs: "(weak (axiom v b) (? c) 0)" },
        Law { name: "monad", lhs: "(store (axiom z (? a)) (der (axiom x a) 0) 0)", rhs: "(axiom z (? a))" },
        Law {
            name: "algebra-unit",
            lhs: "(store (axiom v (? c)) (weak (der (axiom x c) 0) (? a) 0) 0)",
            rhs: "(weak (store (axiom v (? c)) (der (axiom x c) 0) 0) (? a) 1)",
        },
    ];
    let mut out: Vec<(String, String, String)> = fixed
        .iter()
        .map(|l| (l.name.to_string(), l.lhs.to_string(), l.rhs.to_string()))
        .collect();
    out.push((
        "monoid-assoc".into(),
        format!("(contr (contr {D3} 0 1) 0 1)"),
        format!("(contr (contr {D3} 1 2) 0 1)"),
    ));
    out.push((
        "store-dereliction".into(),
        format!("(store (der (axiom v (par a b)) 0) {DER_BOX} 0)"),
        format!("(cut (axiom v (par a b)) {DER_BOX} 0)"),
    ));
    let boxed = "(der (axiom x c) 0)";
    out.push((
        "store-contraction".into(),
        format!("(store (contr {CONTR_MAJ} 0 1) {boxed} 0)"),
        format!("(contr (store (store {CONTR_MAJ} {boxed} 0) {boxed} 1) 0 1)"),
    ));
    out.push((
        "algebra-contraction".into(),
        format!("(store (axiom v (? (par a a))) (contr {ALG_BOX} 0 1) 0)"),
        format!("(contr (store (axiom v (? (par a a))) {ALG_BOX} 0) 0 1)"),
    ));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawResult {
    pub name: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
    /// Canonical forms of both sides, or the error, when the check fails.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub results: Vec<LawResult>,
}

impl LawReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }
}

fn check_law(lhs: &str, rhs: &str) -> Result<Option<String>, EquationError> {
    let (a, b) = (elaborate_text(lhs)?, elaborate_text(rhs)?);
    if a.conclusion.ante != b.conclusion.ante {
        return Err(EquationError::SequentMismatch(a.conclusion.to_string(), b.conclusion.to_string()));
    }
    let (ca, cb) = (canonicalize(&a)?, canonicalize(&b)?);
    Ok((!canonical_equal(&ca, &cb)).then(|| format!("{}  vs  {}", ca.sequent, cb.sequent)))
}

pub fn verify_builtin_laws() -> LawReport {
    let results = builtin_laws()
        .into_iter()
        .map(|(name, lhs, rhs)| {
            let counterexample = match check_law(&lhs, &rhs) {
                Ok(c) => c,
                Err(e) => Some(e.to_string()),
            };
            LawResult { name, pass: counterexample.is_none(), lhs, rhs, counterexample }
        })
        .collect();
    LawReport { results }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixteen_laws_hold() {
        let report = verify_builtin_laws();
        assert_eq!(report.results.len(), 16);
        for r in &report.results {
            assert!(r.pass, "{}: {:?}", r.name, r.counterexample);
        }
    }
}
