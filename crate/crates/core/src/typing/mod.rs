//! Formulas, decorated sequents, derivation elaboration and checking.

mod formula;
mod girard;
mod script;

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::context::{alpha_equal_labelled, validate, ComputationalContext, Mode, ValidationReport, Violation};
use crate::syntax::{parse_term, print_term, subst, CoName, Store, Term, VarName};

pub use formula::{parse_formula, Formula};
pub use girard::{girard_dual, girard_sequent, parse_coint, translate_text, CoFormula};
pub use script::{parse_script, parse_sexpr_formula, Rule, Script};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TypingError {
    #[error("RuleMismatch: {0}")]
    RuleMismatch(String),
    #[error("IndexOutOfRange: {rule} index {index} but only {len} slots")]
    IndexOutOfRange { rule: &'static str, index: usize, len: usize },
    #[error("FormulaMismatch: {0}")]
    FormulaMismatch(String),
    #[error("StorageShape: {0}")]
    StorageShape(String),
    #[error("UnsupportedConnective: {0}")]
    UnsupportedConnective(String),
    #[error("parse error {0}")]
    Parse(String),
}

/// `x:E |> P̄ | M̄:Γ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub var: VarName,
    pub ante: Formula,
    pub control: Vec<Term>,
    pub succ: Vec<(Term, Formula)>,
}

impl Sequent {
    /// Control area and succedent terms as one context over the antecedent variable.
    pub fn context(&self) -> ComputationalContext {
        ComputationalContext::new(self.var.clone(), self.flat())
    }

    /// Control terms followed by succedent terms; weakening targets index into this list.
    pub fn flat(&self) -> Vec<Term> {
        self.control.iter().cloned().chain(self.succ.iter().map(|p| p.0.clone())).collect()
    }

    pub fn succ_formulas(&self) -> Vec<Formula> {
        self.succ.iter().map(|p| p.1.clone()).collect()
    }

    fn items(&self) -> Vec<(Term, Option<Formula>)> {
        self.control
            .iter()
            .map(|t| (t.clone(), None))
            .chain(self.succ.iter().map(|(t, f)| (t.clone(), Some(f.clone()))))
            .collect()
    }

    /// Parse the display form, e.g. `x:bot |> postp(x) | connect_to(postp(x)):bot`.
    pub fn parse(src: &str) -> Result<Sequent, TypingError> {
        let (head, rest) = src.split_once("|>").ok_or_else(|| TypingError::Parse("missing `|>`".into()))?;
        let (var, ante) = head.split_once(':').ok_or_else(|| TypingError::Parse("missing `x:E` antecedent".into()))?;
        let (ctrl, succ) = rest.split_once('|').ok_or_else(|| TypingError::Parse("missing `|` separator".into()))?;
        let term = |s: &str| parse_term(s).map_err(|e| TypingError::Parse(e.to_string()));
        let control = split_top(ctrl).into_iter().map(term).collect::<Result<Vec<_>, _>>()?;
        let succ = split_top(succ)
            .into_iter()
            .map(|item| {
                let cut = item.rfind(':').ok_or_else(|| TypingError::Parse(format!("succedent item `{item}` lacks `:`")))?;
                Ok((term(&item[..cut])?, parse_formula(&item[cut + 1..])?))
            })
            .collect::<Result<Vec<_>, TypingError>>()?;
        Ok(Sequent { var: VarName::new(var.trim()), ante: parse_formula(ante.trim())?, control, succ })
    }
}

fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out.into_iter().filter(|p| !p.is_empty()).collect()
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![format!("{}:{} |>", self.var, self.ante)];
        if !self.control.is_empty() {
            parts.push(self.control.iter().map(print_term).collect::<Vec<_>>().join(", "));
        }
        parts.push("|".into());
        if !self.succ.is_empty() {
            parts.push(self.succ.iter().map(|(t, a)| format!("{}:{a}", print_term(t))).collect::<Vec<_>>().join(", "));
        }
        f.write_str(&parts.join(" "))
    }
}

impl Serialize for Sequent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Sequents agree up to renaming of binders, with control and succedent read as multisets.
pub fn sequent_alpha_equal(a: &Sequent, b: &Sequent) -> bool {
    a.ante == b.ante && alpha_equal_labelled(&a.var, &a.items(), &b.var, &b.items(), Mode::Exact)
}

/// A rule tree whose every node carries its elaborated conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: Rule,
    pub premises: Vec<Derivation>,
    pub conclusion: Sequent,
}

impl Derivation {
    pub fn script(&self) -> Script {
        Script::new(self.rule.clone(), self.premises.iter().map(Derivation::script).collect())
    }

    pub fn is_multiplicative(&self) -> bool {
        !self.rule.is_exponential() && self.premises.iter().all(Derivation::is_multiplicative)
    }

    /// Pre-order walk with node paths (premise indices from the root).
    pub fn nodes(&self) -> Vec<(Vec<usize>, &Derivation)> {
        let mut out = Vec::new();
        self.collect(&mut Vec::new(), &mut out);
        out
    }

    fn collect<'d>(&'d self, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, &'d Derivation)>) {
        out.push((path.clone(), self));
        for (i, p) in self.premises.iter().enumerate() {
            path.push(i);
            p.collect(path, out);
            path.pop();
        }
    }
}

struct Fresh {
    next: usize,
    avoid: BTreeSet<String>,
}

impl Fresh {
    fn name(&mut self) -> String {
        loop {
            let n = format!("k{}", self.next);
            self.next += 1;
            if !self.avoid.contains(&n) {
                return n;
            }
        }
    }
}

/// Compute every conclusion bottom-up. Fresh CoNames `'k0, 'k1, ...` are drawn in
/// post-order, so elaboration is deterministic.
pub fn elaborate(s: &Script) -> Result<Derivation, TypingError> {
    let mut fresh = Fresh { next: 0, avoid: s.names().into_iter().collect() };
    elab(s, &mut fresh)
}

fn elab(s: &Script, fresh: &mut Fresh) -> Result<Derivation, TypingError> {
    if s.premises.len() != s.rule.arity() {
        return Err(TypingError::RuleMismatch(format!(
            "{} takes {} premises, got {}",
            s.rule.name(),
            s.rule.arity(),
            s.premises.len()
        )));
    }
    let premises = s.premises.iter().map(|p| elab(p, fresh)).collect::<Result<Vec<_>, _>>()?;
    let concs: Vec<&Sequent> = premises.iter().map(|d| &d.conclusion).collect();
    let conclusion = conclude(&s.rule, &concs, fresh)?;
    Ok(Derivation { rule: s.rule.clone(), premises, conclusion })
}

fn slot(rule: &'static str, s: &Sequent, idx: Option<usize>, default_last: bool) -> Result<usize, TypingError> {
    let len = s.succ.len();
    let i = match idx {
        Some(i) => i,
        None if len == 0 => return Err(TypingError::IndexOutOfRange { rule, index: 0, len }),
        None if default_last => len - 1,
        None => 0,
    };
    if i >= len {
        return Err(TypingError::IndexOutOfRange { rule, index: i, len });
    }
    Ok(i)
}

fn mismatch(what: &str, want: &Formula, got: &Formula) -> TypingError {
    TypingError::FormulaMismatch(format!("{what}: expected {want}, found {got}"))
}

fn sub_terms(ts: &[Term], x: &VarName, m: &Term) -> Vec<Term> {
    ts.iter().map(|t| subst(t, x, m)).collect()
}

fn sub_succ(ts: &[(Term, Formula)], x: &VarName, m: &Term) -> Vec<(Term, Formula)> {
    ts.iter().map(|(t, f)| (subst(t, x, m), f.clone())).collect()
}

/// `succ` with slot `i` replaced by `items`.
fn splice(succ: &[(Term, Formula)], i: usize, items: Vec<(Term, Formula)>) -> Vec<(Term, Formula)> {
    succ[..i].iter().cloned().chain(items).chain(succ[i + 1..].iter().cloned()).collect()
}

fn pair(rule: &'static str, s: &Sequent, i: usize, j: usize) -> Result<(), TypingError> {
    for k in [i, j] {
        if k >= s.succ.len() {
            return Err(TypingError::IndexOutOfRange { rule, index: k, len: s.succ.len() });
        }
    }
    if i == j {
        return Err(TypingError::RuleMismatch(format!("{rule} needs two distinct slots, got {i} twice")));
    }
    Ok(())
}

/// Remove slots `i` and `j` and put `item` at the smaller position.
fn merge(succ: &[(Term, Formula)], i: usize, j: usize, item: (Term, Formula)) -> Vec<(Term, Formula)> {
    let mut out: Vec<(Term, Formula)> =
        succ.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, p)| p.clone()).collect();
    out.insert(i.min(j), item);
    out
}

fn co(name: &str, t: Term) -> Term {
    Term::CoApp(CoName::new(name), Box::new(t))
}

fn conclude(rule: &Rule, ps: &[&Sequent], fresh: &mut Fresh) -> Result<Sequent, TypingError> {
    let name = rule.name();
    Ok(match rule {
        Rule::Axiom { var, formula } => Sequent {
            var: var.clone(),
            ante: formula.clone(),
            control: vec![],
            succ: vec![(Term::Var(var.clone()), formula.clone())],
        },
        Rule::BotElim { var } => Sequent {
            var: var.clone(),
            ante: Formula::Bot,
            control: vec![Term::postp(Term::Var(var.clone()))],
            succ: vec![],
        },
        Rule::Cut { index } => {
            let (p, q) = (ps[0], ps[1]);
            let i = slot(name, p, *index, true)?;
            let (m, a) = &p.succ[i];
            if q.ante != *a {
                return Err(mismatch("cut formula", a, &q.ante));
            }
            let mut control = p.control.clone();
            control.extend(sub_terms(&q.control, &q.var, m));
            Sequent { var: p.var.clone(), ante: p.ante.clone(), control, succ: splice(&p.succ, i, sub_succ(&q.succ, &q.var, m)) }
        }
        Rule::BotIntro { target } | Rule::Weakening { target, .. } => {
            let p = ps[0];
            let flat = p.flat();
            let r = flat.get(*target).ok_or(TypingError::IndexOutOfRange { rule: name, index: *target, len: flat.len() })?;
            let f = match rule {
                Rule::Weakening { formula, .. } => {
                    if !matches!(formula, Formula::WhyNot(_)) {
                        return Err(TypingError::FormulaMismatch(format!("weakening introduces a ?-formula, got {formula}")));
                    }
                    formula.clone()
                }
                _ => Formula::Bot,
            };
            // The copy gets its own binders so names stay unique across the sequent.
            let map = r.binder_names().into_iter().map(|b| (b.0, fresh.name())).collect();
            let mut succ = p.succ.clone();
            succ.push((Term::connect(r.rename(&map)), f));
            Sequent { succ, ..p.clone() }
        }
        Rule::SubIntro { index } => {
            let (p, q) = (ps[0], ps[1]);
            let i = slot(name, p, *index, true)?;
            let (m, c) = &p.succ[i];
            let k = fresh.name();
            let hidden = co(&k, m.clone());
            let mut items = vec![(Term::Mkc(Box::new(m.clone()), CoName::new(&k)), Formula::sub(c.clone(), q.ante.clone()))];
            items.extend(sub_succ(&q.succ, &q.var, &hidden));
            let mut control = p.control.clone();
            control.extend(sub_terms(&q.control, &q.var, &hidden));
            Sequent { var: p.var.clone(), ante: p.ante.clone(), control, succ: splice(&p.succ, i, items) }
        }
        Rule::SubElim { index, right } => {
            let (p, q) = (ps[0], ps[1]);
            let i = slot(name, p, *index, true)?;
            let (m, f) = &p.succ[i];
            let Formula::Sub(c, d) = f else {
                return Err(TypingError::FormulaMismatch(format!("sub-elim major premise has {f}, not a subtraction")));
            };
            if q.ante != **c {
                return Err(mismatch("sub-elim minor antecedent", c, &q.ante));
            }
            let j = slot(name, q, *right, false)?;
            let (n, dn) = &q.succ[j];
            if dn != &**d {
                return Err(mismatch("sub-elim discharged formula", d, dn));
            }
            let k = fresh.name();
            let hidden = co(&k, m.clone());
            let body = subst(n, &q.var, &Term::var(&k));
            let rest: Vec<(Term, Formula)> = q.succ.iter().enumerate().filter(|(t, _)| *t != j).map(|(_, p)| p.clone()).collect();
            let mut control = p.control.clone();
            control.extend(sub_terms(&q.control, &q.var, &hidden));
            control.push(Term::Postp2(CoName::new(&k), Box::new(body), Box::new(m.clone())));
            Sequent { var: p.var.clone(), ante: p.ante.clone(), control, succ: splice(&p.succ, i, sub_succ(&rest, &q.var, &hidden)) }
        }
        Rule::ParIntro { i, j } => {
            let p = ps[0];
            pair(name, p, *i, *j)?;
            let (a, fa) = &p.succ[*i];
            let (b, fb) = &p.succ[*j];
            let item = (Term::par(a.clone(), b.clone()), Formula::par(fa.clone(), fb.clone()));
            Sequent { succ: merge(&p.succ, *i, *j, item), ..p.clone() }
        }
        Rule::Contraction { i, j } => {
            let p = ps[0];
            pair(name, p, *i, *j)?;
            let (a, fa) = &p.succ[*i];
            let (b, fb) = &p.succ[*j];
            if fa != fb || !matches!(fa, Formula::WhyNot(_)) {
                return Err(TypingError::FormulaMismatch(format!("contraction needs two equal ?-formulas, got {fa} and {fb}")));
            }
            let item = (Term::list2(a.clone(), b.clone()), fa.clone());
            Sequent { succ: merge(&p.succ, *i, *j, item), ..p.clone() }
        }
        Rule::ParElim { target } => {
            let (p, l, r) = (ps[0], ps[1], ps[2]);
            let k = slot(name, p, Some(*target), true)?;
            let (n, f) = &p.succ[k];
            let Formula::ParF(c0, c1) = f else {
                return Err(TypingError::FormulaMismatch(format!("par-elim major premise has {f}, not a par")));
            };
            if l.ante != **c0 {
                return Err(mismatch("par-elim left antecedent", c0, &l.ante));
            }
            if r.ante != **c1 {
                return Err(mismatch("par-elim right antecedent", c1, &r.ante));
            }
            let (cl, cr) = (Term::casel(n.clone()), Term::caser(n.clone()));
            let mut control = p.control.clone();
            control.extend(sub_terms(&l.control, &l.var, &cl));
            control.extend(sub_terms(&r.control, &r.var, &cr));
            let mut items = sub_succ(&l.succ, &l.var, &cl);
            items.extend(sub_succ(&r.succ, &r.var, &cr));
            Sequent { var: p.var.clone(), ante: p.ante.clone(), control, succ: splice(&p.succ, k, items) }
        }
        Rule::Dereliction { i } => {
            let p = ps[0];
            let i = slot(name, p, Some(*i), true)?;
            let (m, c) = &p.succ[i];
            let item = (Term::list1(m.clone()), Formula::why_not(c.clone()));
            Sequent { succ: splice(&p.succ, i, vec![item]), ..p.clone() }
        }
        Rule::Storage { target } => {
            let (p, q) = (ps[0], ps[1]);
            let k = slot(name, p, *target, true)?;
            let (m, f) = &p.succ[k];
            let Formula::WhyNot(c) = f else {
                return Err(TypingError::FormulaMismatch(format!("storage major premise has {f}, not a ?-formula")));
            };
            if q.ante != **c {
                return Err(mismatch("storage box antecedent", c, &q.ante));
            }
            if let Some((t, g)) = q.succ.iter().find(|(_, g)| !matches!(g, Formula::WhyNot(_))) {
                return Err(TypingError::StorageShape(format!("box conclusion {}:{g} is not a ?-formula", print_term(t))));
            }
            let kb = fresh.name();
            let inner = Term::var(&kb);
            let guards: Vec<CoName> = q.succ.iter().map(|_| CoName::new(fresh.name())).collect();
            let store = Store {
                pterms: sub_terms(&q.control, &q.var, &inner),
                guarded: q.succ.iter().map(|(t, _)| subst(t, &q.var, &inner)).collect(),
                guards: guards.clone(),
                bound: CoName::new(&kb),
                anchor: m.clone(),
            };
            let outs = guards.iter().zip(&q.succ).map(|(g, (_, d))| (Term::CoApp(g.clone(), Box::new(co(&kb, m.clone()))), d.clone())).collect();
            let mut control = p.control.clone();
            control.push(Term::store(store));
            Sequent { var: p.var.clone(), ante: p.ante.clone(), control, succ: splice(&p.succ, k, outs) }
        }
        Rule::SubLeft { var: z, index } => {
            let p = ps[0];
            let i = slot(name, p, *index, false)?;
            let (m, d) = &p.succ[i];
            let k = fresh.name();
            let hidden = co(&k, Term::Var(z.clone()));
            let rest: Vec<(Term, Formula)> = p.succ.iter().enumerate().filter(|(t, _)| *t != i).map(|(_, x)| x.clone()).collect();
            let mut control = sub_terms(&p.control, &p.var, &hidden);
            control.push(Term::Postp2(CoName::new(&k), Box::new(subst(m, &p.var, &Term::var(&k))), Box::new(Term::Var(z.clone()))));
            Sequent { var: z.clone(), ante: Formula::sub(p.ante.clone(), d.clone()), control, succ: sub_succ(&rest, &p.var, &hidden) }
        }
        Rule::ParLeft { var: z } => {
            let (l, r) = (ps[0], ps[1]);
            let (cl, cr) = (Term::casel(Term::Var(z.clone())), Term::caser(Term::Var(z.clone())));
            let mut control = sub_terms(&l.control, &l.var, &cl);
            control.extend(sub_terms(&r.control, &r.var, &cr));
            let mut succ = sub_succ(&l.succ, &l.var, &cl);
            succ.extend(sub_succ(&r.succ, &r.var, &cr));
            Sequent { var: z.clone(), ante: Formula::par(l.ante.clone(), r.ante.clone()), control, succ }
        }
    })
}

/// Re-elaborate and compare every node; also validate each conclusion as a context.
/// Typing failures are reported with axiom id 0.
pub fn check(d: &Derivation) -> ValidationReport {
    let mut out = Vec::new();
    match elaborate(&d.script()) {
        Err(e) => out.push(Violation { axiom: 0, path: vec![], message: e.to_string() }),
        Ok(fresh) => compare(d, &fresh, &mut Vec::new(), &mut out),
    }
    ValidationReport::from_violations(out)
}

fn compare(d: &Derivation, e: &Derivation, path: &mut Vec<usize>, out: &mut Vec<Violation>) {
    let (a, b) = (&d.conclusion, &e.conclusion);
    let mut fa = a.succ_formulas();
    let mut fb = b.succ_formulas();
    fa.sort();
    fb.sort();
    if a.ante != b.ante || fa != fb {
        out.push(Violation { axiom: 0, path: path.clone(), message: format!("FormulaMismatch: node concludes {a}, rule gives {b}") });
    } else if !sequent_alpha_equal(a, b) {
        out.push(Violation { axiom: 0, path: path.clone(), message: format!("TermMismatch: node concludes {a}, rule gives {b}") });
    }
    for v in validate(&a.context()).violations {
        out.push(Violation { axiom: v.axiom, path: path.clone(), message: format!("conclusion context at term path {:?}: {}", v.path, v.message) });
    }
    for (i, (p, q)) in d.premises.iter().zip(&e.premises).enumerate() {
        path.push(i);
        compare(p, q, path, out);
        path.pop();
    }
}

/// Elaborate a script text.
pub fn elaborate_text(src: &str) -> Result<Derivation, TypingError> {
    elaborate(&parse_script(src)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn concl(src: &str) -> Sequent {
        elaborate_text(src).unwrap().conclusion
    }

    #[test]
    fn axiom() {
        assert_eq!(concl("(axiom x a)").to_string(), "x:a |> | x:a");
    }

    #[test]
    fn bot_eta() {
        assert_eq!(concl("(bot-intro (bot-elim x) 0)").to_string(), "x:bot |> postp(x) | connect_to(postp(x)):bot");
    }

    #[test]
    fn sub_intro_left_branch() {
        assert_eq!(concl("(sub-intro (axiom z c) (axiom x c))").to_string(), "z:c |> | mkc(z,'k0):sub(c, c), 'k0(z):c");
    }

    #[test]
    fn remote_binding() {
        let s = concl("(sub-elim (sub-intro (axiom z c) (axiom x c)) (sub-intro (axiom y c) (axiom x c)) 0 1)");
        assert_eq!(
            s.to_string(),
            "z:c |> postp('k2 -> 'k1(k2), mkc(z,'k0)) | mkc('k2(mkc(z,'k0)),'k1):sub(c, c), 'k0(z):c"
        );
        let expected = Sequent::parse("z:c |> postp('y -> 'w(y), mkc(z,'x)) | mkc('y(mkc(z,'x)),'w):sub(c, c), 'x(z):c").unwrap();
        assert!(sequent_alpha_equal(&s, &expected));
        assert!(validate(&s.context()).ok);
    }

    #[test]
    fn cut_substitutes() {
        let s = concl("(cut (axiom x a) (bot-intro (axiom y a) 0))");
        assert_eq!(s.to_string(), "x:a |> | x:a, connect_to(x):bot");
    }

    #[test]
    fn par_rules() {
        let s = concl("(par-intro (sub-intro (axiom z a) (axiom w b)) 0 1)");
        assert_eq!(s.to_string(), "z:a |> | par(mkc(z,'k0),'k0(z)):par(sub(a, b), b)");
        let s = concl("(par-elim (axiom z (par a b)) (axiom x a) (axiom y b) 0)");
        assert_eq!(s.to_string(), "z:par(a, b) |> | casel(z):a, caser(z):b");
    }

    #[test]
    fn exponential_rules() {
        let s = concl("(contr (weak (der (axiom x a) 0) (? a) 0) 0 1)");
        assert_eq!(s.to_string(), "x:a |> | [[x],connect_to([x])]:?a");
        let s = concl("(weak (axiom x a) (? b) 0)");
        assert_eq!(s.to_string(), "x:a |> | x:a, connect_to(x):?b");
        let s = concl("(weak (sub-intro (axiom x a) (axiom y b)) (? c) 0)");
        assert_eq!(s.to_string(), "x:a |> | mkc(x,'k0):sub(a, b), 'k0(x):b, connect_to(mkc(x,'k1)):?c");
        let s = concl("(store (axiom j (? a)) (der (axiom x a) 0))");
        assert_eq!(s.to_string(), "j:?a |> store([];[[k0]];['k1];'k0;j) | 'k1('k0(j)):?a");
        assert!(validate(&s.context()).ok);
    }

    #[test]
    fn left_rules() {
        let s = concl("(sub-left (axiom x a) z)");
        assert_eq!(s.to_string(), "z:sub(a, a) |> postp('k0 -> k0, z) |");
        let s = concl("(par-left (axiom x a) (axiom y b) z)");
        assert_eq!(s.to_string(), "z:par(a, b) |> | casel(z):a, caser(z):b");
    }

    #[test]
    fn errors() {
        assert!(matches!(elaborate_text("(cut (axiom x a) (axiom y b))"), Err(TypingError::FormulaMismatch(_))));
        assert!(matches!(elaborate_text("(der (axiom x a) 3)"), Err(TypingError::IndexOutOfRange { .. })));
        assert!(matches!(elaborate_text("(sub-elim (axiom x a) (axiom y a))"), Err(TypingError::FormulaMismatch(_))));
        assert!(matches!(elaborate_text("(store (axiom j (? a)) (axiom x a))"), Err(TypingError::StorageShape(_))));
        assert!(matches!(elaborate_text("(weak (axiom x a) b 0)"), Err(TypingError::FormulaMismatch(_))));
        assert!(matches!(elaborate_text("(contr (axiom x a) 0 0)"), Err(TypingError::RuleMismatch(_))));
    }

    #[test]
    fn check_detects_tampering() {
        let d = elaborate_text("(sub-intro (axiom z c) (axiom x c))").unwrap();
        assert!(check(&d).ok);
        let mut bad = d.clone();
        bad.premises[0].conclusion.succ[0].1 = Formula::atom("q");
        let r = check(&bad);
        assert!(!r.ok);
        assert!(r.violations[0].message.starts_with("FormulaMismatch"));
    }

    #[test]
    fn sequent_parse_round_trip() {
        let s = concl("(bot-intro (bot-elim x) 0)");
        assert_eq!(Sequent::parse(&s.to_string()).unwrap(), s);
    }
}
