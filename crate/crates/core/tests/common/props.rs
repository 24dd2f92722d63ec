//! Property bodies shared by the proptest suite and the acceptance runner.

use std::collections::{BTreeMap, BTreeSet};

use coill_core::context::{alpha_equal, alpha_equal_ac, validate, ComputationalContext};
use coill_core::equations::canonicalize_sequent;
use coill_core::reduce::{find_redexes, reduce_once};
use coill_core::syntax::{free_vars, substitute, Term, VarName};
use coill_core::typing::check;
use proptest::test_runner::TestCaseError;

use super::random_derivation;

type Outcome = Result<(), TestCaseError>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

/// `FV(t[x:=n]) = FV(t) - {x} ∪ FV(n)` when `x` occurs, and `t` unchanged otherwise.
pub fn substitution(t: &Term, n: &Term, x: &str) -> Outcome {
    let x = VarName::new(x);
    let r = substitute(t, &x, n).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let mut want: BTreeSet<VarName> = free_vars(t);
    let had = want.remove(&x);
    if had {
        want.extend(free_vars(n));
    }
    ensure(free_vars(&r) == want, || format!("free variables of {r}"))?;
    ensure(had || r == *t, || format!("{t} changed without {x} free"))
}

/// Rename every binder through a rotation of the binder names onto fresh ones.
pub fn rename_binders(c: &ComputationalContext, salt: u64) -> ComputationalContext {
    let names: BTreeSet<String> = c.components().iter().flat_map(|t| t.binder_names()).map(|n| n.0).collect();
    let mut rotated: Vec<&String> = names.iter().collect();
    if !names.is_empty() {
        rotated.rotate_left(salt as usize % names.len());
    }
    let map: BTreeMap<String, String> = names.iter().zip(rotated).map(|(a, b)| (a.clone(), format!("r{salt}_{b}"))).collect();
    ComputationalContext::new(c.var.clone(), c.components().iter().map(|t| t.rename(&map)))
}

pub fn alpha_laws(seed: u64, s1: u64, s2: u64) -> Outcome {
    let c = random_derivation(seed, true, 4).conclusion.context();
    let d = rename_binders(&c, s1);
    let e = rename_binders(&d, s2);
    ensure(alpha_equal(&c, &c), || format!("not reflexive on {c}"))?;
    ensure(alpha_equal(&c, &d) && alpha_equal(&d, &c), || format!("renaming not symmetric: {c} / {d}"))?;
    ensure(alpha_equal(&d, &e) && alpha_equal(&c, &e), || format!("not transitive: {c} / {d} / {e}"))?;
    ensure(alpha_equal_ac(&c, &e), || "ac mode weaker than exact".into())?;
    let other = random_derivation(seed.wrapping_add(1), true, 4).conclusion.context();
    ensure(alpha_equal(&c, &other) == alpha_equal(&other, &c), || format!("asymmetric on {c} / {other}"))
}

/// Every redex along a normalization path reduces to a correct context.
pub fn reduction_validity(seed: u64) -> Outcome {
    let d = random_derivation(seed, true, 8);
    let r = check(&d);
    ensure(r.ok, || r.to_string())?;
    let mut c = d.conclusion.context();
    for _ in 0..50 {
        let rs = find_redexes(&c);
        let Some(last) = rs.last().cloned() else { break };
        for r in &rs {
            let next = reduce_once(&c, r).map_err(|e| TestCaseError::fail(format!("{e} on {c}")))?;
            ensure(validate(&next).ok, || format!("{next}"))?;
        }
        c = reduce_once(&c, &last).map_err(|e| TestCaseError::fail(e.to_string()))?;
    }
    Ok(())
}

pub fn canonical_idempotent(seed: u64) -> Outcome {
    let d = random_derivation(seed, seed % 2 == 0, 4);
    let once = canonicalize_sequent(&d.conclusion).map_err(|e| TestCaseError::fail(format!("{e} on {}", d.conclusion)))?;
    let twice = canonicalize_sequent(&once.sequent).map_err(|e| TestCaseError::fail(e.to_string()))?;
    ensure(twice.sequent == once.sequent, || format!("{} then {}", once.sequent, twice.sequent))?;
    ensure(validate(&once.context).ok, || format!("{}", once.context))
}
