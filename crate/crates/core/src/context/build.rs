//! The sanctioned ways of building correct contexts out of correct contexts.

use super::{validate, ComputationalContext, ContextError};
use crate::syntax::{print_term, subst, CoName, Store, Term, VarName};

/// One construction step. Component indices refer to the sorted component order.
#[derive(Clone, Debug)]
pub enum Build {
    /// `{x: x}`
    Var(VarName),
    /// `{y: postp(y)}`
    Bottom(VarName),
    /// `R̄ ∥ S_y[y := M]` where `M` is component `m` of `sx`.
    Substitution { sx: ComputationalContext, m: usize, sy: ComputationalContext },
    /// `R̄ ∥ mkc(M,'y) ∥ S_y[y := 'y(M)]`.
    MakeCoroutine { sx: ComputationalContext, m: usize, sy: ComputationalContext },
    /// `S_x[x := casel(z)] ∥ S_y[y := caser(z)]`.
    Cases { sx: ComputationalContext, sy: ComputationalContext, z: VarName },
    /// `postp('x -> M, y) ∥ R̄[x := 'x(y)]` over `y`.
    Postpone { sx: ComputationalContext, m: usize, y: VarName },
    Par { sx: ComputationalContext, i: usize, j: usize },
    Contraction { sx: ComputationalContext, i: usize, j: usize },
    /// `S_x ∥ connect_to(R)` where `R` is component `target`; unit and weakening coincide.
    Unit { sx: ComputationalContext, target: usize },
    /// `store(P̄, N̄, ȳ, 'z, x)` over `x`, splitting `sz` into p-terms and guarded m-terms.
    Store { sz: ComputationalContext, guards: Vec<CoName>, x: VarName },
}

fn shape(msg: impl Into<String>) -> ContextError {
    ContextError::ShapeMismatch(msg.into())
}

fn pick(c: &ComputationalContext, i: usize) -> Result<(Term, Vec<Term>), ContextError> {
    let comps = c.components();
    let m = comps
        .get(i)
        .ok_or_else(|| shape(format!("component index {i} out of range ({} components)", comps.len())))?;
    if m.is_pterm() {
        return Err(shape(format!("component {} is a p-term, an m-term is required", print_term(m))));
    }
    let rest = comps.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, t)| t.clone()).collect();
    Ok((m.clone(), rest))
}

fn two(c: &ComputationalContext, i: usize, j: usize) -> Result<(Term, Term, Vec<Term>), ContextError> {
    let comps = c.components();
    if i == j || i >= comps.len() || j >= comps.len() {
        return Err(shape(format!("need two distinct component indices, got {i} and {j}")));
    }
    let (a, b) = (comps[i].clone(), comps[j].clone());
    if a.is_pterm() || b.is_pterm() {
        return Err(shape("par and contraction combine m-terms only"));
    }
    let rest = comps.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, t)| t.clone()).collect();
    Ok((a, b, rest))
}

fn distinct(x: &VarName, y: &VarName) -> Result<(), ContextError> {
    if x == y {
        return Err(shape(format!("the two contexts must be over different variables, both use {x}")));
    }
    Ok(())
}

/// Apply one construction; the result must validate, otherwise `ShapeMismatch`.
pub fn build(op: Build) -> Result<ComputationalContext, ContextError> {
    let out = match op {
        Build::Var(x) => ComputationalContext::new(x.clone(), [Term::Var(x)]),
        Build::Bottom(y) => ComputationalContext::new(y.clone(), [Term::postp(Term::Var(y))]),
        Build::Substitution { sx, m, sy } => {
            distinct(&sx.var, &sy.var)?;
            let (m, mut rest) = pick(&sx, m)?;
            rest.extend(sy.components().iter().map(|r| subst(r, &sy.var, &m)));
            ComputationalContext::new(sx.var.clone(), rest)
        }
        Build::MakeCoroutine { sx, m, sy } => {
            distinct(&sx.var, &sy.var)?;
            let (m, mut rest) = pick(&sx, m)?;
            let y = CoName::from(&sy.var);
            let hidden = Term::CoApp(y.clone(), Box::new(m.clone()));
            rest.push(Term::Mkc(Box::new(m), y));
            rest.extend(sy.components().iter().map(|r| subst(r, &sy.var, &hidden)));
            ComputationalContext::new(sx.var.clone(), rest)
        }
        Build::Cases { sx, sy, z } => {
            if z == sx.var || z == sy.var {
                return Err(shape("the cases variable must be fresh"));
            }
            let l = Term::casel(Term::Var(z.clone()));
            let r = Term::caser(Term::Var(z.clone()));
            let comps = sx
                .components()
                .iter()
                .map(|t| subst(t, &sx.var, &l))
                .chain(sy.components().iter().map(|t| subst(t, &sy.var, &r)));
            ComputationalContext::new(z, comps.collect::<Vec<_>>())
        }
        Build::Postpone { sx, m, y } => {
            distinct(&sx.var, &y)?;
            let (m, rest) = pick(&sx, m)?;
            let x = CoName::from(&sx.var);
            let hidden = Term::CoApp(x.clone(), Box::new(Term::Var(y.clone())));
            let mut comps: Vec<Term> = rest.iter().map(|r| subst(r, &sx.var, &hidden)).collect();
            comps.push(Term::Postp2(x, Box::new(m), Box::new(Term::Var(y.clone()))));
            ComputationalContext::new(y, comps)
        }
        Build::Par { sx, i, j } => {
            let (a, b, mut rest) = two(&sx, i, j)?;
            rest.push(Term::par(a, b));
            ComputationalContext::new(sx.var.clone(), rest)
        }
        Build::Contraction { sx, i, j } => {
            let (a, b, mut rest) = two(&sx, i, j)?;
            rest.push(Term::list2(a, b));
            ComputationalContext::new(sx.var.clone(), rest)
        }
        Build::Unit { sx, target } => {
            let r = sx
                .components()
                .get(target)
                .cloned()
                .ok_or_else(|| shape(format!("weakening target {target} out of range")))?;
            let mut comps = sx.components().to_vec();
            comps.push(Term::connect(r));
            ComputationalContext::new(sx.var.clone(), comps)
        }
        Build::Store { sz, guards, x } => {
            distinct(&sz.var, &x)?;
            let (pterms, guarded): (Vec<Term>, Vec<Term>) = sz.components().iter().cloned().partition(|t| t.is_pterm());
            if guards.len() != guarded.len() {
                return Err(shape(format!("{} guards supplied for {} guarded terms", guards.len(), guarded.len())));
            }
            let store = Store { pterms, guarded, guards, bound: CoName::from(&sz.var), anchor: Term::Var(x.clone()) };
            ComputationalContext::new(x, [Term::store(store)])
        }
    };
    let report = validate(&out);
    if !report.ok {
        return Err(shape(format!("result is not a correct context: {report}")));
    }
    Ok(out)
}
