//! Equality of derivations modulo the equations in context.
//!
//! Each side is brought to a canonical sequent by oriented rewriting (β, storage algebra,
//! monoid laws, η-contraction, rewiring, renaming) and the results are compared up to α with
//! contraction lists read as multisets.

mod laws;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::context::{alpha_equal_labelled, validate, ComputationalContext, Mode};
use crate::reduce::{normalize_sequent, ReduceError, DEFAULT_FUEL};
use crate::syntax::{CoName, Store, Term};
use crate::typing::{check, Derivation, Formula, Sequent, TypingError};

pub use laws::{builtin_laws, verify_builtin_laws, Law, LawReport, LawResult};

/// Rounds of the full pipeline before giving up on reaching a fixpoint.
const MAX_ROUNDS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalForm {
    pub sequent: Sequent,
    pub context: ComputationalContext,
    pub provenance: Vec<String>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EquationError {
    #[error(transparent)]
    Typing(#[from] TypingError),
    #[error("derivation does not check: {0}")]
    Check(String),
    #[error("SequentMismatch: {0} vs {1}")]
    SequentMismatch(String, String),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error("{phase} produced an incorrect context: {report}")]
    Invalid { phase: &'static str, report: String },
}

pub fn canonicalize(d: &Derivation) -> Result<CanonicalForm, EquationError> {
    let report = check(d);
    if !report.ok {
        return Err(EquationError::Check(report.to_string()));
    }
    canonicalize_sequent(&d.conclusion)
}

/// Canonicalize a bare context by reading every component as a control term.
pub fn canonicalize_context(c: &ComputationalContext) -> Result<ComputationalContext, EquationError> {
    let s = Sequent { var: c.var.clone(), ante: Formula::atom("_"), control: c.components().to_vec(), succ: vec![] };
    Ok(canonicalize_sequent(&s)?.context)
}

pub fn canonicalize_sequent(s: &Sequent) -> Result<CanonicalForm, EquationError> {
    let mut prov = Vec::new();
    let mut cur = s.clone();
    for _ in 0..MAX_ROUNDS {
        let next = round(&cur, &mut prov)?;
        if next == cur {
            break;
        }
        cur = next;
    }
    Ok(CanonicalForm { context: cur.context(), sequent: cur, provenance: prov })
}

fn note(prov: &mut Vec<String>, name: impl Into<String>) {
    let name = name.into();
    if !prov.contains(&name) {
        prov.push(name);
    }
}

fn checked(s: Sequent, phase: &'static str) -> Result<Sequent, EquationError> {
    let report = validate(&s.context());
    if !report.ok {
        return Err(EquationError::Invalid { phase, report: report.to_string() });
    }
    Ok(s)
}

fn round(s: &Sequent, prov: &mut Vec<String>) -> Result<Sequent, EquationError> {
    let mut s = s.clone();
    loop {
        let (n, kinds) = normalize_sequent(&s, DEFAULT_FUEL)?;
        for k in kinds {
            note(prov, format!("beta:{k}"));
        }
        s = n;
        match storage_step(&s) {
            Some((name, n)) => {
                note(prov, name);
                s = checked(n, name)?;
            }
            None => break,
        }
    }
    for (name, phase) in [("monoid", monoid as fn(&Sequent) -> Sequent), ("eta", eta), ("rewiring", rewire), ("alpha", rename)] {
        let n = checked(phase(&s), name)?;
        if n != s && name != "alpha" {
            note(prov, name);
        }
        s = n;
    }
    Ok(s)
}

fn map_terms(s: &Sequent, f: &mut impl FnMut(&Term) -> Term) -> Sequent {
    Sequent {
        var: s.var.clone(),
        ante: s.ante.clone(),
        control: s.control.iter().map(&mut *f).collect(),
        succ: s.succ.iter().map(|(t, a)| (f(t), a.clone())).collect(),
    }
}

/// Replace every `'y(X)` by `f(X)`, innermost first.
fn rebind(t: &Term, y: &CoName, f: &dyn Fn(&Term) -> Term) -> Term {
    t.rewrite_bottom_up(&mut |t| match t {
        Term::CoApp(n, x) if n == *y => f(&x),
        other => other,
    })
}

fn count_coapp(s: &Sequent, y: &CoName) -> usize {
    let mut n = 0;
    for t in s.flat() {
        t.walk(&mut |u| {
            if matches!(u, Term::CoApp(m, _) if m == y) {
                n += 1;
            }
        });
    }
    n
}

struct Names(BTreeSet<String>);

impl Names {
    fn of(s: &Sequent) -> Self {
        let mut used: BTreeSet<String> = [s.var.0.clone()].into();
        for t in s.flat() {
            used.extend(t.conames().into_iter().map(|c| c.0));
            used.extend(t.var_names().into_iter().map(|v| v.0));
        }
        Names(used)
    }

    fn fresh(&mut self, base: &str) -> CoName {
        let name = (0..).map(|n| format!("{base}{n}")).find(|n| !self.0.contains(n)).expect("unbounded supply");
        self.0.insert(name.clone());
        CoName(name)
    }
}

/// `X` when the occurrence reads `'b(X)`.
fn strip<'a>(x: &'a Term, b: &CoName) -> Option<&'a Term> {
    match x {
        Term::CoApp(n, a) if n == b => Some(a),
        _ => None,
    }
}

fn stores(s: &Sequent) -> impl Iterator<Item = (usize, &Store)> {
    s.control.iter().enumerate().filter_map(|(i, t)| match t {
        Term::Store(b) => Some((i, &**b)),
        _ => None,
    })
}

fn storage_step(s: &Sequent) -> Option<(&'static str, Sequent)> {
    algebra_split(s)
        .map(|n| ("algebra-2", n))
        .or_else(|| algebra_unit(s).map(|n| ("algebra-1", n)))
        .or_else(|| merge(s).map(|n| ("storage-merge", n)))
        .or_else(|| monad(s).map(|n| ("monad", n)))
}

/// A guarded contraction `[N0, N1]` becomes two guarded terms with their own guards.
fn algebra_split(s: &Sequent) -> Option<Sequent> {
    let (i, st, j) = stores(s).find_map(|(i, st)| st.guarded.iter().position(|g| matches!(g, Term::List2(..))).map(|j| (i, st, j)))?;
    let Term::List2(n0, n1) = &st.guarded[j] else { unreachable!() };
    let mut names = Names::of(s);
    let g = st.guards[j].clone();
    let (h0, h1) = (names.fresh(&g.0), names.fresh(&g.0));
    let mut split = st.clone();
    split.guarded.splice(j..=j, [(**n0).clone(), (**n1).clone()]);
    split.guards.splice(j..=j, [h0.clone(), h1.clone()]);
    let mut out = map_terms(s, &mut |t| {
        rebind(t, &g, &|x| Term::list2(Term::CoApp(h0.clone(), Box::new(x.clone())), Term::CoApp(h1.clone(), Box::new(x.clone()))))
    });
    out.control[i] = Term::store(split);
    Some(out)
}

/// A guarded `connect_to(R)` leaves the box; its output becomes a pointer outside.
fn algebra_unit(s: &Sequent) -> Option<Sequent> {
    let (i, st, j) = stores(s).find_map(|(i, st)| st.guarded.iter().position(|g| matches!(g, Term::ConnectTo(_))).map(|j| (i, st, j)))?;
    let mut kept = st.clone();
    kept.guarded.remove(j);
    let g = kept.guards.remove(j);
    let b = st.bound.clone();
    let anchor = st.anchor.clone();
    let mut out = map_terms(s, &mut |t| rebind(t, &g, &|x| Term::connect(strip(x, &b).unwrap_or(&anchor).clone())));
    out.control[i] = Term::store(kept);
    Some(out)
}

/// `store(Q1, N1, g1, 'b1, M)` followed by a store anchored at `'g('b1(M))` for a guard `g`
/// of the first: the second store moves inside the first box.
fn merge(s: &Sequent) -> Option<Sequent> {
    for (i2, s2) in stores(s) {
        let Term::CoApp(g, inner) = &s2.anchor else { continue };
        let Term::CoApp(b1, m) = &**inner else { continue };
        let Some((i1, s1, gi)) = stores(s).find_map(|(i1, s1)| {
            let gi = s1.guards.iter().position(|h| h == g)?;
            (i1 != i2 && s1.bound == *b1 && s1.anchor == **m).then_some((i1, s1, gi))
        }) else {
            continue;
        };
        let mut names = Names::of(s);
        let fresh: Vec<CoName> = s2.guards.iter().map(|h| names.fresh(&h.0)).collect();
        let n1 = s1.guarded[gi].clone();
        let nested = Store { anchor: n1.clone(), ..s2.clone() };
        let mut outer = s1.clone();
        outer.guarded.remove(gi);
        outer.guards.remove(gi);
        outer.pterms.push(Term::store(nested));
        for (h, f) in s2.guards.iter().zip(&fresh) {
            outer.guarded.push(Term::CoApp(h.clone(), Box::new(Term::CoApp(s2.bound.clone(), Box::new(n1.clone())))));
            outer.guards.push(f.clone());
        }
        let rest = Sequent {
            var: s.var.clone(),
            ante: s.ante.clone(),
            control: s.control.iter().enumerate().filter(|(k, _)| *k != i1 && *k != i2).map(|(_, t)| t.clone()).collect(),
            succ: s.succ.clone(),
        };
        let mut out = rest;
        for (h, f) in s2.guards.iter().zip(&fresh) {
            let seen = |x: &Term| {
                let m = strip(x, &s2.bound).and_then(|a| strip(a, g)).and_then(|a| strip(a, b1)).unwrap_or(m);
                Term::CoApp(f.clone(), Box::new(Term::CoApp(b1.clone(), Box::new(m.clone()))))
            };
            out = map_terms(&out, &mut |t| rebind(t, h, &seen));
        }
        // every other use of `g` must have been an output of the moved store
        if count_coapp(&out, g) != 0 {
            continue;
        }
        out.control.push(Term::store(outer));
        return Some(out);
    }
    None
}

/// `store([], [[b]], [h], 'b, M)` with its outputs `'h('b(M))` is `M`.
fn monad(s: &Sequent) -> Option<Sequent> {
    let (i, st) = stores(s).find(|(_, st)| {
        st.pterms.is_empty() && st.guarded.len() == 1 && st.guarded[0] == Term::list1(Term::Var(st.bound.var()))
    })?;
    let h = st.guards[0].clone();
    let b = st.bound.clone();
    let anchor = st.anchor.clone();
    let mut out = s.clone();
    out.control.remove(i);
    Some(map_terms(&out, &mut |t| rebind(t, &h, &|x| strip(x, &b).unwrap_or(&anchor).clone())))
}

fn leaves(t: &Term, out: &mut Vec<Term>) {
    match t {
        Term::List2(a, b) => {
            leaves(a, out);
            leaves(b, out);
        }
        other => out.push(monoid_term(other)),
    }
}

/// Flatten, drop units, sort, and rebuild contraction lists right-nested.
fn monoid_term(t: &Term) -> Term {
    t.rewrite(&mut |t| {
        if !matches!(t, Term::List2(..)) {
            return None;
        }
        let mut ls = Vec::new();
        leaves(t, &mut ls);
        if ls.iter().any(|l| !matches!(l, Term::ConnectTo(_))) {
            ls.retain(|l| !matches!(l, Term::ConnectTo(_)));
        } else {
            ls.truncate(1);
        }
        ls.sort();
        let mut it = ls.into_iter().rev();
        let last = it.next().expect("a list has leaves");
        Some(it.fold(last, |acc, l| Term::list2(l, acc)))
    })
}

fn monoid(s: &Sequent) -> Sequent {
    map_terms(s, &mut monoid_term)
}

fn eta(s: &Sequent) -> Sequent {
    let mut s = map_terms(s, &mut |t| {
        t.rewrite_bottom_up(&mut |t| match t {
            Term::Par(a, b) => match (&*a, &*b) {
                (Term::Casel(x), Term::Caser(y)) if x == y => (**x).clone(),
                _ => Term::Par(a, b),
            },
            other => other,
        })
    });
    // ⊥: postp(M) in control with a slot connect_to(postp(M)):⊥.
    while let Some((i, k)) = s.control.iter().enumerate().find_map(|(i, p)| {
        let Term::Postp1(_) = p else { return None };
        let want = Term::connect(p.clone());
        s.succ.iter().position(|(t, f)| *t == want && *f == Formula::Bot).map(|k| (i, k))
    }) {
        let Term::Postp1(m) = s.control.remove(i) else { unreachable!() };
        s.succ[k].0 = *m;
    }
    // ∖: postp('t -> 'k(t), M) in control with mkc('t(M),'k) somewhere.
    while let Some((i, pattern, m)) = s.control.iter().enumerate().find_map(|(i, p)| {
        let Term::Postp2(t, body, m) = p else { return None };
        let Term::CoApp(k, v) = &**body else { return None };
        if **v != Term::Var(t.var()) {
            return None;
        }
        let pattern = Term::Mkc(Box::new(Term::CoApp(t.clone(), m.clone())), k.clone());
        let occurs = s.flat().iter().enumerate().any(|(j, u)| j != i && u.contains(&pattern));
        occurs.then(|| (i, pattern, (**m).clone()))
    }) {
        s.control.remove(i);
        s = map_terms(&s, &mut |t| t.rewrite(&mut |u| (*u == pattern).then(|| m.clone())));
    }
    s
}

/// Retarget every pointer of a node to its least pointer-free component.
fn rewire_node(items: &[Term]) -> Vec<Term> {
    let rep = items.iter().filter(|t| !t.contains_connect()).min().cloned();
    items.iter().map(|t| rewire_term(t, rep.as_ref())).collect()
}

fn rewire_term(t: &Term, rep: Option<&Term>) -> Term {
    match t {
        Term::ConnectTo(r) => Term::connect(rep.cloned().unwrap_or_else(|| (**r).clone())),
        // Postpone bodies live under their own bound variable; pointers there stay put.
        Term::Postp2(y, body, anchor) => Term::Postp2(y.clone(), body.clone(), Box::new(rewire_term(anchor, rep))),
        Term::Store(s) => {
            let inner: Vec<Term> = s.pterms.iter().chain(&s.guarded).cloned().collect();
            let mut wired = rewire_node(&inner);
            let guarded = wired.split_off(s.pterms.len());
            Term::store(Store { pterms: wired, guarded, anchor: rewire_term(&s.anchor, rep), ..(**s).clone() })
        }
        _ => t.map_children(&mut |c| rewire_term(c, rep)),
    }
}

fn rewire(s: &Sequent) -> Sequent {
    let wired = rewire_node(&s.flat());
    let (control, succ) = wired.split_at(s.control.len());
    Sequent {
        var: s.var.clone(),
        ante: s.ante.clone(),
        control: control.to_vec(),
        succ: succ.iter().cloned().zip(s.succ.iter().map(|p| p.1.clone())).collect(),
    }
}

/// Rename binders to `v0, v1, ...` in order of first appearance.
fn rename(s: &Sequent) -> Sequent {
    let terms = s.flat();
    let binders: BTreeSet<CoName> = terms.iter().flat_map(|t| t.binder_names()).collect();
    let mut order: Vec<String> = Vec::new();
    for t in &terms {
        first_use(t, &binders, &mut order);
    }
    let mut taken: BTreeSet<String> = [s.var.0.clone()].into();
    for t in &terms {
        taken.extend(t.conames().into_iter().filter(|c| !binders.contains(c)).map(|c| c.0));
    }
    let mut map = BTreeMap::new();
    let mut n = 0;
    for b in order.into_iter().filter(|b| *b != s.var.0) {
        let name = loop {
            let cand = format!("v{n}");
            n += 1;
            if !taken.contains(&cand) {
                break cand;
            }
        };
        map.insert(b, name);
    }
    map_terms(s, &mut |t| t.rename(&map))
}

fn first_use(t: &Term, binders: &BTreeSet<CoName>, order: &mut Vec<String>) {
    let mut push = |c: &CoName| {
        if binders.contains(c) && !order.contains(&c.0) {
            order.push(c.0.clone());
        }
    };
    match t {
        Term::CoApp(y, _) | Term::Mkc(_, y) | Term::Postp2(y, ..) => push(y),
        Term::Store(st) => {
            push(&st.bound);
            st.guards.iter().for_each(&mut push);
        }
        _ => {}
    }
    for c in t.children() {
        first_use(c, binders, order);
    }
}

fn items(s: &Sequent) -> Vec<(Term, Option<Formula>)> {
    s.control.iter().map(|t| (t.clone(), None)).chain(s.succ.iter().map(|(t, f)| (t.clone(), Some(f.clone())))).collect()
}

fn formulas(s: &Sequent) -> (Formula, Vec<Formula>) {
    let mut fs = s.succ_formulas();
    fs.sort();
    (s.ante.clone(), fs)
}

/// Both sequents canonicalized, then compared up to α with lists as multisets.
pub fn equal_sequents_mod_theory(a: &Sequent, b: &Sequent) -> Result<bool, EquationError> {
    if formulas(a) != formulas(b) {
        return Err(EquationError::SequentMismatch(a.to_string(), b.to_string()));
    }
    let (ca, cb) = (canonicalize_sequent(a)?, canonicalize_sequent(b)?);
    Ok(canonical_equal(&ca, &cb))
}

pub fn canonical_equal(a: &CanonicalForm, b: &CanonicalForm) -> bool {
    a.sequent.ante == b.sequent.ante && alpha_equal_labelled(&a.sequent.var, &items(&a.sequent), &b.sequent.var, &items(&b.sequent), Mode::Ac)
}

pub fn equal_mod_theory(d1: &Derivation, d2: &Derivation) -> Result<bool, EquationError> {
    if formulas(&d1.conclusion) != formulas(&d2.conclusion) {
        return Err(EquationError::SequentMismatch(d1.conclusion.to_string(), d2.conclusion.to_string()));
    }
    Ok(canonical_equal(&canonicalize(d1)?, &canonicalize(d2)?))
}

trait ContainsConnect {
    fn contains_connect(&self) -> bool;
}

impl ContainsConnect for Term {
    fn contains_connect(&self) -> bool {
        matches!(self, Term::ConnectTo(_)) || self.children().into_iter().any(|c| c.contains_connect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typing::elaborate_text;

    fn canon(src: &str) -> CanonicalForm {
        canonicalize(&elaborate_text(src).unwrap()).unwrap()
    }

    fn eq(a: &str, b: &str) -> bool {
        equal_mod_theory(&elaborate_text(a).unwrap(), &elaborate_text(b).unwrap()).unwrap()
    }

    #[test]
    fn bot_eta_is_the_axiom() {
        let c = canon("(bot-intro (bot-elim x) 0)");
        assert_eq!(c.sequent.to_string(), "x:bot |> | x:bot");
        assert!(c.provenance.contains(&"eta".to_string()));
        assert!(eq("(bot-intro (bot-elim x) 0)", "(axiom x bot)"));
    }

    #[test]
    fn monoid_unit_drops() {
        let c = canon("(contr (weak (der (axiom x a) 0) (? a) 0) 0 1)");
        assert_eq!(c.sequent.to_string(), "x:a |> | [x]:?a");
    }

    #[test]
    fn monad_identity() {
        let c = canon("(cut (store (axiom z (? a)) (der (der (axiom x a) 0) 0) 0) (store (axiom z2 (? (? a))) (axiom x2 (? a)) 0) 0)");
        assert_eq!(c.sequent.to_string(), "z:?a |> | z:?a");
    }

    #[test]
    fn eta_expansion_alone_is_not_identity() {
        // ?η on its own keeps its box
        let c = canon("(store (axiom z (? a)) (der (der (axiom x a) 0) 0) 0)");
        assert_eq!(c.sequent.control.len(), 1);
    }

    #[test]
    fn reflexive_and_mismatch() {
        let d = "(sub-elim (sub-intro (axiom z c) (axiom x c)) (sub-intro (axiom y c) (axiom x c)) 0 1)";
        assert!(eq(d, d));
        let e = equal_mod_theory(&elaborate_text(d).unwrap(), &elaborate_text("(axiom z c)").unwrap());
        assert!(matches!(e, Err(EquationError::SequentMismatch(..))));
    }

    #[test]
    fn distinct_terms_stay_distinct() {
        let a = "(par-elim (axiom z (par a a)) (axiom x a) (axiom y a) 0)";
        let b = "(par-elim (axiom z (par a a)) (axiom x a) (bot-intro (axiom y a) 0) 0)";
        assert!(equal_mod_theory(&elaborate_text(a).unwrap(), &elaborate_text(b).unwrap()).is_err());
        let c = "(sub-intro (axiom z a) (axiom w a))";
        let d = "(par-intro (par-elim (axiom z (par a a)) (axiom x a) (axiom y a) 0) 0 1)";
        assert!(equal_mod_theory(&elaborate_text(c).unwrap(), &elaborate_text(d).unwrap()).is_err());
    }

    #[test]
    fn idempotent_on_remote_binding() {
        let c = canon("(sub-elim (sub-intro (axiom z c) (axiom x c)) (sub-intro (axiom y c) (axiom x c)) 0 1)");
        let again = canonicalize_sequent(&c.sequent).unwrap();
        assert_eq!(again.sequent, c.sequent);
    }
}
