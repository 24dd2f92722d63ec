//! β-reduction of computational contexts: redex search, single steps and normalization.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::context::{validate, validate_parts, ComputationalContext};
use crate::typing::Sequent;
use crate::syntax::{print_term, subst, CoName, Store, Term};

pub const DEFAULT_FUEL: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RedexKind {
    LocalPostpConnect,
    LocalCasel,
    LocalCaser,
    PostpMkc,
    StoreDereliction,
    StoreWeakening,
    StoreContraction,
}

impl RedexKind {
    fn is_component_level(self) -> bool {
        !matches!(self, RedexKind::LocalCasel | RedexKind::LocalCaser)
    }
}

impl fmt::Display for RedexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Where a redex sits. `node` is the path to the enclosing store (empty for the top level),
/// `component` indexes that node's components, `path` descends into the component.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Site {
    pub node: Vec<usize>,
    pub component: usize,
    pub path: Vec<usize>,
}

impl Site {
    fn full(&self) -> Vec<usize> {
        let mut p = self.node.clone();
        p.push(self.component);
        p.extend(&self.path);
        p
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{}/{:?}", self.node, self.component, self.path)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Redex {
    pub kind: RedexKind,
    pub site: Site,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub step: usize,
    pub kind: RedexKind,
    pub site: Site,
    pub before: ComputationalContext,
    pub after: ComputationalContext,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn kinds(&self) -> Vec<RedexKind> {
        self.steps.iter().map(|s| s.kind).collect()
    }

    /// One JSON object per line.
    pub fn to_json_lines(&self) -> String {
        self.steps.iter().map(|s| serde_json::to_string(s).expect("trace steps serialize") + "\n").collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("stale redex {kind} at {site}")]
    StaleRedex { kind: RedexKind, site: Site },
    #[error("fuel exhausted after {} steps", trace.len())]
    FuelExhausted { trace: Box<Trace> },
    #[error("reduct failed validation: {0}")]
    Invalid(String),
}

fn at<'a>(comps: &'a [Term], full: &[usize]) -> Option<&'a Term> {
    let (first, rest) = full.split_first()?;
    let mut t = comps.get(*first)?;
    for &i in rest {
        t = t.children().get(i).copied()?;
    }
    Some(t)
}

fn replace_at(t: &Term, path: &[usize], f: &mut dyn FnMut(&Term) -> Term) -> Term {
    let Some((&head, rest)) = path.split_first() else {
        return f(t);
    };
    let mut k = 0;
    t.map_children(&mut |c| {
        let r = if k == head { replace_at(c, rest, f) } else { c.clone() };
        k += 1;
        r
    })
}

fn replace_in(comps: &[Term], full: &[usize], f: &mut dyn FnMut(&Term) -> Term) -> Vec<Term> {
    let mut out = comps.to_vec();
    out[full[0]] = replace_at(&comps[full[0]], &full[1..], f);
    out
}

/// Edit the list that holds a node's p-terms: the top-level components, or a box's p-term part.
fn edit_node(comps: &[Term], node: &[usize], f: impl FnOnce(&mut Vec<Term>)) -> Vec<Term> {
    if node.is_empty() {
        let mut out = comps.to_vec();
        f(&mut out);
        return out;
    }
    let mut f = Some(f);
    replace_in(comps, node, &mut |t| match t {
        Term::Store(s) => {
            let mut s = (**s).clone();
            (f.take().expect("node edited once"))(&mut s.pterms);
            Term::store(s)
        }
        other => other.clone(),
    })
}

fn component_kind(t: &Term) -> Option<RedexKind> {
    match t {
        Term::Postp1(r) if matches!(**r, Term::ConnectTo(_)) => Some(RedexKind::LocalPostpConnect),
        Term::Postp2(_, _, a) if matches!(**a, Term::Mkc(..)) => Some(RedexKind::PostpMkc),
        Term::Store(s) => match s.anchor {
            Term::List1(_) => Some(RedexKind::StoreDereliction),
            Term::ConnectTo(_) => Some(RedexKind::StoreWeakening),
            Term::List2(..) => Some(RedexKind::StoreContraction),
            _ => None,
        },
        _ => None,
    }
}

fn local_kind(t: &Term) -> Option<RedexKind> {
    match t {
        Term::Casel(p) if matches!(**p, Term::Par(..)) => Some(RedexKind::LocalCasel),
        Term::Caser(p) if matches!(**p, Term::Par(..)) => Some(RedexKind::LocalCaser),
        _ => None,
    }
}

/// Every redex, in box-tree preorder, then component order, then subterm path.
pub fn find_redexes(c: &ComputationalContext) -> Vec<Redex> {
    find_in(c.components())
}

pub(crate) fn find_in(comps: &[Term]) -> Vec<Redex> {
    let mut out = Vec::new();
    scan_node(comps, &[], &mut out);
    out.retain(|r| ready(comps, r));
    out.sort_by(|a, b| (&a.site.node, a.site.component, &a.site.path).cmp(&(&b.site.node, b.site.component, &b.site.path)));
    out
}

/// A store that opens or copies its anchor waits until every guard occurrence sees an
/// anchor of the matching shape. An occurrence inside a postpone body sees only the
/// body's local variable, and the step has no term to put in its place.
fn ready(comps: &[Term], r: &Redex) -> bool {
    let Some(Term::Store(s)) = at(comps, &r.site.full()) else { return true };
    let shaped: fn(&Term) -> bool = match r.kind {
        RedexKind::StoreDereliction => |a| matches!(a, Term::List1(_)),
        RedexKind::StoreContraction => |a| matches!(a, Term::List2(..)),
        _ => return true,
    };
    let mut ok = true;
    for c in comps {
        c.walk(&mut |t| {
            if let Term::CoApp(g, x) = t {
                if s.guards.contains(g) {
                    ok &= seen_anchor(x, &s.bound).is_none_or(shaped);
                }
            }
        });
    }
    ok
}

fn scan_node(comps: &[Term], node: &[usize], out: &mut Vec<Redex>) {
    for (i, c) in comps.iter().enumerate() {
        if let Some(kind) = component_kind(c) {
            out.push(Redex { kind, site: Site { node: node.to_vec(), component: i, path: vec![] } });
        }
        scan_term(c, node, i, &mut Vec::new(), out);
    }
}

fn scan_term(t: &Term, node: &[usize], comp: usize, path: &mut Vec<usize>, out: &mut Vec<Redex>) {
    if let Some(kind) = local_kind(t) {
        out.push(Redex { kind, site: Site { node: node.to_vec(), component: comp, path: path.clone() } });
    }
    match t {
        Term::Store(s) => {
            let inner: Vec<Term> = s.pterms.iter().chain(&s.guarded).cloned().collect();
            let mut here = node.to_vec();
            here.push(comp);
            here.extend(path.iter());
            scan_node(&inner, &here, out);
            path.push(inner.len());
            scan_term(&s.anchor, node, comp, path, out);
            path.pop();
        }
        _ => {
            for (i, c) in t.children().into_iter().enumerate() {
                path.push(i);
                scan_term(c, node, comp, path, out);
                path.pop();
            }
        }
    }
}

/// Rewrite every `'y(X)` for the given CoName across all components.
fn rebind(comps: Vec<Term>, y: &CoName, f: &dyn Fn(&Term) -> Term) -> Vec<Term> {
    comps
        .iter()
        .map(|c| {
            c.rewrite_bottom_up(&mut |t| match t {
                Term::CoApp(n, x) if n == *y => f(&x),
                other => other,
            })
        })
        .collect()
}

/// The anchor as seen at a guard occurrence `'g('z(A))`. Inside a postpone body the
/// anchor appears with the body's local variable in place of its remote binding.
fn seen_anchor<'a>(x: &'a Term, z: &CoName) -> Option<&'a Term> {
    match x {
        Term::CoApp(n, a) if n == z => Some(a),
        _ => None,
    }
}

fn used_names(comps: &[Term]) -> BTreeSet<String> {
    let mut used = BTreeSet::new();
    for c in comps {
        used.extend(c.conames().into_iter().map(|n| n.0));
        used.extend(c.var_names().into_iter().map(|n| n.0));
    }
    used
}

/// A copy of `s` with every binder inside it renamed apart from `used`.
fn fresh_copy(s: &Store, used: &mut BTreeSet<String>) -> Store {
    let body = Term::store(Store { anchor: Term::Nil, ..s.clone() });
    let mut map = std::collections::BTreeMap::new();
    for b in body.binder_names() {
        let name = (1..).map(|n| format!("{}_{n}", b.0)).find(|n| !used.contains(n)).expect("unbounded supply");
        used.insert(name.clone());
        map.insert(b.0, name);
    }
    match body.rename(&map) {
        Term::Store(copy) => *copy,
        _ => unreachable!("rename keeps the constructor"),
    }
}

/// Apply one redex. The reduct is validated.
pub fn reduce_once(c: &ComputationalContext, r: &Redex) -> Result<ComputationalContext, ReduceError> {
    let next = ComputationalContext::new(c.var.clone(), step_terms(c.components(), r)?);
    let report = validate(&next);
    if !report.ok {
        return Err(ReduceError::Invalid(format!("{} after {} at {}: {report}", next, r.kind, r.site)));
    }
    Ok(next)
}

/// One step on a sequent; the site indexes control terms followed by succedent terms.
/// New p-terms join the control area and the succedent keeps its order.
pub fn reduce_sequent_once(s: &Sequent, r: &Redex) -> Result<Sequent, ReduceError> {
    let flat = s.flat();
    let mut out = step_terms(&flat, r)?;
    let top_edit = r.site.node.is_empty() && r.kind.is_component_level();
    let mut is_succ: Vec<bool> = (0..flat.len()).map(|i| i >= s.control.len()).collect();
    if top_edit {
        is_succ.remove(r.site.component);
        is_succ.resize(out.len(), false);
    }
    let report = validate_parts(&s.var, &out);
    if !report.ok {
        return Err(ReduceError::Invalid(format!("sequent after {} at {}: {report}", r.kind, r.site)));
    }
    let mut control = Vec::new();
    let mut succ_terms = Vec::new();
    for (t, succ) in out.drain(..).zip(is_succ) {
        if succ {
            succ_terms.push(t);
        } else if t != Term::Nil {
            control.push(t);
        }
    }
    let succ = succ_terms.into_iter().zip(s.succ.iter().map(|p| p.1.clone())).collect();
    Ok(Sequent { var: s.var.clone(), ante: s.ante.clone(), control, succ })
}

pub fn find_sequent_redexes(s: &Sequent) -> Vec<Redex> {
    find_in(&s.flat())
}

/// Leftmost normalization of a sequent; returns the kinds fired.
pub fn normalize_sequent(s: &Sequent, fuel: usize) -> Result<(Sequent, Vec<RedexKind>), ReduceError> {
    let mut cur = s.clone();
    let mut kinds = Vec::new();
    while let Some(r) = find_sequent_redexes(&cur).into_iter().next() {
        if kinds.len() >= fuel {
            return Err(ReduceError::FuelExhausted { trace: Box::default() });
        }
        cur = reduce_sequent_once(&cur, &r)?;
        kinds.push(r.kind);
    }
    Ok((cur, kinds))
}

/// Rewrite a flat component list by one redex, without validating the result. Top-level
/// component edits remove the redex component and append any new p-terms at the end.
pub(crate) fn step_terms(comps: &[Term], r: &Redex) -> Result<Vec<Term>, ReduceError> {
    let stale = || ReduceError::StaleRedex { kind: r.kind, site: r.site.clone() };
    let full = r.site.full();
    let target = at(comps, &full).ok_or_else(stale)?;
    let matches = if r.kind.is_component_level() {
        r.site.path.is_empty() && component_kind(target) == Some(r.kind)
    } else {
        local_kind(target) == Some(r.kind)
    };
    if !matches {
        return Err(stale());
    }
    let remove = |comps: &[Term], extra: Vec<Term>| {
        edit_node(comps, &r.site.node, |list| {
            list.remove(r.site.component);
            list.extend(extra);
        })
    };
    let out = match (r.kind, target) {
        (RedexKind::LocalCasel | RedexKind::LocalCaser, _) => replace_in(comps, &full, &mut |t| match t {
            Term::Casel(p) | Term::Caser(p) => match &**p {
                Term::Par(a, b) if matches!(t, Term::Casel(_)) => (**a).clone(),
                Term::Par(_, b) => (**b).clone(),
                other => other.clone(),
            },
            other => other.clone(),
        }),
        (RedexKind::LocalPostpConnect, _) => remove(comps, vec![]),
        (RedexKind::PostpMkc, Term::Postp2(tag, body, anchor)) => {
            let Term::Mkc(_, k) = &**anchor else { return Err(stale()) };
            let rest = remove(comps, vec![]);
            let z = tag.var();
            let rest = rebind(rest, k, &|x| subst(body, &z, x));
            rebind(rest, tag, &|x| match x {
                Term::Mkc(m, n) if n == k => (**m).clone(),
                other => Term::CoApp(tag.clone(), Box::new(other.clone())),
            })
        }
        (RedexKind::StoreDereliction, Term::Store(s)) => {
            let Term::List1(m) = &s.anchor else { return Err(stale()) };
            let z = s.bound.var();
            let opened = s.pterms.iter().map(|p| subst(p, &z, m)).collect();
            let mut rest = remove(comps, opened);
            for (g, n) in s.guards.iter().zip(&s.guarded) {
                rest = rebind(rest, g, &|x| {
                    let m = match seen_anchor(x, &s.bound) {
                        Some(Term::List1(a)) => a,
                        _ => m,
                    };
                    subst(n, &z, m)
                });
            }
            rest
        }
        (RedexKind::StoreWeakening, Term::Store(s)) => {
            let mut rest = remove(comps, vec![]);
            for g in &s.guards {
                rest = rebind(rest, g, &|x| seen_anchor(x, &s.bound).unwrap_or(&s.anchor).clone());
            }
            rest
        }
        (RedexKind::StoreContraction, Term::Store(s)) => {
            let Term::List2(m0, m1) = &s.anchor else { return Err(stale()) };
            let mut used = used_names(comps);
            let copy = Store { anchor: (**m1).clone(), ..fresh_copy(s, &mut used) };
            let first = Store { anchor: (**m0).clone(), ..(**s).clone() };
            let mut rest = remove(comps, vec![]);
            for (g0, g1) in s.guards.iter().zip(&copy.guards) {
                rest = rebind(rest, g0, &|x| {
                    let (a0, a1) = match seen_anchor(x, &s.bound) {
                        Some(Term::List2(a0, a1)) => (a0, a1),
                        _ => (m0, m1),
                    };
                    let left = Term::CoApp(g0.clone(), Box::new(Term::CoApp(first.bound.clone(), a0.clone())));
                    let right = Term::CoApp(g1.clone(), Box::new(Term::CoApp(copy.bound.clone(), a1.clone())));
                    Term::list2(left, right)
                });
            }
            edit_node(&rest, &r.site.node, |list| list.extend([Term::store(first), Term::store(copy)]))
        }
        _ => return Err(stale()),
    };
    Ok(out)
}

pub fn is_normal(c: &ComputationalContext) -> bool {
    find_redexes(c).is_empty()
}

/// How `normalize` picks the next redex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    #[default]
    Leftmost,
    /// Take the listed redex indices in turn, then continue leftmost.
    Script(Vec<usize>),
}

/// Normalize with a caller-supplied chooser over the current redex list.
pub fn normalize_with(
    c: &ComputationalContext,
    fuel: usize,
    mut choose: impl FnMut(usize, &[Redex]) -> usize,
) -> Result<(ComputationalContext, Trace), ReduceError> {
    let mut cur = c.clone();
    let mut trace = Trace::default();
    loop {
        let redexes = find_redexes(&cur);
        if redexes.is_empty() {
            return Ok((cur, trace));
        }
        if trace.len() >= fuel {
            return Err(ReduceError::FuelExhausted { trace: Box::new(trace) });
        }
        let pick = choose(trace.len(), &redexes).min(redexes.len() - 1);
        let r = &redexes[pick];
        let next = reduce_once(&cur, r)?;
        trace.steps.push(TraceStep { step: trace.len(), kind: r.kind, site: r.site.clone(), before: cur, after: next.clone() });
        cur = next;
    }
}

pub fn normalize(c: &ComputationalContext, strategy: &Strategy, fuel: usize) -> Result<(ComputationalContext, Trace), ReduceError> {
    match strategy {
        Strategy::Leftmost => normalize_with(c, fuel, |_, _| 0),
        Strategy::Script(picks) => normalize_with(c, fuel, |step, _| picks.get(step).copied().unwrap_or(0)),
    }
}

/// Printed form of a redex's subterm, for diagnostics.
pub fn show_redex(c: &ComputationalContext, r: &Redex) -> Option<String> {
    at(c.components(), &r.site.full()).map(print_term)
}
