//! Finite event semantics of the multiplicative fragment.
//!
//! Events are subsets of a universe of at most 16 points, stored as bitmasks. An
//! [`Assignment`] gives an event to every judgement of every node of a derivation;
//! [`decompose`] builds the pairwise disjoint refinement of the root succedent events.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::context::{ValidationReport, Violation};
use crate::typing::{check, Derivation, Rule};

pub const MAX_POINTS: u8 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Universe(u8);

impl Universe {
    pub fn new(size: u8) -> Result<Self, ProbError> {
        if size == 0 || size > MAX_POINTS {
            return Err(ProbError::Universe(size as usize));
        }
        Ok(Universe(size))
    }

    pub fn size(self) -> u8 {
        self.0
    }

    pub fn full(self) -> Event {
        Event(((1u32 << self.0) - 1) as u16)
    }
}

/// A set of points, bit `i` for point `i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Event(pub u16);

impl Event {
    pub const EMPTY: Event = Event(0);

    pub fn from_points(points: &[u8]) -> Event {
        Event(points.iter().fold(0, |m, p| m | (1 << p)))
    }

    pub fn points(self) -> Vec<u8> {
        (0..16).filter(|p| self.0 & (1 << p) != 0).collect()
    }

    pub fn union(self, o: Event) -> Event {
        Event(self.0 | o.0)
    }

    pub fn meet(self, o: Event) -> Event {
        Event(self.0 & o.0)
    }

    /// `self ∩ ō`.
    pub fn minus(self, o: Event) -> Event {
        Event(self.0 & !o.0)
    }

    pub fn subset_of(self, o: Event) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.points().iter().map(u8::to_string).collect();
        write!(f, "{{{}}}", ps.join(","))
    }
}

impl Serialize for Event {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.points().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Event {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let ps = Vec::<u8>::deserialize(d)?;
        if let Some(p) = ps.iter().find(|p| **p >= MAX_POINTS) {
            return Err(serde::de::Error::custom(format!("point {p} outside the largest universe")));
        }
        Ok(Event::from_points(&ps))
    }
}

/// Which judgement of a node's conclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Ante,
    Control(usize),
    Succ(usize),
}

/// A judgement occurrence: node path from the root plus slot. Written `0.1:ante`, `:2`, `0:c1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Judgement {
    pub path: Vec<usize>,
    pub slot: Slot,
}

impl Judgement {
    pub fn new(path: &[usize], slot: Slot) -> Self {
        Judgement { path: path.to_vec(), slot }
    }
}

impl fmt::Display for Judgement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.path.iter().map(usize::to_string).collect();
        write!(f, "{}:", p.join("."))?;
        match self.slot {
            Slot::Ante => f.write_str("ante"),
            Slot::Control(i) => write!(f, "c{i}"),
            Slot::Succ(i) => write!(f, "{i}"),
        }
    }
}

impl FromStr for Judgement {
    type Err = ProbError;

    fn from_str(s: &str) -> Result<Self, ProbError> {
        let bad = || ProbError::Key(s.to_string());
        let (p, k) = s.rsplit_once(':').ok_or_else(bad)?;
        let path = if p.is_empty() { vec![] } else { p.split('.').map(|n| n.parse().map_err(|_| bad())).collect::<Result<_, _>>()? };
        let slot = match k {
            "ante" => Slot::Ante,
            c if c.starts_with('c') => Slot::Control(c[1..].parse().map_err(|_| bad())?),
            n => Slot::Succ(n.parse().map_err(|_| bad())?),
        };
        Ok(Judgement { path, slot })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment(pub BTreeMap<Judgement, Event>);

impl Assignment {
    pub fn get(&self, path: &[usize], slot: Slot) -> Option<Event> {
        self.0.get(&Judgement::new(path, slot)).copied()
    }

    pub fn set(&mut self, path: &[usize], slot: Slot, e: Event) {
        self.0.insert(Judgement::new(path, slot), e);
    }

    pub fn to_json(&self) -> String {
        let m: BTreeMap<String, Vec<u8>> = self.0.iter().map(|(k, v)| (k.to_string(), v.points())).collect();
        serde_json::to_string_pretty(&m).expect("plain map")
    }

    pub fn from_json(src: &str) -> Result<Self, ProbError> {
        let m: BTreeMap<String, Event> = serde_json::from_str(src).map_err(|e| ProbError::Json(e.to_string()))?;
        m.into_iter().map(|(k, v)| Ok((k.parse()?, v))).collect::<Result<_, _>>().map(Assignment)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProbError {
    #[error("NotMultiplicative: rule `{0}` is outside the multiplicative fragment")]
    NotMultiplicative(&'static str),
    #[error("AssignmentInvalid: {0}")]
    AssignmentInvalid(String),
    #[error("NoConsistentAssignment: no assignment found after {0} attempts")]
    NoConsistentAssignment(usize),
    #[error("universe size must be between 1 and 16, got {0}")]
    Universe(usize),
    #[error("bad judgement key `{0}`")]
    Key(String),
    #[error("assignment json: {0}")]
    Json(String),
}

/// How `℘`-elimination makes the two case events disjoint.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ParSplit {
    /// Keep the left event, cut the left one out of the right.
    #[default]
    KeepLeft,
    KeepRight,
}

fn resolve(idx: Option<usize>, len: usize, default_last: bool) -> usize {
    idx.unwrap_or(if default_last { len.saturating_sub(1) } else { 0 })
}

fn without(v: &[Event], i: usize) -> Vec<Event> {
    v.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, e)| *e).collect()
}

fn splice(v: &[Event], i: usize, items: Vec<Event>) -> Vec<Event> {
    v[..i].iter().copied().chain(items).chain(v[i + 1..].iter().copied()).collect()
}

fn merge(v: &[Event], i: usize, j: usize, e: Event) -> Vec<Event> {
    let mut out: Vec<Event> = v.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, e)| *e).collect();
    out.insert(i.min(j), e);
    out
}

/// Events of one node conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Node {
    ante: Event,
    succ: Vec<Event>,
}

/// Constraint rows between a node and its premises, each `(row name, holds)`.
fn rows(rule: &Rule, c: &Node, ps: &[Node]) -> Vec<(&'static str, bool)> {
    let carried = |succ: Vec<Event>| ("carried", succ == c.succ);
    let same_ante = |p: &Node| ("carried hypothesis", p.ante == c.ante);
    match rule {
        Rule::Axiom { .. } => vec![("axiom", c.succ == vec![c.ante])],
        Rule::BotElim { .. } => vec![("bot hypothesis is impossible", c.ante.is_empty()), carried(vec![])],
        Rule::Cut { index } => {
            let (p, q) = (&ps[0], &ps[1]);
            let i = resolve(*index, p.succ.len(), true);
            vec![same_ante(p), ("cut", p.succ[i].subset_of(q.ante)), carried(splice(&p.succ, i, q.succ.clone()))]
        }
        Rule::BotIntro { .. } => {
            let p = &ps[0];
            let mut s = p.succ.clone();
            s.push(*c.succ.last().unwrap_or(&Event::EMPTY));
            vec![same_ante(p), ("bot slot", c.succ.last().is_some_and(|e| e.is_empty())), carried(s)]
        }
        Rule::SubIntro { index } => {
            let (p, q) = (&ps[0], &ps[1]);
            let i = resolve(*index, p.succ.len(), true);
            let mkc = p.succ[i].minus(q.ante);
            let mut items = vec![mkc];
            items.extend(&q.succ);
            vec![same_ante(p), ("mkc", c.succ.get(i) == Some(&mkc)), carried(splice(&p.succ, i, items))]
        }
        Rule::SubElim { index, right } => {
            let (p, q) = (&ps[0], &ps[1]);
            let i = resolve(*index, p.succ.len(), true);
            let j = resolve(*right, q.succ.len(), false);
            vec![
                same_ante(p),
                ("subtraction split", p.succ[i].subset_of(q.ante.minus(q.succ[j]))),
                carried(splice(&p.succ, i, without(&q.succ, j))),
            ]
        }
        Rule::ParIntro { i, j } => {
            let p = &ps[0];
            let u = p.succ[*i].union(p.succ[*j]);
            vec![same_ante(p), ("par", c.succ.get((*i).min(*j)) == Some(&u)), carried(merge(&p.succ, *i, *j, u))]
        }
        Rule::ParElim { target } => {
            let (p, l, r) = (&ps[0], &ps[1], &ps[2]);
            let e = p.succ[*target];
            let mut items = l.succ.clone();
            items.extend(&r.succ);
            vec![
                same_ante(p),
                ("casel", l.ante.subset_of(e)),
                ("caser", r.ante.subset_of(e)),
                ("par split", e.subset_of(l.ante.union(r.ante))),
                carried(splice(&p.succ, *target, items)),
            ]
        }
        Rule::SubLeft { index, .. } => {
            let p = &ps[0];
            let i = resolve(*index, p.succ.len(), false);
            vec![("subtraction left", c.ante.subset_of(p.ante.minus(p.succ[i]))), carried(without(&p.succ, i))]
        }
        Rule::ParLeft { .. } => {
            let (l, r) = (&ps[0], &ps[1]);
            let mut items = l.succ.clone();
            items.extend(&r.succ);
            vec![("par left", c.ante == l.ante.union(r.ante)), carried(items)]
        }
        Rule::Dereliction { .. } | Rule::Weakening { .. } | Rule::Contraction { .. } | Rule::Storage { .. } => vec![],
    }
}

fn read_node(d: &Derivation, path: &[usize], a: &Assignment, missing: &mut Vec<Violation>) -> Node {
    let mut get = |slot| {
        a.get(path, slot).unwrap_or_else(|| {
            missing.push(Violation { axiom: 0, path: path.to_vec(), message: format!("no event for {}", Judgement::new(path, slot)) });
            Event::EMPTY
        })
    };
    let ante = get(Slot::Ante);
    let succ = (0..d.conclusion.succ.len()).map(|i| get(Slot::Succ(i))).collect();
    Node { ante, succ }
}

fn multiplicative(d: &Derivation) -> Result<(), ProbError> {
    match d.nodes().into_iter().find(|(_, n)| n.rule.is_exponential()) {
        Some((_, n)) => Err(ProbError::NotMultiplicative(n.rule.name())),
        None => Ok(()),
    }
}

/// Check every constraint row at every node. Violations carry the node path; `axiom` is 0.
pub fn check_assignment(d: &Derivation, a: &Assignment) -> ValidationReport {
    let mut out = Vec::new();
    if let Err(e) = multiplicative(d) {
        out.push(Violation { axiom: 0, path: vec![], message: e.to_string() });
        return ValidationReport::from_violations(out);
    }
    let typing = check(d);
    if !typing.ok {
        out.push(Violation { axiom: 0, path: vec![], message: typing.to_string() });
        return ValidationReport::from_violations(out);
    }
    for (path, n) in d.nodes() {
        let c = read_node(n, &path, a, &mut out);
        let ps: Vec<Node> = n
            .premises
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let mut pp = path.clone();
                pp.push(k);
                read_node(p, &pp, a, &mut Vec::new())
            })
            .collect();
        for (row, ok) in rows(&n.rule, &c, &ps) {
            if !ok {
                out.push(Violation { axiom: 0, path: path.clone(), message: format!("{} row fails at {}", row, n.rule.name()) });
            }
        }
        for i in 0..n.conclusion.control.len() {
            if let Some(e) = a.get(&path, Slot::Control(i)) {
                if !e.is_empty() {
                    out.push(Violation { axiom: 0, path: path.clone(), message: format!("p-term at c{i} has event {e}, not empty") });
                }
            }
        }
    }
    out.sort_by(|x, y| x.path.cmp(&y.path));
    out.dedup();
    ValidationReport::from_violations(out)
}

pub fn decompose(d: &Derivation, a: &Assignment) -> Result<Vec<Event>, ProbError> {
    decompose_with(d, a, ParSplit::default())
}

pub fn decompose_with(d: &Derivation, a: &Assignment, split: ParSplit) -> Result<Vec<Event>, ProbError> {
    multiplicative(d)?;
    let report = check_assignment(d, a);
    if !report.ok {
        return Err(ProbError::AssignmentInvalid(report.to_string()));
    }
    Ok(build(d, &mut Vec::new(), a, split))
}

fn ev(a: &Assignment, path: &[usize], slot: Slot) -> Event {
    a.get(path, slot).unwrap_or_default()
}

fn child(path: &mut Vec<usize>, k: usize, f: impl FnOnce(&mut Vec<usize>) -> Vec<Event>) -> Vec<Event> {
    path.push(k);
    let out = f(path);
    path.pop();
    out
}

/// The inductive construction, one case per rule; `a` is known to satisfy the rows.
fn build(d: &Derivation, path: &mut Vec<usize>, a: &Assignment, split: ParSplit) -> Vec<Event> {
    let sub = |k: usize, path: &mut Vec<usize>| child(path, k, |p| build(&d.premises[k], p, a, split));
    let restrict = |v: Vec<Event>, e: Event| -> Vec<Event> { v.into_iter().map(|x| x.meet(e)).collect() };
    let len0 = || d.premises[0].conclusion.succ.len();
    match &d.rule {
        Rule::Axiom { .. } => vec![ev(a, path, Slot::Ante)],
        Rule::BotElim { .. } => vec![],
        Rule::Cut { index } => {
            let i = resolve(*index, len0(), true);
            let (p, q) = (sub(0, path), sub(1, path));
            let mi = p[i];
            splice(&p, i, restrict(q, mi))
        }
        Rule::BotIntro { .. } => {
            let mut p = sub(0, path);
            p.push(Event::EMPTY);
            p
        }
        Rule::SubIntro { index } => {
            let i = resolve(*index, len0(), true);
            let (p, q) = (sub(0, path), sub(1, path));
            path.push(1);
            let dd = ev(a, path, Slot::Ante);
            path.pop();
            let m = p[i];
            let mut items = vec![m.minus(dd)];
            items.extend(restrict(q, m.meet(dd)));
            splice(&p, i, items)
        }
        Rule::SubElim { index, right } => {
            let i = resolve(*index, len0(), true);
            let j = resolve(*right, d.premises[1].conclusion.succ.len(), false);
            let (p, q) = (sub(0, path), sub(1, path));
            let m = p[i];
            splice(&p, i, restrict(without(&q, j), m))
        }
        Rule::ParIntro { i, j } => {
            let p = sub(0, path);
            merge(&p, *i, *j, p[*i].union(p[*j]))
        }
        Rule::ParElim { target } => {
            let (p, l, r) = (sub(0, path), sub(1, path), sub(2, path));
            let (el, er) = (ante_of(a, path, 1), ante_of(a, path, 2));
            let n = p[*target];
            let (kl, kr) = disjoint(el, er, split);
            let mut items = restrict(l, n.meet(kl));
            items.extend(restrict(r, n.meet(kr)));
            splice(&p, *target, items)
        }
        Rule::SubLeft { index, .. } => {
            let i = resolve(*index, len0(), false);
            let p = sub(0, path);
            restrict(without(&p, i), ev(a, path, Slot::Ante))
        }
        Rule::ParLeft { .. } => {
            let (l, r) = (sub(0, path), sub(1, path));
            let (el, er) = (ante_of(a, path, 0), ante_of(a, path, 1));
            let (kl, kr) = disjoint(el, er, split);
            let mut items = restrict(l, kl);
            items.extend(restrict(r, kr));
            items
        }
        Rule::Dereliction { .. } | Rule::Weakening { .. } | Rule::Contraction { .. } | Rule::Storage { .. } => {
            unreachable!("checked multiplicative")
        }
    }
}

fn ante_of(a: &Assignment, path: &mut Vec<usize>, k: usize) -> Event {
    path.push(k);
    let e = ev(a, path, Slot::Ante);
    path.pop();
    e
}

fn disjoint(l: Event, r: Event, split: ParSplit) -> (Event, Event) {
    match split {
        ParSplit::KeepLeft => (l, r.minus(l)),
        ParSplit::KeepRight => (l.minus(r), r),
    }
}

/// The three conditions on the refined events, computed directly on bitsets.
pub fn verify_decomposition(d: &Derivation, a: &Assignment) -> bool {
    let Ok(parts) = decompose(d, a) else { return false };
    let h = ev(a, &[], Slot::Ante);
    let whole: Vec<Event> = (0..d.conclusion.succ.len()).map(|i| ev(a, &[], Slot::Succ(i))).collect();
    let refined = parts.iter().zip(&whole).all(|(p, c)| p.subset_of(*c));
    let disjoint = parts.iter().enumerate().all(|(i, p)| parts[i + 1..].iter().all(|q| p.meet(*q).is_empty()));
    let union = parts.iter().fold(Event::EMPTY, |u, p| u.union(*p));
    parts.len() == whole.len() && refined && disjoint && union.meet(h) == h
}

/// `|(⋃ C'ᵢ) ∩ H| / |H|` under the uniform measure, or `None` when `H` is empty.
pub fn conditional_probability(h: Event, parts: &[Event]) -> Option<f64> {
    if h.is_empty() {
        return None;
    }
    let union = parts.iter().fold(Event::EMPTY, |u, p| u.union(*p));
    Some(union.meet(h).len() as f64 / h.len() as f64)
}

const ATTEMPTS: usize = 64;

/// A seeded assignment that passes [`check_assignment`]: leaf hypotheses are drawn at random,
/// composite events are forced, and hypotheses of cut-like premises are set from the other side.
/// Failed draws are retried with sparser events; the last attempt draws only empty events.
pub fn random_assignment(d: &Derivation, u: Universe, seed: u64) -> Result<Assignment, ProbError> {
    multiplicative(d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..ATTEMPTS {
        let mut a = Assignment::default();
        let mut draw = Draw { u, rng: &mut rng, density: 0.5 * (1.0 - k as f64 / (ATTEMPTS - 1) as f64) };
        gen(d, &mut Vec::new(), None, &mut draw, &mut a);
        if check_assignment(d, &a).ok {
            return Ok(a);
        }
    }
    Err(ProbError::NoConsistentAssignment(ATTEMPTS))
}

struct Draw<'r> {
    u: Universe,
    rng: &'r mut ChaCha8Rng,
    density: f64,
}

impl Draw<'_> {
    fn event(&mut self) -> Event {
        self.within(self.u.full())
    }

    /// Each point of `e` independently, with the current density.
    fn within(&mut self, e: Event) -> Event {
        let ps: Vec<u8> = e.points().into_iter().filter(|_| self.rng.gen_bool(self.density)).collect();
        Event::from_points(&ps)
    }

    /// Two events whose union is `e`.
    fn split(&mut self, e: Event) -> (Event, Event) {
        let l = e.points().into_iter().filter(|_| self.rng.gen_bool(0.5)).collect::<Vec<_>>();
        let l = Event::from_points(&l);
        let r = e.minus(l).union(self.within(l));
        (l, r)
    }
}

/// Fill events for `d` so its hypothesis is `want` when given; returns the conclusion events.
fn gen(d: &Derivation, path: &mut Vec<usize>, want: Option<Event>, rng: &mut Draw, a: &mut Assignment) -> Node {
    let mut sub = |k: usize, want: Option<Event>, rng: &mut Draw, a: &mut Assignment| {
        path.push(k);
        let n = gen(&d.premises[k], path, want, rng, a);
        path.pop();
        n
    };
    let len0 = || d.premises[0].conclusion.succ.len();
    let node = match &d.rule {
        Rule::Axiom { .. } => {
            let h = want.unwrap_or_else(|| rng.event());
            Node { ante: h, succ: vec![h] }
        }
        Rule::BotElim { .. } => Node { ante: Event::EMPTY, succ: vec![] },
        Rule::Cut { index } => {
            let p = sub(0, want, rng, a);
            let i = resolve(*index, len0(), true);
            let q = sub(1, Some(p.succ[i]), rng, a);
            Node { ante: p.ante, succ: splice(&p.succ, i, q.succ) }
        }
        Rule::BotIntro { .. } => {
            let mut p = sub(0, want, rng, a);
            p.succ.push(Event::EMPTY);
            p
        }
        Rule::SubIntro { index } => {
            let p = sub(0, want, rng, a);
            let q = sub(1, None, rng, a);
            let i = resolve(*index, len0(), true);
            let mut items = vec![p.succ[i].minus(q.ante)];
            items.extend(q.succ);
            Node { ante: p.ante, succ: splice(&p.succ, i, items) }
        }
        Rule::SubElim { index, right } => {
            let p = sub(0, want, rng, a);
            let i = resolve(*index, len0(), true);
            let extra = rng.event();
            let q = sub(1, Some(p.succ[i].union(extra)), rng, a);
            let j = resolve(*right, q.succ.len(), false);
            Node { ante: p.ante, succ: splice(&p.succ, i, without(&q.succ, j)) }
        }
        Rule::ParIntro { i, j } => {
            let p = sub(0, want, rng, a);
            let e = p.succ[*i].union(p.succ[*j]);
            Node { ante: p.ante, succ: merge(&p.succ, *i, *j, e) }
        }
        Rule::ParElim { target } => {
            let p = sub(0, want, rng, a);
            let (l, r) = rng.split(p.succ[*target]);
            let ln = sub(1, Some(l), rng, a);
            let rn = sub(2, Some(r), rng, a);
            let mut items = ln.succ;
            items.extend(rn.succ);
            Node { ante: p.ante, succ: splice(&p.succ, *target, items) }
        }
        Rule::SubLeft { index, .. } => {
            let p = sub(0, want.map(|w| w.union(rng.event())), rng, a);
            let i = resolve(*index, p.succ.len(), false);
            Node { ante: want.unwrap_or(p.ante.minus(p.succ[i])), succ: without(&p.succ, i) }
        }
        Rule::ParLeft { .. } => {
            let (l, r) = match want {
                Some(w) => rng.split(w),
                None => (rng.event(), rng.event()),
            };
            let ln = sub(0, Some(l), rng, a);
            let rn = sub(1, Some(r), rng, a);
            let mut items = ln.succ;
            items.extend(rn.succ);
            Node { ante: ln.ante.union(rn.ante), succ: items }
        }
        Rule::Dereliction { .. } | Rule::Weakening { .. } | Rule::Contraction { .. } | Rule::Storage { .. } => {
            unreachable!("checked multiplicative")
        }
    };
    a.set(path, Slot::Ante, node.ante);
    for (i, e) in node.succ.iter().enumerate() {
        a.set(path, Slot::Succ(i), *e);
    }
    node
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typing::elaborate_text;

    const SUB_INTRO: &str = "(sub-intro (axiom x c) (axiom y d))";

    fn sub_intro_case(mkc: Event) -> (Derivation, Assignment) {
        let d = elaborate_text(SUB_INTRO).unwrap();
        let (c, dd) = (Event::from_points(&[0, 1]), Event::from_points(&[1, 2]));
        let mut a = Assignment::default();
        a.set(&[0], Slot::Ante, c);
        a.set(&[0], Slot::Succ(0), c);
        a.set(&[1], Slot::Ante, dd);
        a.set(&[1], Slot::Succ(0), dd);
        a.set(&[], Slot::Ante, c);
        a.set(&[], Slot::Succ(0), mkc);
        a.set(&[], Slot::Succ(1), dd);
        (d, a)
    }

    #[test]
    fn sub_intro_events() {
        let (d, a) = sub_intro_case(Event::from_points(&[0]));
        assert!(check_assignment(&d, &a).ok);
        assert_eq!(decompose(&d, &a).unwrap(), vec![Event::from_points(&[0]), Event::from_points(&[1])]);
        assert!(verify_decomposition(&d, &a));
        let (d, a) = sub_intro_case(Event::from_points(&[0, 1]));
        let r = check_assignment(&d, &a);
        assert!(!r.ok && r.to_string().contains("mkc"), "{r}");
        assert!(matches!(decompose(&d, &a), Err(ProbError::AssignmentInvalid(_))));
    }

    #[test]
    fn axiom_and_empty_hypothesis() {
        let d = elaborate_text("(axiom x h)").unwrap();
        let mut a = Assignment::default();
        let h = Event::from_points(&[0, 2]);
        a.set(&[], Slot::Ante, h);
        a.set(&[], Slot::Succ(0), h);
        assert_eq!(decompose(&d, &a).unwrap(), vec![h]);
        a.set(&[], Slot::Ante, Event::EMPTY);
        a.set(&[], Slot::Succ(0), Event::EMPTY);
        assert!(verify_decomposition(&d, &a));
    }

    #[test]
    fn par_intro_unions() {
        let d = elaborate_text(&format!("(par-intro {SUB_INTRO} 0 1)")).unwrap();
        let (_, mut a) = sub_intro_case(Event::from_points(&[0]));
        let inner: Vec<(Judgement, Event)> = a.0.iter().map(|(k, v)| (Judgement { path: [&[0][..], &k.path].concat(), slot: k.slot }, *v)).collect();
        a = Assignment(inner.into_iter().collect());
        let c = Event::from_points(&[0, 1]);
        a.set(&[], Slot::Ante, c);
        a.set(&[], Slot::Succ(0), Event::from_points(&[0, 1, 2]));
        assert!(check_assignment(&d, &a).ok, "{}", check_assignment(&d, &a));
        assert_eq!(decompose(&d, &a).unwrap(), vec![c]);
    }

    #[test]
    fn p_terms_empty() {
        let d = elaborate_text("(sub-elim (sub-intro (axiom z c) (axiom x c)) (sub-intro (axiom y c) (axiom x c)) 0 1)").unwrap();
        let mut a = random_assignment(&d, Universe::new(4).unwrap(), 3).unwrap();
        a.set(&[], Slot::Control(0), Event::EMPTY);
        assert!(check_assignment(&d, &a).ok);
        a.set(&[], Slot::Control(0), Event::from_points(&[1]));
        assert!(!check_assignment(&d, &a).ok);
    }

    #[test]
    fn random_is_deterministic_and_valid() {
        let d = elaborate_text(SUB_INTRO).unwrap();
        let u = Universe::new(4).unwrap();
        assert_eq!(random_assignment(&d, u, 9).unwrap(), random_assignment(&d, u, 9).unwrap());
        for seed in 0..1000 {
            let a = random_assignment(&d, u, seed).unwrap();
            assert!(verify_decomposition(&d, &a), "seed {seed}");
        }
    }

    #[test]
    fn exponential_rejected() {
        let d = elaborate_text("(der (axiom x a) 0)").unwrap();
        let u = Universe::new(2).unwrap();
        assert_eq!(random_assignment(&d, u, 0), Err(ProbError::NotMultiplicative("der")));
    }

    #[test]
    fn json_round_trip() {
        let (_, a) = sub_intro_case(Event::from_points(&[0]));
        assert_eq!(Assignment::from_json(&a.to_json()).unwrap(), a);
        assert_eq!("0.1:c2".parse::<Judgement>().unwrap(), Judgement::new(&[0, 1], Slot::Control(2)));
        assert!(Universe::new(17).is_err());
    }
}
