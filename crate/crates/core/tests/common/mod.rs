//! Shared generators: random well-typed scripts and random raw terms.
#![allow(dead_code)]

use coill_core::syntax::{CoName, Store, Term, VarName};
use coill_core::typing::{elaborate, parse_script, Derivation, Formula, Rule, Script};
use proptest::prelude::*;
use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub mod props;

pub const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{FIXTURES}/{name}")).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every multiplicative fixture script, by file name.
pub fn mult_fixtures() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(format!("{FIXTURES}/mult"))
        .expect("fixture dir")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "drv"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap()))
        .collect();
    out.sort();
    out
}

pub struct Gen {
    rng: ChaCha8Rng,
    next: usize,
    pub exponentials: bool,
}

impl Gen {
    pub fn new(seed: u64, exponentials: bool) -> Self {
        Gen { rng: ChaCha8Rng::seed_from_u64(seed), next: 0, exponentials }
    }

    fn var(&mut self) -> VarName {
        self.next += 1;
        VarName::new(format!("v{}", self.next))
    }

    fn atom(&mut self) -> Formula {
        Formula::atom(["a", "b", "c"].choose(&mut self.rng).unwrap())
    }

    fn formula(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.5) {
            return self.atom();
        }
        match self.rng.gen_range(0..3) {
            0 => Formula::par(self.formula(depth - 1), self.formula(depth - 1)),
            1 => Formula::sub(self.formula(depth - 1), self.formula(depth - 1)),
            _ if self.exponentials => Formula::why_not(self.formula(depth - 1)),
            _ => self.atom(),
        }
    }

    fn conclude(s: &Script) -> Derivation {
        elaborate(s).unwrap_or_else(|e| panic!("generator built an ill-typed script {s}: {e}"))
    }

    /// A derivation with hypothesis `ante` and roughly `steps` rule applications.
    pub fn derivation(&mut self, ante: Formula, steps: usize) -> Script {
        let mut s = Script::axiom(self.var().as_str(), ante);
        for _ in 0..steps {
            if let Some(next) = self.step(&s, steps / 2) {
                s = next;
            }
        }
        s
    }

    fn step(&mut self, s: &Script, budget: usize) -> Option<Script> {
        let d = Self::conclude(s);
        let succ = d.conclusion.succ_formulas();
        let n = succ.len();
        let flat = d.conclusion.control.len() + n;
        let pick = self.rng.gen_range(0..if self.exponentials { 9 } else { 6 });
        let i = if n > 0 { self.rng.gen_range(0..n) } else { 0 };
        let rule = |r: Rule, ps: Vec<Script>| Some(Script::new(r, ps));
        match pick {
            0 if n > 0 => {
                let f = self.formula(1);
                let q = self.derivation(f, budget.min(1));
                rule(Rule::SubIntro { index: Some(i) }, vec![s.clone(), q])
            }
            1 if n >= 2 => {
                let j = (i + 1 + self.rng.gen_range(0..n - 1)) % n;
                rule(Rule::ParIntro { i, j }, vec![s.clone()])
            }
            2 if flat > 0 => rule(Rule::BotIntro { target: self.rng.gen_range(0..flat) }, vec![s.clone()]),
            3 if n > 0 => {
                let q = self.derivation(succ[i].clone(), budget.min(2));
                rule(Rule::Cut { index: Some(i) }, vec![s.clone(), q])
            }
            4 => {
                let k = succ.iter().position(|f| matches!(f, Formula::ParF(..)))?;
                let Formula::ParF(c0, c1) = &succ[k] else { unreachable!() };
                let (l, r) = (self.derivation((**c0).clone(), budget.min(1)), self.derivation((**c1).clone(), budget.min(1)));
                rule(Rule::ParElim { target: k }, vec![s.clone(), l, r])
            }
            5 => {
                let k = succ.iter().position(|f| matches!(f, Formula::Sub(..)))?;
                let Formula::Sub(c, dd) = &succ[k] else { unreachable!() };
                let body = self.derivation((**c).clone(), budget.min(1));
                let q = Script::new(Rule::SubIntro { index: None }, vec![body, Script::axiom(self.var().as_str(), (**dd).clone())]);
                let qn = Self::conclude(&q).conclusion.succ.len();
                rule(Rule::SubElim { index: Some(k), right: Some(qn - 1) }, vec![s.clone(), q])
            }
            6 if n > 0 => rule(Rule::Dereliction { i }, vec![s.clone()]),
            7 if flat > 0 => {
                let f = Formula::why_not(self.formula(1));
                rule(Rule::Weakening { formula: f, target: self.rng.gen_range(0..flat) }, vec![s.clone()])
            }
            8 => {
                if let Some((a, b)) = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| {
                    succ[a] == succ[b] && matches!(succ[a], Formula::WhyNot(_))
                }) {
                    return rule(Rule::Contraction { i: a, j: b }, vec![s.clone()]);
                }
                let k = succ.iter().position(|f| matches!(f, Formula::WhyNot(_)))?;
                let Formula::WhyNot(c) = &succ[k] else { unreachable!() };
                let inner = self.derivation((**c).clone(), budget.min(1));
                let boxed = inner.all_why_not();
                rule(Rule::Storage { target: Some(k) }, vec![s.clone(), boxed])
            }
            _ => None,
        }
    }
}

trait Boxing {
    fn derelict(self, j: usize) -> Script;
    fn all_why_not(self) -> Script;
}

impl Boxing for Script {
    fn derelict(self, j: usize) -> Script {
        let d = Gen::conclude(&self);
        if matches!(d.conclusion.succ[j].1, Formula::WhyNot(_)) {
            self
        } else {
            Script::new(Rule::Dereliction { i: j }, vec![self])
        }
    }

    fn all_why_not(self) -> Script {
        let d = Gen::conclude(&self);
        let n = d.conclusion.succ.len();
        (0..n).fold(self, |s, j| s.derelict(j))
    }
}

pub fn random_derivation(seed: u64, exponentials: bool, steps: usize) -> Derivation {
    let mut g = Gen::new(seed, exponentials);
    let ante = g.formula(2);
    let s = g.derivation(ante, steps);
    elaborate(&s).unwrap()
}

pub fn elaborate_file(name: &str) -> Derivation {
    elaborate(&parse_script(&fixture(name)).unwrap()).unwrap()
}

/// Raw terms over variables `x, y, z` with binders drawn from `a, b`.
pub fn mterm() -> impl Strategy<Value = Term> + Clone {
    let leaf = prop_oneof![Just(Term::var("x")), Just(Term::var("y")), Just(Term::var("z"))];
    leaf.prop_recursive(4, 24, 3, |inner| {
        let co = prop_oneof![Just("a"), Just("b"), Just("h")];
        prop_oneof![
            (co.clone(), inner.clone()).prop_map(|(y, t)| Term::co(y, t)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::par(a, b)),
            inner.clone().prop_map(Term::casel),
            inner.clone().prop_map(Term::caser),
            (inner.clone(), co.clone()).prop_map(|(t, y)| Term::mkc(t, y)),
            inner.clone().prop_map(Term::list1),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::list2(a, b)),
            inner.clone().prop_map(Term::connect),
        ]
    })
}

/// Terms that may contain binding p-terms; bodies mention their bound variable.
pub fn any_term() -> impl Strategy<Value = Term> {
    let m = mterm();
    prop_oneof![
        m.clone(),
        m.clone().prop_map(Term::postp),
        (m.clone(), m.clone()).prop_map(|(body, anchor)| Term::postp2("a", Term::par(Term::var("a"), body), anchor)),
        (m.clone(), m.clone(), m.clone()).prop_map(|(p, g, anchor)| Term::store(Store {
            pterms: vec![Term::postp(Term::par(Term::var("b"), p))],
            guarded: vec![Term::list1(Term::par(Term::var("b"), g))],
            guards: vec![CoName::new("g")],
            bound: CoName::new("b"),
            anchor,
        })),
    ]
}
