//! Terms of the dual linear calculus: m-terms, p-terms, free variables and substitution.

mod parse;
mod print;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub(crate) use parse::{Lexer, Tok};
pub use parse::{parse_term, ParseError};
pub use print::print_term;

/// A free variable such as `x`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VarName(pub String);

/// A unary function symbol such as `'x`, used for remote binding.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CoName(pub String);

impl VarName {
    pub fn new(s: impl Into<String>) -> Self {
        VarName(s.into())
    }
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl CoName {
    pub fn new(s: impl Into<String>) -> Self {
        CoName(s.into())
    }
    pub fn as_str(&self) -> &str {
        &self.0
    }
    /// The variable a binder with this name locally binds (`'y` binds `y`).
    pub fn var(&self) -> VarName {
        VarName(self.0.clone())
    }
}

impl From<&VarName> for CoName {
    fn from(v: &VarName) -> Self {
        CoName(v.0.clone())
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for CoName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "'{}", self.0)
    }
}

/// The body of a `store` p-term.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Store {
    pub pterms: Vec<Term>,
    pub guarded: Vec<Term>,
    pub guards: Vec<CoName>,
    pub bound: CoName,
    pub anchor: Term,
}

/// A term. The derived order is the canonical term order: constructor tag first, then children.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(VarName),
    CoApp(CoName, Box<Term>),
    ConnectTo(Box<Term>),
    Par(Box<Term>, Box<Term>),
    Casel(Box<Term>),
    Caser(Box<Term>),
    Mkc(Box<Term>, CoName),
    Nil,
    List1(Box<Term>),
    List2(Box<Term>, Box<Term>),
    Postp1(Box<Term>),
    /// `postp('y -> body, anchor)`; the tag names the locally bound variable.
    Postp2(CoName, Box<Term>, Box<Term>),
    Store(Box<Store>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("cannot substitute the p-term {0} for a variable")]
    SubstituteWithPTerm(String),
    #[error("ill-formed term at {path:?}: {msg}")]
    IllFormed { path: Vec<usize>, msg: String },
}

impl Term {
    pub fn var(x: &str) -> Term {
        Term::Var(VarName::new(x))
    }
    pub fn co(y: &str, t: Term) -> Term {
        Term::CoApp(CoName::new(y), Box::new(t))
    }
    pub fn connect(t: Term) -> Term {
        Term::ConnectTo(Box::new(t))
    }
    pub fn par(a: Term, b: Term) -> Term {
        Term::Par(Box::new(a), Box::new(b))
    }
    pub fn casel(t: Term) -> Term {
        Term::Casel(Box::new(t))
    }
    pub fn caser(t: Term) -> Term {
        Term::Caser(Box::new(t))
    }
    pub fn mkc(t: Term, y: &str) -> Term {
        Term::Mkc(Box::new(t), CoName::new(y))
    }
    pub fn list1(t: Term) -> Term {
        Term::List1(Box::new(t))
    }
    pub fn list2(a: Term, b: Term) -> Term {
        Term::List2(Box::new(a), Box::new(b))
    }
    pub fn postp(t: Term) -> Term {
        Term::Postp1(Box::new(t))
    }
    pub fn postp2(y: &str, body: Term, anchor: Term) -> Term {
        Term::Postp2(CoName::new(y), Box::new(body), Box::new(anchor))
    }
    pub fn store(s: Store) -> Term {
        Term::Store(Box::new(s))
    }

    pub fn is_pterm(&self) -> bool {
        matches!(self, Term::Postp1(_) | Term::Postp2(..) | Term::Store(_))
    }

    pub fn is_mterm(&self) -> bool {
        !self.is_pterm()
    }

    /// Number of constructor nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Immediate subterms in a fixed order (store: p-terms, guarded terms, anchor).
    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Var(_) | Term::Nil => vec![],
            Term::CoApp(_, t)
            | Term::ConnectTo(t)
            | Term::Casel(t)
            | Term::Caser(t)
            | Term::Mkc(t, _)
            | Term::List1(t)
            | Term::Postp1(t) => vec![t],
            Term::Par(a, b) | Term::List2(a, b) | Term::Postp2(_, a, b) => vec![a, b],
            Term::Store(s) => s
                .pterms
                .iter()
                .chain(s.guarded.iter())
                .chain(std::iter::once(&s.anchor))
                .collect(),
        }
    }

    /// Rebuild a node with each immediate subterm mapped through `f`.
    pub fn map_children(&self, f: &mut impl FnMut(&Term) -> Term) -> Term {
        match self {
            Term::Var(_) | Term::Nil => self.clone(),
            Term::CoApp(y, t) => Term::CoApp(y.clone(), Box::new(f(t))),
            Term::ConnectTo(t) => Term::ConnectTo(Box::new(f(t))),
            Term::Casel(t) => Term::Casel(Box::new(f(t))),
            Term::Caser(t) => Term::Caser(Box::new(f(t))),
            Term::Mkc(t, y) => Term::Mkc(Box::new(f(t)), y.clone()),
            Term::List1(t) => Term::List1(Box::new(f(t))),
            Term::Postp1(t) => Term::Postp1(Box::new(f(t))),
            Term::Par(a, b) => Term::Par(Box::new(f(a)), Box::new(f(b))),
            Term::List2(a, b) => Term::List2(Box::new(f(a)), Box::new(f(b))),
            Term::Postp2(y, a, b) => Term::Postp2(y.clone(), Box::new(f(a)), Box::new(f(b))),
            Term::Store(s) => Term::Store(Box::new(Store {
                pterms: s.pterms.iter().map(&mut *f).collect(),
                guarded: s.guarded.iter().map(&mut *f).collect(),
                guards: s.guards.clone(),
                bound: s.bound.clone(),
                anchor: f(&s.anchor),
            })),
        }
    }

    /// Top-down rewrite: where `f` returns a replacement it is used as is, otherwise descend.
    pub fn rewrite(&self, f: &mut impl FnMut(&Term) -> Option<Term>) -> Term {
        match f(self) {
            Some(t) => t,
            None => self.map_children(&mut |c| c.rewrite(f)),
        }
    }

    /// Bottom-up rewrite applied once at every node.
    pub fn rewrite_bottom_up(&self, f: &mut impl FnMut(Term) -> Term) -> Term {
        let t = self.map_children(&mut |c| c.rewrite_bottom_up(f));
        f(t)
    }

    pub fn contains(&self, needle: &Term) -> bool {
        self == needle || self.children().into_iter().any(|c| c.contains(needle))
    }

    /// Count occurrences of `needle` as a subterm.
    pub fn occurrences(&self, needle: &Term) -> usize {
        if self == needle {
            return 1;
        }
        self.children().into_iter().map(|c| c.occurrences(needle)).sum()
    }

    /// Every CoName occurring in the term, including binder tags.
    pub fn conames(&self) -> BTreeSet<CoName> {
        let mut out = BTreeSet::new();
        self.collect_conames(&mut out);
        out
    }

    fn collect_conames(&self, out: &mut BTreeSet<CoName>) {
        match self {
            Term::CoApp(y, _) | Term::Mkc(_, y) | Term::Postp2(y, ..) => {
                out.insert(y.clone());
            }
            Term::Store(s) => {
                out.extend(s.guards.iter().cloned());
                out.insert(s.bound.clone());
            }
            _ => {}
        }
        for c in self.children() {
            c.collect_conames(out);
        }
    }

    /// CoNames introduced by binders (mkc, binary postp, store bound and guards).
    pub fn binder_names(&self) -> BTreeSet<CoName> {
        let mut out = BTreeSet::new();
        self.collect_binders(&mut out);
        out
    }

    fn collect_binders(&self, out: &mut BTreeSet<CoName>) {
        match self {
            Term::Mkc(_, y) | Term::Postp2(y, ..) => {
                out.insert(y.clone());
            }
            Term::Store(s) => {
                out.extend(s.guards.iter().cloned());
                out.insert(s.bound.clone());
            }
            _ => {}
        }
        for c in self.children() {
            c.collect_binders(out);
        }
    }

    /// Every variable spelling occurring in the term, bound or free.
    pub fn var_names(&self) -> BTreeSet<VarName> {
        let mut out = BTreeSet::new();
        self.walk(&mut |t| {
            if let Term::Var(v) = t {
                out.insert(v.clone());
            }
        });
        out
    }

    pub fn walk(&self, f: &mut impl FnMut(&Term)) {
        f(self);
        for c in self.children() {
            c.walk(f);
        }
    }

    /// Rename CoNames and the variables they bind with the same map.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Term {
        let co = |y: &CoName| CoName(map.get(&y.0).cloned().unwrap_or_else(|| y.0.clone()));
        match self {
            Term::Var(v) => Term::Var(VarName(map.get(&v.0).cloned().unwrap_or_else(|| v.0.clone()))),
            Term::CoApp(y, t) => Term::CoApp(co(y), Box::new(t.rename(map))),
            Term::Mkc(t, y) => Term::Mkc(Box::new(t.rename(map)), co(y)),
            Term::Postp2(y, a, b) => {
                Term::Postp2(co(y), Box::new(a.rename(map)), Box::new(b.rename(map)))
            }
            Term::Store(s) => Term::Store(Box::new(Store {
                pterms: s.pterms.iter().map(|t| t.rename(map)).collect(),
                guarded: s.guarded.iter().map(|t| t.rename(map)).collect(),
                guards: s.guards.iter().map(co).collect(),
                bound: co(&s.bound),
                anchor: s.anchor.rename(map),
            })),
            _ => self.map_children(&mut |c| c.rename(map)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_term(self))
    }
}

/// Free variables of a term.
pub fn free_vars(t: &Term) -> BTreeSet<VarName> {
    let mut out = BTreeSet::new();
    collect_fv(t, &mut out);
    out
}

fn collect_fv(t: &Term, out: &mut BTreeSet<VarName>) {
    match t {
        Term::Var(v) => {
            out.insert(v.clone());
        }
        Term::Postp2(y, body, anchor) => {
            let mut inner = free_vars(body);
            inner.remove(&y.var());
            out.extend(inner);
            collect_fv(anchor, out);
        }
        Term::Store(s) => {
            let mut inner = BTreeSet::new();
            for p in s.pterms.iter().chain(&s.guarded) {
                collect_fv(p, &mut inner);
            }
            inner.remove(&s.bound.var());
            out.extend(inner);
            collect_fv(&s.anchor, out);
        }
        _ => {
            for c in t.children() {
                collect_fv(c, out);
            }
        }
    }
}

/// `t[x := m]`. Locally bound occurrences (binary postp, store) are left alone.
pub fn substitute(t: &Term, x: &VarName, m: &Term) -> Result<Term, SyntaxError> {
    if m.is_pterm() {
        return Err(SyntaxError::SubstituteWithPTerm(print_term(m)));
    }
    Ok(subst(t, x, m))
}

/// Substitution without the m-term check; callers guarantee `m` is an m-term.
pub(crate) fn subst(t: &Term, x: &VarName, m: &Term) -> Term {
    match t {
        Term::Var(v) if v == x => m.clone(),
        Term::Var(_) | Term::Nil => t.clone(),
        Term::Postp2(y, body, anchor) => {
            let body = if y.0 == x.0 { (**body).clone() } else { subst(body, x, m) };
            Term::Postp2(y.clone(), Box::new(body), Box::new(subst(anchor, x, m)))
        }
        Term::Store(s) if s.bound.0 == x.0 => Term::Store(Box::new(Store {
            anchor: subst(&s.anchor, x, m),
            ..(**s).clone()
        })),
        _ => t.map_children(&mut |c| subst(c, x, m)),
    }
}

/// Check that p-terms and m-terms only sit where the grammar allows them.
pub fn well_formed(t: &Term) -> Result<(), SyntaxError> {
    wf(t, &mut Vec::new())
}

fn wf(t: &Term, path: &mut Vec<usize>) -> Result<(), SyntaxError> {
    let ill = |path: &Vec<usize>, msg: String| SyntaxError::IllFormed { path: path.clone(), msg };
    let need_m = |c: &Term, i: usize, path: &mut Vec<usize>| -> Result<(), SyntaxError> {
        path.push(i);
        let r = if c.is_pterm() {
            Err(ill(path, format!("p-term {} where an m-term is required", print_term(c))))
        } else {
            wf(c, path)
        };
        path.pop();
        r
    };
    match t {
        Term::Var(v) if v.0.is_empty() => Err(ill(path, "empty variable name".into())),
        Term::Var(_) | Term::Nil => Ok(()),
        Term::ConnectTo(r) => {
            path.push(0);
            let out = wf(r, path);
            path.pop();
            out
        }
        Term::Store(s) => {
            if s.guards.len() != s.guarded.len() {
                return Err(ill(path, "guards and guarded terms differ in length".into()));
            }
            for (i, p) in s.pterms.iter().enumerate() {
                path.push(i);
                if !p.is_pterm() {
                    let e = ill(path, format!("m-term {} in the p-term list of a store", print_term(p)));
                    path.pop();
                    return Err(e);
                }
                wf(p, path)?;
                path.pop();
            }
            let base = s.pterms.len();
            for (i, g) in s.guarded.iter().enumerate() {
                need_m(g, base + i, path)?;
            }
            need_m(&s.anchor, base + s.guarded.len(), path)
        }
        _ => {
            for (i, c) in t.children().into_iter().enumerate() {
                need_m(c, i, path)?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[&str]) -> BTreeSet<VarName> {
        xs.iter().map(|x| VarName::new(*x)).collect()
    }

    #[test]
    fn fv_examples() {
        assert_eq!(free_vars(&Term::Nil), set(&[]));
        assert_eq!(free_vars(&Term::mkc(Term::var("x"), "y")), set(&["x"]));
        let p = Term::postp2("y", Term::co("x", Term::var("y")), Term::var("z"));
        assert_eq!(free_vars(&p), set(&["z"]));
    }

    #[test]
    fn fv_store_keeps_anchor() {
        let s = Term::store(Store {
            pterms: vec![Term::postp(Term::var("k"))],
            guarded: vec![Term::list1(Term::var("k"))],
            guards: vec![CoName::new("g")],
            bound: CoName::new("k"),
            anchor: Term::co("j", Term::var("k")),
        });
        assert_eq!(free_vars(&s), set(&["k"]));
    }

    #[test]
    fn subst_examples() {
        let x = VarName::new("x");
        let m = Term::mkc(Term::var("z"), "w");
        assert_eq!(substitute(&Term::var("x"), &x, &m).unwrap(), m);
        assert_eq!(substitute(&Term::var("y"), &x, &m).unwrap(), Term::var("y"));
        let t = Term::par(Term::var("x"), Term::co("a", Term::var("x")));
        let r = substitute(&t, &x, &Term::var("z")).unwrap();
        assert_eq!(r, Term::par(Term::var("z"), Term::co("a", Term::var("z"))));
    }

    #[test]
    fn subst_rejects_pterm() {
        let x = VarName::new("x");
        let err = substitute(&Term::var("x"), &x, &Term::postp(Term::var("y"))).unwrap_err();
        assert!(matches!(err, SyntaxError::SubstituteWithPTerm(_)));
    }

    #[test]
    fn subst_descends_into_store() {
        let s = Term::store(Store {
            pterms: vec![],
            guarded: vec![Term::list1(Term::var("k"))],
            guards: vec![CoName::new("g")],
            bound: CoName::new("k"),
            anchor: Term::var("x"),
        });
        let r = subst(&s, &VarName::new("x"), &Term::var("q"));
        match r {
            Term::Store(s) => assert_eq!(s.anchor, Term::var("q")),
            _ => unreachable!(),
        }
    }

    #[test]
    fn well_formedness() {
        assert!(well_formed(&Term::connect(Term::postp(Term::var("x")))).is_ok());
        assert!(well_formed(&Term::par(Term::postp(Term::var("x")), Term::var("y"))).is_err());
        let bad = Term::store(Store {
            pterms: vec![Term::var("k")],
            guarded: vec![],
            guards: vec![],
            bound: CoName::new("k"),
            anchor: Term::var("x"),
        });
        assert!(well_formed(&bad).is_err());
    }
}
