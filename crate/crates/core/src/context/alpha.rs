//! α-equivalence of contexts by backtracking search for a renaming.
//!
//! Binder CoNames (mkc, postp tags, store variables and guards) on one side are put in
//! bijection with those on the other; locally bound variables follow their binder's
//! scope. Components, store parts and guarded pairs are matched as multisets. Agreement
//! under a bijection is what the cofinite "for all v" clauses reduce to once binder
//! names are kept distinct, which elaboration and reduction guarantee by fresh naming.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use super::ComputationalContext;
use crate::syntax::{CoName, Term, VarName};

/// `Ac` additionally treats contraction lists as flat multisets and ignores `connect_to` targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Ac,
}

#[derive(Clone, Default, Debug)]
struct Bij {
    ab: BTreeMap<String, String>,
    ba: BTreeMap<String, String>,
}

impl Bij {
    fn link(&self, a: &str, b: &str) -> Option<Bij> {
        match (self.ab.get(a), self.ba.get(b)) {
            (Some(x), _) => (x == b).then(|| self.clone()),
            (None, Some(_)) => None,
            (None, None) => {
                let mut n = self.clone();
                n.ab.insert(a.to_string(), b.to_string());
                n.ba.insert(b.to_string(), a.to_string());
                Some(n)
            }
        }
    }

    /// Scoped binding: shadows whatever `a` and `b` meant before.
    fn bind(&self, a: &str, b: &str) -> Bij {
        let mut n = self.clone();
        if let Some(old) = n.ab.remove(a) {
            n.ba.remove(&old);
        }
        if let Some(old) = n.ba.remove(b) {
            n.ab.remove(&old);
        }
        n.ab.insert(a.to_string(), b.to_string());
        n.ba.insert(b.to_string(), a.to_string());
        n
    }
}

type K<'k> = &'k mut dyn FnMut(Bij) -> bool;

struct Matcher {
    mode: Mode,
    binders_a: BTreeSet<CoName>,
    binders_b: BTreeSet<CoName>,
}

fn flatten<'t>(t: &'t Term, out: &mut Vec<&'t Term>) {
    match t {
        Term::List2(a, b) => {
            flatten(a, out);
            flatten(b, out);
        }
        _ => out.push(t),
    }
}

/// Name-free shape used to prune candidate pairs.
fn skel(t: &Term, mode: Mode) -> String {
    let ac = mode == Mode::Ac;
    match t {
        Term::Var(_) => "v".into(),
        Term::CoApp(_, m) => format!("c({})", skel(m, mode)),
        Term::ConnectTo(_) if ac => "ct".into(),
        Term::ConnectTo(m) => format!("ct({})", skel(m, mode)),
        Term::Par(a, b) => format!("par({},{})", skel(a, mode), skel(b, mode)),
        Term::Casel(m) => format!("l({})", skel(m, mode)),
        Term::Caser(m) => format!("r({})", skel(m, mode)),
        Term::Mkc(m, _) => format!("mkc({})", skel(m, mode)),
        Term::Nil => "[]".into(),
        Term::List1(m) => format!("[{}]", skel(m, mode)),
        Term::List2(..) if ac => {
            let mut leaves = Vec::new();
            flatten(t, &mut leaves);
            let mut ks: Vec<String> = leaves.iter().map(|l| skel(l, mode)).collect();
            ks.sort();
            format!("L{{{}}}", ks.join(","))
        }
        Term::List2(a, b) => format!("[{},{}]", skel(a, mode), skel(b, mode)),
        Term::Postp1(m) => format!("p({})", skel(m, mode)),
        Term::Postp2(_, b, a) => format!("pp({},{})", skel(b, mode), skel(a, mode)),
        Term::Store(s) => {
            let mut ps: Vec<String> = s.pterms.iter().map(|p| skel(p, mode)).collect();
            ps.sort();
            let mut gs: Vec<String> = s.guarded.iter().map(|p| skel(p, mode)).collect();
            gs.sort();
            format!("st({};{};{})", ps.join(","), gs.join(","), skel(&s.anchor, mode))
        }
    }
}

impl Matcher {
    fn co(&self, a: &CoName, b: &CoName, st: &Bij) -> Option<Bij> {
        let ba = self.binders_a.contains(a);
        let bb = self.binders_b.contains(b);
        if ba != bb {
            return None;
        }
        if !ba {
            return (a == b).then(|| st.clone());
        }
        st.link(&a.0, &b.0)
    }

    fn term(&self, a: &Term, b: &Term, vars: &Bij, st: Bij, k: K) -> bool {
        use Term::*;
        match (a, b) {
            (Var(x), Var(y)) => match (vars.ab.get(&x.0), vars.ba.get(&y.0)) {
                (Some(y2), _) => *y2 == y.0 && k(st),
                (None, Some(_)) => false,
                (None, None) => x == y && k(st),
            },
            (CoApp(y, t), CoApp(y2, t2)) => match self.co(y, y2, &st) {
                Some(s) => self.term(t, t2, vars, s, k),
                None => false,
            },
            (ConnectTo(_), ConnectTo(_)) if self.mode == Mode::Ac => k(st),
            (ConnectTo(t), ConnectTo(t2))
            | (Casel(t), Casel(t2))
            | (Caser(t), Caser(t2))
            | (List1(t), List1(t2))
            | (Postp1(t), Postp1(t2)) => self.term(t, t2, vars, st, k),
            (Mkc(t, y), Mkc(t2, y2)) => match self.co(y, y2, &st) {
                Some(s) => self.term(t, t2, vars, s, k),
                None => false,
            },
            (Nil, Nil) => k(st),
            (List2(..), List2(..)) if self.mode == Mode::Ac => {
                let (mut la, mut lb) = (Vec::new(), Vec::new());
                flatten(a, &mut la);
                flatten(b, &mut lb);
                let ka = la.iter().map(|t| skel(t, self.mode)).collect();
                let kb = lb.iter().map(|t| skel(t, self.mode)).collect();
                self.multiset(&la, &lb, ka, kb, &|x, y, s, k| self.term(x, y, vars, s, k), st, k)
            }
            (Par(a0, a1), Par(b0, b1)) | (List2(a0, a1), List2(b0, b1)) => {
                self.term(a0, b0, vars, st, &mut |s| self.term(a1, b1, vars, s, &mut *k))
            }
            (Postp2(y, body, an), Postp2(y2, body2, an2)) => {
                let Some(s) = self.co(y, y2, &st) else { return false };
                let inner = vars.bind(&y.0, &y2.0);
                self.term(body, body2, &inner, s, &mut |s2| self.term(an, an2, vars, s2, &mut *k))
            }
            (Store(s1), Store(s2)) => {
                if s1.pterms.len() != s2.pterms.len() || s1.guarded.len() != s2.guarded.len() {
                    return false;
                }
                let Some(st) = self.co(&s1.bound, &s2.bound, &st) else { return false };
                let inner = vars.bind(&s1.bound.0, &s2.bound.0);
                let pa: Vec<&Term> = s1.pterms.iter().collect();
                let pb: Vec<&Term> = s2.pterms.iter().collect();
                let ga: Vec<(&Term, &CoName)> = s1.guarded.iter().zip(&s1.guards).collect();
                let gb: Vec<(&Term, &CoName)> = s2.guarded.iter().zip(&s2.guards).collect();
                let keys = |ts: &[&Term]| ts.iter().map(|t| skel(t, self.mode)).collect::<Vec<_>>();
                let gkeys = |ts: &[(&Term, &CoName)]| ts.iter().map(|t| skel(t.0, self.mode)).collect::<Vec<_>>();
                self.multiset(
                    &pa,
                    &pb,
                    keys(&pa),
                    keys(&pb),
                    &|x, y, s, k| self.term(x, y, &inner, s, k),
                    st,
                    &mut |st2| {
                        self.multiset(
                            &ga,
                            &gb,
                            gkeys(&ga),
                            gkeys(&gb),
                            &|x, y, s, k| match self.co(x.1, y.1, &s) {
                                Some(s) => self.term(x.0, y.0, &inner, s, k),
                                None => false,
                            },
                            st2,
                            &mut |st3| self.term(&s1.anchor, &s2.anchor, vars, st3, &mut *k),
                        )
                    },
                )
            }
            _ => false,
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn multiset<X: PartialEq>(
        &self,
        xs: &[X],
        ys: &[X],
        kx: Vec<String>,
        ky: Vec<String>,
        unify: &dyn Fn(&X, &X, Bij, K) -> bool,
        st: Bij,
        k: K,
    ) -> bool {
        if xs.len() != ys.len() {
            return false;
        }
        let cands: Vec<Vec<usize>> = kx
            .iter()
            .map(|a| (0..ys.len()).filter(|&j| ky[j] == *a).collect())
            .collect();
        if cands.iter().any(|c| c.is_empty()) {
            return false;
        }
        let mut order: Vec<usize> = (0..xs.len()).collect();
        order.sort_by_key(|&i| cands[i].len());
        let mut used = vec![false; ys.len()];
        self.step(&order, 0, &cands, xs, ys, &mut used, unify, st, k)
    }

    #[allow(clippy::too_many_arguments)]
    fn step<X: PartialEq>(
        &self,
        order: &[usize],
        pos: usize,
        cands: &[Vec<usize>],
        xs: &[X],
        ys: &[X],
        used: &mut Vec<bool>,
        unify: &dyn Fn(&X, &X, Bij, K) -> bool,
        st: Bij,
        k: K,
    ) -> bool {
        if pos == order.len() {
            return k(st);
        }
        let i = order[pos];
        let mut tried: Vec<usize> = Vec::new();
        for &j in &cands[i] {
            if used[j] || tried.iter().any(|&t| ys[t] == ys[j]) {
                continue;
            }
            used[j] = true;
            let ok = unify(&xs[i], &ys[j], st.clone(), &mut |s| {
                self.step(order, pos + 1, cands, xs, ys, &mut *used, unify, s, &mut *k)
            });
            used[j] = false;
            if ok {
                return true;
            }
            tried.push(j);
        }
        false
    }
}

fn binders<'t>(ts: impl Iterator<Item = &'t Term>) -> BTreeSet<CoName> {
    ts.flat_map(|t| t.binder_names()).collect()
}

/// α-equivalence of two item lists, where each item carries a label that must agree exactly.
pub fn alpha_equal_labelled<L: Debug + PartialEq>(
    var_a: &VarName,
    items_a: &[(Term, L)],
    var_b: &VarName,
    items_b: &[(Term, L)],
    mode: Mode,
) -> bool {
    if items_a.len() != items_b.len() {
        return false;
    }
    let m = Matcher {
        mode,
        binders_a: binders(items_a.iter().map(|p| &p.0)),
        binders_b: binders(items_b.iter().map(|p| &p.0)),
    };
    if m.binders_a.len() != m.binders_b.len() {
        return false;
    }
    let key = |p: &(Term, L)| format!("{:?}|{}", p.1, skel(&p.0, mode));
    let ka = items_a.iter().map(key).collect();
    let kb = items_b.iter().map(key).collect();
    let vars = Bij::default().bind(&var_a.0, &var_b.0);
    let ra: Vec<&(Term, L)> = items_a.iter().collect();
    let rb: Vec<&(Term, L)> = items_b.iter().collect();
    m.multiset(&ra, &rb, ka, kb, &|x, y, s, k| m.term(&x.0, &y.0, &vars, s, k), Bij::default(), &mut |_| true)
}

fn unlabelled(c: &ComputationalContext) -> Vec<(Term, ())> {
    c.components().iter().map(|t| (t.clone(), ())).collect()
}

pub fn alpha_equal(a: &ComputationalContext, b: &ComputationalContext) -> bool {
    alpha_equal_labelled(&a.var, &unlabelled(a), &b.var, &unlabelled(b), Mode::Exact)
}

/// α-equivalence modulo list associativity/commutativity and rewiring of `connect_to`.
pub fn alpha_equal_ac(a: &ComputationalContext, b: &ComputationalContext) -> bool {
    alpha_equal_labelled(&a.var, &unlabelled(a), &b.var, &unlabelled(b), Mode::Ac)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(s: &str) -> ComputationalContext {
        ComputationalContext::parse(s).unwrap()
    }

    #[test]
    fn reflexive() {
        let c = ctx("context z : postp('y -> 'x(y), mkc(z,'x)) || mkc('y(mkc(z,'x)),'x) || 'x(z)");
        assert!(alpha_equal(&c, &c));
    }

    #[test]
    fn renames_mkc_binder() {
        assert!(alpha_equal(&ctx("context x : mkc(x,'y) || 'y(x)"), &ctx("context x : mkc(x,'z) || 'z(x)")));
    }

    #[test]
    fn distinguishes_shapes() {
        assert!(!alpha_equal(&ctx("context x : mkc(x,'y) || 'y(x)"), &ctx("context x : mkc(x,'y) || x")));
    }

    #[test]
    fn binder_mapping_is_bijective() {
        let a = ctx("context x : mkc(x,'y) || mkc('y(x),'z) || 'z('y(x))");
        let b = ctx("context x : mkc(x,'p) || mkc('p(x),'q) || 'p('q(x))");
        assert!(!alpha_equal(&a, &b));
        let c = ctx("context x : mkc(x,'p) || mkc('p(x),'q) || 'q('p(x))");
        assert!(alpha_equal(&a, &c));
    }

    #[test]
    fn postp_tag_and_local_var() {
        let a = ctx("context z : postp('y -> 'x(y), mkc(z,'x)) || 'y(z)");
        let b = ctx("context z : postp('w -> 'v(w), mkc(z,'v)) || 'w(z)");
        assert!(alpha_equal(&a, &b));
    }

    #[test]
    fn store_boxes() {
        let a = ctx("context j : store([];[[mkc(k,'q)],connect_to(k)];['g,'h];'k;j) || 'g('k(j)) || casel('h('k(j)))");
        let b = ctx("context j : store([];[connect_to(u),[mkc(u,'r)]];['b,'a];'u;j) || 'a('u(j)) || casel('b('u(j)))");
        assert!(alpha_equal(&a, &b));
        let c = ctx("context j : store([];[connect_to(u),[mkc(u,'r)]];['b,'a];'u;j) || 'b('u(j)) || casel('a('u(j)))");
        assert!(!alpha_equal(&a, &c));
    }

    #[test]
    fn ac_mode_flattens_lists() {
        let a = ctx("context x : [[x,connect_to(x)],casel(x)]");
        let b = ctx("context x : [casel(x),[connect_to(casel(x)),x]]");
        assert!(!alpha_equal(&a, &b));
        assert!(alpha_equal_ac(&a, &b));
    }

    #[test]
    fn free_conames_must_agree() {
        assert!(!alpha_equal(&ctx("context x : 'a(x)"), &ctx("context x : 'b(x)")));
    }
}
