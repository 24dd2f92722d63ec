use std::collections::BTreeSet;

use serde::Serialize;

use super::ComputationalContext;
use crate::syntax::{free_vars, print_term, Term, VarName};

/// One failed axiom. `path` is a component index followed by child indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: u8,
    pub path: Vec<usize>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport { ok: violations.is_empty(), violations }
    }

    pub fn okay() -> Self {
        Self::from_violations(Vec::new())
    }

    pub fn has_axiom(&self, axiom: u8) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.ok {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "axiom {} at {:?}: {}", v.axiom, v.path, v.message)?;
        }
        Ok(())
    }
}

pub fn validate(c: &ComputationalContext) -> ValidationReport {
    validate_parts(&c.var, c.components())
}

/// Validate a candidate list of components over `var` without building a context first.
pub fn validate_parts(var: &VarName, comps: &[Term]) -> ValidationReport {
    let mut out = Vec::new();
    node(var, comps, &[], &[], &mut out);
    ValidationReport::from_violations(out)
}

fn violation(out: &mut Vec<Violation>, axiom: u8, path: &[usize], message: String) {
    out.push(Violation { axiom, path: path.to_vec(), message });
}

fn node(var: &VarName, comps: &[Term], enclosing: &[VarName], base: &[usize], out: &mut Vec<Violation>) {
    let want: BTreeSet<VarName> = [var.clone()].into();
    let mut stack = enclosing.to_vec();
    stack.push(var.clone());
    for (i, c) in comps.iter().enumerate() {
        let mut path = base.to_vec();
        path.push(i);
        let fv = free_vars(c);
        if fv != want {
            let names: Vec<&str> = fv.iter().map(|v| v.as_str()).collect();
            violation(
                out,
                1,
                &path,
                format!("{} has free variables {{{}}}, expected exactly {{{var}}}", print_term(c), names.join(",")),
            );
        }
        term(c, &mut path, &stack, true, out);
    }
}

fn guarded_shape_ok(t: &Term) -> bool {
    matches!(
        t,
        Term::List1(_) | Term::List2(..) | Term::ConnectTo(_) | Term::Var(_) | Term::CoApp(..) | Term::Casel(_) | Term::Caser(_)
    )
}

/// `slot` is true where a p-term may legally sit: node components and `connect_to` arguments.
fn term(t: &Term, path: &mut Vec<usize>, stack: &[VarName], slot: bool, out: &mut Vec<Violation>) {
    if t.is_pterm() && !slot {
        violation(out, 5, path, format!("p-term {} nested inside an m-term", print_term(t)));
    }
    match t {
        Term::ConnectTo(r) => {
            path.push(0);
            term(r, path, stack, true, out);
            path.pop();
        }
        Term::Postp2(y, body, anchor) => {
            let y = y.var();
            let fb = free_vars(body);
            if fb != [y.clone()].into() {
                violation(out, 2, path, format!("postpone body {} must have exactly the free variable {y}", print_term(body)));
            }
            if free_vars(anchor).contains(&y) {
                violation(out, 2, path, format!("bound variable {y} also free in the anchor {}", print_term(anchor)));
            }
            for (i, c) in [body, anchor].into_iter().enumerate() {
                path.push(i);
                term(c, path, stack, false, out);
                path.pop();
            }
        }
        Term::Store(s) => {
            if s.guards.len() != s.guarded.len() {
                violation(out, 3, path, format!("{} guards for {} guarded terms", s.guards.len(), s.guarded.len()));
            }
            for (i, g) in s.guarded.iter().enumerate() {
                if !guarded_shape_ok(g) {
                    let mut p = path.clone();
                    p.push(s.pterms.len() + i);
                    violation(out, 3, &p, format!("guarded term {} is not a list, a pointer or neutral", print_term(g)));
                }
            }
            for (i, p) in s.pterms.iter().enumerate() {
                if !p.is_pterm() {
                    let mut q = path.clone();
                    q.push(i);
                    violation(out, 4, &q, format!("m-term {} in the p-term part of a store", print_term(p)));
                }
            }
            let z = s.bound.var();
            if stack.contains(&z) {
                violation(out, 4, path, format!("store variable {z} clashes with an enclosing variable"));
            }
            let inner: Vec<Term> = s.pterms.iter().chain(&s.guarded).cloned().collect();
            // Box components: p-terms first, then guarded terms, matching the child order.
            node(&z, &inner, stack, path, out);
            if s.anchor.is_pterm() {
                let mut q = path.clone();
                q.push(inner.len());
                violation(out, 5, &q, "store anchor is a p-term".into());
            }
            path.push(inner.len());
            term(&s.anchor, path, stack, false, out);
            path.pop();
        }
        _ => {
            for (i, c) in t.children().into_iter().enumerate() {
                path.push(i);
                term(c, path, stack, false, out);
                path.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::ComputationalContext;

    fn report(src: &str) -> ValidationReport {
        validate(&ComputationalContext::parse(src).unwrap())
    }

    #[test]
    fn axiom_context() {
        assert!(report("context x : x").ok);
        assert!(report("context y : postp(y)").ok);
    }

    #[test]
    fn remote_binding_good() {
        let r = report("context z : postp('y -> 'x(y), mkc(z,'x)) || mkc('y(mkc(z,'x)),'x) || 'x(z)");
        assert!(r.ok, "{r}");
    }

    #[test]
    fn remote_binding_bad() {
        let r = report("context z : postp('y -> ['x(y),'x(z)], mkc(z,'x)) || mkc('y(mkc(z,'x)),'x)");
        assert!(!r.ok);
        assert!(r.has_axiom(2));
        assert!(r.violations.iter().all(|v| v.axiom == 2));
    }

    #[test]
    fn axiom_one() {
        let r = report("context x : x || y");
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].axiom, 1);
        assert_eq!(r.violations[0].path, vec![1]);
    }

    #[test]
    fn axiom_three_and_four() {
        let ok = report("context j : store([postp('d -> 'y('c(d)), k)];[[mkc(k,'q)]];['g];'k;j) || 'g('k(j))");
        assert!(ok.ok, "{ok}");
        let bad3 = report("context j : store([];[mkc(k,'q)];['g];'k;j)");
        assert!(bad3.has_axiom(3));
        let bad4 = report("context j : store([];[[k]];['g];'j;j)");
        assert!(bad4.has_axiom(4) || bad4.has_axiom(1));
        let bad4b = report("context j : store([];[[j]];['g];'k;j)");
        assert!(bad4b.has_axiom(1));
    }

    #[test]
    fn nested_pterm() {
        let r = report("context x : par(postp(x), x)");
        assert!(r.has_axiom(5));
        assert!(report("context x : x || connect_to(postp(x))").ok);
    }
}
