//! Worked examples end to end: typing, validation, reduction, equations, events.

mod common;

use coill_core::context::{alpha_equal, alpha_equal_ac, validate, ComputationalContext};
use coill_core::equations::{canonicalize, equal_mod_theory, EquationError};
use coill_core::prob::{random_assignment, verify_decomposition, Universe};
use coill_core::reduce::{find_redexes, normalize, reduce_once, RedexKind, Strategy};
use coill_core::typing::{check, elaborate_text, sequent_alpha_equal, Sequent};
use common::{elaborate_file, fixture, mult_fixtures};

fn ctx(name: &str) -> ComputationalContext {
    ComputationalContext::parse(&fixture(name)).unwrap()
}

#[test]
fn bot_eta_expansion() {
    let d = elaborate_file("bot-eta.drv");
    assert_eq!(d.conclusion.to_string(), "x:bot |> postp(x) | connect_to(postp(x)):bot");
    assert!(equal_mod_theory(&d, &elaborate_text("(axiom x bot)").unwrap()).unwrap());
}

#[test]
fn postpone_of_pointer_reduces_in_one_step() {
    let (nf, t) = normalize(&ctx("postp-pointer.ctx"), &Strategy::Leftmost, 10).unwrap();
    assert_eq!(t.kinds(), vec![RedexKind::LocalPostpConnect]);
    assert_eq!(nf.to_string(), "context x : x");
}

#[test]
fn remote_binding_example() {
    let bad = validate(&ctx("remote-binding-bad.ctx"));
    assert!(!bad.ok && bad.has_axiom(2), "{bad}");
    assert!(validate(&ctx("remote-binding.ctx")).ok);
    let d = elaborate_file("remote-binding.drv");
    assert!(check(&d).ok);
    // the displayed conclusion, with the two make-coroutine binders told apart
    let want = Sequent::parse("z:c |> postp('y -> 'x2(y), mkc(z,'x1)) | mkc('y(mkc(z,'x1)),'x2):sub(c, c), 'x1(z):c").unwrap();
    assert!(sequent_alpha_equal(&d.conclusion, &want), "{}", d.conclusion);
    assert!(alpha_equal(&d.conclusion.context(), &ctx("remote-binding.ctx")));
}

#[test]
fn remote_binding_reduces_to_a_typed_context() {
    let d = elaborate_file("remote-binding.drv");
    let (nf, t) = normalize(&d.conclusion.context(), &Strategy::Leftmost, 10).unwrap();
    assert_eq!(t.kinds(), vec![RedexKind::PostpMkc]);
    let direct = elaborate_text("(sub-intro (axiom z c) (axiom x c))").unwrap();
    assert!(alpha_equal(&nf, &direct.conclusion.context()), "{nf}");
    assert_eq!(direct.conclusion.succ_formulas(), d.conclusion.succ_formulas());
}

#[test]
fn church_two_replay() {
    let d = elaborate_file("church-two.drv");
    assert!(check(&d).ok);
    assert!(d.conclusion.succ.is_empty());
    let c = d.conclusion.context();
    let rs = find_redexes(&c);
    assert_eq!(rs.iter().map(|r| r.kind).collect::<Vec<_>>(), vec![RedexKind::PostpMkc]);
    let one = reduce_once(&c, &rs[0]).unwrap();
    let r2 = find_redexes(&one);
    assert_eq!(r2[0].kind, RedexKind::StoreContraction);
    let two = reduce_once(&one, &r2[0]).unwrap();
    let expected = ctx("church-two-step2.ctx");
    assert!(validate(&expected).ok);
    assert!(alpha_equal(&two, &expected), "{two}\nvs\n{expected}");
    let (nf, t) = normalize(&c, &Strategy::Leftmost, 500).unwrap();
    assert_eq!(t.len(), 6);
    assert!(find_redexes(&nf).is_empty());
    for step in &t.steps {
        assert!(validate(&step.after).ok);
        assert_eq!(step.after.var.as_str(), "n");
        assert!(step.after.components().iter().all(|p| p.is_pterm()));
    }
}

#[test]
fn scripted_strategy_matches_leftmost_when_always_zero() {
    let c = elaborate_file("church-two.drv").conclusion.context();
    let (a, _) = normalize(&c, &Strategy::Leftmost, 500).unwrap();
    let (b, _) = normalize(&c, &Strategy::Script(vec![0; 6]), 500).unwrap();
    assert_eq!(a, b);
}

#[test]
fn equality_is_an_equivalence_on_fixtures() {
    let ds: Vec<_> = mult_fixtures().into_iter().map(|(_, s)| elaborate_text(&s).unwrap()).collect();
    let rel = |a: usize, b: usize| match equal_mod_theory(&ds[a], &ds[b]) {
        Ok(e) => e,
        Err(EquationError::SequentMismatch(..)) => false,
        Err(e) => panic!("{e}"),
    };
    let n = ds.len();
    for a in 0..n {
        assert!(rel(a, a));
        for b in 0..n {
            assert_eq!(rel(a, b), rel(b, a));
            for c in 0..n {
                if rel(a, b) && rel(b, c) {
                    assert!(rel(a, c));
                }
            }
        }
    }
}

#[test]
fn canonical_forms_are_valid() {
    for (name, s) in mult_fixtures() {
        let c = canonicalize(&elaborate_text(&s).unwrap()).unwrap();
        assert!(validate(&c.context).ok, "{name}");
        assert!(alpha_equal_ac(&c.context, &c.context));
    }
}

#[test]
fn decomposition_over_fixtures_is_not_vacuous() {
    let mut occupied = 0;
    let mut total = 0;
    for (name, s) in mult_fixtures() {
        let d = elaborate_text(&s).unwrap();
        for seed in 0..100 {
            let a = random_assignment(&d, Universe::new(5).unwrap(), seed).unwrap();
            assert!(verify_decomposition(&d, &a), "{name} seed {seed}");
            total += 1;
            if a.get(&[], coill_core::prob::Slot::Ante).is_some_and(|h| !h.is_empty()) {
                occupied += 1;
            }
        }
    }
    // bot hypotheses are always empty; the rest mostly are not
    assert!(occupied * 2 > total, "{occupied}/{total}");
}
