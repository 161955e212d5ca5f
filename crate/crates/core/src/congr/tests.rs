use std::sync::OnceLock;

use super::*;
use crate::exactnum::arith::sigma;

fn rational_field() -> Arc<NumberField> {
    NumberField::from_ints(&[0, 1]).unwrap()
}

fn f32() -> &'static PrimitiveForm {
    static F: OnceLock<PrimitiveForm> = OnceLock::new();
    F.get_or_init(|| eigenforms(32, 0).unwrap().remove(0))
}

fn ctx_at(p: u64, idx: usize) -> LValueContext {
    static ADJ: OnceLock<LValueContext> = OnceLock::new();
    let base = ADJ.get_or_init(|| {
        let q = prime_split(&f32().field, 211).unwrap().remove(0);
        LValueContext::new(4, 18, f32(), &q).unwrap().compute_adjoint(256).unwrap()
    });
    let q = prime_split(&f32().field, p).unwrap().remove(idx);
    LValueContext::new(4, 18, f32(), &q).unwrap().with_adjoint(base.adjoint.values().cloned().collect())
}

#[test]
fn ramanujan_691() {
    let k = rational_field();
    let p = prime_split(&k, 691).unwrap().remove(0);
    let d = crate::forms1::delta(10);
    let primes = [2u64, 3, 5, 7];
    let a: Vec<NfElem> = primes.iter().map(|&q| NfElem::from_rational(&k, d.coeff(q as usize).clone())).collect();
    let b: Vec<NfElem> = primes.iter().map(|&q| NfElem::from_bigint(&k, &sigma(11, q))).collect();
    let r = eigensystems_congruent(&a, &b, &primes, &p).unwrap();
    assert!(r.congruent);
    let p7 = prime_split(&k, 7).unwrap().remove(0);
    assert!(!eigensystems_congruent(&a, &b, &primes, &p7).unwrap().congruent);
}

#[test]
fn sturm_self_and_conjugate() {
    let f = f32();
    for p in prime_split(&f.field, 211).unwrap() {
        assert!(sturm_congruent(f, f, &p, 4, 18).unwrap().congruent);
        let r = sturm_congruent(f, &conjugate_form(f).unwrap(), &p, 4, 18).unwrap();
        assert!(!r.congruent);
        assert_eq!(r.witness, Some(2));
    }
}

#[test]
fn sturm_rejects_wrong_weight() {
    let f = f32();
    let p = prime_split(&f.field, 211).unwrap().remove(0);
    assert!(sturm_congruent(f, f, &p, 2, 18).is_err());
}

#[test]
fn c_kn_values() {
    assert_eq!(c_kn(18, 4), BigInt::from(15));
    assert_eq!(c_kn(18, 2), BigInt::from(1));
    assert_eq!(c_kn(30, 4), BigInt::from(15 * 40));
}

#[test]
fn discriminant_lists() {
    assert_eq!(admissible_discriminants(4, 13), vec![1, 5, 8, 12, 13]);
    assert_eq!(admissible_discriminants(2, 8), vec![-3, -4, -7, -8]);
}

/// Index of the prime above 211 dividing L(18,f).
fn dividing_index() -> usize {
    (0..2).find(|&i| ctx_at(211, i).l_factor(18, 1, 1).unwrap().ord_p == 1).expect("one prime above 211 divides L(18,f)")
}

#[test]
fn example_at_211() {
    let hit = dividing_index();
    for idx in 0..2 {
        let ctx = ctx_at(211, idx);
        let r = congruence_check(&ctx, &SearchOptions::default()).unwrap();
        assert!(r.adjoint_certified);
        assert_eq!(r.condition1.factors[0].label, "L(18,f)");
        assert_eq!(r.witnesses().len(), 4, "{}", r.to_text());
        assert!(r.witnesses().contains(&Witness { m: 4, d: 1 }));
        assert!(r.condition3.holds);
        assert_eq!(verdict_from(&r), r.verdict);
        let j = r.to_json();
        assert_eq!(j["schema"], REPORT_SCHEMA);
        if idx == hit {
            assert!(r.condition1.holds, "{}", r.to_text());
            assert_eq!(r.verdict, Verdict::CongruencePrimeVsLiftComplement);
            assert_eq!(j["verdict"], "congruence-prime-vs-lift-complement");
        } else {
            assert_eq!(r.verdict, Verdict::NotEstablished);
        }
    }
}

#[test]
fn negative_control_at_5() {
    let ctx = ctx_at(5, 0);
    let r = congruence_check(&ctx, &SearchOptions::default()).unwrap();
    assert!(r.condition2.iter().all(|c| !c.holds && c.ord_total >= 1));
    assert_eq!(r.verdict, Verdict::NotEstablished);
}

#[test]
fn uncertified_adjoint_is_conditional() {
    let mut ctx = ctx_at(211, dividing_index());
    for a in ctx.adjoint.values_mut() {
        a.verified = false;
    }
    let r = congruence_check(&ctx, &SearchOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Conditional);
    ctx.adjoint.clear();
    ctx.adjoint_failures.insert(3, "unstable".into());
    let r = congruence_check(&ctx, &SearchOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Conditional);
    assert!(r.adjoint_notes[0].contains("unstable"));
}

#[test]
fn preconditions() {
    let ctx = ctx_at(211, 0);
    let bad = SearchOptions { m_range: Some((2, 4)), ..Default::default() };
    assert!(congruence_check(&ctx, &bad).is_err());
    let bad = SearchOptions { m_range: Some((3, 7)), ..Default::default() };
    assert!(congruence_check(&ctx, &bad).is_err());
    let q = prime_split(&f32().field, 211).unwrap().remove(0);
    let small = LValueContext::new(4, 16, &eigenforms(28, 0).unwrap()[0], &q);
    if let Ok(c) = small {
        assert!(congruence_check(&c, &SearchOptions::default()).is_err());
    }
}

#[test]
fn monotone_in_search_space() {
    let ctx = ctx_at(211, 0);
    let narrow = congruence_check(&ctx, &SearchOptions { m_range: Some((4, 4)), ..Default::default() }).unwrap();
    let wide = congruence_check(&ctx, &SearchOptions::default()).unwrap();
    assert!(narrow.condition2_holds());
    assert!(wide.condition2_holds());
}

#[test]
fn lambda_criterion_at_211_and_rejections() {
    let ctx = ctx_at(211, dividing_index());
    let t = lambda_criterion(&ctx, 6, 1).unwrap();
    assert!(t.ord_upper_bound < 0);
    assert_eq!(t.verdict, "congruence prime of I_n(g)");
    assert!(lambda_criterion(&ctx, 7, 1).is_err());
    assert!(lambda_criterion(&ctx_at(5, 0), 6, 1).is_err());
}

#[test]
fn verdict_is_pure() {
    let ctx = ctx_at(211, dividing_index());
    let mut r = congruence_check(&ctx, &SearchOptions::default()).unwrap();
    r.condition3.factors[1].ord_p = 1;
    assert_eq!(verdict_from(&r), Verdict::CongruencePrimeVsCigComplement);
    for c in r.condition2.iter_mut() {
        c.factors[0].ord_p = 5;
    }
    assert_eq!(verdict_from(&r), Verdict::NotEstablished);
}
