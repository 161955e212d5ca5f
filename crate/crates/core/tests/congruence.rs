//! End-to-end congruence reports.

use liftcong::congr::{weight32_example, lambda_criterion, Verdict, EXAMPLE_SCHEMA};
use liftcong::exactnum::prime_split;
use liftcong::forms1::eigenforms;
use liftcong::lift::valuation::LValueContext;

#[test]
fn example_reproduces() {
    let ex = weight32_example(256).unwrap();
    assert_eq!(ex.field_degree, 2);
    assert_eq!(ex.split_211.len(), 2);
    assert!(ex.norms.iter().all(|c| c.matches));
    assert!(ex.conclusion_reproduced());
    assert_eq!(ex.negative_control.verdict, Verdict::NotEstablished);
    assert!(ex.sturm_211.iter().all(|s| !s.congruent));
    for r in &ex.reports {
        assert!(r.cross_checks.iter().all(|c| c.passed), "{:?}", r.cross_checks);
    }
    let j = ex.to_json();
    assert_eq!(j["schema"], EXAMPLE_SCHEMA);
    assert_eq!(j["dim_lift_space"], 2);
}

#[test]
fn lambda_criterion_at_a_coprime_prime() {
    let f = eigenforms(32, 0).unwrap().remove(0);
    // 37 exceeds 2k − 1 = 35; pick the first prime above it whose ideals miss every factor.
    for p in [37u64, 41, 43, 47, 53] {
        for q in prime_split(&f.field, p).unwrap() {
            let ctx = LValueContext::new(4, 18, &f, &q).unwrap().compute_adjoint(256).unwrap();
            let t = lambda_criterion(&ctx, 6, 1).unwrap();
            if t.lambda.factors.iter().all(|x| x.ord_p == 0) {
                assert_eq!(t.ord_upper_bound, 0);
                assert_eq!(t.verdict, "not-established");
                return;
            }
        }
    }
    panic!("no coprime prime found");
}
