//! Lift coefficients against independent constructions.

use liftcong::halfint::shimura_match;
use liftcong::lift::{eisenstein_table, hecke_tp_siegel, lift_table, maass_table, tp_eigenvalue_degree2, LiftSpec};
use liftcong::qforms::{e8, enumerate_pd, short_vectors};
use liftcong::siegel::{check_functional_equation, siegel_series};
use liftcong::exactnum::NfElem;
use proptest::prelude::*;

#[test]
fn lift_equals_maass_up_to_40() {
    let g = shimura_match(9, 400).unwrap().remove(0);
    let spec = LiftSpec::new(2, 10, g.clone()).unwrap();
    let a = lift_table(&spec, 40).unwrap();
    let b = maass_table(&g, 10, 40).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a.len(), b.len());
    for (t, v) in a.iter() {
        assert_eq!(Some(v), b.get(t), "T = {t}");
    }
}

#[test]
fn saito_kurokawa_is_hecke_eigen() {
    let g = shimura_match(9, 400).unwrap().remove(0);
    let spec = LiftSpec::new(2, 10, g).unwrap();
    let table = lift_table(&spec, 120).unwrap();
    for p in [2u64, 3] {
        let image = hecke_tp_siegel(&table, p).unwrap();
        let lam = tp_eigenvalue_degree2(spec.f().coeff(p as usize), p, 10);
        let small = table.restrict(image.det_bound);
        for (t, v) in image.iter() {
            assert_eq!(*v, small.get(t).unwrap().mul(&lam), "p = {p}, T = {t}");
        }
    }
}

#[test]
fn eisenstein_is_hecke_eigen() {
    let table = eisenstein_table(10, 120).unwrap();
    let image = hecke_tp_siegel(&table, 2).unwrap();
    let lam = image.scalar_multiple_of(&table.restrict(image.det_bound)).unwrap();
    // h_{2,2}(X) = (1 + X/2)(1 + X/4) at X = 2^10
    let x = 1024i64;
    let expect = (1 + x / 2) * (1 + x / 4);
    assert_eq!(lam, NfElem::from_int(table.field(), expect));
}

#[test]
fn e8_has_240_roots() {
    assert_eq!(short_vectors(&e8(), 2).iter().filter(|(_, n)| *n == 2).count(), 240);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn siegel_series_invariants(idx in 0usize..60, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let forms = enumerate_pd(2, 100).unwrap();
        let t = &forms[idx % forms.len()];
        let f = siegel_series(t, p).unwrap();
        prop_assert_eq!(f.eval(&liftcong::exactnum::q_int(0)), liftcong::exactnum::q_int(1));
        prop_assert!(check_functional_equation(&f));
    }
}
