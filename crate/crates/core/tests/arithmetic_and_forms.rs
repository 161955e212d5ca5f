//! Cross-module checks on exact arithmetic, elliptic forms and modular symbols.

use liftcong::exactnum::{bernoulli, prime_split, q_frac, xi_tilde, Rational};
use liftcong::forms1::{dim_s, eigenforms, hecke_charpoly};
use liftcong::halfint::shimura_match;
use liftcong::msym::{build_space, cuspidal_charpoly, periods_eta};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn xi_tilde_six() {
    assert_eq!(xi_tilde(6).unwrap(), q_frac(1, 252));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]
    #[test]
    fn xi_tilde_matches_bernoulli(half in 1u32..=20) {
        let m = 2 * half;
        let sign = if (m / 2 + 1) % 2 == 0 { 1 } else { -1 };
        let lhs = xi_tilde(m).unwrap() * Rational::from(BigInt::from(m as i64 * sign));
        prop_assert_eq!(lhs, bernoulli(m).unwrap());
    }
}

#[test]
fn weight_32_field_and_211() {
    let fs = eigenforms(32, 0).unwrap();
    assert_eq!(dim_s(32), 2);
    assert_eq!(fs.len(), 1);
    assert_eq!(fs[0].field.degree(), 2);
    let split = prime_split(&fs[0].field, 211).unwrap();
    assert_eq!(split.len(), 2);
    assert!(split.iter().all(|p| p.residue_degree() == 1));
}

#[test]
fn symbol_charpolys_are_squares() {
    for w in [12u32, 16, 20, 22] {
        let space = build_space(w).unwrap();
        for p in [2u64, 3, 5] {
            let q = hecke_charpoly(w, p).unwrap();
            assert_eq!(cuspidal_charpoly(&space, p).unwrap(), q.mul(&q), "w = {w}, p = {p}");
        }
    }
}

#[test]
fn shimura_eigenvalues_match_level_one() {
    for lambda in [9u32, 16] {
        for g in shimura_match(lambda, 0).unwrap() {
            for p in [3u64, 5, 7] {
                assert_eq!(&g.eigenvalue(p).unwrap(), g.f.coeff(p as usize));
            }
        }
    }
}

#[test]
fn delta_critical_values_at_691() {
    let f = eigenforms(12, 0).unwrap().remove(0);
    let p = prime_split(&f.field, 691).unwrap().remove(0);
    let pair = periods_eta(&build_space(12).unwrap(), &f, &p).unwrap();
    let ords: Vec<i64> = (1..=11u32).map(|l| pair.ord(l, 1).unwrap().expect("nonzero")).collect();
    // Only the edge values pick up the Eisenstein denominator 691.
    let mut expect = vec![0i64; 11];
    expect[0] = -1;
    expect[10] = -1;
    assert_eq!(ords, expect);
}
