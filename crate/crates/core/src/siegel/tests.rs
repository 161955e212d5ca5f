use super::*;
use crate::exactnum::arith::sigma;
use crate::forms1::eisenstein;
use crate::qforms::{a_prime, construct_lattice, enumerate_pd, LatticeMode};

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn registry_examples() {
    let id = HalfIntegralMatrix::diag(&[1, 1]);
    assert_eq!(siegel_series(&id, 2).unwrap().coeffs, ints(&[1]));
    let fund = construct_lattice(4, LatticeMode::Fundamental(5)).unwrap();
    assert_eq!(siegel_series(&fund, 5).unwrap().coeffs, ints(&[1]));
    // A′ at q = 2, n = 4: 1 − 2(4 + 2)X + 2^5 X²
    let f = siegel_series(&a_prime(), 2).unwrap();
    assert_eq!(f.coeffs, ints(&[1, -12, 32]));
    assert!(check_functional_equation(&f));
    // same family at n = 12 and q = 3, n = 4
    let f12 = siegel_series(&construct_lattice(12, LatticeMode::QSquared(2)).unwrap(), 2).unwrap();
    assert_eq!(f12.coeffs, ints(&[1, -6 * 2i64.pow(5), 2i64.pow(13)]));
    let t3 = construct_lattice(4, LatticeMode::QSquared(3)).unwrap();
    assert_eq!(siegel_series(&t3, 3).unwrap().coeffs, ints(&[1, -36, 243]));
}

#[test]
fn unsupported_shapes_are_reported() {
    let t = HalfIntegralMatrix::diag(&[1, 1, 1]);
    assert!(matches!(siegel_series(&t, 2), Err(Error::SiegelUnsupported(_))));
    // n = 4, d_T = 1 with 𝔣 = 4: outside the registry
    let big = a_prime().scale(2);
    assert!(matches!(siegel_series(&big, 2), Err(Error::SiegelUnsupported(_))));
}

#[test]
fn functional_equation_controls() {
    let one = SiegelPolynomial { p: 3, n: 2, ord_det: 0, nu: 0, chi: 1, coeffs: ints(&[1]) };
    assert!(check_functional_equation(&one));
    let bad = SiegelPolynomial { p: 3, n: 2, ord_det: 1, nu: 1, chi: 1, coeffs: ints(&[1, 1]) };
    assert!(!check_functional_equation(&bad));
}

#[test]
fn binary_shapes_are_palindromic() {
    for t in enumerate_pd(2, 400).unwrap() {
        for p in [2, 3, 5, 7] {
            let f = siegel_series(&t, p).unwrap();
            assert!(f.has_valid_shape(), "{t:?} p={p}");
            assert!(check_functional_equation(&f), "{t:?} p={p}: {:?}", f.coeffs);
        }
    }
}

#[test]
fn unit_density_is_one_minus_p_to_minus_r() {
    let t = HalfIntegralMatrix::diag(&[1]);
    for p in [3, 5, 7] {
        let prof = density_profile(&t, p, stabilization_bound(&t, p)).unwrap();
        for r in 1..4 {
            let expect = q(1) - Rational::new(BigInt::one(), BigInt::from(p).pow(r));
            assert_eq!(prof.at(r), expect);
        }
    }
}

#[test]
fn density_stabilizes() {
    for (t, p) in [(HalfIntegralMatrix::diag(&[1]), 3), (HalfIntegralMatrix::diag(&[6]), 2), (HalfIntegralMatrix::diag(&[1, 1]), 3), (HalfIntegralMatrix::diag(&[1, 1]), 2)] {
        let nu = stabilization_bound(&t, p);
        let a = density_profile(&t, p, nu).unwrap();
        let b = density_profile(&t, p, nu + 1).unwrap();
        for r in 2..5 {
            assert_eq!(a.at(r), b.at(r), "{t:?} p={p}");
            assert!(a.at(r) > q(0));
        }
    }
}

#[test]
fn oracle_rejects_bad_requests() {
    let t = HalfIntegralMatrix::diag(&[1, 1]);
    assert!(matches!(density_profile(&t, 2, 2), Err(Error::Precondition(_))));
    assert!(matches!(density_profile(&t, 101, 4), Err(Error::Resource(_))));
    assert!(density_profile(&HalfIntegralMatrix::diag(&[1, 1, 1]), 2, 5).is_err());
    let req = LocalDensityRequest { t: t.clone(), planes: 0, p: 3, nu: 3 };
    assert!(local_density_count(&req).is_err());
}

#[test]
fn identity_density_matches_trivial_series_at_two() {
    let t = HalfIntegralMatrix::diag(&[1, 1]);
    let f = siegel_series(&t, 2).unwrap();
    assert_eq!(f.coeffs, ints(&[1]));
    let req = LocalDensityRequest { t: t.clone(), planes: 3, p: 2, nu: stabilization_bound(&t, 2) };
    assert_eq!(local_density_count(&req).unwrap(), predicted_density(&f, 3));
}

/// Oracle agreement: direct and across consecutive ranks, for every class
/// with det(2T) ≤ 36 (n = 2) and t ≤ 18 (n = 1).
#[test]
fn oracle_agreement_small_determinants() {
    let mut mats: Vec<HalfIntegralMatrix> = (1..=18).map(|t| HalfIntegralMatrix::diag(&[t])).collect();
    mats.extend(enumerate_pd(2, 36).unwrap());
    for t in &mats {
        for p in [2u64, 3, 5] {
            let f = siegel_series(t, p).unwrap();
            assert_eq!(f.eval(&q(0)), q(1));
            let prof = density_profile(t, p, stabilization_bound(t, p)).unwrap();
            for m in [2u32, 3] {
                let (a, b) = (prof.at(m), prof.at(m + 1));
                let (fa, fb) = (predicted_density(&f, m), predicted_density(&f, m + 1));
                assert_eq!(a, fa, "{t:?} p={p} m={m}");
                assert_eq!(&a / &b, &fa / &fb, "ratio {t:?} p={p} m={m}");
            }
        }
    }
}

/// Σ_t t^{κ−1} Π_p F_p(t, p^{−κ}) q^t is proportional to the weight-κ
/// Eisenstein series.
#[test]
fn degree_one_eisenstein_global_check() {
    for kappa in [4u32, 6] {
        let e = eisenstein(kappa, 40).unwrap();
        let local = |t: i64| -> Rational {
            let mut v = num_traits::pow(q(t), kappa as usize - 1);
            for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
                let f = siegel_series(&HalfIntegralMatrix::diag(&[t]), p).unwrap();
                v *= f.eval(&Rational::new(BigInt::one(), BigInt::from(p).pow(kappa)));
            }
            v
        };
        let c = e.coeff(1) / local(1);
        for t in 1..40 {
            assert_eq!(e.coeff(t as usize), &(&c * local(t)), "kappa={kappa} t={t}");
            assert_eq!(local(t), Rational::from_integer(sigma(kappa - 1, t as u64)));
        }
    }
}

#[test]
fn validated_series_runs_oracle_once() {
    let t = HalfIntegralMatrix::from_2t(vec![vec![2, 0], vec![0, 18]]).unwrap();
    let a = siegel_series_validated(&t, 3).unwrap();
    let b = siegel_series_validated(&t, 3).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, siegel_series(&t, 3).unwrap());
}
