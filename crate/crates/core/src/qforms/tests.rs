use super::*;
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[test]
fn disc_split_examples() {
    let t = HalfIntegralMatrix::from_2t(vec![vec![2, 1], vec![1, 2]]).unwrap();
    assert_eq!(disc_split(&t).unwrap(), DiscriminantData { d: -3, f: 1, det2: 3 });
    let a = disc_split(&a_prime()).unwrap();
    assert_eq!((a.d, a.f), (1, 2));
    assert!(disc_split(&HalfIntegralMatrix::diag(&[1])).is_err());
}

#[test]
fn from_entries_rejects_non_half_integers() {
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let ok = HalfIntegralMatrix::from_entries(&[vec![q(1), half.clone()], vec![half.clone(), q(1)]]).unwrap();
    assert_eq!(ok.two_t(), &[vec![2, 1], vec![1, 2]]);
    let third = Rational::new(BigInt::from(1), BigInt::from(3));
    assert!(HalfIntegralMatrix::from_entries(&[vec![q(1), third.clone()], vec![third, q(1)]]).is_err());
    assert!(HalfIntegralMatrix::from_2t(vec![vec![1, 0], vec![0, 2]]).is_err());
}

#[test]
fn hilbert_symbol_examples() {
    assert_eq!(hilbert_symbol(&q(2), &q(3), Place::Finite(2)).unwrap(), -1);
    assert_eq!(hilbert_symbol(&q(5), &q(7), Place::Finite(5)).unwrap(), -1);
    assert_eq!(hilbert_symbol(&q(-1), &q(-1), Place::Infinity).unwrap(), -1);
    assert_eq!(hilbert_symbol(&q(-1), &q(-1), Place::Finite(2)).unwrap(), -1);
    assert_eq!(hilbert_symbol(&q(-1), &q(-1), Place::Finite(3)).unwrap(), 1);
    let r = Rational::new(BigInt::from(3), BigInt::from(4));
    assert_eq!(hilbert_symbol(&r, &q(2), Place::Finite(2)).unwrap(), hilbert_symbol(&q(3), &q(2), Place::Finite(2)).unwrap());
}

/// (a, b)_p = 1 iff a x² + b y² = z² has a nontrivial solution mod p^k,
/// checked by brute force for odd p with units and single p-factors.
#[test]
fn hilbert_symbol_matches_local_solubility_odd_p() {
    for p in [3i64, 5, 7] {
        for a in [1, 2, 3, 5, 6, 7, 10, 14, 15] {
            for b in [1, 2, 3, 5, 6, 7, 10, 14, 15] {
                if (a % (p * p) == 0) || (b % (p * p) == 0) {
                    continue;
                }
                let m = p * p * p;
                let mut found = false;
                'outer: for x in 0..m {
                    for y in 0..m {
                        for z in 0..m {
                            let prim = x % p != 0 || y % p != 0 || z % p != 0;
                            if prim && (a * x * x + b * y * y - z * z).rem_euclid(m) == 0 {
                                found = true;
                                break 'outer;
                            }
                        }
                    }
                }
                let h = hilbert_symbol(&q(a), &q(b), Place::Finite(p as u64)).unwrap();
                assert_eq!(h == 1, found, "({a},{b})_{p}");
            }
        }
    }
}

#[test]
fn hasse_of_sums_of_squares() {
    // x² + y² + z² + w²: (1,1) everywhere trivial
    let t = HalfIntegralMatrix::diag(&[1, 1, 1, 1]);
    for p in [2, 3, 5] {
        assert_eq!(hasse_of(&t, Place::Finite(p)).unwrap(), 1);
    }
    // x² + 3y² + 3z² at p = 3 picks up (3,3)_3 = (3,-1)_3 = -1
    assert_eq!(hasse_invariant(&[q(1), q(3), q(3)], Place::Finite(3)).unwrap(), -1);
}

#[test]
fn diagonalization_preserves_determinant() {
    for t in [e8(), a_prime(), HalfIntegralMatrix::from_2t(vec![vec![2, 1, 0], vec![1, 4, 1], vec![0, 1, 6]]).unwrap()] {
        let d = diagonalize(&t).unwrap().iter().fold(q(1), |a, b| a * b);
        let expect = Rational::new(BigInt::from(t.det2()), BigInt::from(2).pow(t.n() as u32));
        assert_eq!(d, expect);
    }
}

#[test]
fn e8_is_even_unimodular_with_240_roots() {
    let e = e8();
    assert_eq!(e.det2(), 1);
    assert!(e.is_positive_definite());
    let roots = short_vectors(&e, 2).into_iter().filter(|(_, n)| *n == 2).count();
    assert_eq!(roots, 240);
}

#[test]
fn a_prime_is_d4() {
    let a = a_prime();
    assert_eq!(a.det2(), 4);
    let roots = short_vectors(&a, 2).into_iter().filter(|(_, n)| *n == 2).count();
    assert_eq!(roots, 24);
}

#[test]
fn binary_enumeration_examples() {
    let c = enumerate_pd(2, 4).unwrap();
    assert_eq!(c.len(), 2);
    assert!(enumerate_pd(2, 0).unwrap().is_empty());
    for d in [3, 4, 7, 8] {
        assert_eq!(classes_with_det(2, d).unwrap().len(), 1, "class number for -{d}");
    }
    // h(-23) = 3 up to SL2; the two non-ambiguous forms merge under GL2
    assert_eq!(classes_with_det(2, 23).unwrap().len(), 2);
    assert!(matches!(enumerate_pd(5, 4), Err(Error::Precondition(_))));
    assert!(matches!(enumerate_pd(4, 100_000), Err(Error::Resource(_))));
}

/// Every positive definite ternary matrix with small entries is isometric to
/// exactly one enumerated representative.
#[test]
fn ternary_enumeration_covers_brute_force() {
    let bound = 20;
    let reps = enumerate_pd(3, bound).unwrap();
    for (i, a) in reps.iter().enumerate() {
        for b in &reps[i + 1..] {
            assert!(isometry(a, b).is_none(), "{a:?} ~ {b:?}");
        }
    }
    let mut checked = 0;
    for d0 in (2..=8).step_by(2) {
        for d1 in (2..=8).step_by(2) {
            for d2 in (2..=8).step_by(2) {
                for x in -4..=4 {
                    for y in -4..=4 {
                        for z in -4..=4 {
                            let t = HalfIntegralMatrix::from_2t(vec![vec![d0, x, y], vec![x, d1, z], vec![y, z, d2]]).unwrap();
                            if !t.is_positive_definite() || t.det2() > bound {
                                continue;
                            }
                            let hits = reps.iter().filter(|r| isometry(r, &t).is_some()).count();
                            assert_eq!(hits, 1, "{t:?}");
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn isometry_returns_a_witness() {
    let a = HalfIntegralMatrix::from_2t(vec![vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 4]]).unwrap();
    let u = vec![vec![1, 2, 0], vec![0, 1, -1], vec![0, 0, 1]];
    let b = a.transform(&u);
    let w = isometry(&a, &b).expect("isometric");
    assert_eq!(a.transform(&w), b);
}

#[test]
fn construct_lattice_modes() {
    assert_eq!(construct_lattice(2, LatticeMode::Fundamental(-4)).unwrap(), HalfIntegralMatrix::diag(&[1, 1]));
    assert_eq!(construct_lattice(4, LatticeMode::QSquared(2)).unwrap(), a_prime());
    for n in [8, 16] {
        assert_eq!(construct_lattice(n, LatticeMode::Unimodular).unwrap().det2(), 1);
    }
    for (n, d) in [(2, -3), (2, -7), (4, 5), (4, 8), (4, 12), (6, -3), (6, -4), (10, -4), (12, 5), (12, 8)] {
        let t = construct_lattice(n, LatticeMode::Fundamental(d)).unwrap();
        let s = disc_split(&t).unwrap();
        assert_eq!((t.n(), s.d, s.f), (n, d, 1));
    }
    let t = construct_lattice(12, LatticeMode::QSquared(2)).unwrap();
    assert_eq!((disc_split(&t).unwrap().d, disc_split(&t).unwrap().f), (1, 2));
    let t = construct_lattice(4, LatticeMode::QSquared(3)).unwrap();
    assert_eq!(t.det2(), 9);
    assert!(matches!(construct_lattice(4, LatticeMode::Fundamental(-4)), Err(Error::Precondition(_))));
    assert!(matches!(construct_lattice(6, LatticeMode::Fundamental(-7)), Err(Error::SearchExhausted(_))));
    assert!(construct_lattice(3, LatticeMode::Unimodular).is_err());
}

#[test]
fn content_of_scaled_matrix() {
    let t = HalfIntegralMatrix::from_2t(vec![vec![2, 1], vec![1, 2]]).unwrap();
    assert_eq!(t.content(), 1);
    assert_eq!(t.scale(3).content(), 3);
}

fn small_nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-60i64..-1, 1i64..60]
}

proptest! {
    #[test]
    fn hilbert_product_formula(a in small_nonzero(), b in small_nonzero()) {
        let mut prod = hilbert_symbol(&q(a), &q(b), Place::Infinity).unwrap();
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59] {
            prod *= hilbert_symbol(&q(a), &q(b), Place::Finite(p)).unwrap();
        }
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn hilbert_bimultiplicative(a in small_nonzero(), b in small_nonzero(), c in small_nonzero(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let v = Place::Finite(p);
        let lhs = hilbert_symbol(&q(a), &q(b * c), v).unwrap();
        let rhs = hilbert_symbol(&q(a), &q(b), v).unwrap() * hilbert_symbol(&q(a), &q(c), v).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(hilbert_symbol(&q(a), &q(b), v).unwrap(), hilbert_symbol(&q(b), &q(a), v).unwrap());
    }

    #[test]
    fn disc_split_round_trip(a in 1i64..30, c in 1i64..30, b in -30i64..30) {
        prop_assume!(4 * a * c - b * b > 0);
        let t = HalfIntegralMatrix::from_2t(vec![vec![2 * a, b], vec![b, 2 * c]]).unwrap();
        let s = disc_split(&t).unwrap();
        prop_assert_eq!(s.d * s.f * s.f, -t.det2());
        prop_assert!(s.d == 1 || is_fundamental_discriminant(s.d));
    }

    #[test]
    fn reduce2_is_a_class_invariant(a in 1i64..20, c in 1i64..20, b in -20i64..20, u00 in -3i64..4, u01 in -3i64..4, k in -3i64..4) {
        prop_assume!(4 * a * c - b * b > 0);
        // unimodular U = [[u00, u01], [k*u00 + x, ...]] built from a gcd-one column
        prop_assume!(u00.gcd(&u01) == 1);
        let (g, x, y) = { let e = num_integer::Integer::extended_gcd(&u00, &u01); (e.gcd, e.x, e.y) };
        prop_assume!(g == 1);
        let u = vec![vec![u00, -y + k * u00], vec![u01, x + k * u01]];
        let t = HalfIntegralMatrix::from_2t(vec![vec![2 * a, b], vec![b, 2 * c]]).unwrap();
        let s = t.transform(&u);
        prop_assert_eq!(reduce2(&s), reduce2(&t));
        prop_assert_eq!(reduce2(&t).det2(), t.det2());
    }
}
