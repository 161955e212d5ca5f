use super::*;
use crate::exactnum::{q_int, NfElem};
use crate::forms1::hecke_charpoly;

#[test]
fn generators() {
    let t = theta(5);
    assert_eq!(t.coeffs(), &[q_int(1), q_int(2), q_int(0), q_int(0), q_int(2)]);
    let f = f2_generator(10);
    assert_eq!([f.coeff(1), f.coeff(3), f.coeff(5), f.coeff(9)], [&q_int(1), &q_int(4), &q_int(6), &q_int(13)]);
    assert!((0..10).step_by(2).all(|i| f.coeff(i) == &q_int(0)));
}

#[test]
fn structure_basis_sizes_and_rank() {
    for (lambda, n) in [(16u32, 9usize), (8, 5)] {
        let b = basis_halfint(lambda, 20).unwrap();
        assert_eq!(b.len(), n);
        let m: Matrix<Rational> = b.iter().map(|x| x.coeffs()[..n + 1].to_vec()).collect();
        assert_eq!(crate::exactnum::linalg::rank(&m), n);
    }
    assert!(basis_halfint(16, 5).is_err());
}

#[test]
fn plus_space_dimensions_match_level_one() {
    for lambda in [8u32, 9, 10, 12, 14, 16] {
        let s = plus_space(lambda, 0).unwrap();
        assert_eq!(s.modular.len(), dim_m(2 * lambda));
        assert_eq!(s.cusp.len(), dim_s(2 * lambda));
        for g in &s.modular {
            for e in 0..s.prec {
                if !plus_allowed(lambda, e) {
                    assert!(g.coeff(e).is_zero());
                }
            }
        }
    }
}

#[test]
fn tp2_preserves_plus_support_and_kills_zero() {
    let s = plus_space(8, 200).unwrap();
    let g = &s.cusp[0];
    let t = hecke_tp2(g, 3, 8).unwrap();
    for e in 0..t.prec() {
        if !plus_allowed(8, e) {
            assert!(t.coeff(e).is_zero());
        }
    }
    let z = QExp::zero(90, &q_int(0));
    assert!(hecke_tp2(&z, 3, 8).unwrap().is_zero());
    assert!(hecke_tp2(g, 2, 8).is_err());
}

#[test]
fn tp2_charpolys_equal_level_one_tp() {
    for lambda in [8u32, 16] {
        for p in [3u64, 5] {
            assert_eq!(tp2_charpoly(lambda, p).unwrap(), hecke_charpoly(2 * lambda, p).unwrap(), "λ={lambda} p={p}");
        }
    }
}

#[test]
fn t9_and_t25_commute() {
    let s = plus_space(16, prec_for_hecke(16, 5)).unwrap();
    let a = hecke_matrix_tp2(&s, 3).unwrap();
    let b = hecke_matrix_tp2(&s, 5).unwrap();
    use crate::exactnum::linalg::mat_mul;
    assert_eq!(mat_mul(&a, &b), mat_mul(&b, &a));
}

#[test]
fn shimura_matching_weight_33_over_2() {
    let m = shimura_match(16, 0).unwrap();
    assert_eq!(m.len(), 1);
    let pe = &m[0];
    assert_eq!(pe.f.field.degree(), 2);
    for p in [3u64, 5, 7] {
        assert_eq!(pe.eigenvalue(p).unwrap(), *pe.f.coeff(p as usize));
    }
    assert_eq!(pe.coeff(pe.normalized_at).unwrap(), &NfElem::from_int(&pe.f.field, 1));
}

#[test]
fn shimura_matching_odd_lambda() {
    let m = shimura_match(9, 0).unwrap();
    assert_eq!(m.len(), 1);
    assert_eq!(m[0].f.coeff(2), &NfElem::from_int(&m[0].f.field, -528));
    // support e ≡ 0, 3 mod 4
    assert!(m[0].g.coeffs().iter().enumerate().all(|(e, c)| c.is_zero() || e % 4 == 0 || e % 4 == 3));
}
