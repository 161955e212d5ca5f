use super::*;
use crate::exactnum::q_int;
use num_traits::Zero;

fn delta_product(n: usize) -> Vec<BigInt> {
    // q·Π(1−q^m)^24, an independent construction of Δ
    let mut acc = vec![BigInt::zero(); n];
    acc[0] = BigInt::one();
    for m in 1..n {
        let mut f = vec![BigInt::zero(); n];
        f[0] = BigInt::one();
        f[m] = BigInt::from(-1);
        acc = int_mul(&acc, &int_pow(&f, 24, n), n);
    }
    let mut out = vec![BigInt::zero(); n];
    out[1..].clone_from_slice(&acc[..n - 1]);
    out
}

#[test]
fn eisenstein_leading_coefficients() {
    let e4 = eisenstein(4, 4).unwrap();
    assert_eq!(e4.coeffs(), &[q_int(1), q_int(240), q_int(2160), q_int(6720)]);
    let e6 = eisenstein(6, 3).unwrap();
    assert_eq!(e6.coeffs(), &[q_int(1), q_int(-504), q_int(-16632)]);
    assert!(eisenstein(5, 3).is_err() && eisenstein(2, 3).is_err());
}

#[test]
fn delta_matches_eta_product() {
    let n = 30;
    assert_eq!(delta(n).to_ints().unwrap(), delta_product(n));
    let d = delta(4);
    assert_eq!(d.coeffs(), &[q_int(0), q_int(1), q_int(-24), q_int(252)]);
}

#[test]
fn dimensions_follow_the_classical_formula() {
    for w in (0..=60u32).step_by(2) {
        let b = miller_basis(w, 30).unwrap();
        let expect = if w == 2 { 0 } else if w % 12 == 2 { w / 12 } else { w / 12 + 1 };
        assert_eq!(b.modular.len(), expect as usize, "w = {w}");
    }
    assert_eq!(dim_s(32), 2);
    assert_eq!(dim_s(12), 1);
    assert_eq!(dim_m(2), 0);
}

#[test]
fn hecke_on_delta_and_e4() {
    let d = delta(40);
    let t2 = hecke_tp(&d, 2, 12).unwrap();
    assert_eq!(t2, d.truncate(20).scale(&q_int(-24)));
    let e4 = eisenstein(4, 30).unwrap();
    assert_eq!(hecke_tp(&e4, 3, 4).unwrap(), e4.truncate(10).scale(&q_int(28)));
    let z = QExp::zero(10, &q_int(0));
    assert!(hecke_tp(&z, 2, 12).unwrap().is_zero());
    assert!(hecke_tp(&d.truncate(1), 2, 12).is_err());
}

#[test]
fn weight_18_form_is_rational() {
    let fs = eigenforms(18, 50).unwrap();
    assert_eq!(fs.len(), 1);
    assert_eq!(fs[0].field.degree(), 1);
    assert_eq!(fs[0].coeff(2), &NfElem::from_int(&fs[0].field, -528));
}

#[test]
fn weight_32_hecke_field_is_quadratic() {
    let fs = eigenforms(32, 50).unwrap();
    assert_eq!(fs.len(), 1);
    assert_eq!(fs[0].field.degree(), 2);
    assert_eq!(fs[0].minpoly().to_string(), "x^2 - 39960*x - 2235350016");
}

#[test]
fn hecke_operators_commute() {
    for w in (12..=40u32).step_by(2) {
        let d = dim_s(w);
        if d < 2 {
            continue;
        }
        let b = miller_basis(w, 3 * (d + 2)).unwrap();
        let t2 = hecke_matrix(&b, 2).unwrap();
        let t3 = hecke_matrix(&b, 3).unwrap();
        use crate::exactnum::linalg::mat_mul;
        assert_eq!(mat_mul(&t2, &t3), mat_mul(&t3, &t2), "w = {w}");
    }
}

#[test]
fn multiplicativity_and_integrality() {
    for w in [12u32, 16, 24, 32] {
        for f in eigenforms(w, 60).unwrap() {
            extend_by_multiplicativity(&f, 60).unwrap();
            for n in 1..60 {
                assert!(f.coeff(n).is_algebraic_integer(), "w = {w}, n = {n}");
            }
        }
    }
}
