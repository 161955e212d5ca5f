use super::*;
use crate::exactnum::ideal::prime_split;
use crate::exactnum::linalg::{identity, mat_mul};
use crate::forms1::{eigenforms, hecke_charpoly};

fn ords_away_from_6(q: &Rational) -> Vec<(u64, i64)> {
    rational_factorization(q)
        .into_iter()
        .filter(|(p, _)| *p > BigInt::from(3))
        .map(|(p, e)| (p.try_into().unwrap(), e))
        .collect()
}

fn pair_32_211() -> IntegralEigenclassPair {
    let f = eigenforms(32, 60).unwrap().remove(0);
    let sp = build_space(32).unwrap();
    let p = prime_split(&f.field, 211).unwrap().remove(0);
    periods_eta(&sp, &f, &p).unwrap()
}

#[test]
fn cuspidal_dimensions() {
    for (w, d) in [(12u32, 2usize), (16, 2), (32, 4), (24, 4)] {
        assert_eq!(build_space(w).unwrap().cuspidal_dim(), d);
    }
    assert!(build_space(13).is_err());
}

#[test]
fn cuspidal_charpolys_are_squares() {
    for w in [12u32, 16, 18, 20, 22, 26, 32] {
        let sp = build_space(w).unwrap();
        for p in [2u64, 3, 5] {
            let q = hecke_charpoly(w, p).unwrap();
            assert_eq!(cuspidal_charpoly(&sp, p).unwrap(), q.mul(&q), "w={w} p={p}");
        }
    }
}

#[test]
fn delta_eigenvalue_and_boundary_class() {
    let sp = build_space(12).unwrap();
    let cp = cuspidal_charpoly(&sp, 2).unwrap();
    assert_eq!(cp, QPoly::from_ints(&[576, 48, 1]));
    let full = charpoly(&hecke_on_symbols(&sp, 2).unwrap());
    let eis = QPoly::from_ints(&[-(1 + 2048), 1]);
    assert_eq!(full, cp.mul(&eis));
}

#[test]
fn star_involution_properties() {
    let sp = build_space(32).unwrap();
    let f = star_involution(&sp);
    assert_eq!(mat_mul(&f, &f), identity(sp.dim(), &Rational::zero()));
    let t2 = hecke_on_symbols(&sp, 2).unwrap();
    assert_eq!(mat_mul(&f, &t2), mat_mul(&t2, &f));
    let fc = sp.restrict_to_cusp(&f).unwrap();
    let n = fc.len();
    let plus: Matrix<Rational> = (0..n)
        .map(|i| (0..n).map(|j| &fc[i][j] - if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    assert_eq!(kernel(&plus, n, &Rational::zero()).len(), 2);
}

#[test]
fn example_l18_and_l16_factorizations() {
    let pr = pair_32_211();
    let l18 = pr.critical_value(18, 1).unwrap();
    assert_eq!(ords_away_from_6(&l18.ideal_norm), vec![(5, 2), (7, 2), (11, 1), (13, 1), (211, 1)]);
    let l16 = pr.critical_value(16, 1).unwrap();
    assert_eq!(ords_away_from_6(&l16.ideal_norm), vec![(5, 3), (7, 2), (11, 1), (13, 2)]);
    let prod = (20..=23).map(|l| pr.critical_value(l, 1).unwrap().ideal_norm).fold(Rational::one(), |a, b| a * b);
    assert_eq!(
        ords_away_from_6(&prod),
        vec![(5, 5), (7, 8), (11, 2), (13, 5), (17, 5), (19, 3), (23, 1), (503, 1), (1307, 1), (14243, 1)]
    );
}

#[test]
fn exactly_one_prime_over_211_divides_l18() {
    let f = eigenforms(32, 60).unwrap().remove(0);
    let sp = build_space(32).unwrap();
    let ords: Vec<i64> = prime_split(&f.field, 211)
        .unwrap()
        .iter()
        .map(|p| periods_eta(&sp, &f, p).unwrap().ord(18, 1).unwrap().unwrap())
        .collect();
    let mut sorted = ords.clone();
    sorted.sort();
    assert_eq!(sorted, vec![0, 1]);
}

#[test]
fn eta_rescaling_by_units_keeps_valuations() {
    let pr = pair_32_211();
    let k = pr.f.field.clone();
    let u = NfElem::new(&k, vec![Rational::from(BigInt::from(7)), Rational::from(BigInt::from(3))]);
    let pr2 = pr.with_eta_scaled(&u).unwrap();
    for l in [16u32, 17, 18, 21] {
        assert_eq!(pr.ord(l, 1).unwrap(), pr2.ord(l, 1).unwrap());
    }
}

#[test]
fn small_residue_characteristic_rejected() {
    let f = eigenforms(32, 60).unwrap().remove(0);
    let sp = build_space(32).unwrap();
    let p3 = prime_split(&f.field, 3).unwrap().remove(0);
    assert!(periods_eta(&sp, &f, &p3).is_err());
    assert!(adjoint_period_ord(&f, &p3).is_err());
}

#[test]
fn twisted_values_follow_parity() {
    let f = eigenforms(12, 30).unwrap().remove(0);
    let sp = build_space(12).unwrap();
    let p = prime_split(&f.field, 691).unwrap().remove(0);
    let pr = periods_eta(&sp, &f, &p).unwrap();
    for d in [1i64, -3, -4, 5, 8] {
        for l in 1..=11u32 {
            let c = pr.critical_value(l, d).unwrap();
            assert_eq!(c.parity, Parity::of_l(l, d));
            // the winding element is an F_∞-eigenvector of the right sign
            let v = winding_element(&sp, l, d).unwrap();
            let fv = crate::exactnum::linalg::vec_mat(&v, &star_involution(&sp));
            let s = if c.parity == Parity::Plus { Rational::one() } else { -Rational::one() };
            let cusp_part: Vec<Rational> = v.iter().zip(&fv).map(|(a, b)| b - a * &s).collect();
            assert!(pair(pr.functional(Parity::Plus), &cusp_part).is_zero());
            assert!(pair(pr.functional(Parity::Minus), &cusp_part).is_zero());
        }
    }
    assert!(pr.critical_value(12, 1).is_err());
    assert!(pr.critical_value(0, 1).is_err());
}

#[test]
fn congruence_numbers() {
    let f12 = eigenforms(12, 30).unwrap().remove(0);
    let p5 = prime_split(&f12.field, 5).unwrap().remove(0);
    assert_eq!(adjoint_period_ord(&f12, &p5).unwrap(), 0);
    let f32 = eigenforms(32, 60).unwrap().remove(0);
    for p in prime_split(&f32.field, 211).unwrap() {
        assert_eq!(adjoint_period_ord(&f32, &p).unwrap(), 0);
    }
    let f24 = eigenforms(24, 60).unwrap().remove(0);
    let ps = prime_split(&f24.field, 144169).unwrap();
    assert!(ps.iter().any(|p| adjoint_period_ord(&f24, p).unwrap() >= 1));
}
