//! Siegel series F_p(T, X) from a registry of supported shapes, with an exact
//! local-density oracle for degrees one and two.

use std::collections::HashSet;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exactnum::arith::{kronecker, valuation_i64};
use crate::exactnum::Rational;
use crate::qforms::{disc_split, HalfIntegralMatrix};
use crate::{par, Error, Result};

#[cfg(test)]
mod tests;

/// F_p(T, X) as an integer polynomial together with the invariants of T it
/// was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SiegelPolynomial {
    pub p: u64,
    pub n: usize,
    /// ord_p det(2T).
    pub ord_det: u32,
    /// ν_p(𝔣_T) for even n, ord_p(t) for n = 1.
    pub nu: u32,
    /// χ_{d_T}(p) for even n, 0 for n = 1.
    pub chi: i32,
    #[serde(serialize_with = "ser_bigints")]
    pub coeffs: Vec<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl SiegelPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }

    /// Coefficients with the constant term 1 and the expected degree.
    pub fn has_valid_shape(&self) -> bool {
        let expect = if self.n.is_multiple_of(2) { 2 * self.nu as usize } else { self.nu as usize };
        self.coeffs.first() == Some(&BigInt::one()) && self.degree() == expect
    }
}

fn pow_big(p: u64, e: u32) -> BigInt {
    BigInt::from(p).pow(e)
}

/// Add c·X^deg to a coefficient vector.
fn add_term(v: &mut Vec<BigInt>, deg: usize, c: BigInt) {
    if v.len() <= deg {
        v.resize(deg + 1, BigInt::zero());
    }
    v[deg] += c;
}

/// The closed form for degree two: with a = ν_p(content), b = ν_p(𝔣),
/// F = Σ_{i≤a} (p²X)^i [Σ_{j≤b−i} (p³X²)^j − χ p X Σ_{j≤b−i−1} (p³X²)^j].
fn binary_series(p: u64, a: u32, b: u32, chi: i32) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero()];
    for i in 0..=a.min(b) {
        let base = pow_big(p, 2 * i);
        for j in 0..=(b - i) {
            add_term(&mut v, (i + 2 * j) as usize, &base * pow_big(p, 3 * j));
        }
        if b > i {
            for j in 0..(b - i) {
                add_term(&mut v, (i + 2 * j + 1) as usize, -BigInt::from(chi) * &base * pow_big(p, 3 * j + 1));
            }
        }
    }
    v
}

/// Registry lookup of F_p(T, X).
pub fn siegel_series(t: &HalfIntegralMatrix, p: u64) -> Result<SiegelPolynomial> {
    let n = t.n();
    if !t.is_positive_definite() {
        return Err(Error::pre("Siegel series needs positive definite T"));
    }
    let ord_det = valuation_i64(t.det2(), p);
    if n == 1 {
        let tv = t.two_t()[0][0] / 2;
        let nu = valuation_i64(tv, p);
        let coeffs = (0..=nu).map(|i| pow_big(p, i)).collect();
        return Ok(SiegelPolynomial { p, n, ord_det, nu, chi: 0, coeffs });
    }
    if n % 2 == 1 {
        return Err(Error::SiegelUnsupported(format!("odd degree n = {n} > 1 at p = {p}")));
    }
    let ds = disc_split(t)?;
    let nu = valuation_i64(ds.f, p);
    let chi = kronecker(ds.d, p as i64) as i32;
    let coeffs = if nu == 0 {
        vec![BigInt::one()]
    } else if n == 2 {
        let a = valuation_i64(t.content(), p);
        binary_series(p, a, nu, chi)
    } else if n.is_multiple_of(4) && ds.d == 1 && nu == 1 {
        // 1 − q^{(n−2)/2}(q² + q) X + q³ q^{n−2} X²
        let h = (n as u32 - 2) / 2;
        let q = BigInt::from(p);
        vec![BigInt::one(), -pow_big(p, h) * (&q * &q + &q), pow_big(p, 3 + 2 * h)]
    } else {
        return Err(Error::SiegelUnsupported(format!(
            "no registered shape for n = {n}, p = {p}, d_T = {}, ord_p(f_T) = {nu}, chi = {chi}",
            ds.d
        )));
    };
    Ok(SiegelPolynomial { p, n, ord_det, nu, chi, coeffs })
}

/// Palindrome test for the symmetrized form X^{−ν} F(p^{−(n+1)/2} X):
/// c_{2ν−i} = c_i p^{(ν−i)(n+1)}. For odd n the degree is ν and the test
/// reads c_{ν−i} p^{i(n+1)/2} = c_i p^{(ν−i)(n+1)/2}.
pub fn check_functional_equation(poly: &SiegelPolynomial) -> bool {
    let nu = poly.nu as usize;
    if poly.n % 2 == 1 {
        let h = poly.n.div_ceil(2);
        return poly.coeffs.len() == nu + 1
            && (0..=nu).all(|i| &poly.coeffs[nu - i] * pow_big(poly.p, (i * h) as u32) == &poly.coeffs[i] * pow_big(poly.p, ((nu - i) * h) as u32));
    }
    if poly.coeffs.len() != 2 * nu + 1 {
        return false;
    }
    (0..=nu).all(|i| poly.coeffs[2 * nu - i] == &poly.coeffs[i] * pow_big(poly.p, ((nu - i) * (poly.n + 1)) as u32))
}

/// The factor γ_p(T, X) with b_p(T, s) = γ_p(T, X) F_p(T, X), X = p^{−s}.
pub fn gamma_factor(n: usize, chi: i32, p: u64, x: &Rational) -> Rational {
    let one = Rational::one();
    let pq = Rational::from_integer(BigInt::from(p));
    let mut g = &one - x;
    for i in 1..=(n / 2) as u32 {
        g *= &one - num_traits::pow(pq.clone(), 2 * i as usize) * x * x;
    }
    if n.is_multiple_of(2) {
        g /= &one - Rational::from_integer(BigInt::from(chi)) * num_traits::pow(pq, n / 2) * x;
    }
    g
}

/// Request for [`local_density_count`]: density of representing T by the
/// sum of `planes` hyperbolic planes, counted modulo p^ν.
#[derive(Clone, Debug)]
pub struct LocalDensityRequest {
    pub t: HalfIntegralMatrix,
    pub planes: u32,
    pub p: u64,
    pub nu: u32,
}

/// Smallest admissible exponent for the oracle.
pub fn stabilization_bound(t: &HalfIntegralMatrix, p: u64) -> u32 {
    valuation_i64(t.det2(), p) + 2 + u32::from(p == 2)
}

/// Character budget of the oracle (number of additive characters visited).
pub const DENSITY_BUDGET: u64 = 1 << 26;

fn val_capped(x: i128, p: i128, cap: u32) -> u32 {
    if x == 0 {
        return cap;
    }
    let (mut x, mut v) = (x, 0);
    while v < cap && x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

/// α_p(H^planes, T) by exact character sums. Each hyperbolic plane has
/// additive Fourier transform N^n · #ker(A) at the character given by the
/// symmetric matrix A, so the count never enumerates representations.
pub fn local_density_count(req: &LocalDensityRequest) -> Result<Rational> {
    if req.planes == 0 {
        return Err(Error::pre("need at least one hyperbolic plane"));
    }
    Ok(density_profile(&req.t, req.p, req.nu)?.at(req.planes))
}

/// Character-sum weights of T modulo p^ν, from which the density at any
/// number of hyperbolic planes follows.
#[derive(Clone, Debug)]
pub struct DensityProfile {
    p: u64,
    n: usize,
    nu: u32,
    /// (kernel exponent, integer weight)
    weights: Vec<(u32, Rational)>,
}

impl DensityProfile {
    /// Σ_e p^{r(e − nν)} w_e for r planes.
    pub fn at(&self, planes: u32) -> Rational {
        let mut s = Rational::zero();
        for (e, w) in &self.weights {
            let ex = planes as i64 * (*e as i64 - self.n as i64 * self.nu as i64);
            let pw = if ex >= 0 {
                Rational::from_integer(pow_big(self.p, ex as u32))
            } else {
                Rational::new(BigInt::one(), pow_big(self.p, (-ex) as u32))
            };
            s += w * pw;
        }
        s
    }
}

pub fn density_profile(t: &HalfIntegralMatrix, p: u64, nu: u32) -> Result<DensityProfile> {
    let n = t.n();
    if n > 2 {
        return Err(Error::pre("the density oracle handles n <= 2"));
    }
    let need = stabilization_bound(t, p);
    if nu < need {
        return Err(Error::pre(format!("exponent {nu} below the stabilization bound {need}")));
    }
    let req = LocalDensityRequest { t: t.clone(), planes: 1, p, nu };
    let big_n = (p as u128).checked_pow(req.nu).ok_or_else(|| Error::Resource("modulus overflow".into()))?;
    let chars = big_n.checked_pow((n * (n + 1) / 2) as u32).unwrap_or(u128::MAX);
    if chars > DENSITY_BUDGET as u128 {
        return Err(Error::Resource(format!("{chars} characters exceed the budget {DENSITY_BUDGET}")));
    }
    let nn = big_n as i128;
    let pi = p as i128;
    let nu = req.nu;
    // weight[e] = cnt(phase 0) − cnt(phase valuation ν−1)/(p−1), per kernel exponent e
    let idx = |e: u32, vr: u32| -> Option<usize> {
        if vr == nu {
            Some(2 * e as usize)
        } else if vr + 1 == nu {
            Some(2 * e as usize + 1)
        } else {
            None
        }
    };
    let slots = 2 * (2 * nu as usize + 1);
    let tab: Vec<Vec<i64>> = if n == 1 {
        let tv = (t.two_t()[0][0] / 2) as i128;
        par::map_range(big_n as usize, |a| {
            let mut acc = vec![0i64; slots];
            let a = a as i128;
            let e = val_capped(a, pi, nu);
            let r = (a * tv).rem_euclid(nn);
            if let Some(i) = idx(e, val_capped(r, pi, nu)) {
                acc[i] += 1;
            }
            acc
        })
    } else {
        let m = t.two_t();
        let (t11, t22, b) = ((m[0][0] / 2) as i128, (m[1][1] / 2) as i128, m[0][1] as i128);
        par::map_range(big_n as usize, |a| {
            let mut acc = vec![0i64; slots];
            let a = a as i128;
            let va = val_capped(a, pi, nu);
            for bb in 0..nn {
                let vb = val_capped(bb, pi, nu).min(va);
                for g in 0..nn {
                    let e1 = val_capped(g, pi, nu).min(vb);
                    let det = a * bb - g * g;
                    let e2 = if det == 0 { nu } else { (val_capped(det, pi, 2 * nu + 2) - e1).min(nu) };
                    let r = (a * t11 + bb * t22 + g * b).rem_euclid(nn);
                    if let Some(i) = idx(e1 + e2, val_capped(r, pi, nu)) {
                        acc[i] += 1;
                    }
                }
            }
            acc
        })
    };
    let mut tot = vec![0i64; slots];
    for row in tab {
        for (x, y) in tot.iter_mut().zip(row) {
            *x += y;
        }
    }
    let pm1 = Rational::from_integer(BigInt::from(p - 1));
    let weights = (0..=(2 * nu))
        .map(|e| {
            let w = Rational::from_integer(BigInt::from(tot[2 * e as usize])) - Rational::from_integer(BigInt::from(tot[2 * e as usize + 1])) / &pm1;
            (e, w)
        })
        .filter(|(_, w)| !w.is_zero())
        .collect();
    Ok(DensityProfile { p, n, nu, weights })
}

/// The predicted density γ_p(T, p^{−r}) F_p(T, p^{−r}) for r hyperbolic planes.
pub fn predicted_density(poly: &SiegelPolynomial, planes: u32) -> Rational {
    let x = Rational::new(BigInt::one(), pow_big(poly.p, planes));
    gamma_factor(poly.n, poly.chi, poly.p, &x) * poly.eval(&x)
}

/// Invariant classes (p, ν_p(content), ν_p(𝔣), χ) already checked against the oracle.
static VALIDATED: Mutex<Option<HashSet<(u64, u32, u32, i32)>>> = Mutex::new(None);

/// Registry lookup for n = 2 followed, once per invariant class and prime, by
/// an oracle check at two ranks when the character budget allows it.
pub fn siegel_series_validated(t: &HalfIntegralMatrix, p: u64) -> Result<SiegelPolynomial> {
    let poly = siegel_series(t, p)?;
    if t.n() != 2 || poly.nu == 0 {
        return Ok(poly);
    }
    let key = (p, valuation_i64(t.content(), p), poly.nu, poly.chi);
    if VALIDATED.lock().expect("validation cache").get_or_insert_with(HashSet::new).contains(&key) {
        return Ok(poly);
    }
    let nu = stabilization_bound(t, p);
    let fits = (p as u128).checked_pow(3 * nu).is_some_and(|c| c <= (DENSITY_BUDGET / 8) as u128);
    if !fits {
        return Ok(poly);
    }
    let prof = density_profile(t, p, nu)?;
    for planes in [3, 4] {
        if prof.at(planes) != predicted_density(&poly, planes) {
            return Err(Error::inconsistent(format!("Siegel series at p = {p} disagrees with the density oracle for {t:?}")));
        }
    }
    VALIDATED.lock().expect("validation cache").get_or_insert_with(HashSet::new).insert(key);
    Ok(poly)
}
