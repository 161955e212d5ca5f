//! Petersson norms of half-integral weight forms on Γ0(4), written as
//! polynomials in θ and F = Σ_{m odd} σ(m) q^m.

use rug::Float;

use super::ball::{BigReal, CBall};
use super::special::gauss_legendre;
use crate::exactnum::Rational;
use crate::{par, Error, Result};

/// Dedekind η at τ = x + iy (y > 0), reduced into the fundamental domain.
pub fn eta(x: &BigReal, y: &BigReal) -> CBall {
    let prec = x.prec();
    let pi = BigReal::pi(prec);
    let mut tau = CBall::new(x.clone(), y.clone());
    let mut factor = CBall::one(prec);
    for _ in 0..200 {
        let k = tau.re.to_f64().round() as i64;
        if k != 0 {
            tau = CBall::new(tau.re.sub(&BigReal::from_i64(k, prec)), tau.im.clone());
            // η(τ) = e^{πik/12} η(τ − k)
            let (c, s) = pi.mul_i64(k).div(&BigReal::from_i64(12, prec)).cos_sin();
            factor = factor.mul(&CBall::new(c, s));
        }
        if tau.norm_sqr().to_f64() >= 0.999 {
            break;
        }
        // η(τ) = η(−1/τ)/√(−iτ)
        let minus_i_tau = CBall::new(tau.im.clone(), tau.re.neg());
        factor = factor.div(&minus_i_tau.sqrt());
        tau = tau.recip().scale(&BigReal::from_i64(-1, prec));
    }
    // e^{πiτ/12} Σ_n (−1)^n q^{n(3n−1)/2}
    let two_pi_i_tau = CBall::new(tau.im.mul(&pi).mul_i64(-2), tau.re.mul(&pi).mul_i64(2));
    let q = two_pi_i_tau.exp();
    let ln_q = -2.0 * std::f64::consts::PI * tau.im.to_f64();
    let mut s = CBall::one(prec);
    let mut n: i64 = 1;
    loop {
        let e1 = (n * (3 * n - 1) / 2) as u32;
        let e2 = (n * (3 * n + 1) / 2) as u32;
        let t = q.pow_u(e1).add(&q.pow_u(e2));
        s = if n % 2 == 1 { s.sub(&t) } else { s.add(&t) };
        n += 1;
        let next = (n * (3 * n - 1) / 2) as f64;
        if next * ln_q < -((prec + 16) as f64) * std::f64::consts::LN_2 {
            // alternating tail of decreasing terms: bounded by 2|q|^{next}
            let b = Float::with_val(64, 2.0 * (next * ln_q).exp());
            s = CBall::new(s.re.add_error(&b), s.im.add_error(&b));
            break;
        }
    }
    let pref = CBall::new(tau.im.mul(&pi).neg(), tau.re.mul(&pi)).scale(&BigReal::from_i64(12, prec).recip()).exp();
    factor.mul(&pref).mul(&s)
}

fn eta_at(tau: &CBall, scale: i64) -> CBall {
    eta(&tau.re.mul_i64(scale), &tau.im.mul_i64(scale))
}

/// Σ_j c_j θ^{2λ+1−4j} F^j at τ.
fn eval_monomials(coords: &[Rational], lambda: u32, tau: &CBall) -> CBall {
    let prec = tau.re.prec();
    let (e1, e2, e4) = (eta_at(tau, 1), eta_at(tau, 2), eta_at(tau, 4));
    let th = e2.pow_u(5).div(&e1.pow_u(2).mul(&e4.pow_u(2)));
    let f = e4.pow_u(8).div(&e2.pow_u(4));
    let mut acc = CBall::zero(prec);
    for (j, c) in coords.iter().enumerate() {
        let e = 2 * lambda + 1 - 4 * j as u32;
        let term = th.pow_u(e).mul(&f.pow_u(j as u32)).scale(&BigReal::from_rational(c, prec));
        acc = acc.add(&term);
    }
    acc
}

/// Coset representatives of Γ0(4)\SL2(Z) by bottom row.
const COSETS: [[i64; 4]; 6] = [[1, 0, 0, 1], [0, -1, 1, 0], [0, -1, 1, 1], [0, -1, 1, 2], [0, -1, 1, 3], [1, 0, 2, 1]];

/// Σ_γ |g(γτ)|² Im(γτ)^{λ+1/2}: an SL2(Z)-invariant function.
fn phi(coords: &[Rational], lambda: u32, tau: &CBall) -> BigReal {
    let prec = tau.re.prec();
    let mut tot = BigReal::zero(prec);
    for [a, b, c, d] in COSETS {
        let num = tau.scale(&BigReal::from_i64(a, prec)).add(&CBall::real(BigReal::from_i64(b, prec)));
        let den = tau.scale(&BigReal::from_i64(c, prec)).add(&CBall::real(BigReal::from_i64(d, prec)));
        let t = num.div(&den);
        let g = eval_monomials(coords, lambda, &t);
        let im = t.im.clone();
        tot = tot.add(&g.norm_sqr().mul(&im.pow_u(lambda)).mul(&im.sqrt()));
    }
    tot
}

/// ⟨g, g⟩ = (1/6) ∫_{Γ0(4)\H} |g|² y^{λ+1/2} dμ for g = Σ_j c_j θ^{2λ+1−4j} F^j
/// a cusp form. Quadrature is not certified: the radius reflects arithmetic
/// error plus the difference between two rules.
pub fn petersson_halfint(coords: &[Rational], lambda: u32, prec: u32) -> Result<BigReal> {
    if coords.len() != lambda as usize / 2 + 1 {
        return Err(Error::pre("coordinate vector does not match the monomial basis"));
    }
    let run = |nodes: usize, mx: usize| -> BigReal {
        let gl = gauss_legendre(nodes, prec);
        let half = BigReal::exact(Float::with_val(prec, 0.5));
        // rectangle y ∈ [1, 48]: trapezoid in x (periodic), Gauss in y per segment
        let segs = [(1i64, 2i64), (2, 4), (4, 8), (8, 16), (16, 28), (28, 48)];
        let mut jobs = Vec::new();
        for (lo, hi) in segs {
            for (v, wv) in &gl {
                for i in 0..mx {
                    jobs.push((lo, hi, v.clone(), wv.clone(), i));
                }
            }
        }
        let rect = par::map(&jobs, |(lo, hi, v, wv, i)| {
            let len = BigReal::from_i64(hi - lo, prec);
            let y = BigReal::exact(Float::with_val(prec, v)).add(&BigReal::one(prec)).mul(&half).mul(&len).add(&BigReal::from_i64(*lo, prec));
            let x = BigReal::from_i64(*i as i64, prec).div(&BigReal::from_i64(mx as i64, prec)).sub(&half);
            let wgt = BigReal::exact(Float::with_val(prec, wv)).mul(&half).mul(&len).div(&BigReal::from_i64(mx as i64, prec));
            phi(coords, lambda, &CBall::new(x, y.clone())).mul(&wgt).div(&y.sqr())
        });
        // sliver: x ∈ [−1/2, 1/2], y ∈ [√(1−x²), 1]
        let mut pts = Vec::new();
        for (u, wu) in &gl {
            for (v, wv) in &gl {
                pts.push((u.clone(), wu.clone(), v.clone(), wv.clone()));
            }
        }
        let sliver = par::map(&pts, |(u, wu, v, wv)| {
            let x = BigReal::exact(Float::with_val(prec, u)).mul(&half);
            let wx = BigReal::exact(Float::with_val(prec, wu)).mul(&half);
            let y0 = BigReal::one(prec).sub(&x.sqr()).sqrt();
            let h = BigReal::one(prec).sub(&y0);
            let y = BigReal::exact(Float::with_val(prec, v)).add(&BigReal::one(prec)).mul(&half).mul(&h).add(&y0);
            let wgt = wx.mul(&BigReal::exact(Float::with_val(prec, wv))).mul(&h).mul(&half);
            phi(coords, lambda, &CBall::new(x, y.clone())).mul(&wgt).div(&y.sqr())
        });
        let tot = rect.iter().chain(&sliver).fold(BigReal::zero(prec), |a, b| a.add(b));
        tot.div(&BigReal::from_i64(6, prec))
    };
    let fine = run(36, 40);
    let coarse = run(28, 32);
    let d = fine.sub(&coarse).abs_upper();
    Ok(fine.add_error(&Float::with_val(64, d)))
}

/// Coordinates of a q-expansion in the monomial basis θ^{2λ+1−4j} F^j.
pub fn monomial_coords(g: &crate::forms1::QExp<Rational>, lambda: u32) -> Result<Vec<Rational>> {
    let basis = crate::halfint::basis_halfint(lambda, g.prec())?;
    let rows: Vec<Vec<Rational>> = (0..g.prec()).map(|i| basis.iter().map(|b| b.coeff(i).clone()).collect()).collect();
    let rhs: Vec<Rational> = (0..g.prec()).map(|i| g.coeff(i).clone()).collect();
    crate::exactnum::linalg::solve(&rows, &rhs).ok_or_else(|| Error::pre("form is not in the span of the monomials"))
}
