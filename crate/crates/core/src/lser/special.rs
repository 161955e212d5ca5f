//! Special values needed by the L-series code, all as balls.

use num_bigint::BigInt;
use rug::float::Round;
use rug::Float;

use super::ball::BigReal;
use crate::exactnum::arith::factorial;

pub fn factorial_ball(n: u64, prec: u32) -> BigReal {
    BigReal::from_bigint(&factorial(n), prec)
}

/// Γ(s) for s a positive integer or half-integer (given as 2s).
pub fn gamma_half(two_s: u64, prec: u32) -> BigReal {
    assert!(two_s > 0, "Γ at a nonpositive point");
    if two_s.is_multiple_of(2) {
        return factorial_ball(two_s / 2 - 1, prec);
    }
    // Γ(k + 1/2) = (2k)! √π / (4^k k!)
    let k = (two_s - 1) / 2;
    let num = BigReal::from_bigint(&factorial(2 * k), prec);
    let den = BigReal::from_bigint(&(BigInt::from(4).pow(k as u32) * factorial(k)), prec);
    num.mul(&BigReal::pi(prec).sqrt()).div(&den)
}

/// ζ(s) for an integer s ≥ 2 (correctly rounded by MPFR).
pub fn zeta(s: u32, prec: u32) -> BigReal {
    assert!(s >= 2, "ζ({s}) not supported");
    BigReal::from_float(Float::with_val(prec, Float::with_val(prec + 32, s).zeta()))
}

/// Completed ξ(s) = π^{−s/2} Γ(s/2) ζ(s).
pub fn xi(s: u32, prec: u32) -> BigReal {
    let pi = BigReal::pi(prec);
    let ps = pi.sqrt().pow_u(s).recip();
    ps.mul(&gamma_half(s as u64, prec)).mul(&zeta(s, prec))
}

/// Γ_C(s) = 2(2π)^{−s} Γ(s) for a positive integer s.
pub fn gamma_c(s: u32, prec: u32) -> BigReal {
    let tp = BigReal::pi(prec).mul_i64(2);
    factorial_ball(s as u64 - 1, prec).mul_i64(2).div(&tp.pow_u(s))
}

/// Upper incomplete gamma Γ(s, x) for a positive integer s:
/// (s−1)! e^{−x} Σ_{k<s} x^k/k!.
pub fn gamma_upper_int(s: u32, x: &BigReal) -> BigReal {
    let prec = x.prec();
    let mut term = BigReal::one(prec);
    let mut sum = BigReal::one(prec);
    for k in 1..s {
        term = term.mul(x).div(&BigReal::from_i64(k as i64, prec));
        sum = sum.add(&term);
    }
    factorial_ball(s as u64 - 1, prec).mul(&x.neg().exp()).mul(&sum)
}

/// ∫_1^∞ y^b e^{−c y} dy = Γ(b+1, c)/c^{b+1}.
pub fn j_integral(b: u32, c: &BigReal) -> BigReal {
    gamma_upper_int(b + 1, c).div(&c.pow_u(b + 1))
}

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration.
pub fn gauss_legendre(n: usize, prec: u32) -> Vec<(Float, Float)> {
    let wp = prec + 32;
    let pi = Float::with_val(wp, rug::float::Constant::Pi);
    let legendre = |x: &Float| -> (Float, Float) {
        let mut p0 = Float::with_val(wp, 1);
        let mut p1 = x.clone();
        for k in 2..=n {
            let kf = k as f64;
            let p2 = (Float::with_val(wp, x * &p1) * (2.0 * kf - 1.0) - Float::with_val(wp, &p0 * (kf - 1.0))) / kf;
            p0 = p1;
            p1 = p2;
        }
        // derivative: n (x p_n − p_{n−1})/(x² − 1)
        let num = (Float::with_val(wp, x * &p1) - &p0) * n as f64;
        let den = Float::with_val(wp, x * x) - 1u32;
        (p1, num / den)
    };
    let tol = Float::with_val(wp, Float::i_exp(1, -(prec as i32) - 8));
    (1..=n)
        .map(|i| {
            let mut x = Float::with_val(wp, (i as f64 - 0.25) / (n as f64 + 0.5)) * &pi;
            x.cos_round(Round::Nearest);
            for _ in 0..200 {
                let (p, dp) = legendre(&x);
                let dx = Float::with_val(wp, &p / &dp);
                x -= &dx;
                if dx.abs() < tol {
                    break;
                }
            }
            let (_, dp) = legendre(&x);
            let wgt = Float::with_val(wp, 2) / ((Float::with_val(wp, 1) - Float::with_val(wp, &x * &x)) * Float::with_val(wp, &dp * &dp));
            (Float::with_val(prec, &x), Float::with_val(prec, &wgt))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::bernoulli::zeta_even_over_pi_power;

    #[test]
    fn zeta_even_contains_exact_value() {
        let prec = 200;
        for m in [2u32, 4, 6, 12] {
            let z = zeta(m, prec);
            let q = zeta_even_over_pi_power(m).unwrap();
            let exact = BigReal::from_rational(&q, prec).mul(&BigReal::pi(prec).pow_u(m));
            assert!(z.overlaps(&exact), "ζ({m})");
        }
    }

    #[test]
    fn gamma_values() {
        let g = gamma_half(5, 128); // Γ(5/2) = 3√π/4
        let e = BigReal::pi(128).sqrt().mul_i64(3).div(&BigReal::from_i64(4, 128));
        assert!(g.overlaps(&e));
        assert!(gamma_half(10, 128).contains_rational(&crate::exactnum::q_int(24)));
    }

    #[test]
    fn incomplete_gamma_at_zero_is_complete() {
        let x = BigReal::zero(128);
        assert!(gamma_upper_int(6, &x).contains_rational(&crate::exactnum::q_int(120)));
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let nodes = gauss_legendre(10, 128);
        // ∫ x^18 = 2/19
        let mut s = Float::with_val(128, 0);
        for (x, w) in &nodes {
            s += Float::with_val(128, rug::ops::Pow::pow(x.clone(), 18u32)) * w;
        }
        let err = (s - Float::with_val(128, 2) / 19u32).abs();
        assert!(err < 1e-35);
    }
}
