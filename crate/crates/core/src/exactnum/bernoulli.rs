//! Bernoulli numbers, exact zeta factors and generalized Bernoulli numbers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::arith::{binomial, kronecker};
use super::Rational;
use crate::error::{Error, Result};

/// B_0..=B_m (convention B_1 = -1/2) from Σ_{j≤m} C(m+1, j) B_j = 0.
pub fn bernoulli_table(m: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(m + 1);
    b.push(Rational::one());
    for n in 1..=m {
        let mut s = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            s += bj * Rational::from(binomial(n as u64 + 1, j as u64));
        }
        b.push(-s / Rational::from(BigInt::from(n + 1)));
    }
    b
}

/// B_m for even m ≥ 0 with B_2 = 1/6.
pub fn bernoulli(m: u32) -> Result<Rational> {
    if m % 2 == 1 && m > 1 {
        return Err(Error::pre(format!("bernoulli: odd index {m} > 1")));
    }
    Ok(bernoulli_table(m as usize).pop().unwrap())
}

/// Γ_C(m)ζ(m) = (-1)^{m/2+1} B_m / m for even m ≥ 2.
pub fn xi_tilde(m: u32) -> Result<Rational> {
    if m < 2 || m % 2 == 1 {
        return Err(Error::pre(format!("xi_tilde: needs even m >= 2, got {m}")));
    }
    let b = bernoulli(m)?;
    let sign = if (m / 2 + 1).is_multiple_of(2) { 1 } else { -1 };
    Ok(b * Rational::from(BigInt::from(sign)) / Rational::from(BigInt::from(m)))
}

/// Bernoulli polynomial B_k(x).
pub fn bernoulli_poly(k: u32, x: &Rational) -> Rational {
    let b = bernoulli_table(k as usize);
    let mut acc = Rational::zero();
    let mut xp = Rational::one();
    // B_k(x) = Σ_j C(k,j) B_{k-j} x^j
    for j in 0..=k {
        acc += Rational::from(binomial(k as u64, j as u64)) * &b[(k - j) as usize] * &xp;
        xp *= x;
    }
    acc
}

/// Generalized Bernoulli number B_{k,χ_D} for the Kronecker character of
/// discriminant D (D = 1 gives the ordinary B_k, except B_{1,1} = +1/2).
pub fn generalized_bernoulli(k: u32, d: i64) -> Rational {
    let m = d.unsigned_abs() as i64;
    let mut acc = Rational::zero();
    for a in 1..=m {
        let chi = kronecker(d, a);
        if chi == 0 {
            continue;
        }
        let x = Rational::new(BigInt::from(a), BigInt::from(m));
        acc += Rational::from(BigInt::from(chi)) * bernoulli_poly(k, &x);
    }
    acc * Rational::from(BigInt::from(m).pow(k.saturating_sub(1)))
}

/// L(1-k, χ_D) = -B_{k,χ_D}/k.
pub fn dirichlet_l_negative(k: u32, d: i64) -> Rational {
    -generalized_bernoulli(k, d) / Rational::from(BigInt::from(k))
}

/// ζ(m) / π^m for even m ≥ 2, an exact rational.
pub fn zeta_even_over_pi_power(m: u32) -> Result<Rational> {
    if m < 2 || m % 2 == 1 {
        return Err(Error::pre("zeta_even_over_pi_power: even m >= 2 required"));
    }
    // ζ(m) = (-1)^{m/2+1} B_m (2π)^m / (2 m!)
    let b = bernoulli(m)?;
    let mut fact = BigInt::one();
    for i in 2..=m {
        fact *= i;
    }
    let v = b * Rational::from(BigInt::from(2).pow(m)) / Rational::from(fact * 2);
    Ok(if (m / 2) % 2 == 1 { v } else { -v }.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0).unwrap(), q(1, 1));
        assert_eq!(bernoulli(2).unwrap(), q(1, 6));
        assert_eq!(bernoulli(12).unwrap(), q(-691, 2730));
        assert!(bernoulli(3).is_err());
        assert_eq!(xi_tilde(2).unwrap(), q(1, 12));
        assert_eq!(xi_tilde(4).unwrap(), q(1, 120));
        assert_eq!(xi_tilde(6).unwrap(), q(1, 252));
    }

    #[test]
    fn generalized_bernoulli_known_values() {
        // L(0, χ_{-4}) = 1/2, L(0, χ_{-3}) = 1/3: h/ (w/2)
        assert_eq!(dirichlet_l_negative(1, -4), q(1, 2));
        assert_eq!(dirichlet_l_negative(1, -3), q(1, 3));
        // L(-1, χ_5) = -B_{2,χ_5}/2 = -2/5 ... B_{2,χ_5} = 4/5
        assert_eq!(generalized_bernoulli(2, 5), q(4, 5));
        // trivial character reproduces ζ(1-k)
        assert_eq!(dirichlet_l_negative(4, 1), q(1, 120));
    }

    #[test]
    fn zeta_two_over_pi_squared() {
        assert_eq!(zeta_even_over_pi_power(2).unwrap(), q(1, 6));
        assert_eq!(zeta_even_over_pi_power(4).unwrap(), q(1, 90));
        assert_eq!(zeta_even_over_pi_power(6).unwrap(), q(1, 945));
    }
}
