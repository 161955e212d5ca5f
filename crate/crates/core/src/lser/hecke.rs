//! Numerical Hecke L-values L(s, f ⊗ χ_D) at integers in the critical strip.

use rug::Float;

use super::ball::BigReal;
use super::embed::{embed, embeddings};
use super::special::{factorial_ball, gamma_upper_int};
use crate::exactnum::arith::{is_fundamental_discriminant, kronecker};
use crate::forms1::PrimitiveForm;
use crate::{Error, Result};

/// 2^{l2} as a 64-bit float rounded up (used for truncation bounds).
pub(crate) fn bound_from_log2(l2: f64) -> Float {
    if !l2.is_finite() || l2 < -1.0e6 {
        return Float::new(64);
    }
    Float::with_val(64, 1) << (l2.ceil() as i32 + 1)
}

/// Coefficients a_0..a_{n−1} of f in each real embedding (ascending order of
/// the embedded generator).
pub fn embedded_coeffs(f: &PrimitiveForm, n: usize, prec: u32) -> Result<Vec<Vec<BigReal>>> {
    if f.prec() < n {
        return Err(Error::InsufficientPrecision(format!(
            "need {n} q-expansion coefficients, form has {}",
            f.prec()
        )));
    }
    let roots = embeddings(&f.field, prec)?;
    Ok(roots.iter().map(|r| (0..n).map(|i| embed(f.coeff(i), r)).collect()).collect())
}

/// ln of the bound 2·n^{w/2} ≥ |a_n| (Deligne, with d(n) ≤ 2√n).
fn ln_coeff_bound(n: f64, w: u32) -> f64 {
    2f64.ln() + (w as f64 / 2.0) * n.ln()
}

/// ln of an upper bound for Γ(a, y)/y^a when y ≥ 2a: 2 e^{−y}/y.
fn ln_gamma_ratio_bound(y: f64) -> f64 {
    2f64.ln() - y - y.ln()
}

/// Number of terms needed for the Λ series at the given precision.
pub fn terms_needed(w: u32, m: u64, prec: u32) -> usize {
    let scale = 2.0 * std::f64::consts::PI / m as f64 / 1.25;
    let target = -((prec + 24) as f64) * 2f64.ln();
    let start = ((2.0 * w as f64) / scale).ceil() as usize + 1;
    (start..)
        .find(|&n| {
            let x = scale * n as f64;
            ln_coeff_bound(n as f64, w) + ln_gamma_ratio_bound(x) + (n as f64).ln() < target
        })
        .expect("terminates")
}

/// Completed Λ(s) = (m/2π)^s Γ(s) L(s, f ⊗ χ_D), m = |D|, from real
/// coefficients `a` (index = n), splitting the Mellin integral at `t`.
pub fn lambda_twisted(a: &[BigReal], w: u32, s: u32, d: i64, t: &BigReal) -> Result<BigReal> {
    if s == 0 || s >= w {
        return Err(Error::pre(format!("s = {s} outside 1..{}", w - 1)));
    }
    if !is_fundamental_discriminant(d) {
        return Err(Error::pre(format!("{d} is not a fundamental discriminant")));
    }
    let prec = t.prec();
    let m = d.unsigned_abs();
    let n_terms = terms_needed(w, m, prec);
    if a.len() <= n_terms {
        return Err(Error::InsufficientPrecision(format!("need {} coefficients, have {}", n_terms + 1, a.len())));
    }
    let chi_m1 = if d < 0 { -1 } else { 1 };
    let eps = if (w / 2).is_multiple_of(2) { chi_m1 } else { -chi_m1 };
    let base = BigReal::pi(prec).mul_i64(2).div(&BigReal::from_i64(m as i64, prec));
    let tinv = t.recip();
    let mut acc = BigReal::zero(prec);
    for (n, an) in a.iter().enumerate().take(n_terms + 1).skip(1) {
        let chi = if m == 1 { 1 } else { kronecker(d, n as i64) };
        if chi == 0 {
            continue;
        }
        let x = base.mul_i64(n as i64);
        let g1 = gamma_upper_int(s, &x.mul(t)).div(&x.pow_u(s));
        let g2 = gamma_upper_int(w - s, &x.mul(&tinv)).div(&x.pow_u(w - s));
        let term = g1.add(&g2.mul_i64(eps)).mul(an);
        acc = if chi > 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    // tail beyond n_terms: geometric in n once x ≥ 2w·max(t, 1/t)
    let tf = t.to_f64().min(1.0 / t.to_f64());
    let sc = 2.0 * std::f64::consts::PI / m as f64 * tf;
    let mut ltail = f64::NEG_INFINITY;
    for n in n_terms + 1..n_terms + 4000 {
        let l = ln_coeff_bound(n as f64, w) + 2f64.ln() + ln_gamma_ratio_bound(sc * n as f64);
        ltail = ltail.max(l) + (1.0 + (l.min(ltail) - l.max(ltail)).exp()).ln();
        if l < ltail - 60.0 {
            break;
        }
    }
    Ok(acc.add_error(&bound_from_log2(ltail / 2f64.ln() + 1.0)))
}

/// L(s, f ⊗ χ_D) from Λ.
pub fn l_value(a: &[BigReal], w: u32, s: u32, d: i64, prec: u32) -> Result<BigReal> {
    let lam = lambda_twisted(a, w, s, d, &BigReal::one(prec))?;
    let m = d.unsigned_abs() as i64;
    let factor = BigReal::pi(prec).mul_i64(2).div(&BigReal::from_i64(m, prec)).pow_u(s);
    Ok(lam.mul(&factor).div(&factorial_ball(s as u64 - 1, prec)))
}

/// L(s, f ⊗ χ_D) in every real embedding of the Hecke field.
pub fn l_values(f: &PrimitiveForm, s: u32, d: i64, prec: u32) -> Result<Vec<BigReal>> {
    let n = terms_needed(f.w, d.unsigned_abs(), prec) + 2;
    embedded_coeffs(f, n, prec)?.iter().map(|a| l_value(a, f.w, s, d, prec)).collect()
}
