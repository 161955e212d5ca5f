//! Exact modular-symbol values against the numeric L-series.

use super::ball::BigReal;
use super::embed::{embed, embeddings};
use super::hecke::{embedded_coeffs, l_value, terms_needed};
use super::special::factorial_ball;
use crate::exactnum::arith::is_prime_u64;
use crate::exactnum::prime_split;
use crate::forms1::eigenforms;
use crate::msym::{build_space, periods_eta};
use crate::{Error, Result};

/// Largest relative deviation of Λ(l)/**L**_raw(l) + Λ(l+2)/**L**_raw(l+2)
/// over the central window, all orbits, embeddings and D ∈ {1, 5}.
///
/// Within a parity class the ratio is a constant with alternating sign, so
/// every sum should vanish.
pub fn ratio_deviation(w: u32, prec: u32) -> Result<f64> {
    let n = terms_needed(w, 5, prec) + 2;
    let sp = build_space(w)?;
    let mut worst = 0f64;
    for f in eigenforms(w, n)? {
        // any prime of good size fixes the lattice; ratios do not depend on it
        let p0 = (101u64..).find(|&p| is_prime_u64(p)).expect("primes exist");
        let p = prime_split(&f.field, p0)?.into_iter().next().ok_or_else(|| Error::inconsistent("empty split"))?;
        let pair = periods_eta(&sp, &f, &p)?;
        let roots = embeddings(&f.field, prec)?;
        let two_pi = BigReal::pi(prec).mul_i64(2);
        for d in [1i64, 5] {
            let coeffs = embedded_coeffs(&f, n, prec)?;
            for (emb, a) in coeffs.iter().enumerate() {
                // None when the exact value vanishes; the numeric one must then be tiny.
                let ratio = |l: u32| -> Result<Option<BigReal>> {
                    let lam = l_value(a, w, l, d, prec)?.mul(&factorial_ball(l as u64 - 1, prec)).div(&two_pi.pow_u(l));
                    let raw = pair.critical_value(l, d)?.raw;
                    if raw.is_zero() {
                        if lam.abs_upper() > 1e-30 {
                            return Err(Error::inconsistent(format!("L({l}, f, χ_{d}) is zero exactly but not numerically")));
                        }
                        return Ok(None);
                    }
                    Ok(Some(lam.div(&embed(&raw, &roots[emb]))))
                };
                for l in (w / 2 - 3)..(w / 2 + 2) {
                    if let (Some(r1), Some(r2)) = (ratio(l)?, ratio(l + 2)?) {
                        worst = worst.max(r1.add(&r2).abs_upper() / r1.abs_upper());
                    }
                }
            }
        }
    }
    Ok(worst)
}
