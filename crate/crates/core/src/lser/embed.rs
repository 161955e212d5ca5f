//! Real embeddings of small Hecke fields and reconstruction of field
//! elements from their embedded values.

use std::sync::Arc;

use rug::Float;

use super::ball::BigReal;
use crate::exactnum::{NfElem, NumberField, Rational};
use crate::{Error, Result};

/// Images of θ under the real embeddings, in increasing order. Degrees above
/// two are refused; every form this crate reconstructs lives in such a field.
pub fn embeddings(k: &NumberField, prec: u32) -> Result<Vec<BigReal>> {
    let mp = k.minpoly();
    let q = |i: usize| BigReal::from_bigint(&mp[i], prec);
    match k.degree() {
        1 => Ok(vec![q(0).neg()]),
        2 => {
            // x² + b x + c
            let (b, c) = (q(1), q(0));
            let disc = b.sqr().sub(&c.mul_i64(4));
            if disc.mid() <= &0 {
                return Err(Error::pre("quadratic Hecke field is not totally real"));
            }
            let s = disc.sqrt();
            let half = BigReal::exact(Float::with_val(prec, 0.5));
            Ok(vec![b.neg().sub(&s).mul(&half), b.neg().add(&s).mul(&half)])
        }
        d => Err(Error::pre(format!("real embeddings implemented for degree <= 2, got {d}"))),
    }
}

/// σ(x) for the embedding sending θ to `root`.
pub fn embed(x: &NfElem, root: &BigReal) -> BigReal {
    let prec = root.prec();
    let mut acc = BigReal::zero(prec);
    for c in x.coords().iter().rev() {
        acc = acc.mul(root).add(&BigReal::from_rational(c, prec));
    }
    acc
}

fn from_rug(q: &rug::Rational) -> Rational {
    let n = num_bigint::BigInt::parse_bytes(q.numer().to_string_radix(16).as_bytes(), 16).expect("hex");
    let d = num_bigint::BigInt::parse_bytes(q.denom().to_string_radix(16).as_bytes(), 16).expect("hex");
    Rational::new(n, d)
}

/// Simplest rational (smallest denominator) in the closed interval [lo, hi].
fn simplest_in(lo: &rug::Rational, hi: &rug::Rational) -> rug::Rational {
    if *lo <= 0 && *hi >= 0 {
        return rug::Rational::new();
    }
    if *hi < 0 {
        let (nl, nh) = (rug::Rational::from(-hi), rug::Rational::from(-lo));
        return -simplest_in(&nl, &nh);
    }
    let c = lo.clone().ceil();
    if c <= *hi {
        return c;
    }
    let fl = lo.clone().floor();
    let a = rug::Rational::from(hi - &fl).recip();
    let b = rug::Rational::from(lo - &fl).recip();
    fl + simplest_in(&a, &b).recip()
}

/// Rational recovery: the simplest rational within the ball, accepted only
/// when its denominator is small enough for the ball to pin it down
/// (den² · width < 2^{−16}).
pub fn recover_rational(x: &BigReal) -> Option<Rational> {
    let prec = x.prec() + 64;
    let mid = x.mid().to_rational()?;
    let r = Float::with_val(prec, x.radius()).to_rational()?;
    // slack for the last bit of the midpoint
    let slack = rug::Rational::from((1, rug::Integer::from(1) << (x.prec().saturating_sub(4))));
    let width = r + slack * (mid.clone().abs() + 1u32);
    let lo = rug::Rational::from(&mid - &width);
    let hi = rug::Rational::from(&mid + &width);
    let s = simplest_in(&lo, &hi);
    let den = rug::Rational::from(s.denom().clone());
    let test = den.clone() * den * width * rug::Integer::from(1u32 << 16) * 2u32;
    if test >= 1 {
        return None;
    }
    Some(from_rug(&s))
}

/// Reconstructs the element of k whose embeddings (in the order of
/// [`embeddings`]) are `vals`. Degree ≤ 2.
pub fn reconstruct(k: &Arc<NumberField>, vals: &[BigReal]) -> Option<NfElem> {
    let prec = vals.first()?.prec();
    let roots = embeddings(k, prec).ok()?;
    if roots.len() != vals.len() {
        return None;
    }
    match vals.len() {
        1 => Some(NfElem::from_rational(k, recover_rational(&vals[0])?)),
        2 => {
            let b = vals[1].sub(&vals[0]).div(&roots[1].sub(&roots[0]));
            let a = vals[0].sub(&b.mul(&roots[0]));
            let (a, b) = (recover_rational(&a)?, recover_rational(&b)?);
            let x = NfElem::new(k, vec![a, b]);
            // every embedded value must contain the image of the guess
            let ok = roots.iter().zip(vals).all(|(r, v)| {
                let e = embed(&x, r);
                e.overlaps(v) || (x.is_zero() && v.contains_zero())
            });
            ok.then_some(x)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q_frac;

    #[test]
    fn simplest_rational_in_interval() {
        let lo = rug::Rational::from((31, 100));
        let hi = rug::Rational::from((34, 100));
        assert_eq!(simplest_in(&lo, &hi), rug::Rational::from((1, 3)));
        let lo = rug::Rational::from((-17, 5));
        let hi = rug::Rational::from((-13, 4));
        assert_eq!(simplest_in(&lo, &hi), rug::Rational::from((-10, 3)));
    }

    #[test]
    fn recovers_exact_rationals() {
        for q in [q_frac(8192, 7), q_frac(-1360788447035392, 55709764005), q_frac(0, 1)] {
            let b = BigReal::from_rational(&q, 256);
            assert_eq!(recover_rational(&b), Some(q));
        }
        // too little precision for a large height
        let b = BigReal::from_rational(&q_frac(-1360788447035392, 55709764005), 64);
        assert!(recover_rational(&b).is_none());
    }
}
