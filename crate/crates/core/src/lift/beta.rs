//! The quadratic algebra generated by a Satake parameter β_p.
//!
//! Writing w = 2k − n for the weight of f, the element B = p^{(w−1)/2}β_p is a
//! root of B² − c_f(p)B + p^{w−1}, so arithmetic stays inside Q(f)[B]. Half-integral
//! powers of p are carried symbolically: an element is (a + bB)·p^{h/2}.

use num_bigint::BigInt;

use crate::exactnum::{NfElem, Rational};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct BetaElement {
    p: u64,
    /// c_f(p) = B + B̄.
    trace: NfElem,
    /// p^{w−1} = B·B̄.
    norm: Rational,
    a: NfElem,
    b: NfElem,
    half_exp: i64,
}

fn p_pow(p: u64, e: i64) -> Rational {
    let x = Rational::from_integer(BigInt::from(p).pow(e.unsigned_abs() as u32));
    if e >= 0 {
        x
    } else {
        x.recip()
    }
}

impl BetaElement {
    fn with(&self, a: NfElem, b: NfElem, half_exp: i64) -> Self {
        BetaElement { p: self.p, trace: self.trace.clone(), norm: self.norm.clone(), a, b, half_exp }
    }

    /// The constant 1 in the algebra attached to (c_f(p), p, w).
    pub fn one(cfp: &NfElem, p: u64, w: u32) -> Self {
        let k = cfp.field();
        BetaElement {
            p,
            trace: cfp.clone(),
            norm: p_pow(p, w as i64 - 1),
            a: NfElem::from_int(k, 1),
            b: NfElem::from_int(k, 0),
            half_exp: 0,
        }
    }

    /// β_p itself: B·p^{−(w−1)/2}.
    pub fn beta(cfp: &NfElem, p: u64, w: u32) -> Self {
        let one = Self::one(cfp, p, w);
        let k = cfp.field();
        one.with(NfElem::from_int(k, 0), NfElem::from_int(k, 1), -(w as i64 - 1))
    }

    pub fn scalar(&self, x: &NfElem) -> Self {
        self.with(x.clone(), NfElem::from_int(x.field(), 0), 0)
    }

    /// p^{h/2}.
    pub fn sqrt_p_power(&self, h: i64) -> Self {
        let k = self.a.field();
        self.with(NfElem::from_int(k, 1), NfElem::from_int(k, 0), h)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Moves the symbolic exponent down to `h` (same parity, h ≤ half_exp).
    fn at_exp(&self, h: i64) -> (NfElem, NfElem) {
        let s = p_pow(self.p, (self.half_exp - h) / 2);
        (self.a.scale(&s), self.b.scale(&s))
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(o.clone());
        }
        if (self.half_exp - o.half_exp) % 2 != 0 {
            return Err(Error::inconsistent("adding elements with p-powers of different parity"));
        }
        let h = self.half_exp.min(o.half_exp);
        let (a1, b1) = self.at_exp(h);
        let (a2, b2) = o.at_exp(h);
        Ok(self.with(a1.add(&a2), b1.add(&b2), h))
    }

    pub fn neg(&self) -> Self {
        self.with(self.a.neg(), self.b.neg(), self.half_exp)
    }

    pub fn mul(&self, o: &Self) -> Self {
        // B² = tB − N
        let bb = self.b.mul(&o.b);
        let a = self.a.mul(&o.a).sub(&bb.scale(&self.norm));
        let b = self.a.mul(&o.b).add(&o.a.mul(&self.b)).add(&bb.mul(&self.trace));
        self.with(a, b, self.half_exp + o.half_exp)
    }

    /// Image under B ↦ B̄ = c_f(p) − B (equivalently β ↦ β⁻¹).
    pub fn conjugate(&self) -> Self {
        self.with(self.a.add(&self.b.mul(&self.trace)), self.b.neg(), self.half_exp)
    }

    pub fn inv(&self) -> Result<Self> {
        let c = self.conjugate();
        let nrm = self.mul(&c);
        if !nrm.b.is_zero() {
            return Err(Error::inconsistent("norm left the base field"));
        }
        let s = nrm.a.inv()?;
        Ok(self.with(c.a.mul(&s), c.b.mul(&s), -self.half_exp))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = self.with(NfElem::from_int(self.a.field(), 1), NfElem::from_int(self.a.field(), 0), 0);
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// Component along B (zero for β-symmetric expressions).
    pub fn beta_component(&self) -> &NfElem {
        &self.b
    }

    /// The value in Q(f) when the element is β-free with an even p-power.
    pub fn to_field(&self) -> Result<NfElem> {
        if !self.b.is_zero() {
            return Err(Error::inconsistent("element has a nonzero β-component"));
        }
        if self.half_exp % 2 != 0 {
            if self.a.is_zero() {
                return Ok(self.a.clone());
            }
            return Err(Error::inconsistent("element carries an odd power of √p"));
        }
        Ok(self.a.scale(&p_pow(self.p, self.half_exp / 2)))
    }

    pub fn eq_value(&self, o: &Self) -> bool {
        self.add(&o.neg()).map(|d| d.is_zero()).unwrap_or(false)
    }
}

/// Horner evaluation of an integer polynomial at an algebra element.
pub fn eval_poly(coeffs: &[BigInt], x: &BetaElement) -> Result<BetaElement> {
    let k = x.a.field().clone();
    let mut acc = x.scalar(&NfElem::from_int(&k, 0));
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(&x.scalar(&NfElem::from_bigint(&k, c)))?;
    }
    Ok(acc)
}
