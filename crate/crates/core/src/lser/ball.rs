//! Midpoint–radius real and complex balls over MPFR floats. Every operation
//! rounds the midpoint to nearest and pushes the rounding error plus the
//! propagated input radii into the radius, computed with upward rounding.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use rug::float::{Constant, Round};
use rug::ops::{AddAssignRound, MulAssignRound};
use rug::Float;

use crate::exactnum::Rational;

const RAD_PREC: u32 = 64;

#[derive(Clone)]
pub struct BigReal {
    mid: Float,
    rad: Float,
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:.3e}", self.mid.to_string_radix(10, Some(30)), self.rad.to_f64())
    }
}

fn up(x: Float) -> Float {
    let mut r = Float::new(RAD_PREC);
    r.add_assign_round(&x, Round::Up);
    r
}

fn add_up(a: &Float, b: &Float) -> Float {
    let mut r = Float::with_val_round(RAD_PREC, a, Round::Up).0;
    r.add_assign_round(b, Round::Up);
    r
}

fn mul_up(a: &Float, b: &Float) -> Float {
    let mut r = Float::with_val_round(RAD_PREC, a, Round::Up).0;
    r.mul_assign_round(b, Round::Up);
    r
}

fn abs_up(a: &Float) -> Float {
    Float::with_val_round(RAD_PREC, &*a.as_abs(), Round::Up).0
}

impl BigReal {
    pub fn prec(&self) -> u32 {
        self.mid.prec()
    }

    /// Rounding error of a freshly rounded midpoint: |m|·2^{1−prec}.
    fn ulp_err(m: &Float) -> Float {
        let mut e = abs_up(m);
        e >>= m.prec() as i32 - 1;
        e
    }

    fn from_rounded(mid: Float, extra: Float) -> BigReal {
        let rad = add_up(&extra, &Self::ulp_err(&mid));
        BigReal { mid, rad }
    }

    /// A correctly rounded value of an exactly known quantity.
    pub fn from_float(mid: Float) -> BigReal {
        let z = Float::new(RAD_PREC);
        BigReal::from_rounded(mid, z)
    }

    pub fn exact(mid: Float) -> BigReal {
        BigReal { mid, rad: Float::new(RAD_PREC) }
    }

    pub fn with_radius(mid: Float, rad: f64) -> BigReal {
        BigReal { mid, rad: up(Float::with_val(RAD_PREC, rad.abs())) }
    }

    pub fn from_i64(v: i64, prec: u32) -> BigReal {
        BigReal::from_float(Float::with_val(prec, v))
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> BigReal {
        let z = rug::Integer::from_str_radix(&v.to_str_radix(16), 16).expect("hex");
        BigReal::from_float(Float::with_val(prec, &z))
    }

    pub fn from_rational(q: &Rational, prec: u32) -> BigReal {
        BigReal::from_bigint(q.numer(), prec).div(&BigReal::from_bigint(q.denom(), prec))
    }

    pub fn zero(prec: u32) -> BigReal {
        BigReal::exact(Float::with_val(prec, 0))
    }

    pub fn one(prec: u32) -> BigReal {
        BigReal::exact(Float::with_val(prec, 1))
    }

    pub fn pi(prec: u32) -> BigReal {
        BigReal::from_float(Float::with_val(prec, Constant::Pi))
    }

    pub fn mid(&self) -> &Float {
        &self.mid
    }

    pub fn rad(&self) -> f64 {
        self.rad.to_f64()
    }

    pub fn radius(&self) -> &Float {
        &self.rad
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    pub fn add_error(&self, e: &Float) -> BigReal {
        BigReal { mid: self.mid.clone(), rad: add_up(&self.rad, &abs_up(e)) }
    }

    pub fn add(&self, o: &BigReal) -> BigReal {
        let mid = Float::with_val(self.prec(), &self.mid + &o.mid);
        BigReal::from_rounded(mid, add_up(&self.rad, &o.rad))
    }

    pub fn sub(&self, o: &BigReal) -> BigReal {
        let mid = Float::with_val(self.prec(), &self.mid - &o.mid);
        BigReal::from_rounded(mid, add_up(&self.rad, &o.rad))
    }

    pub fn neg(&self) -> BigReal {
        BigReal { mid: -self.mid.clone(), rad: self.rad.clone() }
    }

    pub fn mul(&self, o: &BigReal) -> BigReal {
        let mid = Float::with_val(self.prec(), &self.mid * &o.mid);
        let e = add_up(
            &add_up(&mul_up(&abs_up(&self.mid), &o.rad), &mul_up(&abs_up(&o.mid), &self.rad)),
            &mul_up(&self.rad, &o.rad),
        );
        BigReal::from_rounded(mid, e)
    }

    pub fn mul_i64(&self, v: i64) -> BigReal {
        let mid = Float::with_val(self.prec(), &self.mid * v);
        let e = mul_up(&self.rad, &Float::with_val(RAD_PREC, v.unsigned_abs()));
        BigReal::from_rounded(mid, e)
    }

    /// Lower bound for |x| over the ball (zero if the ball contains 0).
    fn abs_lower(&self) -> Float {
        let mut m = Float::with_val_round(RAD_PREC, &*self.mid.as_abs(), Round::Down).0;
        m.add_assign_round(-self.rad.clone(), Round::Down);
        if m < 0 {
            Float::new(RAD_PREC)
        } else {
            m
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_lower() == 0
    }

    pub fn div(&self, o: &BigReal) -> BigReal {
        let lo = o.abs_lower();
        assert!(lo > 0, "division by a ball containing zero");
        let mid = Float::with_val(self.prec(), &self.mid / &o.mid);
        // |a/b − a'/b'| ≤ (|a|·rb + |b|·ra)/(|b|·(|b| − rb))
        let num = add_up(&mul_up(&abs_up(&self.mid), &o.rad), &mul_up(&abs_up(&o.mid), &self.rad));
        let den = Float::with_val_round(RAD_PREC, &*o.mid.as_abs() * &lo, Round::Down).0;
        let e = Float::with_val_round(RAD_PREC, &num / &den, Round::Up).0;
        BigReal::from_rounded(mid, e)
    }

    pub fn recip(&self) -> BigReal {
        BigReal::one(self.prec()).div(self)
    }

    pub fn sqr(&self) -> BigReal {
        self.mul(self)
    }

    pub fn pow_u(&self, e: u32) -> BigReal {
        let mut acc = BigReal::one(self.prec());
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.sqr();
            }
        }
        acc
    }

    pub fn pow_i(&self, e: i64) -> BigReal {
        if e >= 0 {
            self.pow_u(e as u32)
        } else {
            self.pow_u((-e) as u32).recip()
        }
    }

    pub fn sqrt(&self) -> BigReal {
        let lo = self.abs_lower();
        assert!(self.mid > 0 && lo > 0, "sqrt of a ball touching zero");
        let mid = Float::with_val(self.prec(), self.mid.sqrt_ref());
        // |√a − √a'| ≤ r/(√lo + √a)
        let s = Float::with_val_round(RAD_PREC, lo.sqrt_ref(), Round::Down).0;
        let e = Float::with_val_round(RAD_PREC, &self.rad / &s, Round::Up).0;
        BigReal::from_rounded(mid, e)
    }

    pub fn exp(&self) -> BigReal {
        let mid = Float::with_val(self.prec(), self.mid.exp_ref());
        // e^{m}(e^{r} − 1) ≤ e^{m}·r·e^{r}
        let er = Float::with_val_round(RAD_PREC, self.rad.exp_ref(), Round::Up).0;
        let e = mul_up(&mul_up(&abs_up(&mid), &self.rad), &er);
        let e = mul_up(&e, &Float::with_val(RAD_PREC, 1.0000001));
        BigReal::from_rounded(mid, e)
    }

    pub fn ln(&self) -> BigReal {
        let lo = self.abs_lower();
        assert!(self.mid > 0 && lo > 0, "log of a ball touching zero");
        let mid = Float::with_val(self.prec(), self.mid.ln_ref());
        let e = Float::with_val_round(RAD_PREC, &self.rad / &lo, Round::Up).0;
        BigReal::from_rounded(mid, e)
    }

    /// cos and sin (Lipschitz constant 1).
    pub fn cos_sin(&self) -> (BigReal, BigReal) {
        let (s, c) = self.mid.clone().sin_cos(Float::new(self.prec()));
        (BigReal::from_rounded(c, self.rad.clone()), BigReal::from_rounded(s, self.rad.clone()))
    }

    pub fn abs(&self) -> BigReal {
        BigReal { mid: self.mid.clone().abs(), rad: self.rad.clone() }
    }

    /// Upper bound of |x|.
    pub fn abs_upper(&self) -> f64 {
        add_up(&abs_up(&self.mid), &self.rad).to_f64()
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        let prec = self.prec() + 64;
        let z = BigReal::from_rational(q, prec);
        let d = Float::with_val(prec, &self.mid - &z.mid).abs();
        d <= Float::with_val(RAD_PREC, add_up(&self.rad, &z.rad))
    }

    /// Relative radius rad/|mid| (infinite for zero midpoint).
    pub fn rel_rad(&self) -> f64 {
        if self.mid == 0 {
            return f64::INFINITY;
        }
        (Float::with_val(RAD_PREC, &self.rad / &*self.mid.as_abs())).to_f64()
    }

    /// Number of correct bits relative to |mid|.
    pub fn accuracy_bits(&self) -> i64 {
        let r = self.rel_rad();
        if r == 0.0 {
            self.prec() as i64
        } else {
            (-r.log2()).floor() as i64
        }
    }

    pub fn overlaps(&self, o: &BigReal) -> bool {
        let d = Float::with_val(self.prec().max(o.prec()), &self.mid - &o.mid).abs();
        d <= Float::with_val(RAD_PREC, add_up(&self.rad, &o.rad))
    }

    pub fn cmp_mid(&self, o: &BigReal) -> Ordering {
        self.mid.partial_cmp(&o.mid).unwrap_or(Ordering::Equal)
    }

    pub fn to_string_digits(&self, digits: usize) -> String {
        self.mid.to_string_radix(10, Some(digits))
    }
}

/// Complex ball as a pair of real balls.
#[derive(Clone, Debug)]
pub struct CBall {
    pub re: BigReal,
    pub im: BigReal,
}

impl CBall {
    pub fn new(re: BigReal, im: BigReal) -> CBall {
        CBall { re, im }
    }

    pub fn real(re: BigReal) -> CBall {
        let p = re.prec();
        CBall { re, im: BigReal::zero(p) }
    }

    pub fn zero(prec: u32) -> CBall {
        CBall::real(BigReal::zero(prec))
    }

    pub fn one(prec: u32) -> CBall {
        CBall::real(BigReal::one(prec))
    }

    pub fn add(&self, o: &CBall) -> CBall {
        CBall { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &CBall) -> CBall {
        CBall { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &CBall) -> CBall {
        CBall {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, s: &BigReal) -> CBall {
        CBall { re: self.re.mul(s), im: self.im.mul(s) }
    }

    pub fn conj(&self) -> CBall {
        CBall { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn norm_sqr(&self) -> BigReal {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn recip(&self) -> CBall {
        let n = self.norm_sqr();
        CBall { re: self.re.div(&n), im: self.im.neg().div(&n) }
    }

    pub fn div(&self, o: &CBall) -> CBall {
        self.mul(&o.recip())
    }

    pub fn pow_u(&self, e: u32) -> CBall {
        let mut acc = CBall::one(self.re.prec());
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    /// e^{x+iy}.
    pub fn exp(&self) -> CBall {
        let r = self.re.exp();
        let (c, s) = self.im.cos_sin();
        CBall { re: r.mul(&c), im: r.mul(&s) }
    }

    /// Principal square root (branch cut on the negative real axis).
    pub fn sqrt(&self) -> CBall {
        let r = self.norm_sqr().sqrt();
        let prec = self.re.prec();
        let half = BigReal::exact(Float::with_val(prec, 0.5));
        if self.re.mid() >= &0 {
            let a = r.add(&self.re).mul(&half).sqrt();
            let b = self.im.div(&a.mul_i64(2));
            CBall { re: a, im: b }
        } else {
            let b = r.sub(&self.re).mul(&half).sqrt();
            let b = if self.im.mid() < &0 { b.neg() } else { b };
            let a = self.im.div(&b.mul_i64(2));
            CBall { re: a, im: b }
        }
    }
}
