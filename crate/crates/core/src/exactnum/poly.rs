//! Dense univariate polynomials over the rationals, coefficients stored from
//! the constant term upwards with no trailing zeros.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct QPoly {
    c: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        QPoly { c }
    }

    pub fn zero() -> Self {
        QPoly { c: vec![] }
    }

    pub fn one() -> Self {
        QPoly::constant(Rational::one())
    }

    pub fn constant(a: Rational) -> Self {
        QPoly::new(vec![a])
    }

    /// The monomial a·x^n.
    pub fn monomial(a: Rational, n: usize) -> Self {
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = a;
        QPoly::new(c)
    }

    pub fn x() -> Self {
        QPoly::monomial(Rational::one(), 1)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        QPoly::new(c.iter().map(|&v| Rational::from(BigInt::from(v))).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        QPoly::new(c.iter().map(|v| Rational::from(v.clone())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.c.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        let n = self.c.len().max(o.c.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn neg(&self) -> QPoly {
        QPoly::new(self.c.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, a: &Rational) -> QPoly {
        QPoly::new(self.c.iter().map(|x| x * a).collect())
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut r = vec![Rational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        QPoly::new(r)
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut r = QPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.lead();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (QPoly::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let coef = &r[i + dd] / &lead;
            if !coef.is_zero() {
                for (j, dj) in d.c.iter().enumerate() {
                    r[i + j] -= &coef * dj;
                }
            }
            q[i] = coef;
        }
        r.truncate(dd);
        (QPoly::new(q), QPoly::new(r))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        self.scale(&(Rational::one() / l))
    }

    pub fn gcd(&self, o: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * Rational::from(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Integer coefficients if all denominators are 1.
    pub fn to_integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.c
            .iter()
            .map(|a| a.is_integer().then(|| a.numer().clone()))
            .collect()
    }

    /// Primitive integer polynomial with positive leading coefficient,
    /// proportional to `self`.
    pub fn primitive_part(&self) -> Vec<BigInt> {
        let mut den = BigInt::one();
        for a in &self.c {
            den = den.lcm(a.denom());
        }
        let ints: Vec<BigInt> = self.c.iter().map(|a| (a * Rational::from(den.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for a in &ints {
            g = g.gcd(a);
        }
        if g.is_zero() {
            return ints;
        }
        let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|a| a / &g * &sign).collect()
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let a = QPoly::from_ints(&[-2235350016, -39960, 1]);
        let b = QPoly::from_ints(&[3, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = QPoly::from_ints(&[1, 1]).mul(&QPoly::from_ints(&[-2, 1]));
        let b = QPoly::from_ints(&[1, 1]).mul(&QPoly::from_ints(&[5, 1]));
        assert_eq!(a.gcd(&b), QPoly::from_ints(&[1, 1]));
        assert!(a.is_squarefree());
        assert!(!a.mul(&b).is_squarefree());
    }

    #[test]
    fn display_is_readable() {
        let p = QPoly::from_ints(&[-2235350016, -39960, 1]);
        assert_eq!(p.to_string(), "x^2 - 39960*x - 2235350016");
    }
}
