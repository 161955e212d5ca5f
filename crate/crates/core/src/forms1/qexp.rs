//! Truncated q-expansions over an exact coefficient ring.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exactnum::linalg::Scalar;
use crate::exactnum::Rational;

/// Σ_{n<N} a_n q^n, known modulo q^N.
#[derive(Clone, Debug, PartialEq)]
pub struct QExp<T> {
    c: Vec<T>,
}

impl<T: Scalar> QExp<T> {
    pub fn new(c: Vec<T>) -> Self {
        QExp { c }
    }

    pub fn zero(prec: usize, sample: &T) -> Self {
        QExp { c: vec![sample.zero_like(); prec] }
    }

    pub fn prec(&self) -> usize {
        self.c.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.c
    }

    pub fn coeff(&self, n: usize) -> &T {
        &self.c[n]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero_s())
    }

    pub fn truncate(&self, n: usize) -> Self {
        QExp { c: self.c[..n.min(self.c.len())].to_vec() }
    }

    pub fn add(&self, o: &Self) -> Self {
        QExp { c: self.c.iter().zip(&o.c).map(|(a, b)| a.add_s(b)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        QExp { c: self.c.iter().zip(&o.c).map(|(a, b)| a.sub_s(b)).collect() }
    }

    pub fn neg(&self) -> Self {
        QExp { c: self.c.iter().map(|a| a.neg_s()).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        QExp { c: self.c.iter().map(|a| a.mul_s(s)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.prec().min(o.prec());
        if n == 0 {
            return QExp { c: vec![] };
        }
        let mut c = vec![self.c[0].zero_like(); n];
        for (i, a) in self.c.iter().take(n).enumerate() {
            if a.is_zero_s() {
                continue;
            }
            for (j, b) in o.c.iter().take(n - i).enumerate() {
                if !b.is_zero_s() {
                    c[i + j] = c[i + j].add_s(&a.mul_s(b));
                }
            }
        }
        QExp { c }
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero_s())
    }
}

impl QExp<Rational> {
    pub fn from_ints(c: &[BigInt]) -> Self {
        QExp { c: c.iter().map(|x| Rational::from(x.clone())).collect() }
    }

    /// Coefficients as integers, if they all are.
    pub fn to_ints(&self) -> Option<Vec<BigInt>> {
        self.c.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
    }

    /// Base change to another scalar ring.
    pub fn lift<S: Scalar>(&self, sample: &S) -> QExp<S> {
        QExp { c: self.c.iter().map(|x| sample.rational_like(x)).collect() }
    }
}

/// Integer power-series product truncated at `n`; the workhorse for the
/// η- and θ-type products.
pub fn int_mul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); n];
    for (i, x) in a.iter().take(n).enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().take(n - i).enumerate() {
            if !y.is_zero() {
                c[i + j] += x * y;
            }
        }
    }
    c
}

pub fn int_pow(a: &[BigInt], e: u32, n: usize) -> Vec<BigInt> {
    let mut one = vec![BigInt::zero(); n];
    if n > 0 {
        one[0] = BigInt::from(1);
    }
    let (mut acc, mut base, mut e) = (one, a[..n.min(a.len())].to_vec(), e);
    base.resize(n, BigInt::zero());
    while e > 0 {
        if e & 1 == 1 {
            acc = int_mul(&acc, &base, n);
        }
        e >>= 1;
        if e > 0 {
            base = int_mul(&base, &base, n);
        }
    }
    acc
}
