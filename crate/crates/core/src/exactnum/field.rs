//! Number fields Q[x]/(h) presented by a monic irreducible integer polynomial,
//! and their elements in power-basis coordinates.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::arith::squarefree_decomposition;
use super::linalg::{charpoly, determinant, inverse, solve, Matrix, Scalar};
use super::poly::QPoly;
use super::zassenhaus::factor_over_q;
use super::{q_int, Rational};
use crate::error::{Error, Result};

#[derive(Debug)]
pub struct NumberField {
    minpoly: Vec<BigInt>,
    degree: usize,
    /// Z-basis of the working order, in power-basis coordinates.
    basis: Vec<Vec<Rational>>,
    /// Converts power coordinates (row vector) to basis coordinates.
    to_basis: Matrix<Rational>,
    maximal: bool,
    poly_disc: BigInt,
    /// θ^{n+i} for i < n-1, in power coordinates.
    high_powers: Vec<Vec<Rational>>,
}

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        self.minpoly == o.minpoly
    }
}

impl NumberField {
    /// Builds Q[x]/(h). The integral basis is the maximal order for degree ≤ 2
    /// and the equation order Z[θ] otherwise.
    pub fn new(minpoly: &[BigInt]) -> Result<Arc<NumberField>> {
        let n = minpoly.len().checked_sub(1).ok_or_else(|| Error::pre("empty polynomial"))?;
        if n == 0 || !minpoly[n].is_one() {
            return Err(Error::pre("defining polynomial must be monic of positive degree"));
        }
        let qp = QPoly::from_bigints(minpoly);
        let facs = factor_over_q(&qp);
        if facs.len() != 1 || facs[0].1 != 1 {
            return Err(Error::pre(format!("defining polynomial {qp} is reducible")));
        }
        let poly_disc = poly_discriminant(minpoly);
        let mut high_powers = Vec::new();
        // θ^n = -Σ a_i θ^i
        let mut cur: Vec<Rational> = minpoly[..n].iter().map(|a| Rational::from(-a)).collect();
        for _ in 0..n.saturating_sub(1) {
            high_powers.push(cur.clone());
            cur = times_theta(&cur, minpoly);
        }
        let (basis, maximal) = if n == 1 {
            (vec![vec![Rational::one()]], true)
        } else if n == 2 {
            let b = &minpoly[1];
            let (s, m) = squarefree_decomposition(&poly_disc);
            // √s = (2θ + b)/m
            let sqrt_s = vec![Rational::new(b.clone(), m.clone()), Rational::new(BigInt::from(2), m.clone())];
            let omega = if s.mod_floor(&BigInt::from(4)).is_one() {
                vec![(q_int(1) + &sqrt_s[0]) / q_int(2), &sqrt_s[1] / q_int(2)]
            } else {
                sqrt_s
            };
            (vec![vec![q_int(1), q_int(0)], omega], true)
        } else {
            let b = (0..n).map(|i| (0..n).map(|j| q_int((i == j) as i64)).collect()).collect();
            (b, false)
        };
        let to_basis = inverse(&basis).expect("integral basis is a basis");
        Ok(Arc::new(NumberField { minpoly: minpoly.to_vec(), degree: n, basis, to_basis, maximal, poly_disc, high_powers }))
    }

    pub fn from_ints(minpoly: &[i64]) -> Result<Arc<NumberField>> {
        NumberField::new(&minpoly.iter().map(|&a| BigInt::from(a)).collect::<Vec<_>>())
    }

    pub fn from_qpoly(p: &QPoly) -> Result<Arc<NumberField>> {
        let c = p.monic().to_integer_coeffs().ok_or_else(|| Error::pre("defining polynomial must have integer coefficients"))?;
        NumberField::new(&c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    pub fn minpoly_q(&self) -> QPoly {
        QPoly::from_bigints(&self.minpoly)
    }

    /// True when the integral basis spans the maximal order.
    pub fn is_maximal_order(&self) -> bool {
        self.maximal
    }

    pub fn poly_discriminant(&self) -> &BigInt {
        &self.poly_disc
    }

    /// Discriminant of the working order (the field discriminant for degree ≤ 2).
    pub fn order_discriminant(&self) -> BigInt {
        if self.degree == 1 {
            return BigInt::one();
        }
        let idx = determinant(&self.basis);
        let v = Rational::from(self.poly_disc.clone()) * &idx * &idx;
        v.to_integer()
    }

    pub fn integral_basis(k: &Arc<NumberField>) -> Vec<NfElem> {
        k.basis.iter().map(|c| NfElem { k: k.clone(), c: c.clone() }).collect()
    }

    pub fn basis_coords_raw(&self) -> &Matrix<Rational> {
        &self.basis
    }

    pub(crate) fn reduce_product(&self, prod: &[Rational]) -> Vec<Rational> {
        let n = self.degree;
        let mut out: Vec<Rational> = prod.iter().take(n).cloned().collect();
        out.resize(n, Rational::zero());
        for (i, a) in prod.iter().enumerate().skip(n) {
            if a.is_zero() {
                continue;
            }
            for (j, h) in self.high_powers[i - n].iter().enumerate() {
                out[j] += a * h;
            }
        }
        out
    }
}

fn times_theta(v: &[Rational], minpoly: &[BigInt]) -> Vec<Rational> {
    let n = v.len();
    let top = v[n - 1].clone();
    let mut out = vec![Rational::zero(); n];
    for i in (1..n).rev() {
        out[i] = v[i - 1].clone();
    }
    for (i, o) in out.iter_mut().enumerate() {
        *o -= &top * Rational::from(minpoly[i].clone());
    }
    out
}

/// Discriminant of a monic integer polynomial, via the resultant with its
/// derivative (computed as a determinant over Q).
pub fn poly_discriminant(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    if n == 1 {
        return BigInt::one();
    }
    let fq = QPoly::from_bigints(f);
    let d = fq.derivative();
    let res = resultant(&fq, &d);
    let sign = if (n * (n - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    (res * q_int(sign)).to_integer()
}

/// Resultant via the Sylvester matrix.
pub fn resultant(a: &QPoly, b: &QPoly) -> Rational {
    let m = a.degree().unwrap_or(0);
    let n = b.degree().unwrap_or(0);
    let size = m + n;
    if size == 0 {
        return Rational::one();
    }
    let mut s: Matrix<Rational> = vec![vec![Rational::zero(); size]; size];
    for i in 0..n {
        for j in 0..=m {
            s[i][i + j] = a.coeff(m - j);
        }
    }
    for i in 0..m {
        for j in 0..=n {
            s[n + i][i + j] = b.coeff(n - j);
        }
    }
    determinant(&s)
}

/// Element of a number field in power-basis coordinates.
#[derive(Clone)]
pub struct NfElem {
    k: Arc<NumberField>,
    c: Vec<Rational>,
}

impl PartialEq for NfElem {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c && (Arc::ptr_eq(&self.k, &o.k) || self.k.minpoly == o.k.minpoly)
    }
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = QPoly::new(self.c.clone());
        write!(f, "{}", p.to_string().replace('x', "t"))
    }
}

impl NfElem {
    pub fn new(k: &Arc<NumberField>, mut c: Vec<Rational>) -> Self {
        assert!(c.len() <= k.degree, "coordinate vector longer than field degree");
        c.resize(k.degree, Rational::zero());
        NfElem { k: k.clone(), c }
    }

    pub fn from_rational(k: &Arc<NumberField>, q: Rational) -> Self {
        let mut c = vec![Rational::zero(); k.degree];
        c[0] = q;
        NfElem { k: k.clone(), c }
    }

    pub fn from_int(k: &Arc<NumberField>, v: i64) -> Self {
        NfElem::from_rational(k, q_int(v))
    }

    pub fn from_bigint(k: &Arc<NumberField>, v: &BigInt) -> Self {
        NfElem::from_rational(k, Rational::from(v.clone()))
    }

    /// The generator θ (class of x).
    pub fn theta(k: &Arc<NumberField>) -> Self {
        if k.degree == 1 {
            return NfElem::from_rational(k, Rational::from(-k.minpoly[0].clone()));
        }
        let mut c = vec![Rational::zero(); k.degree];
        c[1] = Rational::one();
        NfElem { k: k.clone(), c }
    }

    /// Evaluates a rational polynomial at θ.
    pub fn from_poly(k: &Arc<NumberField>, p: &QPoly) -> Self {
        let t = NfElem::theta(k);
        let mut acc = NfElem::from_int(k, 0);
        for a in p.coeffs().iter().rev() {
            acc = acc.mul(&t).add(&NfElem::from_rational(k, a.clone()));
        }
        acc
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.k
    }

    pub fn coords(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.c.iter().skip(1).all(|x| x.is_zero())
    }

    pub fn rational_part(&self) -> &Rational {
        &self.c[0]
    }

    pub fn add(&self, o: &Self) -> Self {
        NfElem { k: self.k.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        NfElem { k: self.k.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Self {
        NfElem { k: self.k.clone(), c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        NfElem { k: self.k.clone(), c: self.c.iter().map(|a| a * q).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.k.degree;
        if n == 1 {
            return NfElem { k: self.k.clone(), c: vec![&self.c[0] * &o.c[0]] };
        }
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        NfElem { k: self.k.clone(), c: self.k.reduce_product(&prod) }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = NfElem::from_int(&self.k, 1);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    /// Matrix of multiplication by self; column j holds self·θ^j.
    pub fn mult_matrix(&self) -> Matrix<Rational> {
        let n = self.k.degree;
        let mut cols = Vec::with_capacity(n);
        let mut cur = self.clone();
        let t = NfElem::theta(&self.k);
        for _ in 0..n {
            cols.push(cur.c.clone());
            if n > 1 {
                cur = cur.mul(&t);
            }
        }
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::pre("inverse of zero"));
        }
        let n = self.k.degree;
        let mut e = vec![Rational::zero(); n];
        e[0] = Rational::one();
        let sol = solve(&self.mult_matrix(), &e).ok_or_else(|| Error::inconsistent("singular multiplication matrix"))?;
        Ok(NfElem { k: self.k.clone(), c: sol })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn norm(&self) -> Rational {
        determinant(&self.mult_matrix())
    }

    pub fn trace(&self) -> Rational {
        let m = self.mult_matrix();
        (0..m.len()).map(|i| m[i][i].clone()).sum()
    }

    /// Characteristic polynomial of multiplication by self.
    pub fn charpoly(&self) -> QPoly {
        charpoly(&self.mult_matrix())
    }

    pub fn is_algebraic_integer(&self) -> bool {
        self.charpoly().coeffs().iter().all(|c| c.is_integer())
    }

    /// Coordinates with respect to the integral basis.
    pub fn basis_coords(&self) -> Vec<Rational> {
        let n = self.k.degree;
        (0..n)
            .map(|j| (0..n).map(|i| &self.c[i] * &self.k.to_basis[i][j]).sum())
            .collect()
    }

    pub fn from_basis_coords(k: &Arc<NumberField>, b: &[Rational]) -> Self {
        let n = k.degree;
        let c = (0..n).map(|j| (0..n).map(|i| &b[i] * &k.basis[i][j]).sum()).collect();
        NfElem { k: k.clone(), c }
    }

    /// Least positive integer d with d·self in the working order.
    pub fn denominator(&self) -> BigInt {
        self.basis_coords().iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// Image under the nontrivial automorphism of a quadratic field.
    pub fn conjugate(&self) -> Result<Self> {
        match self.k.degree {
            1 => Ok(self.clone()),
            2 => {
                // θ' = -b - θ
                let b = Rational::from(self.k.minpoly[1].clone());
                let c0 = &self.c[0] - &self.c[1] * &b;
                Ok(NfElem { k: self.k.clone(), c: vec![c0, -self.c[1].clone()] })
            }
            _ => Err(Error::FactorizationUnsupported("conjugation needs degree <= 2".into())),
        }
    }

    /// Canonical text form: coordinates as "num/den" strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.c.iter().map(|x| format!("{}/{}", x.numer(), x.denom())).collect()
    }
}

impl Scalar for NfElem {
    fn zero_like(&self) -> Self {
        NfElem::from_int(&self.k, 0)
    }
    fn one_like(&self) -> Self {
        NfElem::from_int(&self.k, 1)
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
    fn add_s(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_s(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_s(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_s(&self) -> Self {
        self.neg()
    }
    fn inv_s(&self) -> Self {
        self.inv().expect("nonzero")
    }
    fn rational_like(&self, q: &Rational) -> Self {
        NfElem::from_rational(&self.k, q.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_norms_and_inverses() {
        let k = NumberField::from_ints(&[-5, 0, 1]).unwrap();
        let t = NfElem::theta(&k);
        assert_eq!(t.norm(), q_int(-5));
        let x = NfElem::new(&k, vec![q_int(3), q_int(2)]);
        assert_eq!(x.norm(), q_int(9 - 20));
        let y = x.inv().unwrap();
        assert_eq!(x.mul(&y), NfElem::from_int(&k, 1));
        assert_eq!(x.conjugate().unwrap().mul(&x), NfElem::from_rational(&k, x.norm()));
    }

    #[test]
    fn integral_basis_of_weight_32_field() {
        let k = NumberField::from_ints(&[-2235350016, -39960, 1]).unwrap();
        assert_eq!(k.order_discriminant(), BigInt::from(18295489));
        let basis = NumberField::integral_basis(&k);
        assert!(basis.iter().all(|b| b.is_algebraic_integer()));
        let t = NfElem::theta(&k);
        assert!(t.is_algebraic_integer());
        // θ = 19980 + 12·√d0 = 19968 + 24·ω
        assert_eq!(t.basis_coords(), vec![q_int(19968), q_int(24)]);
    }

    #[test]
    fn reducible_polynomial_rejected() {
        assert!(NumberField::from_ints(&[-4, 0, 1]).is_err());
    }

    #[test]
    fn cubic_arithmetic() {
        let k = NumberField::from_ints(&[-2, 0, 0, 1]).unwrap();
        let t = NfElem::theta(&k);
        assert_eq!(t.pow(3), NfElem::from_int(&k, 2));
        assert_eq!(t.norm(), q_int(2));
        assert_eq!(poly_discriminant(k.minpoly()), BigInt::from(-108));
    }
}
