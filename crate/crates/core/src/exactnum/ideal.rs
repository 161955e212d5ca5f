//! Prime ideals: splitting of rational primes, valuations of elements and of
//! finitely generated fractional ideals, ideal norms.
//!
//! Valuations follow the classical uniformizer-free method: for P above p a
//! fixed β ∈ pP⁻¹ \ pO satisfies ord_P(β/p) = -1 and ord_Q(β/p) ≥ 0 for every
//! other Q above p, so ord_P(x) for integral x is the number of times x can be
//! multiplied by β/p without leaving the order.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::arith::{is_prime_u64, valuation};
use super::field::{NfElem, NumberField};
use super::linalg::{lattice_det, left_kernel, Matrix};
use super::modp::{factor as factor_mod_p, Fp, PolyFp};
use super::poly::QPoly;
use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct PrimeIdeal {
    k: Arc<NumberField>,
    p: u64,
    e: u32,
    f: u32,
    /// Second generator: P = (p, α).
    alpha: NfElem,
    /// Element of pP⁻¹ \ pO used for valuations.
    beta: NfElem,
    /// Defining factor of the generator's minimal polynomial mod p.
    residue_poly: Vec<u64>,
}

impl fmt::Debug for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) [e={}, f={}]", self.p, self.alpha, self.e, self.f)
    }
}

impl PartialEq for PrimeIdeal {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.residue_poly == o.residue_poly && self.k.minpoly() == o.k.minpoly()
    }
}

impl PrimeIdeal {
    pub fn rational_prime(&self) -> u64 {
        self.p
    }

    pub fn ramification(&self) -> u32 {
        self.e
    }

    pub fn residue_degree(&self) -> u32 {
        self.f
    }

    pub fn generator(&self) -> &NfElem {
        &self.alpha
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.k
    }

    /// Absolute norm p^f.
    pub fn norm(&self) -> BigInt {
        BigInt::from(self.p).pow(self.f)
    }

    /// Serialized form (p, generator coordinates, e, f).
    pub fn to_serial(&self) -> (u64, Vec<String>, u32, u32) {
        (self.p, self.alpha.to_strings(), self.e, self.f)
    }

    fn is_p_divisible(&self, x: &NfElem) -> bool {
        let p = BigInt::from(self.p);
        x.basis_coords().iter().all(|c| c.is_integer() && (c.numer() % &p).is_zero())
    }

    /// ord_P of a nonzero element.
    pub fn ord(&self, x: &NfElem) -> Result<i64> {
        if x.is_zero() {
            return Err(Error::pre("ord_P of zero"));
        }
        let d = x.denominator();
        let mut y = x.scale(&Rational::from(d.clone()));
        let mut v: i64 = 0;
        let p_inv = Rational::new(BigInt::one(), BigInt::from(self.p));
        loop {
            let z = y.mul(&self.beta);
            if !self.is_p_divisible(&z) {
                break;
            }
            y = z.scale(&p_inv);
            v += 1;
        }
        let vd = if d.is_one() { 0 } else { valuation(&d, self.p) as i64 };
        Ok(v - self.e as i64 * vd)
    }

    /// ord_P of a nonzero rational number.
    pub fn ord_rational(&self, q: &Rational) -> Result<i64> {
        if q.is_zero() {
            return Err(Error::pre("ord_P of zero"));
        }
        let vn = valuation(q.numer(), self.p) as i64;
        let vd = valuation(q.denom(), self.p) as i64;
        Ok(self.e as i64 * (vn - vd))
    }

    /// ord_P of the fractional ideal generated by `gens` (zeros ignored).
    pub fn ord_ideal(&self, gens: &[NfElem]) -> Result<i64> {
        gens.iter()
            .filter(|g| !g.is_zero())
            .map(|g| self.ord(g))
            .try_fold(None::<i64>, |acc, v| {
                let v = v?;
                Ok::<_, Error>(Some(acc.map_or(v, |a| a.min(v))))
            })?
            .ok_or_else(|| Error::pre("ord_P of the zero ideal"))
    }
}

/// Generator γ with p ∤ [O : Z[γ]] for the working order.
fn local_generator(k: &Arc<NumberField>, p: u64) -> Result<NfElem> {
    match k.degree() {
        1 => Ok(NfElem::from_int(k, 0)),
        2 => Ok(NumberField::integral_basis(k)[1].clone()),
        _ => {
            let p2 = BigInt::from(p) * BigInt::from(p);
            if (k.poly_discriminant() % &p2).is_zero() {
                Err(Error::FactorizationUnsupported(format!(
                    "p = {p}: p^2 divides the polynomial discriminant of a degree-{} field",
                    k.degree()
                )))
            } else {
                Ok(NfElem::theta(k))
            }
        }
    }
}

/// Factorization of pO into prime ideals, sorted by (f, residue polynomial).
pub fn prime_split(k: &Arc<NumberField>, p: u64) -> Result<Vec<PrimeIdeal>> {
    if !is_prime_u64(p) {
        return Err(Error::pre(format!("{p} is not prime")));
    }
    let n = k.degree();
    if n == 1 {
        return Ok(vec![PrimeIdeal {
            k: k.clone(),
            p,
            e: 1,
            f: 1,
            alpha: NfElem::from_int(k, p as i64),
            beta: NfElem::from_int(k, 1),
            residue_poly: vec![0, 1],
        }]);
    }
    let gamma = local_generator(k, p)?;
    let cp = gamma.charpoly().to_integer_coeffs().ok_or_else(|| Error::inconsistent("generator not integral"))?;
    let facs = factor_mod_p(&PolyFp::from_bigints(&cp, p));
    let basis = NumberField::integral_basis(k);
    let mut out = Vec::new();
    for (g, e) in facs {
        let gq = QPoly::new(g.c.iter().map(|&x| Rational::from(BigInt::from(x))).collect());
        let alpha = eval_at(&gq, &gamma);
        // β ∈ O/pO with β·α·ω_j ≡ 0 (mod p) for all j
        let rows: Matrix<Fp> = basis
            .iter()
            .map(|bi| {
                let mut row = Vec::with_capacity(n * n);
                for bj in &basis {
                    for c in bi.mul(&alpha).mul(bj).basis_coords() {
                        row.push(Fp::from_bigint(&c.to_integer(), p));
                    }
                }
                row
            })
            .collect();
        let ker = left_kernel(&rows, &Fp { v: 0, p });
        let bv = ker.first().ok_or_else(|| Error::inconsistent("no valuation element found"))?;
        let beta = NfElem::from_basis_coords(k, &bv.iter().map(|x| Rational::from(BigInt::from(x.v))).collect::<Vec<_>>());
        out.push(PrimeIdeal { k: k.clone(), p, e, f: g.degree() as u32, alpha, beta, residue_poly: g.c.clone() });
    }
    out.sort_by(|a, b| (a.f, &a.residue_poly).cmp(&(b.f, &b.residue_poly)));
    let total: u32 = out.iter().map(|q| q.e * q.f).sum();
    if total as usize != n {
        return Err(Error::inconsistent(format!("Σ e·f = {total} != degree {n} at p = {p}")));
    }
    Ok(out)
}

fn eval_at(p: &QPoly, x: &NfElem) -> NfElem {
    let k = x.field();
    let mut acc = NfElem::from_int(k, 0);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&NfElem::from_rational(k, c.clone()));
    }
    acc
}

/// Absolute norm of the fractional ideal generated by `gens`.
pub fn ideal_norm(k: &Arc<NumberField>, gens: &[NfElem]) -> Result<Rational> {
    let basis = NumberField::integral_basis(k);
    let mut vecs: Vec<Vec<Rational>> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        for b in &basis {
            vecs.push(g.mul(b).basis_coords());
        }
    }
    if vecs.is_empty() {
        return Err(Error::pre("norm of the zero ideal"));
    }
    let den = vecs.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let rows: Vec<Vec<BigInt>> = vecs
        .iter()
        .map(|v| v.iter().map(|x| (x * Rational::from(den.clone())).to_integer()).collect())
        .collect();
    let det = lattice_det(&rows);
    Ok(Rational::new(det, den.pow(k.degree() as u32)))
}

/// Norm of the ideal (x)·𝔞⁻¹ where 𝔞 is generated by `gens`.
pub fn relative_ideal_norm(x: &NfElem, gens: &[NfElem]) -> Result<Rational> {
    let k = x.field();
    let nx = x.norm().abs();
    Ok(nx / ideal_norm(k, gens)?)
}

/// The exponent of p in a nonzero rational.
pub fn rational_ord(q: &Rational, p: u64) -> i64 {
    valuation(q.numer(), p) as i64 - valuation(q.denom(), p) as i64
}

pub fn small_prime(p: &BigInt) -> Option<u64> {
    p.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::q_int;

    #[test]
    fn splitting_in_q_sqrt5() {
        let k = NumberField::from_ints(&[-5, 0, 1]).unwrap();
        let s11 = prime_split(&k, 11).unwrap();
        assert_eq!(s11.len(), 2);
        assert!(s11.iter().all(|q| q.e == 1 && q.f == 1 && q.norm() == BigInt::from(11)));
        let s5 = prime_split(&k, 5).unwrap();
        assert_eq!(s5.len(), 1);
        assert_eq!(s5[0].e, 2);
        let s2 = prime_split(&k, 2).unwrap();
        assert_eq!((s2.len(), s2[0].f), (1, 2));
    }

    #[test]
    fn inert_three_in_gaussian_field() {
        let k = NumberField::from_ints(&[1, 0, 1]).unwrap();
        let s = prime_split(&k, 3).unwrap();
        assert_eq!((s.len(), s[0].e, s[0].f), (1, 1, 2));
        let s2 = prime_split(&k, 2).unwrap();
        assert_eq!((s2.len(), s2[0].e), (1, 2));
        let one_plus_i = NfElem::new(&k, vec![q_int(1), q_int(1)]);
        assert_eq!(s2[0].ord(&one_plus_i).unwrap(), 1);
        assert_eq!(s2[0].ord(&NfElem::from_int(&k, 2)).unwrap(), 2);
    }

    #[test]
    fn valuations_at_split_prime() {
        let k = NumberField::from_ints(&[-5, 0, 1]).unwrap();
        let s = prime_split(&k, 11).unwrap();
        let x = NfElem::new(&k, vec![q_int(4), q_int(1)]); // norm 16 - 5 = 11
        let ords: Vec<i64> = s.iter().map(|q| q.ord(&x).unwrap()).collect();
        assert_eq!(ords.iter().sum::<i64>(), 1);
        for q in &s {
            assert_eq!(q.ord(&NfElem::from_int(&k, 11)).unwrap(), 1);
            assert_eq!(q.ord(&NfElem::from_int(&k, 1)).unwrap(), 0);
            let inv = NfElem::from_rational(&k, Rational::new(BigInt::from(1), BigInt::from(121)));
            assert_eq!(q.ord(&inv).unwrap(), -2);
        }
    }

    #[test]
    fn ideal_norm_of_principal_and_two_generator_ideals() {
        let k = NumberField::from_ints(&[-5, 0, 1]).unwrap();
        let x = NfElem::new(&k, vec![q_int(4), q_int(1)]);
        assert_eq!(ideal_norm(&k, std::slice::from_ref(&x)).unwrap(), q_int(11));
        let p = prime_split(&k, 11).unwrap();
        let n = ideal_norm(&k, &[NfElem::from_int(&k, 11), p[0].generator().clone()]).unwrap();
        assert_eq!(n, q_int(11));
        let half = NfElem::from_rational(&k, Rational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(ideal_norm(&k, &[half]).unwrap(), Rational::new(BigInt::from(1), BigInt::from(4)));
    }
}
