//! Level-one modular symbols of weight w with coefficients in degree-(w−2)
//! polynomials. Symbols are Manin symbols [P] = P{0,∞}; SL2(Z) acts on the
//! right by P|g(X,Y) = P(aX+bY, cX+dY), so that P{g0,g∞} = [P|g].
//!
//! Periods are never materialized: an eigenform f is represented by the
//! Hecke-equivariant functionals ψ± on the symbol space, and critical values
//! are ψ±(winding element) measured against the O-lattice ψ±(integral
//! cuspidal symbols), which fixes them up to a unit at the chosen prime.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::arith::{binomial, factorize, is_fundamental_discriminant, is_prime_u64, kronecker};
use crate::exactnum::ideal::{ideal_norm, PrimeIdeal};
use crate::exactnum::linalg::{charpoly, kernel, rref, solve, Matrix};
use crate::exactnum::{NfElem, QPoly, Rational};
use crate::forms1::{hecke_matrix, miller_basis, PrimitiveForm};

pub type Mat2 = [i64; 4];

pub const S: Mat2 = [0, -1, 1, 0];
pub const RHO: Mat2 = [0, -1, 1, -1];

/// Coefficient vector of P|g in the monomial basis X^j Y^{w−2−j}.
pub fn act(p: &[BigInt], g: &Mat2) -> Vec<BigInt> {
    let d = p.len() - 1;
    let [a, b, c, dd] = *g;
    let lin = |x: i64, y: i64, e: usize| -> Vec<BigInt> {
        // (xX + yY)^e in the basis X^i Y^{e−i}
        (0..=e)
            .map(|i| binomial(e as u64, i as u64) * BigInt::from(x).pow(i as u32) * BigInt::from(y).pow((e - i) as u32))
            .collect()
    };
    let mut out = vec![BigInt::zero(); d + 1];
    for (j, pj) in p.iter().enumerate() {
        if pj.is_zero() {
            continue;
        }
        let u = lin(a, b, j);
        let v = lin(c, dd, d - j);
        for (i1, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i2, y) in v.iter().enumerate() {
                out[i1 + i2] += pj * x * y;
            }
        }
    }
    out
}

fn monomial(d: usize, j: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); d + 1];
    v[j] = BigInt::one();
    v
}

/// Heilbronn–Merel matrices of determinant p for level-one T_p.
pub fn merel_matrices(p: u64) -> Vec<Mat2> {
    let p = p as i64;
    let mut out = Vec::new();
    for a in 1..=p {
        for d in 1..=p {
            for b in 0..a {
                for c in 0..d {
                    if a * d - b * c == p {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// Weight-w modular symbols for SL2(Z) over Q.
#[derive(Debug)]
pub struct ModularSymbolSpace {
    pub w: u32,
    /// Reduction of each monomial to quotient coordinates.
    red: Matrix<Rational>,
    /// Monomials representing the quotient basis.
    free: Vec<usize>,
    /// Cuspidal subspace (rows in quotient coordinates).
    cusp: Matrix<Rational>,
    boundary: Vec<Rational>,
}

impl ModularSymbolSpace {
    pub fn dim(&self) -> usize {
        self.red.first().map_or(0, |r| r.len())
    }

    pub fn cuspidal_dim(&self) -> usize {
        self.cusp.len()
    }

    pub fn cuspidal_basis(&self) -> &Matrix<Rational> {
        &self.cusp
    }

    fn deg(&self) -> usize {
        self.w as usize - 2
    }

    /// Quotient coordinates of Σ_j v_j [X^j Y^{w−2−j}].
    pub fn reduce(&self, v: &[BigInt]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let xq = Rational::from(x.clone());
            for (o, r) in out.iter_mut().zip(&self.red[j]) {
                if !r.is_zero() {
                    *o += &xq * r;
                }
            }
        }
        out
    }

    pub fn reduce_rational(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.red[j]) {
                *o += x * r;
            }
        }
        out
    }

    /// Quotient coordinates of the monomial symbol [X^j Y^{w−2−j}].
    pub fn monomial_symbol(&self, j: usize) -> &[Rational] {
        &self.red[j]
    }

    /// Matrix of an operator Σ_g [P] ↦ [P|g] on quotient coordinates
    /// (row convention: row i is the image of basis element i).
    pub fn operator(&self, mats: &[Mat2]) -> Matrix<Rational> {
        let d = self.deg();
        self.free
            .iter()
            .map(|&j| {
                let e = monomial(d, j);
                let mut tot = vec![BigInt::zero(); d + 1];
                for g in mats {
                    for (t, x) in tot.iter_mut().zip(act(&e, g)) {
                        *t += x;
                    }
                }
                self.reduce(&tot)
            })
            .collect()
    }

    /// Boundary map δ([P]) = p_{w−2} − p_0 on quotient coordinates.
    pub fn boundary(&self) -> &[Rational] {
        &self.boundary
    }

    /// Restriction of a row-convention operator to the cuspidal subspace.
    pub fn restrict_to_cusp(&self, m: &Matrix<Rational>) -> Result<Matrix<Rational>> {
        let bt = crate::exactnum::linalg::transpose(&self.cusp);
        self.cusp
            .iter()
            .map(|c| {
                let img = crate::exactnum::linalg::vec_mat(c, m);
                solve(&bt, &img).ok_or_else(|| Error::inconsistent("cuspidal subspace not stable"))
            })
            .collect()
    }
}

pub fn build_space(w: u32) -> Result<Arc<ModularSymbolSpace>> {
    if w < 4 || w % 2 == 1 {
        return Err(Error::pre(format!("modular symbols need even weight >= 4, got {w}")));
    }
    let d = w as usize - 2;
    let mut rel: Matrix<Rational> = Vec::new();
    let to_q = |v: Vec<BigInt>| v.into_iter().map(Rational::from).collect::<Vec<_>>();
    for j in 0..=d {
        let e = monomial(d, j);
        let s = act(&e, &S);
        let r1 = act(&e, &RHO);
        let r2 = act(&r1, &RHO);
        rel.push(to_q(e.iter().zip(&s).map(|(a, b)| a + b).collect()));
        rel.push(to_q((0..=d).map(|i| &e[i] + &r1[i] + &r2[i]).collect()));
    }
    let piv = rref(&mut rel);
    let free: Vec<usize> = (0..=d).filter(|c| !piv.contains(c)).collect();
    let red: Matrix<Rational> = (0..=d)
        .map(|j| {
            if let Some(fi) = free.iter().position(|&f| f == j) {
                let mut v = vec![Rational::zero(); free.len()];
                v[fi] = Rational::one();
                v
            } else {
                let r = piv.iter().position(|&p| p == j).expect("pivot");
                free.iter().map(|&f| -rel[r][f].clone()).collect()
            }
        })
        .collect();
    let boundary: Vec<Rational> = free
        .iter()
        .map(|&f| match f {
            0 => -Rational::one(),
            f if f == d => Rational::one(),
            _ => Rational::zero(),
        })
        .collect();
    let cusp = kernel(&vec![boundary.clone()], free.len(), &Rational::zero());
    let space = ModularSymbolSpace { w, red, free, cusp, boundary };
    let expect = 2 * crate::forms1::dim_s(w);
    if space.dim() != expect + 1 || space.cuspidal_dim() != expect {
        return Err(Error::inconsistent(format!(
            "symbol space of weight {w} has dim {} (cuspidal {}), expected {} ({expect})",
            space.dim(),
            space.cuspidal_dim(),
            expect + 1
        )));
    }
    Ok(Arc::new(space))
}

/// T_p on the full symbol space (row convention).
pub fn hecke_on_symbols(space: &ModularSymbolSpace, p: u64) -> Result<Matrix<Rational>> {
    if !is_prime_u64(p) {
        return Err(Error::pre(format!("{p} is not prime")));
    }
    Ok(space.operator(&merel_matrices(p)))
}

/// F_∞: P(X, Y) ↦ P(−X, Y).
pub fn star_involution(space: &ModularSymbolSpace) -> Matrix<Rational> {
    space.operator(&[[-1, 0, 0, 1]])
}

/// Characteristic polynomial of T_p on the cuspidal subspace.
pub fn cuspidal_charpoly(space: &ModularSymbolSpace, p: u64) -> Result<QPoly> {
    let m = hecke_on_symbols(space, p)?;
    Ok(charpoly(&space.restrict_to_cusp(&m)?))
}

/// Sign of an F_∞-eigenspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    pub fn of_l(l: u32, d: i64) -> Parity {
        // χ(−1)(−1)^{l−1}
        let chi_m1 = if d < 0 { -1 } else { 1 };
        let s = chi_m1 * if l % 2 == 1 { 1 } else { -1 };
        if s > 0 {
            Parity::Plus
        } else {
            Parity::Minus
        }
    }

    fn sign(self) -> i64 {
        match self {
            Parity::Plus => 1,
            Parity::Minus => -1,
        }
    }

    fn index(self) -> usize {
        match self {
            Parity::Plus => 0,
            Parity::Minus => 1,
        }
    }
}

/// Hecke-equivariant functional ψ with ψ∘T_p = a_p ψ and ψ∘F_∞ = ±ψ,
/// given by its values on the quotient basis.
pub fn eigen_functional(space: &ModularSymbolSpace, f: &PrimitiveForm, parity: Parity) -> Result<Vec<NfElem>> {
    if f.w != space.w {
        return Err(Error::pre("form and symbol space have different weights"));
    }
    let k = f.field.clone();
    let n = space.dim();
    let lift = |m: &Matrix<Rational>, ev: &NfElem| -> Matrix<NfElem> {
        m.iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, x)| {
                        let v = NfElem::from_rational(&k, x.clone());
                        if i == j {
                            v.sub(ev)
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let mut rows = Vec::new();
    for p in [2u64, 3] {
        let t = hecke_on_symbols(space, p)?;
        rows.extend(lift(&t, f.coeff(p as usize)));
    }
    rows.extend(lift(&star_involution(space), &NfElem::from_int(&k, parity.sign())));
    let ker = kernel(&rows, n, &NfElem::from_int(&k, 0));
    if ker.len() != 1 {
        return Err(Error::inconsistent(format!("eigen-functional space has dimension {}", ker.len())));
    }
    Ok(ker.into_iter().next().expect("one vector"))
}

pub fn pair(psi: &[NfElem], v: &[Rational]) -> NfElem {
    let k = psi[0].field();
    psi.iter()
        .zip(v)
        .filter(|(_, x)| !x.is_zero())
        .fold(NfElem::from_int(k, 0), |acc, (p, x)| acc.add(&p.scale(x)))
}

/// Continued-fraction convergents p_k/q_k of a/m (k = 0..r).
fn convergents(a: i64, m: i64) -> Vec<(i64, i64)> {
    let (mut x, mut y) = (a, m);
    let mut out = Vec::new();
    let (mut p1, mut q1, mut p2, mut q2) = (1i64, 0i64, 0i64, 1i64);
    loop {
        let (qt, r) = (x.div_euclid(y), x.rem_euclid(y));
        let (p, q) = (qt * p1 + p2, qt * q1 + q2);
        out.push((p, q));
        p2 = p1;
        q2 = q1;
        p1 = p;
        q1 = q;
        if r == 0 {
            break;
        }
        x = y;
        y = r;
    }
    out
}

/// Quotient coordinates of P{a/m, ∞} via Manin's continued-fraction trick.
pub fn symbol_to_infinity(space: &ModularSymbolSpace, p: &[BigInt], a: i64, m: i64) -> Vec<Rational> {
    let conv = convergents(a, m);
    let mut tot = vec![BigInt::zero(); p.len()];
    let (mut pm, mut qm) = (1i64, 0i64);
    for (k, &(pk, qk)) in conv.iter().enumerate() {
        let s = if k % 2 == 0 { -1 } else { 1 }; // (−1)^{k−1}
        let g = [s * pk, pm, s * qk, qm];
        for (t, x) in tot.iter_mut().zip(act(p, &g)) {
            *t -= x;
        }
        pm = pk;
        qm = qk;
    }
    space.reduce(&tot)
}

/// Twisted winding element Σ_a χ_D(a) [(mX − aY)^{l−1} Y^{w−1−l}]{a/m, ∞}, m = |D|.
pub fn winding_element(space: &ModularSymbolSpace, l: u32, d: i64) -> Result<Vec<Rational>> {
    let w = space.w;
    if l < 1 || l > w - 1 {
        return Err(Error::pre(format!("l = {l} outside the critical strip 1..{}", w - 1)));
    }
    if !is_fundamental_discriminant(d) {
        return Err(Error::pre(format!("{d} is not a fundamental discriminant")));
    }
    let m = d.abs();
    let deg = w as usize - 2;
    let mut out = vec![Rational::zero(); space.dim()];
    for a in 0..m {
        let chi = kronecker(d, a);
        if chi == 0 && m > 1 {
            continue;
        }
        let chi = if m == 1 { 1 } else { chi };
        // (mX − aY)^{l−1} Y^{w−1−l}
        let e = (l - 1) as usize;
        let mut poly = vec![BigInt::zero(); deg + 1];
        for i in 0..=e {
            poly[i] = binomial(e as u64, i as u64) * BigInt::from(m).pow(i as u32) * BigInt::from(-a).pow((e - i) as u32);
        }
        let v = symbol_to_infinity(space, &poly, a, m);
        for (o, x) in out.iter_mut().zip(v) {
            *o += x * Rational::from(BigInt::from(chi));
        }
    }
    Ok(out)
}

/// ψ± together with the lattice that normalizes critical values at P.
#[derive(Clone, Debug)]
pub struct IntegralEigenclassPair {
    pub f: PrimitiveForm,
    pub prime: PrimeIdeal,
    pub space: Arc<ModularSymbolSpace>,
    psi: [Vec<NfElem>; 2],
    /// Generators of ψ±(integral cuspidal symbols).
    lattice: [Vec<NfElem>; 2],
    /// Generator of each lattice locally at P (stands for Ω±·η±).
    eta: [NfElem; 2],
}

/// Integral cuspidal symbols: [X^jY^{w−2−j}] for 0 < j < w−2 together with
/// [X^{w−2} + Y^{w−2}], the kernel of δ on integral coefficients.
fn integral_cusp_symbols(space: &ModularSymbolSpace) -> Vec<Vec<Rational>> {
    let d = space.w as usize - 2;
    let mut v: Vec<Vec<Rational>> = (1..d).map(|j| space.monomial_symbol(j).to_vec()).collect();
    let mut e = vec![BigInt::zero(); d + 1];
    e[0] = BigInt::one();
    e[d] = BigInt::one();
    v.push(space.reduce(&e));
    v
}

pub fn periods_eta(space: &Arc<ModularSymbolSpace>, f: &PrimitiveForm, p: &PrimeIdeal) -> Result<IntegralEigenclassPair> {
    if p.rational_prime() < 5 {
        return Err(Error::pre(format!("residue characteristic {} below 5", p.rational_prime())));
    }
    if p.field().minpoly() != f.field.minpoly() {
        return Err(Error::pre("prime ideal lives in a different field"));
    }
    let syms = integral_cusp_symbols(space);
    let mut psi = Vec::new();
    let mut lattice = Vec::new();
    let mut eta = Vec::new();
    for parity in [Parity::Plus, Parity::Minus] {
        let ps = eigen_functional(space, f, parity)?;
        let gens: Vec<NfElem> = syms.iter().map(|s| pair(&ps, s)).filter(|x| !x.is_zero()).collect();
        let best = gens
            .iter()
            .map(|g| Ok((p.ord(g)?, g)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .min_by_key(|(o, _)| *o)
            .map(|(_, g)| g.clone())
            .ok_or_else(|| Error::inconsistent("eigen-functional vanishes on cuspidal symbols"))?;
        psi.push(ps);
        lattice.push(gens);
        eta.push(best);
    }
    let [p0, p1]: [Vec<NfElem>; 2] = psi.try_into().expect("two");
    let [l0, l1]: [Vec<NfElem>; 2] = lattice.try_into().expect("two");
    let [e0, e1]: [NfElem; 2] = eta.try_into().expect("two");
    Ok(IntegralEigenclassPair { f: f.clone(), prime: p.clone(), space: space.clone(), psi: [p0, p1], lattice: [l0, l1], eta: [e0, e1] })
}

/// A normalized critical value: the element (exact up to a unit at P) and
/// the global ideal (value)·𝔞⁻¹, which is independent of all choices.
#[derive(Clone, Debug)]
pub struct CriticalValue {
    pub l: u32,
    pub d: i64,
    pub parity: Parity,
    pub value: NfElem,
    pub raw: NfElem,
    pub ideal_norm: Rational,
}

impl IntegralEigenclassPair {
    pub fn functional(&self, parity: Parity) -> &[NfElem] {
        &self.psi[parity.index()]
    }

    pub fn lattice(&self, parity: Parity) -> &[NfElem] {
        &self.lattice[parity.index()]
    }

    pub fn eta(&self, parity: Parity) -> &NfElem {
        &self.eta[parity.index()]
    }

    /// Rescales η± by P-units (for tests of choice independence).
    pub fn with_eta_scaled(&self, u: &NfElem) -> Result<Self> {
        if self.prime.ord(u)? != 0 {
            return Err(Error::pre("scaling factor is not a unit at P"));
        }
        let mut out = self.clone();
        for e in out.eta.iter_mut() {
            *e = e.mul(u);
        }
        Ok(out)
    }

    pub fn critical_value(&self, l: u32, d: i64) -> Result<CriticalValue> {
        let v = winding_element(&self.space, l, d)?;
        let parity = Parity::of_l(l, d);
        let m = Rational::from(BigInt::from(d.abs()).pow(l));
        let raw = pair(self.functional(parity), &v).scale(&m.recip());
        let value = raw.div(self.eta(parity))?;
        let k = &self.f.field;
        let ideal_norm = if raw.is_zero() {
            Rational::zero()
        } else {
            raw.norm().abs() / ideal_norm(k, self.lattice(parity))?
        };
        Ok(CriticalValue { l, d, parity, value, raw, ideal_norm })
    }

    /// ord_P of the normalized value.
    pub fn ord(&self, l: u32, d: i64) -> Result<Option<i64>> {
        let c = self.critical_value(l, d)?;
        if c.value.is_zero() {
            return Ok(None);
        }
        Ok(Some(self.prime.ord(&c.value)?))
    }
}

pub fn critical_lvalue(pair: &IntegralEigenclassPair, l: u32, d: i64) -> Result<NfElem> {
    Ok(pair.critical_value(l, d)?.value)
}

/// ord_P of the congruence number of f inside S_w(Z): the functional
/// projecting onto f, evaluated on the integral Miller basis.
pub fn adjoint_period_ord(f: &PrimitiveForm, p: &PrimeIdeal) -> Result<i64> {
    if p.rational_prime() < 5 {
        return Err(Error::pre(format!("residue characteristic {} below 5", p.rational_prime())));
    }
    let d = crate::forms1::dim_s(f.w);
    let basis = miller_basis(f.w, 2 * (d + 2))?;
    let m = hecke_matrix(&basis, f.splitting_prime)?;
    let k = f.field.clone();
    let ev = f.coeff(f.splitting_prime as usize).clone();
    let mk: Matrix<NfElem> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| {
                    let v = NfElem::from_rational(&k, x.clone());
                    if i == j {
                        v.sub(&ev)
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect();
    let ker = kernel(&mk, d, &NfElem::from_int(&k, 0));
    if ker.len() != 1 {
        return Err(Error::inconsistent("projection functional not unique"));
    }
    let u = &ker[0];
    let coords = basis.cusp_coords(&f.q);
    let norm = coords.iter().zip(u).fold(NfElem::from_int(&k, 0), |acc, (c, x)| acc.add(&c.mul(x)));
    let inv = norm.inv()?;
    let mut worst = 0i64;
    for x in u {
        if !x.is_zero() {
            worst = worst.min(p.ord(&x.mul(&inv))?);
        }
    }
    Ok(-worst)
}

/// Factorization of a nonzero rational as (prime, exponent) pairs.
pub fn rational_factorization(q: &Rational) -> Vec<(BigInt, i64)> {
    let mut out: std::collections::BTreeMap<BigInt, i64> = Default::default();
    for (p, e) in factorize(q.numer()) {
        *out.entry(BigInt::from(p)).or_default() += e as i64;
    }
    for (p, e) in factorize(q.denom()) {
        *out.entry(BigInt::from(p)).or_default() -= e as i64;
    }
    out.into_iter().filter(|(_, e)| *e != 0).collect()
}

/// Serializable table entry.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalValueEntry {
    pub l: u32,
    pub d: i64,
    pub parity: Parity,
    pub coordinates: Vec<String>,
    pub norm_factorization: String,
}

pub fn critical_value_table(pair: &IntegralEigenclassPair, ls: &[u32], d: i64) -> Result<Vec<CriticalValueEntry>> {
    let vals = crate::par::map(ls, |&l| pair.critical_value(l, d));
    vals.into_iter()
        .map(|c| {
            let c = c?;
            Ok(CriticalValueEntry {
                l: c.l,
                d: c.d,
                parity: c.parity,
                coordinates: c.value.to_strings(),
                norm_factorization: format_factorization(&c.ideal_norm),
            })
        })
        .collect()
}

pub fn format_factorization(q: &Rational) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let f = rational_factorization(q);
    if f.is_empty() {
        return "1".into();
    }
    f.iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join(" * ")
}

/// Exponent of p in a nonzero rational.
pub fn ord_rational(q: &Rational, p: u64) -> i64 {
    crate::exactnum::ideal::rational_ord(q, p)
}

#[cfg(test)]
mod tests;
