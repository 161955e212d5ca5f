//! Half-integral weight forms on Γ0(4): the θ/F structure theorem, the Kohnen
//! plus space, Hecke operators T(p²) and matching with level-one eigenforms.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::arith::{is_fundamental_discriminant, is_prime_u64, kronecker, sigma};
use crate::exactnum::linalg::{charpoly, kernel, rref, Matrix, Scalar};
use crate::exactnum::{NfElem, QPoly, Rational};
use crate::forms1::{dim_m, dim_s, eigenforms, int_mul, int_pow, PrimitiveForm, QExp};

/// θ = 1 + 2Σ q^{n²}.
pub fn theta(prec: usize) -> QExp<Rational> {
    QExp::from_ints(&theta_int(prec))
}

fn theta_int(prec: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); prec];
    for n in 0.. {
        let s = n * n;
        if s >= prec {
            break;
        }
        c[s] = BigInt::from(if n == 0 { 1 } else { 2 });
    }
    c
}

/// F = Σ_{m odd} σ_1(m) q^m, weight 2 on Γ0(4).
pub fn f2_generator(prec: usize) -> QExp<Rational> {
    QExp::from_ints(&f2_int(prec))
}

fn f2_int(prec: usize) -> Vec<BigInt> {
    (0..prec).map(|m| if m % 2 == 1 { sigma(1, m as u64) } else { BigInt::zero() }).collect()
}

/// Monomials θ^{2λ+1−4j} F^j, 0 ≤ j ≤ ⌊λ/2⌋, spanning M_{λ+1/2}(Γ0(4)).
pub fn basis_halfint(lambda: u32, prec: usize) -> Result<Vec<QExp<Rational>>> {
    if lambda < 2 {
        return Err(Error::pre(format!("λ = {lambda} below 2")));
    }
    let top = lambda as usize / 2;
    if prec < top + 2 {
        return Err(Error::pre(format!("precision {prec} below {}", top + 2)));
    }
    let th = theta_int(prec);
    let f = f2_int(prec);
    let out = crate::par::map_range(top + 1, |j| {
        let a = int_pow(&th, 2 * lambda + 1 - 4 * j as u32, prec);
        let b = int_pow(&f, j as u32, prec);
        QExp::from_ints(&int_mul(&a, &b, prec))
    });
    Ok(out)
}

/// Whether c(e) may be nonzero in the plus space of weight λ+1/2.
pub fn plus_allowed(lambda: u32, e: usize) -> bool {
    let s = if lambda.is_multiple_of(2) { e as i64 } else { -(e as i64) };
    matches!(s.rem_euclid(4), 0 | 1)
}

/// Echelonized bases of M⁺_{λ+1/2} and S⁺_{λ+1/2}.
#[derive(Clone, Debug)]
pub struct PlusSpace {
    pub lambda: u32,
    pub prec: usize,
    pub modular: Vec<QExp<Rational>>,
    pub cusp: Vec<QExp<Rational>>,
    /// Pivot index of each cusp basis element.
    pub pivots: Vec<usize>,
}

impl PlusSpace {
    /// Coordinates of a form lying in S⁺ (read off at the pivots).
    pub fn coords<T: Scalar>(&self, g: &QExp<T>) -> Vec<T> {
        self.pivots.iter().map(|&i| g.coeff(i).clone()).collect()
    }
}

pub fn plus_space(lambda: u32, prec: usize) -> Result<PlusSpace> {
    let prec = prec.max(4 * (lambda as usize + 2));
    let basis = basis_halfint(lambda, prec)?;
    let nb = basis.len();
    let rows: Matrix<Rational> = (0..prec)
        .filter(|&e| !plus_allowed(lambda, e))
        .map(|e| basis.iter().map(|b| b.coeff(e).clone()).collect())
        .collect();
    let ker = kernel(&rows, nb, &Rational::zero());
    let mut forms: Matrix<Rational> = ker
        .iter()
        .map(|v| {
            let mut acc = QExp::zero(prec, &Rational::zero());
            for (x, b) in v.iter().zip(&basis) {
                if !x.is_zero() {
                    acc = acc.add(&b.scale(x));
                }
            }
            acc.coeffs().to_vec()
        })
        .collect();
    let piv = rref(&mut forms);
    forms.truncate(piv.len());
    let modular: Vec<QExp<Rational>> = forms.into_iter().map(QExp::new).collect();
    let (cusp, pivots): (Vec<_>, Vec<_>) =
        modular.iter().zip(&piv).filter(|(_, &p)| p > 0).map(|(f, &p)| (f.clone(), p)).unzip();
    let w = 2 * lambda;
    if modular.len() != dim_m(w) || cusp.len() != dim_s(w) {
        return Err(Error::inconsistent(format!(
            "plus space of weight {lambda}+1/2 has dims ({}, {}), level one has ({}, {}); raise precision",
            modular.len(),
            cusp.len(),
            dim_m(w),
            dim_s(w)
        )));
    }
    Ok(PlusSpace { lambda, prec, modular, cusp, pivots })
}

/// T(p²) for odd p: c(n) ↦ c(p²n) + ((−1)^λ n | p) p^{λ−1} c(n) + p^{2λ−1} c(n/p²).
pub fn hecke_tp2<T: Scalar>(g: &QExp<T>, p: u64, lambda: u32) -> Result<QExp<T>> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::pre(format!("T(p^2) needs an odd prime, got {p}")));
    }
    let p2 = (p * p) as usize;
    let n_out = g.prec() / p2;
    if n_out == 0 {
        return Err(Error::pre(format!("precision {} too small for T({p}^2)", g.prec())));
    }
    let sign = if lambda.is_multiple_of(2) { 1i64 } else { -1 };
    let pl = Rational::from(BigInt::from(p).pow(lambda - 1));
    let p2l = Rational::from(BigInt::from(p).pow(2 * lambda - 1));
    let c = (0..n_out)
        .map(|n| {
            let mut v = g.coeff(p2 * n).clone();
            let chi = kronecker(sign * n as i64, p as i64);
            if chi != 0 {
                let s = g.coeff(n).rational_like(&(&pl * Rational::from(BigInt::from(chi))));
                v = v.add_s(&g.coeff(n).mul_s(&s));
            }
            if n % p2 == 0 {
                v = v.add_s(&g.coeff(n / p2).mul_s(&g.coeff(0).rational_like(&p2l)));
            }
            v
        })
        .collect();
    Ok(QExp::new(c))
}

/// Matrix of T(p²) on S⁺ in the echelon basis (row convention).
pub fn hecke_matrix_tp2(space: &PlusSpace, p: u64) -> Result<Matrix<Rational>> {
    let need = (p * p) as usize * (space.pivots.iter().max().copied().unwrap_or(0) + 1);
    if space.prec < need {
        return Err(Error::pre(format!("plus space precision {} below {need} for T({p}^2)", space.prec)));
    }
    space.cusp.iter().map(|g| Ok(space.coords(&hecke_tp2(g, p, space.lambda)?))).collect()
}

/// Precision of the plus space that supports T(p²) matrices for p ≤ pmax.
pub fn prec_for_hecke(lambda: u32, pmax: u64) -> usize {
    // pivots lie below 4·(dim + 1) in practice; checked again by hecke_matrix_tp2
    let d = dim_s(2 * lambda) + 1;
    (pmax * pmax) as usize * (4 * d + 2)
}

/// A plus-space eigenform paired with its Shimura image.
#[derive(Clone, Debug)]
pub struct PlusEigenform {
    pub lambda: u32,
    pub g: QExp<NfElem>,
    pub f: PrimitiveForm,
    /// Index e with c_g(e) = 1 (the normalization point).
    pub normalized_at: usize,
}

impl PlusEigenform {
    pub fn coeff(&self, e: usize) -> Result<&NfElem> {
        if e >= self.g.prec() {
            return Err(Error::pre(format!("c_g({e}) beyond precision {}", self.g.prec())));
        }
        Ok(self.g.coeff(e))
    }

    /// Generators of the coefficient ideal 𝔍_g (up to the known precision).
    pub fn coefficient_ideal_gens(&self) -> Vec<NfElem> {
        self.g.coeffs().iter().filter(|c| !c.is_zero()).cloned().collect()
    }

    /// T(p²)-eigenvalue read from the q-expansion.
    pub fn eigenvalue(&self, p: u64) -> Result<NfElem> {
        let t = hecke_tp2(&self.g, p, self.lambda)?;
        let e = self.normalized_at;
        if e >= t.prec() {
            return Err(Error::pre(format!("precision too small for T({p}^2)")));
        }
        let lam = t.coeff(e).clone();
        for n in 0..t.prec() {
            if *t.coeff(n) != self.g.coeff(n).mul(&lam) {
                return Err(Error::inconsistent(format!("g is not a T({p}^2)-eigenform at n = {n}")));
            }
        }
        Ok(lam)
    }
}

/// Hecke-eigen basis of S⁺_{λ+1/2} matched with the weight-2λ primitive forms.
pub fn shimura_match(lambda: u32, prec: usize) -> Result<Vec<PlusEigenform>> {
    let space = plus_space(lambda, prec.max(prec_for_hecke(lambda, 7)))?;
    let fs = eigenforms(2 * lambda, 60)?;
    let mats: Vec<(u64, Matrix<Rational>)> =
        [3u64, 5, 7].iter().map(|&p| Ok((p, hecke_matrix_tp2(&space, p)?))).collect::<Result<_>>()?;
    let sign: i64 = if lambda.is_multiple_of(2) { 1 } else { -1 };
    let mut out = Vec::new();
    for f in fs {
        let k = f.field.clone();
        let zero = NfElem::from_int(&k, 0);
        // joint eigenspace, adding operators until it is a line
        let mut constraints: Matrix<NfElem> = Vec::new();
        let mut line = None;
        for (p, m) in &mats {
            let ap = f.coeff(*p as usize).clone();
            let n = m.len();
            // left eigenvector v: v·M = a_p v, i.e. (M − a_p)^T v = 0
            for j in 0..n {
                constraints.push(
                    (0..n)
                        .map(|i| {
                            let v = NfElem::from_rational(&k, m[i][j].clone());
                            if i == j {
                                v.sub(&ap)
                            } else {
                                v
                            }
                        })
                        .collect(),
                );
            }
            let ker = kernel(&constraints, n, &zero);
            match ker.len() {
                0 => return Err(Error::inconsistent(format!("no plus form matches the eigensystem at p = {p}"))),
                1 => {
                    line = Some(ker[0].clone());
                    break;
                }
                _ => continue,
            }
        }
        let v = line.ok_or_else(|| Error::MatchAmbiguous(format!("λ = {lambda}: T(9), T(25), T(49) leave a multi-dimensional eigenspace")))?;
        let mut g = QExp::zero(space.prec, &zero);
        for (c, b) in v.iter().zip(&space.cusp) {
            g = g.add(&b.lift(&zero).scale(c));
        }
        let e0 = (1..g.prec())
            .find(|&e| is_fundamental_discriminant(sign * e as i64) && !g.coeff(e).is_zero())
            .ok_or_else(|| Error::inconsistent("no fundamental coefficient within precision"))?;
        let s = g.coeff(e0).inv()?;
        let g = g.scale(&s);
        let pe = PlusEigenform { lambda, g, f, normalized_at: e0 };
        for p in [3u64, 5, 7] {
            if pe.eigenvalue(p)? != *pe.f.coeff(p as usize) {
                return Err(Error::inconsistent(format!("T({p}^2) eigenvalue differs from c_f({p})")));
            }
        }
        out.push(pe);
    }
    Ok(out)
}

/// Characteristic polynomial of T(p²) on S⁺.
pub fn tp2_charpoly(lambda: u32, p: u64) -> Result<QPoly> {
    let space = plus_space(lambda, prec_for_hecke(lambda, p))?;
    Ok(charpoly(&hecke_matrix_tp2(&space, p)?))
}

#[cfg(test)]
mod tests;
