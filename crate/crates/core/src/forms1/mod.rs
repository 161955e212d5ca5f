//! Level-one elliptic modular forms: Eisenstein series, Δ, the Miller basis,
//! Hecke operators T_p and normalized eigenforms over their Hecke fields.

mod qexp;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

pub use qexp::{int_mul, int_pow, QExp};

use crate::error::{Error, Result};
use crate::exactnum::arith::{is_prime_u64, sigma};
use crate::exactnum::bernoulli::bernoulli;
use crate::exactnum::linalg::{charpoly, left_kernel, rref, Matrix, Scalar};
use crate::exactnum::zassenhaus::factor_over_q;
use crate::exactnum::{NfElem, NumberField, QPoly, Rational};

/// Default working precision: max(2·Sturm bound, 50).
pub fn default_prec(w: u32) -> usize {
    (2 * (w as usize / 12 + 1)).max(50)
}

pub fn dim_m(w: u32) -> usize {
    if w % 2 == 1 || w == 2 {
        return 0;
    }
    let d = w as usize / 12;
    if w % 12 == 2 {
        d
    } else {
        d + 1
    }
}

pub fn dim_s(w: u32) -> usize {
    dim_m(w).saturating_sub(1)
}

/// Integer q-expansion of E_w scaled so the constant term is 1.
pub fn eisenstein(w: u32, prec: usize) -> Result<QExp<Rational>> {
    if w < 4 || w % 2 == 1 {
        return Err(Error::pre(format!("Eisenstein series needs even weight >= 4, got {w}")));
    }
    let factor = -Rational::from(BigInt::from(2 * w)) / bernoulli(w)?;
    let mut c = vec![Rational::one(); prec.max(1)];
    for (n, x) in c.iter_mut().enumerate().skip(1) {
        *x = &factor * Rational::from(sigma(w - 1, n as u64));
    }
    c.truncate(prec);
    Ok(QExp::new(c))
}

fn eis_int(w: u32, prec: usize) -> Vec<BigInt> {
    eisenstein(w, prec).and_then(|e| e.to_ints().ok_or_else(|| Error::inconsistent("E4/E6 integral"))).expect("E4 and E6 are integral")
}

/// Δ = (E_4³ − E_6²)/1728.
pub fn delta(prec: usize) -> QExp<Rational> {
    let e4 = eis_int(4, prec);
    let e6 = eis_int(6, prec);
    let a = int_pow(&e4, 3, prec);
    let b = int_pow(&e6, 2, prec);
    let k = BigInt::from(1728);
    QExp::from_ints(&a.iter().zip(&b).map(|(x, y)| (x - y) / &k).collect::<Vec<_>>())
}

/// E_4^a E_6^b with 4a + 6b = w (w = 0 gives 1).
fn e46_product(w: u32, prec: usize) -> Vec<BigInt> {
    let (a, b) = match w % 4 {
        0 => (w / 4, 0),
        _ => ((w - 6) / 4, 1),
    };
    let mut out = int_pow(&eis_int(4, prec), a, prec);
    if b == 1 {
        out = int_mul(&out, &eis_int(6, prec), prec);
    }
    out
}

/// Echelonized integral bases of M_w and S_w: the i-th basis element is
/// q^i + O(q^{dim M_w}).
#[derive(Clone, Debug)]
pub struct MillerBasis {
    pub w: u32,
    pub prec: usize,
    pub modular: Vec<QExp<Rational>>,
}

impl MillerBasis {
    /// Cusp-form part: the elements with zero constant term.
    pub fn cusp(&self) -> &[QExp<Rational>] {
        if self.modular.is_empty() {
            &[]
        } else {
            &self.modular[1..]
        }
    }

    pub fn dim_s(&self) -> usize {
        self.cusp().len()
    }

    /// Coordinates of a cusp form in the cuspidal Miller basis.
    pub fn cusp_coords<T: Scalar>(&self, f: &QExp<T>) -> Vec<T> {
        (1..=self.dim_s()).map(|i| f.coeff(i).clone()).collect()
    }
}

pub fn miller_basis(w: u32, prec: usize) -> Result<MillerBasis> {
    if w % 2 == 1 {
        return Err(Error::pre(format!("odd weight {w} has no level-one forms")));
    }
    let d = dim_m(w);
    if prec < d {
        return Err(Error::pre(format!("precision {prec} below dim M_{w} = {d}")));
    }
    let dl = delta(prec).to_ints().expect("integral");
    let mut rows: Matrix<Rational> = (0..d)
        .map(|j| {
            let e = e46_product(w - 12 * j as u32, prec);
            let dj = int_pow(&dl, j as u32, prec);
            int_mul(&e, &dj, prec).into_iter().map(Rational::from).collect()
        })
        .collect();
    rref(&mut rows);
    let modular = rows.into_iter().map(QExp::new).collect::<Vec<_>>();
    for (i, f) in modular.iter().enumerate() {
        if !f.coeffs().iter().all(|x| x.is_integer()) || *f.coeff(i) != Rational::one() {
            return Err(Error::inconsistent(format!("Miller basis element {i} not integral/echelon")));
        }
    }
    Ok(MillerBasis { w, prec, modular })
}

/// Weight-w T_p: a(n) ↦ a(pn) + p^{w−1} a(n/p). Output precision ⌊N/p⌋.
pub fn hecke_tp<T: Scalar>(f: &QExp<T>, p: u64, w: u32) -> Result<QExp<T>> {
    if !is_prime_u64(p) {
        return Err(Error::pre(format!("{p} is not prime")));
    }
    let n_out = f.prec() / p as usize;
    if n_out == 0 {
        return Err(Error::pre(format!("precision {} too small for T_{p}", f.prec())));
    }
    let pw = Rational::from(BigInt::from(p).pow(w - 1));
    let p = p as usize;
    let c = (0..n_out)
        .map(|n| {
            let mut v = f.coeff(p * n).clone();
            if n % p == 0 {
                let s = f.coeff(n / p).rational_like(&pw);
                v = v.add_s(&f.coeff(n / p).mul_s(&s));
            }
            v
        })
        .collect();
    Ok(QExp::new(c))
}

/// Matrix of T_p on S_w in the cuspidal Miller basis, acting on row vectors:
/// T_p(b_i) = Σ_j M[i][j] b_j.
pub fn hecke_matrix(basis: &MillerBasis, p: u64) -> Result<Matrix<Rational>> {
    let d = basis.dim_s();
    if basis.prec / (p as usize) < d + 1 {
        return Err(Error::pre(format!("precision {} too small for the T_{p} matrix", basis.prec)));
    }
    basis
        .cusp()
        .iter()
        .map(|b| Ok(basis.cusp_coords(&hecke_tp(b, p, basis.w)?)))
        .collect()
}

/// A normalized Hecke eigenform with coefficients in its Hecke field.
#[derive(Clone, Debug)]
pub struct PrimitiveForm {
    pub w: u32,
    pub field: Arc<NumberField>,
    pub q: QExp<NfElem>,
    /// Prime whose Hecke operator generated the field presentation.
    pub splitting_prime: u64,
}

impl PrimitiveForm {
    pub fn coeff(&self, n: usize) -> &NfElem {
        self.q.coeff(n)
    }

    pub fn prec(&self) -> usize {
        self.q.prec()
    }

    pub fn minpoly(&self) -> QPoly {
        self.field.minpoly_q()
    }

    /// The form over Q when the Hecke field is Q.
    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> {
        self.q.coeffs().iter().map(|c| c.is_rational().then(|| c.rational_part().clone())).collect()
    }
}

/// Normalized eigenforms of S_w, one per Galois orbit, sorted by the
/// (degree, coefficients) of the Hecke-field polynomial.
pub fn eigenforms(w: u32, prec: usize) -> Result<Vec<PrimitiveForm>> {
    if w < 12 || w % 2 == 1 {
        return Err(Error::pre(format!("eigenforms need even weight >= 12, got {w}")));
    }
    let d = dim_s(w);
    let prec = prec.max(5 * (d + 1)).max(2);
    let basis = miller_basis(w, prec)?;
    if d == 0 {
        return Ok(vec![]);
    }
    let mut chosen = None;
    for p in [2u64, 3] {
        let m = hecke_matrix(&basis, p)?;
        let cp = charpoly(&m);
        if cp.is_squarefree() {
            chosen = Some((p, m, cp));
            break;
        }
    }
    let (p, m, cp) = chosen.ok_or_else(|| Error::inconsistent(format!("T_2 and T_3 have repeated eigenvalues in weight {w}")))?;
    let mut factors: Vec<QPoly> = factor_over_q(&cp).into_iter().map(|(f, _)| f.monic()).collect();
    factors.sort_by(|a, b| {
        (a.degree(), a.coeffs()).partial_cmp(&(b.degree(), b.coeffs())).unwrap_or(std::cmp::Ordering::Equal)
    });
    let forms = crate::par::map(&factors, |h| -> Result<PrimitiveForm> {
        let k = NumberField::from_qpoly(h)?;
        let t = NfElem::theta(&k);
        let mk: Matrix<NfElem> = m
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, x)| {
                        let v = NfElem::from_rational(&k, x.clone());
                        if i == j {
                            v.sub(&t)
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        let ker = left_kernel(&mk, &t);
        if ker.len() != 1 {
            return Err(Error::inconsistent(format!("eigenspace of dimension {} in weight {w}", ker.len())));
        }
        let v = &ker[0];
        let c0 = v[0].inv()?;
        let coeffs: Vec<NfElem> = v.iter().map(|x| x.mul(&c0)).collect();
        let mut q = QExp::zero(prec, &t);
        for (c, b) in coeffs.iter().zip(basis.cusp()) {
            q = q.add(&b.lift(&t).scale(c));
        }
        let f = PrimitiveForm { w, field: k, q, splitting_prime: p };
        verify_eigen(&f, &[3, 5])?;
        Ok(f)
    });
    forms.into_iter().collect()
}

fn verify_eigen(f: &PrimitiveForm, primes: &[u64]) -> Result<()> {
    for &p in primes {
        let tf = hecke_tp(&f.q, p, f.w)?;
        let ap = f.coeff(p as usize);
        for n in 0..tf.prec() {
            if *tf.coeff(n) != f.coeff(n).mul(ap) {
                return Err(Error::inconsistent(format!("T_{p} eigen-equation fails at n = {n}")));
            }
        }
    }
    if f.coeff(1) != &NfElem::from_int(&f.field, 1) || !f.coeff(0).is_zero() {
        return Err(Error::inconsistent("eigenform not normalized"));
    }
    Ok(())
}

/// Coefficients a(0..n) rebuilt from a(p) via multiplicativity and the
/// prime-power recursion; cross-checked against the known expansion.
pub fn extend_by_multiplicativity(f: &PrimitiveForm, n: usize) -> Result<Vec<NfElem>> {
    let k = &f.field;
    let mut a = vec![NfElem::from_int(k, 0); n];
    if n > 1 {
        a[1] = NfElem::from_int(k, 1);
    }
    let primes = crate::exactnum::arith::primes_up_to(n as u64);
    let known = f.prec();
    for &p in &primes {
        let pu = p as usize;
        if pu >= known {
            return Err(Error::pre(format!("a({p}) beyond known precision {known}")));
        }
        let pw = NfElem::from_bigint(k, &BigInt::from(p).pow(f.w - 1));
        let mut prev = NfElem::from_int(k, 1);
        let mut cur = f.coeff(pu).clone();
        let mut q = pu;
        while q < n {
            a[q] = cur.clone();
            let next = cur.mul(f.coeff(pu)).sub(&prev.mul(&pw));
            prev = cur;
            cur = next;
            q = match q.checked_mul(pu) {
                Some(v) => v,
                None => break,
            };
        }
    }
    for m in 2..n {
        let fac = crate::exactnum::arith::factorize_u64(m as u64);
        if fac.len() > 1 {
            let mut v = NfElem::from_int(k, 1);
            for (p, e) in fac {
                v = v.mul(&a[(p as usize).pow(e)]);
            }
            a[m] = v;
        }
    }
    if n > 0 && !a[0].is_zero() {
        a[0] = NfElem::from_int(k, 0);
    }
    for i in 0..n.min(known) {
        if a[i] != *f.coeff(i) {
            return Err(Error::inconsistent(format!("multiplicativity fails at n = {i}")));
        }
    }
    Ok(a)
}

/// Hecke polynomial of T_p on S_w from the q-expansion side.
pub fn hecke_charpoly(w: u32, p: u64) -> Result<QPoly> {
    let d = dim_s(w);
    let basis = miller_basis(w, (p as usize) * (d + 2))?;
    Ok(charpoly(&hecke_matrix(&basis, p)?))
}

/// Rational q-expansion of the integer-normalized eigenform when dim S_w = 1.
pub fn unique_cusp_form(w: u32, prec: usize) -> Result<QExp<Rational>> {
    let b = miller_basis(w, prec)?;
    match b.cusp() {
        [f] => Ok(f.clone()),
        _ => Err(Error::pre(format!("dim S_{w} != 1"))),
    }
}

#[cfg(test)]
mod tests;
