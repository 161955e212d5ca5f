//! Fourier coefficients of Duke–Imamoglu–Ikeda lifts, their Satake
//! parameters, the degree-two Hecke operator T(p) on coefficient tables and
//! the valuation bookkeeping for standard L-values.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

use crate::exactnum::arith::{divisors, factorize_u64};
use crate::exactnum::bernoulli::dirichlet_l_negative;
use crate::exactnum::arith::{kronecker, moebius, sigma};
use crate::exactnum::{NfElem, NumberField, QPoly, Rational};
use crate::forms1::PrimitiveForm;
use crate::halfint::PlusEigenform;
use crate::qforms::{disc_split, enumerate_pd, reduce2, HalfIntegralMatrix};
use crate::siegel::{siegel_series, siegel_series_validated};
use crate::{par, Error, Result};

pub mod beta;
pub mod valuation;

pub use beta::{eval_poly, BetaElement};
pub use valuation::{lambda_standard, period_ratio, FactorValuation, LValueContext, LambdaReport, PeriodRatioReport};


/// Lift data: degree n, weight k, and the plus-space eigenform g of weight
/// k − n/2 + 1/2 together with its Shimura image f of weight 2k − n.
#[derive(Clone, Debug)]
pub struct LiftSpec {
    pub n: usize,
    pub k: u32,
    pub g: PlusEigenform,
}

impl LiftSpec {
    pub fn new(n: usize, k: u32, g: PlusEigenform) -> Result<Self> {
        if n == 0 || n % 2 == 1 || k % 2 == 1 || (k as usize) <= n {
            return Err(Error::pre(format!("lifts need n, k even with k > n (n = {n}, k = {k})")));
        }
        if g.lambda as usize + n / 2 != k as usize {
            return Err(Error::pre(format!("g has λ = {} but k − n/2 = {}", g.lambda, k as usize - n / 2)));
        }
        Ok(LiftSpec { n, k, g })
    }

    pub fn w(&self) -> u32 {
        2 * self.k - self.n as u32
    }

    pub fn f(&self) -> &PrimitiveForm {
        &self.g.f
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.g.f.field
    }

    fn cfp(&self, p: u64) -> Result<&NfElem> {
        if p as usize >= self.f().prec() {
            return Err(Error::pre(format!("c_f({p}) beyond the precision of f")));
        }
        Ok(self.f().coeff(p as usize))
    }
}

/// (p^{k−n/2−1/2} β)^ν F_p(T, p^{−(n+1)/2} β⁻¹) in the β-algebra.
pub fn local_factor(cfp: &NfElem, p: u64, n: usize, k: u32, coeffs: &[BigInt], nu: u32) -> Result<BetaElement> {
    let w = 2 * k - n as u32;
    let beta = BetaElement::beta(cfp, p, w);
    let x = beta.sqrt_p_power(-(n as i64 + 1)).mul(&beta.inv()?);
    let pref = beta.sqrt_p_power(w as i64 - 1).mul(&beta).pow(nu as i64)?;
    Ok(pref.mul(&eval_poly(coeffs, &x)?))
}

/// c_{I_n(g)}(T) = c_g(|d_T|) Π_p (local factor at p).
pub fn lift_coefficient(spec: &LiftSpec, t: &HalfIntegralMatrix) -> Result<NfElem> {
    if t.n() != spec.n {
        return Err(Error::pre(format!("T has degree {}, lift has degree {}", t.n(), spec.n)));
    }
    if !t.is_positive_definite() {
        return Err(Error::pre("lift coefficients are indexed by positive definite T"));
    }
    let ds = disc_split(t)?;
    let mut c = spec.g.coeff(ds.d.unsigned_abs() as usize)?.clone();
    if c.is_zero() {
        return Ok(c);
    }
    for (p, _) in factorize_u64(ds.f as u64) {
        let poly = if spec.n == 2 { siegel_series_validated(t, p)? } else { siegel_series(t, p)? };
        let loc = local_factor(spec.cfp(p)?, p, spec.n, spec.k, &poly.coeffs, poly.nu)?;
        if !loc.beta_component().is_zero() {
            return Err(Error::inconsistent(format!("β-component survives at p = {p} for {t:?}")));
        }
        c = c.mul(&loc.to_field()?);
    }
    Ok(c)
}

/// Σ_{d | content(T)} d^{k−1} c_g(det(2T)/d²) for degree two.
pub fn maass_coefficient(g: &PlusEigenform, k: u32, t: &HalfIntegralMatrix) -> Result<NfElem> {
    if t.n() != 2 || !t.is_positive_definite() {
        return Err(Error::pre("Maass coefficients need positive definite binary T"));
    }
    let det = t.det2() as u64;
    let mut acc = NfElem::from_int(&g.f.field, 0);
    for d in divisors(t.content() as u64) {
        let c = g.coeff((det / (d * d)) as usize)?;
        acc = acc.add(&c.scale(&Rational::from_integer(BigInt::from(d).pow(k - 1))));
    }
    Ok(acc)
}

/// Satake parameters α_0, α_1, …, α_n of I_n(g) at p.
pub fn lift_satake(spec: &LiftSpec, p: u64) -> Result<Vec<BetaElement>> {
    let (n, k) = (spec.n as i64, spec.k as i64);
    let beta = BetaElement::beta(spec.cfp(p)?, p, spec.w());
    let mut out = Vec::with_capacity(spec.n + 1);
    // α_0² Π α_i = p^{nk − n(n+1)/2} and Π α_i = β^n
    out.push(beta.pow(-n / 2)?.mul(&beta.sqrt_p_power(n * k - n * (n + 1) / 2)));
    for i in 1..=n {
        out.push(beta.mul(&beta.sqrt_p_power(2 * i - (n + 1))));
    }
    Ok(out)
}

/// Coefficients (in X = p^{−s}) of (1 − X) Π_{i≥1} (1 − α_i X)(1 − α_i⁻¹ X).
pub fn satake_standard_polynomial(spec: &LiftSpec, p: u64) -> Result<Vec<NfElem>> {
    let alphas = lift_satake(spec, p)?;
    let one = alphas[0].scalar(&NfElem::from_int(spec.field(), 1));
    let mut poly = vec![one.clone(), one.neg()];
    for a in &alphas[1..] {
        for r in [a.clone(), a.inv()?] {
            let mut next = vec![one.scalar(&NfElem::from_int(spec.field(), 0)); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i] = next[i].add(c)?;
                next[i + 1] = next[i + 1].add(&c.mul(&r).neg())?;
            }
            poly = next;
        }
    }
    poly.iter().map(|c| c.to_field()).collect()
}

/// The p-factor of ζ(s) Π_{i=1}^n L(s + k − i, f) as a polynomial in p^{−s}.
pub fn standard_l_polynomial(spec: &LiftSpec, p: u64) -> Result<Vec<NfElem>> {
    let kf = spec.field();
    let cfp = spec.cfp(p)?;
    let pr = |e: i64| -> Rational {
        let x = Rational::from_integer(BigInt::from(p).pow(e.unsigned_abs() as u32));
        if e >= 0 {
            x
        } else {
            x.recip()
        }
    };
    let mut poly = vec![NfElem::from_int(kf, 1), NfElem::from_int(kf, -1)];
    for i in 1..=spec.n as i64 {
        let fac = [NfElem::from_int(kf, 1), cfp.scale(&pr(i - spec.k as i64)).neg(), NfElem::from_rational(kf, pr(2 * i - spec.n as i64 - 1))];
        let mut next = vec![NfElem::from_int(kf, 0); poly.len() + 2];
        for (a, c) in poly.iter().enumerate() {
            for (b, d) in fac.iter().enumerate() {
                next[a + b] = next[a + b].add(&c.mul(d));
            }
        }
        poly = next;
    }
    Ok(poly)
}

/// Eigenvalue of the generator r_1: p^{(n−1)k−n(n+1)/2} c_f(p) Σ_{i=1}^n p^i.
pub fn r1_eigenvalue(spec: &LiftSpec, p: u64) -> Result<NfElem> {
    let (n, k) = (spec.n as i64, spec.k as i64);
    let e = (n - 1) * k - n * (n + 1) / 2;
    let s: BigInt = (1..=spec.n as u32).map(|i| BigInt::from(p).pow(i)).sum();
    let pw = if e >= 0 { Rational::from_integer(BigInt::from(p).pow(e as u32)) } else { Rational::new(BigInt::one(), BigInt::from(p).pow((-e) as u32)) };
    Ok(spec.cfp(p)?.scale(&(pw * Rational::from_integer(s))))
}

/// T(p)-eigenvalue of a degree-two lift under the operator of
/// [`hecke_tp_siegel`]: c_f(p) + p^{k−1} + p^{k−2}.
pub fn tp_eigenvalue_degree2(cfp: &NfElem, p: u64, k: u32) -> NfElem {
    let s = BigInt::from(p).pow(k - 1) + BigInt::from(p).pow(k - 2);
    cfp.add(&NfElem::from_bigint(cfp.field(), &s))
}

/// h_{n,p}(X) = Π_{i=1}^n (1 + p^{−i} X), the elementary-symmetric expansion.
pub fn h_poly(n: usize, p: u64) -> QPoly {
    (1..=n as u32).fold(QPoly::one(), |acc, i| {
        acc.mul(&QPoly::new(vec![Rational::one(), Rational::new(BigInt::one(), BigInt::from(p).pow(i))]))
    })
}

/// Degree-two Fourier coefficients indexed by GL2(Z)-reduced T.
#[derive(Clone, Debug)]
pub struct SiegelFourierTable {
    pub k: u32,
    pub det_bound: i64,
    field: Arc<NumberField>,
    entries: BTreeMap<HalfIntegralMatrix, NfElem>,
}

impl SiegelFourierTable {
    /// Evaluates `coeff` on every class with det(2T) ≤ det_bound.
    pub fn build<F>(k: u32, det_bound: i64, field: &Arc<NumberField>, coeff: F) -> Result<Self>
    where
        F: Fn(&HalfIntegralMatrix) -> Result<NfElem> + Sync + Send,
    {
        let keys = enumerate_pd(2, det_bound)?;
        let vals = par::map(&keys, |t| coeff(t));
        let mut entries = BTreeMap::new();
        for (t, v) in keys.into_iter().zip(vals) {
            entries.insert(t, v?);
        }
        Ok(SiegelFourierTable { k, det_bound, field: field.clone(), entries })
    }

    pub fn get(&self, t: &HalfIntegralMatrix) -> Option<&NfElem> {
        self.entries.get(&reduce2(t))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HalfIntegralMatrix, &NfElem)> {
        self.entries.iter()
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(|v| v.is_zero())
    }

    /// λ with self = λ·other on the common index set, if it exists.
    pub fn scalar_multiple_of(&self, other: &SiegelFourierTable) -> Option<NfElem> {
        let mut lam: Option<NfElem> = None;
        for (t, v) in &self.entries {
            let o = other.entries.get(t)?;
            if o.is_zero() {
                if !v.is_zero() {
                    return None;
                }
                continue;
            }
            let r = v.div(o).ok()?;
            match &lam {
                None => lam = Some(r),
                Some(l) if *l == r => {}
                Some(_) => return None,
            }
        }
        lam.or_else(|| Some(NfElem::from_int(&self.field, 0)))
    }

    pub fn restrict(&self, det_bound: i64) -> SiegelFourierTable {
        let entries = self.entries.iter().filter(|(t, _)| t.det2() <= det_bound).map(|(t, v)| (t.clone(), v.clone())).collect();
        SiegelFourierTable { k: self.k, det_bound, field: self.field.clone(), entries }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema": "liftcong.siegel_table/1",
            "degree": 2,
            "weight": self.k,
            "det_bound": self.det_bound,
            "field_minpoly": self.field.minpoly().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "entries": self.entries.iter().map(|(t, v)| json!({"two_t": t.two_t(), "coeff": v.to_strings()})).collect::<Vec<_>>(),
        })
    }

    /// One line per class: the entries of 2T then the coefficient coordinates.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("t11x2\tt12x2\tt22x2\tdet2\tcoeff\n");
        for (t, v) in &self.entries {
            let m = t.two_t();
            s.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", m[0][0], m[0][1], m[1][1], t.det2(), v.to_strings().join(",")));
        }
        s
    }
}

/// (1/p)·M when M is divisible by p with even diagonal afterwards.
fn divide_even(m: &[Vec<i64>], p: i64) -> Option<HalfIntegralMatrix> {
    let mut out = vec![vec![0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            if m[i][j] % p != 0 {
                return None;
            }
            out[i][j] = m[i][j] / p;
        }
    }
    if out[0][0] % 2 != 0 || out[1][1] % 2 != 0 {
        return None;
    }
    HalfIntegralMatrix::from_2t(out).ok()
}

/// Representatives of GL2(Z) \ {D : det D = p} in row Hermite form.
fn det_p_cosets(p: i64) -> Vec<[[i64; 2]; 2]> {
    let mut v: Vec<[[i64; 2]; 2]> = (0..p).map(|b| [[1, b], [0, p]]).collect();
    v.push([[p, 0], [0, 1]]);
    v
}

/// Coefficients of F|T(p) for degree two:
/// c(pT) + p^{k−2} Σ_D c(p⁻¹ D T Dᵗ) + p^{2k−3} c(T/p).
pub fn hecke_tp_siegel(table: &SiegelFourierTable, p: u64) -> Result<SiegelFourierTable> {
    let pi = p as i64;
    let target = table.det_bound / (pi * pi);
    let k = table.k;
    let mid = Rational::from_integer(BigInt::from(p).pow(k - 2));
    let low = Rational::from_integer(BigInt::from(p).pow(2 * k - 3));
    let keys = enumerate_pd(2, target)?;
    let mut missing = Vec::new();
    let mut entries = BTreeMap::new();
    let look = |t: &HalfIntegralMatrix, missing: &mut Vec<HalfIntegralMatrix>| -> NfElem {
        match table.get(t) {
            Some(v) => v.clone(),
            None => {
                missing.push(reduce2(t));
                NfElem::from_int(&table.field, 0)
            }
        }
    };
    for t in keys {
        let m = t.two_t();
        let mut acc = look(&t.scale(pi), &mut missing);
        for d in det_p_cosets(pi) {
            // D (2T) Dᵗ
            let dm: Vec<Vec<i64>> = (0..2)
                .map(|i| (0..2).map(|j| (0..2).map(|a| (0..2).map(|b| d[i][a] * m[a][b] * d[j][b]).sum::<i64>()).sum()).collect())
                .collect();
            if let Some(s) = divide_even(&dm, pi) {
                acc = acc.add(&look(&s, &mut missing).scale(&mid));
            }
        }
        if let Some(s) = divide_even(m, pi) {
            acc = acc.add(&look(&s, &mut missing).scale(&low));
        }
        entries.insert(t, acc);
    }
    if !missing.is_empty() {
        missing.sort();
        missing.dedup();
        let list: Vec<String> = missing.iter().map(|t| format!("{t}")).collect();
        return Err(Error::pre(format!("table incomplete for T({p}); missing {}", list.join(", "))));
    }
    Ok(SiegelFourierTable { k, det_bound: target, field: table.field.clone(), entries })
}

/// Truncated coefficient table of I_2(g).
pub fn lift_table(spec: &LiftSpec, det_bound: i64) -> Result<SiegelFourierTable> {
    if spec.n != 2 {
        return Err(Error::pre("coefficient tables are implemented for degree two"));
    }
    SiegelFourierTable::build(spec.k, det_bound, spec.field(), |t| lift_coefficient(spec, t))
}

/// Same index set filled from the Maass relation.
pub fn maass_table(g: &PlusEigenform, k: u32, det_bound: i64) -> Result<SiegelFourierTable> {
    SiegelFourierTable::build(k, det_bound, &g.f.field, |t| maass_coefficient(g, k, t))
}

/// Degree-two Siegel–Eisenstein coefficients up to a global constant:
/// 𝔣^{2k−3} L(2−k, χ_d) Π_{p | 𝔣} F_p(T, p^{−k}).
pub fn eisenstein_coefficient(k: u32, t: &HalfIntegralMatrix) -> Result<Rational> {
    if t.n() != 2 {
        return Err(Error::pre("degree-two Eisenstein coefficients need binary T"));
    }
    let ds = disc_split(t)?;
    let mut c = dirichlet_l_negative(k - 1, ds.d) * Rational::from_integer(BigInt::from(ds.f).pow(2 * k - 3));
    for (p, _) in factorize_u64(ds.f as u64) {
        let poly = siegel_series(t, p)?;
        c *= poly.eval(&Rational::new(BigInt::one(), BigInt::from(p).pow(k)));
    }
    Ok(c)
}

pub fn eisenstein_table(k: u32, det_bound: i64) -> Result<SiegelFourierTable> {
    let q = NumberField::from_ints(&[0, 1])?;
    SiegelFourierTable::build(k, det_bound, &q, |t| Ok(NfElem::from_rational(&q, eisenstein_coefficient(k, t)?)))
}

/// Cohen's H(r, N) for N ≡ 0, 3 mod 4: L(1−r, χ_d) Σ_{e | f} μ(e) χ_d(e) e^{r−1} σ_{2r−1}(f/e).
pub fn cohen_h(r: u32, big_n: i64) -> Result<Rational> {
    let (d, f) = crate::exactnum::arith::fundamental_decomposition(&BigInt::from(-big_n))
        .ok_or_else(|| Error::pre(format!("{big_n} is not a discriminant up to sign")))?;
    let d: i64 = d.try_into().map_err(|_| Error::pre("discriminant too large"))?;
    let f: u64 = f.try_into().map_err(|_| Error::pre("conductor too large"))?;
    let mut s = BigInt::zero();
    for e in divisors(f) {
        let mu = moebius(e);
        if mu == 0 {
            continue;
        }
        s += BigInt::from(mu * kronecker(d, e as i64)) * BigInt::from(e).pow(r - 1) * sigma(2 * r - 1, f / e);
    }
    Ok(dirichlet_l_negative(r, d) * Rational::from_integer(s))
}
