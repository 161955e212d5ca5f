//! Petersson norms and adjoint L-values by Rankin–Selberg unfolding against
//! the real-analytic Eisenstein series, integrated over the fundamental
//! domain: a closed form on y ≥ 1 plus Gauss–Legendre quadrature on the
//! sliver between the unit circle and y = 1.

use num_bigint::BigInt;
use rug::Float;
use serde::Serialize;

use super::ball::{BigReal, CBall};
use super::embed::reconstruct;
use super::hecke::{bound_from_log2, embedded_coeffs};
use super::special::{factorial_ball, gamma_c, gauss_legendre, j_integral, xi, zeta};
use crate::exactnum::arith::{factorial, sigma};
use crate::exactnum::{NfElem, Rational};
use crate::forms1::PrimitiveForm;
use crate::{par, Error, Result};

/// Default working precision for adjoint values.
pub const DEFAULT_BITS: u32 = 256;

const LN2: f64 = std::f64::consts::LN_2;
const TWO_PI: f64 = 2.0 * std::f64::consts::PI;
const Y_MIN: f64 = 0.866_025_403_784_438_6;

/// Data of E(z, m) = y^m + φ y^{1−m} + (2/ξ(2m)) Σ_{j≥1} c_j P(2πjy) e^{−2πjy} cos 2πjx,
/// where c_j = σ_{2m−1}(j)/j^m and P(u) = Σ_k kc_k u^{−k}.
struct EisensteinData {
    m: u32,
    phi: BigReal,
    scale: BigReal,
    coef: Vec<BigReal>,
    kc: Vec<BigReal>,
    kc_sum: f64,
}

impl EisensteinData {
    fn new(m: u32, terms: usize, prec: u32) -> EisensteinData {
        let phi = xi(2 * m - 1, prec).div(&xi(2 * m, prec));
        let scale = xi(2 * m, prec).recip().mul_i64(2);
        let coef = (0..terms)
            .map(|j| {
                if j == 0 {
                    return BigReal::zero(prec);
                }
                let s = sigma(2 * m - 1, j as u64);
                BigReal::from_bigint(&s, prec).div(&BigReal::from_bigint(&BigInt::from(j).pow(m), prec))
            })
            .collect();
        let nu = (m - 1) as u64;
        let kcq: Vec<Rational> = (0..=nu)
            .map(|k| {
                let num = factorial(nu + k);
                let den = factorial(k) * factorial(nu - k) * (BigInt::from(1) << k);
                Rational::new(num, den)
            })
            .collect();
        let kc_sum = kcq.iter().map(|q| q.numer().to_string().parse::<f64>().unwrap() / q.denom().to_string().parse::<f64>().unwrap()).sum();
        let kc = kcq.iter().map(|q| BigReal::from_rational(q, prec)).collect();
        EisensteinData { m, phi, scale, coef, kc, kc_sum }
    }

    /// P(u) from 1/u.
    fn poly(&self, inv_u: &BigReal) -> BigReal {
        let mut acc = BigReal::zero(inv_u.prec());
        for c in self.kc.iter().rev() {
            acc = acc.mul(inv_u).add(c);
        }
        acc
    }

    /// Value at x + iy given Re(q^j), j < terms, and 1/(2πy), 1/j.
    fn eval(&self, y: &BigReal, re_q: &[BigReal], inv_2piy: &BigReal, inv_j: &[BigReal]) -> BigReal {
        let prec = y.prec();
        let m = self.m;
        let mut s = BigReal::zero(prec);
        for j in 1..re_q.len() {
            let p = self.poly(&inv_2piy.mul(&inv_j[j]));
            s = s.add(&self.coef[j].mul(&p).mul(&re_q[j]));
        }
        // tail: c_j ≤ ζ(2m−1) j^{m−1} ≤ 2 j^{m−1}, |Re q^j| ≤ e^{−2πj y_min}
        let j0 = re_q.len() as f64;
        let lt = (2.0 * self.kc_sum).ln() + (m as f64 - 1.0) * j0.ln() - TWO_PI * j0 * Y_MIN + 1.0;
        let s = s.mul(&self.scale).add_error(&bound_from_log2((lt + self.scale.to_f64().abs().ln()) / LN2));
        y.pow_u(m).add(&self.phi.mul(&y.pow_u(m - 1).recip())).add(&s)
    }
}

/// Terms needed for the sliver q-series at precision `prec`.
fn sliver_terms(w: u32, m_max: u32, prec: u32) -> usize {
    let target = -((prec + 48) as f64) * LN2;
    (8..)
        .find(|&n| {
            let x = n as f64;
            2f64.ln() + (w.max(2 * m_max) as f64 / 2.0 + 2.0) * x.ln() - TWO_PI * Y_MIN * x < target
        })
        .expect("terminates")
}

fn ln_rect_term(n: f64, w: u32, m: u32, ext: f64) -> f64 {
    // 8 n^w e^{−4πn}/(4πn) · ext · n^m
    8f64.ln() + (w + m) as f64 * n.ln() - 2.0 * TWO_PI * n - (2.0 * TWO_PI * n).ln() + ext.ln()
}

fn rect_terms(w: u32, m_max: u32, prec: u32) -> usize {
    let target = -((prec + 32) as f64) * LN2;
    let start = ((w + m_max) as f64 / TWO_PI).ceil() as usize + 2;
    (start..).find(|&n| ln_rect_term(n as f64, w, m_max, 1.0e6) + (n as f64).ln() < target).expect("terminates")
}

/// Number of coefficients a_n the computation at `prec` bits will read.
pub fn coefficients_needed(w: u32, m_max: u32, prec: u32) -> usize {
    sliver_terms(w, m_max, prec).max(rect_terms(w, m_max, prec)) + 1
}

/// The Rankin–Selberg integrals I(m) = ∫_F |f|² y^w E(z,m) dμ (with m = 0
/// standing for E = 1, i.e. the Petersson norm) for one embedding.
struct Integrals {
    pet: BigReal,
    adj: Vec<BigReal>,
}

fn rectangle(a: &[BigReal], w: u32, eis: &[EisensteinData], nr: usize, prec: u32) -> Integrals {
    let four_pi = BigReal::pi(prec).mul_i64(4);
    let two_pi = BigReal::pi(prec).mul_i64(2);
    // J(b, 4πn) for the exponents in use
    let j_at = |b: u32, n: usize| j_integral(b, &four_pi.mul_i64(n as i64));
    let mut pet = BigReal::zero(prec);
    for n in 1..=nr {
        pet = pet.add(&a[n].sqr().mul(&j_at(w - 2, n)));
    }
    let pet_tail = bound_from_log2(
        ((nr + 1..nr + 400).map(|n| ln_rect_term(n as f64, w, 0, 1.0)).fold(f64::NEG_INFINITY, log_add)) / LN2,
    );
    let pet = pet.add_error(&pet_tail);
    let adj = eis
        .iter()
        .map(|e| {
            let m = e.m;
            let mut s = BigReal::zero(prec);
            for n in 1..=nr {
                let diag = j_at(w - 2 + m, n).add(&e.phi.mul(&j_at(w - 1 - m, n)));
                s = s.add(&a[n].sqr().mul(&diag));
            }
            // off-diagonal: Σ_{n<n'} 2 a_n a_{n'} (1/ξ(2m)) c_j Σ_k kc_k (2πj)^{−k} J(w−2−k, 4πn')
            let jtab: Vec<Vec<BigReal>> = (0..=nr)
                .map(|n| if n == 0 { vec![] } else { (0..m).map(|k| j_at(w - 2 - k, n)).collect() })
                .collect();
            let mut off = BigReal::zero(prec);
            for n2 in 2..=nr {
                for n1 in 1..n2 {
                    let j = n2 - n1;
                    let inv = two_pi.mul_i64(j as i64).recip();
                    let mut pk = BigReal::one(prec);
                    let mut inner = BigReal::zero(prec);
                    for k in 0..m as usize {
                        inner = inner.add(&e.kc[k].mul(&pk).mul(&jtab[n2][k]));
                        pk = pk.mul(&inv);
                    }
                    off = off.add(&a[n1].mul(&a[n2]).mul(&e.coef[j]).mul(&inner));
                }
            }
            let s = s.add(&off.mul(&e.scale));
            let ext = 2.0 + e.phi.to_f64().abs() + e.scale.to_f64().abs() * 4.0 * e.kc_sum;
            let tail = (nr + 1..nr + 400).map(|n| ln_rect_term(n as f64, w, m, ext)).fold(f64::NEG_INFINITY, log_add);
            s.add_error(&bound_from_log2(tail / LN2))
        })
        .collect();
    Integrals { pet, adj }
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (1.0 + (lo - hi).exp()).ln()
}

/// Twice the sliver integral, for all embeddings at once, with an n-point
/// rule in each direction.
fn sliver(coeffs: &[Vec<BigReal>], w: u32, eis: &[EisensteinData], ns: usize, nodes: usize, prec: u32) -> Vec<Integrals> {
    let gl = gauss_legendre(nodes, prec);
    let ne = coeffs.len();
    let two_pi = BigReal::pi(prec).mul_i64(2);
    let inv_j: Vec<BigReal> = (0..ns).map(|j| if j == 0 { BigReal::zero(prec) } else { BigReal::from_i64(j as i64, prec).recip() }).collect();
    let quarter = BigReal::exact(Float::with_val(prec, 0.25));
    let half = BigReal::exact(Float::with_val(prec, 0.5));
    // tail of Σ a_n q^n beyond ns at y ≥ y_min
    let ftail = {
        let l = (ns..ns + 400)
            .map(|n| 2f64.ln() + (w as f64 / 2.0) * (n as f64).ln() - TWO_PI * Y_MIN * n as f64)
            .fold(f64::NEG_INFINITY, log_add);
        bound_from_log2(l / LN2)
    };
    let per_x: Vec<Vec<(BigReal, Vec<BigReal>)>> = par::map(&gl, |(u, wu)| {
        // x = (u + 1)/4 on [0, 1/2]
        let x = BigReal::exact(Float::with_val(prec, u)).add(&BigReal::one(prec)).mul(&quarter);
        let wx = BigReal::exact(Float::with_val(prec, wu)).mul(&quarter);
        let y0 = BigReal::one(prec).sub(&x.sqr()).sqrt();
        let h = BigReal::one(prec).sub(&y0);
        let (c, s) = two_pi.mul(&x).cos_sin();
        let mut acc: Vec<(BigReal, Vec<BigReal>)> = (0..ne).map(|_| (BigReal::zero(prec), vec![BigReal::zero(prec); eis.len()])).collect();
        for (v, wv) in &gl {
            let y = BigReal::exact(Float::with_val(prec, v)).add(&BigReal::one(prec)).mul(&half).mul(&h).add(&y0);
            let wgt = wx.mul(&BigReal::exact(Float::with_val(prec, wv))).mul(&h).mul(&half);
            let r = two_pi.mul(&y).neg().exp();
            let z = CBall::new(r.mul(&c), r.mul(&s));
            let mut qn = Vec::with_capacity(ns);
            qn.push(CBall::one(prec));
            for n in 1..ns {
                let next = qn[n - 1].mul(&z);
                qn.push(next);
            }
            let re_q: Vec<BigReal> = qn.iter().map(|q| q.re.clone()).collect();
            let inv_2piy = two_pi.mul(&y).recip();
            let evals: Vec<BigReal> = eis.iter().map(|e| e.eval(&y, &re_q, &inv_2piy, &inv_j)).collect();
            let yw = y.pow_u(w - 2).mul(&wgt);
            for (emb, a) in coeffs.iter().enumerate() {
                let mut fre = BigReal::zero(prec);
                let mut fim = BigReal::zero(prec);
                for n in 1..ns {
                    fre = fre.add(&a[n].mul(&qn[n].re));
                    fim = fim.add(&a[n].mul(&qn[n].im));
                }
                let f2 = fre.add_error(&ftail).sqr().add(&fim.add_error(&ftail).sqr());
                let base = f2.mul(&yw);
                acc[emb].0 = acc[emb].0.add(&base);
                for (i, ev) in evals.iter().enumerate() {
                    acc[emb].1[i] = acc[emb].1[i].add(&base.mul(ev));
                }
            }
        }
        acc
    });
    (0..ne)
        .map(|emb| {
            let mut pet = BigReal::zero(prec);
            let mut adj = vec![BigReal::zero(prec); eis.len()];
            for row in &per_x {
                pet = pet.add(&row[emb].0);
                for (i, v) in row[emb].1.iter().enumerate() {
                    adj[i] = adj[i].add(v);
                }
            }
            Integrals { pet: pet.mul_i64(2), adj: adj.into_iter().map(|v| v.mul_i64(2)).collect() }
        })
        .collect()
}

fn quad_nodes(prec: u32) -> usize {
    prec as usize / 5 + 12
}

/// Widens `fine` by |fine − coarse| (quadrature error estimate).
fn widen(fine: &BigReal, coarse: &BigReal) -> BigReal {
    let d = fine.sub(coarse);
    fine.add_error(&Float::with_val(64, d.abs_upper()))
}

/// Full integrals for every embedding.
fn integrals(f: &PrimitiveForm, ms: &[u32], prec: u32) -> Result<Vec<Integrals>> {
    let w = f.w;
    let m_max = ms.iter().copied().max().unwrap_or(0);
    let ns = sliver_terms(w, m_max, prec);
    let nr = rect_terms(w, m_max, prec);
    let coeffs = embedded_coeffs(f, ns.max(nr) + 1, prec)?;
    let eis: Vec<EisensteinData> = ms.iter().map(|&m| EisensteinData::new(m, ns, prec)).collect();
    let n1 = quad_nodes(prec);
    let fine = sliver(&coeffs, w, &eis, ns, n1, prec);
    let coarse = sliver(&coeffs, w, &eis, ns, n1 * 4 / 5, prec);
    Ok(coeffs
        .iter()
        .zip(fine.iter().zip(&coarse))
        .map(|(a, (fi, co))| {
            let r = rectangle(a, w, &eis, nr, prec);
            Integrals {
                pet: r.pet.add(&widen(&fi.pet, &co.pet)),
                adj: r.adj.iter().zip(fi.adj.iter().zip(&co.adj)).map(|(x, (y, z))| x.add(&widen(y, z))).collect(),
            }
        })
        .collect())
}

/// q-expansion length that [`adjoint_normalized_many`] may consume starting
/// at `bits`, including both precision doublings.
pub fn adjoint_terms_needed(w: u32, ms: &[u32], bits: u32) -> usize {
    let m_max = ms.iter().copied().max().unwrap_or(0);
    (0..4).map(|i| bits << i).map(|p| sliver_terms(w, m_max, p).max(rect_terms(w, m_max, p)) + 1).max().unwrap_or(0)
}

/// ⟨f, f⟩ = ∫_{SL2(Z)\H} |f|² y^w dμ in each real embedding.
pub fn petersson_numeric(f: &PrimitiveForm, prec: u32) -> Result<Vec<BigReal>> {
    Ok(integrals(f, &[], prec)?.into_iter().map(|i| i.pet).collect())
}

fn check_adjoint_arg(w: u32, s: u32) -> Result<()> {
    if s < 2 || s > w - 1 {
        return Err(Error::pre(format!("adjoint L-value at s = {s} needs 2 <= s <= {}", w - 1)));
    }
    Ok(())
}

/// L(s, f, Ad) = ζ(2s)/ζ(s) · (4π)^{s+w−1}/Γ(s+w−1) · I(s).
fn l_adjoint_from(i_s: &BigReal, w: u32, s: u32, prec: u32) -> BigReal {
    let four_pi = BigReal::pi(prec).mul_i64(4);
    zeta(2 * s, prec)
        .div(&zeta(s, prec))
        .mul(&four_pi.pow_u(s + w - 1))
        .div(&factorial_ball((s + w - 2) as u64, prec))
        .mul(i_s)
}

/// L(s, f, Ad) in each real embedding, 2 ≤ s ≤ w − 1.
pub fn l_adjoint_numeric(f: &PrimitiveForm, s: u32, prec: u32) -> Result<Vec<BigReal>> {
    check_adjoint_arg(f.w, s)?;
    Ok(integrals(f, &[s], prec)?.iter().map(|i| l_adjoint_from(&i.adj[0], f.w, s, prec)).collect())
}

/// Γ_C(m)Γ_C(m+w−1) L(m, f, Ad)/⟨f, f⟩ for each m, each embedding.
fn normalized_values(f: &PrimitiveForm, ms: &[u32], prec: u32) -> Result<Vec<Vec<BigReal>>> {
    let ints = integrals(f, ms, prec)?;
    Ok(ms
        .iter()
        .enumerate()
        .map(|(i, &m)| {
            let g = gamma_c(m, prec).mul(&gamma_c(m + f.w - 1, prec));
            ints.iter().map(|it| g.mul(&l_adjoint_from(&it.adj[i], f.w, m, prec)).div(&it.pet)).collect()
        })
        .collect())
}

/// A reconstructed normalized adjoint value **L**(m, f, Ad) ∈ Q(f).
#[derive(Clone, Debug)]
pub struct AdjointValue {
    pub w: u32,
    pub m: u32,
    pub value: NfElem,
    /// Precision of the first successful reconstruction.
    pub precision_bits: u32,
    /// Precision of the confirming run.
    pub verified_at_bits: u32,
    /// True when the reconstruction reproduced at doubled precision.
    pub verified: bool,
    /// Embedded numerical values at the confirming precision.
    pub embedded: Vec<String>,
}

#[derive(Serialize)]
struct AdjointRecord<'a> {
    weight: u32,
    m: u32,
    field_minpoly: String,
    value: Vec<String>,
    precision_bits: u32,
    verified_at_bits: u32,
    verified: bool,
    embedded: &'a [String],
}

impl AdjointValue {
    pub fn to_json(&self) -> serde_json::Value {
        let rec = AdjointRecord {
            weight: self.w,
            m: self.m,
            field_minpoly: self.value.field().minpoly_q().to_string(),
            value: self.value.to_strings(),
            precision_bits: self.precision_bits,
            verified_at_bits: self.verified_at_bits,
            verified: self.verified,
            embedded: &self.embedded,
        };
        serde_json::to_value(rec).expect("serializable")
    }

    /// Inverse of [`AdjointValue::to_json`] over the field of f.
    pub fn from_json(f: &PrimitiveForm, v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::inconsistent("malformed adjoint record");
        let num = |key: &str| v.get(key).and_then(|x| x.as_u64()).ok_or_else(bad);
        let coords = v
            .get("value")
            .and_then(|x| x.as_array())
            .ok_or_else(bad)?
            .iter()
            .map(|c| c.as_str().and_then(crate::exactnum::rational_from_str).ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != f.field.degree() || num("weight")? != f.w as u64 {
            return Err(Error::inconsistent("adjoint record belongs to a different form"));
        }
        let embedded = v
            .get("embedded")
            .and_then(|x| x.as_array())
            .ok_or_else(bad)?
            .iter()
            .map(|c| c.as_str().map(String::from).ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?;
        Ok(AdjointValue {
            w: f.w,
            m: num("m")? as u32,
            value: NfElem::new(&f.field, coords),
            precision_bits: num("precision_bits")? as u32,
            verified_at_bits: num("verified_at_bits")? as u32,
            verified: v.get("verified").and_then(|x| x.as_bool()).ok_or_else(bad)?,
            embedded,
        })
    }
}

fn check_odd_m(w: u32, m: u32) -> Result<()> {
    if m.is_multiple_of(2) {
        return Err(Error::pre(format!("adjoint argument m = {m} must be odd")));
    }
    check_adjoint_arg(w, m)
}

/// Normalized adjoint values for several odd m, reconstructed in Q(f) and
/// confirmed at doubled precision. Starting at `bits`, precision doubles at
/// most twice before the call fails with insufficient-precision.
pub fn adjoint_normalized_many(f: &PrimitiveForm, ms: &[u32], bits: u32) -> Result<Vec<AdjointValue>> {
    for &m in ms {
        check_odd_m(f.w, m)?;
    }
    let rec = |prec: u32| -> Result<(Vec<Option<NfElem>>, Vec<Vec<BigReal>>)> {
        let vals = normalized_values(f, ms, prec)?;
        Ok((vals.iter().map(|v| reconstruct(&f.field, v)).collect(), vals))
    };
    let mut prec = bits;
    let (mut prev, _) = rec(prec)?;
    for _round in 0..2 {
        let (next, vals) = rec(2 * prec)?;
        let stable = prev.iter().zip(&next).all(|(a, b)| a.is_some() && a == b);
        if stable {
            return Ok(ms
                .iter()
                .zip(next)
                .zip(vals)
                .map(|((&m, v), emb)| AdjointValue {
                    w: f.w,
                    m,
                    value: v.expect("stable"),
                    precision_bits: prec,
                    verified_at_bits: 2 * prec,
                    verified: true,
                    embedded: emb.iter().map(|b| b.to_string_digits(40)).collect(),
                })
                .collect());
        }
        prev = next;
        prec *= 2;
    }
    Err(Error::InsufficientPrecision(format!(
        "adjoint values for m = {ms:?} at weight {} not stable up to {} bits",
        f.w,
        2 * prec
    )))
}

/// Single-m form of [`adjoint_normalized_many`]. The prime is carried for
/// the report only: the value is canonical.
pub fn adjoint_normalized(f: &PrimitiveForm, m: u32, bits: u32) -> Result<AdjointValue> {
    Ok(adjoint_normalized_many(f, &[m], bits)?.remove(0))
}

/// Degree-3 Euler factor (1 − X)(1 − tX + X²) of L(s, f, Ad) at p in the
/// variable X = p^{−s}, with t = β² + β^{−2} = c_f(p)²/p^{w−1} − 2. Returned
/// as coefficients of 1, X, X², X³.
pub fn adjoint_euler_factor(cp: &NfElem, p: u64, w: u32) -> [NfElem; 4] {
    let k = cp.field();
    let pw = Rational::from(BigInt::from(p).pow(w - 1));
    let t = cp.mul(cp).scale(&pw.recip()).sub(&NfElem::from_int(k, 2));
    let one = NfElem::from_int(k, 1);
    // (1 − X)(1 − tX + X²) = 1 − (t+1)X + (t+1)X² − X³
    let t1 = t.add(&one);
    [one.clone(), t1.neg(), t1, one.neg()]
}

