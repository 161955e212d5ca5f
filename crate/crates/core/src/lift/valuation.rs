//! ord_P bookkeeping for the standard L-value of a lift, assembled from exact
//! critical values of f, normalized adjoint values and ξ̃.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::exactnum::arith::is_fundamental_discriminant;
use crate::exactnum::bernoulli::xi_tilde;
use crate::exactnum::{NfElem, PrimeIdeal, Rational};
use crate::forms1::{eigenforms, PrimitiveForm};
use crate::lser::{adjoint_normalized_many, adjoint_terms_needed, AdjointValue};
use crate::msym::{adjoint_period_ord, build_space, format_factorization, periods_eta, IntegralEigenclassPair};
use crate::{Error, Result};

/// One factor of a product, entering with `exponent` (negative in denominators).
#[derive(Clone, Debug, Serialize)]
pub struct FactorValuation {
    pub label: String,
    pub exponent: i64,
    pub ord_p: i64,
    pub norm_factorization: String,
    pub ambiguity: Option<String>,
}

impl FactorValuation {
    pub fn contribution(&self) -> i64 {
        self.exponent * self.ord_p
    }
}

/// Everything needed to value L-factors of f at one prime ideal P.
#[derive(Clone, Debug)]
pub struct LValueContext {
    pub n: usize,
    pub k: u32,
    pub pair: IntegralEigenclassPair,
    pub adjoint: BTreeMap<u32, AdjointValue>,
    /// Adjoint arguments whose reconstruction failed, with the reason.
    pub adjoint_failures: BTreeMap<u32, String>,
}

impl LValueContext {
    pub fn new(n: usize, k: u32, f: &PrimitiveForm, prime: &PrimeIdeal) -> Result<Self> {
        if n == 0 || n % 2 == 1 || (k as usize) <= n {
            return Err(Error::pre(format!("need even n < k, got n = {n}, k = {k}")));
        }
        if f.w != 2 * k - n as u32 {
            return Err(Error::pre(format!("f has weight {}, expected 2k − n = {}", f.w, 2 * k - n as u32)));
        }
        let space = build_space(f.w)?;
        let pair = periods_eta(&space, f, prime)?;
        Ok(LValueContext { n, k, pair, adjoint: BTreeMap::new(), adjoint_failures: BTreeMap::new() })
    }

    /// Odd arguments 3, 5, …, n − 1 of the adjoint factors.
    pub fn adjoint_arguments(&self) -> Vec<u32> {
        (1..self.n as u32 / 2).map(|i| 2 * i + 1).collect()
    }

    pub fn with_adjoint(mut self, vals: Vec<AdjointValue>) -> Self {
        for v in vals {
            self.adjoint.insert(v.m, v);
        }
        self
    }

    /// Computes the adjoint factors; an unstable reconstruction is recorded
    /// as a failure rather than aborting, so reports can mark it conditional.
    pub fn compute_adjoint(mut self, bits: u32) -> Result<Self> {
        let ms: Vec<u32> = self.adjoint_arguments().into_iter().filter(|m| !self.adjoint.contains_key(m)).collect();
        if ms.is_empty() {
            return Ok(self);
        }
        let need = adjoint_terms_needed(self.pair.f.w, &ms, bits);
        let long = if self.pair.f.prec() >= need { self.pair.f.clone() } else { self.longer_form(need)? };
        match adjoint_normalized_many(&long, &ms, bits) {
            Ok(vals) => Ok(self.with_adjoint(vals)),
            Err(Error::InsufficientPrecision(msg)) => {
                for m in ms {
                    self.adjoint_failures.insert(m, msg.clone());
                }
                Ok(self)
            }
            Err(e) => Err(e),
        }
    }

    /// The same form with at least `n` coefficients, in the same field presentation.
    fn longer_form(&self, n: usize) -> Result<PrimitiveForm> {
        let f = &self.pair.f;
        let mut g = eigenforms(f.w, n)?
            .into_iter()
            .find(|g| g.field.minpoly() == f.field.minpoly() && (1..f.prec()).all(|i| g.coeff(i).coords() == f.coeff(i).coords()))
            .ok_or_else(|| Error::inconsistent("longer q-expansion does not match the form"))?;
        g.field = f.field.clone();
        g.q = crate::forms1::QExp::new(g.q.coeffs().iter().map(|c| NfElem::new(&f.field, c.coords().to_vec())).collect());
        Ok(g)
    }

    pub fn prime(&self) -> &PrimeIdeal {
        &self.pair.prime
    }

    pub fn f(&self) -> &PrimitiveForm {
        &self.pair.f
    }

    pub fn field(&self) -> &Arc<crate::exactnum::NumberField> {
        &self.pair.f.field
    }

    /// True when every adjoint factor passed the precision-doubling check.
    pub fn adjoint_certified(&self) -> bool {
        self.adjoint_arguments().iter().all(|m| self.adjoint.get(m).is_some_and(|a| a.verified))
    }

    pub fn l_factor(&self, l: u32, d: i64, exponent: i64) -> Result<FactorValuation> {
        let c = self.pair.critical_value(l, d)?;
        if c.value.is_zero() {
            return Err(Error::pre(format!("L({l}, f, χ_{d}) vanishes")));
        }
        let label = if d == 1 { format!("L({l},f)") } else { format!("L({l},f,chi_{d})") };
        Ok(FactorValuation {
            label,
            exponent,
            ord_p: self.prime().ord(&c.value)?,
            norm_factorization: format_factorization(&c.ideal_norm),
            ambiguity: Some("period normalized by the integral eigenclass at P".into()),
        })
    }

    pub fn xi_factor(&self, m: u32, exponent: i64) -> Result<FactorValuation> {
        let x = xi_tilde(m)?;
        Ok(FactorValuation {
            label: format!("xi~({m})"),
            exponent,
            ord_p: self.prime().ord_rational(&x)?,
            norm_factorization: format_factorization(&x),
            ambiguity: None,
        })
    }

    pub fn rational_factor(&self, label: &str, q: &Rational, exponent: i64) -> Result<FactorValuation> {
        Ok(FactorValuation {
            label: label.into(),
            exponent,
            ord_p: self.prime().ord_rational(q)?,
            norm_factorization: format_factorization(q),
            ambiguity: None,
        })
    }

    pub fn adjoint_factor(&self, m: u32, exponent: i64) -> Result<FactorValuation> {
        let a = self.adjoint.get(&m).ok_or_else(|| Error::pre(format!("adjoint value at m = {m} not computed")))?;
        if a.value.is_zero() {
            return Err(Error::inconsistent(format!("adjoint value at m = {m} reconstructed as zero")));
        }
        let note = if a.verified {
            format!("numeric reconstruction stable from {} to {} bits", a.precision_bits, a.verified_at_bits)
        } else {
            format!("UNCERTIFIED numeric reconstruction at {} bits", a.precision_bits)
        };
        Ok(FactorValuation {
            label: format!("L({m},f,Ad)"),
            exponent,
            ord_p: self.prime().ord(&a.value)?,
            norm_factorization: format_factorization(&a.value.norm()),
            ambiguity: Some(note),
        })
    }

    /// ord_P of ⟨f,f⟩/(Ω⁺Ω⁻) through the congruence number of f.
    pub fn period_factor(&self, exponent: i64) -> Result<FactorValuation> {
        Ok(FactorValuation {
            label: "<f,f>/(Omega+ Omega-)".into(),
            exponent,
            ord_p: adjoint_period_ord(self.f(), self.prime())?,
            norm_factorization: "-".into(),
            ambiguity: None,
        })
    }

    fn check_discriminant(&self, d: i64) -> Result<()> {
        let sign = if (self.n / 2).is_multiple_of(2) { 1 } else { -1 };
        if sign * d <= 0 || !(d == 1 || is_fundamental_discriminant(d)) {
            return Err(Error::pre(format!("D = {d} must be fundamental with (−1)^(n/2) D > 0")));
        }
        Ok(())
    }

    /// Factors of |D|^{k−n/2} L(k−n/2,f,χ_D) / (L(k,f) ξ̃(n) Π L(2i+1,f,Ad) ξ̃(2i)).
    fn period_ratio_factors(&self, d: i64) -> Result<Vec<FactorValuation>> {
        self.check_discriminant(d)?;
        let h = self.k - self.n as u32 / 2;
        let mut v = Vec::new();
        if d != 1 {
            v.push(self.rational_factor("|D|", &Rational::from_integer(BigInt::from(d.abs())), h as i64)?);
        }
        v.push(self.l_factor(h, d, 1)?);
        v.push(self.l_factor(self.k, 1, -1)?);
        v.push(self.xi_factor(self.n as u32, -1)?);
        for i in 1..self.n as u32 / 2 {
            v.push(self.adjoint_factor(2 * i + 1, -1)?);
            v.push(self.xi_factor(2 * i, -1)?);
        }
        Ok(v)
    }
}

/// ord_P of c_g(|D|)² ⟨f,f⟩^{n/2} / ⟨I_n(g), I_n(g)⟩ through its L-value side.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodRatioReport {
    pub d: i64,
    pub factors: Vec<FactorValuation>,
    pub ord_total: i64,
    pub ambiguity: String,
    pub adjoint_certified: bool,
}

pub fn period_ratio(ctx: &LValueContext, d: i64) -> Result<PeriodRatioReport> {
    let factors = ctx.period_ratio_factors(d)?;
    let ord_total = factors.iter().map(|f| f.contribution()).sum();
    Ok(PeriodRatioReport {
        d,
        factors,
        ord_total,
        ambiguity: "2^a (−1)^b with a, b depending only on (n, k): P-units for residue characteristic >= 5".into(),
        adjoint_certified: ctx.adjoint_certified(),
    })
}

/// Upper bound for ord_P(Λ(2m, I_n(g), St)·𝔍²).
#[derive(Clone, Debug, Serialize)]
pub struct LambdaReport {
    pub m: u32,
    pub d: i64,
    pub factors: Vec<FactorValuation>,
    /// ord_P of Λ(2m)·c(A)² without ε_{k,m}; bounds ord_P(Λ(2m)·𝔍²) from above.
    pub ord_upper_bound: i64,
    pub caveats: Vec<String>,
    pub adjoint_certified: bool,
}

pub fn lambda_standard(ctx: &LValueContext, m: u32, d: i64) -> Result<LambdaReport> {
    let (n, k) = (ctx.n as u32, ctx.k);
    let lo = n / 2 + 1;
    let hi = (k / 2).saturating_sub(n / 2 + 1);
    if m < lo || m > hi {
        return Err(Error::pre(format!("m = {m} outside [{lo}, {hi}]")));
    }
    let p = ctx.prime().rational_prime();
    if p < 5 || p < 2 * k as u64 {
        return Err(Error::pre(format!("residue characteristic {p} must be >= 5 and exceed 2k − 1 = {}", 2 * k - 1)));
    }
    let mut factors: Vec<FactorValuation> = (1..=n).map(|i| ctx.l_factor(2 * m + k - i, 1, 1)).collect::<Result<_>>()?;
    factors.extend(ctx.period_ratio_factors(d)?);
    factors.push(ctx.period_factor(-(n as i64) / 2)?);
    let ord_upper_bound = factors.iter().map(|f| f.contribution()).sum();
    Ok(LambdaReport {
        m,
        d,
        factors,
        ord_upper_bound,
        caveats: vec![
            "epsilon_{k,m}: rational with P-unit numerator, can only lower the order".into(),
            "c(A) = c_g(|D|)·l with l a P-unit; the coefficient ideal divides c(A)".into(),
            "two-power alpha of the inner-product formula is a P-unit".into(),
        ],
        adjoint_certified: ctx.adjoint_certified(),
    })
}
