//! Exact arithmetic: integers, rationals, polynomials, number fields and
//! prime ideals.

pub mod arith;
pub mod bernoulli;
pub mod field;
pub mod ideal;
pub mod linalg;
pub mod modp;
pub mod poly;
pub mod zassenhaus;

use num_bigint::BigInt;

pub use bernoulli::{bernoulli, xi_tilde};
pub use field::{NfElem, NumberField};
pub use ideal::{prime_split, PrimeIdeal};
pub use poly::QPoly;

pub type Rational = num_rational::BigRational;

pub fn q_int(v: i64) -> Rational {
    Rational::from(BigInt::from(v))
}

pub fn q_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical "num/den" text form.
pub fn rational_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn rational_from_str(s: &str) -> Option<Rational> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n.trim().parse().ok()?;
    let d: BigInt = d.trim().parse().ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(Rational::new(n, d))
}
