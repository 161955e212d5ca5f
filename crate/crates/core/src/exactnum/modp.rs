//! Polynomials over prime fields F_p (p < 2^63) and their factorization by
//! squarefree decomposition, distinct-degree and equal-degree splitting. The
//! equal-degree step walks a fixed sequence of candidate polynomials, so the
//! factorization is deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::arith::{inv_mod_u64, pow_mod_u64};

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Element of F_p; implements the linear-algebra scalar interface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

impl Fp {
    pub fn new(v: i128, p: u64) -> Self {
        Fp { v: v.rem_euclid(p as i128) as u64, p }
    }

    pub fn from_bigint(v: &BigInt, p: u64) -> Self {
        Fp { v: v.mod_floor(&BigInt::from(p)).to_u64().unwrap(), p }
    }
}

/// Polynomial over F_p with coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFp {
    pub p: u64,
    pub c: Vec<u64>,
}

impl PolyFp {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        PolyFp { p, c }
    }

    pub fn from_bigints(c: &[BigInt], p: u64) -> Self {
        PolyFp::new(p, c.iter().map(|x| Fp::from_bigint(x, p).v).collect())
    }

    pub fn zero(p: u64) -> Self {
        PolyFp { p, c: vec![] }
    }

    pub fn one(p: u64) -> Self {
        PolyFp::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        PolyFp::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        PolyFp::new(
            p,
            (0..n)
                .map(|i| (self.c.get(i).copied().unwrap_or(0) + o.c.get(i).copied().unwrap_or(0)) % p)
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let p = self.p;
        PolyFp::new(
            p,
            (0..n)
                .map(|i| (self.c.get(i).copied().unwrap_or(0) + p - o.c.get(i).copied().unwrap_or(0)) % p)
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return PolyFp::zero(self.p);
        }
        let p = self.p;
        let mut r = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                r[i + j] = (r[i + j] + mulm(a, b, p)) % p;
            }
        }
        PolyFp::new(p, r)
    }

    pub fn scale(&self, a: u64) -> Self {
        PolyFp::new(self.p, self.c.iter().map(|&x| mulm(x, a, self.p)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod_u64(self.lead(), self.p))
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial mod p");
        let p = self.p;
        let dd = d.degree();
        let inv = inv_mod_u64(d.lead(), p);
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (PolyFp::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let coef = mulm(r[i + dd], inv, p);
            if coef != 0 {
                for (j, &dj) in d.c.iter().enumerate() {
                    r[i + j] = (r[i + j] + p - mulm(coef, dj, p)) % p;
                }
            }
            q[i] = coef;
        }
        r.truncate(dd);
        (PolyFp::new(p, q), PolyFp::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: (g, s, t) with s·a + t·b = g monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (PolyFp::one(p), PolyFp::zero(p));
        let (mut t0, mut t1) = (PolyFp::zero(p), PolyFp::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        let inv = inv_mod_u64(r0.lead(), p);
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn mulmod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, mut e: BigInt, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut r = PolyFp::one(self.p).rem(m);
        let two = BigInt::from(2);
        while !e.is_zero() {
            if e.is_odd() {
                r = r.mulmod(&base, m);
            }
            base = base.mulmod(&base, m);
            e /= &two;
        }
        r
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        PolyFp::new(
            p,
            self.c.iter().enumerate().skip(1).map(|(i, &a)| mulm(a, i as u64 % p, p)).collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0;
        for &a in self.c.iter().rev() {
            acc = (mulm(acc, x, self.p) + a) % self.p;
        }
        acc
    }

    /// p-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        PolyFp::new(self.p, self.c.iter().step_by(p).copied().collect())
    }
}

/// Squarefree factorization of a monic polynomial: list of (factor, multiplicity).
pub fn squarefree_factorization(f: &PolyFp) -> Vec<(PolyFp, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    let f = f.monic();
    if f.degree() == 0 {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        for (g, e) in squarefree_factorization(&f.pth_root()) {
            out.push((g, e * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.divrem(&c).0;
    let mut i = 1u32;
    while w.degree() > 0 {
        let y = w.gcd(&c);
        let z = w.divrem(&y).0;
        if z.degree() > 0 {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.divrem(&w).0;
    }
    if c.degree() > 0 {
        for (g, e) in squarefree_factorization(&c.pth_root()) {
            out.push((g, e * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(f: &PolyFp) -> Vec<(PolyFp, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = PolyFp::x(p);
    let mut h = x.clone();
    let mut d = 0;
    while rest.degree() >= 2 * (d + 1) {
        d += 1;
        h = h.powmod(BigInt::from(p), &rest);
        let g = rest.gcd(&h.sub(&x));
        if g.degree() > 0 {
            out.push((g.clone(), d));
            rest = rest.divrem(&g).0;
            h = h.rem(&rest);
        }
    }
    if rest.degree() > 0 {
        let dr = rest.degree();
        out.push((rest, dr));
    }
    out
}

/// The n-th polynomial in a fixed enumeration of nonconstant polynomials of
/// degree < bound (base-p digits of n + p).
fn candidate(n: u64, p: u64, bound: usize) -> PolyFp {
    let mut m = n + p;
    let mut c = Vec::new();
    while m > 0 && c.len() < bound {
        c.push(m % p);
        m /= p;
    }
    PolyFp::new(p, c)
}

fn equal_degree(f: &PolyFp, d: usize, out: &mut Vec<PolyFp>) {
    let p = f.p;
    if f.degree() == d {
        out.push(f.monic());
        return;
    }
    let n = f.degree();
    let mut idx = 0u64;
    loop {
        let r = candidate(idx, p, n);
        idx += 1;
        if r.degree() == 0 {
            continue;
        }
        let g = if p == 2 {
            // trace map r + r^2 + ... + r^{2^{d-1}}
            let mut acc = r.rem(f);
            let mut cur = acc.clone();
            for _ in 1..d {
                cur = cur.mulmod(&cur, f);
                acc = acc.add(&cur);
            }
            f.gcd(&acc)
        } else {
            let e = (BigInt::from(p).pow(d as u32) - 1) / 2;
            let h = r.powmod(e, f).sub(&PolyFp::one(p));
            f.gcd(&h)
        };
        if g.degree() > 0 && g.degree() < n {
            let other = f.divrem(&g).0;
            equal_degree(&g, d, out);
            equal_degree(&other, d, out);
            return;
        }
    }
}

/// Monic irreducible factors with multiplicities, sorted by (degree, coefficients).
pub fn factor(f: &PolyFp) -> Vec<(PolyFp, u32)> {
    let mut out = Vec::new();
    for (g, e) in squarefree_factorization(f) {
        for (h, d) in distinct_degree(&g) {
            let mut parts = Vec::new();
            equal_degree(&h, d, &mut parts);
            for q in parts {
                out.push((q, e));
            }
        }
    }
    out.sort_by(|a, b| (a.0.degree(), &a.0.c).cmp(&(b.0.degree(), &b.0.c)));
    out
}

/// Roots of f in F_p (with multiplicity ignored), sorted.
pub fn roots(f: &PolyFp) -> Vec<u64> {
    let mut r: Vec<u64> = factor(f)
        .into_iter()
        .filter(|(g, _)| g.degree() == 1)
        .map(|(g, _)| (f.p - g.c[0]) % f.p)
        .collect();
    r.sort_unstable();
    r
}

pub fn fp_inv(a: u64, p: u64) -> u64 {
    inv_mod_u64(a, p)
}

pub fn fp_pow(a: u64, e: u64, p: u64) -> u64 {
    pow_mod_u64(a, e, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prod(fs: &[(PolyFp, u32)], p: u64) -> PolyFp {
        let mut acc = PolyFp::one(p);
        for (g, e) in fs {
            for _ in 0..*e {
                acc = acc.mul(g);
            }
        }
        acc
    }

    #[test]
    fn factorization_reconstructs_input() {
        for p in [2u64, 3, 5, 7, 211] {
            let f = PolyFp::new(p, vec![3, 0, 1, 4, 1, 0, 2, 1]);
            let fs = factor(&f);
            assert_eq!(prod(&fs, p), f.monic(), "p = {p}");
        }
    }

    #[test]
    fn repeated_factors_detected() {
        let p = 5;
        let a = PolyFp::new(p, vec![1, 1]);
        let b = PolyFp::new(p, vec![2, 0, 1]);
        let f = a.mul(&a).mul(&a).mul(&b);
        let fs = factor(&f);
        assert!(fs.iter().any(|(g, e)| *g == a && *e == 3));
        assert_eq!(prod(&fs, p), f);
    }

    #[test]
    fn x2_minus_5_mod_11_splits() {
        let f = PolyFp::new(11, vec![11 - 5, 0, 1]);
        assert_eq!(roots(&f), vec![4, 7]);
    }
}
