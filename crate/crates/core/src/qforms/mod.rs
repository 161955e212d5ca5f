//! Half-integral symmetric matrices: discriminant data, Hilbert symbols and
//! Hasse invariants, reduction, class enumeration and lattice construction.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::arith::{fundamental_decomposition, is_fundamental_discriminant, kronecker, valuation};
use crate::exactnum::Rational;
use crate::{Error, Result};

#[cfg(test)]
mod tests;

/// A half-integral matrix T stored through the even integral matrix 2T.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfIntegralMatrix {
    n: usize,
    two_t: Vec<Vec<i64>>,
}

impl fmt::Debug for HalfIntegralMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2T={:?}", self.two_t)
    }
}

impl fmt::Display for HalfIntegralMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.two_t.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl HalfIntegralMatrix {
    /// From the integral matrix 2T (symmetric, even diagonal).
    pub fn from_2t(two_t: Vec<Vec<i64>>) -> Result<Self> {
        let n = two_t.len();
        if n == 0 || two_t.iter().any(|r| r.len() != n) {
            return Err(Error::pre("2T must be a nonempty square matrix"));
        }
        for i in 0..n {
            if two_t[i][i] % 2 != 0 {
                return Err(Error::pre("2T must have even diagonal"));
            }
            for j in 0..i {
                if two_t[i][j] != two_t[j][i] {
                    return Err(Error::pre("2T must be symmetric"));
                }
            }
        }
        Ok(HalfIntegralMatrix { n, two_t })
    }

    /// From rational entries of T.
    pub fn from_entries(t: &[Vec<Rational>]) -> Result<Self> {
        let two = Rational::from_integer(BigInt::from(2));
        let m = t
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        let y = x * &two;
                        if !y.is_integer() {
                            return Err(Error::pre("entries of T must lie in (1/2)Z"));
                        }
                        y.to_integer().to_i64().ok_or_else(|| Error::pre("entry too large"))
                    })
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_2t(m)
    }

    pub fn diag(entries: &[i64]) -> Self {
        let n = entries.len();
        let m = (0..n).map(|i| (0..n).map(|j| if i == j { 2 * entries[i] } else { 0 }).collect()).collect();
        HalfIntegralMatrix { n, two_t: m }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn two_t(&self) -> &[Vec<i64>] {
        &self.two_t
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        Rational::new(BigInt::from(self.two_t[i][j]), BigInt::from(2))
    }

    /// det(2T).
    pub fn det2(&self) -> i64 {
        det_i64(&self.two_t)
    }

    pub fn is_positive_definite(&self) -> bool {
        (1..=self.n).all(|k| {
            let sub: Vec<Vec<i64>> = self.two_t[..k].iter().map(|r| r[..k].to_vec()).collect();
            det_i64(&sub) > 0
        })
    }

    /// gcd of the entries of T in the sense of the Maass relation:
    /// gcd(t_ii, 2t_ij).
    pub fn content(&self) -> i64 {
        let mut g = 0i64;
        for i in 0..self.n {
            g = g.gcd(&(self.two_t[i][i] / 2));
            for j in i + 1..self.n {
                g = g.gcd(&self.two_t[i][j]);
            }
        }
        g
    }

    /// U^t (2T) U.
    pub fn transform(&self, u: &[Vec<i64>]) -> HalfIntegralMatrix {
        let n = self.n;
        let mu: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| self.two_t[i][k] * u[k][j]).sum()).collect()).collect();
        let out = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| u[k][i] * mu[k][j]).sum()).collect()).collect();
        HalfIntegralMatrix { n, two_t: out }
    }

    /// T scaled by an integer.
    pub fn scale(&self, s: i64) -> HalfIntegralMatrix {
        HalfIntegralMatrix { n: self.n, two_t: self.two_t.iter().map(|r| r.iter().map(|x| x * s).collect()).collect() }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, o: &HalfIntegralMatrix) -> HalfIntegralMatrix {
        let n = self.n + o.n;
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..self.n {
            m[i][..self.n].copy_from_slice(&self.two_t[i]);
        }
        for i in 0..o.n {
            m[self.n + i][self.n..].copy_from_slice(&o.two_t[i]);
        }
        HalfIntegralMatrix { n, two_t: m }
    }

    /// Value of the quadratic form x ↦ x^t (2T) x.
    pub fn norm2(&self, x: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.n {
            for j in 0..self.n {
                s += x[i] * self.two_t[i][j] * x[j];
            }
        }
        s
    }
}

/// Exact determinant by fraction-free elimination.
fn det_i64(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// (−1)^{n/2} det(2T) = d · f² with d a fundamental discriminant (or 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscriminantData {
    pub d: i64,
    pub f: i64,
    pub det2: i64,
}

pub fn disc_split(t: &HalfIntegralMatrix) -> Result<DiscriminantData> {
    if t.n() % 2 == 1 {
        return Err(Error::pre("disc_split needs even degree"));
    }
    let det2 = t.det2();
    if det2 == 0 {
        return Err(Error::pre("degenerate matrix"));
    }
    let signed = if (t.n() / 2).is_multiple_of(2) { det2 } else { -det2 };
    let (d, f) = fundamental_decomposition(&BigInt::from(signed))
        .ok_or_else(|| Error::inconsistent(format!("{signed} is not a discriminant")))?;
    Ok(DiscriminantData { d: d.to_i64().expect("small"), f: f.to_i64().expect("small"), det2 })
}

/// A place of Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Place {
    Finite(u64),
    Infinity,
}

/// Square class representative of a nonzero rational: num · den.
fn square_class(q: &Rational) -> BigInt {
    q.numer() * q.denom()
}

/// Hilbert symbol (a, b)_v.
pub fn hilbert_symbol(a: &Rational, b: &Rational, v: Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::pre("Hilbert symbol of zero"));
    }
    let (a, b) = (square_class(a), square_class(b));
    let p = match v {
        Place::Infinity => return Ok(if a.is_negative() && b.is_negative() { -1 } else { 1 }),
        Place::Finite(p) => p,
    };
    let al = valuation(&a, p);
    let be = valuation(&b, p);
    let pb = BigInt::from(p);
    let u = &a / pb.pow(al);
    let w = &b / pb.pow(be);
    if p == 2 {
        let eps = |x: &BigInt| -> u32 { (x.mod_floor(&BigInt::from(4)) == BigInt::from(3)) as u32 };
        let omega = |x: &BigInt| -> u32 {
            let r = x.mod_floor(&BigInt::from(8)).to_u32().expect("small");
            (r == 3 || r == 5) as u32
        };
        let e = eps(&u) * eps(&w) + al * omega(&w) + be * omega(&u);
        return Ok(if e.is_multiple_of(2) { 1 } else { -1 });
    }
    let leg = |x: &BigInt| -> i32 {
        let r = x.mod_floor(&pb).to_i64().expect("small");
        kronecker(r, p as i64) as i32
    };
    let mut s = if (al * be) % 2 == 1 && p % 4 == 3 { -1 } else { 1 };
    if be % 2 == 1 {
        s *= leg(&u);
    }
    if al % 2 == 1 {
        s *= leg(&w);
    }
    Ok(s)
}

/// Hasse invariant Π_{i<j} (a_i, a_j)_v of the diagonal form Σ a_i x_i².
pub fn hasse_invariant(diag: &[Rational], v: Place) -> Result<i32> {
    if diag.iter().any(|a| a.is_zero()) {
        return Err(Error::pre("degenerate diagonal form"));
    }
    let mut h = 1;
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            h *= hilbert_symbol(&diag[i], &diag[j], v)?;
        }
    }
    Ok(h)
}

/// Diagonal entries of the quadratic form x ↦ x^t T x after rational
/// Gram–Schmidt (T positive definite or at least with nonzero leading minors).
pub fn diagonalize(t: &HalfIntegralMatrix) -> Result<Vec<Rational>> {
    let n = t.n();
    let mut a: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| t.entry(i, j)).collect()).collect();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        if a[k][k].is_zero() {
            return Err(Error::pre("zero pivot in diagonalization"));
        }
        let piv = a[k][k].clone();
        for i in k + 1..n {
            let f = &a[i][k] / &piv;
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
        }
        out.push(piv);
    }
    Ok(out)
}

/// Vectors x with x^t (2T) x ≤ bound (positive definite T), with norms.
/// Fincke–Pohst over a floating Cholesky factor, exact check on output.
pub fn short_vectors(t: &HalfIntegralMatrix, bound: i64) -> Vec<(Vec<i64>, i64)> {
    let n = t.n();
    let m: Vec<Vec<f64>> = t.two_t.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    // q_ii, q_ij with Q(x) = Σ q_ii (x_i + Σ_{j>i} q_ij x_j)²
    let mut q = m.clone();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    fn rec(i: usize, n: usize, q: &[Vec<f64>], rem: f64, x: &mut Vec<i64>, t: &HalfIntegralMatrix, bound: i64, out: &mut Vec<(Vec<i64>, i64)>) {
        let c: f64 = (i + 1..n).map(|j| q[i][j] * x[j] as f64).sum();
        let r = (rem / q[i][i]).max(0.0).sqrt() + 1e-9;
        let lo = (-c - r).ceil() as i64;
        let hi = (-c + r).floor() as i64;
        for v in lo..=hi {
            x[i] = v;
            let used = q[i][i] * (v as f64 + c) * (v as f64 + c);
            let rest = rem - used;
            if rest < -1e-7 {
                continue;
            }
            if i == 0 {
                let nv = t.norm2(x);
                if nv <= bound {
                    out.push((x.clone(), nv));
                }
            } else {
                rec(i - 1, n, q, rest, x, t, bound, out);
            }
        }
        x[i] = 0;
    }
    rec(n - 1, n, &q, bound as f64 + 1e-6, &mut x, t, bound, &mut out);
    out.sort();
    out
}

/// Whether two positive definite matrices are GL_n(Z)-equivalent; returns
/// U with U^t A U = B.
pub fn isometry(a: &HalfIntegralMatrix, b: &HalfIntegralMatrix) -> Option<Vec<Vec<i64>>> {
    let n = a.n();
    if b.n() != n || a.det2() != b.det2() {
        return None;
    }
    let maxd = (0..n).map(|i| b.two_t[i][i]).max()?;
    let sv = short_vectors(a, maxd);
    let cands: Vec<Vec<&Vec<i64>>> = (0..n).map(|i| sv.iter().filter(|(_, nv)| *nv == b.two_t[i][i]).map(|(x, _)| x).collect()).collect();
    let bil = |x: &[i64], y: &[i64]| -> i64 {
        let mut s = 0;
        for i in 0..n {
            for j in 0..n {
                s += x[i] * a.two_t[i][j] * y[j];
            }
        }
        s
    };
    fn go<'a>(
        k: usize,
        n: usize,
        cands: &[Vec<&'a Vec<i64>>],
        chosen: &mut Vec<&'a Vec<i64>>,
        b: &HalfIntegralMatrix,
        bil: &dyn Fn(&[i64], &[i64]) -> i64,
    ) -> bool {
        if k == n {
            return true;
        }
        for c in &cands[k] {
            if (0..k).all(|j| bil(chosen[j], c) == b.two_t[j][k]) {
                chosen.push(c);
                if go(k + 1, n, cands, chosen, b, bil) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    if go(0, n, &cands, &mut chosen, b, &bil) {
        // columns of U are the chosen vectors
        Some((0..n).map(|i| (0..n).map(|j| chosen[j][i]).collect()).collect())
    } else {
        None
    }
}

/// GL2(Z)-reduced form of a positive definite binary T = [[a, b/2], [b/2, c]]:
/// 0 ≤ b ≤ a ≤ c. Returns the reduced matrix.
pub fn reduce2(t: &HalfIntegralMatrix) -> HalfIntegralMatrix {
    assert_eq!(t.n(), 2, "reduce2 on a non-binary matrix");
    let (mut a, mut b, mut c) = (t.two_t[0][0] / 2, t.two_t[0][1], t.two_t[1][1] / 2);
    loop {
        if a > c {
            std::mem::swap(&mut a, &mut c);
        }
        if b.abs() > a {
            // x → x − k y
            let k = (b as f64 / (2 * a) as f64).round() as i64;
            c = c - k * b + k * k * a;
            b -= 2 * k * a;
            continue;
        }
        if a > c {
            continue;
        }
        break;
    }
    HalfIntegralMatrix { n: 2, two_t: vec![vec![2 * a, b.abs()], vec![b.abs(), 2 * c]] }
}

/// Invariant fingerprint used to bucket candidates before isometry tests.
fn fingerprint(t: &HalfIntegralMatrix) -> (i64, Vec<usize>) {
    const NORM_BOUND: i64 = 8;
    let sv = short_vectors(t, NORM_BOUND);
    let mut counts = vec![0usize; (NORM_BOUND / 2 + 1) as usize];
    for (_, nv) in &sv {
        counts[(*nv / 2) as usize] += 1;
    }
    (t.det2(), counts)
}

/// Upper bounds used by [`enumerate_pd`] (Minkowski: Π (2T)_ii ≤ γ_n det 2T).
const MINKOWSKI: [f64; 5] = [1.0, 1.0, 4.0 / 3.0, 2.0, 4.0];
const MAX_DET2: [i64; 5] = [0, 1_000_000, 100_000, 2_000, 400];

/// Reduced candidates of degree n with det(2T) satisfying `keep`, before
/// deduplication (every class has a representative among them).
fn candidates(n: usize, max_det2: i64, keep: &dyn Fn(i64) -> bool) -> Vec<HalfIntegralMatrix> {
    let mut out = Vec::new();
    let mut m = vec![vec![0i64; n]; n];
    let limit = MINKOWSKI[n] * max_det2 as f64;
    fn diag_rec(i: usize, n: usize, prod: f64, limit: f64, m: &mut Vec<Vec<i64>>, max_det2: i64, keep: &dyn Fn(i64) -> bool, out: &mut Vec<HalfIntegralMatrix>) {
        if i == n {
            off_rec(0, 1, n, m, max_det2, keep, out);
            return;
        }
        let start = if i == 0 { 2 } else { m[i - 1][i - 1] };
        let mut d = start;
        // remaining diagonals are ≥ d, so prod·d^{n−i} ≤ limit
        while prod * (d as f64).powi((n - i) as i32) <= limit + 1e-9 {
            m[i][i] = d;
            diag_rec(i + 1, n, prod * d as f64, limit, m, max_det2, keep, out);
            d += 2;
        }
        m[i][i] = 0;
    }
    fn off_rec(i: usize, j: usize, n: usize, m: &mut Vec<Vec<i64>>, max_det2: i64, keep: &dyn Fn(i64) -> bool, out: &mut Vec<HalfIntegralMatrix>) {
        if i + 1 >= n {
            let t = HalfIntegralMatrix { n, two_t: m.clone() };
            let d = t.det2();
            if d > 0 && d <= max_det2 && keep(d) && t.is_positive_definite() {
                out.push(t);
            }
            return;
        }
        let (ni, nj) = if j + 1 < n { (i, j + 1) } else { (i + 1, i + 2) };
        let bound = m[i][i] / 2;
        // sign normalization: first row nonnegative
        let lo = if i == 0 { 0 } else { -bound };
        for v in lo..=bound {
            m[i][j] = v;
            m[j][i] = v;
            // the leading minor of size i+2 is complete once m[i][i+1] is set
            if j == i + 1 {
                let sub: Vec<Vec<i64>> = m[..=j].iter().map(|r| r[..=j].to_vec()).collect();
                if det_i64(&sub) <= 0 {
                    continue;
                }
            }
            off_rec(ni, nj, n, m, max_det2, keep, out);
        }
        m[i][j] = 0;
        m[j][i] = 0;
    }
    diag_rec(0, n, 1.0, limit, &mut m, max_det2, keep, &mut out);
    out
}

/// One representative per GL_n(Z)-class, removing duplicates by fingerprint
/// and explicit isometry search. Representatives are the first candidates in
/// the canonical (det, 2T lexicographic) order.
fn dedup_classes(mut cands: Vec<HalfIntegralMatrix>) -> Vec<HalfIntegralMatrix> {
    cands.sort_by(|a, b| (a.det2(), &a.two_t).cmp(&(b.det2(), &b.two_t)));
    let mut buckets: BTreeMap<(i64, Vec<usize>), Vec<HalfIntegralMatrix>> = BTreeMap::new();
    let mut out = Vec::new();
    for t in cands {
        let fp = fingerprint(&t);
        let bucket = buckets.entry(fp).or_default();
        if bucket.iter().any(|r| isometry(r, &t).is_some()) {
            continue;
        }
        bucket.push(t.clone());
        out.push(t);
    }
    out
}

/// Classes of positive definite half-integral matrices of degree n ≤ 4 with
/// det(2T) ≤ max_det2. For n = 1 the bound applies to t itself.
pub fn enumerate_pd(n: usize, max_det2: i64) -> Result<Vec<HalfIntegralMatrix>> {
    if n == 0 || n > 4 {
        return Err(Error::pre(format!("enumerate_pd supports 1 <= n <= 4, got {n}")));
    }
    if max_det2 > MAX_DET2[n] {
        return Err(Error::Resource(format!("det bound {max_det2} above the limit {} for n = {n}", MAX_DET2[n])));
    }
    if max_det2 <= 0 {
        return Ok(vec![]);
    }
    if n == 1 {
        return Ok((1..=max_det2).map(|t| HalfIntegralMatrix::diag(&[t])).collect());
    }
    if n == 2 {
        // reduced binary forms are already unique
        let mut out = Vec::new();
        for a in 1.. {
            if 3 * a * a > max_det2 {
                break;
            }
            for b in 0..=a {
                let mut c = a;
                while 4 * a * c - b * b <= max_det2 {
                    if 4 * a * c - b * b > 0 {
                        out.push(HalfIntegralMatrix { n: 2, two_t: vec![vec![2 * a, b], vec![b, 2 * c]] });
                    }
                    c += 1;
                }
            }
        }
        out.sort_by(|a, b| (a.det2(), &a.two_t).cmp(&(b.det2(), &b.two_t)));
        return Ok(out);
    }
    Ok(dedup_classes(candidates(n, max_det2, &|_| true)))
}

/// Classes of degree n ≤ 4 with det(2T) exactly `det2`.
pub fn classes_with_det(n: usize, det2: i64) -> Result<Vec<HalfIntegralMatrix>> {
    if n == 2 {
        return Ok(enumerate_pd(2, det2)?.into_iter().filter(|t| t.det2() == det2).collect());
    }
    if n == 0 || n > 4 {
        return Err(Error::pre(format!("classes_with_det supports n <= 4, got {n}")));
    }
    if n == 1 {
        return Ok(if det2 % 2 == 0 && det2 > 0 { vec![HalfIntegralMatrix::diag(&[det2 / 2])] } else { vec![] });
    }
    if det2 > MAX_DET2[n] {
        return Err(Error::Resource(format!("det {det2} above the limit for n = {n}")));
    }
    Ok(dedup_classes(candidates(n, det2, &|d| d == det2)))
}

/// The E8 root lattice Gram matrix (2T), det 1.
pub fn e8() -> HalfIntegralMatrix {
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)];
    let mut m = vec![vec![0i64; 8]; 8];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in edges {
        m[a][b] = -1;
        m[b][a] = -1;
    }
    HalfIntegralMatrix { n: 8, two_t: m }
}

/// The 4×4 matrix A′ with det(2A′) = 4 (the D4 root lattice).
pub fn a_prime() -> HalfIntegralMatrix {
    HalfIntegralMatrix { n: 4, two_t: vec![vec![2, 0, 0, 1], vec![0, 2, 0, 1], vec![0, 0, 2, 1], vec![1, 1, 1, 2]] }
}

fn root_lattice_e6() -> HalfIntegralMatrix {
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)];
    let mut m = vec![vec![0i64; 6]; 6];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in edges {
        m[a][b] = -1;
        m[b][a] = -1;
    }
    HalfIntegralMatrix { n: 6, two_t: m }
}

fn root_lattice_d6() -> HalfIntegralMatrix {
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5)];
    let mut m = vec![vec![0i64; 6]; 6];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in edges {
        m[a][b] = -1;
        m[b][a] = -1;
    }
    HalfIntegralMatrix { n: 6, two_t: m }
}

/// Target of [`construct_lattice`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeMode {
    /// det(2T) = |d| with d fundamental, (−1)^{n/2} d > 0.
    Fundamental(i64),
    /// det(2T) = 1, n ≡ 0 mod 8.
    Unimodular,
    /// det(2T) = q², d_T = 1, 𝔣_T = q, n ≡ 4 mod 8.
    QSquared(u64),
}

fn e8_power(r: usize) -> Option<HalfIntegralMatrix> {
    (0..r).map(|_| e8()).reduce(|a, b| a.direct_sum(&b))
}

fn pad_with_e8(core: HalfIntegralMatrix, n: usize) -> HalfIntegralMatrix {
    match e8_power((n - core.n()) / 8) {
        Some(e) => core.direct_sum(&e),
        None => core,
    }
}

/// Positive definite half-integral T of degree n meeting the target,
/// verified by recomputation. Small blocks come from bounded class
/// enumeration, the rest from E8 seeds.
pub fn construct_lattice(n: usize, mode: LatticeMode) -> Result<HalfIntegralMatrix> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::pre(format!("construct_lattice needs even n >= 2, got {n}")));
    }
    let t = match mode {
        LatticeMode::Unimodular => {
            if !n.is_multiple_of(8) {
                return Err(Error::pre("unimodular even lattices need n ≡ 0 mod 8"));
            }
            e8_power(n / 8).expect("n >= 8")
        }
        LatticeMode::QSquared(q) => {
            if n % 8 != 4 {
                return Err(Error::pre("q-squared mode needs n ≡ 4 mod 8"));
            }
            let q = q as i64;
            let core = if q == 2 {
                a_prime()
            } else {
                classes_with_det(4, q * q)?
                    .into_iter()
                    .find(|t| disc_split(t).map(|s| s.d == 1 && s.f == q).unwrap_or(false))
                    .ok_or_else(|| Error::SearchExhausted(format!("no quaternary lattice with det(2T) = {}", q * q)))?
            };
            pad_with_e8(core, n)
        }
        LatticeMode::Fundamental(d) => {
            let sign = if (n / 2).is_multiple_of(2) { 1 } else { -1 };
            if sign * d <= 0 || !is_fundamental_discriminant(d) {
                return Err(Error::pre(format!("d = {d} must be fundamental with (−1)^(n/2) d > 0")));
            }
            let det2 = d.abs();
            let small = n % 8;
            let core = match small {
                0 if det2 == 1 => None,
                0 => return Err(Error::SearchExhausted(format!("no seed for n ≡ 0 mod 8 with det {det2}"))),
                6 => {
                    let seeds = [root_lattice_e6(), root_lattice_d6()];
                    Some(seeds.into_iter().find(|t| t.det2() == det2).ok_or_else(|| {
                        Error::SearchExhausted(format!("no degree-6 seed with det(2T) = {det2}"))
                    })?)
                }
                s => Some(
                    classes_with_det(s, det2)?
                        .into_iter()
                        .next()
                        .ok_or_else(|| Error::SearchExhausted(format!("no degree-{s} lattice with det(2T) = {det2}")))?,
                ),
            };
            match core {
                Some(c) => pad_with_e8(c, n),
                None => e8_power(n / 8).expect("n >= 8"),
            }
        }
    };
    // self-check
    if t.n() != n || !t.is_positive_definite() {
        return Err(Error::inconsistent("constructed lattice failed verification"));
    }
    let ds = disc_split(&t)?;
    let ok = match mode {
        LatticeMode::Unimodular => ds.det2 == 1,
        LatticeMode::QSquared(q) => ds.d == 1 && ds.f == q as i64,
        LatticeMode::Fundamental(d) => ds.d == d && ds.f == 1,
    };
    if !ok {
        return Err(Error::inconsistent(format!("constructed lattice has invariants {ds:?}")));
    }
    Ok(t)
}

/// Hasse invariant of T itself at a place (convention of [`hasse_invariant`]).
pub fn hasse_of(t: &HalfIntegralMatrix, v: Place) -> Result<i32> {
    hasse_invariant(&diagonalize(t)?, v)
}
