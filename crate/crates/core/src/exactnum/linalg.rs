//! Dense linear algebra over exact fields (rationals, number fields, F_p) and
//! over the integers (Hermite and Smith normal forms).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::{fp_inv, Fp};
use super::poly::QPoly;
use super::Rational;

/// Exact field element. Constructors take `&self` so that elements carrying a
/// parent (number field, modulus) can produce compatible constants.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_s(&self) -> bool;
    fn add_s(&self, o: &Self) -> Self;
    fn sub_s(&self, o: &Self) -> Self;
    fn mul_s(&self, o: &Self) -> Self;
    fn neg_s(&self) -> Self;
    /// Multiplicative inverse; callers guarantee `self` is nonzero.
    fn inv_s(&self) -> Self;
    fn rational_like(&self, q: &Rational) -> Self;
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_s(&self) -> bool {
        self.is_zero()
    }
    fn add_s(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_s(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_s(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_s(&self) -> Self {
        -self
    }
    fn inv_s(&self) -> Self {
        self.recip()
    }
    fn rational_like(&self, q: &Rational) -> Self {
        q.clone()
    }
}

impl Scalar for Fp {
    fn zero_like(&self) -> Self {
        Fp { v: 0, p: self.p }
    }
    fn one_like(&self) -> Self {
        Fp { v: 1 % self.p, p: self.p }
    }
    fn is_zero_s(&self) -> bool {
        self.v == 0
    }
    fn add_s(&self, o: &Self) -> Self {
        Fp { v: ((self.v as u128 + o.v as u128) % self.p as u128) as u64, p: self.p }
    }
    fn sub_s(&self, o: &Self) -> Self {
        Fp { v: ((self.v as u128 + self.p as u128 - o.v as u128) % self.p as u128) as u64, p: self.p }
    }
    fn mul_s(&self, o: &Self) -> Self {
        Fp { v: ((self.v as u128 * o.v as u128) % self.p as u128) as u64, p: self.p }
    }
    fn neg_s(&self) -> Self {
        Fp { v: (self.p - self.v) % self.p, p: self.p }
    }
    fn inv_s(&self) -> Self {
        Fp { v: fp_inv(self.v, self.p), p: self.p }
    }
    fn rational_like(&self, q: &Rational) -> Self {
        let n = Fp::from_bigint(q.numer(), self.p);
        let d = Fp::from_bigint(q.denom(), self.p);
        n.mul_s(&d.inv_s())
    }
}

pub type Matrix<T> = Vec<Vec<T>>;

pub fn zeros<T: Scalar>(rows: usize, cols: usize, sample: &T) -> Matrix<T> {
    vec![vec![sample.zero_like(); cols]; rows]
}

pub fn identity<T: Scalar>(n: usize, sample: &T) -> Matrix<T> {
    let mut m = zeros(n, n, sample);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = sample.one_like();
    }
    m
}

pub fn transpose<T: Clone>(m: &Matrix<T>) -> Matrix<T> {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mat_mul<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Matrix<T> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = Vec::with_capacity(n);
    for row in a {
        let mut r = Vec::with_capacity(m);
        for j in 0..m {
            let mut acc = row[0].zero_like();
            for t in 0..k {
                if !row[t].is_zero_s() && !b[t][j].is_zero_s() {
                    acc = acc.add_s(&row[t].mul_s(&b[t][j]));
                }
            }
            r.push(acc);
        }
        out.push(r);
    }
    out
}

pub fn mat_vec<T: Scalar>(a: &Matrix<T>, v: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| {
            let mut acc = v[0].zero_like();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero_s() && !y.is_zero_s() {
                    acc = acc.add_s(&x.mul_s(y));
                }
            }
            acc
        })
        .collect()
}

pub fn vec_mat<T: Scalar>(v: &[T], a: &Matrix<T>) -> Vec<T> {
    let cols = a[0].len();
    (0..cols)
        .map(|j| {
            let mut acc = v[0].zero_like();
            for (i, x) in v.iter().enumerate() {
                if !x.is_zero_s() && !a[i][j].is_zero_s() {
                    acc = acc.add_s(&x.mul_s(&a[i][j]));
                }
            }
            acc
        })
        .collect()
}

/// In-place reduced row echelon form; returns pivot columns.
pub fn rref<T: Scalar>(m: &mut Matrix<T>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero_s()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv_s();
        for x in m[r].iter_mut() {
            if !x.is_zero_s() {
                *x = x.mul_s(&inv);
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero_s() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero_s() {
                    *x = x.sub_s(&f.mul_s(y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<T: Scalar>(m: &Matrix<T>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of the right null space {v : M v = 0}.
pub fn kernel<T: Scalar>(m: &Matrix<T>, ncols: usize, sample: &T) -> Vec<Vec<T>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![sample.zero_like(); ncols];
            v[f] = sample.one_like();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = a[r][f].neg_s();
            }
            v
        })
        .collect()
}

/// Basis of the left null space {v : v M = 0}.
pub fn left_kernel<T: Scalar>(m: &Matrix<T>, sample: &T) -> Vec<Vec<T>> {
    kernel(&transpose(m), m.len(), sample)
}

pub fn inverse<T: Scalar>(m: &Matrix<T>) -> Option<Matrix<T>> {
    let n = m.len();
    let sample = &m[0][0];
    let mut aug: Matrix<T> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { sample.one_like() } else { sample.zero_like() }));
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves M x = b when the solution exists and is unique (M may have more
/// rows than columns).
pub fn solve<T: Scalar>(m: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    let n = m.first().map_or(0, |r| r.len());
    let mut aug: Matrix<T> = m.iter().zip(b).map(|(row, x)| {
        let mut r = row.clone();
        r.push(x.clone());
        r
    }).collect();
    let piv = rref(&mut aug);
    if piv.len() != n || piv.iter().any(|&c| c >= n) {
        return None;
    }
    Some(aug.into_iter().take(n).map(|r| r[n].clone()).collect())
}

pub fn determinant<T: Scalar>(m: &Matrix<T>) -> T {
    let n = m.len();
    let sample = &m[0][0];
    let mut a = m.clone();
    let mut det = sample.one_like();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !a[i][c].is_zero_s()) else {
            return sample.zero_like();
        };
        if pr != c {
            a.swap(pr, c);
            det = det.neg_s();
        }
        det = det.mul_s(&a[c][c]);
        let inv = a[c][c].inv_s();
        for i in c + 1..n {
            if a[i][c].is_zero_s() {
                continue;
            }
            let f = a[i][c].mul_s(&inv);
            for j in c..n {
                let t = f.mul_s(&a[c][j]);
                a[i][j] = a[i][j].sub_s(&t);
            }
        }
    }
    det
}

/// Characteristic polynomial det(x - M) of a square matrix over any exact
/// field, returned as coefficients from the constant term up (monic). Uses
/// reduction to Hessenberg form.
pub fn charpoly_generic<T: Scalar>(m: &Matrix<T>) -> Vec<T> {
    let n = m.len();
    if n == 0 {
        return vec![];
    }
    let sample = m[0][0].clone();
    let mut h = m.clone();
    for c in 0..n.saturating_sub(2) {
        let Some(pr) = (c + 1..n).find(|&i| !h[i][c].is_zero_s()) else {
            continue;
        };
        if pr != c + 1 {
            h.swap(pr, c + 1);
            for row in h.iter_mut() {
                row.swap(pr, c + 1);
            }
        }
        let inv = h[c + 1][c].inv_s();
        for i in c + 2..n {
            if h[i][c].is_zero_s() {
                continue;
            }
            let f = h[i][c].mul_s(&inv);
            for j in 0..n {
                let t = f.mul_s(&h[c + 1][j]);
                h[i][j] = h[i][j].sub_s(&t);
            }
            for row in h.iter_mut() {
                let t = f.mul_s(&row[i]);
                row[c + 1] = row[c + 1].add_s(&t);
            }
        }
    }
    // p_k(x) = (x - h_kk) p_{k-1} - Σ_{i<k} h_ik (Π_{j=i+1}^{k} h_{j,j-1}) p_{i-1}
    let mut polys: Vec<Vec<T>> = vec![vec![sample.one_like()]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![sample.zero_like(); k + 2];
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] = next[i + 1].add_s(c);
            next[i] = next[i].sub_s(&h[k][k].mul_s(c));
        }
        let mut prod = sample.one_like();
        for i in (0..k).rev() {
            prod = prod.mul_s(&h[i + 1][i]);
            if prod.is_zero_s() {
                break;
            }
            let coef = prod.mul_s(&h[i][k]);
            for (t, c) in polys[i].iter().enumerate() {
                next[t] = next[t].sub_s(&coef.mul_s(c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

pub fn charpoly(m: &Matrix<Rational>) -> QPoly {
    QPoly::new(charpoly_generic(m))
}

pub fn to_rational_matrix(m: &[Vec<BigInt>]) -> Matrix<Rational> {
    m.iter().map(|r| r.iter().map(|x| Rational::from(x.clone())).collect()).collect()
}

/// Row Hermite normal form of an integer matrix (nonzero rows only, upper
/// triangular with positive pivots and reduced entries above pivots).
pub fn hnf(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        // gcd elimination on column c among rows r..
        loop {
            let nz: Vec<usize> = (r..a.len()).filter(|&i| !a[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| a[i][c].abs()).unwrap();
            a.swap(r, piv);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let pr = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            let pr = a[r].clone();
            for i in 0..r {
                let q = a[i][c].div_floor(&pr[c]);
                if !q.is_zero() {
                    for (x, y) in a[i].iter_mut().zip(&pr) {
                        *x -= &q * y;
                    }
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

/// Absolute determinant of the lattice spanned by integer rows of full rank n
/// in Z^n; zero if the rows do not have full rank.
pub fn lattice_det(rows: &[Vec<BigInt>]) -> BigInt {
    let h = hnf(rows);
    let n = rows.first().map_or(0, |r| r.len());
    if h.len() < n {
        return BigInt::zero();
    }
    let mut d = BigInt::one();
    for (i, row) in h.iter().enumerate() {
        d *= &row[i];
    }
    d.abs()
}

/// Smith normal form of a square integer matrix: returns (U, S, V) with
/// U·M·V = S diagonal, U and V unimodular, s_1 | s_2 | ... and s_i ≥ 0.
pub fn smith(m: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let n = m.len();
    let cols = if n == 0 { 0 } else { m[0].len() };
    let ident = |k: usize| -> Vec<Vec<BigInt>> {
        (0..k).map(|i| (0..k).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
    };
    let mut s: Vec<Vec<BigInt>> = m.to_vec();
    let mut u = ident(n);
    let mut v = ident(cols);
    let t = n.min(cols);
    for k in 0..t {
        loop {
            // pivot = smallest nonzero entry in the lower-right block
            let mut best: Option<(usize, usize)> = None;
            for i in k..n {
                for j in k..cols {
                    if !s[i][j].is_zero() && best.is_none_or(|(bi, bj)| s[i][j].abs() < s[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return (u, s, v);
            };
            s.swap(k, pi);
            u.swap(k, pi);
            for row in s.iter_mut() {
                row.swap(k, pj);
            }
            for row in v.iter_mut() {
                row.swap(k, pj);
            }
            let mut clean = true;
            for i in k + 1..n {
                let q = s[i][k].div_floor(&s[k][k]);
                if !q.is_zero() {
                    let (sk, uk) = (s[k].clone(), u[k].clone());
                    for (x, y) in s[i].iter_mut().zip(&sk) {
                        *x -= &q * y;
                    }
                    for (x, y) in u[i].iter_mut().zip(&uk) {
                        *x -= &q * y;
                    }
                }
                if !s[i][k].is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                let q = s[k][j].div_floor(&s[k][k]);
                if !q.is_zero() {
                    for row in s.iter_mut() {
                        let t = &q * &row[k];
                        row[j] -= t;
                    }
                    for row in v.iter_mut() {
                        let t = &q * &row[k];
                        row[j] -= t;
                    }
                }
                if !s[k][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility condition
            let mut fixed = true;
            'outer: for i in k + 1..n {
                for j in k + 1..cols {
                    if !(&s[i][j] % &s[k][k]).is_zero() {
                        let si = s[i].clone();
                        let ui = u[i].clone();
                        for (x, y) in s[k].iter_mut().zip(&si) {
                            *x += y;
                        }
                        for (x, y) in u[k].iter_mut().zip(&ui) {
                            *x += y;
                        }
                        fixed = false;
                        break 'outer;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if s[k][k].is_negative() {
            for x in s[k].iter_mut() {
                *x = -x.clone();
            }
            for x in u[k].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    (u, s, v)
}

/// Elementary divisors of an integer matrix.
pub fn elementary_divisors(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let (_, s, _) = smith(m);
    (0..s.len().min(s.first().map_or(0, |r| r.len()))).map(|i| s[i][i].clone()).collect()
}
