//! Factorization of integer polynomials over Q: modular factorization, Hensel
//! lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::arith::primes_up_to;
use super::modp::{factor as factor_mod_p, PolyFp};
use super::poly::QPoly;

type Z = Vec<BigInt>;

fn trim(mut a: Z) -> Z {
    while a.last().is_some_and(|x| x.is_zero()) {
        a.pop();
    }
    a
}

fn zmod(a: &[BigInt], m: &BigInt) -> Z {
    trim(a.iter().map(|x| x.mod_floor(m)).collect())
}

fn zsym(a: &[BigInt], m: &BigInt) -> Z {
    let half = m / 2;
    trim(
        a.iter()
            .map(|x| {
                let r = x.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> Z {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect())
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> Z {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()).collect())
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> Z {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(r)
}

/// Division by a monic polynomial modulo m.
fn zdivrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Z, Z) {
    let db = b.len() - 1;
    let mut r = zmod(a, m);
    if r.len() <= db {
        return (vec![], r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].mod_floor(m);
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] = (&r[i + j] - &c * bj).mod_floor(m);
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn to_z(f: &PolyFp) -> Z {
    f.c.iter().map(|&x| BigInt::from(x)).collect()
}

/// One quadratic Hensel step: f ≡ g·h (mod m), s·g + t·h ≡ 1 (mod m), h monic.
#[allow(clippy::too_many_arguments)]
fn hensel_step(f: &Z, g: &Z, h: &Z, s: &Z, t: &Z, m: &BigInt) -> (Z, Z, Z, Z) {
    let m2 = m * m;
    let e = zmod(&zsub(f, &zmul(g, h)), &m2);
    let (q, r) = zdivrem_monic(&zmul(s, &e), h, &m2);
    let g2 = zmod(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), &m2);
    let h2 = zmod(&zadd(h, &r), &m2);
    let b = zmod(&zsub(&zadd(&zmul(s, &g2), &zmul(t, &h2)), &[BigInt::one()]), &m2);
    let (c, d) = zdivrem_monic(&zmul(s, &b), &h2, &m2);
    let s2 = zmod(&zsub(s, &d), &m2);
    let t2 = zmod(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g2)), &m2);
    (g2, h2, s2, t2)
}

fn exact_div(a: &Z, b: &Z) -> Option<Z> {
    // division over Z; None unless b divides a exactly
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r = a.clone();
    if r.len() < b.len() {
        return if r.is_empty() { Some(vec![]) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + db].div_rem(&lb);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    if r.iter().all(|x| x.is_zero()) {
        Some(trim(q))
    } else {
        None
    }
}

fn primitive(a: Z) -> Z {
    let mut g = BigInt::zero();
    for x in &a {
        g = g.gcd(x);
    }
    let s = if a.last().is_some_and(|x| x.is_negative()) { -g.clone() } else { g.clone() };
    if g.is_zero() {
        return a;
    }
    a.into_iter().map(|x| x / &s).collect()
}

/// Irreducible factors over Z of a primitive squarefree integer polynomial
/// with positive leading coefficient.
pub fn factor_squarefree_z(f: &Z) -> Vec<Z> {
    let f = primitive(trim(f.clone()));
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f];
    }
    let lc = f.last().unwrap().clone();
    // choose p with f mod p squarefree of full degree
    let fq = QPoly::from_bigints(&f);
    let mut chosen = None;
    for p in primes_up_to(10_000).into_iter().skip(1) {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = PolyFp::from_bigints(&f, p);
        if fp.gcd(&fp.derivative()).degree() == 0 {
            chosen = Some(p);
            break;
        }
    }
    let p = chosen.expect("no good prime for factorization (input not squarefree?)");
    let _ = fq;
    let fp = PolyFp::from_bigints(&f, p);
    let facs: Vec<PolyFp> = factor_mod_p(&fp).into_iter().map(|(g, _)| g).collect();
    if facs.len() == 1 {
        return vec![f];
    }
    // Mignotte-type coefficient bound
    let norm2: BigInt = f.iter().map(|x| x * x).sum();
    let bound = (norm2.sqrt() + 1) * BigInt::from(2).pow(n as u32) * lc.abs() * 2;
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    let mut exps = 1u32;
    while m <= bound {
        m = &m * &m;
        exps *= 2;
    }
    let _ = exps;
    // linear lifting: peel off one monic factor at a time
    let mut lifted: Vec<Z> = Vec::new();
    let mut cur = f.clone();
    for i in 0..facs.len() - 1 {
        let h0 = &facs[i];
        let mut rest = PolyFp::new(p, vec![lc.mod_floor(&pb).to_u64().unwrap()]);
        for g in &facs[i + 1..] {
            rest = rest.mul(g);
        }
        let (_, s0, t0) = rest.xgcd(h0);
        let (mut g, mut h, mut s, mut t) = (to_z(&rest), to_z(h0), to_z(&s0), to_z(&t0));
        let mut mm = pb.clone();
        while mm < m {
            let fc = zmod(&cur, &(&mm * &mm));
            let r = hensel_step(&fc, &g, &h, &s, &t, &mm);
            g = r.0;
            h = r.1;
            s = r.2;
            t = r.3;
            mm = &mm * &mm;
        }
        lifted.push(h);
        cur = g;
    }
    // last factor: cur ≡ lc·h_last, make it monic
    let inv_lc = lc.modinv(&m).expect("lc invertible mod p^a");
    lifted.push(zmod(&cur.iter().map(|x| x * &inv_lc).collect::<Vec<_>>(), &m));

    // recombination
    let mut result = Vec::new();
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut fcur = f.clone();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut found = false;
        let combos = combinations(remaining.len(), size);
        for combo in combos {
            let lcc = fcur.last().unwrap().clone();
            let mut prod = vec![lcc.clone()];
            for &ci in &combo {
                prod = zmod(&zmul(&prod, &lifted[remaining[ci]]), &m);
            }
            let cand = primitive(zsym(&prod, &m));
            if let Some(q) = exact_div(&fcur, &cand) {
                result.push(cand);
                fcur = primitive(q);
                let used: Vec<usize> = combo.iter().map(|&ci| remaining[ci]).collect();
                remaining.retain(|x| !used.contains(x));
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    result.push(fcur);
    result
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Monic irreducible factors over Q with multiplicities, sorted by degree then
/// coefficients.
pub fn factor_over_q(f: &QPoly) -> Vec<(QPoly, u32)> {
    let mut out: Vec<(QPoly, u32)> = Vec::new();
    let f = f.monic();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    // Yun's squarefree decomposition
    let fd = f.derivative();
    let b = f.gcd(&fd);
    let mut c = f.divrem(&b).0;
    let mut d = fd.divrem(&b).0.sub(&c.derivative());
    let mut mult = 1u32;
    while c.degree().unwrap_or(0) > 0 {
        let a = c.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            for fac in factor_squarefree_z(&a.primitive_part()) {
                out.push((QPoly::from_bigints(&fac).monic(), mult));
            }
        }
        c = c.divrem(&a).0;
        d = d.divrem(&a).0.sub(&c.derivative());
        mult += 1;
    }
    out.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs().to_vec()).cmp(&(b.0.degree(), b.0.coeffs().to_vec()))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_product_of_known_polys() {
        let a = QPoly::from_ints(&[-2235350016, -39960, 1]);
        let b = QPoly::from_ints(&[-2, 0, 1]);
        let c = QPoly::from_ints(&[1, 1]);
        let f = a.mul(&b).mul(&c).mul(&c);
        let fs = factor_over_q(&f);
        assert_eq!(fs.len(), 3);
        assert!(fs.contains(&(a, 1)));
        assert!(fs.contains(&(b, 1)));
        assert!(fs.contains(&(c, 2)));
    }

    #[test]
    fn irreducible_stays_whole() {
        // x^4 + 1 splits mod every prime but is irreducible over Q
        let f = QPoly::from_ints(&[1, 0, 0, 0, 1]);
        let fs = factor_over_q(&f);
        assert_eq!(fs, vec![(f, 1)]);
    }

    #[test]
    fn non_monic_factors() {
        let a = QPoly::from_ints(&[1, 3]);
        let b = QPoly::from_ints(&[-5, 0, 2]);
        let f = a.mul(&b);
        let fs = factor_over_q(&f);
        assert_eq!(fs.len(), 2);
        assert!(fs.contains(&(a.monic(), 1)));
        assert!(fs.contains(&(b.monic(), 1)));
    }
}
