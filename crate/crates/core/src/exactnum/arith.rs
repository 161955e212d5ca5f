//! Elementary integer arithmetic: primality, factorization, arithmetic
//! functions and quadratic symbols.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Strong probable-prime test with fixed bases; exact below 3.3e24 and
/// overwhelmingly reliable beyond.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n.is_even() {
        return false;
    }
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'outer: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return vec![];
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(i as u64))
        .collect()
}

fn pollard_rho(n: &BigUint) -> BigUint {
    // Brent's variant with a deterministic sequence of constants.
    let one = BigUint::one();
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0u64;
            while k < r && g == one {
                ys = y.clone();
                let m = 128.min(r - k);
                for _ in 0..m {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
    unreachable!()
}

fn factor_into(n: BigUint, out: &mut BTreeMap<BigUint, u32>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = pollard_rho(&n);
    let other = &n / &d;
    factor_into(d, out);
    factor_into(other, out);
}

/// Prime factorization of |n| (n ≠ 0), as an ordered map prime → exponent.
pub fn factorize(n: &BigInt) -> BTreeMap<BigUint, u32> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut m = n.magnitude().clone();
    let mut out = BTreeMap::new();
    for p in primes_up_to(10_000) {
        let pb = BigUint::from(p);
        if m < &pb * &pb {
            break;
        }
        let mut e = 0;
        while (&m % &pb).is_zero() {
            m /= &pb;
            e += 1;
        }
        if e > 0 {
            out.insert(pb, e);
        }
    }
    factor_into(m, &mut out);
    out
}

pub fn factorize_u64(n: u64) -> Vec<(u64, u32)> {
    factorize(&BigInt::from(n))
        .into_iter()
        .map(|(p, e)| (p.to_u64().unwrap(), e))
        .collect()
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

pub fn valuation_i64(n: i64, p: u64) -> u32 {
    valuation(&BigInt::from(n), p)
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factorize_u64(n) {
        let cur = ds.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            ds.extend(cur.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds
}

/// Divisor power sum σ_k(n) as an exact integer.
pub fn sigma(k: u32, n: u64) -> BigInt {
    divisors(n).into_iter().map(|d| BigInt::from(d).pow(k)).sum()
}

pub fn moebius(n: u64) -> i64 {
    let mut r = 1;
    for (_, e) in factorize_u64(n) {
        if e > 1 {
            return 0;
        }
        r = -r;
    }
    r
}

/// Kronecker symbol (a/n) for any integer a and n.
pub fn kronecker(a: i64, n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a as i128;
    let mut n = n as i128;
    let mut result = 1i64;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let mut v = 0;
    while n % 2 == 0 {
        n /= 2;
        v += 1;
    }
    if v > 0 {
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        if v % 2 == 1 && (r == 3 || r == 5) {
            result = -result;
        }
    }
    // Jacobi symbol (a/n) for odd positive n.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Squarefree kernel with sign: n = s · m² with s squarefree.
pub fn squarefree_decomposition(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_zero());
    let mut s = BigInt::one();
    let mut m = BigInt::one();
    for (p, e) in factorize(n) {
        let p = BigInt::from_biguint(Sign::Plus, p);
        if e % 2 == 1 {
            s *= &p;
        }
        m *= p.pow(e / 2);
    }
    if n.is_negative() {
        s = -s;
    }
    (s, m)
}

/// Unique decomposition n = d · f² with d a fundamental discriminant or 1.
/// Requires n ≡ 0, 1 mod 4.
pub fn fundamental_decomposition(n: &BigInt) -> Option<(BigInt, BigInt)> {
    if n.is_zero() {
        return None;
    }
    let four = BigInt::from(4);
    if !(n.mod_floor(&four).is_zero() || n.mod_floor(&four).is_one()) {
        return None;
    }
    let (s, m) = squarefree_decomposition(n);
    if s.mod_floor(&four).is_one() {
        Some((s, m))
    } else {
        // d = 4s, f = m/2
        if !m.is_even() {
            return None;
        }
        Some((s * 4, m / 2))
    }
}

pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 1 {
        return true;
    }
    if d == 0 {
        return false;
    }
    match fundamental_decomposition(&BigInt::from(d)) {
        Some((dd, f)) => f.is_one() && dd == BigInt::from(d),
        None => false,
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Integer square root of a nonnegative integer.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative());
    n.sqrt()
}

pub fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// Square root of a modulo an odd prime p (Tonelli-Shanks); None for non-residues.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

pub fn inv_mod_u64(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub fn pow_mod_u64(b: u64, e: u64, m: u64) -> u64 {
    pow_mod(b, e, m)
}

/// Renders a factorization as `2^7 * 3^2 * 211`.
pub fn format_factorization(f: &BTreeMap<BigUint, i64>) -> String {
    if f.is_empty() {
        return "1".to_string();
    }
    f.iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
        .collect::<Vec<_>>()
        .join(" * ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_matches_legendre_for_odd_primes() {
        for p in [3i64, 5, 7, 11, 13, 211] {
            for a in 1..p {
                let euler = pow_mod(a as u64, (p as u64 - 1) / 2, p as u64);
                let expected = if euler == 1 { 1 } else { -1 };
                assert_eq!(kronecker(a, p), expected, "({a}/{p})");
            }
        }
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(17, 2), 1);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(12, 2), 0);
    }

    #[test]
    fn factorization_of_t2_discriminant_weight_32() {
        let n = BigInt::from(10538201664u64);
        let f = factorize(&n);
        let flat: Vec<(u64, u32)> = f.iter().map(|(p, e)| (p.to_u64().unwrap(), *e)).collect();
        assert_eq!(flat, vec![(2, 6), (3, 2), (67, 1), (273067, 1)]);
    }

    #[test]
    fn factorization_handles_large_semiprimes() {
        let a = BigInt::from(1_000_000_007u64);
        let b = BigInt::from(998_244_353u64);
        let f = factorize(&(&a * &b * &a));
        assert_eq!(f.len(), 2);
        assert_eq!(f[&a.magnitude().clone()], 2);
    }

    #[test]
    fn fundamental_decompositions() {
        let check = |n: i64, d: i64, f: i64| {
            let (dd, ff) = fundamental_decomposition(&BigInt::from(n)).unwrap();
            assert_eq!((dd, ff), (BigInt::from(d), BigInt::from(f)), "n = {n}");
        };
        check(-3, -3, 1);
        check(4, 1, 2);
        check(9, 1, 3);
        check(-4, -4, 1);
        check(-12, -3, 2);
        check(-16, -4, 2);
        check(8, 8, 1);
        check(32, 8, 2);
        check(-63, -7, 3);
        assert!(fundamental_decomposition(&BigInt::from(7)).is_none());
    }

    #[test]
    fn sqrt_mod_roundtrip() {
        for p in [3u64, 5, 13, 17, 211, 273067] {
            for a in 1..40u64 {
                if let Some(r) = sqrt_mod(a, p) {
                    assert_eq!(mul_mod(r, r, p), a % p);
                }
            }
        }
    }
}
