//! Word-size modular arithmetic and dense polynomials over GF(p).
//!
//! Polynomials are coefficient vectors, lowest degree first, with no
//! trailing zeros (the zero polynomial is the empty vector).

use crate::error::{Error, Result};

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse via Fermat; `a` must be nonzero mod the prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n == b {
            return true;
        }
        if n % b == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            sub_mod(x, y, p)
        })
        .collect();
    trim(out)
}

pub fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    let pp = p as u128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x as u128 * y as u128) % pp;
        }
    }
    trim(acc.into_iter().map(|v| v as u64).collect())
}

/// Remainder of `a` modulo `f` (any nonzero `f`).
pub fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], p);
    while r.len() > df {
        let shift = r.len() - 1 - df;
        let c = mul_mod(*r.last().unwrap(), lead_inv, p);
        for (k, &fk) in f.iter().enumerate() {
            r[shift + k] = sub_mod(r[shift + k], mul_mod(c, fk, p), p);
        }
        r = trim(r);
    }
    r
}

pub fn poly_divrem(a: &[u64], f: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = trim(a.to_vec());
    let df = f.len() - 1;
    if r.len() <= df {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - df];
    let lead_inv = inv_mod(f[df], p);
    while r.len() > df {
        let shift = r.len() - 1 - df;
        let c = mul_mod(*r.last().unwrap(), lead_inv, p);
        q[shift] = c;
        for (k, &fk) in f.iter().enumerate() {
            r[shift + k] = sub_mod(r[shift + k], mul_mod(c, fk, p), p);
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    poly_rem(&poly_mul(a, b, p), f, p)
}

pub fn poly_powmod(base: &[u64], mut exp: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, f, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = poly_mulmod(&acc, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        exp >>= 1;
    }
    acc
}

pub fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Inverse of `a` modulo the irreducible `f`, by the extended Euclidean algorithm.
pub fn poly_invmod(a: &[u64], f: &[u64], p: u64) -> Option<Vec<u64>> {
    let (mut r0, mut r1) = (f.to_vec(), poly_rem(a, f, p));
    let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
    if r1.is_empty() {
        return None;
    }
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1, p);
        let s = poly_sub(&s0, &poly_mul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod(r0[0], p);
    Some(poly_rem(&s0.iter().map(|&v| mul_mod(v, c, p)).collect::<Vec<_>>(), f, p))
}

/// Rabin's test: monic `f` of degree n is irreducible iff x^(p^n) = x mod f and
/// gcd(x^(p^(n/r)) - x, f) = 1 for every prime r dividing n.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // frob[k] = x^(p^k) mod f
    let mut frob = Vec::with_capacity(n + 1);
    frob.push(poly_rem(&x, f, p));
    for k in 0..n {
        let next = poly_powmod(&frob[k], p, f, p);
        frob.push(next);
    }
    if frob[n] != frob[0] {
        return false;
    }
    for r in prime_factors(n as u64) {
        let k = n / r as usize;
        let g = poly_gcd(f, &poly_sub(&frob[k], &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `n` over GF(p), where
/// polynomials compare by their coefficients from degree n-1 down to 0.
pub fn find_irreducible(p: u64, n: usize) -> Result<Vec<u64>> {
    if !is_prime(p) || p >= 1 << 63 {
        return Err(Error::NotPrime(p));
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!("degree {n} < 2")));
    }
    let mut coeffs = vec![0u64; n];
    loop {
        if coeffs[0] != 0 {
            let mut f = coeffs.clone();
            f.push(1);
            if is_irreducible(&f, p) {
                return Ok(f);
            }
        }
        // increment as a base-p number with coeffs[0] least significant
        let mut k = 0;
        loop {
            if k == n {
                unreachable!("irreducible polynomials exist in every degree");
            }
            coeffs[k] += 1;
            if coeffs[k] < p {
                break;
            }
            coeffs[k] = 0;
            k += 1;
        }
    }
}
