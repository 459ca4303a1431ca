//! Dense polynomials over a prime field, stored low-degree first.
//!
//! Only the handful of routines needed for field construction and
//! inversion live here; they operate on plain `u32` coefficient slices.

pub(crate) fn trim(p: &mut Vec<u32>) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub(crate) fn inv_mod(a: u32, q: u32) -> u32 {
    debug_assert!(a % q != 0);
    pow_mod(a, q - 2, q)
}

pub(crate) fn pow_mod(base: u32, mut exp: u32, q: u32) -> u32 {
    let q64 = q as u64;
    let mut acc = 1u64 % q64;
    let mut b = base as u64 % q64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % q64;
        }
        b = b * b % q64;
        exp >>= 1;
    }
    acc as u32
}

pub(crate) fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn sub(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
    let len = a.len().max(b.len());
    let mut out: Vec<u32> = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + q - y) % q
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let q64 = q as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % q64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
    trim(&mut out);
    out
}

/// Returns `(quotient, remainder)`; `b` must be nonzero.
pub(crate) fn divrem(a: &[u32], b: &[u32], q: u32) -> (Vec<u32>, Vec<u32>) {
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let q64 = q as u64;
    let lead_inv = inv_mod(*b.last().unwrap(), q) as u64;
    let mut quot = vec![0u32; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = (*r.last().unwrap() as u64 * lead_inv % q64) as u32;
        quot[shift] = c;
        for (j, &bj) in b.iter().enumerate() {
            let t = (c as u64 * bj as u64 % q64) as u32;
            r[shift + j] = (r[shift + j] + q - t) % q;
        }
        trim(&mut r);
    }
    trim(&mut quot);
    (quot, r)
}

pub(crate) fn rem(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
    divrem(a, b, q).1
}

pub(crate) fn gcd(a: &[u32], b: &[u32], q: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, q);
        x = y;
        y = r;
    }
    x
}

/// Inverse of `a` modulo `f`, or `None` when they share a factor.
pub(crate) fn inv_mod_poly(a: &[u32], f: &[u32], q: u32) -> Option<Vec<u32>> {
    // extended Euclid tracking only the coefficient of `a`
    let mut r0 = f.to_vec();
    let mut r1 = rem(a, f, q);
    let mut s0: Vec<u32> = Vec::new();
    let mut s1: Vec<u32> = vec![1];
    trim(&mut r0);
    while !r1.is_empty() {
        let (quot, r2) = divrem(&r0, &r1, q);
        let s2 = sub(&s0, &mul(&quot, &s1, q), q);
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod(r0[0], q) as u64;
    let mut out: Vec<u32> = s0
        .iter()
        .map(|&v| (v as u64 * c % q as u64) as u32)
        .collect();
    trim(&mut out);
    Some(out)
}

fn mulmod(a: &[u32], b: &[u32], f: &[u32], q: u32) -> Vec<u32> {
    rem(&mul(a, b, q), f, q)
}

fn powmod(base: &[u32], mut exp: u64, f: &[u32], q: u32) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = rem(base, f, q);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(&acc, &b, f, q);
        }
        b = mulmod(&b, &b, f, q);
        exp >>= 1;
    }
    acc
}

/// `x^(q^j) mod f`
fn frobenius_of_x(f: &[u32], q: u32, j: usize) -> Vec<u32> {
    let mut t = rem(&[0, 1], f, q);
    for _ in 0..j {
        t = powmod(&t, q as u64, f, q);
    }
    t
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test for a monic `f` of degree `m ≥ 1`.
pub(crate) fn is_irreducible(f: &[u32], q: u32) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    // a root in F_q means a linear factor
    for a in 0..q {
        let mut acc = 0u64;
        for &c in f.iter().rev() {
            acc = (acc * a as u64 + c as u64) % q as u64;
        }
        if acc == 0 {
            return false;
        }
    }
    let x = vec![0u32, 1];
    if frobenius_of_x(f, q, m) != rem(&x, f, q) {
        return false;
    }
    for p in prime_factors(m) {
        let h = sub(&frobenius_of_x(f, q, m / p), &x, q);
        if gcd(f, &h, q).len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trips() {
        let f = vec![1, 0, 0, 1, 1]; // x^4 + x^3 + 1 over F_2
        for bits in 1u32..16 {
            let a: Vec<u32> = (0..4).map(|i| (bits >> i) & 1).collect();
            let inv = inv_mod_poly(&a, &f, 2).unwrap();
            let prod = rem(&mul(&a, &inv, 2), &f, 2);
            assert_eq!(prod, vec![1]);
        }
    }

    #[test]
    fn rabin_rejects_products() {
        // (x^2+x+1)^2 = x^4 + x^2 + 1 over F_2
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[0, 1, 1], 2));
    }
}
