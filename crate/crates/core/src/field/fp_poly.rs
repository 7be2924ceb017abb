//! Dense polynomials over F_p as little-endian coefficient vectors. Only what
//! field construction and inversion need: multiplication modulo a monic
//! polynomial, gcd, and the extended Euclidean inverse.

pub(crate) fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn inv_mod_p(a: u32, p: u32) -> u32 {
    crate::ntheory::mod_pow(a as u64, p as u64 - 2, p as u64) as u32
}

/// Remainder of `a` modulo `b` (b nonzero, trimmed).
pub(crate) fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p) as u64;
    let p64 = p as u64;
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] as u64 * lead_inv % p64;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let idx = dr - db + j;
                r[idx] = ((r[idx] as u64 + (p64 - c) * bj as u64) % p64) as u32;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let mut v: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
    trim(&mut v);
    v
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut v: Vec<u32> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut v);
    v
}

pub(crate) fn mul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    rem(&mul(a, b, p), f, p)
}

pub(crate) fn pow_mod(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Ben-Or test: a monic `f` of degree m is irreducible iff
/// gcd(x^(p^i) - x, f) = 1 for every i in 1..=m/2.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    let mut power = x.clone();
    for _ in 1..=m / 2 {
        power = pow_mod(&power, p as u64, f, p);
        let diff = sub(&power, &x, p);
        let g = gcd(f, &diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Inverse of `a` modulo the irreducible `f`, by the extended Euclidean
/// algorithm. `a` must be nonzero modulo `f`.
pub(crate) fn inv_mod(a: &[u32], f: &[u32], p: u32) -> Option<Vec<u32>> {
    let mut r0 = f.to_vec();
    let mut r1 = rem(a, f, p);
    if r1.is_empty() {
        return None;
    }
    let mut s0: Vec<u32> = Vec::new();
    let mut s1: Vec<u32> = vec![1];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    // r0 is a nonzero constant when gcd is 1
    if r0.len() != 1 {
        return None;
    }
    let c = inv_mod_p(r0[0], p) as u64;
    let out: Vec<u32> = s0
        .iter()
        .map(|&v| (v as u64 * c % p as u64) as u32)
        .collect();
    Some(rem(&out, f, p))
}

fn divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u32; r.len() - db];
    let lead_inv = inv_mod_p(b[db], p) as u64;
    let p64 = p as u64;
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] as u64 * lead_inv % p64;
        q[dr - db] = c as u32;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let idx = dr - db + j;
                r[idx] = ((r[idx] as u64 + (p64 - c) * bj as u64) % p64) as u32;
            }
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}
