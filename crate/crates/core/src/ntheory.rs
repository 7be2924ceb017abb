//! Integer helpers: primality, factorization by trial division, modular
//! inverses and valuations. Everything here works on machine integers; the
//! largest values that reach it are group orders below 2^64.

use num_integer::Integer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization as `(prime, multiplicity)` pairs in ascending order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (prime, _)| acc / prime * (prime - 1))
}

/// Inverse of `a` modulo `n`, if `gcd(a, n) = 1`. The result lies in `[0, n)`.
pub fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 0 {
        return None;
    }
    let a = (a % n) as i128;
    let n_i = n as i128;
    let eg = a.extended_gcd(&n_i);
    if eg.gcd != 1 {
        return None;
    }
    Some(eg.x.rem_euclid(n_i) as u64)
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Exact power with overflow detection.
pub fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    base.checked_pow(exp)
}

/// Exponent of `prime` in the factorization of `n` (`n > 0`).
pub fn valuation(mut n: u64, prime: u64) -> u32 {
    debug_assert!(n > 0 && prime > 1);
    let mut v = 0;
    while n.is_multiple_of(prime) {
        n /= prime;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_up_to_50() {
        let primes: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
        );
    }

    #[test]
    fn factorization_multiplies_back() {
        for n in [1u64, 2, 80, 624, 390_624, 5_764_800, 13_841_287_200] {
            let f = factorize(n);
            let prod: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }
    }

    #[test]
    fn totient_of_field_orders() {
        // 624 = 2^4 * 3 * 13
        assert_eq!(totient(624), 192);
        assert_eq!(totient(80), 32);
    }

    #[test]
    fn inverse_of_niho_exponent() {
        assert_eq!(mod_inverse(505, 624), Some(409));
        assert_eq!(mod_inverse(26, 624), None);
    }

    #[test]
    fn valuation_counts_threes() {
        assert_eq!(valuation(6, 3), 1);
        assert_eq!(valuation(126, 3), 2);
        assert_eq!(valuation(10, 3), 0);
    }
}
