//! Small integer helpers shared by the other modules.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(n, k)` as an exact integer; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for j in 0..k {
        c = c * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    c
}

/// Row `C(n, 0), ..., C(n, n)`.
pub fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for j in 0..n {
        c = c * BigInt::from(n - j) / BigInt::from(j + 1);
        row.push(c.clone());
    }
    row
}

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

/// Inverse of `a` modulo a prime `p`, for `p ∤ a`.
pub fn inverse_mod_prime(a: u64, p: u64) -> u64 {
    let a = a % p;
    assert!(a != 0, "{a} is not invertible mod {p}");
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut acc = 1u128 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 5), BigInt::from(252));
        assert_eq!(binomial(3, 7), BigInt::zero());
        assert_eq!(binomial_row(4), [1, 4, 6, 4, 1].map(BigInt::from).to_vec());
    }

    #[test]
    fn primes_and_inverses() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        for p in [3u64, 5, 7, 11] {
            for a in 1..p {
                assert_eq!(a * inverse_mod_prime(a, p) % p, 1);
            }
        }
    }
}
