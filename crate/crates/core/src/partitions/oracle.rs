//! Direct counting of colored `k`-ary representations.
//!
//! A part of size `k^i` used `j` times with `c` available colors can be
//! colored in `C(j + c - 1, j)` ways (multisets of colors). The count for
//! `n` is a knapsack over the parts `1, k, k^2, ... <= n`. No series
//! arithmetic is involved.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::binomial;

fn part_sizes(k: u64, n: usize) -> Vec<usize> {
    let mut parts = vec![1usize];
    let mut size = k as usize;
    while size <= n {
        parts.push(size);
        size = match size.checked_mul(k as usize) {
            Some(s) => s,
            None => break,
        };
    }
    parts
}

/// Knapsack over powers of `k` where part `k^i` has `colors(i)` colors.
fn knapsack(k: u64, order: usize, colors: impl Fn(usize) -> u64) -> Vec<BigInt> {
    let mut ways = vec![BigInt::zero(); order + 1];
    ways[0] = BigInt::from(1);
    for (i, part) in part_sizes(k, order).into_iter().enumerate() {
        let c = colors(i);
        let weights: Vec<BigInt> =
            (0..=order / part).map(|j| binomial(j as u64 + c - 1, j as u64)).collect();
        let mut next = vec![BigInt::zero(); order + 1];
        for (total, slot) in next.iter_mut().enumerate() {
            let mut acc = BigInt::zero();
            for (j, w) in weights.iter().enumerate().take(total / part + 1) {
                let rest = &ways[total - j * part];
                if !rest.is_zero() {
                    acc += w * rest;
                }
            }
            *slot = acc;
        }
        ways = next;
    }
    ways
}

/// Number of `m`-colored `k`-ary representations of `n`: the part 1 takes
/// one of `km` colors and every larger part one of `(k-1)m` colors.
pub fn colored_count_oracle(k: u64, m: u64, n: usize) -> BigInt {
    colored_count_oracle_prefix(k, m, n).pop().expect("nonempty")
}

/// [`colored_count_oracle`] for every `n <= order` at once.
pub fn colored_count_oracle_prefix(k: u64, m: u64, order: usize) -> Vec<BigInt> {
    assert!(k >= 2 && m >= 1, "invalid parameters k={k}, m={m}");
    knapsack(k, order, |i| if i == 0 { k * m } else { (k - 1) * m })
}

/// Every part takes one of `m` colors: `A_{k,m}(n)`.
pub fn uniform_colored_count(k: u64, m: u64, n: usize) -> BigInt {
    knapsack(k, n, |_| m).pop().expect("nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_cases() {
        assert_eq!(colored_count_oracle(2, 1, 0), BigInt::from(1));
        assert_eq!(colored_count_oracle(2, 1, 1), BigInt::from(2));
        // c_1(2) = b(4) = 4
        assert_eq!(colored_count_oracle(2, 1, 2), BigInt::from(4));
        assert_eq!(uniform_colored_count(2, 1, 4), BigInt::from(4));
    }

    #[test]
    fn first_coefficient_is_km() {
        for k in 2..7 {
            for m in 1..5 {
                assert_eq!(colored_count_oracle(k, m, 1), BigInt::from(k * m));
            }
        }
    }
}
