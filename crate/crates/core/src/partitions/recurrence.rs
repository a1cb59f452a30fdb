//! Streaming coefficients of `H_{k,m}(x)` from its functional equation.
//!
//! `H_{k,m}(x) = (1-x)^{-km} prod_{i>=1} (1-x^{k^i})^{-m(k-1)}` satisfies
//!
//! ```text
//! (1-x)^{km} H(x) = (1-x^k)^m H(x^k)
//! ```
//!
//! for every integer `m`. Comparing coefficients gives a recurrence of
//! length `O(k|m|)` per term with leading coefficient 1, so it can be run
//! in any [`CoeffRing`]. For `m > 0` the `(1-x)^{km}` side is dense; for
//! `m < 0` the equation is rearranged to `(1-x^k)^{|m|} H(x) =
//! (1-x)^{k|m|} H(x^k)` so both sides stay short.

use num_bigint::BigInt;

use crate::arith::binomial_row;
use crate::ring::CoeffRing;

/// Incrementally computes `S_{k,m}(0), S_{k,m}(1), ...` in a ring.
pub struct HkmRecurrence<'r, R: CoeffRing> {
    ring: &'r R,
    k: usize,
    m: i64,
    /// Signed binomials `(-1)^i C(km, i)` (m > 0) or `(-1)^i C(|m|, i)` (m < 0).
    near: Vec<R::Elem>,
    /// Signed binomials `(-1)^i C(m, i)` (m > 0) or `(-1)^i C(k|m|, i)` (m < 0).
    far: Vec<R::Elem>,
    values: Vec<R::Elem>,
}

fn signed_row<R: CoeffRing>(ring: &R, n: u64) -> Vec<R::Elem> {
    binomial_row(n)
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let c: BigInt = if i % 2 == 0 { c } else { -c };
            ring.from_bigint(&c)
        })
        .collect()
}

impl<'r, R: CoeffRing> HkmRecurrence<'r, R> {
    /// Panics when `k < 2` or `m == 0`; callers validate parameters first.
    pub fn new(ring: &'r R, k: usize, m: i64) -> Self {
        assert!(k >= 2 && m != 0, "invalid parameters k={k}, m={m}");
        let a = m.unsigned_abs();
        let (near, far) = if m > 0 {
            (signed_row(ring, k as u64 * a), signed_row(ring, a))
        } else {
            (signed_row(ring, a), signed_row(ring, k as u64 * a))
        };
        HkmRecurrence { ring, k, m, near, far, values: vec![ring.one()] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[R::Elem] {
        &self.values
    }

    pub fn into_values(self) -> Vec<R::Elem> {
        self.values
    }

    /// Computes the next coefficient and returns a reference to it.
    pub fn advance(&mut self) -> &R::Elem {
        let n = self.values.len();
        let ring = self.ring;
        let k = self.k;
        let h = &self.values;
        let mut acc = ring.zero();
        if self.m > 0 {
            // h(n) = -sum_{i>=1} near_i h(n-i) + [k|n] sum_i far_i h(n/k - i)
            let top = (self.near.len() - 1).min(n);
            for i in 1..=top {
                ring.mul_add(&mut acc, &self.near[i], &h[n - i]);
            }
            acc = ring.neg(&acc);
            if n.is_multiple_of(k) {
                let q = n / k;
                let top = (self.far.len() - 1).min(q);
                for i in 0..=top {
                    ring.mul_add(&mut acc, &self.far[i], &h[q - i]);
                }
            }
        } else {
            // h(n) = -sum_{i>=1} near_i h(n-ki) + sum_j far_{n-kj} h(j)
            let mut lhs = ring.zero();
            let top = (self.near.len() - 1).min(n / k);
            for i in 1..=top {
                ring.mul_add(&mut lhs, &self.near[i], &h[n - k * i]);
            }
            let width = self.far.len() - 1;
            let hi = n / k;
            let lo = n.saturating_sub(width).div_ceil(k);
            for j in lo..=hi {
                ring.mul_add(&mut acc, &self.far[n - k * j], &h[j]);
            }
            ring.sub_assign(&mut acc, &lhs);
        }
        self.values.push(acc);
        self.values.last().expect("just pushed")
    }

    /// Advances until coefficients `0..=order` are available.
    pub fn extend_to(&mut self, order: usize) {
        while self.values.len() <= order {
            self.advance();
        }
    }
}

/// Coefficients `S_{k,m}(0..=order)` in the given ring.
pub fn hkm_coefficients<R: CoeffRing>(ring: &R, k: usize, m: i64, order: usize) -> Vec<R::Elem> {
    let mut rec = HkmRecurrence::new(ring, k, m);
    rec.extend_to(order);
    rec.into_values()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, Modular, Wrapping64};
    use crate::series::TruncatedSeries;

    fn via_series(k: usize, m: i64, order: usize) -> Vec<BigInt> {
        let head = TruncatedSeries::from_poly(&[1, -1], order).pow(-m).unwrap();
        let tail = TruncatedSeries::infinite_product(k, -m * (k as i64 - 1), order).unwrap();
        head.mul(&tail).unwrap().into_coeffs()
    }

    #[test]
    fn matches_series_engine_both_signs() {
        for k in [2usize, 3, 4, 5] {
            for m in [-5i64, -3, -2, -1, 1, 2, 3, 7] {
                let fast = hkm_coefficients(&Integers, k, m, 120);
                assert_eq!(fast, via_series(k, m, 120), "k={k} m={m}");
            }
        }
    }

    #[test]
    fn residues_agree_with_exact_values() {
        let exact = hkm_coefficients(&Integers, 3, 4, 300);
        let modular = hkm_coefficients(&Modular::new(3u64.pow(7)), 3, 4, 300);
        let wrapping = hkm_coefficients(&Wrapping64, 3, 4, 300);
        for n in 0..=300 {
            assert_eq!(Modular::new(3u64.pow(7)).from_bigint(&exact[n]), modular[n]);
            assert_eq!(Wrapping64.from_bigint(&exact[n]), wrapping[n]);
        }
        let exact = hkm_coefficients(&Integers, 2, -7, 300);
        let wrapping = hkm_coefficients(&Wrapping64, 2, -7, 300);
        for n in 0..=300 {
            assert_eq!(Wrapping64.from_bigint(&exact[n]), wrapping[n]);
        }
    }
}
