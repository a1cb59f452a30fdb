//! Integer sequences attached to colored `k`-ary partitions.
//!
//! Most sequences here are produced along two independent routes: the
//! series engine in [`crate::series`] and a dedicated recurrence. The
//! recurrences deliberately do not share code with the series route so that
//! agreement between them is meaningful. A third, purely combinatorial
//! route is [`colored_count_oracle`], which counts colored representations
//! directly.

mod oracle;
pub mod recurrence;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{binomial, binomial_row, is_prime};
use crate::error::{Error, Result};
use crate::ring::Integers;
use crate::series::TruncatedSeries;

pub use oracle::{colored_count_oracle, colored_count_oracle_prefix, uniform_colored_count};
pub use recurrence::{hkm_coefficients, HkmRecurrence};

/// Which sequence a [`SequencePrefix`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SequenceKind {
    /// `b(n)`, binary partitions.
    BinaryPartitions,
    /// `t_n`, the Prouhet–Thue–Morse signs.
    Ptm,
    /// `S_{k,m}(n)`; `c_m` for `k = 2`, `d_m` for odd prime `k`.
    Skm,
    /// `A_{p,m}(n)`, `m`-colored `p`-ary partitions.
    Apm,
    /// `D_p(n)`, coefficients of `prod (1 - x^{p^n})^{p-1}`.
    DeltaP,
    /// `t_m(n)`, the `m`-fold Cauchy convolution of the PTM sequence.
    PtmConvolution,
    /// `U_m(n)`, partial sums of `c_m`.
    PartialSums,
    /// `ϑ_m(n) = d_m(pn) - d_m(n)`.
    Vartheta,
    /// `y_p(n)`, the residue of `d_m(n) / pm` mod `p`.
    Yp,
    /// `z_p(n) = p - y_p(n)`.
    Zp,
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SequenceKind::BinaryPartitions => "b",
            SequenceKind::Ptm => "t",
            SequenceKind::Skm => "S",
            SequenceKind::Apm => "A",
            SequenceKind::DeltaP => "D",
            SequenceKind::PtmConvolution => "tm",
            SequenceKind::PartialSums => "U",
            SequenceKind::Vartheta => "vartheta",
            SequenceKind::Yp => "y",
            SequenceKind::Zp => "z",
        };
        f.write_str(name)
    }
}

/// Parameters a sequence was generated with; unused ones are `None`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct SeqParams {
    pub k: Option<u64>,
    pub m: Option<i64>,
    pub p: Option<u64>,
}

/// Values `a(0), ..., a(N)` of a named sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequencePrefix {
    pub kind: SequenceKind,
    pub params: SeqParams,
    pub values: Vec<BigInt>,
}

impl SequencePrefix {
    fn new(kind: SequenceKind, params: SeqParams, values: Vec<BigInt>) -> Self {
        SequencePrefix { kind, params, values }
    }

    /// Largest index held.
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.values.get(n)
    }
}

impl std::ops::Index<usize> for SequencePrefix {
    type Output = BigInt;

    fn index(&self, n: usize) -> &BigInt {
        &self.values[n]
    }
}

pub(crate) fn require_odd_prime(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::usage(format!("p must be an odd prime, got {p}")));
    }
    Ok(())
}

fn require_base(k: u64) -> Result<()> {
    if k < 2 {
        return Err(Error::usage(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

fn require_positive(m: i64) -> Result<()> {
    if m < 1 {
        return Err(Error::usage(format!("m must be positive, got {m}")));
    }
    Ok(())
}

/// `b(0..=order)` from `b(2n) = b(2n-1) + b(n)`, `b(2n+1) = b(2n)`.
pub fn binary_partitions(order: usize) -> SequencePrefix {
    let mut b: Vec<BigInt> = Vec::with_capacity(order + 1);
    b.push(BigInt::one());
    for n in 1..=order {
        let next = if n % 2 == 0 { &b[n - 1] + &b[n / 2] } else { b[n - 1].clone() };
        b.push(next);
    }
    SequencePrefix::new(SequenceKind::BinaryPartitions, SeqParams::default(), b)
}

/// PTM signs `t_0..=t_order` as `±1` integers.
pub fn ptm(order: usize) -> SequencePrefix {
    let values = ptm_signs(order).into_iter().map(BigInt::from).collect();
    SequencePrefix::new(SequenceKind::Ptm, SeqParams::default(), values)
}

/// PTM signs from `t_0 = 1`, `t_{2n} = t_n`, `t_{2n+1} = -t_n`.
pub fn ptm_signs(order: usize) -> Vec<i8> {
    let mut t = Vec::with_capacity(order + 1);
    t.push(1i8);
    for n in 1..=order {
        let half = t[n / 2];
        t.push(if n % 2 == 0 { half } else { -half });
    }
    t
}

/// `S_{k,m}(0..=order)` through the series engine:
/// `(1-x)^{-m} * prod_i (1 - x^{k^i})^{-m(k-1)}`.
pub fn s_km(k: u64, m: i64, order: usize) -> Result<SequencePrefix> {
    require_base(k)?;
    if m == 0 {
        return Err(Error::usage("m must be nonzero"));
    }
    let head = TruncatedSeries::from_poly(&[1, -1], order).pow(-m)?;
    let tail = TruncatedSeries::infinite_product(k as usize, -m * (k as i64 - 1), order)?;
    let values = head.mul(&tail)?.into_coeffs();
    Ok(SequencePrefix::new(
        SequenceKind::Skm,
        SeqParams { k: Some(k), m: Some(m), p: None },
        values,
    ))
}

/// `S_{k,m}(0..=order)` through the streaming functional-equation
/// recurrence. Much faster than [`s_km`] for long prefixes; the two are
/// cross-checked in tests.
pub fn s_km_fast(k: u64, m: i64, order: usize) -> Result<SequencePrefix> {
    require_base(k)?;
    if m == 0 {
        return Err(Error::usage("m must be nonzero"));
    }
    let values = hkm_coefficients(&Integers, k as usize, m, order);
    Ok(SequencePrefix::new(
        SequenceKind::Skm,
        SeqParams { k: Some(k), m: Some(m), p: None },
        values,
    ))
}

/// `d_m(0..=order)` for `m >= 1` straight from the recurrence
///
/// ```text
/// d_m(n) = -sum_{i=1}^{min(pm,n)} (-1)^i C(pm,i) d_m(n-i)
///          + [p | n] sum_{i=0}^{min(m,n/p)} (-1)^i C(m,i) d_m(n/p - i)
/// ```
pub fn d_m_by_recurrence(p: u64, m: i64, order: usize) -> Result<SequencePrefix> {
    require_odd_prime(p)?;
    require_positive(m)?;
    let pm = p * m as u64;
    let outer = binomial_row(pm);
    let inner = binomial_row(m as u64);
    let p = p as usize;
    let mut d: Vec<BigInt> = Vec::with_capacity(order + 1);
    d.push(BigInt::one());
    for n in 1..=order {
        let mut value = BigInt::zero();
        for i in 1..=(pm as usize).min(n) {
            let term = &outer[i] * &d[n - i];
            if i % 2 == 0 {
                value -= term;
            } else {
                value += term;
            }
        }
        if n % p == 0 {
            let q = n / p;
            for i in 0..=(m as usize).min(q) {
                let term = &inner[i] * &d[q - i];
                if i % 2 == 0 {
                    value += term;
                } else {
                    value -= term;
                }
            }
        }
        d.push(value);
    }
    Ok(SequencePrefix::new(
        SequenceKind::Skm,
        SeqParams { k: Some(p as u64), m: Some(m), p: Some(p as u64) },
        d,
    ))
}

/// Sign of the multiplier in `c_{±2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// `c_{±2}(0..=order)` from `c(0) = 1`, `c(1) = ±4` and
///
/// ```text
/// c(2n)   = ±2 c(2n-1) - c(2n-2) + c(n) + c(n-1)
/// c(2n+1) = ±2 c(2n)   - c(2n-1) ± 2 c(n)
/// ```
pub fn c_pm2_by_recurrence(sign: Sign, order: usize) -> SequencePrefix {
    let s = BigInt::from(sign.as_i64());
    let two_s = BigInt::from(2 * sign.as_i64());
    let mut c: Vec<BigInt> = Vec::with_capacity(order + 1);
    c.push(BigInt::one());
    if order >= 1 {
        c.push(BigInt::from(4) * &s);
    }
    for idx in 2..=order {
        let n = idx / 2;
        let next = if idx % 2 == 0 {
            &two_s * &c[idx - 1] - &c[idx - 2] + &c[n] + &c[n - 1]
        } else {
            &two_s * &c[idx - 1] - &c[idx - 2] + &two_s * &c[n]
        };
        c.push(next);
    }
    c.truncate(order + 1);
    SequencePrefix::new(
        SequenceKind::Skm,
        SeqParams { k: Some(2), m: Some(2 * sign.as_i64()), p: None },
        c,
    )
}

/// `A_{p,m}(0..=order)`: coefficients of `prod_i (1 - x^{p^i})^{-m}`.
pub fn a_pm(p: u64, m: i64, order: usize) -> Result<SequencePrefix> {
    require_odd_prime(p)?;
    require_positive(m)?;
    let values = TruncatedSeries::infinite_product(p as usize, -m, order)?.into_coeffs();
    Ok(SequencePrefix::new(
        SequenceKind::Apm,
        SeqParams { k: Some(p), m: Some(m), p: Some(p) },
        values,
    ))
}

/// `D_p(0..=order)`: coefficients of `prod_i (1 - x^{p^i})^{p-1}`.
pub fn d_p_cap(p: u64, order: usize) -> Result<SequencePrefix> {
    require_odd_prime(p)?;
    let values = TruncatedSeries::infinite_product(p as usize, p as i64 - 1, order)?.into_coeffs();
    Ok(SequencePrefix::new(
        SequenceKind::DeltaP,
        SeqParams { k: Some(p), m: None, p: Some(p) },
        values,
    ))
}

/// `d_{-1}(0..=order)` as `d_{-1}(0) = 1`, `d_{-1}(n) = D_p(n) - D_p(n-1)`.
pub fn d_minus1(p: u64, order: usize) -> Result<SequencePrefix> {
    let cap = d_p_cap(p, order)?;
    let mut values = Vec::with_capacity(order + 1);
    values.push(BigInt::one());
    for n in 1..=order {
        values.push(&cap.values[n] - &cap.values[n - 1]);
    }
    Ok(SequencePrefix::new(
        SequenceKind::Skm,
        SeqParams { k: Some(p), m: Some(-1), p: Some(p) },
        values,
    ))
}

/// `t_m(0..=order)`: coefficients of `T(x)^m` with `T(x) = prod (1 - x^{2^i})`.
pub fn t_m_convolution(m: i64, order: usize) -> Result<SequencePrefix> {
    require_positive(m)?;
    let t = TruncatedSeries::infinite_product(2, 1, order)?;
    let values = t.pow(m)?.into_coeffs();
    Ok(SequencePrefix::new(
        SequenceKind::PtmConvolution,
        SeqParams { k: Some(2), m: Some(m), p: None },
        values,
    ))
}

/// `U_m(0..=order) = sum_{i<=n} c_m(i)`.
pub fn u_m_partial_sums(m: i64, order: usize) -> Result<SequencePrefix> {
    require_positive(m)?;
    let c = s_km_fast(2, m, order)?;
    let mut acc = BigInt::zero();
    let values = c
        .values
        .iter()
        .map(|v| {
            acc += v;
            acc.clone()
        })
        .collect();
    Ok(SequencePrefix::new(
        SequenceKind::PartialSums,
        SeqParams { k: Some(2), m: Some(m), p: None },
        values,
    ))
}

/// `ϑ_m(0..=order) = d_m(pn) - d_m(n)`, slicing a single prefix of `d_m`
/// computed to order `p * order`.
pub fn vartheta(p: u64, m: i64, order: usize) -> Result<SequencePrefix> {
    require_odd_prime(p)?;
    require_positive(m)?;
    let d = s_km_fast(p, m, p as usize * order)?;
    Ok(vartheta_from(&d.values, p as usize, m, order))
}

pub(crate) fn vartheta_from(d: &[BigInt], p: usize, m: i64, order: usize) -> SequencePrefix {
    let values = (0..=order).map(|n| &d[p * n] - &d[n]).collect();
    SequencePrefix::new(
        SequenceKind::Vartheta,
        SeqParams { k: Some(p as u64), m: Some(m), p: Some(p as u64) },
        values,
    )
}

/// `C(n, k)` re-exported for callers that build identities on top of the
/// sequences.
pub fn binom(n: u64, k: u64) -> BigInt {
    binomial(n, k)
}

/// Memoizes sequence prefixes by `(kind, params, order)`.
///
/// Requests for a different order recompute from scratch. The map is behind
/// a mutex so one cache can serve a parallel grid.
#[derive(Default, Clone)]
pub struct SequenceCache {
    inner: Arc<Mutex<HashMap<(SequenceKind, SeqParams, usize), Arc<SequencePrefix>>>>,
}

impl SequenceCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the cached prefix or computes and stores it.
    pub fn get_or_compute(
        &self,
        kind: SequenceKind,
        params: SeqParams,
        order: usize,
        compute: impl FnOnce() -> Result<SequencePrefix>,
    ) -> Result<Arc<SequencePrefix>> {
        let key = (kind, params, order);
        if let Some(hit) = self.inner.lock().expect("cache lock").get(&key) {
            return Ok(Arc::clone(hit));
        }
        let value = Arc::new(compute()?);
        self.inner.lock().expect("cache lock").entry(key).or_insert_with(|| Arc::clone(&value));
        Ok(value)
    }

    /// `S_{k,m}(0..=order)` via [`s_km_fast`], memoized.
    pub fn s_km(&self, k: u64, m: i64, order: usize) -> Result<Arc<SequencePrefix>> {
        let params = SeqParams { k: Some(k), m: Some(m), p: None };
        self.get_or_compute(SequenceKind::Skm, params, order, || s_km_fast(k, m, order))
    }

    pub fn len(&self) -> usize {
        self.inner.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(seq: &SequencePrefix) -> Vec<i64> {
        seq.values.iter().map(|v| i64::try_from(v).unwrap()).collect()
    }

    #[test]
    fn binary_partition_values() {
        let b = binary_partitions(16);
        assert_eq!(ints(&b)[..5], [1, 1, 2, 2, 4]);
        assert_eq!(b[16], BigInt::from(36));
    }

    #[test]
    fn binary_partitions_match_product() {
        let b = binary_partitions(300);
        let series = TruncatedSeries::infinite_product(2, -1, 300).unwrap();
        assert_eq!(b.values, series.into_coeffs());
    }

    #[test]
    fn ptm_prefix() {
        let t = ptm(50);
        assert_eq!(ints(&t)[..4], [1, -1, -1, 1]);
        let series = TruncatedSeries::infinite_product(2, 1, 50).unwrap();
        assert_eq!(t.values, series.into_coeffs());
    }

    #[test]
    fn s_km_small_values() {
        for k in 2..6 {
            for m in [-3i64, -1, 1, 4] {
                let s = s_km(k, m, 5).unwrap();
                assert_eq!(s[0], BigInt::one());
                // coefficient of x is m + (k-1)m
                assert_eq!(s[1], BigInt::from(k as i64 * m));
            }
        }
        assert_eq!(s_km(2, -2, 2).unwrap()[2], BigInt::from(4));
        assert_eq!(s_km(2, 2, 2).unwrap()[2], BigInt::from(12));
        assert!(matches!(s_km(2, 0, 5), Err(Error::Usage(_))));
        assert!(matches!(s_km(1, 1, 5), Err(Error::Usage(_))));
    }

    #[test]
    fn c1_is_b_at_even_indices() {
        let b = binary_partitions(800);
        let c1 = s_km_fast(2, 1, 400).unwrap();
        for n in 0..=400 {
            assert_eq!(c1[n], b[2 * n]);
        }
    }

    #[test]
    fn fast_path_agrees_with_series_path() {
        for (k, m) in [(2u64, 3i64), (2, -4), (3, 2), (4, -1), (7, 1)] {
            assert_eq!(s_km(k, m, 200).unwrap(), s_km_fast(k, m, 200).unwrap());
        }
    }

    #[test]
    fn lemma_recurrence_agrees_with_series() {
        let rec = d_m_by_recurrence(3, 2, 500).unwrap();
        assert_eq!(rec.values, s_km(3, 2, 500).unwrap().values);
        assert_eq!(rec[0], BigInt::one());
        assert_eq!(d_m_by_recurrence(3, 1, 1).unwrap()[1], BigInt::from(3));
        for (p, m) in [(5u64, 1i64), (5, 3), (7, 2), (11, 1)] {
            assert_eq!(d_m_by_recurrence(p, m, 300).unwrap().values, s_km_fast(p, m, 300).unwrap().values);
        }
        assert!(d_m_by_recurrence(4, 1, 10).is_err());
        assert!(d_m_by_recurrence(3, -1, 10).is_err());
    }

    #[test]
    fn c_pm2_recurrences() {
        let plus = c_pm2_by_recurrence(Sign::Plus, 300);
        let minus = c_pm2_by_recurrence(Sign::Minus, 300);
        assert_eq!(plus[1], BigInt::from(4));
        assert_eq!(minus[1], BigInt::from(-4));
        assert_eq!(plus[2], BigInt::from(12));
        assert_eq!(minus[2], BigInt::from(4));
        assert_eq!(plus.values, s_km(2, 2, 300).unwrap().values);
        assert_eq!(minus.values, s_km(2, -2, 300).unwrap().values);
        let eight = BigInt::from(8);
        for n in 1..=300 {
            assert_eq!(num_integer::Integer::mod_floor(&plus[n], &eight), BigInt::from(4));
            assert_eq!(num_integer::Integer::mod_floor(&minus[n], &eight), BigInt::from(4));
        }
        assert_eq!(c_pm2_by_recurrence(Sign::Plus, 0).values.len(), 1);
    }

    #[test]
    fn colored_p_ary_partitions() {
        let a = a_pm(3, 2, 10).unwrap();
        assert_eq!(a[0], BigInt::one());
        assert_eq!(a[1], BigInt::from(2));
        // {3} in 2 colors, {1,1,1} as a multiset over 2 colors: 2 + 4
        assert_eq!(a[3], BigInt::from(6));
        for n in 0..=10 {
            assert_eq!(a[n], oracle::uniform_colored_count(3, 2, n));
        }
    }

    #[test]
    fn d_minus1_matches_series() {
        let d = d_minus1(3, 500).unwrap();
        assert_eq!(d.values, s_km(3, -1, 500).unwrap().values);
        assert_eq!(d_p_cap(3, 0).unwrap()[0], BigInt::one());
    }

    #[test]
    fn ptm_convolutions() {
        let t1 = t_m_convolution(1, 40).unwrap();
        assert_eq!(t1.values, ptm(40).values);
        let t2 = t_m_convolution(2, 5).unwrap();
        // t0 t2 + t1 t1 + t2 t0 = -1 + 1 - 1
        assert_eq!(t2[2], BigInt::from(-1));
    }

    #[test]
    fn partial_sums() {
        let u = u_m_partial_sums(1, 2).unwrap();
        assert_eq!(ints(&u), vec![1, 3, 7]);
    }

    #[test]
    fn vartheta_values() {
        let v = vartheta(5, 1, 3).unwrap();
        let d = s_km(5, 1, 15).unwrap();
        assert_eq!(v[0], BigInt::zero());
        assert_eq!(v[1], &d[5] - &d[1]);
    }

    #[test]
    fn cache_reuses_prefixes() {
        let cache = SequenceCache::new();
        let a = cache.s_km(2, 3, 50).unwrap();
        let b = cache.s_km(2, 3, 50).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(cache.len(), 1);
        let _ = cache.s_km(2, 3, 60).unwrap();
        assert_eq!(cache.len(), 2);
    }
}
