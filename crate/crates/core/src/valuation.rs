//! Valuations, base-`p` digits and the closed forms for `ν_2(c_m(n))` and
//! `ν_p(d_m(n))`, plus the residue sequences `y_p`, `z_p` and the gap
//! statistics `u_m`, `v_{p,m}`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{inverse_mod_prime, is_prime};
use crate::error::{Error, Result};
use crate::partitions::{require_odd_prime, HkmRecurrence, SeqParams, SequenceKind, SequencePrefix};
use crate::ring::{CoeffRing, Integers, Modular, Wrapping64};

/// A natural number or `+∞`. `Infinity` orders above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(u64),
    Infinity,
}

impl ExtNat {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Finite(v) => Some(v),
            ExtNat::Infinity => None,
        }
    }
}

impl From<u64> for ExtNat {
    fn from(v: u64) -> Self {
        ExtNat::Finite(v)
    }
}

impl PartialEq<u64> for ExtNat {
    fn eq(&self, other: &u64) -> bool {
        *self == ExtNat::Finite(*other)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(v) => write!(f, "{v}"),
            ExtNat::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtNat::Finite(v) => s.serialize_u64(*v),
            ExtNat::Infinity => s.serialize_str("inf"),
        }
    }
}

/// Largest `s` with `k^s | x`, for any `k >= 2`; infinite at 0.
fn multiplicity(x: &BigInt, k: u64) -> ExtNat {
    if x.is_zero() {
        return ExtNat::Infinity;
    }
    if k.is_power_of_two() {
        let bits = k.trailing_zeros() as u64;
        let tz = x.trailing_zeros().expect("nonzero");
        return ExtNat::Finite(tz / bits);
    }
    let k = BigInt::from(k);
    let mut rest = x.abs();
    let mut count = 0;
    loop {
        let (q, r) = rest.div_rem(&k);
        if !r.is_zero() {
            return ExtNat::Finite(count);
        }
        rest = q;
        count += 1;
    }
}

/// `ν_p(x)`; sign is ignored and `ν_p(0) = ∞`.
pub fn nu_p(x: &BigInt, p: u64) -> Result<ExtNat> {
    if !is_prime(p) {
        return Err(Error::usage(format!("p must be prime, got {p}")));
    }
    Ok(multiplicity(x, p))
}

/// `ν_p` of a machine integer; `p` is assumed prime.
pub fn nu_p_u64(x: u64, p: u64) -> ExtNat {
    if x == 0 {
        return ExtNat::Infinity;
    }
    let mut x = x;
    let mut count = 0;
    while x.is_multiple_of(p) {
        x /= p;
        count += 1;
    }
    ExtNat::Finite(count)
}

pub(crate) fn nu_p_i64(x: i64, p: u64) -> u64 {
    nu_p_u64(x.unsigned_abs(), p).finite().expect("nonzero")
}

/// `φ_k(x)`: largest `s` with `k^s | x`, `φ_k(0) = ∞`.
pub fn phi_k(x: &BigInt, k: u64) -> Result<ExtNat> {
    if k < 2 {
        return Err(Error::usage(format!("k must be at least 2, got {k}")));
    }
    Ok(multiplicity(x, k))
}

/// Base-`p` digits of `n >= 1`, lowest power first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DigitExpansion {
    pub base: u64,
    pub digits: Vec<u64>,
    /// Index of the lowest nonzero digit.
    pub s: usize,
    /// The lowest nonzero digit itself.
    pub n_s: u64,
}

impl DigitExpansion {
    pub fn value(&self) -> u128 {
        self.digits.iter().rev().fold(0u128, |acc, &d| acc * self.base as u128 + d as u128)
    }
}

pub fn digits(n: u64, p: u64) -> Result<DigitExpansion> {
    if p < 2 {
        return Err(Error::usage(format!("base must be at least 2, got {p}")));
    }
    if n == 0 {
        return Err(Error::domain("0 has no lowest nonzero digit"));
    }
    let mut ds = Vec::new();
    let mut rest = n;
    while rest > 0 {
        ds.push(rest % p);
        rest /= p;
    }
    let s = ds.iter().position(|&d| d != 0).expect("n >= 1");
    Ok(DigitExpansion { base: p, n_s: ds[s], s, digits: ds })
}

/// Lowest nonzero base-`p` digit of `n >= 1`.
pub(crate) fn lowest_digit(mut n: u64, p: u64) -> u64 {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n % p
}

/// `ν_2(c_m(n))` from the PTM signs: `ν_2(m) + 1` for even `m`; for odd `m`,
/// `1` when `t_n ≠ t_{n-1}` and `ν_2(m + 1) + 1` otherwise.
pub fn nu2_c_closed_form(m: i64, n: usize, ptm: &[i8]) -> Result<ExtNat> {
    if m == 0 || m == -1 {
        return Err(Error::domain(format!("no closed form for m = {m}")));
    }
    if n == 0 {
        return Err(Error::domain("closed form needs n >= 1"));
    }
    if ptm.len() <= n {
        return Err(Error::usage(format!("PTM prefix of length {} does not cover n = {n}", ptm.len())));
    }
    let v = if m % 2 == 0 {
        nu_p_i64(m, 2) + 1
    } else if ptm[n] != ptm[n - 1] {
        1
    } else {
        nu_p_i64(m + 1, 2) + 1
    };
    Ok(ExtNat::Finite(v))
}

/// `ν_2(c_m(n))` for odd `m` as `1 + (ν_2(n) mod 2) ν_2(m + 1)`.
///
/// `t_n = t_{n-1}` exactly when `ν_2(n)` is odd, which is the parity the
/// period-doubling automaton tracks.
pub fn nu2_c_via_period_doubling(m: i64, n: u64) -> Result<ExtNat> {
    if m % 2 == 0 {
        return Err(Error::domain(format!("m must be odd, got {m}")));
    }
    if m == -1 {
        return Err(Error::domain("no closed form for m = -1"));
    }
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    let parity = (n.trailing_zeros() % 2) as u64;
    Ok(ExtNat::Finite(1 + parity * nu_p_i64(m + 1, 2)))
}

/// `(ν_p(d_m(n)), d_m(n) mod p^{ν_p(m)+2})` predicted from the lowest
/// nonzero digit of `n`. For `n = 0` this is `(0, 1)`.
pub fn nu_p_d_closed_form(p: u64, m: i64, n: u64) -> Result<(ExtNat, BigInt)> {
    require_odd_prime(p)?;
    if m == 0 {
        return Err(Error::domain("m must be nonzero"));
    }
    if n == 0 {
        return Ok((ExtNat::Finite(0), BigInt::one()));
    }
    let alpha = nu_p_i64(m, p);
    let modulus = BigInt::from(p).pow(alpha as u32 + 2);
    let inv = inverse_mod_prime(lowest_digit(n, p), p);
    let residue = (BigInt::from(p) * m * inv).mod_floor(&modulus);
    Ok((ExtNat::Finite(alpha + 1), residue))
}

/// `y_p(1..=order)` and `z_p(1..=order)`; index 0 holds 0.
pub fn y_z_sequences(p: u64, order: usize) -> Result<(SequencePrefix, SequencePrefix)> {
    require_odd_prime(p)?;
    let pu = p as usize;
    let mut y = vec![0u64; order + 1];
    for n in 1..=order {
        y[n] = if n < pu {
            inverse_mod_prime(n as u64, p)
        } else if n % pu != 0 {
            y[n % pu]
        } else {
            y[n / pu]
        };
    }
    let params = SeqParams { k: Some(p), m: None, p: Some(p) };
    let z: Vec<BigInt> =
        y.iter().enumerate().map(|(n, &v)| if n == 0 { BigInt::zero() } else { BigInt::from(p - v) }).collect();
    let y = y.into_iter().map(BigInt::from).collect();
    Ok((
        SequencePrefix { kind: SequenceKind::Yp, params, values: y },
        SequencePrefix { kind: SequenceKind::Zp, params, values: z },
    ))
}

/// Whether `sum_{j=1}^{p^n - 1} y_p(j) = p(p^n - 1)/2`.
pub fn y_sum_check(p: u64, n: u32) -> Result<bool> {
    require_odd_prime(p)?;
    let top = p
        .checked_pow(n)
        .filter(|&t| t <= 1 << 26)
        .ok_or_else(|| Error::usage(format!("{p}^{n} is beyond the summation budget")))?;
    let (y, _) = y_z_sequences(p, top as usize - 1)?;
    let sum: BigInt = y.values.iter().sum();
    Ok(sum == BigInt::from(p * (top - 1) / 2))
}

/// Gap sequence over `1..=x` with its maximum `M` and number of distinct
/// values `L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapStatistics {
    pub m: i64,
    pub p: u64,
    pub x: usize,
    pub values: Vec<ExtNat>,
    pub max: ExtNat,
    pub distinct: usize,
}

impl GapStatistics {
    fn from_values(m: i64, p: u64, values: Vec<ExtNat>) -> Self {
        let max = values.iter().copied().max().unwrap_or(ExtNat::Finite(0));
        let distinct = values.iter().collect::<BTreeSet<_>>().len();
        GapStatistics { m, p, x: values.len(), values, max, distinct }
    }
}

/// Gap between the lowest and the next nonzero base-`p` digit of `c`:
/// `ν_p(c' - (c' mod p))` with `c' = c / p^{ν_p(c)}`. For `p = 2` this is
/// `u_m`, otherwise `v_{p,m}`.
pub fn digit_gap(c: &BigInt, p: u64) -> Result<ExtNat> {
    if c.is_zero() {
        return Err(Error::domain("coefficient is zero, gap undefined"));
    }
    let v = nu_p(c, p)?.finite().expect("nonzero");
    let unit = c / BigInt::from(p).pow(v as u32);
    let low = unit.mod_floor(&BigInt::from(p));
    Ok(multiplicity(&(unit - low), p))
}

/// Gap computed from `c mod p^e`; `None` when the residue cannot decide.
fn digit_gap_from_residue(r: u64, p: u64, e: u32) -> Option<ExtNat> {
    if r == 0 {
        return None;
    }
    let v = nu_p_u64(r, p).finite().expect("nonzero") as u32;
    let known = e - v;
    let unit = r / p.pow(v);
    let low = unit % p;
    let modulus = if known == 64 && p == 2 { None } else { Some(p.pow(known)) };
    let diff = match modulus {
        Some(mm) => (unit - low) % mm,
        None => unit - low,
    };
    if diff == 0 {
        return None;
    }
    let g = nu_p_u64(diff, p).finite().expect("nonzero") as u32;
    (g < known).then_some(ExtNat::Finite(g as u64))
}

/// Residue ring used for streaming gaps: `Z/2^64` for `p = 2`, otherwise the
/// largest power of `p` below `2^62`.
fn residue_exponent(p: u64) -> u32 {
    if p == 2 {
        64
    } else {
        let mut e = 0u32;
        let mut q: u64 = 1;
        while let Some(next) = q.checked_mul(p).filter(|&v| v < 1 << 62) {
            q = next;
            e += 1;
        }
        e
    }
}

/// `u_m(1..=x)` (`p = 2`) or `v_{p,m}(1..=x)` (odd prime `p`) with `M_m(x)`
/// and `L_m(x)`.
///
/// Coefficients stream through the recurrence modulo `2^64` (or a large
/// power of `p`). A residue determines the gap whenever the gap is below
/// the number of known digits; otherwise an exact recurrence is advanced
/// lazily to that index and the exact coefficient is used.
pub fn gap_statistics(m: i64, x: usize, p: u64) -> Result<GapStatistics> {
    if m < 1 {
        return Err(Error::usage(format!("m must be positive, got {m}")));
    }
    if !is_prime(p) {
        return Err(Error::usage(format!("p must be prime, got {p}")));
    }
    let e = residue_exponent(p);
    let k = p as usize;
    let values = if p == 2 {
        stream_gaps(&Wrapping64, k, m, x, |r| digit_gap_from_residue(r, 2, e))?
    } else {
        let ring = Modular::new(p.pow(e));
        stream_gaps(&ring, k, m, x, |r| digit_gap_from_residue(r, p, e))?
    };
    Ok(GapStatistics::from_values(m, p, values))
}

fn stream_gaps<R: CoeffRing<Elem = u64>>(
    ring: &R,
    k: usize,
    m: i64,
    x: usize,
    decide: impl Fn(u64) -> Option<ExtNat>,
) -> Result<Vec<ExtNat>> {
    let mut residues = HkmRecurrence::new(ring, k, m);
    let mut exact: Option<HkmRecurrence<'_, Integers>> = None;
    let mut out = Vec::with_capacity(x);
    for n in 1..=x {
        residues.extend_to(n);
        let gap = match decide(residues.values()[n]) {
            Some(g) => g,
            None => {
                let rec = exact.get_or_insert_with(|| HkmRecurrence::new(&Integers, k, m));
                rec.extend_to(n);
                digit_gap(&rec.values()[n], k as u64)?
            }
        };
        out.push(gap);
    }
    Ok(out)
}

/// Exact-integer version of [`gap_statistics`], used to cross-check the
/// residue path.
pub fn gap_statistics_exact(m: i64, x: usize, p: u64) -> Result<GapStatistics> {
    if m < 1 {
        return Err(Error::usage(format!("m must be positive, got {m}")));
    }
    if !is_prime(p) {
        return Err(Error::usage(format!("p must be prime, got {p}")));
    }
    let mut rec = HkmRecurrence::new(&Integers, p as usize, m);
    rec.extend_to(x);
    let values = rec.values()[1..].iter().map(|c| digit_gap(c, p)).collect::<Result<Vec<_>>>()?;
    Ok(GapStatistics::from_values(m, p, values))
}

/// `c mod p` as a small integer.
pub(crate) fn small_residue(c: &BigInt, p: u64) -> u64 {
    c.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{ptm_signs, s_km_fast};

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn valuations() {
        assert_eq!(nu_p(&big(8), 2).unwrap(), 3);
        assert_eq!(nu_p(&big(0), 5).unwrap(), ExtNat::Infinity);
        assert_eq!(nu_p(&big(-18), 3).unwrap(), 2);
        assert!(matches!(nu_p(&big(8), 4), Err(Error::Usage(_))));
        assert_eq!(phi_k(&big(8), 4).unwrap(), 1);
        assert_eq!(phi_k(&big(16), 4).unwrap(), 2);
        assert_eq!(phi_k(&big(12), 6).unwrap(), 1);
        assert_eq!(phi_k(&big(-36), 6).unwrap(), 2);
        assert!(ExtNat::Infinity > ExtNat::Finite(u64::MAX));
    }

    #[test]
    fn phi_is_not_additive_for_composite_base() {
        // 2 * 3 = 6: φ_6(2) + φ_6(3) = 0 but φ_6(6) = 1
        let a = phi_k(&big(2), 6).unwrap().finite().unwrap();
        let b = phi_k(&big(3), 6).unwrap().finite().unwrap();
        assert_eq!(a + b, 0);
        assert_eq!(phi_k(&big(6), 6).unwrap(), 1);
    }

    #[test]
    fn digit_expansions() {
        let d = digits(10, 5).unwrap();
        assert_eq!((d.digits.clone(), d.s, d.n_s), (vec![0, 2], 1, 2));
        let d = digits(26, 3).unwrap();
        assert_eq!((d.digits.clone(), d.s, d.n_s), (vec![2, 2, 2], 0, 2));
        let d = digits(343, 7).unwrap();
        assert_eq!((d.s, d.n_s), (3, 1));
        assert_eq!(d.value(), 343);
        assert!(matches!(digits(0, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn two_adic_closed_form() {
        let t = ptm_signs(10);
        assert_eq!(nu2_c_closed_form(2, 5, &t).unwrap(), 2);
        assert_eq!(nu2_c_closed_form(3, 1, &t).unwrap(), 1);
        assert_eq!(nu2_c_closed_form(3, 2, &t).unwrap(), 3);
        assert!(matches!(nu2_c_closed_form(-1, 2, &t), Err(Error::Domain(_))));
        assert!(matches!(nu2_c_closed_form(0, 2, &t), Err(Error::Domain(_))));
        assert!(nu2_c_closed_form(3, 11, &t).is_err());
    }

    #[test]
    fn period_doubling_form() {
        assert_eq!(nu2_c_via_period_doubling(1, 1).unwrap(), 1);
        assert_eq!(nu2_c_via_period_doubling(3, 2).unwrap(), 3);
        assert_eq!(nu2_c_via_period_doubling(7, 6).unwrap(), 4);
        assert!(nu2_c_via_period_doubling(4, 1).is_err());
        let t = ptm_signs(4096);
        for m in [-19i64, -7, -3, 1, 3, 5, 7, 15, 19] {
            for n in 1..=4096u64 {
                assert_eq!(
                    nu2_c_via_period_doubling(m, n).unwrap(),
                    nu2_c_closed_form(m, n as usize, &t).unwrap(),
                );
            }
        }
    }

    #[test]
    fn period_doubling_with_n_plus_one_disagrees_at_three() {
        // 1 + (1 - (ν_2(n+1) mod 2)) ν_2(m+1) at m = 3, n = 3
        let shifted = 1 + (1 - (nu_p_u64(4, 2).finite().unwrap() % 2)) * 2;
        let c = s_km_fast(2, 3, 3).unwrap();
        assert_eq!(nu_p(&c[3], 2).unwrap(), 1);
        assert_eq!(shifted, 3);
    }

    #[test]
    fn odd_prime_closed_form() {
        assert_eq!(nu_p_d_closed_form(3, 1, 0).unwrap(), (ExtNat::Finite(0), BigInt::one()));
        assert_eq!(nu_p_d_closed_form(3, 1, 1).unwrap(), (ExtNat::Finite(1), big(3)));
        let (v, r) = nu_p_d_closed_form(5, 1, 10).unwrap();
        assert_eq!((v, r.clone()), (ExtNat::Finite(1), big(15)));
        let d = s_km_fast(5, 1, 10).unwrap();
        assert_eq!(d[10].mod_floor(&big(25)), r);
        assert!(nu_p_d_closed_form(3, 0, 1).is_err());
        assert!(nu_p_d_closed_form(9, 1, 1).is_err());
    }

    #[test]
    fn y_and_z() {
        let (y, z) = y_z_sequences(3, 20).unwrap();
        assert_eq!(y[1], big(1));
        assert_eq!(y[2], big(2));
        let (y5, _) = y_z_sequences(5, 10).unwrap();
        assert_eq!(y5[10], big(3));
        for n in 1..=20 {
            assert_eq!(&y[n] + &z[n], big(3));
            let inv = inverse_mod_prime(digits(n as u64, 3).unwrap().n_s, 3);
            assert_eq!(y[n], big(inv as i64));
        }
    }

    #[test]
    fn y_sums() {
        assert!(y_sum_check(3, 1).unwrap());
        assert!(y_sum_check(5, 2).unwrap());
        assert!(y_sum_check(3, 6).unwrap());
        assert!(y_sum_check(3, 40).is_err());
    }

    #[test]
    fn gaps() {
        assert_eq!(digit_gap(&big(6), 2).unwrap(), 1);
        assert_eq!(digit_gap(&big(2), 2).unwrap(), ExtNat::Infinity);
        assert!(digit_gap(&big(0), 2).is_err());
        // 75 = 2*3 + 2*9 + 2*27 + 27 = 2210 in base 3 → unit 25, low 1, 24 → ν_3 = 1
        assert_eq!(digit_gap(&big(75), 3).unwrap(), 1);
        let g = gap_statistics(3, 1, 2).unwrap();
        assert_eq!(g.values, vec![ExtNat::Finite(1)]);
    }

    #[test]
    fn residue_gaps_match_exact_gaps() {
        for m in [1i64, 2, 3, 15, 63] {
            assert_eq!(gap_statistics(m, 600, 2).unwrap(), gap_statistics_exact(m, 600, 2).unwrap());
        }
        for (p, m) in [(3u64, 1i64), (3, 4), (5, 2), (7, 7)] {
            assert_eq!(gap_statistics(m, 400, p).unwrap(), gap_statistics_exact(m, 400, p).unwrap());
        }
    }

    #[test]
    fn residue_decider() {
        // 2^63 * 3 mod 2^64 = 2^63: only one bit known past the valuation
        assert_eq!(digit_gap_from_residue(1 << 63, 2, 64), None);
        assert_eq!(digit_gap_from_residue(6, 2, 64), Some(ExtNat::Finite(1)));
        assert_eq!(digit_gap_from_residue(2, 2, 64), None);
        assert_eq!(small_residue(&big(-1), 3), 2);
    }
}
