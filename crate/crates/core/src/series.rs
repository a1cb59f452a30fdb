//! Truncated formal power series over arbitrary-precision integers.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients of
//! `x^0, ..., x^N` exactly. Every operation returns the exact coefficients
//! of the corresponding operation on infinite series, up to index `N`.
//! The order is chosen by the caller and is never silently extended.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A power series known exactly up to (and including) `x^order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedSeries")
            .field("order", &self.order())
            .field("coeffs", &self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl TruncatedSeries {
    /// The zero series of the given order.
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![BigInt::zero(); order + 1] }
    }

    /// The constant series `1`.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// `c * x^degree`, or zero when `degree > order`.
    pub fn monomial(c: impl Into<BigInt>, degree: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if degree <= order {
            s.coeffs[degree] = c.into();
        }
        s
    }

    /// Builds a series from exactly `order + 1` coefficients.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::usage("a truncated series needs at least one coefficient"));
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Builds a series of the given order from a polynomial. Terms above
    /// `order` are dropped, missing terms are zero.
    pub fn from_poly<T: Into<BigInt> + Clone>(poly: &[T], order: usize) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(poly) {
            *slot = c.clone().into();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i`; panics when `i > order`.
    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    /// Drops every coefficient above `order`. Requesting a larger order is
    /// an error since the missing coefficients are unknown.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::usage(format!(
                "cannot extend a series of order {} to order {order}",
                self.order()
            )));
        }
        Ok(TruncatedSeries { coeffs: self.coeffs[..=order].to_vec() })
    }

    fn check_same_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::usage(format!(
                "order mismatch: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Cauchy product truncated at the common order (schoolbook convolution).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let n = self.order();
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Multiplicative inverse. Only defined when the constant term is `±1`,
    /// which is exactly when the inverse has integer coefficients.
    pub fn inverse(&self) -> Result<Self> {
        let f0 = &self.coeffs[0];
        let sign = if f0.is_one() {
            BigInt::one()
        } else if (-f0).is_one() {
            -BigInt::one()
        } else {
            return Err(Error::domain(format!(
                "constant term {f0} is not a unit; the inverse is not integral"
            )));
        };
        let n = self.order();
        let mut g: Vec<BigInt> = Vec::with_capacity(n + 1);
        g.push(sign.clone());
        for k in 1..=n {
            let mut acc = BigInt::zero();
            for i in 1..=k {
                let fi = &self.coeffs[i];
                if !fi.is_zero() {
                    acc += fi * &g[k - i];
                }
            }
            // f0 * g_k = -sum, and f0 = f0^{-1}
            g.push(-(acc * &sign));
        }
        Ok(TruncatedSeries { coeffs: g })
    }

    /// Exact `m`-th power by binary exponentiation; negative powers go
    /// through [`inverse`](Self::inverse).
    pub fn pow(&self, m: i64) -> Result<Self> {
        let base = if m < 0 { self.inverse()? } else { self.clone() };
        let mut e = m.unsigned_abs();
        let mut result = Self::one(self.order());
        let mut power = base;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&power)?;
            }
            e >>= 1;
            if e > 0 {
                power = power.mul(&power)?;
            }
        }
        Ok(result)
    }

    /// `f(x^k)` truncated at the same order.
    pub fn substitute_power(&self, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::usage(format!("substitute_power needs k >= 2, got {k}")));
        }
        let n = self.order();
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            match i.checked_mul(k) {
                Some(j) if j <= n => out[j] = c.clone(),
                _ => break,
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Multiplies in place by `(1 - x^a)^times`.
    pub fn mul_one_minus_monomial(&mut self, a: usize, times: u64) {
        assert!(a >= 1, "monomial degree must be positive");
        let n = self.order();
        if a > n {
            return;
        }
        for _ in 0..times {
            for i in (a..=n).rev() {
                let (lo, hi) = self.coeffs.split_at_mut(i);
                hi[0] -= &lo[i - a];
            }
        }
    }

    /// Divides in place by `(1 - x^a)^times`, i.e. multiplies by the
    /// geometric series `1 + x^a + x^{2a} + ...` that many times.
    pub fn div_one_minus_monomial(&mut self, a: usize, times: u64) {
        assert!(a >= 1, "monomial degree must be positive");
        let n = self.order();
        if a > n {
            return;
        }
        for _ in 0..times {
            for i in a..=n {
                let (lo, hi) = self.coeffs.split_at_mut(i);
                hi[0] += &lo[i - a];
            }
        }
    }

    /// `prod_{i >= 0} (1 - x^{k^i})^e` truncated at `order`.
    ///
    /// Only the factors with `k^i <= order` are applied. The omitted factors
    /// are exactly `1 mod x^{order+1}`: `(1 - x^a)^e` with `a > order` has no
    /// nonconstant term of degree `<= order`, so dropping them changes no
    /// retained coefficient.
    pub fn infinite_product(k: usize, e: i64, order: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::usage(format!("infinite_product needs k >= 2, got {k}")));
        }
        let mut s = Self::one(order);
        if e == 0 {
            return Ok(s);
        }
        let times = e.unsigned_abs();
        let mut a = 1usize;
        while a <= order {
            // repeated sparse updates cost order*|e|; a dense product with the
            // binomial expansion costs order^2/a. Pick the cheaper.
            if (times as u128) * (a as u128) <= order as u128 {
                if e > 0 {
                    s.mul_one_minus_monomial(a, times);
                } else {
                    s.div_one_minus_monomial(a, times);
                }
            } else {
                let factor = Self::binomial_factor(a, e, order)?;
                s = s.mul(&factor)?;
            }
            a = match a.checked_mul(k) {
                Some(next) => next,
                None => break,
            };
        }
        Ok(s)
    }

    /// `(1 - x^a)^e` expanded as a series of the given order.
    fn binomial_factor(a: usize, e: i64, order: usize) -> Result<Self> {
        let mut base = Self::one(order);
        if a <= order {
            base.coeffs[a] = -BigInt::one();
        }
        if e >= 0 {
            // (1 - y)^e = sum (-1)^j C(e, j) y^j
            let mut out = Self::zero(order);
            let mut c = BigInt::one();
            let mut j = 0u64;
            while (j as usize) * a <= order && j <= e as u64 {
                let signed = if j.is_multiple_of(2) { c.clone() } else { -c.clone() };
                out.coeffs[j as usize * a] = signed;
                c = c * BigInt::from(e as u64 - j) / BigInt::from(j + 1);
                j += 1;
            }
            Ok(out)
        } else {
            // (1 - y)^{-f} = sum C(j + f - 1, j) y^j
            let f = e.unsigned_abs();
            let mut out = Self::zero(order);
            let mut c = BigInt::one();
            let mut j = 0u64;
            while (j as usize) * a <= order {
                out.coeffs[j as usize * a] = c.clone();
                c = c * BigInt::from(j + f) / BigInt::from(j + 1);
                j += 1;
            }
            Ok(out)
        }
    }

    /// Reduces every coefficient to its least nonnegative residue mod `m`.
    pub fn reduce_mod(&self, modulus: &BigInt) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| c.mod_floor(modulus)).collect() }
    }

    /// Smallest index whose coefficients are not congruent mod `modulus`,
    /// or `None` when the two series are congruent up to their order.
    pub fn first_incongruence(&self, other: &Self, modulus: &BigInt) -> Result<Option<usize>> {
        self.check_same_order(other)?;
        if *modulus < BigInt::from(2) {
            return Err(Error::usage(format!("modulus must be >= 2, got {modulus}")));
        }
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .position(|(a, b)| !(a - b).is_multiple_of(modulus)))
    }

    /// Whether `self ≡ other (mod modulus)` coefficientwise.
    pub fn is_congruent(&self, other: &Self, modulus: &BigInt) -> Result<bool> {
        Ok(self.first_incongruence(other, modulus)?.is_none())
    }
}
