//! Checks of proven congruences over finite parameter grids.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::report::{CheckReport, ReportBuilder, StatementKind};
use crate::arith::{binomial, inverse_mod_prime};
use crate::error::{Error, Result};
use crate::partitions::{a_pm, ptm_signs, require_odd_prime, s_km_fast, u_m_partial_sums};
use crate::valuation::{lowest_digit, nu2_c_closed_form, nu_p, nu_p_d_closed_form, nu_p_i64, ExtNat};

fn pow(p: u64, e: u64) -> BigInt {
    BigInt::from(p).pow(e as u32)
}

fn divides(modulus: &BigInt, x: &BigInt) -> bool {
    x.is_multiple_of(modulus)
}

fn sign(n: usize) -> i32 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn require_positive(m: i64) -> Result<()> {
    if m < 1 {
        return Err(Error::usage(format!("m must be positive, got {m}")));
    }
    Ok(())
}

/// `p^{ν_p(m)+1} | d_m(n)` for `1 <= n <= order`.
pub fn check_parylem1(p: u64, m: i64, order: usize) -> Result<CheckReport> {
    require_odd_prime(p)?;
    require_positive(m)?;
    let alpha = nu_p_i64(m, p);
    let modulus = pow(p, alpha + 1);
    let d = s_km_fast(p, m, order)?;
    let mut b = ReportBuilder::new("parylem1", StatementKind::Theorem);
    b.grid("p", p).grid("m", m).grid("n", format!("1..={order}")).grid("modulus", &modulus);
    b.prefix_order(order);
    for n in 1..=order {
        b.record(&[("n", n as i64)], divides(&modulus, &d[n]), || vec![("d_m(n)", d[n].to_string())]);
    }
    Ok(b.finish())
}

/// `d_m(pn) ≡ d_m(n) (mod p^{ν_p(m)+2})` for `1 <= n <= order`.
pub fn check_parylem2(p: u64, m: i64, order: usize) -> Result<CheckReport> {
    require_odd_prime(p)?;
    require_positive(m)?;
    let exponent = nu_p_i64(m, p) + 2;
    check_scaling(p, m, order, exponent, "parylem2")
}

fn check_scaling(p: u64, m: i64, order: usize, exponent: u64, name: &str) -> Result<CheckReport> {
    let modulus = pow(p, exponent);
    let long = p as usize * order;
    let d = s_km_fast(p, m, long)?;
    let mut b = ReportBuilder::new(name, StatementKind::Theorem);
    b.grid("p", p).grid("m", m).grid("n", format!("1..={order}")).grid("modulus", &modulus);
    b.prefix_order(long);
    for n in 1..=order {
        let diff = &d[p as usize * n] - &d[n];
        b.record(&[("n", n as i64)], divides(&modulus, &diff), || {
            vec![("d_m(pn)-d_m(n)", diff.to_string())]
        });
    }
    Ok(b.finish())
}

/// For `m = p^α` and `p ∤ n`: `d_m(n) ≡ (-1)^{n+1} C(pm, n)` when `n <= pm`,
/// and `d_m(n) ≡ d_m(n - pm)` otherwise, modulo `p^{α+2}`.
pub fn check_parylem3(p: u64, alpha: u32, order: usize) -> Result<CheckReport> {
    require_odd_prime(p)?;
    let m = p.pow(alpha);
    let pm = (p * m) as usize;
    let modulus = pow(p, alpha as u64 + 2);
    let d = s_km_fast(p, m as i64, order)?;
    let mut b = ReportBuilder::new("parylem3", StatementKind::Theorem);
    b.grid("p", p).grid("alpha", alpha).grid("n", format!("1..={order}, p∤n")).grid("modulus", &modulus);
    b.prefix_order(order);
    for n in (1..=order).filter(|n| n % p as usize != 0) {
        let expected = if n <= pm {
            binomial(pm as u64, n as u64) * -sign(n)
        } else {
            d[n - pm].clone()
        };
        let diff = &d[n] - &expected;
        b.record(&[("n", n as i64)], divides(&modulus, &diff), || {
            vec![("d_m(n)", d[n].to_string()), ("expected", expected.to_string())]
        });
    }
    Ok(b.finish())
}

/// `χ = [p=3] - [p=3, ν_3(m) >= 1, ν_3(C(m,i)) = 0]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChiFlag {
    pub p: u64,
    pub m: u64,
    pub i: u64,
    pub chi: u8,
}

impl ChiFlag {
    pub fn new(p: u64, m: u64, i: u64) -> Self {
        let chi = if p != 3 {
            0
        } else {
            let nu_m = nu_p_i64(m as i64, 3);
            let nu_c = nu_p(&binomial(m, i), 3).expect("3 is prime");
            if nu_m >= 1 && nu_c == 0 {
                0
            } else {
                1
            }
        };
        ChiFlag { p, m, i, chi }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BinomCongruence {
    pub chi: ChiFlag,
    /// `E = ν_p(m) + ν_p(C(m,i)) + 3 - χ`.
    pub exponent: u64,
    #[serde(serialize_with = "super::report::decimal")]
    pub difference: BigInt,
    pub passed: bool,
}

/// `C(pm, pi) ≡ C(m, i) (mod p^E)` with `E = ν_p(m) + ν_p(C(m,i)) + 3 - χ`.
pub fn binom_congruence(p: u64, m: u64, i: u64) -> Result<BinomCongruence> {
    require_odd_prime(p)?;
    if m < 1 || i > m {
        return Err(Error::usage(format!("need m >= 1 and 0 <= i <= m, got m={m}, i={i}")));
    }
    let chi = ChiFlag::new(p, m, i);
    let c = binomial(m, i);
    let nu_c = nu_p(&c, p)?.finite().expect("binomial is nonzero");
    let exponent = nu_p_i64(m as i64, p) + nu_c + 3 - chi.chi as u64;
    let difference = binomial(p * m, p * i) - c;
    let passed = divides(&pow(p, exponent), &difference);
    Ok(BinomCongruence { chi, exponent, difference, passed })
}

/// [`binom_congruence`] over `primes × 1..=m_max × 0..=m`.
pub fn check_binom_grid(primes: &[u64], m_max: u64) -> Result<CheckReport> {
    let mut b = ReportBuilder::new("parylem4", StatementKind::Theorem);
    b.grid("p", format!("{primes:?}")).grid("m", format!("1..={m_max}")).grid("i", "0..=m");
    for &p in primes {
        for m in 1..=m_max {
            for i in 0..=m {
                let r = binom_congruence(p, m, i)?;
                b.record(&[("p", p as i64), ("m", m as i64), ("i", i as i64)], r.passed, || {
                    vec![("exponent", r.exponent.to_string()), ("difference", r.difference.to_string())]
                });
            }
        }
    }
    Ok(b.finish())
}

/// `(ν_p(num H_{p-1}), ν_p(num H^{(2)}_{p-1}))` for the harmonic sums
/// `sum 1/γ` and `sum 1/γ^2` over `1 <= γ <= p-1`.
pub fn wolstenholme_valuations(p: u64) -> Result<(ExtNat, ExtNat)> {
    require_odd_prime(p)?;
    let lcm = (1..p).fold(BigInt::one(), |acc, g| acc.lcm(&BigInt::from(g)));
    let sq = &lcm * &lcm;
    let h1: BigInt = (1..p).map(|g| &lcm / BigInt::from(g)).sum();
    let h2: BigInt = (1..p).map(|g| &sq / BigInt::from(g * g)).sum();
    let reduce = |num: BigInt, den: &BigInt| {
        let g = num.gcd(den);
        num / g
    };
    Ok((nu_p(&reduce(h1, &lcm), p)?, nu_p(&reduce(h2, &sq), p)?))
}

pub fn check_wolstenholme(primes: &[u64]) -> Result<CheckReport> {
    let mut b = ReportBuilder::new("wolstenholme", StatementKind::Theorem);
    b.grid("p", format!("{primes:?}"));
    b.note("numerator of sum 1/γ divisible by p^2; numerator of sum 1/γ^2 divisible by p");
    for &p in primes {
        let (h1, h2) = wolstenholme_valuations(p)?;
        b.record(&[("p", p as i64)], h1 >= ExtNat::Finite(2) && h2 >= ExtNat::Finite(1), || {
            vec![("nu_harmonic", h1.to_string()), ("nu_square", h2.to_string())]
        });
    }
    Ok(b.finish())
}

/// Modulus exponent `2ν_p(m) + 3 - [p=3]`.
pub fn modp_exponent(p: u64, m: i64) -> u64 {
    2 * nu_p_i64(m, p) + 3 - u64::from(p == 3)
}

/// The alternating-sum identity for `ϑ_m(n) = d_m(pn) - d_m(n)`, the value
/// `ϑ_m(1) ≡ 0`, and the closed forms
/// `ϑ_m(n) ≡ sum_k (-1)^{k+1} [C(pm,pk) - C(m,k)] C(n-k+m-1, n-k)
///          ≡ sum_k (-1)^{k+1} C(pm,pk) C(n-k+m-1, n-k)`,
/// all modulo `p^{2ν_p(m)+3-[p=3]}` for `1 <= n <= order`.
pub fn check_modp_lemma(p: u64, m: i64, order: usize) -> Result<CheckReport> {
    require_odd_prime(p)?;
    require_positive(m)?;
    let modulus = pow(p, modp_exponent(p, m));
    let long = p as usize * order;
    let d = s_km_fast(p, m, long)?;
    let theta: Vec<BigInt> = (0..=order).map(|n| &d[p as usize * n] - &d[n]).collect();
    let mu = m as u64;
    let pm = p * mu;
    let c_m: Vec<BigInt> = (0..=mu).map(|i| binomial(mu, i)).collect();
    let c_pm: Vec<BigInt> = (0..=mu).map(|i| binomial(pm, p * i)).collect();

    let mut b = ReportBuilder::new("modp", StatementKind::Theorem);
    b.grid("p", p).grid("m", m).grid("n", format!("1..={order}")).grid("modulus", &modulus);
    b.prefix_order(long);
    for n in 1..=order {
        let top = (m as usize).min(n);
        let mut lhs = BigInt::zero();
        for i in 0..=top {
            lhs += &c_m[i] * &theta[n - i] * sign(i);
        }
        let bracket = |k: usize| {
            let cm = c_m.get(k).cloned().unwrap_or_default();
            let cpm = c_pm.get(k).cloned().unwrap_or_default();
            (cpm, cm)
        };
        let (cpm_n, cm_n) = bracket(n);
        let rhs = (cpm_n - cm_n) * -sign(n);
        let mut closed = BigInt::zero();
        let mut closed_short = BigInt::zero();
        for k in 0..=top {
            let weight = binomial((n - k) as u64 + mu - 1, (n - k) as u64) * -sign(k);
            closed += (&c_pm[k] - &c_m[k]) * &weight;
            closed_short += &c_pm[k] * &weight;
        }
        let ok = divides(&modulus, &(&lhs - &rhs))
            && divides(&modulus, &(&theta[n] - &closed))
            && divides(&modulus, &(&theta[n] - &closed_short));
        b.record(&[("n", n as i64)], ok, || {
            vec![
                ("alternating_sum", lhs.to_string()),
                ("binomial_side", rhs.to_string()),
                ("vartheta", theta[n].to_string()),
                ("closed_form", closed_short.to_string()),
            ]
        });
    }
    Ok(b.finish())
}

/// `d_m(pn) ≡ d_m(n) (mod p^{ν_p(m)+3})` when `p >= 5`, or `p = 3` and
/// `3 | m`.
pub fn check_parythm3(p: u64, m: i64, order: usize) -> Result<CheckReport> {
    require_odd_prime(p)?;
    require_positive(m)?;
    if p == 3 && m % 3 != 0 {
        return Err(Error::usage(format!(
            "precondition failed: need p >= 5, or p = 3 with 3 | m (got p = {p}, m = {m})"
        )));
    }
    check_scaling(p, m, order, nu_p_i64(m, p) + 3, "parythm3")
}

/// `ν_2(c_m(n))` equals its closed form for every `m` in `ms` and
/// `1 <= n <= order`.
pub fn check_mainthm(ms: &[i64], order: usize) -> Result<CheckReport> {
    let t = ptm_signs(order);
    let parts = ms
        .par_iter()
        .map(|&m| -> Result<CheckReport> {
            let c = s_km_fast(2, m, order)?;
            let mut b = ReportBuilder::new("mainthm", StatementKind::Theorem);
            b.prefix_order(order);
            for n in 1..=order {
                let actual = nu_p(&c[n], 2)?;
                let predicted = nu2_c_closed_form(m, n, &t)?;
                b.record(&[("m", m), ("n", n as i64)], actual == predicted, || {
                    vec![("actual", actual.to_string()), ("predicted", predicted.to_string())]
                });
            }
            Ok(b.finish())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = CheckReport::merge("mainthm", StatementKind::Theorem, parts);
    out.grid.insert("m".into(), format!("{ms:?}"));
    out.grid.insert("n".into(), format!("1..={order}"));
    Ok(out)
}

/// `ν_p(d_m(n)) = ν_p(m) + 1` and `d_m(n) ≡ pm (n_s^{-1} mod p)` modulo
/// `p^{ν_p(m)+2}` for every `(p, m)` in the grid and `1 <= n <= order`.
pub fn check_parycor2(primes: &[u64], ms: &[i64], order: usize) -> Result<CheckReport> {
    let points: Vec<(u64, i64)> = primes.iter().flat_map(|&p| ms.iter().map(move |&m| (p, m))).collect();
    let parts = points
        .par_iter()
        .map(|&(p, m)| -> Result<CheckReport> {
            let d = s_km_fast(p, m, order)?;
            let alpha = nu_p_i64(m, p);
            let modulus = pow(p, alpha + 2);
            let mut b = ReportBuilder::new("parycor2", StatementKind::Theorem);
            b.prefix_order(order);
            for n in 1..=order {
                let (v, residue) = nu_p_d_closed_form(p, m, n as u64)?;
                let actual = nu_p(&d[n], p)?;
                let ok = actual == v && d[n].mod_floor(&modulus) == residue;
                b.record(&[("p", p as i64), ("m", m), ("n", n as i64)], ok, || {
                    vec![("d_m(n)", d[n].to_string()), ("predicted_residue", residue.to_string())]
                });
            }
            Ok(b.finish())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = CheckReport::merge("parycor2", StatementKind::Theorem, parts);
    out.grid.insert("p".into(), format!("{primes:?}"));
    out.grid.insert("m".into(), format!("{ms:?}"));
    out.grid.insert("n".into(), format!("1..={order}"));
    Ok(out)
}

/// `d_{-m}(n) ≡ -d_m(n) (mod p^{ν_p(m)+2})` for `1 <= n <= order`.
pub fn check_negation(p: u64, m: i64, order: usize) -> Result<CheckReport> {
    require_odd_prime(p)?;
    require_positive(m)?;
    let modulus = pow(p, nu_p_i64(m, p) + 2);
    let plus = s_km_fast(p, m, order)?;
    let minus = s_km_fast(p, -m, order)?;
    let mut b = ReportBuilder::new("negation", StatementKind::Theorem);
    b.grid("p", p).grid("m", m).grid("n", format!("1..={order}")).grid("modulus", &modulus);
    for n in 1..=order {
        let sum = &plus[n] + &minus[n];
        b.record(&[("n", n as i64)], divides(&modulus, &sum), || vec![("d_m(n)+d_-m(n)", sum.to_string())]);
    }
    Ok(b.finish())
}

/// Where the digit in the `A_{p,(p-1)(p^α-1)}` residue is read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidueDigit {
    /// Lowest nonzero base-`p` digit of `⌊n / p^α⌋`.
    OfQuotient,
    /// Lowest nonzero base-`p` digit of `n`.
    OfN,
}

/// `A_{p,(p-1)(p^α-1)}(n) ≡ -p (r^{-1} mod p) (mod p^2)` for
/// `p^α <= n <= order`, where `r` is the lowest nonzero base-`p` digit of
/// `⌊n / p^α⌋`. Also checks `ν_p(A(n)) = 1`.
pub fn check_a_pm_theorem(p: u64, alpha: u32, order: usize) -> Result<CheckReport> {
    check_a_pm_residue(p, alpha, order, ResidueDigit::OfQuotient)
}

/// [`check_a_pm_theorem`] with the digit taken from the chosen place. With
/// [`ResidueDigit::OfN`] the congruence fails already at `p = 3, n = 5`.
pub fn check_a_pm_residue(p: u64, alpha: u32, order: usize, digit: ResidueDigit) -> Result<CheckReport> {
    require_odd_prime(p)?;
    if alpha < 1 {
        return Err(Error::usage("alpha must be at least 1"));
    }
    let m = (p - 1) * (p.pow(alpha) - 1);
    let a = a_pm(p, m as i64, order)?;
    let modulus = pow(p, 2);
    let q = p.pow(alpha);
    let start = q as usize;
    let name = match digit {
        ResidueDigit::OfQuotient => "a-pm-theorem",
        ResidueDigit::OfN => "a-pm-digit-of-n",
    };
    let mut b = ReportBuilder::new(name, StatementKind::Theorem);
    b.grid("p", p).grid("alpha", alpha).grid("m", m).grid("n", format!("{start}..={order}"));
    b.prefix_order(order);
    for n in start..=order {
        let r = match digit {
            ResidueDigit::OfQuotient => lowest_digit(n as u64 / q, p),
            ResidueDigit::OfN => lowest_digit(n as u64, p),
        };
        let predicted = BigInt::from(-((p * inverse_mod_prime(r, p)) as i64)).mod_floor(&modulus);
        let actual = a[n].mod_floor(&modulus);
        let valuation_one = nu_p(&a[n], p)? == 1;
        b.record(&[("n", n as i64)], actual == predicted && valuation_one, || {
            vec![("A(n) mod p^2", actual.to_string()), ("predicted", predicted.to_string())]
        });
    }
    Ok(b.finish())
}

/// `ν_2(c_m(2n) - c_m(n)) = 1` for odd `m` and `1 <= n <= order`.
pub fn check_cor0(m: i64, order: usize) -> Result<CheckReport> {
    if m % 2 == 0 {
        return Err(Error::usage(format!("m must be odd, got {m}")));
    }
    let long = 2 * order;
    let c = s_km_fast(2, m, long)?;
    let mut b = ReportBuilder::new("cor0", StatementKind::Theorem);
    b.grid("m", m).grid("n", format!("1..={order}"));
    b.prefix_order(long);
    for n in 1..=order {
        let diff = &c[2 * n] - &c[n];
        let v = nu_p(&diff, 2)?;
        b.record(&[("n", n as i64)], v == 1, || vec![("difference", diff.to_string())]);
    }
    Ok(b.finish())
}

/// `U_m(n)` is odd for `1 <= m <= m_max`, `0 <= n <= order`.
pub fn check_cor2(m_max: i64, order: usize) -> Result<CheckReport> {
    let mut b = ReportBuilder::new("cor2", StatementKind::Theorem);
    b.grid("m", format!("1..={m_max}")).grid("n", format!("0..={order}"));
    for m in 1..=m_max {
        let u = u_m_partial_sums(m, order)?;
        for n in 0..=order {
            b.record(&[("m", m), ("n", n as i64)], u[n].is_odd(), || vec![("U", u[n].to_string())]);
        }
    }
    Ok(b.finish())
}

/// `c_m(n) ≠ 0` for `m <= -2`, `d_m(n) ≠ 0` for `m <= -1`, and
/// `c_{±2}(n) ≡ 4 (mod 8)` for `n >= 1`. Nonnegative `m` in `ms` are skipped.
pub fn check_nonvanishing(ms: &[i64], primes: &[u64], order: usize) -> Result<CheckReport> {
    let mut b = ReportBuilder::new("nonvanishing", StatementKind::Theorem);
    b.grid("m", format!("{ms:?}")).grid("p", format!("{primes:?}")).grid("n", format!("0..={order}"));
    for &m in ms.iter().filter(|&&m| m <= -1) {
        if m <= -2 {
            let c = s_km_fast(2, m, order)?;
            for n in 0..=order {
                b.record(&[("k", 2), ("m", m), ("n", n as i64)], !c[n].is_zero(), Vec::new);
            }
        }
        for &p in primes {
            let d = s_km_fast(p, m, order)?;
            for n in 0..=order {
                b.record(&[("k", p as i64), ("m", m), ("n", n as i64)], !d[n].is_zero(), Vec::new);
            }
        }
    }
    let eight = BigInt::from(8);
    for m in [2i64, -2] {
        let c = s_km_fast(2, m, order)?;
        for n in 1..=order {
            let r = c[n].mod_floor(&eight);
            b.record(&[("m", m), ("n", n as i64)], r == BigInt::from(4), || vec![("c mod 8", r.to_string())]);
        }
    }
    Ok(b.finish())
}

/// Rödseth–Gupta: for odd `t <= t_max` and `1 <= k <= k_max`,
/// `c_1(2^{2k+1} t) ≡ c_1(2^{2k-1} t) (mod 2^{3k+2})` and
/// `c_1(2^{2k} t) ≡ c_1(2^{2k-2} t) (mod 2^{3k})`, and each bound is attained
/// exactly by at least one `t`.
pub fn churchhouse_congruences(k_max: u32, t_max: u64) -> Result<CheckReport> {
    if k_max < 1 || t_max < 1 {
        return Err(Error::usage("need k_max >= 1 and t_max >= 1"));
    }
    let long = (1usize << (2 * k_max + 1)) * t_max as usize;
    let c = s_km_fast(2, 1, long)?;
    let mut b = ReportBuilder::new("churchhouse", StatementKind::Theorem);
    b.grid("k", format!("1..={k_max}")).grid("t", format!("odd 1..={t_max}"));
    b.note("sharpness: each bound is the exact valuation for at least one odd t");
    b.prefix_order(long);
    for k in 1..=k_max {
        for (hi, lo, bound, family) in [(2 * k + 1, 2 * k - 1, 3 * k + 2, 1i64), (2 * k, 2 * k - 2, 3 * k, 2)] {
            let mut exact_hit = false;
            for t in (1..=t_max as usize).step_by(2) {
                let diff = &c[(1 << hi) * t] - &c[(1 << lo) * t];
                let v = nu_p(&diff, 2)?;
                exact_hit |= v == bound as u64;
                b.record(&[("k", k as i64), ("family", family), ("t", t as i64)], v >= ExtNat::Finite(bound as u64), || {
                    vec![("difference", diff.to_string()), ("bound", bound.to_string())]
                });
            }
            b.record(&[("k", k as i64), ("family", family), ("sharpness", 1)], exact_hit, || {
                vec![("bound", bound.to_string())]
            });
        }
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_witness() {
        let r = binom_congruence(5, 2, 1).unwrap();
        assert_eq!(r.difference, BigInt::from(250));
        assert_eq!(r.exponent, 3);
        assert!(r.passed);
        assert!(binom_congruence(7, 5, 0).unwrap().passed);
        assert!(binom_congruence(7, 5, 5).unwrap().passed);
        let r = binom_congruence(3, 3, 3).unwrap();
        assert_eq!(r.chi.chi, 0);
        assert_eq!(ChiFlag::new(3, 2, 1).chi, 1);
        assert_eq!(ChiFlag::new(5, 5, 1).chi, 0);
        assert!(binom_congruence(3, 2, 3).is_err());
    }

    #[test]
    fn small_grids_pass() {
        assert!(check_parylem1(3, 9, 300).unwrap().passed());
        assert!(check_parylem2(3, 1, 200).unwrap().passed());
        assert!(check_parylem3(3, 1, 300).unwrap().passed());
        assert!(check_parylem3(5, 0, 300).unwrap().passed());
        assert!(check_modp_lemma(5, 1, 50).unwrap().passed());
        assert!(check_parythm3(5, 3, 100).unwrap().passed());
        assert!(check_cor0(-3, 200).unwrap().passed());
        assert!(check_cor2(3, 200).unwrap().passed());
        assert!(check_negation(3, 2, 200).unwrap().passed());
        assert!(check_a_pm_theorem(3, 1, 200).unwrap().passed());
        assert!(check_a_pm_theorem(5, 2, 300).unwrap().passed());
        let printed = check_a_pm_residue(3, 1, 200, ResidueDigit::OfN).unwrap();
        assert_eq!(printed.counterexamples[0].point["n"], 5);
    }

    #[test]
    fn parythm3_precondition() {
        let err = check_parythm3(3, 2, 10).unwrap_err();
        assert!(matches!(err, Error::Usage(ref s) if s.contains("precondition")));
    }

    #[test]
    fn parythm3_fails_without_precondition() {
        // the p = 3, 3 ∤ m case is excluded for a reason
        let r = check_scaling(3, 1, 50, 3, "probe").unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn a_pm_witness() {
        let a = a_pm(3, 4, 3).unwrap();
        assert_eq!(a[3], BigInt::from(24));
        assert_eq!(a[3].mod_floor(&BigInt::from(9)), BigInt::from(6));
    }

    #[test]
    fn wolstenholme() {
        for p in [5u64, 7, 11, 13] {
            let (h1, h2) = wolstenholme_valuations(p).unwrap();
            assert!(h1 >= ExtNat::Finite(2), "p={p}");
            assert!(h2 >= ExtNat::Finite(1), "p={p}");
        }
        // fails at p = 3: 1 + 1/2 = 3/2
        assert_eq!(wolstenholme_valuations(3).unwrap().0, 1);
    }

    #[test]
    fn churchhouse_small() {
        let r = churchhouse_congruences(1, 3).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
