//! Coefficient rings for the streaming recurrences.
//!
//! The recurrences that generate `S_{k,m}(n)` have leading coefficient 1,
//! so running them in `Z/MZ` yields exactly `S_{k,m}(n) mod M`. Sweeps that
//! only ask divisibility questions modulo a known `M` use [`Modular`] or
//! [`Wrapping64`]; everything else uses exact [`Integers`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

/// A commutative ring the recurrence engine can run in.
pub trait CoeffRing: Sync {
    type Elem: Clone + PartialEq + Send + Sync + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn from_bigint(&self, x: &BigInt) -> Self::Elem;
    /// `acc += a * b`
    fn mul_add(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem);
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `acc -= a`
    fn sub_assign(&self, acc: &mut Self::Elem, a: &Self::Elem);

    fn one(&self) -> Self::Elem {
        self.from_bigint(&BigInt::from(1))
    }
}

/// Exact arbitrary-precision integers.
#[derive(Debug, Clone, Copy, Default)]
pub struct Integers;

impl CoeffRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn from_bigint(&self, x: &BigInt) -> BigInt {
        x.clone()
    }

    fn mul_add(&self, acc: &mut BigInt, a: &BigInt, b: &BigInt) {
        if !a.is_zero() && !b.is_zero() {
            *acc += a * b;
        }
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn sub_assign(&self, acc: &mut BigInt, a: &BigInt) {
        *acc -= a;
    }
}

/// `Z/MZ` for a modulus `2 <= M < 2^63`, elements kept as least
/// nonnegative residues.
#[derive(Debug, Clone, Copy)]
pub struct Modular {
    modulus: u64,
}

impl Modular {
    pub fn new(modulus: u64) -> Self {
        assert!((2..1 << 63).contains(&modulus), "modulus {modulus} out of range");
        Modular { modulus }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl CoeffRing for Modular {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn from_bigint(&self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.modulus)).to_u64().expect("residue fits")
    }

    fn mul_add(&self, acc: &mut u64, a: &u64, b: &u64) {
        let prod = (*a as u128 * *b as u128 % self.modulus as u128) as u64;
        *acc += prod;
        if *acc >= self.modulus {
            *acc -= self.modulus;
        }
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    fn sub_assign(&self, acc: &mut u64, a: &u64) {
        *acc = if *acc >= *a { *acc - a } else { *acc + (self.modulus - a) };
    }
}

/// `Z/2^64 Z` with native wrapping arithmetic.
#[derive(Debug, Clone, Copy, Default)]
pub struct Wrapping64;

impl CoeffRing for Wrapping64 {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn from_bigint(&self, x: &BigInt) -> u64 {
        let m = BigInt::from(1u128 << 64);
        x.mod_floor(&m).to_u64().expect("residue fits")
    }

    fn mul_add(&self, acc: &mut u64, a: &u64, b: &u64) {
        *acc = acc.wrapping_add(a.wrapping_mul(*b));
    }

    fn neg(&self, a: &u64) -> u64 {
        a.wrapping_neg()
    }

    fn sub_assign(&self, acc: &mut u64, a: &u64) {
        *acc = acc.wrapping_sub(*a);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_reduction_of_negatives() {
        let r = Modular::new(9);
        assert_eq!(r.from_bigint(&BigInt::from(-3)), 6);
        assert_eq!(r.neg(&6), 3);
        let mut acc = 8;
        r.mul_add(&mut acc, &4, &7);
        assert_eq!(acc, (8 + 28) % 9);
    }

    #[test]
    fn wrapping_matches_two_adic_residue() {
        let r = Wrapping64;
        assert_eq!(r.from_bigint(&BigInt::from(-1)), u64::MAX);
        let big = BigInt::from(3u8).pow(100);
        let mut acc = 0;
        r.mul_add(&mut acc, &r.from_bigint(&big), &r.one());
        assert_eq!(acc, r.from_bigint(&big));
    }
}
