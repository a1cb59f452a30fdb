//! Exact arithmetic for `m`-colored `k`-ary partition functions.
//!
//! The coefficients `S_{k,m}(n)` of
//!
//! ```text
//! H_{k,m}(x) = (1-x)^{-m} prod_{i>=0} (1 - x^{k^i})^{-m(k-1)}
//! ```
//!
//! are produced by a truncated power series engine ([`series`]) and by
//! streaming recurrences ([`partitions`]). On top of them sit valuation
//! closed forms ([`valuation`]), digit automata ([`automata`]) and a
//! harness that checks congruences over parameter grids ([`congruence`]).
//!
//! ```
//! use pary::partitions::s_km;
//! use pary::valuation::nu_p;
//!
//! let c3 = s_km(2, 3, 10).unwrap();
//! assert_eq!(c3[1], 6.into());
//! assert_eq!(nu_p(&c3[2], 2).unwrap(), 3);
//! ```

pub mod arith;
pub mod automata;
pub mod congruence;
mod error;
pub mod partitions;
pub mod ring;
pub mod series;
pub mod valuation;

pub use error::{Error, Result};
pub use series::TruncatedSeries;
pub use valuation::ExtNat;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    struct Intro;
    #[doc = include_str!("../../../book/src/series.md")]
    struct Series;
    #[doc = include_str!("../../../book/src/partitions.md")]
    struct Partitions;
    #[doc = include_str!("../../../book/src/valuations.md")]
    struct Valuations;
    #[doc = include_str!("../../../book/src/automata.md")]
    struct Automata;
    #[doc = include_str!("../../../book/src/congruences.md")]
    struct Congruences;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
