//! Congruence and conjecture checks over parameter grids.
//!
//! Every check works on exact integers and returns a [`CheckReport`]; an
//! empty counterexample list means every declared grid point was checked
//! and passed. The one exception to exact arithmetic is
//! [`speccong_search`], which only asks divisibility by a fixed modulus and
//! therefore runs the recurrence modulo that number.

mod conjectures;
mod lemmas;
mod report;

pub use conjectures::{
    conjecture_checks, odd_primes_up_to, speccong_holds, speccong_search, ConjectureGrid, ConjectureSelector,
};
pub use lemmas::{
    binom_congruence, check_a_pm_residue, check_a_pm_theorem, check_binom_grid, check_cor0, check_cor2, check_mainthm, check_modp_lemma,
    check_negation, check_nonvanishing, check_parycor2, check_parylem1, check_parylem2, check_parylem3,
    check_parythm3, check_wolstenholme, churchhouse_congruences, modp_exponent, wolstenholme_valuations,
    BinomCongruence, ChiFlag, ResidueDigit,
};
pub use report::{
    counterexamples_to_csv, reports_to_csv, CheckReport, Counterexample, ReportBuilder, StatementKind, MAX_WITNESSES,
};
