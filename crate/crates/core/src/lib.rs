//! Frobenius-theoretic threshold invariants of hypersurfaces f in
//! F_p[x_1..x_n]: the nu invariants and nested interval estimates of the
//! threshold c^J(f), F-purity and splitting tests, generalized test ideals
//! tau(f^t) with their jumping numbers, and a harness checking that
//! thresholds and jumping numbers describe the same set at grid resolution.
//!
//! Everything is exact: coefficients live in F_p for a machine-word prime,
//! parameters are arbitrary-precision rationals, and ideal questions are
//! decided by reduced grevlex Groebner bases.

pub mod error;
pub mod field;
pub mod frobenius;
pub mod groebner;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod testideal;
pub mod thresholds;

pub use error::{Error, ParseError, Result};
pub use field::{FieldElement, PrimeField};
pub use frobenius::{bracket_power, eth_root, fedder_fpure, splitting_test, FrobeniusLevel};
pub use groebner::Ideal;
pub use monomial::Monomial;
pub use parse::parse_poly;
pub use poly::{Poly, Ring};
pub use rational::{simplest_in, PRational};
pub use testideal::{
    jumping_numbers, test_ideal, verify_correspondence, CheckOutcome, CorrespondenceReport,
    StabilizeOpts, TestIdealProfile,
};
pub use thresholds::{
    fpt, fpt_budgeted, monotonicity_check, nu, nu_budgeted, nu_chain, nu_chain_budgeted,
    scaling_check, threshold_interval, threshold_interval_budgeted, FptResult, ThresholdEstimate,
    DEFAULT_TERM_BUDGET,
};
