//! Exact arithmetic for generalized carries processes.
//!
//! The crate models the `(±b, n, p)`-carries process (the Markov chain of the
//! carry digit when adding `n` uniform random numbers in base `±b`, possibly
//! over a shifted digit set), its exact transition matrix and eigenbasis,
//! closed-form carry moments, the colored permutation group `Z_p ≀ S_n`, the
//! `(b, n, p)` riffle shuffle in its GSR form, and the explicit bijections
//! taking summand digits to shuffle words so that carries become descents.
//!
//! Everything is computed over arbitrary-precision rationals. Floating point
//! never appears in the library; rendering to decimals is left to callers.
//!
//! Module map:
//!
//! * [`params`]: process parameters, carry sets, digit expansions, single steps
//!   and seeded simulation.
//! * [`spectral`]: transition matrices, left/right eigenvector matrices,
//!   Stirling and Stirling–Frobenius numbers, descent tables, dualities.
//! * [`moments`]: conditional and stationary carry moments plus a matrix-power
//!   oracle.
//! * [`colored_perm`]: colored permutations, the two orders on `[n] × Z_p`,
//!   descent counters and reverse maps.
//! * [`shuffle`]: GSR words, star/sharp/bar/f maps, the carries-to-descents
//!   bijections and the shuffle counting results.
//! * [`verify`]: named verification suites used by the command-line harness.

pub mod colored_perm;
pub mod error;
pub mod matrix;
pub mod moments;
pub mod params;
pub mod rational;
pub mod rng;
pub mod shuffle;
pub mod spectral;
pub mod verify;

pub use colored_perm::{ColoredPermutation, OrderKey};
pub use error::{Error, Result};
pub use matrix::RationalMatrix;
pub use moments::{MomentReport, Start};
pub use params::{CarrySet, CarriesTrace, ProcessParams, Sign};
pub use rational::Rational;
pub use shuffle::{DigitWord, MultiDigitWord, ShuffleTrace};
pub use spectral::{EigenSystem, StatTable};
pub use verify::{run_suite, Grid, Suite, SuiteReport};
