//! Exact spectral theory of the `(±b, n, p)`-carries process.
//!
//! The transition matrix `P` has eigenvalues `(±1/b)^k`. Its left
//! eigenvectors (rows of `L`) and right eigenvectors (columns of `R = L⁻¹`)
//! depend only on `(n, p)`, not on the base or the sign, so
//! `P = R · D · L` with `D = diag(1, ±1/b, 1/b², …)`.

mod eigen;
mod numbers;
mod symmetry;
mod transition;

use serde::Serialize;

use crate::rational::Rational;

pub use eigen::{
    eigen_system, eigenvalues, left_eigen_matrix, left_entry, right_eigen_alt,
    right_eigen_matrix, right_entry, stationary_distribution, EigenSystem,
};
pub use numbers::{
    descent_statistics, eulerian_by_recursion, stirling_first, stirling_first_table,
    stirling_frobenius, DescentVariant,
};
pub use symmetry::{
    duality_check_left, duality_check_right, symmetry_check, DualityReport, SymmetryClause,
    SymmetryReport,
};
pub use transition::{transition_matrix, transition_oracle, ORACLE_LIMIT};

/// A one-parameter family of numbers indexed by `k = 0, 1, …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatTable {
    pub n: usize,
    #[serde(serialize_with = "crate::rational::serde_rational")]
    pub p: Rational,
    #[serde(serialize_with = "crate::rational::serde_rationals")]
    pub values: Vec<Rational>,
}

impl StatTable {
    pub fn total(&self) -> Rational {
        self.values.iter().sum()
    }
}
