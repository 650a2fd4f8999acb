use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{conjugate, ProcessParams, Sign};
use crate::rational::{self, int, powi, Rational};

use super::eigen::{left_entry, right_entry};
use super::transition::transition_matrix;

/// Outcome of an entrywise duality comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub n: usize,
    #[serde(serialize_with = "crate::rational::serde_rational")]
    pub p: Rational,
    #[serde(serialize_with = "crate::rational::serde_rational")]
    pub p_star: Rational,
    pub checked: usize,
    /// `(i, j)` where the identity failed.
    pub mismatches: Vec<(usize, usize)>,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn conjugate_or_reject(p: &Rational) -> Result<Rational> {
    conjugate(p).ok_or_else(|| {
        Error::domain(format!(
            "duality needs p > 1 (p* is infinite for p = 1), got {}",
            rational::render(p)
        ))
    })
}

fn sign_power(k: usize) -> Rational {
    if k % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// Checks `v^{(p*)}_{i,j}(n) = (−1)^i (p*/p)^{n−i} v^{(p)}_{i,n−j}(n)` for all `0 ≤ i, j ≤ n`.
pub fn duality_check_left(n: usize, p: &Rational) -> Result<DualityReport> {
    let p_star = conjugate_or_reject(p)?;
    let ratio = &p_star / p;
    let mut mismatches = Vec::new();
    for i in 0..=n {
        let factor = sign_power(i) * powi(&ratio, (n - i) as i64);
        for j in 0..=n {
            if left_entry(n, &p_star, i, j) != &factor * left_entry(n, p, i, n - j) {
                mismatches.push((i, j));
            }
        }
    }
    Ok(DualityReport {
        n,
        p: p.clone(),
        p_star,
        checked: (n + 1) * (n + 1),
        mismatches,
    })
}

/// Checks `u^{(p*)}_{ij}(n) = (−1)^j (p/p*)^{n−j} u^{(p)}_{n−i,j}(n)` for all `0 ≤ i, j ≤ n`.
pub fn duality_check_right(n: usize, p: &Rational) -> Result<DualityReport> {
    let p_star = conjugate_or_reject(p)?;
    let ratio = p / &p_star;
    let mut mismatches = Vec::new();
    for j in 0..=n {
        let factor = sign_power(j) * powi(&ratio, (n - j) as i64);
        for i in 0..=n {
            if right_entry(n, &p_star, i, j) != &factor * right_entry(n, p, n - i, j) {
                mismatches.push((i, j));
            }
        }
    }
    Ok(DualityReport {
        n,
        p: p.clone(),
        p_star,
        checked: (n + 1) * (n + 1),
        mismatches,
    })
}

/// The index symmetries of transition matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryClause {
    /// `P₁⁺(i, j) = P₁⁺(n−1−i, n−1−j)`.
    CentralPlusP1,
    /// `P₁⁻(i, j) = P₁⁺(i, n−1−j)`.
    MinusFromPlusP1,
    /// `P₂⁻(i, j) = P₂⁺(i, n−j)`.
    MinusFromPlusP2,
    /// `P_p^±(i, j) = P_{p*}^±(n−i, n−j)` for `p > 1`.
    Conjugate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub clauses: Vec<(SymmetryClause, bool)>,
}

impl SymmetryReport {
    pub fn holds(&self) -> bool {
        self.clauses.iter().all(|(_, ok)| *ok)
    }
}

/// Runs every symmetry clause that applies to `params`.
///
/// The `p = 1` clauses need both signs at base `b`, the `p = 2` clause needs
/// `b` odd, and the conjugate clause needs `p > 1`.
pub fn symmetry_check(params: &ProcessParams) -> Result<SymmetryReport> {
    let n = params.n;
    let mut clauses = Vec::new();
    let plus = params.with_sign(Sign::Plus);
    let minus = params.with_sign(Sign::Minus);
    if params.is_p_one() {
        let pp = transition_matrix(&plus?)?;
        let pm = transition_matrix(&minus?)?;
        let central = all_pairs(n, |i, j| pp[(i, j)] == pp[(n - 1 - i, n - 1 - j)]);
        let flipped = all_pairs(n, |i, j| pm[(i, j)] == pp[(i, n - 1 - j)]);
        clauses.push((SymmetryClause::CentralPlusP1, central));
        clauses.push((SymmetryClause::MinusFromPlusP1, flipped));
    } else {
        if params.p == int(2) {
            if let (Ok(plus), Ok(minus)) = (plus, minus) {
                let pp = transition_matrix(&plus)?;
                let pm = transition_matrix(&minus)?;
                let ok = all_pairs(n + 1, |i, j| pm[(i, j)] == pp[(i, n - j)]);
                clauses.push((SymmetryClause::MinusFromPlusP2, ok));
            }
        }
        let p_star = params.p_star().expect("p > 1");
        let here = transition_matrix(params)?;
        let there = transition_matrix(&params.with_p(p_star)?)?;
        let ok = all_pairs(n + 1, |i, j| here[(i, j)] == there[(n - i, n - j)]);
        clauses.push((SymmetryClause::Conjugate, ok));
    }
    Ok(SymmetryReport { clauses })
}

fn all_pairs(dim: usize, mut f: impl FnMut(usize, usize) -> bool) -> bool {
    (0..dim).all(|i| (0..dim).all(|j| f(i, j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn dualities_small() {
        assert!(duality_check_left(2, &int(3)).unwrap().holds());
        assert!(duality_check_right(2, &int(3)).unwrap().holds());
        assert!(duality_check_right(3, &int(3)).unwrap().holds());
        assert!(duality_check_left(4, &frac(5, 2)).unwrap().holds());
        assert!(duality_check_left(3, &int(1)).is_err());
    }

    #[test]
    fn symmetry_clauses() {
        let p = ProcessParams::new(Sign::Plus, 2, 2, int(1)).unwrap();
        let r = symmetry_check(&p).unwrap();
        assert_eq!(r.clauses.len(), 2);
        assert!(r.holds());
        let q = ProcessParams::new(Sign::Plus, 7, 2, int(3)).unwrap();
        let r = symmetry_check(&q).unwrap();
        assert_eq!(r.clauses, vec![(SymmetryClause::Conjugate, true)]);
        let t = ProcessParams::new(Sign::Minus, 5, 3, int(2)).unwrap();
        let r = symmetry_check(&t).unwrap();
        assert_eq!(r.clauses.len(), 2);
        assert!(r.holds());
    }
}
