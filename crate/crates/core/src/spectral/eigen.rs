use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::params::ProcessParams;
use crate::rational::{binomial, factorial, frac, int, pow, Rational};

use super::numbers::stirling_first_table;
use super::transition::transition_matrix;

/// `v_{ij}^{(p)}(n) = Σ_{r=0}^{j} (−1)^r C(n+1, r) (p(j−r) + 1)^{n−i}`.
pub fn left_entry(n: usize, p: &Rational, i: usize, j: usize) -> Rational {
    assert!(i <= n, "row index {i} exceeds n = {n}");
    let e = (n - i) as u32;
    let mut acc = Rational::zero();
    for r in 0..=j {
        let base = p * int((j - r) as i64) + Rational::one();
        let term = Rational::from_integer(binomial(n as u64 + 1, r as u64)) * pow(&base, e);
        if r % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

fn right_entry_with(table: &[Vec<BigInt>], n: usize, p: &Rational, i: usize, j: usize) -> Rational {
    assert!(i <= n && j <= n, "index out of range");
    let nj = n - j;
    let mut acc = Rational::zero();
    for k in i..=n {
        let outer = Rational::new(
            binomial((n - i) as u64, (n - k) as u64),
            factorial(k as u64),
        );
        for l in nj..=k {
            let s = &table[k][l];
            if s.is_zero() {
                continue;
            }
            let mut term = Rational::from_integer(s * binomial(l as u64, nj as u64))
                / pow(p, l as u32)
                * &outer;
            if (l - nj) % 2 == 1 {
                term = -term;
            }
            acc += term;
        }
    }
    acc
}

/// `u_{ij}^{(p)}(n) = Σ_{k=i}^{n} Σ_{l=n−j}^{k} s(k,l) (−1)^{n−j−l} / (k! p^l) · C(l, n−j) C(n−i, n−k)`.
pub fn right_entry(n: usize, p: &Rational, i: usize, j: usize) -> Rational {
    right_entry_with(&stirling_first_table(n), n, p, i, j)
}

/// `L_p`: rows are the left eigenvectors.
pub fn left_eigen_matrix(n: usize, p: &Rational, dim: usize) -> RationalMatrix {
    RationalMatrix::from_fn(dim, |i, j| left_entry(n, p, i, j))
}

/// `R_p`: columns are the right eigenvectors. Built from the closed form, not by inverting `L_p`.
pub fn right_eigen_matrix(n: usize, p: &Rational, dim: usize) -> RationalMatrix {
    let table = stirling_first_table(n);
    RationalMatrix::from_fn(dim, |i, j| right_entry_with(&table, n, p, i, j))
}

/// `u_{ij}^{(p)}(n)` as the coefficient of `x^{n−j}` in
/// `C(n + (x−1)/p − i, n) = Π_{m=0}^{n−1} (n + (x−1)/p − i − m) / n!`.
pub fn right_eigen_alt(n: usize, p: &Rational, i: usize, j: usize) -> Rational {
    // coefficients, lowest degree first
    let mut poly = vec![Rational::one()];
    let slope = p.recip();
    for m in 0..n {
        let constant = int(n as i64 - i as i64 - m as i64) - &slope;
        let mut next = vec![Rational::zero(); poly.len() + 1];
        for (deg, c) in poly.iter().enumerate() {
            next[deg] += c * &constant;
            next[deg + 1] += c * &slope;
        }
        poly = next;
    }
    let scale = Rational::from_integer(factorial(n as u64)).recip();
    poly.get(n - j).map(|c| c * scale).unwrap_or_default()
}

/// `1, ±1/b, (±1/b)², …` for the process dimension.
pub fn eigenvalues(params: &ProcessParams) -> Vec<Rational> {
    let ratio = frac(params.sign.unit(), params.b as i64);
    (0..params.dim()).map(|k| pow(&ratio, k as u32)).collect()
}

/// The diagonalization `P = R · D · L` of one process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenSystem {
    pub left: RationalMatrix,
    pub right: RationalMatrix,
    pub eigenvalues: Vec<Rational>,
}

impl EigenSystem {
    pub fn diagonal(&self) -> RationalMatrix {
        RationalMatrix::diagonal(&self.eigenvalues)
    }

    /// `R · D · L`.
    pub fn recompose(&self) -> RationalMatrix {
        &(&self.right * &self.diagonal()) * &self.left
    }
}

/// Builds `L`, `R`, `D` and verifies `R·L = I` and `P = R·D·L` exactly.
pub fn eigen_system(params: &ProcessParams) -> Result<EigenSystem> {
    let dim = params.dim();
    let system = EigenSystem {
        left: left_eigen_matrix(params.n, &params.p, dim),
        right: right_eigen_matrix(params.n, &params.p, dim),
        eigenvalues: eigenvalues(params),
    };
    if &system.right * &system.left != RationalMatrix::identity(dim) {
        return Err(Error::Consistency(format!("R·L ≠ I for {params}")));
    }
    if system.recompose() != transition_matrix(params)? {
        return Err(Error::Consistency(format!("P ≠ R·D·L for {params}")));
    }
    Ok(system)
}

/// Row 0 of `L_p` normalized to a probability vector.
pub fn stationary_distribution(params: &ProcessParams) -> Vec<Rational> {
    let row: Vec<Rational> = (0..params.dim())
        .map(|j| left_entry(params.n, &params.p, 0, j))
        .collect();
    let total: Rational = row.iter().sum();
    row.into_iter().map(|x| x / &total).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Sign;

    fn scaled_right(n: usize, p: Rational) -> Vec<Vec<String>> {
        let dim = if p == int(1) { n } else { n + 1 };
        let scale = Rational::from_integer(factorial(n as u64)) * pow(&p, n as u32);
        right_eigen_matrix(n, &p, dim).scale(&scale).to_strings()
    }

    #[test]
    fn eulerian_rows() {
        let row: Vec<_> = (0..3).map(|j| left_entry(3, &int(1), 0, j)).collect();
        assert_eq!(row, vec![int(1), int(4), int(1)]);
        let row: Vec<_> = (0..4).map(|j| left_entry(3, &int(2), 0, j)).collect();
        assert_eq!(row, vec![int(1), int(23), int(23), int(1)]);
        for n in 0..5 {
            assert_eq!(left_entry(n, &frac(3, 2), 0, 0), int(1));
        }
    }

    #[test]
    fn scaled_right_matrices() {
        assert_eq!(
            scaled_right(3, int(2)),
            vec![
                vec!["1", "9", "23", "15"],
                vec!["1", "3", "-1", "-3"],
                vec!["1", "-3", "-1", "3"],
                vec!["1", "-9", "23", "-15"],
            ]
        );
        assert_eq!(
            scaled_right(3, int(1)),
            vec![vec!["1", "3", "2"], vec!["1", "0", "-1"], vec!["1", "-3", "2"]]
        );
        assert_eq!(scaled_right(3, frac(3, 2))[0], vec!["1", "6", "39/4", "7/2"]);
    }

    #[test]
    fn alternative_right_entries() {
        let scale = Rational::from_integer(factorial(3)) * int(8);
        assert_eq!(right_eigen_alt(3, &int(2), 0, 3) * scale, int(15));
        assert_eq!(right_eigen_alt(1, &int(1), 0, 0), int(1));
        assert_eq!(right_entry(1, &int(1), 0, 0), int(1));
    }

    #[test]
    fn eigen_values_and_system() {
        let p = ProcessParams::new(Sign::Plus, 2, 2, int(1)).unwrap();
        assert_eq!(eigenvalues(&p), vec![int(1), frac(1, 2)]);
        let m = ProcessParams::new(Sign::Minus, 8, 3, int(3)).unwrap();
        assert_eq!(
            eigenvalues(&m),
            vec![int(1), frac(-1, 8), frac(1, 64), frac(-1, 512)]
        );
        eigen_system(&m).unwrap();
        let q = ProcessParams::new(Sign::Plus, 7, 3, int(3)).unwrap();
        let sys = eigen_system(&q).unwrap();
        let pm = transition_matrix(&q).unwrap();
        for k in 0..4 {
            let col = sys.right.column(k);
            let image = pm.mul_vec(&col);
            let expected: Vec<_> = col.iter().map(|x| x * &sys.eigenvalues[k]).collect();
            assert_eq!(image, expected);
        }
    }

    #[test]
    fn stationary_vectors() {
        let p = ProcessParams::new(Sign::Plus, 2, 2, int(1)).unwrap();
        assert_eq!(stationary_distribution(&p), vec![frac(1, 2), frac(1, 2)]);
        for b in [2, 3, 5] {
            let p = ProcessParams::new(Sign::Plus, b, 3, int(1)).unwrap();
            assert_eq!(
                stationary_distribution(&p),
                vec![frac(1, 6), frac(4, 6), frac(1, 6)]
            );
        }
        let p = ProcessParams::new(Sign::Plus, 3, 3, int(2)).unwrap();
        assert_eq!(
            stationary_distribution(&p),
            vec![frac(1, 48), frac(23, 48), frac(23, 48), frac(1, 48)]
        );
    }
}
