use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, factorial, int, pow, Rational};

use super::eigen::{left_entry, right_entry};
use super::StatTable;

/// Signed Stirling numbers of the first kind `s(k, l)` for `0 ≤ l ≤ k ≤ max`.
///
/// `x(x−1)…(x−k+1) = Σ_l s(k, l) x^l`.
pub fn stirling_first_table(max: usize) -> Vec<Vec<BigInt>> {
    let mut table = vec![vec![BigInt::one()]];
    for k in 0..max {
        let prev = &table[k];
        let row: Vec<BigInt> = (0..=k + 1)
            .map(|l| {
                let from_lower = if l > 0 { prev[l - 1].clone() } else { BigInt::zero() };
                let from_same = prev.get(l).cloned().unwrap_or_default();
                from_lower - from_same * k
            })
            .collect();
        table.push(row);
    }
    table
}

/// `s(k, l)`; zero when `l > k`.
pub fn stirling_first(k: usize, l: usize) -> BigInt {
    if l > k {
        return BigInt::zero();
    }
    stirling_first_table(k)[k][l].clone()
}

/// Stirling–Frobenius cycle numbers `w_0(n), …, w_n(n)` of parameter `p`.
///
/// Built by `w_j(n) = (pn − 1) w_j(n−1) + w_{j−1}(n−1)` from `w_0(0) = 1`, then
/// checked against `n! p^n u_{0, n−j}` from the right eigenvector matrix.
pub fn stirling_frobenius(n: usize, p: &Rational) -> Result<StatTable> {
    if p < &Rational::one() {
        return Err(Error::domain("p must be at least 1"));
    }
    let mut w = vec![Rational::one()];
    for m in 1..=n {
        let factor = p * int(m as i64) - Rational::one();
        let next = (0..=m)
            .map(|j| {
                let same = w.get(j).map(|x| x * &factor).unwrap_or_default();
                let lower = if j > 0 { w[j - 1].clone() } else { Rational::zero() };
                same + lower
            })
            .collect();
        w = next;
    }
    if n > 0 {
        let scale = Rational::from_integer(factorial(n as u64)) * pow(p, n as u32);
        let dim = if p == &Rational::one() { n } else { n + 1 };
        for (j, wj) in w.iter().enumerate() {
            let col = n - j;
            if col >= dim {
                continue;
            }
            let via_right = &scale * right_entry(n, p, 0, col);
            if &via_right != wj {
                return Err(Error::Consistency(format!(
                    "w_{j}({n}) = {} but n! p^n u_(0,{col}) = {}",
                    rational::render(wj),
                    rational::render(&via_right)
                )));
            }
        }
    }
    Ok(StatTable {
        n,
        p: p.clone(),
        values: w,
    })
}

/// Which order the descent table refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DescentVariant {
    /// Color 0 first, then colors `p−1, …, 1`; end descent when the last color is nonzero.
    Standard,
    /// Colors `0, 1, …, p−1`; end descent when the last color is `p−1`.
    Dash,
}

/// `E_p(n, k)` for `k = 0..=n` by `E(n,k) = (pk+1) E(n−1,k) + (p(n+1−k)−1) E(n−1,k−1)`.
pub fn eulerian_by_recursion(n: usize, p: u64) -> Vec<BigInt> {
    let p = p as i64;
    let mut e = vec![BigInt::one()];
    for m in 1..=n as i64 {
        e = (0..=m)
            .map(|k| {
                let same = e
                    .get(k as usize)
                    .map(|x| x * (p * k + 1))
                    .unwrap_or_default();
                let lower = if k > 0 {
                    &e[k as usize - 1] * (p * (m + 1 - k) - 1)
                } else {
                    BigInt::zero()
                };
                same + lower
            })
            .collect();
    }
    e
}

/// `F_p(n, k)` by `F(n,k) = (pk+p−1) F(n−1,k) + (p(n−k)+1) F(n−1,k−1)`, valid for `p ≥ 2`.
fn dash_by_recursion(n: usize, p: u64) -> Vec<BigInt> {
    let p = p as i64;
    let mut f = vec![BigInt::one()];
    for m in 1..=n as i64 {
        f = (0..=m)
            .map(|k| {
                let same = f
                    .get(k as usize)
                    .map(|x| x * (p * k + p - 1))
                    .unwrap_or_default();
                let lower = if k > 0 {
                    &f[k as usize - 1] * (p * (m - k) + 1)
                } else {
                    BigInt::zero()
                };
                same + lower
            })
            .collect();
    }
    f
}

/// Number of elements of `Z_p ≀ S_n` with `k` descents (standard) or
/// `k` dash-descents, for `k = 0..=n`.
///
/// The standard table comes from the recursion and is checked against row 0
/// of the left eigenvector matrix. The dash table uses its own recursion for
/// `p ≥ 2` and is checked against `E_p(n, n−k)`; for `p = 1` both notions
/// coincide.
pub fn descent_statistics(n: usize, p: &Rational, variant: DescentVariant) -> Result<StatTable> {
    let p_nat = rational::as_integer(p)
        .and_then(|v| u64::try_from(v).ok())
        .filter(|&v| v >= 1)
        .ok_or_else(|| {
            Error::domain(format!(
                "descent statistics need p in N, got {}",
                rational::render(p)
            ))
        })?;
    let standard = eulerian_by_recursion(n, p_nat);
    for (k, e) in standard.iter().enumerate() {
        let closed = left_entry(n, p, 0, k);
        if closed != Rational::from_integer(e.clone()) {
            return Err(Error::Consistency(format!(
                "E_{p_nat}({n},{k}) = {e} but v_(0,{k}) = {}",
                rational::render(&closed)
            )));
        }
    }
    let values = match variant {
        DescentVariant::Standard => standard,
        DescentVariant::Dash if p_nat == 1 => standard,
        DescentVariant::Dash => {
            let dash = dash_by_recursion(n, p_nat);
            for k in 0..=n {
                if dash[k] != standard[n - k] {
                    return Err(Error::Consistency(format!(
                        "F_{p_nat}({n},{k}) = {} differs from E_{p_nat}({n},{}) = {}",
                        dash[k],
                        n - k,
                        standard[n - k]
                    )));
                }
            }
            dash
        }
    };
    Ok(StatTable {
        n,
        p: p.clone(),
        values: values.into_iter().map(Rational::from_integer).collect(),
    })
}
