//! Exact shuffle probabilities and the coefficient table behind them.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::colored_perm::{enumerate_group, group_order, ColoredPermutation};
use crate::error::{Error, Result};
use crate::rational::{binomial, Rational};

use super::words::{gsr_to_permutation, DigitWord};

/// Largest group for which [`gessel_coefficients`] runs its pairwise scan.
pub const GESSEL_LIMIT: u128 = 5_000;

/// Largest word space [`gsr_counts`] enumerates.
const WORD_LIMIT: u128 = 10_000_000;

/// Probability that `r` independent `(b, n, p)`-shuffles produce `sigma`:
/// `b^{−rn} · C(n + (b^r − 1)/p − d(σ⁻¹), n)`.
///
/// Requires `b ≡ 1 (mod p)`.
pub fn shuffle_probability(sigma: &ColoredPermutation, b: u64, r: u32) -> Result<Rational> {
    let (n, p) = (sigma.n() as u64, sigma.p() as u64);
    if b < 2 || (b - 1) % p != 0 {
        return Err(Error::domain(format!("need b ≡ 1 (mod p), got b={b}, p={p}")));
    }
    let br = b.checked_pow(r).ok_or(Error::SizeGuard {
        what: "b^r",
        needed: (b as u128).saturating_pow(r),
        limit: u64::MAX as u128,
    })?;
    let top = n + (br - 1) / p - sigma.inverse().descent_count() as u64;
    let den = num_traits::pow(BigInt::from(br), n as usize);
    Ok(Rational::new(binomial(top, n), den))
}

/// How many words of `D(b)^n` map to each element under `π_b`.
pub fn gsr_counts(b: u64, n: usize, p: usize) -> Result<HashMap<ColoredPermutation, u64>> {
    let total = (b as u128).saturating_pow(n as u32);
    if total > WORD_LIMIT {
        return Err(Error::SizeGuard {
            what: "GSR words",
            needed: total,
            limit: WORD_LIMIT,
        });
    }
    let mut counts = HashMap::new();
    let mut digits = vec![0u64; n];
    loop {
        let sigma = gsr_to_permutation(&DigitWord::new(b, digits.clone())?, p)?;
        *counts.entry(sigma).or_insert(0) += 1;
        let Some(pos) = digits.iter().rposition(|&x| x + 1 < b) else {
            break;
        };
        digits[pos] += 1;
        digits[pos + 1..].iter_mut().for_each(|x| *x = 0);
    }
    Ok(counts)
}

/// Law of `d(σ)` after one shuffle, from [`shuffle_probability`] summed over the group.
pub fn one_shuffle_descent_law(b: u64, n: usize, p: usize) -> Result<Vec<Rational>> {
    let mut law = vec![Rational::zero(); n + 1];
    for sigma in enumerate_group(n, p)? {
        law[sigma.descent_count()] += shuffle_probability(&sigma, b, 1)?;
    }
    Ok(law)
}

/// `c_{ij}^d = #{(τ, μ) : d(τ) = i, d(μ) = j, τμ = σ}` for `d(σ) = d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GesselTable {
    pub n: usize,
    pub p: usize,
    pub d: usize,
    /// `coefficients[i][j]`, indices `0..=n`.
    pub coefficients: Vec<Vec<u64>>,
    /// How many `σ` with `d(σ) = d` were checked to give this same table.
    pub representatives: usize,
}

/// A coefficient where the generating identity fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GesselMismatch {
    pub a: usize,
    pub b: usize,
    pub lhs: String,
    pub rhs: String,
}

impl GesselTable {
    /// Compares the coefficients of `s^a t^b` for `a, b ≤ cutoff` in
    /// `Σ c_{ij} s^i t^j / ((1−s)^{n+1}(1−t)^{n+1})` and
    /// `Σ C(n + pab + a + b − d, n) s^a t^b`. Returns the mismatches.
    pub fn check_identity(&self, cutoff: usize) -> Vec<GesselMismatch> {
        let n = self.n as u64;
        let mut out = Vec::new();
        for a in 0..=cutoff {
            for b in 0..=cutoff {
                let mut lhs = BigInt::zero();
                for (i, row) in self.coefficients.iter().enumerate().take(a + 1) {
                    for (j, &c) in row.iter().enumerate().take(b + 1) {
                        if c != 0 {
                            lhs += BigInt::from(c)
                                * binomial(n + (a - i) as u64, n)
                                * binomial(n + (b - j) as u64, n);
                        }
                    }
                }
                let (a64, b64) = (a as u64, b as u64);
                let rhs = binomial(n + self.p as u64 * a64 * b64 + a64 + b64 - self.d as u64, n);
                if lhs != rhs {
                    out.push(GesselMismatch {
                        a,
                        b,
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
        }
        out
    }
}

/// Builds `c_{ij}^d` from every `σ` with `d(σ) = d` and fails if two of them disagree.
pub fn gessel_coefficients(n: usize, p: usize, d: usize) -> Result<GesselTable> {
    let order = group_order(n, p);
    if order > GESSEL_LIMIT {
        return Err(Error::SizeGuard {
            what: "group elements for pair scan",
            needed: order,
            limit: GESSEL_LIMIT,
        });
    }
    let group: Vec<ColoredPermutation> = enumerate_group(n, p)?.collect();
    let inverses: Vec<ColoredPermutation> = group.iter().map(ColoredPermutation::inverse).collect();
    let descents: Vec<usize> = group.iter().map(ColoredPermutation::descent_count).collect();
    let mut table: Option<Vec<Vec<u64>>> = None;
    let mut representatives = 0;
    for (sigma, _) in group.iter().zip(&descents).filter(|(_, &ds)| ds == d) {
        let mut c = vec![vec![0u64; n + 1]; n + 1];
        for (tau_inv, &dt) in inverses.iter().zip(&descents) {
            let mu = tau_inv.compose(sigma)?;
            c[dt][mu.descent_count()] += 1;
        }
        match &table {
            None => table = Some(c),
            Some(t) if *t != c => {
                return Err(Error::Consistency(format!(
                    "c_ij for d={d} differs between representatives; first differing σ = {sigma}"
                )))
            }
            Some(_) => {}
        }
        representatives += 1;
    }
    let coefficients = table.ok_or_else(|| {
        Error::domain(format!("no element of G_({p},{n}) has {d} descents"))
    })?;
    Ok(GesselTable {
        n,
        p,
        d,
        coefficients,
        representatives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use num_traits::One;

    #[test]
    fn identity_probability() {
        let id = ColoredPermutation::identity(2, 1);
        assert_eq!(shuffle_probability(&id, 3, 1).unwrap(), frac(6, 9));
        assert_eq!(gsr_counts(3, 2, 1).unwrap()[&id], 6);
    }

    #[test]
    fn unique_word_example() {
        let s = ColoredPermutation::parse("(6,2)(5,1)(2,1)(3,2)(1,0)(7,0)(4,0)", 3).unwrap();
        let w = DigitWord::new(7, vec![5, 4, 1, 2, 0, 6, 3]).unwrap();
        assert_eq!(gsr_to_permutation(&w, 3).unwrap(), s);
        let expected = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(7), 7));
        assert_eq!(shuffle_probability(&s, 7, 1).unwrap(), expected);
    }

    #[test]
    fn probabilities_sum_to_one() {
        let total: Rational = enumerate_group(2, 3)
            .unwrap()
            .map(|s| shuffle_probability(&s, 4, 1).unwrap())
            .sum();
        assert!(total.is_one());
        assert!(shuffle_probability(&ColoredPermutation::identity(2, 3), 5, 1).is_err());
    }

    #[test]
    fn gessel_small() {
        let t = gessel_coefficients(1, 1, 0).unwrap();
        assert_eq!(t.coefficients, vec![vec![1, 0], vec![0, 0]]);
        assert!(t.check_identity(3).is_empty());
        let t = gessel_coefficients(2, 1, 0).unwrap();
        assert!(t.check_identity(3).is_empty());
        let t = gessel_coefficients(3, 2, 1).unwrap();
        assert_eq!(t.representatives, 23);
        assert!(t.check_identity(3).is_empty());
        assert!(gessel_coefficients(2, 1, 2).is_err());
    }
}
