use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::params::{step_carry, ProcessParams, Sign};
use crate::rational::{self, binomial, int, Rational};

/// Largest number of digit tuples the exhaustive oracle will enumerate.
pub const ORACLE_LIMIT: u128 = 10_000_000;

/// `B_p^±(i, j)`, the total that `n` summand digits plus one slack digit must reach.
fn target_sum(params: &ProcessParams, i: usize, j: usize) -> Result<i64> {
    let b = int(params.b as i64);
    let inv_p = params.p.recip();
    let i = int(i as i64);
    let j = int(j as i64);
    let value = match params.sign {
        Sign::Plus => (&j + &inv_p) * &b - (&i + &inv_p),
        Sign::Minus => {
            (-&j + Rational::one() - &inv_p) * &b - (&i + &inv_p) + int(params.n as i64) * &b
        }
    };
    rational::as_i64(&value).ok_or_else(|| {
        Error::Consistency(format!(
            "B({i}, {j}) = {} is not an integer for {params}",
            rational::render(&value)
        ))
    })
}

/// Closed-form transition matrix.
///
/// `P(i, j) = b^{-n} Σ_r (−1)^r C(n+1, r) C(n + B − br, n)` over `r` with
/// `B − br ≥ 0`, where `B = B_p^±(i, j)`.
pub fn transition_matrix(params: &ProcessParams) -> Result<RationalMatrix> {
    let dim = params.dim();
    let n = params.n as u64;
    let b = params.b as i64;
    let scale = Rational::new(BigInt::one(), BigInt::from(params.b).pow(params.n as u32));
    let mut out = RationalMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            let target = target_sum(params, i, j)?;
            let mut acc = BigInt::zero();
            for r in 0..=n + 1 {
                let rest = target - b * r as i64;
                if rest < 0 {
                    break;
                }
                let term = binomial(n + 1, r) * binomial(n + rest as u64, n);
                if r % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            out[(i, j)] = Rational::from_integer(acc) * &scale;
        }
    }
    Ok(out)
}

/// Transition matrix by exhaustive enumeration of every digit column.
pub fn transition_oracle(params: &ProcessParams) -> Result<RationalMatrix> {
    let tuples = (params.b as u128).saturating_pow(params.n as u32);
    if tuples > ORACLE_LIMIT {
        return Err(Error::SizeGuard {
            what: "digit tuples",
            needed: tuples,
            limit: ORACLE_LIMIT,
        });
    }
    let dim = params.dim();
    let mut counts = vec![vec![0u64; dim]; dim];
    let mut digits = vec![0u64; params.n];
    for _ in 0..tuples {
        for (i, row) in counts.iter_mut().enumerate() {
            let (j, _) = step_carry(params, i, &digits)?;
            row[j] += 1;
        }
        // odometer increment
        for d in digits.iter_mut() {
            *d += 1;
            if *d < params.b {
                break;
            }
            *d = 0;
        }
    }
    let total = BigInt::from(tuples);
    Ok(RationalMatrix::from_fn(dim, |i, j| {
        Rational::new(BigInt::from(counts[i][j]), total.clone())
    }))
}
