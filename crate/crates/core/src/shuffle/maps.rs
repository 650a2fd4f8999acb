//! Star, sharp, `f` and bar maps.
//!
//! Level lists are ordered bottom-up: `levels[0]` is `A_1`, the word applied
//! first.

use crate::error::{Error, Result};

use super::words::{stable_ranks, DigitWord, MultiDigitWord};

fn common_len(levels: &[DigitWord]) -> Result<usize> {
    let n = levels.first().map_or(0, DigitWord::len);
    if levels.iter().any(|w| w.len() != n) {
        return Err(Error::domain("all words must have the same length"));
    }
    Ok(n)
}

/// Accumulated keys `(a*^(k)_i, …, a*^(1)_i)` for every row.
fn accumulated_keys(starred: &[DigitWord], n: usize) -> Vec<Vec<u64>> {
    (0..n)
        .map(|i| starred.iter().rev().map(|w| w.digits()[i]).collect())
        .collect()
}

/// `(A_N … A_1)^*`: level 1 is kept, and level `k+1` is re-read along the
/// stable order of the rows' already starred prefixes.
pub fn star_map(levels: &[DigitWord]) -> Result<Vec<DigitWord>> {
    let n = common_len(levels)?;
    let mut out: Vec<DigitWord> = Vec::with_capacity(levels.len());
    for level in levels {
        let digits = if out.is_empty() {
            level.digits().to_vec()
        } else {
            let rho = stable_ranks(&accumulated_keys(&out, n));
            rho.iter().map(|&r| level.digits()[r - 1]).collect()
        };
        out.push(DigitWord::new(level.b(), digits)?);
    }
    Ok(out)
}

/// Inverse of [`star_map`].
pub fn unstar(starred: &[DigitWord]) -> Result<Vec<DigitWord>> {
    let n = common_len(starred)?;
    let mut out = Vec::with_capacity(starred.len());
    for (k, level) in starred.iter().enumerate() {
        let digits = if k == 0 {
            level.digits().to_vec()
        } else {
            let rho = stable_ranks(&accumulated_keys(&starred[..k], n));
            let mut digits = vec![0; n];
            for (i, &r) in rho.iter().enumerate() {
                digits[r - 1] = level.digits()[i];
            }
            digits
        };
        out.push(DigitWord::new(level.b(), digits)?);
    }
    Ok(out)
}

/// `(A_N … A_1)^♯`: the starred levels packed into one word over `D(b_1⋯b_N)`.
pub fn sharp_word(levels: &[DigitWord]) -> Result<DigitWord> {
    let n = common_len(levels)?;
    let starred = star_map(levels)?;
    let mut base: u64 = 1;
    let mut digits = vec![0u64; n];
    for level in &starred {
        for (acc, &a) in digits.iter_mut().zip(level.digits()) {
            *acc += a * base;
        }
        base = base.checked_mul(level.b()).ok_or(Error::SizeGuard {
            what: "product base",
            needed: base as u128 * level.b() as u128,
            limit: u64::MAX as u128,
        })?;
    }
    DigitWord::new(base, digits)
}

/// `(A_2 A_1)^♯` over `D(b_1 b_2)`.
pub fn sharp_compose(a2: &DigitWord, a1: &DigitWord) -> Result<DigitWord> {
    sharp_word(&[a1.clone(), a2.clone()])
}

/// `f_B(x) = p·x mod B`.
pub fn f_map(x: u64, modulus: u64, p: u64) -> u64 {
    ((p as u128 * x as u128) % modulus as u128) as u64
}

/// Applies `f_b` letterwise.
pub fn f_word(word: &DigitWord, p: u64) -> DigitWord {
    let digits = word.digits().iter().map(|&x| f_map(x, word.b(), p)).collect();
    DigitWord::new(word.b(), digits).expect("f stays in D(b)")
}

/// Prefix sums of the row values, reduced mod `b^N`.
pub fn bar_map(m: &MultiDigitWord) -> MultiDigitWord {
    let modulus = m.modulus() as u128;
    let mut acc = 0u128;
    let values: Vec<u64> = m
        .values()
        .into_iter()
        .map(|v| {
            acc = (acc + v as u128) % modulus;
            acc as u64
        })
        .collect();
    MultiDigitWord::from_values(m.b(), m.places(), &values).expect("reduced values fit")
}

/// Consecutive differences mod `b^N`; inverse of [`bar_map`].
pub fn bar_map_inverse(m: &MultiDigitWord) -> MultiDigitWord {
    let modulus = m.modulus();
    let mut prev = 0u64;
    let values: Vec<u64> = m
        .values()
        .into_iter()
        .map(|v| {
            let d = (v as u128 + modulus as u128 - prev as u128) % modulus as u128;
            prev = v;
            d as u64
        })
        .collect();
    MultiDigitWord::from_values(m.b(), m.places(), &values).expect("reduced values fit")
}
