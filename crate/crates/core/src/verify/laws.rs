//! Joint laws of carries and of shuffle descents.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::params::{trace_from_columns, ProcessParams};
use crate::rational::{int, Rational};
use crate::rng::DigitSource;
use crate::shuffle::{sample_sequence_from, DigitWord, ShuffleKind, ShuffleTrace};
use crate::spectral::transition_matrix;

/// Probability of each tuple `(κ_1, …, κ_N)`.
pub type JointLaw = BTreeMap<Vec<usize>, Rational>;

const ENUMERATION_LIMIT: u128 = 10_000_000;

/// Calls `f` on every word of `D(b)^len` in odometer order.
pub(crate) fn for_each_tuple(b: u64, len: usize, mut f: impl FnMut(&[u64]) -> Result<()>) -> Result<()> {
    let total = (b as u128).saturating_pow(len as u32);
    if total > ENUMERATION_LIMIT {
        return Err(Error::SizeGuard {
            what: "digit tuples",
            needed: total,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut digits = vec![0u64; len];
    loop {
        f(&digits)?;
        let Some(pos) = digits.iter().rposition(|&x| x + 1 < b) else {
            return Ok(());
        };
        digits[pos] += 1;
        digits[pos + 1..].iter_mut().for_each(|x| *x = 0);
    }
}

fn normalize(counts: BTreeMap<Vec<usize>, u64>) -> JointLaw {
    let total: u64 = counts.values().sum();
    counts
        .into_iter()
        .map(|(k, c)| (k, Rational::new(c.into(), total.into())))
        .collect()
}

/// Law of `(κ_1, …, κ_N)` from `κ₀ = 0`, by multiplying transition probabilities.
pub fn exact_carries_law(params: &ProcessParams, steps: usize) -> Result<JointLaw> {
    let p = transition_matrix(params)?;
    let mut law: JointLaw = BTreeMap::new();
    law.insert(Vec::new(), Rational::one());
    for _ in 0..steps {
        let mut next = BTreeMap::new();
        for (path, w) in law {
            let from = path.last().copied().unwrap_or(0);
            for (to, x) in p.row(from).iter().enumerate() {
                if !x.is_zero() {
                    let mut longer = path.clone();
                    longer.push(to);
                    next.insert(longer, &w * x);
                }
            }
        }
        law = next;
    }
    Ok(law)
}

/// Law of `(κ_1, …, κ_N)` by running the process on every summand array in `D(b)^{Nn}`.
pub fn carries_law_exhaustive(params: &ProcessParams, steps: usize) -> Result<JointLaw> {
    let n = params.n;
    let mut counts = BTreeMap::new();
    for_each_tuple(params.b, steps * n, |flat| {
        let columns = flat.chunks(n).map(<[u64]>::to_vec).collect();
        let trace = trace_from_columns(params, columns)?;
        *counts.entry(trace.kappas[1..].to_vec()).or_insert(0u64) += 1;
        Ok(())
    })?;
    Ok(normalize(counts))
}

/// Law of the predicted carries of `N` shuffles, over every word tuple in `D(b)^{Nn}`.
pub fn descent_law_exhaustive(
    kind: ShuffleKind,
    b: u64,
    n: usize,
    p: usize,
    steps: usize,
) -> Result<JointLaw> {
    let mut counts = BTreeMap::new();
    for_each_tuple(b, steps * n, |flat| {
        let words = flat
            .chunks(n)
            .map(|c| DigitWord::new(b, c.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        let trace = ShuffleTrace::from_words(kind, p, words)?;
        *counts.entry(trace.predicted_carries()).or_insert(0u64) += 1;
        Ok(())
    })?;
    Ok(normalize(counts))
}

/// Counts of the predicted carries over `samples` seeded shuffle runs.
pub fn empirical_shuffle_law(
    kind: ShuffleKind,
    b: u64,
    n: usize,
    p: usize,
    steps: usize,
    samples: u64,
    seed: u64,
) -> Result<BTreeMap<Vec<usize>, u64>> {
    let mut source = DigitSource::new(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..samples {
        let trace = sample_sequence_from(kind, b, n, p, steps, &mut source)?;
        *counts.entry(trace.predicted_carries()).or_insert(0u64) += 1;
    }
    Ok(counts)
}

/// `½ Σ |count/samples − exact|` over the union of supports, exactly.
pub fn total_variation(exact: &JointLaw, counts: &BTreeMap<Vec<usize>, u64>, samples: u64) -> Rational {
    let mut sum = Rational::zero();
    let n = int(samples as i64);
    for (k, w) in exact {
        let emp = int(counts.get(k).copied().unwrap_or(0) as i64) / &n;
        sum += (emp - w).abs();
    }
    for (k, &c) in counts {
        if !exact.contains_key(k) {
            sum += int(c as i64) / &n;
        }
    }
    sum / int(2)
}
