//! Shuffle traces and the carries-to-descents bijections.

use serde::Serialize;

use crate::colored_perm::ColoredPermutation;
use crate::error::{Error, Result};
use crate::params::{trace_from_columns, ProcessParams, Sign};
use crate::rational::int;
use crate::rng::DigitSource;

use super::maps::{bar_map, f_map, unstar};
use super::words::{gsr_to_permutation, DigitWord, MultiDigitWord};

/// How consecutive shuffles compose.
///
/// `Plus`: `σ_r = π[A_r] ∘ σ_{r−1}`. `Minus`: even steps use the primed word,
/// `σ_r = π[A_r]' ∘ σ_{r−1}`, matching the negative-base carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ShuffleKind {
    Plus,
    Minus,
}

impl From<Sign> for ShuffleKind {
    fn from(sign: Sign) -> Self {
        match sign {
            Sign::Plus => ShuffleKind::Plus,
            Sign::Minus => ShuffleKind::Minus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShuffleTrace {
    pub kind: ShuffleKind,
    pub b: u64,
    pub n: usize,
    pub p: usize,
    /// `A_1, …, A_N`.
    pub words: Vec<DigitWord>,
    /// `σ_1, …, σ_N`.
    pub permutations: Vec<ColoredPermutation>,
    /// `d(σ_r)`; for `Minus` the odd steps hold `d'(σ_r)` instead.
    pub descents: Vec<usize>,
    /// `κ_1, …, κ_N` of the summands the trace was built from, if any.
    pub kappas: Option<Vec<usize>>,
}

impl ShuffleTrace {
    pub fn new(kind: ShuffleKind, b: u64, n: usize, p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::domain("p must be at least 1"));
        }
        if b == 0 {
            return Err(Error::domain("base must be positive"));
        }
        Ok(Self {
            kind,
            b,
            n,
            p,
            words: Vec::new(),
            permutations: Vec::new(),
            descents: Vec::new(),
            kappas: None,
        })
    }

    /// Composes the given words in order, starting from the identity.
    pub fn from_words(kind: ShuffleKind, p: usize, words: Vec<DigitWord>) -> Result<Self> {
        let first = words
            .first()
            .ok_or_else(|| Error::domain("need at least one word"))?;
        let mut trace = Self::new(kind, first.b(), first.len(), p)?;
        for w in words {
            trace.push_word(w)?;
        }
        Ok(trace)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// `σ_N`, or the identity for an empty trace.
    pub fn current(&self) -> ColoredPermutation {
        self.permutations
            .last()
            .cloned()
            .unwrap_or_else(|| ColoredPermutation::identity(self.n, self.p))
    }

    /// The group element applied at 1-based step `r`.
    pub fn step_element(&self, r: usize) -> Result<ColoredPermutation> {
        let pi = gsr_to_permutation(&self.words[r - 1], self.p)?;
        Ok(match self.kind {
            ShuffleKind::Minus if r % 2 == 0 => pi.prime(),
            _ => pi,
        })
    }

    /// Appends one shuffle step.
    pub fn push_word(&mut self, word: DigitWord) -> Result<()> {
        if word.b() != self.b || word.len() != self.n {
            return Err(Error::domain(format!(
                "word over D({}) of length {} does not fit a ({}, {}, {}) trace",
                word.b(),
                word.len(),
                self.b,
                self.n,
                self.p
            )));
        }
        self.words.push(word);
        let r = self.words.len();
        let sigma = self.step_element(r)?.compose(&self.current())?;
        let d = match self.kind {
            ShuffleKind::Minus if r % 2 == 1 => sigma.dash_descent_count(),
            _ => sigma.descent_count(),
        };
        self.permutations.push(sigma);
        self.descents.push(d);
        Ok(())
    }

    /// Draws one uniform word from `source` and appends it.
    pub fn shuffle_step(&mut self, source: &mut DigitSource) -> Result<()> {
        let word = DigitWord::new(self.b, source.word(self.b, self.n))?;
        self.push_word(word)
    }

    /// The carries the descents stand for: `d(σ_r)` for `Plus`; for `Minus`,
    /// `n − d'(σ_r)` at odd `r` (`n − 1 − d(σ_r)` when `p = 1`) and `d(σ_r)` at even `r`.
    pub fn predicted_carries(&self) -> Vec<usize> {
        self.descents
            .iter()
            .enumerate()
            .map(|(k, &d)| match self.kind {
                ShuffleKind::Minus if k % 2 == 0 => {
                    let top = if self.p == 1 { self.n - 1 } else { self.n };
                    top - d
                }
                _ => d,
            })
            .collect()
    }
}

/// A run of `steps` shuffles with words drawn from `seed`.
pub fn sample_sequence(
    kind: ShuffleKind,
    b: u64,
    n: usize,
    p: usize,
    steps: usize,
    seed: u64,
) -> Result<ShuffleTrace> {
    sample_sequence_from(kind, b, n, p, steps, &mut DigitSource::new(seed))
}

pub fn sample_sequence_from(
    kind: ShuffleKind,
    b: u64,
    n: usize,
    p: usize,
    steps: usize,
    source: &mut DigitSource,
) -> Result<ShuffleTrace> {
    let mut trace = ShuffleTrace::new(kind, b, n, p)?;
    for _ in 0..steps {
        trace.shuffle_step(source)?;
    }
    Ok(trace)
}

/// Every intermediate table of a bijection run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionStages {
    /// Summands after reversing the even places (negative base only).
    pub reversed: Option<MultiDigitWord>,
    pub barred: MultiDigitWord,
    /// `f_{b^N}` applied to each barred row.
    pub scaled: MultiDigitWord,
    /// `A_1, …, A_N`.
    pub words: Vec<DigitWord>,
}

fn stages(input: &MultiDigitWord, p: usize, reversed: Option<MultiDigitWord>) -> Result<BijectionStages> {
    let source = reversed.as_ref().unwrap_or(input);
    let barred = bar_map(source);
    let modulus = barred.modulus();
    let values: Vec<u64> = barred
        .values()
        .into_iter()
        .map(|v| f_map(v, modulus, p as u64))
        .collect();
    let scaled = MultiDigitWord::from_values(input.b(), input.places(), &values)?;
    let levels: Vec<DigitWord> = (0..scaled.places()).map(|j| scaled.column(j)).collect();
    let words = unstar(&levels)?;
    Ok(BijectionStages {
        reversed,
        barred,
        scaled,
        words,
    })
}

fn check_input(summands: &MultiDigitWord, p: usize, sign: Sign) -> Result<ProcessParams> {
    if summands.places() == 0 {
        return Err(Error::domain("need at least one digit place"));
    }
    ProcessParams::new(sign, summands.b(), summands.n(), int(p as i64))
}

/// Stages of the positive-base bijection: bar map, `f_{b^N}`, inverse star.
pub fn bijection_plus_stages(summands: &MultiDigitWord, p: usize) -> Result<BijectionStages> {
    check_input(summands, p, Sign::Plus)?;
    stages(summands, p, None)
}

/// Sends summand digits to shuffle words with `κ_j = d(σ_j)` for every `j`.
///
/// Requires `b ≡ 1 (mod p)`.
pub fn bijection_plus(summands: &MultiDigitWord, p: usize) -> Result<ShuffleTrace> {
    let params = check_input(summands, p, Sign::Plus)?;
    let st = stages(summands, p, None)?;
    finish(ShuffleKind::Plus, p, st.words, &params, summands)
}

/// Stages of the negative-base bijection: the digits at even places are
/// replaced by `b − 1 − x` before the positive-base pipeline runs.
pub fn bijection_minus_stages(summands: &MultiDigitWord, p: usize) -> Result<BijectionStages> {
    check_input(summands, p, Sign::Minus)?;
    let b = summands.b();
    let columns = summands
        .columns()
        .iter()
        .enumerate()
        .map(|(j, col)| {
            if j % 2 == 1 {
                col.iter().map(|&x| b - 1 - x).collect()
            } else {
                col.clone()
            }
        })
        .collect();
    let reversed = MultiDigitWord::new(b, summands.n(), columns)?;
    stages(summands, p, Some(reversed))
}

/// Negative-base counterpart of [`bijection_plus`]: the returned trace
/// composes with alternating primes and its
/// [`predicted_carries`](ShuffleTrace::predicted_carries) equal `κ⁻_r`.
///
/// Requires `b ≡ −1 (mod p)`. Works for any number of places, odd or even.
pub fn bijection_minus(summands: &MultiDigitWord, p: usize) -> Result<ShuffleTrace> {
    let params = check_input(summands, p, Sign::Minus)?;
    let st = bijection_minus_stages(summands, p)?;
    finish(ShuffleKind::Minus, p, st.words, &params, summands)
}

fn finish(
    kind: ShuffleKind,
    p: usize,
    words: Vec<DigitWord>,
    params: &ProcessParams,
    summands: &MultiDigitWord,
) -> Result<ShuffleTrace> {
    let mut trace = ShuffleTrace::from_words(kind, p, words)?;
    let carries = trace_from_columns(params, summands.columns().to_vec())?;
    trace.kappas = Some(carries.kappas[1..].to_vec());
    Ok(trace)
}
