//! Process parameters, carry sets and single-step dynamics.
//!
//! A process is fixed by a sign (positive or negative base), the base
//! magnitude `b ≥ 2`, the number of summands `n ≥ 1` and a rational `p ≥ 1`.
//! When the process comes from adding numbers written over the digit set
//! `D_d = {d, …, d+b−1}`, `p` is derived from `(sign, b, d, n)`.
//!
//! States are stored in normalized coordinates `κ ∈ {0, …, dim−1}` where
//! `dim = n` for `p = 1` and `n + 1` otherwise. One step reads `n` digits
//! `Y ∈ {0, …, b−1}^n` and solves
//!
//! ```text
//!   (+)  κ + ΣY + A₊ = κ'·b + s
//!   (−)  κ + ΣY + A₋ = (n − κ')·b + s
//! ```
//!
//! with `A₊ = (b−1)(1 − 1/p)` and `A₋ = (b+1)/p − 1`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, frac, int, Rational};
use crate::rng::DigitSource;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    /// `+1` or `−1`.
    pub fn unit(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// The signed base `±b` as a rational.
    pub fn signed_base(self, b: u64) -> Rational {
        int(self.unit() * b as i64)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "plus" | "pos" => Ok(Sign::Plus),
            "-" | "minus" | "neg" => Ok(Sign::Minus),
            other => Err(Error::domain(format!("sign must be + or -, got `{other}`"))),
        }
    }
}

/// The contiguous carry set `{min, …, max}` of an n-carries process over `D_d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarrySet {
    pub min: i64,
    pub max: i64,
}

impl CarrySet {
    pub fn size(&self) -> usize {
        (self.max - self.min + 1) as usize
    }

    pub fn contains(&self, carry: i64) -> bool {
        (self.min..=self.max).contains(&carry)
    }

    /// Original carry value of a normalized state.
    pub fn to_carry(&self, kappa: usize) -> i64 {
        self.min + kappa as i64
    }

    /// Normalized state of an original carry value.
    pub fn to_state(&self, carry: i64) -> Option<usize> {
        self.contains(carry).then(|| (carry - self.min) as usize)
    }
}

fn check_digit_set(b: u64, d: i64, n: usize) -> Result<()> {
    if b < 2 {
        return Err(Error::domain(format!("base must be at least 2, got {b}")));
    }
    if n == 0 {
        return Err(Error::domain("need at least one summand"));
    }
    if d > 0 || d < 1 - b as i64 {
        return Err(Error::domain(format!(
            "digit offset d = {d} outside [{}, 0]",
            1 - b as i64
        )));
    }
    Ok(())
}

/// `l₊ = d/(b−1)` or `l₋ = −(b+d)/(b+1)`.
fn carry_slope(sign: Sign, b: u64, d: i64) -> Rational {
    match sign {
        Sign::Plus => frac(d, b as i64 - 1),
        Sign::Minus => frac(-(b as i64 + d), b as i64 + 1),
    }
}

/// Carry set of the n-carries process over `(±b, D_d)`.
pub fn derive_carry_set(sign: Sign, b: u64, d: i64, n: usize) -> Result<CarrySet> {
    check_digit_set(b, d, n)?;
    let l = carry_slope(sign, b, d);
    let m = int(n as i64 - 1);
    let lo = (&m * &l).floor();
    let hi = (&m * (&l + Rational::one())).ceil();
    Ok(CarrySet {
        min: rational::as_i64(&lo).expect("floor is integral"),
        max: rational::as_i64(&hi).expect("ceil is integral"),
    })
}

/// `p = 1 / (1 − ⟨(n−1)·l⟩)`, equal to 1 exactly when `(n−1)·l` is an integer.
pub fn derive_p(sign: Sign, b: u64, d: i64, n: usize) -> Result<Rational> {
    check_digit_set(b, d, n)?;
    let x = int(n as i64 - 1) * carry_slope(sign, b, d);
    Ok((Rational::one() - rational::fract(&x)).recip())
}

/// Parameters of one `(±b, n, p)`-carries process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcessParams {
    pub sign: Sign,
    pub b: u64,
    pub n: usize,
    pub p: Rational,
    /// Digit offset, present when the process was built from a digit set.
    pub d: Option<i64>,
    a: i64,
    a_complement: i64,
}

impl ProcessParams {
    /// Validates `(b ∓ 1)/p ∈ ℕ` and precomputes `A_±(b)`.
    pub fn new(sign: Sign, b: u64, n: usize, p: Rational) -> Result<Self> {
        if b < 2 {
            return Err(Error::invalid(format!("base must be at least 2, got {b}")));
        }
        if n == 0 {
            return Err(Error::invalid("need at least one summand"));
        }
        if p < Rational::one() {
            return Err(Error::invalid(format!(
                "p must be at least 1, got {}",
                rational::render(&p)
            )));
        }
        let bi = b as i64;
        let a = match sign {
            Sign::Plus => {
                let q = int(bi - 1) / &p;
                if !q.is_integer() {
                    return Err(Error::invalid(format!(
                        "(b-1)/p = {} is not an integer; the (+{b}, n, {}) process is undefined",
                        rational::render(&q),
                        rational::render(&p)
                    )));
                }
                bi - 1 - rational::as_i64(&q).expect("small")
            }
            Sign::Minus => {
                let q = int(bi + 1) / &p;
                if !q.is_integer() || !q.is_positive() {
                    return Err(Error::invalid(format!(
                        "(b+1)/p = {} is not a positive integer; the (-{b}, n, {}) process is undefined",
                        rational::render(&q),
                        rational::render(&p)
                    )));
                }
                rational::as_i64(&q).expect("small") - 1
            }
        };
        Ok(Self {
            sign,
            b,
            n,
            p,
            d: None,
            a,
            a_complement: bi - 1 - a,
        })
    }

    /// The process of adding `n` numbers written over `D_d` in base `±b`.
    pub fn from_digit_set(sign: Sign, b: u64, d: i64, n: usize) -> Result<Self> {
        let p = derive_p(sign, b, d, n)?;
        let mut params = Self::new(sign, b, n, p).map_err(|e| {
            Error::Consistency(format!("derived p does not define a process: {e}"))
        })?;
        params.d = Some(d);
        Ok(params)
    }

    /// Every `p ≥ 1` for which `(±b, ·, p)` is a valid process, in increasing order.
    pub fn valid_ps(sign: Sign, b: u64) -> Vec<Rational> {
        let top = match sign {
            Sign::Plus => b as i64 - 1,
            Sign::Minus => b as i64 + 1,
        };
        (1..=top).rev().map(|k| frac(top, k)).collect()
    }

    /// `A_±(b)`, the constant digit added in every column.
    pub fn digit_constant(&self) -> i64 {
        self.a
    }

    /// `A_±(b)' = b − 1 − A_±(b)`. Negative (−1) only for the `(−b, n, 1)` process.
    pub fn digit_constant_complement(&self) -> i64 {
        self.a_complement
    }

    pub fn is_p_one(&self) -> bool {
        self.p.is_one()
    }

    /// Number of states: `n` when `p = 1`, else `n + 1`.
    pub fn dim(&self) -> usize {
        if self.is_p_one() {
            self.n
        } else {
            self.n + 1
        }
    }

    /// The conjugate exponent `p* = p/(p−1)`; `None` for `p = 1`.
    pub fn p_star(&self) -> Option<Rational> {
        conjugate(&self.p)
    }

    /// `p` as a natural number, if it is one.
    pub fn integer_p(&self) -> Option<u64> {
        rational::as_integer(&self.p).and_then(|v| v.to_u64())
    }

    /// The same process with `p` replaced.
    pub fn with_p(&self, p: Rational) -> Result<Self> {
        Self::new(self.sign, self.b, self.n, p)
    }

    pub fn with_sign(&self, sign: Sign) -> Result<Self> {
        Self::new(sign, self.b, self.n, self.p.clone())
    }

    /// One transition; see [`step_carry`].
    pub fn step(&self, kappa: usize, digits: &[u64]) -> Result<(usize, u64)> {
        step_carry(self, kappa, digits)
    }
}

impl fmt::Display for ProcessParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}{}, {}, {})",
            self.sign,
            self.b,
            self.n,
            rational::render(&self.p)
        )
    }
}

/// `p* = p/(p−1)` for `p > 1`.
pub fn conjugate(p: &Rational) -> Option<Rational> {
    if p <= &Rational::one() {
        None
    } else {
        Some(p / (p - Rational::one()))
    }
}

/// Applies one step from state `kappa` reading the column `digits ∈ D(b)^n`.
///
/// Returns the next state and the remainder digit `s`.
pub fn step_carry(params: &ProcessParams, kappa: usize, digits: &[u64]) -> Result<(usize, u64)> {
    if digits.len() != params.n {
        return Err(Error::domain(format!(
            "expected {} digits, got {}",
            params.n,
            digits.len()
        )));
    }
    if kappa >= params.dim() {
        return Err(Error::domain(format!(
            "state {kappa} outside 0..{}",
            params.dim()
        )));
    }
    if let Some(&bad) = digits.iter().find(|&&y| y >= params.b) {
        return Err(Error::domain(format!("digit {bad} not in D({})", params.b)));
    }
    let b = params.b as i64;
    let total = kappa as i64 + digits.iter().map(|&y| y as i64).sum::<i64>() + params.a;
    let (q, s) = (total.div_euclid(b), total.rem_euclid(b));
    let next = match params.sign {
        Sign::Plus => q,
        Sign::Minus => params.n as i64 - q,
    };
    if next < 0 || next >= params.dim() as i64 {
        return Err(Error::Consistency(format!(
            "step from {kappa} left the state space of {params}: got {next}"
        )));
    }
    Ok((next as usize, s as u64))
}

/// A run of the carries process together with the digits that drove it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarriesTrace {
    pub params: ProcessParams,
    /// `κ₀, …, κ_N`.
    pub kappas: Vec<usize>,
    /// Remainder digit of each step.
    pub remainders: Vec<u64>,
    /// `columns[j]` holds the `n` summand digits of step `j + 1`.
    pub columns: Vec<Vec<u64>>,
}

/// Runs the process from `κ₀ = 0` over the given digit columns.
pub fn trace_from_columns(params: &ProcessParams, columns: Vec<Vec<u64>>) -> Result<CarriesTrace> {
    let mut kappas = Vec::with_capacity(columns.len() + 1);
    let mut remainders = Vec::with_capacity(columns.len());
    let mut kappa = 0;
    kappas.push(kappa);
    for col in &columns {
        let (next, s) = step_carry(params, kappa, col)?;
        kappa = next;
        kappas.push(kappa);
        remainders.push(s);
    }
    Ok(CarriesTrace {
        params: params.clone(),
        kappas,
        remainders,
        columns,
    })
}

/// Simulates `steps` steps from `κ₀ = 0` with digits drawn from `seed`.
pub fn simulate_trace(params: &ProcessParams, steps: usize, seed: u64) -> CarriesTrace {
    let mut source = DigitSource::new(seed);
    let columns = (0..steps)
        .map(|_| source.word(params.b, params.n))
        .collect();
    trace_from_columns(params, columns).expect("sampled digits are in range")
}

/// Expansion of `x ≥ 0` in base `±b` over `D_d`, least significant digit first.
///
/// Digits are chosen greedily: `a₀ ≡ x (mod b)` inside `D_d`, then the
/// expansion continues with `(x − a₀)/(±b)`. For the positive base with
/// `d = 1 − b` every digit is non-positive, so no `x > 0` has an expansion and
/// a domain error is returned.
pub fn digit_expansion(x: u64, sign: Sign, b: u64, d: i64) -> Result<Vec<i64>> {
    check_digit_set(b, d, 1)?;
    if x == 0 {
        return Ok(vec![0]);
    }
    if sign == Sign::Plus && d == 1 - b as i64 {
        return Err(Error::domain(format!(
            "digits {{{d}..0}} cannot represent {x} > 0 in base +{b}"
        )));
    }
    let bi = b as i128;
    let base = sign.unit() as i128 * bi;
    let top = d as i128 + bi - 1;
    let mut rest = x as i128;
    let mut digits = Vec::new();
    // the magnitude shrinks geometrically; the cap only guards against bad inputs
    while !rest.is_zero() {
        if digits.len() > 256 {
            return Err(Error::Consistency(format!(
                "expansion of {x} in base {base} over D_{d} does not terminate"
            )));
        }
        let r = rest.rem_euclid(bi);
        let a = if r > top { r - bi } else { r };
        digits.push(a as i64);
        rest = (rest - a) / base;
    }
    Ok(digits)
}

/// Evaluates `Σ a_k (±b)^k`.
pub fn evaluate_expansion(digits: &[i64], sign: Sign, b: u64) -> i128 {
    let base = sign.unit() as i128 * b as i128;
    digits.iter().rev().fold(0i128, |acc, &a| acc * base + a as i128)
}
