use serde::Serialize;

use crate::colored_perm::{ColoredPermutation, OrderKey};
use crate::error::{Error, Result};

/// A word of digits over `D(b) = {0, …, b−1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitWord {
    b: u64,
    digits: Vec<u64>,
}

impl Serialize for DigitWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.digits.serialize(s)
    }
}

impl DigitWord {
    pub fn new(b: u64, digits: Vec<u64>) -> Result<Self> {
        if b == 0 {
            return Err(Error::domain("base must be positive"));
        }
        if let Some(bad) = digits.iter().find(|&&x| x >= b) {
            return Err(Error::domain(format!("digit {bad} not in D({b})")));
        }
        Ok(Self { b, digits })
    }

    pub fn zeros(b: u64, n: usize) -> Self {
        Self {
            b: b.max(1),
            digits: vec![0; n],
        }
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }
}

/// `n` summands of `N` base-`b` digits each.
///
/// `columns[j]` holds the digits at place `j + 1` (place 1 is least
/// significant), one per summand.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MultiDigitWord {
    b: u64,
    n: usize,
    columns: Vec<Vec<u64>>,
}

fn checked_modulus(b: u64, places: usize) -> Result<u64> {
    u32::try_from(places)
        .ok()
        .and_then(|e| b.checked_pow(e))
        .ok_or(Error::SizeGuard {
            what: "b^N",
            needed: (b as u128).saturating_pow(places.min(u32::MAX as usize) as u32),
            limit: u64::MAX as u128,
        })
}

impl MultiDigitWord {
    pub fn new(b: u64, n: usize, columns: Vec<Vec<u64>>) -> Result<Self> {
        if b < 2 {
            return Err(Error::domain(format!("base must be at least 2, got {b}")));
        }
        for col in &columns {
            if col.len() != n {
                return Err(Error::domain(format!(
                    "column has {} digits, expected {n}",
                    col.len()
                )));
            }
            if let Some(bad) = col.iter().find(|&&x| x >= b) {
                return Err(Error::domain(format!("digit {bad} not in D({b})")));
            }
        }
        checked_modulus(b, columns.len())?;
        Ok(Self { b, n, columns })
    }

    pub fn zeros(b: u64, n: usize, places: usize) -> Result<Self> {
        Self::new(b, n, vec![vec![0; n]; places])
    }

    /// Builds from rows written most significant digit first, `(X^(N), …, X^(1))`.
    pub fn from_rows(b: u64, rows: &[Vec<u64>]) -> Result<Self> {
        let places = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != places) {
            return Err(Error::domain("rows differ in length"));
        }
        let columns = (0..places)
            .map(|j| rows.iter().map(|r| r[places - 1 - j]).collect())
            .collect();
        Self::new(b, rows.len(), columns)
    }

    /// Expands each value in base `b` over `places` digits.
    pub fn from_values(b: u64, places: usize, values: &[u64]) -> Result<Self> {
        let modulus = checked_modulus(b, places)?;
        if let Some(bad) = values.iter().find(|&&v| v >= modulus) {
            return Err(Error::domain(format!("{bad} needs more than {places} digits in base {b}")));
        }
        let mut columns = vec![Vec::with_capacity(values.len()); places];
        for &v in values {
            let mut rest = v;
            for col in columns.iter_mut() {
                col.push(rest % b);
                rest /= b;
            }
        }
        Ok(Self {
            b,
            n: values.len(),
            columns,
        })
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of digit places `N`.
    pub fn places(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Vec<u64>] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<Vec<u64>> {
        self.columns
    }

    /// Digits at place `j + 1`.
    pub fn column(&self, j: usize) -> DigitWord {
        DigitWord {
            b: self.b,
            digits: self.columns[j].clone(),
        }
    }

    /// `b^N`.
    pub fn modulus(&self) -> u64 {
        checked_modulus(self.b, self.places()).expect("checked at construction")
    }

    /// `(X_i^(N), …, X_i^(1))_b` for 0-based row `i`.
    pub fn row_value(&self, i: usize) -> u64 {
        self.columns
            .iter()
            .rev()
            .fold(0, |acc, col| acc * self.b + col[i])
    }

    pub fn values(&self) -> Vec<u64> {
        (0..self.n).map(|i| self.row_value(i)).collect()
    }

    /// Rows, most significant digit first.
    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.n)
            .map(|i| self.columns.iter().rev().map(|c| c[i]).collect())
            .collect()
    }

    /// Truncation to the lowest `j` places, as a word over `D(b^j)`.
    pub fn truncation(&self, j: usize) -> DigitWord {
        let b = checked_modulus(self.b, j).expect("at most N places");
        let digits = (0..self.n)
            .map(|i| {
                self.columns[..j]
                    .iter()
                    .rev()
                    .fold(0, |acc, col| acc * self.b + col[i])
            })
            .collect();
        DigitWord { b, digits }
    }
}

/// 1-based ranks under a stable sort: ties keep index order.
pub fn stable_ranks<T: Ord>(keys: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&x, &y| keys[x].cmp(&keys[y]));
    let mut ranks = vec![0; keys.len()];
    for (rank, &i) in order.iter().enumerate() {
        ranks[i] = rank + 1;
    }
    ranks
}

/// `π_b[A]`: stable rank of each label, colored by the label mod `p`.
pub fn gsr_to_permutation(word: &DigitWord, p: usize) -> Result<ColoredPermutation> {
    if p == 0 {
        return Err(Error::domain("p must be at least 1"));
    }
    let positions = stable_ranks(&word.digits);
    let colors: Vec<usize> = word.digits.iter().map(|&a| (a % p as u64) as usize).collect();
    ColoredPermutation::from_parts(p, &positions, &colors)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WordDescentVariant {
    /// Plain `>` inside, end descent when `x_n > (b−1)/p`.
    Bar,
    /// The `≺` order inside, end descent when `x_n ≢ 0 (mod p)`.
    Tilde,
    /// Plain `>` inside, end descent when `x_n > (b+1)/p* − 1`.
    BarPrime,
    /// The `≺'` order inside, end descent when `x_n ≡ p−1 (mod p)`.
    TildePrime,
}

/// Counts descents of a digit word in one of the four senses.
pub fn word_descents(word: &DigitWord, p: usize, variant: WordDescentVariant) -> Result<usize> {
    if p == 0 {
        return Err(Error::domain("p must be at least 1"));
    }
    let (b, pu) = (word.b as i64, p as i64);
    let xs = &word.digits;
    let Some(&last) = xs.last() else {
        return Ok(0);
    };
    let split = |x: u64| ((x / p as u64) as usize, (x % p as u64) as usize);
    let (internal, end) = match variant {
        WordDescentVariant::Bar | WordDescentVariant::BarPrime => {
            let threshold = if variant == WordDescentVariant::Bar {
                if (b - 1) % pu != 0 {
                    return Err(Error::domain(format!("(b-1)/p is not an integer for b={b}, p={p}")));
                }
                (b - 1) / pu
            } else {
                if (b + 1) % pu != 0 {
                    return Err(Error::domain(format!("(b+1)/p is not an integer for b={b}, p={p}")));
                }
                (b + 1) / pu * (pu - 1) - 1
            };
            let internal = xs.windows(2).filter(|w| w[0] > w[1]).count();
            (internal, last as i64 > threshold)
        }
        WordDescentVariant::Tilde => {
            let key = |x: u64| {
                let (j, r) = split(x);
                OrderKey::standard(j, r, p)
            };
            let internal = xs.windows(2).filter(|w| key(w[0]) > key(w[1])).count();
            (internal, split(last).1 != 0)
        }
        WordDescentVariant::TildePrime => {
            let key = |x: u64| {
                let (j, r) = split(x);
                OrderKey::dash(j, r)
            };
            let internal = xs.windows(2).filter(|w| key(w[0]) > key(w[1])).count();
            (internal, split(last).1 == p - 1)
        }
    };
    Ok(internal + usize::from(end))
}
