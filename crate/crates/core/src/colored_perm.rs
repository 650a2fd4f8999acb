//! The colored permutation group `G_{p,n} ≅ Z_p ≀ S_n`.
//!
//! An element is a bijection of `Σ = [n] × Z_p` commuting with the color
//! shift `T₁(i, r) = (i, r+1)`, so it is determined by the images of the
//! color-0 points. We store exactly that window: `σ = ((σ(1), σ^c(1)), …,
//! (σ(n), σ^c(n)))` with 1-based positions.
//!
//! Two total orders on `Σ` matter. The standard order lists color 0 first and
//! then colors `p−1, p−2, …, 1`; the dash order lists colors `0, 1, …, p−1`.
//! Within a color block, positions increase.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sort key of a point of `Σ`, compared lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderKey {
    pub color_rank: usize,
    pub position: usize,
}

impl OrderKey {
    /// Key in the standard order: rank 0 for color 0, rank `p − r` for color `r ≥ 1`.
    pub fn standard(position: usize, color: usize, p: usize) -> Self {
        let color_rank = match color {
            0 => 0,
            r => p - r,
        };
        Self {
            color_rank,
            position,
        }
    }

    /// Key in the dash order: rank equals the color.
    pub fn dash(position: usize, color: usize) -> Self {
        Self {
            color_rank: color,
            position,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredPermutation {
    p: usize,
    pairs: Vec<(usize, usize)>,
}

/// Which reversal to apply in [`ColoredPermutation::reverse_map`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReverseVariant {
    /// `σ(i) ↦ n+1−σ(i)`; only for `p = 1`.
    R1,
    /// `(σ(i), σ^c(i)) ↦ (n+1−σ(i), σ^c(i)+1)`; only for `p = 2`.
    R2,
    /// `σ^c(i) ↦ −σ^c(i)`, positions kept; any `p`.
    Prime,
}

impl ColoredPermutation {
    /// Validates that positions form a permutation of `[n]` and colors lie in `Z_p`.
    pub fn new(p: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        if p == 0 {
            return Err(Error::domain("p must be at least 1"));
        }
        let n = pairs.len();
        let mut seen = vec![false; n];
        for &(k, c) in &pairs {
            if k == 0 || k > n || std::mem::replace(&mut seen[k - 1], true) {
                return Err(Error::domain(format!(
                    "positions {:?} are not a permutation of 1..={n}",
                    pairs.iter().map(|x| x.0).collect::<Vec<_>>()
                )));
            }
            if c >= p {
                return Err(Error::domain(format!("color {c} not in Z_{p}")));
            }
        }
        Ok(Self { p, pairs })
    }

    pub fn identity(n: usize, p: usize) -> Self {
        Self {
            p,
            pairs: (1..=n).map(|k| (k, 0)).collect(),
        }
    }

    /// Builds from `(σ(1), …, σ(n))` and the colors; positions are 1-based.
    pub fn from_parts(p: usize, positions: &[usize], colors: &[usize]) -> Result<Self> {
        if positions.len() != colors.len() {
            return Err(Error::domain("positions and colors differ in length"));
        }
        Self::new(p, positions.iter().copied().zip(colors.iter().copied()).collect())
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// `σ(i)` for 1-based `i`.
    pub fn position(&self, i: usize) -> usize {
        self.pairs[i - 1].0
    }

    /// `σ^c(i)` for 1-based `i`.
    pub fn color(&self, i: usize) -> usize {
        self.pairs[i - 1].1
    }

    pub fn is_identity(&self) -> bool {
        self.pairs
            .iter()
            .enumerate()
            .all(|(i, &(k, c))| k == i + 1 && c == 0)
    }

    /// Action on a point `(i, r)` of `Σ`.
    pub fn apply(&self, (i, r): (usize, usize)) -> (usize, usize) {
        let (k, c) = self.pairs[i - 1];
        (k, (c + r) % self.p)
    }

    /// `self ∘ sigma`: `(τ∘σ)(i) = τ(σ(i))`, `(τ∘σ)^c(i) = τ^c(σ(i)) + σ^c(i)`.
    pub fn compose(&self, sigma: &Self) -> Result<Self> {
        if self.p != sigma.p || self.n() != sigma.n() {
            return Err(Error::domain(format!(
                "cannot compose elements of G_({},{}) and G_({},{})",
                self.p,
                self.n(),
                sigma.p,
                sigma.n()
            )));
        }
        Ok(Self {
            p: self.p,
            pairs: sigma.pairs.iter().map(|&(k, c)| self.apply((k, c))).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut pairs = vec![(0, 0); self.n()];
        for (i, &(k, c)) in self.pairs.iter().enumerate() {
            pairs[k - 1] = (i + 1, (self.p - c) % self.p);
        }
        Self { p: self.p, pairs }
    }

    fn count_descents(&self, key: impl Fn(usize, usize) -> OrderKey, end: bool) -> usize {
        let internal = self
            .pairs
            .windows(2)
            .filter(|w| key(w[0].0, w[0].1) > key(w[1].0, w[1].1))
            .count();
        internal + usize::from(end)
    }

    /// `d(σ)`: standard-order descents plus one when `σ^c(n) ≠ 0`.
    pub fn descent_count(&self) -> usize {
        let end = self.pairs.last().is_some_and(|&(_, c)| c != 0);
        self.count_descents(|k, c| OrderKey::standard(k, c, self.p), end)
    }

    /// `d'(σ)`: dash-order descents plus one when `σ^c(n) = p − 1`.
    pub fn dash_descent_count(&self) -> usize {
        if self.p == 1 {
            return self.descent_count();
        }
        let end = self.pairs.last().is_some_and(|&(_, c)| c == self.p - 1);
        self.count_descents(OrderKey::dash, end)
    }

    /// `σ'`: negate every color.
    pub fn prime(&self) -> Self {
        Self {
            p: self.p,
            pairs: self
                .pairs
                .iter()
                .map(|&(k, c)| (k, (self.p - c) % self.p))
                .collect(),
        }
    }

    pub fn reverse_map(&self, variant: ReverseVariant) -> Result<Self> {
        let n = self.n();
        match variant {
            ReverseVariant::R1 if self.p != 1 => Err(Error::domain("R1 needs p = 1")),
            ReverseVariant::R2 if self.p != 2 => Err(Error::domain("R2 needs p = 2")),
            ReverseVariant::R1 | ReverseVariant::R2 => Ok(Self {
                p: self.p,
                pairs: self
                    .pairs
                    .iter()
                    .map(|&(k, c)| (n + 1 - k, (c + 1) % self.p))
                    .collect(),
            }),
            ReverseVariant::Prime => Ok(self.prime()),
        }
    }

    /// `σ ∘ T_q = T_q ∘ σ` on every point of `Σ`.
    pub fn commutes_with_shift(&self, q: usize) -> bool {
        let shift = |(i, r): (usize, usize)| (i, (r + q) % self.p);
        (1..=self.n())
            .all(|i| (0..self.p).all(|r| self.apply(shift((i, r))) == shift(self.apply((i, r)))))
    }

    /// Parses the text form `(k,c)(k,c)…`.
    pub fn parse(text: &str, p: usize) -> Result<Self> {
        let mut pairs = Vec::new();
        for chunk in text.split(')').map(str::trim).filter(|c| !c.is_empty()) {
            let body = chunk
                .strip_prefix('(')
                .ok_or_else(|| Error::domain(format!("malformed pair near `{chunk}`")))?;
            let (k, c) = body
                .split_once(',')
                .ok_or_else(|| Error::domain(format!("malformed pair `{body}`")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::domain(format!("not a number: `{s}`")))
            };
            pairs.push((parse(k)?, parse(c)?));
        }
        Self::new(p, pairs)
    }
}

impl fmt::Display for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in &self.pairs {
            write!(f, "({k},{c})")?;
        }
        Ok(())
    }
}

impl Serialize for ColoredPermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.pairs.serialize(s)
    }
}

/// Largest group the enumerator will walk.
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

pub fn group_order(n: usize, p: usize) -> u128 {
    let fact = (1..=n as u128).fold(1u128, |a, k| a.saturating_mul(k));
    (p as u128).saturating_pow(n as u32).saturating_mul(fact)
}

/// Every element of `G_{p,n}` exactly once: permutations in lexicographic
/// order, and for each of them every coloring in odometer order.
pub fn enumerate_group(n: usize, p: usize) -> Result<GroupIter> {
    if p == 0 {
        return Err(Error::domain("p must be at least 1"));
    }
    let order = group_order(n, p);
    if order > ENUMERATION_LIMIT {
        return Err(Error::SizeGuard {
            what: "group elements",
            needed: order,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(GroupIter {
        p,
        perm: (1..=n).collect(),
        colors: vec![0; n],
        done: false,
    })
}

#[derive(Debug, Clone)]
pub struct GroupIter {
    p: usize,
    perm: Vec<usize>,
    colors: Vec<usize>,
    done: bool,
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl Iterator for GroupIter {
    type Item = ColoredPermutation;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item = ColoredPermutation {
            p: self.p,
            pairs: self.perm.iter().copied().zip(self.colors.iter().copied()).collect(),
        };
        let mut carried = true;
        for c in self.colors.iter_mut().rev() {
            *c += 1;
            if *c < self.p {
                carried = false;
                break;
            }
            *c = 0;
        }
        if carried && !next_permutation(&mut self.perm) {
            self.done = true;
        }
        Some(item)
    }
}
