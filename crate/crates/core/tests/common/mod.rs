//! Oracles built from first principles, sharing nothing with the library
//! beyond its value types.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use carries_core::rational::{frac, int};
use carries_core::{ProcessParams, Rational, RationalMatrix, Sign};
use num_traits::{One, Zero};

/// `counts[s]` = number of tuples in `{0..b}^n` with digit sum `s`.
pub fn digit_sum_counts(b: u64, n: usize) -> Vec<u128> {
    let mut counts = vec![1u128];
    for _ in 0..n {
        let mut next = vec![0u128; counts.len() + b as usize - 1];
        for (s, &c) in counts.iter().enumerate() {
            for y in 0..b as usize {
                next[s + y] += c;
            }
        }
        counts = next;
    }
    counts
}

/// The constant digit added to every column: `(b−1)(1−1/p)` or `(b+1)/p − 1`.
pub fn column_constant(sign: Sign, b: u64, p: &Rational) -> i64 {
    let value = match sign {
        Sign::Plus => int(b as i64 - 1) * (Rational::one() - p.recip()),
        Sign::Minus => int(b as i64 + 1) / p - Rational::one(),
    };
    assert!(value.is_integer(), "non-integral column constant");
    value.to_integer().try_into().unwrap()
}

/// Transition matrix by convolving the digit-sum distribution.
pub fn transition_by_convolution(params: &ProcessParams) -> RationalMatrix {
    let (b, n) = (params.b, params.n);
    let a = column_constant(params.sign, b, &params.p);
    let counts = digit_sum_counts(b, n);
    let total = Rational::from_integer((b as u128).pow(n as u32).into());
    let dim = if params.p.is_one() { n } else { n + 1 };
    let mut m = RationalMatrix::zeros(dim);
    for i in 0..dim {
        for (s, &c) in counts.iter().enumerate() {
            let q = (i as i64 + s as i64 + a).div_euclid(b as i64);
            let j = match params.sign {
                Sign::Plus => q,
                Sign::Minus => n as i64 - q,
            };
            assert!((0..dim as i64).contains(&j), "left the state space");
            m[(i, j as usize)] += Rational::from_integer(c.into()) / &total;
        }
    }
    m
}

/// Next carry and output digit when a column with digit sum `s` meets carry `c`,
/// digits drawn from `D_d = {d, …, d+b−1}`.
pub fn carry_step(sign: Sign, b: u64, d: i64, c: i64, s: i64) -> i64 {
    let b = b as i64;
    let total = c + s;
    let out = d + (total - d).rem_euclid(b);
    match sign {
        Sign::Plus => (total - out) / b,
        Sign::Minus => (out - total) / b,
    }
}

/// Every carry reachable from 0 when adding `n` numbers over `D_d`.
pub fn reachable_carries(sign: Sign, b: u64, d: i64, n: usize) -> BTreeSet<i64> {
    let sums: Vec<i64> = (0..digit_sum_counts(b, n).len() as i64)
        .map(|s| s + n as i64 * d)
        .collect();
    let mut seen = BTreeSet::from([0]);
    let mut queue = VecDeque::from([0]);
    while let Some(c) = queue.pop_front() {
        for &s in &sums {
            let next = carry_step(sign, b, d, c, s);
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Transition probabilities between the given carries over `D_d`.
pub fn carry_chain(sign: Sign, b: u64, d: i64, n: usize, carries: &[i64]) -> RationalMatrix {
    let counts = digit_sum_counts(b, n);
    let total = Rational::from_integer((b as u128).pow(n as u32).into());
    let mut m = RationalMatrix::zeros(carries.len());
    for (i, &c) in carries.iter().enumerate() {
        for (s, &k) in counts.iter().enumerate() {
            let next = carry_step(sign, b, d, c, s as i64 + n as i64 * d);
            let j = carries.iter().position(|&x| x == next).expect("closed set");
            m[(i, j)] += Rational::from_integer(k.into()) / &total;
        }
    }
    m
}

/// Inverse by Gauss–Jordan elimination; `None` if singular.
pub fn invert(m: &RationalMatrix) -> Option<RationalMatrix> {
    let n = m.dim();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = m.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(RationalMatrix::from_fn(n, |i, j| a[i][n + j].clone()))
}

/// Every colored permutation of `[n]` with `p` colors as window pairs.
pub fn all_colored(n: usize, p: usize) -> Vec<Vec<(usize, usize)>> {
    fn rec(
        n: usize,
        p: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 1..=n {
            if used[k] {
                continue;
            }
            used[k] = true;
            for c in 0..p {
                cur.push((k, c));
                rec(n, p, used, cur, out);
                cur.pop();
            }
            used[k] = false;
        }
    }
    let mut out = Vec::new();
    rec(n, p, &mut vec![false; n + 1], &mut Vec::new(), &mut out);
    out
}

/// Color rank in the standard order: 0 first, then `p−1, p−2, …, 1`.
fn standard_rank(c: usize, p: usize) -> usize {
    if c == 0 {
        0
    } else {
        p - c
    }
}

/// Descents with letters compared by (color rank, position), plus the end rule.
fn count_with(w: &[(usize, usize)], rank: impl Fn(usize) -> usize, end: bool) -> usize {
    let inner = w
        .windows(2)
        .filter(|x| (rank(x[0].1), x[0].0) > (rank(x[1].1), x[1].0))
        .count();
    inner + usize::from(end)
}

pub fn descents(w: &[(usize, usize)], p: usize) -> usize {
    let end = w.last().is_some_and(|&(_, c)| c != 0);
    count_with(w, |c| standard_rank(c, p), end)
}

pub fn dash_descents(w: &[(usize, usize)], p: usize) -> usize {
    if p == 1 {
        return descents(w, p);
    }
    let end = w.last().is_some_and(|&(_, c)| c == p - 1);
    count_with(w, |c| c, end)
}

/// GSR permutation of a word: card `i` goes to its stable rank, colored `a_i mod p`.
pub fn gsr_pairs(word: &[u64], p: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by_key(|&i| (word[i], i));
    let mut pairs = vec![(0, 0); word.len()];
    for (rank, &i) in order.iter().enumerate() {
        pairs[i] = (rank + 1, word[i] as usize % p);
    }
    pairs
}

/// Every word in `{0..b}^len`, first letter varying slowest.
pub fn all_words(b: u64, len: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..b).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

/// `(±b)^{−k}`.
pub fn decay(sign: Sign, b: u64, k: u32) -> Rational {
    let base = int(match sign {
        Sign::Plus => b as i64,
        Sign::Minus => -(b as i64),
    });
    let mut x = Rational::one();
    for _ in 0..k {
        x /= &base;
    }
    x
}

/// Second-moment formulas evaluated without any guard, to expose where they fail.
pub fn raw_variance(params: &ProcessParams, r: u32) -> Rational {
    frac(params.n as i64 + 1, 12) * (Rational::one() - decay(params.sign, params.b, 2 * r))
}

/// Valid processes with `b ≤ max_b`, `n ≤ max_n` and `b^n ≤ 10⁷`, both signs, every `p`.
pub fn process_grid(max_b: u64, max_n: usize) -> Vec<ProcessParams> {
    let mut out = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        for b in 2..=max_b {
            for p in ProcessParams::valid_ps(sign, b) {
                for n in 1..=max_n {
                    if (b as u128).pow(n as u32) <= 10_000_000 {
                        out.push(ProcessParams::new(sign, b, n, p.clone()).unwrap());
                    }
                }
            }
        }
    }
    out
}

/// The `count` smallest bases for which `(±b, ·, p)` is defined.
pub fn smallest_bases(sign: Sign, p: &Rational, count: usize) -> Vec<u64> {
    (2..)
        .filter(|&b| ProcessParams::new(sign, b, 1, p.clone()).is_ok())
        .take(count)
        .collect()
}
