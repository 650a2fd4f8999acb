//! Suites over shuffles, the bijections and the counting results.

use std::collections::{HashMap, HashSet};

use num_traits::{One, Zero};

use crate::colored_perm::{enumerate_group, ColoredPermutation};
use crate::error::Result;
use crate::params::{ProcessParams, Sign};
use crate::rational::{frac, int, render, Rational};
use crate::shuffle::{
    bijection_minus, bijection_plus, gessel_coefficients, gsr_counts, gsr_to_permutation,
    one_shuffle_descent_law, sharp_compose, shuffle_probability, DigitWord, MultiDigitWord,
    ShuffleKind,
};
use crate::spectral::transition_matrix;

use super::laws::{
    carries_law_exhaustive, descent_law_exhaustive, empirical_shuffle_law, exact_carries_law,
    for_each_tuple, total_variation,
};
use super::{ok_if, CaseKey, Grid, SuiteReport};

fn carries_of_one_shuffle(sign: Sign, sigma: &ColoredPermutation) -> usize {
    let n = sigma.n();
    match sign {
        Sign::Plus => sigma.descent_count(),
        Sign::Minus if sigma.p() == 1 => n - 1 - sigma.descent_count(),
        Sign::Minus => n - sigma.dash_descent_count(),
    }
}

fn integer_ps(sign: Sign, b: u64) -> Vec<usize> {
    let top = match sign {
        Sign::Plus => b - 1,
        Sign::Minus => b + 1,
    };
    (1..=top).filter(|p| top % p == 0).map(|p| p as usize).collect()
}

fn onestep_case(sign: Sign, b: u64, n: usize, p: usize) -> Result<Result<String, String>> {
    let params = ProcessParams::new(sign, b, n, int(p as i64))?;
    let row0 = transition_matrix(&params)?.row(0).to_vec();
    let mut by_words = vec![Rational::zero(); params.dim()];
    let total = int((b as i64).pow(n as u32));
    for (sigma, count) in gsr_counts(b, n, p)? {
        by_words[carries_of_one_shuffle(sign, &sigma)] += int(count as i64) / &total;
    }
    if by_words != row0 {
        return Ok(Err(format!(
            "row 0 {:?} vs shuffle law {:?}",
            row0.iter().map(render).collect::<Vec<_>>(),
            by_words.iter().map(render).collect::<Vec<_>>()
        )));
    }
    if sign == Sign::Plus {
        let mut by_counting = one_shuffle_descent_law(b, n, p)?;
        by_counting.truncate(params.dim());
        if by_counting != row0 {
            return Ok(Err("counting formula disagrees with row 0".to_owned()));
        }
        return Ok(Ok("row 0 = GSR enumeration = counting formula".to_owned()));
    }
    Ok(Ok("row 0 = GSR enumeration".to_owned()))
}

/// `π[(A₂A₁)^♯] = π[A₂]∘π[A₁]` (or `π[A₂]'∘π[A₁]` when `b₁ ≡ −1`) for all words.
fn sharp_case(b1: u64, b2: u64, n: usize, p: usize, primed: bool) -> Result<Result<String, String>> {
    let mut checked = 0u64;
    let mut bad = None;
    for_each_tuple(b1, n, |w1| {
        let a1 = DigitWord::new(b1, w1.to_vec())?;
        let s1 = gsr_to_permutation(&a1, p)?;
        for_each_tuple(b2, n, |w2| {
            let a2 = DigitWord::new(b2, w2.to_vec())?;
            let mut s2 = gsr_to_permutation(&a2, p)?;
            if primed {
                s2 = s2.prime();
            }
            let sharp = gsr_to_permutation(&sharp_compose(&a2, &a1)?, p)?;
            if sharp != s2.compose(&s1)? && bad.is_none() {
                bad = Some(format!("A2={w2:?} A1={w1:?}"));
            }
            checked += 1;
            Ok(())
        })
    })?;
    Ok(match bad {
        Some(b) => Err(format!("sharp word disagrees with composition at {b}")),
        None => Ok(format!("{checked} word pairs")),
    })
}

pub(super) fn onestep(grid: &Grid, report: &mut SuiteReport) {
    for sign in [Sign::Plus, Sign::Minus] {
        for b in 2..=8u64 {
            for n in 1..=4usize {
                for p in integer_ps(sign, b) {
                    let key = CaseKey::shuffle(sign, b, n, p, 1);
                    if grid.allows(&key) {
                        report.check("one step", &key, || onestep_case(sign, b, n, p));
                    }
                }
            }
        }
    }
    for (s1, s2) in [
        (Sign::Plus, Sign::Plus),
        (Sign::Plus, Sign::Minus),
        (Sign::Minus, Sign::Plus),
        (Sign::Minus, Sign::Minus),
    ] {
        for (b1, b2, p) in [(3u64, 3u64, 2usize), (3, 5, 2), (4, 7, 3), (2, 5, 3), (2, 3, 1), (4, 4, 1)] {
            for n in 1..=3usize {
                let (Ok(first), Ok(second)) = (
                    ProcessParams::new(s1, b1, n, int(p as i64)),
                    ProcessParams::new(s2, b2, n, int(p as i64)),
                ) else {
                    continue;
                };
                let key = CaseKey {
                    n: Some(n),
                    p: Some(int(p as i64)),
                    ..CaseKey::default()
                };
                if !grid.allows(&key) || grid.sign.is_some() || grid.b.is_some() {
                    continue;
                }
                let label = format!("composition {s1}{b1} then {s2}{b2}");
                report.check(&label, &key, || {
                    let product_sign = if s1 == s2 { Sign::Plus } else { Sign::Minus };
                    let combined = ProcessParams::new(product_sign, b1 * b2, n, int(p as i64))?;
                    let lhs = &transition_matrix(&first)? * &transition_matrix(&second)?;
                    Ok(ok_if(
                        lhs == transition_matrix(&combined)?,
                        format!("P({s1}{b1})·P({s2}{b2}) = P({product_sign}{})", b1 * b2),
                        "matrix product differs",
                    ))
                });
            }
        }
    }
    for (b1, b2, p, primed) in [
        (3u64, 3u64, 1usize, false),
        (3, 4, 2, false),
        (4, 3, 3, false),
        (4, 7, 3, false),
        (2, 2, 3, true),
        (5, 3, 2, true),
        (2, 5, 3, true),
        (3, 2, 4, true),
    ] {
        let n = 3;
        let key = CaseKey {
            n: Some(n),
            p: Some(int(p as i64)),
            ..CaseKey::default()
        };
        if !grid.allows(&key) || grid.sign.is_some() || grid.b.is_some() {
            continue;
        }
        let label = format!("sharp b1={b1} b2={b2}{}", if primed { " primed" } else { "" });
        report.check(&label, &key, || sharp_case(b1, b2, n, p, primed));
    }
}

fn exhaustive_bijection(sign: Sign, b: u64, n: usize, p: usize, steps: usize) -> Result<Result<String, String>> {
    let mut images = HashSet::new();
    let mut mismatches = 0u64;
    let mut first_bad = None;
    let mut total = 0u64;
    for_each_tuple(b, steps * n, |flat| {
        let columns = flat.chunks(n).map(<[u64]>::to_vec).collect();
        let m = MultiDigitWord::new(b, n, columns)?;
        let trace = match sign {
            Sign::Plus => bijection_plus(&m, p)?,
            Sign::Minus => bijection_minus(&m, p)?,
        };
        if Some(trace.predicted_carries()) != trace.kappas {
            mismatches += 1;
            first_bad.get_or_insert_with(|| format!("{:?}", m.rows()));
        }
        images.insert(trace.words);
        total += 1;
        Ok(())
    })?;
    if mismatches > 0 {
        return Ok(Err(format!(
            "{mismatches}/{total} summand arrays break carries = descents, first {}",
            first_bad.unwrap_or_default()
        )));
    }
    if images.len() as u64 != total {
        return Ok(Err(format!("only {} distinct images of {total} inputs", images.len())));
    }
    let params = ProcessParams::new(sign, b, n, int(p as i64))?;
    let carries = carries_law_exhaustive(&params, steps)?;
    let descents = descent_law_exhaustive(ShuffleKind::from(sign), b, n, p, steps)?;
    Ok(ok_if(
        carries == descents,
        format!("{total}/{total} exhaustive matches, bijective, joint laws equal"),
        "joint laws of carries and descents differ",
    ))
}

fn monte_carlo(
    sign: Sign,
    (b, n, p, steps): (u64, usize, usize, usize),
    samples: u64,
    seed: u64,
) -> Result<Result<String, String>> {
    let params = ProcessParams::new(sign, b, n, int(p as i64))?;
    let exact = exact_carries_law(&params, steps)?;
    let counts = empirical_shuffle_law(ShuffleKind::from(sign), b, n, p, steps, samples, seed)?;
    let tv = total_variation(&exact, &counts, samples);
    let limit = frac(1, 50);
    Ok(ok_if(
        tv < limit,
        format!("TV = {} < 0.02 over {samples} samples", crate::rational::render_decimal(&tv, 5)),
        format!("TV = {} ≥ 0.02 over {samples} samples", crate::rational::render_decimal(&tv, 5)),
    ))
}

/// Alternating `A₋(b), A₋(b)', …` read as one number equals `A₋(b^{2k−1})`
/// (odd length) or `A₊(b^{2k})` (even length).
fn alternating_constants_case(b: u64, p: usize) -> Result<Result<String, String>> {
    let pr = int(p as i64);
    let base = ProcessParams::new(Sign::Minus, b, 1, pr.clone())?;
    let (a, a_dash) = (base.digit_constant() as i128, base.digit_constant_complement() as i128);
    let mut value = 0i128;
    let mut power = 1i128;
    for len in 1..=6u32 {
        value += power * if len % 2 == 1 { a } else { a_dash };
        power *= b as i128;
        let big = b.pow(len);
        let sign = if len % 2 == 1 { Sign::Minus } else { Sign::Plus };
        let expected = ProcessParams::new(sign, big, 1, pr.clone())?.digit_constant() as i128;
        if value != expected {
            return Ok(Err(format!("length {len}: {value} vs {expected}")));
        }
    }
    Ok(Ok("lengths 1..=6".to_owned()))
}

pub(super) fn bijection(sign: Sign, grid: &Grid, report: &mut SuiteReport) {
    let (exhaustive, mc): (&[(u64, usize, usize, usize)], (u64, usize, usize, usize)) = match sign {
        Sign::Plus => (
            &[(3, 2, 1, 2), (3, 2, 2, 2), (4, 2, 3, 2), (2, 3, 1, 2), (5, 2, 2, 2), (3, 2, 1, 3), (4, 2, 3, 3)],
            (7, 4, 3, 3),
        ),
        Sign::Minus => (
            &[(2, 2, 1, 2), (3, 2, 2, 2), (5, 2, 3, 2), (2, 2, 3, 3), (3, 2, 1, 3), (2, 3, 1, 2), (3, 2, 4, 3)],
            (8, 3, 3, 2),
        ),
    };
    for &(b, n, p, steps) in exhaustive {
        let key = CaseKey::shuffle(sign, b, n, p, steps);
        if grid.allows(&key) {
            report.check("exhaustive", &key, || exhaustive_bijection(sign, b, n, p, steps));
        }
    }
    let samples = grid.samples.unwrap_or(1_000_000);
    let (b, n, p, steps) = mc;
    let mut key = CaseKey::shuffle(sign, b, n, p, steps);
    if samples > 0 && grid.allows(&key) {
        key.samples = Some(samples);
        key.seed = Some(grid.seed);
        report.check("monte-carlo", &key, || monte_carlo(sign, mc, samples, grid.seed));
    }
    if sign == Sign::Minus {
        for b in 2..=8u64 {
            for p in integer_ps(Sign::Minus, b) {
                let key = CaseKey {
                    sign: Some(sign),
                    b: Some(b),
                    p: Some(int(p as i64)),
                    ..CaseKey::default()
                };
                if grid.allows(&key) && grid.n.is_none() && grid.steps.is_none() {
                    report.check("alternating constants", &key, || alternating_constants_case(b, p));
                }
            }
        }
    }
}

fn probability_case(b: u64, n: usize, p: usize) -> Result<Result<String, String>> {
    let counts = gsr_counts(b, n, p)?;
    let words = int((b as i64).pow(n as u32));
    let group: Vec<ColoredPermutation> = enumerate_group(n, p)?.collect();
    let mut total = Rational::zero();
    for sigma in &group {
        let prob = shuffle_probability(sigma, b, 1)?;
        let direct = int(counts.get(sigma).copied().unwrap_or(0) as i64) / &words;
        if prob != direct {
            return Ok(Err(format!("r=1, σ={sigma}: formula {} vs words {}", render(&prob), render(&direct))));
        }
        total += prob;
    }
    if !total.is_one() {
        return Ok(Err(format!("probabilities sum to {}", render(&total))));
    }
    let one: HashMap<&ColoredPermutation, Rational> = counts
        .iter()
        .map(|(s, &c)| (s, int(c as i64) / &words))
        .collect();
    let mut two: HashMap<ColoredPermutation, Rational> = HashMap::new();
    for (tau, x) in &one {
        for (mu, y) in &one {
            *two.entry(tau.compose(mu)?).or_insert_with(Rational::zero) += x * y;
        }
    }
    for sigma in &group {
        let prob = shuffle_probability(sigma, b, 2)?;
        let direct = two.get(sigma).cloned().unwrap_or_else(Rational::zero);
        if prob != direct {
            return Ok(Err(format!("r=2, σ={sigma}: formula {} vs convolution {}", render(&prob), render(&direct))));
        }
    }
    Ok(Ok(format!("{} elements at r=1 and r=2, total 1", group.len())))
}

pub(super) fn probability(grid: &Grid, report: &mut SuiteReport) {
    for (b, n, p) in [(3u64, 2usize, 1usize), (4, 2, 3), (3, 3, 2), (5, 2, 2), (7, 2, 3), (4, 3, 3), (2, 3, 1)] {
        let key = CaseKey {
            b: Some(b),
            n: Some(n),
            p: Some(int(p as i64)),
            ..CaseKey::default()
        };
        if grid.allows(&key) && grid.sign != Some(Sign::Minus) {
            report.check("", &key, || probability_case(b, n, p));
        }
    }
}

pub(super) fn gessel(grid: &Grid, report: &mut SuiteReport) {
    let cutoff = grid.cutoff.unwrap_or(3);
    for p in 1..=2usize.max(grid.p.as_ref().and_then(crate::rational::as_i64).unwrap_or(0) as usize) {
        for n in 1..=3usize.max(grid.n.unwrap_or(0)) {
            let key = CaseKey {
                n: Some(n),
                p: Some(int(p as i64)),
                cutoff: Some(cutoff),
                ..CaseKey::default()
            };
            if !grid.allows(&key) {
                continue;
            }
            for d in 0..=n {
                if p == 1 && d == n {
                    continue;
                }
                report.check(&format!("d={d}"), &key, || {
                    let table = gessel_coefficients(n, p, d)?;
                    let bad = table.check_identity(cutoff);
                    Ok(ok_if(
                        bad.is_empty(),
                        format!(
                            "{} representatives agree, identity holds to ({cutoff},{cutoff})",
                            table.representatives
                        ),
                        format!("{} coefficients differ, first {:?}", bad.len(), bad.first()),
                    ))
                });
            }
        }
    }
}
