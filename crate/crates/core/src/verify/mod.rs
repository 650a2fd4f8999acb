//! Named verification suites.
//!
//! Each suite walks a default parameter grid (narrowed by any fields set in
//! [`Grid`]) and compares a closed form or construction against a brute-force
//! recomputation. Every failing case carries a command line that reruns it.

mod algebra;
mod golden;
mod laws;
mod shuffles;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{ProcessParams, Sign};
use crate::rational::{self, Rational};
use crate::rng::DEFAULT_SEED;

pub use laws::{
    carries_law_exhaustive, descent_law_exhaustive, empirical_shuffle_law, exact_carries_law,
    total_variation, JointLaw,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Transition,
    Eigen,
    Duality,
    Symmetry,
    SfNumbers,
    DescentStats,
    Moments,
    ShuffleOnestep,
    BijectionPlus,
    BijectionMinus,
    ShuffleProb,
    Gessel,
    ExamplesGolden,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Transition,
        Suite::Eigen,
        Suite::Duality,
        Suite::Symmetry,
        Suite::SfNumbers,
        Suite::DescentStats,
        Suite::Moments,
        Suite::ShuffleOnestep,
        Suite::BijectionPlus,
        Suite::BijectionMinus,
        Suite::ShuffleProb,
        Suite::Gessel,
        Suite::ExamplesGolden,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Transition => "transition",
            Suite::Eigen => "eigen",
            Suite::Duality => "duality",
            Suite::Symmetry => "symmetry",
            Suite::SfNumbers => "sf-numbers",
            Suite::DescentStats => "descent-stats",
            Suite::Moments => "moments",
            Suite::ShuffleOnestep => "shuffle-onestep",
            Suite::BijectionPlus => "bijection-plus",
            Suite::BijectionMinus => "bijection-minus",
            Suite::ShuffleProb => "shuffle-prob",
            Suite::Gessel => "gessel",
            Suite::ExamplesGolden => "examples-golden",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                Error::domain(format!("unknown suite `{s}`; expected one of {}", names.join(", ")))
            })
    }
}

/// Optional restrictions of a suite's default grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub sign: Option<Sign>,
    pub b: Option<u64>,
    pub n: Option<usize>,
    pub p: Option<Rational>,
    /// Number of steps `N`.
    pub steps: Option<usize>,
    pub cutoff: Option<usize>,
    /// Monte-Carlo sample count; `Some(0)` skips sampling cases.
    pub samples: Option<u64>,
    pub seed: u64,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            sign: None,
            b: None,
            n: None,
            p: None,
            steps: None,
            cutoff: None,
            samples: None,
            seed: DEFAULT_SEED,
        }
    }
}

impl Grid {
    fn allows_sign(&self, s: Sign) -> bool {
        self.sign.map_or(true, |x| x == s)
    }

    fn allows_b(&self, b: u64) -> bool {
        self.b.map_or(true, |x| x == b)
    }

    fn allows_n(&self, n: usize) -> bool {
        self.n.map_or(true, |x| x == n)
    }

    fn allows_p(&self, p: &Rational) -> bool {
        self.p.as_ref().map_or(true, |x| x == p)
    }

    fn allows_steps(&self, steps: usize) -> bool {
        self.steps.map_or(true, |x| x == steps)
    }

    fn allows(&self, key: &CaseKey) -> bool {
        key.sign.map_or(true, |s| self.allows_sign(s))
            && key.b.map_or(true, |b| self.allows_b(b))
            && key.n.map_or(true, |n| self.allows_n(n))
            && key.p.as_ref().map_or(true, |p| self.allows_p(p))
            && key.steps.map_or(true, |s| self.allows_steps(s))
    }

    fn describe(&self) -> String {
        let key = CaseKey {
            sign: self.sign,
            b: self.b,
            n: self.n,
            p: self.p.clone(),
            steps: self.steps,
            cutoff: self.cutoff,
            samples: self.samples,
            seed: None,
        };
        let flags = key.flags();
        if flags.is_empty() {
            "default".to_owned()
        } else {
            flags
        }
    }
}

/// Parameters identifying one case.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct CaseKey {
    pub sign: Option<Sign>,
    pub b: Option<u64>,
    pub n: Option<usize>,
    pub p: Option<Rational>,
    pub steps: Option<usize>,
    pub cutoff: Option<usize>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
}

impl CaseKey {
    pub fn of(params: &ProcessParams) -> Self {
        Self {
            sign: Some(params.sign),
            b: Some(params.b),
            n: Some(params.n),
            p: Some(params.p.clone()),
            ..Self::default()
        }
    }

    pub fn shuffle(sign: Sign, b: u64, n: usize, p: usize, steps: usize) -> Self {
        Self {
            sign: Some(sign),
            b: Some(b),
            n: Some(n),
            p: Some(rational::int(p as i64)),
            steps: Some(steps),
            ..Self::default()
        }
    }

    fn flags(&self) -> String {
        let mut parts = Vec::new();
        if let Some(s) = self.sign {
            parts.push(format!("--sign {s}"));
        }
        if let Some(b) = self.b {
            parts.push(format!("--b {b}"));
        }
        if let Some(n) = self.n {
            parts.push(format!("--n {n}"));
        }
        if let Some(p) = &self.p {
            parts.push(format!("--p {}", rational::render(p)));
        }
        if let Some(s) = self.steps {
            parts.push(format!("--N {s}"));
        }
        if let Some(c) = self.cutoff {
            parts.push(format!("--cutoff {c}"));
        }
        if let Some(s) = self.samples {
            parts.push(format!("--samples {s}"));
        }
        if let Some(s) = self.seed {
            parts.push(format!("--seed {s}"));
        }
        parts.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub case: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reproduce: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub grid: String,
    pub cases: Vec<CaseResult>,
    /// Wall time; left out of the serialized form so reports stay byte-stable.
    #[serde(skip)]
    pub elapsed_ms: u64,
}

impl SuiteReport {
    fn new(suite: Suite, grid: &Grid) -> Self {
        Self {
            suite,
            grid: grid.describe(),
            cases: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.passed)
    }

    pub fn pass_count(&self) -> usize {
        self.cases.iter().filter(|c| c.passed).count()
    }

    /// Records one case. `Ok(detail)` passes; `Err(detail)` fails and gets a
    /// reproduction command.
    pub(crate) fn record(&mut self, label: &str, key: &CaseKey, outcome: Result<String, String>) {
        let flags = key.flags();
        let case = match (label.is_empty(), flags.is_empty()) {
            (true, _) => flags.clone(),
            (false, true) => label.to_owned(),
            (false, false) => format!("{label} [{flags}]"),
        };
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        let reproduce = (!passed).then(|| {
            format!("carries-lab verify {} {}", self.suite.name(), flags)
                .trim_end()
                .to_owned()
        });
        self.cases.push(CaseResult {
            case,
            passed,
            detail,
            reproduce,
        });
    }

    /// Turns a check that may error into a case.
    pub(crate) fn check(
        &mut self,
        label: &str,
        key: &CaseKey,
        f: impl FnOnce() -> Result<Result<String, String>>,
    ) {
        let outcome = f().unwrap_or_else(|e| Err(e.to_string()));
        self.record(label, key, outcome);
    }
}

/// Runs one suite over its grid.
pub fn run_suite(suite: Suite, grid: &Grid) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = SuiteReport::new(suite, grid);
    match suite {
        Suite::Transition => algebra::transition(grid, &mut report),
        Suite::Eigen => algebra::eigen(grid, &mut report),
        Suite::Duality => algebra::duality(grid, &mut report),
        Suite::Symmetry => algebra::symmetry(grid, &mut report),
        Suite::SfNumbers => algebra::sf_numbers(grid, &mut report),
        Suite::DescentStats => algebra::descent_stats(grid, &mut report),
        Suite::Moments => algebra::moments(grid, &mut report),
        Suite::ShuffleOnestep => shuffles::onestep(grid, &mut report),
        Suite::BijectionPlus => shuffles::bijection(Sign::Plus, grid, &mut report),
        Suite::BijectionMinus => shuffles::bijection(Sign::Minus, grid, &mut report),
        Suite::ShuffleProb => shuffles::probability(grid, &mut report),
        Suite::Gessel => shuffles::gessel(grid, &mut report),
        Suite::ExamplesGolden => golden::examples(grid, &mut report),
    }
    if report.cases.is_empty() {
        return Err(Error::invalid(format!(
            "no case of suite `{suite}` matches {}",
            grid.describe()
        )));
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// The two smallest bases `b` for which `(sign, b, ·, p)` is valid.
pub fn smallest_bases(sign: Sign, p: &Rational, count: usize) -> Vec<u64> {
    (2..)
        .filter(|&b| ProcessParams::new(sign, b, 1, p.clone()).is_ok())
        .take(count)
        .collect()
}

/// Every valid `(sign, b, n, p)` with `b ≤ max_b`, `n ≤ max_n`, allowed by `grid`.
pub(crate) fn process_grid(grid: &Grid, max_b: u64, max_n: usize) -> Vec<ProcessParams> {
    let mut out = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        for b in 2..=max_b.max(grid.b.unwrap_or(0)) {
            for n in 1..=max_n.max(grid.n.unwrap_or(0)) {
                for p in ProcessParams::valid_ps(sign, b) {
                    if let Ok(params) = ProcessParams::new(sign, b, n, p) {
                        if grid.allows(&CaseKey::of(&params)) {
                            out.push(params);
                        }
                    }
                }
            }
        }
    }
    out
}

/// `(sign, b, n, p)` over the listed `p`, the two smallest bases each, `n ≤ max_n`.
pub(crate) fn spectral_grid(grid: &Grid, ps: &[Rational], max_n: usize) -> Vec<ProcessParams> {
    let mut ps = ps.to_vec();
    if let Some(p) = &grid.p {
        if !ps.contains(p) {
            ps.push(p.clone());
        }
    }
    let mut out = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        for p in &ps {
            let mut bases = smallest_bases(sign, p, 2);
            if let Some(b) = grid.b {
                if !bases.contains(&b) {
                    bases.push(b);
                }
            }
            for b in bases {
                for n in 1..=max_n.max(grid.n.unwrap_or(0)) {
                    if let Ok(params) = ProcessParams::new(sign, b, n, p.clone()) {
                        if grid.allows(&CaseKey::of(&params)) {
                            out.push(params);
                        }
                    }
                }
            }
        }
    }
    out
}

pub(crate) fn ok_if(cond: bool, pass: impl Into<String>, fail: impl Into<String>) -> Result<String, String> {
    if cond {
        Ok(pass.into())
    } else {
        Err(fail.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn smallest_bases_table() {
        use crate::rational::{frac, int};
        assert_eq!(smallest_bases(Sign::Plus, &int(3), 2), vec![4, 7]);
        assert_eq!(smallest_bases(Sign::Minus, &int(3), 2), vec![2, 5]);
        assert_eq!(smallest_bases(Sign::Minus, &int(4), 2), vec![3, 7]);
        assert_eq!(smallest_bases(Sign::Plus, &frac(3, 2), 2), vec![4, 7]);
        assert_eq!(smallest_bases(Sign::Minus, &frac(3, 2), 2), vec![2, 5]);
    }
}
