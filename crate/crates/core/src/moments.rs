//! Carry moments.
//!
//! Closed forms for the conditional mean, variance and covariance of the
//! carries started from a fixed state, and for the stationary mean and
//! autocovariance. [`moments_oracle`] recomputes every quantity from exact
//! matrix powers so the closed forms can be checked without tolerance.
//!
//! The second-moment formulas rest on `ũ₂` being a right eigenvector, which
//! needs at least three states (or `ũ₂ ≡ 0`). With a single summand the chain
//! has at most two states and the formulas are wrong, so they refuse `n = 1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::params::ProcessParams;
use crate::rational::{frac, int, powi, Rational};
use crate::spectral::transition_matrix;

/// Largest step index the oracle accepts.
pub const ORACLE_MAX_STEPS: u32 = 64;

/// Initial condition of the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Start {
    /// `κ₀ = i`.
    State(usize),
    /// `κ₀` drawn from the stationary distribution.
    Stationary,
}

/// Mean and second moments of the carries.
///
/// For `Start::State(i)`: `mean = E[κ_r]`, `variance = Var(κ_r)`,
/// `covariance = Cov(κ_s, κ_{s+r})`, all conditioned on `κ₀ = i`.
/// For `Start::Stationary`: `mean = E_π[κ₀]`, `variance = Var_π(κ₀)`,
/// `covariance = Cov_π(κ_r, κ₀)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MomentReport {
    pub start: Start,
    pub r: u32,
    pub s: u32,
    #[serde(serialize_with = "crate::rational::serde_rational")]
    pub mean: Rational,
    #[serde(serialize_with = "crate::rational::serde_rational")]
    pub variance: Rational,
    #[serde(serialize_with = "crate::rational::serde_rational")]
    pub covariance: Rational,
}

/// `(±b)^{−r}`.
fn decay(params: &ProcessParams, r: u32) -> Rational {
    powi(&int(params.sign.unit() * params.b as i64), -(r as i64))
}

fn centre(params: &ProcessParams) -> Rational {
    frac(params.n as i64 + 1, 2) - params.p.recip()
}

fn twelfth(params: &ProcessParams) -> Rational {
    frac(params.n as i64 + 1, 12)
}

fn check_state(params: &ProcessParams, i: usize) -> Result<()> {
    if i >= params.dim() {
        return Err(Error::domain(format!(
            "start state {i} outside 0..{}",
            params.dim()
        )));
    }
    Ok(())
}

fn check_second_moments(params: &ProcessParams) -> Result<()> {
    if params.n < 2 {
        return Err(Error::domain(
            "second-moment closed forms need n >= 2; with one summand they do not hold",
        ));
    }
    Ok(())
}

/// `E[κ_r | κ₀ = i] = (±b)^{−r}(i + 1/p − (n+1)/2) − 1/p + (n+1)/2`.
pub fn mean_conditional(params: &ProcessParams, r: u32, i: usize) -> Result<Rational> {
    check_state(params, i)?;
    let c = centre(params);
    Ok(decay(params, r) * (int(i as i64) - &c) + c)
}

/// `Var(κ_r | κ₀ = i) = ((n+1)/12)(1 − (±b)^{−2r})`; independent of `i` and `p`.
pub fn variance_conditional(params: &ProcessParams, r: u32, i: usize) -> Result<Rational> {
    check_state(params, i)?;
    check_second_moments(params)?;
    Ok(twelfth(params) * (int(1) - decay(params, 2 * r)))
}

/// `Cov(κ_s, κ_{s+r} | κ₀ = i) = (±b)^{−r} ((n+1)/12)(1 − (±b)^{−2s})`.
pub fn covariance_conditional(params: &ProcessParams, s: u32, r: u32, i: usize) -> Result<Rational> {
    check_state(params, i)?;
    check_second_moments(params)?;
    Ok(decay(params, r) * twelfth(params) * (int(1) - decay(params, 2 * s)))
}

/// `E_π[κ₀] = (n+1)/2 − 1/p`.
pub fn stationary_mean(params: &ProcessParams) -> Rational {
    centre(params)
}

/// `(E_π[κ₀], Cov_π(κ_r, κ₀)) = ((n+1)/2 − 1/p, (±b)^{−r}(n+1)/12)`.
pub fn stationary_moments(params: &ProcessParams, r: u32) -> Result<(Rational, Rational)> {
    check_second_moments(params)?;
    Ok((centre(params), decay(params, r) * twelfth(params)))
}

/// All closed forms packaged like [`moments_oracle`].
pub fn moments_closed_form(
    params: &ProcessParams,
    r: u32,
    s: u32,
    start: Start,
) -> Result<MomentReport> {
    let (mean, variance, covariance) = match start {
        Start::State(i) => (
            mean_conditional(params, r, i)?,
            variance_conditional(params, r, i)?,
            covariance_conditional(params, s, r, i)?,
        ),
        Start::Stationary => {
            let (mean, cov) = stationary_moments(params, r)?;
            (mean, stationary_moments(params, 0)?.1, cov)
        }
    };
    Ok(MomentReport {
        start,
        r,
        s,
        mean,
        variance,
        covariance,
    })
}

fn first_two(dist: &[Rational]) -> (Rational, Rational) {
    let mut m1 = Rational::default();
    let mut m2 = Rational::default();
    for (j, w) in dist.iter().enumerate() {
        let j = int(j as i64);
        m1 += w * &j;
        m2 += w * &j * &j;
    }
    (m1, m2)
}

/// Computes the same quantities as [`moments_closed_form`] from `P^r`, `P^s`
/// and the exact fixed point of `P`.
pub fn moments_oracle(params: &ProcessParams, r: u32, s: u32, start: Start) -> Result<MomentReport> {
    if r > ORACLE_MAX_STEPS || s > ORACLE_MAX_STEPS {
        return Err(Error::domain(format!(
            "oracle step indices are limited to {ORACLE_MAX_STEPS}"
        )));
    }
    MomentOracle::new(params, r + s)?.report(r, s, start)
}

/// Matrix powers `P⁰ … P^max` and the stationary vector, kept for repeated queries.
#[derive(Debug, Clone)]
pub struct MomentOracle {
    dim: usize,
    powers: Vec<RationalMatrix>,
    stationary: Vec<Rational>,
}

impl MomentOracle {
    pub fn new(params: &ProcessParams, max_steps: u32) -> Result<Self> {
        let p = transition_matrix(params)?;
        let mut powers = vec![RationalMatrix::identity(p.dim())];
        for k in 0..max_steps as usize {
            let next = &powers[k] * &p;
            powers.push(next);
        }
        Ok(Self {
            dim: p.dim(),
            stationary: p.fixed_point()?,
            powers,
        })
    }

    /// Needs `r + s` within the precomputed range.
    pub fn report(&self, r: u32, s: u32, start: Start) -> Result<MomentReport> {
        let (ru, su) = (r as usize, s as usize);
        if ru + su >= self.powers.len() {
            return Err(Error::domain(format!(
                "r + s = {} exceeds the precomputed {} powers",
                ru + su,
                self.powers.len() - 1
            )));
        }
        let pr = &self.powers[ru];
        let (mean, variance, covariance) = match start {
            Start::State(i) => {
                if i >= self.dim {
                    return Err(Error::domain(format!("start state {i} outside 0..{}", self.dim)));
                }
                let ps = &self.powers[su];
                let (mean, second) = first_two(pr.row(i));
                let variance = &second - &mean * &mean;
                let (mean_s, _) = first_two(ps.row(i));
                let mean_sr = first_two(self.powers[ru + su].row(i)).0;
                let joint = joint_product(ps.row(i), pr);
                (mean, variance, joint - mean_s * mean_sr)
            }
            Start::Stationary => {
                let (mean, second) = first_two(&self.stationary);
                let joint = joint_product(&self.stationary, pr);
                (mean.clone(), &second - &mean * &mean, joint - &mean * &mean)
            }
        };
        Ok(MomentReport {
            start,
            r,
            s,
            mean,
            variance,
            covariance,
        })
    }
}

/// `Σ_{j,k} j k w(j) M(j, k)`.
fn joint_product(weights: &[Rational], m: &RationalMatrix) -> Rational {
    let mut acc = Rational::default();
    for (j, w) in weights.iter().enumerate() {
        for (k, x) in m.row(j).iter().enumerate() {
            acc += w * x * int((j * k) as i64);
        }
    }
    acc
}

/// `ũ₁(i) = i + 1/p − (n+1)/2`, a right eigenvector for `(±b)^{−1}`.
pub fn first_moment_eigenvector(params: &ProcessParams) -> Vec<Rational> {
    let c = centre(params);
    (0..params.dim()).map(|i| int(i as i64) - &c).collect()
}

/// `ũ₂(i) = (i + 1/p − (n+1)/2)² − (n+1)/12`, a right eigenvector for `(±b)^{−2}`.
pub fn second_moment_eigenvector(params: &ProcessParams) -> Vec<Rational> {
    let t = twelfth(params);
    first_moment_eigenvector(params)
        .into_iter()
        .map(|x| &x * &x - &t)
        .collect()
}

/// Eigenvalue `(±b)^{−k}` paired with the moment eigenvectors.
pub fn moment_eigenvalue(params: &ProcessParams, k: u32) -> Rational {
    decay(params, k)
}
