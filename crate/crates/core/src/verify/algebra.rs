//! Suites over transition matrices, eigenbases, number triangles and moments.

use crate::colored_perm::enumerate_group;
use crate::moments::{
    first_moment_eigenvector, mean_conditional, moment_eigenvalue, moments_closed_form,
    second_moment_eigenvector, stationary_mean, MomentOracle, Start,
};
use crate::params::ProcessParams;
use crate::rational::{frac, int, pow, render, Rational};
use crate::spectral::{
    descent_statistics, duality_check_left, duality_check_right, eigen_system, stirling_frobenius,
    symmetry_check, transition_matrix, transition_oracle, DescentVariant,
};

use super::{ok_if, process_grid, spectral_grid, CaseKey, Grid, SuiteReport};

fn spectral_ps() -> Vec<Rational> {
    vec![int(1), int(2), int(3), int(4), frac(3, 2)]
}

pub(super) fn transition(grid: &Grid, report: &mut SuiteReport) {
    for params in process_grid(grid, 8, 4) {
        report.check("", &CaseKey::of(&params), || {
            let closed = transition_matrix(&params)?;
            let brute = transition_oracle(&params)?;
            Ok(ok_if(
                closed == brute && closed.is_stochastic(),
                format!("{0}x{0} exact match", closed.dim()),
                format!("formula {closed:?} vs enumeration {brute:?}"),
            ))
        });
    }
}

pub(super) fn eigen(grid: &Grid, report: &mut SuiteReport) {
    for params in spectral_grid(grid, &spectral_ps(), 6) {
        report.check("", &CaseKey::of(&params), || {
            let system = eigen_system(&params)?;
            let p = transition_matrix(&params)?;
            let ratio = frac(params.sign.unit(), params.b as i64);
            for k in 0..params.dim() {
                let lambda = pow(&ratio, k as u32);
                if system.eigenvalues[k] != lambda {
                    return Ok(Err(format!("eigenvalue {k} is {}", render(&system.eigenvalues[k]))));
                }
                let col = system.right.column(k);
                let image = p.mul_vec(&col);
                if image.iter().zip(&col).any(|(x, y)| *x != &lambda * y) {
                    return Ok(Err(format!("column {k} of R is not a right eigenvector")));
                }
                let row = system.left.row(k).to_vec();
                let image = p.vec_mul(&row);
                if image.iter().zip(&row).any(|(x, y)| *x != &lambda * y) {
                    return Ok(Err(format!("row {k} of L is not a left eigenvector")));
                }
            }
            Ok(Ok("R·L=I, P=RDL, eigenvalues (±1/b)^k".to_owned()))
        });
    }
}

pub(super) fn duality(grid: &Grid, report: &mut SuiteReport) {
    let mut ps = vec![int(2), int(3), int(4), frac(3, 2), frac(5, 2), frac(4, 3)];
    if let Some(p) = &grid.p {
        ps = vec![p.clone()];
    }
    for p in ps {
        for n in 1..=6usize.max(grid.n.unwrap_or(0)) {
            let key = CaseKey {
                n: Some(n),
                p: Some(p.clone()),
                ..CaseKey::default()
            };
            if !grid.allows(&key) {
                continue;
            }
            report.check("", &key, || {
                let left = duality_check_left(n, &p)?;
                let right = duality_check_right(n, &p)?;
                Ok(ok_if(
                    left.holds() && right.holds(),
                    format!("left and right, {} entries each", left.checked),
                    format!("left mismatches {:?}, right mismatches {:?}", left.mismatches, right.mismatches),
                ))
            });
        }
    }
}

pub(super) fn symmetry(grid: &Grid, report: &mut SuiteReport) {
    for params in process_grid(grid, 8, 5) {
        report.check("", &CaseKey::of(&params), || {
            let r = symmetry_check(&params)?;
            let names: Vec<String> = r
                .clauses
                .iter()
                .map(|(c, ok)| format!("{c:?}={}", if *ok { "ok" } else { "FAIL" }))
                .collect();
            Ok(ok_if(!r.clauses.is_empty() && r.holds(), names.join(", "), names.join(", ")))
        });
    }
}

pub(super) fn sf_numbers(grid: &Grid, report: &mut SuiteReport) {
    let golden: [(i64, [i64; 4]); 3] = [(1, [0, 2, 3, 1]), (2, [15, 23, 9, 1]), (3, [80, 66, 15, 1])];
    let ps = match &grid.p {
        Some(p) => vec![p.clone()],
        None => vec![int(1), int(2), int(3)],
    };
    for p in ps {
        for n in 1..=6usize.max(grid.n.unwrap_or(0)) {
            let key = CaseKey {
                n: Some(n),
                p: Some(p.clone()),
                ..CaseKey::default()
            };
            if !grid.allows(&key) {
                continue;
            }
            report.check("", &key, || {
                let table = stirling_frobenius(n, &p)?;
                let expected = golden
                    .iter()
                    .find(|(gp, _)| n == 3 && int(*gp) == p)
                    .map(|(_, w)| w.iter().map(|&x| int(x)).collect::<Vec<_>>());
                let rendered: Vec<String> = table.values.iter().map(render).collect();
                Ok(match expected {
                    Some(e) if e != table.values => Err(format!("got {rendered:?}, expected {e:?}")),
                    _ => Ok(format!("w = ({}) matches n!p^n u_(0,n-j)", rendered.join(","))),
                })
            });
        }
    }
}

pub(super) fn descent_stats(grid: &Grid, report: &mut SuiteReport) {
    for p in 1..=3usize {
        for n in 1..=5usize {
            let key = CaseKey {
                n: Some(n),
                p: Some(int(p as i64)),
                ..CaseKey::default()
            };
            if !grid.allows(&key) {
                continue;
            }
            report.check("", &key, || {
                let mut standard = vec![0u64; n + 1];
                let mut dash = vec![0u64; n + 1];
                for sigma in enumerate_group(n, p)? {
                    standard[sigma.descent_count()] += 1;
                    dash[sigma.dash_descent_count()] += 1;
                }
                let e = descent_statistics(n, &int(p as i64), DescentVariant::Standard)?;
                let f = descent_statistics(n, &int(p as i64), DescentVariant::Dash)?;
                let as_ints = |v: &[u64]| v.iter().map(|&x| int(x as i64)).collect::<Vec<_>>();
                Ok(ok_if(
                    e.values == as_ints(&standard) && f.values == as_ints(&dash),
                    format!("E = {standard:?}, F = {dash:?}"),
                    format!("enumerated E = {standard:?}, F = {dash:?}; recursion E = {:?}, F = {:?}", e.values, f.values),
                ))
            });
        }
    }
}

fn moment_case(params: &ProcessParams) -> crate::error::Result<Result<String, String>> {
    let oracle = MomentOracle::new(params, 10)?;
    let mut compared = 0;
    if params.n == 1 {
        for r in 0..=5u32 {
            for i in 0..params.dim() {
                let brute = oracle.report(r, 0, Start::State(i))?;
                if mean_conditional(params, r, i)? != brute.mean {
                    return Ok(Err(format!("mean at i={i} r={r} differs")));
                }
                compared += 1;
            }
            if stationary_mean(params) != oracle.report(r, 0, Start::Stationary)?.mean {
                return Ok(Err("stationary mean differs".to_owned()));
            }
        }
        let refused = moments_closed_form(params, 1, 1, Start::State(0)).is_err()
            && moments_closed_form(params, 1, 0, Start::Stationary).is_err();
        return Ok(ok_if(
            refused,
            format!("{compared} means exact; second-moment forms refused for n = 1"),
            "second-moment closed forms accepted n = 1",
        ));
    }
    for r in 0..=5u32 {
        for s in 0..=5u32 {
            for i in 0..params.dim() {
                let closed = moments_closed_form(params, r, s, Start::State(i))?;
                let brute = oracle.report(r, s, Start::State(i))?;
                if closed != brute {
                    return Ok(Err(format!("i={i} r={r} s={s}: closed {closed:?} vs oracle {brute:?}")));
                }
                compared += 1;
            }
        }
        let closed = moments_closed_form(params, r, 0, Start::Stationary)?;
        let brute = oracle.report(r, 0, Start::Stationary)?;
        if closed != brute {
            return Ok(Err(format!("stationary r={r}: closed {closed:?} vs oracle {brute:?}")));
        }
        compared += 1;
    }
    let p = transition_matrix(params)?;
    for (k, u) in [(1, first_moment_eigenvector(params)), (2, second_moment_eigenvector(params))] {
        let lambda = moment_eigenvalue(params, k);
        if p.mul_vec(&u).iter().zip(&u).any(|(x, y)| *x != &lambda * y) {
            return Ok(Err(format!("u~{k} is not a right eigenvector for {}", render(&lambda))));
        }
    }
    Ok(Ok(format!("{compared} moment reports and u~1, u~2 exact")))
}

pub(super) fn moments(grid: &Grid, report: &mut SuiteReport) {
    for params in process_grid(grid, 8, 4) {
        report.check("", &CaseKey::of(&params), || moment_case(&params));
    }
}
