//! One line per acceptance criterion, written straight to stdout so it shows
//! up even when the harness captures test output.

mod common;

use std::io::Write;
use std::time::Instant;

use carries_core::colored_perm::enumerate_group;
use carries_core::moments::{
    first_moment_eigenvector, mean_conditional, moment_eigenvalue, moments_closed_form,
    second_moment_eigenvector, stationary_mean, MomentOracle,
};
use carries_core::params::{derive_carry_set, derive_p};
use carries_core::rational::{factorial, frac, int, pow};
use carries_core::shuffle::{
    bijection_minus, bijection_plus, gessel_coefficients, gsr_counts, shuffle_probability,
    ShuffleKind,
};
use carries_core::spectral::{
    descent_statistics, eigen_system, right_eigen_matrix, right_entry, stirling_frobenius,
    symmetry_check, transition_matrix, transition_oracle, DescentVariant, SymmetryClause,
};
use carries_core::verify::{
    carries_law_exhaustive, descent_law_exhaustive, empirical_shuffle_law, exact_carries_law,
    total_variation,
};
use carries_core::{
    run_suite, ColoredPermutation, Grid, MultiDigitWord, ProcessParams, Rational, Result, Sign,
    Start, Suite,
};
use num_traits::{One, Zero};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        pass,
        detail: detail.into(),
    })
}

fn q(n: i64, d: i64) -> Rational {
    frac(n, d)
}

fn ints(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
}

fn golden_matrices() -> Result<Outcome> {
    let cases: Vec<(Rational, Vec<Vec<Rational>>)> = vec![
        (int(1), ints(&[&[1, 3, 2], &[1, 0, -1], &[1, -3, 2]])),
        (
            int(2),
            ints(&[&[1, 9, 23, 15], &[1, 3, -1, -3], &[1, -3, -1, 3], &[1, -9, 23, -15]]),
        ),
        (
            int(3),
            ints(&[&[1, 15, 66, 80], &[1, 6, 3, -10], &[1, -3, -6, 8], &[1, -12, 39, -28]]),
        ),
        (
            q(3, 2),
            vec![
                vec![int(1), int(6), q(39, 4), q(7, 2)],
                vec![int(1), q(3, 2), q(-3, 2), int(-1)],
                vec![int(1), int(-3), q(3, 4), q(5, 4)],
                vec![int(1), q(-15, 2), q(33, 2), int(-10)],
            ],
        ),
    ];
    let mut entries = 0;
    for (p, want) in &cases {
        let dim = want.len();
        let scale = Rational::from_integer(factorial(3)) * pow(p, 3);
        let r = right_eigen_matrix(3, p, dim).scale(&scale);
        let got: Vec<Vec<Rational>> = r.rows().map(<[Rational]>::to_vec).collect();
        if &got != want {
            return outcome(false, format!("p = {p}: got {:?}", r.to_strings()));
        }
        entries += dim * dim;
    }
    outcome(true, format!("4 matrices, {entries} entries exact"))
}

fn spectral_identities() -> Result<Outcome> {
    let mut systems = 0;
    for sign in [Sign::Plus, Sign::Minus] {
        for p in [int(1), int(2), int(3), int(4), q(3, 2)] {
            for b in common::smallest_bases(sign, &p, 2) {
                for n in 1..=6 {
                    let params = ProcessParams::new(sign, b, n, p.clone())?;
                    // eigen_system itself refuses unless R·L = I and P = R·D·L
                    let sys = eigen_system(&params)?;
                    let inverse = common::invert(&sys.left).expect("L is invertible");
                    if inverse != sys.right {
                        return outcome(false, format!("{params}: R differs from L⁻¹"));
                    }
                    let want: Vec<Rational> =
                        (0..params.dim() as u32).map(|k| common::decay(sign, b, k)).collect();
                    if sys.eigenvalues != want {
                        return outcome(false, format!("{params}: eigenvalues {:?}", sys.eigenvalues));
                    }
                    systems += 1;
                }
            }
        }
    }
    outcome(true, format!("{systems} systems: R·L = I, P = R·D·L, R = L⁻¹, spectrum (±1/b)^k"))
}

fn transition_oracle_check() -> Result<Outcome> {
    let grid = common::process_grid(8, 4);
    for params in &grid {
        let closed = transition_matrix(params)?;
        if closed != transition_oracle(params)? || closed != common::transition_by_convolution(params) {
            return outcome(false, format!("{params}: closed form differs from enumeration"));
        }
    }
    let classical = transition_matrix(&ProcessParams::new(Sign::Plus, 2, 2, int(1))?)?;
    let want = ints(&[&[3, 1], &[1, 3]]);
    let want: Vec<Vec<Rational>> = want
        .into_iter()
        .map(|r| r.into_iter().map(|x| x / int(4)).collect())
        .collect();
    let got: Vec<Vec<Rational>> = classical.rows().map(<[Rational]>::to_vec).collect();
    outcome(
        got == want,
        format!("{} processes exact against two enumerations; classical 2x2 ok = {}", grid.len(), got == want),
    )
}

fn carry_sets() -> Result<Outcome> {
    let mut cases = 0;
    for sign in [Sign::Plus, Sign::Minus] {
        for b in 2..=6u64 {
            for n in 1..=4 {
                for d in (1 - b as i64)..=0 {
                    let reach: Vec<i64> = common::reachable_carries(sign, b, d, n).into_iter().collect();
                    let set = derive_carry_set(sign, b, d, n)?;
                    let p = derive_p(sign, b, d, n)?;
                    let contiguous = reach.len() == set.size()
                        && reach.first() == Some(&set.min)
                        && reach.last() == Some(&set.max);
                    let dim = if p.is_one() { n } else { n + 1 };
                    let params = ProcessParams::from_digit_set(sign, b, d, n)?;
                    let chain = common::carry_chain(sign, b, d, n, &reach);
                    if !contiguous || dim != reach.len() || chain != transition_matrix(&params)? {
                        return outcome(
                            false,
                            format!("({sign}{b}, n={n}, d={d}): set {set:?} p={p} reachable {reach:?}"),
                        );
                    }
                    cases += 1;
                }
            }
        }
    }
    outcome(true, format!("{cases} digit sets: carry set, p and transition law match brute force"))
}

fn stirling_frobenius_check() -> Result<Outcome> {
    for n in 1..=6usize {
        for p in 1..=3i64 {
            let p = int(p);
            let w = stirling_frobenius(n, &p)?.values;
            let dim = if p.is_one() { n } else { n + 1 };
            let scale = Rational::from_integer(factorial(n as u64)) * pow(&p, n as u32);
            for (j, wj) in w.iter().enumerate() {
                let col = n - j;
                let via_r = if col < dim {
                    &scale * right_entry(n, &p, 0, col)
                } else {
                    Rational::zero()
                };
                if &via_r != wj {
                    return outcome(false, format!("n={n} p={p} j={j}: {wj} vs {via_r}"));
                }
            }
        }
    }
    let golden = [
        (1, vec![0, 2, 3, 1]),
        (2, vec![15, 23, 9, 1]),
        (3, vec![80, 66, 15, 1]),
    ];
    for (p, want) in golden {
        let got = stirling_frobenius(3, &int(p))?.values;
        let want: Vec<Rational> = want.into_iter().map(int).collect();
        if got != want {
            return outcome(false, format!("n=3 p={p}: {got:?}"));
        }
    }
    outcome(true, "n <= 6, p in {1,2,3} match row 0 of n!p^nR; n = 3 triangles reproduced")
}

fn descent_statistics_check() -> Result<Outcome> {
    for p in 1..=3usize {
        for n in 1..=5usize {
            let mut standard = vec![0i64; n + 1];
            let mut dash = vec![0i64; n + 1];
            for w in common::all_colored(n, p) {
                standard[common::descents(&w, p)] += 1;
                dash[common::dash_descents(&w, p)] += 1;
            }
            let pr = int(p as i64);
            let e = descent_statistics(n, &pr, DescentVariant::Standard)?.values;
            let f = descent_statistics(n, &pr, DescentVariant::Dash)?.values;
            let to_q = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
            if e != to_q(&standard) || f != to_q(&dash) {
                return outcome(false, format!("n={n} p={p}: E {e:?} F {f:?} vs {standard:?} {dash:?}"));
            }
            if p > 1 && (0..=n).any(|k| f[k] != e[n - k]) {
                return outcome(false, format!("n={n} p={p}: F(n,k) != E(n,n-k)"));
            }
        }
    }
    outcome(true, "p <= 3, n <= 5: recursions equal brute-force counts, F reverses E")
}

struct MomentTally {
    compared: usize,
    mismatched: Vec<String>,
    /// Mismatches outside `n = 1` second moments.
    unexpected: usize,
}

fn moment_tally() -> Result<MomentTally> {
    let mut tally = MomentTally {
        compared: 0,
        mismatched: Vec::new(),
        unexpected: 0,
    };
    for params in common::process_grid(8, 4) {
        let oracle = MomentOracle::new(&params, 10)?;
        let mut starts: Vec<Start> = (0..params.dim()).map(Start::State).collect();
        starts.push(Start::Stationary);
        let mut formula_wrong = false;
        for start in starts {
            for r in 0..=5u32 {
                for s in 0..=5u32 {
                    if start == Start::Stationary && s > 0 {
                        continue;
                    }
                    let brute = oracle.report(r, s, start)?;
                    tally.compared += 1;
                    match moments_closed_form(&params, r, s, start) {
                        Ok(closed) if closed == brute => {}
                        Err(_) if params.n == 1 => {
                            // refused; the means must still agree and the bare formula must really be off
                            let mean = match start {
                                Start::State(i) => mean_conditional(&params, r, i)?,
                                Start::Stationary => stationary_mean(&params),
                            };
                            if mean != brute.mean {
                                tally.unexpected += 1;
                            }
                            if let Start::State(_) = start {
                                formula_wrong |= common::raw_variance(&params, r) != brute.variance;
                            }
                            tally.mismatched.push(format!("{params} {start:?} r={r} s={s}"));
                        }
                        _ => {
                            tally.unexpected += 1;
                            tally.mismatched.push(format!("{params} {start:?} r={r} s={s}"));
                        }
                    }
                }
            }
        }
        if params.n == 1 && !formula_wrong {
            tally.unexpected += 1;
        }
        for (k, u) in [(1, first_moment_eigenvector(&params)), (2, second_moment_eigenvector(&params))] {
            let lambda = moment_eigenvalue(&params, k);
            let image = transition_matrix(&params)?.mul_vec(&u);
            let eigen = image.iter().zip(&u).all(|(x, y)| *x == &lambda * y);
            tally.compared += 1;
            if !eigen {
                if params.n != 1 || k != 2 {
                    tally.unexpected += 1;
                }
                tally.mismatched.push(format!("{params} u~{k}"));
            }
        }
    }
    Ok(tally)
}

fn moments_check() -> Result<Outcome> {
    let tally = moment_tally()?;
    let pass = tally.mismatched.is_empty();
    let detail = if pass {
        format!("{} comparisons exact", tally.compared)
    } else {
        let single = ProcessParams::new(Sign::Plus, 2, 1, int(1))?;
        let brute = MomentOracle::new(&single, 1)?.report(1, 0, Start::State(0))?;
        format!(
            "{} of {} comparisons fail, all second moments at n = 1 where the formulas are false \
             (at {single}: Var(k_1) = {}, formula {}); means and every n >= 2 case exact; unexpected {}",
            tally.mismatched.len(),
            tally.compared,
            brute.variance,
            common::raw_variance(&single, 1),
            tally.unexpected
        )
    };
    outcome(pass, detail)
}

fn worked_examples() -> Result<Outcome> {
    let plus = MultiDigitWord::from_rows(7, &[vec![3, 5, 4], vec![0, 2, 5], vec![4, 4, 6], vec![0, 3, 2]])?;
    let t = bijection_plus(&plus, 3)?;
    let minus =
        MultiDigitWord::from_rows(8, &[vec![0, 4, 7, 4], vec![1, 2, 5, 3], vec![2, 5, 4, 1], vec![0, 3, 6, 2]])?;
    let u = bijection_minus(&minus, 3)?;
    let report = run_suite(Suite::ExamplesGolden, &Grid::default())?;
    let pass = t.descents == [3, 3, 2]
        && t.kappas.as_deref() == Some(&[3, 3, 2][..])
        && u.descents == [1, 1, 2, 4]
        && u.predicted_carries() == [3, 1, 2, 4]
        && u.kappas.as_deref() == Some(&[3, 1, 2, 4][..])
        && report.passed();
    outcome(
        pass,
        format!(
            "d = {:?}; (d',d,d',d) = {:?} vs carries {:?}; intermediate tables {}/{}",
            t.descents,
            u.descents,
            u.kappas.unwrap_or_default(),
            report.pass_count(),
            report.cases.len()
        ),
    )
}

fn carries_vs_descents() -> Result<Outcome> {
    let mut notes = Vec::new();
    let exhaustive: [(ShuffleKind, Sign, u64, usize, usize, usize); 8] = [
        (ShuffleKind::Plus, Sign::Plus, 3, 2, 1, 2),
        (ShuffleKind::Plus, Sign::Plus, 3, 2, 2, 2),
        (ShuffleKind::Plus, Sign::Plus, 4, 2, 3, 2),
        (ShuffleKind::Minus, Sign::Minus, 2, 2, 1, 2),
        (ShuffleKind::Minus, Sign::Minus, 3, 2, 1, 2),
        (ShuffleKind::Minus, Sign::Minus, 3, 2, 2, 2),
        (ShuffleKind::Minus, Sign::Minus, 5, 2, 3, 2),
        (ShuffleKind::Minus, Sign::Minus, 2, 3, 3, 2),
    ];
    for (kind, sign, b, n, p, steps) in exhaustive {
        let params = ProcessParams::new(sign, b, n, int(p as i64))?;
        let exact = exact_carries_law(&params, steps)?;
        let carries = carries_law_exhaustive(&params, steps)?;
        let descents = descent_law_exhaustive(kind, b, n, p, steps)?;
        if exact != carries || carries != descents {
            return outcome(false, format!("{sign}({b},{n},{p},{steps}): joint laws differ"));
        }
    }
    notes.push(format!("{} exhaustive joint laws equal", exhaustive.len()));
    let samples = 1_000_000;
    let limit = q(1, 50);
    for (kind, sign, b, n, p, steps) in [
        (ShuffleKind::Plus, Sign::Plus, 7u64, 4usize, 3usize, 3usize),
        (ShuffleKind::Minus, Sign::Minus, 8, 3, 3, 2),
    ] {
        let params = ProcessParams::new(sign, b, n, int(p as i64))?;
        let exact = exact_carries_law(&params, steps)?;
        let counts = empirical_shuffle_law(kind, b, n, p, steps, samples, carries_core::rng::DEFAULT_SEED)?;
        let tv = total_variation(&exact, &counts, samples);
        let shown = carries_core::rational::render_decimal(&tv, 5);
        notes.push(format!("TV {sign}({b},{n},{p},{steps}) = {shown}"));
        if tv >= limit {
            return outcome(false, notes.join("; "));
        }
    }
    outcome(true, format!("{}; 10^6 samples each, limit 0.02", notes.join("; ")))
}

fn appendix() -> Result<Outcome> {
    for (b, n, p, r) in [(2u64, 3usize, 1usize, 1u32), (3, 2, 1, 2), (4, 2, 3, 1), (3, 3, 2, 2), (5, 2, 2, 3)] {
        let mut total = Rational::zero();
        for sigma in enumerate_group(n, p)? {
            total += shuffle_probability(&sigma, b, r)?;
        }
        if !total.is_one() {
            return outcome(false, format!("b={b} n={n} p={p} r={r}: total {total}"));
        }
    }
    for (b, n, p) in [(3u64, 2usize, 1usize), (4, 2, 3)] {
        let words = common::all_words(b, n);
        let library = gsr_counts(b, n, p)?;
        let weight = Rational::new(1.into(), (b as i64).pow(n as u32).into());
        let mut direct = std::collections::HashMap::new();
        for w in &words {
            let sigma = ColoredPermutation::new(p, common::gsr_pairs(w, p))?;
            *direct.entry(sigma).or_insert(0u64) += 1;
        }
        if direct != library {
            return outcome(false, format!("b={b} n={n} p={p}: GSR enumeration disagrees with library"));
        }
        for sigma in enumerate_group(n, p)? {
            let count = direct.get(&sigma).copied().unwrap_or(0);
            let formula = shuffle_probability(&sigma, b, 1)?;
            if formula != &weight * int(count as i64) {
                return outcome(false, format!("b={b} n={n} p={p}: P({sigma}) = {formula}, count {count}"));
            }
        }
    }
    let mut tables = 0;
    for p in 1..=2usize {
        for n in 1..=3usize {
            for d in 0..=n {
                if p == 1 && d == n {
                    continue;
                }
                let table = gessel_coefficients(n, p, d)?;
                let bad = table.check_identity(3);
                if !bad.is_empty() {
                    return outcome(false, format!("n={n} p={p} d={d}: {:?}", bad[0]));
                }
                tables += 1;
            }
        }
    }
    outcome(
        true,
        format!("probabilities sum to 1; r = 1 matches GSR enumeration; {tables} coefficient tables representative-independent, identity to (3,3)"),
    )
}

fn symmetries() -> Result<Outcome> {
    let mut seen = [0usize; 4];
    for params in common::process_grid(8, 4) {
        let report = symmetry_check(&params)?;
        for (clause, ok) in &report.clauses {
            if !ok {
                return outcome(false, format!("{params}: {clause:?} fails"));
            }
            let idx = match clause {
                SymmetryClause::CentralPlusP1 => 0,
                SymmetryClause::MinusFromPlusP1 => 1,
                SymmetryClause::MinusFromPlusP2 => 2,
                SymmetryClause::Conjugate => 3,
            };
            seen[idx] += 1;
        }
        // independent recheck from enumerated matrices
        let n = params.n;
        let here = common::transition_by_convolution(&params);
        let dim = here.dim();
        let all = |f: &dyn Fn(usize, usize) -> bool| (0..dim).all(|i| (0..dim).all(|j| f(i, j)));
        if params.p.is_one() && params.sign == Sign::Plus {
            let minus = common::transition_by_convolution(&params.with_sign(Sign::Minus)?);
            if !all(&|i, j| here[(i, j)] == here[(n - 1 - i, n - 1 - j)])
                || !all(&|i, j| minus[(i, j)] == here[(i, n - 1 - j)])
            {
                return outcome(false, format!("{params}: p = 1 clauses fail on enumeration"));
            }
        }
        if params.p == int(2) && params.sign == Sign::Plus {
            if let Ok(m) = params.with_sign(Sign::Minus) {
                let minus = common::transition_by_convolution(&m);
                if !all(&|i, j| minus[(i, j)] == here[(i, n - j)]) {
                    return outcome(false, format!("{params}: p = 2 clause fails on enumeration"));
                }
            }
        }
        if let Some(p_star) = params.p_star() {
            let there = common::transition_by_convolution(&params.with_p(p_star)?);
            if !all(&|i, j| here[(i, j)] == there[(n - i, n - j)]) {
                return outcome(false, format!("{params}: conjugate clause fails on enumeration"));
            }
        }
    }
    let pass = seen.iter().all(|&c| c > 0);
    outcome(
        pass,
        format!("clause applications {seen:?} (central p=1, minus p=1, minus p=2, conjugate), all exact"),
    )
}

type Criterion = (&'static str, fn() -> Result<Outcome>);

const CRITERIA: [Criterion; 11] = [
    ("golden eigenvector matrices", golden_matrices),
    ("spectral identities", spectral_identities),
    ("transition oracle", transition_oracle_check),
    ("carry sets and p", carry_sets),
    ("Stirling-Frobenius numbers", stirling_frobenius_check),
    ("descent statistics", descent_statistics_check),
    ("carry moments", moments_check),
    ("worked bijection examples", worked_examples),
    ("carries equal descents", carries_vs_descents),
    ("shuffle probability and Gessel identity", appendix),
    ("transition symmetries", symmetries),
];

#[test]
fn acceptance() {
    let mut stdout = std::io::stdout().lock();
    let mut results = Vec::new();
    for (k, (name, run)) in CRITERIA.iter().enumerate() {
        let start = Instant::now();
        let out = run().unwrap_or_else(|e| Outcome {
            pass: false,
            detail: format!("error: {e}"),
        });
        writeln!(
            stdout,
            "[PRIMARY] {:>2} {name}: {} ({}) [{} ms]",
            k + 1,
            if out.pass { "PASS" } else { "FAIL" },
            out.detail,
            start.elapsed().as_millis()
        )
        .unwrap();
        results.push(out.pass);
    }
    stdout.flush().unwrap();
    drop(stdout);

    // The moment criterion cannot hold at n = 1 (see README); every other
    // criterion must pass, and the moment mismatches must be exactly those.
    for (k, pass) in results.iter().enumerate() {
        if k != 6 {
            assert!(pass, "criterion {} failed", k + 1);
        }
    }
    let tally = moment_tally().unwrap();
    assert_eq!(tally.unexpected, 0, "moment mismatches outside n = 1: {:?}", tally.mismatched);
}
