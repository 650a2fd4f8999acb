use carries_core::moments::{moments_closed_form, moments_oracle};
use carries_core::params::{derive_carry_set, digit_expansion, evaluate_expansion, trace_from_columns};
use carries_core::rational::{self, render};
use carries_core::rng::DigitSource;
use carries_core::shuffle::{bijection_minus, bijection_plus, sample_sequence};
use carries_core::spectral::{eigen_system, left_eigen_matrix, right_eigen_matrix, eigenvalues, transition_matrix, transition_oracle};
use carries_core::{
    run_suite, Grid, MultiDigitWord, ProcessParams, Rational, RationalMatrix, ShuffleTrace, Sign,
    Start, Suite,
};
use serde_json::{json, Value};

use crate::output::{CliError, Context, Doc};
use crate::ProcessArgs;

fn build(process: &ProcessArgs) -> Result<ProcessParams, CliError> {
    Ok(ProcessParams::new(process.sign, process.b, process.n, process.p.clone())?)
}

fn params_json(params: &ProcessParams) -> Value {
    let mut v = json!({
        "sign": params.sign.to_string(),
        "b": params.b,
        "n": params.n,
        "p": render(&params.p),
    });
    if let Some(d) = params.d {
        v["d"] = json!(d);
    }
    v
}

fn matrix_json(ctx: &Context, m: &RationalMatrix) -> Value {
    json!(m.rows().map(|r| ctx.qs(r)).collect::<Vec<_>>())
}

pub fn matrix(
    ctx: &Context,
    sign: Sign,
    b: u64,
    n: usize,
    p: Option<Rational>,
    d: Option<i64>,
    oracle: bool,
) -> Result<Doc, CliError> {
    let params = match (p, d) {
        (Some(p), _) => ProcessParams::new(sign, b, n, p)?,
        (None, Some(d)) => ProcessParams::from_digit_set(sign, b, d, n)?,
        (None, None) => return Err(CliError::invalid("need --p or --d")),
    };
    let m = if oracle {
        transition_oracle(&params)?
    } else {
        transition_matrix(&params)?
    };
    let carry_set = match params.d {
        Some(d) => Some(derive_carry_set(sign, b, d, n)?),
        None => None,
    };
    Ok(ctx.doc(
        || {
            let mut v = json!({ "params": params_json(&params), "matrix": matrix_json(ctx, &m) });
            if let Some(cs) = carry_set {
                v["carry_set"] = json!([cs.min, cs.max]);
            }
            v
        },
        || m.rows().map(|r| ctx.qs(r)).collect(),
    ))
}

pub fn eigen(ctx: &Context, process: &ProcessArgs, check: bool) -> Result<(Doc, Result<(), CliError>), CliError> {
    let params = build(process)?;
    let dim = params.dim();
    let left = left_eigen_matrix(params.n, &params.p, dim);
    let right = right_eigen_matrix(params.n, &params.p, dim);
    let values = eigenvalues(&params);
    if check {
        let inverse = &right * &left == RationalMatrix::identity(dim);
        let recomposed = &(&right * &RationalMatrix::diagonal(&values)) * &left;
        let diag = recomposed == transition_matrix(&params)?;
        let word = |ok: bool| if ok { "ok" } else { "FAIL" };
        let line = format!("R·L=I: {}, P=RDL: {}", word(inverse), word(diag));
        let status = if inverse && diag {
            Ok(())
        } else {
            Err(CliError::failed(format!("eigen decomposition check failed for {params}")))
        };
        return Ok((Doc::Text(line), status));
    }
    let system = eigen_system(&params)?;
    let doc = ctx.doc(
        || {
            json!({
                "params": params_json(&params),
                "eigenvalues": ctx.qs(&system.eigenvalues),
                "left": matrix_json(ctx, &system.left),
                "right": matrix_json(ctx, &system.right),
            })
        },
        || {
            let mut rows = vec![vec!["kind".into(), "row".into(), "col".into(), "value".into()]];
            for (k, x) in system.eigenvalues.iter().enumerate() {
                rows.push(vec!["eigenvalue".into(), k.to_string(), k.to_string(), ctx.q(x)]);
            }
            for (name, m) in [("left", &system.left), ("right", &system.right)] {
                for (i, r) in m.rows().enumerate() {
                    for (j, x) in r.iter().enumerate() {
                        rows.push(vec![name.into(), i.to_string(), j.to_string(), ctx.q(x)]);
                    }
                }
            }
            rows
        },
    );
    Ok((doc, Ok(())))
}

pub fn moments(
    ctx: &Context,
    process: &ProcessArgs,
    r: u32,
    s: u32,
    i: usize,
    stationary: bool,
    oracle: bool,
) -> Result<Doc, CliError> {
    let params = build(process)?;
    let start = if stationary { Start::Stationary } else { Start::State(i) };
    let report = moments_closed_form(&params, r, s, start)?;
    if oracle {
        let brute = moments_oracle(&params, r, s, start)?;
        if brute != report {
            return Err(CliError::failed(format!(
                "closed form {report:?} differs from matrix powers {brute:?}"
            )));
        }
    }
    let start_json = match start {
        Start::Stationary => json!("stationary"),
        Start::State(i) => json!(i),
    };
    Ok(ctx.doc(
        || {
            json!({
                "params": params_json(&params),
                "start": start_json,
                "r": r,
                "s": s,
                "mean": ctx.q(&report.mean),
                "variance": ctx.q(&report.variance),
                "covariance": ctx.q(&report.covariance),
            })
        },
        || {
            vec![
                vec!["quantity".into(), "value".into()],
                vec!["mean".into(), ctx.q(&report.mean)],
                vec!["variance".into(), ctx.q(&report.variance)],
                vec!["covariance".into(), ctx.q(&report.covariance)],
            ]
        },
    ))
}

pub fn simulate(ctx: &Context, process: &ProcessArgs, steps: usize, samples: u64) -> Result<Doc, CliError> {
    let params = build(process)?;
    let mut source = DigitSource::new(ctx.seed);
    let mut traces = Vec::new();
    for _ in 0..samples {
        let columns = (0..steps).map(|_| source.word(params.b, params.n)).collect();
        traces.push(trace_from_columns(&params, columns)?);
    }
    Ok(ctx.doc(
        || {
            let runs: Vec<Value> = traces
                .iter()
                .map(|t| json!({ "kappas": t.kappas, "remainders": t.remainders, "columns": t.columns }))
                .collect();
            json!({ "params": params_json(&params), "seed": ctx.seed, "traces": runs })
        },
        || {
            let mut rows = vec![vec!["sample".into(), "step".into(), "kappa".into(), "remainder".into(), "digits".into()]];
            for (k, t) in traces.iter().enumerate() {
                for step in 0..t.columns.len() {
                    let digits: Vec<String> = t.columns[step].iter().map(u64::to_string).collect();
                    rows.push(vec![
                        k.to_string(),
                        (step + 1).to_string(),
                        t.kappas[step + 1].to_string(),
                        t.remainders[step].to_string(),
                        digits.join(" "),
                    ]);
                }
            }
            rows
        },
    ))
}

fn natural_p(p: &Rational) -> Result<usize, CliError> {
    rational::as_i64(p)
        .filter(|&v| v >= 1)
        .map(|v| v as usize)
        .ok_or_else(|| CliError::invalid(format!("shuffles need p in N, got {}", render(p))))
}

pub fn shuffle(ctx: &Context, process: &ProcessArgs, steps: usize, summands: bool) -> Result<Doc, CliError> {
    let params = build(process)?;
    let p = natural_p(&params.p)?;
    let trace: ShuffleTrace = if summands {
        let mut source = DigitSource::new(ctx.seed);
        let columns = (0..steps).map(|_| source.word(params.b, params.n)).collect();
        let m = MultiDigitWord::new(params.b, params.n, columns)?;
        match params.sign {
            Sign::Plus => bijection_plus(&m, p)?,
            Sign::Minus => bijection_minus(&m, p)?,
        }
    } else {
        sample_sequence(params.sign.into(), params.b, params.n, p, steps, ctx.seed)?
    };
    let carries = trace.predicted_carries();
    Ok(ctx.doc(
        || {
            json!({
                "params": params_json(&params),
                "seed": ctx.seed,
                "words": trace.words,
                "permutations": trace.permutations,
                "descents": trace.descents,
                "carries": carries,
                "kappas": trace.kappas,
            })
        },
        || {
            let mut rows = vec![vec![
                "step".into(),
                "word".into(),
                "permutation".into(),
                "descents".into(),
                "carries".into(),
                "kappa".into(),
            ]];
            for k in 0..trace.len() {
                let word: Vec<String> = trace.words[k].digits().iter().map(u64::to_string).collect();
                rows.push(vec![
                    (k + 1).to_string(),
                    word.join(" "),
                    trace.permutations[k].to_string(),
                    trace.descents[k].to_string(),
                    carries[k].to_string(),
                    trace.kappas.as_ref().map(|v| v[k].to_string()).unwrap_or_default(),
                ]);
            }
            rows
        },
    ))
}

pub fn digits(ctx: &Context, x: u64, sign: Sign, b: u64, d: i64) -> Result<Doc, CliError> {
    let expansion = digit_expansion(x, sign, b, d)?;
    let value = evaluate_expansion(&expansion, sign, b);
    if value != x as i128 {
        return Err(CliError::failed(format!("expansion {expansion:?} evaluates to {value}, not {x}")));
    }
    Ok(ctx.doc(
        || json!({ "x": x, "sign": sign.to_string(), "b": b, "d": d, "digits": expansion }),
        || {
            let mut rows = vec![vec!["place".into(), "digit".into()]];
            for (k, a) in expansion.iter().enumerate() {
                rows.push(vec![(k + 1).to_string(), a.to_string()]);
            }
            rows
        },
    ))
}

pub fn verify(ctx: &Context, suite: &str, grid: &Grid) -> Result<(Doc, Result<(), CliError>), CliError> {
    let suite: Suite = suite.parse()?;
    let report = run_suite(suite, grid)?;
    eprintln!(
        "{suite}: {}/{} cases passed in {} ms",
        report.pass_count(),
        report.cases.len(),
        report.elapsed_ms
    );
    let status = if report.passed() {
        Ok(())
    } else {
        let repro: Vec<String> = report
            .failures()
            .filter_map(|c| c.reproduce.clone())
            .map(|r| format!("  {r}"))
            .collect();
        Err(CliError::failed(format!(
            "suite {suite} failed {} of {} cases; rerun with:\n{}",
            report.cases.len() - report.pass_count(),
            report.cases.len(),
            repro.join("\n")
        )))
    };
    let doc = ctx.doc(
        || {
            let mut v = serde_json::to_value(&report).expect("report serializes");
            v["passed"] = json!(report.passed());
            v
        },
        || {
            let mut rows = vec![vec!["case".into(), "passed".into(), "detail".into(), "reproduce".into()]];
            for c in &report.cases {
                rows.push(vec![
                    c.case.clone(),
                    c.passed.to_string(),
                    c.detail.clone(),
                    c.reproduce.clone().unwrap_or_default(),
                ]);
            }
            rows
        },
    );
    Ok((doc, status))
}
