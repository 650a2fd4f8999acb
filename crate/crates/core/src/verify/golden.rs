//! Worked examples reproduced entry for entry.

use std::fmt::Debug;

use num_bigint::BigInt;

use crate::colored_perm::ColoredPermutation;
use crate::error::Result;
use crate::moments::stationary_moments;
use crate::params::{ProcessParams, Sign};
use crate::rational::{factorial, frac, int, pow, Rational};
use crate::shuffle::{
    bijection_minus, bijection_minus_stages, bijection_plus, bijection_plus_stages,
    gsr_to_permutation, shuffle_probability, star_map, DigitWord, MultiDigitWord,
};
use crate::spectral::{right_eigen_matrix, transition_matrix};

use super::{CaseKey, Grid, SuiteReport};

fn same<T: PartialEq + Debug>(got: T, want: T) -> Result<String, String> {
    if got == want {
        Ok(format!("{got:?}"))
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

fn q(num: i64, den: i64) -> Rational {
    frac(num, den)
}

fn scaled_right(n: usize, p: &Rational) -> Vec<Vec<Rational>> {
    let dim = if p == &int(1) { n } else { n + 1 };
    let scale = Rational::from_integer(factorial(n as u64)) * pow(p, n as u32);
    let r = right_eigen_matrix(n, p, dim);
    r.rows().map(|row| row.iter().map(|x| x * &scale).collect()).collect()
}

fn int_rows(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
}

fn perms(list: &[&str], p: usize) -> Vec<ColoredPermutation> {
    list.iter()
        .map(|s| ColoredPermutation::parse(s, p).expect("literal"))
        .collect()
}

fn words(ws: &[DigitWord]) -> Vec<Vec<u64>> {
    ws.iter().map(|w| w.digits().to_vec()).collect()
}

fn rows(b: u64, r: &[&[u64]]) -> MultiDigitWord {
    MultiDigitWord::from_rows(b, &r.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).expect("literal")
}

type Check = (&'static str, fn() -> Result<Result<String, String>>);

const CHECKS: &[Check] = &[
    ("scaled R, p=1, n=3", || {
        Ok(same(scaled_right(3, &int(1)), int_rows(&[&[1, 3, 2], &[1, 0, -1], &[1, -3, 2]])))
    }),
    ("scaled R, p=2, n=3", || {
        Ok(same(
            scaled_right(3, &int(2)),
            int_rows(&[&[1, 9, 23, 15], &[1, 3, -1, -3], &[1, -3, -1, 3], &[1, -9, 23, -15]]),
        ))
    }),
    ("scaled R, p=3, n=3", || {
        Ok(same(
            scaled_right(3, &int(3)),
            int_rows(&[&[1, 15, 66, 80], &[1, 6, 3, -10], &[1, -3, -6, 8], &[1, -12, 39, -28]]),
        ))
    }),
    ("scaled R, p=3/2, n=3", || {
        let want = vec![
            vec![int(1), int(6), q(39, 4), q(7, 2)],
            vec![int(1), q(3, 2), q(-3, 2), int(-1)],
            vec![int(1), int(-3), q(3, 4), q(5, 4)],
            vec![int(1), q(-15, 2), q(33, 2), int(-10)],
        ];
        Ok(same(scaled_right(3, &q(3, 2)), want))
    }),
    ("classical 2x2 matrix", || {
        let p = transition_matrix(&ProcessParams::new(Sign::Plus, 2, 2, int(1))?)?;
        Ok(same(p.to_strings(), vec![vec!["3/4".to_owned(), "1/4".into()], vec!["1/4".into(), "3/4".into()]]))
    }),
    ("stationary moments (-8, 3, 3)", || {
        let (mean, cov) = stationary_moments(&ProcessParams::new(Sign::Minus, 8, 3, int(3))?, 1)?;
        Ok(same((mean, cov), (q(5, 3), q(-1, 24))))
    }),
    ("GSR word (7, 8, 3)", || {
        let w = DigitWord::new(7, vec![4, 1, 6, 3, 0, 5, 0, 2])?;
        Ok(same(
            gsr_to_permutation(&w, 3)?.to_string(),
            "(6,1)(3,1)(8,0)(5,0)(1,0)(7,2)(2,0)(4,2)".to_owned(),
        ))
    }),
    ("GSR word (3, 6, 2)", || {
        let w = DigitWord::new(3, vec![2, 1, 0, 1, 0, 1])?;
        Ok(same(gsr_to_permutation(&w, 2)?.to_string(), "(6,0)(3,1)(1,0)(4,1)(2,0)(5,1)".to_owned()))
    }),
    ("star map", || {
        let a1 = DigitWord::new(4, vec![1, 3, 2, 0, 1, 2])?;
        let a2 = DigitWord::new(7, vec![5, 0, 3, 4, 6, 3])?;
        Ok(same(words(&star_map(&[a1, a2])?)[1].clone(), vec![0, 3, 4, 5, 3, 6]))
    }),
    ("inverse and unique word", || {
        let s = ColoredPermutation::parse("(6,2)(5,1)(2,1)(3,2)(1,0)(7,0)(4,0)", 3)?;
        let inv = s.inverse().to_string();
        if inv != "(5,0)(3,2)(4,1)(7,0)(2,2)(1,1)(6,0)" {
            return Ok(Err(format!("inverse {inv}")));
        }
        let prob = shuffle_probability(&s, 7, 1)?;
        Ok(same(prob, Rational::new(BigInt::from(1), BigInt::from(7).pow(7))))
    }),
    ("positive-base pipeline", || {
        let m = rows(7, &[&[3, 5, 4], &[0, 2, 5], &[4, 4, 6], &[0, 3, 2]]);
        let st = bijection_plus_stages(&m, 3)?;
        let t = bijection_plus(&m, 3)?;
        let pi: Vec<ColoredPermutation> = st
            .words
            .iter()
            .map(|w| gsr_to_permutation(w, 3))
            .collect::<Result<_>>()?;
        let got = (
            st.barred.rows(),
            st.scaled.rows(),
            words(&st.words),
            pi,
            t.permutations.clone(),
            t.descents.clone(),
            t.kappas.clone(),
        );
        let want = (
            vec![vec![3, 5, 4], vec![4, 1, 2], vec![1, 6, 1], vec![2, 2, 3]],
            vec![vec![4, 2, 5], vec![5, 3, 6], vec![5, 4, 3], vec![0, 0, 2]],
            vec![vec![5, 6, 3, 2], vec![0, 4, 2, 3], vec![0, 4, 5, 5]],
            perms(&["(3,2)(4,0)(2,0)(1,2)", "(1,0)(4,1)(2,2)(3,0)", "(1,0)(2,1)(3,2)(4,2)"], 3),
            perms(&["(3,2)(4,0)(2,0)(1,2)", "(2,1)(3,0)(4,1)(1,2)", "(2,2)(3,2)(4,0)(1,2)"], 3),
            vec![3, 3, 2],
            Some(vec![3, 3, 2]),
        );
        Ok(same(got, want))
    }),
    ("negative-base pipeline", || {
        let m = rows(8, &[&[0, 4, 7, 4], &[1, 2, 5, 3], &[2, 5, 4, 1], &[0, 3, 6, 2]]);
        let st = bijection_minus_stages(&m, 3)?;
        let t = bijection_minus(&m, 3)?;
        let steps: Vec<ColoredPermutation> =
            (1..=4).map(|r| t.step_element(r)).collect::<Result<_>>()?;
        let got = (
            st.reversed.as_ref().map(MultiDigitWord::rows),
            st.barred.rows(),
            st.scaled.rows(),
            words(&st.words),
            steps,
            t.permutations.clone(),
            t.descents.clone(),
            t.predicted_carries(),
            t.kappas.clone(),
        );
        let want = (
            Some(vec![vec![7, 4, 0, 4], vec![6, 2, 2, 3], vec![5, 5, 3, 1], vec![7, 3, 1, 2]]),
            vec![vec![7, 4, 0, 4], vec![5, 6, 2, 7], vec![3, 3, 6, 0], vec![2, 6, 7, 2]],
            vec![vec![6, 4, 1, 4], vec![1, 3, 0, 5], vec![2, 3, 2, 0], vec![0, 4, 5, 6]],
            vec![vec![4, 5, 0, 6], vec![2, 1, 0, 5], vec![3, 4, 3, 4], vec![1, 2, 6, 0]],
            perms(
                &["(2,1)(3,2)(1,0)(4,0)", "(3,1)(2,2)(1,0)(4,1)", "(1,0)(3,1)(2,0)(4,1)", "(2,2)(3,1)(4,0)(1,0)"],
                3,
            ),
            perms(
                &["(2,1)(3,2)(1,0)(4,0)", "(2,0)(1,2)(3,1)(4,1)", "(3,1)(1,2)(2,1)(4,2)", "(4,1)(2,1)(3,2)(1,2)"],
                3,
            ),
            vec![1, 1, 2, 4],
            vec![3, 1, 2, 4],
            Some(vec![3, 1, 2, 4]),
        );
        Ok(same(got, want))
    }),
];

pub(super) fn examples(grid: &Grid, report: &mut SuiteReport) {
    let _ = grid;
    for (label, check) in CHECKS {
        report.check(label, &CaseKey::default(), check);
    }
}
