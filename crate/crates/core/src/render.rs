//! Human-readable rendering of `D_w` in the `P~_lambda S_pi(-X)` basis.
//!
//! Displayed coefficients are `f^w_{lambda,pi} (-1)^{l(pi)}`, so that a term
//! reads as `c P_{lambda} S_{pi}` with `S_pi = S_pi(X)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::linalg::SparseVec;
use crate::ortho::{schubert_coefficients, DBasisIndex};
use crate::rational::Rational;
use crate::weyl::{Letter, PermutationA, SignedPermutation, Word};

/// `w = v pi` with `v` of minimal length in the coset `w S_n`.
pub fn coset_split(w: &SignedPermutation) -> (SignedPermutation, PermutationA) {
    let n = w.n();
    let mut v = w.clone();
    while let Some(i) = (1..n).find(|&i| v.has_right_descent(Letter::S(i))) {
        v = v.right_mul_letter(Letter::S(i));
    }
    let pi = v
        .inverse()
        .compose(w)
        .expect("same rank")
        .to_permutation_a()
        .expect("coset element is unsigned");
    (v, pi)
}

/// The reduced word of `v` followed by that of `pi`.
pub fn table_word(w: &SignedPermutation) -> Word {
    let (v, pi) = coset_split(w);
    v.canonical_reduced_word().concat(&pi.canonical_reduced_word())
}

fn term_order(a: &DBasisIndex, b: &DBasisIndex) -> std::cmp::Ordering {
    b.lambda
        .weight()
        .cmp(&a.lambda.weight())
        .then_with(|| b.pi.entries().cmp(a.pi.entries()))
}

/// Renders `sum c P_{lambda} S_{pi}`, with the `(-1)^{l(pi)}` sign folded in.
pub fn render_expansion(coeffs: &SparseVec<DBasisIndex>) -> String {
    let mut terms: Vec<(&DBasisIndex, Rational)> = coeffs
        .iter()
        .map(|(k, c)| (k, c * &Rational::sign_power(k.pi.length())))
        .collect();
    terms.sort_by(|a, b| term_order(a.0, b.0));
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (k, c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        let mut factors = Vec::new();
        if !k.lambda.is_empty() {
            factors.push(format!("P_{{{}}}", k.lambda.label()));
        }
        if !k.pi.is_identity() {
            factors.push(format!("S_{{{}}}", k.pi.compact()));
        }
        let body = match (mag.is_one(), factors.is_empty()) {
            (true, true) => "1".to_string(),
            (true, false) => factors.join(" "),
            (false, true) => mag.to_string(),
            (false, false) => format!("{mag} {}", factors.join(" ")),
        };
        match (i, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub w: String,
    pub word: String,
    pub rendering: String,
    pub terms: Vec<TableTerm>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableTerm {
    pub lambda: Vec<usize>,
    pub pi: String,
    pub f: Rational,
}

/// Elements of `W~_n` grouped by `S_n`-orbit: orbits by their minimal
/// representative (length, then word), elements by `pi` (length, then word).
pub fn table_order(n: usize) -> Vec<SignedPermutation> {
    let mut all: Vec<(usize, Word, usize, Word, SignedPermutation)> = SignedPermutation::all(n)
        .into_iter()
        .map(|w| {
            let (v, pi) = coset_split(&w);
            (
                v.length(),
                v.canonical_reduced_word(),
                pi.length(),
                pi.canonical_reduced_word(),
                w,
            )
        })
        .collect();
    all.sort_by(|a, b| (a.0, &a.1, a.2, &a.3).cmp(&(b.0, &b.1, b.2, &b.3)));
    all.into_iter().map(|t| t.4).collect()
}

pub fn table_row(w: &SignedPermutation) -> Result<TableRow> {
    let coeffs = schubert_coefficients(w)?;
    Ok(TableRow {
        w: w.bar_notation(),
        word: table_word(w).symbol(),
        rendering: render_expansion(&coeffs),
        terms: coeffs
            .iter()
            .map(|(k, c)| TableTerm {
                lambda: k.lambda.parts().to_vec(),
                pi: k.pi.compact(),
                f: c.clone(),
            })
            .collect(),
    })
}

/// All rows of the table for `W~_n`, computed on `jobs` threads.
pub fn table_rows(n: usize, jobs: usize) -> Result<Vec<TableRow>> {
    let order = table_order(n);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| crate::Error::Consistency(e.to_string()))?;
    pool.install(|| order.par_iter().map(table_row).collect())
}

pub fn render_table(n: usize, jobs: usize) -> Result<String> {
    let mut out = format!("w | D_w(X_{n}) = sum f P_lambda(X_{n}) S_pi(-X_{n})\n");
    for row in table_rows(n, jobs)? {
        out.push_str(&format!("{} = {} | {}\n", row.w, row.word, row.rendering));
    }
    Ok(out)
}
