//! Unimodal sequences, Kraśkiewicz–Lam tableaux and the type D
//! Billey–Haiman coefficients.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sym::Partition;
use crate::weyl::{Letter, PermutationA, SignedPermutation};

/// Longest element length accepted by exhaustive tableau enumeration.
pub const TABLEAU_LENGTH_BOUND: usize = 20;

/// Strictly decreasing, then strictly increasing; the turning point may be
/// doubled only when it equals 1.
pub fn is_unimodal(a: &[usize]) -> bool {
    if a.is_empty() {
        return true;
    }
    let m = a.len();
    let mut i = 0;
    while i + 1 < m && a[i] > a[i + 1] {
        i += 1;
    }
    if i + 1 < m && a[i] == a[i + 1] {
        if a[i] != 1 {
            return false;
        }
        i += 1;
    }
    while i + 1 < m && a[i] < a[i + 1] {
        i += 1;
    }
    i == m - 1
}

/// Length of a longest unimodal subsequence.
pub fn max_unimodal_len(a: &[usize]) -> usize {
    let m = a.len();
    if m == 0 {
        return 0;
    }
    // dec[j]: longest strictly decreasing subsequence ending at j
    // inc[j]: longest strictly increasing subsequence starting at j
    let mut dec = vec![1; m];
    for j in 0..m {
        for i in 0..j {
            if a[i] > a[j] {
                dec[j] = dec[j].max(dec[i] + 1);
            }
        }
    }
    let mut inc = vec![1; m];
    for j in (0..m).rev() {
        for k in j + 1..m {
            if a[k] > a[j] {
                inc[j] = inc[j].max(inc[k] + 1);
            }
        }
    }
    let mut best = (0..m).map(|j| dec[j] + inc[j] - 1).max().unwrap();
    for j in 0..m {
        if a[j] != 1 {
            continue;
        }
        for k in j + 1..m {
            if a[k] == 1 {
                best = best.max(dec[j] + inc[k]);
            }
        }
    }
    best
}

/// A Kraśkiewicz–Lam tableau. `rows[0]` is the top row `t_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KLTableau {
    pub rows: Vec<Vec<usize>>,
}

impl KLTableau {
    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(Vec::len).collect()).expect("rows are a partition")
    }

    /// `t_r ... t_1`, bottom row first.
    pub fn row_word(&self) -> Vec<usize> {
        self.rows.iter().rev().flatten().copied().collect()
    }

    /// `l(lambda) + 1 - k` where `k` counts the distinct values of
    /// `s_{a_1} ... s_{a_j}(1)`, the `s_a` acting as transpositions.
    pub fn m_stat(&self) -> usize {
        let word = self.row_word();
        let mut values = HashSet::new();
        for j in 0..=word.len() {
            let mut v = 1usize;
            for &a in word[..j].iter().rev() {
                if v == a {
                    v = a + 1;
                } else if v == a + 1 {
                    v = a;
                }
            }
            values.insert(v);
        }
        self.rows.len() + 1 - values.len()
    }
}

/// All Kraśkiewicz–Lam tableaux for `w` of shape `lambda`. Empty when
/// `|lambda| != l(w)`.
pub fn kl_tableaux(w: &SignedPermutation, lambda: &Partition) -> Result<Vec<KLTableau>> {
    let len = w.length();
    if lambda.weight() != len {
        return Ok(Vec::new());
    }
    if len > TABLEAU_LENGTH_BOUND {
        return Err(Error::BoundExceeded {
            length: len,
            bound: TABLEAU_LENGTH_BOUND,
        });
    }
    let n = w.n();
    let row_lengths: Vec<usize> = lambda.parts().iter().rev().copied().collect();
    let mut search = Search {
        w,
        n,
        target_len: len,
        row_lengths,
        word: Vec::new(),
        out: Vec::new(),
    };
    let mut lifts = HashSet::new();
    lifts.insert(SignedPermutation::identity(n));
    search.fill(0, 0, &lifts);
    let parts = lambda.parts();
    Ok(search
        .out
        .into_iter()
        .map(|word| {
            // word is bottom row first; rebuild top-first rows
            let mut rows = Vec::with_capacity(parts.len());
            let mut pos = word.len();
            for &p in parts {
                rows.push(word[pos - p..pos].to_vec());
                pos -= p;
            }
            KLTableau { rows }
        })
        .collect())
}

struct Search<'a> {
    w: &'a SignedPermutation,
    n: usize,
    target_len: usize,
    /// Row lengths bottom row first.
    row_lengths: Vec<usize>,
    word: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Reduced lifts `u` of the current prefix that are left factors of `w`:
    /// `l(u^{-1} w) = l(w) - l(u)`.
    fn extend(&self, lifts: &HashSet<SignedPermutation>, a: usize) -> HashSet<SignedPermutation> {
        let letters: &[Letter] = if a == 1 {
            &[Letter::S(1), Letter::Box]
        } else {
            &[Letter::S(a)][..]
        };
        let wl = self.target_len;
        let mut next = HashSet::new();
        for u in lifts {
            let lu = u.length();
            for &l in letters {
                let v = u.right_mul_letter(l);
                let lv = v.length();
                if lv != lu + 1 {
                    continue;
                }
                let rest = v.inverse().compose(self.w).expect("same size");
                if rest.length() + lv == wl {
                    next.insert(v);
                }
            }
        }
        next
    }

    fn fill(&mut self, row: usize, col: usize, lifts: &HashSet<SignedPermutation>) {
        if row == self.row_lengths.len() {
            self.out.push(self.word.clone());
            return;
        }
        let row_len = self.row_lengths[row];
        if col == row_len {
            let start = self.word.len() - row_len;
            if max_unimodal_len(&self.word) != row_len || !is_unimodal(&self.word[start..]) {
                return;
            }
            self.fill(row + 1, 0, lifts);
            return;
        }
        let start = self.word.len() - col;
        for a in 1..self.n {
            self.word.push(a);
            if is_unimodal(&self.word[start..]) {
                let next = self.extend(lifts, a);
                if !next.is_empty() {
                    self.fill(row, col + 1, &next);
                }
            }
            self.word.pop();
        }
    }
}

/// `d^u_lambda = sum_T 2^{m(T)}`.
pub fn stanley_coeff(u: &SignedPermutation, lambda: &Partition) -> Result<u64> {
    Ok(kl_tableaux(u, lambda)?
        .iter()
        .map(|t| 1u64 << t.m_stat())
        .sum())
}

/// `f^w_{lambda, pi}`: `d^{w pi^{-1}}_lambda` when
/// `l(w pi^{-1}) = l(w) - l(pi)`, otherwise 0.
pub fn f_coeff(w: &SignedPermutation, lambda: &Partition, pi: &PermutationA) -> Result<u64> {
    if !lambda.is_strict() {
        return Err(Error::InvalidPartition(format!("{lambda} is not strict")));
    }
    if pi.n() != w.n() {
        return Err(Error::SizeMismatch(w.n(), pi.n()));
    }
    match left_factor(w, pi) {
        Some(u) => stanley_coeff(&u, lambda),
        None => Ok(0),
    }
}

/// `w pi^{-1}` when it is a length-additive left factor.
fn left_factor(w: &SignedPermutation, pi: &PermutationA) -> Option<SignedPermutation> {
    let u = w.compose(&pi.inverse().to_signed()).ok()?;
    if u.length() + pi.length() == w.length() {
        Some(u)
    } else {
        None
    }
}

/// The nonzero coefficients `f^w_{lambda, pi}` over strict `lambda` and
/// `pi` in `S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BHExpansion {
    pub element: SignedPermutation,
    pub coeffs: BTreeMap<(Partition, PermutationA), u64>,
}

pub fn bh_expansion(w: &SignedPermutation) -> Result<BHExpansion> {
    let n = w.n();
    let mut coeffs = BTreeMap::new();
    for pi in PermutationA::all(n) {
        let Some(u) = left_factor(w, &pi) else {
            continue;
        };
        let len = u.length();
        // a unimodal row over 1..n-1 has at most 2(n-1) letters
        for lambda in Partition::strict_bounded(2 * n.saturating_sub(1), len) {
            let d = stanley_coeff(&u, &lambda)?;
            if d > 0 {
                coeffs.insert((lambda, pi.clone()), d);
            }
        }
    }
    Ok(BHExpansion {
        element: w.clone(),
        coeffs,
    })
}
