//! The symmetric group `S_n` and the type D Weyl group `W~_n` in one-line
//! notation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default length bound for exhaustive reduced-word enumeration.
pub const REDUCED_WORDS_BOUND: usize = 12;

/// A simple reflection: `s_box` or `s_i` with `1 <= i < n`.
///
/// `Box` sorts before every `S(i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Box,
    S(usize),
}

impl Letter {
    /// Text encoding: 0 for box, `i` for `s_i`.
    pub fn index(self) -> usize {
        match self {
            Letter::Box => 0,
            Letter::S(i) => i,
        }
    }

    pub fn from_index(i: usize) -> Letter {
        if i == 0 {
            Letter::Box
        } else {
            Letter::S(i)
        }
    }

    /// Both `s_1` and `s_box` flatten to `s_1`.
    pub fn flatten(self) -> Letter {
        match self {
            Letter::Box => Letter::S(1),
            l => l,
        }
    }

    pub fn in_range(self, n: usize) -> bool {
        match self {
            Letter::Box => n >= 2,
            Letter::S(i) => i >= 1 && i < n,
        }
    }

    /// `s□` or `s<i>` for display.
    pub fn symbol(self) -> String {
        match self {
            Letter::Box => "s□".to_string(),
            Letter::S(i) => format!("s{i}"),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// A word in the simple reflections. Words compare lexicographically with
/// box smallest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|l| !l.in_range(n)) {
            Some(l) => Err(Error::LetterOutOfRange {
                letter: l.index(),
                n,
            }),
            None => Ok(()),
        }
    }

    /// The element `s_{a_1} ... s_{a_r}` of `W~_n`.
    pub fn evaluate(&self, n: usize) -> Result<SignedPermutation> {
        self.check_range(n)?;
        let mut w = SignedPermutation::identity(n);
        for &l in &self.0 {
            w.right_mul_letter_mut(l);
        }
        Ok(w)
    }

    pub fn is_reduced(&self, n: usize) -> Result<bool> {
        Ok(self.evaluate(n)?.length() == self.len())
    }

    /// Replaces every box by 1.
    pub fn flatten(&self) -> Word {
        Word(self.0.iter().map(|l| l.flatten()).collect())
    }

    /// Letters as integers, box encoded as 0.
    pub fn indices(&self) -> Vec<usize> {
        self.0.iter().map(|l| l.index()).collect()
    }

    /// `s□s1s2` style label; the empty word renders as `1`.
    pub fn symbol(&self) -> String {
        if self.0.is_empty() {
            "1".to_string()
        } else {
            self.0.iter().map(|l| l.symbol()).collect()
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map(Letter::from_index)
                    .map_err(|_| Error::Parse(format!("invalid letter {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// An element of `W~_n`: a signed permutation with an even number of
/// negative entries, stored as `(w(1), ..., w(n))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation(Vec<i32>);

impl SignedPermutation {
    pub fn new(entries: Vec<i32>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &e in &entries {
            let a = e.unsigned_abs() as usize;
            if e == 0 || a > n || seen[a] {
                return Err(Error::InvalidPermutation(format!(
                    "{entries:?} is not a signed permutation"
                )));
            }
            seen[a] = true;
        }
        if entries.iter().filter(|&&e| e < 0).count() % 2 != 0 {
            return Err(Error::InvalidPermutation(format!(
                "{entries:?} has an odd number of sign changes"
            )));
        }
        Ok(SignedPermutation(entries))
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation((1..=n as i32).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &e)| e == i as i32 + 1)
    }

    /// `w(i)` for `i` in `{+-1, ..., +-n}`.
    pub fn apply(&self, i: i32) -> i32 {
        let v = self.0[i.unsigned_abs() as usize - 1];
        if i < 0 {
            -v
        } else {
            v
        }
    }

    /// The product `self * other`, i.e. `(uv)(i) = u(v(i))`.
    pub fn compose(&self, other: &SignedPermutation) -> Result<SignedPermutation> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        Ok(SignedPermutation(
            other.0.iter().map(|&v| self.apply(v)).collect(),
        ))
    }

    /// `self * s_{a_1} * ... * s_{a_r}`.
    pub fn compose_word(&self, word: &Word) -> Result<SignedPermutation> {
        word.check_range(self.n())?;
        let mut w = self.clone();
        for &l in word.letters() {
            w.right_mul_letter_mut(l);
        }
        Ok(w)
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut inv = vec![0; self.n()];
        for (i, &e) in self.0.iter().enumerate() {
            let v = i as i32 + 1;
            inv[e.unsigned_abs() as usize - 1] = if e < 0 { -v } else { v };
        }
        SignedPermutation(inv)
    }

    pub fn right_mul_letter(&self, l: Letter) -> SignedPermutation {
        let mut w = self.clone();
        w.right_mul_letter_mut(l);
        w
    }

    fn right_mul_letter_mut(&mut self, l: Letter) {
        match l {
            Letter::S(i) => self.0.swap(i - 1, i),
            Letter::Box => {
                let (a, b) = (self.0[0], self.0[1]);
                self.0[0] = -b;
                self.0[1] = -a;
            }
        }
    }

    pub fn left_mul_letter(&self, l: Letter) -> SignedPermutation {
        let s = Word::new(vec![l])
            .evaluate(self.n())
            .expect("letter in range");
        s.compose(self).expect("same size")
    }

    /// `#{i<j : w_i > w_j} + #{i<j : w_i + w_j < 0}`
    pub fn length(&self) -> usize {
        let w = &self.0;
        let mut l = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    l += 1;
                }
                if w[i] + w[j] < 0 {
                    l += 1;
                }
            }
        }
        l
    }

    /// `l(w s) < l(w)`
    pub fn has_right_descent(&self, l: Letter) -> bool {
        match l {
            Letter::S(i) => self.0[i - 1] > self.0[i],
            Letter::Box => self.0[0] + self.0[1] < 0,
        }
    }

    /// `l(s w) < l(w)`
    pub fn has_left_descent(&self, l: Letter) -> bool {
        self.inverse().has_right_descent(l)
    }

    pub fn right_descents(&self) -> Vec<Letter> {
        letters(self.n())
            .filter(|&l| self.has_right_descent(l))
            .collect()
    }

    /// The lexicographically least reduced word.
    pub fn canonical_reduced_word(&self) -> Word {
        let n = self.n();
        let mut w = self.clone();
        let mut word = Word::empty();
        while !w.is_identity() {
            let inv = w.inverse();
            let l = letters(n)
                .find(|&l| inv.has_right_descent(l))
                .expect("non-identity element has a descent");
            word.push(l);
            w = w.left_mul_letter(l);
        }
        word
    }

    /// All reduced words, sorted. Refuses elements longer than `bound`.
    pub fn reduced_words(&self, bound: usize) -> Result<Vec<Word>> {
        let len = self.length();
        if len > bound {
            return Err(Error::BoundExceeded { length: len, bound });
        }
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        reduced_words_rec(self, &mut prefix, &mut out);
        Ok(out)
    }

    /// Every element of `W~_n` in lexicographic order of absolute values,
    /// then sign pattern.
    pub fn all(n: usize) -> Vec<SignedPermutation> {
        let mut out = Vec::new();
        for p in permutations(n) {
            for mask in 0u32..(1 << n) {
                if mask.count_ones() % 2 != 0 {
                    continue;
                }
                let e = p
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| {
                        let v = v as i32;
                        if mask >> i & 1 == 1 {
                            -v
                        } else {
                            v
                        }
                    })
                    .collect();
                out.push(SignedPermutation(e));
            }
        }
        out
    }

    /// True when all entries are positive, i.e. the element lies in `S_n`.
    pub fn is_unsigned(&self) -> bool {
        self.0.iter().all(|&e| e > 0)
    }

    pub fn to_permutation_a(&self) -> Option<PermutationA> {
        if self.is_unsigned() {
            Some(PermutationA(self.0.iter().map(|&e| e as usize).collect()))
        } else {
            None
        }
    }

    /// Compact display such as `3̄1̄2`: bars mark negative entries.
    pub fn bar_notation(&self) -> String {
        self.0
            .iter()
            .map(|&e| {
                if e < 0 {
                    format!("{}\u{0304}", -e)
                } else {
                    e.to_string()
                }
            })
            .collect()
    }
}

fn reduced_words_rec(w: &SignedPermutation, prefix: &mut Vec<Letter>, out: &mut Vec<Word>) {
    if w.is_identity() {
        out.push(Word(prefix.clone()));
        return;
    }
    let inv = w.inverse();
    for l in letters(w.n()) {
        if inv.has_right_descent(l) {
            prefix.push(l);
            reduced_words_rec(&w.left_mul_letter(l), prefix, out);
            prefix.pop();
        }
    }
}

/// The simple reflections of `W~_n` in ascending order, box first.
pub fn letters(n: usize) -> impl Iterator<Item = Letter> {
    let boxed = if n >= 2 { Some(Letter::Box) } else { None };
    boxed.into_iter().chain((1..n).map(Letter::S))
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = parse_list::<i32>(s)?;
        SignedPermutation::new(entries)
    }
}

fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<T>()
                .map_err(|_| Error::Parse(format!("invalid entry {t:?}")))
        })
        .collect()
}

/// A permutation `(p(1), ..., p(n))` in `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PermutationA(Vec<usize>);

impl PermutationA {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &e in &entries {
            if e == 0 || e > n || seen[e] {
                return Err(Error::InvalidPermutation(format!(
                    "{entries:?} is not a permutation"
                )));
            }
            seen[e] = true;
        }
        Ok(PermutationA(entries))
    }

    pub fn identity(n: usize) -> Self {
        PermutationA((1..=n).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &e)| e == i + 1)
    }

    /// `(uv)(i) = u(v(i))`
    pub fn compose(&self, other: &PermutationA) -> Result<PermutationA> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        Ok(PermutationA(other.0.iter().map(|&v| self.0[v - 1]).collect()))
    }

    pub fn inverse(&self) -> PermutationA {
        let mut inv = vec![0; self.n()];
        for (i, &e) in self.0.iter().enumerate() {
            inv[e - 1] = i + 1;
        }
        PermutationA(inv)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let p = &self.0;
        (0..p.len())
            .map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count())
            .sum()
    }

    pub fn right_mul_s(&self, i: usize) -> PermutationA {
        let mut p = self.0.clone();
        p.swap(i - 1, i);
        PermutationA(p)
    }

    pub fn has_right_descent(&self, i: usize) -> bool {
        self.0[i - 1] > self.0[i]
    }

    /// The lexicographically least reduced word in `s_1, ..., s_{n-1}`.
    pub fn canonical_reduced_word(&self) -> Word {
        let mut inv = self.inverse();
        let mut word = Word::empty();
        while let Some(i) = (1..self.n()).find(|&i| inv.has_right_descent(i)) {
            word.push(Letter::S(i));
            inv = inv.right_mul_s(i);
        }
        word
    }

    pub fn to_signed(&self) -> SignedPermutation {
        SignedPermutation(self.0.iter().map(|&e| e as i32).collect())
    }

    /// Every element of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<PermutationA> {
        permutations(n).into_iter().map(PermutationA).collect()
    }

    /// Concatenated one-line digits, e.g. `213`; comma separated once
    /// `n >= 10`.
    pub fn compact(&self) -> String {
        if self.n() < 10 {
            self.0.iter().map(|e| e.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

impl fmt::Display for PermutationA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for PermutationA {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PermutationA::new(parse_list::<usize>(s)?)
    }
}

/// Lexicographic list of the permutations of `1..=n`.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (1..=n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// `w_0` in `W~_n`: all entries negated, except the first when `n` is odd.
pub fn longest_element(n: usize) -> SignedPermutation {
    SignedPermutation(
        (1..=n as i32)
            .map(|i| if i == 1 && n % 2 == 1 { 1 } else { -i })
            .collect(),
    )
}

/// `(n, n-1, ..., 1)`
pub fn longest_element_a(n: usize) -> PermutationA {
    PermutationA((1..=n).rev().collect())
}

/// The maximal Grassmannian element `w_lambda` attached to a strict partition
/// with parts below `n`.
pub fn max_grassmannian(lambda: &[usize], n: usize) -> Result<SignedPermutation> {
    if lambda.windows(2).any(|w| w[0] <= w[1]) || lambda.contains(&0) {
        return Err(Error::InvalidPartition(format!(
            "{lambda:?} is not a strict partition"
        )));
    }
    if lambda.first().is_some_and(|&p| p >= n) {
        return Err(Error::InvalidPartition(format!(
            "{lambda:?} has a part >= {n}"
        )));
    }
    let mut e: Vec<i32> = lambda.iter().map(|&p| -(p as i32 + 1)).collect();
    e.push(if lambda.len() % 2 == 1 { -1 } else { 1 });
    for v in 2..=n {
        if !lambda.contains(&(v - 1)) {
            e.push(v as i32);
        }
    }
    SignedPermutation::new(e)
}

/// The embedding `W~_n -> S_{2n}`: identifies `{+-1, ..., +-n}` with
/// `{1, ..., 2n}` via `a -> n+1-a` for `a > 0` and `a -> n-a` for `a < 0`.
pub fn phi_embed(w: &SignedPermutation) -> PermutationA {
    let n = w.n() as i32;
    let beta = |a: i32| if a > 0 { n + 1 - a } else { n - a };
    let mut out = vec![0usize; 2 * w.n()];
    for a in (1..=n).chain((1..=n).map(|a| -a)) {
        out[beta(a) as usize - 1] = beta(w.apply(a)) as usize;
    }
    PermutationA(out)
}
