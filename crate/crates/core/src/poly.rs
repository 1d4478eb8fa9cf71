//! Sparse multivariate polynomials over the rationals and the divided
//! difference operators of type D.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::weyl::{Letter, Word};

/// Products whose total degree exceeds this are refused.
pub const DEFAULT_DEGREE_CAP: u32 = 64;

/// Exponent vector. Ordered by graded reverse-lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        // revlex: the last differing exponent decides, smaller wins
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` commuting variables with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars}");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rational::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial(exps), c);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated exponents.
    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::MismatchedVars {
                    left: nvars,
                    right: e.len(),
                });
            }
            p.add_term(Monomial(e), &c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order: descending graded reverse-lexicographic.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeff_of(&self, m: &Monomial) -> Option<&Rational> {
        self.terms.get(m)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Largest total degree of a term, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Distinct total degrees present, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.keys().map(Monomial::degree).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_dyadic(&self) -> bool {
        self.terms.values().all(Rational::is_dyadic)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(Rational::is_integer)
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::MismatchedVars {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.try_mul_capped(other, DEFAULT_DEGREE_CAP)
    }

    pub fn try_mul_capped(&self, other: &Polynomial, cap: u32) -> Result<Polynomial> {
        self.check_vars(other)?;
        if let (Some(a), Some(b)) = (self.total_degree(), other.total_degree()) {
            if a + b > cap {
                return Err(Error::DegreeCap {
                    degree: a + b,
                    cap,
                });
            }
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = acc.entry(ma.mul(mb)).or_insert_with(Rational::zero);
                *e += &(ca * cb);
            }
        }
        Ok(Polynomial {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `f(x_1,...,x_n) -> f(-x_1,...,-x_n)`
    pub fn negate_vars(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = if m.degree() % 2 == 0 { c.clone() } else { -c };
                    (m.clone(), c)
                })
                .collect(),
        }
    }

    /// Sets `x_{m+1} = ... = x_n = 0` and drops those variables.
    pub fn truncate_vars(&self, m: usize) -> Polynomial {
        assert!(m <= self.nvars);
        let mut out = Polynomial::zero(m);
        for (mono, c) in &self.terms {
            if mono.0[m..].iter().all(|&e| e == 0) {
                out.add_term(Monomial(mono.0[..m].to_vec()), c);
            }
        }
        out
    }

    /// Regards the polynomial as one in `m >= nvars` variables.
    pub fn extend_vars(&self, m: usize) -> Polynomial {
        assert!(m >= self.nvars);
        Polynomial {
            nvars: m,
            terms: self
                .terms
                .iter()
                .map(|(mono, c)| {
                    let mut e = mono.0.clone();
                    e.resize(m, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes `x_{i+1} -> images[i]`. All images must share a variable
    /// count, which becomes the variable count of the result.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::SizeMismatch(images.len(), self.nvars));
        }
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        if let Some(bad) = images.iter().find(|p| p.nvars != target) {
            return Err(Error::MismatchedVars {
                left: target,
                right: bad.nvars,
            });
        }
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().try_mul(&images[i])?;
                    powers[i].push(next);
                }
                t = t.try_mul(&powers[i][e as usize])?;
            }
            out = out.try_add(&t)?;
        }
        Ok(out)
    }

    /// Applies a permutation of exponent positions with a sign depending on
    /// the monomial.
    fn map_monomials(&self, f: impl Fn(&Monomial) -> (Monomial, bool)) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let (m2, neg) = f(m);
            out.add_term(m2, &if neg { -c } else { c.clone() });
        }
        out
    }

    /// The action of a simple reflection of the type D Weyl group on the
    /// variables.
    pub fn act(&self, letter: Letter) -> Result<Polynomial> {
        self.check_letter(letter)?;
        Ok(match letter {
            Letter::S(i) => self.map_monomials(|m| {
                let mut e = m.0.clone();
                e.swap(i - 1, i);
                (Monomial(e), false)
            }),
            Letter::Box => self.map_monomials(|m| {
                let mut e = m.0.clone();
                let neg = (e[0] + e[1]) % 2 == 1;
                e.swap(0, 1);
                (Monomial(e), neg)
            }),
        })
    }

    fn check_letter(&self, letter: Letter) -> Result<()> {
        let ok = match letter {
            Letter::Box => self.nvars >= 2,
            Letter::S(i) => i >= 1 && i < self.nvars,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::LetterOutOfRange {
                letter: letter.index(),
                n: self.nvars,
            })
        }
    }

    /// Divided difference `(f - s f) / alpha` where `alpha` is the simple
    /// root `x_i - x_{i+1}`, resp. `-x_1 - x_2` for box.
    ///
    /// The box root carries the minus sign so that the roots form a base of
    /// `D_n`; with `+(x_1 + x_2)` the braid relation between box and `s_2`
    /// only holds up to sign.
    pub fn divided_difference(&self, letter: Letter) -> Result<Polynomial> {
        let numer = self.try_sub(&self.act(letter)?)?;
        let (i, j, c) = match letter {
            Letter::S(i) => (i - 1, i, Rational::one()),
            Letter::Box => (0, 1, -Rational::one()),
        };
        let (q, r) = numer.div_linear(i, j, &c);
        assert!(
            r.is_zero(),
            "nonzero remainder in divided difference by {letter}"
        );
        Ok(match letter {
            Letter::Box => -&q,
            Letter::S(_) => q,
        })
    }

    /// `d_{a_1} o ... o d_{a_l}` for a reduced word `a_1 ... a_l`. Non-reduced
    /// words are rejected.
    pub fn divided_difference_word(&self, word: &Word) -> Result<Polynomial> {
        for &l in word.letters() {
            self.check_letter(l)?;
        }
        if !word.is_reduced(self.nvars)? {
            return Err(Error::NotReduced {
                word: word.to_string(),
            });
        }
        self.divided_difference_word_unchecked(word)
    }

    /// Like [`Polynomial::divided_difference_word`] but trusts the caller that
    /// the word is reduced.
    pub fn divided_difference_word_unchecked(&self, word: &Word) -> Result<Polynomial> {
        let mut f = self.clone();
        for &l in word.letters().iter().rev() {
            if f.is_zero() {
                break;
            }
            f = f.divided_difference(l)?;
        }
        Ok(f)
    }

    /// Synthetic division by `x_i - c x_j` (zero-based indices), Horner style
    /// in the variable `x_i`. Returns quotient and remainder.
    fn div_linear(&self, i: usize, j: usize, c: &Rational) -> (Polynomial, Polynomial) {
        let max_e = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0) as usize;
        let mut buckets: Vec<HashMap<Vec<u32>, Rational>> = vec![HashMap::new(); max_e + 1];
        for (m, a) in &self.terms {
            let mut rest = m.0.clone();
            let p = rest[i] as usize;
            rest[i] = 0;
            *buckets[p].entry(rest).or_insert_with(Rational::zero) += a;
        }
        let mut quotient = Polynomial::zero(self.nvars);
        for p in (1..=max_e).rev() {
            let level = std::mem::take(&mut buckets[p]);
            for (rest, a) in level {
                if a.is_zero() {
                    continue;
                }
                let mut qe = rest.clone();
                qe[i] = (p - 1) as u32;
                quotient.add_term(Monomial(qe), &a);
                let mut down = rest;
                down[j] += 1;
                *buckets[p - 1].entry(down).or_insert_with(Rational::zero) += &(&a * c);
            }
        }
        let mut rem = Polynomial::zero(self.nvars);
        for (rest, a) in buckets.swap_remove(0) {
            rem.add_term(Monomial(rest), &a);
        }
        (quotient, rem)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            n: self.nvars,
            terms: self
                .terms()
                .map(|(m, c)| TermJson {
                    exp: m.0.clone(),
                    coef: c.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Polynomial> {
        Polynomial::from_terms(j.n, j.terms.iter().map(|t| (t.exp.clone(), t.coef.clone())))
    }
}

/// Wire form: `{ "n": int, "terms": [ { "exp": [..], "coef": "p/q" } ] }`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: Rational,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        Polynomial::from_json(&j).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", a, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.nvars, self)
    }
}

// Operator forms panic on variable-count mismatch or degree-cap overflow;
// the `try_*` methods report those as errors.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial add")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial sub")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial mul")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i - 1)
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn difference_of_squares() {
        let (x1, x2) = (x(2, 1), x(2, 2));
        let p = &(&x1 + &x2) * &(&x1 - &x2);
        let expect = &x1.pow(2) - &x2.pow(2);
        assert_eq!(p, expect);
    }

    #[test]
    fn times_zero() {
        let f = &x(3, 1) + &x(3, 3).pow(4);
        assert!((&f * &Polynomial::zero(3)).is_zero());
    }

    #[test]
    fn half_sum_squared() {
        // direct expansion: (1/4)(x1^2+x2^2+x3^2) + (1/2)(x1x2+x1x3+x2x3)
        let s = (&(&x(3, 1) + &x(3, 2)) + &x(3, 3)).scale(&q(1, 2));
        let sq = &s * &s;
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = 2;
            assert_eq!(sq.coeff(&e), q(1, 4));
            for j in i + 1..3 {
                let mut e = vec![0; 3];
                e[i] = 1;
                e[j] = 1;
                assert_eq!(sq.coeff(&e), q(1, 2));
            }
        }
        assert_eq!(sq.len(), 6);
    }

    #[test]
    fn mismatched_vars_rejected() {
        let err = x(2, 1).try_add(&x(3, 1)).unwrap_err();
        assert!(matches!(err, Error::MismatchedVars { .. }));
        assert!(x(2, 1).try_mul(&x(3, 1)).is_err());
    }

    #[test]
    fn degree_cap() {
        let p = x(2, 1).pow(40);
        let err = p.try_mul(&p).unwrap_err();
        assert_eq!(err, Error::DegreeCap { degree: 80, cap: 64 });
        assert!(p.try_mul_capped(&p, 100).is_ok());
    }

    #[test]
    fn grevlex_order() {
        // x1^2 > x1x2 > x2^2 > x1 > x2 > 1 with two variables
        let p = &(&(&x(2, 1).pow(2) + &x(2, 2).pow(2)) + &(&x(2, 1) * &x(2, 2)))
            + &(&(&x(2, 1) + &x(2, 2)) + &Polynomial::one(2));
        let order: Vec<Vec<u32>> = p.terms().map(|(m, _)| m.exps().to_vec()).collect();
        assert_eq!(
            order,
            vec![
                vec![2, 0],
                vec![1, 1],
                vec![0, 2],
                vec![1, 0],
                vec![0, 1],
                vec![0, 0]
            ]
        );
        // degree 3 in three variables: x1^2 x2 > x1 x2^2 > x1^2 x3 in grevlex
        let a = Monomial::new(vec![2, 1, 0]);
        let b = Monomial::new(vec![1, 2, 0]);
        let c = Monomial::new(vec![2, 0, 1]);
        assert!(a > b && b > c);
    }

    #[test]
    fn linear_divided_differences() {
        assert_eq!(
            x(2, 1).divided_difference(Letter::S(1)).unwrap(),
            Polynomial::one(2)
        );
        assert_eq!(
            x(2, 1).divided_difference(Letter::Box).unwrap(),
            -&Polynomial::one(2)
        );
        assert_eq!(
            x(2, 2).divided_difference(Letter::Box).unwrap(),
            -&Polynomial::one(2)
        );
    }

    #[test]
    fn symmetric_is_killed() {
        let e2 = &(&x(3, 1) * &x(3, 2)) + &(&(&x(3, 1) * &x(3, 3)) + &(&x(3, 2) * &x(3, 3)));
        for i in 1..3 {
            assert!(e2.divided_difference(Letter::S(i)).unwrap().is_zero());
        }
        // x1^2 + x2^2 is invariant under s_box as well
        let p2 = &x(3, 1).pow(2) + &x(3, 2).pow(2);
        assert!(p2.divided_difference(Letter::Box).unwrap().is_zero());
    }

    #[test]
    fn box_action() {
        // s_box sends x1^2 x2 to (-x2)^2 (-x1) = -x1 x2^2
        let m = &x(2, 1).pow(2) * &x(2, 2);
        let img = m.act(Letter::Box).unwrap();
        assert_eq!(img, (&x(2, 1) * &x(2, 2).pow(2)).scale(&-Rational::one()));
    }

    #[test]
    fn negate_vars_parity() {
        assert_eq!(x(2, 1).negate_vars(), -&x(2, 1));
        let m = &x(2, 1) * &x(2, 2);
        assert_eq!(m.negate_vars(), m);
        let h = (&x(3, 1).pow(3) + &(&x(3, 2) * &x(3, 3).pow(2))).scale(&q(3, 2));
        assert_eq!(h.negate_vars(), -&h);
    }

    #[test]
    fn out_of_range_letter() {
        assert!(x(2, 1).divided_difference(Letter::S(2)).is_err());
        assert!(Polynomial::one(1).divided_difference(Letter::Box).is_err());
    }

    #[test]
    fn json_roundtrip_and_order() {
        let p = (&x(2, 1).pow(2) - &x(2, 2)).scale(&q(1, 2));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"n":2,"terms":[{"exp":[2,0],"coef":"1/2"},{"exp":[0,1],"coef":"-1/2"}]}"#
        );
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn substitute_and_truncate() {
        // f = x1 x2, substitute x1 -> y1 + y2, x2 -> y2
        let f = &x(2, 1) * &x(2, 2);
        let g = f
            .substitute(&[&x(3, 1) + &x(3, 2), x(3, 2)])
            .unwrap();
        assert_eq!(g, &(&x(3, 1) * &x(3, 2)) + &x(3, 2).pow(2));
        assert_eq!(g.truncate_vars(1), Polynomial::zero(1));
        assert_eq!(g.extend_vars(4).truncate_vars(3), g);
    }
    fn poly_strategy(n: usize, deg: u32) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(
            (prop::collection::vec(0..=deg, n), -5i64..=5, 1i64..=4),
            1..8,
        )
        .prop_map(move |ts| {
            Polynomial::from_terms(n, ts.into_iter().map(|(e, a, b)| (e, q(a, b)))).unwrap()
        })
    }

    fn dd_word(f: &Polynomial, w: &str) -> Polynomial {
        f.divided_difference_word(&w.parse().unwrap()).unwrap()
    }

    #[test]
    fn longest_w2_words_agree() {
        let f = &(&x(2, 1).pow(2) + &(&x(2, 1) * &x(2, 2)).scale(&q(3, 1))) - &x(2, 2).pow(2);
        assert_eq!(dd_word(&f, "0 1"), dd_word(&f, "1 0"));
        assert_eq!(dd_word(&x(2, 1), "1"), Polynomial::one(2));
        let err = x(2, 1).divided_difference_word(&"1 1".parse().unwrap());
        assert!(matches!(err, Err(Error::NotReduced { .. })));
    }

    #[test]
    fn word_independence_exhaustive_w3() {
        use crate::weyl::{SignedPermutation, REDUCED_WORDS_BOUND};
        // a generic degree 6 polynomial so that nothing vanishes early
        let f = &(&x(3, 1).pow(4) * &x(3, 2).pow(2)) + &(&(&x(3, 1).pow(3) * &x(3, 2)) * &x(3, 3).pow(2)).scale(&q(5, 2));
        for w in SignedPermutation::all(3) {
            let words = w.reduced_words(REDUCED_WORDS_BOUND).unwrap();
            let first = f.divided_difference_word(&words[0]).unwrap();
            for word in &words[1..] {
                assert_eq!(f.divided_difference_word(word).unwrap(), first, "{w} {word}");
            }
        }
    }

    proptest! {
        #[test]
        fn nilpotent(f in poly_strategy(4, 4)) {
            for l in crate::weyl::letters(4) {
                let once = f.divided_difference(l).unwrap();
                prop_assert!(once.divided_difference(l).unwrap().is_zero());
                if !once.is_zero() && f.is_homogeneous() {
                    prop_assert_eq!(once.total_degree().unwrap() + 1, f.total_degree().unwrap());
                }
            }
        }

        #[test]
        fn braid(f in poly_strategy(4, 4)) {
            let d = |g: &Polynomial, w: &str| -> Polynomial {
                g.divided_difference_word_unchecked(&w.parse().unwrap()).unwrap()
            };
            prop_assert_eq!(d(&f, "1 2 1"), d(&f, "2 1 2"));
            prop_assert_eq!(d(&f, "2 3 2"), d(&f, "3 2 3"));
            prop_assert_eq!(d(&f, "0 2 0"), d(&f, "2 0 2"));
            prop_assert_eq!(d(&f, "0 1"), d(&f, "1 0"));
            prop_assert_eq!(d(&f, "0 3"), d(&f, "3 0"));
        }

        #[test]
        fn word_independence_w4(w in prop::sample::select(crate::weyl::SignedPermutation::all(4)), f in poly_strategy(4, 5)) {
            let words = w.reduced_words(crate::weyl::REDUCED_WORDS_BOUND).unwrap();
            let a = f.divided_difference_word(&words[0]).unwrap();
            let b = f.divided_difference_word(words.last().unwrap()).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn negation_scales_by_degree_parity(f in poly_strategy(3, 3)) {
            for d in f.degrees() {
                let h = f.homogeneous_component(d);
                let sign = if d % 2 == 0 { Rational::one() } else { -Rational::one() };
                prop_assert_eq!(h.negate_vars(), h.scale(&sign));
            }
        }

        #[test]
        fn dyadic_inputs_stay_dyadic(f in poly_strategy(3, 4)) {
            let g = f.scale(&q(1, 3));
            let f2 = &g.scale(&q(3, 1)) * &g.scale(&q(3, 1));
            prop_assert!(f2.is_dyadic() == (&f * &f).is_dyadic());
            if f.is_dyadic() {
                for l in crate::weyl::letters(3) {
                    prop_assert!(f.divided_difference(l).unwrap().is_dyadic());
                }
            }
        }
    }
}
