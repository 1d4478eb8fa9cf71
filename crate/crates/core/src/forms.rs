//! Invariant differential forms on `SO(2n)/B`.
//!
//! Forms live in the exterior algebra on the one-forms `w_ij`, `wb_ij`
//! (lower family, `i < j`) and `w^pq`, `wb^pq` (upper family, `p < q`).
//! A monomial is a bitmask over generators; bit order is the canonical
//! order: lower pairs lexicographically, then upper pairs, and within a
//! pair `w` before `wb`. So `Omega_ij = w_ij ^ wb_ij` is a single sorted
//! monomial with coefficient 1.
//!
//! All curvature data is given in the skew-diagonal realization.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Largest rank whose generators fit in a `u64` mask (`4 * 15 = 60`).
pub const MAX_FORM_RANK: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Lower,
    Upper,
}

/// One of `w_ij`, `wb_ij`, `w^pq`, `wb^pq` with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormGenerator {
    pub family: Family,
    pub a: usize,
    pub b: usize,
    pub bar: bool,
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Number of generators, which is also the generator count of `Omega`.
pub fn generator_count(n: usize) -> usize {
    4 * pair_count(n)
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(1 <= a && a < b && b <= n);
    // pairs (1,2), (1,3), ..., (1,n), (2,3), ...
    (a - 1) * n - (a - 1) * a / 2 + (b - a - 1)
}

impl FormGenerator {
    /// `+-` the normalized generator; `a > b` flips the sign.
    pub fn oriented(family: Family, a: usize, b: usize, bar: bool, n: usize) -> Result<(Rational, FormGenerator)> {
        if a == b || a == 0 || b == 0 || a > n || b > n {
            return Err(Error::Parse(format!("invalid form index ({a},{b}) for n = {n}")));
        }
        let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
        Ok((
            Rational::from(sign),
            FormGenerator {
                family,
                a: lo,
                b: hi,
                bar,
            },
        ))
    }

    pub fn bit(&self, n: usize) -> usize {
        let base = match self.family {
            Family::Lower => 0,
            Family::Upper => pair_count(n),
        };
        2 * (base + pair_index(n, self.a, self.b)) + usize::from(self.bar)
    }

    pub fn from_bit(bit: usize, n: usize) -> FormGenerator {
        let pairs = pair_count(n);
        let bar = bit % 2 == 1;
        let mut k = bit / 2;
        let family = if k < pairs {
            Family::Lower
        } else {
            k -= pairs;
            Family::Upper
        };
        let mut a = 1;
        while k >= n - a {
            k -= n - a;
            a += 1;
        }
        FormGenerator {
            family,
            a,
            b: a + 1 + k,
            bar,
        }
    }

    /// `w_l(1,2)`, `wb_l(1,2)`, `w_u(1,2)`, `wb_u(1,2)`.
    pub fn label(&self) -> String {
        let head = if self.bar { "wb" } else { "w" };
        let fam = match self.family {
            Family::Lower => "l",
            Family::Upper => "u",
        };
        format!("{head}_{fam}({},{})", self.a, self.b)
    }

    pub fn parse(s: &str, n: usize) -> Result<FormGenerator> {
        let bad = || Error::Parse(format!("invalid form generator {s:?}"));
        let (head, rest) = s.split_once('_').ok_or_else(bad)?;
        let bar = match head {
            "w" => false,
            "wb" => true,
            _ => return Err(bad()),
        };
        let family = match rest.get(..1) {
            Some("l") => Family::Lower,
            Some("u") => Family::Upper,
            _ => return Err(bad()),
        };
        let inner = rest[1..]
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a >= b {
            return Err(bad());
        }
        let (_, g) = FormGenerator::oriented(family, a, b, bar, n)?;
        Ok(g)
    }
}

/// Sign of `a ^ b` relative to the sorted union, or `None` on overlap.
fn wedge_sign(a: u64, b: u64) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    // count pairs (i in a, j in b) with i > j
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (a >> j).count_ones();
    }
    Some(swaps % 2 == 1)
}

/// An element of the exterior algebra of invariant forms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormElement {
    n: usize,
    terms: BTreeMap<u64, Rational>,
}

impl FormElement {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_FORM_RANK, "form rank {n} exceeds {MAX_FORM_RANK}");
        FormElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut f = Self::zero(n);
        if !c.is_zero() {
            f.terms.insert(0, c);
        }
        f
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn generator(g: FormGenerator, n: usize) -> Self {
        let mut f = Self::zero(n);
        f.terms.insert(1u64 << g.bit(n), Rational::one());
        f
    }

    /// `w_ab` (lower) or `w^ab` (upper) with the antisymmetry convention.
    pub fn one_form(family: Family, a: usize, b: usize, bar: bool, n: usize) -> Self {
        let (s, g) = FormGenerator::oriented(family, a, b, bar, n).expect("valid index");
        Self::generator(g, n).scale(&s)
    }

    /// `Omega_ab` for `a != b`; symmetric in `a, b`.
    pub fn omega_lower(a: usize, b: usize, n: usize) -> Self {
        Self::one_form(Family::Lower, a, b, false, n).wedge(&Self::one_form(Family::Lower, a, b, true, n))
    }

    /// `Omega^ab` for `a != b`; symmetric in `a, b`.
    pub fn omega_upper(a: usize, b: usize, n: usize) -> Self {
        Self::one_form(Family::Upper, a, b, false, n).wedge(&Self::one_form(Family::Upper, a, b, true, n))
    }

    /// The top form `Omega`.
    pub fn top(n: usize) -> Self {
        let mut f = Self::zero(n);
        let g = generator_count(n);
        let mask = if g == 64 { u64::MAX } else { (1u64 << g) - 1 };
        f.terms.insert(mask, Rational::one());
        f
    }

    pub fn n(&self) -> usize {
        self.n
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

    /// `(generators in canonical order, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<FormGenerator>, &Rational)> + '_ {
        self.terms.iter().map(move |(&m, c)| {
            let gens = (0..64)
                .filter(|b| m >> b & 1 == 1)
                .map(|b| FormGenerator::from_bit(b, self.n))
                .collect();
            (gens, c)
        })
    }

    /// Generator counts present, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().map(|m| m.count_ones() as usize).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The common generator count, `None` for zero or mixed forms.
    pub fn degree(&self) -> Option<usize> {
        match self.degrees().as_slice() {
            [d] => Some(*d),
            _ => None,
        }
    }

    pub fn component(&self, gens: usize) -> FormElement {
        FormElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.count_ones() as usize == gens)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// The coefficient `r` of `Omega`.
    pub fn top_coefficient(&self) -> Rational {
        Self::top(self.n)
            .terms
            .keys()
            .next()
            .and_then(|m| self.terms.get(m))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `Some(r)` when the form is exactly `r Omega`.
    pub fn as_top_multiple(&self) -> Option<Rational> {
        let r = self.top_coefficient();
        if *self == Self::top(self.n).scale(&r) {
            Some(r)
        } else {
            None
        }
    }

    fn check(&self, other: &FormElement) {
        assert_eq!(self.n, other.n, "form rank mismatch");
    }

    fn add_term(&mut self, m: u64, c: Rational) {
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += &c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &FormElement) -> FormElement {
        self.check(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &FormElement) -> FormElement {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> FormElement {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        FormElement {
            n: self.n,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// The exterior product.
    pub fn wedge(&self, other: &FormElement) -> FormElement {
        self.check(other);
        let mut out = Self::zero(self.n);
        let top = generator_count(self.n) as u32;
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma.count_ones() + mb.count_ones() > top {
                    continue;
                }
                if let Some(neg) = wedge_sign(*ma, *mb) {
                    let c = ca * cb;
                    out.add_term(ma | mb, if neg { -c } else { c });
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> FormElement {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = acc.wedge(self);
        }
        acc
    }

    pub fn to_json(&self) -> FormJson {
        FormJson {
            n: self.n,
            terms: self
                .terms()
                .map(|(gens, c)| FormTermJson {
                    gens: gens.iter().map(FormGenerator::label).collect(),
                    coef: c.clone(),
                })
                .collect(),
        }
    }

    /// Generators may be listed in any order; the sign of the sorting
    /// permutation is applied.
    pub fn from_json(j: &FormJson) -> Result<FormElement> {
        if j.n > MAX_FORM_RANK || j.n < 2 {
            return Err(Error::Parse(format!("form rank {} out of range", j.n)));
        }
        let mut out = Self::zero(j.n);
        for t in &j.terms {
            let mut term = Self::constant(j.n, t.coef.clone());
            for g in &t.gens {
                term = term.wedge(&Self::generator(FormGenerator::parse(g, j.n)?, j.n));
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

impl fmt::Debug for FormElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FormElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(gens, c)| {
                if gens.is_empty() {
                    c.to_string()
                } else {
                    let g: Vec<String> = gens.iter().map(FormGenerator::label).collect();
                    format!("{c}*{}", g.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub n: usize,
    pub terms: Vec<FormTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormTermJson {
    pub gens: Vec<String>,
    pub coef: Rational,
}

// The curvature formulas index pairs for the standard symmetric form; the
// skew-diagonal realization relabels (a, b) -> (n+1-b, n+1-a) in both
// families. These helpers take standard-frame indices.

fn remap(a: usize, b: usize, n: usize) -> (usize, usize) {
    (n + 1 - b, n + 1 - a)
}

fn std_one_form(family: Family, a: usize, b: usize, bar: bool, n: usize) -> FormElement {
    let (ra, rb) = remap(a, b, n);
    // orientation is preserved: a < b iff n+1-b < n+1-a
    FormElement::one_form(family, ra, rb, bar, n)
}

fn std_omega(family: Family, a: usize, b: usize, n: usize) -> FormElement {
    std_one_form(family, a, b, false, n).wedge(&std_one_form(family, a, b, true, n))
}

/// The form `x_i = -c_1(L_i)`, written out directly in the realized frame.
pub fn x_form(i: usize, n: usize) -> FormElement {
    assert!(1 <= i && i <= n);
    let mut f = FormElement::zero(n);
    for a in 1..=n {
        if a == i {
            continue;
        }
        let lower = FormElement::omega_lower(a, i, n);
        f = if a < i { f.add(&lower) } else { f.sub(&lower) };
        f = f.add(&FormElement::omega_upper(a, i, n));
    }
    f
}

pub fn x_forms(n: usize) -> Vec<FormElement> {
    (1..=n).map(|i| x_form(i, n)).collect()
}

/// `c_1(Q_k)` from the curvature formula after relabeling.
pub fn c1_quotient(k: usize, n: usize) -> FormElement {
    assert!(1 <= k && k <= n);
    let mut f = FormElement::zero(n);
    for i in 1..k {
        f = f.add(&std_omega(Family::Lower, i, k, n));
    }
    for j in k + 1..=n {
        f = f.sub(&std_omega(Family::Lower, k, j, n));
    }
    for p in (1..=n).filter(|&p| p != k) {
        f = f.sub(&std_omega(Family::Upper, p, k, n));
    }
    f
}

pub type FormMatrix = Vec<Vec<FormElement>>;

/// The curvature matrix `K_{E_k}` (entries `Theta_ab`, `1 <= a, b <= k`).
pub fn curvature_e(k: usize, n: usize) -> FormMatrix {
    assert!(1 <= k && k <= n);
    let mut m = vec![vec![FormElement::zero(n); k]; k];
    for (a, row) in m.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate() {
            let (a, b) = (a + 1, b + 1);
            let mut t = FormElement::zero(n);
            for j in k + 1..=n {
                let term = std_one_form(Family::Lower, a, j, false, n)
                    .wedge(&std_one_form(Family::Lower, b, j, true, n));
                t = t.sub(&term);
            }
            for p in (1..=n).filter(|&p| p != a && p != b) {
                let term = std_one_form(Family::Upper, p, a, false, n)
                    .wedge(&std_one_form(Family::Upper, p, b, true, n));
                t = t.sub(&term);
            }
            *entry = t;
        }
    }
    m
}

/// Determinant of a matrix of commuting (even) forms, by Laplace expansion.
fn det(m: &[Vec<FormElement>], n: usize) -> FormElement {
    match m.len() {
        0 => FormElement::one(n),
        1 => m[0][0].clone(),
        k => {
            let mut acc = FormElement::zero(n);
            for col in 0..k {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<FormElement>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, v)| v.clone()).collect())
                    .collect();
                let t = m[0][col].wedge(&det(&minor, n));
                acc = if col % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            acc
        }
    }
}

/// `c_j` of a curvature matrix: the sum of `j x j` principal minors.
pub fn chern_of_matrix(m: &FormMatrix, j: usize, n: usize) -> FormElement {
    let k = m.len();
    if j > k {
        return FormElement::zero(n);
    }
    let mut acc = FormElement::zero(n);
    for set in 0u32..(1 << k) {
        if set.count_ones() as usize != j {
            continue;
        }
        let idx: Vec<usize> = (0..k).filter(|i| set >> i & 1 == 1).collect();
        let minor: Vec<Vec<FormElement>> = idx
            .iter()
            .map(|&r| idx.iter().map(|&c| m[r][c].clone()).collect())
            .collect();
        acc = acc.add(&det(&minor, n));
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bundle {
    E(usize),
    EDual(usize),
    Q(usize),
    QDual(usize),
}

/// The Chern form `c_j` of a tautological bundle.
pub fn chern_form(bundle: Bundle, j: usize, n: usize) -> FormElement {
    if j == 0 {
        return FormElement::one(n);
    }
    let sign = Rational::sign_power(j);
    match bundle {
        Bundle::E(k) => chern_of_matrix(&curvature_e(k, n), j, n),
        Bundle::EDual(k) => chern_of_matrix(&curvature_e(k, n), j, n).scale(&sign),
        Bundle::Q(k) if j == 1 => c1_quotient(k, n),
        Bundle::QDual(k) if j == 1 => c1_quotient(k, n).scale(&sign),
        Bundle::Q(_) | Bundle::QDual(_) => FormElement::zero(n),
    }
}

/// The total Chern form as components indexed by `j`.
pub fn total_chern(bundle: Bundle, n: usize) -> Vec<FormElement> {
    let rank = match bundle {
        Bundle::E(k) | Bundle::EDual(k) => k,
        Bundle::Q(_) | Bundle::QDual(_) => 1,
    };
    (0..=rank).map(|j| chern_form(bundle, j, n)).collect()
}

/// `p_r(E_n^*) = (-1)^r Tr(K_{E_n}^r)`.
pub fn power_sum_dual(r: usize, n: usize) -> FormElement {
    let k = curvature_e(n, n);
    let mut pw = k.clone();
    for _ in 1..r {
        let mut next = vec![vec![FormElement::zero(n); n]; n];
        for (i, row) in next.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                for l in 0..n {
                    *e = e.add(&pw[i][l].wedge(&k[l][j]));
                }
            }
        }
        pw = next;
    }
    let mut tr = FormElement::zero(n);
    for (i, row) in pw.iter().enumerate() {
        tr = tr.add(&row[i]);
    }
    tr.scale(&Rational::sign_power(r))
}

/// `prod_{k=1}^{n-1} 2/(2k)!`, the integral of `Omega`.
pub fn omega_volume(n: usize) -> Rational {
    (1..n)
        .map(|k| &Rational::from(2) * &Rational::factorial(2 * k).recip())
        .product()
}

/// Integration over the flag variety: only the `Omega` component counts.
pub fn integrate(f: &FormElement) -> Rational {
    &f.top_coefficient() * &omega_volume(f.n())
}

/// `2^{1-n} prod_{k=1}^{n-1} c_1(Q_k^*)^{2n-2k}`, Poincare dual to a point.
pub fn point_class_form(n: usize) -> FormElement {
    let mut acc = FormElement::constant(n, Rational::new(1, 1u64 << (n - 1)));
    for k in 1..n {
        let c = chern_form(Bundle::QDual(k), 1, n);
        acc = acc.wedge(&c.pow((2 * n - 2 * k) as u32));
    }
    acc
}

/// `p(v_1, ..., v_n)` for commuting even forms `v_i`.
pub fn evaluate_polynomial(p: &Polynomial, vals: &[FormElement]) -> Result<FormElement> {
    let n_forms = vals
        .first()
        .map(FormElement::n)
        .ok_or_else(|| Error::Parse("no values supplied".into()))?;
    if p.nvars() != vals.len() {
        return Err(Error::MismatchedVars {
            left: vals.len(),
            right: p.nvars(),
        });
    }
    let mut powers: Vec<Vec<FormElement>> = vals.iter().map(|v| vec![FormElement::one(n_forms), v.clone()]).collect();
    let mut acc = FormElement::zero(n_forms);
    for (m, c) in p.terms() {
        let mut t = FormElement::constant(n_forms, c.clone());
        for (i, &e) in m.exps().iter().enumerate() {
            while powers[i].len() <= e as usize {
                let next = powers[i].last().expect("nonempty").wedge(&vals[i]);
                powers[i].push(next);
            }
            t = t.wedge(&powers[i][e as usize]);
            if t.is_zero() {
                break;
            }
        }
        acc = acc.add(&t);
    }
    Ok(acc)
}
