//! Arithmetic Schubert calculus on `SO(2n)/B` in the invariant-form model.
//!
//! Bott-Chern components are indexed by their arithmetic Chow degree `k`;
//! the component in degree `k` is a form of type `(k-1, k-1)`, that is of
//! generator count `2(k-1)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{
    chern_form, evaluate_polynomial, generator_count, integrate, omega_volume, power_sum_dual, total_chern,
    x_forms, Bundle, FormElement, FormJson,
};
use crate::ortho::{
    d_basis, ideal_decompose, route_ideal_index, split_schubert, structure_constants, IdealDecomposition,
    IdealRoute,
};
use crate::poly::{Monomial, Polynomial};
use crate::rational::Rational;
use crate::sym::{elementary_or_zero, elementary_squares, Partition};
use crate::weyl::{PermutationA, SignedPermutation};

pub fn pair_label(k: usize) -> String {
    format!("ctilde_pair_{k}")
}

pub fn dual_label(n: usize) -> String {
    format!("ctilde_dual_{n}")
}

/// Externally supplied Bott-Chern forms that the model cannot derive:
/// `ctilde_pair_<2i>` for `i >= 2` and `ctilde_dual_<n>` for `n >= 3`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BottChernPlugin {
    components: BTreeMap<String, FormElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PluginJson {
    pub n: usize,
    pub components: BTreeMap<String, FormJson>,
}

impl BottChernPlugin {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Validates the label and the generator count of `form`.
    pub fn insert(&mut self, label: &str, form: FormElement) -> Result<()> {
        let n = form.n();
        let expected = if let Some(k) = label.strip_prefix("ctilde_pair_") {
            let k: usize = k
                .parse()
                .map_err(|_| Error::InvalidPlugin(format!("bad label {label}")))?;
            if k < 4 || k % 2 == 1 {
                return Err(Error::InvalidPlugin(format!(
                    "{label} is not an external input (only even degrees >= 4)"
                )));
            }
            2 * (k - 1)
        } else if let Some(m) = label.strip_prefix("ctilde_dual_") {
            let m: usize = m
                .parse()
                .map_err(|_| Error::InvalidPlugin(format!("bad label {label}")))?;
            if m != n || n < 3 {
                return Err(Error::InvalidPlugin(format!("{label} does not match rank {n} (needs n >= 3)")));
            }
            2 * (n - 1)
        } else {
            return Err(Error::InvalidPlugin(format!("unknown component {label}")));
        };
        if !form.is_zero() && form.degree() != Some(expected) {
            return Err(Error::InvalidPlugin(format!(
                "{label} must have generator count {expected}, got {:?}",
                form.degrees()
            )));
        }
        self.components.insert(label.to_string(), form);
        Ok(())
    }

    pub fn get(&self, label: &str, n: usize) -> Result<&FormElement> {
        match self.components.get(label) {
            Some(f) if f.n() == n => Ok(f),
            Some(f) => Err(Error::InvalidPlugin(format!("{label} has rank {}, need {n}", f.n()))),
            None => Err(Error::MissingBottChern {
                component: label.to_string(),
            }),
        }
    }

    pub fn labels(&self) -> impl Iterator<Item = &String> {
        self.components.keys()
    }

    pub fn from_json(j: &PluginJson) -> Result<Self> {
        let mut p = Self::empty();
        for (label, f) in &j.components {
            let form = FormElement::from_json(f).map_err(|e| Error::InvalidPlugin(e.to_string()))?;
            if form.n() != j.n {
                return Err(Error::InvalidPlugin(format!("{label} has rank {}, file says {}", form.n(), j.n)));
            }
            p.insert(label, form)?;
        }
        Ok(p)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: PluginJson = serde_json::from_str(s).map_err(|e| Error::InvalidPlugin(e.to_string()))?;
        Self::from_json(&j)
    }
}

fn top_generator_count(n: usize) -> usize {
    generator_count(n)
}

/// True when a Chow-degree `k` Bott-Chern component vanishes for type
/// reasons (`2(k-1)` exceeds the top generator count).
fn beyond_top(k: usize, n: usize) -> bool {
    2 * (k - 1) > top_generator_count(n)
}

/// `ctilde(E_OG) = sum_{k=1}^{n-1} (-1)^k H_k p_k(E_n^*)`, keyed by Chow
/// degree `k + 1`.
pub fn ctilde_og(n: usize) -> BTreeMap<usize, FormElement> {
    (1..n)
        .map(|k| {
            let c = &Rational::sign_power(k) * &Rational::harmonic(k);
            (k + 1, power_sum_dual(k, n).scale(&c))
        })
        .collect()
}

/// The known components of the filtration form: `ctilde_1 = 0` and
/// `ctilde_2 = -sum Omega_ij`.
pub fn ctilde_filtration(k: usize, n: usize) -> Option<FormElement> {
    match k {
        1 => Some(FormElement::zero(n)),
        2 => {
            let mut f = FormElement::zero(n);
            for i in 1..=n {
                for j in i + 1..=n {
                    f = f.sub(&FormElement::omega_lower(i, j, n));
                }
            }
            Some(f)
        }
        _ if beyond_top(k, n) => Some(FormElement::zero(n)),
        _ => None,
    }
}

/// `dd^c ctilde(E)` in Chow degree `k`: the degree-`k` part of
/// `prod (1 - x_i) - c(E_n)`.
pub fn ddc_ctilde_filtration(k: usize, n: usize) -> FormElement {
    let xs = x_forms(n);
    let mut prod = vec![FormElement::one(n)];
    for x in &xs {
        let mut next = vec![FormElement::zero(n); prod.len() + 1];
        for (d, p) in prod.iter().enumerate() {
            next[d] = next[d].add(p);
            next[d + 1] = next[d + 1].sub(&p.wedge(x));
        }
        prod = next;
    }
    let lhs = prod.get(k).cloned().unwrap_or_else(|| FormElement::zero(n));
    lhs.sub(&chern_form(Bundle::E(n), k, n))
}

/// Assembles the Chow-degree `k` component of `ctilde(E, E^*)` from the
/// exact-sequence form, the filtration form and its dual. Returns `None`
/// when a needed filtration component is unknown.
pub fn assemble_pair(k: usize, n: usize) -> Option<FormElement> {
    let og = ctilde_og(n);
    let c_dual = total_chern(Bundle::EDual(n), n);
    let c_e = total_chern(Bundle::E(n), n);
    let chern = |v: &Vec<FormElement>, b: usize| v.get(b).cloned().unwrap_or_else(|| FormElement::zero(n));
    let mut acc = og.get(&k).cloned().unwrap_or_else(|| FormElement::zero(n));
    for a in 1..=k {
        let ca = ctilde_filtration(a, n)?;
        let ca_dual = ca.scale(&Rational::sign_power(a));
        acc = acc.add(&ca.wedge(&chern(&c_dual, k - a)));
        acc = acc.add(&ca_dual.wedge(&chern(&c_e, k - a)));
        if a < k {
            let cb_dual = ctilde_filtration(k - a, n)?.scale(&Rational::sign_power(k - a));
            acc = acc.add(&ddc_ctilde_filtration(a, n).wedge(&cb_dual));
        }
    }
    Some(acc)
}

/// The Chow-degree `k` component of `ctilde(E, E^*)`.
pub fn ctilde_pair(k: usize, n: usize, plugin: &BottChernPlugin) -> Result<FormElement> {
    if k == 0 || beyond_top(k, n) {
        return Ok(FormElement::zero(n));
    }
    if let Some(f) = assemble_pair(k, n) {
        return Ok(f);
    }
    plugin.get(&pair_label(k), n).cloned()
}

/// `dd^c ctilde_{2i}(E, E^*) = (-1)^i e_i(x^2)`; odd components are closed.
pub fn ddc_ctilde_pair(k: usize, n: usize) -> FormElement {
    if k % 2 == 1 {
        return FormElement::zero(n);
    }
    let sq = elementary_squares(k / 2, n).unwrap_or_else(|_| Polynomial::zero(n));
    evaluate_polynomial(&sq, &x_forms(n))
        .expect("n values")
        .scale(&Rational::sign_power(k / 2))
}

/// `ctilde_n(E^*)`: `(-1)^n ctilde_n(E)` when the filtration component is
/// known, else the plugin.
pub fn ctilde_dual_top(n: usize, plugin: &BottChernPlugin) -> Result<FormElement> {
    match ctilde_filtration(n, n) {
        Some(f) => Ok(f.scale(&Rational::sign_power(n))),
        None => plugin.get(&dual_label(n), n).cloned(),
    }
}

/// The form representing `x^_1 ... x^_n`:
/// `1/2 H_{n-1} c_{n-1}(E_n^*) + ctilde_n(E^*)`.
pub fn top_relation(n: usize, plugin: &BottChernPlugin) -> Result<FormElement> {
    let c = &Rational::new(1, 2) * &Rational::harmonic(n - 1);
    Ok(chern_form(Bundle::EDual(n), n - 1, n)
        .scale(&c)
        .add(&ctilde_dual_top(n, plugin)?))
}

/// `x_1 ... x_n` as a form: `dd^c` of [`top_relation`].
pub fn ddc_top_relation(n: usize) -> FormElement {
    x_forms(n)
        .iter()
        .fold(FormElement::one(n), |acc, x| acc.wedge(x))
}

/// A class `sum_w a_w D^_w + a(eta)`. `ddc` carries `dd^c eta`, which
/// the product `a(eta) a(eta') = a(dd^c eta ^ eta')` needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArithClass {
    pub n: usize,
    pub schubert: BTreeMap<SignedPermutation, Rational>,
    pub form: FormElement,
    pub ddc: FormElement,
}

impl ArithClass {
    pub fn zero(n: usize) -> Self {
        ArithClass {
            n,
            schubert: BTreeMap::new(),
            form: FormElement::zero(n),
            ddc: FormElement::zero(n),
        }
    }

    pub fn schubert_class(w: &SignedPermutation) -> Self {
        let mut c = Self::zero(w.n());
        c.schubert.insert(w.clone(), Rational::one());
        c
    }

    /// `a(eta)` with the given `dd^c eta` (zero for closed forms).
    pub fn from_form(form: FormElement, ddc: FormElement) -> Self {
        let n = form.n();
        ArithClass {
            n,
            schubert: BTreeMap::new(),
            form,
            ddc,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.schubert.is_empty() && self.form.is_zero()
    }

    pub fn add(&self, other: &ArithClass) -> ArithClass {
        let mut schubert = self.schubert.clone();
        for (w, c) in &other.schubert {
            let e = schubert.entry(w.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                schubert.remove(w);
            }
        }
        ArithClass {
            n: self.n,
            schubert,
            form: self.form.add(&other.form),
            ddc: self.ddc.add(&other.ddc),
        }
    }

    pub fn scale(&self, c: &Rational) -> ArithClass {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        ArithClass {
            n: self.n,
            schubert: self.schubert.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
            form: self.form.scale(c),
            ddc: self.ddc.scale(c),
        }
    }
}

impl fmt::Display for ArithClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .schubert
            .iter()
            .map(|(w, c)| format!("{c}*D^[{w}]"))
            .collect();
        if !self.form.is_zero() {
            parts.push(format!("a({})", self.form));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The form of `h(x^)` for `h` in `J_n`, from a decomposition
/// `h = sum e_i(X^2) f_i + e_n g`.
pub fn ideal_form(dec: &IdealDecomposition, n: usize, plugin: &BottChernPlugin) -> Result<FormElement> {
    let xs = x_forms(n);
    let mut acc = FormElement::zero(n);
    for (i, fi) in dec.f.iter().enumerate() {
        if fi.is_zero() {
            continue;
        }
        let i = i + 1;
        let c = ctilde_pair(2 * i, n, plugin)?.scale(&Rational::sign_power(i));
        acc = acc.add(&c.wedge(&evaluate_polynomial(fi, &xs)?));
    }
    if !dec.g.is_zero() {
        acc = acc.add(&top_relation(n, plugin)?.wedge(&evaluate_polynomial(&dec.g, &xs)?));
    }
    Ok(acc)
}

/// `h(x^_1, ..., x^_n)` in the splitting `CH + A~`.
pub fn arith_evaluate(h: &Polynomial, n: usize, plugin: &BottChernPlugin) -> Result<ArithClass> {
    let split = split_schubert(h, n)?;
    let dec = ideal_decompose(&split.ideal, n)?;
    let form = ideal_form(&dec, n, plugin)?;
    let ddc = evaluate_polynomial(&split.ideal, &x_forms(n))?;
    Ok(ArithClass {
        n,
        schubert: split.schubert,
        form,
        ddc,
    })
}

/// `x^_1^{k_1} ... x^_n^{k_n}`.
pub fn arith_monomial(exps: &[u32], plugin: &BottChernPlugin) -> Result<ArithClass> {
    let n = exps.len();
    arith_evaluate(&Polynomial::monomial(n, exps.to_vec(), Rational::one()), n, plugin)
}

pub fn arithmetic_dimension(n: usize) -> usize {
    n * n - n + 1
}

/// `deg^(x^^k) = (r/2) prod 2/(2k)!` where the form part is `r Omega`.
pub fn arith_degree(exps: &[u32], plugin: &BottChernPlugin) -> Result<Rational> {
    let n = exps.len();
    let total: usize = exps.iter().map(|&k| k as usize).sum();
    if total != arithmetic_dimension(n) {
        return Err(Error::DegreeMismatch {
            expected: arithmetic_dimension(n),
            got: total,
        });
    }
    let class = arith_monomial(exps, plugin)?;
    degree_of_class(&class)
}

/// Degree of a top-degree class, asserting its form part is `r Omega`.
pub fn degree_of_class(class: &ArithClass) -> Result<Rational> {
    if !class.schubert.is_empty() {
        return Err(Error::Consistency("top-degree class has a Schubert part".into()));
    }
    let r = class
        .form
        .as_top_multiple()
        .ok_or_else(|| Error::Consistency(format!("form part {} is not a multiple of Omega", class.form)))?;
    Ok(&(&r * &Rational::new(1, 2)) * &omega_volume(class.n))
}

/// Same number by integration: `1/2 integral of the form part`.
pub fn degree_by_integration(class: &ArithClass) -> Rational {
    &integrate(&class.form) * &Rational::new(1, 2)
}

/// `D~_{lambda, pi}` for `lambda` in `G_n \ F_{n-1}`, routed exactly as
/// [`ideal_decompose`] routes the index.
pub fn dtilde_class(lambda: &Partition, pi: &PermutationA, n: usize, plugin: &BottChernPlugin) -> Result<ArithClass> {
    let xs = x_forms(n);
    let (rest, factor, bc) = match route_ideal_index(lambda, n)? {
        IdealRoute::TopPart { rest } => (rest, Rational::new(1, 2), top_relation(n, plugin)?),
        IdealRoute::Pair { r, rest } => (
            rest,
            &Rational::sign_power(r) * &Rational::new(1, 4),
            ctilde_pair(2 * r, n, plugin)?,
        ),
    };
    let form = evaluate_polynomial(&d_basis(&rest, pi, n)?, &xs)?
        .wedge(&bc)
        .scale(&factor);
    let ddc = evaluate_polynomial(&d_basis(lambda, pi, n)?, &xs)?;
    Ok(ArithClass::from_form(form, ddc))
}

pub fn dtilde_convert(lambda: &Partition, pi: &PermutationA, n: usize, plugin: &BottChernPlugin) -> Result<FormElement> {
    Ok(dtilde_class(lambda, pi, n, plugin)?.form)
}

/// The product in the arithmetic Chow ring.
pub fn chow_product(a: &ArithClass, b: &ArithClass, plugin: &BottChernPlugin) -> Result<ArithClass> {
    let n = a.n;
    if b.n != n {
        return Err(Error::SizeMismatch(n, b.n));
    }
    let xs = x_forms(n);
    let mut out = ArithClass::zero(n);
    for (u, cu) in &a.schubert {
        for (v, cv) in &b.schubert {
            let sc = structure_constants(u, v)?;
            let coef = cu * cv;
            for (w, d) in &sc.schubert {
                out = out.add(&ArithClass::schubert_class(w).scale(&(&coef * d)));
            }
            for (idx, d) in &sc.ideal {
                let t = dtilde_class(&idx.lambda, &idx.pi, n, plugin)?;
                out = out.add(&t.scale(&(&coef * d)));
            }
        }
    }
    let schubert_form = |s: &BTreeMap<SignedPermutation, Rational>| -> Result<FormElement> {
        let mut acc = FormElement::zero(n);
        for (w, c) in s {
            let p = crate::ortho::ortho_schubert(w)?;
            acc = acc.add(&evaluate_polynomial(&p, &xs)?.scale(c));
        }
        Ok(acc)
    };
    let da = schubert_form(&a.schubert)?;
    let db = schubert_form(&b.schubert)?;
    let mixed = ArithClass::from_form(
        da.wedge(&b.form).add(&db.wedge(&a.form)),
        da.wedge(&b.ddc).add(&db.wedge(&a.ddc)),
    );
    let pure = ArithClass::from_form(a.ddc.wedge(&b.form), a.ddc.wedge(&b.ddc));
    Ok(out.add(&mixed).add(&pure))
}

/// All decompositions `h = sum_{i<n} e_i(X^2) f_i + e_n g`: one particular
/// solution plus a basis of the homogeneous solutions, found by direct
/// linear algebra over monomials (independent of the basis routing).
pub fn ideal_decompositions(h: &Polynomial, n: usize) -> Result<(IdealDecomposition, Vec<IdealDecomposition>)> {
    use crate::linalg::{Echelon, SparseVec};
    let d = h
        .total_degree()
        .ok_or_else(|| Error::Parse("zero polynomial".into()))? as usize;
    if !h.is_homogeneous() {
        return Err(Error::Parse("polynomial must be homogeneous".into()));
    }
    // unknown j: (slot, monomial); slot i-1 for f_i, slot n-1 for g
    let mut unknowns: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut multipliers = Vec::new();
    for i in 1..n {
        if 2 * i <= d {
            for m in monomials(n, d - 2 * i) {
                unknowns.push((i - 1, m));
                multipliers.push(elementary_squares(i, n)?);
            }
        }
    }
    if n <= d {
        for m in monomials(n, d - n) {
            unknowns.push((n - 1, m));
            multipliers.push(elementary_or_zero(n, n));
        }
    }
    let to_vec = |p: &Polynomial| -> SparseVec<Monomial> { p.terms().map(|(m, c)| (m.clone(), c.clone())).collect() };
    let mut ech = Echelon::new();
    let mut kernel = Vec::new();
    for (j, (_, m)) in unknowns.iter().enumerate() {
        let col = &multipliers[j] * &Polynomial::monomial(n, m.clone(), Rational::one());
        let v = to_vec(&col);
        let red = ech.reduce(&v);
        if red.residual.is_empty() {
            let mut k = red.combination.clone();
            for c in k.values_mut() {
                *c = -c.clone();
            }
            k.insert(j, Rational::one());
            kernel.push(k);
        }
        ech.insert(&v);
    }
    let sol = ech.solve(&to_vec(h)).ok_or_else(|| Error::NotInIdeal {
        n,
        offending: "no decomposition exists".into(),
    })?;
    let build = |coeffs: &SparseVec<usize>| {
        let mut f = vec![Polynomial::zero(n); n.saturating_sub(1)];
        let mut g = Polynomial::zero(n);
        for (j, c) in coeffs {
            let (slot, m) = &unknowns[*j];
            let t = Polynomial::monomial(n, m.clone(), c.clone());
            if *slot == n - 1 {
                g = &g + &t;
            } else {
                f[*slot] = &f[*slot] + &t;
            }
        }
        IdealDecomposition { f, g }
    };
    let particular = build(&sol);
    if particular.reassemble(n) != *h {
        return Err(Error::Consistency("direct decomposition does not reassemble".into()));
    }
    Ok((particular, kernel.iter().map(build).collect()))
}

/// Exponent vectors of all monomials of degree `d` in `n` variables.
pub fn monomials(n: usize, d: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials(n - 1, d - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> Rational {
        Rational::new(a, b)
    }

    fn lower_sum(n: usize) -> FormElement {
        let mut f = FormElement::zero(n);
        for i in 1..=n {
            for j in i + 1..=n {
                f = f.add(&FormElement::omega_lower(i, j, n));
            }
        }
        f
    }

    fn upper_sum(n: usize) -> FormElement {
        let mut f = FormElement::zero(n);
        for i in 1..=n {
            for j in i + 1..=n {
                f = f.add(&FormElement::omega_upper(i, j, n));
            }
        }
        f
    }

    #[test]
    fn pair_degree_two_matches_closed_form() {
        for n in 2..=4 {
            let expect = lower_sum(n).add(&upper_sum(n)).scale(&Rational::from(-2));
            assert_eq!(ctilde_pair(2, n, &BottChernPlugin::empty()).unwrap(), expect, "n={n}");
        }
    }

    #[test]
    fn og_examples() {
        let og = ctilde_og(2);
        assert_eq!(og[&2], FormElement::omega_upper(1, 2, 2).scale(&Rational::from(-2)));
        assert!(ctilde_og(1).is_empty());
        for n in 2..=3 {
            for (k, f) in ctilde_og(n) {
                assert!(f.is_zero() || f.degree() == Some(2 * (k - 1)));
            }
        }
    }

    #[test]
    fn ddc_filtration_degree_one_vanishes() {
        for n in 2..=3 {
            assert!(ddc_ctilde_filtration(1, n).is_zero());
        }
    }

    #[test]
    fn top_relation_examples() {
        let p = BottChernPlugin::empty();
        let t = top_relation(2, &p).unwrap();
        let expect = FormElement::omega_upper(1, 2, 2).sub(&FormElement::omega_lower(1, 2, 2));
        assert_eq!(t, expect);
        assert_eq!(t.degree(), Some(2));
        match top_relation(3, &p) {
            Err(Error::MissingBottChern { component }) => assert_eq!(component, "ctilde_dual_3"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn arith_monomial_examples() {
        let p = BottChernPlugin::empty();
        let c = arith_monomial(&[1, 1], &p).unwrap();
        assert!(c.schubert.is_empty());
        assert_eq!(c.form, top_relation(2, &p).unwrap());
        let c = arith_monomial(&[1, 0], &p).unwrap();
        assert!(c.form.is_zero() && !c.schubert.is_empty());
        let sq = Polynomial::from_terms(2, vec![(vec![2, 0], Rational::one()), (vec![0, 2], Rational::one())]).unwrap();
        let c = arith_evaluate(&sq, 2, &p).unwrap();
        let expect = lower_sum(2).add(&upper_sum(2)).scale(&Rational::from(2));
        assert_eq!(c.form, expect);
    }

    #[test]
    fn degrees_rank_two() {
        let p = BottChernPlugin::empty();
        let cases = [([3, 0], 0), ([2, 1], -1), ([1, 2], 0), ([0, 3], 3)];
        for (e, v) in cases {
            assert_eq!(arith_degree(&e, &p).unwrap(), Rational::from(v), "{e:?}");
            let class = arith_monomial(&e, &p).unwrap();
            assert_eq!(degree_by_integration(&class), Rational::from(v));
        }
        assert!(matches!(arith_degree(&[1, 1], &p), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn additivity_rank_two() {
        let p = BottChernPlugin::empty();
        // x1^3 + x1 x2^2 = e_1(X^2) x1
        let h = Polynomial::from_terms(2, vec![(vec![3, 0], Rational::one()), (vec![1, 2], Rational::one())]).unwrap();
        let direct = degree_of_class(&arith_evaluate(&h, 2, &p).unwrap()).unwrap();
        let sum = &arith_degree(&[3, 0], &p).unwrap() + &arith_degree(&[1, 2], &p).unwrap();
        assert_eq!(direct, sum);
    }

    #[test]
    fn decomposition_independence_rank_two() {
        let p = BottChernPlugin::empty();
        for e in [[3u32, 0], [2, 1], [1, 2], [0, 3]] {
            let h = Polynomial::monomial(2, e.to_vec(), Rational::one());
            let (part, kernel) = ideal_decompositions(&h, 2).unwrap();
            let canon = ideal_decompose(&h, 2).unwrap();
            let f0 = ideal_form(&canon, 2, &p).unwrap();
            assert_eq!(ideal_form(&part, 2, &p).unwrap(), f0);
            for k in kernel {
                let shifted = IdealDecomposition {
                    f: part.f.iter().zip(&k.f).map(|(a, b)| a + b).collect(),
                    g: &part.g + &k.g,
                };
                assert_eq!(ideal_form(&shifted, 2, &p).unwrap().top_coefficient(), f0.top_coefficient());
            }
        }
    }

    #[test]
    fn dtilde_examples() {
        let p = BottChernPlugin::empty();
        let id = PermutationA::identity(2);
        let f = dtilde_convert(&"1,1".parse().unwrap(), &id, 2, &p).unwrap();
        assert_eq!(f, lower_sum(2).add(&upper_sum(2)).scale(&r(1, 2)));
        let f = dtilde_convert(&"2".parse().unwrap(), &id, 2, &p).unwrap();
        assert_eq!(f, top_relation(2, &p).unwrap().scale(&r(1, 2)));
        assert!(dtilde_convert(&"1".parse().unwrap(), &id, 2, &p).is_err());
    }

    #[test]
    fn product_examples() {
        let p = BottChernPlugin::empty();
        let sbox = SignedPermutation::new(vec![-2, -1]).unwrap();
        let d = ArithClass::schubert_class(&sbox);
        let sq = chow_product(&d, &d, &p).unwrap();
        // P~_1^2 = P~_{11} + P~_2, both in the ideal sector at n = 2
        assert!(sq.schubert.is_empty());
        assert_eq!(sq.form, FormElement::omega_upper(1, 2, 2));
        // agrees with evaluating the product polynomial directly
        let poly = crate::ortho::ortho_schubert(&sbox).unwrap();
        let direct = arith_evaluate(&(&poly * &poly), 2, &p).unwrap();
        assert_eq!(sq, direct);
        let one = ArithClass::schubert_class(&SignedPermutation::identity(2));
        assert_eq!(chow_product(&one, &sq, &p).unwrap(), sq);
        let eta = ArithClass::from_form(FormElement::omega_lower(1, 2, 2), FormElement::zero(2));
        assert!(chow_product(&eta, &eta, &p).unwrap().is_zero());
    }

    #[test]
    fn product_matches_direct_evaluation_rank_three() {
        let p = BottChernPlugin::empty();
        let elems = SignedPermutation::all(3);
        for u in &elems {
            for v in &elems {
                if u.length() + v.length() > 3 {
                    continue;
                }
                let prod = chow_product(&ArithClass::schubert_class(u), &ArithClass::schubert_class(v), &p);
                let poly = &crate::ortho::ortho_schubert(u).unwrap() * &crate::ortho::ortho_schubert(v).unwrap();
                let direct = arith_evaluate(&poly, 3, &p);
                match (prod, direct) {
                    (Ok(a), Ok(b)) => assert_eq!(a, b, "{u} {v}"),
                    (Err(a), Err(b)) => assert_eq!(a, b),
                    (a, b) => panic!("{u} {v}: {a:?} vs {b:?}"),
                }
            }
        }
    }

    #[test]
    fn plugin_contract() {
        let mut p = BottChernPlugin::empty();
        let wrong = FormElement::omega_lower(1, 2, 3);
        assert!(matches!(p.insert("ctilde_pair_4", wrong.clone()), Err(Error::InvalidPlugin(_))));
        assert!(matches!(p.insert("ctilde_pair_2", wrong.clone()), Err(Error::InvalidPlugin(_))));
        assert!(matches!(p.insert("bogus", wrong), Err(Error::InvalidPlugin(_))));
        let good = FormElement::omega_lower(1, 2, 3).wedge(&FormElement::omega_upper(1, 3, 3));
        p.insert("ctilde_dual_3", good.clone()).unwrap();
        let t = top_relation(3, &p).unwrap();
        assert_eq!(t.degree(), Some(4));
        let json = serde_json::json!({
            "n": 3,
            "components": { "ctilde_dual_3": good.to_json() }
        });
        let q = BottChernPlugin::from_json_str(&json.to_string()).unwrap();
        assert_eq!(q, p);
        // n = 3 top degree: x1^7 needs ctilde_4 or ctilde_dual_3 or both
        let err = arith_degree(&[7, 0, 0], &BottChernPlugin::empty()).unwrap_err();
        assert!(matches!(err, Error::MissingBottChern { .. }), "{err:?}");
    }
}
