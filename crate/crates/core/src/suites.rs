//! Named invariant suites, run by `orthoschubert check --suite <name>`.
//!
//! Each suite returns one [`CheckLine`] per property. A suite never panics
//! on a failed property; failures are reported in the line.

use serde::Serialize;

use crate::arakelov::{
    arith_degree, arith_evaluate, ctilde_pair, degree_by_integration, degree_of_class, ideal_decompositions,
    ideal_form, monomials, BottChernPlugin,
};
use crate::error::{Error, Result};
use crate::forms::{integrate, omega_volume, point_class_form, FormElement};
use crate::linalg::{rank, SparseVec};
use crate::ortho::{
    bgg_schubert_sector, divided_difference_property, expand_in_d_basis, ideal_decompose, ortho_schubert, restrict,
    structure_constants, top_class, DBasisIndex, IdealDecomposition,
};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::sym::{elementary_squares, ptilde, ptilde_pair, ptilde_x, Partition};
use crate::weyl::{longest_element, PermutationA, SignedPermutation};

pub const SUITES: &[&str] = &[
    "ptilde",
    "tableaux",
    "divided-difference",
    "structure",
    "stability",
    "integration",
    "arakelov",
];

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckLine {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckLine {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Bounds shared by the suites; `n` is the rank, `weight` bounds `|lambda|`.
#[derive(Clone, Copy, Debug)]
pub struct SuiteParams {
    pub n: usize,
    pub weight: usize,
    pub word_bound: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            n: 3,
            weight: 6,
            word_bound: 100_000,
        }
    }
}

pub fn run_suite(name: &str, p: &SuiteParams) -> Result<Vec<CheckLine>> {
    match name {
        "ptilde" => ptilde_suite(p),
        "tableaux" => tableaux_suite(p.n),
        "divided-difference" => divided_difference_suite(p.n, p.word_bound),
        "structure" => structure_suite(p.n),
        "stability" => stability_suite(p.n),
        "integration" => integration_suite(p.n),
        "arakelov" => arakelov_suite(),
        _ => Err(Error::Parse(format!(
            "unknown suite {name:?}; expected one of {}",
            SUITES.join(", ")
        ))),
    }
}

/// Records the first counterexample, if any.
struct Tally {
    total: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            total: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.total += 1;
        if !ok && self.first_failure.is_none() {
            self.first_failure = Some(what());
        }
    }

    fn line(self, name: &str) -> CheckLine {
        match self.first_failure {
            None => CheckLine::new(name, true, format!("{} cases", self.total)),
            Some(w) => CheckLine::new(name, false, format!("{} cases; counterexample {w}", self.total)),
        }
    }
}

fn coefficient_vector(p: &Polynomial, n: usize, d: usize) -> Vec<Rational> {
    monomials(n, d).iter().map(|e| p.coeff(e)).collect()
}

pub fn ptilde_suite(p: &SuiteParams) -> Result<Vec<CheckLine>> {
    let quarter = Rational::new(1, 4);
    let mut out = Vec::new();

    let mut t = Tally::new();
    for n in 1..=p.n.max(1) {
        for k in 1..=n {
            let lhs = ptilde_pair(k, k).specialize(n);
            t.record(lhs == elementary_squares(k, n)?.scale(&quarter), || format!("k={k} n={n}"));
        }
    }
    out.push(t.line("ptilde (b) P_kk = e_k(X^2)/4"));

    let mut t = Tally::new();
    for k in 1..=p.weight / 2 {
        for d in 0..=p.weight - 2 * k {
            for l in Partition::all_bounded(d.max(1), d) {
                let lhs = ptilde(&l.with_pair(k));
                let rhs = ptilde_pair(k, k).mul(&ptilde(&l));
                let a = lhs.alphabet().max(rhs.alphabet());
                t.record(lhs.extend(a) == rhs.extend(a), || format!("lambda={l} k={k}"));
            }
        }
    }
    out.push(t.line("ptilde (c) pair insertion"));

    let mut vanish = Tally::new();
    let mut indep = Tally::new();
    for n in 1..=p.n {
        for d in 0..=p.weight {
            for l in Partition::all_bounded(d.max(1), d) {
                if l.first() > n {
                    vanish.record(ptilde_x(&l, n).is_zero(), || format!("lambda={l} n={n}"));
                }
            }
            let rows: Vec<Vec<Rational>> = Partition::all_bounded(n, d)
                .iter()
                .map(|l| coefficient_vector(&ptilde_x(l, n), n, d))
                .collect();
            indep.record(rank(&rows) == rows.len(), || format!("n={n} d={d}"));
        }
    }
    out.push(vanish.line("ptilde (e) vanishing for lambda_1 > n"));
    out.push(indep.line("ptilde (e) independence over G_n"));

    let mut t = Tally::new();
    for n in 1..=p.n {
        let top = ptilde_x(&Partition::new(vec![n])?, n);
        for d in 0..=p.weight.saturating_sub(n) {
            for l in Partition::all_bounded(n, d) {
                t.record(&top * &ptilde_x(&l, n) == ptilde_x(&l.with_part(n), n), || {
                    format!("lambda={l} n={n}")
                });
            }
        }
    }
    out.push(t.line("ptilde (f) top part factorization"));

    let mut t = Tally::new();
    for n in 1..=p.n {
        for d in 0..=p.weight.min(6) {
            for l in Partition::all_bounded(d.max(1), d) {
                t.record(ptilde_x(&l, n).has_nonnegative_coefficients(), || format!("lambda={l} n={n}"));
            }
        }
    }
    out.push(t.line("ptilde (d) nonnegativity"));

    let mut t = Tally::new();
    for d in 0..=p.weight.min(6) {
        for l in Partition::all_bounded(d.max(1), d) {
            if !l.is_strict() {
                t.record(ptilde(&l).eta(8).is_zero(), || format!("lambda={l}"));
            }
        }
    }
    out.push(t.line("eta kills non-strict lambda (8 variables)"));
    Ok(out)
}

/// Tableau coefficients against the linear-algebra expansion of `D_w` and
/// against the divided-difference route from the top class.
pub fn tableaux_suite(n: usize) -> Result<Vec<CheckLine>> {
    let top = longest_element(n).length();
    let mut lin = Tally::new();
    let mut bgg = Tally::new();
    for w in SignedPermutation::all(n) {
        let tab = crate::ortho::schubert_coefficients(&w)?;
        let exp: SparseVec<DBasisIndex> = expand_in_d_basis(&ortho_schubert(&w)?, n)?.coeffs;
        lin.record(tab == exp, || w.to_string());
        let sign = Rational::sign_power(top - w.length());
        let signed: SparseVec<DBasisIndex> = tab.into_iter().map(|(k, c)| (k, &c * &sign)).collect();
        bgg.record(bgg_schubert_sector(&w)? == signed, || w.to_string());
    }
    Ok(vec![
        lin.line("tableau f equals expansion of D_w"),
        bgg.line("tableau f equals divided differences of the top class"),
    ])
}

pub fn divided_difference_suite(n: usize, word_bound: usize) -> Result<Vec<CheckLine>> {
    let mut prop = Tally::new();
    for w in SignedPermutation::all(n) {
        for i in 1..n {
            let pi = PermutationA::identity(n).right_mul_s(i);
            let chk = divided_difference_property(&w, &pi)?;
            prop.record(chk.holds, || format!("w={w} s{i}"));
        }
    }
    let mut well = Tally::new();
    let probe = &top_class(n) + &Polynomial::monomial(n, (0..n as u32).rev().map(|e| 2 * e).collect(), Rational::one());
    for w in SignedPermutation::all(n) {
        let words = w.reduced_words(word_bound)?;
        let first = probe.divided_difference_word(&words[0])?;
        for word in &words[1..] {
            well.record(probe.divided_difference_word(word)? == first, || format!("w={w} word={word}"));
        }
    }
    Ok(vec![
        prop.line("divided difference property on simple reflections"),
        well.line("d_w independent of reduced word"),
    ])
}

pub fn structure_suite(n: usize) -> Result<Vec<CheckLine>> {
    let elems = SignedPermutation::all(n);
    let mut nonneg = Tally::new();
    let mut graded = Tally::new();
    let mut symmetric = Tally::new();
    let mut unit = Tally::new();
    let mut non_integral = 0usize;
    let id = SignedPermutation::identity(n);
    for u in &elems {
        for v in &elems {
            let sc = structure_constants(u, v)?;
            for (w, c) in &sc.schubert {
                nonneg.record(c.is_integer() && !c.is_negative(), || format!("u={u} v={v} w={w} d={c}"));
                graded.record(w.length() == u.length() + v.length(), || format!("u={u} v={v} w={w}"));
            }
            non_integral += sc.non_integral_ideal().len();
            if u < v {
                let sv = structure_constants(v, u)?;
                symmetric.record(sv.schubert == sc.schubert && sv.ideal == sc.ideal, || format!("u={u} v={v}"));
            }
            if *u == id {
                let expect = std::iter::once((v.clone(), Rational::one())).collect();
                unit.record(sc.schubert == expect && sc.ideal.is_empty(), || format!("v={v}"));
            }
        }
    }
    Ok(vec![
        nonneg.line("d_uv^w nonnegative integers"),
        graded.line("d_uv^w vanish unless lengths add"),
        symmetric.line("symmetry in (u, v)"),
        unit.line("identity acts trivially"),
        CheckLine::new(
            "ideal constants integrality (flag)",
            true,
            format!("{non_integral} non-integral d_uv^(lambda pi)"),
        ),
    ])
}

/// `D_w(X_{m+1})` restricted to `m` variables against `D_w(X_m)`, for `w`
/// in `W~_m`, `m = n - 1`. The congruence modulo `J_m` must hold; exact
/// equality is reported as a count.
pub fn stability_suite(n: usize) -> Result<Vec<CheckLine>> {
    let m = n.saturating_sub(1).max(2);
    let mut congruent = Tally::new();
    let mut exact = 0;
    let elems = SignedPermutation::all(m);
    for w in &elems {
        let r = restrict(w, m + 1)?;
        let d = ortho_schubert(w)?;
        let diff = expand_in_d_basis(&(&r - &d), m)?;
        congruent.record(diff.schubert_sector().is_empty(), || w.to_string());
        if r == d {
            exact += 1;
        }
    }
    Ok(vec![
        congruent.line(&format!("restriction W~_{m} -> W~_{} congruent mod J_{m}", m + 1)),
        CheckLine::new(
            "restriction exact equality (count)",
            true,
            format!("{exact} of {} exact", elems.len()),
        ),
    ])
}

pub fn integration_suite(n: usize) -> Result<Vec<CheckLine>> {
    let mut out = Vec::new();
    let mut t = Tally::new();
    for k in 2..=n.max(2) {
        let expect = (1..k).fold(Rational::one(), |acc, j| {
            &acc * &(&Rational::from(2) * &Rational::factorial(2 * j).recip())
        });
        t.record(integrate(&FormElement::top(k)) == expect && omega_volume(k) == expect, || {
            format!("n={k}")
        });
    }
    out.push(t.line("integral of Omega"));
    let mut t = Tally::new();
    for k in 2..=n.clamp(2, 3) {
        t.record(integrate(&point_class_form(k)) == Rational::one(), || format!("n={k}"));
    }
    out.push(t.line("point class integrates to 1"));
    Ok(out)
}

/// Rank-two arithmetic degrees with the consistency checks that pin them.
pub fn arakelov_suite() -> Result<Vec<CheckLine>> {
    let plugin = BottChernPlugin::empty();
    let mut out = Vec::new();

    let mut t = Tally::new();
    for n in 2..=4 {
        let mut expect = FormElement::zero(n);
        for i in 1..=n {
            for j in i + 1..=n {
                expect = expect
                    .add(&FormElement::omega_lower(i, j, n))
                    .add(&FormElement::omega_upper(i, j, n));
            }
        }
        let expect = expect.scale(&Rational::from(-2));
        t.record(ctilde_pair(2, n, &plugin)? == expect, || format!("n={n}"));
    }
    out.push(t.line("ctilde_pair degree (1,1) closed form"));

    let monos: [[u32; 2]; 4] = [[3, 0], [2, 1], [1, 2], [0, 3]];
    let mut values = Vec::new();
    let mut rational = Tally::new();
    let mut indep = Tally::new();
    for e in monos {
        let deg = arith_degree(&e, &plugin)?;
        let h = Polynomial::monomial(2, e.to_vec(), Rational::one());
        let class = arith_evaluate(&h, 2, &plugin)?;
        rational.record(degree_by_integration(&class) == degree_of_class(&class)?, || format!("{e:?}"));
        let canon = ideal_form(&ideal_decompose(&h, 2)?, 2, &plugin)?;
        let (part, kernel) = ideal_decompositions(&h, 2)?;
        indep.record(ideal_form(&part, 2, &plugin)?.top_coefficient() == canon.top_coefficient(), || {
            format!("{e:?}")
        });
        for k in kernel {
            let shifted = IdealDecomposition {
                f: part.f.iter().zip(&k.f).map(|(a, b)| a + b).collect(),
                g: &part.g + &k.g,
            };
            indep.record(ideal_form(&shifted, 2, &plugin)?.top_coefficient() == canon.top_coefficient(), || {
                format!("{e:?} kernel")
            });
        }
        values.push(deg);
    }
    let shown: Vec<String> = values.iter().map(Rational::to_string).collect();
    out.push(CheckLine::new("arith_degree at n=2", true, shown.join(", ")));
    out.push(rational.line("top form is a multiple of Omega"));
    out.push(indep.line("decomposition independence"));

    // x1^3 + x1 x2^2 = e_1(X^2) x1
    let h = Polynomial::from_terms(2, vec![(vec![3, 0], Rational::one()), (vec![1, 2], Rational::one())])?;
    let direct = degree_of_class(&arith_evaluate(&h, 2, &plugin)?)?;
    let sum = &values[0] + &values[2];
    out.push(CheckLine::new(
        "additivity",
        direct == sum,
        format!("deg(x1^3 + x1 x2^2) = {direct}, sum = {sum}"),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_usage_error() {
        let e = run_suite("nope", &SuiteParams::default()).unwrap_err();
        assert!(e.is_usage());
    }

    #[test]
    fn small_suites_pass() {
        let p = SuiteParams {
            n: 2,
            weight: 4,
            word_bound: 1000,
        };
        for name in ["ptilde", "tableaux", "divided-difference", "structure", "integration", "arakelov"] {
            for line in run_suite(name, &p).unwrap() {
                assert!(line.passed, "{name}: {line:?}");
            }
        }
    }
}
