//! Acceptance harness: one PASS/FAIL line per criterion.
//!
//! A FAIL listed in `EXPECTED_DEVIATIONS` is printed but does not fail the
//! run; each such entry is analyzed in the decision ledger. Any other FAIL
//! exits nonzero.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Duration, Instant};

use orthoschubert::arakelov::{
    arith_degree, arith_evaluate, arith_monomial, ctilde_pair, degree_by_integration, degree_of_class, monomials,
    BottChernPlugin,
};
use orthoschubert::forms::{integrate, point_class_form, FormElement};
use orthoschubert::linalg::SparseVec;
use orthoschubert::ortho::{
    bgg_schubert_sector, divided_difference_property, expand_in_d_basis, ortho_schubert, restrict,
    schubert_coefficients, DBasisIndex,
};
use orthoschubert::render::render_table;
use orthoschubert::stanley::f_coeff;
use orthoschubert::suites::{divided_difference_suite, ptilde_suite, structure_suite, CheckLine, SuiteParams};
use orthoschubert::sym::ptilde_x;
use orthoschubert::weyl::longest_element;
use orthoschubert::{Error, PermutationA, Polynomial, Rational, SignedPermutation};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

const SEED: u64 = 0x005e_ed0d;
const TABLE_BUDGET: Duration = Duration::from_secs(10);
const DUAL_PATH_BUDGET: Duration = Duration::from_secs(120);
const STRUCTURE_BUDGET: Duration = Duration::from_secs(300);
const INTEGRATION_BUDGET: Duration = Duration::from_secs(60);
const W4_SAMPLES: usize = 50;

/// Criteria whose literal statement is known to fail.
const EXPECTED_DEVIATIONS: &[&str] = &["6a"];

struct Outcome {
    id: &'static str,
    title: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
}

fn criterion(id: &'static str, title: &'static str, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (passed, detail) = match std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)) {
        Ok(r) => r,
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            (false, format!("panicked: {msg}"))
        }
    };
    Outcome {
        id,
        title,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

fn within(elapsed: Duration, budget: Duration) -> (bool, String) {
    (elapsed <= budget, format!("{:.2}s of {}s budget", elapsed.as_secs_f64(), budget.as_secs()))
}

fn suite_summary(lines: &[CheckLine]) -> (bool, String) {
    let failed: Vec<String> = lines.iter().filter(|l| !l.passed).map(|l| format!("{} ({})", l.name, l.detail)).collect();
    if failed.is_empty() {
        let parts: Vec<String> = lines.iter().map(|l| format!("{}: {}", l.name, l.detail)).collect();
        (true, parts.join("; "))
    } else {
        (false, failed.join("; "))
    }
}

fn sample(n: usize, k: usize, rng: &mut StdRng) -> Vec<SignedPermutation> {
    let all = SignedPermutation::all(n);
    all.choose_multiple(rng, k).cloned().collect()
}

fn c1() -> Outcome {
    criterion("1", "table n=3 byte-identical to golden file", || {
        let golden = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/table_n3.txt"))
            .expect("golden file");
        let start = Instant::now();
        let got = render_table(3, 1).expect("table");
        let (fast, timing) = within(start.elapsed(), TABLE_BUDGET);
        let rows = got.lines().count() - 1;
        let mismatched: Vec<usize> = got
            .lines()
            .zip(golden.lines())
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, _)| i)
            .collect();
        (
            got == golden && rows == 24 && fast,
            format!("{rows} rows, mismatched lines {mismatched:?}, {timing}"),
        )
    })
}

fn c2() -> Outcome {
    criterion("2", "tableau f equals linear-algebra expansion", || {
        let start = Instant::now();
        let mut rng = StdRng::seed_from_u64(SEED);
        let mut cases: Vec<SignedPermutation> = SignedPermutation::all(3);
        cases.extend(sample(4, W4_SAMPLES, &mut rng));
        let mut bad = Vec::new();
        for w in &cases {
            let n = w.n();
            // tableau route, one coefficient at a time
            let mut tab: SparseVec<DBasisIndex> = BTreeMap::new();
            for (k, _) in schubert_coefficients(w).unwrap() {
                let f = f_coeff(w, &k.lambda, &k.pi).unwrap();
                tab.insert(k, Rational::from(f as i64));
            }
            let lin = expand_in_d_basis(&ortho_schubert(w).unwrap(), n).unwrap().coeffs;
            if tab != lin {
                bad.push(w.to_string());
            }
        }
        // divided-difference route over all of W~_3
        let top = longest_element(3).length();
        for w in SignedPermutation::all(3) {
            let sign = Rational::sign_power(top - w.length());
            let expect: SparseVec<DBasisIndex> =
                schubert_coefficients(&w).unwrap().into_iter().map(|(k, c)| (k, &c * &sign)).collect();
            if bgg_schubert_sector(&w).unwrap() != expect {
                bad.push(format!("bgg {w}"));
            }
        }
        let (fast, timing) = within(start.elapsed(), DUAL_PATH_BUDGET);
        (
            bad.is_empty() && fast,
            format!("{} elements + 24 divided-difference routes, mismatches {bad:?}, {timing}", cases.len()),
        )
    })
}

fn c3() -> Outcome {
    criterion("3", "P~ property suite", || {
        // P~_{1,1}(X_2) = (x1^2 + x2^2)/4, written out by hand
        let hand = Polynomial::from_terms(
            2,
            vec![(vec![2, 0], Rational::new(1, 4)), (vec![0, 2], Rational::new(1, 4))],
        )
        .unwrap();
        let pinned = ptilde_x(&"1,1".parse().unwrap(), 2) == hand;
        let lines = ptilde_suite(&SuiteParams {
            n: 4,
            weight: 8,
            word_bound: 0,
        })
        .unwrap();
        let (ok, detail) = suite_summary(&lines);
        (ok && pinned, format!("hand value P~_11 {}; {detail}", if pinned { "ok" } else { "WRONG" }))
    })
}

fn c4() -> Outcome {
    criterion("4", "divided-difference property and well-definedness", || {
        let (ok3, detail3) = suite_summary(&divided_difference_suite(3, 100_000).unwrap());
        let mut rng = StdRng::seed_from_u64(SEED ^ 4);
        let mut bad = Vec::new();
        let mut count = 0;
        for w in sample(4, 30, &mut rng) {
            for i in 1..4 {
                let pi = PermutationA::identity(4).right_mul_s(i);
                count += 1;
                if !divided_difference_property(&w, &pi).unwrap().holds {
                    bad.push(format!("{w} s{i}"));
                }
            }
        }
        (
            ok3 && bad.is_empty(),
            format!("W~_3: {detail3}; W~_4 sample: {count} cases, failures {bad:?}"),
        )
    })
}

fn c5() -> Outcome {
    criterion("5", "structure constants over W~_3", || {
        let start = Instant::now();
        let (ok, detail) = suite_summary(&structure_suite(3).unwrap());
        let (fast, timing) = within(start.elapsed(), STRUCTURE_BUDGET);
        (ok && fast, format!("576 products; {detail}; {timing}"))
    })
}

/// Literal identity `D_{i(w)}(x_1..x_m, 0..0) = D_w(X_m)`.
fn c6_literal() -> Outcome {
    criterion("6a", "restriction W~_2 -> W~_3, literal equality", || {
        let mut failures = Vec::new();
        for w in SignedPermutation::all(2) {
            let gap = &restrict(&w, 3).unwrap() - &ortho_schubert(&w).unwrap();
            if !gap.is_zero() {
                failures.push(format!("{} gap {gap}", w.bar_notation()));
            }
        }
        (failures.is_empty(), format!("{} of 4 exact; {failures:?}", 4 - failures.len()))
    })
}

/// The same identity modulo `J_2`, plus the gap identified exactly.
fn c6_mod_j() -> Outcome {
    criterion("6b", "restriction W~_2 -> W~_3, modulo J_2", || {
        let mut ok = true;
        for w in SignedPermutation::all(2) {
            let gap = &restrict(&w, 3).unwrap() - &ortho_schubert(&w).unwrap();
            ok &= expand_in_d_basis(&gap, 2).unwrap().schubert_sector().is_empty();
        }
        let w0 = SignedPermutation::new(vec![-1, -2]).unwrap();
        let gap = &restrict(&w0, 3).unwrap() - &ortho_schubert(&w0).unwrap();
        let identified = gap == ptilde_x(&"2".parse().unwrap(), 2);
        (ok && identified, format!("all 4 congruent: {ok}; gap at w0 equals P~_2(X_2): {identified}"))
    })
}

/// Rank-two degrees fixed by the hand computation in the exterior algebra.
const RANK_TWO_DEGREES: [([u32; 2], i64); 4] = [([3, 0], 0), ([2, 1], -1), ([1, 2], 0), ([0, 3], 3)];

fn c7() -> Outcome {
    criterion("7", "Arakelov rank-two suite", || {
        let plugin = BottChernPlugin::empty();
        let mut notes = Vec::new();
        let mut ok = true;

        for n in 2..=4 {
            let mut sum = FormElement::zero(n);
            for i in 1..=n {
                for j in i + 1..=n {
                    sum = sum.add(&FormElement::omega_lower(i, j, n)).add(&FormElement::omega_upper(i, j, n));
                }
            }
            let good = ctilde_pair(2, n, &plugin).unwrap() == sum.scale(&Rational::from(-2));
            ok &= good;
            notes.push(format!("closed form n={n}: {good}"));
        }

        // x1 x2^2 = e_2 x2: (Omega^12 - Omega_12) ^ (Omega_12 + Omega^12) = 0
        let lo = FormElement::omega_lower(1, 2, 2);
        let up = FormElement::omega_upper(1, 2, 2);
        let hand = up.sub(&lo).wedge(&lo.add(&up));
        ok &= hand.is_zero();

        let mut got = Vec::new();
        for (e, v) in RANK_TWO_DEGREES {
            let d = arith_degree(&e, &plugin).unwrap();
            let class = arith_monomial(&e, &plugin).unwrap();
            ok &= d == Rational::from(v) && degree_by_integration(&class) == d;
            got.push(d.to_string());
        }
        notes.push(format!("degrees ({})", got.join(", ")));

        let (indep, _) = suite_summary(
            &orthoschubert::suites::run_suite("arakelov", &SuiteParams::default())
                .unwrap()
                .into_iter()
                .filter(|l| l.name == "decomposition independence" || l.name == "additivity")
                .collect::<Vec<_>>(),
        );
        ok &= indep;
        notes.push(format!("decomposition independence and additivity: {indep}"));
        notes.push("x^1 x^2^2 = 0 differs from the listed derived value 1; oracle governs".into());
        (ok, notes.join("; "))
    })
}

fn c8() -> Outcome {
    criterion("8", "exact integration", || {
        let start = Instant::now();
        let mut ok = true;
        let mut notes = Vec::new();
        for n in 2..=4 {
            let expect = (1..n).fold(Rational::one(), |acc, k| &acc * &Rational::new(2, factorial(2 * k)));
            let got = integrate(&FormElement::top(n));
            ok &= got == expect;
            notes.push(format!("n={n}: {got}"));
        }
        for n in 2..=3 {
            let got = integrate(&point_class_form(n));
            ok &= got.is_one();
            notes.push(format!("point class n={n}: {got}"));
        }
        let (fast, timing) = within(start.elapsed(), INTEGRATION_BUDGET);
        (ok && fast, format!("{}; {timing}", notes.join(", ")))
    })
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

fn c9() -> Outcome {
    criterion("9", "rationality of top-degree arithmetic classes", || {
        let mut ok = true;
        let mut checked = 0;
        for e in monomials(2, 3) {
            let class = arith_monomial(&e, &BottChernPlugin::empty()).unwrap();
            ok &= class.form.as_top_multiple().is_some() && degree_of_class(&class).is_ok();
            checked += 1;
        }
        let mut plugin = BottChernPlugin::empty();
        let lo = FormElement::omega_lower(1, 2, 3);
        let up = FormElement::omega_upper(1, 3, 3);
        plugin.insert("ctilde_dual_3", lo.wedge(&up)).unwrap();
        plugin.insert("ctilde_pair_4", FormElement::zero(3)).unwrap();
        let mut missing = 0;
        for e in monomials(3, 7) {
            let h = Polynomial::monomial(3, e.clone(), Rational::one());
            let class = arith_evaluate(&h, 3, &plugin).unwrap();
            ok &= class.form.as_top_multiple().is_some() && degree_of_class(&class).is_ok();
            if matches!(arith_degree(&e, &BottChernPlugin::empty()), Err(Error::MissingBottChern { .. })) {
                missing += 1;
            }
            checked += 1;
        }
        (
            ok,
            format!("{checked} monomials at n=2,3 are scalar multiples of Omega; {missing} of 36 at n=3 name a missing Bott-Chern input without a plugin"),
        )
    })
}

fn main() {
    let started = Instant::now();
    let outcomes = vec![c1(), c2(), c3(), c4(), c5(), c6_literal(), c6_mod_j(), c7(), c8(), c9()];
    let mut unexpected = 0;
    for o in &outcomes {
        let tag = match (o.passed, EXPECTED_DEVIATIONS.contains(&o.id)) {
            (true, _) => "PASS",
            (false, true) => "FAIL (expected deviation)",
            (false, false) => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!(
            "[{tag}] criterion {} {}: {} ({:.2}s)",
            o.id,
            o.title,
            o.detail,
            o.elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {} failed ({} unexpected), {:.1}s",
        outcomes.iter().filter(|o| o.passed).count(),
        outcomes.iter().filter(|o| !o.passed).count(),
        unexpected,
        started.elapsed().as_secs_f64()
    );
    if unexpected > 0 {
        std::process::exit(1);
    }
}
