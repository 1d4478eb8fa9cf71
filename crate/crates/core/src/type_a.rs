//! Type A Schubert polynomials.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::weyl::{longest_element_a, Letter, PermutationA};

type Memo = Mutex<HashMap<PermutationA, Polynomial>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `x_1^{n-1} x_2^{n-2} ... x_{n-1}`
pub fn staircase(n: usize) -> Polynomial {
    let exps = (0..n).map(|i| (n - 1 - i) as u32).collect();
    Polynomial::monomial(n, exps, Rational::one())
}

/// The Schubert polynomial of `w` in `n = w.n()` variables.
///
/// Built top-down from the longest element: `S_w = d_i S_{w s_i}` for an
/// ascent `w(i) < w(i+1)`.
pub fn schubert_a(w: &PermutationA) -> Polynomial {
    if let Some(p) = memo().lock().unwrap().get(w) {
        return p.clone();
    }
    let n = w.n();
    let p = if *w == longest_element_a(n) {
        staircase(n)
    } else {
        let i = (1..n)
            .find(|&i| !w.has_right_descent(i))
            .expect("non-longest permutation has an ascent");
        schubert_a(&w.right_mul_s(i))
            .divided_difference(Letter::S(i))
            .expect("letter in range")
    };
    memo().lock().unwrap().insert(w.clone(), p.clone());
    p
}

/// `S_w` for `w` in `S_n` viewed inside `S_{n'}`, restricted back to the
/// first `n` variables, compared with `S_w` in `S_n`.
pub fn stability_check(w: &PermutationA, n_big: usize) -> Result<bool> {
    let n = w.n();
    if n_big < n {
        return Err(Error::SizeMismatch(n, n_big));
    }
    let mut e = w.entries().to_vec();
    e.extend(n + 1..=n_big);
    let big = PermutationA::new(e)?;
    Ok(schubert_a(&big).truncate_vars(n) == schubert_a(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;

    fn perm(v: &[usize]) -> PermutationA {
        PermutationA::new(v.to_vec()).unwrap()
    }

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i - 1)
    }

    #[test]
    fn examples() {
        assert_eq!(schubert_a(&perm(&[2, 1, 3])), x(3, 1));
        assert_eq!(schubert_a(&perm(&[3, 2, 1])), &x(3, 1).pow(2) * &x(3, 2));
        assert_eq!(schubert_a(&perm(&[1, 3, 2])), &x(3, 1) + &x(3, 2));
        assert_eq!(schubert_a(&PermutationA::identity(4)), Polynomial::one(4));
    }

    #[test]
    fn agrees_with_direct_word() {
        // d_{w^{-1} w0} applied to the staircase along the canonical word
        for n in 1..=4 {
            let w0 = longest_element_a(n);
            for w in PermutationA::all(n) {
                let u = w.inverse().compose(&w0).unwrap();
                let direct = staircase(n)
                    .divided_difference_word(&u.canonical_reduced_word())
                    .unwrap();
                assert_eq!(schubert_a(&w), direct, "{w}");
            }
        }
    }

    #[test]
    fn divided_difference_recursion() {
        for n in 3..=4 {
            for w in PermutationA::all(n) {
                let s = schubert_a(&w);
                assert!(s.is_homogeneous());
                assert_eq!(s.total_degree().unwrap_or(0) as usize, w.length());
                assert!(s.has_integer_coefficients() && s.has_nonnegative_coefficients());
                for i in 1..n {
                    let d = s.divided_difference(Letter::S(i)).unwrap();
                    if w.has_right_descent(i) {
                        assert_eq!(d, schubert_a(&w.right_mul_s(i)));
                    } else {
                        assert!(d.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn independence_per_degree() {
        for n in 2..=4 {
            let all = PermutationA::all(n);
            for d in 0..=n * (n - 1) / 2 {
                let polys: Vec<Polynomial> = all
                    .iter()
                    .filter(|w| w.length() == d)
                    .map(schubert_a)
                    .collect();
                let mut monos: Vec<Vec<u32>> = polys
                    .iter()
                    .flat_map(|p| p.terms().map(|(m, _)| m.exps().to_vec()))
                    .collect();
                monos.sort();
                monos.dedup();
                let rows: Vec<Vec<Rational>> = polys
                    .iter()
                    .map(|p| monos.iter().map(|m| p.coeff(m)).collect())
                    .collect();
                assert_eq!(linalg::rank(&rows), polys.len());
            }
        }
    }

    #[test]
    fn stability() {
        assert!(stability_check(&perm(&[2, 1]), 4).unwrap());
        for w in PermutationA::all(3) {
            assert!(stability_check(&w, 4).unwrap(), "{w}");
        }
        assert!(stability_check(&PermutationA::identity(2), 5).unwrap());
        assert!(stability_check(&perm(&[2, 1, 3]), 2).is_err());
    }
}
