//! Partitions, elementary and power sum polynomials, and the `P~`-functions
//! with their specializations.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Accepts trailing zeros, which are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing and positive"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// `lambda_1`, zero for the empty partition.
    pub fn first(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn is_strict(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    /// Membership in `G_n`: `lambda_1 <= n`.
    pub fn in_g(&self, n: usize) -> bool {
        self.first() <= n
    }

    /// Membership in `F_n`: strict with `lambda_1 <= n`.
    pub fn in_f(&self, n: usize) -> bool {
        self.is_strict() && self.in_g(n)
    }

    /// The largest part occurring at least twice.
    pub fn largest_repeated_part(&self) -> Option<usize> {
        self.0
            .windows(2)
            .find(|w| w[0] == w[1])
            .map(|w| w[0])
    }

    /// `lambda u (k, k)`
    pub fn with_pair(&self, k: usize) -> Partition {
        self.with_part(k).with_part(k)
    }

    pub fn with_part(&self, k: usize) -> Partition {
        let mut v = self.0.clone();
        if k > 0 {
            let pos = v.iter().position(|&p| p < k).unwrap_or(v.len());
            v.insert(pos, k);
        }
        Partition(v)
    }

    /// Removes one copy of the part `k`, if present.
    pub fn without_part(&self, k: usize) -> Option<Partition> {
        let pos = self.0.iter().position(|&p| p == k)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Partition(v))
    }

    /// All partitions of `weight` with parts at most `max_part`, in
    /// lexicographically decreasing order.
    pub fn all_bounded(max_part: usize, weight: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        partitions_rec(weight, max_part, false, &mut cur, &mut out);
        out
    }

    /// Strict partitions of `weight` with parts at most `max_part`.
    pub fn strict_bounded(max_part: usize, weight: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        partitions_rec(weight, max_part, true, &mut cur, &mut out);
        out
    }

    /// All of `F_n` (finite): strict partitions with parts at most `n`.
    pub fn all_strict_in(n: usize) -> Vec<Partition> {
        (0..=n * (n + 1) / 2)
            .flat_map(|d| Self::strict_bounded(n, d))
            .collect()
    }

    /// Subscript label: `21` for `(2,1)`, comma separated if a part exceeds 9.
    pub fn label(&self) -> String {
        if self.0.iter().all(|&p| p < 10) {
            self.0.iter().map(|p| p.to_string()).collect()
        } else {
            self.to_string()
        }
    }
}

fn partitions_rec(
    remaining: usize,
    max_part: usize,
    strict: bool,
    cur: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for p in (1..=max_part.min(remaining)).rev() {
        cur.push(p);
        let next_max = if strict { p - 1 } else { p };
        partitions_rec(remaining - p, next_max, strict, cur, out);
        cur.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "[]");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("invalid part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `e_k` of `(x_1^power, ..., x_n^power)`, zero when `k > n`.
fn elementary_in_powers(k: usize, n: usize, power: u32) -> Polynomial {
    let terms = k_subsets(n, k).into_iter().map(|s| {
        let mut e = vec![0; n];
        for i in s {
            e[i] = power;
        }
        (e, Rational::one())
    });
    Polynomial::from_terms(n, terms).expect("consistent exponent length")
}

/// `e_k(X_n)`
pub fn elementary(k: usize, n: usize) -> Result<Polynomial> {
    if k > n {
        return Err(Error::InvalidPartition(format!(
            "e_{k} requested in {n} variables"
        )));
    }
    Ok(elementary_in_powers(k, n, 1))
}

/// `e_k(X_n)`, or zero when `k > n`.
pub fn elementary_or_zero(k: usize, n: usize) -> Polynomial {
    elementary_in_powers(k, n, 1)
}

/// `p_k(X_n)`, `k >= 1`.
pub fn power_sum(k: usize, n: usize) -> Result<Polynomial> {
    if k == 0 {
        return Err(Error::InvalidPartition("p_0 is not defined".into()));
    }
    let terms = (0..n).map(|i| {
        let mut e = vec![0; n];
        e[i] = k as u32;
        (e, Rational::one())
    });
    Polynomial::from_terms(n, terms)
}

/// `e_k(x_1^2, ..., x_n^2)`
pub fn elementary_squares(k: usize, n: usize) -> Result<Polynomial> {
    if k > n {
        return Err(Error::InvalidPartition(format!(
            "e_{k}(X^2) requested in {n} variables"
        )));
    }
    Ok(elementary_in_powers(k, n, 2))
}

/// A polynomial in the elementary symmetric functions `e_1, ..., e_N`,
/// stored as a polynomial whose variable `i` is `e_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymPoly(Polynomial);

impl SymPoly {
    pub fn one(alphabet: usize) -> Self {
        SymPoly(Polynomial::one(alphabet))
    }

    pub fn zero(alphabet: usize) -> Self {
        SymPoly(Polynomial::zero(alphabet))
    }

    /// `e_k` (`e_0 = 1`) in an alphabet of size at least `k`.
    pub fn e(k: usize, alphabet: usize) -> Self {
        let alphabet = alphabet.max(k);
        if k == 0 {
            SymPoly::one(alphabet)
        } else {
            SymPoly(Polynomial::var(alphabet, k - 1))
        }
    }

    pub fn alphabet(&self) -> usize {
        self.0.nvars()
    }

    pub fn as_polynomial(&self) -> &Polynomial {
        &self.0
    }

    pub fn extend(&self, alphabet: usize) -> SymPoly {
        SymPoly(self.0.extend_vars(alphabet.max(self.alphabet())))
    }

    fn aligned(&self, other: &SymPoly) -> (Polynomial, Polynomial) {
        let n = self.alphabet().max(other.alphabet());
        (self.0.extend_vars(n), other.0.extend_vars(n))
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let (a, b) = self.aligned(other);
        SymPoly(&a + &b)
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        let (a, b) = self.aligned(other);
        SymPoly(&a - &b)
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        let (a, b) = self.aligned(other);
        SymPoly(&a * &b)
    }

    pub fn scale(&self, c: &Rational) -> SymPoly {
        SymPoly(self.0.scale(c))
    }

    /// Substitutes `e_k -> images(k)`.
    fn substitute_with(&self, target_vars: usize, image: impl Fn(usize) -> Polynomial) -> Polynomial {
        let images: Vec<Polynomial> = (1..=self.alphabet()).map(image).collect();
        if images.is_empty() {
            return Polynomial::constant(target_vars, self.0.constant_term());
        }
        self.0.substitute(&images).expect("images share a variable count")
    }

    /// `e_k -> e_k(X_n)`
    pub fn specialize(&self, n: usize) -> Polynomial {
        self.substitute_with(n, |k| elementary_or_zero(k, n))
    }

    /// The homomorphism `eta`: `e_k -> q_k(Y_m)`.
    pub fn eta(&self, m: usize) -> Polynomial {
        self.substitute_with(m, |k| q_fun(k, m))
    }
}

/// `P~_k`: `e_k / 2` for `k > 0`, and 1 for `k = 0`.
pub fn ptilde_single(k: usize) -> SymPoly {
    if k == 0 {
        SymPoly::one(1)
    } else {
        SymPoly::e(k, k).scale(&Rational::new(1, 2))
    }
}

/// The two-index `P~_{i,j}`, with `P~_{i,0} = P~_i`.
pub fn ptilde_pair(i: usize, j: usize) -> SymPoly {
    pair_generic(i, j, ptilde_single, SymPoly::mul, SymPoly::add, |p, c| p.scale(c))
}

/// `P~_{i,j}(X_n)` from the same recipe with `P~_k(X_n) = e_k(X_n)/2`.
fn ptilde_pair_x(i: usize, j: usize, n: usize) -> Polynomial {
    let single = |k: usize| {
        if k == 0 {
            Polynomial::one(n)
        } else {
            elementary_or_zero(k, n).scale(&Rational::new(1, 2))
        }
    };
    pair_generic(
        i,
        j,
        single,
        |a, b| a * b,
        |a, b| a + b,
        |p, c| p.scale(c),
    )
}

fn pair_generic<T>(
    i: usize,
    j: usize,
    single: impl Fn(usize) -> T,
    mul: impl Fn(&T, &T) -> T,
    add: impl Fn(&T, &T) -> T,
    scale: impl Fn(&T, &Rational) -> T,
) -> T {
    if j == 0 {
        return single(i);
    }
    let mut acc = mul(&single(i), &single(j));
    for r in 1..j {
        let t = mul(&single(i + r), &single(j - r));
        acc = add(&acc, &scale(&t, &(Rational::from(2) * Rational::sign_power(r))));
    }
    add(&acc, &scale(&single(i + j), &Rational::sign_power(j)))
}

/// Pfaffian of an antisymmetric matrix of even size, by expansion along the
/// first row (memoized over index subsets).
pub fn pfaffian(m: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let size = m.len();
    if m.iter().any(|r| r.len() != size) {
        return Err(Error::InvalidMatrix("matrix is not square".into()));
    }
    if !size.is_multiple_of(2) {
        return Err(Error::InvalidMatrix(format!("odd size {size}")));
    }
    if size > 32 {
        return Err(Error::InvalidMatrix(format!("size {size} too large")));
    }
    let nvars = m.first().map(|r| r[0].nvars()).unwrap_or(0);
    for i in 0..size {
        if !m[i][i].is_zero() {
            return Err(Error::InvalidMatrix("nonzero diagonal".into()));
        }
        for j in i + 1..size {
            if m[i][j].nvars() != nvars || m[j][i] != -&m[i][j] {
                return Err(Error::InvalidMatrix(format!(
                    "entries ({i},{j}) and ({j},{i}) are not opposite"
                )));
            }
        }
    }
    Ok(pfaffian_upper(size, nvars, |i, j| m[i][j].clone()))
}

/// Pfaffian given only the strictly upper triangular entries.
fn pfaffian_upper(size: usize, nvars: usize, entry: impl Fn(usize, usize) -> Polynomial) -> Polynomial {
    let mut cache: HashMap<(usize, usize), Polynomial> = HashMap::new();
    let mut get = |i: usize, j: usize| -> Polynomial {
        cache.entry((i, j)).or_insert_with(|| entry(i, j)).clone()
    };
    let full: u32 = if size == 32 { u32::MAX } else { (1u32 << size) - 1 };
    let mut memo: HashMap<u32, Polynomial> = HashMap::new();
    fn rec(
        mask: u32,
        nvars: usize,
        get: &mut dyn FnMut(usize, usize) -> Polynomial,
        memo: &mut HashMap<u32, Polynomial>,
    ) -> Polynomial {
        if mask == 0 {
            return Polynomial::one(nvars);
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut acc = Polynomial::zero(nvars);
        let mut sign_positive = true;
        let mut bits = rest;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let e = get(i, j);
            if !e.is_zero() {
                let sub = rec(rest & !(1 << j), nvars, get, memo);
                let t = &e * &sub;
                acc = if sign_positive { &acc + &t } else { &acc - &t };
            }
            sign_positive = !sign_positive;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    rec(full, nvars, &mut get, &mut memo)
}

/// Parts padded with one zero when the length is odd.
fn padded(lambda: &Partition) -> Vec<usize> {
    let mut p = lambda.parts().to_vec();
    if p.len() % 2 == 1 {
        p.push(0);
    }
    p
}

/// `P~_lambda` in the `e`-alphabet.
pub fn ptilde(lambda: &Partition) -> SymPoly {
    let alphabet = lambda.weight().max(1);
    let p = padded(lambda);
    let pf = pfaffian_upper(p.len(), alphabet, |i, j| {
        ptilde_pair(p[i], p[j]).extend(alphabet).as_polynomial().clone()
    });
    SymPoly(pf)
}

type PtildeMemo = Mutex<HashMap<(Partition, usize), Polynomial>>;

fn ptilde_memo() -> &'static PtildeMemo {
    static MEMO: OnceLock<PtildeMemo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `P~_lambda(X_n)`: the same Pfaffian evaluated with entries `P~_{i,j}(X_n)`.
pub fn ptilde_x(lambda: &Partition, n: usize) -> Polynomial {
    let key = (lambda.clone(), n);
    if let Some(p) = ptilde_memo().lock().unwrap().get(&key) {
        return p.clone();
    }
    let p = padded(lambda);
    let pf = pfaffian_upper(p.len(), n, |i, j| ptilde_pair_x(p[i], p[j], n));
    ptilde_memo().lock().unwrap().insert(key, pf.clone());
    pf
}

/// `q_k(Y_m)`: the coefficient of `t^k` in `prod_i (1 + y_i t)/(1 - y_i t)`.
pub fn q_fun(k: usize, m: usize) -> Polynomial {
    // series[d] = coefficient of t^d of the partial product
    let mut series: Vec<Polynomial> = (0..=k)
        .map(|d| {
            if d == 0 {
                Polynomial::one(m)
            } else {
                Polynomial::zero(m)
            }
        })
        .collect();
    for i in 0..m {
        let y = Polynomial::var(m, i);
        let mut next = series.clone();
        for d in 1..=k {
            // factor = 1 + 2 sum_{j >= 1} y^j t^j
            for j in 1..=d {
                let t = &series[d - j] * &y.pow(j as u32);
                next[d] = &next[d] + &t.scale(&Rational::from(2));
            }
        }
        series = next;
    }
    series.swap_remove(k)
}

/// Schur `P_lambda(Y_m)` as `eta(P~_lambda)` for strict `lambda`.
pub fn schur_p(lambda: &Partition, m: usize) -> Result<Polynomial> {
    if !lambda.is_strict() {
        return Err(Error::InvalidPartition(format!("{lambda} is not strict")));
    }
    Ok(ptilde(lambda).eta(m))
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::linalg;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i - 1)
    }

    fn half() -> Rational {
        Rational::new(1, 2)
    }

    /// Leibniz determinant.
    fn det(m: &[Vec<Polynomial>]) -> Polynomial {
        let n = m.len();
        let nv = m[0][0].nvars();
        let mut total = Polynomial::zero(nv);
        let mut perm: Vec<usize> = (0..n).collect();
        fn heap(k: usize, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k == 1 {
                out.push(perm.clone());
                return;
            }
            for i in 0..k {
                heap(k - 1, perm, out);
                if k % 2 == 0 {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
            }
        }
        let mut perms = Vec::new();
        heap(n, &mut perm, &mut perms);
        for p in perms {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let mut t = Polynomial::constant(nv, Rational::sign_power(inversions));
            for (i, &pi) in p.iter().enumerate() {
                t = &t * &m[i][pi];
            }
            total = &total + &t;
        }
        total
    }

    #[test]
    fn partition_basics() {
        let l = part("3,3,1");
        assert_eq!(l.weight(), 7);
        assert_eq!(l.len(), 3);
        assert!(!l.is_strict());
        assert_eq!(l.largest_repeated_part(), Some(3));
        assert_eq!(l.to_string(), "3,3,1");
        assert_eq!(part("[]"), Partition::empty());
        assert_eq!(Partition::empty().to_string(), "[]");
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(part("2,1").with_pair(1), part("2,1,1,1"));
        assert_eq!(Partition::all_bounded(2, 4).len(), 3);
        assert_eq!(Partition::strict_bounded(3, 3).len(), 2);
        assert_eq!(Partition::all_strict_in(2).len(), 4);
    }

    #[test]
    fn elementary_examples() {
        assert_eq!(elementary(2, 2).unwrap(), &x(2, 1) * &x(2, 2));
        assert_eq!(
            elementary_squares(1, 2).unwrap(),
            &x(2, 1).pow(2) + &x(2, 2).pow(2)
        );
        assert_eq!(power_sum(2, 2).unwrap(), &x(2, 1).pow(2) + &x(2, 2).pow(2));
        assert!(elementary(3, 2).is_err());
        assert!(power_sum(0, 2).is_err());
        assert_eq!(elementary(0, 3).unwrap(), Polynomial::one(3));
    }

    #[test]
    fn pair_examples() {
        assert_eq!(
            ptilde_pair(1, 1).specialize(2),
            elementary_squares(1, 2).unwrap().scale(&Rational::new(1, 4))
        );
        let expect = ptilde_single(2).mul(&ptilde_single(1)).sub(&ptilde_single(3));
        assert_eq!(ptilde_pair(2, 1), expect.extend(3));
        assert_eq!(ptilde_pair(3, 0), ptilde_single(3));
    }

    #[test]
    fn pfaffian_small() {
        let a = x(2, 1);
        let m = vec![
            vec![Polynomial::zero(2), a.clone()],
            vec![-&a, Polynomial::zero(2)],
        ];
        assert_eq!(pfaffian(&m).unwrap(), a);
        // generic 4x4 with independent variables m_ij
        let nv = 6;
        let idx = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut mat = vec![vec![Polynomial::zero(nv); 4]; 4];
        for (k, &(i, j)) in idx.iter().enumerate() {
            mat[i][j] = Polynomial::var(nv, k);
            mat[j][i] = -&Polynomial::var(nv, k);
        }
        let v = |k| Polynomial::var(nv, k);
        let expect = &(&(&v(0) * &v(5)) - &(&v(1) * &v(4))) + &(&v(2) * &v(3));
        assert_eq!(pfaffian(&mat).unwrap(), expect);
        assert!(pfaffian(&[vec![Polynomial::zero(1)]]).is_err());
        let bad = vec![
            vec![Polynomial::zero(1), Polynomial::one(1)],
            vec![Polynomial::one(1), Polynomial::zero(1)],
        ];
        assert!(pfaffian(&bad).is_err());
    }

    #[test]
    fn ptilde_examples() {
        let n = 4;
        let sum: Polynomial = (1..=n).fold(Polynomial::zero(n), |a, i| &a + &x(n, i));
        assert_eq!(ptilde_x(&part("1"), n), sum.scale(&half()));
        assert!(ptilde_x(&part("3"), 2).is_zero());
        assert!(ptilde_x(&part("3,1"), 2).is_zero());
        assert_eq!(ptilde_x(&Partition::empty(), 3), Polynomial::one(3));
    }

    #[test]
    fn e_alphabet_and_direct_specialization_agree() {
        for d in 0..=6 {
            for l in Partition::all_bounded(6, d) {
                for n in 1..=4 {
                    assert_eq!(ptilde(&l).specialize(n), ptilde_x(&l, n), "{l} n={n}");
                }
            }
        }
    }

    #[test]
    fn property_c_pair_insertion() {
        for d in 0..=4 {
            for l in Partition::all_bounded(4, d) {
                for k in 1..=3 {
                    let lhs = ptilde(&l.with_pair(k));
                    let rhs = ptilde_pair(k, k).mul(&ptilde(&l));
                    let a = lhs.alphabet().max(rhs.alphabet());
                    assert_eq!(lhs.extend(a), rhs.extend(a), "{l} k={k}");
                }
            }
        }
    }

    #[test]
    fn property_f_top_part() {
        for n in 1..=3 {
            for d in 0..=4 {
                for l in Partition::all_bounded(n, d) {
                    let lhs = &ptilde_x(&part(&n.to_string()), n) * &ptilde_x(&l, n);
                    assert_eq!(lhs, ptilde_x(&l.with_part(n), n), "{l} n={n}");
                }
            }
        }
    }

    #[test]
    fn property_e_independence() {
        for n in 1..=3 {
            for d in 0..=5 {
                let rows: Vec<Vec<Rational>> = Partition::all_bounded(n, d)
                    .iter()
                    .map(|l| {
                        let p = ptilde_x(l, n);
                        monomial_vector(&p, n, d)
                    })
                    .collect();
                assert_eq!(linalg::rank(&rows), rows.len(), "n={n} d={d}");
            }
        }
    }

    fn monomial_vector(p: &Polynomial, n: usize, d: usize) -> Vec<Rational> {
        let mut exps = Vec::new();
        fn rec(i: usize, n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == n - 1 {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
                return;
            }
            for e in 0..=left {
                cur.push(e);
                rec(i + 1, n, left - e, cur, out);
                cur.pop();
            }
        }
        rec(0, n, d as u32, &mut Vec::new(), &mut exps);
        exps.iter().map(|e| p.coeff(e)).collect()
    }

    #[test]
    fn q_examples() {
        assert_eq!(q_fun(0, 3), Polynomial::one(3));
        let sum = (0..3).fold(Polynomial::zero(3), |a, i| &a + &Polynomial::var(3, i));
        assert_eq!(q_fun(1, 3), sum.scale(&Rational::from(2)));
    }

    /// `q_k = sum_{a+b=k} e_a h_b`, since the generating series factors as
    /// `E(t) H(t)`.
    fn q_oracle(k: usize, m: usize) -> Polynomial {
        let h = |b: usize| -> Polynomial {
            let mut acc = Polynomial::zero(m);
            let mut exps = Vec::new();
            fn rec(i: usize, m: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
                if i == m - 1 {
                    cur.push(left);
                    out.push(cur.clone());
                    cur.pop();
                    return;
                }
                for e in 0..=left {
                    cur.push(e);
                    rec(i + 1, m, left - e, cur, out);
                    cur.pop();
                }
            }
            rec(0, m, b as u32, &mut Vec::new(), &mut exps);
            for e in exps {
                acc = &acc + &Polynomial::monomial(m, e, Rational::one());
            }
            acc
        };
        (0..=k).fold(Polynomial::zero(m), |acc, a| {
            &acc + &(&elementary_or_zero(a, m) * &h(k - a))
        })
    }

    #[test]
    fn q_matches_oracle() {
        for m in 1..=4 {
            for k in 0..=6 {
                let q = q_fun(k, m);
                assert_eq!(q, q_oracle(k, m));
                assert!(q.has_integer_coefficients() && q.has_nonnegative_coefficients());
            }
        }
    }

    #[test]
    fn schur_p_examples() {
        let m = 4;
        let sum = (0..m).fold(Polynomial::zero(m), |a, i| &a + &Polynomial::var(m, i));
        assert_eq!(schur_p(&part("1"), m).unwrap(), sum);
        assert!(ptilde(&part("1,1")).eta(4).is_zero());
        assert_eq!(schur_p(&Partition::empty(), 3).unwrap(), Polynomial::one(3));
        assert!(schur_p(&part("2,2"), 3).is_err());
        let p21 = schur_p(&part("2,1"), 3).unwrap();
        assert!(p21.has_integer_coefficients() && p21.has_nonnegative_coefficients());
    }

    proptest! {
        #[test]
        fn pfaffian_squared_is_determinant(entries in prop::collection::vec(
            prop::collection::vec((0u32..=1, 0u32..=1, -3i64..=3), 1..3), 6)) {
            let nv = 2;
            let mut mat = vec![vec![Polynomial::zero(nv); 4]; 4];
            let mut k = 0;
            for i in 0..4 {
                for j in i + 1..4 {
                    let p = Polynomial::from_terms(
                        nv,
                        entries[k].iter().map(|&(a, b, c)| (vec![a, b], Rational::from(c))),
                    ).unwrap();
                    mat[j][i] = -&p;
                    mat[i][j] = p;
                    k += 1;
                }
            }
            let pf = pfaffian(&mat).unwrap();
            prop_assert_eq!(&pf * &pf, det(&mat));
        }
    }
}
