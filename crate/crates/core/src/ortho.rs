//! Orthogonal Schubert polynomials `D_w`, the basis `D_{lambda, pi}`, the
//! ideal `J_n` and lifted structure constants.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::poly::{Monomial, Polynomial};
use crate::rational::Rational;
use crate::stanley::bh_expansion;
use crate::sym::{elementary_or_zero, elementary_squares, ptilde_x, Partition};
use crate::type_a::schubert_a;
use crate::weyl::{longest_element, longest_element_a, PermutationA, SignedPermutation};

/// Index `(lambda, pi)` of `D_{lambda, pi} = (-1)^{l(pi)} P~_lambda(X_n) S_pi(X_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DBasisIndex {
    pub lambda: Partition,
    pub pi: PermutationA,
}

impl DBasisIndex {
    pub fn new(lambda: Partition, pi: PermutationA) -> Self {
        DBasisIndex { lambda, pi }
    }

    pub fn degree(&self) -> usize {
        self.lambda.weight() + self.pi.length()
    }

    /// True for `lambda` in `F_{n-1}`, the Schubert sector.
    pub fn is_schubert(&self) -> bool {
        self.lambda.in_f(self.pi.n().saturating_sub(1))
    }
}

impl fmt::Display for DBasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.lambda, self.pi)
    }
}

/// All indices of degree `d` for `W~_n`: `lambda` in `G_n`, `pi` in `S_n`.
pub fn indices_of_degree(n: usize, d: usize) -> Vec<DBasisIndex> {
    let mut out = Vec::new();
    for pi in PermutationA::all(n) {
        let l = pi.length();
        if l > d {
            continue;
        }
        for lambda in Partition::all_bounded(n, d - l) {
            out.push(DBasisIndex::new(lambda, pi.clone()));
        }
    }
    out.sort();
    out
}

/// `(-1)^{l(pi)} P~_lambda(X_n) S_pi(X_n)`
pub fn d_basis(lambda: &Partition, pi: &PermutationA, n: usize) -> Result<Polynomial> {
    if pi.n() != n {
        return Err(Error::SizeMismatch(pi.n(), n));
    }
    if !lambda.in_g(n) {
        return Err(Error::InvalidPartition(format!(
            "{lambda} has a part larger than {n}"
        )));
    }
    Ok(d_basis_unchecked(lambda, pi))
}

fn d_basis_unchecked(lambda: &Partition, pi: &PermutationA) -> Polynomial {
    let n = pi.n();
    let p = &ptilde_x(lambda, n) * &schubert_a(pi);
    p.scale(&Rational::sign_power(pi.length()))
}

type PolyMemo = Mutex<HashMap<SignedPermutation, Polynomial>>;

fn ortho_memo() -> &'static PolyMemo {
    static MEMO: OnceLock<PolyMemo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `F_{n-1}` part of the Billey–Haiman coefficients of `w`, as a
/// sparse vector over basis indices.
pub fn schubert_coefficients(w: &SignedPermutation) -> Result<SparseVec<DBasisIndex>> {
    let n = w.n();
    let bh = bh_expansion(w)?;
    Ok(bh
        .coeffs
        .into_iter()
        .filter(|((lambda, _), _)| lambda.in_f(n.saturating_sub(1)))
        .map(|((lambda, pi), c)| (DBasisIndex::new(lambda, pi), Rational::from(c as i64)))
        .collect())
}

/// `D_w = sum f^w_{lambda,pi} D_{lambda,pi}` over `lambda` in `F_{n-1}`.
pub fn ortho_schubert(w: &SignedPermutation) -> Result<Polynomial> {
    if let Some(p) = ortho_memo().lock().unwrap().get(w) {
        return Ok(p.clone());
    }
    let n = w.n();
    let mut acc = Polynomial::zero(n);
    for (idx, c) in schubert_coefficients(w)? {
        acc = &acc + &d_basis_unchecked(&idx.lambda, &idx.pi).scale(&c);
    }
    ortho_memo().lock().unwrap().insert(w.clone(), acc.clone());
    Ok(acc)
}

/// Coefficients of a polynomial in the basis `D_{lambda, pi}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DExpansion {
    pub n: usize,
    pub coeffs: BTreeMap<DBasisIndex, Rational>,
}

impl DExpansion {
    /// Entries with `lambda` in `F_{n-1}`.
    pub fn schubert_sector(&self) -> SparseVec<DBasisIndex> {
        self.coeffs
            .iter()
            .filter(|(k, _)| k.is_schubert())
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect()
    }

    /// Entries with `lambda` in `G_n \ F_{n-1}`.
    pub fn ideal_sector(&self) -> SparseVec<DBasisIndex> {
        self.coeffs
            .iter()
            .filter(|(k, _)| !k.is_schubert())
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect()
    }

    pub fn reconstruct(&self) -> Polynomial {
        self.coeffs.iter().fold(Polynomial::zero(self.n), |acc, (k, c)| {
            &acc + &d_basis_unchecked(&k.lambda, &k.pi).scale(c)
        })
    }
}

struct DegreeBasis {
    indices: Vec<DBasisIndex>,
    echelon: Echelon<Monomial>,
}

type BasisMemo = Mutex<HashMap<(usize, usize), Arc<DegreeBasis>>>;

fn basis_memo() -> &'static BasisMemo {
    static MEMO: OnceLock<BasisMemo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn to_sparse(p: &Polynomial) -> SparseVec<Monomial> {
    p.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

fn degree_basis(n: usize, d: usize) -> Result<Arc<DegreeBasis>> {
    if let Some(b) = basis_memo().lock().unwrap().get(&(n, d)) {
        return Ok(b.clone());
    }
    let indices = indices_of_degree(n, d);
    let mut echelon = Echelon::new();
    for idx in &indices {
        if !echelon.insert(&to_sparse(&d_basis_unchecked(&idx.lambda, &idx.pi))) {
            return Err(Error::Consistency(format!(
                "basis element {idx} is dependent in degree {d}, n = {n}"
            )));
        }
    }
    let b = Arc::new(DegreeBasis { indices, echelon });
    basis_memo().lock().unwrap().insert((n, d), b.clone());
    Ok(b)
}

/// Number of basis elements `D_{lambda, pi}` of degree `d`; equals the number
/// of monomials of degree `d` in `n` variables.
pub fn basis_dimension(n: usize, d: usize) -> Result<usize> {
    Ok(degree_basis(n, d)?.indices.len())
}

/// The unique expansion of `f` in the basis `D_{lambda, pi}` of `A[X_n]`.
pub fn expand_in_d_basis(f: &Polynomial, n: usize) -> Result<DExpansion> {
    if f.nvars() != n {
        return Err(Error::MismatchedVars {
            left: n,
            right: f.nvars(),
        });
    }
    let mut coeffs = BTreeMap::new();
    for d in f.degrees() {
        let basis = degree_basis(n, d as usize)?;
        let part = f.homogeneous_component(d);
        let sol = basis.echelon.solve(&to_sparse(&part)).ok_or_else(|| {
            Error::Consistency(format!("degree {d} component not spanned, n = {n}"))
        })?;
        for (j, c) in sol {
            coeffs.insert(basis.indices[j].clone(), c);
        }
    }
    let exp = DExpansion { n, coeffs };
    if let Some((k, c)) = exp.coeffs.iter().find(|(_, c)| !c.is_dyadic()) {
        return Err(Error::Consistency(format!(
            "non-dyadic coefficient {c} at {k}"
        )));
    }
    if exp.reconstruct() != *f {
        return Err(Error::Consistency("expansion does not reconstruct".into()));
    }
    Ok(exp)
}

/// `h = sum_i e_i(X_n^2) f_i + e_n(X_n) g`; `f[i-1]` holds `f_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealDecomposition {
    pub f: Vec<Polynomial>,
    pub g: Polynomial,
}

impl IdealDecomposition {
    pub fn reassemble(&self, n: usize) -> Polynomial {
        let mut acc = &elementary_or_zero(n, n) * &self.g;
        for (i, fi) in self.f.iter().enumerate() {
            acc = &acc + &(&elementary_squares(i + 1, n).expect("i < n") * fi);
        }
        acc
    }
}

/// Routing of an ideal-sector index: strip a part equal to `n` (factor 1/2,
/// into `g`), otherwise two copies of the largest repeated part `r`
/// (factor 1/4, into `f_r`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealRoute {
    TopPart { rest: Partition },
    Pair { r: usize, rest: Partition },
}

pub fn route_ideal_index(lambda: &Partition, n: usize) -> Result<IdealRoute> {
    if lambda.first() == n && n > 0 {
        return Ok(IdealRoute::TopPart {
            rest: lambda.without_part(n).expect("part present"),
        });
    }
    match lambda.largest_repeated_part() {
        Some(r) => Ok(IdealRoute::Pair {
            r,
            rest: lambda
                .without_part(r)
                .and_then(|l| l.without_part(r))
                .expect("two copies present"),
        }),
        None => Err(Error::InvalidPartition(format!(
            "{lambda} lies in F_{}",
            n.saturating_sub(1)
        ))),
    }
}

pub fn ideal_decompose(h: &Polynomial, n: usize) -> Result<IdealDecomposition> {
    let exp = expand_in_d_basis(h, n)?;
    let bad = exp.schubert_sector();
    if !bad.is_empty() {
        let names: Vec<String> = bad.keys().map(|k| k.to_string()).collect();
        return Err(Error::NotInIdeal {
            n,
            offending: names.join(", "),
        });
    }
    let mut f = vec![Polynomial::zero(n); n.saturating_sub(1)];
    let mut g = Polynomial::zero(n);
    for (idx, c) in exp.ideal_sector() {
        match route_ideal_index(&idx.lambda, n)? {
            IdealRoute::TopPart { rest } => {
                let t = d_basis_unchecked(&rest, &idx.pi).scale(&(&c * &Rational::new(1, 2)));
                g = &g + &t;
            }
            IdealRoute::Pair { r, rest } => {
                let t = d_basis_unchecked(&rest, &idx.pi).scale(&(&c * &Rational::new(1, 4)));
                f[r - 1] = &f[r - 1] + &t;
            }
        }
    }
    let dec = IdealDecomposition { f, g };
    if dec.reassemble(n) != *h {
        return Err(Error::Consistency("ideal decomposition does not reassemble".into()));
    }
    Ok(dec)
}

/// `D_u D_v = sum d^w D_w + sum d^{lambda pi} D_{lambda, pi}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    pub n: usize,
    pub u: SignedPermutation,
    pub v: SignedPermutation,
    pub schubert: BTreeMap<SignedPermutation, Rational>,
    pub ideal: BTreeMap<DBasisIndex, Rational>,
}

impl StructureConstants {
    /// Ideal-sector entries that are not integers.
    pub fn non_integral_ideal(&self) -> Vec<&DBasisIndex> {
        self.ideal
            .iter()
            .filter(|(_, c)| !c.is_integer())
            .map(|(k, _)| k)
            .collect()
    }

    pub fn to_json(&self) -> StructureJson {
        StructureJson {
            n: self.n,
            u: self.u.to_string(),
            v: self.v.to_string(),
            schubert: self
                .schubert
                .iter()
                .map(|(w, d)| SchubertEntry {
                    w: w.to_string(),
                    d: d.to_i64().expect("integral Schubert constant"),
                })
                .collect(),
            ideal: self
                .ideal
                .iter()
                .map(|(k, d)| IdealEntry {
                    lambda: k.lambda.parts().to_vec(),
                    pi: k.pi.to_string(),
                    d: d.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &StructureJson) -> Result<Self> {
        let mut schubert = BTreeMap::new();
        for e in &j.schubert {
            schubert.insert(e.w.parse()?, Rational::from(e.d));
        }
        let mut ideal = BTreeMap::new();
        for e in &j.ideal {
            let idx = DBasisIndex::new(Partition::new(e.lambda.clone())?, e.pi.parse()?);
            ideal.insert(idx, e.d.clone());
        }
        Ok(StructureConstants {
            n: j.n,
            u: j.u.parse()?,
            v: j.v.parse()?,
            schubert,
            ideal,
        })
    }
}

/// Wire form of [`StructureConstants`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StructureJson {
    pub n: usize,
    pub u: String,
    pub v: String,
    pub schubert: Vec<SchubertEntry>,
    pub ideal: Vec<IdealEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SchubertEntry {
    pub w: String,
    pub d: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct IdealEntry {
    pub lambda: Vec<usize>,
    pub pi: String,
    pub d: Rational,
}

struct LengthSystem {
    elements: Vec<SignedPermutation>,
    echelon: Echelon<DBasisIndex>,
}

type SystemMemo = Mutex<HashMap<(usize, usize), Arc<LengthSystem>>>;

fn system_memo() -> &'static SystemMemo {
    static MEMO: OnceLock<SystemMemo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The Schubert-sector vectors of all `D_w` with `l(w) = len`.
fn length_system(n: usize, len: usize) -> Result<Arc<LengthSystem>> {
    if let Some(s) = system_memo().lock().unwrap().get(&(n, len)) {
        return Ok(s.clone());
    }
    let elements: Vec<SignedPermutation> = SignedPermutation::all(n)
        .into_iter()
        .filter(|w| w.length() == len)
        .collect();
    let mut echelon = Echelon::new();
    for w in &elements {
        if !echelon.insert(&schubert_coefficients(w)?) {
            return Err(Error::Consistency(format!(
                "D_{w} is dependent on shorter-listed D_w of length {len}"
            )));
        }
    }
    let s = Arc::new(LengthSystem { elements, echelon });
    system_memo().lock().unwrap().insert((n, len), s.clone());
    Ok(s)
}

/// Expresses `D_u D_v` through the `D_w` and the ideal basis.
pub fn structure_constants(u: &SignedPermutation, v: &SignedPermutation) -> Result<StructureConstants> {
    let n = u.n();
    if v.n() != n {
        return Err(Error::SizeMismatch(n, v.n()));
    }
    let prod = &ortho_schubert(u)? * &ortho_schubert(v)?;
    let exp = expand_in_d_basis(&prod, n)?;
    let system = length_system(n, u.length() + v.length())?;
    let sector = exp.schubert_sector();
    let sol = system.echelon.solve(&sector).ok_or_else(|| {
        Error::Consistency(format!(
            "Schubert sector of D_{u} D_{v} is not a combination of D_w"
        ))
    })?;
    let mut schubert = BTreeMap::new();
    for (j, c) in sol {
        if !c.is_integer() || c.is_negative() {
            return Err(Error::Consistency(format!(
                "Schubert structure constant {c} for {} is not a nonnegative integer",
                system.elements[j]
            )));
        }
        schubert.insert(system.elements[j].clone(), c);
    }
    Ok(StructureConstants {
        n,
        u: u.clone(),
        v: v.clone(),
        schubert,
        ideal: exp.ideal_sector(),
    })
}

/// `f = sum_w a_w D_w + h` with `h` in `J_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchubertSplit {
    pub schubert: BTreeMap<SignedPermutation, Rational>,
    pub ideal: Polynomial,
}

/// Solves the Schubert sector of `f` degree by degree against the `D_w`.
pub fn split_schubert(f: &Polynomial, n: usize) -> Result<SchubertSplit> {
    let exp = expand_in_d_basis(f, n)?;
    let mut by_degree: BTreeMap<usize, SparseVec<DBasisIndex>> = BTreeMap::new();
    for (k, c) in exp.schubert_sector() {
        by_degree.entry(k.degree()).or_default().insert(k, c);
    }
    let mut schubert = BTreeMap::new();
    let mut rest = f.clone();
    for (d, sector) in by_degree {
        let system = length_system(n, d)?;
        let sol = system.echelon.solve(&sector).ok_or_else(|| {
            Error::Consistency(format!("degree {d} Schubert sector is not a combination of D_w"))
        })?;
        for (j, c) in sol {
            let w = &system.elements[j];
            rest = &rest - &ortho_schubert(w)?.scale(&c);
            schubert.insert(w.clone(), c);
        }
    }
    if !expand_in_d_basis(&rest, n)?.schubert_sector().is_empty() {
        return Err(Error::Consistency("Schubert split left an F-sector residue".into()));
    }
    Ok(SchubertSplit {
        schubert,
        ideal: rest,
    })
}

/// `D_{i(w)}(X_n)` with `x_{m+1} = ... = x_n = 0`, for `w` in `W~_m`.
pub fn restrict(w: &SignedPermutation, n: usize) -> Result<Polynomial> {
    let m = w.n();
    if n < m {
        return Err(Error::SizeMismatch(m, n));
    }
    let mut e = w.entries().to_vec();
    e.extend(m as i32 + 1..=n as i32);
    let big = SignedPermutation::new(e)?;
    Ok(ortho_schubert(&big)?.truncate_vars(m))
}

/// Outcome of comparing `d_pi D_w` with `(-1)^{l(pi)} D_{w pi^{-1}}` (or 0).
///
/// `d_pi` applies the last letter of the word of `pi` first, so the
/// surviving index is `w pi^{-1}`. For involutions this is `w pi`.
#[derive(Clone, Debug)]
pub struct DividedDifferenceCheck {
    pub lhs: Polynomial,
    pub expected: Polynomial,
    pub holds: bool,
}

pub fn divided_difference_property(w: &SignedPermutation, pi: &PermutationA) -> Result<DividedDifferenceCheck> {
    let n = w.n();
    if pi.n() != n {
        return Err(Error::SizeMismatch(n, pi.n()));
    }
    let lhs = ortho_schubert(w)?.divided_difference_word(&pi.canonical_reduced_word())?;
    let wpi = w.compose(&pi.inverse().to_signed())?;
    let expected = if wpi.length() + pi.length() == w.length() {
        ortho_schubert(&wpi)?.scale(&Rational::sign_power(pi.length()))
    } else {
        Polynomial::zero(n)
    };
    let holds = lhs == expected;
    Ok(DividedDifferenceCheck {
        lhs,
        expected,
        holds,
    })
}

/// `P~_{(n-1, ..., 1)}(X_n) S_{w0}(-X_n)`, a representative of the point
/// class.
pub fn top_class(n: usize) -> Polynomial {
    let rho = Partition::new((1..n).rev().collect()).expect("staircase");
    &ptilde_x(&rho, n) * &schubert_a(&longest_element_a(n)).negate_vars()
}

/// The Schubert sector of `d_{w^{-1} w0}` applied to [`top_class`]. This
/// route uses only divided differences and never consults tableaux.
pub fn bgg_schubert_sector(w: &SignedPermutation) -> Result<SparseVec<DBasisIndex>> {
    let n = w.n();
    let v = w.inverse().compose(&longest_element(n))?;
    let rep = top_class(n).divided_difference_word_unchecked(&v.canonical_reduced_word())?;
    Ok(expand_in_d_basis(&rep, n)?.schubert_sector())
}
