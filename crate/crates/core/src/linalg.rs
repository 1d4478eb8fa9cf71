//! Exact sparse elimination over the rationals.

use std::collections::BTreeMap;

use crate::rational::Rational;

pub type SparseVec<K> = BTreeMap<K, Rational>;

/// An echelon basis built incrementally. Each row is keyed by its largest
/// key (the pivot), normalized to 1 there, and remembers which combination
/// of inserted generators it equals.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, (SparseVec<K>, SparseVec<usize>)>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon {
            rows: BTreeMap::new(),
            inserted: 0,
        }
    }
}

/// Outcome of reducing a vector against the echelon rows.
#[derive(Clone, Debug)]
pub struct Reduction<K> {
    /// Coefficients on inserted generators (by insertion index).
    pub combination: SparseVec<usize>,
    /// What is left after subtracting that combination.
    pub residual: SparseVec<K>,
}

fn axpy<K: Ord + Clone>(y: &mut SparseVec<K>, a: &Rational, x: &SparseVec<K>) {
    for (k, v) in x {
        let e = y.entry(k.clone()).or_insert_with(Rational::zero);
        *e += &(a * v);
        if e.is_zero() {
            y.remove(k);
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of generators offered so far (independent or not).
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn reduce(&self, v: &SparseVec<K>) -> Reduction<K> {
        let mut residual = v.clone();
        let mut combination = SparseVec::new();
        let mut bound: Option<K> = None;
        loop {
            let next = {
                let mut it: Box<dyn Iterator<Item = (&K, &Rational)>> = match &bound {
                    None => Box::new(residual.iter().rev()),
                    Some(b) => Box::new(residual.range(..b.clone()).rev()),
                };
                it.find(|(k, _)| self.rows.contains_key(*k))
                    .map(|(k, c)| (k.clone(), c.clone()))
            };
            let Some((k, c)) = next else { break };
            let (row, combo) = &self.rows[&k];
            axpy(&mut residual, &-&c, row);
            axpy(&mut combination, &c, combo);
            bound = Some(k);
        }
        Reduction {
            combination,
            residual,
        }
    }

    /// Adds generator number `self.inserted()`. Returns false when it was
    /// dependent on earlier generators.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let red = self.reduce(v);
        let Some((pivot, lead)) = red
            .residual
            .iter()
            .next_back()
            .map(|(k, c)| (k.clone(), c.clone()))
        else {
            return false;
        };
        let inv = lead.recip();
        let row: SparseVec<K> = red
            .residual
            .into_iter()
            .map(|(k, c)| (k, &c * &inv))
            .collect();
        // row = (v - sum combination_j g_j) / lead
        let mut combo: SparseVec<usize> = SparseVec::new();
        combo.insert(idx, inv.clone());
        axpy(&mut combo, &-&inv, &red.combination);
        self.rows.insert(pivot, (row, combo));
        true
    }

    /// Coefficients `c` with `v = sum c_j g_j`, or `None` when `v` is not
    /// in the span.
    pub fn solve(&self, v: &SparseVec<K>) -> Option<SparseVec<usize>> {
        let red = self.reduce(v);
        if red.residual.is_empty() {
            Some(red.combination)
        } else {
            None
        }
    }
}

/// Rank of a dense matrix.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        let v: SparseVec<usize> = r
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        e.insert(&v);
    }
    e.rank()
}
