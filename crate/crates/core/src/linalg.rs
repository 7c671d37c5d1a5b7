//! Exact sparse linear algebra over ℚ.
//!
//! Vectors are sparse maps from coordinate to nonzero rational. Elimination
//! always pivots on the lowest nonzero coordinate, so when coordinates are
//! ordered by degree the pivot of a reduced vector is its leading degree.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::rational::Rational;

pub type SparseVec = BTreeMap<usize, Rational>;

pub fn sparse(dense: &[Rational]) -> SparseVec {
    dense.iter().enumerate().filter(|(_, q)| !q.is_zero()).map(|(i, q)| (i, q.clone())).collect()
}

pub fn dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = alloc::vec![Rational::zero(); len];
    for (&i, q) in v {
        out[i] = q.clone();
    }
    out
}

/// `v += factor · w`.
pub fn axpy(v: &mut SparseVec, factor: &Rational, w: &SparseVec) {
    if factor.is_zero() {
        return;
    }
    for (&i, q) in w {
        let slot = v.entry(i).or_insert_with(Rational::zero);
        *slot += factor * q;
        if slot.is_zero() {
            v.remove(&i);
        }
    }
}

pub fn scale(v: &SparseVec, factor: &Rational) -> SparseVec {
    if factor.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(&i, q)| (i, q * factor)).collect()
}

#[derive(Debug, Clone)]
struct Row {
    vector: SparseVec,
    /// Combination of inserted vectors producing `vector`.
    combo: SparseVec,
}

/// Incremental row echelon form with optional tracking of how each row was
/// built from the inserted vectors.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Row>,
    inserted: usize,
}

/// What happened to a vector passed to [`Echelon::insert`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insert {
    /// Independent; the new row has this pivot.
    Pivot(usize),
    /// Dependent: this combination of inserted vectors (including the one
    /// just inserted) is zero.
    Relation(SparseVec),
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot).map(|r| &r.vector)
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values().map(|r| &r.vector)
    }

    /// Reduces `v` against the rows, returning the residual and the
    /// combination of rows' inserted vectors that was subtracted.
    fn reduce_tracked(&self, mut v: SparseVec, mut combo: SparseVec) -> (SparseVec, SparseVec) {
        let mut cursor = 0usize;
        loop {
            let hit = v.range(cursor..).find(|(i, _)| self.rows.contains_key(i)).map(|(&i, q)| (i, q.clone()));
            let Some((i, q)) = hit else { break };
            let row = &self.rows[&i];
            let factor = -(q / &row.vector[&i]);
            axpy(&mut v, &factor, &row.vector);
            axpy(&mut combo, &factor, &row.combo);
            cursor = i + 1;
        }
        (v, combo)
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.reduce_tracked(v.clone(), SparseVec::new()).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v` as inserted vector number `self.inserted()`.
    pub fn insert(&mut self, v: SparseVec) -> Insert {
        let id = self.inserted;
        self.inserted += 1;
        let mut start = SparseVec::new();
        start.insert(id, Rational::from_integer(1.into()));
        let (residual, combo) = self.reduce_tracked(v, start);
        match residual.keys().next().copied() {
            None => Insert::Relation(combo),
            Some(p) => {
                self.rows.insert(p, Row { vector: residual, combo });
                Insert::Pivot(p)
            }
        }
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Writes `v` as a combination of inserted vectors, if it lies in their span.
    pub fn express(&self, v: &SparseVec) -> Option<SparseVec> {
        let (residual, combo) = self.reduce_tracked(v.clone(), SparseVec::new());
        residual.is_empty().then(|| scale(&combo, &Rational::from_integer((-1).into())))
    }
}

/// Kernel basis of the map sending basis vector `j` to `columns[j]`.
pub fn kernel(columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    let mut out = Vec::new();
    for c in columns {
        if let Insert::Relation(r) = e.insert(c.clone()) {
            out.push(r);
        }
    }
    out
}

pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v.clone());
    }
    e.rank()
}

/// Some `x` with `Σ x_j columns[j] = b`.
pub fn solve(columns: &[SparseVec], b: &SparseVec) -> Option<SparseVec> {
    let mut e = Echelon::new();
    for c in columns {
        e.insert(c.clone());
    }
    e.express(b)
}

/// Applies the linear map given by `columns` to `x`.
pub fn apply(columns: &[SparseVec], x: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (&j, q) in x {
        axpy(&mut out, q, &columns[j]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn v(d: &[i64]) -> SparseVec {
        sparse(&d.iter().map(|&x| int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_and_rank() {
        let cols = [v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1]), v(&[1, 3, 4])];
        assert_eq!(rank(&cols), 2);
        let k = kernel(&cols);
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(apply(&cols, x).is_empty());
        }
    }

    #[test]
    fn solving() {
        let cols = [v(&[2, 0]), v(&[1, 3])];
        let x = solve(&cols, &v(&[1, 1])).unwrap();
        assert_eq!(apply(&cols, &x), v(&[1, 1]));
        assert_eq!(x[&0], frac(1, 3));
        assert!(solve(&[v(&[1, 1])], &v(&[1, 0])).is_none());
        assert_eq!(solve(&cols, &SparseVec::new()), Some(SparseVec::new()));
    }

    #[test]
    fn pivots_are_leading_coordinates() {
        let mut e = Echelon::new();
        assert_eq!(e.insert(v(&[0, 0, 1, 1])), Insert::Pivot(2));
        assert_eq!(e.insert(v(&[0, 1, 5, 0])), Insert::Pivot(1));
        assert_eq!(e.insert(v(&[0, 0, 2, 1])), Insert::Pivot(3));
        assert!(matches!(e.insert(v(&[0, 3, 20, 3])), Insert::Relation(_)));
        assert_eq!(e.pivots().collect::<Vec<_>>(), [1, 2, 3]);
    }
}
