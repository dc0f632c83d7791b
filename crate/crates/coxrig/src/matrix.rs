//! Coxeter matrices and generator subsets.
//!
//! A Coxeter matrix is the symmetric table of pairwise product orders
//! `m(s,t)` over a finite generating set. It is the single source of truth
//! for a Coxeter system in this crate: every other module (finite-type
//! recognition, class checking, coset enumeration, the rigidity oracle)
//! consumes these values.

use std::fmt;

use thiserror::Error;

/// Off-diagonal entry of a Coxeter matrix: the order of the product of two
/// distinct generators, either a finite integer `>= 2` or infinity (no
/// relation between the pair).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    /// True for finite odd entries (`3, 5, 7, ...`).
    pub fn is_odd(self) -> bool {
        matches!(self, Label::Finite(m) if m % 2 == 1 && m > 1)
    }

    /// True for finite even entries; infinity is neither even nor odd.
    pub fn is_even(self) -> bool {
        matches!(self, Label::Finite(m) if m % 2 == 0)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Label::Finite(_))
    }

    pub fn finite_value(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinite => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => write!(f, "inf"),
        }
    }
}

/// Error building a matrix from raw pair data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("diagonal entry ({0},{0}) cannot be assigned")]
    DiagonalAssignment(usize),
    #[error("entry ({i},{j}) assigned conflicting values {first} and {second}")]
    ConflictingEntry { i: usize, j: usize, first: Label, second: Label },
    #[error("entry ({i},{j}) has value {value} < 2")]
    ValueTooSmall { i: usize, j: usize, value: u32 },
    #[error("expected {rank} generator names, got {count}")]
    NameCount { rank: usize, count: usize },
    #[error("duplicate generator name {0:?}")]
    DuplicateName(String),
}

/// Symmetric table of pairwise product orders over `rank` generators,
/// with `m(s,s) = 1` on the diagonal and entries `>= 2` or infinite
/// elsewhere. Immutable once built.
///
/// Generators are 0-indexed here; the file format is 1-indexed and the
/// parser/serializer convert.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    rank: usize,
    names: Option<Vec<String>>,
    /// Row-major `rank * rank` table; diagonal is `Finite(1)`.
    entries: Vec<Label>,
}

impl CoxeterMatrix {
    /// Matrix with every off-diagonal entry infinite (the universal Coxeter
    /// system of the given rank).
    pub fn all_infinite(rank: usize) -> Self {
        assert!(rank >= 1, "rank must be at least 1");
        let mut entries = vec![Label::Infinite; rank * rank];
        for i in 0..rank {
            entries[i * rank + i] = Label::Finite(1);
        }
        CoxeterMatrix { rank, names: None, entries }
    }

    /// Build from a list of off-diagonal assignments `(i, j, label)`.
    /// Unassigned pairs stay infinite. Duplicate assignments with equal
    /// values are accepted; conflicting values are an error.
    pub fn from_pairs(rank: usize, pairs: &[(usize, usize, Label)]) -> Result<Self, MatrixError> {
        if rank == 0 {
            return Err(MatrixError::ZeroRank);
        }
        let mut m = CoxeterMatrix::all_infinite(rank);
        let mut assigned = vec![false; rank * rank];
        for &(i, j, label) in pairs {
            if i >= rank {
                return Err(MatrixError::IndexOutOfRange { index: i, rank });
            }
            if j >= rank {
                return Err(MatrixError::IndexOutOfRange { index: j, rank });
            }
            if i == j {
                return Err(MatrixError::DiagonalAssignment(i));
            }
            if let Label::Finite(v) = label {
                if v < 2 {
                    return Err(MatrixError::ValueTooSmall { i, j, value: v });
                }
            }
            let (a, b) = (i.min(j), i.max(j));
            let slot = a * rank + b;
            if assigned[slot] && m.entries[slot] != label {
                return Err(MatrixError::ConflictingEntry {
                    i: a,
                    j: b,
                    first: m.entries[slot],
                    second: label,
                });
            }
            assigned[slot] = true;
            m.entries[slot] = label;
            m.entries[b * rank + a] = label;
        }
        Ok(m)
    }

    /// Build from an entry function over ordered pairs `i < j`.
    pub fn from_fn(rank: usize, mut f: impl FnMut(usize, usize) -> Label) -> Self {
        assert!(rank >= 1, "rank must be at least 1");
        let mut m = CoxeterMatrix::all_infinite(rank);
        for i in 0..rank {
            for j in (i + 1)..rank {
                let label = f(i, j);
                if let Label::Finite(v) = label {
                    assert!(v >= 2, "off-diagonal entry ({i},{j}) = {v} < 2");
                }
                m.entries[i * rank + j] = label;
                m.entries[j * rank + i] = label;
            }
        }
        m
    }

    /// Attach generator names. Count must equal the rank and names must be
    /// pairwise distinct.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, MatrixError> {
        if names.len() != self.rank {
            return Err(MatrixError::NameCount { rank: self.rank, count: names.len() });
        }
        for (k, name) in names.iter().enumerate() {
            if names[..k].contains(name) {
                return Err(MatrixError::DuplicateName(name.clone()));
            }
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Entry `m(i,j)`; the diagonal is `Finite(1)`.
    pub fn entry(&self, i: usize, j: usize) -> Label {
        assert!(i < self.rank && j < self.rank, "index out of range");
        self.entries[i * self.rank + j]
    }

    /// Ordered pairs `i < j` with their labels.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, Label)> + '_ {
        (0..self.rank)
            .flat_map(move |i| ((i + 1)..self.rank).map(move |j| (i, j, self.entry(i, j))))
    }

    /// Ordered pairs `i < j` with finite labels, in lexicographic order.
    pub fn finite_pairs(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.pairs().filter_map(|(i, j, l)| l.finite_value().map(|v| (i, j, v)))
    }

    /// Block sum: the two generator sets side by side, all cross entries 2
    /// (the factors commute). Names are dropped.
    pub fn direct_sum(&self, other: &CoxeterMatrix) -> CoxeterMatrix {
        let rank = self.rank + other.rank;
        CoxeterMatrix::from_fn(rank, |i, j| {
            if j < self.rank {
                self.entry(i, j)
            } else if i >= self.rank {
                other.entry(i - self.rank, j - self.rank)
            } else {
                Label::Finite(2)
            }
        })
    }

    /// Restriction of the table to a nonempty subset of the generators,
    /// preserving index order. Names restrict along.
    pub fn induced_submatrix(&self, subset: &GeneratorSubset) -> CoxeterMatrix {
        assert!(!subset.is_empty(), "induced submatrix requires a nonempty subset");
        let idx = subset.as_slice();
        for &i in idx {
            assert!(i < self.rank, "subset index {i} out of range");
        }
        let mut m = CoxeterMatrix::from_fn(idx.len(), |a, b| self.entry(idx[a], idx[b]));
        if let Some(names) = &self.names {
            m.names = Some(idx.iter().map(|&i| names[i].clone()).collect());
        }
        m
    }

    /// Multiset of off-diagonal labels, sorted. Cheap isomorphism invariant.
    pub fn label_multiset(&self) -> Vec<Label> {
        let mut labels: Vec<Label> = self.pairs().map(|(_, _, l)| l).collect();
        labels.sort();
        labels
    }
}

/// Sorted, duplicate-free set of generator indices into a Coxeter matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GeneratorSubset {
    indices: Vec<usize>,
}

impl GeneratorSubset {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        GeneratorSubset { indices }
    }

    pub fn empty() -> Self {
        GeneratorSubset { indices: Vec::new() }
    }

    /// The full set `{0, ..., rank-1}`.
    pub fn full(rank: usize) -> Self {
        GeneratorSubset { indices: (0..rank).collect() }
    }

    pub fn singleton(i: usize) -> Self {
        GeneratorSubset { indices: vec![i] }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    pub fn is_subset_of(&self, other: &GeneratorSubset) -> bool {
        self.indices.iter().all(|&i| other.contains(i))
    }

    pub fn union(&self, other: &GeneratorSubset) -> GeneratorSubset {
        let mut v = self.indices.clone();
        v.extend_from_slice(&other.indices);
        GeneratorSubset::new(v)
    }

    pub fn intersection(&self, other: &GeneratorSubset) -> GeneratorSubset {
        GeneratorSubset {
            indices: self.indices.iter().copied().filter(|&i| other.contains(i)).collect(),
        }
    }

    /// Set with one extra index.
    pub fn inserted(&self, i: usize) -> GeneratorSubset {
        let mut v = self.indices.clone();
        v.push(i);
        GeneratorSubset::new(v)
    }
}

impl FromIterator<usize> for GeneratorSubset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        GeneratorSubset::new(iter.into_iter().collect())
    }
}

impl fmt::Display for GeneratorSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_infinite_has_unit_diagonal() {
        let m = CoxeterMatrix::all_infinite(3);
        for i in 0..3 {
            assert_eq!(m.entry(i, i), Label::Finite(1));
            for j in 0..3 {
                if i != j {
                    assert_eq!(m.entry(i, j), Label::Infinite);
                }
            }
        }
    }

    #[test]
    fn from_pairs_is_symmetric() {
        let m = CoxeterMatrix::from_pairs(3, &[(0, 1, Label::Finite(5)), (2, 0, Label::Finite(4))])
            .unwrap();
        assert_eq!(m.entry(0, 1), Label::Finite(5));
        assert_eq!(m.entry(1, 0), Label::Finite(5));
        assert_eq!(m.entry(0, 2), Label::Finite(4));
        assert_eq!(m.entry(2, 0), Label::Finite(4));
        assert_eq!(m.entry(1, 2), Label::Infinite);
    }

    #[test]
    fn from_pairs_rejects_conflicts_and_small_values() {
        let conflict =
            CoxeterMatrix::from_pairs(2, &[(0, 1, Label::Finite(3)), (1, 0, Label::Finite(4))]);
        assert!(matches!(conflict, Err(MatrixError::ConflictingEntry { .. })));
        // Equal duplicates are fine.
        let dup =
            CoxeterMatrix::from_pairs(2, &[(0, 1, Label::Finite(3)), (1, 0, Label::Finite(3))]);
        assert!(dup.is_ok());
        let small = CoxeterMatrix::from_pairs(2, &[(0, 1, Label::Finite(1))]);
        assert!(matches!(small, Err(MatrixError::ValueTooSmall { .. })));
        let diag = CoxeterMatrix::from_pairs(2, &[(1, 1, Label::Finite(4))]);
        assert!(matches!(diag, Err(MatrixError::DiagonalAssignment(1))));
    }

    #[test]
    fn direct_sum_blocks_commute() {
        let a1 = CoxeterMatrix::all_infinite(1);
        let a2 = CoxeterMatrix::from_pairs(2, &[(0, 1, Label::Finite(3))]).unwrap();
        let s = a1.direct_sum(&a2);
        assert_eq!(s.rank(), 3);
        assert_eq!(s.entry(0, 1), Label::Finite(2));
        assert_eq!(s.entry(0, 2), Label::Finite(2));
        assert_eq!(s.entry(1, 2), Label::Finite(3));
    }

    #[test]
    fn induced_submatrix_restricts_entries() {
        let m = CoxeterMatrix::from_pairs(3, &[(0, 1, Label::Finite(5)), (0, 2, Label::Finite(4))])
            .unwrap();
        let sub = m.induced_submatrix(&GeneratorSubset::new(vec![0, 2]));
        assert_eq!(sub.rank(), 2);
        assert_eq!(sub.entry(0, 1), Label::Finite(4));
        let full = m.induced_submatrix(&GeneratorSubset::full(3));
        assert_eq!(full, m);
        let single = m.induced_submatrix(&GeneratorSubset::singleton(1));
        assert_eq!(single.rank(), 1);
    }

    #[test]
    fn subset_ops() {
        let a = GeneratorSubset::new(vec![2, 0, 2]);
        assert_eq!(a.as_slice(), &[0, 2]);
        let b = GeneratorSubset::new(vec![1, 2]);
        assert_eq!(a.union(&b).as_slice(), &[0, 1, 2]);
        assert_eq!(a.intersection(&b).as_slice(), &[2]);
        assert!(a.is_subset_of(&GeneratorSubset::full(3)));
        assert!(!b.is_subset_of(&a));
    }
}
