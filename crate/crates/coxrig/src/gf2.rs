//! Symbolic abelianization of a Coxeter system over the two-element field.
//!
//! The abelianization of a Coxeter group is an elementary abelian 2-group
//! whose rank equals the number of connected components of the odd graph
//! (edges wherever `m(s,t)` is finite and odd). The abelianization map
//! sends each generator to the indicator of its component, so the image of
//! a standard parabolic subgroup is the span of those indicators: a
//! subspace of `F_2^k`. This module keeps that picture entirely symbolic;
//! the concrete counterpart through coset enumeration lives in the group
//! engine and is used for cross-checks.

use thiserror::Error;

use crate::matrix::{CoxeterMatrix, GeneratorSubset};

/// Connected components of the odd graph, identified by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddComponents {
    /// Component id of each generator; ids are assigned in order of the
    /// component's smallest member, so they are deterministic.
    pub component_of: Vec<usize>,
    /// Number of components `k`; the abelianization is `F_2^k`.
    pub count: usize,
}

impl OddComponents {
    /// Members of each component, sorted, indexed by component id.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); self.count];
        for (v, &c) in self.component_of.iter().enumerate() {
            parts[c].push(v);
        }
        parts
    }
}

/// Union-find over the odd edges.
pub fn odd_components(matrix: &CoxeterMatrix) -> OddComponents {
    let rank = matrix.rank();
    let mut parent: Vec<usize> = (0..rank).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, j, label) in matrix.pairs() {
        if label.is_odd() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                // Root at the smaller index so ids come out by smallest member.
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut component_of = vec![usize::MAX; rank];
    let mut count = 0;
    for v in 0..rank {
        let root = find(&mut parent, v);
        if component_of[root] == usize::MAX {
            component_of[root] = count;
            count += 1;
        }
        component_of[v] = component_of[root];
    }
    OddComponents { component_of, count }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
}

/// Subspace of `F_2^k` in fully reduced row echelon form: rows nonzero,
/// pivot columns strictly increasing, each pivot the only 1 in its column.
/// Equal subspaces have identical representations, so equality is
/// structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Subspace {
    ambient_dim: usize,
    basis: Vec<u64>,
}

/// Reduce rows in place to the canonical fully reduced echelon basis.
fn rref(rows: &mut Vec<u64>, dim: usize) {
    let mut rank = 0;
    for col in 0..dim {
        let bit = 1u64 << col;
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && *row & bit != 0 {
                *row ^= pivot_row;
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
}

impl Gf2Subspace {
    /// Span of the given coordinate vectors (bit `i` = coordinate `i`).
    pub fn from_spanning(ambient_dim: usize, vectors: impl IntoIterator<Item = u64>) -> Self {
        assert!(ambient_dim <= 64, "ambient dimension limited to 64");
        let mask = if ambient_dim == 64 { u64::MAX } else { (1u64 << ambient_dim) - 1 };
        let mut rows: Vec<u64> = vectors.into_iter().map(|v| v & mask).collect();
        rref(&mut rows, ambient_dim);
        Gf2Subspace { ambient_dim, basis: rows }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Gf2Subspace::from_spanning(ambient_dim, [])
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Canonical reduced basis rows.
    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Membership: the vector reduces to zero against the basis.
    pub fn contains(&self, mut v: u64) -> bool {
        for &row in &self.basis {
            let pivot = row & row.wrapping_neg(); // lowest set bit
            if v & pivot != 0 {
                v ^= row;
            }
        }
        v == 0
    }

    pub fn is_subspace_of(&self, other: &Gf2Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|&row| other.contains(row))
    }

    /// Intersection by the standard stacked-basis construction: reduce rows
    /// `(u | u)` for `u` in `self` and `(v | 0)` for `v` in `other`; rows
    /// whose left block vanishes carry a basis of the intersection in the
    /// right block.
    pub fn intersection(&self, other: &Gf2Subspace) -> Result<Gf2Subspace, Gf2Error> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Gf2Error::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        let dim = self.ambient_dim;
        let mut rows: Vec<u128> = Vec::with_capacity(self.dim() + other.dim());
        for &u in &self.basis {
            rows.push((u as u128) | ((u as u128) << dim));
        }
        for &v in &other.basis {
            rows.push(v as u128);
        }
        // Eliminate on the left block (low bits) first.
        let mut rank = 0;
        for col in 0..dim {
            let bit = 1u128 << col;
            if let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) {
                rows.swap(rank, pivot);
                let pivot_row = rows[rank];
                for (r, row) in rows.iter_mut().enumerate() {
                    if r != rank && *row & bit != 0 {
                        *row ^= pivot_row;
                    }
                }
                rank += 1;
            }
        }
        let vectors = rows[rank..].iter().map(|&row| (row >> dim) as u64);
        Ok(Gf2Subspace::from_spanning(dim, vectors.collect::<Vec<_>>()))
    }
}

/// Dimension accessor matching the subspace algebra naming.
pub fn subspace_dim(space: &Gf2Subspace) -> usize {
    space.dim()
}

/// Structural equality of canonical bases; subspaces of different ambient
/// dimensions are never equal.
pub fn subspace_equal(a: &Gf2Subspace, b: &Gf2Subspace) -> bool {
    a == b
}

pub fn subspace_intersection(a: &Gf2Subspace, b: &Gf2Subspace) -> Result<Gf2Subspace, Gf2Error> {
    a.intersection(b)
}

/// Image of the standard parabolic subgroup on `subset` under the
/// abelianization map: the span of the component indicators of its
/// generators.
pub fn pi_image(matrix: &CoxeterMatrix, subset: &GeneratorSubset) -> Gf2Subspace {
    let oc = odd_components(matrix);
    pi_image_with(&oc, subset)
}

/// Same as [`pi_image`] with a precomputed component structure.
pub fn pi_image_with(components: &OddComponents, subset: &GeneratorSubset) -> Gf2Subspace {
    let vectors: Vec<u64> = subset.iter().map(|i| 1u64 << components.component_of[i]).collect();
    Gf2Subspace::from_spanning(components.count, vectors)
}

/// Distinct subsets of the core have distinct abelianized parabolic
/// images exactly when the core meets every odd component at most once;
/// that injectivity is what this checks.
pub fn pi_separates_core_subsets(matrix: &CoxeterMatrix, s_bar: &GeneratorSubset) -> bool {
    let oc = odd_components(matrix);
    let mut seen = vec![false; oc.count];
    for i in s_bar.iter() {
        let c = oc.component_of[i];
        if seen[c] {
            return false;
        }
        seen[c] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Label;
    use crate::preset::preset;

    fn rank3_example() -> CoxeterMatrix {
        CoxeterMatrix::from_pairs(3, &[(0, 1, Label::Finite(5)), (0, 2, Label::Finite(4))]).unwrap()
    }

    #[test]
    fn components_of_examples() {
        let oc = odd_components(&rank3_example());
        assert_eq!(oc.count, 2);
        assert_eq!(oc.component_of, vec![0, 0, 1]);
        assert_eq!(oc.partition(), vec![vec![0, 1], vec![2]]);

        let strong = preset("B2").unwrap();
        let oc = odd_components(&strong);
        assert_eq!(oc.count, 2);

        let a3 = preset("A3").unwrap();
        assert_eq!(odd_components(&a3).count, 1);
    }

    #[test]
    fn pi_images() {
        let m = rank3_example();
        assert_eq!(pi_image(&m, &GeneratorSubset::empty()), Gf2Subspace::zero(2));
        let img0 = pi_image(&m, &GeneratorSubset::singleton(0));
        let img1 = pi_image(&m, &GeneratorSubset::singleton(1));
        // Generators 1 and 2 share the odd component, so their images agree;
        // generator 2 is outside the core, so this does not contradict the
        // injectivity statement on the core.
        assert_eq!(img0, img1);
        assert_eq!(img0.dim(), 1);
        let full = pi_image(&m, &GeneratorSubset::new(vec![0, 2]));
        assert_eq!(full.dim(), 2);
    }

    #[test]
    fn rref_is_canonical() {
        let a = Gf2Subspace::from_spanning(2, [0b01, 0b10]);
        let b = Gf2Subspace::from_spanning(2, [0b10, 0b11]);
        assert!(subspace_equal(&a, &b));
        assert_eq!(a.basis(), &[0b01, 0b10]);
    }

    #[test]
    fn intersections() {
        let e1 = Gf2Subspace::from_spanning(2, [0b01]);
        let e2 = Gf2Subspace::from_spanning(2, [0b10]);
        assert_eq!(e1.intersection(&e2).unwrap(), Gf2Subspace::zero(2));

        let whole = Gf2Subspace::from_spanning(2, [0b01, 0b10]);
        let same = Gf2Subspace::from_spanning(2, [0b10, 0b11]);
        assert_eq!(whole.intersection(&same).unwrap(), whole);

        // Brute force over all subspaces of F_2^3 against membership.
        let dim = 3;
        let spaces: Vec<Gf2Subspace> = (0..8u64)
            .flat_map(|a| (0..8u64).map(move |b| (a, b)))
            .map(|(a, b)| Gf2Subspace::from_spanning(dim, [a, b]))
            .collect();
        for x in &spaces {
            for y in &spaces {
                let meet = x.intersection(y).unwrap();
                for v in 0..8u64 {
                    assert_eq!(meet.contains(v), x.contains(v) && y.contains(v));
                }
            }
        }

        let short = Gf2Subspace::zero(2);
        let long = Gf2Subspace::zero(3);
        assert!(matches!(
            short.intersection(&long),
            Err(Gf2Error::AmbientMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn monotone_on_nested_subsets() {
        let m = rank3_example();
        let small = pi_image(&m, &GeneratorSubset::singleton(0));
        let large = pi_image(&m, &GeneratorSubset::new(vec![0, 2]));
        assert!(small.is_subspace_of(&large));
    }

    #[test]
    fn core_injectivity() {
        let m = rank3_example();
        assert!(pi_separates_core_subsets(&m, &GeneratorSubset::new(vec![0, 2])));
        // Generators 0 and 1 share a component.
        assert!(!pi_separates_core_subsets(&m, &GeneratorSubset::new(vec![0, 1])));
        let strong = preset("B2").unwrap();
        assert!(pi_separates_core_subsets(&strong, &GeneratorSubset::full(2)));
    }
}
