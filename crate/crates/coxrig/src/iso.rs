//! Label-preserving bijections between Coxeter matrices.
//!
//! Backtracking over vertices ordered by a cheap refinement key; at the
//! ranks this crate targets nothing smarter is needed. The search order is
//! fixed, so the returned bijection is deterministic.

use crate::matrix::{CoxeterMatrix, Label};

/// Bijection between the generator index sets of two matrices with
/// `m(s,t) = m'(map(s), map(t))` for every pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramBijection {
    map: Vec<usize>,
}

impl DiagramBijection {
    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn rank(&self) -> usize {
        self.map.len()
    }

    /// Entrywise check that the bijection preserves all labels, including
    /// infinite ones.
    pub fn preserves_labels(&self, from: &CoxeterMatrix, to: &CoxeterMatrix) -> bool {
        from.rank() == to.rank()
            && self.map.len() == from.rank()
            && (0..from.rank()).all(|i| {
                (0..from.rank()).all(|j| from.entry(i, j) == to.entry(self.map[i], self.map[j]))
            })
    }

    /// Build from an explicit image list; returns `None` if it is not a
    /// permutation.
    pub fn from_map(map: Vec<usize>) -> Option<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(DiagramBijection { map })
    }
}

/// Per-vertex refinement key: degree in the graph drawn with edges for
/// `m >= 3` (infinity included), sorted multiset of incident finite labels,
/// and the count of incident infinite entries.
fn vertex_key(m: &CoxeterMatrix, v: usize) -> VertexKey {
    let mut degree = 0;
    let mut finite_labels = Vec::new();
    let mut infinities = 0;
    for u in 0..m.rank() {
        if u == v {
            continue;
        }
        match m.entry(v, u) {
            Label::Finite(2) => {}
            Label::Finite(l) => {
                degree += 1;
                finite_labels.push(l);
            }
            Label::Infinite => {
                degree += 1;
                infinities += 1;
            }
        }
    }
    finite_labels.sort_unstable();
    (degree, finite_labels, infinities)
}

/// First label-preserving bijection in the documented search order, or
/// `None` when the matrices are not isomorphic as labeled diagrams.
pub fn diagram_isomorphic(m1: &CoxeterMatrix, m2: &CoxeterMatrix) -> Option<DiagramBijection> {
    let rank = m1.rank();
    if rank != m2.rank() {
        return None;
    }
    if m1.label_multiset() != m2.label_multiset() {
        return None;
    }
    let keys1: Vec<_> = (0..rank).map(|v| vertex_key(m1, v)).collect();
    let keys2: Vec<_> = (0..rank).map(|v| vertex_key(m2, v)).collect();
    {
        let mut k1 = keys1.clone();
        let mut k2 = keys2.clone();
        k1.sort();
        k2.sort();
        if k1 != k2 {
            return None;
        }
    }

    // Assign the most constrained vertices first: descending key, ties by
    // index.
    let mut order: Vec<usize> = (0..rank).collect();
    order.sort_by(|&a, &b| keys1[b].cmp(&keys1[a]).then(a.cmp(&b)));

    let search = Search { m1, m2, keys1: &keys1, keys2: &keys2, order: &order };
    let mut image = vec![usize::MAX; rank];
    let mut used = vec![false; rank];
    if search.backtrack(0, &mut image, &mut used) {
        Some(DiagramBijection { map: image })
    } else {
        None
    }
}

type VertexKey = (usize, Vec<u32>, usize);

struct Search<'a> {
    m1: &'a CoxeterMatrix,
    m2: &'a CoxeterMatrix,
    keys1: &'a [VertexKey],
    keys2: &'a [VertexKey],
    order: &'a [usize],
}

impl Search<'_> {
    fn backtrack(&self, pos: usize, image: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let v = self.order[pos];
        for w in 0..self.m2.rank() {
            if used[w] || self.keys1[v] != self.keys2[w] {
                continue;
            }
            let consistent = self.order[..pos]
                .iter()
                .all(|&p| self.m1.entry(v, p) == self.m2.entry(w, image[p]));
            if !consistent {
                continue;
            }
            image[v] = w;
            used[w] = true;
            if self.backtrack(pos + 1, image, used) {
                return true;
            }
            image[v] = usize::MAX;
            used[w] = false;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preset::preset;

    fn relabel(m: &CoxeterMatrix, perm: &[usize]) -> CoxeterMatrix {
        CoxeterMatrix::from_fn(m.rank(), |i, j| m.entry(perm[i], perm[j]))
    }

    #[test]
    fn rank_mismatch_is_not_isomorphic() {
        let i26 = preset("I2(6)").unwrap();
        let a1a2 = preset("A1").unwrap().direct_sum(&preset("A2").unwrap());
        assert!(diagram_isomorphic(&i26, &a1a2).is_none());
    }

    #[test]
    fn label_mismatch_is_not_isomorphic() {
        let a = preset("I2(4)").unwrap();
        let b = preset("I2(5)").unwrap();
        assert!(diagram_isomorphic(&a, &b).is_none());
    }

    #[test]
    fn relabeled_copies_are_isomorphic() {
        let m = preset("A1").unwrap().direct_sum(&preset("A2").unwrap());
        let shuffled = relabel(&m, &[2, 0, 1]);
        let bij = diagram_isomorphic(&m, &shuffled).expect("isomorphic");
        assert!(bij.preserves_labels(&m, &shuffled));

        let f4 = preset("F4").unwrap();
        let shuffled = relabel(&f4, &[3, 1, 0, 2]);
        let bij = diagram_isomorphic(&f4, &shuffled).expect("isomorphic");
        assert!(bij.preserves_labels(&f4, &shuffled));
    }

    #[test]
    fn identity_on_self() {
        for name in ["A3", "B3", "D4", "I2(7)"] {
            let m = preset(name).unwrap();
            let bij = diagram_isomorphic(&m, &m).expect("self-isomorphic");
            assert!(bij.preserves_labels(&m, &m));
        }
    }

    #[test]
    fn infinite_labels_must_match() {
        let mut pairs = vec![(0usize, 1usize, Label::Finite(3))];
        let a = CoxeterMatrix::from_pairs(3, &pairs).unwrap();
        pairs.push((1, 2, Label::Finite(3)));
        let b = CoxeterMatrix::from_pairs(3, &pairs).unwrap();
        assert!(diagram_isomorphic(&a, &b).is_none());
    }

    #[test]
    fn deterministic_output() {
        let m = preset("A1")
            .unwrap()
            .direct_sum(&preset("A1").unwrap())
            .direct_sum(&preset("A1").unwrap());
        let first = diagram_isomorphic(&m, &m).unwrap();
        let second = diagram_isomorphic(&m, &m).unwrap();
        assert_eq!(first, second);
    }

    #[test]
    fn direct_sum_associates_up_to_relabeling() {
        let a = preset("A2").unwrap();
        let b = preset("B2").unwrap();
        let c = preset("I2(5)").unwrap();
        let left = a.direct_sum(&b).direct_sum(&c);
        let right = a.direct_sum(&b.direct_sum(&c));
        let bij = diagram_isomorphic(&left, &right).expect("isomorphic");
        assert!(bij.preserves_labels(&left, &right));
    }
}
