//! Recognition of finite (spherical) Coxeter systems and the families of
//! maximal spherical / maximal independent generator subsets.
//!
//! Finiteness is decided by shape-matching connected diagram components
//! against the classification of finite Coxeter groups, in exact integer
//! arithmetic. A component is the vertex set of a connected piece of the
//! graph with an edge wherever `m(s,t) >= 3` (including infinity); vertices
//! in different components commute, so the group is the direct product of
//! the component groups.

use num_bigint::BigUint;

use crate::matrix::{CoxeterMatrix, GeneratorSubset, Label};

/// Irreducible finite-type families, in canonical sort order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    D,
    E,
    F,
    H,
    I2,
}

impl Family {
    pub fn letter(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::H => "H",
            Family::I2 => "I2",
        }
    }
}

/// Classified irreducible finite type. `I2(3)` and `I2(4)` normalize to
/// `A2` and `B2` on construction, so every type has one canonical label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteTypeLabel {
    pub family: Family,
    /// Rank for A/B/D/E/F/H; the dihedral parameter m for I2.
    pub parameter: u32,
}

impl FiniteTypeLabel {
    fn new(family: Family, parameter: u32) -> Self {
        match (family, parameter) {
            (Family::I2, 3) => FiniteTypeLabel { family: Family::A, parameter: 2 },
            (Family::I2, 4) => FiniteTypeLabel { family: Family::B, parameter: 2 },
            _ => FiniteTypeLabel { family, parameter },
        }
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        match self.family {
            Family::I2 => 2,
            _ => self.parameter as usize,
        }
    }

    /// Exact group order from the family formula.
    pub fn order(&self) -> BigUint {
        fn factorial(n: u32) -> BigUint {
            (1..=n).map(BigUint::from).product::<BigUint>().max(BigUint::from(1u32))
        }
        let two = BigUint::from(2u32);
        match self.family {
            Family::A => factorial(self.parameter + 1),
            Family::B => two.pow(self.parameter) * factorial(self.parameter),
            Family::D => two.pow(self.parameter - 1) * factorial(self.parameter),
            Family::E => BigUint::from(match self.parameter {
                6 => 51_840u64,
                7 => 2_903_040u64,
                8 => 696_729_600u64,
                _ => unreachable!("E parameter is 6, 7, or 8"),
            }),
            Family::F => BigUint::from(1152u32),
            Family::H => BigUint::from(match self.parameter {
                3 => 120u64,
                4 => 14_400u64,
                _ => unreachable!("H parameter is 3 or 4"),
            }),
            Family::I2 => BigUint::from(2 * u64::from(self.parameter)),
        }
    }
}

impl std::fmt::Display for FiniteTypeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.family {
            Family::I2 => write!(f, "I2({})", self.parameter),
            _ => write!(f, "{}{}", self.family.letter(), self.parameter),
        }
    }
}

/// Group order: a finite exact integer or infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(BigUint),
    Infinite,
}

impl GroupOrder {
    pub fn is_finite(&self) -> bool {
        matches!(self, GroupOrder::Finite(_))
    }

    /// Finite order as `usize` when it fits.
    pub fn as_usize(&self) -> Option<usize> {
        match self {
            GroupOrder::Finite(n) => usize::try_from(n).ok(),
            GroupOrder::Infinite => None,
        }
    }
}

impl std::fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => write!(f, "inf"),
        }
    }
}

/// Connected components of the diagram (edges wherever `m >= 3` or
/// infinite), each as a sorted vertex list, ordered by smallest member.
fn diagram_components(matrix: &CoxeterMatrix) -> Vec<Vec<usize>> {
    let rank = matrix.rank();
    let mut component = vec![usize::MAX; rank];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..rank {
        if component[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        component[start] = id;
        while let Some(v) = stack.pop() {
            members.push(v);
            for (u, slot) in component.iter_mut().enumerate() {
                if u != v && *slot == usize::MAX && matrix.entry(v, u) != Label::Finite(2) {
                    *slot = id;
                    stack.push(u);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    comps
}

/// Classify one connected component, or `None` if it is not finite-type.
fn classify_component(matrix: &CoxeterMatrix, vertices: &[usize]) -> Option<FiniteTypeLabel> {
    let n = vertices.len();
    if n == 1 {
        return Some(FiniteTypeLabel::new(Family::A, 1));
    }
    // Collect internal edges; any infinite edge rules the component out.
    let mut edges: Vec<(usize, usize, u32)> = Vec::new();
    for (a, &va) in vertices.iter().enumerate() {
        for (b, &vb) in vertices.iter().enumerate().skip(a + 1) {
            match matrix.entry(va, vb) {
                Label::Finite(2) => {}
                Label::Finite(m) => edges.push((a, b, m)),
                Label::Infinite => return None,
            }
        }
    }
    if n == 2 {
        let (_, _, m) = edges[0];
        return Some(FiniteTypeLabel::new(Family::I2, m));
    }
    // Every finite-type diagram is a tree.
    if edges.len() != n - 1 {
        return None;
    }
    let mut degree = vec![0usize; n];
    let mut adj = vec![Vec::new(); n];
    for &(a, b, m) in &edges {
        degree[a] += 1;
        degree[b] += 1;
        adj[a].push((b, m));
        adj[b].push((a, m));
    }
    if degree.iter().any(|&d| d >= 4) {
        return None;
    }
    let branches: Vec<usize> = (0..n).filter(|&v| degree[v] == 3).collect();
    match branches.len() {
        0 => classify_path(n, &adj, &degree),
        1 => classify_branched(n, &adj, branches[0]),
        _ => None,
    }
}

/// Path-shaped component: A, B, F4, H3, H4, or nothing.
fn classify_path(n: usize, adj: &[Vec<(usize, u32)>], degree: &[usize]) -> Option<FiniteTypeLabel> {
    debug_assert!(n >= 3);
    let start = (0..n).find(|&v| degree[v] == 1)?;
    // Walk the path, collecting edge labels in order.
    let mut labels = Vec::with_capacity(n - 1);
    let mut prev = usize::MAX;
    let mut cur = start;
    for _ in 0..n - 1 {
        let &(next, m) = adj[cur].iter().find(|&&(u, _)| u != prev)?;
        labels.push(m);
        prev = cur;
        cur = next;
    }
    let big: Vec<u32> = labels.iter().copied().filter(|&m| m != 3).collect();
    match big.as_slice() {
        [] => Some(FiniteTypeLabel::new(Family::A, n as u32)),
        [4] if labels[0] == 4 || labels[n - 2] == 4 => {
            Some(FiniteTypeLabel::new(Family::B, n as u32))
        }
        [4] if n == 4 => Some(FiniteTypeLabel::new(Family::F, 4)),
        [5] if (labels[0] == 5 || labels[n - 2] == 5) && (n == 3 || n == 4) => {
            Some(FiniteTypeLabel::new(Family::H, n as u32))
        }
        _ => None,
    }
}

/// Component with a single degree-3 vertex: D or E, all labels 3.
fn classify_branched(
    n: usize,
    adj: &[Vec<(usize, u32)>],
    branch: usize,
) -> Option<FiniteTypeLabel> {
    if adj.iter().any(|nb| nb.iter().any(|&(_, m)| m != 3)) {
        return None;
    }
    let mut arms: Vec<usize> = adj[branch]
        .iter()
        .map(|&(first, _)| {
            let mut len = 1;
            let mut prev = branch;
            let mut cur = first;
            while let Some(&(next, _)) = adj[cur].iter().find(|&&(u, _)| u != prev) {
                prev = cur;
                cur = next;
                len += 1;
            }
            len
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, _] => Some(FiniteTypeLabel::new(Family::D, n as u32)),
        [1, 2, 2] => Some(FiniteTypeLabel::new(Family::E, 6)),
        [1, 2, 3] => Some(FiniteTypeLabel::new(Family::E, 7)),
        [1, 2, 4] => Some(FiniteTypeLabel::new(Family::E, 8)),
        _ => None,
    }
}

/// Classify every diagram component, or `None` if any component falls
/// outside the finite-type list. Labels come back sorted canonically.
pub fn classify_finite_type(matrix: &CoxeterMatrix) -> Option<Vec<FiniteTypeLabel>> {
    let mut labels = Vec::new();
    for comp in diagram_components(matrix) {
        labels.push(classify_component(matrix, &comp)?);
    }
    labels.sort();
    Some(labels)
}

/// Exact order of the Coxeter group: the product of the component orders
/// when the system is finite-type, infinity otherwise.
pub fn coxeter_order(matrix: &CoxeterMatrix) -> GroupOrder {
    match classify_finite_type(matrix) {
        Some(labels) => GroupOrder::Finite(
            labels.iter().map(FiniteTypeLabel::order).product::<BigUint>().max(BigUint::from(1u32)),
        ),
        None => GroupOrder::Infinite,
    }
}

/// Whether the parabolic subgroup generated by `subset` is finite. The
/// empty subset generates the trivial group and is spherical.
pub fn is_spherical(matrix: &CoxeterMatrix, subset: &GeneratorSubset) -> bool {
    if subset.is_empty() {
        return true;
    }
    classify_finite_type(&matrix.induced_submatrix(subset)).is_some()
}

/// A family of generator subsets that are pairwise incomparable under
/// inclusion, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphericalFamily {
    members: Vec<GeneratorSubset>,
}

impl SphericalFamily {
    fn new(mut members: Vec<GeneratorSubset>) -> Self {
        members.sort();
        debug_assert!(members.iter().enumerate().all(|(i, a)| {
            members.iter().enumerate().all(|(j, b)| i == j || !(a.is_subset_of(b)))
        }));
        SphericalFamily { members }
    }

    pub fn members(&self) -> &[GeneratorSubset] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, subset: &GeneratorSubset) -> bool {
        self.members.binary_search(subset).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &GeneratorSubset> {
        self.members.iter()
    }
}

/// All inclusion-maximal spherical subsets of the generators.
///
/// Depth-first enumeration of the downward-closed spherical family,
/// pruning at the first non-spherical extension; exponential in the rank,
/// which is fine at the ranks this crate targets (about 12 and below).
pub fn maximal_spherical_subsets(matrix: &CoxeterMatrix) -> SphericalFamily {
    let rank = matrix.rank();
    let mut maximal: Vec<GeneratorSubset> = Vec::new();
    let mut stack: Vec<(GeneratorSubset, usize)> = vec![(GeneratorSubset::empty(), 0)];
    while let Some((cur, start)) = stack.pop() {
        // A spherical set is maximal iff no single-element extension stays
        // spherical (sphericality is closed downward).
        let mut extension_somewhere = false;
        for j in 0..rank {
            if cur.contains(j) {
                continue;
            }
            let ext = cur.inserted(j);
            if is_spherical(matrix, &ext) {
                extension_somewhere = true;
                if j >= start {
                    stack.push((ext, j + 1));
                }
            }
        }
        if !cur.is_empty() && !extension_somewhere {
            maximal.push(cur);
        }
    }
    maximal.sort();
    maximal.dedup();
    SphericalFamily::new(maximal)
}

/// All inclusion-maximal subsets of `within` whose generators pairwise
/// commute (`m = 2` throughout): the maximal cliques of the commuting
/// graph restricted to `within`. For empty `within` the unique member is
/// the empty set.
pub fn maximal_independent_subsets(
    matrix: &CoxeterMatrix,
    within: &GeneratorSubset,
) -> SphericalFamily {
    for i in within.iter() {
        assert!(i < matrix.rank(), "subset index {i} out of range");
    }
    let candidates: Vec<usize> = within.iter().collect();
    let commute = |a: usize, b: usize| matrix.entry(a, b) == Label::Finite(2);
    let mut maximal: Vec<GeneratorSubset> = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((cur, start)) = stack.pop() {
        let mut extension_somewhere = false;
        for (pos, &j) in candidates.iter().enumerate() {
            if cur.contains(&j) {
                continue;
            }
            if cur.iter().all(|&i| commute(i, j)) {
                extension_somewhere = true;
                if pos >= start {
                    let mut ext = cur.clone();
                    ext.push(j);
                    stack.push((ext, pos + 1));
                }
            }
        }
        if !extension_somewhere {
            maximal.push(GeneratorSubset::new(cur));
        }
    }
    maximal.sort();
    maximal.dedup();
    SphericalFamily::new(maximal)
}
