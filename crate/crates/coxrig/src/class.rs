//! Membership in the rigidity class decided by four conditions on the
//! matrix, together with the evenness classification and the strong-even
//! core.
//!
//! With `A` the family of maximal spherical subsets, the conditions are:
//!
//! * (0) every finite even entry lies in `{2} ∪ 4N`;
//! * (1) every pair with a finite odd entry is itself a member of `A`;
//! * (2) no generator is the middle point of two odd edges;
//! * (3) for every odd pair `{s,t}`, at most two members of `A` meet `{s,t}`.
//!
//! A system is even when no off-diagonal entry is finite odd, and strong
//! even when additionally every finite entry lies in `{2} ∪ 4N`. Infinite
//! entries are compatible with both notions. The strong-even core is the
//! union of the maximal spherical subsets whose induced system is strong
//! even; a generator outside the core always has exactly one odd partner
//! and infinite entries to everything else, which `odd_partner_structure`
//! checks and exploits.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::finite::{maximal_spherical_subsets, SphericalFamily};
use crate::matrix::{CoxeterMatrix, GeneratorSubset, Label};

/// Evenness classification of a system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evenness {
    /// All finite off-diagonal entries in `{2} ∪ 4N`.
    StrongEven,
    /// No odd entries, but some entry is `2 mod 4` (6, 10, ...).
    EvenNotStrong,
    /// Some finite odd entry.
    NotEven,
}

impl Evenness {
    pub fn as_str(self) -> &'static str {
        match self {
            Evenness::StrongEven => "strong-even",
            Evenness::EvenNotStrong => "even-not-strong",
            Evenness::NotEven => "not-even",
        }
    }
}

/// Lexicographically first violation of a failed condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Condition (0): even entry not in `{2} ∪ 4N`.
    EvenEntryNotDivisible { pair: (usize, usize), value: u32 },
    /// Condition (1): odd pair that is not a maximal spherical subset.
    OddPairNotMaximal { pair: (usize, usize), value: u32 },
    /// Condition (2): `m(s,t)` and `m(t,u)` both odd with middle point `t`.
    OddChain { triple: (usize, usize, usize), values: (u32, u32) },
    /// Condition (3): odd pair met by more than two maximal spherical subsets.
    TooManyMeetingSubsets { pair: (usize, usize), count: usize },
}

/// Full verdict of the class check, with per-condition results and
/// diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub in_class: bool,
    /// Conditions (0) through (3), in order.
    pub conditions: [bool; 4],
    pub witnesses: Vec<Witness>,
    pub evenness: Evenness,
    /// Strong-even core: union of the strong-even maximal spherical
    /// subsets. Computed even when the matrix is out of class, where it
    /// carries no structural guarantees.
    pub s_bar: GeneratorSubset,
    /// All pairs with finite odd entry, lexicographic.
    pub odd_pairs: Vec<(usize, usize)>,
    /// The family the conditions were evaluated against.
    pub maximal_spherical: SphericalFamily,
}

fn strong_even_value(m: u32) -> bool {
    m == 2 || m.is_multiple_of(4)
}

/// Whether every finite off-diagonal entry of the induced system lies in
/// `{2} ∪ 4N`.
pub fn is_strong_even(matrix: &CoxeterMatrix, subset: &GeneratorSubset) -> bool {
    subset_pairs(subset).all(|(i, j)| match matrix.entry(i, j) {
        Label::Finite(m) => strong_even_value(m),
        Label::Infinite => true,
    })
}

fn subset_pairs(subset: &GeneratorSubset) -> impl Iterator<Item = (usize, usize)> + '_ {
    let idx = subset.as_slice();
    (0..idx.len()).flat_map(move |a| ((a + 1)..idx.len()).map(move |b| (idx[a], idx[b])))
}

fn evenness(matrix: &CoxeterMatrix) -> Evenness {
    let mut strong = true;
    for (_, _, label) in matrix.pairs() {
        match label {
            Label::Finite(m) if m % 2 == 1 => return Evenness::NotEven,
            Label::Finite(m) if !strong_even_value(m) => strong = false,
            _ => {}
        }
    }
    if strong {
        Evenness::StrongEven
    } else {
        Evenness::EvenNotStrong
    }
}

/// Evaluate the four class conditions together with the evenness kind,
/// the strong-even core, and the odd pairs.
pub fn check_class_membership(matrix: &CoxeterMatrix) -> ClassReport {
    let family = maximal_spherical_subsets(matrix);
    let odd_pairs: Vec<(usize, usize)> =
        matrix.finite_pairs().filter(|&(_, _, m)| m % 2 == 1).map(|(i, j, _)| (i, j)).collect();

    let mut conditions = [true; 4];
    let mut witnesses = Vec::new();

    // (0) even entries lie in {2} ∪ 4N.
    if let Some((i, j, m)) =
        matrix.finite_pairs().find(|&(_, _, m)| m % 2 == 0 && !strong_even_value(m))
    {
        conditions[0] = false;
        witnesses.push(Witness::EvenEntryNotDivisible { pair: (i, j), value: m });
    }

    // (1) every odd pair is a maximal spherical subset.
    if let Some(&(i, j)) =
        odd_pairs.iter().find(|&&(i, j)| !family.contains(&GeneratorSubset::new(vec![i, j])))
    {
        conditions[1] = false;
        let value = matrix.entry(i, j).finite_value().expect("odd pair is finite");
        witnesses.push(Witness::OddPairNotMaximal { pair: (i, j), value });
    }

    // (2) no middle point of two odd edges. The witness minimizes the
    // middle point first, then the outer pair.
    'middle: for t in 0..matrix.rank() {
        let neighbors: Vec<usize> =
            (0..matrix.rank()).filter(|&x| x != t && matrix.entry(t, x).is_odd()).collect();
        if neighbors.len() >= 2 {
            let (s, u) = (neighbors[0], neighbors[1]);
            conditions[2] = false;
            witnesses.push(Witness::OddChain {
                triple: (s, t, u),
                values: (
                    matrix.entry(s, t).finite_value().expect("odd entry is finite"),
                    matrix.entry(t, u).finite_value().expect("odd entry is finite"),
                ),
            });
            break 'middle;
        }
    }

    // (3) at most two members of the maximal spherical family meet each
    // odd pair (the pair itself counts when condition (1) holds).
    if let Some((&(i, j), count)) = odd_pairs
        .iter()
        .map(|pair| {
            let met = family.iter().filter(|t| t.contains(pair.0) || t.contains(pair.1)).count();
            (pair, met)
        })
        .find(|&(_, met)| met > 2)
    {
        conditions[3] = false;
        witnesses.push(Witness::TooManyMeetingSubsets { pair: (i, j), count });
    }

    let s_bar = family
        .iter()
        .filter(|t| is_strong_even(matrix, t))
        .fold(GeneratorSubset::empty(), |acc, t| acc.union(t));

    ClassReport {
        in_class: conditions.iter().all(|&c| c),
        conditions,
        witnesses,
        evenness: evenness(matrix),
        s_bar,
        odd_pairs,
        maximal_spherical: family,
    }
}

/// The structural guarantee behind the core failed; this can only happen
/// through an implementation bug, so the diagnostics carry the offending
/// generator and entries.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureViolation {
    #[error("generator {generator} outside the core has odd partners {partners:?}, expected exactly one")]
    PartnerCount { generator: usize, partners: Vec<usize> },
    #[error("generator {generator} outside the core has finite entry m({generator},{other}) = {value} beyond its odd partner {partner}")]
    UnexpectedFiniteEntry { generator: usize, partner: usize, other: usize, value: u32 },
}

/// For an in-class matrix, map every generator outside the strong-even
/// core to its unique odd partner, verifying along the way that all its
/// remaining entries are infinite.
pub fn odd_partner_structure(
    matrix: &CoxeterMatrix,
    report: &ClassReport,
) -> Result<BTreeMap<usize, usize>, StructureViolation> {
    assert!(report.in_class, "odd partner structure requires an in-class matrix");
    let mut partners = BTreeMap::new();
    for s in 0..matrix.rank() {
        if report.s_bar.contains(s) {
            continue;
        }
        let odd: Vec<usize> =
            (0..matrix.rank()).filter(|&t| t != s && matrix.entry(s, t).is_odd()).collect();
        let [t] = odd.as_slice() else {
            return Err(StructureViolation::PartnerCount { generator: s, partners: odd });
        };
        let t = *t;
        for u in 0..matrix.rank() {
            if u == s || u == t {
                continue;
            }
            if let Label::Finite(value) = matrix.entry(s, u) {
                return Err(StructureViolation::UnexpectedFiniteEntry {
                    generator: s,
                    partner: t,
                    other: u,
                    value,
                });
            }
        }
        partners.insert(s, t);
    }
    Ok(partners)
}
