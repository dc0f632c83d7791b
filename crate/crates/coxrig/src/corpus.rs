//! Named matrix catalogs backing the test and acceptance suites.
//!
//! Three overlapping slices: a classification corpus of finite-type
//! matrices with order at most 1152 for order cross-checks, a property
//! corpus mixing finite and infinite systems for structural laws, and a
//! rigidity corpus of groups small enough for the full generating-set
//! sweep. The rigidity corpus deliberately includes non-rigid and
//! out-of-class specimens; tests assert on both directions.

use crate::finite::{coxeter_order, GroupOrder};
use crate::matrix::{CoxeterMatrix, Label};
use crate::preset::preset;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub matrix: CoxeterMatrix,
}

fn entry(name: &str) -> CorpusEntry {
    CorpusEntry { name: name.to_string(), matrix: named(name) }
}

/// Build a matrix from a `+`-separated list of preset names.
pub fn named(name: &str) -> CoxeterMatrix {
    name.split('+')
        .map(|part| preset(part).unwrap_or_else(|e| panic!("corpus name {name:?}: {e}")))
        .reduce(|a, b| a.direct_sum(&b))
        .expect("corpus names are nonempty")
}

/// Finite-type matrices with order at most 1152: the singles of every
/// family that fits, dihedrals through I2(12), and all direct sums of a
/// small basis staying under the cap.
pub fn classification_corpus() -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "H3", "F4"]
        .iter()
        .map(|n| entry(n))
        .collect();
    for m in 3..=12 {
        out.push(entry(&format!("I2({m})")));
    }
    let basis = ["A1", "A2", "A3", "B2", "B3", "H3", "I2(5)", "I2(6)", "I2(7)", "I2(8)", "I2(12)"];
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i..] {
            push_if_small(&mut out, &format!("{a}+{b}"));
        }
    }
    for name in ["A1+A1+A1", "A1+A1+A1+A1", "A1+A1+B2", "A2+A2+A2", "A1+A2+B2"] {
        push_if_small(&mut out, name);
    }
    out
}

fn push_if_small(out: &mut Vec<CorpusEntry>, name: &str) {
    let e = entry(name);
    match coxeter_order(&e.matrix) {
        GroupOrder::Finite(order) if order <= 1152u32.into() => out.push(e),
        _ => {}
    }
}

/// Small matrices, finite and infinite, for structural property tests.
pub fn property_corpus() -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = [
        "A1", "A2", "A3", "A4", "B2", "B3", "D4", "F4", "H3", "I2(5)", "I2(6)", "I2(8)", "A1+A2",
        "A1+B2", "A1+A1+A1", "B2+B2", "A1+I2(5)", "A2+A3",
    ]
    .iter()
    .map(|n| entry(n))
    .collect();
    type CustomEntry = (&'static str, usize, &'static [(usize, usize, u32)]);
    let custom: [CustomEntry; 6] = [
        ("odd-even-split", 3, &[(0, 1, 5), (0, 2, 4)]),
        ("even-chain-with-gap", 3, &[(0, 1, 4), (1, 2, 4)]),
        ("odd-edge-to-core", 3, &[(0, 1, 4), (0, 2, 3)]),
        ("odd-hub", 4, &[(0, 1, 5), (0, 2, 4), (0, 3, 4)]),
        ("free-square", 4, &[]),
        ("mixed-five", 5, &[(0, 1, 4), (1, 2, 8), (3, 4, 7), (0, 3, 2)]),
    ];
    for (name, rank, pairs) in custom {
        let pairs: Vec<(usize, usize, Label)> =
            pairs.iter().map(|&(i, j, m)| (i, j, Label::Finite(m))).collect();
        out.push(CorpusEntry {
            name: name.to_string(),
            matrix: CoxeterMatrix::from_pairs(rank, &pairs).expect("valid corpus matrix"),
        });
    }
    out.push(CorpusEntry {
        name: "universal-rank-2".to_string(),
        matrix: CoxeterMatrix::all_infinite(2),
    });
    out.push(CorpusEntry {
        name: "universal-rank-3".to_string(),
        matrix: CoxeterMatrix::all_infinite(3),
    });
    out
}

/// Groups small enough for the exhaustive generating-set sweep under the
/// default limits. The in-class members must come out rigid; the list
/// also carries the classic non-rigid dihedral splits and two rigid
/// groups outside the class, so the sweeping machinery is tested in both
/// directions.
pub fn rigidity_corpus() -> Vec<CorpusEntry> {
    [
        // In class.
        "A1", "A2", "B2", "I2(5)", "I2(7)", "I2(8)", "I2(9)", "I2(12)", "I2(16)", "A1+A1",
        "A1+A1+A1", "A1+B2", "B2+B2",
        // Out of class: the even dihedrals that split off a direct factor
        // are not rigid; A3 and B3 show both outcomes outside the class.
        "I2(6)", "I2(10)", "A1+A2", "A1+I2(5)", "A3", "B3",
    ]
    .iter()
    .map(|n| entry(n))
    .collect()
}
