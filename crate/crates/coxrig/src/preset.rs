//! Catalog of the classical finite-type Coxeter matrices.
//!
//! Conventions (0-indexed internally): type A is the path with all edges 3;
//! type B puts the 4 on the last edge; type D forks vertices 0 and 1 into
//! vertex 2 and continues as a path; types E attach vertex 0 to vertex 3 of
//! the path on `1..n`; F4 is the path 3,4,3; H puts the 5 on the first edge.

use thiserror::Error;

use crate::matrix::{CoxeterMatrix, Label};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresetError {
    #[error("unknown preset name {0:?}")]
    UnknownName(String),
    #[error("parameter {parameter} out of range for type {family} ({requirement})")]
    ParameterOutOfRange { family: char, parameter: usize, requirement: &'static str },
}

fn path(rank: usize, labels: &[u32]) -> CoxeterMatrix {
    debug_assert_eq!(labels.len(), rank - 1);
    CoxeterMatrix::from_fn(rank, |i, j| {
        if j == i + 1 {
            Label::Finite(labels[i])
        } else {
            Label::Finite(2)
        }
    })
}

/// The standard matrix of a classical type, by name.
///
/// Accepted names: `A<n>` (n >= 1), `B<n>` (n >= 2), `D<n>` (n >= 4),
/// `E6`, `E7`, `E8`, `F4`, `H3`, `H4`, and `I2(<m>)` (m >= 3). A
/// parenthesized parameter is accepted everywhere, so `A(3)` and `A3`
/// name the same matrix.
pub fn preset(name: &str) -> Result<CoxeterMatrix, PresetError> {
    let unknown = || PresetError::UnknownName(name.to_string());
    let name = name.trim();
    if let Some(rest) = name.strip_prefix("I2") {
        let m = parse_param(rest).ok_or_else(unknown)?;
        if m < 3 {
            return Err(PresetError::ParameterOutOfRange {
                family: 'I',
                parameter: m,
                requirement: "m >= 3",
            });
        }
        return Ok(CoxeterMatrix::from_fn(2, |_, _| Label::Finite(m as u32)));
    }
    let mut chars = name.chars();
    let family = chars.next().ok_or_else(unknown)?;
    let n = parse_param(chars.as_str()).ok_or_else(unknown)?;
    let range =
        |requirement| PresetError::ParameterOutOfRange { family, parameter: n, requirement };
    match family {
        'A' => {
            if n < 1 {
                return Err(range("n >= 1"));
            }
            if n == 1 {
                return Ok(CoxeterMatrix::all_infinite(1));
            }
            Ok(path(n, &vec![3; n - 1]))
        }
        'B' => {
            if n < 2 {
                return Err(range("n >= 2"));
            }
            let mut labels = vec![3; n - 1];
            labels[n - 2] = 4;
            Ok(path(n, &labels))
        }
        'D' => {
            if n < 4 {
                return Err(range("n >= 4"));
            }
            Ok(CoxeterMatrix::from_fn(n, |i, j| {
                let adjacent = (i == 0 && j == 2) || (i >= 1 && j == i + 1);
                if adjacent {
                    Label::Finite(3)
                } else {
                    Label::Finite(2)
                }
            }))
        }
        'E' => {
            if !(6..=8).contains(&n) {
                return Err(range("n in {6,7,8}"));
            }
            Ok(CoxeterMatrix::from_fn(n, |i, j| {
                let adjacent = (i == 0 && j == 3) || (i >= 1 && j == i + 1);
                if adjacent {
                    Label::Finite(3)
                } else {
                    Label::Finite(2)
                }
            }))
        }
        'F' => {
            if n != 4 {
                return Err(range("n = 4"));
            }
            Ok(path(4, &[3, 4, 3]))
        }
        'H' => {
            if !(3..=4).contains(&n) {
                return Err(range("n in {3,4}"));
            }
            let mut labels = vec![3; n - 1];
            labels[0] = 5;
            Ok(path(n, &labels))
        }
        _ => Err(unknown()),
    }
}

fn parse_param(s: &str) -> Option<usize> {
    let s = s.trim();
    let s = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    s.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::GeneratorSubset;

    #[test]
    fn small_presets() {
        let a2 = preset("A2").unwrap();
        assert_eq!(a2.entry(0, 1), Label::Finite(3));
        assert_eq!(preset("A(2)").unwrap(), a2);

        let i26 = preset("I2(6)").unwrap();
        assert_eq!(i26.entry(0, 1), Label::Finite(6));

        let f4 = preset("F4").unwrap();
        assert_eq!(f4.entry(0, 1), Label::Finite(3));
        assert_eq!(f4.entry(1, 2), Label::Finite(4));
        assert_eq!(f4.entry(2, 3), Label::Finite(3));
        assert_eq!(f4.entry(0, 2), Label::Finite(2));

        // The distinguished label sits on the last edge for B and the
        // first edge for H.
        let b3 = preset("B3").unwrap();
        assert_eq!(b3.entry(0, 1), Label::Finite(3));
        assert_eq!(b3.entry(1, 2), Label::Finite(4));
        let h3 = preset("H3").unwrap();
        assert_eq!(h3.entry(0, 1), Label::Finite(5));
        assert_eq!(h3.entry(1, 2), Label::Finite(3));

        // Restricting B3 to its last two generators keeps the 4.
        let tail = b3.induced_submatrix(&GeneratorSubset::new(vec![1, 2]));
        assert_eq!(tail.entry(0, 1), Label::Finite(4));
    }

    #[test]
    fn branched_presets() {
        let d4 = preset("D4").unwrap();
        // Vertex 2 is the branch point.
        assert_eq!(d4.entry(0, 2), Label::Finite(3));
        assert_eq!(d4.entry(1, 2), Label::Finite(3));
        assert_eq!(d4.entry(2, 3), Label::Finite(3));
        assert_eq!(d4.entry(0, 1), Label::Finite(2));

        let e6 = preset("E6").unwrap();
        assert_eq!(e6.entry(0, 3), Label::Finite(3));
        assert_eq!(e6.entry(0, 1), Label::Finite(2));
        assert_eq!(e6.entry(4, 5), Label::Finite(3));
    }

    #[test]
    fn rejects_bad_names() {
        assert!(matches!(preset("Z9"), Err(PresetError::UnknownName(_))));
        assert!(matches!(preset("B1"), Err(PresetError::ParameterOutOfRange { .. })));
        assert!(matches!(preset("D3"), Err(PresetError::ParameterOutOfRange { .. })));
        assert!(matches!(preset("E9"), Err(PresetError::ParameterOutOfRange { .. })));
        assert!(matches!(preset("I2(2)"), Err(PresetError::ParameterOutOfRange { .. })));
        assert!(matches!(preset("H5"), Err(PresetError::ParameterOutOfRange { .. })));
    }
}
