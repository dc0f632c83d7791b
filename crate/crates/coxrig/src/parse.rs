//! Text format for Coxeter matrices.
//!
//! Line-oriented UTF-8, `#` starts a comment running to end of line:
//!
//! ```text
//! rank 3
//! names a b c        # optional, exactly rank names
//! m 1 2 5            # m i j v with 1-based i != j, v an integer >= 2 or "inf"
//! m 1 3 4
//! ```
//!
//! Pairs not mentioned default to infinity, so `m i j inf` lines are legal
//! but redundant. Duplicate `m` lines for a pair are accepted when the
//! values agree and rejected otherwise. The serializer emits pairs in
//! lexicographic order and omits infinite entries, so
//! `parse(serialize(m)) == m` for every matrix.

use std::fmt;

use thiserror::Error;

use crate::matrix::{CoxeterMatrix, Label};

/// Parse failure with 1-based line and column of the offending token.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// Largest rank the text format accepts. Bounds the quadratic entry
/// table an untrusted file can make the parser allocate, and matches the
/// ambient limit of the GF(2) machinery.
pub const MAX_RANK: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Malformed token or line structure.
    Syntax(String),
    /// Rank beyond [`MAX_RANK`].
    RankTooLarge(usize),
    /// `names` line with the wrong number of names.
    RankMismatch { expected: usize, found: usize },
    /// The same pair assigned two different values.
    ConflictingEntry { i: usize, j: usize, first: Label, second: Label },
    /// Finite value below 2.
    ValueTooSmall(u32),
    /// 1-based generator index outside `1..=rank`.
    IndexOutOfRange { index: usize, rank: usize },
    /// Repeated generator name.
    DuplicateName(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "{msg}"),
            ParseErrorKind::RankTooLarge(rank) => {
                write!(f, "rank {rank} exceeds the supported maximum of {MAX_RANK}")
            }
            ParseErrorKind::RankMismatch { expected, found } => {
                write!(f, "expected {expected} names, found {found}")
            }
            ParseErrorKind::ConflictingEntry { i, j, first, second } => {
                write!(f, "pair ({i},{j}) already has value {first}, conflicting value {second}")
            }
            ParseErrorKind::ValueTooSmall(v) => {
                write!(f, "off-diagonal value {v} is below 2")
            }
            ParseErrorKind::IndexOutOfRange { index, rank } => {
                write!(f, "generator index {index} out of range 1..={rank}")
            }
            ParseErrorKind::DuplicateName(name) => {
                write!(f, "duplicate generator name {name:?}")
            }
        }
    }
}

/// Token with its 1-based column.
struct Tok<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Tok<'_>> {
    let body = match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    };
    let mut toks = Vec::new();
    let mut chars = body.char_indices().peekable();
    let mut col = 0usize;
    let mut start: Option<(usize, usize)> = None; // (byte, column)
    while let Some((byte, ch)) = chars.next() {
        col += 1;
        if ch.is_whitespace() {
            if let Some((s, c)) = start.take() {
                toks.push(Tok { text: &body[s..byte], column: c });
            }
        } else if start.is_none() {
            start = Some((byte, col));
        }
        if chars.peek().is_none() {
            if let Some((s, c)) = start.take() {
                toks.push(Tok { text: &body[s..], column: c });
            }
        }
    }
    toks
}

fn err(line: usize, column: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, column, kind }
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> ParseError {
    err(line, column, ParseErrorKind::Syntax(msg.into()))
}

fn parse_usize(tok: &Tok<'_>, line: usize, what: &str) -> Result<usize, ParseError> {
    tok.text
        .parse::<usize>()
        .map_err(|_| syntax(line, tok.column, format!("expected {what}, got {:?}", tok.text)))
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parse the line-oriented format into a matrix.
pub fn parse_coxeter_file(text: &str) -> Result<CoxeterMatrix, ParseError> {
    let mut rank: Option<usize> = None;
    let mut names: Option<Vec<String>> = None;
    let mut pairs: Vec<(usize, usize, Label)> = Vec::new();
    // (slot, value) assignments seen so far, for conflict reporting.
    let mut seen: Vec<(usize, usize, Label, usize, usize)> = Vec::new();
    let mut saw_m_line = false;

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let toks = tokenize(raw);
        if toks.is_empty() {
            continue;
        }
        let head = &toks[0];
        match head.text {
            "rank" => {
                if rank.is_some() {
                    return Err(syntax(lineno, head.column, "duplicate rank line"));
                }
                if toks.len() != 2 {
                    return Err(syntax(lineno, head.column, "rank line takes exactly one integer"));
                }
                let r = parse_usize(&toks[1], lineno, "a positive integer")?;
                if r == 0 {
                    return Err(syntax(lineno, toks[1].column, "rank must be at least 1"));
                }
                if r > MAX_RANK {
                    return Err(err(lineno, toks[1].column, ParseErrorKind::RankTooLarge(r)));
                }
                rank = Some(r);
            }
            "names" => {
                let r =
                    rank.ok_or_else(|| syntax(lineno, head.column, "names line before rank line"))?;
                if names.is_some() {
                    return Err(syntax(lineno, head.column, "duplicate names line"));
                }
                if saw_m_line {
                    return Err(syntax(lineno, head.column, "names line must precede m lines"));
                }
                if toks.len() - 1 != r {
                    return Err(err(
                        lineno,
                        head.column,
                        ParseErrorKind::RankMismatch { expected: r, found: toks.len() - 1 },
                    ));
                }
                let mut collected = Vec::with_capacity(r);
                for tok in &toks[1..] {
                    if !is_ident(tok.text) {
                        return Err(syntax(
                            lineno,
                            tok.column,
                            format!("invalid name {:?}", tok.text),
                        ));
                    }
                    if collected.iter().any(|n: &String| n == tok.text) {
                        return Err(err(
                            lineno,
                            tok.column,
                            ParseErrorKind::DuplicateName(tok.text.to_string()),
                        ));
                    }
                    collected.push(tok.text.to_string());
                }
                names = Some(collected);
            }
            "m" => {
                let r =
                    rank.ok_or_else(|| syntax(lineno, head.column, "m line before rank line"))?;
                saw_m_line = true;
                if toks.len() != 4 {
                    return Err(syntax(lineno, head.column, "m line takes: m i j value"));
                }
                let i = parse_usize(&toks[1], lineno, "a generator index")?;
                let j = parse_usize(&toks[2], lineno, "a generator index")?;
                for (tok, idx) in [(&toks[1], i), (&toks[2], j)] {
                    if idx == 0 || idx > r {
                        return Err(err(
                            lineno,
                            tok.column,
                            ParseErrorKind::IndexOutOfRange { index: idx, rank: r },
                        ));
                    }
                }
                if i == j {
                    return Err(syntax(
                        lineno,
                        toks[2].column,
                        "m line requires two distinct generators",
                    ));
                }
                let vtok = &toks[3];
                let label = if vtok.text == "inf" {
                    Label::Infinite
                } else {
                    let v = vtok.text.parse::<u32>().map_err(|_| {
                        syntax(
                            lineno,
                            vtok.column,
                            format!("expected an integer >= 2 or \"inf\", got {:?}", vtok.text),
                        )
                    })?;
                    if v < 2 {
                        return Err(err(lineno, vtok.column, ParseErrorKind::ValueTooSmall(v)));
                    }
                    Label::Finite(v)
                };
                let (a, b) = ((i - 1).min(j - 1), (i - 1).max(j - 1));
                if let Some(&(_, _, prev, _, _)) =
                    seen.iter().find(|&&(x, y, _, _, _)| (x, y) == (a, b))
                {
                    if prev != label {
                        return Err(err(
                            lineno,
                            vtok.column,
                            ParseErrorKind::ConflictingEntry { i, j, first: prev, second: label },
                        ));
                    }
                    continue;
                }
                seen.push((a, b, label, lineno, vtok.column));
                pairs.push((a, b, label));
            }
            other => {
                return Err(syntax(lineno, head.column, format!("unknown directive {other:?}")));
            }
        }
    }

    let rank = match rank {
        Some(r) => r,
        None => {
            let line = text.lines().count().max(1);
            return Err(syntax(line, 1, "missing rank line"));
        }
    };
    // Pair data was validated per line, so construction cannot fail except
    // through names, which were validated too.
    let m = CoxeterMatrix::from_pairs(rank, &pairs).expect("validated pair data must build");
    match names {
        Some(n) => Ok(m.with_names(n).expect("validated names must attach")),
        None => Ok(m),
    }
}

/// Deterministic text form: rank line, names line when present, then one
/// `m` line per finite off-diagonal pair in lexicographic order. Infinite
/// entries are implied by omission.
pub fn serialize(matrix: &CoxeterMatrix) -> String {
    let mut out = format!("rank {}\n", matrix.rank());
    if let Some(names) = matrix.names() {
        out.push_str("names");
        for name in names {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
    }
    for (i, j, v) in matrix.finite_pairs() {
        out.push_str(&format!("m {} {} {}\n", i + 1, j + 1, v));
    }
    out
}
