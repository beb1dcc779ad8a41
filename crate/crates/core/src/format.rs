//! The line-oriented ring document format and the number grammar.
//!
//! ```text
//! ring <name>
//! rank <r>
//! names <n0> <n1> ... <n{r-1}>
//! dual <d0> <d1> ... <d{r-1}>
//! N <i> <j> : <m0> <m1> ... <m{r-1}>
//! end
//! ```
//!
//! One `N` line is required for every pair `1 <= i, j <= r-1`; unit rows are
//! implied. `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::{self, Display, Write as _};

use serde::Serializer;
use thiserror::Error;

use crate::exactnum::{RealInterval, RealNumber};
use crate::fusion::{FusionRing, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; one past the last line when the problem is missing input.
    pub line: usize,
    pub message: String,
}

/// A violated identity, located at the `N` line that carries the entry.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct LocatedViolation {
    pub line: Option<usize>,
    pub violation: Violation,
}

impl Display for LocatedViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.violation),
            None => write!(f, "{}", self.violation),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{} violated identities:\n{}", .0.len(), .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n"))]
    Validation(Vec<LocatedViolation>),
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| err(line, format!("expected {what}, found {tok:?}")))
}

/// Parses a document without checking the fusion-ring identities.
/// Returns the ring and the line of each `N i j` entry.
pub fn parse_unchecked(text: &str) -> Result<(FusionRing, BTreeMap<(usize, usize), usize>), ParseError> {
    let mut name = None;
    let mut rank: Option<usize> = None;
    let mut names: Option<Vec<String>> = None;
    let mut dual: Option<Vec<usize>> = None;
    let mut rows: BTreeMap<(usize, usize), (usize, Vec<u32>)> = BTreeMap::new();
    let mut ended = false;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if ended {
            return Err(err(line, "content after `end`"));
        }
        let mut toks = content.split_whitespace();
        let key = toks.next().expect("nonempty line");
        let rest: Vec<&str> = toks.collect();
        let need_rank = || rank.ok_or_else(|| err(line, format!("`{key}` before `rank`")));
        match key {
            "ring" => {
                if name.is_some() {
                    return Err(err(line, "duplicate `ring` line"));
                }
                let [n] = rest[..] else { return Err(err(line, "expected `ring <name>`")) };
                name = Some(n.to_string());
            }
            "rank" => {
                if name.is_none() {
                    return Err(err(line, "`rank` before `ring`"));
                }
                if rank.is_some() {
                    return Err(err(line, "duplicate `rank` line"));
                }
                let [r] = rest[..] else { return Err(err(line, "expected `rank <r>`")) };
                let r = parse_usize(r, line, "a rank")?;
                if r == 0 {
                    return Err(err(line, "rank must be positive"));
                }
                rank = Some(r);
            }
            "names" => {
                let r = need_rank()?;
                if names.is_some() {
                    return Err(err(line, "duplicate `names` line"));
                }
                if rest.len() != r {
                    return Err(err(line, format!("expected {r} names, found {}", rest.len())));
                }
                names = Some(rest.iter().map(|s| s.to_string()).collect());
            }
            "dual" => {
                let r = need_rank()?;
                if dual.is_some() {
                    return Err(err(line, "duplicate `dual` line"));
                }
                if rest.len() != r {
                    return Err(err(line, format!("expected {r} dual entries, found {}", rest.len())));
                }
                let d = rest.iter().map(|t| parse_usize(t, line, "an index")).collect::<Result<Vec<_>, _>>()?;
                if d.iter().any(|&x| x >= r) {
                    return Err(err(line, "dual entry out of range"));
                }
                dual = Some(d);
            }
            "N" => {
                let r = need_rank()?;
                if rest.len() < 3 || rest[2] != ":" {
                    return Err(err(line, "expected `N <i> <j> : <m0> ... <m{r-1}>`"));
                }
                let i = parse_usize(rest[0], line, "an index")?;
                let j = parse_usize(rest[1], line, "an index")?;
                if !(1..r).contains(&i) || !(1..r).contains(&j) {
                    return Err(err(line, format!("N line ({i},{j}) must have 1 <= i, j <= {}", r - 1)));
                }
                let m = rest[3..]
                    .iter()
                    .map(|t| t.parse::<u32>().map_err(|_| err(line, format!("expected a multiplicity, found {t:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                if m.len() != r {
                    return Err(err(line, format!("N line ({i},{j}) has {} entries, expected {r}", m.len())));
                }
                if rows.insert((i, j), (line, m)).is_some() {
                    return Err(err(line, format!("duplicate N line for ({i},{j})")));
                }
            }
            "end" => {
                if !rest.is_empty() {
                    return Err(err(line, "unexpected tokens after `end`"));
                }
                ended = true;
            }
            other => return Err(err(line, format!("unknown directive {other:?}"))),
        }
    }
    let eof = last_line + 1;
    if !ended {
        return Err(err(eof, "missing `end`"));
    }
    let name = name.ok_or_else(|| err(eof, "missing `ring` line"))?;
    let r = rank.ok_or_else(|| err(eof, "missing `rank` line"))?;
    let names = names.ok_or_else(|| err(eof, "missing `names` line"))?;
    let dual = dual.ok_or_else(|| err(eof, "missing `dual` line"))?;
    for i in 1..r {
        for j in 1..r {
            if !rows.contains_key(&(i, j)) {
                return Err(err(eof, format!("missing N line for ({i},{j})")));
            }
        }
    }
    let ring = FusionRing::from_fn(name, names, dual, |i, j, k| rows[&(i, j)].1[k]).map_err(|e| err(eof, e.to_string()))?;
    let lines = rows.into_iter().map(|(k, (l, _))| (k, l)).collect();
    Ok((ring, lines))
}

/// Parses and validates a document.
pub fn parse(text: &str) -> Result<FusionRing, DocumentError> {
    let (ring, lines) = parse_unchecked(text)?;
    let violations = ring.verify_axioms();
    if violations.is_empty() {
        return Ok(ring);
    }
    let locate = |i: usize, j: usize| lines.get(&(i, j)).copied();
    let located = violations
        .into_iter()
        .map(|v| {
            let line = match v {
                Violation::UnitLaw { .. } => None,
                Violation::UnitInProduct { i, j } => locate(i, j),
                Violation::DualSymmetry { i, j, .. } | Violation::Frobenius { i, j, .. } => locate(i, j),
                Violation::Associativity { i, j, .. } => locate(i, j),
            };
            LocatedViolation { line, violation: v }
        })
        .collect();
    Err(DocumentError::Validation(located))
}

/// Canonical serialization: fixed line order, single spaces, no comments.
pub fn serialize(ring: &FusionRing) -> String {
    let r = ring.rank();
    let mut s = String::new();
    let _ = writeln!(s, "ring {}", ring.name());
    let _ = writeln!(s, "rank {r}");
    let _ = writeln!(s, "names {}", ring.names().join(" "));
    let _ = writeln!(s, "dual {}", ring.duals().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "));
    for i in 1..r {
        for j in 1..r {
            let m: Vec<String> = ring.product(i, j).iter().map(|c| c.to_string()).collect();
            let _ = writeln!(s, "N {i} {j} : {}", m.join(" "));
        }
    }
    s.push_str("end\n");
    s
}

/// Parses a number in the canonical grammar: `p`, `p/q`,
/// `p/q+r/s*sqrt(D)` or `~[lo,hi]`.
pub fn parse_number(s: &str) -> Option<RealNumber> {
    if s.starts_with('~') {
        s.parse::<RealInterval>().ok().map(RealNumber::Enclosed)
    } else {
        s.parse().ok().map(RealNumber::Exact)
    }
}

pub(crate) fn serialize_display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn roundtrip_catalog() {
        for r in catalog::all() {
            let text = serialize(&r);
            assert_eq!(parse(&text).unwrap(), r);
            assert_eq!(serialize(&parse(&text).unwrap()), text);
        }
    }

    #[test]
    fn fib_z2_document() {
        let text = serialize(&catalog::fib_z2());
        assert!(text.starts_with("ring fib_z2\nrank 4\nnames 1 X Y Z\ndual 0 1 2 3\nN 1 1 : 1 1 0 0\n"));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# Fibonacci\nring fib\n\nrank 2  # two simples\nnames 1 X\ndual 0 1\nN 1 1 : 1 1\nend\n";
        assert_eq!(parse(text).unwrap(), catalog::fib());
    }

    #[test]
    fn missing_row_names_pair() {
        let text = serialize(&catalog::k12());
        let cut: String = text.lines().filter(|l| !l.starts_with("N 2 3")).map(|l| format!("{l}\n")).collect();
        let e = parse(&cut).unwrap_err();
        match e {
            DocumentError::Parse(p) => assert!(p.message.contains("(2,3)"), "{p}"),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn inconsistent_dual_row_is_a_validation_error() {
        // N 1 1 claims X X has no unit summand although X is self-dual
        let text = serialize(&catalog::fib_z2()).replace("N 1 1 : 1 1 0 0", "N 1 1 : 0 1 0 0");
        let DocumentError::Validation(v) = parse(&text).unwrap_err() else { panic!("expected a validation error") };
        assert!(v.iter().any(|x| matches!(x.violation, Violation::UnitInProduct { i: 1, j: 1 }) && x.line == Some(5)));
    }

    #[test]
    fn syntax_errors_carry_lines() {
        let e = parse("ring a\nrank two\n").unwrap_err();
        assert_eq!(e, DocumentError::Parse(err(2, "expected a rank, found \"two\"")));
        assert!(matches!(parse("ring a\nrank 1\nnames 1\ndual 0\n"), Err(DocumentError::Parse(ParseError { line: 5, .. }))));
        assert!(matches!(parse("rank 1\n"), Err(DocumentError::Parse(ParseError { line: 1, .. }))));
        assert!(matches!(parse("ring a\nrank 2\nnames 1 X\ndual 0 1\nN 1 1 : 1\nend\n"), Err(DocumentError::Parse(ParseError { line: 5, .. }))));
    }

    #[test]
    fn numbers() {
        assert_eq!(parse_number("5+1*sqrt(5)").unwrap().to_string(), "5+1*sqrt(5)");
        assert_eq!(parse_number("-3/2").unwrap().to_string(), "-3/2");
        assert!(matches!(parse_number("~[1,2]"), Some(RealNumber::Enclosed(_))));
        assert!(parse_number("sqrt").is_none());
    }
}
