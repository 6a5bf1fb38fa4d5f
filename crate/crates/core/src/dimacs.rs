//! DIMACS CNF reading and writing.

use std::fmt::Write as _;

use crate::clause::{Clause, ClauseSet, Lit};
use crate::error::{Error, Result};

/// A parsed DIMACS file: the clause-set plus header and comment metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimacsFile {
    pub clauses: ClauseSet,
    pub header_vars: u32,
    pub header_clauses: usize,
    /// Text of `c` lines, without the leading `c` and one following space.
    pub comments: Vec<String>,
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses DIMACS CNF text into a clause-set.
pub fn parse_dimacs(text: &str) -> Result<ClauseSet> {
    parse_dimacs_file(text).map(|d| d.clauses)
}

/// Parses DIMACS CNF text, keeping the header counts and comments.
pub fn parse_dimacs_file(text: &str) -> Result<DimacsFile> {
    let mut header: Option<(u32, usize)> = None;
    let mut comments = Vec::new();
    let mut clauses = ClauseSet::top();
    let mut read = 0usize;
    let mut current: Vec<Lit> = Vec::new();
    let mut clause_line = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line == "c" || line.starts_with("c ") || line.starts_with("c\t") {
            comments.push(
                line[1..]
                    .strip_prefix([' ', '\t'])
                    .unwrap_or("")
                    .to_string(),
            );
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(perr(line_no, "duplicate header"));
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[0] != "p" || parts[1] != "cnf" {
                return Err(perr(
                    line_no,
                    "malformed header, expected `p cnf <vars> <clauses>`",
                ));
            }
            let nv = parts[2]
                .parse::<u32>()
                .map_err(|_| perr(line_no, format!("bad variable count `{}`", parts[2])))?;
            if nv > i32::MAX as u32 {
                return Err(perr(line_no, "variable count too large"));
            }
            let nc = parts[3]
                .parse::<usize>()
                .map_err(|_| perr(line_no, format!("bad clause count `{}`", parts[3])))?;
            header = Some((nv, nc));
            continue;
        }
        let Some((nv, _)) = header else {
            return Err(perr(line_no, "clause before `p cnf` header"));
        };
        for tok in line.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| perr(line_no, format!("`{tok}` is not an integer literal")))?;
            if v == 0 {
                if tok != "0" {
                    return Err(perr(line_no, format!("`{tok}` is not a literal")));
                }
                let c = Clause::new(current.drain(..)).map_err(|e| match e {
                    Error::Tautology(v) => perr(
                        line_no,
                        format!("tautological clause (contains {v} and -{v})"),
                    ),
                    other => other,
                })?;
                clauses.insert(c);
                read += 1;
                continue;
            }
            if v.unsigned_abs() > u64::from(nv) {
                return Err(perr(
                    line_no,
                    format!("literal {v} exceeds the declared {nv} variables"),
                ));
            }
            if current.is_empty() {
                clause_line = line_no;
            }
            current.push(Lit::new(v as i32)?);
        }
    }
    let Some((nv, nc)) = header else {
        return Err(perr(text.lines().count().max(1), "missing `p cnf` header"));
    };
    if !current.is_empty() {
        return Err(perr(clause_line, "clause not terminated by 0"));
    }
    if read != nc {
        return Err(perr(
            text.lines().count().max(1),
            format!("header declares {nc} clauses, found {read}"),
        ));
    }
    Ok(DimacsFile {
        clauses,
        header_vars: nv,
        header_clauses: nc,
        comments,
    })
}

/// Writes a clause-set as DIMACS CNF; the header uses the largest variable.
pub fn emit_dimacs(f: &ClauseSet) -> String {
    emit_dimacs_with_comments(f, &[])
}

pub fn emit_dimacs_with_comments(f: &ClauseSet, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        if c.is_empty() {
            out.push_str("c\n");
        } else {
            let _ = writeln!(out, "c {c}");
        }
    }
    let _ = writeln!(out, "p cnf {} {}", f.max_var(), f.len());
    for c in f.iter() {
        for l in c.iter() {
            let _ = write!(out, "{l} ");
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_file() {
        let f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 0\n").unwrap();
        assert_eq!(f, ClauseSet::from_lits(&[&[1, 2], &[-1]]).unwrap());
    }

    #[test]
    fn tautology_names_line() {
        let e = parse_dimacs("p cnf 1 1\n1 -1 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e:?}");
    }

    #[test]
    fn empty_clause_line() {
        let f = parse_dimacs("p cnf 0 1\n0\n").unwrap();
        assert_eq!(f, ClauseSet::bottom());
    }

    #[test]
    fn comments_kept_and_clauses_span_lines() {
        let d = parse_dimacs_file("c hello\np cnf 3 2\n1 2\n3 0 -1\n0\n").unwrap();
        assert_eq!(d.comments, vec!["hello".to_string()]);
        assert_eq!(
            d.clauses,
            ClauseSet::from_lits(&[&[1, 2, 3], &[-1]]).unwrap()
        );
    }

    #[test]
    fn duplicates_merged() {
        let f = parse_dimacs("p cnf 2 2\n1 2 0\n2 1 0\n").unwrap();
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn errors() {
        for (text, line) in [
            ("1 2 0\n", 1),
            ("p cnf 2 1\n1 -0 0\n", 2),
            ("p cnf 2 1\n1 x 0\n", 2),
            ("p cnf 2 1\n1 3 0\n", 2),
            ("p cnf 2 1\n1 2\n", 2),
            ("p cnf 2 2\n1 2 0\n", 2),
            ("p dnf 2 1\n1 0\n", 1),
        ] {
            match parse_dimacs(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn percent_ends_input() {
        let f = parse_dimacs("p cnf 1 1\n1 0\n%\n0\n").unwrap();
        assert_eq!(f, ClauseSet::from_lits(&[&[1]]).unwrap());
    }

    #[test]
    fn roundtrip() {
        let f = ClauseSet::from_lits(&[&[-3, 1], &[2], &[], &[4, -2]]).unwrap();
        assert_eq!(parse_dimacs(&emit_dimacs(&f)).unwrap(), f);
        let text = emit_dimacs(&f);
        assert!(text.contains("1 -3 0"));
    }
}
