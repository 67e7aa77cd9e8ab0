//! Text formats for groups.
//!
//! ```text
//! # comment
//! perm <degree>
//! <1-based image list of generator 1>
//! ...
//! ```
//!
//! or
//!
//! ```text
//! cayley <n>
//! <n rows of n 0-based indices; row g, column h is g*h>
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::perm::group_from_permutations;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupData {
    Perm { degree: usize, generators: Vec<Vec<usize>> },
    Cayley { order: usize, table: Vec<u16> },
}

/// A parsed group file: the data plus its `#` comment lines (without the `#`).
#[derive(Clone, Debug)]
pub struct GroupFile {
    pub data: GroupData,
    pub comments: Vec<String>,
}

fn numbers(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| Error::parse(lineno, format!("not a number: {t:?}"))))
        .collect()
}

pub fn parse_group_file(text: &str) -> Result<GroupFile> {
    let mut comments = Vec::new();
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let (body, comment) = match raw.find('#') {
            Some(k) => (&raw[..k], Some(raw[k + 1..].trim())),
            None => (raw, None),
        };
        if let Some(c) = comment {
            comments.push(c.to_string());
        }
        if !body.trim().is_empty() {
            lines.push((i + 1, body.trim()));
        }
    }
    let Some(&(hline, header)) = lines.first() else {
        return Err(Error::parse(0, "empty group file"));
    };
    let mut head = header.split_whitespace();
    let kind = head.next().unwrap_or_default();
    let size: usize = head
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::parse(hline, "header must be `perm <degree>` or `cayley <n>`"))?;
    if head.next().is_some() {
        return Err(Error::parse(hline, "trailing tokens in header"));
    }
    let body = &lines[1..];
    let data = match kind {
        "perm" => {
            let generators = body
                .iter()
                .map(|&(ln, l)| {
                    let v = numbers(l, ln)?;
                    if v.len() != size {
                        return Err(Error::parse(ln, format!("expected {size} images, found {}", v.len())));
                    }
                    Ok(v)
                })
                .collect::<Result<Vec<_>>>()?;
            GroupData::Perm { degree: size, generators }
        }
        "cayley" => {
            if body.len() != size {
                return Err(Error::parse(hline, format!("expected {size} rows, found {}", body.len())));
            }
            let mut table = Vec::with_capacity(size * size);
            for &(ln, l) in body {
                let row = numbers(l, ln)?;
                if row.len() != size {
                    return Err(Error::parse(ln, format!("expected {size} entries, found {}", row.len())));
                }
                if let Some(bad) = row.iter().find(|&&x| x >= size) {
                    return Err(Error::parse(ln, format!("index {bad} out of range")));
                }
                table.extend(row.into_iter().map(|x| x as u16));
            }
            GroupData::Cayley { order: size, table }
        }
        other => return Err(Error::parse(hline, format!("unknown format {other:?}"))),
    };
    Ok(GroupFile { data, comments })
}

impl GroupData {
    pub fn build(&self) -> Result<Group> {
        match self {
            GroupData::Perm { degree, generators } => group_from_permutations(*degree, generators),
            GroupData::Cayley { order, table } => Group::from_table(*order, table.clone()),
        }
    }
}

pub fn parse_group(text: &str) -> Result<Group> {
    parse_group_file(text)?.data.build()
}

pub fn write_cayley(g: &Group) -> String {
    let n = g.order();
    let mut out = format!("cayley {n}\n");
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| g.mul(a, b).to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

/// Right regular representation on the generating set of the table.
pub fn write_perm(g: &Group) -> String {
    let n = g.order();
    let mut out = format!("perm {n}\n");
    for &s in g.generators() {
        let row: Vec<String> = (0..n).map(|x| (g.mul(x, s) + 1).to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_cayley() {
        let g = parse_group("cayley 1\n0\n").unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn cyclic_perm_with_comments() {
        let text = "# the cyclic group of order 4\nperm 4   # degree\n2 3 4 1\n\n";
        let f = parse_group_file(text).unwrap();
        assert_eq!(f.comments.len(), 2);
        let g = f.data.build().unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!((0..4).map(|x| g.elem_order(x)).max(), Some(4));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert!(matches!(parse_group("perm 3\n1 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_group("cayley 2\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_group("matrix 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_group("cayley 2\n0 1\n1 7\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_group(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn non_associative_cayley_is_rejected() {
        let text = "cayley 5\n0 1 2 3 4\n1 0 3 4 2\n2 4 0 1 3\n3 2 4 0 1\n4 3 1 2 0\n";
        assert!(matches!(parse_group(text), Err(Error::ValidationFailed(_))));
    }

    #[test]
    fn emitted_formats_parse_back() {
        let g = Group::abelian(&[4, 2]).unwrap();
        let c = parse_group(&write_cayley(&g)).unwrap();
        assert_eq!(c.table(), g.table());
        let p = parse_group(&write_perm(&g)).unwrap();
        assert_eq!(p.order(), 8);
    }
}
