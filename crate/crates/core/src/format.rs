//! Basis serialization.
//!
//! Text: one line per vector, `<anchor>: (+|-)<v>( (+|-)<v>)*`, vertices
//! ascending and 0-based.
//!
//! Matrix Market: coordinate, integer, general. Rows are vertices, columns
//! are basis vectors, indices are 1-based; entries are listed column by
//! column with rows ascending.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::support::NullBasis;

pub const MM_HEADER: &str = "%%MatrixMarket matrix coordinate integer general";

pub fn write_text(b: &NullBasis) -> String {
    let mut out = String::new();
    for (u, v) in b.vectors() {
        writeln!(out, "{u}: {v}").unwrap();
    }
    out
}

pub fn write_matrix_market(b: &NullBasis, n: usize) -> String {
    let mut out = String::new();
    writeln!(out, "{MM_HEADER}").unwrap();
    writeln!(out, "{n} {} {}", b.len(), b.total_nnz()).unwrap();
    for (col, (_, v)) in b.vectors().iter().enumerate() {
        for &(x, s) in v.entries() {
            writeln!(out, "{} {} {}", x + 1, col + 1, s.value()).unwrap();
        }
    }
    out
}

/// A basis as read back from a file, before any validation of its values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawBasis {
    /// Anchors, when the format records them.
    pub anchors: Vec<Option<usize>>,
    /// Nonzeros of each vector as `(vertex, value)` pairs, 0-based.
    pub vectors: Vec<Vec<(usize, i64)>>,
}

/// Reads either format; Matrix Market is recognized by its banner.
pub fn read_basis(text: &str) -> Result<RawBasis> {
    if text.trim_start().starts_with("%%MatrixMarket") {
        read_matrix_market(text)
    } else {
        read_text(text)
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn read_text(text: &str) -> Result<RawBasis> {
    let mut out = RawBasis::default();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (anchor, rest) = line
            .split_once(':')
            .ok_or_else(|| parse_err(line_no, "expected `<anchor>: ...`"))?;
        let anchor = anchor
            .trim()
            .parse::<usize>()
            .map_err(|_| parse_err(line_no, "bad anchor"))?;
        let mut entries = Vec::new();
        for tok in rest.split_whitespace() {
            let (value, vertex) = match tok.as_bytes().first() {
                Some(b'+') => (1, &tok[1..]),
                Some(b'-') => (-1, &tok[1..]),
                _ => return Err(parse_err(line_no, format!("entry `{tok}` lacks a sign"))),
            };
            let vertex = vertex
                .parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("bad vertex in `{tok}`")))?;
            entries.push((vertex, value));
        }
        if entries.is_empty() {
            return Err(parse_err(line_no, "vector has no entries"));
        }
        out.anchors.push(Some(anchor));
        out.vectors.push(entries);
    }
    Ok(out)
}

pub fn read_matrix_market(text: &str) -> Result<RawBasis> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (no, banner) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let banner_tokens: Vec<String> = banner
        .split_whitespace()
        .map(|t| t.to_ascii_lowercase())
        .collect();
    if banner_tokens
        != [
            "%%matrixmarket",
            "matrix",
            "coordinate",
            "integer",
            "general",
        ]
    {
        return Err(parse_err(
            no,
            "expected `%%MatrixMarket matrix coordinate integer general`",
        ));
    }
    let mut body = lines.filter(|(_, l)| !l.starts_with('%'));
    let (no, size) = body
        .next()
        .ok_or_else(|| parse_err(no, "missing size line"))?;
    let size_line = no;
    let dims = parse_numbers::<usize>(size, no, 3)?;
    let (rows, cols, nnz) = (dims[0], dims[1], dims[2]);
    let mut out = RawBasis {
        anchors: vec![None; cols],
        vectors: vec![Vec::new(); cols],
    };
    let mut count = 0;
    for (no, line) in body {
        let t = parse_numbers::<i64>(line, no, 3)?;
        let (i, j, value) = (t[0], t[1], t[2]);
        if i < 1 || i as usize > rows || j < 1 || j as usize > cols {
            return Err(parse_err(no, format!("index ({i}, {j}) out of range")));
        }
        count += 1;
        if value != 0 {
            out.vectors[j as usize - 1].push((i as usize - 1, value));
        }
    }
    if count != nnz {
        return Err(parse_err(
            size_line,
            format!("declared {nnz} entries, found {count}"),
        ));
    }
    Ok(out)
}

fn parse_numbers<T: std::str::FromStr>(line: &str, no: usize, expected: usize) -> Result<Vec<T>> {
    let parsed: Option<Vec<T>> = line.split_whitespace().map(|t| t.parse().ok()).collect();
    match parsed {
        Some(v) if v.len() == expected => Ok(v),
        _ => Err(parse_err(no, format!("expected {expected} integers"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::support::{Sign, SparseVector};

    fn sample() -> NullBasis {
        NullBasis::new(vec![
            (
                1,
                SparseVector::new(vec![(1, Sign::Plus), (2, Sign::Minus)]).unwrap(),
            ),
            (
                3,
                SparseVector::new(vec![(3, Sign::Plus), (2, Sign::Minus)]).unwrap(),
            ),
        ])
    }

    #[test]
    fn text_layout() {
        assert_eq!(write_text(&sample()), "1: +1 -2\n3: -2 +3\n");
        assert_eq!(write_text(&NullBasis::default()), "");
    }

    #[test]
    fn matrix_market_layout() {
        assert_eq!(
            write_matrix_market(&sample(), 4),
            "%%MatrixMarket matrix coordinate integer general\n\
             4 2 4\n2 1 1\n3 1 -1\n3 2 -1\n4 2 1\n"
        );
    }

    #[test]
    fn both_formats_read_back() {
        let b = sample();
        let expected = vec![vec![(1, 1), (2, -1)], vec![(2, -1), (3, 1)]];
        let txt = read_basis(&write_text(&b)).unwrap();
        assert_eq!(txt.vectors, expected);
        assert_eq!(txt.anchors, vec![Some(1), Some(3)]);
        let mm = read_basis(&write_matrix_market(&b, 4)).unwrap();
        assert_eq!(mm.vectors, expected);
    }

    #[test]
    fn malformed_inputs() {
        for bad in ["1 +2\n", "x: +1\n", "1: 2\n", "1: +a\n", "1:\n"] {
            assert!(read_text(bad).is_err(), "{bad:?}");
        }
        for bad in [
            "%%MatrixMarket matrix array real general\n1 1\n0\n",
            "%%MatrixMarket matrix coordinate integer general\n2 1 2\n1 1 1\n",
            "%%MatrixMarket matrix coordinate integer general\n2 1 1\n3 1 1\n",
        ] {
            assert!(read_basis(bad).is_err(), "{bad:?}");
        }
    }
}
