//! Plain-text family format.
//!
//! ```text
//! # comment
//! 7 3
//! 1,2,3
//! 1,2,4
//! ```
//!
//! The header is `n k`; every further line is one member written as strictly
//! increasing comma-separated labels. Blank lines and `#` lines are skipped
//! anywhere. Writers emit members in lexicographic order.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::family::{UniformFamily, VertexSet, MAX_N};

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        message: message.into(),
    })
}

fn parse_uint(tok: &str, line: usize, what: &str) -> Result<u32> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return parse_err(
            line,
            format!("{what}: expected an unsigned integer, found {tok:?}"),
        );
    }
    tok.parse::<u32>()
        .or_else(|_| parse_err(line, format!("{what}: {tok:?} is out of range")))
}

/// Parses a family from its text form.
pub fn parse_family(text: &str) -> Result<UniformFamily> {
    let mut header: Option<(u32, u32)> = None;
    let mut sets: Vec<VertexSet> = Vec::new();
    let mut seen = std::collections::HashMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((n, k)) = header else {
            let mut toks = line.split_whitespace();
            let (Some(a), Some(b), None) = (toks.next(), toks.next(), toks.next()) else {
                return parse_err(line_no, "header must be \"n k\"");
            };
            let n = parse_uint(a, line_no, "n")?;
            let k = parse_uint(b, line_no, "k")?;
            if n == 0 || n > MAX_N {
                return parse_err(line_no, format!("n = {n} outside 1..={MAX_N}"));
            }
            if k == 0 || k > n {
                return parse_err(line_no, format!("k = {k} outside 1..={n}"));
            }
            header = Some((n, k));
            continue;
        };

        let mut mask = 0u64;
        let mut prev = 0u32;
        let mut count = 0u32;
        for tok in line.split(',') {
            let v = parse_uint(tok.trim(), line_no, "vertex")?;
            if v == 0 || v > n {
                return parse_err(line_no, format!("vertex {v} outside 1..={n}"));
            }
            if v <= prev {
                return parse_err(line_no, "vertices must be strictly increasing");
            }
            prev = v;
            mask |= 1u64 << (v - 1);
            count += 1;
        }
        if count != k {
            return parse_err(line_no, format!("set has {count} elements, expected {k}"));
        }
        if let Some(first) = seen.insert(mask, line_no) {
            return parse_err(line_no, format!("duplicate of the set on line {first}"));
        }
        sets.push(VertexSet::from_mask(mask));
    }

    let Some((n, k)) = header else {
        return parse_err(text.lines().count().max(1), "missing \"n k\" header");
    };
    UniformFamily::new(n, k, sets).map_err(|e| Error::Parse {
        line: 0,
        message: e.to_string(),
    })
}

/// Renders a family in the text format. Members come out in lexicographic order.
pub fn write_family(family: &UniformFamily) -> String {
    let mut out = String::with_capacity(8 + family.len() * (2 * family.k() as usize + 1));
    let _ = writeln!(out, "{} {}", family.n(), family.k());
    for s in family {
        let _ = writeln!(out, "{s}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_blanks() {
        let text = "# triangle-ish\n\n5 2\n1,2\n# mid\n1,3\n\n2,3\n";
        let f = parse_family(text).unwrap();
        assert_eq!((f.n(), f.k(), f.len()), (5, 2, 3));
        assert_eq!(write_family(&f), "5 2\n1,2\n1,3\n2,3\n");
    }

    #[test]
    fn writer_sorts_lexicographically() {
        let f = UniformFamily::from_lists(7, 3, &[&[1, 3, 4], &[1, 2, 5]]);
        assert_eq!(write_family(&f), "7 3\n1,2,5\n1,3,4\n");
    }

    #[test]
    fn reports_line_numbers() {
        let cases = [
            ("5 2\n1,2\n2,1\n", 3),
            ("5 2\n1,2\n1,6\n", 3),
            ("5 2\n1,2,3\n", 2),
            ("5 2\n1,2\n\n1,2\n", 4),
            ("5\n", 1),
            ("5 x\n", 1),
            ("5 2\n1,,2\n", 2),
            ("3 4\n", 1),
            ("70 2\n", 1),
            ("5 2\n-1,2\n", 2),
        ];
        for (text, line) in cases {
            match parse_family(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn empty_body_is_the_empty_family() {
        let f = parse_family("6 3\n").unwrap();
        assert!(f.is_empty());
        assert!(matches!(parse_family(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_family("# only\n"), Err(Error::Parse { .. })));
    }
}
