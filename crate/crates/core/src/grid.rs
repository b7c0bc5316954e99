//! Parameter grids for inequality sweeps.
//!
//! A grid is one or more `;`-separated blocks; a block is a comma-separated
//! list of `var=lo..hi` ranges evaluated left to right, so later bounds may
//! refer to earlier variables:
//!
//! ```text
//! k=3..12,n=6k-9..6k+30
//! t=1,r=t+2..t+4,k=t+1..t+6,n=3k*k..3k*k+40
//! ```
//!
//! Bounds are integer polynomials: sums of terms, each term a product of
//! integer literals and single-letter variables (`6k` is `6*k`).

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// A point of a grid: variable name to value.
pub type Point = BTreeMap<char, i64>;

/// Refuse grids larger than this many points.
pub const MAX_POINTS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    spec: String,
    points: Vec<Point>,
}

impl Grid {
    pub fn parse(spec: &str) -> Result<Self> {
        let mut points = Vec::new();
        for block in spec.split(';') {
            let ranges = parse_block(block)?;
            expand(&ranges, 0, &mut Point::new(), &mut points)?;
        }
        Ok(Grid {
            spec: spec.trim().to_owned(),
            points,
        })
    }

    pub fn spec(&self) -> &str {
        &self.spec
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn err<T>(message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line: 1,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Term {
    coef: i64,
    vars: Vec<char>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly(Vec<Term>);

impl Poly {
    fn eval(&self, point: &Point) -> Result<i64> {
        let mut acc: i64 = 0;
        for term in &self.0 {
            let mut v = term.coef;
            for c in &term.vars {
                let Some(&x) = point.get(c) else {
                    return err(format!("variable {c} used before it is bound"));
                };
                v = v.checked_mul(x).ok_or_else(overflow)?;
            }
            acc = acc.checked_add(v).ok_or_else(overflow)?;
        }
        Ok(acc)
    }
}

fn overflow() -> Error {
    Error::Parse {
        line: 1,
        message: "arithmetic overflow in grid bound".into(),
    }
}

struct Range {
    var: char,
    lo: Poly,
    hi: Poly,
}

fn parse_block(block: &str) -> Result<Vec<Range>> {
    let block = block.trim();
    if block.is_empty() {
        return err("empty grid block");
    }
    let mut ranges: Vec<Range> = Vec::new();
    for part in block.split(',') {
        let part = part.trim();
        let Some((name, bounds)) = part.split_once('=') else {
            return err(format!("expected var=lo..hi, found {part:?}"));
        };
        let name = name.trim();
        let mut chars = name.chars();
        let (Some(var), None) = (chars.next(), chars.next()) else {
            return err(format!("variable names are single letters, found {name:?}"));
        };
        if !var.is_ascii_lowercase() {
            return err(format!(
                "variable names are lowercase letters, found {name:?}"
            ));
        }
        if ranges.iter().any(|r| r.var == var) {
            return err(format!("variable {var} bound twice"));
        }
        let (lo, hi) = match bounds.split_once("..") {
            Some((lo, hi)) => (parse_poly(lo)?, parse_poly(hi)?),
            None => {
                let p = parse_poly(bounds)?;
                (p.clone(), p)
            }
        };
        ranges.push(Range { var, lo, hi });
    }
    Ok(ranges)
}

fn parse_poly(src: &str) -> Result<Poly> {
    let s: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return err("empty bound expression");
    }
    let mut terms = Vec::new();
    let mut i = 0;
    while i < s.len() {
        let mut sign = 1i64;
        match s[i] {
            '+' => i += 1,
            '-' => {
                sign = -1;
                i += 1;
            }
            c if !terms.is_empty() => return err(format!("unexpected {c:?} in {src:?}")),
            _ => {}
        }
        let (term, next) = parse_term(&s, i, src)?;
        terms.push(Term {
            coef: term.coef.checked_mul(sign).ok_or_else(overflow)?,
            vars: term.vars,
        });
        i = next;
    }
    Ok(Poly(terms))
}

fn parse_term(s: &[char], mut i: usize, src: &str) -> Result<(Term, usize)> {
    let mut coef: i64 = 1;
    let mut vars = Vec::new();
    let mut factors = 0;
    loop {
        if i >= s.len() {
            break;
        }
        let c = s[i];
        if c.is_ascii_digit() {
            let start = i;
            while i < s.len() && s[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = s[start..i].iter().collect();
            let v: i64 = lit.parse().map_err(|_| overflow())?;
            coef = coef.checked_mul(v).ok_or_else(overflow)?;
        } else if c.is_ascii_lowercase() {
            vars.push(c);
            i += 1;
        } else {
            break;
        }
        factors += 1;
        // Juxtaposition (`6k`) or explicit `*` continue the product.
        if i < s.len() && s[i] == '*' {
            i += 1;
            if i >= s.len() {
                return err(format!("dangling '*' in {src:?}"));
            }
        }
    }
    if factors == 0 {
        return err(format!("expected a term in {src:?}"));
    }
    if i < s.len() && s[i] != '+' && s[i] != '-' {
        return err(format!("unexpected {:?} in {src:?}", s[i]));
    }
    Ok((Term { coef, vars }, i))
}

fn expand(ranges: &[Range], depth: usize, cur: &mut Point, out: &mut Vec<Point>) -> Result<()> {
    if depth == ranges.len() {
        if out.len() >= MAX_POINTS {
            return err(format!("grid exceeds {MAX_POINTS} points"));
        }
        out.push(cur.clone());
        return Ok(());
    }
    let r = &ranges[depth];
    let lo = r.lo.eval(cur)?;
    let hi = r.hi.eval(cur)?;
    if hi.saturating_sub(lo) >= MAX_POINTS as i64 {
        return err(format!("range of {} exceeds {MAX_POINTS} values", r.var));
    }
    for v in lo..=hi {
        cur.insert(r.var, v);
        expand(ranges, depth + 1, cur, out)?;
    }
    cur.remove(&r.var);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(spec: &str) -> Vec<Vec<i64>> {
        Grid::parse(spec)
            .unwrap()
            .points()
            .iter()
            .map(|p| p.values().copied().collect())
            .collect()
    }

    #[test]
    fn affine_in_k() {
        let g = Grid::parse("k=3..4,n=6k-9..6k-8").unwrap();
        let ns: Vec<(i64, i64)> = g.points().iter().map(|p| (p[&'k'], p[&'n'])).collect();
        assert_eq!(ns, vec![(3, 9), (3, 10), (4, 15), (4, 16)]);
    }

    #[test]
    fn products_and_blocks() {
        let g = Grid::parse("t=1,k=2,n=3k*k..3*k*k+1;t=2,k=3,n=6k*k").unwrap();
        let ns: Vec<i64> = g.points().iter().map(|p| p[&'n']).collect();
        assert_eq!(ns, vec![12, 13, 54]);
        assert_eq!(pts("a=-2..-1"), vec![vec![-2], vec![-1]]);
        assert!(pts("a=5..1").is_empty());
        assert!(Grid::parse("a=t+2..9").is_err());
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "",
            "k",
            "k=",
            "k=1..",
            "kk=1..2",
            "k=1..2,k=3",
            "n=k..3",
            "K=1",
            "k=1..2*",
            "k=1..2)",
            "k=0..99999999999",
            "k=1..9999999999999999999999",
        ] {
            assert!(Grid::parse(bad).is_err(), "{bad:?}");
        }
    }
}
