//! Shadows, Kruskal–Katona minimal shadows, and cross-intersecting pairs.

use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::bounds::{as_rational, binom, show_rational};
use crate::constructions::{build, ConstructionKind, ConstructionSpec};
use crate::error::{param, Result};
use crate::family::{subsets_of, UniformFamily, VertexSet};

/// `∂^(ℓ) F`: every `(k-ℓ)`-subset of a member.
pub fn shadow(family: &UniformFamily, ell: u32) -> Result<UniformFamily> {
    let k = family.k();
    if ell == 0 || ell >= k {
        return param(format!("shadow level {ell} outside 1..{k}"));
    }
    let mut seen = HashSet::new();
    for &f in family {
        seen.extend(subsets_of(f, k - ell).into_iter().map(VertexSet::mask));
    }
    let sets = seen.into_iter().map(VertexSet::from_mask).collect();
    UniformFamily::with_ground(family.n(), k - ell, family.ground(), sets)
}

/// `|∂^(ℓ) C(n,k,m)|`, the least possible ℓ-shadow of `m` k-sets.
///
/// Computed from the explicit colex segment rather than a cascade formula.
pub fn kk_min_shadow(n: u32, k: u32, m: u64, ell: u32) -> Result<u64> {
    if ell == 0 || ell >= k {
        return param(format!("shadow level {ell} outside 1..{k}"));
    }
    let segment = build(&ConstructionSpec::new(
        ConstructionKind::ColexSegment,
        n,
        k,
        m,
    ))?;
    Ok(shadow(&segment, ell)?.len() as u64)
}

/// Two families on the same `[n]`, possibly of different uniformities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossPair {
    a: UniformFamily,
    b: UniformFamily,
}

impl CrossPair {
    pub fn new(a: UniformFamily, b: UniformFamily) -> Result<Self> {
        if a.n() != b.n() {
            return param(format!(
                "pair lives on different ground sets: n = {} and {}",
                a.n(),
                b.n()
            ));
        }
        Ok(CrossPair { a, b })
    }

    pub fn a(&self) -> &UniformFamily {
        &self.a
    }

    pub fn b(&self) -> &UniformFamily {
        &self.b
    }

    pub fn n(&self) -> u32 {
        self.a.n()
    }

    /// Whether every member of `A` meets every member of `B`.
    pub fn is_cross(&self) -> bool {
        self.a.iter().all(|x| self.b.iter().all(|y| x.meet(*y) > 0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DaykinCheck {
    pub min_size: u64,
    #[serde(serialize_with = "crate::bounds::ser_big")]
    pub bound: BigUint,
    pub equality: bool,
    /// Under equality, both families are the same full star.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub same_full_star: Option<bool>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossReport {
    pub cross: bool,
    /// Present when `a = b = k`, `n > 2k` and the pair is cross-intersecting.
    pub daykin: Option<DaykinCheck>,
    /// Present when the pair is cross-intersecting: the lex segments of the
    /// same sizes are cross-intersecting too.
    pub lex_transfer_ok: Option<bool>,
}

fn is_full_star(f: &UniformFamily) -> bool {
    let (n, k) = (i64::from(f.n()), i64::from(f.k()));
    !f.common_intersection().is_empty() && BigUint::from(f.len()) == binom(n - 1, k - 1)
}

pub fn cross_check(pair: &CrossPair) -> Result<CrossReport> {
    let cross = pair.is_cross();
    let (n, a, b) = (pair.n(), pair.a.k(), pair.b.k());
    let mut report = CrossReport {
        cross,
        daykin: None,
        lex_transfer_ok: None,
    };
    if !cross {
        return Ok(report);
    }
    if a == b && n > 2 * a {
        let min_size = pair.a.len().min(pair.b.len()) as u64;
        let bound = binom(i64::from(n) - 1, i64::from(a) - 1);
        let equality = BigUint::from(min_size) == bound;
        let same_full_star = equality.then(|| pair.a == pair.b && is_full_star(&pair.a));
        report.daykin = Some(DaykinCheck {
            ok: BigUint::from(min_size) <= bound && same_full_star.unwrap_or(true),
            min_size,
            bound,
            equality,
            same_full_star,
        });
    }
    let la = build(&ConstructionSpec::new(
        ConstructionKind::LexSegment,
        n,
        a,
        pair.a.len() as u64,
    ))?;
    let lb = build(&ConstructionSpec::new(
        ConstructionKind::LexSegment,
        n,
        b,
        pair.b.len() as u64,
    ))?;
    report.lex_transfer_ok = Some(CrossPair { a: la, b: lb }.is_cross());
    Ok(report)
}

/// Optional parameters of [`cross_inequalities`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CrossParams {
    pub d: Option<u32>,
    pub r: Option<u32>,
}

/// One inequality evaluated on a pair, with both sides when applicable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityCheck {
    pub name: String,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
}

impl InequalityCheck {
    fn skip(name: impl Into<String>, reason: impl Into<String>) -> Self {
        InequalityCheck {
            name: name.into(),
            applicable: false,
            reason: Some(reason.into()),
            lhs: None,
            rhs: None,
            holds: None,
        }
    }

    fn le(name: impl Into<String>, lhs: BigRational, rhs: BigRational) -> Self {
        InequalityCheck {
            name: name.into(),
            applicable: true,
            reason: None,
            holds: Some(lhs <= rhs),
            lhs: Some(show_rational(&lhs)),
            rhs: Some(show_rational(&rhs)),
        }
    }
}

fn q(v: BigUint) -> BigRational {
    as_rational(&v)
}

fn qn(v: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Evaluates the size inequalities for cross-intersecting pairs whose
/// hypotheses hold; the rest are reported as not applicable.
pub fn cross_inequalities(pair: &CrossPair, params: CrossParams) -> Vec<InequalityCheck> {
    const SUM: &str = "sum: |A|+|B| <= C(n,a)";
    const PAIR_WINDOW: &str = "pair_window: |B| <= C(n-1,b-1)+C(n-d,b-d+1)";
    const BLOCK: &str = "block: |B| <= C(n,b)-C(n-l,b)";
    const WEIGHTED: &str = "weighted: r|A|+|B| <= C(n,k)";
    const RATIO: &str = "ratio: |A|+C(n-d,a)/C(n-d,b-d)|B| <= C(n,a)";

    if !pair.is_cross() {
        return [SUM, PAIR_WINDOW, BLOCK, WEIGHTED, RATIO]
            .into_iter()
            .map(|name| InequalityCheck::skip(name, "pair is not cross-intersecting"))
            .collect();
    }
    let n = i64::from(pair.n());
    let (a, b) = (i64::from(pair.a.k()), i64::from(pair.b.k()));
    let (sa, sb) = (pair.a.len(), pair.b.len());
    let size_a = BigUint::from(sa);
    let mut out = Vec::new();

    // |A| + |B| for uniformities a and a+2
    out.push(if b != a + 2 {
        InequalityCheck::skip(SUM, "needs b = a+2")
    } else if n < 2 * a + 2 {
        InequalityCheck::skip(SUM, "needs n >= 2a+2")
    } else if size_a < binom(n - 1, a - 1) + binom(n - 2, a - 2) {
        InequalityCheck::skip(SUM, "needs |A| >= C(n-1,a-1)+C(n-2,a-2)")
    } else {
        InequalityCheck::le(SUM, qn(sa + sb), q(binom(n, a)))
    });

    // A contains every a-set through 1 and some vertex of [2,d]
    out.push(match params.d.map(i64::from) {
        None => InequalityCheck::skip(PAIR_WINDOW, "needs d"),
        Some(_) if n < a + b => InequalityCheck::skip(PAIR_WINDOW, "needs n >= a+b"),
        Some(d) if !(2..=b + 1).contains(&d) => {
            InequalityCheck::skip(PAIR_WINDOW, "needs 2 <= d <= b+1")
        }
        Some(d) => {
            let thr = (2..=d).fold(BigUint::zero(), |acc, j| acc + binom(n - j, a - 2));
            if size_a < thr {
                InequalityCheck::skip(PAIR_WINDOW, format!("needs |A| >= {thr}"))
            } else {
                InequalityCheck::le(
                    format!("{PAIR_WINDOW} [d={d}]"),
                    qn(sb),
                    q(binom(n - 1, b - 1) + binom(n - d, b - d + 1)),
                )
            }
        }
    });

    // A contains every a-set through [ℓ]; one line per qualifying ℓ
    if n < a + b {
        out.push(InequalityCheck::skip(BLOCK, "needs n >= a+b"));
    } else {
        let qualifying: Vec<i64> = (1..=a).filter(|&l| size_a >= binom(n - l, a - l)).collect();
        if qualifying.is_empty() {
            out.push(InequalityCheck::skip(
                BLOCK,
                "needs |A| >= C(n-l,a-l) for some l",
            ));
        }
        for l in qualifying {
            out.push(InequalityCheck::le(
                format!("{BLOCK} [l={l}]"),
                qn(sb),
                q(binom(n, b) - binom(n - l, b)),
            ));
        }
    }

    out.push(match params.r.map(i64::from) {
        None => InequalityCheck::skip(WEIGHTED, "needs r"),
        Some(_) if a != b => InequalityCheck::skip(WEIGHTED, "needs a = b"),
        Some(_) if sa > sb => InequalityCheck::skip(WEIGHTED, "needs |A| <= |B|"),
        Some(r) if r < 1 || n < (r + 1) * a => {
            InequalityCheck::skip(WEIGHTED, "needs r >= 1 and n >= (r+1)k")
        }
        Some(r) => InequalityCheck::le(
            format!("{WEIGHTED} [r={r}]"),
            qn(sa) * BigRational::from_integer(BigInt::from(r)) + qn(sb),
            q(binom(n, a)),
        ),
    });

    out.push(match params.d.map(i64::from) {
        None => InequalityCheck::skip(RATIO, "needs d"),
        Some(_) if n < a + b => InequalityCheck::skip(RATIO, "needs n >= a+b"),
        Some(d) if d < 1 || d >= b => InequalityCheck::skip(RATIO, "needs 1 <= d < b"),
        Some(d) => {
            let thr = (1..=d).fold(BigUint::zero(), |acc, j| acc + binom(n - j, a - 1));
            if size_a < thr {
                InequalityCheck::skip(RATIO, format!("needs |A| >= {thr}"))
            } else {
                let coef = q(binom(n - d, a)) / q(binom(n - d, b - d));
                InequalityCheck::le(
                    format!("{RATIO} [d={d}]"),
                    qn(sa) + coef * qn(sb),
                    q(binom(n, a)),
                )
            }
        }
    });
    out
}
