//! Named extremal families and their closed-form sizes and degrees.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::bounds::{binom, ser_big};
use crate::error::{param, Error, Result};
use crate::family::{k_subsets, subsets_of, UniformFamily, VertexSet, MAX_N};

/// Refuse to materialize families from more than this many candidate k-sets.
pub const BUILD_LIMIT: u64 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ConstructionKind {
    /// All k-sets through the vertex `param`.
    #[serde(rename = "star")]
    Star,
    /// `H_ℓ` with `ℓ = param`; `ℓ = k` is the Hilton–Milner family.
    #[serde(rename = "H_ell")]
    HEll,
    /// `H(n,k,t)` with `t = param`.
    #[serde(rename = "H_nkt")]
    HNkt,
    /// `L_r` with `r = param`: k-sets with at least `r` elements in `[2r-1]`.
    #[serde(rename = "L_r")]
    LR,
    /// The first `param` k-sets in lexicographic order.
    #[serde(rename = "lex_segment")]
    LexSegment,
    /// The first `param` k-sets in colexicographic order.
    #[serde(rename = "colex_segment")]
    ColexSegment,
    /// k-sets meeting `[3]` in at least two elements (`H_2`).
    #[serde(rename = "triangle")]
    Triangle,
}

impl ConstructionKind {
    pub const ALL: [ConstructionKind; 7] = [
        ConstructionKind::Star,
        ConstructionKind::HEll,
        ConstructionKind::HNkt,
        ConstructionKind::LR,
        ConstructionKind::LexSegment,
        ConstructionKind::ColexSegment,
        ConstructionKind::Triangle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::Star => "star",
            ConstructionKind::HEll => "H_ell",
            ConstructionKind::HNkt => "H_nkt",
            ConstructionKind::LR => "L_r",
            ConstructionKind::LexSegment => "lex_segment",
            ConstructionKind::ColexSegment => "colex_segment",
            ConstructionKind::Triangle => "triangle",
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstructionKind::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parameter(format!("unknown construction kind {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionSpec {
    pub kind: ConstructionKind,
    pub n: u32,
    pub k: u32,
    /// Ignored by `triangle`, required by every other kind.
    pub param: Option<u64>,
}

impl ConstructionSpec {
    pub fn new(kind: ConstructionKind, n: u32, k: u32, param: u64) -> Self {
        ConstructionSpec {
            kind,
            n,
            k,
            param: Some(param),
        }
    }

    pub fn triangle(n: u32, k: u32) -> Self {
        ConstructionSpec {
            kind: ConstructionKind::Triangle,
            n,
            k,
            param: None,
        }
    }

    /// Checks parameter ranges and returns the parameter (2 for `triangle`).
    pub fn validate(&self) -> Result<u64> {
        let (n, k) = (self.n, self.k);
        if n == 0 || n > MAX_N || k == 0 || k > n {
            return param(format!("need 1 ≤ k ≤ n ≤ {MAX_N}, got n = {n}, k = {k}"));
        }
        let (n, k) = (u64::from(n), u64::from(k));
        if self.kind == ConstructionKind::Triangle {
            if k < 2 || n < 3 {
                return param("triangle needs k ≥ 2 and n ≥ 3");
            }
            return Ok(2);
        }
        let Some(p) = self.param else {
            return param(format!("{} needs a parameter", self.kind));
        };
        let ok = match self.kind {
            ConstructionKind::Star => (1..=n).contains(&p),
            ConstructionKind::HEll => (2..=k).contains(&p) && p < n,
            ConstructionKind::HNkt => p >= 1 && p < k && k < n,
            ConstructionKind::LR => (1..=k).contains(&p) && 2 * p - 1 <= n,
            ConstructionKind::LexSegment | ConstructionKind::ColexSegment => {
                BigUint::from(p) <= binom(n as i64, k as i64)
            }
            ConstructionKind::Triangle => unreachable!(),
        };
        if !ok {
            let range = match self.kind {
                ConstructionKind::Star => "1 ≤ x ≤ n",
                ConstructionKind::HEll => "2 ≤ ℓ ≤ k and ℓ + 1 ≤ n",
                ConstructionKind::HNkt => "1 ≤ t < k and k + 1 ≤ n",
                ConstructionKind::LR => "1 ≤ r ≤ k and 2r - 1 ≤ n",
                _ => "0 ≤ m ≤ C(n,k)",
            };
            return param(format!("{} parameter {p} outside {range}", self.kind));
        }
        Ok(p)
    }
}

fn filtered(n: u32, k: u32, keep: impl Fn(VertexSet) -> bool) -> Result<UniformFamily> {
    let total = binom(i64::from(n), i64::from(k));
    if total > BigUint::from(BUILD_LIMIT) {
        return param(format!(
            "C({n},{k}) = {total} candidate sets exceed the build limit {BUILD_LIMIT}"
        ));
    }
    let sets = k_subsets(n, k).into_iter().filter(|&s| keep(s)).collect();
    Ok(UniformFamily::from_valid(n, k, VertexSet::full(n), sets))
}

/// Builds the family described by `spec` on the canonical anchor vertices.
pub fn build(spec: &ConstructionSpec) -> Result<UniformFamily> {
    let p = spec.validate()?;
    let (n, k) = (spec.n, spec.k);
    match spec.kind {
        ConstructionKind::Star => filtered(n, k, |s| s.contains(p as u32)),
        ConstructionKind::HEll | ConstructionKind::Triangle => {
            let window = VertexSet::interval(2, p as u32 + 1);
            filtered(n, k, |s| {
                (s.contains(1) && s.meet(window) > 0) || window.is_subset(s)
            })
        }
        ConstructionKind::HNkt => {
            let t = p as u32;
            let core = VertexSet::interval(1, t);
            let window = VertexSet::interval(t + 1, k + 1);
            let top = VertexSet::interval(1, k + 1);
            filtered(n, k, |s| {
                (core.is_subset(s) && s.meet(window) > 0)
                    || (s.is_subset(top) && !core.is_subset(s))
            })
        }
        ConstructionKind::LR => {
            let r = p as u32;
            let base = VertexSet::interval(1, 2 * r - 1);
            filtered(n, k, |s| s.meet(base) >= r)
        }
        ConstructionKind::LexSegment => {
            check_segment_size(p)?;
            Ok(UniformFamily::from_valid(
                n,
                k,
                VertexSet::full(n),
                lex_prefix(n, k, p as usize),
            ))
        }
        ConstructionKind::ColexSegment => {
            check_segment_size(p)?;
            Ok(UniformFamily::from_valid(
                n,
                k,
                VertexSet::full(n),
                colex_prefix(n, k, p as usize),
            ))
        }
    }
}

fn check_segment_size(m: u64) -> Result<()> {
    if m > BUILD_LIMIT {
        return param(format!(
            "segment of {m} sets exceeds the build limit {BUILD_LIMIT}"
        ));
    }
    Ok(())
}

/// The first `m` k-subsets of `[n]` in lexicographic order.
fn lex_prefix(n: u32, k: u32, m: usize) -> Vec<VertexSet> {
    let mut out = Vec::with_capacity(m);
    if m == 0 {
        return out;
    }
    let mut idx: Vec<u32> = (1..=k).collect();
    loop {
        out.push(VertexSet::from_vertices(idx.iter().copied()).expect("in range"));
        if out.len() == m {
            return out;
        }
        let k = k as usize;
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == n - (k - pos) as u32 {
            pos -= 1;
        }
        if pos == 0 {
            return out;
        }
        idx[pos - 1] += 1;
        for j in pos..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// The first `m` k-subsets of `[n]` in colexicographic order. They all lie
/// inside `[N]` for the least `N` with `C(N, k) ≥ m`.
fn colex_prefix(n: u32, k: u32, m: usize) -> Vec<VertexSet> {
    let mut top = k;
    while top < n && binom(i64::from(top), i64::from(k)) < BigUint::from(m) {
        top += 1;
    }
    let mut sets = subsets_of(VertexSet::full(top), k);
    sets.sort_unstable_by(|a, b| a.colex_cmp(*b));
    sets.truncate(m);
    sets
}

/// Predicted size and sorted degrees of a construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    #[serde(serialize_with = "ser_big")]
    pub size: BigUint,
    /// `i ↦ d_i` for the indices the formula covers.
    #[serde(serialize_with = "ser_profile")]
    pub degree_profile: BTreeMap<usize, BigUint>,
}

fn ser_profile<S: serde::Serializer>(
    m: &BTreeMap<usize, BigUint>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(m.iter().map(|(i, d)| (i.to_string(), d.to_string())))
}

/// `d_i(H_ℓ)` for `i ∈ [2, ℓ+1]`.
pub(crate) fn window_degree(n: i64, k: i64, ell: i64) -> BigUint {
    binom(n - 2, k - 2) + binom(n - ell - 1, k - ell)
}

/// `d_i(L_r)` for `i ∈ [1, 2r-1]`.
pub(crate) fn majority_degree(n: i64, k: i64, r: i64) -> BigUint {
    (r - 1..=2 * r - 2).fold(BigUint::zero(), |acc, j| {
        acc + binom(2 * r - 2, j) * binom(n - 2 * r + 1, k - j - 1)
    })
}

/// Exact size and the covered part of the degree profile.
pub fn closed_form(spec: &ConstructionSpec) -> Result<ClosedForm> {
    let p = spec.validate()? as i64;
    let (n, k) = (i64::from(spec.n), i64::from(spec.k));
    let mut profile = BTreeMap::new();
    let size = match spec.kind {
        ConstructionKind::Star => {
            profile.insert(1, binom(n - 1, k - 1));
            for i in 2..=n as usize {
                profile.insert(i, binom(n - 2, k - 2));
            }
            binom(n - 1, k - 1)
        }
        ConstructionKind::HEll | ConstructionKind::Triangle => {
            let ell = p;
            for i in 2..=(ell + 1) as usize {
                profile.insert(i, window_degree(n, k, ell));
            }
            binom(n - 1, k - 1) - binom(n - ell - 1, k - 1) + binom(n - ell - 1, k - ell)
        }
        ConstructionKind::HNkt => {
            let t = p;
            let d = binom(n - t - 1, k - t - 1) + BigUint::from(t as u64);
            for i in (t + 1) as usize..=(k + 1) as usize {
                profile.insert(i, d.clone());
            }
            binom(n - t, k - t) - binom(n - k - 1, k - t) + BigUint::from(t as u64)
        }
        ConstructionKind::LR => {
            let r = p;
            for i in 1..=(2 * r - 1) as usize {
                profile.insert(i, majority_degree(n, k, r));
            }
            (r..=2 * r - 1).fold(BigUint::zero(), |acc, j| {
                acc + binom(2 * r - 1, j) * binom(n - 2 * r + 1, k - j)
            })
        }
        ConstructionKind::LexSegment | ConstructionKind::ColexSegment => {
            return Err(Error::Unsupported(format!(
                "{} has no closed form",
                spec.kind
            )));
        }
    };
    Ok(ClosedForm {
        size,
        degree_profile: profile,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::degree_sequence;

    fn sets(f: &UniformFamily) -> Vec<Vec<u32>> {
        f.iter().map(|s| s.to_vec()).collect()
    }

    #[test]
    fn triangle_family() {
        let h2 = build(&ConstructionSpec::new(ConstructionKind::HEll, 7, 3, 2)).unwrap();
        assert_eq!(h2.len(), 13);
        let base = VertexSet::interval(1, 3);
        let direct: Vec<VertexSet> = k_subsets(7, 3)
            .into_iter()
            .filter(|s| s.meet(base) >= 2)
            .collect();
        assert_eq!(h2.sets(), &direct[..]);
        assert_eq!(build(&ConstructionSpec::triangle(7, 3)).unwrap(), h2);
        assert_eq!(
            build(&ConstructionSpec::new(ConstructionKind::LR, 7, 3, 2)).unwrap(),
            h2
        );
        assert_eq!(degree_sequence(&h2).values(), vec![9, 9, 9, 3, 3, 3, 3]);
    }

    #[test]
    fn segments() {
        let c = build(&ConstructionSpec::new(
            ConstructionKind::ColexSegment,
            7,
            3,
            4,
        ))
        .unwrap();
        assert_eq!(
            sets(&c),
            vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]]
        );

        let l = build(&ConstructionSpec::new(
            ConstructionKind::LexSegment,
            7,
            3,
            16,
        ))
        .unwrap();
        let star = build(&ConstructionSpec::new(ConstructionKind::Star, 7, 3, 1)).unwrap();
        assert!(star.is_subfamily_of(&l));
        assert!(l.contains(VertexSet::of(&[2, 3, 4])));
        assert_eq!(l.len(), 16);

        for m in [0, 1, 20, 35] {
            assert_eq!(
                build(&ConstructionSpec::new(
                    ConstructionKind::LexSegment,
                    7,
                    3,
                    m
                ))
                .unwrap()
                .len(),
                m as usize
            );
            assert_eq!(
                build(&ConstructionSpec::new(
                    ConstructionKind::ColexSegment,
                    7,
                    3,
                    m
                ))
                .unwrap()
                .len(),
                m as usize
            );
        }
        assert!(build(&ConstructionSpec::new(
            ConstructionKind::LexSegment,
            7,
            3,
            36
        ))
        .is_err());
    }

    #[test]
    fn closed_form_examples() {
        let cf = closed_form(&ConstructionSpec::new(ConstructionKind::HEll, 7, 3, 2)).unwrap();
        assert_eq!(cf.size, BigUint::from(13u8));
        assert_eq!(
            cf.degree_profile.keys().copied().collect::<Vec<_>>(),
            vec![2, 3]
        );
        assert!(cf.degree_profile.values().all(|d| *d == BigUint::from(9u8)));

        let cf = closed_form(&ConstructionSpec::new(ConstructionKind::LR, 7, 3, 2)).unwrap();
        assert_eq!(cf.degree_profile.len(), 3);
        assert!(cf.degree_profile.values().all(|d| *d == BigUint::from(9u8)));

        let cf = closed_form(&ConstructionSpec::new(ConstructionKind::HNkt, 9, 4, 2)).unwrap();
        assert_eq!(
            cf.degree_profile.keys().copied().collect::<Vec<_>>(),
            vec![3, 4, 5]
        );
        assert!(cf.degree_profile.values().all(|d| *d == BigUint::from(8u8)));

        assert!(matches!(
            closed_form(&ConstructionSpec::new(
                ConstructionKind::ColexSegment,
                7,
                3,
                4
            )),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn hilton_milner_is_h_k() {
        let hm = build(&ConstructionSpec::new(ConstructionKind::HEll, 8, 3, 3)).unwrap();
        let bound = binom(7, 2) - binom(4, 2) + BigUint::from(1u8);
        assert_eq!(BigUint::from(hm.len()), bound);
        assert!(hm.common_intersection().is_empty());
    }

    #[test]
    fn h_nkt_membership() {
        let f = build(&ConstructionSpec::new(ConstructionKind::HNkt, 9, 4, 2)).unwrap();
        assert!(f.contains(VertexSet::of(&[2, 3, 4, 5])));
        assert!(f.contains(VertexSet::of(&[1, 3, 4, 5])));
        assert!(!f.contains(VertexSet::of(&[3, 4, 5, 6])));
        assert!(f.contains(VertexSet::of(&[1, 2, 3, 9])));
        assert!(!f.contains(VertexSet::of(&[1, 2, 6, 9])));
    }

    #[test]
    fn parameter_ranges() {
        let bad = [
            ConstructionSpec::new(ConstructionKind::Star, 7, 3, 0),
            ConstructionSpec::new(ConstructionKind::Star, 7, 3, 8),
            ConstructionSpec::new(ConstructionKind::HEll, 7, 3, 1),
            ConstructionSpec::new(ConstructionKind::HEll, 7, 3, 4),
            ConstructionSpec::new(ConstructionKind::HNkt, 7, 3, 3),
            ConstructionSpec::new(ConstructionKind::HNkt, 4, 4, 1),
            ConstructionSpec::new(ConstructionKind::LR, 4, 3, 3),
            ConstructionSpec::new(ConstructionKind::LR, 7, 3, 0),
            ConstructionSpec::new(ConstructionKind::Star, 0, 0, 1),
            ConstructionSpec {
                kind: ConstructionKind::Star,
                n: 7,
                k: 3,
                param: None,
            },
        ];
        for spec in bad {
            assert!(matches!(build(&spec), Err(Error::Parameter(_))), "{spec:?}");
        }
        assert!(build(&ConstructionSpec::new(ConstructionKind::Star, 64, 32, 1)).is_err());
        assert!(closed_form(&ConstructionSpec::new(ConstructionKind::Star, 64, 32, 1)).is_ok());
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in ConstructionKind::ALL {
            assert_eq!(kind.name().parse::<ConstructionKind>().unwrap(), kind);
        }
    }
}
