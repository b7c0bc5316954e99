//! Exhaustive search over maximal t-intersecting families.
//!
//! Maximal t-intersecting families are the maximal cliques of the graph on
//! all k-sets joining pairs that share at least `t` elements. Degrees only grow
//! when sets are added, so maxima of `d_i` are attained on maximal families.

mod canon;
mod clique;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::bounds::{
    binom, evaluate, ser_big, BoundId, BoundParams, Evaluation, FamilyClass, Quantity,
};
use crate::constructions::{build, ConstructionKind, ConstructionSpec};
use crate::error::{param, Error, Result};
use crate::family::{degree_sequence, DegreeSequence, UniformFamily, VertexSet, MAX_N};
use crate::format::write_family;
use crate::transforms::{addable_sets, is_shifted};
use crate::transversal::transversal_report;

pub use canon::{canonical_form, CanonicalForm, MAX_CANON_N};
use clique::CompatGraph;

/// Largest number of k-sets the enumeration accepts.
pub const GUARD: u128 = 10_000;

fn graph(n: u32, k: u32, t: u32) -> Result<CompatGraph> {
    if n == 0 || n > MAX_N || k == 0 || k > n {
        return param(format!("need 1 ≤ k ≤ n ≤ {MAX_N}, got n = {n}, k = {k}"));
    }
    if t == 0 || t > k {
        return param(format!("t = {t} outside 1..={k}"));
    }
    let vertices = binom(i64::from(n), i64::from(k))
        .to_u128()
        .unwrap_or(u128::MAX);
    if vertices > GUARD {
        return Err(Error::Guard {
            n,
            k,
            vertices,
            limit: GUARD,
        });
    }
    Ok(CompatGraph::new(n, k, t))
}

fn family_of(n: u32, k: u32, sets: &[VertexSet]) -> UniformFamily {
    UniformFamily::from_valid(n, k, VertexSet::full(n), sets.to_vec())
}

/// Every maximal t-intersecting k-uniform family on `[n]`, in a fixed order.
pub fn enumerate_maximal(n: u32, k: u32, t: u32) -> Result<Vec<UniformFamily>> {
    let mut out = Vec::new();
    for_each_maximal(n, k, t, |f| out.push(f.clone()))?;
    Ok(out)
}

/// Streams the maximal families to `visit` on the calling thread; returns the count.
pub fn for_each_maximal(
    n: u32,
    k: u32,
    t: u32,
    mut visit: impl FnMut(&UniformFamily),
) -> Result<u64> {
    let g = graph(n, k, t)?;
    let mut count = 0;
    for i in 0..g.vertex_count() {
        g.branch(i, &mut |sets| {
            count += 1;
            visit(&family_of(n, k, sets));
        });
    }
    Ok(count)
}

/// Folds the maximal families branch by branch over `workers` threads.
///
/// Returns one accumulator per top-level branch, in branch order, so any
/// in-order merge is independent of the worker count.
pub fn fold_maximal<A, I, S>(
    n: u32,
    k: u32,
    t: u32,
    workers: usize,
    init: I,
    step: S,
) -> Result<Vec<A>>
where
    A: Send,
    I: Fn() -> A + Sync,
    S: Fn(&mut A, &UniformFamily) + Sync,
{
    let g = graph(n, k, t)?;
    Ok(g.fold_branches(workers, init, |acc, sets| step(acc, &family_of(n, k, sets))))
}

/// A family reported as evidence: canonical when `n ≤ 12`, as found otherwise.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Witness {
    canonical: bool,
    family: UniformFamily,
}

impl Witness {
    pub fn of(family: &UniformFamily) -> Self {
        match canonical_form(family) {
            Ok(c) => Witness {
                canonical: true,
                family: c.to_family(),
            },
            Err(_) => Witness {
                canonical: false,
                family: family.clone(),
            },
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn family(&self) -> &UniformFamily {
        &self.family
    }
}

impl PartialOrd for UniformFamily {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for UniformFamily {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n(), self.k(), self.ground().mask())
            .cmp(&(other.n(), other.k(), other.ground().mask()))
            .then_with(|| {
                let a = self.sets().iter().map(|s| s.mask());
                a.cmp(other.sets().iter().map(|s| s.mask()))
            })
    }
}

impl Serialize for Witness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Witness", 2)?;
        st.serialize_field("canonical", &self.canonical)?;
        st.serialize_field("family", &write_family(&self.family))?;
        st.end()
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_family(&self.family))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Restrict {
    All,
    Shifted,
}

impl FromStr for Restrict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Restrict::All),
            "shifted" => Ok(Restrict::Shifted),
            _ => param(format!("unknown restriction {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub workers: usize,
    /// Count isomorphism classes of the considered families.
    pub classes: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: 1,
            classes: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexMax {
    pub value: u64,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub n: u32,
    pub k: u32,
    pub t: u32,
    pub restrict: Restrict,
    /// `i ↦ max d_i` over the considered families, with the first family attaining it.
    pub per_index_max: BTreeMap<usize, IndexMax>,
    /// Maximal families produced by the enumeration.
    pub families_enumerated: u64,
    /// Families left after the restriction.
    pub families_considered: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isomorphism_classes: Option<usize>,
    pub exhaustive: bool,
    /// Every witness re-checked to be maximal t-intersecting.
    pub witnesses_verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

struct ProfileAcc {
    enumerated: u64,
    considered: u64,
    best: Vec<Option<(u64, UniformFamily)>>,
    classes: BTreeSet<CanonicalForm>,
}

fn is_maximal(f: &UniformFamily, t: u32) -> bool {
    crate::family::t_intersecting_unchecked(f.sets(), t)
        && addable_sets(f, t).is_ok_and(|a| a.is_empty())
}

/// Per-index maxima of the degree sequence over all maximal t-intersecting
/// families, or only the shifted ones.
pub fn max_degree_profile(
    n: u32,
    k: u32,
    t: u32,
    restrict: Restrict,
    opts: SearchOptions,
) -> Result<SearchReport> {
    let nn = n as usize;
    if opts.classes && n > MAX_CANON_N {
        return param(format!("class counting needs n ≤ {MAX_CANON_N}"));
    }
    let parts = fold_maximal(
        n,
        k,
        t,
        opts.workers,
        || ProfileAcc {
            enumerated: 0,
            considered: 0,
            best: vec![None; nn],
            classes: BTreeSet::new(),
        },
        |acc, f| {
            acc.enumerated += 1;
            if restrict == Restrict::Shifted && !is_shifted(f) {
                return;
            }
            acc.considered += 1;
            let ds = degree_sequence(f);
            for (i, slot) in acc.best.iter_mut().enumerate() {
                let d = ds.d(i + 1);
                if slot.as_ref().is_none_or(|(v, _)| d > *v) {
                    *slot = Some((d, f.clone()));
                }
            }
            if opts.classes {
                acc.classes.insert(canonical_form(f).expect("n checked"));
            }
        },
    )?;

    let mut enumerated = 0;
    let mut considered = 0;
    let mut best: Vec<Option<(u64, UniformFamily)>> = vec![None; nn];
    let mut classes = BTreeSet::new();
    for part in parts {
        enumerated += part.enumerated;
        considered += part.considered;
        for (slot, cand) in best.iter_mut().zip(part.best) {
            if let Some((d, f)) = cand {
                if slot.as_ref().is_none_or(|(v, _)| d > *v) {
                    *slot = Some((d, f));
                }
            }
        }
        classes.extend(part.classes);
    }
    let mut verified = true;
    let per_index_max = best
        .into_iter()
        .enumerate()
        .filter_map(|(i, slot)| {
            slot.map(|(value, f)| {
                verified &= is_maximal(&f, t);
                (
                    i + 1,
                    IndexMax {
                        value,
                        witness: Witness::of(&f),
                    },
                )
            })
        })
        .collect();
    Ok(SearchReport {
        n,
        k,
        t,
        restrict,
        per_index_max,
        families_enumerated: enumerated,
        families_considered: considered,
        isomorphism_classes: opts.classes.then_some(classes.len()),
        exhaustive: true,
        witnesses_verified: verified,
        wall_time_ms: None,
    })
}

/// Extreme value of a per-family statistic, with the families attaining it.
struct Extreme {
    enumerated: u64,
    considered: u64,
    value: Option<u64>,
    first: Option<UniformFamily>,
    attaining: BTreeSet<Witness>,
}

impl Extreme {
    fn new() -> Self {
        Extreme {
            enumerated: 0,
            considered: 0,
            value: None,
            first: None,
            attaining: BTreeSet::new(),
        }
    }

    fn offer(&mut self, v: u64, f: &UniformFamily, minimize: bool, collect: bool) {
        let better = self
            .value
            .is_none_or(|cur| if minimize { v < cur } else { v > cur });
        if better {
            self.value = Some(v);
            self.first = Some(f.clone());
            self.attaining.clear();
        }
        if collect && self.value == Some(v) {
            self.attaining.insert(Witness::of(f));
        }
    }

    fn merge(mut self, other: Extreme, minimize: bool) -> Self {
        self.enumerated += other.enumerated;
        self.considered += other.considered;
        if let Some(v) = other.value {
            let better = self
                .value
                .is_none_or(|cur| if minimize { v < cur } else { v > cur });
            if better {
                self.value = Some(v);
                self.first = other.first;
                self.attaining = other.attaining;
            } else if self.value == Some(v) {
                self.attaining.extend(other.attaining);
            }
        }
        self
    }
}

#[allow(clippy::too_many_arguments)]
fn extreme<P, M>(
    n: u32,
    k: u32,
    t: u32,
    workers: usize,
    minimize: bool,
    collect: bool,
    keep: P,
    measure: M,
) -> Result<Extreme>
where
    P: Fn(&UniformFamily, &DegreeSequence) -> bool + Sync,
    M: Fn(&UniformFamily, &DegreeSequence) -> u64 + Sync,
{
    let parts = fold_maximal(n, k, t, workers, Extreme::new, |acc, f| {
        acc.enumerated += 1;
        let ds = degree_sequence(f);
        if keep(f, &ds) {
            acc.considered += 1;
            acc.offer(measure(f, &ds), f, minimize, collect);
        }
    })?;
    Ok(parts
        .into_iter()
        .fold(Extreme::new(), |a, b| a.merge(b, minimize)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable,
}

/// Classification of the families attaining the bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityCheck {
    pub expected: Vec<Witness>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub id: BoundId,
    pub params: BoundParams,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub quantity: Quantity,
    #[serde(serialize_with = "ser_big")]
    pub bound: BigUint,
    pub strict: bool,
    /// Largest value of the bounded quantity over the considered families.
    pub observed: Option<u64>,
    pub families_enumerated: u64,
    /// Families meeting the theorem's hypothesis.
    pub families_considered: u64,
    pub attains_bound: bool,
    /// Isomorphism classes attaining `observed`.
    pub extremal_witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equality: Option<EqualityCheck>,
}

/// τ(F) = 2 for an intersecting family: no common vertex, but some pair meets every member.
fn cover_number_is_two(f: &UniformFamily) -> bool {
    if f.is_empty() || !f.common_intersection().is_empty() {
        return false;
    }
    let n = f.n();
    (1..n).any(|x| {
        (x + 1..=n).any(|y| {
            let pair = VertexSet::of(&[x, y]);
            f.iter().all(|s| s.meet(pair) > 0)
        })
    })
}

/// Checks a bound against exhaustive search at `(n, k)`.
///
/// Bounds about intersecting families take `t = 1`; the t-intersecting ones
/// read `params.t`. The search covers maximal families; for bounds that
/// restrict the family by a property not inherited by supersets (the `d_1`
/// cap, the covering number) only the maximal families with that property
/// are checked.
pub fn verify_theorem(
    id: BoundId,
    params: BoundParams,
    opts: SearchOptions,
) -> Result<VerifyReport> {
    let eval: Evaluation = evaluate(id, params)?;
    let t_family = match id {
        BoundId::Ekr | BoundId::Tint | BoundId::Shifted | BoundId::Prop51 => {
            params.t.expect("checked by evaluate")
        }
        _ => {
            if params.t.is_some_and(|t| t != 1) {
                return param(format!("{id} is about intersecting families; t must be 1"));
            }
            1
        }
    };
    let mut report = VerifyReport {
        id,
        params,
        verdict: Verdict::Inapplicable,
        reason: eval.reason.clone(),
        quantity: eval.quantity,
        bound: eval.bound.clone(),
        strict: eval.strict,
        observed: None,
        families_enumerated: 0,
        families_considered: 0,
        attains_bound: false,
        extremal_witnesses: Vec::new(),
        equality: None,
    };
    if !eval.applicable {
        return Ok(report);
    }
    let (n, k) = (params.n, params.k);
    let cap = eval.cap.clone();
    let tau = params.i;
    let keep = |f: &UniformFamily, ds: &DegreeSequence| -> bool {
        match eval.class {
            FamilyClass::TIntersecting => true,
            FamilyClass::NonTrivial => f.common_intersection().is_empty(),
            FamilyClass::MaxDegreeAtMost => {
                BigUint::from(ds.d(1)) <= *cap.as_ref().expect("F87 cap")
            }
            FamilyClass::Shifted => is_shifted(f),
            FamilyClass::CoveringNumber => match id {
                BoundId::Prop45 => cover_number_is_two(f),
                _ => transversal_report(f, t_family).is_ok_and(|r| r.tau == tau),
            },
        }
    };
    let quantity = eval.quantity;
    let measure = |f: &UniformFamily, ds: &DegreeSequence| -> u64 {
        match quantity {
            Quantity::Size => f.len() as u64,
            Quantity::Degree(i) => ds.d(i),
        }
    };
    let ext = extreme(n, k, t_family, opts.workers, false, true, keep, measure)?;
    report.families_enumerated = ext.enumerated;
    report.families_considered = ext.considered;
    report.observed = ext.value;
    report.extremal_witnesses = ext.attaining.into_iter().collect();
    let holds = ext.value.is_none_or(|v| eval.holds(&BigUint::from(v)));
    report.attains_bound = ext.value.is_some_and(|v| BigUint::from(v) == eval.bound);

    if report.attains_bound {
        let expected: Option<Vec<UniformFamily>> = match id {
            BoundId::D2 => Some(vec![build(&ConstructionSpec::triangle(n, k))?]),
            BoundId::F87 => {
                let ell = params.ell.expect("checked by evaluate");
                let mut v = vec![build(&ConstructionSpec::new(
                    ConstructionKind::HEll,
                    n,
                    k,
                    u64::from(ell),
                ))?];
                if ell == 3 {
                    v.push(build(&ConstructionSpec::triangle(n, k))?);
                }
                Some(v)
            }
            _ => None,
        };
        if let Some(expected) = expected {
            let expected: BTreeSet<Witness> = expected.iter().map(Witness::of).collect();
            let ok = report
                .extremal_witnesses
                .iter()
                .all(|w| expected.contains(w));
            report.equality = Some(EqualityCheck {
                expected: expected.into_iter().collect(),
                ok,
            });
        }
    }
    let equality_ok = report.equality.as_ref().is_none_or(|e| e.ok);
    report.verdict = if holds && equality_ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    report.reason = None;
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ProbeId {
    /// At least `n - 2k` vertices of degree at most `C(n-2, k-2)`.
    C71,
    /// `d_{k+2} ≤ C(n-t-1, k-t-1)` for t-intersecting families.
    C72,
    /// `d_{ℓ+1} ≤ C(n-2, k-2) + C(n-ℓ-1, k-ℓ)`; reports the observed maximum only.
    P110,
}

impl fmt::Display for ProbeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProbeId::C71 => "C71",
            ProbeId::C72 => "C72",
            ProbeId::P110 => "P110",
        })
    }
}

impl FromStr for ProbeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "C71" => Ok(ProbeId::C71),
            "C72" => Ok(ProbeId::C72),
            "P110" => Ok(ProbeId::P110),
            _ => param(format!("unknown probe id {s:?}")),
        }
    }
}

/// Evidence about an open statement. Probes never fail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub id: ProbeId,
    pub n: u32,
    pub k: u32,
    pub t: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u32>,
    pub statistic: String,
    pub families_enumerated: u64,
    pub observed: u64,
    pub reference: String,
    /// Whether the observation agrees with the statement at this size.
    pub consistent: bool,
    pub witness: Witness,
}

/// Runs a probe by exhaustive search. `t` is read by `C72`, `ell` by `P110`.
pub fn conjecture_probe(
    id: ProbeId,
    n: u32,
    k: u32,
    t: Option<u32>,
    ell: Option<u32>,
    opts: SearchOptions,
) -> Result<ProbeReport> {
    let (ni, ki) = (i64::from(n), i64::from(k));
    let (t, minimize, statistic, reference): (u32, bool, String, BigUint) = match id {
        ProbeId::C71 => (
            1,
            true,
            "min over maximal intersecting families of #{v : d(v) <= C(n-2,k-2)}".into(),
            BigUint::default(),
        ),
        ProbeId::C72 => {
            let t = t.unwrap_or(1);
            if t == 0 || t >= k {
                return param(format!("C72 needs 1 ≤ t < k, got t = {t}"));
            }
            let tt = i64::from(t);
            (
                t,
                false,
                format!("max d_{} over maximal {t}-intersecting families", k + 2),
                binom(ni - tt - 1, ki - tt - 1),
            )
        }
        ProbeId::P110 => {
            let Some(ell) = ell else {
                return param("P110 needs --ell");
            };
            if !(2..=k).contains(&ell) || ell >= n {
                return param(format!("P110 needs 2 ≤ ℓ ≤ k and ℓ < n, got ℓ = {ell}"));
            }
            let l = i64::from(ell);
            (
                1,
                false,
                format!("max d_{} over maximal intersecting families", ell + 1),
                binom(ni - 2, ki - 2) + binom(ni - l - 1, ki - l),
            )
        }
    };
    let low = binom(ni - 2, ki - 2);
    let index = match id {
        ProbeId::C71 => 0,
        ProbeId::C72 => k as usize + 2,
        ProbeId::P110 => ell.expect("checked") as usize + 1,
    };
    let measure = |_: &UniformFamily, ds: &DegreeSequence| -> u64 {
        match id {
            ProbeId::C71 => ds
                .per_vertex
                .iter()
                .filter(|&&d| BigUint::from(d) <= low)
                .count() as u64,
            _ => ds.d(index),
        }
    };
    let ext = extreme(n, k, t, opts.workers, minimize, false, |_, _| true, measure)?;
    let observed = ext.value.expect("at least one maximal family exists");
    let (reference, consistent) = match id {
        ProbeId::C71 => {
            let need = ni - 2 * ki;
            (
                need.to_string(),
                i64::try_from(observed).unwrap_or(i64::MAX) >= need,
            )
        }
        _ => (reference.to_string(), BigUint::from(observed) <= reference),
    };
    Ok(ProbeReport {
        id,
        n,
        k,
        t,
        ell: if id == ProbeId::P110 { ell } else { None },
        statistic,
        families_enumerated: ext.enumerated,
        observed,
        reference,
        consistent,
        witness: Witness::of(ext.first.as_ref().expect("value implies a family")),
    })
}
