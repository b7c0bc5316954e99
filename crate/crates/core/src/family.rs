//! Vertex sets, uniform families and the basic per-family quantities:
//! degrees, t-intersection, restricted links, diversity and the two total
//! orders (lexicographic and colexicographic) on sets of equal size.
//!
//! A vertex `v` in `1..=n` is stored as bit `v - 1` of a `u64`, so the ground
//! set is capped at 64 elements.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::{param, Error, Result};

/// Largest supported ground set.
pub const MAX_N: u32 = 64;

/// A subset of the ground set `[n]`, encoded as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    #[inline]
    pub const fn mask(self) -> u64 {
        self.0
    }

    /// `{1, ..., n}`.
    #[inline]
    pub const fn full(n: u32) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    /// `{lo, ..., hi}`; empty when `lo > hi`.
    pub fn interval(lo: u32, hi: u32) -> Self {
        if lo > hi || hi == 0 {
            return VertexSet::EMPTY;
        }
        let lo = lo.max(1);
        VertexSet(Self::full(hi).0 & !Self::full(lo - 1).0)
    }

    /// Builds a set from 1-based vertex labels. Labels outside `1..=64` are rejected.
    pub fn from_vertices<I: IntoIterator<Item = u32>>(vertices: I) -> Result<Self> {
        let mut mask = 0u64;
        for v in vertices {
            if v == 0 || v > MAX_N {
                return param(format!("vertex {v} outside 1..={MAX_N}"));
            }
            mask |= 1u64 << (v - 1);
        }
        Ok(VertexSet(mask))
    }

    /// Panicking variant of [`VertexSet::from_vertices`] for literals.
    pub fn of(vertices: &[u32]) -> Self {
        Self::from_vertices(vertices.iter().copied()).expect("vertex labels in 1..=64")
    }

    #[inline]
    pub fn singleton(v: u32) -> Self {
        debug_assert!((1..=MAX_N).contains(&v));
        VertexSet(1u64 << (v - 1))
    }

    #[inline]
    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, v: u32) -> bool {
        v >= 1 && v <= 64 && (self.0 >> (v - 1)) & 1 == 1
    }

    #[inline]
    pub const fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub const fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub const fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn meet(self, other: Self) -> u32 {
        (self.0 & other.0).count_ones()
    }

    #[inline]
    pub fn insert(self, v: u32) -> Self {
        self.union(Self::singleton(v))
    }

    #[inline]
    pub fn remove(self, v: u32) -> Self {
        self.difference(Self::singleton(v))
    }

    /// Smallest element.
    #[inline]
    pub fn min(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros() + 1)
    }

    /// Largest element.
    #[inline]
    pub fn max(self) -> Option<u32> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros())
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Vertices {
        Vertices(self.0)
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Compares two sets in the lexicographic order: the set owning the
    /// smallest element of the symmetric difference comes first.
    #[inline]
    pub fn lex_cmp(self, other: Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let lowest = diff & diff.wrapping_neg();
        if self.0 & lowest != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Compares two sets in the colexicographic order: the set owning the
    /// largest element of the symmetric difference comes last. On sets of
    /// equal size this is the numeric order of the masks.
    #[inline]
    pub fn colex_cmp(self, other: Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let highest = 63 - diff.leading_zeros();
        if (other.0 >> highest) & 1 == 1 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Iterator over the elements of a [`VertexSet`].
#[derive(Clone, Debug)]
pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = u32;

    #[inline]
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(v + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Vertices {}

/// The two total orders on k-sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SetOrder {
    Lex,
    Colex,
}

impl std::str::FromStr for SetOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(SetOrder::Lex),
            "colex" => Ok(SetOrder::Colex),
            other => param(format!("unknown order {other:?} (expected lex or colex)")),
        }
    }
}

/// Compares two sets of equal cardinality in the requested order.
pub fn compare_sets(a: VertexSet, b: VertexSet, order: SetOrder) -> Result<Ordering> {
    if a.len() != b.len() {
        return param(format!(
            "cannot compare sets of sizes {} and {}",
            a.len(),
            b.len()
        ));
    }
    Ok(match order {
        SetOrder::Lex => a.lex_cmp(b),
        SetOrder::Colex => a.colex_cmp(b),
    })
}

/// All `k`-subsets of `ground`, in lexicographic order.
pub fn subsets_of(ground: VertexSet, k: u32) -> Vec<VertexSet> {
    let elems = ground.to_vec();
    let mut out = Vec::new();
    if k as usize > elems.len() {
        return out;
    }
    let k = k as usize;
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mask = idx.iter().fold(0u64, |m, &i| m | 1u64 << (elems[i] - 1));
        out.push(VertexSet(mask));
        // Rightmost index that can still move right.
        let mut pos = k;
        while pos > 0 && idx[pos - 1] == pos - 1 + elems.len() - k {
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

/// All `k`-subsets of `[n]`, in lexicographic order.
pub fn k_subsets(n: u32, k: u32) -> Vec<VertexSet> {
    subsets_of(VertexSet::full(n), k)
}

/// A `k`-uniform family over the ground set `[n]`.
///
/// Members are distinct and kept sorted in lexicographic order. Families
/// produced by [`link`] carry a reduced `ground` (`[n]` minus the removed
/// vertices) but keep the original labels and `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniformFamily {
    n: u32,
    k: u32,
    ground: VertexSet,
    sets: Vec<VertexSet>,
}

impl UniformFamily {
    /// Validates and canonicalizes a family. Duplicate members are rejected.
    pub fn new(n: u32, k: u32, sets: Vec<VertexSet>) -> Result<Self> {
        Self::with_ground(n, k, VertexSet::full(n), sets)
    }

    pub fn with_ground(
        n: u32,
        k: u32,
        ground: VertexSet,
        mut sets: Vec<VertexSet>,
    ) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return param(format!("ground-set size {n} outside 1..={MAX_N}"));
        }
        if k > n {
            return param(format!("uniformity {k} exceeds n = {n}"));
        }
        if !ground.is_subset(VertexSet::full(n)) {
            return param("ground set not contained in [n]");
        }
        for s in &sets {
            if s.len() != k {
                return param(format!("set {{{s}}} has size {} but k = {k}", s.len()));
            }
            if !s.is_subset(ground) {
                return param(format!("set {{{s}}} leaves the ground set"));
            }
        }
        sets.sort_unstable_by(|a, b| a.lex_cmp(*b));
        if let Some(w) = sets.windows(2).find(|w| w[0] == w[1]) {
            return param(format!("duplicate set {{{}}}", w[0]));
        }
        Ok(UniformFamily { n, k, ground, sets })
    }

    /// Builds a family from sets already known to be valid, distinct and sized `k`.
    pub(crate) fn from_valid(n: u32, k: u32, ground: VertexSet, mut sets: Vec<VertexSet>) -> Self {
        sets.sort_unstable_by(|a, b| a.lex_cmp(*b));
        debug_assert!(sets.windows(2).all(|w| w[0] != w[1]));
        debug_assert!(sets.iter().all(|s| s.len() == k && s.is_subset(ground)));
        UniformFamily { n, k, ground, sets }
    }

    pub fn empty(n: u32, k: u32) -> Result<Self> {
        Self::new(n, k, Vec::new())
    }

    /// Convenience constructor from vertex-label literals; panics on invalid input.
    pub fn from_lists(n: u32, k: u32, lists: &[&[u32]]) -> Self {
        let sets = lists.iter().map(|l| VertexSet::of(l)).collect();
        Self::new(n, k, sets).expect("valid family literal")
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn ground(&self) -> VertexSet {
        self.ground
    }

    #[inline]
    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, set: VertexSet) -> bool {
        self.sets
            .binary_search_by(|probe| probe.lex_cmp(set))
            .is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, VertexSet> {
        self.sets.iter()
    }

    /// Member masks as a hash set, for repeated membership queries.
    pub fn mask_set(&self) -> HashSet<u64> {
        self.sets.iter().map(|s| s.mask()).collect()
    }

    /// Intersection of all members (`[n]`'s ground set for the empty family).
    pub fn common_intersection(&self) -> VertexSet {
        self.sets
            .iter()
            .fold(self.ground, |acc, s| acc.intersection(*s))
    }

    /// Union of all members.
    pub fn union(&self) -> VertexSet {
        self.sets
            .iter()
            .fold(VertexSet::EMPTY, |acc, s| acc.union(*s))
    }

    /// Whether every member of `self` is a member of `other`.
    pub fn is_subfamily_of(&self, other: &UniformFamily) -> bool {
        self.sets.iter().all(|s| other.contains(*s))
    }

    /// Applies a vertex relabeling given as `perm[v - 1] = image of v`.
    pub fn relabel(&self, perm: &[u32]) -> Result<Self> {
        if perm.len() != self.n as usize {
            return param("permutation length differs from n");
        }
        let mut seen = 0u64;
        for &p in perm {
            if p == 0 || p > self.n || seen >> (p - 1) & 1 == 1 {
                return param("relabeling is not a permutation of [n]");
            }
            seen |= 1 << (p - 1);
        }
        let map = |s: VertexSet| {
            VertexSet(
                s.iter()
                    .fold(0u64, |m, v| m | 1u64 << (perm[v as usize - 1] - 1)),
            )
        };
        Ok(UniformFamily::from_valid(
            self.n,
            self.k,
            map(self.ground),
            self.sets.iter().map(|&s| map(s)).collect(),
        ))
    }
}

impl fmt::Debug for UniformFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "UniformFamily(n={}, k={}, {:?})",
            self.n, self.k, self.sets
        )
    }
}

impl<'a> IntoIterator for &'a UniformFamily {
    type Item = &'a VertexSet;
    type IntoIter = std::slice::Iter<'a, VertexSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}

/// Vertex degrees of a family together with their non-increasing rearrangement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSequence {
    /// `per_vertex[v - 1]` is the number of members containing `v`.
    pub per_vertex: Vec<u64>,
    /// `(x_i, d_i)` for `i = 1..=n`; ties ordered by ascending vertex label.
    pub sorted: Vec<(u32, u64)>,
}

impl DegreeSequence {
    /// The `i`th largest degree, 1-based. Zero beyond `n`.
    pub fn d(&self, i: usize) -> u64 {
        i.checked_sub(1)
            .and_then(|j| self.sorted.get(j))
            .map_or(0, |&(_, d)| d)
    }

    /// `d_1 ≥ d_2 ≥ … ≥ d_n`.
    pub fn values(&self) -> Vec<u64> {
        self.sorted.iter().map(|&(_, d)| d).collect()
    }

    pub fn degree_of(&self, v: u32) -> u64 {
        self.per_vertex[v as usize - 1]
    }
}

pub fn degree_sequence(family: &UniformFamily) -> DegreeSequence {
    let n = family.n() as usize;
    let mut per_vertex = vec![0u64; n];
    for s in family {
        for v in s.iter() {
            per_vertex[v as usize - 1] += 1;
        }
    }
    let mut sorted: Vec<(u32, u64)> = per_vertex
        .iter()
        .enumerate()
        .map(|(i, &d)| (i as u32 + 1, d))
        .collect();
    sorted.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    DegreeSequence { per_vertex, sorted }
}

/// Whether every two members share at least `t` elements.
pub fn is_t_intersecting(family: &UniformFamily, t: u32) -> Result<bool> {
    if t == 0 || t > family.k() {
        return param(format!("t = {t} outside 1..={}", family.k()));
    }
    Ok(t_intersecting_unchecked(family.sets(), t))
}

pub(crate) fn t_intersecting_unchecked(sets: &[VertexSet], t: u32) -> bool {
    sets.iter()
        .enumerate()
        .all(|(i, a)| sets[i + 1..].iter().all(|b| a.meet(*b) >= t))
}

/// The restricted link `{F \ B : F ∈ family, F ∩ B = A}`.
///
/// Labels are kept; the result lives on the ground set `ground \ B` with
/// uniformity `k - |A|`.
pub fn link(family: &UniformFamily, a: VertexSet, b: VertexSet) -> Result<UniformFamily> {
    if !a.is_subset(b) {
        return param(format!("link requires A ⊆ B, got A = {{{a}}}, B = {{{b}}}"));
    }
    if !b.is_subset(VertexSet::full(family.n())) {
        return param("B leaves [n]");
    }
    let k = family.k().saturating_sub(a.len());
    let sets = if a.len() > family.k() {
        Vec::new()
    } else {
        family
            .iter()
            .filter(|f| f.intersection(b) == a)
            .map(|f| f.difference(b))
            .collect()
    };
    Ok(UniformFamily::from_valid(
        family.n(),
        k,
        family.ground().difference(b),
        sets,
    ))
}

/// `|F| - d_1(F)`: how far the family is from being a star.
pub fn diversity(family: &UniformFamily) -> u64 {
    family.len() as u64 - degree_sequence(family).d(1)
}
