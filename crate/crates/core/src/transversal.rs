//! t-transversals, their minimal bases, covering numbers, generated families
//! and sunflowers.

use std::collections::HashSet;

use num_bigint::BigUint;
use serde::Serialize;

use crate::bounds::binom;
use crate::constructions::BUILD_LIMIT;
use crate::error::{param, Error, Result};
use crate::family::{
    is_t_intersecting, k_subsets, t_intersecting_unchecked, UniformFamily, VertexSet,
};
use crate::transforms::{is_saturated, is_shifted};

/// Refuse to list more transversals than this.
pub const TRANSVERSAL_LIMIT: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransversalReport {
    pub t: u32,
    /// Every `T` with `|T| ≤ k` meeting each member in at least `t` elements,
    /// ordered by size then lexicographically.
    pub transversals: Vec<VertexSet>,
    /// The containment-minimal transversals, same order.
    pub basis: Vec<VertexSet>,
    /// Smallest transversal size; `None` when no transversal has size `≤ k`.
    pub tau: Option<u32>,
}

fn by_size_then_lex(v: &mut [VertexSet]) {
    v.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then(a.lex_cmp(*b)));
}

struct Walk<'a> {
    members: &'a [VertexSet],
    order: Vec<u32>,
    t: u32,
    k: u32,
    found: Vec<VertexSet>,
}

impl Walk<'_> {
    fn go(&mut self, depth: usize, chosen: VertexSet, remaining: VertexSet) -> Result<()> {
        // Even taking every remaining vertex some member stays below t.
        if self
            .members
            .iter()
            .any(|f| f.meet(chosen) + f.meet(remaining) < self.t)
        {
            return Ok(());
        }
        if depth == self.order.len() {
            if self.found.len() >= TRANSVERSAL_LIMIT {
                return param(format!("more than {TRANSVERSAL_LIMIT} transversals"));
            }
            self.found.push(chosen);
            return Ok(());
        }
        let v = self.order[depth];
        let rest = remaining.remove(v);
        if chosen.len() < self.k {
            self.go(depth + 1, chosen.insert(v), rest)?;
        }
        self.go(depth + 1, chosen, rest)
    }
}

/// Computes `T_t`, its minimal members and `τ_t` by a pruned walk over the
/// subsets of the ground set.
pub fn transversal_report(family: &UniformFamily, t: u32) -> Result<TransversalReport> {
    if family.is_empty() {
        return Err(Error::Precondition(
            "transversals of the empty family are undefined".into(),
        ));
    }
    if t == 0 || t > family.k() {
        return param(format!("t = {t} outside 1..={}", family.k()));
    }
    let ground = family.ground();
    let mut walk = Walk {
        members: family.sets(),
        order: ground.to_vec(),
        t,
        k: family.k(),
        found: Vec::new(),
    };
    walk.go(0, VertexSet::EMPTY, ground)?;
    let mut transversals = walk.found;
    by_size_then_lex(&mut transversals);

    // Transversals of size ≤ k are closed upward below size k, so checking
    // single removals decides minimality.
    let lookup: HashSet<u64> = transversals.iter().map(|s| s.mask()).collect();
    let basis: Vec<VertexSet> = transversals
        .iter()
        .copied()
        .filter(|s| s.iter().all(|x| !lookup.contains(&s.remove(x).mask())))
        .collect();
    let tau = transversals.first().map(|s| s.len());
    Ok(TransversalReport {
        t,
        transversals,
        basis,
        tau,
    })
}

/// `⟨G⟩`: all k-subsets of `[n]` containing some member of `G`.
pub fn generated_family(generators: &[VertexSet], n: u32, k: u32) -> Result<UniformFamily> {
    let full = UniformFamily::empty(n, k)?;
    for g in generators {
        if g.len() > k {
            return param(format!("generator {{{g}}} has more than k = {k} elements"));
        }
        if !g.is_subset(full.ground()) {
            return param(format!("generator {{{g}}} leaves [{n}]"));
        }
    }
    if generators.is_empty() {
        return Ok(full);
    }
    if binom(i64::from(n), i64::from(k)) > BigUint::from(BUILD_LIMIT) {
        return param(format!("C({n},{k}) exceeds the build limit {BUILD_LIMIT}"));
    }
    let sets = k_subsets(n, k)
        .into_iter()
        .filter(|s| generators.iter().any(|g| g.is_subset(*s)))
        .collect();
    UniformFamily::new(n, k, sets)
}

/// The common core when all pairwise intersections coincide.
pub fn is_sunflower(sets: &[VertexSet]) -> Result<Option<VertexSet>> {
    if sets.len() < 2 {
        return param("a sunflower needs at least two members");
    }
    let distinct: HashSet<u64> = sets.iter().map(|s| s.mask()).collect();
    if distinct.len() != sets.len() {
        return param("sunflower members must be distinct");
    }
    let core = sets[0].intersection(sets[1]);
    let all_equal = sets
        .iter()
        .enumerate()
        .all(|(i, a)| sets[i + 1..].iter().all(|b| a.intersection(*b) == core));
    Ok(all_equal.then_some(core))
}

/// Checks of the structural facts about bases of saturated families.
///
/// Each entry is `None` when its hypothesis does not hold for the input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisLemmas {
    pub saturated: bool,
    pub shifted: bool,
    /// Basis is t-intersecting and generates the family. Needs `n ≥ 2k - t`:
    /// below that every pair of k-sets is t-intersecting and the basis holds
    /// small sets that are not.
    pub generates: Option<bool>,
    /// For shifted saturated families, every basis member lies in `[2k-t]`.
    pub within_prefix: Option<bool>,
    /// With `τ_t = t+1`, the basis members of size `t+1` span at most `k+1` vertices.
    pub core_span: Option<bool>,
}

pub fn check_basis_lemmas(family: &UniformFamily, t: u32) -> Result<BasisLemmas> {
    let intersecting = is_t_intersecting(family, t)?;
    let saturated = intersecting && !family.is_empty() && is_saturated(family, t)?;
    let shifted = is_shifted(family);
    let mut out = BasisLemmas {
        saturated,
        shifted,
        generates: None,
        within_prefix: None,
        core_span: None,
    };
    if !saturated {
        return Ok(out);
    }
    let report = transversal_report(family, t)?;
    let basis = &report.basis;
    if family.n() + t >= 2 * family.k() {
        let generated = generated_family(basis, family.n(), family.k())?;
        out.generates =
            Some(t_intersecting_unchecked(basis, t) && generated.sets() == family.sets());
    }

    if shifted {
        let bound = 2 * family.k() - t;
        out.within_prefix = Some(
            basis
                .iter()
                .all(|&b| VertexSet::max(b).is_none_or(|m| m <= bound)),
        );
    }

    let b0: Vec<VertexSet> = basis.iter().copied().filter(|b| b.len() == t + 1).collect();
    if report.tau == Some(t + 1) && !b0.is_empty() && basis.iter().all(|b| b.len() != t) {
        let span = b0.iter().fold(VertexSet::EMPTY, |u, b| u.union(*b));
        out.core_span = Some(span.len() <= family.k() + 1);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, ConstructionKind, ConstructionSpec};

    fn is_transversal(family: &UniformFamily, set: VertexSet, t: u32) -> bool {
        family.iter().all(|f| f.meet(set) >= t)
    }

    fn v(x: &[u32]) -> VertexSet {
        VertexSet::of(x)
    }

    fn star() -> UniformFamily {
        build(&ConstructionSpec::new(ConstructionKind::Star, 7, 3, 1)).unwrap()
    }

    fn h2() -> UniformFamily {
        build(&ConstructionSpec::triangle(7, 3)).unwrap()
    }

    #[test]
    fn report_examples() {
        let r = transversal_report(&star(), 1).unwrap();
        assert_eq!(r.tau, Some(1));
        assert_eq!(r.basis, vec![v(&[1])]);

        let r = transversal_report(&h2(), 1).unwrap();
        assert_eq!(r.tau, Some(2));
        assert_eq!(r.basis, vec![v(&[1, 2]), v(&[1, 3]), v(&[2, 3])]);

        let f = UniformFamily::from_lists(5, 2, &[&[1, 2], &[3, 4]]);
        let r = transversal_report(&f, 1).unwrap();
        assert_eq!(r.tau, Some(2));
        assert_eq!(
            r.basis,
            vec![v(&[1, 3]), v(&[1, 4]), v(&[2, 3]), v(&[2, 4])]
        );
    }

    #[test]
    fn report_matches_brute_force() {
        let f = UniformFamily::from_lists(6, 3, &[&[1, 2, 3], &[1, 4, 5], &[2, 4, 6], &[3, 5, 6]]);
        for t in 1..=2 {
            let r = transversal_report(&f, t).unwrap();
            let mut brute: Vec<VertexSet> = (0u64..1 << 6)
                .map(VertexSet::from_mask)
                .filter(|s| s.len() <= 3 && is_transversal(&f, *s, t))
                .collect();
            by_size_then_lex(&mut brute);
            assert_eq!(r.transversals, brute, "t = {t}");
            for b in &r.basis {
                assert!(!brute.iter().any(|s| s != b && s.is_subset(*b)));
            }
        }
    }

    #[test]
    fn no_transversal_within_k() {
        let f = UniformFamily::from_lists(6, 2, &[&[1, 2], &[3, 4], &[5, 6]]);
        let r = transversal_report(&f, 1).unwrap();
        assert_eq!(r.tau, None);
        assert!(r.basis.is_empty());
    }

    #[test]
    fn report_errors() {
        assert!(matches!(
            transversal_report(&UniformFamily::empty(5, 2).unwrap(), 1),
            Err(Error::Precondition(_))
        ));
        assert!(transversal_report(&star(), 4).is_err());
    }

    #[test]
    fn generated_examples() {
        let s = generated_family(&[v(&[1])], 5, 2).unwrap();
        assert_eq!(
            s,
            build(&ConstructionSpec::new(ConstructionKind::Star, 5, 2, 1)).unwrap()
        );
        let g = generated_family(&[v(&[1, 2]), v(&[1, 3]), v(&[2, 3])], 7, 3).unwrap();
        assert_eq!(g, h2());
        assert!(generated_family(&[], 7, 3).unwrap().is_empty());
        assert!(generated_family(&[v(&[1, 2, 3, 4])], 7, 3).is_err());
    }

    #[test]
    fn sunflowers() {
        assert_eq!(
            is_sunflower(&[v(&[1, 2]), v(&[1, 3]), v(&[1, 4])]).unwrap(),
            Some(v(&[1]))
        );
        assert_eq!(
            is_sunflower(&[v(&[1, 2]), v(&[1, 3]), v(&[2, 3])]).unwrap(),
            None
        );
        assert_eq!(
            is_sunflower(&[v(&[1, 2, 3]), v(&[1, 2, 4]), v(&[1, 2, 5])]).unwrap(),
            Some(v(&[1, 2]))
        );
        assert!(is_sunflower(&[v(&[1, 2])]).is_err());
        assert!(is_sunflower(&[v(&[1, 2]), v(&[1, 2])]).is_err());
    }

    #[test]
    fn basis_checks() {
        let r = check_basis_lemmas(&star(), 1).unwrap();
        assert_eq!((r.generates, r.within_prefix), (Some(true), Some(true)));
        assert_eq!(r.core_span, None);

        let r = check_basis_lemmas(&h2(), 1).unwrap();
        assert_eq!(r.generates, Some(true));
        assert_eq!(r.core_span, Some(true));

        let partial = UniformFamily::from_lists(7, 3, &[&[1, 2, 3]]);
        let r = check_basis_lemmas(&partial, 1).unwrap();
        assert!(!r.saturated);
        assert_eq!(
            (r.generates, r.within_prefix, r.core_span),
            (None, None, None)
        );
    }
}
