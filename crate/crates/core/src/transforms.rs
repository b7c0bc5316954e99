//! Shifting, the shifting partial order, and deterministic saturation.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use crate::bounds::binom;
use crate::constructions::BUILD_LIMIT;
use crate::error::{param, Error, Result};
use crate::family::{is_t_intersecting, subsets_of, UniformFamily, VertexSet};

/// `S_ij`: replaces `j` by `i` in every member containing `j` but not `i`,
/// unless the image is already a member.
pub fn shift_ij(family: &UniformFamily, i: u32, j: u32) -> Result<UniformFamily> {
    if i == 0 || i >= j || j > family.n() {
        return param(format!("shift needs 1 ≤ i < j ≤ n, got i = {i}, j = {j}"));
    }
    if !family.ground().contains(i) || !family.ground().contains(j) {
        return param(format!(
            "shift vertices {i}, {j} must lie in the ground set"
        ));
    }
    let present = family.mask_set();
    let sets = family
        .iter()
        .map(|&f| shift_set(f, i, j, &present))
        .collect();
    Ok(UniformFamily::from_valid(
        family.n(),
        family.k(),
        family.ground(),
        sets,
    ))
}

fn shift_set(f: VertexSet, i: u32, j: u32, present: &HashSet<u64>) -> VertexSet {
    if f.contains(j) && !f.contains(i) {
        let g = f.remove(j).insert(i);
        if !present.contains(&g.mask()) {
            return g;
        }
    }
    f
}

/// `A ≺ B`: the sorted elements of `A` are componentwise at most those of `B`.
pub fn precedes(a: VertexSet, b: VertexSet) -> Result<bool> {
    if a.len() != b.len() {
        return param(format!(
            "precedes needs equal sizes, got {} and {}",
            a.len(),
            b.len()
        ));
    }
    Ok(a.iter().zip(b.iter()).all(|(x, y)| x <= y))
}

/// Whether the family is closed downward under `≺`.
///
/// Checking the covering moves (one element lowered by one) is enough.
pub fn is_shifted(family: &UniformFamily) -> bool {
    let present = family.mask_set();
    family.iter().all(|&b| {
        b.iter()
            .filter(|&x| x > 1 && !b.contains(x - 1))
            .all(|x| present.contains(&b.remove(x).insert(x - 1).mask()))
    })
}

/// Applies `S_ij` for all `i < j` in ascending order, repeating until nothing moves.
pub fn make_shifted(family: &UniformFamily) -> UniformFamily {
    let ground = family.ground().to_vec();
    let mut cur = family.clone();
    loop {
        let mut changed = false;
        for (a, &i) in ground.iter().enumerate() {
            for &j in &ground[a + 1..] {
                let next = shift_ij(&cur, i, j).expect("valid pair");
                if next != cur {
                    changed = true;
                    cur = next;
                }
            }
        }
        if !changed {
            return cur;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SaturationMode {
    /// One pass over all k-sets in lex order, adding each compatible set.
    LexGreedy,
    /// Alternate `make_shifted` and `LexGreedy` until both are fixed points.
    ShiftAlternate,
}

impl fmt::Display for SaturationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SaturationMode::LexGreedy => "lex_greedy",
            SaturationMode::ShiftAlternate => "shift_alternate",
        })
    }
}

impl FromStr for SaturationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex_greedy" => Ok(SaturationMode::LexGreedy),
            "shift_alternate" => Ok(SaturationMode::ShiftAlternate),
            _ => param(format!("unknown saturation mode {s:?}")),
        }
    }
}

fn candidate_sets(family: &UniformFamily) -> Result<Vec<VertexSet>> {
    let (g, k) = (family.ground().len(), family.k());
    if binom(i64::from(g), i64::from(k)) > BigUint::from(BUILD_LIMIT) {
        return param(format!("C({g},{k}) exceeds the scan limit {BUILD_LIMIT}"));
    }
    Ok(subsets_of(family.ground(), k))
}

/// k-sets of the ground set outside the family that meet every member in at least `t` elements.
pub fn addable_sets(family: &UniformFamily, t: u32) -> Result<Vec<VertexSet>> {
    let present = family.mask_set();
    Ok(candidate_sets(family)?
        .into_iter()
        .filter(|s| !present.contains(&s.mask()) && family.iter().all(|f| f.meet(*s) >= t))
        .collect())
}

/// t-intersecting and no k-set of the ground set can be added.
pub fn is_saturated(family: &UniformFamily, t: u32) -> Result<bool> {
    Ok(is_t_intersecting(family, t)? && addable_sets(family, t)?.is_empty())
}

fn lex_greedy(family: &UniformFamily, t: u32) -> Result<UniformFamily> {
    let present = family.mask_set();
    let mut sets = family.sets().to_vec();
    // A set rejected once stays rejected: the family only grows.
    for s in candidate_sets(family)? {
        if !present.contains(&s.mask()) && sets.iter().all(|f| f.meet(s) >= t) {
            sets.push(s);
        }
    }
    Ok(UniformFamily::from_valid(
        family.n(),
        family.k(),
        family.ground(),
        sets,
    ))
}

/// Extends a t-intersecting family to a saturated one.
pub fn saturate(family: &UniformFamily, t: u32, mode: SaturationMode) -> Result<UniformFamily> {
    if !is_t_intersecting(family, t)? {
        return Err(Error::Precondition(format!(
            "family is not {t}-intersecting"
        )));
    }
    match mode {
        SaturationMode::LexGreedy => lex_greedy(family, t),
        SaturationMode::ShiftAlternate => {
            // Saturation grows the family and shifting lowers the element sum,
            // so the loop ends; at the end both steps are no-ops.
            let mut cur = lex_greedy(family, t)?;
            loop {
                let next = lex_greedy(&make_shifted(&cur), t)?;
                if next == cur {
                    return Ok(cur);
                }
                cur = next;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, ConstructionKind, ConstructionSpec};

    fn fam(n: u32, k: u32, lists: &[&[u32]]) -> UniformFamily {
        UniformFamily::from_lists(n, k, lists)
    }

    fn star(n: u32, k: u32, x: u64) -> UniformFamily {
        build(&ConstructionSpec::new(ConstructionKind::Star, n, k, x)).unwrap()
    }

    #[test]
    fn shift_examples() {
        let f = shift_ij(&fam(4, 3, &[&[2, 3, 4]]), 1, 2).unwrap();
        assert_eq!(f.sets(), fam(4, 3, &[&[1, 3, 4]]).sets());
        let s = star(7, 3, 1);
        assert_eq!(shift_ij(&s, 1, 2).unwrap().sets(), s.sets());
        let f = fam(3, 2, &[&[1, 3], &[2, 3]]);
        assert_eq!(shift_ij(&f, 1, 2).unwrap().sets(), f.sets());
        assert!(shift_ij(&f, 2, 2).is_err());
        assert!(shift_ij(&f, 2, 1).is_err());
        assert!(shift_ij(&f, 1, 4).is_err());
    }

    #[test]
    fn precedes_examples() {
        let v = VertexSet::of;
        assert!(precedes(v(&[1, 2, 3]), v(&[1, 2, 3])).unwrap());
        assert!(precedes(v(&[1, 3, 5]), v(&[2, 3, 6])).unwrap());
        assert!(!precedes(v(&[1, 4]), v(&[2, 3])).unwrap());
        assert!(precedes(v(&[1, 4]), v(&[2, 3, 5])).is_err());
    }

    #[test]
    fn shiftedness() {
        assert!(is_shifted(&star(7, 3, 1)));
        assert!(!is_shifted(&fam(4, 3, &[&[2, 3, 4]])));
        let h2 = build(&ConstructionSpec::new(ConstructionKind::HEll, 7, 3, 2)).unwrap();
        assert!(is_shifted(&h2));
        assert!(!is_shifted(&star(7, 3, 4)));
    }

    #[test]
    fn make_shifted_examples() {
        let f = make_shifted(&fam(7, 3, &[&[2, 3, 4]]));
        assert_eq!(f.sets(), fam(7, 3, &[&[1, 2, 3]]).sets());
        let s4 = make_shifted(&star(7, 3, 4));
        assert_eq!(s4.sets(), star(7, 3, 1).sets());
        let h2 = build(&ConstructionSpec::triangle(7, 3)).unwrap();
        assert_eq!(make_shifted(&h2), h2);
    }

    #[test]
    fn saturate_examples() {
        let f = saturate(&fam(5, 2, &[&[1, 2]]), 1, SaturationMode::LexGreedy).unwrap();
        assert_eq!(f.sets(), star(5, 2, 1).sets());

        let s = star(7, 3, 1);
        assert_eq!(
            saturate(&s, 1, SaturationMode::LexGreedy).unwrap().sets(),
            s.sets()
        );

        let f = saturate(&fam(7, 3, &[&[1, 2, 3]]), 1, SaturationMode::LexGreedy).unwrap();
        assert!(f.contains(VertexSet::of(&[1, 2, 3])));
        assert!(is_saturated(&f, 1).unwrap());

        let bad = fam(6, 3, &[&[1, 2, 3], &[4, 5, 6]]);
        assert!(matches!(
            saturate(&bad, 1, SaturationMode::LexGreedy),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn shift_alternate_is_shifted_and_saturated() {
        let seed = fam(8, 3, &[&[2, 5, 7], &[2, 6, 7], &[5, 6, 7]]);
        let f = saturate(&seed, 1, SaturationMode::ShiftAlternate).unwrap();
        assert!(is_shifted(&f));
        assert!(is_saturated(&f, 1).unwrap());
    }

    #[test]
    fn mode_names() {
        for m in [SaturationMode::LexGreedy, SaturationMode::ShiftAlternate] {
            assert_eq!(m.to_string().parse::<SaturationMode>().unwrap(), m);
        }
        assert!("greedy".parse::<SaturationMode>().is_err());
    }
}
