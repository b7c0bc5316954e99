#![allow(dead_code)]

use degree_forge::family::{k_subsets, UniformFamily, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Each k-set kept independently with probability `p`.
pub fn random_family(rng: &mut ChaCha8Rng, n: u32, k: u32, p: f64) -> UniformFamily {
    let sets = k_subsets(n, k)
        .into_iter()
        .filter(|_| rng.gen_bool(p))
        .collect();
    UniformFamily::new(n, k, sets).unwrap()
}

/// Random greedy t-intersecting family: k-sets in shuffled order, kept when
/// compatible with everything kept so far, stopping after `cap` sets.
pub fn random_t_intersecting(
    rng: &mut ChaCha8Rng,
    n: u32,
    k: u32,
    t: u32,
    cap: usize,
) -> UniformFamily {
    let mut all = k_subsets(n, k);
    all.shuffle(rng);
    let mut kept: Vec<VertexSet> = Vec::new();
    for s in all {
        if kept.len() >= cap {
            break;
        }
        if kept.iter().all(|f| f.meet(s) >= t) {
            kept.push(s);
        }
    }
    UniformFamily::new(n, k, kept).unwrap()
}

/// A random `a`-uniform family and a random subfamily of the `b`-sets
/// meeting all of its members.
pub fn random_cross_pair(
    rng: &mut ChaCha8Rng,
    n: u32,
    a: u32,
    b: u32,
) -> (UniformFamily, UniformFamily) {
    let pa = rng.gen_range(0.02..0.3);
    let fa = random_family(rng, n, a, pa);
    let candidates: Vec<VertexSet> = k_subsets(n, b)
        .into_iter()
        .filter(|s| fa.iter().all(|f| f.meet(*s) > 0))
        .collect();
    let pb = rng.gen_range(0.1..1.0);
    let fb: Vec<VertexSet> = candidates
        .into_iter()
        .filter(|_| rng.gen_bool(pb))
        .collect();
    (fa, UniformFamily::new(n, b, fb).unwrap())
}

/// Every maximal t-intersecting family on `[n]` of `k`-sets by checking all
/// subfamilies of `C([n], k)`; only for `C(n, k) ≤ 20`.
pub fn brute_force_maximal(n: u32, k: u32, t: u32) -> Vec<Vec<u64>> {
    let all = k_subsets(n, k);
    let m = all.len();
    assert!(m <= 20);
    // conflict[i]: the sets meeting set i in fewer than t elements.
    let conflict: Vec<u32> = all
        .iter()
        .map(|a| {
            (0..m)
                .filter(|&j| a.meet(all[j]) < t)
                .fold(0, |c, j| c | 1 << j)
        })
        .collect();
    let mut out = Vec::new();
    for bits in 0u32..1 << m {
        let members = (0..m).filter(|i| bits >> i & 1 == 1);
        let intersecting = members.clone().all(|i| conflict[i] & bits == 0);
        let maximal = intersecting
            && (0..m)
                .filter(|i| bits >> i & 1 == 0)
                .all(|i| conflict[i] & bits != 0);
        if maximal {
            let mut masks: Vec<u64> = members.map(|i| all[i].mask()).collect();
            masks.sort_unstable();
            out.push(masks);
        }
    }
    out.sort();
    out
}
