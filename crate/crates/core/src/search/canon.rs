//! Canonical labelling of small families by individualization and refinement.
//!
//! The canonical form is the least sorted mask list among the leaves of the
//! search tree, which only visits labellings compatible with the refined
//! partitions; it is a complete invariant but not the global minimum over
//! all `n!` labellings. Refinement starts from the degree partition, and subtrees
//! equivalent under automorphisms already found are skipped.

use std::fmt;

use serde::Serialize;

use crate::error::{param, Result};
use crate::family::{UniformFamily, VertexSet};
use crate::format::write_family;

/// Largest ground set accepted by [`canonical_form`].
pub const MAX_CANON_N: u32 = 12;

/// An isomorphism invariant of a family: equal iff the families are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: u32,
    k: u32,
    masks: Vec<u64>,
}

impl CanonicalForm {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    /// The canonical representative as a family.
    pub fn to_family(&self) -> UniformFamily {
        let sets = self
            .masks
            .iter()
            .map(|&m| VertexSet::from_mask(m))
            .collect();
        UniformFamily::new(self.n, self.k, sets).expect("canonical image is a valid family")
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_family(&self.to_family()))
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Ordered partition of `0..n`; `color[v]` is the index of the first
/// position of `v`'s cell.
#[derive(Clone, Debug)]
struct Partition {
    cells: Vec<Vec<usize>>,
}

impl Partition {
    fn colors(&self, n: usize) -> Vec<usize> {
        let mut color = vec![0; n];
        let mut pos = 0;
        for cell in &self.cells {
            for &v in cell {
                color[v] = pos;
            }
            pos += cell.len();
        }
        color
    }

    fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }
}

struct Canonizer {
    n: usize,
    sets: Vec<Vec<usize>>,
    containing: Vec<Vec<usize>>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
}

impl Canonizer {
    /// Splits cells by the multiset of colour patterns of the sets through
    /// each vertex until nothing changes.
    fn refine(&self, mut part: Partition) -> Partition {
        loop {
            let color = part.colors(self.n);
            let mut next = Vec::with_capacity(part.cells.len());
            let mut split = false;
            for cell in &part.cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<Vec<usize>>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let mut sig: Vec<Vec<usize>> = self.containing[v]
                            .iter()
                            .map(|&s| {
                                let mut c: Vec<usize> = self.sets[s]
                                    .iter()
                                    .filter(|&&u| u != v)
                                    .map(|&u| color[u])
                                    .collect();
                                c.sort_unstable();
                                c
                            })
                            .collect();
                        sig.sort_unstable();
                        (sig, v)
                    })
                    .collect();
                keyed.sort();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        start = i;
                    }
                }
                split |= keyed[0].0 != keyed[keyed.len() - 1].0;
            }
            part.cells = next;
            if !split {
                return part;
            }
        }
    }

    fn image(&self, perm: &[usize]) -> Vec<u64> {
        let mut masks: Vec<u64> = self
            .sets
            .iter()
            .map(|s| s.iter().fold(0u64, |m, &v| m | 1 << perm[v]))
            .collect();
        masks.sort_unstable();
        masks
    }

    /// Orbit roots under the generators that fix `fixed` pointwise.
    fn orbit_roots(&self, fixed: &[usize]) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for g in &self.generators {
            if fixed.iter().any(|&v| g[v] != v) {
                continue;
            }
            for (v, &w) in g.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..self.n).map(|v| find(&mut parent, v)).collect()
    }

    fn search(&mut self, part: Partition, path: &mut Vec<usize>) {
        if part.is_discrete() {
            let perm = part.colors(self.n);
            let img = self.image(&perm);
            match &self.best {
                Some((best, best_perm)) if *best == img => {
                    // best_perm⁻¹ ∘ perm is an automorphism.
                    let mut inv = vec![0; self.n];
                    for (v, &p) in best_perm.iter().enumerate() {
                        inv[p] = v;
                    }
                    let gamma: Vec<usize> = perm.iter().map(|&p| inv[p]).collect();
                    if gamma.iter().enumerate().any(|(v, &g)| v != g) {
                        self.generators.push(gamma);
                    }
                }
                Some((best, _)) if *best < img => {}
                _ => self.best = Some((img, perm)),
            }
            return;
        }
        let target = part
            .cells
            .iter()
            .position(|c| c.len() > 1)
            .expect("not discrete");
        let cell = part.cells[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &cell {
            let roots = self.orbit_roots(path);
            if explored.iter().any(|&u| roots[u] == roots[v]) {
                continue;
            }
            explored.push(v);
            let mut cells = part.cells.clone();
            let rest: Vec<usize> = cell.iter().copied().filter(|&u| u != v).collect();
            cells.splice(target..=target, [vec![v], rest]);
            path.push(v);
            let child = self.refine(Partition { cells });
            self.search(child, path);
            path.pop();
        }
    }
}

/// Canonical form of a family with `n ≤ 12`.
pub fn canonical_form(family: &UniformFamily) -> Result<CanonicalForm> {
    let n = family.n();
    if n > MAX_CANON_N {
        return param(format!("canonical forms need n ≤ {MAX_CANON_N}, got {n}"));
    }
    let nn = n as usize;
    let sets: Vec<Vec<usize>> = family
        .iter()
        .map(|s| s.iter().map(|v| v as usize - 1).collect())
        .collect();
    let mut containing = vec![Vec::new(); nn];
    for (i, s) in sets.iter().enumerate() {
        for &v in s {
            containing[v].push(i);
        }
    }
    // Degree partition, largest degree first.
    let mut by_degree: Vec<usize> = (0..nn).collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(containing[v].len()), v));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for v in by_degree {
        match cells.last_mut() {
            Some(c) if containing[c[0]].len() == containing[v].len() => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut canon = Canonizer {
        n: nn,
        sets,
        containing,
        best: None,
        generators: Vec::new(),
    };
    let root = canon.refine(Partition { cells });
    canon.search(root, &mut Vec::new());
    let (masks, _) = canon.best.expect("search reaches a leaf");
    Ok(CanonicalForm {
        n,
        k: family.k(),
        masks,
    })
}
