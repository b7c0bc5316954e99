//! Maximal cliques of the compatibility graph on k-sets, by Bron–Kerbosch
//! with pivoting over bitset rows.

use crate::family::{k_subsets, VertexSet};

#[derive(Clone, Debug)]
pub(crate) struct CompatGraph {
    sets: Vec<VertexSet>,
    words: usize,
    adj: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn zero(words: usize) -> Self {
        Bits(vec![0; words])
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn and(&self, row: &[u64]) -> Bits {
        Bits(self.0.iter().zip(row).map(|(a, b)| a & b).collect())
    }

    fn and_count(&self, row: &[u64]) -> u32 {
        self.0
            .iter()
            .zip(row)
            .map(|(a, b)| (a & b).count_ones())
            .sum()
    }

    fn and_not(&self, row: &[u64]) -> Bits {
        Bits(self.0.iter().zip(row).map(|(a, b)| a & !b).collect())
    }

    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                (rest != 0).then(|| {
                    let b = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    w * 64 + b
                })
            })
        })
    }
}

impl CompatGraph {
    /// Vertices are the k-subsets of `[n]` in lex order; edges join sets
    /// sharing at least `t` elements.
    pub(crate) fn new(n: u32, k: u32, t: u32) -> Self {
        let sets = k_subsets(n, k);
        let v = sets.len();
        let words = v.div_ceil(64).max(1);
        let mut adj = vec![0u64; v * words];
        for i in 0..v {
            for j in i + 1..v {
                if sets[i].meet(sets[j]) >= t {
                    adj[i * words + j / 64] |= 1 << (j % 64);
                    adj[j * words + i / 64] |= 1 << (i % 64);
                }
            }
        }
        CompatGraph { sets, words, adj }
    }

    pub(crate) fn vertex_count(&self) -> usize {
        self.sets.len()
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// Runs the enumeration subtree rooted at vertex `i`: every maximal clique
    /// whose least vertex is `i`, each passed to `visit` as lex-sorted sets.
    pub(crate) fn branch(&self, i: usize, visit: &mut dyn FnMut(&[VertexSet])) {
        let row = self.row(i);
        let mut p = Bits::zero(self.words);
        let mut x = Bits::zero(self.words);
        for j in Bits(row.to_vec()).ones() {
            if j > i {
                p.set(j);
            } else {
                x.set(j);
            }
        }
        let mut r = vec![i];
        let mut scratch = Vec::new();
        self.expand(&mut r, p, x, &mut scratch, visit);
    }

    fn expand(
        &self,
        r: &mut Vec<usize>,
        mut p: Bits,
        mut x: Bits,
        scratch: &mut Vec<VertexSet>,
        visit: &mut dyn FnMut(&[VertexSet]),
    ) {
        if p.is_empty() {
            if x.is_empty() {
                let mut idx = r.clone();
                idx.sort_unstable();
                scratch.clear();
                scratch.extend(idx.iter().map(|&v| self.sets[v]));
                visit(scratch);
            }
            return;
        }
        // Pivot on the vertex of P ∪ X with most neighbours in P.
        let pivot = p
            .ones()
            .chain(x.ones())
            .max_by_key(|&u| (p.and_count(self.row(u)), std::cmp::Reverse(u)))
            .expect("P is non-empty");
        let candidates: Vec<usize> = p.and_not(self.row(pivot)).ones().collect();
        for v in candidates {
            let row = self.row(v);
            r.push(v);
            self.expand(r, p.and(row), x.and(row), scratch, visit);
            r.pop();
            p.clear(v);
            x.set(v);
        }
    }

    /// Folds every branch into its own accumulator, splitting branches
    /// round-robin over `workers` threads. The result is in branch order and
    /// does not depend on `workers`.
    pub(crate) fn fold_branches<A, I, S>(&self, workers: usize, init: I, step: S) -> Vec<A>
    where
        A: Send,
        I: Fn() -> A + Sync,
        S: Fn(&mut A, &[VertexSet]) + Sync,
    {
        let v = self.vertex_count();
        let workers = workers.clamp(1, v.max(1));
        let run = |w: usize| -> Vec<(usize, A)> {
            (w..v)
                .step_by(workers)
                .map(|i| {
                    let mut acc = init();
                    self.branch(i, &mut |fam| step(&mut acc, fam));
                    (i, acc)
                })
                .collect()
        };
        let mut parts: Vec<(usize, A)> = if workers == 1 {
            run(0)
        } else {
            std::thread::scope(|s| {
                let handles: Vec<_> = (0..workers).map(|w| s.spawn(move || run(w))).collect();
                handles
                    .into_iter()
                    .flat_map(|h| h.join().expect("search worker panicked"))
                    .collect()
            })
        };
        parts.sort_unstable_by_key(|(i, _)| *i);
        parts.into_iter().map(|(_, a)| a).collect()
    }
}
