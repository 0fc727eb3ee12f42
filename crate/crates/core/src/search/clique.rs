//! Bitset branch-and-bound maximum clique search with greedy colouring
//! bounds.

use rayon::prelude::*;

#[derive(Clone, Debug)]
pub(crate) struct Graph {
    #[cfg_attr(not(test), allow(dead_code))]
    n: usize,
    stride: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds the graph whose edges are the pairs `i != j` with `edge(i, j)`.
    /// `edge` must be symmetric.
    pub fn from_fn(n: usize, edge: impl Fn(usize, usize) -> bool + Sync) -> Self {
        let stride = n.div_ceil(64).max(1);
        let mut adj = vec![0u64; n * stride];
        adj.par_chunks_mut(stride).enumerate().for_each(|(i, row)| {
            for j in (0..n).filter(|&j| j != i) {
                if edge(i, j) {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
        });
        Graph { n, stride, adj }
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.n
    }

    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.stride..(v + 1) * self.stride]
    }

    #[cfg(test)]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }
}

fn first_bit(set: &[u64]) -> Option<usize> {
    set.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

fn clear(set: &mut [u64], v: usize) {
    set[v / 64] &= !(1 << (v % 64));
}

fn is_empty(set: &[u64]) -> bool {
    set.iter().all(|&w| w == 0)
}

#[derive(Clone, Debug)]
pub(crate) struct CliqueOutcome {
    /// Vertices of the best clique found, ascending.
    pub clique: Vec<usize>,
    /// False when the node budget ran out before the search finished.
    pub complete: bool,
    pub nodes: u64,
}

struct Search<'g> {
    g: &'g Graph,
    best: Vec<usize>,
    target: Option<usize>,
    budget: Option<u64>,
    nodes: u64,
    aborted: bool,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.aborted || self.target.is_some_and(|t| self.best.len() >= t)
    }

    /// Greedy sequential colouring of `cand`; returns vertices in colour order
    /// with each vertex's colour number.
    fn colour(&self, cand: &[u64]) -> (Vec<usize>, Vec<usize>) {
        let mut uncoloured = cand.to_vec();
        let mut order = Vec::new();
        let mut colours = Vec::new();
        let mut k = 0;
        while !is_empty(&uncoloured) {
            k += 1;
            let mut avail = uncoloured.clone();
            while let Some(v) = first_bit(&avail) {
                clear(&mut avail, v);
                clear(&mut uncoloured, v);
                for (a, r) in avail.iter_mut().zip(self.g.row(v)) {
                    *a &= !r;
                }
                order.push(v);
                colours.push(k);
            }
        }
        (order, colours)
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut cand: Vec<u64>) {
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            self.aborted = true;
            return;
        }
        let (order, colours) = self.colour(&cand);
        for idx in (0..order.len()).rev() {
            if self.done() || clique.len() + colours[idx] <= self.best.len() {
                return;
            }
            let v = order[idx];
            clique.push(v);
            let next: Vec<u64> = cand.iter().zip(self.g.row(v)).map(|(c, r)| c & r).collect();
            if is_empty(&next) {
                if clique.len() > self.best.len() {
                    self.best = clique.clone();
                }
            } else {
                self.expand(clique, next);
            }
            clique.pop();
            clear(&mut cand, v);
        }
    }
}

/// Maximum clique among cliques containing at least one of `roots`. Roots
/// are tried in the given order; each root's subproblem excludes the roots
/// tried before it. With `target`, stops as soon as a clique of that size is
/// found.
pub(crate) fn max_clique_rooted(
    g: &Graph,
    roots: &[usize],
    target: Option<usize>,
    budget: Option<u64>,
) -> CliqueOutcome {
    let mut s = Search {
        g,
        best: Vec::new(),
        target,
        budget,
        nodes: 0,
        aborted: false,
    };
    let mut excluded = vec![0u64; g.stride];
    for &r in roots {
        if s.done() {
            break;
        }
        if s.best.is_empty() {
            s.best = vec![r];
        }
        let cand: Vec<u64> = g
            .row(r)
            .iter()
            .zip(&excluded)
            .map(|(a, e)| a & !e)
            .collect();
        excluded[r / 64] |= 1 << (r % 64);
        if !is_empty(&cand) {
            s.expand(&mut vec![r], cand);
        }
    }
    let mut clique = s.best;
    clique.sort_unstable();
    CliqueOutcome {
        clique,
        complete: !s.aborted,
        nodes: s.nodes,
    }
}

#[cfg(test)]
pub(crate) fn max_clique(g: &Graph, target: Option<usize>, budget: Option<u64>) -> CliqueOutcome {
    let roots: Vec<usize> = (0..g.len()).collect();
    max_clique_rooted(g, &roots, target, budget)
}
