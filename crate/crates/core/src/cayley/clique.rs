//! Bitset graphs and exact maximum-clique search.
//!
//! The search is a Bron–Kerbosch style branch and bound: candidate sets are
//! bitsets, vertices are processed in a degree-based initial order, and each
//! node is pruned with a greedy colouring bound (a set coloured with k colours
//! holds no clique larger than k).

#[derive(Clone, Debug)]
pub struct BitGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitGraph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    /// Builds the graph whose edges are the pairs `i < j` with `edge(i, j)`.
    pub fn from_fn(n: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = BitGraph::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if edge(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.rows[u * self.words..(u + 1) * self.words]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Copy of the graph with vertex `order[i]` renamed to `i`.
    fn relabel(&self, order: &[usize]) -> BitGraph {
        BitGraph::from_fn(self.n, |i, j| self.has_edge(order[i], order[j]))
    }
}

/// A maximum clique of `g`, as vertex indices in ascending order.
pub fn maximum_clique(g: &BitGraph) -> Vec<usize> {
    if g.is_empty() {
        return Vec::new();
    }
    // Non-increasing degree order, ties by index.
    let mut order: Vec<usize> = (0..g.len()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let h = g.relabel(&order);

    let mut search = Search {
        g: &h,
        current: Vec::new(),
        best: Vec::new(),
    };
    let mut all = vec![0u64; h.words];
    for v in 0..h.n {
        all[v / 64] |= 1 << (v % 64);
    }
    search.expand(all);

    let mut out: Vec<usize> = search.best.iter().map(|&v| order[v]).collect();
    out.sort_unstable();
    out
}

/// Size of a maximum clique of `g`.
pub fn clique_number(g: &BitGraph) -> usize {
    maximum_clique(g).len()
}

struct Search<'a> {
    g: &'a BitGraph,
    current: Vec<usize>,
    best: Vec<usize>,
}

fn first_bit(set: &[u64]) -> Option<usize> {
    set.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

impl Search<'_> {
    /// Greedy sequential colouring of `cands`; returns vertices in
    /// non-decreasing colour order with their colour numbers (1-based).
    fn colour(&self, cands: &[u64]) -> Vec<(usize, usize)> {
        let mut uncoloured = cands.to_vec();
        let mut out = Vec::new();
        let mut colour = 0;
        while uncoloured.iter().any(|&w| w != 0) {
            colour += 1;
            let mut avail = uncoloured.clone();
            while let Some(v) = first_bit(&avail) {
                avail[v / 64] &= !(1 << (v % 64));
                uncoloured[v / 64] &= !(1 << (v % 64));
                for (a, r) in avail.iter_mut().zip(self.g.row(v)) {
                    *a &= !r;
                }
                out.push((v, colour));
            }
        }
        out
    }

    fn expand(&mut self, mut cands: Vec<u64>) {
        let coloured = self.colour(&cands);
        for &(v, colour) in coloured.iter().rev() {
            if self.current.len() + colour <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next: Vec<u64> = cands.iter().zip(self.g.row(v)).map(|(c, r)| c & r).collect();
            if next.iter().all(|&w| w == 0) {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cands[v / 64] &= !(1 << (v % 64));
        }
    }
}
