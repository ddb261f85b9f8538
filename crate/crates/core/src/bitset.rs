//! Fixed-width bitsets and a dense adjacency-matrix graph.
//!
//! Bounds and the propagator work on small, frequently rebuilt graphs where
//! subset and intersection tests dominate; rows of `u64` words keep those
//! tests word-parallel.

use crate::graph::Graph;

#[inline]
pub fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
pub fn test(words: &[u64], i: usize) -> bool {
    words[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
pub fn set(words: &mut [u64], i: usize) {
    words[i >> 6] |= 1u64 << (i & 63);
}

#[inline]
pub fn clear(words: &mut [u64], i: usize) {
    words[i >> 6] &= !(1u64 << (i & 63));
}

pub fn count(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// `a ⊆ b`
pub fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// `a ⊆ b` restricted to the bits in `mask`.
pub fn is_subset_masked(a: &[u64], b: &[u64], mask: &[u64]) -> bool {
    a.iter()
        .zip(b)
        .zip(mask)
        .all(|((x, y), m)| x & m & !y == 0)
}

pub fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

/// Iterates the indices of set bits in ascending order.
pub fn ones(words: &[u64]) -> Ones<'_> {
    Ones {
        words,
        idx: 0,
        cur: words.first().copied().unwrap_or(0),
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + bit);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

/// Undirected graph on `0..n` stored as an adjacency bit matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseGraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl DenseGraph {
    pub fn new(n: usize) -> Self {
        let words = words_for(n);
        DenseGraph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        let mut d = DenseGraph::new(g.num_vertices());
        for &(u, v) in g.edges() {
            d.add_edge(u, v);
        }
        d
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut d = DenseGraph::new(n);
        for &(u, v) in edges {
            d.add_edge(u, v);
        }
        d
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn num_words(&self) -> usize {
        self.words
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        let w = self.words;
        set(&mut self.bits[u * w..(u + 1) * w], v);
        set(&mut self.bits[v * w..(v + 1) * w], u);
    }

    /// Sets `v` in row `u` only. Callers keep the matrix symmetric.
    #[inline]
    pub fn set_bit(&mut self, u: usize, v: usize) {
        let w = self.words;
        set(&mut self.bits[u * w..(u + 1) * w], v);
    }

    #[inline]
    pub fn clear_bit(&mut self, u: usize, v: usize) {
        let w = self.words;
        clear(&mut self.bits[u * w..(u + 1) * w], v);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        test(self.row(u), v)
    }

    #[inline]
    pub fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn degree(&self, u: usize) -> usize {
        count(self.row(u))
    }

    pub fn neighbors(&self, u: usize) -> Ones<'_> {
        ones(self.row(u))
    }

    pub fn num_edges(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Induced subgraph on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> DenseGraph {
        let mut d = DenseGraph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    d.add_edge(i, j);
                }
            }
        }
        d
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.n, &self.edges()).expect("dense graph is simple")
    }
}
