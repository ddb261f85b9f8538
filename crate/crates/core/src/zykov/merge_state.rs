//! The graph of the current Zykov node: bags of merged vertices, their
//! representatives, and the working graph `H` over representatives.
//!
//! Rows of `H` for active representatives only ever mention active
//! representatives. A merge rewires the neighbors of the absorbed vertex to
//! the survivor and leaves the absorbed row untouched, which is all the
//! undo step needs.

use std::hash::{Hash, Hasher};

use crate::bitset::{self, DenseGraph};
use crate::bounds::View;
use crate::graph::Graph;

#[derive(Clone, Debug)]
enum Op {
    Merge {
        keep: usize,
        gone: usize,
        keep_len: usize,
        gained: Vec<usize>,
    },
    Edge {
        a: usize,
        b: usize,
    },
}

#[derive(Clone, Debug)]
pub struct MergeState {
    h: DenseGraph,
    active: Vec<u64>,
    rep: Vec<usize>,
    bags: Vec<Vec<usize>>,
    journal: Vec<(usize, Op)>,
}

impl MergeState {
    pub fn new(g: &Graph) -> Self {
        let n = g.num_vertices();
        let mut active = vec![0u64; bitset::words_for(n)];
        for v in 0..n {
            bitset::set(&mut active, v);
        }
        MergeState {
            h: DenseGraph::from_graph(g),
            active,
            rep: (0..n).collect(),
            bags: (0..n).map(|v| vec![v]).collect(),
            journal: Vec::new(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.rep.len()
    }

    #[inline]
    pub fn rep(&self, v: usize) -> usize {
        self.rep[v]
    }

    /// Members of the bag represented by `r`.
    pub fn bag(&self, r: usize) -> &[usize] {
        debug_assert!(self.is_active(r));
        &self.bags[r]
    }

    #[inline]
    pub fn is_active(&self, v: usize) -> bool {
        bitset::test(&self.active, v)
    }

    pub fn representatives(&self) -> bitset::Ones<'_> {
        bitset::ones(&self.active)
    }

    pub fn num_representatives(&self) -> usize {
        bitset::count(&self.active)
    }

    /// Adjacency between two representatives in `H`.
    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.h.has_edge(a, b)
    }

    pub fn row(&self, r: usize) -> &[u64] {
        self.h.row(r)
    }

    pub fn view(&self) -> View<'_> {
        View::masked(&self.h, &self.active)
    }

    pub fn journal_len(&self) -> usize {
        self.journal.len()
    }

    /// Which of two representatives survives a merge: the larger bag, the
    /// lower id on ties.
    pub fn survivor(&self, a: usize, b: usize) -> (usize, usize) {
        let (la, lb) = (self.bags[a].len(), self.bags[b].len());
        if la > lb || (la == lb && a < b) {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Merges the bags of representatives `a` and `b` (non-adjacent).
    /// Returns `(survivor, absorbed)`.
    pub fn merge(&mut self, a: usize, b: usize, level: usize) -> (usize, usize) {
        debug_assert!(a != b && self.is_active(a) && self.is_active(b));
        debug_assert!(!self.adjacent(a, b));
        let (keep, gone) = self.survivor(a, b);
        let keep_len = self.bags[keep].len();
        let moved = std::mem::take(&mut self.bags[gone]);
        for &x in &moved {
            self.rep[x] = keep;
        }
        self.bags[keep].extend_from_slice(&moved);
        self.bags[gone] = moved;

        let gone_nbrs: Vec<usize> = self.h.neighbors(gone).collect();
        let mut gained = Vec::new();
        for &w in &gone_nbrs {
            self.unlink_one(w, gone);
            if !self.h.has_edge(keep, w) {
                self.h.add_edge(keep, w);
                gained.push(w);
            }
        }
        bitset::clear(&mut self.active, gone);
        self.journal.push((
            level,
            Op::Merge {
                keep,
                gone,
                keep_len,
                gained,
            },
        ));
        (keep, gone)
    }

    /// Adds the `H` edge between representatives `a` and `b`.
    pub fn add_edge(&mut self, a: usize, b: usize, level: usize) {
        debug_assert!(a != b && self.is_active(a) && self.is_active(b));
        debug_assert!(!self.adjacent(a, b));
        self.h.add_edge(a, b);
        self.journal.push((level, Op::Edge { a, b }));
    }

    /// Reverts every operation recorded above `level`.
    pub fn undo_to(&mut self, level: usize) {
        while let Some((l, _)) = self.journal.last() {
            if *l <= level {
                break;
            }
            let (_, op) = self.journal.pop().unwrap();
            match op {
                Op::Edge { a, b } => {
                    self.unlink_one(a, b);
                    self.unlink_one(b, a);
                }
                Op::Merge {
                    keep,
                    gone,
                    keep_len,
                    gained,
                } => {
                    for w in gained {
                        self.unlink_one(w, keep);
                        self.unlink_one(keep, w);
                    }
                    let gone_nbrs: Vec<usize> = self.h.neighbors(gone).collect();
                    for w in gone_nbrs {
                        self.link_one(w, gone);
                    }
                    bitset::set(&mut self.active, gone);
                    self.bags[keep].truncate(keep_len);
                    for i in 0..self.bags[gone].len() {
                        let x = self.bags[gone][i];
                        self.rep[x] = gone;
                    }
                }
            }
        }
    }

    fn unlink_one(&mut self, row: usize, bit: usize) {
        self.h.clear_bit(row, bit);
    }

    fn link_one(&mut self, row: usize, bit: usize) {
        self.h.set_bit(row, bit);
    }

    /// Hash of the observable state: representatives, bags and `H`.
    pub fn fingerprint(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.rep.hash(&mut h);
        self.active.hash(&mut h);
        for r in self.representatives() {
            let mut bag = self.bags[r].clone();
            bag.sort_unstable();
            bag.hash(&mut h);
            self.h.row(r).hash(&mut h);
        }
        h.finish()
    }

    /// `H` rebuilt from scratch: the input graph with every bag contracted
    /// and every edge between bags in `extra` added, on the representative
    /// ids. Inactive ids are isolated.
    pub fn contracted(g: &Graph, rep: &[usize], extra: &[(usize, usize)]) -> DenseGraph {
        let mut d = DenseGraph::new(g.num_vertices());
        for &(u, v) in g.edges().iter().chain(extra) {
            let (a, b) = (rep[u], rep[v]);
            if a != b && !d.has_edge(a, b) {
                d.add_edge(a, b);
            }
        }
        d
    }

    pub fn graph(&self) -> &DenseGraph {
        &self.h
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn merge_then_undo_restores_singletons() {
        let g = named::cycle(5);
        let mut s = MergeState::new(&g);
        let before = s.fingerprint();
        let (keep, gone) = s.merge(1, 4, 1);
        assert_eq!((keep, gone), (1, 4));
        assert_eq!(s.rep(4), 1);
        assert_eq!(s.bag(1), &[1, 4]);
        // 1 now sees 0, 2 and 3 (via 4); nobody sees 4.
        assert!(s.adjacent(1, 3) && s.adjacent(3, 1));
        assert!(!s.is_active(4));
        assert!(!crate::bitset::test(s.row(0), 4));
        s.undo_to(0);
        assert_eq!(s.fingerprint(), before);
        assert_eq!(s.bag(4), &[4]);
    }

    #[test]
    fn undo_stops_at_level() {
        let g = Graph::empty(4);
        let mut s = MergeState::new(&g);
        s.merge(0, 1, 1);
        let mid = s.fingerprint();
        s.merge(0, 2, 2);
        s.add_edge(0, 3, 2);
        s.undo_to(1);
        assert_eq!(s.fingerprint(), mid);
        assert_eq!(s.rep(2), 2);
        assert_eq!(s.rep(1), 0);
        s.undo_to(0);
        assert_eq!(s.num_representatives(), 4);
    }

    #[test]
    fn survivor_is_larger_bag_then_lower_id() {
        let g = Graph::empty(4);
        let mut s = MergeState::new(&g);
        assert_eq!(s.survivor(3, 2), (2, 3));
        s.merge(3, 1, 1);
        assert_eq!(s.rep(3), 1);
        assert_eq!(s.survivor(0, 1), (1, 0));
    }

    #[test]
    fn matches_contracted_rebuild() {
        let g = named::petersen();
        let mut s = MergeState::new(&g);
        let mut extra = Vec::new();
        let ops: [(bool, usize, usize); 5] = [(true, 0, 2), (false, 1, 3), (true, 5, 7), (true, 3, 9), (false, 0, 8)];
        for (lvl, (merge, u, v)) in ops.into_iter().enumerate() {
            let (a, b) = (s.rep(u), s.rep(v));
            if a == b || s.adjacent(a, b) {
                continue;
            }
            if merge {
                s.merge(a, b, lvl + 1);
            } else {
                s.add_edge(a, b, lvl + 1);
                extra.push((u, v));
            }
        }
        let rep: Vec<usize> = (0..10).map(|v| s.rep(v)).collect();
        let rebuilt = MergeState::contracted(&g, &rep, &extra);
        for a in s.representatives() {
            for b in s.representatives() {
                assert_eq!(s.adjacent(a, b), rebuilt.has_edge(a, b), "{a} {b}");
            }
        }
    }
}
