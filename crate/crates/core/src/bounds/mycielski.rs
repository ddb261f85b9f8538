//! Generalized Mycielskian lower bound.
//!
//! Given a subgraph `H` with vertex list `v_1..v_s` and `χ(H) ≥ b`, a round
//! looks for vertices `u_i` with `N_H(v_i) ⊆ N(u_i)` and an apex `w`
//! adjacent to every `u_i`. The extended subgraph (H plus the edges
//! `u_i x` for `x ∈ N_H(v_i)` and `w u_i`) has `χ ≥ b + 1`: in any coloring
//! with the apex color `a`, recoloring each `v_i` of color `a` with the color
//! of `u_i` gives a coloring of `H` without `a`.
//!
//! Admissible shadows include `v_i` itself, which makes a universal apex a
//! special case. Among apexes admitting a choice for every `i` the lowest id
//! is taken; `u_i = v_i` is preferred, otherwise the lowest admissible id.

use crate::bitset::{self, DenseGraph};
use crate::graph::Graph;

use super::{Clique, View};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MycielskiRound {
    pub apex: usize,
    /// `shadows[i]` answers the `i`-th vertex of the subgraph before the round.
    pub shadows: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    Clique,
    Mycielskian { level: usize },
}

/// Subgraph certifying `χ ≥ bound` in the graph it was built on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundWitness {
    /// In construction order: the base clique first.
    pub vertices: Vec<usize>,
    /// Sorted, each pair `(a, b)` with `a < b`.
    pub edges: Vec<(usize, usize)>,
    pub bound: usize,
    pub base: Vec<usize>,
    pub rounds: Vec<MycielskiRound>,
}

impl BoundWitness {
    pub fn from_clique(clique: &Clique) -> Self {
        let vs = clique.vertices.clone();
        let mut edges = Vec::new();
        for (i, &a) in vs.iter().enumerate() {
            for &b in &vs[i + 1..] {
                edges.push((a.min(b), a.max(b)));
            }
        }
        edges.sort_unstable();
        BoundWitness {
            bound: vs.len(),
            base: vs.clone(),
            vertices: vs,
            edges,
            rounds: Vec::new(),
        }
    }

    pub fn kind(&self) -> WitnessKind {
        if self.rounds.is_empty() {
            WitnessKind::Clique
        } else {
            WitnessKind::Mycielskian {
                level: self.rounds.len(),
            }
        }
    }

    /// Replays the construction against `view` and compares the result with
    /// the stored vertex list, edge list and bound.
    pub fn verify(&self, view: &View) -> bool {
        let cap = view.capacity();
        let ok_vertex = |v: usize| v < cap && view.is_active(v);
        if !self.base.iter().all(|&v| ok_vertex(v)) || !Clique::new(self.base.clone()).verify(view) {
            return false;
        }
        let mut h = SubgraphBuilder::new(cap);
        for &v in &self.base {
            h.add_vertex(v);
        }
        for (i, &a) in self.base.iter().enumerate() {
            for &b in &self.base[i + 1..] {
                h.add_edge(a, b);
            }
        }
        for round in &self.rounds {
            if round.shadows.len() != h.vertices.len() || !ok_vertex(round.apex) {
                return false;
            }
            for (i, &u) in round.shadows.iter().enumerate() {
                let v = h.vertices[i];
                if !ok_vertex(u)
                    || u == round.apex
                    || !view.has_edge(u, round.apex)
                    || !bitset::is_subset(h.graph.row(v), view.row(u))
                {
                    return false;
                }
            }
            h.apply(round);
        }
        let mut edges = h.graph.edges();
        edges.sort_unstable();
        h.vertices == self.vertices
            && edges == self.edges
            && self.bound == self.base.len() + self.rounds.len()
            && self.edges.iter().all(|&(a, b)| view.has_edge(a, b))
    }

    /// The witness as a standalone graph on `0..|vertices|`, numbered in
    /// construction order.
    pub fn to_graph(&self) -> Graph {
        let index = |v: usize| self.vertices.iter().position(|&x| x == v).unwrap();
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&(a, b)| (index(a), index(b))).collect();
        Graph::from_edges(self.vertices.len(), &edges).expect("witness is a simple graph")
    }
}

struct SubgraphBuilder {
    graph: DenseGraph,
    members: Vec<u64>,
    vertices: Vec<usize>,
}

impl SubgraphBuilder {
    fn new(cap: usize) -> Self {
        SubgraphBuilder {
            graph: DenseGraph::new(cap),
            members: vec![0; bitset::words_for(cap)],
            vertices: Vec::new(),
        }
    }

    fn add_vertex(&mut self, v: usize) {
        if !bitset::test(&self.members, v) {
            bitset::set(&mut self.members, v);
            self.vertices.push(v);
        }
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        self.graph.add_edge(a, b);
    }

    fn apply(&mut self, round: &MycielskiRound) {
        let base = self.vertices.clone();
        let mut new_edges = Vec::new();
        for (i, &v) in base.iter().enumerate() {
            let u = round.shadows[i];
            new_edges.extend(self.graph.neighbors(v).map(|x| (u, x)));
            new_edges.push((u, round.apex));
        }
        for &u in &round.shadows {
            self.add_vertex(u);
        }
        self.add_vertex(round.apex);
        for (a, b) in new_edges {
            self.add_edge(a, b);
        }
    }
}

/// Extends `start` by up to `max_rounds` Mycielskian rounds inside `view`.
/// Each successful round raises the bound by one.
pub fn mycielskian_bound(view: &View, start: &BoundWitness, max_rounds: usize) -> BoundWitness {
    let cap = view.capacity();
    let words = view.words();
    let mut h = SubgraphBuilder::new(cap);
    for &v in &start.base {
        h.add_vertex(v);
    }
    for (i, &a) in start.base.iter().enumerate() {
        for &b in &start.base[i + 1..] {
            h.add_edge(a, b);
        }
    }
    for round in &start.rounds {
        h.apply(round);
    }
    let mut rounds = start.rounds.clone();
    let active: Vec<usize> = view.vertices().collect();

    for _ in 0..max_rounds {
        let s = h.vertices.len();
        // Admissible shadows per subgraph vertex.
        let mut shadows = vec![0u64; s * words];
        for (i, &v) in h.vertices.iter().enumerate() {
            let nh = h.graph.row(v);
            let slot = &mut shadows[i * words..(i + 1) * words];
            for &u in &active {
                if bitset::is_subset(nh, view.row(u)) {
                    bitset::set(slot, u);
                }
            }
        }
        let apex = active.iter().copied().find(|&w| {
            let row = view.row(w);
            (0..s).all(|i| bitset::intersects(&shadows[i * words..(i + 1) * words], row))
        });
        let Some(w) = apex else { break };
        let row = view.row(w);
        let chosen: Vec<usize> = h
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                if bitset::test(row, v) {
                    v
                } else {
                    let slot = &shadows[i * words..(i + 1) * words];
                    bitset::ones(slot).find(|&u| bitset::test(row, u)).unwrap()
                }
            })
            .collect();
        let round = MycielskiRound {
            apex: w,
            shadows: chosen,
        };
        h.apply(&round);
        rounds.push(round);
    }

    let mut edges = h.graph.edges();
    edges.sort_unstable();
    BoundWitness {
        bound: start.base.len() + rounds.len(),
        vertices: h.vertices,
        edges,
        base: start.base.clone(),
        rounds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{greedy_clique, mnts_clique, MntsParams};
    use crate::graph::{erdos_renyi, named};
    use crate::oracle::oracle_chromatic;

    #[test]
    fn edge_of_c5_extends_to_c5() {
        let d = DenseGraph::from_graph(&named::cycle(5));
        let view = View::full(&d);
        let start = BoundWitness::from_clique(&Clique::new(vec![0, 1]));
        let w = mycielskian_bound(&view, &start, 10);
        assert_eq!(w.bound, 3);
        assert_eq!(w.kind(), WitnessKind::Mycielskian { level: 1 });
        assert_eq!(w.vertices.len(), 5);
        assert_eq!(w.edges.len(), 5);
        assert!(w.verify(&view));
        assert_eq!(oracle_chromatic(&w.to_graph()).unwrap(), 3);
    }

    #[test]
    fn grotzsch_reaches_four() {
        let g = named::grotzsch();
        let d = DenseGraph::from_graph(&g);
        let view = View::full(&d);
        // Outer 5-cycle as a level-1 witness built from edge {0,1}.
        let start = mycielskian_bound(&view, &BoundWitness::from_clique(&Clique::new(vec![0, 1])), 1);
        assert_eq!(start.bound, 3);
        let w = mycielskian_bound(&view, &start, 10);
        assert_eq!(w.bound, 4);
        assert!(w.verify(&view));
        assert!(oracle_chromatic(&w.to_graph()).unwrap() >= 4);
    }

    #[test]
    fn complete_graph_has_no_extension() {
        let d = DenseGraph::from_graph(&named::complete(4));
        let view = View::full(&d);
        let start = BoundWitness::from_clique(&Clique::new(vec![0, 1, 2, 3]));
        let w = mycielskian_bound(&view, &start, 10);
        assert_eq!(w.bound, 4);
        assert_eq!(w.kind(), WitnessKind::Clique);
        assert!(w.verify(&view));
    }

    #[test]
    fn tampered_witness_fails_verification() {
        let d = DenseGraph::from_graph(&named::cycle(5));
        let view = View::full(&d);
        let start = BoundWitness::from_clique(&Clique::new(vec![0, 1]));
        let mut w = mycielskian_bound(&view, &start, 10);
        w.bound += 1;
        assert!(!w.verify(&view));
        let mut w = mycielskian_bound(&view, &start, 10);
        w.rounds[0].apex = 0;
        assert!(!w.verify(&view));
    }

    #[test]
    fn random_witnesses_are_sound() {
        for seed in 0..200u64 {
            let n = 6 + (seed as usize % 7);
            let g = erdos_renyi(n, [0.3, 0.5, 0.7][seed as usize % 3], seed).unwrap();
            let d = DenseGraph::from_graph(&g);
            let view = View::full(&d);
            let order: Vec<usize> = (0..n).collect();
            let mut q = greedy_clique(&view, &order, &[]);
            let m = mnts_clique(&view, MntsParams::NODE, seed);
            if m.len() > q.len() {
                q = m;
            }
            let w = mycielskian_bound(&view, &BoundWitness::from_clique(&q), n);
            assert!(w.verify(&view), "seed {seed}");
            assert!(oracle_chromatic(&w.to_graph()).unwrap() >= w.bound, "seed {seed}");
            assert!(oracle_chromatic(&g).unwrap() >= w.bound);
        }
    }
}
