//! Heuristic bounds on the chromatic number.
//!
//! Lower bounds come with a witness subgraph that can be checked
//! independently of the heuristic that produced it.

mod clique;
mod dsatur;
mod mnts;
mod mycielski;

pub use clique::{greedy_clique, Clique};
pub use dsatur::dsatur;
pub use mnts::{mnts_clique, MntsParams};
pub use mycielski::{mycielskian_bound, BoundWitness, MycielskiRound, WitnessKind};

use std::borrow::Cow;

use crate::bitset::{self, DenseGraph, Ones};

/// Permutation of the vertex ids.
pub type VertexOrder = Vec<usize>;

/// A dense graph restricted to a set of active vertices.
///
/// Rows of active vertices must only contain active vertices; rows of
/// inactive vertices are never read.
#[derive(Clone, Debug)]
pub struct View<'a> {
    graph: &'a DenseGraph,
    active: Cow<'a, [u64]>,
}

impl<'a> View<'a> {
    pub fn full(graph: &'a DenseGraph) -> Self {
        let mut active = vec![0u64; graph.num_words()];
        for v in 0..graph.num_vertices() {
            bitset::set(&mut active, v);
        }
        View {
            graph,
            active: Cow::Owned(active),
        }
    }

    pub fn masked(graph: &'a DenseGraph, active: &'a [u64]) -> Self {
        debug_assert_eq!(active.len(), graph.num_words());
        View {
            graph,
            active: Cow::Borrowed(active),
        }
    }

    /// Id space size (active or not).
    #[inline]
    pub fn capacity(&self) -> usize {
        self.graph.num_vertices()
    }

    #[inline]
    pub fn words(&self) -> usize {
        self.graph.num_words()
    }

    #[inline]
    pub fn is_active(&self, v: usize) -> bool {
        bitset::test(&self.active, v)
    }

    pub fn active_mask(&self) -> &[u64] {
        &self.active
    }

    pub fn vertices(&self) -> Ones<'_> {
        bitset::ones(&self.active)
    }

    pub fn num_active(&self) -> usize {
        bitset::count(&self.active)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.graph.has_edge(u, v)
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        self.graph.row(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.graph.degree(v)
    }
}
