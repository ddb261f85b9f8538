//! Multi-neighborhood tabu search for large cliques.
//!
//! The search keeps a current clique `C` and, for every vertex outside it,
//! the number of clique members it is *not* adjacent to. Vertices missing
//! zero members can be added; vertices missing exactly one can be swapped
//! in for that member. Each iteration applies the best admissible move:
//! add (gain +1), else swap (gain 0), else drop (gain -1). A vertex leaving
//! the clique is tabu for a while; a tabu add is still allowed when it
//! would beat the best clique so far. After `depth` iterations without
//! improving the restart's best size, the search restarts from a fresh
//! random maximal clique. The run stops after `iter_max` iterations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Clique, View};

const SWAP_TENURE: usize = 7;
const DROP_TENURE: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MntsParams {
    pub iter_max: usize,
    /// Iterations without improvement before a restart.
    pub depth: usize,
}

impl MntsParams {
    /// Per-node budget inside the propagator.
    pub const NODE: MntsParams = MntsParams {
        iter_max: 200,
        depth: 25,
    };
    /// Enlarged budget for the initial clique.
    pub const ROOT: MntsParams = MntsParams {
        iter_max: 10_000,
        depth: 100,
    };
}

struct State<'v, 'a> {
    view: &'v View<'a>,
    verts: Vec<usize>,
    in_clique: Vec<bool>,
    missing: Vec<u32>,
    clique: Vec<usize>,
}

impl State<'_, '_> {
    fn add(&mut self, v: usize) {
        self.in_clique[v] = true;
        self.clique.push(v);
        for &u in &self.verts {
            if u != v && !self.view.has_edge(u, v) {
                self.missing[u] += 1;
            }
        }
    }

    fn remove(&mut self, v: usize) {
        self.in_clique[v] = false;
        let i = self.clique.iter().position(|&x| x == v).unwrap();
        self.clique.swap_remove(i);
        for &u in &self.verts {
            if u != v && !self.view.has_edge(u, v) {
                self.missing[u] -= 1;
            }
        }
    }

    fn reset(&mut self) {
        for &v in &self.verts {
            self.in_clique[v] = false;
            self.missing[v] = 0;
        }
        self.clique.clear();
    }

    fn outside(&self, misses: u32) -> impl Iterator<Item = usize> + '_ {
        self.verts
            .iter()
            .copied()
            .filter(move |&v| !self.in_clique[v] && self.missing[v] == misses)
    }
}

/// Deterministic for a fixed `(view, params, seed)`.
pub fn mnts_clique(view: &View, params: MntsParams, seed: u64) -> Clique {
    let verts: Vec<usize> = view.vertices().collect();
    if verts.is_empty() {
        return Clique::default();
    }
    let cap = view.capacity();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut st = State {
        view,
        verts,
        in_clique: vec![false; cap],
        missing: vec![0; cap],
        clique: Vec::new(),
    };
    let mut tabu_until = vec![0usize; cap];
    let mut best: Vec<usize> = Vec::new();
    let mut iter = 0usize;
    let mut buf = Vec::new();

    while iter < params.iter_max.max(1) {
        st.reset();
        for &v in &st.verts {
            tabu_until[v] = 0;
        }
        let start = st.verts[rng.random_range(0..st.verts.len())];
        st.add(start);
        loop {
            buf.clear();
            buf.extend(st.outside(0));
            if buf.is_empty() {
                break;
            }
            let v = buf[rng.random_range(0..buf.len())];
            st.add(v);
        }
        if st.clique.len() > best.len() {
            best = st.clique.clone();
        }
        let mut local_best = st.clique.len();
        let mut stale = 0usize;

        while stale < params.depth.max(1) && iter < params.iter_max {
            iter += 1;
            buf.clear();
            buf.extend(st.outside(0).filter(|&v| tabu_until[v] <= iter));
            if buf.is_empty() && st.clique.len() + 1 > best.len() {
                buf.extend(st.outside(0));
            }
            if !buf.is_empty() {
                let v = buf[rng.random_range(0..buf.len())];
                st.add(v);
            } else {
                let om_len = st.outside(1).count();
                buf.extend(st.outside(1).filter(|&v| tabu_until[v] <= iter));
                if !buf.is_empty() {
                    let v = buf[rng.random_range(0..buf.len())];
                    let u = *st
                        .clique
                        .iter()
                        .find(|&&u| !view.has_edge(u, v))
                        .unwrap();
                    st.remove(u);
                    st.add(v);
                    tabu_until[u] = iter + SWAP_TENURE + rng.random_range(0..=om_len);
                } else if !st.clique.is_empty() {
                    let u = st.clique[rng.random_range(0..st.clique.len())];
                    st.remove(u);
                    tabu_until[u] = iter + DROP_TENURE;
                }
            }
            if st.clique.len() > best.len() {
                best = st.clique.clone();
            }
            if st.clique.len() > local_best {
                local_best = st.clique.len();
                stale = 0;
            } else {
                stale += 1;
            }
        }
    }
    best.sort_unstable();
    Clique::new(best)
}
