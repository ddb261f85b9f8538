//! Chromatic-number-preserving reductions and coloring recovery.
//!
//! Two rules run to a fixpoint: a vertex of degree below a lower bound `lb`
//! is removed, and a vertex `u` whose open neighborhood is contained in that
//! of a non-adjacent vertex `v` is removed (it can reuse `v`'s color). Each
//! sweep applies the low-degree pass first, then the domination pass. When
//! two vertices dominate each other the higher-numbered one is removed.

use crate::bitset::{self, DenseGraph};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Removal {
    /// `vertex` had fewer than `lb` neighbors (listed) when removed.
    LowDegree { vertex: usize, neighbors: Vec<usize> },
    /// `N(vertex) ⊆ N(dominator)` and the two were not adjacent.
    Dominated { vertex: usize, dominator: usize },
}

/// Removal records in the order they were applied. Ids refer to the
/// original graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionLog {
    pub records: Vec<Removal>,
}

impl ReductionLog {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Reduction {
    /// The reduced graph, vertices renumbered `0..kept.len()`.
    pub graph: Graph,
    /// `kept[i]` is the original id of reduced vertex `i`.
    pub kept: Vec<usize>,
    pub log: ReductionLog,
    original_n: usize,
}

impl Reduction {
    /// Number of vertices of the graph that was reduced.
    pub fn original_vertices(&self) -> usize {
        self.original_n
    }

    /// Maps reduced ids to original ids and back (`None` if removed).
    pub fn reduced_id(&self, original: usize) -> Option<usize> {
        self.kept.binary_search(&original).ok()
    }
}

pub fn reduce(g: &Graph, lb: usize) -> Reduction {
    let n = g.num_vertices();
    let adj = DenseGraph::from_graph(g);
    let words = adj.num_words();
    let mut rows: Vec<Vec<u64>> = (0..n).map(|v| adj.row(v).to_vec()).collect();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut log = ReductionLog::default();

    let remove = |v: usize, rows: &mut Vec<Vec<u64>>, deg: &mut Vec<usize>, alive: &mut Vec<bool>| {
        alive[v] = false;
        let nbrs: Vec<usize> = bitset::ones(&rows[v]).collect();
        for &w in &nbrs {
            bitset::clear(&mut rows[w], v);
            deg[w] -= 1;
        }
        rows[v] = vec![0; words];
        deg[v] = 0;
        nbrs
    };

    loop {
        let mut changed = false;
        for v in 0..n {
            if alive[v] && deg[v] < lb {
                let neighbors = remove(v, &mut rows, &mut deg, &mut alive);
                log.records.push(Removal::LowDegree { vertex: v, neighbors });
                changed = true;
            }
        }
        for u in 0..n {
            if !alive[u] {
                continue;
            }
            let mut hit = None;
            for v in 0..n {
                if v == u || !alive[v] || deg[u] > deg[v] || bitset::test(&rows[u], v) {
                    continue;
                }
                if bitset::is_subset(&rows[u], &rows[v]) {
                    hit = Some(if deg[u] == deg[v] && u < v { (v, u) } else { (u, v) });
                    break;
                }
            }
            if let Some((vertex, dominator)) = hit {
                remove(vertex, &mut rows, &mut deg, &mut alive);
                log.records.push(Removal::Dominated { vertex, dominator });
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let kept: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    Reduction {
        graph: g.induced(&kept),
        kept,
        log,
        original_n: n,
    }
}

/// Lifts a coloring of the reduced graph to the original graph by replaying
/// the log backwards. Low-degree vertices take the smallest color in `0..k`
/// unused by their recorded neighbors; dominated vertices copy their
/// dominator's color.
pub fn recover(reduction: &Reduction, reduced_coloring: &[usize], k: usize) -> Result<Vec<usize>> {
    assert_eq!(reduced_coloring.len(), reduction.kept.len());
    let mut colors = vec![usize::MAX; reduction.original_n];
    for (i, &orig) in reduction.kept.iter().enumerate() {
        colors[orig] = reduced_coloring[i];
    }
    let palette = k.max(reduced_coloring.iter().map(|c| c + 1).max().unwrap_or(0));
    for record in reduction.log.records.iter().rev() {
        match record {
            Removal::LowDegree { vertex, neighbors } => {
                let mut used = vec![false; palette];
                for &w in neighbors {
                    if colors[w] < palette {
                        used[colors[w]] = true;
                    }
                }
                let c = used.iter().position(|u| !u).ok_or(Error::PaletteExhausted {
                    vertex: *vertex,
                    k: palette,
                })?;
                colors[*vertex] = c;
            }
            Removal::Dominated { vertex, dominator } => {
                colors[*vertex] = colors[*dominator];
            }
        }
    }
    Ok(colors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{count_colors, erdos_renyi, named};
    use crate::oracle::{oracle_chromatic, oracle_coloring};

    #[test]
    fn path_fully_reduced_with_lb_two() {
        let g = named::path(3);
        let r = reduce(&g, 2);
        assert_eq!(r.graph.num_vertices(), 0);
        assert_eq!(r.log.len(), 3);
        let c = recover(&r, &[], 2).unwrap();
        assert!(g.is_proper_coloring(&c));
        assert_eq!(count_colors(&c), 2);
    }

    #[test]
    fn triangle_fully_reduced_with_lb_three() {
        let g = named::complete(3);
        let r = reduce(&g, 3);
        assert_eq!(r.graph.num_vertices(), 0);
        let c = recover(&r, &[], 3).unwrap();
        assert!(g.is_proper_coloring(&c));
        assert_eq!(count_colors(&c), 3);
    }

    #[test]
    fn five_cycle_depends_on_lb() {
        let g = named::cycle(5);
        let kept = reduce(&g, 2);
        assert_eq!(kept.graph, g);
        assert!(kept.log.is_empty());

        let gone = reduce(&g, 3);
        assert_eq!(gone.graph.num_vertices(), 0);
        let c = recover(&gone, &[], 3).unwrap();
        assert!(g.is_proper_coloring(&c));
        assert_eq!(count_colors(&c), 3);
    }

    #[test]
    fn empty_log_is_identity() {
        let g = named::cycle(5);
        let r = reduce(&g, 2);
        let col = vec![0, 1, 0, 1, 2];
        assert_eq!(recover(&r, &col, 3).unwrap(), col);
    }

    #[test]
    fn mutual_domination_removes_higher_id() {
        // 0 and 2 share the neighborhood {1}; with lb = 1 no vertex has low degree.
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let r = reduce(&g, 1);
        assert_eq!(
            r.log.records[0],
            Removal::Dominated { vertex: 2, dominator: 0 }
        );
    }

    #[test]
    fn recover_detects_invalid_lower_bound() {
        // Claiming lb = 4 on K4 is valid; lb = 5 removes vertices that then
        // cannot be colored within a palette of 3.
        let g = named::complete(4);
        let r = reduce(&g, 5);
        assert!(matches!(recover(&r, &[], 3), Err(Error::PaletteExhausted { .. })));
    }

    #[test]
    fn random_graphs_preserve_chromatic_number() {
        for seed in 0..500u64 {
            let n = 2 + (seed as usize % 13);
            let p = [0.2, 0.35, 0.5, 0.7, 0.85][seed as usize % 5];
            let g = erdos_renyi(n, p, seed).unwrap();
            let chi = oracle_chromatic(&g).unwrap();
            let lb = (seed as usize / 7) % (chi + 1);
            let r = reduce(&g, lb);
            let reduced_chi = oracle_chromatic(&r.graph).unwrap();
            assert_eq!(chi, lb.max(reduced_chi), "seed {seed}");

            // Fixpoint: a second pass removes nothing.
            assert!(reduce(&r.graph, lb).log.is_empty(), "seed {seed}");

            let k = lb.max(reduced_chi);
            let inner = oracle_coloring(&r.graph, reduced_chi).unwrap().unwrap();
            let c = recover(&r, &inner, k).unwrap();
            assert!(g.is_proper_coloring(&c), "seed {seed}");
            assert_eq!(count_colors(&c), chi, "seed {seed}");
        }
    }

    #[test]
    fn reduced_graph_has_no_low_degree_or_dominated_vertices() {
        let g = erdos_renyi(40, 0.3, 11).unwrap();
        let r = reduce(&g, 4);
        let h = &r.graph;
        for u in 0..h.num_vertices() {
            assert!(h.degree(u) >= 4);
            for v in 0..h.num_vertices() {
                if u != v && !h.has_edge(u, v) {
                    let sub = h.neighbors(u).iter().all(|w| h.has_edge(*w, v));
                    assert!(!sub, "{u} dominated by {v}");
                }
            }
        }
    }
}
