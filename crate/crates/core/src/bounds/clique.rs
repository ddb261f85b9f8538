use crate::bitset;

use super::View;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Clique {
    pub vertices: Vec<usize>,
}

impl Clique {
    pub fn new(vertices: Vec<usize>) -> Self {
        Clique { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Distinct active vertices, pairwise adjacent.
    pub fn verify(&self, view: &View) -> bool {
        let vs = &self.vertices;
        vs.iter().all(|&v| v < view.capacity() && view.is_active(v))
            && vs.iter().enumerate().all(|(i, &u)| {
                vs[i + 1..].iter().all(|&v| u != v && view.has_edge(u, v))
            })
    }
}

/// Candidate-list clique heuristic over a fixed order.
///
/// Vertices are visited in `seed ++ order` (inactive and repeated ids
/// skipped, unlisted active vertices appended). Each vertex joins every
/// candidate clique it is adjacent to, or opens a new one. Afterwards each
/// clique opened late is offered the vertices visited before it opened.
/// Since `seed` is visited first, the result is at least as large as it.
pub fn greedy_clique(view: &View, order: &[usize], seed: &[usize]) -> Clique {
    let words = view.words();
    let mut placed = vec![0u64; words];
    let mut seq = Vec::with_capacity(view.num_active());
    for &v in seed.iter().chain(order).chain(&view.vertices().collect::<Vec<_>>()) {
        if v < view.capacity() && view.is_active(v) && !bitset::test(&placed, v) {
            bitset::set(&mut placed, v);
            seq.push(v);
        }
    }

    let mut members: Vec<Vec<u64>> = Vec::new();
    let mut lists: Vec<Vec<usize>> = Vec::new();
    let mut opened_at: Vec<usize> = Vec::new();
    for (t, &v) in seq.iter().enumerate() {
        let row = view.row(v);
        let mut joined = false;
        for (m, l) in members.iter_mut().zip(lists.iter_mut()) {
            if bitset::is_subset(m, row) {
                bitset::set(m, v);
                l.push(v);
                joined = true;
            }
        }
        if !joined {
            let mut m = vec![0u64; words];
            bitset::set(&mut m, v);
            members.push(m);
            lists.push(vec![v]);
            opened_at.push(t);
        }
    }
    for c in 0..lists.len() {
        for &v in &seq[..opened_at[c]] {
            if !bitset::test(&members[c], v) && bitset::is_subset(&members[c], view.row(v)) {
                bitset::set(&mut members[c], v);
                lists[c].push(v);
            }
        }
    }

    let mut best = 0;
    for c in 1..lists.len() {
        if lists[c].len() > lists[best].len() {
            best = c;
        }
    }
    Clique::new(lists.into_iter().nth(best).unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::DenseGraph;
    use crate::graph::{erdos_renyi, named, Graph};

    fn max_clique_size(g: &DenseGraph) -> usize {
        let n = g.num_vertices();
        (0u32..1 << n)
            .filter(|&m| {
                let vs: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
                g.is_clique(&vs)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn examples() {
        let k4 = DenseGraph::from_graph(&named::complete(4));
        let view = View::full(&k4);
        assert_eq!(greedy_clique(&view, &[0, 1, 2, 3], &[0]).len(), 4);

        let c5 = DenseGraph::from_graph(&named::cycle(5));
        let view = View::full(&c5);
        let q = greedy_clique(&view, &[0, 1, 2, 3, 4], &[0, 1]);
        assert_eq!(q.len(), 2);
        assert!(q.verify(&view));

        let two = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let two = DenseGraph::from_graph(&two);
        assert_eq!(greedy_clique(&View::full(&two), &[0, 1, 2, 3, 4, 5], &[]).len(), 3);
    }

    #[test]
    fn late_cliques_take_earlier_vertices() {
        // {0,1} forms first; 2 opens a second clique that 3 joins. Only the
        // re-examination adds 1 to it.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3), (2, 3)]).unwrap();
        let d = DenseGraph::from_graph(&g);
        let q = greedy_clique(&View::full(&d), &[0, 1, 2, 3], &[]);
        assert_eq!(q.vertices, vec![2, 3, 1]);
    }

    #[test]
    fn respects_active_mask() {
        let d = DenseGraph::from_graph(&named::complete(5));
        let mut mask = vec![0u64; 1];
        for v in [0, 2, 4] {
            crate::bitset::set(&mut mask, v);
        }
        let view = View::masked(&d, &mask);
        let q = greedy_clique(&view, &[0, 1, 2, 3, 4], &[]);
        assert_eq!(q.vertices, vec![0, 2, 4]);
    }

    #[test]
    fn seed_first_never_shrinks_and_cliques_verify() {
        for seed in 0..300u64 {
            let n = 5 + (seed as usize % 9);
            let g = erdos_renyi(n, [0.3, 0.5, 0.7][seed as usize % 3], seed).unwrap();
            let d = DenseGraph::from_graph(&g);
            let view = View::full(&d);
            let order: Vec<usize> = (0..n).rev().collect();
            let plain = greedy_clique(&view, &order, &[]);
            assert!(plain.verify(&view));
            let opt = max_clique_size(&d);
            assert!(plain.len() <= opt);
            // A maximum clique placed first is returned at full size.
            let best: Vec<usize> = (0u32..1 << n)
                .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>())
                .filter(|vs| d.is_clique(vs))
                .max_by_key(|vs| vs.len())
                .unwrap();
            let seeded = greedy_clique(&view, &order, &best);
            assert!(seeded.verify(&view));
            assert_eq!(seeded.len(), opt);
        }
    }
}
