//! Plain CNF encodings of k-colorability.
//!
//! The assignment encoding uses one variable per vertex and color. The full
//! Zykov encoding uses the same-color variables of [`EdgeVarMap`], every
//! transitivity clause, a per-vertex "opens a new color" variable and a
//! totalizer bounding the number of opened colors.

use crate::error::{Error, Result};
use crate::graph::{count_colors, Graph};
use crate::sat::{Cnf, Lit, Totalizer, Var};
use crate::zykov::EdgeVarMap;

/// Assignment encoding: `x(v, i)` is variable `v * k + i`.
#[derive(Clone, Debug)]
pub struct AssignmentEncoding {
    pub cnf: Cnf,
    pub num_vertices: usize,
    pub k: usize,
}

impl AssignmentEncoding {
    pub fn var(&self, v: usize, color: usize) -> Var {
        Var::new(v * self.k + color)
    }

    /// Lowest true color of each vertex.
    pub fn decode(&self, model: &[bool]) -> Result<Vec<usize>> {
        (0..self.num_vertices)
            .map(|v| {
                (0..self.k)
                    .find(|&i| model[self.var(v, i).index()])
                    .ok_or_else(|| Error::InvalidColoring(format!("vertex {v} has no color")))
            })
            .collect()
    }
}

/// At-least-one and at-most-one color per vertex, distinct colors on edges,
/// the position-based symmetry clauses and the clique fixing units.
///
/// Vertices are ranked with `clique` first (in the given order) and the
/// rest by id; the vertex of rank `r` may only use colors `0..=r`, and the
/// `j`-th clique vertex gets color `j`.
pub fn build_assignment(g: &Graph, k: usize, clique: &[usize]) -> AssignmentEncoding {
    assignment(g, k, clique, true)
}

/// Only the at-least-one, at-most-one and edge clauses.
pub fn build_assignment_without_symmetry(g: &Graph, k: usize) -> AssignmentEncoding {
    assignment(g, k, &[], false)
}

fn assignment(g: &Graph, k: usize, clique: &[usize], symmetry: bool) -> AssignmentEncoding {
    assert!(k >= 1, "at least one color");
    let n = g.num_vertices();
    let mut cnf = Cnf::new();
    for _ in 0..n * k {
        cnf.new_var();
    }
    let enc = AssignmentEncoding {
        cnf: Cnf::new(),
        num_vertices: n,
        k,
    };
    let x = |v: usize, i: usize| enc.var(v, i);
    cnf.comments.push(format!("assignment encoding, n={n}, k={k}"));
    cnf.comments.push(format!("x(v,i) = v*{k} + i + 1 for 0-based vertex v and color i"));
    if clique.len() > k {
        cnf.add_clause(Vec::new());
        return AssignmentEncoding { cnf, ..enc };
    }
    for v in 0..n {
        cnf.add_clause((0..k).map(|i| x(v, i).pos()).collect::<Vec<_>>());
        for i in 0..k {
            for j in i + 1..k {
                cnf.add_clause([x(v, i).neg(), x(v, j).neg()]);
            }
        }
    }
    for &(u, v) in g.edges() {
        for i in 0..k {
            cnf.add_clause([x(u, i).neg(), x(v, i).neg()]);
        }
    }
    if !symmetry {
        return AssignmentEncoding { cnf, ..enc };
    }
    let mut rank = vec![usize::MAX; n];
    let mut next = 0;
    for &c in clique {
        rank[c] = next;
        next += 1;
    }
    for r in rank.iter_mut() {
        if *r == usize::MAX {
            *r = next;
            next += 1;
        }
    }
    for v in 0..n {
        for i in rank[v] + 1..k {
            cnf.add_clause([x(v, i).neg()]);
        }
    }
    for (j, &c) in clique.iter().enumerate() {
        cnf.add_clause([x(c, j).pos()]);
    }
    AssignmentEncoding { cnf, ..enc }
}

/// Full Zykov encoding. Variables: the e-variables in `nonedges()` order,
/// then `c_0..c_{n-1}`, then the totalizer.
#[derive(Clone, Debug)]
pub struct ZykovEncoding {
    pub cnf: Cnf,
    pub map: EdgeVarMap,
    /// `c_v` is true iff `v` is merged with no lower vertex.
    pub opens: Vec<Var>,
    pub counter: Totalizer,
}

impl ZykovEncoding {
    /// Assumption literal for "at most `k` colors", if the counter is
    /// large enough to need one.
    pub fn at_most(&self, k: usize) -> Option<Lit> {
        self.counter.at_most(k)
    }
}

/// Every transitivity clause over vertex triples. Clauses satisfied by a
/// constant edge are skipped; constant-false literals are dropped.
pub fn add_transitivity(cnf: &mut Cnf, map: &EdgeVarMap) {
    let n = map.num_vertices();
    for u in 0..n {
        for v in u + 1..n {
            for w in v + 1..n {
                let (uv, vw, uw) = (map.var(u, v), map.var(v, w), map.var(u, w));
                for (a, b, c) in [(uv, vw, uw), (uv, uw, vw), (uw, vw, uv)] {
                    let (Some(a), Some(b)) = (a, b) else { continue };
                    let mut clause = vec![a.neg(), b.neg()];
                    if let Some(c) = c {
                        clause.push(c.pos());
                    }
                    cnf.add_clause(clause);
                }
            }
        }
    }
}

/// The `c_v` variables with their defining clauses and a totalizer over
/// them keeping `cap` outputs.
pub fn add_color_counter(cnf: &mut Cnf, map: &EdgeVarMap, cap: usize) -> (Vec<Var>, Totalizer) {
    let n = map.num_vertices();
    let opens: Vec<Var> = (0..n).map(|_| cnf.new_var()).collect();
    for v in 0..n {
        let mut some_lower = vec![opens[v].pos()];
        for u in 0..v {
            if let Some(e) = map.var(u, v) {
                cnf.add_clause([opens[v].neg(), e.neg()]);
                some_lower.push(e.pos());
            }
        }
        cnf.add_clause(some_lower);
    }
    let inputs: Vec<Lit> = opens.iter().map(|v| v.pos()).collect();
    let counter = Totalizer::build(cnf, &inputs, Some(cap.max(1)));
    (opens, counter)
}

/// Full Zykov encoding whose bound is left to assumptions: the totalizer
/// keeps `cap` outputs, enough for any `k < cap`.
pub fn build_full_zykov_counter(g: &Graph, cap: usize) -> ZykovEncoding {
    let map = EdgeVarMap::new(g, 0);
    let mut cnf = Cnf::new();
    for _ in 0..map.len() {
        cnf.new_var();
    }
    add_transitivity(&mut cnf, &map);
    let (opens, counter) = add_color_counter(&mut cnf, &map, cap);
    let n = g.num_vertices();
    cnf.comments.push(format!("full zykov encoding, n={n}"));
    cnf.comments.push(format!(
        "vars 1..{}: e(u,v) for non-edges u<v in lexicographic order (0-based ids)",
        map.len()
    ));
    cnf.comments.push(format!(
        "vars {}..{}: c(v), vertex v opens a color",
        map.len() + 1,
        map.len() + n
    ));
    cnf.comments.push(format!("vars {}..{}: totalizer", map.len() + n + 1, cnf.num_vars));
    ZykovEncoding {
        cnf,
        map,
        opens,
        counter,
    }
}

/// Full Zykov encoding with the bound `k` asserted as a unit clause.
pub fn build_full_zykov(g: &Graph, k: usize) -> ZykovEncoding {
    assert!(k >= 1, "at least one color");
    let cap = (k + 1).min(g.num_vertices().max(1));
    let mut enc = build_full_zykov_counter(g, cap);
    if let Some(l) = enc.at_most(k) {
        enc.cnf.add_clause([l]);
    }
    enc
}

/// Color classes are the components of the true e-variables. Fails if the
/// classes are not a proper coloring with at most `k` colors.
pub fn decode_zykov_model(model: &[bool], map: &EdgeVarMap, g: &Graph, k: usize) -> Result<Vec<usize>> {
    let n = map.num_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, pair) in map.pairs().iter().enumerate() {
        if model[map.var_of_index(i).index()] {
            let (a, b) = (find(&mut parent, pair.u), find(&mut parent, pair.v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut color = vec![usize::MAX; n];
    let mut next = 0;
    let mut by_root = vec![usize::MAX; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if by_root[r] == usize::MAX {
            by_root[r] = next;
            next += 1;
        }
        color[v] = by_root[r];
    }
    if !g.is_proper_coloring(&color) {
        return Err(Error::InvalidColoring("merged classes contain an edge".into()));
    }
    if count_colors(&color) > k {
        return Err(Error::InvalidColoring(format!("{} classes exceed {k} colors", count_colors(&color))));
    }
    Ok(color)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{erdos_renyi, named};
    use crate::oracle::oracle_k_colorable;
    use crate::sat::{SolveResult, Solver};

    fn solve(cnf: &Cnf) -> Option<Vec<bool>> {
        let mut s: Solver = Solver::new();
        cnf.load_into(&mut s);
        match s.solve(&[]) {
            SolveResult::Sat => Some(s.model().to_vec()),
            _ => None,
        }
    }

    #[test]
    fn assignment_examples() {
        let k3 = named::complete(3);
        assert!(solve(&build_assignment(&k3, 2, &[0, 1]).cnf).is_none());
        let enc = build_assignment(&k3, 3, &[0, 1, 2]);
        let m = solve(&enc.cnf).unwrap();
        let c = enc.decode(&m).unwrap();
        assert_eq!(count_colors(&c), 3);
        assert!(k3.is_proper_coloring(&c));
        let c5 = named::cycle(5);
        assert!(solve(&build_assignment(&c5, 3, &[0, 1]).cnf).is_some());
        assert!(solve(&build_assignment(&c5, 2, &[0, 1]).cnf).is_none());
        assert!(solve(&build_assignment(&k3, 2, &[0, 1, 2]).cnf).is_none());
    }

    #[test]
    fn full_zykov_examples() {
        let c5 = named::cycle(5);
        let enc = build_full_zykov(&c5, 3);
        let m = solve(&enc.cnf).unwrap();
        let c = decode_zykov_model(&m, &enc.map, &c5, 3).unwrap();
        assert!(c5.is_proper_coloring(&c));
        assert!(solve(&build_full_zykov(&c5, 2).cnf).is_none());
        assert!(solve(&build_full_zykov(&named::complete(4), 3).cnf).is_none());
        let empty = Graph::empty(5);
        let enc = build_full_zykov(&empty, 1);
        let m = solve(&enc.cnf).unwrap();
        assert_eq!(decode_zykov_model(&m, &enc.map, &empty, 1).unwrap(), vec![0; 5]);
    }

    #[test]
    fn decode_examples() {
        let k4 = named::complete(4);
        let map = EdgeVarMap::new(&k4, 0);
        assert_eq!(decode_zykov_model(&[], &map, &k4, 4).unwrap(), vec![0, 1, 2, 3]);
        assert!(decode_zykov_model(&[], &map, &k4, 3).is_err());
        let c5 = named::cycle(5);
        let map = EdgeVarMap::new(&c5, 0);
        // Only {1,4} merged: 4 classes.
        let mut model = vec![false; map.len()];
        model[map.index(1, 4).unwrap()] = true;
        let c = decode_zykov_model(&model, &map, &c5, 4).unwrap();
        assert_eq!(c[1], c[4]);
        assert_eq!(count_colors(&c), 4);
        // Merging across an edge is rejected.
        let p3 = named::path(3);
        let map = EdgeVarMap::new(&p3, 0);
        assert_eq!(map.len(), 1);
        let sq = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let m2 = EdgeVarMap::new(&sq, 0);
        let model: Vec<bool> = vec![true; m2.len()];
        assert!(decode_zykov_model(&model, &m2, &p3, 3).is_err());
    }

    #[test]
    fn export_documents_the_numbering() {
        let enc = build_full_zykov(&named::cycle(4), 2);
        let text = enc.cnf.to_dimacs();
        assert!(text.starts_with("c full zykov encoding, n=4\nc vars 1..2: e(u,v)"));
        assert!(text.contains(&format!("p cnf {} {}", enc.cnf.num_vars, enc.cnf.clauses.len())));
    }

    #[test]
    fn encodings_agree_with_oracle_and_symmetry_is_harmless() {
        for seed in 0..200u64 {
            let n = 3 + (seed as usize % 8);
            let g = erdos_renyi(n, [0.25, 0.5, 0.75][seed as usize % 3], seed).unwrap();
            let d = crate::bitset::DenseGraph::from_graph(&g);
            let view = crate::bounds::View::full(&d);
            let order: Vec<usize> = (0..n).collect();
            let clique = crate::bounds::greedy_clique(&view, &order, &[]).vertices;
            for k in 1..=n {
                let truth = oracle_k_colorable(&g, k).unwrap();
                let a = build_assignment(&g, k, &clique);
                let got_a = solve(&a.cnf);
                assert_eq!(got_a.is_some(), truth, "assignment seed {seed} k {k}");
                if let Some(m) = got_a {
                    let c = a.decode(&m).unwrap();
                    assert!(g.is_proper_coloring(&c));
                }
                assert_eq!(solve(&build_assignment(&g, k, &[]).cnf).is_some(), truth);
                assert_eq!(solve(&build_assignment_without_symmetry(&g, k).cnf).is_some(), truth);
                let z = build_full_zykov(&g, k);
                let got_z = solve(&z.cnf);
                assert_eq!(got_z.is_some(), truth, "zykov seed {seed} k {k}");
                if let Some(m) = got_z {
                    decode_zykov_model(&m, &z.map, &g, k).unwrap();
                }
            }
        }
    }
}
