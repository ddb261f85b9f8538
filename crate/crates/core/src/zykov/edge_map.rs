use crate::graph::{Graph, VertexPair};
use crate::sat::{Lit, Var};

const NONE: u32 = u32::MAX;

/// Bijection between the non-edges of a graph and SAT variables `e_uv`,
/// numbered in `nonedges()` order from `first`. Edges of the graph have no
/// variable; they are the constant `false`.
#[derive(Clone, Debug)]
pub struct EdgeVarMap {
    n: usize,
    first: usize,
    pairs: Vec<VertexPair>,
    table: Vec<u32>,
}

impl EdgeVarMap {
    pub fn new(g: &Graph, first: usize) -> Self {
        let n = g.num_vertices();
        let pairs = g.nonedges();
        let mut table = vec![NONE; n * n];
        for (i, p) in pairs.iter().enumerate() {
            table[p.u * n + p.v] = i as u32;
            table[p.v * n + p.u] = i as u32;
        }
        EdgeVarMap {
            n,
            first,
            pairs,
            table,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    /// Number of variables.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[VertexPair] {
        &self.pairs
    }

    /// Dense index `0..len()` of the pair's variable.
    #[inline]
    pub fn index(&self, u: usize, v: usize) -> Option<usize> {
        match self.table[u * self.n + v] {
            NONE => None,
            i => Some(i as usize),
        }
    }

    #[inline]
    pub fn var(&self, u: usize, v: usize) -> Option<Var> {
        self.index(u, v).map(|i| Var::new(self.first + i))
    }

    #[inline]
    pub fn lit(&self, u: usize, v: usize, merged: bool) -> Option<Lit> {
        self.var(u, v).map(|x| Lit::new(x, merged))
    }

    #[inline]
    pub fn var_of_index(&self, i: usize) -> Var {
        Var::new(self.first + i)
    }

    /// Index of a variable, if it belongs to the map.
    #[inline]
    pub fn index_of(&self, var: Var) -> Option<usize> {
        let i = var.index().checked_sub(self.first)?;
        (i < self.pairs.len()).then_some(i)
    }

    pub fn pair(&self, var: Var) -> Option<VertexPair> {
        self.index_of(var).map(|i| self.pairs[i])
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (0..self.pairs.len()).map(|i| self.var_of_index(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn c5_numbering_is_lexicographic_and_symmetric() {
        let m = EdgeVarMap::new(&named::cycle(5), 0);
        assert_eq!(m.len(), 5);
        let got: Vec<(usize, usize)> = m.pairs().iter().map(|p| (p.u, p.v)).collect();
        assert_eq!(got, vec![(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]);
        assert_eq!(m.var(0, 2), m.var(2, 0));
        assert_eq!(m.var(0, 1), None);
        assert_eq!(m.index_of(Var::new(3)), Some(3));
        assert_eq!(m.pair(Var::new(3)).map(|p| (p.u, p.v)), Some((1, 4)));
    }

    #[test]
    fn offset_numbering() {
        let m = EdgeVarMap::new(&named::path(3), 4);
        assert_eq!(m.var(0, 2), Some(Var::new(4)));
        assert_eq!(m.index_of(Var::new(3)), None);
        assert_eq!(m.index_of(Var::new(5)), None);
    }
}
