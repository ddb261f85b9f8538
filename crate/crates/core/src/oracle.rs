//! Ground-truth chromatic numbers for small graphs.
//!
//! Two independent implementations: exhaustive backtracking with first-use
//! color canonicalization, and a dynamic program over vertex subsets.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default vertex limit of the backtracking oracle.
pub const ORACLE_MAX_VERTICES: usize = 16;

/// Vertex limit of the subset dynamic program (`O(3^n)` time, `O(2^n)` space).
pub const SUBSET_DP_MAX_VERTICES: usize = 20;

pub fn oracle_chromatic(g: &Graph) -> Result<usize> {
    oracle_chromatic_with_limit(g, ORACLE_MAX_VERTICES)
}

pub fn oracle_chromatic_with_limit(g: &Graph, limit: usize) -> Result<usize> {
    guard(g, limit)?;
    let n = g.num_vertices();
    if n == 0 {
        return Ok(0);
    }
    let search = Backtrack::new(g);
    Ok((1..=n).find(|&k| search.colorable(k).is_some()).unwrap_or(n))
}

pub fn oracle_k_colorable(g: &Graph, k: usize) -> Result<bool> {
    guard(g, ORACLE_MAX_VERTICES)?;
    Ok(Backtrack::new(g).colorable(k).is_some())
}

/// A `k`-coloring found by exhaustive search, if one exists.
pub fn oracle_coloring(g: &Graph, k: usize) -> Result<Option<Vec<usize>>> {
    guard(g, ORACLE_MAX_VERTICES)?;
    Ok(Backtrack::new(g).colorable(k))
}

fn guard(g: &Graph, limit: usize) -> Result<()> {
    if g.num_vertices() > limit {
        return Err(Error::OracleLimit {
            n: g.num_vertices(),
            limit,
        });
    }
    Ok(())
}

struct Backtrack<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    earlier: Vec<Vec<usize>>,
}

impl<'a> Backtrack<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.num_vertices();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let earlier = order
            .iter()
            .map(|&v| {
                g.neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| pos[w] < pos[v])
                    .collect()
            })
            .collect();
        Backtrack { g, order, earlier }
    }

    fn colorable(&self, k: usize) -> Option<Vec<usize>> {
        let n = self.g.num_vertices();
        if n == 0 {
            return Some(Vec::new());
        }
        if k == 0 {
            return None;
        }
        let mut colors = vec![usize::MAX; n];
        if self.assign(0, 0, k, &mut colors) {
            Some(colors)
        } else {
            None
        }
    }

    /// `used` is the number of colors already opened; the vertex at `idx`
    /// may take any of them or open color `used`.
    fn assign(&self, idx: usize, used: usize, k: usize, colors: &mut [usize]) -> bool {
        if idx == self.order.len() {
            return true;
        }
        let v = self.order[idx];
        let limit = (used + 1).min(k);
        for c in 0..limit {
            if self.earlier[idx].iter().any(|&w| colors[w] == c) {
                continue;
            }
            colors[v] = c;
            if self.assign(idx + 1, used.max(c + 1), k, colors) {
                return true;
            }
        }
        colors[v] = usize::MAX;
        false
    }
}

/// Chromatic number by dynamic programming over subsets:
/// `dp[S] = 1 + min dp[S \ I]` over independent sets `I ⊆ S` containing the
/// lowest vertex of `S`.
pub fn chromatic_subset_dp(g: &Graph) -> Result<usize> {
    guard(g, SUBSET_DP_MAX_VERTICES)?;
    let n = g.num_vertices();
    let full = (1usize << n) - 1;
    let nbr: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w))
        .collect();
    let mut independent = vec![false; 1 << n];
    independent[0] = true;
    for s in 1..=full {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        independent[s] = independent[rest] && nbr[low] & rest == 0;
    }
    let mut dp = vec![usize::MAX; 1 << n];
    dp[0] = 0;
    for s in 1..=full {
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut best = usize::MAX;
        let mut sub = rest;
        loop {
            let i = sub | low;
            if independent[i] {
                best = best.min(dp[s ^ i] + 1);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        dp[s] = best;
    }
    Ok(dp[full])
}
