use crate::bitset;
use crate::graph::Graph;

use super::VertexOrder;

/// DSatur greedy coloring. Picks the uncolored vertex with the most distinct
/// neighbor colors, then the highest degree, then the lowest id, and gives
/// it the smallest free color. Returns the coloring (colors `0..`) and the
/// selection order.
pub fn dsatur(g: &Graph) -> (Vec<usize>, VertexOrder) {
    let n = g.num_vertices();
    let words = bitset::words_for(n + 1);
    let mut colors = vec![usize::MAX; n];
    let mut seen = vec![0u64; n * words];
    let mut saturation = vec![0usize; n];
    let mut order = Vec::with_capacity(n);

    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == usize::MAX)
            .max_by_key(|&v| (saturation[v], g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let row = &seen[v * words..(v + 1) * words];
        let c = (0..=n).find(|&c| !bitset::test(row, c)).unwrap();
        colors[v] = c;
        order.push(v);
        for &u in g.neighbors(v) {
            let row = &mut seen[u * words..(u + 1) * words];
            if !bitset::test(row, c) {
                bitset::set(row, c);
                saturation[u] += 1;
            }
        }
    }
    (colors, order)
}
