//! Totalizer encoding of cardinality constraints.
//!
//! Inputs are merged pairwise up a balanced tree; each node carries unary
//! outputs `r_1..r_m` with `r_j` implied whenever at least `j` of its inputs
//! are true. Only the upward clauses are generated, which suffices for
//! at-most-k: asserting `¬o_{k+1}` at the root forbids more than `k` true
//! inputs while leaving every smaller count extendable.

use super::{Cnf, Lit};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Totalizer {
    /// `outputs[j]` is implied when at least `j + 1` inputs are true.
    pub outputs: Vec<Lit>,
}

impl Totalizer {
    /// Builds the tree over `inputs`, truncating every node to at most
    /// `cap` outputs (`None` keeps all).
    pub fn build(cnf: &mut Cnf, inputs: &[Lit], cap: Option<usize>) -> Self {
        if inputs.is_empty() {
            return Totalizer { outputs: Vec::new() };
        }
        let cap = cap.unwrap_or(inputs.len()).min(inputs.len());
        Totalizer {
            outputs: node(cnf, inputs, cap.max(1)),
        }
    }

    /// Assumption literal that enforces "at most `k` inputs true", or `None`
    /// when the bound is vacuous.
    pub fn at_most(&self, k: usize) -> Option<Lit> {
        self.outputs.get(k).map(|&o| !o)
    }
}

fn node(cnf: &mut Cnf, inputs: &[Lit], cap: usize) -> Vec<Lit> {
    if inputs.len() == 1 {
        return vec![inputs[0]];
    }
    let mid = inputs.len() / 2;
    let left = node(cnf, &inputs[..mid], cap);
    let right = node(cnf, &inputs[mid..], cap);
    let size = inputs.len().min(cap);
    let out: Vec<Lit> = (0..size).map(|_| cnf.new_var().pos()).collect();
    for i in 0..=left.len() {
        for j in 0..=right.len() {
            if i + j == 0 {
                continue;
            }
            let mut clause = Vec::with_capacity(3);
            if i > 0 {
                clause.push(!left[i - 1]);
            }
            if j > 0 {
                clause.push(!right[j - 1]);
            }
            clause.push(out[(i + j).min(size) - 1]);
            cnf.add_clause(clause);
        }
    }
    out
}

/// Clauses and outputs for "at most `k` of `inputs`". The outputs are
/// truncated to `k + 1`; the bound takes effect once the caller asserts
/// `totalizer.at_most(k)` (a unit clause or an assumption).
pub fn totalizer_at_most_k(cnf: &mut Cnf, inputs: &[Lit], k: usize) -> Totalizer {
    Totalizer::build(cnf, inputs, Some(k + 1))
}
