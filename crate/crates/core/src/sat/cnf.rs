use std::fmt::Write as _;

use super::{ExternalPropagator, Lit, Solver, Var};

/// A clause set with its own variable counter.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<Lit>>,
    /// Emitted as `c` lines ahead of the header.
    pub comments: Vec<String>,
}

impl Cnf {
    pub fn new() -> Self {
        Cnf::default()
    }

    pub fn new_var(&mut self) -> Var {
        self.num_vars += 1;
        Var::new(self.num_vars - 1)
    }

    pub fn add_clause(&mut self, lits: impl Into<Vec<Lit>>) {
        let lits = lits.into();
        debug_assert!(lits.iter().all(|l| l.var().index() < self.num_vars));
        self.clauses.push(lits);
    }

    /// Whether `model` (indexed by variable) satisfies every clause.
    pub fn evaluate(&self, model: &[bool]) -> bool {
        self.clauses.iter().all(|c| {
            c.iter()
                .any(|l| model[l.var().index()] == l.is_positive())
        })
    }

    /// Creates the variables in `solver` (which must not have more) and
    /// adds every clause.
    pub fn load_into<P: ExternalPropagator>(&self, solver: &mut Solver<P>) -> bool {
        assert!(solver.num_vars() <= self.num_vars);
        while solver.num_vars() < self.num_vars {
            solver.new_var();
        }
        let mut ok = true;
        for c in &self.clauses {
            ok &= solver.add_clause(c);
        }
        ok
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "c {c}");
        }
        let _ = writeln!(out, "p cnf {} {}", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(out, "{} ", l.to_dimacs());
            }
            out.push_str("0\n");
        }
        out
    }
}
