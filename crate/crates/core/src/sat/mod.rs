//! CDCL SAT solving with assumptions and an external-propagator interface.

mod cnf;
mod heap;
mod propagator;
mod solver;
mod totalizer;

pub use cnf::Cnf;
pub use propagator::{ExternalPropagator, ModelCheck, NoPropagator};
pub use solver::{Limits, SolveResult, Solver, SolverStats};
pub use totalizer::{totalizer_at_most_k, Totalizer};

use std::fmt;
use std::ops::Not;

/// Variable index. DIMACS id is `index + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    pub fn new(index: usize) -> Self {
        Var(u32::try_from(index).expect("variable index overflow"))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn pos(self) -> Lit {
        Lit::new(self, true)
    }

    #[inline]
    pub fn neg(self) -> Lit {
        Lit::new(self, false)
    }

    pub fn dimacs(self) -> i64 {
        self.0 as i64 + 1
    }
}

/// Signed variable reference, encoded as `2 * var + (negative as u32)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    #[inline]
    pub fn new(var: Var, positive: bool) -> Self {
        Lit(var.0 << 1 | u32::from(!positive))
    }

    #[inline]
    pub fn var(self) -> Var {
        Var(self.0 >> 1)
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    pub(crate) fn code(self) -> usize {
        self.0 as usize
    }

    /// Parses a non-zero DIMACS literal.
    pub fn from_dimacs(lit: i64) -> Self {
        assert!(lit != 0, "0 is not a DIMACS literal");
        Lit::new(Var::new((lit.unsigned_abs() - 1) as usize), lit > 0)
    }

    pub fn to_dimacs(self) -> i64 {
        if self.is_positive() {
            self.var().dimacs()
        } else {
            -self.var().dimacs()
        }
    }
}

impl Not for Lit {
    type Output = Lit;

    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// Sorts, removes duplicate literals and reports tautologies (`false`).
pub fn normalize_clause(lits: &mut Vec<Lit>) -> bool {
    lits.sort_unstable();
    lits.dedup();
    !lits.windows(2).any(|w| w[0].var() == w[1].var())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn literal_encoding() {
        let v = Var::new(4);
        assert_eq!(v.pos().var(), v);
        assert!(v.pos().is_positive());
        assert!(!v.neg().is_positive());
        assert_eq!(v.pos().to_dimacs(), 5);
        assert_eq!(v.neg().to_dimacs(), -5);
        assert_eq!(Lit::from_dimacs(-5), v.neg());
    }

    #[test]
    fn normalization() {
        let a = Var::new(0);
        let b = Var::new(1);
        let mut c = vec![b.pos(), a.neg(), b.pos()];
        assert!(normalize_clause(&mut c));
        assert_eq!(c, vec![a.neg(), b.pos()]);
        let mut t = vec![a.pos(), b.pos(), a.neg()];
        assert!(!normalize_clause(&mut t));
    }

    proptest! {
        #[test]
        fn negation_is_involution(idx in 0usize..1_000_000, sign: bool) {
            let l = Lit::new(Var::new(idx), sign);
            prop_assert_eq!(!!l, l);
            prop_assert_ne!(!l, l);
            prop_assert_eq!((!l).var(), l.var());
            prop_assert_eq!(Lit::from_dimacs(l.to_dimacs()), l);
        }
    }
}
