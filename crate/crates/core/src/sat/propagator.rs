use super::Lit;

/// Outcome of [`ExternalPropagator::cb_check_found_model`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelCheck {
    Accept,
    /// Clauses violated by the model. They are added to the solver and the
    /// search resumes.
    Refute(Vec<Vec<Lit>>),
}

/// Callbacks through which user code takes part in the CDCL search.
///
/// The solver notifies assignments of observed variables in trail order,
/// opens and closes decision levels, and polls the callbacks below from
/// inside `solve`. All methods run on the solver's thread.
///
/// Contract for `cb_propagate`/`cb_add_reason`: when the solver takes a
/// literal `l` from `cb_propagate`, every literal of the clause later
/// returned by `cb_add_reason(l)` other than `l` must already be false.
/// Reasons are requested lazily, only when conflict analysis reaches `l`.
pub trait ExternalPropagator {
    /// Newly assigned observed literals, in trail order.
    fn notify_assign(&mut self, _lits: &[Lit]) {}

    fn notify_new_level(&mut self) {}

    /// All assignments above `level` were undone.
    fn notify_backtrack(&mut self, _level: usize) {}

    /// Next literal to propagate, if any.
    fn cb_propagate(&mut self) -> Option<Lit> {
        None
    }

    /// Reason clause for a literal previously returned by `cb_propagate`.
    fn cb_add_reason(&mut self, propagated: Lit) -> Vec<Lit> {
        panic!("no reason available for {propagated:?}")
    }

    /// Preferred next decision. Ignored if already assigned.
    fn cb_decide(&mut self) -> Option<Lit> {
        None
    }

    /// A clause to add to the formula. Called whenever propagation reaches
    /// a fixpoint; the clause may be falsified by the current assignment.
    fn cb_add_external(&mut self) -> Option<Vec<Lit>> {
        None
    }

    /// Called with the full assignment (indexed by variable) before SAT is
    /// reported.
    fn cb_check_found_model(&mut self, _model: &[bool]) -> ModelCheck {
        ModelCheck::Accept
    }
}

/// Plain CDCL without external reasoning.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoPropagator;

impl ExternalPropagator for NoPropagator {}
