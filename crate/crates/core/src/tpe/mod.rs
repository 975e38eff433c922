//! Tree pattern embedding: does a directed tree embed injectively into a host
//! digraph, covering a terminal set and respecting vertex capacities?
//!
//! Decided by building a monotone circuit for the embedding polynomial and
//! testing it for a multilinear monomial of the right `z`-degree.

mod circuit;
mod eval;
mod symbolic;

use thiserror::Error;

use crate::algebra::{AlgebraError, GroupAlgebraElem};
use crate::digraph::Instance;
use crate::trees::TreeCandidate;

pub use circuit::{build_circuit, Circuit, CircuitBuilder, CircuitError, Gate, GateId, SIZE_CONSTANT};
pub use symbolic::{expand_symbolic, has_multilinear_monomial, Monomial, Polynomial, SYMBOLIC_MAX_TREE, SYMBOLIC_MAX_VARS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TpeError {
    #[error("z-degree {t} exceeds the circuit cap {zcap}")]
    DegreeAboveCap { t: usize, zcap: usize },
    #[error("group dimension {0} is too large")]
    GroupTooLarge(u32),
    #[error("symbolic expansion limited to hosts of order {max_vars} and trees of order {max_tree}; got {n_vars} and {tree_order}", max_vars = SYMBOLIC_MAX_VARS, max_tree = SYMBOLIC_MAX_TREE)]
    SymbolicGuard { n_vars: usize, tree_order: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("per-vertex vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
}

/// A host digraph, a pattern tree rooted at its vertex 0, a capacity per host
/// vertex and a terminal set that the embedding must cover.
#[derive(Clone, Debug)]
pub struct TpeInstance {
    host: Instance,
    tree: TreeCandidate,
    capacity: Vec<u32>,
    terminals: Vec<bool>,
}

impl TpeInstance {
    /// Capacities are the host plough counts; terminals are facilities plus
    /// bases.
    pub fn new(host: Instance, tree: TreeCandidate) -> Self {
        let capacity = host.plough_counts().to_vec();
        let terminals = (0..host.n()).map(|v| host.is_facility(v) || host.ploughs(v) > 0).collect();
        Self { host, tree, capacity, terminals }
    }

    pub fn with_terminals(mut self, terminals: Vec<bool>) -> Result<Self, TpeError> {
        if terminals.len() != self.host.n() {
            return Err(TpeError::LengthMismatch { expected: self.host.n(), found: terminals.len() });
        }
        self.terminals = terminals;
        Ok(self)
    }

    pub fn with_capacity(mut self, capacity: Vec<u32>) -> Result<Self, TpeError> {
        if capacity.len() != self.host.n() {
            return Err(TpeError::LengthMismatch { expected: self.host.n(), found: capacity.len() });
        }
        self.capacity = capacity;
        Ok(self)
    }

    pub fn host(&self) -> &Instance {
        &self.host
    }

    pub fn tree(&self) -> &TreeCandidate {
        &self.tree
    }

    pub fn capacity(&self) -> &[u32] {
        &self.capacity
    }

    pub fn terminals(&self) -> &[bool] {
        &self.terminals
    }

    pub fn is_terminal(&self, w: usize) -> bool {
        self.terminals[w]
    }

    pub fn terminal_count(&self) -> usize {
        self.terminals.iter().filter(|&&t| t).count()
    }

    /// Replaces the pattern tree, keeping host, capacities and terminals.
    pub fn with_tree(&self, tree: TreeCandidate) -> Self {
        Self { host: self.host.clone(), tree, capacity: self.capacity.clone(), terminals: self.terminals.clone() }
    }
}

/// Weight of mapping tree vertex `u` to host vertex `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Indicator {
    /// Allowed, and `w` is a terminal.
    Z,
    /// Allowed, and `w` is not a terminal.
    One,
    /// The demand of `u` exceeds the capacity of `w`.
    Zero,
}

pub fn indicator(u: usize, w: usize, inst: &TpeInstance) -> Indicator {
    if inst.tree.demand()[u] > inst.capacity[w] {
        Indicator::Zero
    } else if inst.terminals[w] {
        Indicator::Z
    } else {
        Indicator::One
    }
}

/// One randomized evaluation: the `z^t` coefficient of the output under
/// random group vectors and scalars derived from `seed`.
pub fn eval_trial(c: &Circuit, t: usize, k: u32, seed: u64) -> Result<GroupAlgebraElem, TpeError> {
    let inputs = eval::TrialInputs::sample(c, k, seed, 0);
    eval::evaluate(c, t, k, &inputs, true)
}

/// [`eval_trial`] without degree windows, keeping every `z`-degree up to the
/// cap. Used to cross-check the windowed evaluator.
pub fn eval_trial_full(c: &Circuit, t: usize, k: u32, seed: u64) -> Result<GroupAlgebraElem, TpeError> {
    let inputs = eval::TrialInputs::sample(c, k, seed, 0);
    eval::evaluate(c, t, k, &inputs, false)
}

/// Outcome of a detection run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Detection {
    pub found: bool,
    /// Randomized trials actually evaluated; 0 when a structural check
    /// already ruled out any `z^t` monomial.
    pub trials_run: u32,
}

/// Runs up to `trials` independent evaluations and reports whether any is
/// nonzero. Never reports a monomial that does not exist.
pub fn detect(c: &Circuit, t: usize, k: u32, trials: u32, seed: u64) -> Result<Detection, TpeError> {
    if t > c.zcap() {
        return Err(TpeError::DegreeAboveCap { t, zcap: c.zcap() });
    }
    if c.is_trivially_zero() || (t < 64 && eval::zdegree_support(c) >> t & 1 == 0) {
        return Ok(Detection { found: false, trials_run: 0 });
    }
    for i in 0..trials {
        let inputs = eval::TrialInputs::sample(c, k, seed, u64::from(i));
        if !eval::evaluate(c, t, k, &inputs, true)?.is_zero() {
            return Ok(Detection { found: true, trials_run: i + 1 });
        }
    }
    Ok(Detection { found: false, trials_run: trials })
}

/// Whether the circuit has a multilinear monomial `z^t · x_{w1}⋯x_{wj}` with
/// `j ≤ k`, up to one-sided error.
pub fn detect_zt_multilinear(c: &Circuit, t: usize, k: u32, trials: u32, seed: u64) -> Result<bool, TpeError> {
    Ok(detect(c, t, k, trials, seed)?.found)
}

/// Counts nonzero trials out of `trials`; used to measure per-trial success.
pub fn success_count(c: &Circuit, t: usize, k: u32, trials: u32, seed: u64) -> Result<u32, TpeError> {
    let mut hits = 0;
    for i in 0..trials {
        let inputs = eval::TrialInputs::sample(c, k, seed, u64::from(i));
        if !eval::evaluate(c, t, k, &inputs, true)?.is_zero() {
            hits += 1;
        }
    }
    Ok(hits)
}

/// Whether the tree has an embedding into the host covering every terminal,
/// up to one-sided error: `false` may be wrong with small probability, `true`
/// never is.
pub fn solve_tpe(inst: &TpeInstance, trials: u32, seed: u64) -> bool {
    tpe_detection(inst, trials, seed).found
}

pub(crate) fn tpe_detection(inst: &TpeInstance, trials: u32, seed: u64) -> Detection {
    let eta = inst.tree().order();
    if inst.terminal_count() > eta || eta > inst.host().n() {
        return Detection { found: false, trials_run: 0 };
    }
    let c = build_circuit(inst);
    detect(&c, inst.terminal_count(), eta as u32, trials, seed).expect("built circuit is consistent")
}

#[cfg(test)]
mod tests;
