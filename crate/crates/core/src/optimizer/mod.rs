//! LP and MILP solving: a dense Bland-rule simplex, depth-first
//! branch-and-bound over binaries, and an exhaustive enumeration oracle.
//!
//! All solves are deterministic and single-threaded; models are plain values
//! and can be solved concurrently.

mod branch;
mod model;
mod simplex;

use alloc::vec::Vec;

use thiserror::Error;

pub use model::{Constraint, LinearModel, MixedModel, Relation, Sense};

/// Largest binary count [`enumerate_oracle`] accepts.
pub const ORACLE_MAX_BINARIES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Constraint violation tolerated in a reported optimum.
    pub feasibility_tol: f64,
    /// Distance from 0/1 under which a binary counts as integral.
    pub integrality_tol: f64,
    /// Simplex pivots per LP solve.
    pub max_iterations: usize,
    /// Branch-and-bound nodes per MILP solve.
    pub max_nodes: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            feasibility_tol: 1e-7,
            integrality_tol: 1e-6,
            max_iterations: 100_000,
            max_nodes: 500_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub status: SolveStatus,
    /// Variable values; empty unless `status` is `Optimal`.
    pub values: Vec<f64>,
    /// Objective in the model's own sense; NaN unless optimal.
    pub objective_value: f64,
    pub iterations: usize,
    pub nodes: usize,
}

impl SolveResult {
    pub(crate) fn status_only(status: SolveStatus, iterations: usize) -> Self {
        Self {
            status,
            values: Vec::new(),
            objective_value: f64::NAN,
            iterations,
            nodes: 0,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == SolveStatus::Optimal
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("variable {var} has invalid bounds [{lower}, {upper}]")]
    InvalidBounds { var: usize, lower: f64, upper: f64 },
    #[error("constraint {row} references unknown variable {var}")]
    UnknownVariable { row: usize, var: usize },
    #[error("constraint {row} has a non-finite coefficient or right-hand side")]
    NonFinite { row: usize },
    #[error("enumeration oracle refuses {0} binaries (limit {ORACLE_MAX_BINARIES})")]
    TooManyBinaries(usize),
}

/// A constraint or bound found violated by [`check_feasibility`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    Bound { var: usize, value: f64 },
    Row { row: usize, activity: f64, rhs: f64 },
    Integrality { var: usize, value: f64 },
    Length { expected: usize, found: usize },
}

/// Solves a continuous LP.
pub fn solve_lp(model: &LinearModel, opts: &SolverOptions) -> Result<SolveResult, ModelError> {
    model.validate()?;
    Ok(simplex::solve(model, opts))
}

/// Solves a MILP to global optimality by branch-and-bound on the binaries,
/// branching on the most fractional one (ties to the lowest index).
pub fn solve_milp(model: &MixedModel, opts: &SolverOptions) -> Result<SolveResult, ModelError> {
    model.validate()?;
    Ok(branch::branch_and_bound(model, opts))
}

/// Exact optimum by trying every binary assignment and solving the
/// remaining LP. Test oracle; refuses more than [`ORACLE_MAX_BINARIES`].
pub fn enumerate_oracle(model: &MixedModel, opts: &SolverOptions) -> Result<SolveResult, ModelError> {
    model.validate()?;
    if model.binaries().len() > ORACLE_MAX_BINARIES {
        return Err(ModelError::TooManyBinaries(model.binaries().len()));
    }
    Ok(branch::enumerate(model, opts))
}

/// Re-checks a point against every bound and row of `model` within `tol`,
/// independently of any solver state.
pub fn check_feasibility(model: &LinearModel, values: &[f64], tol: f64) -> Result<(), Violation> {
    if values.len() != model.variable_count() {
        return Err(Violation::Length {
            expected: model.variable_count(),
            found: values.len(),
        });
    }
    for (var, &value) in values.iter().enumerate() {
        let (l, u) = model.bounds(var);
        if !value.is_finite() || value < l - tol || value > u + tol {
            return Err(Violation::Bound { var, value });
        }
    }
    for (row, c) in model.constraints().iter().enumerate() {
        let activity = c.activity(values);
        let ok = match c.relation {
            Relation::LessEq => activity <= c.rhs + tol,
            Relation::GreaterEq => activity >= c.rhs - tol,
            Relation::Equal => (activity - c.rhs).abs() <= tol,
        };
        if !ok {
            return Err(Violation::Row { row, activity, rhs: c.rhs });
        }
    }
    Ok(())
}

/// [`check_feasibility`] plus exact integrality of the binaries.
pub fn check_mixed_feasibility(model: &MixedModel, values: &[f64], tol: f64) -> Result<(), Violation> {
    check_feasibility(&model.linear, values, tol)?;
    for &var in model.binaries() {
        let value = values[var];
        if value != 0.0 && value != 1.0 {
            return Err(Violation::Integrality { var, value });
        }
    }
    Ok(())
}
