//! Removability LP, constrained dense and sparse realization MILPs, and the
//! iterative search for the densest weakly reversible realization.
//!
//! Decision variables are the off-diagonal rates `k_{j->i}`; the diagonal is
//! eliminated through the zero column sum, so column `j` of the Kirchhoff
//! matrix is constrained by `sum_{i != j} (Y_i - Y_j) k_{j->i} = M_j` alone.
//! Columns are therefore independent subproblems.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::graph::{cross_component_edges, Edge, EdgeSet, ReactionGraph};
use crate::linalg::Matrix;
use crate::network::{coefficient_matrix, CrnError, KirchhoffMatrix, ReactionNetwork, StoichMatrix};
use crate::optimizer::{
    self, LinearModel, MixedModel, ModelError, Relation, Sense, SolveResult, SolveStatus,
    SolverOptions,
};

/// Fraction of a bound above which a solved entry is reported as suspect.
const SUSPECT_FRACTION: f64 = 0.99;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    /// One independent subproblem per Kirchhoff column.
    Columnwise,
    /// A single model over all columns; for cross-checking.
    Monolithic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealizationOptions {
    /// Rates below this count as absent.
    pub epsilon: f64,
    /// Uniform off-diagonal bound `u`; `None` means `1000 * max(1, max|M|)`.
    pub upper_bound: Option<f64>,
    pub solver: SolverOptions,
    pub mode: SolveMode,
    /// Solve columns on the rayon pool. Has no effect without the
    /// `parallel` feature.
    pub parallel: bool,
}

impl Default for RealizationOptions {
    fn default() -> Self {
        Self {
            epsilon: 0.1,
            upper_bound: None,
            solver: SolverOptions::default(),
            mode: SolveMode::Columnwise,
            parallel: true,
        }
    }
}

impl RealizationOptions {
    /// Rates above this threshold are edges of a computed realization.
    pub fn support_threshold(&self) -> f64 {
        self.epsilon / 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealizationStatus {
    Found,
    NoneExists,
}

impl fmt::Display for RealizationStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RealizationStatus::Found => "found",
            RealizationStatus::NoneExists => "none-exists",
        })
    }
}

/// One pass of the weakly reversible search.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    /// Excluded edges at the start of the pass.
    pub excluded: EdgeSet,
    /// `None` on the first pass, where the check is skipped.
    pub removable: Option<bool>,
    /// Support of the constrained dense realization; empty if not removable.
    pub dense_support: EdgeSet,
    /// Edges between different strong components of that support.
    pub cut_set: EdgeSet,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealizationOutcome {
    pub status: RealizationStatus,
    /// Weakly reversible realization, or the zero matrix when none exists.
    pub kirchhoff: KirchhoffMatrix<f64>,
    /// Number of dense realizations computed.
    pub iterations: usize,
    pub final_constraints: EdgeSet,
    pub trace: Vec<IterationRecord>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RealizationError {
    #[error(transparent)]
    Network(#[from] CrnError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("epsilon must be positive and finite, got {0}")]
    InvalidEpsilon(f64),
    #[error("epsilon {epsilon} is not below the smallest upper bound {bound}")]
    EpsilonAboveBound { epsilon: f64, bound: f64 },
    #[error("bound for entry ({row}, {col}) is invalid: {value}")]
    InvalidBound { row: usize, col: usize, value: f64 },
    #[error("coefficient matrix is {found_rows}x{found_cols}, expected {rows}x{cols}")]
    TargetShape {
        rows: usize,
        cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
    #[error("excluded edge {0} is outside the complex set")]
    ExcludedOutOfRange(Edge),
    #[error("column {column} has no realization under the current constraints")]
    InfeasibleColumn { column: usize, trace: Vec<IterationRecord> },
    #[error("solver stopped on column {column} ({status:?})")]
    SolverLimit {
        column: usize,
        status: SolveStatus,
        trace: Vec<IterationRecord>,
    },
}

impl RealizationError {
    /// Iterations completed before the failure.
    pub fn trace(&self) -> &[IterationRecord] {
        match self {
            RealizationError::InfeasibleColumn { trace, .. }
            | RealizationError::SolverLimit { trace, .. } => trace,
            _ => &[],
        }
    }

    fn with_trace(self, records: &[IterationRecord]) -> Self {
        match self {
            RealizationError::InfeasibleColumn { column, .. } => RealizationError::InfeasibleColumn {
                column,
                trace: records.to_vec(),
            },
            RealizationError::SolverLimit { column, status, .. } => RealizationError::SolverLimit {
                column,
                status,
                trace: records.to_vec(),
            },
            other => other,
        }
    }
}

/// Data of the realization search: complexes, target `M`, excluded edges,
/// variable bounds and the zero threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct RealizationProblem {
    complexes: StoichMatrix,
    target: Matrix<f64>,
    excluded: EdgeSet,
    /// `upper[(i, j)]` bounds the rate of `C_j -> C_i`.
    upper: Matrix<f64>,
    /// Lower bound on each diagonal entry.
    diagonal_lower: Vec<f64>,
    epsilon: f64,
}

impl RealizationProblem {
    /// Problem with uniform bounds `u` off the diagonal and `-m u` on it.
    pub fn new(
        complexes: StoichMatrix,
        target: Matrix<f64>,
        excluded: EdgeSet,
        epsilon: f64,
        upper_bound: Option<f64>,
    ) -> Result<Self, RealizationError> {
        let m = complexes.complex_count();
        let u = upper_bound.unwrap_or_else(|| default_upper_bound(&target));
        let mut upper = Matrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    upper[(i, j)] = u;
                }
            }
        }
        let diagonal_lower = vec![-(m as f64) * u; m];
        Self::with_bounds(complexes, target, excluded, epsilon, upper, diagonal_lower)
    }

    pub fn with_bounds(
        complexes: StoichMatrix,
        target: Matrix<f64>,
        excluded: EdgeSet,
        epsilon: f64,
        upper: Matrix<f64>,
        diagonal_lower: Vec<f64>,
    ) -> Result<Self, RealizationError> {
        let n = complexes.species_count();
        let m = complexes.complex_count();
        if target.rows() != n || target.cols() != m {
            return Err(RealizationError::TargetShape {
                rows: n,
                cols: m,
                found_rows: target.rows(),
                found_cols: target.cols(),
            });
        }
        if upper.rows() != m || upper.cols() != m || diagonal_lower.len() != m {
            return Err(CrnError::Dimension {
                expected: alloc::format!("{m}x{m} bounds"),
                found: alloc::format!("{}x{}", upper.rows(), upper.cols()),
            }
            .into());
        }
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(RealizationError::InvalidEpsilon(epsilon));
        }
        let mut smallest = f64::INFINITY;
        for i in 0..m {
            for j in 0..m {
                let value = upper[(i, j)];
                if i != j && !(value > 0.0) {
                    return Err(RealizationError::InvalidBound { row: i, col: j, value });
                }
                if i != j {
                    smallest = smallest.min(value);
                }
            }
            let value = diagonal_lower[i];
            if !(value < 0.0) {
                return Err(RealizationError::InvalidBound { row: i, col: i, value });
            }
        }
        if m > 1 && epsilon >= smallest {
            return Err(RealizationError::EpsilonAboveBound {
                epsilon,
                bound: smallest,
            });
        }
        if let Some(e) = excluded.iter().find(|e| e.source >= m || e.target >= m) {
            return Err(RealizationError::ExcludedOutOfRange(*e));
        }
        Ok(Self {
            complexes,
            target,
            excluded,
            upper,
            diagonal_lower,
            epsilon,
        })
    }

    /// Problem whose target is the coefficient matrix of `net`.
    pub fn from_network(
        net: &ReactionNetwork<f64>,
        excluded: EdgeSet,
        opts: &RealizationOptions,
    ) -> Result<Self, RealizationError> {
        Self::new(
            net.complexes().clone(),
            coefficient_matrix(net),
            excluded,
            opts.epsilon,
            opts.upper_bound,
        )
    }

    pub fn complexes(&self) -> &StoichMatrix {
        &self.complexes
    }

    pub fn target(&self) -> &Matrix<f64> {
        &self.target
    }

    pub fn excluded(&self) -> &EdgeSet {
        &self.excluded
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn upper_bound(&self, source: usize, target: usize) -> f64 {
        self.upper[(target, source)]
    }

    pub fn diagonal_lower(&self, column: usize) -> f64 {
        self.diagonal_lower[column]
    }

    pub fn complex_count(&self) -> usize {
        self.complexes.complex_count()
    }

    fn with_excluded(&self, excluded: EdgeSet) -> Self {
        Self {
            excluded,
            ..self.clone()
        }
    }

    /// Targets of the variables of column `source`, in variable order.
    fn column_targets(&self, source: usize) -> Vec<usize> {
        (0..self.complex_count()).filter(|&t| t != source).collect()
    }

    /// Equalities of column `source` over its rate variables, starting at
    /// variable `offset`. Rates of excluded edges are fixed to zero.
    fn add_column_rows(&self, model: &mut LinearModel, source: usize, offset: usize) {
        let targets = self.column_targets(source);
        let y_source = self.complexes.complex(source).coefficients();
        for s in 0..self.complexes.species_count() {
            let terms: Vec<(usize, f64)> = targets
                .iter()
                .enumerate()
                .filter_map(|(k, &t)| {
                    let d = self.complexes.complex(t).coefficients()[s] as f64 - y_source[s] as f64;
                    (d != 0.0).then_some((offset + k, d))
                })
                .collect();
            model.add_constraint(terms, Relation::Equal, self.target[(s, source)]);
        }
        for (k, &t) in targets.iter().enumerate() {
            if self.excluded.contains(&Edge::new(source, t)) {
                model.set_bounds(offset + k, 0.0, 0.0);
            }
        }
    }

    /// Removability LP of one column: kinetic equalities, exclusions and
    /// nonnegativity, minimizing the total outflow.
    fn removability_column(&self, source: usize) -> LinearModel {
        let mut model = LinearModel::new(Sense::Minimize);
        for _ in self.column_targets(source) {
            let v = model.add_variable(0.0, f64::INFINITY);
            model.set_objective(v, 1.0);
        }
        self.add_column_rows(&mut model, source, 0);
        model
    }

    /// Support-counting MILP of one column. Variables are the rates
    /// followed by one binary per rate.
    fn support_column(&self, source: usize, sense: Sense) -> MixedModel {
        let targets = self.column_targets(source);
        let count = targets.len();
        let mut model = MixedModel::new(sense);
        for &t in &targets {
            model.linear.add_variable(0.0, self.upper_bound(source, t));
        }
        self.add_column_rows(&mut model.linear, source, 0);
        if count > 0 {
            let outflow: Vec<(usize, f64)> = (0..count).map(|k| (k, 1.0)).collect();
            model
                .linear
                .add_constraint(outflow, Relation::LessEq, -self.diagonal_lower[source]);
        }
        for (k, &t) in targets.iter().enumerate() {
            let delta = model.add_binary();
            model.linear.set_objective(delta, 1.0);
            if self.excluded.contains(&Edge::new(source, t)) {
                model.linear.set_bounds(delta, 0.0, 0.0);
            }
            model.linear.add_constraint(
                vec![(k, 1.0), (delta, -self.epsilon)],
                Relation::GreaterEq,
                0.0,
            );
            model.linear.add_constraint(
                vec![(k, -1.0), (delta, self.upper_bound(source, t))],
                Relation::GreaterEq,
                0.0,
            );
        }
        model
    }

    /// Entries of `a` within 1% of their upper bound, and diagonals within
    /// 1% of their lower bound (reported as `(j, j)`).
    pub fn suspect_entries(&self, a: &KirchhoffMatrix<f64>) -> Vec<Edge> {
        let m = self.complex_count();
        let mut out = Vec::new();
        for j in 0..m {
            if a.matrix()[(j, j)] <= SUSPECT_FRACTION * self.diagonal_lower[j] {
                out.push(Edge::new(j, j));
            }
            for i in 0..m {
                if i != j && a.rate(j, i) >= SUSPECT_FRACTION * self.upper_bound(j, i) {
                    out.push(Edge::new(j, i));
                }
            }
        }
        out
    }
}

/// `1000 * max(1, max |M|)`.
pub fn default_upper_bound(target: &Matrix<f64>) -> f64 {
    let largest = target.as_slice().iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    1000.0 * largest
}

/// Kinetic constraints over all off-diagonal entries, column after column:
/// `Y A_k = M` with the diagonal eliminated, nonnegative rates, and zero
/// rates on excluded edges. Variable `j * (m - 1) + k` is the `k`-th
/// off-diagonal rate leaving complex `j`.
pub fn build_kinetic_constraints(problem: &RealizationProblem) -> LinearModel {
    let m = problem.complex_count();
    let mut model = LinearModel::new(Sense::Minimize);
    for j in 0..m {
        let offset = model.variable_count();
        for _ in problem.column_targets(j) {
            model.add_variable(0.0, f64::INFINITY);
        }
        problem.add_column_rows(&mut model, j, offset);
    }
    model
}

fn map_columns<T, F>(m: usize, parallel: bool, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return (0..m).into_par_iter().map(f).collect();
    }
    let _ = parallel;
    (0..m).map(f).collect()
}

fn limit_error(column: usize, status: SolveStatus) -> RealizationError {
    RealizationError::SolverLimit {
        column,
        status,
        trace: Vec::new(),
    }
}

/// Whether some realization avoids every edge of the problem's exclusion set.
pub fn is_removable_problem(
    problem: &RealizationProblem,
    opts: &RealizationOptions,
) -> Result<bool, RealizationError> {
    let m = problem.complex_count();
    let results = match opts.mode {
        SolveMode::Columnwise => map_columns(m, opts.parallel, |j| {
            optimizer::solve_lp(&problem.removability_column(j), &opts.solver).map(|r| (j, r))
        }),
        SolveMode::Monolithic => {
            let mut model = build_kinetic_constraints(problem);
            for v in 0..model.variable_count() {
                model.set_objective(v, 1.0);
            }
            vec![optimizer::solve_lp(&model, &opts.solver).map(|r| (0, r))]
        }
    };
    for result in results {
        let (column, r) = result?;
        match r.status {
            SolveStatus::Optimal => {}
            SolveStatus::Infeasible => return Ok(false),
            status => return Err(limit_error(column, status)),
        }
    }
    Ok(true)
}

/// Whether `net` has a dynamically equivalent realization over the same
/// complexes using none of the edges in `excluded`.
pub fn is_removable(
    net: &ReactionNetwork<f64>,
    excluded: &EdgeSet,
    opts: &RealizationOptions,
) -> Result<bool, RealizationError> {
    let problem = RealizationProblem::from_network(net, excluded.clone(), opts)?;
    is_removable_problem(&problem, opts)
}

/// Realization optimizing the number of reactions with rate at least
/// epsilon: maximized for `Sense::Maximize`, minimized otherwise.
pub fn solve_support_problem(
    problem: &RealizationProblem,
    sense: Sense,
    opts: &RealizationOptions,
) -> Result<KirchhoffMatrix<f64>, RealizationError> {
    let m = problem.complex_count();
    let columns: Vec<Result<Vec<(usize, usize, f64)>, RealizationError>> = match opts.mode {
        SolveMode::Columnwise => map_columns(m, opts.parallel, |j| {
            let model = problem.support_column(j, sense);
            let r = optimizer::solve_milp(&model, &opts.solver)?;
            column_rates(problem, j, 0, &r).ok_or_else(|| column_failure(j, r.status))
        }),
        SolveMode::Monolithic => {
            let (model, offsets) = monolithic_support_model(problem, sense);
            let r = optimizer::solve_milp(&model, &opts.solver)?;
            if !r.is_optimal() {
                return Err(column_failure(0, r.status));
            }
            offsets
                .iter()
                .enumerate()
                .map(|(j, &offset)| {
                    column_rates(problem, j, offset, &r).ok_or_else(|| column_failure(j, r.status))
                })
                .collect()
        }
    };
    let mut rates = Vec::new();
    for column in columns {
        rates.extend(column?);
    }
    Ok(KirchhoffMatrix::from_rates(m, rates)?)
}

fn column_failure(column: usize, status: SolveStatus) -> RealizationError {
    match status {
        SolveStatus::Infeasible => RealizationError::InfeasibleColumn {
            column,
            trace: Vec::new(),
        },
        status => limit_error(column, status),
    }
}

/// Rates of column `source` read from a support MILP solution whose rate
/// variables start at `offset`; entries whose binary is off are dropped.
fn column_rates(
    problem: &RealizationProblem,
    source: usize,
    offset: usize,
    r: &SolveResult,
) -> Option<Vec<(usize, usize, f64)>> {
    if !r.is_optimal() {
        return None;
    }
    let targets = problem.column_targets(source);
    let count = targets.len();
    Some(
        targets
            .iter()
            .enumerate()
            .filter(|&(k, _)| r.values[offset + count + k] == 1.0)
            .map(|(k, &t)| (source, t, r.values[offset + k]))
            .collect(),
    )
}

fn monolithic_support_model(problem: &RealizationProblem, sense: Sense) -> (MixedModel, Vec<usize>) {
    let mut model = MixedModel::new(sense);
    let mut offsets = Vec::new();
    for j in 0..problem.complex_count() {
        let column = problem.support_column(j, sense);
        let offset = model.linear.variable_count();
        offsets.push(offset);
        let binaries = column.binaries();
        for v in 0..column.linear.variable_count() {
            let (l, u) = column.linear.bounds(v);
            let idx = if binaries.contains(&v) {
                let idx = model.add_binary();
                model.linear.set_bounds(idx, l, u);
                idx
            } else {
                model.linear.add_variable(l, u)
            };
            model.linear.set_objective(idx, column.linear.objective()[v]);
        }
        for c in column.linear.constraints() {
            let terms = c.terms.iter().map(|&(v, a)| (offset + v, a)).collect();
            model.linear.add_constraint(terms, c.relation, c.rhs);
        }
    }
    (model, offsets)
}

/// Densest realization of `net` avoiding the edges in `excluded`.
///
/// With `excluded` empty this is the dense realization. Fails with
/// [`RealizationError::InfeasibleColumn`] if `excluded` is not removable.
pub fn find_constr_dense_realization(
    net: &ReactionNetwork<f64>,
    excluded: &EdgeSet,
    opts: &RealizationOptions,
) -> Result<KirchhoffMatrix<f64>, RealizationError> {
    let problem = RealizationProblem::from_network(net, excluded.clone(), opts)?;
    solve_support_problem(&problem, Sense::Maximize, opts)
}

/// Realization of `net` with the fewest reactions avoiding `excluded`.
pub fn find_sparse_realization(
    net: &ReactionNetwork<f64>,
    excluded: &EdgeSet,
    opts: &RealizationOptions,
) -> Result<KirchhoffMatrix<f64>, RealizationError> {
    let problem = RealizationProblem::from_network(net, excluded.clone(), opts)?;
    solve_support_problem(&problem, Sense::Minimize, opts)
}

/// Densest weakly reversible realization of `net`, or proof that none
/// exists over its complex set.
///
/// Edges joining different strong components of the current dense
/// realization are excluded and the dense realization recomputed, until
/// either no such edge is left or the exclusions admit no realization.
pub fn find_weakly_reversible_realization(
    net: &ReactionNetwork<f64>,
    opts: &RealizationOptions,
) -> Result<RealizationOutcome, RealizationError> {
    let base = RealizationProblem::from_network(net, EdgeSet::new(), opts)?;
    let m = base.complex_count();
    let mut excluded = EdgeSet::new();
    let mut trace: Vec<IterationRecord> = Vec::new();
    let mut iterations = 0;
    loop {
        let problem = base.with_excluded(excluded.clone());
        let removable = if excluded.is_empty() {
            None
        } else {
            Some(is_removable_problem(&problem, opts).map_err(|e| e.with_trace(&trace))?)
        };
        if removable == Some(false) {
            trace.push(IterationRecord {
                excluded: excluded.clone(),
                removable,
                dense_support: EdgeSet::new(),
                cut_set: EdgeSet::new(),
            });
            return Ok(RealizationOutcome {
                status: RealizationStatus::NoneExists,
                kirchhoff: KirchhoffMatrix::zeros(m),
                iterations,
                final_constraints: excluded,
                trace,
            });
        }
        let dense = solve_support_problem(&problem, Sense::Maximize, opts)
            .map_err(|e| e.with_trace(&trace))?;
        iterations += 1;
        let support = dense.support_above(opts.support_threshold());
        let cut = cross_component_edges(&ReactionGraph::new(m, support.clone()));
        // An empty dense realization only happens when M = 0. It has no cut
        // edges but fewer than two reactions, so it is not weakly reversible;
        // report it with the zero-matrix convention for "none found".
        let empty = support.is_empty();
        trace.push(IterationRecord {
            excluded: excluded.clone(),
            removable,
            dense_support: support,
            cut_set: cut.clone(),
        });
        if cut.is_empty() {
            return Ok(RealizationOutcome {
                status: if empty {
                    RealizationStatus::NoneExists
                } else {
                    RealizationStatus::Found
                },
                kirchhoff: if empty { KirchhoffMatrix::zeros(m) } else { dense },
                iterations,
                final_constraints: excluded,
                trace,
            });
        }
        excluded.union_with(&cut);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_weakly_reversible;
    use crate::network::{dynamically_equivalent, ComplexVector};

    fn network(species: usize, complexes: &[&[u32]], rates: &[(usize, usize, f64)]) -> ReactionNetwork {
        let y = StoichMatrix::new(
            species,
            complexes.iter().map(|c| ComplexVector::new(c.to_vec())).collect(),
        )
        .unwrap();
        let a = KirchhoffMatrix::from_rates(complexes.len(), rates.iter().copied()).unwrap();
        ReactionNetwork::with_default_names(y, a).unwrap()
    }

    fn example1() -> ReactionNetwork {
        network(
            2,
            &[&[1, 2], &[1, 0], &[2, 1], &[0, 3], &[1, 3], &[1, 1], &[3, 1]],
            &[(0, 1, 1.5), (2, 3, 1.0), (4, 5, 1.0), (5, 6, 1.0)],
        )
    }

    fn degradation() -> ReactionNetwork {
        network(1, &[&[1], &[0]], &[(0, 1, 1.0)])
    }

    fn edges(list: &[(usize, usize)]) -> EdgeSet {
        list.iter().map(|&(s, t)| (s - 1, t - 1)).collect()
    }

    fn opts() -> RealizationOptions {
        RealizationOptions::default()
    }

    #[test]
    fn empty_exclusion_is_removable() {
        assert!(is_removable(&example1(), &EdgeSet::new(), &opts()).unwrap());
    }

    #[test]
    fn only_reaction_of_degradation_is_not_removable() {
        assert!(!is_removable(&degradation(), &edges(&[(1, 2)]), &opts()).unwrap());
    }

    #[test]
    fn kinetic_constraint_fragment_shape() {
        let net = example1();
        let p = RealizationProblem::from_network(&net, EdgeSet::new(), &opts()).unwrap();
        let lp = build_kinetic_constraints(&p);
        assert_eq!(lp.variable_count(), 42);
        assert_eq!(lp.constraints().len(), 14);
        let mut witness = Vec::new();
        for j in 0..7 {
            for i in (0..7).filter(|&i| i != j) {
                witness.push(net.kirchhoff().rate(j, i));
            }
        }
        assert!(optimizer::check_feasibility(&lp, &witness, 1e-12).is_ok());
    }

    #[test]
    fn excluding_everything_is_infeasible() {
        let net = example1();
        let all: EdgeSet = (0..7)
            .flat_map(|s| (0..7).map(move |t| (s, t)))
            .collect();
        let p = RealizationProblem::from_network(&net, all, &opts()).unwrap();
        let lp = build_kinetic_constraints(&p);
        let fixed = (0..lp.variable_count()).filter(|&v| lp.bounds(v) == (0.0, 0.0)).count();
        assert_eq!(fixed, 42);
        assert!(!is_removable_problem(&p, &opts()).unwrap());
    }

    #[test]
    fn example1_dense_support() {
        let dense = find_constr_dense_realization(&example1(), &EdgeSet::new(), &opts()).unwrap();
        let expected: EdgeSet = [1, 3, 5, 6]
            .iter()
            .flat_map(|&s| (1..=7).filter(move |&t| t != s).map(move |t| (s - 1, t - 1)))
            .collect();
        assert_eq!(dense.support(), expected);
        let out = example1().with_kirchhoff(dense).unwrap();
        assert!(dynamically_equivalent(&example1(), &out, 1e-6).unwrap());
    }

    #[test]
    fn example1_constrained_dense_support() {
        let cut = edges(&[
            (1, 2), (1, 4), (1, 7), (3, 2), (3, 4), (3, 7),
            (5, 2), (5, 4), (5, 7), (6, 2), (6, 4), (6, 7),
        ]);
        let net = example1();
        assert!(is_removable(&net, &cut, &opts()).unwrap());
        let a = find_constr_dense_realization(&net, &cut, &opts()).unwrap();
        let expected = edges(&[(1, 5), (1, 6), (3, 1), (3, 5), (3, 6), (5, 1), (5, 6), (6, 3)]);
        assert_eq!(a.support(), expected);
    }

    #[test]
    fn example1_weakly_reversible() {
        let net = example1();
        let out = find_weakly_reversible_realization(&net, &opts()).unwrap();
        assert_eq!(out.status, RealizationStatus::Found);
        assert_eq!(out.iterations, 2);
        assert_eq!(out.trace[0].dense_support.len(), 24);
        assert_eq!(out.trace[0].cut_set.len(), 12);
        assert_eq!(out.kirchhoff.support().len(), 8);
        assert!(is_weakly_reversible(&out.kirchhoff));
        let realized = net.with_kirchhoff(out.kirchhoff).unwrap();
        assert!(dynamically_equivalent(&net, &realized, 1e-6).unwrap());
    }

    #[test]
    fn degradation_has_no_weakly_reversible_realization() {
        let out = find_weakly_reversible_realization(&degradation(), &opts()).unwrap();
        assert_eq!(out.status, RealizationStatus::NoneExists);
        assert!(out.kirchhoff.is_zero());
        assert_eq!(out.iterations, 1);
        assert_eq!(out.final_constraints, edges(&[(1, 2)]));
    }

    #[test]
    fn large_threshold_misses_small_rates() {
        // column of [0,1]: (2.5,1) = a(2,0) + b(2,1) + c(1,0) + d(2,-1) forces
        // b = 1 + d and 2a + c + 4d = 0.5, so all four edges cannot reach 0.1
        let net = network(
            2,
            &[&[2, 1], &[2, 2], &[1, 1], &[0, 1], &[2, 0]],
            &[(1, 0, 0.5), (1, 2, 0.5), (2, 0, 1.5), (3, 1, 1.0), (3, 2, 0.5), (4, 1, 0.5)],
        );
        let column = |eps: f64| {
            let o = RealizationOptions { epsilon: eps, ..opts() };
            let a = find_constr_dense_realization(&net, &EdgeSet::new(), &o).unwrap();
            a.support_above(o.support_threshold()).iter().filter(|e| e.source == 3).count()
        };
        assert_eq!(column(0.1), 3);
        assert_eq!(column(0.02), 4);
    }

    #[test]
    fn zero_dynamics_end_with_empty_network() {
        // X -> 2X and X -> 0 at equal rates cancel
        let net = network(1, &[&[1], &[2], &[0]], &[(0, 1, 1.5), (0, 2, 1.5)]);
        let out = find_weakly_reversible_realization(&net, &opts()).unwrap();
        assert_eq!(out.status, RealizationStatus::NoneExists);
        assert!(out.kirchhoff.is_zero());
        let last = out.trace.last().unwrap();
        assert_eq!(last.removable, Some(true));
        assert!(last.dense_support.is_empty());
    }

    #[test]
    fn sparse_is_within_dense() {
        let net = example1();
        let dense = find_constr_dense_realization(&net, &EdgeSet::new(), &opts()).unwrap();
        let sparse = find_sparse_realization(&net, &EdgeSet::new(), &opts()).unwrap();
        assert!(sparse.support().is_subset(&dense.support()));
        assert!(sparse.reaction_count() <= dense.reaction_count());
        let realized = net.with_kirchhoff(sparse).unwrap();
        assert!(dynamically_equivalent(&net, &realized, 1e-6).unwrap());
    }

    #[test]
    fn sparse_of_unique_realization() {
        let sparse = find_sparse_realization(&degradation(), &EdgeSet::new(), &opts()).unwrap();
        assert_eq!(sparse.support(), edges(&[(1, 2)]));
    }

    #[test]
    fn monolithic_mode_agrees() {
        let mono = RealizationOptions {
            mode: SolveMode::Monolithic,
            ..opts()
        };
        let net = example1();
        let a = find_constr_dense_realization(&net, &EdgeSet::new(), &opts()).unwrap();
        let b = find_constr_dense_realization(&net, &EdgeSet::new(), &mono).unwrap();
        assert_eq!(a.support(), b.support());
        assert!(is_removable(&net, &edges(&[(1, 2)]), &mono).unwrap());
    }

    #[test]
    fn infeasible_exclusion_is_reported_for_dense() {
        let err = find_constr_dense_realization(&degradation(), &edges(&[(1, 2)]), &opts()).unwrap_err();
        assert!(matches!(err, RealizationError::InfeasibleColumn { column: 0, .. }));
    }

    #[test]
    fn problem_validation() {
        let net = degradation();
        let bad_eps = RealizationOptions {
            epsilon: 0.0,
            ..opts()
        };
        assert!(matches!(
            RealizationProblem::from_network(&net, EdgeSet::new(), &bad_eps),
            Err(RealizationError::InvalidEpsilon(_))
        ));
        let big_eps = RealizationOptions {
            epsilon: 5.0,
            upper_bound: Some(2.0),
            ..opts()
        };
        assert!(matches!(
            RealizationProblem::from_network(&net, EdgeSet::new(), &big_eps),
            Err(RealizationError::EpsilonAboveBound { .. })
        ));
        assert!(matches!(
            RealizationProblem::from_network(&net, edges(&[(1, 3)]), &opts()),
            Err(RealizationError::ExcludedOutOfRange(_))
        ));
    }

    #[test]
    fn bound_suspects_are_flagged() {
        let net = degradation();
        let tight = RealizationOptions {
            upper_bound: Some(1.0),
            ..opts()
        };
        let p = RealizationProblem::from_network(&net, EdgeSet::new(), &tight).unwrap();
        let a = solve_support_problem(&p, Sense::Maximize, &tight).unwrap();
        assert_eq!(p.suspect_entries(&a), vec![Edge::new(0, 1)]);
        let p = RealizationProblem::from_network(&net, EdgeSet::new(), &opts()).unwrap();
        assert!(p.suspect_entries(net.kirchhoff()).is_empty());
    }
}
