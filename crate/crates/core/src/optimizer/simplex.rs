//! Dense two-phase tableau simplex with Bland's anti-cycling rule.

use alloc::vec;
use alloc::vec::Vec;

use super::model::{LinearModel, Relation, Sense};
use super::{SolveResult, SolveStatus, SolverOptions};

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;

/// How a model variable is expressed through nonnegative tableau columns.
#[derive(Debug, Clone, Copy)]
enum VarMap {
    Fixed(f64),
    /// `x = offset + y`
    Shift { col: usize, offset: f64 },
    /// `x = offset - y`
    Mirror { col: usize, offset: f64 },
    /// `x = y+ - y-`
    Split { pos: usize, neg: usize },
}

struct Tableau {
    width: usize,
    /// `rows + 1` rows of `width + 1` entries; the last row is the objective,
    /// the last column the right-hand side.
    data: Vec<f64>,
    rows: usize,
    basis: Vec<usize>,
}

impl Tableau {
    fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * (self.width + 1) + c]
    }

    fn rhs(&self, r: usize) -> f64 {
        self.at(r, self.width)
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let stride = self.width + 1;
        let p = self.at(pr, pc);
        for c in 0..stride {
            self.data[pr * stride + c] /= p;
        }
        self.data[pr * stride + pc] = 1.0;
        for r in 0..=self.rows {
            if r == pr {
                continue;
            }
            let factor = self.at(r, pc);
            if factor == 0.0 {
                continue;
            }
            for c in 0..stride {
                let v = self.data[pr * stride + c];
                if v != 0.0 {
                    self.data[r * stride + c] -= factor * v;
                }
            }
            self.data[r * stride + pc] = 0.0;
        }
        self.basis[pr] = pc;
    }

    /// Writes `costs` as the objective row, expressed in the current basis.
    fn set_objective(&mut self, costs: &[f64]) {
        let stride = self.width + 1;
        let obj = self.rows * stride;
        for c in 0..stride {
            self.data[obj + c] = costs.get(c).copied().unwrap_or(0.0);
        }
        for r in 0..self.rows {
            let cb = costs[self.basis[r]];
            if cb == 0.0 {
                continue;
            }
            for c in 0..stride {
                self.data[obj + c] -= cb * self.data[r * stride + c];
            }
        }
    }

    /// Runs Bland's rule on the current objective row over `eligible` columns.
    fn optimize(&mut self, eligible: &[bool], iterations: &mut usize, limit: usize) -> SolveStatus {
        loop {
            let entering = (0..self.width).find(|&c| eligible[c] && self.at(self.rows, c) < -COST_TOL);
            let Some(pc) = entering else {
                return SolveStatus::Optimal;
            };
            if *iterations >= limit {
                return SolveStatus::IterationLimit;
            }
            *iterations += 1;

            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                let a = self.at(r, pc);
                if a <= PIVOT_TOL {
                    continue;
                }
                let ratio = self.rhs(r).max(0.0) / a;
                leave = match leave {
                    None => Some((r, ratio)),
                    Some((best, best_ratio)) => {
                        let tie = (ratio - best_ratio).abs() <= 1e-12 * best_ratio.abs().max(1.0);
                        if ratio < best_ratio && !tie || tie && self.basis[r] < self.basis[best] {
                            Some((r, ratio))
                        } else {
                            Some((best, best_ratio))
                        }
                    }
                };
            }
            let Some((pr, _)) = leave else {
                return SolveStatus::Unbounded;
            };
            self.pivot(pr, pc);
        }
    }
}

pub(crate) fn solve(model: &LinearModel, opts: &SolverOptions) -> SolveResult {
    let n = model.variable_count();

    let mut maps = Vec::with_capacity(n);
    let mut columns = 0usize;
    // rows as (coefficients over structural columns, relation, rhs)
    let mut rows: Vec<(Vec<(usize, f64)>, Relation, f64)> = Vec::new();
    for v in 0..n {
        let (l, u) = model.bounds(v);
        let map = if l == u {
            VarMap::Fixed(l)
        } else if l.is_finite() {
            let col = columns;
            columns += 1;
            if u.is_finite() {
                rows.push((vec![(col, 1.0)], Relation::LessEq, u - l));
            }
            VarMap::Shift { col, offset: l }
        } else if u.is_finite() {
            let col = columns;
            columns += 1;
            VarMap::Mirror { col, offset: u }
        } else {
            columns += 2;
            VarMap::Split { pos: columns - 2, neg: columns - 1 }
        };
        maps.push(map);
    }

    let mut constraint_rows = Vec::with_capacity(model.constraints().len());
    for c in model.constraints() {
        let mut rhs = c.rhs;
        let mut terms: Vec<(usize, f64)> = Vec::with_capacity(c.terms.len());
        for &(v, coef) in &c.terms {
            match maps[v] {
                VarMap::Fixed(x) => rhs -= coef * x,
                VarMap::Shift { col, offset } => {
                    rhs -= coef * offset;
                    terms.push((col, coef));
                }
                VarMap::Mirror { col, offset } => {
                    rhs -= coef * offset;
                    terms.push((col, -coef));
                }
                VarMap::Split { pos, neg } => {
                    terms.push((pos, coef));
                    terms.push((neg, -coef));
                }
            }
        }
        if terms.iter().all(|&(_, c)| c == 0.0) {
            // constant row: check it directly
            let ok = match c.relation {
                Relation::LessEq => rhs >= -opts.feasibility_tol,
                Relation::GreaterEq => rhs <= opts.feasibility_tol,
                Relation::Equal => rhs.abs() <= opts.feasibility_tol,
            };
            if !ok {
                return SolveResult::status_only(SolveStatus::Infeasible, 0);
            }
            continue;
        }
        constraint_rows.push((terms, c.relation, rhs));
    }
    rows.extend(constraint_rows);

    let structural = columns;
    let slacks = rows.iter().filter(|r| r.1 != Relation::Equal).count();
    let m = rows.len();

    // rows are negated when that makes the rhs nonnegative or lets a
    // homogeneous >= row start with its slack in the basis
    let flipped: Vec<bool> = rows
        .iter()
        .map(|(_, rel, rhs)| *rhs < 0.0 || (*rhs == 0.0 && *rel == Relation::GreaterEq))
        .collect();
    let needs_artificial: Vec<bool> = rows
        .iter()
        .zip(&flipped)
        .map(|((_, rel, _), &flip)| match rel {
            Relation::Equal => true,
            Relation::LessEq => flip,
            Relation::GreaterEq => !flip,
        })
        .collect();
    let artificials = needs_artificial.iter().filter(|&&a| a).count();
    let width = structural + slacks + artificials;
    let stride = width + 1;

    let mut t = Tableau {
        width,
        data: vec![0.0; (m + 1) * stride],
        rows: m,
        basis: vec![0; m],
    };
    let mut slack_col = structural;
    let mut art_col = structural + slacks;
    for (i, (terms, rel, rhs)) in rows.iter().enumerate() {
        let sign = if flipped[i] { -1.0 } else { 1.0 };
        for &(c, v) in terms {
            t.data[i * stride + c] += sign * v;
        }
        t.data[i * stride + width] = sign * rhs;
        let slack = match rel {
            Relation::LessEq => Some(1.0),
            Relation::GreaterEq => Some(-1.0),
            Relation::Equal => None,
        };
        if let Some(s) = slack {
            t.data[i * stride + slack_col] = sign * s;
            if !needs_artificial[i] {
                t.basis[i] = slack_col;
            }
            slack_col += 1;
        }
        if needs_artificial[i] {
            t.data[i * stride + art_col] = 1.0;
            t.basis[i] = art_col;
            art_col += 1;
        }
    }

    let mut iterations = 0usize;
    let first_artificial = structural + slacks;

    if artificials > 0 {
        let mut costs = vec![0.0; width];
        for c in costs.iter_mut().skip(first_artificial) {
            *c = 1.0;
        }
        t.set_objective(&costs);
        let eligible = vec![true; width];
        match t.optimize(&eligible, &mut iterations, opts.max_iterations) {
            SolveStatus::Optimal => {}
            SolveStatus::IterationLimit => {
                return SolveResult::status_only(SolveStatus::IterationLimit, iterations)
            }
            // phase one is bounded below by zero
            SolveStatus::Unbounded | SolveStatus::Infeasible => {
                return SolveResult::status_only(SolveStatus::Infeasible, iterations)
            }
        }
        let infeasibility = -t.rhs(m);
        let scale = rows.iter().fold(1.0f64, |acc, r| acc.max(r.2.abs()));
        if infeasibility > opts.feasibility_tol * scale {
            return SolveResult::status_only(SolveStatus::Infeasible, iterations);
        }
        // drive remaining artificials out of the basis where possible
        for r in 0..m {
            if t.basis[r] < first_artificial {
                continue;
            }
            let col = (0..first_artificial)
                .filter(|&c| t.at(r, c).abs() > PIVOT_TOL)
                .max_by(|&a, &b| t.at(r, a).abs().total_cmp(&t.at(r, b).abs()));
            if let Some(c) = col {
                t.pivot(r, c);
            }
        }
    }

    // phase two, always as a minimization
    let sign = match model.sense() {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let mut costs = vec![0.0; width];
    for (v, map) in maps.iter().enumerate() {
        let c = sign * model.objective()[v];
        match *map {
            VarMap::Fixed(_) => {}
            VarMap::Shift { col, .. } => costs[col] += c,
            VarMap::Mirror { col, .. } => costs[col] -= c,
            VarMap::Split { pos, neg } => {
                costs[pos] += c;
                costs[neg] -= c;
            }
        }
    }
    t.set_objective(&costs);
    let mut eligible = vec![true; width];
    for e in eligible.iter_mut().skip(first_artificial) {
        *e = false;
    }
    match t.optimize(&eligible, &mut iterations, opts.max_iterations) {
        SolveStatus::Optimal => {}
        other => return SolveResult::status_only(other, iterations),
    }

    let mut y = vec![0.0; width];
    for r in 0..m {
        y[t.basis[r]] = t.rhs(r).max(0.0);
    }
    let values: Vec<f64> = maps
        .iter()
        .map(|map| match *map {
            VarMap::Fixed(x) => x,
            VarMap::Shift { col, offset } => offset + y[col],
            VarMap::Mirror { col, offset } => offset - y[col],
            VarMap::Split { pos, neg } => y[pos] - y[neg],
        })
        .collect();
    let objective_value = model.objective_value(&values);
    SolveResult {
        status: SolveStatus::Optimal,
        values,
        objective_value,
        iterations,
        nodes: 0,
    }
}
