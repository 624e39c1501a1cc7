use alloc::vec;
use alloc::vec::Vec;

use super::model::{MixedModel, Sense};
use super::{simplex, SolveResult, SolveStatus, SolverOptions};

/// Binary fixings along one branch: `(var, value)`.
type Fixings = Vec<(usize, f64)>;

struct Incumbent {
    /// Objective in minimization form.
    value: f64,
    values: Vec<f64>,
}

fn minimization_sign(model: &MixedModel) -> f64 {
    match model.linear.sense() {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    }
}

/// True when every feasible objective value is an integer: only binaries
/// carry objective weight, and those weights are integral.
fn objective_is_integral(model: &MixedModel) -> bool {
    let mut is_binary = vec![false; model.linear.variable_count()];
    for &b in model.binaries() {
        is_binary[b] = true;
    }
    model
        .linear
        .objective()
        .iter()
        .enumerate()
        .all(|(v, &c)| c == 0.0 || is_binary[v] && c == (c as i64) as f64)
}

fn solve_fixed(model: &MixedModel, fixings: &[(usize, f64)], opts: &SolverOptions) -> SolveResult {
    let mut lp = model.linear.clone();
    for &(v, x) in fixings {
        lp.set_bounds(v, x, x);
    }
    simplex::solve(&lp, opts)
}

pub(crate) fn branch_and_bound(model: &MixedModel, opts: &SolverOptions) -> SolveResult {
    let sign = minimization_sign(model);
    let integral = objective_is_integral(model);
    let mut incumbent: Option<Incumbent> = None;
    let mut stack: Vec<Fixings> = vec![Vec::new()];
    let mut nodes = 0usize;
    let mut iterations = 0usize;

    while let Some(fixings) = stack.pop() {
        nodes += 1;
        if nodes > opts.max_nodes {
            return SolveResult {
                nodes,
                ..SolveResult::status_only(SolveStatus::IterationLimit, iterations)
            };
        }
        let relaxed = solve_fixed(model, &fixings, opts);
        iterations += relaxed.iterations;
        match relaxed.status {
            SolveStatus::Optimal => {}
            SolveStatus::Infeasible => continue,
            SolveStatus::Unbounded | SolveStatus::IterationLimit => {
                return SolveResult {
                    nodes,
                    ..SolveResult::status_only(relaxed.status, iterations)
                };
            }
        }
        let bound = sign * relaxed.objective_value;
        if let Some(best) = &incumbent {
            let cannot_improve = if integral {
                bound > best.value - 1.0 + opts.integrality_tol
            } else {
                bound >= best.value - 1e-9 * best.value.abs().max(1.0)
            };
            if cannot_improve {
                continue;
            }
        }

        // most fractional binary, lowest index on ties
        let mut branch: Option<(usize, f64)> = None;
        for &b in model.binaries() {
            let x = relaxed.values[b];
            let frac = x.min(1.0 - x);
            if frac <= opts.integrality_tol {
                continue;
            }
            if branch.map_or(true, |(_, best)| frac > best + 1e-12) {
                branch = Some((b, frac));
            }
        }

        match branch {
            None => {
                let mut rounded = fixings.clone();
                for &b in model.binaries() {
                    if !fixings.iter().any(|&(v, _)| v == b) {
                        rounded.push((b, if relaxed.values[b] >= 0.5 { 1.0 } else { 0.0 }));
                    }
                }
                let polished = solve_fixed(model, &rounded, opts);
                iterations += polished.iterations;
                let (value, values) = if polished.is_optimal() {
                    (sign * polished.objective_value, polished.values)
                } else {
                    let mut values = relaxed.values;
                    for &(v, x) in &rounded {
                        values[v] = x;
                    }
                    (bound, values)
                };
                if incumbent.as_ref().map_or(true, |best| value < best.value) {
                    incumbent = Some(Incumbent { value, values });
                }
            }
            Some((var, _)) => {
                let up_first = relaxed.values[var] >= 0.5;
                let mut down = fixings.clone();
                down.push((var, 0.0));
                let mut up = fixings;
                up.push((var, 1.0));
                if up_first {
                    stack.push(down);
                    stack.push(up);
                } else {
                    stack.push(up);
                    stack.push(down);
                }
            }
        }
    }

    match incumbent {
        Some(best) => SolveResult {
            status: SolveStatus::Optimal,
            objective_value: model.linear.objective_value(&best.values),
            values: best.values,
            iterations,
            nodes,
        },
        None => SolveResult {
            nodes,
            ..SolveResult::status_only(SolveStatus::Infeasible, iterations)
        },
    }
}

pub(crate) fn enumerate(model: &MixedModel, opts: &SolverOptions) -> SolveResult {
    let sign = minimization_sign(model);
    let binaries = model.binaries();
    let mut best: Option<Incumbent> = None;
    let mut iterations = 0usize;
    for mask in 0u64..(1u64 << binaries.len()) {
        let fixings: Fixings = binaries
            .iter()
            .enumerate()
            .map(|(k, &v)| (v, ((mask >> k) & 1) as f64))
            .collect();
        let r = solve_fixed(model, &fixings, opts);
        iterations += r.iterations;
        match r.status {
            SolveStatus::Optimal => {
                let value = sign * r.objective_value;
                if best.as_ref().map_or(true, |b| value < b.value - 1e-12) {
                    best = Some(Incumbent { value, values: r.values });
                }
            }
            SolveStatus::Infeasible => {}
            other => return SolveResult::status_only(other, iterations),
        }
    }
    match best {
        Some(b) => SolveResult {
            status: SolveStatus::Optimal,
            objective_value: model.linear.objective_value(&b.values),
            values: b.values,
            iterations,
            nodes: 1 << binaries.len(),
        },
        None => SolveResult::status_only(SolveStatus::Infeasible, iterations),
    }
}
