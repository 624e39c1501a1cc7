use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::ModelError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    LessEq,
    GreaterEq,
    Equal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub terms: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Constraint {
    pub fn activity(&self, values: &[f64]) -> f64 {
        self.terms.iter().map(|&(v, c)| c * values[v]).sum()
    }
}

/// Continuous LP: bounded variables, linear rows, linear objective.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    lower: Vec<f64>,
    upper: Vec<f64>,
    objective: Vec<f64>,
    constraints: Vec<Constraint>,
    sense: Sense,
}

impl LinearModel {
    pub fn new(sense: Sense) -> Self {
        Self {
            lower: Vec::new(),
            upper: Vec::new(),
            objective: Vec::new(),
            constraints: Vec::new(),
            sense,
        }
    }

    /// Adds a variable with bounds `[lower, upper]` (either may be infinite)
    /// and returns its index.
    pub fn add_variable(&mut self, lower: f64, upper: f64) -> usize {
        self.lower.push(lower);
        self.upper.push(upper);
        self.objective.push(0.0);
        self.lower.len() - 1
    }

    pub fn set_objective(&mut self, var: usize, coefficient: f64) {
        self.objective[var] = coefficient;
    }

    pub fn set_bounds(&mut self, var: usize, lower: f64, upper: f64) {
        self.lower[var] = lower;
        self.upper[var] = upper;
    }

    pub fn add_constraint(&mut self, terms: Vec<(usize, f64)>, relation: Relation, rhs: f64) {
        self.constraints.push(Constraint { terms, relation, rhs });
    }

    pub fn variable_count(&self) -> usize {
        self.lower.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn bounds(&self, var: usize) -> (f64, f64) {
        (self.lower[var], self.upper[var])
    }

    pub fn objective_value(&self, values: &[f64]) -> f64 {
        self.objective.iter().zip(values).map(|(c, x)| c * x).sum()
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        for v in 0..self.variable_count() {
            let (l, u) = self.bounds(v);
            if l.is_nan() || u.is_nan() || l > u || l == f64::INFINITY || u == f64::NEG_INFINITY {
                return Err(ModelError::InvalidBounds { var: v, lower: l, upper: u });
            }
        }
        for (row, c) in self.constraints.iter().enumerate() {
            if !c.rhs.is_finite() {
                return Err(ModelError::NonFinite { row });
            }
            for &(v, coef) in &c.terms {
                if v >= self.variable_count() {
                    return Err(ModelError::UnknownVariable { row, var: v });
                }
                if !coef.is_finite() {
                    return Err(ModelError::NonFinite { row });
                }
            }
        }
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(ModelError::NonFinite { row: usize::MAX });
        }
        Ok(())
    }

    /// Plain-text dump in an LP-file-like layout, for cross-checking with
    /// external solvers.
    pub fn to_lp_format(&self) -> String {
        self.lp_text(&[])
    }

    pub(crate) fn lp_text(&self, binaries: &[usize]) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{}",
            match self.sense {
                Sense::Minimize => "Minimize",
                Sense::Maximize => "Maximize",
            }
        );
        let obj: Vec<(usize, f64)> = self
            .objective
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0.0)
            .map(|(v, c)| (v, *c))
            .collect();
        let _ = writeln!(out, " obj: {}", linear_expr(&obj));
        let _ = writeln!(out, "Subject To");
        for (i, c) in self.constraints.iter().enumerate() {
            let rel = match c.relation {
                Relation::LessEq => "<=",
                Relation::GreaterEq => ">=",
                Relation::Equal => "=",
            };
            let _ = writeln!(out, " c{i}: {} {rel} {}", linear_expr(&c.terms), c.rhs);
        }
        let _ = writeln!(out, "Bounds");
        for v in 0..self.variable_count() {
            let (l, u) = self.bounds(v);
            match (l.is_finite(), u.is_finite()) {
                (true, true) if l == u => {
                    let _ = writeln!(out, " x{v} = {l}");
                }
                (true, true) => {
                    let _ = writeln!(out, " {l} <= x{v} <= {u}");
                }
                (true, false) => {
                    let _ = writeln!(out, " x{v} >= {l}");
                }
                (false, true) => {
                    let _ = writeln!(out, " -inf <= x{v} <= {u}");
                }
                (false, false) => {
                    let _ = writeln!(out, " x{v} free");
                }
            }
        }
        if !binaries.is_empty() {
            let _ = writeln!(out, "Binary");
            for &b in binaries {
                let _ = writeln!(out, " x{b}");
            }
        }
        let _ = writeln!(out, "End");
        out
    }
}

fn linear_expr(terms: &[(usize, f64)]) -> String {
    if terms.is_empty() {
        return String::from("0");
    }
    let mut out = String::new();
    for (k, &(v, c)) in terms.iter().enumerate() {
        if k == 0 {
            if c < 0.0 {
                out.push_str("- ");
            }
        } else {
            out.push_str(if c < 0.0 { " - " } else { " + " });
        }
        let _ = write!(out, "{} x{v}", c.abs());
    }
    out
}

/// A [`LinearModel`] with a designated set of `{0, 1}` variables.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedModel {
    pub linear: LinearModel,
    binaries: Vec<usize>,
}

impl MixedModel {
    pub fn new(sense: Sense) -> Self {
        Self {
            linear: LinearModel::new(sense),
            binaries: Vec::new(),
        }
    }

    pub fn from_linear(linear: LinearModel) -> Self {
        Self {
            linear,
            binaries: Vec::new(),
        }
    }

    pub fn add_binary(&mut self) -> usize {
        let v = self.linear.add_variable(0.0, 1.0);
        self.binaries.push(v);
        v
    }

    pub fn binaries(&self) -> &[usize] {
        &self.binaries
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        self.linear.validate()?;
        for &b in &self.binaries {
            let (l, u) = self.linear.bounds(b);
            if l < 0.0 || u > 1.0 {
                return Err(ModelError::InvalidBounds { var: b, lower: l, upper: u });
            }
        }
        Ok(())
    }

    pub fn to_lp_format(&self) -> String {
        self.linear.lp_text(&self.binaries)
    }
}
