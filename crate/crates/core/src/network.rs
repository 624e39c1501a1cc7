//! Mass-action network model: complexes, Kirchhoff matrices and the
//! quantities that are invariant across dynamically equivalent realizations.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::graph::{Edge, EdgeSet, ReactionGraph};
use crate::linalg::{integer_rank, Matrix};
use crate::polynomial;
use crate::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CrnError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: String, found: String },
    #[error("complexes {first} and {second} are identical")]
    DuplicateComplex { first: usize, second: usize },
    #[error("network must have at least one species and one complex")]
    Empty,
    #[error("complex index {index} out of range for {count} complexes")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("reaction {from} -> {to} is a self-loop")]
    SelfLoop { from: usize, to: usize },
    #[error("reaction {from} -> {to} has non-positive rate")]
    NonPositiveRate { from: usize, to: usize },
    #[error("not a valid Kirchhoff matrix: {0}")]
    InvalidKirchhoff(KirchhoffReport),
    #[error("species lists differ: {0} vs {1}")]
    SpeciesMismatch(usize, usize),
    #[error("negative cross-effect: term {term} has a negative coefficient in d{species}/dt but does not contain that species")]
    NotKinetic { term: ComplexVector, species: usize },
}

/// Stoichiometric composition of one complex; entry `j` is the coefficient
/// of species `j`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComplexVector(Vec<u32>);

impl ComplexVector {
    pub fn new(coefficients: Vec<u32>) -> Self {
        Self(coefficients)
    }

    pub fn zero(species: usize) -> Self {
        Self(alloc::vec![0; species])
    }

    pub fn coefficients(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Additive formula such as `X1+2X2`, `0` for the zero complex.
    pub fn label<N: AsRef<str>>(&self, species: &[N]) -> String {
        let mut out = String::new();
        for (j, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            if c != 1 {
                out.push_str(&format!("{c}"));
            }
            match species.get(j) {
                Some(name) => out.push_str(name.as_ref()),
                None => out.push_str(&format!("X{}", j + 1)),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// `self - other` as a signed integer vector.
    pub fn difference(&self, other: &Self) -> Vec<i64> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| i64::from(a) - i64::from(b))
            .collect()
    }
}

impl fmt::Display for ComplexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label::<&str>(&[]))
    }
}

impl From<Vec<u32>> for ComplexVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

/// The `n x m` complex composition matrix `Y`; column `i` is complex `C_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoichMatrix {
    species: usize,
    columns: Vec<ComplexVector>,
}

impl StoichMatrix {
    pub fn new(species: usize, columns: Vec<ComplexVector>) -> Result<Self, CrnError> {
        if species == 0 || columns.is_empty() {
            return Err(CrnError::Empty);
        }
        for c in &columns {
            if c.len() != species {
                return Err(CrnError::Dimension {
                    expected: format!("complex of length {species}"),
                    found: format!("length {}", c.len()),
                });
            }
        }
        let mut seen = alloc::collections::BTreeMap::new();
        for (i, c) in columns.iter().enumerate() {
            if let Some(&first) = seen.get(c) {
                return Err(CrnError::DuplicateComplex { first, second: i });
            }
            seen.insert(c, i);
        }
        Ok(Self { species, columns })
    }

    pub fn species_count(&self) -> usize {
        self.species
    }

    pub fn complex_count(&self) -> usize {
        self.columns.len()
    }

    pub fn complexes(&self) -> &[ComplexVector] {
        &self.columns
    }

    pub fn complex(&self, i: usize) -> &ComplexVector {
        &self.columns[i]
    }

    pub fn position(&self, complex: &ComplexVector) -> Option<usize> {
        self.columns.iter().position(|c| c == complex)
    }

    /// `Y[s, i]` as a float.
    pub fn entry(&self, species: usize, complex: usize) -> f64 {
        f64::from(self.columns[complex].0[species])
    }
}

/// Column-conservation matrix of a reaction network. Entry `(j, i)` with
/// `i != j` is the rate of `C_i -> C_j`; the diagonal holds negated column sums.
#[derive(Debug, Clone, PartialEq)]
pub struct KirchhoffMatrix<S = f64> {
    entries: Matrix<S>,
}

impl<S: Scalar> KirchhoffMatrix<S> {
    pub fn zeros(m: usize) -> Self {
        Self {
            entries: Matrix::zeros(m, m),
        }
    }

    /// Builds the matrix from `(source, target, rate)` triples; parallel
    /// reactions are merged by summing their rates.
    pub fn from_rates<I>(m: usize, rates: I) -> Result<Self, CrnError>
    where
        I: IntoIterator<Item = (usize, usize, S)>,
    {
        let mut a = Self::zeros(m);
        for (source, target, rate) in rates {
            for index in [source, target] {
                if index >= m {
                    return Err(CrnError::IndexOutOfRange { index, count: m });
                }
            }
            if source == target {
                return Err(CrnError::SelfLoop { from: source, to: target });
            }
            if rate <= S::zero() {
                return Err(CrnError::NonPositiveRate { from: source, to: target });
            }
            a.add_rate(source, target, rate);
        }
        Ok(a)
    }

    /// Wraps a dense matrix after checking the Kirchhoff invariants.
    pub fn from_matrix(entries: Matrix<S>, tol: S) -> Result<Self, CrnError> {
        let report = kirchhoff_report(&entries, tol)?;
        if !report.is_valid() {
            return Err(CrnError::InvalidKirchhoff(report));
        }
        Ok(Self { entries })
    }

    pub(crate) fn add_rate(&mut self, source: usize, target: usize, rate: S) {
        self.entries[(target, source)] = self.entries[(target, source)] + rate;
        self.entries[(source, source)] = self.entries[(source, source)] - rate;
    }

    pub fn size(&self) -> usize {
        self.entries.rows()
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.entries
    }

    pub fn rate(&self, source: usize, target: usize) -> S {
        if source == target {
            S::zero()
        } else {
            self.entries[(target, source)]
        }
    }

    /// Reactions with a strictly positive rate, ordered by source then target.
    pub fn reactions(&self) -> Vec<(usize, usize, S)> {
        self.reactions_above(S::zero())
    }

    pub fn reactions_above(&self, threshold: S) -> Vec<(usize, usize, S)> {
        let m = self.size();
        let mut out = Vec::new();
        for source in 0..m {
            for target in 0..m {
                let rate = self.rate(source, target);
                if source != target && rate > threshold {
                    out.push((source, target, rate));
                }
            }
        }
        out
    }

    /// Edges whose rate exceeds `threshold`.
    pub fn support_above(&self, threshold: S) -> EdgeSet {
        self.reactions_above(threshold)
            .into_iter()
            .map(|(s, t, _)| Edge::new(s, t))
            .collect()
    }

    /// Edges with strictly positive rate.
    pub fn support(&self) -> EdgeSet {
        self.support_above(S::zero())
    }

    pub fn reaction_count(&self) -> usize {
        self.reactions().len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.as_slice().iter().all(|v| v.is_zero())
    }

    /// Reorders complexes: new index `k` takes old index `order[k]`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        let m = self.size();
        let mut out = Self::zeros(m);
        for r in 0..m {
            for c in 0..m {
                out.entries[(r, c)] = self.entries[(order[r], order[c])];
            }
        }
        out
    }

    pub fn to_f64(&self) -> KirchhoffMatrix<f64> {
        let m = self.size();
        let mut out = KirchhoffMatrix::<f64>::zeros(m);
        for (s, t, rate) in self.reactions() {
            out.add_rate(s, t, rate.to_f64_lossy());
        }
        out
    }
}

/// Violations found by [`validate_kirchhoff`], all indices 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KirchhoffReport {
    /// Columns whose sum is not within tolerance of zero.
    pub column_sums: Vec<usize>,
    /// Off-diagonal `(row, col)` entries below `-tol`.
    pub negative_off_diagonal: Vec<(usize, usize)>,
    /// Diagonal entries above `tol`.
    pub positive_diagonal: Vec<usize>,
}

impl KirchhoffReport {
    pub fn is_valid(&self) -> bool {
        self.column_sums.is_empty()
            && self.negative_off_diagonal.is_empty()
            && self.positive_diagonal.is_empty()
    }
}

impl fmt::Display for KirchhoffReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        write!(
            f,
            "column sums {:?}, negative off-diagonal {:?}, positive diagonal {:?}",
            self.column_sums, self.negative_off_diagonal, self.positive_diagonal
        )
    }
}

fn kirchhoff_report<S: Scalar>(a: &Matrix<S>, tol: S) -> Result<KirchhoffReport, CrnError> {
    if !a.is_square() {
        return Err(CrnError::Dimension {
            expected: String::from("square matrix"),
            found: format!("{}x{}", a.rows(), a.cols()),
        });
    }
    let m = a.rows();
    let mut report = KirchhoffReport::default();
    for col in 0..m {
        let mut sum = S::zero();
        for row in 0..m {
            let v = a[(row, col)];
            sum = sum + v;
            if row == col {
                if v > tol {
                    report.positive_diagonal.push(col);
                }
            } else if v < -tol {
                report.negative_off_diagonal.push((row, col));
            }
        }
        if sum.abs() > tol {
            report.column_sums.push(col);
        }
    }
    Ok(report)
}

/// Checks the Kirchhoff invariants of a square matrix within `tol`.
pub fn validate_kirchhoff(a: &Matrix<f64>, tol: f64) -> Result<KirchhoffReport, CrnError> {
    kirchhoff_report(a, tol)
}

/// A realization `(Y, A_k)` with named species.
#[derive(Debug, Clone, PartialEq)]
pub struct ReactionNetwork<S = f64> {
    species_names: Vec<String>,
    complexes: StoichMatrix,
    kirchhoff: KirchhoffMatrix<S>,
}

impl<S: Scalar> ReactionNetwork<S> {
    pub fn new(
        species_names: Vec<String>,
        complexes: StoichMatrix,
        kirchhoff: KirchhoffMatrix<S>,
    ) -> Result<Self, CrnError> {
        if species_names.len() != complexes.species_count() {
            return Err(CrnError::Dimension {
                expected: format!("{} species names", complexes.species_count()),
                found: format!("{}", species_names.len()),
            });
        }
        if kirchhoff.size() != complexes.complex_count() {
            return Err(CrnError::Dimension {
                expected: format!("{0}x{0} Kirchhoff matrix", complexes.complex_count()),
                found: format!("{0}x{0}", kirchhoff.size()),
            });
        }
        Ok(Self {
            species_names,
            complexes,
            kirchhoff,
        })
    }

    /// Network over default species names `X1..Xn`.
    pub fn with_default_names(
        complexes: StoichMatrix,
        kirchhoff: KirchhoffMatrix<S>,
    ) -> Result<Self, CrnError> {
        let names = default_species_names(complexes.species_count());
        Self::new(names, complexes, kirchhoff)
    }

    pub fn species_names(&self) -> &[String] {
        &self.species_names
    }

    pub fn species_count(&self) -> usize {
        self.complexes.species_count()
    }

    pub fn complex_count(&self) -> usize {
        self.complexes.complex_count()
    }

    pub fn complexes(&self) -> &StoichMatrix {
        &self.complexes
    }

    pub fn kirchhoff(&self) -> &KirchhoffMatrix<S> {
        &self.kirchhoff
    }

    /// Same complexes and species, different reactions.
    pub fn with_kirchhoff(&self, kirchhoff: KirchhoffMatrix<S>) -> Result<Self, CrnError> {
        Self::new(self.species_names.clone(), self.complexes.clone(), kirchhoff)
    }

    pub fn complex_label(&self, i: usize) -> String {
        self.complexes.complex(i).label(&self.species_names)
    }

    /// Renumbers complexes so that position `k` holds `order[k]`.
    ///
    /// `order` must be a permutation of `0..m`.
    pub fn reorder(&self, order: &[usize]) -> Result<Self, CrnError> {
        let m = self.complex_count();
        let distinct: BTreeSet<_> = order.iter().copied().collect();
        if order.len() != m || distinct.len() != m || order.iter().any(|&i| i >= m) {
            return Err(CrnError::Dimension {
                expected: format!("permutation of 0..{m}"),
                found: format!("{order:?}"),
            });
        }
        let columns = order.iter().map(|&i| self.complexes.complex(i).clone()).collect();
        let complexes = StoichMatrix::new(self.species_count(), columns)?;
        Self::new(self.species_names.clone(), complexes, self.kirchhoff.permuted(order))
    }

    /// Renumbers complexes to follow `target`, which must list the same set.
    pub fn reorder_to(&self, target: &[ComplexVector]) -> Result<Self, CrnError> {
        let order = target
            .iter()
            .map(|c| {
                self.complexes.position(c).ok_or_else(|| CrnError::Dimension {
                    expected: String::from("complex present in the network"),
                    found: format!("{c}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.reorder(&order)
    }

    pub fn graph(&self) -> ReactionGraph {
        ReactionGraph::new(self.complex_count(), self.kirchhoff.support())
    }

    pub fn to_f64(&self) -> ReactionNetwork<f64> {
        ReactionNetwork {
            species_names: self.species_names.clone(),
            complexes: self.complexes.clone(),
            kirchhoff: self.kirchhoff.to_f64(),
        }
    }
}

pub(crate) fn default_species_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("X{i}")).collect()
}

/// Mass-action monomials `psi_j(x) = prod_i x_i^Y[i,j]`, with `0^0 = 1`.
pub fn psi(y: &StoichMatrix, x: &[f64]) -> Result<Vec<f64>, CrnError> {
    if x.len() != y.species_count() {
        return Err(CrnError::Dimension {
            expected: format!("{} concentrations", y.species_count()),
            found: format!("{}", x.len()),
        });
    }
    Ok(y.complexes()
        .iter()
        .map(|c| {
            c.coefficients()
                .iter()
                .zip(x)
                .fold(1.0, |acc, (&e, &xi)| acc * int_pow(xi, e))
        })
        .collect())
}

fn int_pow(base: f64, exp: u32) -> f64 {
    let mut out = 1.0;
    for _ in 0..exp {
        out *= base;
    }
    out
}

/// `M = Y * A_k`, the `n x m` matrix held fixed across realizations.
pub fn coefficient_matrix<S: Scalar>(net: &ReactionNetwork<S>) -> Matrix<S> {
    let n = net.species_count();
    let m = net.complex_count();
    let a = net.kirchhoff.matrix();
    let mut out = Matrix::zeros(n, m);
    for s in 0..n {
        for j in 0..m {
            let mut acc = S::zero();
            for i in 0..m {
                let y = net.complexes.complex(i).coefficients()[s];
                if y != 0 {
                    acc = acc + S::from_u32(y).expect("stoichiometric coefficient fits") * a[(i, j)];
                }
            }
            out[(s, j)] = acc;
        }
    }
    out
}

/// Whether two networks generate the same polynomial right-hand side,
/// comparing aggregated monomial coefficients within `tol`.
pub fn dynamically_equivalent<S: Scalar>(
    a: &ReactionNetwork<S>,
    b: &ReactionNetwork<S>,
    tol: S,
) -> Result<bool, CrnError> {
    if a.species_count() != b.species_count() {
        return Err(CrnError::SpeciesMismatch(a.species_count(), b.species_count()));
    }
    let fa = polynomial::aggregate(a);
    let fb = polynomial::aggregate(b);
    let zero = alloc::vec![S::zero(); a.species_count()];
    let keys: BTreeSet<&ComplexVector> = fa.keys().chain(fb.keys()).collect();
    let equal = keys.into_iter().all(|k| {
        let ca = fa.get(k).unwrap_or(&zero);
        let cb = fb.get(k).unwrap_or(&zero);
        ca.iter().zip(cb).all(|(&x, &y)| (x - y).abs() <= tol)
    });
    Ok(equal)
}

/// Deficiency `m' - l - s` over the non-isolated complexes.
///
/// The rank `s` of the reaction vectors is computed exactly.
pub fn deficiency<S: Scalar>(net: &ReactionNetwork<S>) -> usize {
    let support = net.kirchhoff.support();
    if support.is_empty() {
        return 0;
    }
    let graph = ReactionGraph::new(net.complex_count(), support.clone());
    let non_isolated: BTreeSet<usize> = support.iter().flat_map(|e| [e.source, e.target]).collect();
    let linkage_classes = graph.linkage_classes().into_iter().filter(|c| c.len() > 1).count();
    let vectors: Vec<Vec<i64>> = support
        .iter()
        .map(|e| net.complexes.complex(e.target).difference(net.complexes.complex(e.source)))
        .collect();
    let rank = integer_rank(&vectors);
    (non_isolated.len() - linkage_classes).saturating_sub(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    pub(crate) fn example1() -> ReactionNetwork<f64> {
        let y = StoichMatrix::new(
            2,
            [[1, 2], [1, 0], [2, 1], [0, 3], [1, 3], [1, 1], [3, 1]]
                .iter()
                .map(|c| ComplexVector::new(c.to_vec()))
                .collect(),
        )
        .unwrap();
        let a = KirchhoffMatrix::from_rates(7, [(0, 1, 1.5), (2, 3, 1.0), (4, 5, 1.0), (5, 6, 1.0)])
            .unwrap();
        ReactionNetwork::with_default_names(y, a).unwrap()
    }

    fn example1_dense() -> Matrix<f64> {
        Matrix::from_rows(&[
            vec![-1.25, 0.0, 0.1, 0.0, 0.1, 0.1, 0.0],
            vec![0.55, 0.0, 0.1, 0.0, 0.4333, 0.5, 0.0],
            vec![0.1, 0.0, -1.4, 0.0, 0.1, 0.1, 0.0],
            vec![0.3, 0.0, 0.8, 0.0, 0.3, 0.1, 0.0],
            vec![0.1, 0.0, 0.2, 0.0, -1.1333, 0.1, 0.0],
            vec![0.1, 0.0, 0.1, 0.0, 0.1, -1.9, 0.0],
            vec![0.1, 0.0, 0.1, 0.0, 0.1, 1.0, 0.0],
        ])
        .unwrap()
    }

    fn example1_final() -> Matrix<f64> {
        Matrix::from_rows(&[
            vec![-3.2, 0.0, 1.8, 0.0, 0.1, 0.0, 0.0],
            vec![0.0; 7],
            vec![0.0, 0.0, -2.0, 0.0, 0.0, 2.0, 0.0],
            vec![0.0; 7],
            vec![0.1, 0.0, 0.1, 0.0, -1.05, 0.0, 0.0],
            vec![3.1, 0.0, 0.1, 0.0, 0.95, -2.0, 0.0],
            vec![0.0; 7],
        ])
        .unwrap()
    }

    fn with_matrix(net: &ReactionNetwork, m: Matrix<f64>) -> ReactionNetwork {
        net.with_kirchhoff(KirchhoffMatrix::from_matrix(m, 1e-6).unwrap()).unwrap()
    }

    #[test]
    fn reference_dense_matrix_is_kirchhoff() {
        assert!(validate_kirchhoff(&example1_dense(), 1e-6).unwrap().is_valid());
    }

    #[test]
    fn one_by_one_zero_is_kirchhoff() {
        assert!(validate_kirchhoff(&Matrix::zeros(1, 1), 1e-9).unwrap().is_valid());
    }

    #[test]
    fn column_sum_violation_reported() {
        let a = Matrix::from_rows(&[vec![-1.0, 0.0], vec![0.5, 0.0]]).unwrap();
        let report = validate_kirchhoff(&a, 1e-9).unwrap();
        assert!(!report.is_valid());
        assert_eq!(report.column_sums, vec![0]);
        assert!(report.negative_off_diagonal.is_empty());
    }

    #[test]
    fn non_square_rejected() {
        let a = Matrix::from_rows(&[vec![0.0, 0.0]]).unwrap();
        assert!(matches!(validate_kirchhoff(&a, 1e-9), Err(CrnError::Dimension { .. })));
    }

    #[test]
    fn psi_examples() {
        let y = StoichMatrix::new(2, vec![ComplexVector::new(vec![1, 2]), ComplexVector::new(vec![0, 0])])
            .unwrap();
        assert_eq!(psi(&y, &[2.0, 3.0]).unwrap(), vec![18.0, 1.0]);
        assert_eq!(psi(&y, &[0.0, 0.0]).unwrap(), vec![0.0, 1.0]);
        let net = example1();
        assert_eq!(psi(net.complexes(), &[1.0, 1.0]).unwrap(), vec![1.0; 7]);
        assert!(psi(&y, &[1.0]).is_err());
    }

    #[test]
    fn coefficient_matrix_example1() {
        // hand multiplication of Y with the four input reactions
        let m = coefficient_matrix(&example1());
        let expected = Matrix::from_rows(&[
            vec![0.0, 0.0, -2.0, 0.0, 0.0, 2.0, 0.0],
            vec![-3.0, 0.0, 2.0, 0.0, -2.0, 0.0, 0.0],
        ])
        .unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn coefficient_matrix_of_zero_kirchhoff() {
        let net = example1();
        let zero = net.with_kirchhoff(KirchhoffMatrix::zeros(7)).unwrap();
        assert!(coefficient_matrix(&zero).as_slice().iter().all(|&v| v == 0.0));
    }

    /// The printed dense matrix has rate 0.55 for `C1 -> C2`; matching
    /// `M` in column 1 needs 1.55 (and diagonal -2.25).
    fn example1_dense_corrected() -> Matrix<f64> {
        let mut a = example1_dense();
        a[(1, 0)] = 1.55;
        a[(0, 0)] = -2.25;
        a
    }

    #[test]
    fn printed_dense_matrix_misses_column_one() {
        let net = example1();
        let m0 = coefficient_matrix(&net);
        let m1 = coefficient_matrix(&with_matrix(&net, example1_dense()));
        assert!((m0[(1, 0)] - m1[(1, 0)] + 2.0).abs() < 1e-9);
        for j in 1..7 {
            for s in 0..2 {
                assert!((m0[(s, j)] - m1[(s, j)]).abs() < 1e-3);
            }
        }
    }

    #[test]
    fn reference_realizations_are_equivalent() {
        let net = example1();
        let m0 = coefficient_matrix(&net);
        for a in [example1_dense_corrected(), example1_final()] {
            let other = with_matrix(&net, a);
            let m1 = coefficient_matrix(&other);
            for (x, y) in m0.as_slice().iter().zip(m1.as_slice()) {
                assert!((x - y).abs() < 1e-3, "{x} vs {y}");
            }
            assert!(dynamically_equivalent(&net, &other, 1e-3).unwrap());
        }
    }

    #[test]
    fn perturbed_rate_breaks_equivalence() {
        let net = example1();
        let tol = 1e-6;
        let rates: Vec<_> = net
            .kirchhoff()
            .reactions()
            .into_iter()
            .map(|(s, t, r)| if s == 0 { (s, t, r + 2.0 * tol) } else { (s, t, r) })
            .collect();
        let other = net.with_kirchhoff(KirchhoffMatrix::from_rates(7, rates).unwrap()).unwrap();
        assert!(!dynamically_equivalent(&net, &other, tol).unwrap());
        assert!(dynamically_equivalent(&net, &net, 0.0).unwrap());
    }

    #[test]
    fn species_mismatch_is_error() {
        let a = example1();
        let y = StoichMatrix::new(1, vec![ComplexVector::new(vec![1]), ComplexVector::new(vec![0])]).unwrap();
        let b = ReactionNetwork::with_default_names(y, KirchhoffMatrix::<f64>::zeros(2)).unwrap();
        assert!(matches!(dynamically_equivalent(&a, &b, 1e-9), Err(CrnError::SpeciesMismatch(2, 1))));
    }

    #[test]
    fn deficiency_of_reversible_pair() {
        let y = StoichMatrix::new(2, vec![ComplexVector::new(vec![1, 0]), ComplexVector::new(vec![0, 1])]).unwrap();
        let a = KirchhoffMatrix::from_rates(2, [(0, 1, 1.0), (1, 0, 2.0)]).unwrap();
        let net = ReactionNetwork::with_default_names(y, a).unwrap();
        assert_eq!(deficiency(&net), 0);
    }

    #[test]
    fn deficiency_of_example1_final() {
        // 4 non-isolated complexes, one linkage class; edges 1->6 and 3->1 give
        // reaction vectors (0,-1) and (-1,1) with determinant -1, so s = 2
        let net = with_matrix(&example1(), example1_final());
        assert_eq!(net.kirchhoff().reaction_count(), 8);
        assert_eq!(deficiency(&net), 1);
    }

    #[test]
    fn deficiency_without_reactions_is_zero() {
        let net = example1();
        let zero = net.with_kirchhoff(KirchhoffMatrix::zeros(7)).unwrap();
        assert_eq!(deficiency(&zero), 0);
    }

    #[test]
    fn from_rates_rejects_bad_reactions() {
        assert!(matches!(
            KirchhoffMatrix::from_rates(2, [(0, 0, 1.0)]),
            Err(CrnError::SelfLoop { .. })
        ));
        assert!(matches!(
            KirchhoffMatrix::from_rates(2, [(0, 1, 0.0)]),
            Err(CrnError::NonPositiveRate { .. })
        ));
        assert!(matches!(
            KirchhoffMatrix::from_rates(2, [(0, 2, 1.0)]),
            Err(CrnError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn duplicate_complexes_rejected() {
        let cols = vec![ComplexVector::new(vec![1]), ComplexVector::new(vec![1])];
        assert_eq!(
            StoichMatrix::new(1, cols),
            Err(CrnError::DuplicateComplex { first: 0, second: 1 })
        );
    }

    #[test]
    fn labels_use_additive_notation() {
        let names = ["A", "B"];
        assert_eq!(ComplexVector::new(vec![1, 2]).label(&names), "A+2B");
        assert_eq!(ComplexVector::new(vec![0, 0]).label(&names), "0");
        assert_eq!(ComplexVector::new(vec![3, 0]).to_string(), "3X1");
    }

    #[test]
    fn reorder_permutes_consistently() {
        let net = example1();
        let order = [6, 5, 4, 3, 2, 1, 0];
        let r = net.reorder(&order).unwrap();
        assert_eq!(r.complexes().complex(0), net.complexes().complex(6));
        assert_eq!(r.kirchhoff().rate(6, 5), net.kirchhoff().rate(0, 1));
        assert!(dynamically_equivalent(&net, &r, 0.0).unwrap());
        assert!(net.reorder(&[0, 0, 1, 2, 3, 4, 5]).is_err());
    }
}
