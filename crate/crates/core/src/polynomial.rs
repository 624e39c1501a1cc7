//! Kinetic polynomial right-hand sides and the inverse kinetic construction.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::network::{
    default_species_names, CrnError, ComplexVector, KirchhoffMatrix, ReactionNetwork, StoichMatrix,
};
use crate::Scalar;

/// Polynomial vector field `f(x)` stored as monomial exponent -> coefficient
/// vector, where entry `i` of the coefficient vector belongs to `dx_i/dt`.
///
/// Terms keep their insertion order; equality ignores it.
#[derive(Debug, Clone)]
pub struct KineticPolynomialSystem<S = f64> {
    species: usize,
    terms: Vec<(ComplexVector, Vec<S>)>,
    index: BTreeMap<ComplexVector, usize>,
}

impl<S: Scalar> KineticPolynomialSystem<S> {
    pub fn new(species: usize) -> Self {
        Self {
            species,
            terms: Vec::new(),
            index: BTreeMap::new(),
        }
    }

    pub fn species_count(&self) -> usize {
        self.species
    }

    /// Adds `coefficient * x^exponent` to `dx_equation/dt`, merging with an
    /// existing monomial. Terms that cancel to zero are removed.
    pub fn add_term(
        &mut self,
        equation: usize,
        exponent: ComplexVector,
        coefficient: S,
    ) -> Result<(), CrnError> {
        if equation >= self.species {
            return Err(CrnError::IndexOutOfRange {
                index: equation,
                count: self.species,
            });
        }
        if exponent.len() != self.species {
            return Err(CrnError::Dimension {
                expected: alloc::format!("exponent of length {}", self.species),
                found: alloc::format!("{}", exponent.len()),
            });
        }
        let slot = match self.index.get(&exponent) {
            Some(&slot) => slot,
            None => {
                self.index.insert(exponent.clone(), self.terms.len());
                self.terms.push((exponent, vec![S::zero(); self.species]));
                self.terms.len() - 1
            }
        };
        let c = &mut self.terms[slot].1[equation];
        *c = *c + coefficient;
        if self.terms[slot].1.iter().all(|v| v.is_zero()) {
            self.remove_slot(slot);
        }
        Ok(())
    }

    fn remove_slot(&mut self, slot: usize) {
        let (key, _) = self.terms.remove(slot);
        self.index.remove(&key);
        for v in self.index.values_mut() {
            if *v > slot {
                *v -= 1;
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ComplexVector, &[S])> {
        self.terms.iter().map(|(e, c)| (e, c.as_slice()))
    }

    pub fn term(&self, exponent: &ComplexVector) -> Option<&[S]> {
        self.index.get(exponent).map(|&i| self.terms[i].1.as_slice())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluates `f(x)`.
    pub fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.species];
        for (e, c) in self.terms() {
            let monomial = e
                .coefficients()
                .iter()
                .zip(x)
                .fold(1.0, |acc, (&k, &xi)| acc * (0..k).fold(1.0, |p, _| p * xi));
            for (o, ci) in out.iter_mut().zip(c) {
                *o += ci.to_f64_lossy() * monomial;
            }
        }
        out
    }

    /// Terms with a negative coefficient in an equation whose species is
    /// absent from the monomial, as `(exponent, species)`.
    pub fn negative_cross_effects(&self) -> Vec<(ComplexVector, usize)> {
        let mut out = Vec::new();
        for (e, c) in self.terms() {
            for (i, ci) in c.iter().enumerate() {
                if *ci < S::zero() && e.coefficients()[i] == 0 {
                    out.push((e.clone(), i));
                }
            }
        }
        out
    }

    pub fn is_kinetic(&self) -> bool {
        self.negative_cross_effects().is_empty()
    }
}

impl<S: Scalar> PartialEq for KineticPolynomialSystem<S> {
    fn eq(&self, other: &Self) -> bool {
        self.species == other.species
            && self.terms.len() == other.terms.len()
            && self.terms().all(|(e, c)| other.term(e) == Some(c))
    }
}

/// Sums columns of `Y * A_k` by exponent vector, keeping exact zeros.
pub(crate) fn aggregate<S: Scalar>(net: &ReactionNetwork<S>) -> BTreeMap<ComplexVector, Vec<S>> {
    let m = crate::network::coefficient_matrix(net);
    let n = net.species_count();
    let mut out: BTreeMap<ComplexVector, Vec<S>> = BTreeMap::new();
    for j in 0..net.complex_count() {
        let entry = out
            .entry(net.complexes().complex(j).clone())
            .or_insert_with(|| vec![S::zero(); n]);
        for (s, e) in entry.iter_mut().enumerate() {
            *e = *e + m[(s, j)];
        }
    }
    out
}

/// The polynomial right-hand side `Y * A_k * psi(x)` of a network.
///
/// Monomials appear in complex order; those whose coefficients are all at or
/// below [`Scalar::zero_tolerance`] are dropped.
pub fn as_polynomial<S: Scalar>(net: &ReactionNetwork<S>) -> KineticPolynomialSystem<S> {
    let sums = aggregate(net);
    let tol = S::zero_tolerance();
    let mut f = KineticPolynomialSystem::new(net.species_count());
    for complex in net.complexes().complexes() {
        let coeffs = &sums[complex];
        if f.term(complex).is_some() || coeffs.iter().all(|c| c.abs() <= tol) {
            continue;
        }
        f.index.insert(complex.clone(), f.terms.len());
        f.terms.push((complex.clone(), coeffs.clone()));
    }
    f
}

/// Inverse kinetic construction: one reaction `e -> e ± unit_i` with rate
/// `|c_i|` per nonzero coefficient.
///
/// Complexes are numbered in first-encounter order: walking the terms in
/// their stored order, the source monomial first, then its products by
/// ascending species index. Parallel reactions merge by summing rates.
pub fn canonical_realization<S: Scalar>(
    f: &KineticPolynomialSystem<S>,
) -> Result<ReactionNetwork<S>, CrnError> {
    if let Some((term, species)) = f.negative_cross_effects().into_iter().next() {
        return Err(CrnError::NotKinetic { term, species });
    }
    let n = f.species_count();
    let mut complexes: Vec<ComplexVector> = Vec::new();
    let mut lookup: BTreeMap<ComplexVector, usize> = BTreeMap::new();
    let mut intern = |c: ComplexVector| -> usize {
        *lookup.entry(c.clone()).or_insert_with(|| {
            complexes.push(c);
            complexes.len() - 1
        })
    };
    let mut reactions = Vec::new();
    for (exponent, coeffs) in f.terms() {
        let source = intern(exponent.clone());
        for (i, &c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut product = exponent.coefficients().to_vec();
            if c > S::zero() {
                product[i] += 1;
            } else {
                product[i] -= 1;
            }
            let target = intern(ComplexVector::new(product));
            reactions.push((source, target, c.abs()));
        }
    }
    if complexes.is_empty() {
        complexes.push(ComplexVector::zero(n));
    }
    let m = complexes.len();
    let y = StoichMatrix::new(n, complexes)?;
    let a = KirchhoffMatrix::from_rates(m, reactions)?;
    ReactionNetwork::new(default_species_names(n), y, a)
}
