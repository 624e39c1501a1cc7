//! Four-species kinetic system with 19 complexes, checked against the
//! reference dense realization and its strong components.

use crn_realize_core::{
    canonical_realization, deficiency, find_constr_dense_realization, find_cross_component_edges,
    find_weakly_reversible_realization, strong_components, RealizationStatus, ComplexVector, EdgeSet, KineticPolynomialSystem, KirchhoffMatrix,
    ReactionGraph, ReactionNetwork, RealizationOptions,
};

/// `(equation, exponent, coefficient)` of every term.
const TERMS: &[(usize, [u32; 4], f64)] = &[
    (0, [0, 0, 2, 0], 1.0),
    (0, [1, 1, 0, 0], -1.0),
    (0, [0, 0, 1, 1], 1.0),
    (0, [1, 2, 1, 0], -2.0),
    (1, [0, 0, 2, 0], 1.0),
    (1, [1, 1, 0, 0], -1.0),
    (1, [0, 0, 1, 1], 2.0),
    (1, [1, 2, 1, 0], -4.0),
    (2, [0, 0, 2, 0], -2.0),
    (2, [1, 1, 0, 0], 1.0),
    (2, [1, 2, 1, 0], -1.0),
    (2, [0, 0, 0, 3], 2.0),
    (3, [1, 1, 0, 0], 1.0),
    (3, [0, 0, 1, 1], -1.0),
    (3, [1, 2, 1, 0], 4.0),
    (3, [0, 0, 0, 3], -3.0),
];

/// Complexes in the numbering used by the reference edge lists.
const COMPLEXES: [[u32; 4]; 19] = [
    [0, 0, 2, 0],
    [1, 0, 2, 0],
    [1, 1, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 1, 1],
    [1, 0, 1, 1],
    [1, 2, 1, 0],
    [0, 2, 1, 0],
    [0, 1, 2, 0],
    [1, 0, 0, 0],
    [0, 1, 1, 1],
    [1, 1, 1, 0],
    [0, 0, 1, 0],
    [1, 2, 0, 0],
    [0, 0, 0, 3],
    [0, 0, 1, 3],
    [1, 1, 0, 1],
    [1, 2, 1, 1],
    [0, 0, 0, 2],
];

/// Reference dense realization as `(source, target, rate)`, 1-based.
const DENSE: &[(usize, usize, f64)] = &[
    (5, 1, 0.5), (7, 1, 0.1), (11, 1, 0.1), (15, 1, 0.8), (1, 2, 0.1), (3, 2, 0.1),
    (5, 2, 0.1), (7, 2, 0.1), (12, 2, 0.3), (1, 3, 0.1), (5, 3, 0.1), (7, 3, 0.1),
    (12, 3, 0.1), (1, 4, 0.1), (3, 4, 0.4), (5, 4, 0.1), (7, 4, 0.1), (11, 4, 0.1),
    (3, 5, 0.1), (7, 5, 0.1), (11, 5, 0.1), (15, 5, 0.1), (3, 6, 0.1), (5, 6, 0.1),
    (7, 6, 0.1), (1, 7, 0.1), (3, 7, 0.1), (5, 7, 0.2), (12, 7, 0.3), (1, 8, 0.1),
    (3, 8, 0.1), (5, 8, 0.3), (7, 8, 0.3), (11, 8, 1.2), (1, 9, 0.1), (5, 9, 0.1),
    (7, 9, 0.1), (11, 9, 0.2), (1, 10, 0.5), (3, 10, 0.8), (5, 10, 0.1), (7, 10, 0.1),
    (12, 10, 0.1), (3, 11, 0.1), (5, 11, 0.1), (7, 11, 0.1), (1, 12, 0.1), (3, 12, 0.1),
    (5, 12, 0.1), (7, 12, 0.1), (1, 13, 0.1), (3, 13, 0.1), (5, 13, 0.1), (7, 13, 0.1),
    (11, 13, 0.1), (15, 13, 0.1), (1, 14, 0.1), (3, 14, 0.1), (5, 14, 0.1), (7, 14, 0.1),
    (12, 14, 0.1), (3, 15, 0.1), (5, 15, 0.1), (7, 15, 0.7), (11, 15, 0.1), (5, 16, 0.25),
    (7, 16, 0.3), (11, 16, 0.7), (15, 16, 0.2), (3, 17, 0.1), (5, 17, 0.1), (7, 17, 0.1),
    (3, 18, 0.1), (5, 18, 0.1), (7, 18, 0.4), (3, 19, 0.1), (5, 19, 0.1), (7, 19, 0.1),
    (11, 19, 0.1), (15, 19, 0.1),
];

fn system() -> KineticPolynomialSystem {
    let mut f = KineticPolynomialSystem::new(4);
    for &(eq, exponent, c) in TERMS {
        f.add_term(eq, ComplexVector::new(exponent.to_vec()), c).unwrap();
    }
    f
}

fn network() -> ReactionNetwork {
    let order: Vec<ComplexVector> = COMPLEXES.iter().map(|c| ComplexVector::new(c.to_vec())).collect();
    canonical_realization(&system()).unwrap().reorder_to(&order).unwrap()
}

fn reference_dense() -> KirchhoffMatrix {
    KirchhoffMatrix::from_rates(19, DENSE.iter().map(|&(s, t, r)| (s - 1, t - 1, r))).unwrap()
}

#[test]
fn canonical_realization_has_nineteen_complexes_and_sixteen_reactions() {
    let net = canonical_realization(&system()).unwrap();
    assert_eq!(net.complex_count(), 19);
    assert_eq!(net.kirchhoff().reaction_count(), 16);
}

#[test]
fn reference_dense_realization_is_equivalent() {
    let net = network();
    let dense = net.with_kirchhoff(reference_dense()).unwrap();
    assert!(crn_realize_core::dynamically_equivalent(&net, &dense, 1e-9).unwrap());
}

#[test]
fn reference_dense_strong_components() {
    let graph = ReactionGraph::new(19, reference_dense().support());
    let scc = strong_components(&graph);
    assert_eq!(scc.len(), 13);
    let nontrivial: Vec<_> = scc.nontrivial().cloned().collect();
    assert_eq!(nontrivial, vec![vec![0, 2, 4, 6, 10, 11, 14]]);
    assert_eq!(find_cross_component_edges(&reference_dense()).len(), 53);
}

#[test]
fn computed_dense_support_matches_reference() {
    let net = network();
    let dense = find_constr_dense_realization(&net, &EdgeSet::new(), &RealizationOptions::default()).unwrap();
    assert_eq!(dense.support(), reference_dense().support());
    let realized = net.with_kirchhoff(dense).unwrap();
    assert!(crn_realize_core::dynamically_equivalent(&net, &realized, 1e-6).unwrap());
}

#[test]
fn weakly_reversible_search_ends_on_six_edges() {
    let net = network();
    let out = find_weakly_reversible_realization(&net, &RealizationOptions::default()).unwrap();
    assert_eq!(out.status, RealizationStatus::Found);
    let sizes: Vec<_> = out.trace.iter().map(|r| (r.dense_support.len(), r.cut_set.len())).collect();
    assert_eq!(sizes, vec![(80, 53), (15, 4), (6, 0)]);
    let expected: EdgeSet = [(1, 3), (3, 5), (5, 7), (7, 5), (7, 15), (15, 1)]
        .iter()
        .map(|&(s, t)| (s - 1, t - 1))
        .collect();
    assert_eq!(out.kirchhoff.support(), expected);
    let realized = net.with_kirchhoff(out.kirchhoff).unwrap();
    assert_eq!(deficiency(&realized), 0);
    assert!(crn_realize_core::dynamically_equivalent(&net, &realized, 1e-6).unwrap());
}
