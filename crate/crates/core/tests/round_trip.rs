use crn_realize_core::{
    as_polynomial, canonical_realization, ComplexVector, KineticPolynomialSystem, Rational,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random kinetic system: a negative coefficient in equation `i` only on
/// monomials containing `x_i`.
fn random_system(rng: &mut ChaCha8Rng) -> KineticPolynomialSystem<Rational> {
    let n = rng.gen_range(1..=4);
    let mut f = KineticPolynomialSystem::new(n);
    for _ in 0..rng.gen_range(1..=6) {
        let exponent: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        for i in 0..n {
            let low = if exponent[i] > 0 { -3 } else { 0 };
            let c = rng.gen_range(low..=3);
            if c != 0 {
                f.add_term(i, ComplexVector::new(exponent.clone()), Rational::from_integer(c))
                    .unwrap();
            }
        }
    }
    f
}

#[test]
fn canonical_realization_round_trips_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..100 {
        let f = random_system(&mut rng);
        assert!(f.is_kinetic(), "case {case}");
        let net = canonical_realization(&f).unwrap();
        assert_eq!(as_polynomial(&net), f, "case {case}");
    }
}
