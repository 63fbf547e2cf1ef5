mod common;

use common::{pool, rng, standard, vector_fixed_by_random_elements};
use proptest::prelude::*;
use sympar::linalg::{averaging_projector, fixed_space, ExactMatrix, Subspace};
use sympar::matgroup::Normalize;
use sympar::reflection::steinberg_check;

fn case() -> impl Strategy<Value = (usize, usize, u64)> {
    (0..pool().len(), 0usize..4, any::<u64>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    /// The averaging projector of a stabilizer projects onto its fixed space
    /// along the symplectic complement, and both pieces are symplectic.
    #[test]
    fn averaging_projector_splits_off_the_fixed_space((gi, k, seed) in case()) {
        let (_, g) = &pool()[gi];
        let v = vector_fixed_by_random_elements(g, k, &mut rng(seed));
        let h = g.stabilizer(&v, seed).unwrap();
        let elements: Vec<ExactMatrix> = h.enumerate().unwrap().iter().collect();
        let p = averaging_projector(&elements).unwrap();
        let sp = standard(g);
        let fixed = fixed_space(g.dim(), h.gens()).unwrap();
        let complement = sp.complement(&fixed).unwrap();
        prop_assert_eq!(&p.mul(&p), &p);
        prop_assert_eq!(Subspace::row_space(&p.transpose()), fixed.clone());
        prop_assert_eq!(p.kernel(), complement.clone());
        prop_assert!(sp.is_symplectic_subspace(&fixed));
        prop_assert!(sp.is_symplectic_subspace(&complement));
        prop_assert!(fixed.contains(&v));
    }

    #[test]
    fn orbit_times_stabilizer_is_the_group_order((gi, k, seed) in case()) {
        let (_, g) = &pool()[gi];
        let v = vector_fixed_by_random_elements(g, k, &mut rng(seed));
        let h = g.stabilizer(&v, seed).unwrap();
        let orbit = g.orbit(&v, Normalize::None).unwrap();
        prop_assert_eq!(orbit.len() as u128 * h.order().unwrap(), g.order().unwrap());
        prop_assert!(h.gens().iter().all(|x| x.mul_vec(&v) == v));
    }

    /// A parabolic subgroup is the pointwise stabilizer of its own fixed
    /// space, and it is generated by its reflections.
    #[test]
    fn parabolics_are_closed_and_generated_by_reflections((gi, k, seed) in case()) {
        let (_, g) = &pool()[gi];
        let v = vector_fixed_by_random_elements(g, k, &mut rng(seed));
        let h = g.stabilizer(&v, seed).unwrap();
        let fixed = fixed_space(g.dim(), h.gens()).unwrap();
        let again = g.pointwise_stabilizer(&fixed, seed).unwrap();
        prop_assert_eq!(again.order().unwrap(), h.order().unwrap());
        prop_assert!(again.gens().iter().all(|x| h.is_member(x).unwrap()));
        prop_assert!(steinberg_check(&h).unwrap());
    }
}
