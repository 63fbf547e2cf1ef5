#![allow(dead_code)]

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sympar::catalogue::{build_gmpn, build_imprimitive, build_primitive, build_sl2_subgroup, double, quaternion_imprimitive, Sl2Kind};
use sympar::cyclo::Cyclotomic;
use sympar::linalg::{ExactVector, Subspace, SymplecticSpace};
use sympar::matgroup::FiniteMatrixGroup;

/// Small symplectic reflection groups, fully enumerable.
pub fn pool() -> &'static [(String, FiniteMatrixGroup)] {
    static POOL: OnceLock<Vec<(String, FiniteMatrixGroup)>> = OnceLock::new();
    POOL.get_or_init(|| {
        let c4 = build_sl2_subgroup(Sl2Kind::Cyclic(4)).unwrap();
        let groups = vec![
            ("W(Q)".to_string(), build_primitive("Q").unwrap().group),
            ("W(S1)".to_string(), build_primitive("S1").unwrap().group),
            ("G(3,3,3) doubled".to_string(), double(&build_gmpn(3, 3, 3).unwrap()).unwrap()),
            ("G(4,2,2) doubled".to_string(), double(&build_gmpn(4, 2, 2).unwrap()).unwrap()),
            ("G_2(Q8, centre)".to_string(), quaternion_imprimitive(2).unwrap()),
            ("G_3(C4, C4)".to_string(), build_imprimitive(&c4, c4.gens(), 3).unwrap()),
        ];
        for (_, g) in &groups {
            g.enumerate().unwrap();
        }
        groups
    })
}

/// A vector fixed by `k` random elements of `g`: a random integer combination
/// of a basis of their common fixed space, so stabilizers of every size occur.
pub fn vector_fixed_by_random_elements(g: &FiniteMatrixGroup, k: usize, rng: &mut ChaCha8Rng) -> ExactVector {
    let elements = g.enumerate().unwrap();
    let mut space = Subspace::full(g.dim());
    for _ in 0..k {
        let e = elements.get(rng.gen_range(0..elements.len()));
        space = space.intersect_kernel(&e.sub_identity()).unwrap();
    }
    let coeffs: Vec<Cyclotomic> = (0..space.dim()).map(|_| Cyclotomic::from_i64(rng.gen_range(-4..=4))).collect();
    if coeffs.is_empty() {
        ExactVector::zeros(g.dim())
    } else {
        space.combine(&coeffs)
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn standard(g: &FiniteMatrixGroup) -> SymplecticSpace {
    SymplecticSpace::standard(g.dim())
}
