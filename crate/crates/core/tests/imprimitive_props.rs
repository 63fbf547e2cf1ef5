use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sympar::catalogue::{
    build_imprimitive, build_sl2_subgroup, imprimitive_order, predicted_imprimitive_stabilizer_order, Sl2Kind,
};
use sympar::cyclo::Cyclotomic;
use sympar::linalg::{ExactMatrix, ExactVector};
use sympar::matgroup::FiniteMatrixGroup;
use sympar::reflection::steinberg_check;

/// `(K, generators of H)` with `|K| ≤ 24` and `H ⊇ [K, K]`.
fn families() -> Vec<(Sl2Kind, &'static str, FiniteMatrixGroup, Vec<ExactMatrix>)> {
    let minus = ExactMatrix::scalar(2, &Cyclotomic::from_i64(-1));
    let mut out = Vec::new();
    for kind in [Sl2Kind::Cyclic(2), Sl2Kind::Cyclic(3), Sl2Kind::Cyclic(4)] {
        let k = build_sl2_subgroup(kind).unwrap();
        out.push((kind, "trivial", k.clone(), Vec::new()));
        out.push((kind, "K", k.clone(), k.gens().to_vec()));
    }
    for kind in [Sl2Kind::BinaryDihedral(2), Sl2Kind::BinaryDihedral(3)] {
        let k = build_sl2_subgroup(kind).unwrap();
        out.push((kind, "K", k.clone(), k.gens().to_vec()));
    }
    let q8 = build_sl2_subgroup(Sl2Kind::BinaryDihedral(2)).unwrap();
    out.push((Sl2Kind::BinaryDihedral(2), "centre", q8, vec![minus]));
    let t = build_sl2_subgroup(Sl2Kind::BinaryTetrahedral).unwrap();
    out.push((Sl2Kind::BinaryTetrahedral, "K", t.clone(), t.gens().to_vec()));
    out
}

fn slot(j: i64) -> ExactVector {
    ExactVector::from_i64(&[j + 1, 2 * j + 3])
}

fn assemble(slots: &[ExactVector]) -> ExactVector {
    let n = slots.len();
    let mut v = vec![Cyclotomic::zero(); 2 * n];
    for (i, w) in slots.iter().enumerate() {
        v[i] = w[0].clone();
        v[n + i] = w[1].clone();
    }
    ExactVector(v)
}

fn check(g: &FiniteMatrixGroup, k: &[ExactMatrix], h_order: u128, n: usize, v: &ExactVector) {
    let stab = g.stabilizer(v, 0).unwrap();
    assert_eq!(stab.order().unwrap(), predicted_imprimitive_stabilizer_order(k, h_order, n, v), "{v:?}");
    assert!(steinberg_check(&stab).unwrap(), "{v:?}");
}

#[test]
fn order_formula_matches_enumeration() {
    for (kind, h_name, k, h_gens) in families() {
        let h_order = FiniteMatrixGroup::new(2, h_gens.clone()).unwrap().order().unwrap();
        for n in 1..=3 {
            if kind == Sl2Kind::BinaryTetrahedral && n == 3 {
                continue;
            }
            let g = build_imprimitive(&k, &h_gens, n).unwrap();
            let expected = imprimitive_order(kind.order(), h_order, n);
            assert_eq!(g.enumerate().unwrap().len() as u128, expected, "G_{n}({kind:?}, {h_name})");
        }
    }
}

#[test]
fn designed_corner_cases() {
    for (kind, _, k, h_gens) in families() {
        let h_order = FiniteMatrixGroup::new(2, h_gens.clone()).unwrap().order().unwrap();
        let elements: Vec<ExactMatrix> = k.enumerate().unwrap().iter().collect();
        for n in 2..=3 {
            if kind == Sl2Kind::BinaryTetrahedral && n == 3 {
                continue;
            }
            let g = build_imprimitive(&k, &h_gens, n).unwrap();
            let zero = ExactVector::zeros(2);
            let other = elements.last().unwrap().mul_vec(&slot(0));
            let cases = [
                vec![zero.clone(); n],
                (0..n as i64).map(slot).collect(),
                (0..n).map(|i| if i % 2 == 0 { slot(0) } else { other.clone() }).collect(),
                (0..n).map(|i| if i == 0 { zero.clone() } else { slot(0) }).collect::<Vec<_>>(),
                (0..n).map(|i| if i + 1 == n { slot(1) } else { zero.clone() }).collect(),
            ];
            for slots in &cases {
                check(&g, &elements, h_order, n, &assemble(slots));
            }
        }
    }
}

#[test]
fn documented_examples() {
    let c2 = build_sl2_subgroup(Sl2Kind::Cyclic(2)).unwrap();
    let g = build_imprimitive(&c2, &[], 2).unwrap();
    assert_eq!(g.order().unwrap(), 4);
    let w = slot(0);
    assert_eq!(g.stabilizer(&assemble(&[w.clone(), w]), 0).unwrap().order().unwrap(), 2);
    let c4 = build_sl2_subgroup(Sl2Kind::Cyclic(4)).unwrap();
    let g = build_imprimitive(&c4, c4.gens(), 3).unwrap();
    assert_eq!(g.stabilizer(&assemble(&[slot(0), slot(1), slot(2)]), 0).unwrap().order().unwrap(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn stabilizers_follow_the_block_structure(fi in any::<prop::sample::Index>(), n in 1usize..=3, seed in any::<u64>()) {
        let all = families();
        let (kind, _, k, h_gens) = &all[fi.index(all.len())];
        prop_assume!(!(*kind == Sl2Kind::BinaryTetrahedral && n == 3));
        let h_order = FiniteMatrixGroup::new(2, h_gens.clone()).unwrap().order().unwrap();
        let elements: Vec<ExactMatrix> = k.enumerate().unwrap().iter().collect();
        let g = build_imprimitive(k, h_gens, n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let slots: Vec<ExactVector> = (0..n)
            .map(|_| match rng.gen_range(0..4) {
                0 => ExactVector::zeros(2),
                1 => slot(1),
                2 => slot(2),
                _ => elements[rng.gen_range(0..elements.len())].mul_vec(&slot(1)),
            })
            .collect();
        check(&g, &elements, h_order, n, &assemble(&slots));
    }
}
