use proptest::prelude::*;
use sympar::catalogue::{build_sl2_subgroup, Sl2Kind};
use sympar::linalg::{ExactMatrix, SymplecticSpace};
use sympar::matgroup::FiniteMatrixGroup;
use sympar::reflection::{is_symplectic_reflection, steinberg_check};

fn kinds() -> Vec<Sl2Kind> {
    let mut kinds: Vec<Sl2Kind> = (1..=12).map(Sl2Kind::Cyclic).collect();
    kinds.extend((1..=6).map(Sl2Kind::BinaryDihedral));
    kinds.extend([Sl2Kind::BinaryTetrahedral, Sl2Kind::BinaryOctahedral, Sl2Kind::BinaryIcosahedral]);
    kinds
}

#[test]
fn orders_and_symplecticity() {
    let sp = SymplecticSpace::standard(2);
    for kind in kinds() {
        let k = build_sl2_subgroup(kind).unwrap();
        assert_eq!(k.order().unwrap(), kind.order(), "{kind:?}");
        assert!(k.gens().iter().all(|g| sp.preserves(g)), "{kind:?}");
    }
}

/// In dimension two every nontrivial element of a finite subgroup of `SL₂`
/// is a symplectic reflection.
#[test]
fn every_nontrivial_element_is_a_reflection() {
    for kind in kinds() {
        let k = build_sl2_subgroup(kind).unwrap();
        for g in k.enumerate().unwrap().iter().filter(|g| !g.is_identity()) {
            assert!(is_symplectic_reflection(&g), "{kind:?}");
        }
    }
}

/// Every subgroup of a cyclic, binary dihedral or binary tetrahedral group
/// is generated by at most two elements, so pairs reach all of them.
#[test]
fn every_subgroup_is_generated_by_reflections() {
    let small = [Sl2Kind::Cyclic(6), Sl2Kind::BinaryDihedral(2), Sl2Kind::BinaryDihedral(3), Sl2Kind::BinaryTetrahedral];
    for kind in small {
        let k = build_sl2_subgroup(kind).unwrap();
        let elements: Vec<ExactMatrix> = k.enumerate().unwrap().iter().collect();
        let mut seen = std::collections::HashSet::new();
        for a in &elements {
            for b in &elements {
                let h = FiniteMatrixGroup::new(2, vec![a.clone(), b.clone()]).unwrap();
                let mut members: Vec<ExactMatrix> = h.enumerate().unwrap().iter().collect();
                members.sort();
                if seen.insert(members) {
                    assert!(steinberg_check(&h).unwrap(), "{kind:?}");
                }
            }
        }
        assert!(seen.len() > 1);
    }
}

fn kind() -> impl Strategy<Value = Sl2Kind> {
    prop_oneof![
        (1u32..=24).prop_map(Sl2Kind::Cyclic),
        (1u32..=8).prop_map(Sl2Kind::BinaryDihedral),
        Just(Sl2Kind::BinaryTetrahedral),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_subgroups_pass_steinberg(kind in kind(), picks in prop::collection::vec(any::<prop::sample::Index>(), 1..3)) {
        let k = build_sl2_subgroup(kind).unwrap();
        let elements = k.enumerate().unwrap();
        let gens: Vec<ExactMatrix> = picks.iter().map(|i| elements.get(i.index(elements.len()))).collect();
        let h = FiniteMatrixGroup::new(2, gens).unwrap();
        prop_assert!(steinberg_check(&h).unwrap());
        prop_assert_eq!(kind.order() % h.order().unwrap(), 0);
    }
}
