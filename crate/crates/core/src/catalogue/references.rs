use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;

use super::families::{
    build_gmpn, build_imprimitive, build_sl2_subgroup, c2_plane, coxeter_group, double, symplectic_product, Sl2Kind,
};
use super::{build_primitive, CatalogueError};
use crate::linalg::ExactMatrix;
use crate::matgroup::FiniteMatrixGroup;
use crate::reflection::{fingerprint, Fingerprint};

const GMPN_TYPES: [(u32, u32, usize); 9] =
    [(3, 3, 2), (4, 2, 2), (5, 5, 2), (2, 2, 3), (3, 3, 3), (2, 1, 3), (4, 4, 3), (5, 5, 3), (3, 3, 4)];
const C2_TIMES_GMPN: [(u32, u32, usize); 4] = [(3, 3, 2), (5, 5, 2), (2, 2, 3), (3, 3, 3)];

/// `G_n(K, H)` with `K` the quaternion group of order 8 and `H` its centre.
pub fn quaternion_imprimitive(n: usize) -> Result<FiniteMatrixGroup, CatalogueError> {
    let q8 = build_sl2_subgroup(Sl2Kind::BinaryDihedral(2))?;
    let minus = ExactMatrix::scalar(2, &crate::cyclo::Cyclotomic::from_i64(-1));
    build_imprimitive(&q8, &[minus], n)
}

/// Every named reference group, built from the catalogue constructors.
pub fn reference_groups() -> Result<Vec<(String, FiniteMatrixGroup)>, CatalogueError> {
    let mut out = Vec::new();
    for (m, p, n) in GMPN_TYPES {
        out.push((format!("G({m},{p},{n})"), double(&build_gmpn(m, p, n)?)?));
    }
    for (m, p, n) in C2_TIMES_GMPN {
        out.push((format!("C2xG({m},{p},{n})"), symplectic_product(&double(&build_gmpn(m, p, n)?)?, &c2_plane())?));
    }
    let c2c2 = symplectic_product(&c2_plane(), &c2_plane())?;
    out.push(("C2xC2xC2".into(), symplectic_product(&c2c2, &c2_plane())?));
    out.push(("G(D2,C2,1)".into(), quaternion_imprimitive(2)?));
    out.push(("G3(D2,C2)".into(), quaternion_imprimitive(3)?));
    let h3 = coxeter_group(&[vec![1, 5, 2], vec![5, 1, 3], vec![2, 3, 1]])?;
    out.push(("G23".into(), double(&h3)?));
    out.push(("S5".into(), double(&build_gmpn(1, 1, 5)?)?));
    out.push(("W(S1)".into(), build_primitive("S1")?.group));
    Ok(out)
}

/// Reference fingerprints by type name, with every set of names whose
/// fingerprints coincide.
#[derive(Debug, Clone, Serialize)]
pub struct References {
    pub fingerprints: BTreeMap<String, Fingerprint>,
    pub collisions: Vec<Vec<String>>,
}

pub fn reference_fingerprints() -> Result<References, CatalogueError> {
    let mut fingerprints = BTreeMap::new();
    for (name, g) in reference_groups()? {
        fingerprints.insert(name, fingerprint(&g)?);
    }
    let mut by_fp: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (name, fp) in &fingerprints {
        by_fp.entry(serde_json::to_string(fp).expect("fingerprints serialize")).or_default().push(name.clone());
    }
    let collisions = by_fp.into_values().filter(|names| names.len() > 1).collect();
    Ok(References { fingerprints, collisions })
}

/// Reference fingerprints, computed once per process.
pub fn references() -> Result<&'static References, CatalogueError> {
    static CACHE: OnceLock<Result<References, String>> = OnceLock::new();
    CACHE
        .get_or_init(|| reference_fingerprints().map_err(|e| e.to_string()))
        .as_ref()
        .map_err(|e| CatalogueError::Data(e.clone()))
}
