//! Symplectic reflections, the Steinberg-type generation check, fingerprints
//! and recognition, fixed-space lattices and parabolic classification.

mod lattice;
mod parabolic;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{fixed_space, ExactMatrix, LinalgError};
use crate::matgroup::{FiniteMatrixGroup, GroupError};

pub use lattice::{fixed_space_lattice, subspace_orbit, FixedSpaceLattice, LatticeClass};
pub use parabolic::{classify_parabolics, stabilizer_record, Classification, Mode, ParabolicRecord};

#[derive(Debug, Error)]
pub enum ReflectionError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `rank(g - 1) = 2`.
pub fn is_symplectic_reflection(g: &ExactMatrix) -> bool {
    g.rows() == g.cols() && g.sub_identity().rank() == 2
}

/// All symplectic reflections of `h`, sorted by canonical form.
pub fn reflections_in(h: &FiniteMatrixGroup) -> Result<Vec<ExactMatrix>, ReflectionError> {
    let mut refl: Vec<ExactMatrix> = h.enumerate()?.iter().filter(is_symplectic_reflection).collect();
    refl.sort();
    Ok(refl)
}

/// Outcome of comparing a group with the subgroup generated by its reflections.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinbergReport {
    pub ok: bool,
    pub order: u128,
    pub reflection_count: usize,
    pub generated_order: u128,
}

pub fn steinberg(h: &FiniteMatrixGroup) -> Result<SteinbergReport, ReflectionError> {
    let order = h.order()?;
    let refl = reflections_in(h)?;
    let reflection_count = refl.len();
    let generated_order = h.greedy_subgroup(refl, Some(order))?.order()?;
    Ok(SteinbergReport { ok: generated_order == order, order, reflection_count, generated_order })
}

/// `h` is generated by the symplectic reflections it contains.
pub fn steinberg_check(h: &FiniteMatrixGroup) -> Result<bool, ReflectionError> {
    Ok(steinberg(h)?.ok)
}

/// Conjugacy invariants used to recognize a group against references.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub rank: usize,
    pub order: u128,
    pub reflection_count: usize,
    pub order_histogram: BTreeMap<u32, u64>,
    pub center_order: u64,
}

pub fn fingerprint(h: &FiniteMatrixGroup) -> Result<Fingerprint, ReflectionError> {
    let elements = h.enumerate()?;
    let rank = h.dim() - fixed_space(h.dim(), h.gens())?.dim();
    let reflection_count = elements.iter().filter(is_symplectic_reflection).count();
    let center_order =
        elements.iter().filter(|z| h.gens().iter().all(|g| z.mul(g) == g.mul(z))).count() as u64;
    Ok(Fingerprint {
        rank,
        order: elements.len() as u128,
        reflection_count,
        order_histogram: elements.order_histogram(),
        center_order,
    })
}

/// Result of matching a fingerprint against the reference table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognition {
    Named(String),
    Unknown,
    Ambiguous(Vec<String>),
}

impl Recognition {
    pub fn is(&self, name: &str) -> bool {
        matches!(self, Recognition::Named(n) if n == name)
    }
}

impl fmt::Display for Recognition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recognition::Named(n) => f.write_str(n),
            Recognition::Unknown => f.write_str("unknown"),
            Recognition::Ambiguous(names) => write!(f, "ambiguous: [{}]", names.join(", ")),
        }
    }
}

impl Serialize for Recognition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub const TRIVIAL: &str = "trivial";

pub fn recognize(fp: &Fingerprint, refs: &BTreeMap<String, Fingerprint>) -> Recognition {
    if fp.order == 1 {
        return Recognition::Named(TRIVIAL.into());
    }
    let names: Vec<String> = refs.iter().filter(|(_, r)| *r == fp).map(|(n, _)| n.clone()).collect();
    match names.len() {
        0 => Recognition::Unknown,
        1 => Recognition::Named(names.into_iter().next().expect("one name")),
        _ => Recognition::Ambiguous(names),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Cyclotomic;

    fn diag(entries: &[i64]) -> ExactMatrix {
        let n = entries.len();
        let mut m = ExactMatrix::identity(n);
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = Cyclotomic::from_i64(e);
        }
        m
    }

    #[test]
    fn reflections_and_steinberg_basics() {
        assert!(!is_symplectic_reflection(&ExactMatrix::identity(4)));
        let minus = FiniteMatrixGroup::new(4, vec![diag(&[-1, -1, -1, -1])]).unwrap();
        assert!(reflections_in(&minus).unwrap().is_empty());
        assert!(!steinberg_check(&minus).unwrap());
        assert!(steinberg_check(&FiniteMatrixGroup::trivial(4)).unwrap());
        let r = FiniteMatrixGroup::new(4, vec![diag(&[-1, 1, -1, 1])]).unwrap();
        assert_eq!(reflections_in(&r).unwrap().len(), 1);
        assert!(steinberg_check(&r).unwrap());
    }

    #[test]
    fn fingerprint_and_recognition() {
        let r = FiniteMatrixGroup::new(4, vec![diag(&[-1, 1, -1, 1])]).unwrap();
        let fp = fingerprint(&r).unwrap();
        assert_eq!((fp.rank, fp.order, fp.reflection_count, fp.center_order), (2, 2, 1, 2));
        let mut refs = BTreeMap::new();
        assert_eq!(recognize(&fp, &refs), Recognition::Unknown);
        refs.insert("C2".to_string(), fp.clone());
        assert!(recognize(&fp, &refs).is("C2"));
        refs.insert("other".to_string(), fp.clone());
        assert_eq!(recognize(&fp, &refs).to_string(), "ambiguous: [C2, other]");
        let trivial = fingerprint(&FiniteMatrixGroup::trivial(2)).unwrap();
        assert_eq!(trivial.rank, 0);
        assert!(recognize(&trivial, &refs).is(TRIVIAL));
    }
}
