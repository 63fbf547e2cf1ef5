use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::lattice::{subspace_orbit, FixedSpaceLattice, SubspaceOrbit};
use super::{fingerprint, recognize, steinberg, Fingerprint, Recognition, ReflectionError, SteinbergReport};
use crate::linalg::{fixed_space, ExactMatrix, ExactVector, Subspace};
use crate::matgroup::{FiniteMatrixGroup, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode", content = "vectors")]
pub enum Mode {
    FullLattice,
    Vectors(Vec<ExactVector>),
}

/// One verified parabolic subgroup.
#[derive(Debug, Clone, Serialize)]
pub struct ParabolicRecord {
    pub conjugacy_class_id: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vector: Option<ExactVector>,
    pub fixed_space: Subspace,
    /// Number of lattice elements conjugate to the fixed space, when known.
    pub class_size: Option<u64>,
    pub order: u128,
    pub generators: Vec<ExactMatrix>,
    pub steinberg_ok: bool,
    pub steinberg: SteinbergReport,
    pub fingerprint: Fingerprint,
    pub recognized_type: Recognition,
    /// `None` when maximality was not decided (vectors mode).
    pub is_maximal: Option<bool>,
    #[serde(skip)]
    pub group: FiniteMatrixGroup,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub mode: &'static str,
    pub group_order: u128,
    /// Total number of lattice elements (full-lattice mode only).
    pub lattice_size: Option<usize>,
    pub records: Vec<ParabolicRecord>,
}

impl Classification {
    pub fn maximal(&self) -> impl Iterator<Item = &ParabolicRecord> {
        self.records.iter().filter(|r| r.is_maximal == Some(true))
    }

    pub fn all_steinberg_ok(&self) -> bool {
        self.records.iter().all(|r| r.steinberg_ok)
    }
}

fn record(
    h: FiniteMatrixGroup,
    fixed: Subspace,
    refs: &BTreeMap<String, Fingerprint>,
) -> Result<ParabolicRecord, ReflectionError> {
    let st = steinberg(&h)?;
    let fp = fingerprint(&h)?;
    Ok(ParabolicRecord {
        conjugacy_class_id: 0,
        vector: None,
        fixed_space: fixed,
        class_size: None,
        order: st.order,
        generators: h.gens().to_vec(),
        steinberg_ok: st.ok,
        steinberg: st,
        recognized_type: recognize(&fp, refs),
        fingerprint: fp,
        is_maximal: None,
        group: h,
    })
}

/// Parabolic subgroups of `g` with Steinberg verification, fingerprints,
/// recognition against `refs`, conjugacy classes and maximality.
///
/// Full-lattice mode yields one record per `G`-orbit of lattice elements;
/// vectors mode one record per supplied vector.
pub fn classify_parabolics(
    g: &FiniteMatrixGroup,
    mode: &Mode,
    refs: &BTreeMap<String, Fingerprint>,
    seed: u64,
) -> Result<Classification, ReflectionError> {
    match mode {
        Mode::FullLattice => full_lattice(g, refs),
        Mode::Vectors(vs) => vectors(g, vs, refs, seed),
    }
}

fn full_lattice(g: &FiniteMatrixGroup, refs: &BTreeMap<String, Fingerprint>) -> Result<Classification, ReflectionError> {
    let lattice = FixedSpaceLattice::compute(g)?;
    let elements = g.enumerate()?;
    let group_order = elements.len() as u128;
    let mut records = Vec::with_capacity(lattice.classes.len());
    for (id, class) in lattice.classes.iter().enumerate() {
        let size = class.stabilizer.len() as u128;
        let h = if size == group_order {
            g.clone()
        } else {
            g.greedy_subgroup(class.stabilizer.iter().map(|&e| elements.get(e as usize)), Some(size))?
        };
        if h.order()? != size {
            return Err(GroupError::Inconsistent(format!("parabolic {id} generated with the wrong order")).into());
        }
        let mut r = record(h, class.representative.clone(), refs)?;
        r.conjugacy_class_id = id;
        r.class_size = Some(class.orbit_size as u64);
        r.is_maximal = Some(class.covers_bottom);
        records.push(r);
    }
    Ok(Classification { mode: "full_lattice", group_order, lattice_size: Some(lattice.size), records })
}

/// The verified stabilizer of a single vector, without conjugacy data.
pub fn stabilizer_record(
    g: &FiniteMatrixGroup,
    v: &ExactVector,
    refs: &BTreeMap<String, Fingerprint>,
    seed: u64,
) -> Result<ParabolicRecord, ReflectionError> {
    let bottom = fixed_space(g.dim(), g.gens())?;
    stabilizer_record_above(g, v, &bottom, refs, seed)
}

fn stabilizer_record_above(
    g: &FiniteMatrixGroup,
    v: &ExactVector,
    bottom: &Subspace,
    refs: &BTreeMap<String, Fingerprint>,
    seed: u64,
) -> Result<ParabolicRecord, ReflectionError> {
    let h = g.stabilizer(v, seed)?;
    let fixed = fixed_space(g.dim(), h.gens())?;
    let mut r = record(h, fixed, refs)?;
    r.vector = Some(v.clone());
    if r.fixed_space == *bottom {
        r.is_maximal = Some(false);
    }
    Ok(r)
}

fn vectors(
    g: &FiniteMatrixGroup,
    vs: &[ExactVector],
    refs: &BTreeMap<String, Fingerprint>,
    seed: u64,
) -> Result<Classification, ReflectionError> {
    let group_order = g.order()?;
    let bottom = fixed_space(g.dim(), g.gens())?;
    let mut records: Vec<ParabolicRecord> = Vec::with_capacity(vs.len());
    let mut classes: Vec<(usize, Option<SubspaceOrbit>)> = Vec::new();
    for (k, v) in vs.iter().enumerate() {
        let mut r = stabilizer_record_above(g, v, &bottom, refs, seed.wrapping_add(k as u64))?;
        let mut class = None;
        for (id, (first, orbit)) in classes.iter().enumerate() {
            let rep = &records[*first];
            if rep.fingerprint != r.fingerprint {
                continue;
            }
            let same = match orbit {
                Some(o) => o.contains(&r.fixed_space),
                None => rep.fixed_space == r.fixed_space,
            };
            if same {
                class = Some(id);
                break;
            }
        }
        match class {
            Some(id) => {
                r.conjugacy_class_id = id;
                r.class_size = classes[id].1.as_ref().map(|o| o.len() as u64);
            }
            None => {
                let orbit = match subspace_orbit(g.gens(), &r.fixed_space, g.limits().orbit) {
                    Ok(o) => Some(o),
                    Err(ReflectionError::Group(GroupError::OrbitCap { .. })) => None,
                    Err(e) => return Err(e),
                };
                r.conjugacy_class_id = classes.len();
                r.class_size = orbit.as_ref().map(|o| o.len() as u64);
                classes.push((records.len(), orbit));
            }
        }
        records.push(r);
    }
    Ok(Classification { mode: "vectors", group_order, lattice_size: None, records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Cyclotomic;

    fn doubled_s3() -> FiniteMatrixGroup {
        let mut gens = Vec::new();
        for (i, j) in [(0, 1), (1, 2)] {
            let mut s = ExactMatrix::identity(6);
            for (a, b) in [(i, j), (i + 3, j + 3)] {
                s[(a, a)] = Cyclotomic::zero();
                s[(b, b)] = Cyclotomic::zero();
                s[(a, b)] = Cyclotomic::one();
                s[(b, a)] = Cyclotomic::one();
            }
            gens.push(s);
        }
        FiniteMatrixGroup::new(6, gens).unwrap()
    }

    #[test]
    fn full_lattice_of_doubled_s3() {
        let g = doubled_s3();
        let c = classify_parabolics(&g, &Mode::FullLattice, &BTreeMap::new(), 0).unwrap();
        assert!(c.all_steinberg_ok());
        let orders: Vec<u128> = c.records.iter().map(|r| r.order).collect();
        assert_eq!(orders, vec![1, 2, 6]);
        assert_eq!(c.maximal().count(), 1);
        assert_eq!(c.maximal().next().unwrap().class_size, Some(3));
        assert_eq!(c.lattice_size, Some(5));
    }

    #[test]
    fn vectors_mode_groups_conjugate_vectors() {
        let g = doubled_s3();
        let vs = vec![
            ExactVector::from_i64(&[1, 1, 0, 0, 0, 0]),
            ExactVector::from_i64(&[0, 1, 1, 0, 0, 0]),
            ExactVector::zeros(6),
        ];
        let c = classify_parabolics(&g, &Mode::Vectors(vs), &BTreeMap::new(), 0).unwrap();
        let ids: Vec<usize> = c.records.iter().map(|r| r.conjugacy_class_id).collect();
        assert_eq!(ids, vec![0, 0, 1]);
        assert_eq!(c.records[2].is_maximal, Some(false));
        assert_eq!(c.records[0].order, 2);
    }
}
