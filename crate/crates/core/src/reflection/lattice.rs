use std::collections::{HashMap, VecDeque};

use indexmap::IndexSet;

use super::ReflectionError;
use crate::linalg::{fixed_space, ExactMatrix, Subspace};
use crate::matgroup::{FiniteMatrixGroup, GroupError, Interner, Key};

/// A `G`-orbit of subspaces, stored compactly by interned canonical bases.
pub struct SubspaceOrbit {
    ambient: usize,
    table: Interner,
    keys: IndexSet<Key>,
}

impl SubspaceOrbit {
    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn contains(&self, s: &Subspace) -> bool {
        s.ambient_dim() == self.ambient && self.table.lookup(&flatten(s)).is_some_and(|k| self.keys.contains(&k))
    }

    pub fn subspaces(&self) -> impl Iterator<Item = Subspace> + '_ {
        self.keys.iter().map(|k| unflatten(&self.table, self.ambient, k))
    }
}

fn flatten(s: &Subspace) -> Vec<crate::cyclo::Cyclotomic> {
    s.basis().iter().flat_map(|b| b.0.iter().cloned()).collect()
}

fn unflatten(table: &Interner, ambient: usize, key: &[u32]) -> Subspace {
    let flat = table.vector(key);
    let rows: Vec<_> = flat.0.chunks(ambient).map(|c| crate::linalg::ExactVector(c.to_vec())).collect();
    Subspace::from_spanning(ambient, &rows).expect("stored bases have the ambient length")
}

/// Orbit of `s` under the group generated by `gens`, refusing to grow past `cap`.
pub fn subspace_orbit(gens: &[ExactMatrix], s: &Subspace, cap: usize) -> Result<SubspaceOrbit, ReflectionError> {
    let mut orbit = SubspaceOrbit { ambient: s.ambient_dim(), table: Interner::new(), keys: IndexSet::new() };
    let first = orbit.table.key(&flatten(s));
    orbit.keys.insert(first);
    let mut next = 0;
    while next < orbit.keys.len() {
        let x = unflatten(&orbit.table, orbit.ambient, &orbit.keys[next]);
        for g in gens {
            let y = x.apply(g)?;
            let key = orbit.table.key(&flatten(&y));
            if orbit.keys.insert(key) && orbit.keys.len() > cap {
                return Err(GroupError::OrbitCap { cap }.into());
            }
        }
        next += 1;
    }
    Ok(orbit)
}

/// One `G`-orbit of lattice elements.
#[derive(Debug, Clone)]
pub struct LatticeClass {
    /// Least element of the orbit in canonical order.
    pub representative: Subspace,
    pub orbit_size: usize,
    /// Strictly contains `Fix(G)` with no lattice element strictly between,
    /// so its pointwise stabilizer is a maximal proper parabolic.
    pub covers_bottom: bool,
    /// Indices (into the group's element list) of the pointwise stabilizer.
    pub stabilizer: Vec<u32>,
}

/// The intersection-closed family `{Fix(g)}` of a fully enumerated group,
/// organized by `G`-orbits.
#[derive(Debug, Clone)]
pub struct FixedSpaceLattice {
    pub ambient: usize,
    pub size: usize,
    pub distinct_fixed_spaces: usize,
    pub classes: Vec<LatticeClass>,
}

impl FixedSpaceLattice {
    pub fn compute(g: &FiniteMatrixGroup) -> Result<FixedSpaceLattice, ReflectionError> {
        let n = g.dim();
        let elements = g.enumerate()?;
        let mut fix_ids: HashMap<Subspace, u32> = HashMap::new();
        let mut fixes: Vec<Subspace> = Vec::new();
        let mut fix_of = Vec::with_capacity(elements.len());
        for e in elements.iter() {
            let f = Subspace::kernel(&e.sub_identity());
            let id = *fix_ids.entry(f.clone()).or_insert_with(|| {
                fixes.push(f);
                fixes.len() as u32 - 1
            });
            fix_of.push(id);
        }
        drop(fix_ids);
        let constraints: Vec<ExactMatrix> = fixes.iter().map(Subspace::constraints).collect();

        let bottom = fixed_space(n, g.gens())?;
        let mut table = Interner::new();
        let mut class_of: HashMap<Key, usize> = HashMap::new();
        let mut classes: Vec<LatticeClass> = Vec::new();
        let mut queue = VecDeque::new();
        let mut register = |z: Subspace, classes: &mut Vec<LatticeClass>| -> Result<Option<usize>, ReflectionError> {
            let key = table.key(&flatten(&z));
            if class_of.contains_key(&key) {
                return Ok(None);
            }
            let orbit = subspace_orbit(g.gens(), &z, usize::MAX)?;
            let id = classes.len();
            let mut rep = z;
            for s in orbit.subspaces() {
                if s < rep {
                    rep = s.clone();
                }
                class_of.insert(table.key(&flatten(&s)), id);
            }
            classes.push(LatticeClass {
                representative: rep,
                orbit_size: orbit.len(),
                covers_bottom: false,
                stabilizer: Vec::new(),
            });
            Ok(Some(id))
        };
        if let Some(id) = register(Subspace::full(n), &mut classes)? {
            queue.push_back(id);
        }
        while let Some(c) = queue.pop_front() {
            let x = classes[c].representative.clone();
            let mut containing = vec![false; fixes.len()];
            let mut minimal = x != bottom;
            for (fid, cons) in constraints.iter().enumerate() {
                let z = x.intersect_kernel(cons)?;
                if z.dim() == x.dim() {
                    containing[fid] = true;
                    continue;
                }
                if z != bottom {
                    minimal = false;
                }
                if let Some(id) = register(z, &mut classes)? {
                    queue.push_back(id);
                }
            }
            classes[c].covers_bottom = minimal;
            classes[c].stabilizer =
                (0..elements.len() as u32).filter(|&e| containing[fix_of[e as usize] as usize]).collect();
        }
        classes.sort_by(|a, b| {
            b.representative.dim().cmp(&a.representative.dim()).then_with(|| a.representative.cmp(&b.representative))
        });
        Ok(FixedSpaceLattice { ambient: n, size: class_of.len(), distinct_fixed_spaces: fixes.len(), classes })
    }

    /// Every lattice element, orbit by orbit.
    pub fn subspaces(&self, g: &FiniteMatrixGroup) -> Result<Vec<Subspace>, ReflectionError> {
        let mut all = Vec::with_capacity(self.size);
        for c in &self.classes {
            all.extend(subspace_orbit(g.gens(), &c.representative, usize::MAX)?.subspaces());
        }
        all.sort();
        Ok(all)
    }
}

/// All distinct subspaces obtained as intersections of fixed spaces of
/// elements of `g` (including the whole space), in canonical order.
pub fn fixed_space_lattice(g: &FiniteMatrixGroup) -> Result<Vec<Subspace>, ReflectionError> {
    FixedSpaceLattice::compute(g)?.subspaces(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Cyclotomic;

    #[test]
    fn trivial_and_single_reflection() {
        assert_eq!(fixed_space_lattice(&FiniteMatrixGroup::trivial(2)).unwrap(), vec![Subspace::full(2)]);
        let mut r = ExactMatrix::identity(4);
        r[(0, 0)] = Cyclotomic::from_i64(-1);
        r[(2, 2)] = Cyclotomic::from_i64(-1);
        let g = FiniteMatrixGroup::new(4, vec![r.clone()]).unwrap();
        let lattice = fixed_space_lattice(&g).unwrap();
        assert_eq!(lattice.len(), 2);
        assert!(lattice.contains(&Subspace::kernel(&r.sub_identity())));
    }

    #[test]
    fn orbit_of_coordinate_lines_under_swaps() {
        let mut swap = ExactMatrix::zeros(3, 3);
        swap[(0, 1)] = Cyclotomic::one();
        swap[(1, 0)] = Cyclotomic::one();
        swap[(2, 2)] = Cyclotomic::one();
        let mut cycle = ExactMatrix::zeros(3, 3);
        cycle[(1, 0)] = Cyclotomic::one();
        cycle[(2, 1)] = Cyclotomic::one();
        cycle[(0, 2)] = Cyclotomic::one();
        let line = Subspace::span(&crate::linalg::ExactVector::unit(3, 0));
        let orbit = subspace_orbit(&[swap, cycle], &line, 10).unwrap();
        assert_eq!(orbit.len(), 3);
        assert!(orbit.contains(&Subspace::span(&crate::linalg::ExactVector::unit(3, 2))));
    }
}
