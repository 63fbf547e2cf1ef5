use indexmap::IndexSet;

use super::intern::{Interner, Key};
use super::GroupError;
use crate::linalg::{ExactMatrix, ExactVector};

/// How orbit points are identified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalize {
    /// Points are vectors.
    None,
    /// Points are lines, represented with first nonzero coordinate 1.
    Projective,
}

const ROOT: u32 = u32::MAX;

/// Breadth-first orbit with a Schreier tree.
///
/// Point `i > 0` is `gens[via[i]] · point(parent[i])` (up to scaling for
/// projective orbits); the transversal element of a point is the product of
/// generators along its tree path.
#[derive(Clone)]
pub struct OrbitData {
    dim: usize,
    normalize: Normalize,
    cap: usize,
    gens: Vec<ExactMatrix>,
    table: Interner,
    points: IndexSet<Key>,
    parent: Vec<u32>,
    via: Vec<u32>,
    /// `edges[s][i]` is the index of `gens[s] · point(i)`.
    edges: Vec<Vec<u32>>,
}

impl OrbitData {
    pub fn compute(
        gens: &[ExactMatrix],
        seed: &ExactVector,
        normalize: Normalize,
        cap: usize,
    ) -> Result<OrbitData, GroupError> {
        let dim = seed.len();
        for g in gens {
            if g.rows() != dim || g.cols() != dim {
                return Err(GroupError::DimensionMismatch { expected: dim, found: g.rows() });
            }
        }
        let mut orbit = OrbitData {
            dim,
            normalize,
            cap,
            gens: Vec::new(),
            table: Interner::new(),
            points: IndexSet::new(),
            parent: vec![ROOT],
            via: vec![ROOT],
            edges: Vec::new(),
        };
        let seed = orbit.normalized(seed);
        let key = orbit.table.key(&seed.0);
        orbit.points.insert(key);
        for g in gens {
            orbit.add_generator(g.clone())?;
        }
        Ok(orbit)
    }

    fn normalized(&self, v: &ExactVector) -> ExactVector {
        match self.normalize {
            Normalize::None => v.clone(),
            Normalize::Projective => v.projective_normalize(),
        }
    }

    /// Add a generator and close the orbit under the enlarged generating set.
    /// Existing point indices are preserved.
    pub fn add_generator(&mut self, g: ExactMatrix) -> Result<(), GroupError> {
        let s = self.gens.len();
        self.gens.push(g);
        self.edges.push(Vec::with_capacity(self.points.len()));
        let old = self.points.len();
        for i in 0..old {
            let j = self.image(i, s)?;
            self.edges[s].push(j);
        }
        let mut next = old;
        while next < self.points.len() {
            for t in 0..self.gens.len() {
                let j = self.image(next, t)?;
                debug_assert_eq!(self.edges[t].len(), next);
                self.edges[t].push(j);
            }
            next += 1;
        }
        Ok(())
    }

    fn image(&mut self, i: usize, s: usize) -> Result<u32, GroupError> {
        let p = self.point(i);
        let q = self.normalized(&self.gens[s].mul_vec(&p));
        let key = self.table.key(&q.0);
        let (j, fresh) = self.points.insert_full(key);
        if fresh {
            if self.points.len() > self.cap {
                return Err(GroupError::OrbitCap { cap: self.cap });
            }
            self.parent.push(i as u32);
            self.via.push(s as u32);
        }
        Ok(j as u32)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normalize(&self) -> Normalize {
        self.normalize
    }

    pub fn gens(&self) -> &[ExactMatrix] {
        &self.gens
    }

    pub fn seed(&self) -> ExactVector {
        self.point(0)
    }

    pub fn point(&self, i: usize) -> ExactVector {
        self.table.vector(&self.points[i])
    }

    pub fn points(&self) -> impl Iterator<Item = ExactVector> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    pub fn index_of(&self, v: &ExactVector) -> Option<usize> {
        if v.len() != self.dim {
            return None;
        }
        let v = self.normalized(v);
        let key = self.table.lookup(&v.0)?;
        self.points.get_index_of(&key)
    }

    pub fn contains(&self, v: &ExactVector) -> bool {
        self.index_of(v).is_some()
    }

    /// Index of `gens[s] · point(i)`.
    pub fn edge(&self, i: usize, s: usize) -> usize {
        self.edges[s][i] as usize
    }

    /// Whether `gens[s] · point(i)` was first reached along this very edge.
    pub fn is_tree_edge(&self, i: usize, s: usize) -> bool {
        let j = self.edge(i, s);
        j != 0 && self.parent[j] as usize == i && self.via[j] as usize == s
    }

    /// Tree parent of point `i > 0`.
    pub fn parent(&self, i: usize) -> usize {
        self.parent[i] as usize
    }

    /// Generator index of the tree edge into point `i > 0`.
    pub fn via(&self, i: usize) -> usize {
        self.via[i] as usize
    }

    /// Generator indices along the tree path, applied right to left:
    /// `t_i = gens[path[0]] · gens[path[1]] · …`.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while i != 0 {
            w.push(self.via[i] as usize);
            i = self.parent[i] as usize;
        }
        w
    }

    pub fn depth(&self, i: usize) -> usize {
        self.word(i).len()
    }

    /// Element mapping the seed to point `i`.
    pub fn transversal(&self, i: usize) -> ExactMatrix {
        let mut t = ExactMatrix::identity(self.dim);
        for s in self.word(i).into_iter().rev() {
            t = self.gens[s].mul(&t);
        }
        t
    }

    /// Schreier generator `t_{s·p}⁻¹ · s · t_p`, which fixes the seed.
    pub fn schreier_generator(&self, i: usize, s: usize, inverses: &[ExactMatrix]) -> ExactMatrix {
        let j = self.edge(i, s);
        let mut h = self.gens[s].mul(&self.transversal(i));
        for t in self.word(j) {
            h = inverses[t].mul(&h);
        }
        h
    }
}

impl std::fmt::Debug for OrbitData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("OrbitData").field("len", &self.len()).field("normalize", &self.normalize).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Cyclotomic;

    fn rot4() -> ExactMatrix {
        ExactMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]).unwrap()
    }

    #[test]
    fn orbit_of_zero_is_trivial() {
        let o = OrbitData::compute(&[rot4()], &ExactVector::zeros(2), Normalize::None, 10).unwrap();
        assert_eq!(o.len(), 1);
        assert!(o.transversal(0).is_identity());
    }

    #[test]
    fn vector_and_projective_orbits() {
        let e1 = ExactVector::unit(2, 0);
        let o = OrbitData::compute(&[rot4()], &e1, Normalize::None, 10).unwrap();
        assert_eq!(o.len(), 4);
        for i in 0..o.len() {
            assert_eq!(o.transversal(i).mul_vec(&e1), o.point(i));
        }
        let p = OrbitData::compute(&[rot4()], &e1, Normalize::Projective, 10).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.contains(&ExactVector(vec![Cyclotomic::zero(), Cyclotomic::from_i64(-3)])));
    }

    #[test]
    fn cap_is_enforced() {
        let e1 = ExactVector::unit(2, 0);
        assert!(matches!(
            OrbitData::compute(&[rot4()], &e1, Normalize::None, 3),
            Err(GroupError::OrbitCap { cap: 3 })
        ));
    }

    #[test]
    fn schreier_generators_fix_seed() {
        let swap = ExactMatrix::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]).unwrap();
        let cyc = ExactMatrix::from_i64_rows(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]).unwrap();
        let gens = vec![swap, cyc];
        let inv: Vec<_> = gens.iter().map(|g| g.inverse().unwrap()).collect();
        let seed = ExactVector::from_i64(&[1, 2, 2]);
        let o = OrbitData::compute(&gens, &seed, Normalize::None, 100).unwrap();
        assert_eq!(o.len(), 3);
        for i in 0..o.len() {
            for s in 0..2 {
                assert_eq!(o.schreier_generator(i, s, &inv).mul_vec(&seed), seed);
            }
        }
    }
}
