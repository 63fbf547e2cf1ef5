use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{check_dim, ExactMatrix, ExactVector, LinalgError};
use crate::cyclo::Cyclotomic;

/// A subspace of `K^ambient`, stored by its reduced row-echelon basis.
///
/// The basis is unique, so structural equality and hashing coincide with
/// equality of subspaces.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<ExactVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| ExactVector::unit(ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_spanning(ambient: usize, vectors: &[ExactVector]) -> Result<Self, LinalgError> {
        for v in vectors {
            check_dim(ambient, v.len())?;
        }
        let nonzero: Vec<ExactVector> = vectors.iter().filter(|v| !v.is_zero()).cloned().collect();
        if nonzero.is_empty() {
            return Ok(Subspace::zero(ambient));
        }
        let m = ExactMatrix::from_rows(nonzero.into_iter().map(|v| v.0).collect())?;
        Ok(Subspace::from_rref_rows(&m))
    }

    pub fn span(v: &ExactVector) -> Self {
        Subspace::from_spanning(v.len(), std::slice::from_ref(v)).expect("single vector")
    }

    /// Row space of `m`.
    pub fn row_space(m: &ExactMatrix) -> Self {
        Subspace::from_rref_rows(m)
    }

    fn from_rref_rows(m: &ExactMatrix) -> Self {
        let r = m.rref();
        let basis = (0..r.rank).map(|i| r.reduced.row(i)).collect();
        Subspace { ambient: m.cols(), basis, pivots: r.pivots }
    }

    /// Null space `{x : m x = 0}`.
    pub fn kernel(m: &ExactMatrix) -> Self {
        let r = m.rref();
        let n = m.cols();
        let free: Vec<usize> = (0..n).filter(|c| !r.pivots.contains(c)).collect();
        let vectors: Vec<ExactVector> = free
            .iter()
            .map(|&f| {
                let mut v = ExactVector::zeros(n);
                v.0[f] = Cyclotomic::one();
                for (i, &p) in r.pivots.iter().enumerate() {
                    v.0[p] = r.reduced[(i, f)].neg();
                }
                v
            })
            .collect();
        Subspace::from_spanning(n, &vectors).expect("consistent dimensions")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ExactVector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Basis vectors as the rows of a matrix.
    pub fn basis_matrix(&self) -> ExactMatrix {
        if self.basis.is_empty() {
            return ExactMatrix::zeros(0, self.ambient);
        }
        ExactMatrix::from_rows(self.basis.iter().map(|v| v.0.clone()).collect()).expect("rectangular")
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` lies outside.
    pub fn coordinates(&self, v: &ExactVector) -> Option<Vec<Cyclotomic>> {
        if v.len() != self.ambient {
            return None;
        }
        let coords: Vec<Cyclotomic> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.clone();
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                rest = rest.sub(&b.scale(c));
            }
        }
        rest.is_zero().then_some(coords)
    }

    pub fn contains(&self, v: &ExactVector) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient && other.dim() <= self.dim() && other.basis.iter().all(|b| self.contains(b))
    }

    /// Linear equations cutting out the subspace: `x ∈ self` iff `C x = 0`.
    pub fn constraints(&self) -> ExactMatrix {
        let n = self.ambient;
        let free: Vec<usize> = (0..n).filter(|c| !self.pivots.contains(c)).collect();
        let mut m = ExactMatrix::zeros(free.len(), n);
        for (row, &f) in free.iter().enumerate() {
            m[(row, f)] = Cyclotomic::one();
            for (i, &p) in self.pivots.iter().enumerate() {
                m[(row, p)] = self.basis[i][f].neg();
            }
        }
        m
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        check_dim(self.ambient, other.ambient)?;
        if self.contains_subspace(other) {
            return Ok(other.clone());
        }
        if other.contains_subspace(self) {
            return Ok(self.clone());
        }
        self.intersect_kernel(&other.constraints())
    }

    /// `{x ∈ self : m x = 0}`, solved in the coordinates of `self`.
    pub fn intersect_kernel(&self, m: &ExactMatrix) -> Result<Subspace, LinalgError> {
        check_dim(self.ambient, m.cols())?;
        if self.is_zero() || m.rows() == 0 {
            return Ok(self.clone());
        }
        let restricted = m.mul(&self.basis_matrix().transpose());
        let coords = Subspace::kernel(&restricted);
        if coords.dim() == self.dim() {
            return Ok(self.clone());
        }
        let spanning: Vec<ExactVector> = coords.basis.iter().map(|c| self.combine(&c.0)).collect();
        Subspace::from_spanning(self.ambient, &spanning)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        check_dim(self.ambient, other.ambient)?;
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::from_spanning(self.ambient, &all)
    }

    /// Image `g(self)`.
    pub fn apply(&self, g: &ExactMatrix) -> Result<Subspace, LinalgError> {
        check_dim(self.ambient, g.cols())?;
        let imgs: Vec<ExactVector> = self.basis.iter().map(|b| g.mul_vec(b)).collect();
        Subspace::from_spanning(g.rows(), &imgs)
    }

    pub fn is_invariant(&self, g: &ExactMatrix) -> bool {
        g.cols() == self.ambient && self.basis.iter().all(|b| self.contains(&g.mul_vec(b)))
    }

    /// Matrix of `g` restricted to `self`, in the canonical basis (columns are
    /// coordinates of the images of basis vectors).
    pub fn action_matrix(&self, g: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        check_dim(self.ambient, g.cols())?;
        let k = self.dim();
        let mut m = ExactMatrix::zeros(k, k);
        for (j, b) in self.basis.iter().enumerate() {
            let img = g.mul_vec(b);
            let coords = self.coordinates(&img).ok_or(LinalgError::NotInvariant(0))?;
            for (i, c) in coords.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        Ok(m)
    }

    /// Vector with the given coordinates in the canonical basis.
    pub fn combine(&self, coords: &[Cyclotomic]) -> ExactVector {
        let mut v = ExactVector::zeros(self.ambient);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                v = v.add(&b.scale(c));
            }
        }
        v
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {}) ", self.dim(), self.ambient)?;
        f.debug_list().entries(self.basis.iter()).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient_dim: usize,
    basis: Vec<ExactVector>,
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SubspaceRepr { ambient_dim: self.ambient, basis: self.basis.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = SubspaceRepr::deserialize(d)?;
        Subspace::from_spanning(r.ambient_dim, &r.basis).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> ExactVector {
        ExactVector::from_i64(xs)
    }

    #[test]
    fn kernel_of_zero_is_full() {
        assert!(Subspace::kernel(&ExactMatrix::zeros(4, 4)).is_full());
        assert!(Subspace::kernel(&ExactMatrix::zeros(0, 3)).is_full());
        assert!(Subspace::kernel(&ExactMatrix::identity(3)).is_zero());
    }

    #[test]
    fn canonical_basis_is_independent_of_spanning_set() {
        let a = Subspace::from_spanning(3, &[v(&[1, 2, 3]), v(&[0, 1, 1])]).unwrap();
        let b = Subspace::from_spanning(3, &[v(&[1, 3, 4]), v(&[2, 5, 7]), v(&[0, 0, 0])]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_matches_stacked_kernel() {
        let a = ExactMatrix::from_i64_rows(&[&[1, 0, 0, 1]]).unwrap();
        let b = ExactMatrix::from_i64_rows(&[&[0, 1, -1, 0]]).unwrap();
        let lhs = Subspace::kernel(&a).intersect(&Subspace::kernel(&b)).unwrap();
        let rhs = Subspace::kernel(&a.vstack(&b).unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.dim(), 2);
    }

    #[test]
    fn constraints_cut_out_subspace() {
        let s = Subspace::from_spanning(4, &[v(&[1, 2, 0, 1]), v(&[0, 0, 1, 5])]).unwrap();
        assert_eq!(Subspace::kernel(&s.constraints()), s);
    }

    #[test]
    fn action_matrix_is_multiplicative() {
        let s = Subspace::from_spanning(3, &[v(&[1, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let g = ExactMatrix::from_i64_rows(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]]).unwrap();
        let h = ExactMatrix::from_i64_rows(&[&[1, 0, 1], &[0, 1, 1], &[0, 0, 1]]).unwrap();
        let gh = g.mul(&h);
        assert_eq!(
            s.action_matrix(&gh).unwrap(),
            s.action_matrix(&g).unwrap().mul(&s.action_matrix(&h).unwrap())
        );
        let bad = ExactMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1]]).unwrap();
        assert!(s.action_matrix(&bad).is_err());
    }
}
