use serde::Serialize;

use super::CatalogueError;
use crate::cyclo::Cyclotomic;
use crate::linalg::{ExactMatrix, ExactVector, SymplecticSpace};

/// A root line of a primitive group, as printed and projectively normalized.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootLine {
    pub group: String,
    pub index: usize,
    /// Representative with first nonzero coordinate 1.
    pub vector: ExactVector,
    /// Representative whose reflection generates the group.
    pub root: ExactVector,
    /// Representative as printed (including any printed scale factor).
    pub printed: ExactVector,
    /// Why `root` differs from `printed`, when it does.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correction: Option<String>,
}

impl RootLine {
    pub fn new(group: &str, index: usize, printed: ExactVector) -> Result<Self, CatalogueError> {
        if printed.is_zero() {
            return Err(CatalogueError::Data(format!("root line {index} of {group} is zero")));
        }
        Ok(RootLine {
            group: group.to_string(),
            index,
            vector: printed.projective_normalize(),
            root: printed.clone(),
            printed,
            correction: None,
        })
    }

    pub fn corrected(self, root: ExactVector, note: &str) -> Result<Self, CatalogueError> {
        if root.is_zero() || root.len() != self.printed.len() {
            return Err(CatalogueError::Data(format!("correction of root line {} of {} is invalid", self.index, self.group)));
        }
        Ok(RootLine { vector: root.projective_normalize(), root, correction: Some(note.to_string()), ..self })
    }
}

/// The antilinear map `J(x, y) = (-ȳ, x̄)` on `C^{2n}` split as `C^n ⊕ C^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuaternionicStructure {
    dim: usize,
}

impl QuaternionicStructure {
    pub fn new(dim: usize) -> Self {
        assert!(dim.is_multiple_of(2), "quaternionic structure needs even dimension");
        QuaternionicStructure { dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn apply(&self, v: &ExactVector) -> ExactVector {
        let n = self.dim / 2;
        let mut out = Vec::with_capacity(self.dim);
        out.extend(v.0[n..].iter().map(|y| y.complex_conjugate().neg()));
        out.extend(v.0[..n].iter().map(Cyclotomic::complex_conjugate));
        ExactVector(out)
    }

    /// `g ∘ J = J ∘ g`, checked on the standard basis and on `i` times it
    /// (both are needed since `J` is only real-linear).
    pub fn commutes_with(&self, g: &ExactMatrix) -> bool {
        let i = Cyclotomic::i();
        (0..self.dim).all(|k| {
            let e = ExactVector::unit(self.dim, k);
            let ie = e.scale(&i);
            g.mul_vec(&self.apply(&e)) == self.apply(&g.mul_vec(&e))
                && g.mul_vec(&self.apply(&ie)) == self.apply(&g.mul_vec(&ie))
        })
    }
}

/// Order-two symplectic reflection acting as `-1` on `span{a, J a}` and as
/// the identity on its hermitian orthogonal complement.
pub fn reflection_from_root(
    a: &ExactVector,
    sp: &SymplecticSpace,
    j: &QuaternionicStructure,
) -> Result<ExactMatrix, CatalogueError> {
    let d = sp.dim();
    if a.len() != d || j.dim() != d {
        return Err(CatalogueError::Data(format!("root of length {} in dimension {d}", a.len())));
    }
    if a.is_zero() {
        return Err(CatalogueError::Data("zero root".into()));
    }
    let ja = j.apply(a);
    let norm = a.hermitian(a);
    let scale = Cyclotomic::from_i64(-2).div(&norm).expect("nonzero root has positive norm");
    let mut g = ExactMatrix::identity(d);
    let (ac, jac) = (a.conj(), ja.conj());
    for r in 0..d {
        for c in 0..d {
            let p = &(&a[r] * &ac[c]) + &(&ja[r] * &jac[c]);
            if !p.is_zero() {
                g[(r, c)] = &g[(r, c)] + &(&p * &scale);
            }
        }
    }
    debug_assert!(sp.preserves(&g));
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_is_antilinear_square_minus_one() {
        let j = QuaternionicStructure::new(4);
        let v = ExactVector(vec![Cyclotomic::i(), Cyclotomic::from_i64(2), Cyclotomic::zeta(3), Cyclotomic::one()]);
        assert_eq!(j.apply(&j.apply(&v)), v.neg());
        let sp = SymplecticSpace::standard(4);
        let w = ExactVector::from_i64(&[1, 0, 3, -1]);
        assert_eq!(sp.pair(&j.apply(&v), &j.apply(&w)), sp.pair(&v, &w).complex_conjugate());
    }

    #[test]
    fn root_reflection_is_symplectic_involution() {
        let sp = SymplecticSpace::standard(6);
        let j = QuaternionicStructure::new(6);
        let a = ExactVector::from_i64(&[2, 0, 0, 0, 0, 0]);
        let g = reflection_from_root(&a, &sp, &j).unwrap();
        assert!(g.mul(&g).is_identity());
        assert_eq!(g.sub_identity().rank(), 2);
        assert!(sp.preserves(&g));
        assert_eq!(g.mul_vec(&ExactVector::unit(6, 3)), ExactVector::unit(6, 3).neg());
        assert!(j.commutes_with(&g));
    }
}
