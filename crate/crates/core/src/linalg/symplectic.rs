use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_dim, ExactMatrix, ExactVector, LinalgError, Subspace};
use crate::cyclo::{Cyclotomic, Dense};

/// `K^{2n}` with a nondegenerate antisymmetric form `ω(u, v) = uᵀ Ω v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSpace {
    form: ExactMatrix,
}

impl SymplecticSpace {
    /// The block form `[[0, I], [-I, 0]]` on `K^dim`.
    pub fn standard(dim: usize) -> Self {
        assert!(dim.is_multiple_of(2), "symplectic dimension must be even");
        SymplecticSpace { form: standard_form(dim / 2) }
    }

    pub fn new(form: ExactMatrix) -> Result<Self, LinalgError> {
        check_antisymmetric(&form)?;
        if form.rank() != form.rows() {
            return Err(LinalgError::DegenerateForm);
        }
        Ok(SymplecticSpace { form })
    }

    pub fn dim(&self) -> usize {
        self.form.rows()
    }

    pub fn form(&self) -> &ExactMatrix {
        &self.form
    }

    pub fn pair(&self, u: &ExactVector, v: &ExactVector) -> Cyclotomic {
        u.dot(&self.form.mul_vec(v))
    }

    /// Gram matrix of `ω` on the canonical basis of `s`.
    pub fn gram(&self, s: &Subspace) -> ExactMatrix {
        let b = s.basis_matrix();
        b.mul(&self.form).mul(&b.transpose())
    }

    /// `{w : ω(u, w) = 0 for all u ∈ s}`.
    pub fn complement(&self, s: &Subspace) -> Result<Subspace, LinalgError> {
        check_dim(self.dim(), s.ambient_dim())?;
        Ok(Subspace::kernel(&s.basis_matrix().mul(&self.form)))
    }

    pub fn is_isotropic(&self, s: &Subspace) -> bool {
        s.ambient_dim() == self.dim() && self.gram(s).is_zero()
    }

    pub fn is_lagrangian(&self, s: &Subspace) -> bool {
        2 * s.dim() == self.dim() && self.is_isotropic(s)
    }

    /// `ω` restricted to `s` is nondegenerate.
    pub fn is_symplectic_subspace(&self, s: &Subspace) -> bool {
        s.ambient_dim() == self.dim() && self.gram(s).rank() == s.dim()
    }

    /// `gᵀ Ω g = Ω`.
    pub fn preserves(&self, g: &ExactMatrix) -> bool {
        g.rows() == self.dim() && g.transpose().mul(&self.form).mul(g) == self.form
    }
}

pub(crate) fn standard_form(n: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        m[(k, n + k)] = Cyclotomic::one();
        m[(n + k, k)] = Cyclotomic::from_i64(-1);
    }
    m
}

fn check_antisymmetric(m: &ExactMatrix) -> Result<(), LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::DimensionMismatch { expected: m.rows(), found: m.cols() });
    }
    if m.transpose() != m.scale(&Cyclotomic::from_i64(-1)) {
        return Err(LinalgError::NotAntisymmetric);
    }
    Ok(())
}

/// Common fixed space of `gens` acting on `K^dim`.
pub fn fixed_space(dim: usize, gens: &[ExactMatrix]) -> Result<Subspace, LinalgError> {
    let mut stacked = ExactMatrix::zeros(0, dim);
    for g in gens {
        check_dim(dim, g.rows())?;
        check_dim(dim, g.cols())?;
        if !g.is_identity() {
            stacked = stacked.vstack(&g.sub_identity())?;
        }
    }
    Ok(Subspace::kernel(&stacked))
}

/// `(1/|H|) Σ_{g ∈ H} g` for a complete list of group elements.
pub fn averaging_projector(elements: &[ExactMatrix]) -> Result<ExactMatrix, LinalgError> {
    let first = elements.first().ok_or(LinalgError::Empty)?;
    let (r, c) = (first.rows(), first.cols());
    for g in elements {
        check_dim(r, g.rows())?;
        check_dim(c, g.cols())?;
    }
    let n = elements.iter().fold(1u32, |acc, g| {
        let k = g.conductor();
        acc / gcd(acc, k) * k
    });
    let inv = Cyclotomic::rational(1, elements.len() as i64).expect("nonempty");
    let mut d = Dense::new(n);
    let mut data = Vec::with_capacity(r * c);
    for i in 0..r {
        for j in 0..c {
            for g in elements {
                d.add(&g[(i, j)], false);
            }
            data.push(&d.finish() * &inv);
        }
    }
    ExactMatrix::new(r, c, data)
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Action of a generator set on an invariant symplectic subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub subspace: Subspace,
    pub gens: Vec<ExactMatrix>,
    pub form: ExactMatrix,
}

impl Restriction {
    /// Matrix of any element of the ambient group on the subspace.
    pub fn element(&self, g: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        self.subspace.action_matrix(g)
    }

    pub fn space(&self) -> SymplecticSpace {
        SymplecticSpace { form: self.form.clone() }
    }
}

pub fn restrict(gens: &[ExactMatrix], w: &Subspace, sp: &SymplecticSpace) -> Result<Restriction, LinalgError> {
    check_dim(sp.dim(), w.ambient_dim())?;
    let restricted = gens
        .iter()
        .enumerate()
        .map(|(i, g)| w.action_matrix(g).map_err(|_| LinalgError::NotInvariant(i)))
        .collect::<Result<Vec<_>, _>>()?;
    let form = sp.gram(w);
    if form.rank() != w.dim() {
        return Err(LinalgError::DegenerateForm);
    }
    Ok(Restriction { subspace: w.clone(), gens: restricted, form })
}

/// Symplectic Gram-Schmidt.  Returns `(B, c)` with `Bᵀ · gram · B = c · [[0, I], [-I, 0]]`.
///
/// The scalar `c` is the pairing of the first hyperbolic pair; later pairs
/// are rescaled to match it.  When `gram` already is `c` times the standard
/// form, `B` is the identity.
pub fn symplectic_basis(w: &Subspace, gram: &ExactMatrix) -> Result<(ExactMatrix, Cyclotomic), LinalgError> {
    check_dim(w.dim(), gram.rows())?;
    check_antisymmetric(gram)?;
    let k = gram.rows();
    if k % 2 == 1 || gram.rank() != k {
        return Err(LinalgError::DegenerateForm);
    }
    let m = k / 2;
    if m == 0 {
        return Ok((ExactMatrix::zeros(0, 0), Cyclotomic::one()));
    }
    let pair = |u: &ExactVector, v: &ExactVector| u.dot(&gram.mul_vec(v));
    let mut pool: Vec<Option<ExactVector>> = (0..k).map(|i| Some(ExactVector::unit(k, i))).collect();
    let mut es = Vec::with_capacity(m);
    let mut fs = Vec::with_capacity(m);
    let mut c: Option<Cyclotomic> = None;
    while es.len() < m {
        let ei = pool.iter().position(|v| v.as_ref().is_some_and(|v| !v.is_zero())).ok_or(LinalgError::DegenerateForm)?;
        let e = pool[ei].take().expect("present");
        let partner = (ei + m < k)
            .then_some(ei + m)
            .filter(|&j| pool[j].as_ref().is_some_and(|f| !pair(&e, f).is_zero()))
            .or_else(|| pool.iter().position(|f| f.as_ref().is_some_and(|f| !pair(&e, f).is_zero())))
            .ok_or(LinalgError::DegenerateForm)?;
        let mut f = pool[partner].take().expect("present");
        let d = pair(&e, &f);
        let target = c.get_or_insert_with(|| d.clone()).clone();
        if d != target {
            f = f.scale(&target.div(&d).expect("nonzero pairing"));
        }
        let dinv = target.inverse().expect("nonzero pairing");
        for v in pool.iter_mut().flatten() {
            let a = pair(&f, v);
            let b = pair(&e, v);
            if a.is_zero() && b.is_zero() {
                continue;
            }
            *v = v.add(&e.scale(&(&a * &dinv))).sub(&f.scale(&(&b * &dinv)));
        }
        es.push(e);
        fs.push(f);
    }
    es.extend(fs);
    Ok((ExactMatrix::from_columns(&es)?, c.expect("m > 0")))
}

/// Smallest subspace containing `seed` and invariant under `gens`.
pub fn spin(seed: &ExactVector, gens: &[ExactMatrix]) -> Subspace {
    let dim = seed.len();
    let mut space = Subspace::span(seed);
    let mut queue: Vec<ExactVector> = if seed.is_zero() { Vec::new() } else { vec![seed.clone()] };
    while let Some(v) = queue.pop() {
        for g in gens {
            let w = g.mul_vec(&v);
            if !space.contains(&w) {
                let mut basis = space.basis().to_vec();
                basis.push(w.clone());
                space = Subspace::from_spanning(dim, &basis).expect("consistent dimensions");
                queue.push(w);
            }
        }
        if space.is_full() {
            break;
        }
    }
    space
}

/// Candidate vectors tried by [`find_invariant_lagrangian`].
#[derive(Clone, Debug)]
pub struct LagrangianSearch {
    /// Number of pseudo-random rational combinations of basis vectors.
    pub random_combinations: usize,
    pub seed: u64,
    /// Subspace whose basis vectors are spun in addition to the standard basis.
    pub complement: Option<Subspace>,
    /// Finite-order elements whose eigenvectors (for roots of unity) are spun last.
    pub eigen_elements: Vec<ExactMatrix>,
}

impl Default for LagrangianSearch {
    fn default() -> Self {
        LagrangianSearch { random_combinations: 32, seed: 0, complement: None, eigen_elements: Vec::new() }
    }
}

/// Search for a `gens`-invariant Lagrangian subspace by spinning candidate vectors.
///
/// This is a semi-decision: `None` means no candidate spun into a Lagrangian.
pub fn find_invariant_lagrangian(
    gens: &[ExactMatrix],
    sp: &SymplecticSpace,
    search: &LagrangianSearch,
) -> Option<Subspace> {
    let dim = sp.dim();
    let try_seed = |v: &ExactVector| {
        if v.is_zero() {
            return None;
        }
        let s = spin(v, gens);
        sp.is_lagrangian(&s).then_some(s)
    };
    for i in 0..dim {
        if let Some(s) = try_seed(&ExactVector::unit(dim, i)) {
            return Some(s);
        }
    }
    if let Some(c) = &search.complement {
        for b in c.basis() {
            if let Some(s) = try_seed(b) {
                return Some(s);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    for _ in 0..search.random_combinations {
        let coeffs: Vec<i64> = (0..dim).map(|_| rng.gen_range(-3..=3)).collect();
        if let Some(s) = try_seed(&ExactVector::from_i64(&coeffs)) {
            return Some(s);
        }
    }
    for g in &search.eigen_elements {
        let Some(order) = multiplicative_order(g, 1000) else {
            continue;
        };
        for j in 0..order {
            let lambda = Cyclotomic::root_of_unity(order, j as i64).expect("order >= 1");
            let eigen = Subspace::kernel(&g.sub(&ExactMatrix::scalar(dim, &lambda)));
            for b in eigen.basis() {
                if let Some(s) = try_seed(b) {
                    return Some(s);
                }
            }
        }
    }
    None
}

/// Least `k ≥ 1` with `g^k = I`, if at most `bound`.
pub fn multiplicative_order(g: &ExactMatrix, bound: u32) -> Option<u32> {
    let mut p = g.clone();
    for k in 1..=bound {
        if p.is_identity() {
            return Some(k);
        }
        p = p.mul(g);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Cyclotomic {
        Cyclotomic::from_i64(v)
    }

    #[test]
    fn standard_form_basics() {
        let sp = SymplecticSpace::standard(4);
        let e1 = Subspace::span(&ExactVector::unit(4, 0));
        assert!(sp.is_isotropic(&e1));
        let e13 = Subspace::from_spanning(4, &[ExactVector::unit(4, 0), ExactVector::unit(4, 2)]).unwrap();
        assert!(!sp.is_isotropic(&e13));
        assert_eq!(sp.complement(&Subspace::zero(4)).unwrap(), Subspace::full(4));
        let lag = Subspace::from_spanning(4, &[ExactVector::unit(4, 0), ExactVector::unit(4, 1)]).unwrap();
        assert!(sp.is_lagrangian(&lag));
        assert_eq!(sp.complement(&lag).unwrap(), lag);
    }

    #[test]
    fn basis_of_standard_and_scaled_forms_is_identity() {
        let w = Subspace::full(6);
        let std = standard_form(3);
        let (b, c) = symplectic_basis(&w, &std).unwrap();
        assert!(b.is_identity() && c.is_one());
        let (b, c) = symplectic_basis(&w, &std.scale(&q(2))).unwrap();
        assert!(b.is_identity());
        assert_eq!(c, q(2));
    }

    #[test]
    fn basis_standardizes_general_form() {
        let i = Cyclotomic::i();
        let a = ExactMatrix::from_rows(vec![
            vec![q(1), i.clone(), q(0), q(2)],
            vec![q(0), q(1), q(3), i.neg()],
            vec![i.clone(), q(0), q(1), q(1)],
            vec![q(5), q(0), q(0), q(1)],
        ])
        .unwrap();
        let gram = a.transpose().mul(&standard_form(2)).mul(&a);
        let (b, c) = symplectic_basis(&Subspace::full(4), &gram).unwrap();
        assert_eq!(b.transpose().mul(&gram).mul(&b), standard_form(2).scale(&c));
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(fixed_space(3, &[]).unwrap(), Subspace::full(3));
        assert_eq!(averaging_projector(&[]), Err(LinalgError::Empty));
        assert!(spin(&ExactVector::zeros(3), &[ExactMatrix::identity(3)]).is_zero());
        let deg = ExactMatrix::zeros(2, 2);
        assert_eq!(symplectic_basis(&Subspace::full(2), &deg), Err(LinalgError::DegenerateForm));
    }

    #[test]
    fn averaging_over_cyclic_group() {
        let g = ExactMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]).unwrap();
        let e = averaging_projector(&[ExactMatrix::identity(2), g.clone()]).unwrap();
        assert_eq!(e.mul(&e), e);
        assert_eq!(Subspace::row_space(&e.transpose()), fixed_space(2, &[g]).unwrap());
    }

    #[test]
    fn lagrangian_from_eigenvectors() {
        let w = Cyclotomic::zeta(3);
        let wb = w.complex_conjugate();
        let z = q(0);
        let g = ExactMatrix::from_rows(vec![
            vec![w.clone(), z.clone(), z.clone(), z.clone()],
            vec![z.clone(), w.clone(), z.clone(), z.clone()],
            vec![z.clone(), z.clone(), wb.clone(), z.clone()],
            vec![z.clone(), z.clone(), z.clone(), wb.clone()],
        ])
        .unwrap();
        let basis = ExactMatrix::from_i64_rows(&[&[1, 1, 0, 0], &[0, 1, 1, 0], &[1, 0, 1, 1], &[0, 0, 1, 2]]).unwrap();
        let conj = basis.mul(&g).mul(&basis.inverse().unwrap());
        let form = basis.inverse().unwrap().transpose().mul(&standard_form(2)).mul(&basis.inverse().unwrap());
        let sp = SymplecticSpace::new(form).unwrap();
        assert!(sp.preserves(&conj));
        let search = LagrangianSearch { random_combinations: 0, eigen_elements: vec![conj.clone()], ..Default::default() };
        let lag = find_invariant_lagrangian(std::slice::from_ref(&conj), &sp, &search).unwrap();
        assert!(lag.is_invariant(&conj) && sp.is_lagrangian(&lag));
        assert_eq!(multiplicative_order(&conj, 10), Some(3));
    }
}
