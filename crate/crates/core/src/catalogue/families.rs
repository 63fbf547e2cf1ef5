use serde::{Deserialize, Serialize};

use super::CatalogueError;
use crate::cyclo::Cyclotomic;
use crate::linalg::{ExactMatrix, ExactVector};
use crate::matgroup::FiniteMatrixGroup;

/// Finite subgroups of `SL₂(C)` up to conjugacy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "m")]
pub enum Sl2Kind {
    /// Cyclic of order `m`.
    Cyclic(u32),
    /// Binary dihedral of order `4m`.
    BinaryDihedral(u32),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl Sl2Kind {
    pub fn order(&self) -> u128 {
        match *self {
            Sl2Kind::Cyclic(m) => m as u128,
            Sl2Kind::BinaryDihedral(m) => 4 * m as u128,
            Sl2Kind::BinaryTetrahedral => 24,
            Sl2Kind::BinaryOctahedral => 48,
            Sl2Kind::BinaryIcosahedral => 120,
        }
    }
}

fn c(v: i64) -> Cyclotomic {
    Cyclotomic::from_i64(v)
}

fn m2(a: Cyclotomic, b: Cyclotomic, cc: Cyclotomic, d: Cyclotomic) -> ExactMatrix {
    ExactMatrix::from_rows(vec![vec![a, b], vec![cc, d]]).expect("2x2")
}

fn diag_root(n: u32, k: i64) -> ExactMatrix {
    let z = Cyclotomic::root_of_unity(n, k).expect("n >= 1");
    let zi = Cyclotomic::root_of_unity(n, -k).expect("n >= 1");
    m2(z, c(0), c(0), zi)
}

/// Quaternion units as 2×2 complex matrices: `1, i, j, k`.
fn quaternion(a: &Cyclotomic, b: &Cyclotomic, cc: &Cyclotomic, d: &Cyclotomic) -> ExactMatrix {
    let i = Cyclotomic::i();
    m2(a + &(b * &i), cc + &(d * &i), &cc.neg() + &(d * &i), a - &(b * &i))
}

pub fn build_sl2_subgroup(kind: Sl2Kind) -> Result<FiniteMatrixGroup, CatalogueError> {
    let half = Cyclotomic::rational(1, 2).expect("nonzero");
    let gens = match kind {
        Sl2Kind::Cyclic(0) | Sl2Kind::BinaryDihedral(0) => {
            return Err(CatalogueError::Parameter("order parameter must be positive".into()))
        }
        Sl2Kind::Cyclic(m) => vec![diag_root(m, 1)],
        Sl2Kind::BinaryDihedral(m) => vec![diag_root(2 * m, 1), m2(c(0), c(1), c(-1), c(0))],
        Sl2Kind::BinaryTetrahedral | Sl2Kind::BinaryOctahedral => {
            let omega = quaternion(&half, &half, &half, &half);
            let mut g = vec![quaternion(&c(0), &c(1), &c(0), &c(0)), quaternion(&c(0), &c(0), &c(1), &c(0)), omega];
            if kind == Sl2Kind::BinaryOctahedral {
                g.push(diag_root(8, 1));
            }
            g
        }
        Sl2Kind::BinaryIcosahedral => {
            let phi = &(&Cyclotomic::sqrt5() + &c(1)) * &half;
            let phi_inv = &phi - &c(1);
            vec![
                quaternion(&half, &half, &half, &half),
                quaternion(&(&phi * &half), &(&phi_inv * &half), &half, &c(0)),
            ]
        }
    };
    Ok(FiniteMatrixGroup::new(2, gens)?)
}

/// `n × n` matrix of a slot permutation acting on both halves of `C^{2n}`.
fn slot_matrix(n: usize, perm: &[usize], blocks: &[ExactMatrix]) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(2 * n, 2 * n);
    for (src, &dst) in perm.iter().enumerate() {
        let b = &blocks[src];
        m[(dst, src)] = b[(0, 0)].clone();
        m[(dst, n + src)] = b[(0, 1)].clone();
        m[(n + dst, src)] = b[(1, 0)].clone();
        m[(n + dst, n + src)] = b[(1, 1)].clone();
    }
    m
}

/// `G_n(K, H)`: slot permutations with per-slot `K`-blocks whose product lies
/// in `H`, realized on `C^{2n}` with slot `k` on coordinates `(k, n + k)`.
pub fn build_imprimitive(
    k: &FiniteMatrixGroup,
    h_gens: &[ExactMatrix],
    n: usize,
) -> Result<FiniteMatrixGroup, CatalogueError> {
    if n == 0 {
        return Err(CatalogueError::Parameter("n must be at least 1".into()));
    }
    if k.dim() != 2 || h_gens.iter().any(|h| h.rows() != 2 || h.cols() != 2) {
        return Err(CatalogueError::Parameter("K and H must consist of 2x2 matrices".into()));
    }
    for h in h_gens {
        if !k.is_member(h)? {
            return Err(CatalogueError::Parameter("H is not contained in K".into()));
        }
    }
    let h = FiniteMatrixGroup::new(2, h_gens.to_vec())?;
    for a in k.gens() {
        for b in k.gens() {
            let comm = a.inverse()?.mul(&b.inverse()?).mul(a).mul(b);
            if !h.is_member(&comm)? {
                return Err(CatalogueError::Parameter("H does not contain the derived subgroup of K".into()));
            }
        }
    }
    let id2 = ExactMatrix::identity(2);
    let ident: Vec<usize> = (0..n).collect();
    let mut gens = Vec::new();
    for hg in h_gens {
        let mut blocks = vec![id2.clone(); n];
        blocks[0] = hg.clone();
        gens.push(slot_matrix(n, &ident, &blocks));
    }
    if n >= 2 {
        for kg in k.gens() {
            let mut blocks = vec![id2.clone(); n];
            blocks[0] = kg.clone();
            blocks[1] = kg.inverse()?;
            gens.push(slot_matrix(n, &ident, &blocks));
        }
        let blocks = vec![id2.clone(); n];
        let mut swap = ident.clone();
        swap.swap(0, 1);
        gens.push(slot_matrix(n, &swap, &blocks));
        if n > 2 {
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            gens.push(slot_matrix(n, &cycle, &blocks));
        }
    }
    Ok(FiniteMatrixGroup::new(2 * n, gens)?)
}

/// `|G_n(K, H)| = |H| · |K|^{n-1} · n!`.
pub fn imprimitive_order(k_order: u128, h_order: u128, n: usize) -> u128 {
    if n == 0 {
        return 1;
    }
    h_order * k_order.pow(n as u32 - 1) * factorial(n)
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Stabilizer order of `v` in `G_n(K, H)` predicted by its block structure:
/// `n₀` zero slots and nonzero slots grouped by `K`-orbit, giving
/// `|G_{n₀}(K, H)| · n₁! ⋯ n_r!`.
pub fn predicted_imprimitive_stabilizer_order(
    k_elements: &[ExactMatrix],
    h_order: u128,
    n: usize,
    v: &ExactVector,
) -> u128 {
    let slots: Vec<ExactVector> = (0..n).map(|i| ExactVector(vec![v[i].clone(), v[n + i].clone()])).collect();
    let n0 = slots.iter().filter(|w| w.is_zero()).count();
    let mut classes: Vec<(ExactVector, usize)> = Vec::new();
    for w in slots.iter().filter(|w| !w.is_zero()) {
        match classes.iter_mut().find(|(rep, _)| k_elements.iter().any(|g| g.mul_vec(rep) == *w)) {
            Some((_, count)) => *count += 1,
            None => classes.push((w.clone(), 1)),
        }
    }
    let k_order = k_elements.len() as u128;
    let base = if n0 == 0 { 1 } else { imprimitive_order(k_order, h_order, n0) };
    classes.iter().fold(base, |acc, (_, count)| acc * factorial(*count))
}

/// The monomial complex reflection group `G(m, p, n)` on `C^n`.
pub fn build_gmpn(m: u32, p: u32, n: usize) -> Result<FiniteMatrixGroup, CatalogueError> {
    if m == 0 || p == 0 || !m.is_multiple_of(p) || n == 0 {
        return Err(CatalogueError::Parameter(format!("invalid G({m},{p},{n}): need p | m and n >= 1")));
    }
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut s = ExactMatrix::identity(n);
        s[(i, i)] = c(0);
        s[(i + 1, i + 1)] = c(0);
        s[(i, i + 1)] = c(1);
        s[(i + 1, i)] = c(1);
        gens.push(s);
    }
    if n >= 2 && p > 1 {
        let mut s = ExactMatrix::identity(n);
        s[(0, 0)] = c(0);
        s[(1, 1)] = c(0);
        s[(0, 1)] = Cyclotomic::root_of_unity(m, -1)?;
        s[(1, 0)] = Cyclotomic::root_of_unity(m, 1)?;
        gens.push(s);
    }
    if p < m {
        let mut t = ExactMatrix::identity(n);
        t[(0, 0)] = Cyclotomic::root_of_unity(m, p as i64)?;
        gens.push(t);
    }
    Ok(FiniteMatrixGroup::new(n, gens)?)
}

/// `|G(m, p, n)| = mⁿ · n! / p`.
pub fn gmpn_order(m: u32, p: u32, n: usize) -> u128 {
    (m as u128).pow(n as u32) * factorial(n) / p as u128
}

/// `g ↦ diag(g, g⁻ᵀ)`, the action on `𝔥 ⊕ 𝔥*` preserving the standard form.
pub fn double(w: &FiniteMatrixGroup) -> Result<FiniteMatrixGroup, CatalogueError> {
    let d = w.dim();
    let gens = w
        .gens()
        .iter()
        .map(|g| Ok(ExactMatrix::block_diag(g, &g.inverse()?.transpose())))
        .collect::<Result<Vec<_>, CatalogueError>>()?;
    Ok(FiniteMatrixGroup::new(2 * d, gens)?)
}

/// Direct sum of symplectic matrices on `C^{2a}` and `C^{2b}`, keeping the
/// standard form on `C^{2(a+b)}`.
pub fn symplectic_sum(x: &ExactMatrix, y: &ExactMatrix) -> ExactMatrix {
    let (a, b) = (x.rows() / 2, y.rows() / 2);
    let n = a + b;
    let place_x = |i: usize| if i < a { i } else { n + (i - a) };
    let place_y = |i: usize| if i < b { a + i } else { n + a + (i - b) };
    let mut m = ExactMatrix::zeros(2 * n, 2 * n);
    for i in 0..2 * a {
        for j in 0..2 * a {
            m[(place_x(i), place_x(j))] = x[(i, j)].clone();
        }
    }
    for i in 0..2 * b {
        for j in 0..2 * b {
            m[(place_y(i), place_y(j))] = y[(i, j)].clone();
        }
    }
    m
}

/// Direct product of two groups acting on complementary symplectic subspaces.
pub fn symplectic_product(g: &FiniteMatrixGroup, h: &FiniteMatrixGroup) -> Result<FiniteMatrixGroup, CatalogueError> {
    let (ig, ih) = (ExactMatrix::identity(g.dim()), ExactMatrix::identity(h.dim()));
    let mut gens: Vec<ExactMatrix> = g.gens().iter().map(|x| symplectic_sum(x, &ih)).collect();
    gens.extend(h.gens().iter().map(|y| symplectic_sum(&ig, y)));
    Ok(FiniteMatrixGroup::new(g.dim() + h.dim(), gens)?)
}

/// `{±I₂}` on one symplectic plane.
pub fn c2_plane() -> FiniteMatrixGroup {
    FiniteMatrixGroup::new(2, vec![ExactMatrix::scalar(2, &c(-1))]).expect("invertible")
}

/// Real reflection group of a Coxeter matrix, acting on the span of the
/// simple roots.  Entries `m_ij` must be at least 2 off the diagonal.
pub fn coxeter_group(coxeter: &[Vec<u32>]) -> Result<FiniteMatrixGroup, CatalogueError> {
    let r = coxeter.len();
    let half = Cyclotomic::rational(1, 2).expect("nonzero");
    let bilinear = |i: usize, j: usize| -> Cyclotomic {
        if i == j {
            return c(1);
        }
        let m = coxeter[i][j];
        let z = Cyclotomic::zeta(2 * m);
        (&z + &z.complex_conjugate()).mul(&half).neg()
    };
    let mut gens = Vec::new();
    for i in 0..r {
        let mut s = ExactMatrix::identity(r);
        for j in 0..r {
            let v = &s[(i, j)] - &bilinear(i, j).scale_i64(2);
            s[(i, j)] = v;
        }
        gens.push(s);
    }
    Ok(FiniteMatrixGroup::new(r, gens)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SymplecticSpace;

    #[test]
    fn sl2_orders() {
        for kind in [
            Sl2Kind::Cyclic(4),
            Sl2Kind::BinaryDihedral(2),
            Sl2Kind::BinaryDihedral(3),
            Sl2Kind::BinaryTetrahedral,
            Sl2Kind::BinaryOctahedral,
            Sl2Kind::BinaryIcosahedral,
        ] {
            let g = build_sl2_subgroup(kind).unwrap();
            assert_eq!(g.enumerate().unwrap().len() as u128, kind.order(), "{kind:?}");
            assert!(g.preserves_form(&SymplecticSpace::standard(2)));
        }
    }

    #[test]
    fn gmpn_orders_match_formula() {
        for (m, p, n) in [(3, 3, 2), (4, 2, 2), (5, 5, 2), (2, 2, 3), (2, 1, 3), (4, 4, 3), (3, 3, 3), (1, 1, 4)] {
            let g = build_gmpn(m, p, n).unwrap();
            assert_eq!(g.enumerate().unwrap().len() as u128, gmpn_order(m, p, n), "G({m},{p},{n})");
        }
        assert!(build_gmpn(4, 3, 2).is_err());
    }

    #[test]
    fn doubled_groups_are_symplectic() {
        let g = double(&build_gmpn(3, 3, 3).unwrap()).unwrap();
        assert!(g.preserves_form(&SymplecticSpace::standard(6)));
        assert_eq!(g.order().unwrap(), 54);
    }

    #[test]
    fn imprimitive_small_cases() {
        let c2 = build_sl2_subgroup(Sl2Kind::Cyclic(2)).unwrap();
        let g = build_imprimitive(&c2, &[], 2).unwrap();
        assert_eq!(g.enumerate().unwrap().len(), 4);
        let q8 = build_sl2_subgroup(Sl2Kind::BinaryDihedral(2)).unwrap();
        let full = build_imprimitive(&q8, q8.gens(), 2).unwrap();
        assert_eq!(full.enumerate().unwrap().len(), 128);
        assert!(full.preserves_form(&SymplecticSpace::standard(4)));
        assert!(build_imprimitive(&q8, &[], 2).is_err());
    }

    #[test]
    fn h3_has_order_120() {
        let h3 = coxeter_group(&[vec![1, 5, 2], vec![5, 1, 3], vec![2, 3, 1]]).unwrap();
        assert_eq!(h3.enumerate().unwrap().len(), 120);
    }

    #[test]
    fn symplectic_sum_preserves_standard_form() {
        let x = double(&build_gmpn(3, 3, 2).unwrap()).unwrap();
        let p = symplectic_product(&x, &c2_plane()).unwrap();
        assert!(p.preserves_form(&SymplecticSpace::standard(6)));
        assert_eq!(p.order().unwrap(), 12);
    }
}
