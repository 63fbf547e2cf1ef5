//! Finite matrix groups over cyclotomic fields: enumeration, orbits,
//! stabilizers and a stabilizer chain for order and membership.

mod chain;
mod elements;
mod intern;
mod modular;
mod orbit;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use chain::StabChain;
pub use elements::ElementSet;
pub use intern::{Interner, Key};
pub use modular::{ModularOrbit, Reduction};
pub use orbit::{Normalize, OrbitData};

use crate::linalg::{ExactMatrix, ExactVector, Subspace, SymplecticSpace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group has more than {cap} elements; enumeration refused (order and membership use the stabilizer chain instead)")]
    EnumerationCap { cap: usize },
    #[error("orbit exceeds the cap of {cap} points")]
    OrbitCap { cap: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("inconsistent group data: {0}")]
    Inconsistent(String),
}

/// Resource limits for enumeration and orbit computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub enumeration: usize,
    pub orbit: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { enumeration: 100_000, orbit: 10_000_000 }
    }
}

/// A finite group given by invertible generator matrices.
///
/// The element list, the stabilizer chain and the order are computed on
/// first use and cached; cloning shares the caches that already exist.
#[derive(Clone)]
pub struct FiniteMatrixGroup {
    dim: usize,
    gens: Vec<ExactMatrix>,
    hints: Vec<ExactVector>,
    limits: Limits,
    elements: OnceLock<Arc<ElementSet>>,
    chain: OnceLock<Arc<Mutex<StabChain>>>,
    order: OnceLock<u128>,
}

impl FiniteMatrixGroup {
    pub fn new(dim: usize, gens: Vec<ExactMatrix>) -> Result<Self, GroupError> {
        for (i, g) in gens.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(GroupError::DimensionMismatch { expected: dim, found: g.rows() });
            }
            if g.rank() != dim {
                return Err(GroupError::NotInvertible(i));
            }
        }
        let mut seen = std::collections::HashSet::new();
        let gens = gens.into_iter().filter(|g| !g.is_identity() && seen.insert(g.clone())).collect();
        Ok(FiniteMatrixGroup {
            dim,
            gens,
            hints: Vec::new(),
            limits: Limits::default(),
            elements: OnceLock::new(),
            chain: OnceLock::new(),
            order: OnceLock::new(),
        })
    }

    pub fn trivial(dim: usize) -> Self {
        FiniteMatrixGroup::new(dim, Vec::new()).expect("no generators")
    }

    /// Preferred base points for the stabilizer chain (small orbits first).
    pub fn with_hints(mut self, hints: Vec<ExactVector>) -> Self {
        self.hints = hints.into_iter().filter(|h| h.len() == self.dim && !h.is_zero()).collect();
        self.chain = OnceLock::new();
        self
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    /// Subgroup generated by `gens`, inheriting hints and limits.
    pub fn subgroup(&self, gens: Vec<ExactMatrix>) -> Result<Self, GroupError> {
        Ok(FiniteMatrixGroup::new(self.dim, gens)?.with_hints(self.hints.clone()).with_limits(self.limits))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[ExactMatrix] {
        &self.gens
    }

    pub fn hints(&self) -> &[ExactVector] {
        &self.hints
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn enumerate(&self) -> Result<Arc<ElementSet>, GroupError> {
        self.enumerate_with_cap(self.limits.enumeration)
    }

    pub fn enumerate_with_cap(&self, cap: usize) -> Result<Arc<ElementSet>, GroupError> {
        if let Some(e) = self.elements.get() {
            if e.len() <= cap {
                return Ok(e.clone());
            }
            return Err(GroupError::EnumerationCap { cap });
        }
        if let Some(&o) = self.order.get() {
            if o > cap as u128 {
                return Err(GroupError::EnumerationCap { cap });
            }
        }
        let set = Arc::new(ElementSet::enumerate(self.dim, &self.gens, cap)?);
        let _ = self.order.set(set.len() as u128);
        let _ = self.elements.set(set);
        Ok(self.elements.get().expect("just set").clone())
    }

    /// Cached element list, if it was computed.
    pub fn cached_elements(&self) -> Option<Arc<ElementSet>> {
        self.elements.get().cloned()
    }

    pub fn chain(&self) -> Result<Arc<Mutex<StabChain>>, GroupError> {
        if let Some(c) = self.chain.get() {
            return Ok(c.clone());
        }
        let c = StabChain::from_generators(self.dim, &self.gens, self.hints.clone(), self.limits.orbit)?;
        let order = c.order();
        if let Some(&known) = self.order.get() {
            if known != order {
                return Err(GroupError::Inconsistent(format!(
                    "stabilizer chain gives order {order}, enumeration gave {known}"
                )));
            }
        }
        let _ = self.order.set(order);
        let _ = self.chain.set(Arc::new(Mutex::new(c)));
        Ok(self.chain.get().expect("just set").clone())
    }

    /// Group order from the stabilizer chain (or a cached enumeration).
    pub fn order(&self) -> Result<u128, GroupError> {
        if let Some(&o) = self.order.get() {
            return Ok(o);
        }
        self.chain()?;
        Ok(*self.order.get().expect("set by chain"))
    }

    pub fn is_member(&self, m: &ExactMatrix) -> Result<bool, GroupError> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Ok(false);
        }
        if let Some(e) = self.elements.get() {
            return Ok(e.contains(m));
        }
        let chain = self.chain()?;
        let mut c = chain.lock().expect("chain lock");
        Ok(c.contains(m))
    }

    pub fn orbit(&self, seed: &ExactVector, normalize: Normalize) -> Result<OrbitData, GroupError> {
        if seed.len() != self.dim {
            return Err(GroupError::DimensionMismatch { expected: self.dim, found: seed.len() });
        }
        OrbitData::compute(&self.gens, seed, normalize, self.limits.orbit)
    }

    /// `{g : g v = v}`, generated by seeded random Schreier generators and
    /// certified by `|orbit| · |stabilizer| = |G|`.
    pub fn stabilizer(&self, v: &ExactVector, seed: u64) -> Result<FiniteMatrixGroup, GroupError> {
        if v.len() != self.dim {
            return Err(GroupError::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        if v.is_zero() || self.is_trivial() {
            return Ok(self.clone());
        }
        if let Some(elements) = self.elements.get() {
            let fixing: Vec<ExactMatrix> = elements.iter().filter(|g| g.mul_vec(v) == *v).collect();
            return self.generated_by_candidates(fixing.len() as u128, fixing.into_iter());
        }
        if let Some(h) = self.modular_stabilizer(v, seed)? {
            return Ok(h);
        }
        let orbit = self.orbit(v, Normalize::None)?;
        let order = self.order()?;
        let n = orbit.len() as u128;
        if order % n != 0 {
            return Err(GroupError::Inconsistent(format!("orbit size {n} does not divide order {order}")));
        }
        let target = order / n;
        let inverses: Vec<ExactMatrix> =
            self.gens.iter().map(|g| g.inverse().expect("generators are invertible")).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ngens = self.gens.len();
        let orbit_ref = &orbit;
        let npoints = orbit.len();
        let random = std::iter::repeat_with(move || (rng.gen_range(0..npoints), rng.gen_range(0..ngens)));
        let candidates = random
            .take(RANDOM_SCHREIER_BUDGET)
            .chain((0..orbit_ref.len()).flat_map(|i| (0..ngens).map(move |s| (i, s))))
            .filter(|&(i, s)| !orbit_ref.is_tree_edge(i, s))
            .map(|(i, s)| orbit_ref.schreier_generator(i, s, &inverses));
        self.generated_by_candidates(target, candidates)
    }

    /// Stabilizer from an orbit of the reduction modulo a large prime.
    ///
    /// The reduced orbit is never longer than the true one, so
    /// `|G| / |reduced orbit|` bounds `|G_v|` from above; Schreier generators
    /// read off its tree are evaluated exactly and kept only if they fix `v`.
    /// Returns `None` (and the caller works exactly) unless the generated
    /// subgroup reaches the bound.
    fn modular_stabilizer(&self, v: &ExactVector, seed: u64) -> Result<Option<FiniteMatrixGroup>, GroupError> {
        let red = Reduction::new(crate::cyclo::common_conductor(
            self.gens.iter().flat_map(|g| g.entries()).chain(v.iter()),
        ));
        let Some(gens) = self.gens.iter().map(|g| red.matrix(g)).collect::<Option<Vec<_>>>() else {
            return Ok(None);
        };
        let Some(start) = red.vector(v) else {
            return Ok(None);
        };
        let Some(orbit) = ModularOrbit::compute(&red, &gens, start, self.limits.orbit)? else {
            return Ok(None);
        };
        let order = self.order()?;
        let n = orbit.len() as u128;
        if order % n != 0 {
            return Ok(None);
        }
        let bound = order / n;
        let inverses: Vec<ExactMatrix> =
            self.gens.iter().map(|g| g.inverse().expect("generators are invertible")).collect();
        let mut words = Transversals::new(self.dim, &self.gens, &inverses, &orbit);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut tries = 0;
        let candidates = std::iter::from_fn(|| {
            while tries < MODULAR_SCHREIER_BUDGET {
                tries += 1;
                let (i, s) = (rng.gen_range(0..orbit.len()), rng.gen_range(0..gens.len()));
                let Some(j) = orbit.image(&gens[s], i) else {
                    continue;
                };
                if orbit.is_tree_edge(i, s, j) {
                    continue;
                }
                let h = words.inverse(j).mul(&self.gens[s].mul(&words.forward(i)));
                if h.mul_vec(v) == *v {
                    return Some(h);
                }
            }
            None
        });
        let h = self.greedy_subgroup(candidates, Some(bound))?;
        Ok((h.order()? == bound).then_some(h))
    }

    /// Subgroup generated by `candidates`, keeping only those that enlarge
    /// it and stopping early once its order reaches `stop_at`.
    pub fn greedy_subgroup(
        &self,
        candidates: impl IntoIterator<Item = ExactMatrix>,
        stop_at: Option<u128>,
    ) -> Result<FiniteMatrixGroup, GroupError> {
        let mut chain = StabChain::new(self.dim, self.hints.clone(), self.limits.orbit);
        let mut gens = Vec::new();
        if stop_at != Some(1) {
            for h in candidates {
                if h.rows() != self.dim || h.cols() != self.dim {
                    return Err(GroupError::DimensionMismatch { expected: self.dim, found: h.rows() });
                }
                if h.is_identity() {
                    continue;
                }
                if chain.add_generator(&h)? {
                    gens.push(h);
                    if stop_at.is_some_and(|t| chain.order() >= t) {
                        break;
                    }
                }
            }
        }
        let order = chain.order();
        let h = self.subgroup(gens)?;
        let _ = h.order.set(order);
        let _ = h.chain.set(Arc::new(Mutex::new(chain)));
        Ok(h)
    }

    fn generated_by_candidates(
        &self,
        target: u128,
        candidates: impl Iterator<Item = ExactMatrix>,
    ) -> Result<FiniteMatrixGroup, GroupError> {
        let h = self.greedy_subgroup(candidates, Some(target))?;
        let order = h.order()?;
        if order != target {
            return Err(GroupError::Inconsistent(format!(
                "stabilizer generated by Schreier generators has order {order}, expected {target}"
            )));
        }
        Ok(h)
    }

    /// Elements fixing every vector of `s`, as iterated one-vector stabilizers.
    pub fn pointwise_stabilizer(&self, s: &Subspace, seed: u64) -> Result<FiniteMatrixGroup, GroupError> {
        if s.ambient_dim() != self.dim {
            return Err(GroupError::DimensionMismatch { expected: self.dim, found: s.ambient_dim() });
        }
        let mut h = self.clone();
        for (k, b) in s.basis().iter().enumerate() {
            h = h.stabilizer(b, seed.wrapping_add(k as u64))?;
        }
        Ok(h)
    }

    pub fn element_order_histogram(&self) -> Result<BTreeMap<u32, u64>, GroupError> {
        Ok(self.enumerate()?.order_histogram())
    }

    /// Every generator preserves the form of `sp`.
    pub fn preserves_form(&self, sp: &SymplecticSpace) -> bool {
        self.gens.iter().all(|g| sp.preserves(g))
    }
}

const RANDOM_SCHREIER_BUDGET: usize = 400;
const MODULAR_SCHREIER_BUDGET: usize = 4000;
const TRANSVERSAL_MEMO: usize = 4096;

/// Exact transversal elements of a modular orbit, memoized along tree paths.
struct Transversals<'a> {
    dim: usize,
    gens: &'a [ExactMatrix],
    inverses: &'a [ExactMatrix],
    orbit: &'a ModularOrbit,
    forward: HashMap<usize, ExactMatrix>,
    backward: HashMap<usize, ExactMatrix>,
}

impl<'a> Transversals<'a> {
    fn new(dim: usize, gens: &'a [ExactMatrix], inverses: &'a [ExactMatrix], orbit: &'a ModularOrbit) -> Self {
        Transversals { dim, gens, inverses, orbit, forward: HashMap::new(), backward: HashMap::new() }
    }

    /// `t_i` with `t_i · seed = point(i)`.
    fn forward(&mut self, i: usize) -> ExactMatrix {
        if let Some(t) = self.forward.get(&i) {
            return t.clone();
        }
        let t = if i == 0 {
            ExactMatrix::identity(self.dim)
        } else {
            let (parent, s) = self.orbit.edge_into(i);
            self.gens[s].mul(&self.forward(parent))
        };
        if self.forward.len() >= TRANSVERSAL_MEMO {
            self.forward.clear();
        }
        self.forward.insert(i, t.clone());
        t
    }

    /// `t_i⁻¹`.
    fn inverse(&mut self, i: usize) -> ExactMatrix {
        if let Some(t) = self.backward.get(&i) {
            return t.clone();
        }
        let t = if i == 0 {
            ExactMatrix::identity(self.dim)
        } else {
            let (parent, s) = self.orbit.edge_into(i);
            self.inverse(parent).mul(&self.inverses[s])
        };
        if self.backward.len() >= TRANSVERSAL_MEMO {
            self.backward.clear();
        }
        self.backward.insert(i, t.clone());
        t
    }
}

impl std::fmt::Debug for FiniteMatrixGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteMatrixGroup")
            .field("dim", &self.dim)
            .field("gens", &self.gens.len())
            .field("order", &self.order.get())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Cyclotomic;

    fn perm(p: &[usize]) -> ExactMatrix {
        let n = p.len();
        let mut m = ExactMatrix::zeros(n, n);
        for (j, &i) in p.iter().enumerate() {
            m[(i, j)] = Cyclotomic::one();
        }
        m
    }

    fn s4() -> FiniteMatrixGroup {
        FiniteMatrixGroup::new(4, vec![perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])]).unwrap()
    }

    #[test]
    fn trivial_group() {
        let g = FiniteMatrixGroup::trivial(3);
        assert_eq!(g.order().unwrap(), 1);
        assert_eq!(g.enumerate().unwrap().len(), 1);
        assert!(g.is_member(&ExactMatrix::identity(3)).unwrap());
        assert_eq!(g.element_order_histogram().unwrap(), BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn chain_and_enumeration_agree() {
        let g = s4();
        let fresh = s4();
        assert_eq!(g.order().unwrap(), 24);
        assert_eq!(fresh.enumerate().unwrap().len(), 24);
        assert!(g.is_member(&perm(&[3, 2, 1, 0])).unwrap());
        let mut neg = ExactMatrix::identity(4);
        neg[(0, 0)] = Cyclotomic::from_i64(-1);
        assert!(!g.is_member(&neg).unwrap());
    }

    #[test]
    fn enumeration_cap() {
        let g = s4();
        assert_eq!(g.enumerate_with_cap(10).unwrap_err(), GroupError::EnumerationCap { cap: 10 });
    }

    #[test]
    fn stabilizer_orbit_product() {
        let g = s4();
        let v = ExactVector::from_i64(&[1, 1, 2, 3]);
        let orbit = g.orbit(&v, Normalize::None).unwrap();
        let h = g.stabilizer(&v, 0).unwrap();
        assert_eq!(orbit.len() as u128 * h.order().unwrap(), 24);
        assert_eq!(h.order().unwrap(), 2);
        assert_eq!(h.enumerate().unwrap().len(), 2);
        assert!(g.stabilizer(&ExactVector::zeros(4), 0).unwrap().order().unwrap() == 24);
    }

    #[test]
    fn pointwise_stabilizer_is_basis_independent() {
        let g = s4();
        let s = Subspace::from_spanning(4, &[ExactVector::from_i64(&[1, 1, 0, 0]), ExactVector::from_i64(&[0, 0, 1, 0])])
            .unwrap();
        let h = g.pointwise_stabilizer(&s, 1).unwrap();
        assert_eq!(h.order().unwrap(), 2);
        assert_eq!(g.pointwise_stabilizer(&Subspace::zero(4), 0).unwrap().order().unwrap(), 24);
    }

    #[test]
    fn cyclic_histogram() {
        let i = Cyclotomic::i();
        let g = ExactMatrix::from_rows(vec![vec![i.clone(), Cyclotomic::zero()], vec![Cyclotomic::zero(), i.neg()]])
            .unwrap();
        let grp = FiniteMatrixGroup::new(2, vec![g]).unwrap();
        assert_eq!(grp.element_order_histogram().unwrap(), BTreeMap::from([(1, 1), (2, 1), (4, 2)]));
    }
}
