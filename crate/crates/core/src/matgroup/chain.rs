use super::intern::{Interner, Key};
use super::orbit::{Normalize, OrbitData};
use super::GroupError;
use crate::linalg::{ExactMatrix, ExactVector};

struct Level {
    base: ExactVector,
    /// Indices into the chain's strong generators.
    gens: Vec<usize>,
    orbit: OrbitData,
    /// Cached `(t_p, t_p⁻¹)` per orbit point, interned.
    cache: Vec<Option<(Key, Key)>>,
    table: Interner,
    /// Per level generator: orbit points whose Schreier generators were sifted.
    checked: Vec<usize>,
}

/// Base and strong generating set with vector base points.
///
/// The chain is built by the deterministic Schreier-Sims algorithm, so the
/// order and membership answers it gives are exact.
pub struct StabChain {
    dim: usize,
    hints: Vec<ExactVector>,
    strong: Vec<ExactMatrix>,
    strong_inv: Vec<ExactMatrix>,
    levels: Vec<Level>,
    orbit_cap: usize,
}

impl StabChain {
    /// Empty chain (trivial group).  `hints` are preferred base points, tried
    /// in order before the standard basis.
    pub fn new(dim: usize, hints: Vec<ExactVector>, orbit_cap: usize) -> Self {
        StabChain { dim, hints, strong: Vec::new(), strong_inv: Vec::new(), levels: Vec::new(), orbit_cap }
    }

    pub fn from_generators(
        dim: usize,
        gens: &[ExactMatrix],
        hints: Vec<ExactVector>,
        orbit_cap: usize,
    ) -> Result<Self, GroupError> {
        let mut c = StabChain::new(dim, hints, orbit_cap);
        for g in gens {
            c.add_generator(g)?;
        }
        Ok(c)
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<ExactVector> {
        self.levels.iter().map(|l| l.base.clone()).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[ExactMatrix] {
        &self.strong
    }

    /// Sift `g` from `start`; returns the residue and the level where it left
    /// the chain (`levels.len()` if it passed every level).
    fn sift_from(&mut self, mut g: ExactMatrix, start: usize) -> (ExactMatrix, usize) {
        for i in start..self.levels.len() {
            let p = g.mul_vec(&self.levels[i].base);
            let Some(j) = self.levels[i].orbit.index_of(&p) else {
                return (g, i);
            };
            if j != 0 {
                let u = self.inverse_transversal(i, j);
                g = u.mul(&g);
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&mut self, g: &ExactMatrix) -> bool {
        if g.rows() != self.dim || g.cols() != self.dim {
            return false;
        }
        let (r, j) = self.sift_from(g.clone(), 0);
        j == self.levels.len() && r.is_identity()
    }

    fn inverse_transversal(&mut self, level: usize, j: usize) -> ExactMatrix {
        self.transversal_pair(level, j).1
    }

    /// `(t_j, t_j⁻¹)` for orbit point `j` of `level`, cached along the tree.
    fn transversal_pair(&mut self, level: usize, j: usize) -> (ExactMatrix, ExactMatrix) {
        let dim = self.dim;
        let lvl = &mut self.levels[level];
        if j == 0 {
            return (ExactMatrix::identity(dim), ExactMatrix::identity(dim));
        }
        if let Some((t, u)) = &lvl.cache[j] {
            return (lvl.table.matrix(dim, dim, t), lvl.table.matrix(dim, dim, u));
        }
        let mut path = Vec::new();
        let mut cur = j;
        while cur != 0 && lvl.cache[cur].is_none() {
            path.push(cur);
            cur = lvl.orbit.parent(cur);
        }
        let (mut t, mut u) = match &lvl.cache[cur] {
            Some((t, u)) if cur != 0 => (lvl.table.matrix(dim, dim, t), lvl.table.matrix(dim, dim, u)),
            _ => (ExactMatrix::identity(dim), ExactMatrix::identity(dim)),
        };
        for &p in path.iter().rev() {
            let g = lvl.gens[lvl.orbit.via(p)];
            t = self.strong[g].mul(&t);
            u = u.mul(&self.strong_inv[g]);
            lvl.cache[p] = Some((lvl.table.key(t.entries()), lvl.table.key(u.entries())));
        }
        (t, u)
    }

    /// `t_{s·p}⁻¹ · s · t_p` for level generator `s`.
    fn schreier_generator(&mut self, level: usize, p: usize, s: usize) -> ExactMatrix {
        let q = self.levels[level].orbit.edge(p, s);
        let g = self.levels[level].gens[s];
        let (tp, _) = self.transversal_pair(level, p);
        let (_, uq) = self.transversal_pair(level, q);
        uq.mul(&self.strong[g].mul(&tp))
    }

    fn pick_base(&self, r: &ExactMatrix) -> ExactVector {
        let used: Vec<&ExactVector> = self.levels.iter().map(|l| &l.base).collect();
        self.hints
            .iter()
            .cloned()
            .chain((0..self.dim).map(|i| ExactVector::unit(self.dim, i)))
            .find(|v| !used.contains(&v) && r.mul_vec(v) != *v)
            .expect("a non-identity matrix moves some basis vector")
    }

    /// Install `r` as a strong generator on levels `from..=to`, opening a new
    /// level when `to` equals the current depth.
    fn install(&mut self, r: ExactMatrix, from: usize, to: usize) -> Result<(), GroupError> {
        let inv = r.inverse().map_err(|_| GroupError::NotInvertible(self.strong.len()))?;
        let idx = self.strong.len();
        if to == self.levels.len() {
            let base = self.pick_base(&r);
            let orbit = OrbitData::compute(&[], &base, Normalize::None, self.orbit_cap)?;
            self.levels.push(Level {
                base,
                gens: Vec::new(),
                orbit,
                cache: vec![None],
                table: Interner::new(),
                checked: Vec::new(),
            });
        }
        self.strong.push(r.clone());
        self.strong_inv.push(inv);
        for lvl in &mut self.levels[from..=to] {
            lvl.gens.push(idx);
            lvl.checked.push(0);
            lvl.orbit.add_generator(r.clone())?;
            lvl.cache.resize(lvl.orbit.len(), None);
        }
        Ok(())
    }

    /// Add `g` to the group and restore the BSGS property.  Returns whether
    /// `g` was new (not already a member).
    pub fn add_generator(&mut self, g: &ExactMatrix) -> Result<bool, GroupError> {
        if g.rows() != self.dim || g.cols() != self.dim {
            return Err(GroupError::DimensionMismatch { expected: self.dim, found: g.rows() });
        }
        let (r, j) = self.sift_from(g.clone(), 0);
        if j == self.levels.len() && r.is_identity() {
            return Ok(false);
        }
        self.install(r, 0, j)?;
        self.complete(j)?;
        Ok(true)
    }

    fn complete(&mut self, mut i: usize) -> Result<(), GroupError> {
        'outer: loop {
            while let Some((p, s)) = self.next_pair(i) {
                if self.levels[i].orbit.is_tree_edge(p, s) {
                    continue;
                }
                let h = self.schreier_generator(i, p, s);
                if h.is_identity() {
                    continue;
                }
                let (r, j) = self.sift_from(h, i + 1);
                if j == self.levels.len() && r.is_identity() {
                    continue;
                }
                self.install(r, i + 1, j)?;
                i = j;
                continue 'outer;
            }
            if i == 0 {
                return Ok(());
            }
            i -= 1;
        }
    }

    fn next_pair(&mut self, i: usize) -> Option<(usize, usize)> {
        let lvl = &mut self.levels[i];
        let n = lvl.orbit.len();
        for s in 0..lvl.gens.len() {
            if lvl.checked[s] < n {
                let p = lvl.checked[s];
                lvl.checked[s] += 1;
                return Some((p, s));
            }
        }
        None
    }
}
