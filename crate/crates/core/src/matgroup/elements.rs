use std::collections::BTreeMap;

use indexmap::IndexSet;

use super::intern::{Interner, Key};
use super::GroupError;
use crate::linalg::ExactMatrix;

/// Complete list of the elements of a finite matrix group.
///
/// Index 0 is the identity; the remaining order is the breadth-first order
/// of discovery from the generators, which is deterministic.
#[derive(Clone)]
pub struct ElementSet {
    dim: usize,
    table: Interner,
    keys: IndexSet<Key>,
}

impl ElementSet {
    pub(crate) fn enumerate(dim: usize, gens: &[ExactMatrix], cap: usize) -> Result<ElementSet, GroupError> {
        let mut set = ElementSet { dim, table: Interner::new(), keys: IndexSet::new() };
        let id = set.table.key(ExactMatrix::identity(dim).entries());
        set.keys.insert(id);
        let gens: Vec<&ExactMatrix> = gens.iter().filter(|g| !g.is_identity()).collect();
        let mut next = 0;
        while next < set.keys.len() {
            let x = set.get(next);
            for g in &gens {
                let y = x.mul(g);
                let key = set.table.key(y.entries());
                if set.keys.insert(key) && set.keys.len() > cap {
                    return Err(GroupError::EnumerationCap { cap });
                }
            }
            next += 1;
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize) -> ExactMatrix {
        self.table.matrix(self.dim, self.dim, &self.keys[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = ExactMatrix> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }

    pub fn index_of(&self, m: &ExactMatrix) -> Option<usize> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return None;
        }
        let key = self.table.lookup(m.entries())?;
        self.keys.get_index_of(&key)
    }

    pub fn contains(&self, m: &ExactMatrix) -> bool {
        self.index_of(m).is_some()
    }

    /// Multiplicative order of every element, by index.
    pub fn element_orders(&self) -> Vec<u32> {
        let mut orders = vec![0u32; self.len()];
        for i in 0..self.len() {
            if orders[i] != 0 {
                continue;
            }
            let x = self.get(i);
            let mut powers = vec![i];
            let mut p = x.clone();
            while !p.is_identity() {
                p = p.mul(&x);
                powers.push(self.index_of(&p).expect("closed under multiplication"));
            }
            let ord = powers.len() as u32;
            for (j, &idx) in powers.iter().enumerate() {
                let k = j as u32 + 1;
                orders[idx] = ord / gcd(k, ord);
            }
        }
        orders
    }

    pub fn order_histogram(&self) -> BTreeMap<u32, u64> {
        let mut h = BTreeMap::new();
        for o in self.element_orders() {
            *h.entry(o).or_insert(0) += 1;
        }
        h
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl std::fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ElementSet({} elements of degree {})", self.len(), self.dim)
    }
}
