use std::collections::HashMap;

use crate::cyclo::Cyclotomic;
use crate::linalg::{ExactMatrix, ExactVector};

/// Compact key of an interned vector or matrix: one scalar id per entry.
pub type Key = Box<[u32]>;

/// Table assigning small ids to the distinct scalars seen so far.
///
/// Large point sets (orbits, enumerated groups) store interned keys instead
/// of full cyclotomic entries.
#[derive(Clone, Default)]
pub struct Interner {
    ids: HashMap<Cyclotomic, u32>,
    values: Vec<Cyclotomic>,
}

impl Interner {
    pub fn new() -> Self {
        Interner::default()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn id(&mut self, c: &Cyclotomic) -> u32 {
        if let Some(&i) = self.ids.get(c) {
            return i;
        }
        let i = self.values.len() as u32;
        self.values.push(c.clone());
        self.ids.insert(c.clone(), i);
        i
    }

    pub fn value(&self, id: u32) -> &Cyclotomic {
        &self.values[id as usize]
    }

    pub fn key(&mut self, entries: &[Cyclotomic]) -> Key {
        entries.iter().map(|c| self.id(c)).collect()
    }

    /// Key of already-seen entries; `None` if some scalar was never interned.
    pub fn lookup(&self, entries: &[Cyclotomic]) -> Option<Key> {
        entries.iter().map(|c| self.ids.get(c).copied()).collect()
    }

    pub fn vector(&self, key: &[u32]) -> ExactVector {
        ExactVector(key.iter().map(|&i| self.values[i as usize].clone()).collect())
    }

    pub fn matrix(&self, rows: usize, cols: usize, key: &[u32]) -> ExactMatrix {
        ExactMatrix::new(rows, cols, key.iter().map(|&i| self.values[i as usize].clone()).collect())
            .expect("key length matches shape")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut t = Interner::new();
        let v = ExactVector(vec![Cyclotomic::i(), Cyclotomic::zero(), Cyclotomic::i()]);
        let k = t.key(&v.0);
        assert_eq!(t.len(), 2);
        assert_eq!(k[0], k[2]);
        assert_eq!(t.vector(&k), v);
        assert_eq!(t.lookup(&v.0), Some(k));
        assert_eq!(t.lookup(&[Cyclotomic::from_i64(7)]), None);
    }
}
