use std::collections::HashMap;

use num_bigint::BigInt;
use num_prime::nt_funcs::{factorize64, is_prime64};
use num_traits::ToPrimitive;

use super::GroupError;
use crate::cyclo::{common_conductor, Cyclotomic, Int};
use crate::linalg::{ExactMatrix, ExactVector};

/// Ring homomorphism `Z[ζ_N, 1/d] → F_p` sending `ζ_N` to a fixed primitive
/// `N`-th root of unity modulo a prime `p ≡ 1 (mod N)`.
///
/// Reduction commutes with matrix action, so it maps every orbit onto an
/// orbit of the reduced group; the reduced orbit is never larger.
#[derive(Debug, Clone)]
pub struct Reduction {
    p: u64,
    n: u32,
    powers: Vec<u64>,
}

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    r
}

impl Reduction {
    /// The largest suitable prime below `2^62` for conductor `n`.
    pub fn new(n: u32) -> Reduction {
        let n = n.max(1);
        let step = n as u64;
        let mut p = ((1u64 << 62) / step) * step + 1;
        while p > (1u64 << 62) || !is_prime64(p) {
            p -= step;
        }
        let factors: Vec<u64> = factorize64(step).into_keys().collect();
        let root = (2..)
            .map(|g| pow(g, (p - 1) / step, p))
            .find(|&r| factors.iter().all(|&q| pow(r, step / q, p) != 1))
            .expect("F_p^* is cyclic of order divisible by n");
        let mut powers = Vec::with_capacity(n as usize);
        let mut x = 1;
        for _ in 0..n {
            powers.push(x);
            x = mul(x, root, p);
        }
        Reduction { p, n, powers }
    }

    pub fn for_matrices(ms: &[ExactMatrix]) -> Reduction {
        Reduction::new(common_conductor(ms.iter().flat_map(|m| m.entries())))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    fn int(&self, x: &Int) -> u64 {
        match x {
            Int::Small(v) => v.rem_euclid(self.p as i64) as u64,
            Int::Big(b) => {
                let r = (&**b % BigInt::from(self.p) + BigInt::from(self.p)) % BigInt::from(self.p);
                r.to_u64().expect("residue fits")
            }
        }
    }

    /// `None` when a denominator vanishes modulo `p` or the conductor does
    /// not divide `N`.
    pub fn scalar(&self, c: &Cyclotomic) -> Option<u64> {
        let m = c.conductor();
        if !self.n.is_multiple_of(m) {
            return None;
        }
        let stride = (self.n / m) as usize;
        let mut acc = 0;
        for (e, num, den) in c.coefficients() {
            let d = self.int(&den);
            if d == 0 {
                return None;
            }
            let term = mul(self.int(&num), pow(d, self.p - 2, self.p), self.p);
            acc = (acc + mul(term, self.powers[e as usize * stride % self.n as usize], self.p)) % self.p;
        }
        Some(acc)
    }

    pub fn vector(&self, v: &ExactVector) -> Option<Vec<u64>> {
        v.iter().map(|c| self.scalar(c)).collect()
    }

    pub fn matrix(&self, m: &ExactMatrix) -> Option<Vec<u64>> {
        m.entries().iter().map(|c| self.scalar(c)).collect()
    }
}

fn dot(row: &[u64], x: &[u64], p: u64) -> u64 {
    let mut acc = 0u128;
    for (k, (a, b)) in row.iter().zip(x).enumerate() {
        acc += *a as u128 * *b as u128;
        if k % 8 == 7 {
            acc %= p as u128;
        }
    }
    (acc % p as u128) as u64
}

/// Orbit of a reduced vector with a Schreier tree, points stored flat.
pub struct ModularOrbit {
    dim: usize,
    p: u64,
    index: HashMap<u64, u32>,
    points: Vec<u64>,
    parent: Vec<u32>,
    via: Vec<u8>,
}

impl ModularOrbit {
    /// `None` if two distinct points share a hash (the caller then falls
    /// back to exact arithmetic).
    pub fn compute(
        red: &Reduction,
        gens: &[Vec<u64>],
        seed: Vec<u64>,
        cap: usize,
    ) -> Result<Option<ModularOrbit>, GroupError> {
        if gens.len() > u8::MAX as usize {
            return Ok(None);
        }
        let dim = seed.len();
        let mut orbit = ModularOrbit {
            dim,
            p: red.p,
            index: HashMap::new(),
            points: seed,
            parent: vec![u32::MAX],
            via: vec![u8::MAX],
        };
        orbit.index.insert(orbit.hash(orbit.point(0)), 0);
        let mut image = vec![0u64; dim];
        let mut next = 0;
        while next < orbit.len() {
            for (s, g) in gens.iter().enumerate() {
                orbit.apply_into(g, next, &mut image);
                let h = orbit.hash(&image);
                match orbit.index.get(&h) {
                    Some(&j) => {
                        if orbit.point(j as usize) != image.as_slice() {
                            return Ok(None);
                        }
                    }
                    None => {
                        if orbit.len() >= cap {
                            return Err(GroupError::OrbitCap { cap });
                        }
                        orbit.index.insert(h, orbit.len() as u32);
                        orbit.points.extend_from_slice(&image);
                        orbit.parent.push(next as u32);
                        orbit.via.push(s as u8);
                    }
                }
            }
            next += 1;
        }
        Ok(Some(orbit))
    }

    fn hash(&self, x: &[u64]) -> u64 {
        let h = x.iter().fold(0u64, |h, a| (h.rotate_left(5) ^ a).wrapping_mul(0x517c_c1b7_2722_0a95));
        (h ^ (h >> 31)).wrapping_mul(0x9e37_79b9_7f4a_7c15)
    }

    fn apply_into(&self, g: &[u64], i: usize, out: &mut [u64]) {
        let x = self.point(i);
        for (r, o) in out.iter_mut().enumerate() {
            *o = dot(&g[r * self.dim..(r + 1) * self.dim], x, self.p);
        }
    }

    /// Index of `g · point(i)`, if that point is in the orbit.
    pub fn image(&self, g: &[u64], i: usize) -> Option<usize> {
        let mut out = vec![0; self.dim];
        self.apply_into(g, i, &mut out);
        let j = *self.index.get(&self.hash(&out))? as usize;
        (self.point(j) == out.as_slice()).then_some(j)
    }

    /// Whether point `j` was first reached from point `i` by generator `s`.
    pub fn is_tree_edge(&self, i: usize, s: usize, j: usize) -> bool {
        j != 0 && self.parent[j] as usize == i && self.via[j] as usize == s
    }

    /// Tree parent and incoming generator of point `i > 0`.
    pub fn edge_into(&self, i: usize) -> (usize, usize) {
        (self.parent[i] as usize, self.via[i] as usize)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn point(&self, i: usize) -> &[u64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_is_a_ring_homomorphism() {
        let red = Reduction::new(20);
        assert_eq!(red.prime() % 20, 1);
        let a = crate::cyclo::parse_literal("1/3*E(4)+E(5)^2-7/2").unwrap();
        let b = crate::cyclo::parse_literal("E(20)^3-2*E(4)").unwrap();
        let (ra, rb) = (red.scalar(&a).unwrap(), red.scalar(&b).unwrap());
        assert_eq!(red.scalar(&(&a * &b)).unwrap(), mul(ra, rb, red.prime()));
        assert_eq!(red.scalar(&(&a + &b)).unwrap(), (ra + rb) % red.prime());
        let z = red.scalar(&Cyclotomic::zeta(20)).unwrap();
        assert_eq!(pow(z, 20, red.prime()), 1);
        assert_ne!(pow(z, 10, red.prime()), 1);
        assert!(red.scalar(&Cyclotomic::zeta(3)).is_none());
    }

    #[test]
    fn modular_orbit_of_a_permutation_action() {
        let cyc = ExactMatrix::from_i64_rows(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]).unwrap();
        let red = Reduction::new(1);
        let g = red.matrix(&cyc).unwrap();
        let seed = red.vector(&ExactVector::from_i64(&[1, 2, 3])).unwrap();
        let o = ModularOrbit::compute(&red, &[g], seed, 10).unwrap().unwrap();
        assert_eq!(o.len(), 3);
        assert_eq!(o.edge_into(2), (1, 0));
        assert!(o.is_tree_edge(1, 0, 2));
    }
}
