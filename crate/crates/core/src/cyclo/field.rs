//! Zumbroich-basis bookkeeping for `Q(ζ_n)`.
//!
//! For `n = ∏ p^k` the basis is the tensor product of the prime-power bases.
//! An exponent `e` of `ζ_n` is split into its CRT components
//! `a_p = e · (n / p^k)^{-1} mod p^k`, and writing `a_p = x + y·p^{k-1}`
//! with `0 ≤ x < p^{k-1}`, the exponent is a basis exponent iff for every
//! prime `y ∈ {0}` (p = 2) or `y ∈ {1, …, p-1}` (p odd).
//!
//! Adding `n/p` to an exponent shifts `y` by one and leaves every other
//! component alone, so the relation `Σ_{j<p} ζ^{e + j·n/p} = 0` rewrites each
//! non-basis exponent into basis exponents one prime at a time.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use super::int::Int;

pub(crate) struct PrimePart {
    pub p: u32,
    pub k: u32,
    /// `n / p`
    pub shift: u32,
    /// `bad[e]` iff exponent `e` violates the basis condition at this prime.
    pub bad: Vec<bool>,
}

pub(crate) struct FieldTables {
    pub n: u32,
    pub primes: Vec<PrimePart>,
    /// Units of `Z/n`, ascending; index 0 is 1.
    pub units: Vec<u32>,
}

pub(crate) fn factor(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn inv_mod(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i64 % m as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i64) as u64
}

pub(crate) fn gcd_u32(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm_u32(a: u32, b: u32) -> u32 {
    a / gcd_u32(a, b) * b
}

impl FieldTables {
    fn build(n: u32) -> FieldTables {
        let mut primes = Vec::new();
        for (p, k) in factor(n) {
            let pk = p.pow(k);
            let pk1 = pk / p;
            let cof = (n / pk) as u64;
            let inv = inv_mod(cof % pk as u64, pk as u64);
            let bad = (0..n)
                .map(|e| {
                    let a = ((e % pk) as u64 * inv % pk as u64) as u32;
                    let y = a / pk1;
                    if p == 2 {
                        y == 1
                    } else {
                        y == 0
                    }
                })
                .collect();
            primes.push(PrimePart { p, k, shift: n / p, bad });
        }
        let units = (1..n.max(2)).filter(|&k| gcd_u32(k, n) == 1).collect();
        FieldTables { n, primes, units }
    }

    #[cfg(test)]
    pub fn is_basis(&self, e: u32) -> bool {
        self.primes.iter().all(|pp| !pp.bad[e as usize])
    }

    /// Rewrite a dense coefficient vector (indexed by exponent) in the basis.
    pub fn reduce(&self, buf: &mut [Int]) {
        let n = self.n as usize;
        for pp in &self.primes {
            let shift = pp.shift as usize;
            for e in 0..n {
                if pp.bad[e] && !buf[e].is_zero() {
                    let c = std::mem::take(&mut buf[e]);
                    for j in 1..pp.p as usize {
                        buf[(e + j * shift) % n].sub_assign(&c);
                    }
                }
            }
        }
    }
}

thread_local! {
    static TABLES: RefCell<HashMap<u32, Rc<FieldTables>>> = RefCell::new(HashMap::new());
}

pub(crate) fn tables(n: u32) -> Rc<FieldTables> {
    TABLES.with(|t| {
        t.borrow_mut()
            .entry(n)
            .or_insert_with(|| Rc::new(FieldTables::build(n)))
            .clone()
    })
}

/// Given basis-reduced sparse terms in conductor `n`, descend to the minimal
/// conductor.  Terms stay sorted by exponent.
pub(crate) fn minimize(mut n: u32, mut terms: Vec<(u32, Int)>) -> (u32, Vec<(u32, Int)>) {
    if terms.is_empty() {
        return (1, terms);
    }
    'outer: while n > 1 {
        let t = tables(n);
        for pp in &t.primes {
            let p = pp.p;
            if p == 2 && pp.k == 1 {
                // Q(ζ_2m) = Q(ζ_m) for odd m; basis exponents are even.
                for (e, _) in terms.iter_mut() {
                    debug_assert!(*e % 2 == 0);
                    *e /= 2;
                }
                n /= 2;
                continue 'outer;
            }
            if pp.k >= 2 {
                if terms.iter().all(|(e, _)| e % p == 0) {
                    for (e, _) in terms.iter_mut() {
                        *e /= p;
                    }
                    n /= p;
                    continue 'outer;
                }
            } else if let Some(next) = descend_odd(n, p, &terms) {
                terms = next;
                n /= p;
                continue 'outer;
            }
        }
        break;
    }
    (n, terms)
}

/// `p` odd with `p || n`: the element lies in `Q(ζ_{n/p})` iff in every
/// residue class mod `n/p` the `p-1` basis coefficients coincide.
fn descend_odd(n: u32, p: u32, terms: &[(u32, Int)]) -> Option<Vec<(u32, Int)>> {
    let m = n / p;
    if !terms.len().is_multiple_of(p as usize - 1) {
        return None;
    }
    let mut classes: HashMap<u32, (u32, &Int)> = HashMap::new();
    for (e, c) in terms {
        let r = e % m;
        match classes.get_mut(&r) {
            Some((count, val)) => {
                if *val != c {
                    return None;
                }
                *count += 1;
            }
            None => {
                classes.insert(r, (1, c));
            }
        }
    }
    let mut out = Vec::with_capacity(classes.len());
    for (r, (count, c)) in classes {
        if count != p - 1 {
            return None;
        }
        let e0 = (0..p).map(|j| r + j * m).find(|e| e % p == 0).unwrap();
        out.push((e0 / p, c.neg()));
    }
    out.sort_by_key(|(e, _)| *e);
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes_match_totient() {
        for n in 1..=60u32 {
            let t = tables(n);
            let count = (0..n).filter(|&e| t.is_basis(e)).count();
            let phi = (1..=n).filter(|&k| gcd_u32(k, n) == 1).count();
            assert_eq!(count, phi, "n = {n}");
        }
    }

    #[test]
    fn reduction_lands_in_basis() {
        for n in [3u32, 4, 8, 9, 12, 15, 20, 36, 60] {
            let t = tables(n);
            for e in 0..n {
                let mut buf = vec![Int::ZERO; n as usize];
                buf[e as usize] = Int::ONE;
                t.reduce(&mut buf);
                for (f, c) in buf.iter().enumerate() {
                    if !c.is_zero() {
                        assert!(t.is_basis(f as u32), "n={n} e={e} f={f}");
                    }
                }
            }
        }
    }
}
