//! Arbitrary-precision integers with an inline `i64` fast path.
//!
//! Values that fit in an `i64` are always stored as [`Int::Small`]; everything
//! else is boxed.  Keeping the representation canonical lets `Eq` and `Hash`
//! be derived structurally.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(Box<BigInt>),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    pub fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(Box::new(b)),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => (**b).clone(),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::Small(v) => v.signum() as i32,
            Int::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Int::Small(v) => *v as f64,
            Int::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn abs(&self) -> Int {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    #[inline]
    pub fn add(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(s) = a.checked_add(*b) {
                return Int::Small(s);
            }
        }
        Int::from_big(self.to_big() + o.to_big())
    }

    #[inline]
    pub fn sub(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(s) = a.checked_sub(*b) {
                return Int::Small(s);
            }
        }
        Int::from_big(self.to_big() - o.to_big())
    }

    #[inline]
    pub fn mul(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(s) = a.checked_mul(*b) {
                return Int::Small(s);
            }
        }
        Int::from_big(self.to_big() * o.to_big())
    }

    #[inline]
    pub fn neg(&self) -> Int {
        if let Int::Small(a) = self {
            if let Some(s) = a.checked_neg() {
                return Int::Small(s);
            }
        }
        Int::from_big(-self.to_big())
    }

    #[inline]
    pub fn add_assign(&mut self, o: &Int) {
        if let (Int::Small(a), Int::Small(b)) = (&mut *self, o) {
            if let Some(s) = a.checked_add(*b) {
                *a = s;
                return;
            }
        }
        *self = Int::from_big(self.to_big() + o.to_big());
    }

    #[inline]
    pub fn sub_assign(&mut self, o: &Int) {
        if let (Int::Small(a), Int::Small(b)) = (&mut *self, o) {
            if let Some(s) = a.checked_sub(*b) {
                *a = s;
                return;
            }
        }
        *self = Int::from_big(self.to_big() - o.to_big());
    }

    /// `self += a * b`
    #[inline]
    pub fn add_mul_assign(&mut self, a: &Int, b: &Int) {
        if let (Int::Small(s), Int::Small(x), Int::Small(y)) = (&mut *self, a, b) {
            if let Some(p) = x.checked_mul(*y) {
                if let Some(r) = s.checked_add(p) {
                    *s = r;
                    return;
                }
            }
        }
        *self = Int::from_big(self.to_big() + a.to_big() * b.to_big());
    }

    /// Exact division; the caller guarantees `o` divides `self`.
    pub fn div_exact(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if let Some(q) = a.checked_div(*b) {
                debug_assert_eq!(a % b, 0);
                return Int::Small(q);
            }
        }
        let (q, r) = self.to_big().div_rem(&o.to_big());
        debug_assert!(r.is_zero());
        Int::from_big(q)
    }

    /// Non-negative gcd.
    pub fn gcd(&self, o: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, o) {
            if *a != i64::MIN && *b != i64::MIN {
                return Int::Small(gcd_u64(a.unsigned_abs(), b.unsigned_abs()) as i64);
            }
        }
        Int::from_big(self.to_big().gcd(&o.to_big()))
    }

    pub fn lcm(&self, o: &Int) -> Int {
        if self.is_zero() || o.is_zero() {
            return Int::ZERO;
        }
        let g = self.gcd(o);
        self.div_exact(&g).mul(o).abs()
    }

    pub fn parse(s: &str) -> Option<Int> {
        if let Ok(v) = s.parse::<i64>() {
            return Some(Int::Small(v));
        }
        s.parse::<BigInt>().ok().map(Int::from_big)
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        Int::from_big(v)
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::ONE
    }
}

impl std::ops::Mul for Int {
    type Output = Int;
    fn mul(self, rhs: Int) -> Int {
        Int::mul(&self, &rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let a = Int::Small(i64::MAX);
        let b = a.add(&Int::ONE);
        assert!(matches!(b, Int::Big(_)));
        let c = b.sub(&Int::ONE);
        assert_eq!(c, Int::Small(i64::MAX));
        let sq = a.mul(&a);
        assert_eq!(sq.div_exact(&a), a);
    }

    #[test]
    fn gcd_handles_extremes() {
        let m = Int::Small(i64::MIN);
        assert_eq!(m.gcd(&Int::Small(4)), Int::Small(4));
        assert_eq!(Int::Small(-6).gcd(&Int::Small(4)), Int::Small(2));
        assert_eq!(Int::Small(0).gcd(&Int::Small(-7)), Int::Small(7));
        assert_eq!(Int::Small(4).lcm(&Int::Small(6)), Int::Small(12));
    }

    #[test]
    fn ordering_across_representations() {
        let big = Int::Small(i64::MAX).add(&Int::Small(10));
        assert!(big > Int::Small(i64::MAX));
        assert!(big.neg() < Int::Small(i64::MIN));
    }
}
