//! Exact arithmetic in cyclotomic fields.
//!
//! A [`Cyclotomic`] is stored in the Zumbroich basis of `Q(ζ_n)` for its
//! minimal conductor `n`, with a single positive common denominator.  Two
//! values are equal iff their stored forms are identical, so `Eq`, `Hash` and
//! `Ord` are structural.

mod field;
mod int;
mod parse;

use std::fmt;
use std::ops;

use num_bigint::BigInt;
use smallvec::SmallVec;
use thiserror::Error;

pub use int::Int;
pub use parse::parse_literal;

use field::{lcm_u32, minimize, tables};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("root of unity of order 0 requested")]
    ZeroConductor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed literal at byte {pos}: {reason}")]
    Parse { pos: usize, reason: String },
}

type Terms = SmallVec<[(u32, Int); 2]>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    n: u32,
    den: Int,
    terms: Terms,
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Cyclotomic::zero()
    }
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { n: 1, den: Int::ONE, terms: SmallVec::new() }
    }

    pub fn one() -> Self {
        Cyclotomic::from_int(Int::ONE)
    }

    pub fn from_i64(v: i64) -> Self {
        Cyclotomic::from_int(Int::Small(v))
    }

    pub fn from_int(v: Int) -> Self {
        if v.is_zero() {
            return Cyclotomic::zero();
        }
        let mut terms = SmallVec::new();
        terms.push((0, v));
        Cyclotomic { n: 1, den: Int::ONE, terms }
    }

    /// The rational `num / den`.
    pub fn rational(num: i64, den: i64) -> Result<Self, CycloError> {
        Cyclotomic::from_fraction(Int::Small(num), Int::Small(den))
    }

    pub fn from_fraction(num: Int, den: Int) -> Result<Self, CycloError> {
        if den.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Cyclotomic::zero());
        }
        let (mut num, mut den) = (num, den);
        if den.signum() < 0 {
            num = num.neg();
            den = den.neg();
        }
        let g = num.gcd(&den);
        let mut terms = SmallVec::new();
        terms.push((0, num.div_exact(&g)));
        Ok(Cyclotomic { n: 1, den: den.div_exact(&g), terms })
    }

    /// `ζ_n^k` with `ζ_n = exp(2πi/n)`.
    pub fn root_of_unity(n: u32, k: i64) -> Result<Self, CycloError> {
        if n == 0 {
            return Err(CycloError::ZeroConductor);
        }
        let e = k.rem_euclid(n as i64) as u32;
        let mut d = Dense::new(n);
        d.buf[e as usize] = Int::ONE;
        Ok(d.finish())
    }

    /// `ζ_n`; panics on `n == 0`.
    pub fn zeta(n: u32) -> Self {
        Cyclotomic::root_of_unity(n, 1).expect("conductor must be positive")
    }

    /// The imaginary unit `ζ_4`.
    pub fn i() -> Self {
        Cyclotomic::zeta(4)
    }

    /// `√5 = 1 + 2ζ_5 + 2ζ_5^4`.
    pub fn sqrt5() -> Self {
        let z = Cyclotomic::zeta(5);
        let z4 = Cyclotomic::root_of_unity(5, 4).unwrap();
        &Cyclotomic::one() + &(&z + &z4).scale_i64(2)
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.n == 1 && self.den.is_one() && self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1
    }

    /// `(numerator, denominator)` in lowest terms when the value is rational.
    pub fn as_rational(&self) -> Option<(Int, Int)> {
        if self.n != 1 {
            return None;
        }
        match self.terms.first() {
            None => Some((Int::ZERO, Int::ONE)),
            Some((_, c)) => Some((c.clone(), self.den.clone())),
        }
    }

    /// Coefficients on the basis of `Q(ζ_conductor)`, each as a reduced fraction.
    pub fn coefficients(&self) -> Vec<(u32, Int, Int)> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let g = c.gcd(&self.den);
                (*e, c.div_exact(&g), self.den.div_exact(&g))
            })
            .collect()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            den: self.den.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn scale_i64(&self, k: i64) -> Cyclotomic {
        self * &Cyclotomic::from_i64(k)
    }

    pub fn add(&self, o: &Cyclotomic) -> Cyclotomic {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let mut d = Dense::new(lcm_u32(self.n, o.n));
        d.add(self, false);
        d.add(o, false);
        d.finish()
    }

    pub fn sub(&self, o: &Cyclotomic) -> Cyclotomic {
        if o.is_zero() {
            return self.clone();
        }
        let mut d = Dense::new(lcm_u32(self.n, o.n));
        d.add(self, false);
        d.add(o, true);
        d.finish()
    }

    pub fn mul(&self, o: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || o.is_zero() {
            return Cyclotomic::zero();
        }
        if self.n == 1 && o.n == 1 {
            let num = self.terms[0].1.mul(&o.terms[0].1);
            let den = self.den.mul(&o.den);
            return Cyclotomic::from_fraction(num, den).unwrap();
        }
        let mut d = Dense::new(lcm_u32(self.n, o.n));
        d.add_product(self, o);
        d.finish()
    }

    /// The Galois automorphism `ζ_n ↦ ζ_n^k`; `k` must be coprime to the conductor.
    pub fn galois(&self, k: i64) -> Cyclotomic {
        if self.n == 1 {
            return self.clone();
        }
        let n = self.n;
        let k = k.rem_euclid(n as i64) as u64;
        debug_assert_eq!(field::gcd_u32(k as u32, n), 1);
        let mut d = Dense::new(n);
        d.den = self.den.clone();
        for (e, c) in &self.terms {
            let f = (*e as u64 * k % n as u64) as usize;
            d.buf[f].add_assign(c);
        }
        d.finish()
    }

    /// Complex conjugation, i.e. the automorphism `ζ ↦ ζ^{-1}`.
    pub fn complex_conjugate(&self) -> Cyclotomic {
        self.galois(-1)
    }

    pub fn inverse(&self) -> Result<Cyclotomic, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if self.n == 1 {
            let c = &self.terms[0].1;
            return Cyclotomic::from_fraction(self.den.clone(), c.clone());
        }
        // a^{-1} = (∏_{σ ≠ 1} σ(a)) / N(a)
        let t = tables(self.n);
        let mut others = Cyclotomic::one();
        for &k in t.units.iter().skip(1) {
            others = &others * &self.galois(k as i64);
        }
        let norm = self * &others;
        let (num, den) = norm
            .as_rational()
            .expect("field norm of a cyclotomic number is rational");
        Ok(&others * &Cyclotomic::from_fraction(den, num)?)
    }

    pub fn div(&self, o: &Cyclotomic) -> Result<Cyclotomic, CycloError> {
        Ok(self * &o.inverse()?)
    }

    pub fn pow(&self, k: i64) -> Result<Cyclotomic, CycloError> {
        let mut base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Cyclotomic::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Numerical value with `ζ_n ↦ exp(2πi/n)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let den = self.den.to_f64();
        let (mut re, mut im) = (0.0, 0.0);
        for (e, c) in &self.terms {
            let theta = std::f64::consts::TAU * (*e as f64) / (self.n as f64);
            let v = c.to_f64() / den;
            re += v * theta.cos();
            im += v * theta.sin();
        }
        (re, im)
    }

    /// Literal in the `E(n)` grammar accepted by [`parse_literal`].
    pub fn format_literal(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, num, den)) in self.coefficients().into_iter().enumerate() {
            let neg = num.signum() < 0;
            let abs = num.abs();
            if neg {
                out.push('-');
            } else if idx > 0 {
                out.push('+');
            }
            let unit = abs.is_one() && den.is_one();
            let coef = if den.is_one() { format!("{abs}") } else { format!("{abs}/{den}") };
            if e == 0 {
                out.push_str(&coef);
                continue;
            }
            if !unit {
                out.push_str(&coef);
                out.push('*');
            }
            out.push_str(&format!("E({})", self.n));
            if e != 1 {
                out.push_str(&format!("^{e}"));
            }
        }
        out
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_literal())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_literal())
    }
}

impl From<i64> for Cyclotomic {
    fn from(v: i64) -> Self {
        Cyclotomic::from_i64(v)
    }
}

impl From<BigInt> for Cyclotomic {
    fn from(v: BigInt) -> Self {
        Cyclotomic::from_int(Int::from_big(v))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl ops::$tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                Cyclotomic::$inner(self, rhs)
            }
        }
        impl ops::$tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                Cyclotomic::$inner(&self, &rhs)
            }
        }
        impl ops::$tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                Cyclotomic::$inner(&self, rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::neg(self)
    }
}

impl ops::Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::neg(&self)
    }
}

/// Dense accumulator over `Q(ζ_n)` with a common denominator.
///
/// Products and sums are collected on the full exponent range `0..n` and
/// reduced to canonical form once, in [`Dense::finish`].
pub struct Dense {
    n: u32,
    den: Int,
    buf: Vec<Int>,
}

impl Dense {
    pub fn new(n: u32) -> Dense {
        Dense { n, den: Int::ONE, buf: vec![Int::ZERO; n as usize] }
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Make the running denominator a multiple of `d`; returns `self.den / d`.
    fn align(&mut self, d: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (&self.den, d) {
            if a % b == 0 {
                return Int::Small(a / b);
            }
        }
        let l = self.den.lcm(d);
        let s = l.div_exact(&self.den);
        if !s.is_one() {
            for x in self.buf.iter_mut() {
                if !x.is_zero() {
                    *x = x.mul(&s);
                }
            }
        }
        let f = l.div_exact(d);
        self.den = l;
        f
    }

    /// `self += a` (or `-= a`).  The conductor of `a` must divide `self.n`.
    pub fn add(&mut self, a: &Cyclotomic, negate: bool) {
        if a.is_zero() {
            return;
        }
        debug_assert_eq!(self.n % a.n, 0);
        let f = self.align(&a.den);
        let s = self.n / a.n;
        for (e, c) in &a.terms {
            let idx = (*e * s) as usize;
            let v = if f.is_one() { c.clone() } else { c.mul(&f) };
            if negate {
                self.buf[idx].sub_assign(&v);
            } else {
                self.buf[idx].add_assign(&v);
            }
        }
    }

    /// `self += a·b`.  Both conductors must divide `self.n`.
    pub fn add_product(&mut self, a: &Cyclotomic, b: &Cyclotomic) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        debug_assert_eq!(self.n % a.n, 0);
        debug_assert_eq!(self.n % b.n, 0);
        let d = a.den.mul(&b.den);
        let f = self.align(&d);
        let n = self.n;
        let sa = n / a.n;
        let sb = n / b.n;
        for (ea, ca) in &a.terms {
            let ca = if f.is_one() { ca.clone() } else { ca.mul(&f) };
            let base = ea * sa;
            for (eb, cb) in &b.terms {
                let mut idx = base + eb * sb;
                if idx >= n {
                    idx -= n;
                }
                self.buf[idx as usize].add_mul_assign(&ca, cb);
            }
        }
    }

    /// Canonicalize the accumulated value and reset the accumulator to zero.
    pub fn finish(&mut self) -> Cyclotomic {
        let n = self.n;
        if n > 1 {
            tables(n).reduce(&mut self.buf);
        }
        let mut terms: Vec<(u32, Int)> = Vec::new();
        for (e, c) in self.buf.iter_mut().enumerate() {
            if !c.is_zero() {
                terms.push((e as u32, std::mem::take(c)));
            }
        }
        let den = std::mem::replace(&mut self.den, Int::ONE);
        if terms.is_empty() {
            return Cyclotomic::zero();
        }
        let (cn, terms) = minimize(n, terms);
        let mut g = den.clone();
        for (_, c) in &terms {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        let (den, terms): (Int, Terms) = if g.is_one() {
            (den, terms.into_iter().collect())
        } else {
            (den.div_exact(&g), terms.into_iter().map(|(e, c)| (e, c.div_exact(&g))).collect())
        };
        Cyclotomic { n: cn, den, terms }
    }
}

/// Least common multiple of the conductors of a collection of values.
pub fn common_conductor<'a>(it: impl IntoIterator<Item = &'a Cyclotomic>) -> u32 {
    it.into_iter().fold(1, |acc, c| lcm_u32(acc, c.n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Cyclotomic {
        parse_literal(s).unwrap()
    }

    fn close(a: (f64, f64), b: (f64, f64)) -> bool {
        (a.0 - b.0).abs() < 1e-9 && (a.1 - b.1).abs() < 1e-9
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = Cyclotomic::root_of_unity(4, 1).unwrap();
        assert_eq!(&i * &i, Cyclotomic::from_i64(-1));
    }

    #[test]
    fn zeta6_equals_minus_zeta3_squared() {
        let z6 = Cyclotomic::root_of_unity(6, 1).unwrap();
        let z3sq = Cyclotomic::root_of_unity(3, 2).unwrap();
        // numeric oracle: e^{iπ/3} = 0.5 + 0.866i and -e^{4πi/3} = 0.5 + 0.866i
        let expect = (0.5, 3f64.sqrt() / 2.0);
        assert!(close(z6.to_complex(), expect));
        assert!(close(z3sq.neg().to_complex(), expect));
        assert_eq!(z6, z3sq.neg());
        assert_eq!(z6.conductor(), 3);
    }

    #[test]
    fn full_turn_is_one() {
        let one = Cyclotomic::root_of_unity(5, 5).unwrap();
        assert!(one.is_one());
        assert_eq!(one.conductor(), 1);
        assert_eq!(Cyclotomic::root_of_unity(0, 1), Err(CycloError::ZeroConductor));
    }

    #[test]
    fn sqrt5_squares_to_five() {
        let s = c("1+2*E(5)+2*E(5)^4");
        assert_eq!(&s * &s, Cyclotomic::from_i64(5));
        assert_eq!(Cyclotomic::sqrt5(), s);
        assert_eq!(s.complex_conjugate(), s);
    }

    #[test]
    fn alpha_times_minus_two_i() {
        let alpha = c("1/2*(E(4)-1)");
        let r = &alpha * &c("-2*E(4)");
        assert_eq!(r, c("E(4)+1"));
        assert_eq!(alpha.complex_conjugate(), c("1/2*(-E(4)-1)"));
    }

    #[test]
    fn inverses() {
        let z12 = Cyclotomic::zeta(12);
        assert_eq!(z12.inverse().unwrap(), Cyclotomic::root_of_unity(12, 11).unwrap());
        assert_eq!(Cyclotomic::from_i64(2).inverse().unwrap(), Cyclotomic::rational(1, 2).unwrap());
        assert_eq!(c("1-E(4)").inverse().unwrap(), c("(1+E(4))/2"));
        assert_eq!(Cyclotomic::zero().inverse(), Err(CycloError::DivisionByZero));
        assert_eq!(Cyclotomic::one().div(&Cyclotomic::zero()), Err(CycloError::DivisionByZero));
    }

    #[test]
    fn conductor_drops_to_minimum() {
        let z = Cyclotomic::zeta(12);
        let i = z.pow(3).unwrap();
        assert_eq!(i.conductor(), 4);
        assert_eq!(i, Cyclotomic::i());
        assert_eq!(c("E(12)^3"), Cyclotomic::i());
        let sq3 = &z + &z.pow(11).unwrap(); // 2cos(π/6) = √3
        assert_eq!(sq3.conductor(), 12);
        assert_eq!(&sq3 * &sq3, Cyclotomic::from_i64(3));
    }

    #[test]
    fn literal_round_trip_samples() {
        for s in ["0", "-7/3", "E(4)", "1/2*(E(4)-1)", "E(20)^3-2/7*E(20)^9", "E(9)^2+E(9)^5"] {
            let a = c(s);
            assert_eq!(c(&a.format_literal()), a, "{s}");
        }
    }
}
