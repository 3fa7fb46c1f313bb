//! Exact integers with an inline machine-word fast path.
//!
//! Values that fit in an `i64` are stored inline; every arithmetic operation
//! is overflow-checked and promotes to a heap `BigInt` when the result leaves
//! the `i64` range. Results are always normalized back to the inline form
//! when they fit, so equality and hashing are representation-independent.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone)]
pub enum Int {
    Small(i64),
    Big(Box<BigInt>),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    #[inline]
    pub fn zero() -> Int {
        Int::Small(0)
    }

    #[inline]
    pub fn one() -> Int {
        Int::Small(1)
    }

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

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
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

    pub fn is_unit(&self) -> bool {
        matches!(self, Int::Small(1) | Int::Small(-1))
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

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::from_big(BigInt::from(*v).abs()),
            },
            Int::Big(b) => Int::from_big(b.abs()),
        }
    }

    /// Compares absolute values.
    pub fn cmp_abs(&self, other: &Int) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.to_big().abs().cmp(&other.to_big().abs()),
        }
    }

    /// Floor division and remainder with `0 <= r < |d|` when `d > 0`.
    pub fn div_mod_floor(&self, d: &Int) -> (Int, Int) {
        assert!(!d.is_zero(), "division by zero");
        if let (Int::Small(a), Int::Small(b)) = (self, d) {
            if !(*a == i64::MIN && *b == -1) {
                let (q, r) = a.div_mod_floor(b);
                return (Int::Small(q), Int::Small(r));
            }
        }
        let (q, r) = self.to_big().div_mod_floor(&d.to_big());
        (Int::from_big(q), Int::from_big(r))
    }

    /// Quotient rounded to the nearest integer; keeps remainders small in
    /// Euclidean reduction steps.
    pub fn div_round(&self, d: &Int) -> Int {
        let (q, r) = self.div_mod_floor(d);
        // r has the sign of d (or is zero); compare 2|r| with |d|
        let twice = &r + &r;
        if twice.cmp_abs(d) == Ordering::Greater {
            if d.is_negative() {
                q - Int::one()
            } else {
                q + Int::one()
            }
        } else {
            q
        }
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Int) -> Option<Int> {
        if d.is_zero() {
            return if self.is_zero() {
                Some(Int::zero())
            } else {
                None
            };
        }
        let (q, r) = self.div_mod_floor(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Least nonnegative residue modulo `m > 0`.
    pub fn rem_euclid(&self, m: &Int) -> Int {
        self.div_mod_floor(&m.abs()).1
    }

    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) if *a != i64::MIN && *b != i64::MIN => {
                Int::Small(a.gcd(b))
            }
            _ => Int::from_big(self.to_big().gcd(&other.to_big())),
        }
    }

    /// Extended gcd: returns `(g, x, y)` with `g = x*a + y*b`, `g >= 0`.
    pub fn ext_gcd(a: &Int, b: &Int) -> (Int, Int, Int) {
        let (mut old_r, mut r) = (a.clone(), b.clone());
        let (mut old_s, mut s) = (Int::one(), Int::zero());
        let (mut old_t, mut t) = (Int::zero(), Int::one());
        while !r.is_zero() {
            let (q, rem) = old_r.div_mod_floor(&r);
            old_r = std::mem::replace(&mut r, rem);
            let ns = &old_s - &(&q * &s);
            old_s = std::mem::replace(&mut s, ns);
            let nt = &old_t - &(&q * &t);
            old_t = std::mem::replace(&mut t, nt);
        }
        if old_r.is_negative() {
            (-old_r, -old_s, -old_t)
        } else {
            (old_r, old_s, old_t)
        }
    }

    pub fn pow(&self, e: u32) -> Int {
        let mut acc = Int::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::zero()
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<usize> for Int {
    fn from(v: usize) -> Self {
        match i64::try_from(v) {
            Ok(s) => Int::Small(s),
            Err(_) => Int::from_big(BigInt::from(v)),
        }
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::from_big(b)
    }
}

impl PartialEq for Int {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a == b,
            (Int::Big(a), Int::Big(b)) => a == b,
            // normalized: a small and a big value are never equal
            _ => false,
        }
    }
}

impl Eq for Int {}

impl Hash for Int {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Int::Small(v) => {
                0u8.hash(state);
                v.hash(state)
            }
            Int::Big(b) => {
                1u8.hash(state);
                b.hash(state)
            }
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
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

impl FromStr for Int {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(v) = s.parse::<i64>() {
            return Ok(Int::Small(v));
        }
        Ok(Int::from_big(s.parse::<BigInt>()?))
    }
}

impl<'a> Add<&'a Int> for &'a Int {
    type Output = Int;
    #[inline]
    fn add(self, rhs: &'a Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_add(*b) {
                return Int::Small(c);
            }
        }
        Int::from_big(self.to_big() + rhs.to_big())
    }
}

impl<'a> Sub<&'a Int> for &'a Int {
    type Output = Int;
    #[inline]
    fn sub(self, rhs: &'a Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_sub(*b) {
                return Int::Small(c);
            }
        }
        Int::from_big(self.to_big() - rhs.to_big())
    }
}

impl<'a> Mul<&'a Int> for &'a Int {
    type Output = Int;
    #[inline]
    fn mul(self, rhs: &'a Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
            if let Some(c) = a.checked_mul(*b) {
                return Int::Small(c);
            }
        }
        Int::from_big(self.to_big() * rhs.to_big())
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Int> for Int {
            type Output = Int;
            #[inline]
            fn $m(self, rhs: Int) -> Int {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Int> for Int {
            type Output = Int;
            #[inline]
            fn $m(self, rhs: &'a Int) -> Int {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Int> for &'a Int {
            type Output = Int;
            #[inline]
            fn $m(self, rhs: Int) -> Int {
                self.$m(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&Int> for Int {
    #[inline]
    fn add_assign(&mut self, rhs: &Int) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Int> for Int {
    #[inline]
    fn sub_assign(&mut self, rhs: &Int) {
        *self = &*self - rhs;
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::Small(0)
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::Small(1)
    }
}

impl std::iter::Sum for Int {
    fn sum<I: Iterator<Item = Int>>(iter: I) -> Int {
        iter.fold(Int::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let a = Int::from(i64::MAX);
        let b = &a + &Int::one();
        assert!(matches!(b, Int::Big(_)));
        let c = &b - &Int::one();
        assert!(matches!(c, Int::Small(_)));
        assert_eq!(c, a);
        let sq = &a * &a;
        assert_eq!(sq.to_big(), BigInt::from(i64::MAX) * BigInt::from(i64::MAX));
        let m = Int::from(i64::MIN);
        assert_eq!((-&m).to_big(), -BigInt::from(i64::MIN));
        assert_eq!(m.abs().to_big(), BigInt::from(i64::MIN).abs());
    }

    #[test]
    fn division_helpers() {
        let (q, r) = Int::from(-7).div_mod_floor(&Int::from(3));
        assert_eq!((q, r), (Int::from(-3), Int::from(2)));
        assert_eq!(Int::from(7).div_round(&Int::from(4)), Int::from(2));
        assert_eq!(Int::from(-7).div_round(&Int::from(4)), Int::from(-2));
        assert_eq!(Int::from(12).div_exact(&Int::from(4)), Some(Int::from(3)));
        assert_eq!(Int::from(12).div_exact(&Int::from(5)), None);
        let (g, x, y) = Int::ext_gcd(&Int::from(240), &Int::from(46));
        assert_eq!(g, Int::from(2));
        assert_eq!(&x * &Int::from(240) + &y * &Int::from(46), g);
    }
}
