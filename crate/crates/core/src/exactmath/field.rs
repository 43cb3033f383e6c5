use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::integer::is_prime;
use crate::error::{Error, Result};

/// Identifies the coefficient field of a polynomial or matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FieldTag {
    Rationals,
    PrimeField(u64),
    Cyclotomic(u64),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rationals => write!(f, "Q"),
            FieldTag::PrimeField(p) => write!(f, "F_{p}"),
            FieldTag::Cyclotomic(m) => write!(f, "Q(zeta_{m})"),
        }
    }
}

/// A field given as a context object; elements carry no reference to it.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn tag(&self) -> FieldTag;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Image of a rational number; `None` when the denominator vanishes in the field.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, &inv))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn tag(&self) -> FieldTag {
        FieldTag::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
}

/// The prime field F_p for a word-sized prime `p < 2^32`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= (1 << 32) || !is_prime(p) {
            return Err(Error::input(format!("{p} is not a supported prime modulus")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        v.mod_floor(&m).to_u64().expect("residue fits in u64")
    }

    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn lift_symmetric(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn tag(&self) -> FieldTag {
        FieldTag::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (self.p as i64, *a as i64);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        Some(t.rem_euclid(self.p as i64) as u64)
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_i64(v)
    }
    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        let num = self.reduce_bigint(q.numer());
        let den = self.reduce_bigint(q.denom());
        self.inv(&den).map(|d| self.mul(&num, &d))
    }
}

/// Returns `q` as an integer when its denominator is one.
pub fn rational_to_integer(q: &BigRational) -> Option<BigInt> {
    if q.is_integer() {
        Some(q.numer().clone())
    } else {
        None
    }
}

/// Whether a nonnegative rational is the square of a rational.
pub fn is_rational_square(q: &BigRational) -> bool {
    if q.is_negative() {
        return false;
    }
    let is_sq = |v: &BigInt| {
        let r = v.sqrt();
        &r * &r == *v
    };
    is_sq(q.numer()) && is_sq(q.denom())
}
