//! Integer polynomials as plain coefficient vectors, lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactmath::{Poly, PrimeField, QPoly, Rationals};

pub(crate) type ZPoly = Vec<BigInt>;

pub(crate) fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &ZPoly) -> usize {
    a.len().saturating_sub(1)
}

pub(crate) fn content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub(crate) fn primitive_part(a: &ZPoly) -> ZPoly {
    let mut c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    if a.last().is_some_and(Signed::is_negative) {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

pub(crate) fn mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub(crate) fn scale(a: &ZPoly, c: &BigInt) -> ZPoly {
    trim(a.iter().map(|x| x * c).collect())
}

pub(crate) fn add(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

pub(crate) fn sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

/// Nonnegative residues modulo `m`.
pub(crate) fn reduce(a: &ZPoly, m: &BigInt) -> ZPoly {
    trim(a.iter().map(|x| x.mod_floor(m)).collect())
}

/// Residues in the symmetric range `(-m/2, m/2]`.
pub(crate) fn symmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    trim(
        a.iter()
            .map(|x| {
                let r = x.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Division by a monic polynomial modulo `m`.
pub(crate) fn divrem_monic_mod(a: &ZPoly, h: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let dh = degree(h);
    let mut rem = reduce(a, m);
    if rem.len() <= dh {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dh];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dh].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, hj) in h.iter().enumerate() {
            rem[k + j] = (&rem[k + j] - &c * hj).mod_floor(m);
        }
        quot[k] = c;
    }
    rem.truncate(dh);
    (trim(quot), trim(rem))
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Scales a rational polynomial to a primitive integer polynomial.
pub(crate) fn from_rational_primitive(f: &QPoly) -> ZPoly {
    let den = f.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: ZPoly = f.coeffs().iter().map(|c| (c * &den).to_integer()).collect();
    primitive_part(&ints)
}

pub(crate) fn to_rational(a: &ZPoly) -> QPoly {
    Poly::new(Rationals, a.iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

pub(crate) fn to_fp(a: &ZPoly, fp: PrimeField) -> Poly<PrimeField> {
    Poly::new(fp, a.iter().map(|c| fp.reduce_bigint(c)).collect())
}

pub(crate) fn from_fp(a: &Poly<PrimeField>) -> ZPoly {
    a.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

/// Euclidean norm rounded up.
pub(crate) fn norm2_ceil(a: &ZPoly) -> BigInt {
    let sum: BigInt = a.iter().map(|c| c * c).sum();
    let r = sum.sqrt();
    if &r * &r == sum {
        r
    } else {
        r + 1
    }
}
