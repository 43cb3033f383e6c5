//! Base fields for problems: Q or a cyclotomic field Q(zeta_l).

use std::fmt;

use serde::{Serialize, Serializer};

use crate::cyclo::{CycloElement, CyclotomicField};
use crate::error::Result;
use crate::exactmath::{Poly, QPoly, Rationals};
use crate::factor::is_squarefree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    Rationals,
    Cyclotomic(u64),
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Base::Rationals => write!(f, "Q"),
            Base::Cyclotomic(m) => write!(f, "Q(zeta_{m})"),
        }
    }
}

impl Serialize for Base {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A polynomial over one of the supported base fields.
#[derive(Clone, Debug, PartialEq)]
pub enum BasePoly {
    Rational(QPoly),
    Cyclotomic(Poly<CyclotomicField>),
}

impl BasePoly {
    pub fn base(&self) -> Base {
        match self {
            BasePoly::Rational(_) => Base::Rationals,
            BasePoly::Cyclotomic(p) => Base::Cyclotomic(p.field().conductor()),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            BasePoly::Rational(p) => p.degree(),
            BasePoly::Cyclotomic(p) => p.degree(),
        }
    }

    /// The same polynomial over Q, when all coefficients are rational.
    pub fn as_rational(&self) -> Option<QPoly> {
        match self {
            BasePoly::Rational(p) => Some(p.clone()),
            BasePoly::Cyclotomic(p) => {
                let c: Option<Vec<_>> = p.coeffs().iter().map(CycloElement::as_rational).collect();
                c.map(|c| Poly::new(Rationals, c))
            }
        }
    }

    pub fn is_squarefree(&self) -> Result<bool> {
        match self {
            BasePoly::Rational(p) => is_squarefree(p),
            BasePoly::Cyclotomic(p) => is_squarefree(p),
        }
    }

    /// Moves a rational polynomial to the given base.
    pub fn lift(p: &QPoly, base: Base) -> Result<BasePoly> {
        Ok(match base {
            Base::Rationals => BasePoly::Rational(p.clone()),
            Base::Cyclotomic(m) => {
                let k = CyclotomicField::new(m)?;
                BasePoly::Cyclotomic(p.map(k.clone(), |c| k.embed(c)))
            }
        })
    }
}

impl fmt::Display for BasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasePoly::Rational(p) => f.write_str(&crate::parse::print_rational(p)),
            BasePoly::Cyclotomic(p) => f.write_str(&crate::parse::print_cyclotomic(p)),
        }
    }
}
