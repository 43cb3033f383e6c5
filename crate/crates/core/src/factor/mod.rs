//! Squarefreeness, irreducibility tests and complete factorization over Q and Q(zeta_l).

mod modular;
mod trager;
mod zassenhaus;
pub(crate) mod zpoly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cyclo::{CycloElement, CyclotomicField};
use crate::error::{Error, Result};
use crate::exactmath::integer::{gcd, is_odd_prime, is_prime, prime_divisors};
use crate::exactmath::{rational_to_integer, Field, FieldTag, Poly, QPoly, Rationals};

pub use modular::{berlekamp, factor_degrees_mod};
pub use trager::{norm_poly, trager_factor};

/// Largest value of deg(f) * (l - 1) accepted by the cyclotomic factorizer.
pub const CYCLOTOMIC_GUARD: usize = 60;

/// A polynomial written as `unit * prod(factor^multiplicity)` with monic irreducible factors.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization<F: Field> {
    pub field: F,
    pub unit: F::Elem,
    pub factors: Vec<(Poly<F>, usize)>,
}

impl<F: Field> Factorization<F> {
    pub fn tag(&self) -> FieldTag {
        self.field.tag()
    }

    /// Multiplies everything back together.
    pub fn product(&self) -> Poly<F> {
        self.factors
            .iter()
            .fold(Poly::constant(self.field.clone(), self.unit.clone()), |acc, (p, m)| {
                acc.mul(&p.pow(*m as u64))
            })
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Factor degrees with repetition, sorted descending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(p, m)| std::iter::repeat_n(p.degree().unwrap_or(0), *m))
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Transfer {
    Transfers,
    Unknown,
}

/// True iff gcd(f, f') is constant.
pub fn is_squarefree<F: Field>(f: &Poly<F>) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::input("squarefree test of the zero polynomial"));
    }
    if f.degree() == Some(0) {
        return Ok(true);
    }
    Ok(f.gcd(&f.derivative())?.degree() == Some(0))
}

/// Yun's squarefree decomposition of a monic polynomial over Q.
fn squarefree_decomposition(f: &QPoly) -> Result<Vec<(QPoly, usize)>> {
    let mut out = Vec::new();
    let d = f.derivative();
    let b = f.gcd(&d)?;
    let mut c = f.exact_div(&b)?;
    let mut w = d.exact_div(&b)?.sub(&c.derivative());
    let mut i = 1;
    while c.degree().unwrap_or(0) > 0 {
        let a = c.gcd(&w)?;
        c = c.exact_div(&a)?;
        w = w.exact_div(&a)?.sub(&c.derivative());
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    Ok(out)
}

fn sort_factors<F: Field>(factors: &mut [(Poly<F>, usize)], key: impl Fn(&Poly<F>) -> String) {
    factors.sort_by(|(a, ma), (b, mb)| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| key(a).cmp(&key(b)))
            .then_with(|| ma.cmp(mb))
    });
}

/// Complete factorization over Q into monic irreducibles.
pub fn factor_over_rationals(f: &QPoly) -> Result<Factorization<Rationals>> {
    match f.degree() {
        None | Some(0) => return Err(Error::input("factorization needs degree at least 1")),
        _ => {}
    }
    let unit = f.lead().cloned().unwrap_or_default();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&f.monic())? {
        let z = zpoly::from_rational_primitive(&part);
        for g in zassenhaus::zassenhaus(&z)? {
            factors.push((zpoly::to_rational(&g).monic(), mult));
        }
    }
    sort_factors(&mut factors, |p| format!("{:?}", p.coeffs()));
    Ok(Factorization { field: Rationals, unit, factors })
}

fn integer_coefficients(f: &QPoly) -> Result<Vec<BigInt>> {
    f.coeffs()
        .iter()
        .map(|c| rational_to_integer(c).ok_or_else(|| Error::input("non-integer coefficient")))
        .collect()
}

/// Eisenstein's criterion at `p`.
pub fn eisenstein_irreducible(f: &QPoly, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::input(format!("{p} is not prime")));
    }
    let c = integer_coefficients(f)?;
    if c.len() < 2 {
        return Ok(false);
    }
    let p = BigInt::from(p);
    let n = c.len() - 1;
    let lead_ok = !c[n].is_multiple_of(&p);
    let rest_ok = c[..n].iter().all(|x| x.is_multiple_of(&p));
    let const_ok = !c[0].is_multiple_of(&(&p * &p));
    Ok(lead_ok && rest_ok && const_ok)
}

/// Whether irreducibility over Q survives a Galois extension of the given degree.
pub fn transfer_irreducibility(n: usize, ext_degree: usize) -> Transfer {
    if n == 0 || ext_degree == 0 {
        return Transfer::Unknown;
    }
    if gcd(n as u64, ext_degree as u64) == 1 {
        Transfer::Transfers
    } else {
        Transfer::Unknown
    }
}

/// Eisenstein at a prime other than `ell` certifies irreducibility over Q(zeta_ell),
/// since such primes are unramified there.
fn eisenstein_unramified(f: &QPoly, ell: u64) -> bool {
    let z = zpoly::from_rational_primitive(f);
    let c0 = z.first().cloned().unwrap_or_default();
    if c0.is_zero() {
        return false;
    }
    let q = zpoly::to_rational(&z);
    let Ok(c0) = u64::try_from(c0.abs()) else {
        return false;
    };
    prime_divisors(c0)
        .into_iter()
        .filter(|&p| p != ell)
        .any(|p| eisenstein_irreducible(&q, p).unwrap_or(false))
}

fn guard(degree: usize, ell: u64) -> Result<()> {
    if degree * (ell as usize - 1) > CYCLOTOMIC_GUARD {
        return Err(Error::limit(format!(
            "degree {degree} over Q(zeta_{ell}) exceeds the factorization guard"
        )));
    }
    Ok(())
}

fn cyclo_key(p: &Poly<CyclotomicField>) -> String {
    let parts: Vec<String> = p.coeffs().iter().map(|c: &CycloElement| format!("{:?}", c.coords())).collect();
    parts.join(";")
}

/// Complete factorization of a squarefree polynomial over Q(zeta_ell).
pub fn factor_over_cyclotomic(
    f: &Poly<CyclotomicField>,
    ell: u64,
) -> Result<Factorization<CyclotomicField>> {
    if !is_odd_prime(ell) {
        return Err(Error::input(format!("{ell} is not an odd prime")));
    }
    let k = f.field().clone();
    if k.conductor() != ell {
        return Err(Error::FieldMismatch { left: k.tag(), right: FieldTag::Cyclotomic(ell) });
    }
    let n = match f.degree() {
        None | Some(0) => return Err(Error::input("factorization needs degree at least 1")),
        Some(n) => n,
    };
    if !is_squarefree(f)? {
        return Err(Error::input("polynomial is not squarefree"));
    }
    let unit = f.lead().cloned().unwrap_or_else(|| k.one());
    let monic = f.monic();
    let rational: Option<Vec<_>> = monic.coeffs().iter().map(CycloElement::as_rational).collect();

    let mut factors = Vec::new();
    match rational {
        Some(qc) => {
            let q = Poly::new(Rationals, qc);
            for (part, _) in factor_over_rationals(&q)?.factors {
                let d = part.degree().unwrap_or(0);
                let lifted = part.map(k.clone(), |c| k.embed(c));
                if d == 1
                    || eisenstein_unramified(&part, ell)
                    || transfer_irreducibility(d, ell as usize - 1) == Transfer::Transfers
                {
                    factors.push((lifted, 1));
                } else {
                    guard(d, ell)?;
                    factors.extend(trager_factor(&lifted)?.into_iter().map(|g| (g, 1)));
                }
            }
        }
        None => {
            guard(n, ell)?;
            factors.extend(trager_factor(&monic)?.into_iter().map(|g| (g, 1)));
        }
    }
    sort_factors(&mut factors, cyclo_key);
    Ok(Factorization { field: k, unit, factors })
}

/// Convenience wrapper for rational input over Q(zeta_ell).
pub fn factor_rational_over_cyclotomic(
    f: &QPoly,
    ell: u64,
) -> Result<Factorization<CyclotomicField>> {
    let k = CyclotomicField::new(ell)?;
    let lifted = f.map(k.clone(), |c| k.embed(c));
    factor_over_cyclotomic(&lifted, ell)
}
