//! Certified properties of Galois groups of concrete polynomials.
//!
//! Nothing here identifies the group outright. Each property is justified by
//! an exact computation recorded as evidence: factorizations, cycle types of
//! Frobenius elements modulo unramified primes, the discriminant, and a
//! root-difference resultant.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::base::{Base, BasePoly};
use crate::error::{Error, Result};
use crate::exactmath::integer::{is_prime, lcm, primes_from};
use crate::exactmath::{interpolate, is_rational_square, Poly, PrimeField, QPoly, Rationals};
use crate::factor::{
    factor_degrees_mod, factor_over_cyclotomic, factor_over_rationals, is_squarefree, zpoly,
};
use crate::permgrp::Perm;

/// Default number of good primes sampled for Frobenius cycle types.
pub const DEFAULT_PRIME_BUDGET: usize = 25;
const PRIME_SEARCH_LIMIT: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    Irreducible,
    Transitive,
    TwoTransitive,
    ContainsAn,
    EqualsSn,
    CyclicOrderN,
    OrderDivides(u64),
    OrderPrimeToN,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::Irreducible => write!(f, "IRREDUCIBLE"),
            Property::Transitive => write!(f, "TRANSITIVE"),
            Property::TwoTransitive => write!(f, "TWO_TRANSITIVE"),
            Property::ContainsAn => write!(f, "CONTAINS_A_n"),
            Property::EqualsSn => write!(f, "EQUALS_S_n"),
            Property::CyclicOrderN => write!(f, "CYCLIC_ORDER_n"),
            Property::OrderDivides(k) => write!(f, "ORDER_DIVIDES_{k}"),
            Property::OrderPrimeToN => write!(f, "ORDER_PRIME_TO_n"),
        }
    }
}

impl Serialize for Property {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Evidence {
    pub claim: String,
    pub method: String,
    pub data: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaloisCertificate {
    pub polynomial: String,
    pub base: Base,
    pub degree: usize,
    pub properties: BTreeSet<Property>,
    pub evidence: Vec<Evidence>,
    /// Degrees of the irreducible factors over the base, descending.
    pub factor_degrees: Vec<usize>,
    /// The group is known to be S_n or A_n over the base.
    pub alternating_or_symmetric: bool,
}

impl GaloisCertificate {
    fn new(f: &BasePoly) -> Self {
        GaloisCertificate {
            polynomial: f.to_string(),
            base: f.base(),
            degree: f.degree().unwrap_or(0),
            properties: BTreeSet::new(),
            evidence: Vec::new(),
            factor_degrees: Vec::new(),
            alternating_or_symmetric: false,
        }
    }

    pub fn has(&self, p: Property) -> bool {
        self.properties.contains(&p)
    }

    /// Names of the certified properties in canonical order.
    pub fn property_names(&self) -> Vec<String> {
        self.properties.iter().map(ToString::to_string).collect()
    }

    pub fn is_irreducible(&self) -> bool {
        self.has(Property::Irreducible)
    }

    fn certify(&mut self, props: &[Property], claim: impl Into<String>, method: &str, data: Value) {
        self.properties.extend(props.iter().copied());
        self.evidence.push(Evidence { claim: claim.into(), method: method.to_string(), data });
    }

    fn note(&mut self, claim: impl Into<String>, method: &str, data: Value) {
        self.certify(&[], claim, method, data);
    }
}

/// A Frobenius cycle type observed modulo a prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DedekindSample {
    pub prime: u64,
    pub cycle_type: Vec<usize>,
}

fn require_squarefree(f: &QPoly) -> Result<()> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::input("polynomial must have positive degree"));
    }
    if !is_squarefree(f)? {
        return Err(Error::input("polynomial has repeated roots"));
    }
    Ok(())
}

/// Cycle types of Frobenius at the first `budget` primes not dividing lead(f) disc(f).
pub fn dedekind_cycle_types(f: &QPoly, budget: usize) -> Result<Vec<DedekindSample>> {
    if budget == 0 {
        return Err(Error::input("prime budget must be positive"));
    }
    require_squarefree(f)?;
    let z = zpoly::from_rational_primitive(f);
    let lc = z.last().cloned().unwrap_or_default();
    let mut out = Vec::with_capacity(budget);
    for p in primes_from(2).take(PRIME_SEARCH_LIMIT) {
        if lc.is_multiple_of(&BigInt::from(p)) {
            continue;
        }
        let fp = PrimeField::new(p)?;
        let g = zpoly::to_fp(&z, fp);
        if !is_squarefree(&g)? {
            continue;
        }
        out.push(DedekindSample { prime: p, cycle_type: factor_degrees_mod(&g.monic())? });
        if out.len() == budget {
            break;
        }
    }
    Ok(out)
}

/// disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lead(f).
pub fn discriminant(f: &QPoly) -> Result<BigRational> {
    let n = f.degree().ok_or_else(|| Error::input("zero polynomial"))?;
    if n == 0 {
        return Err(Error::input("discriminant of a constant"));
    }
    let res = f.resultant(&f.derivative())?;
    let lc = f.lead().cloned().unwrap_or_else(BigRational::one);
    let d = res / lc;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

pub fn discriminant_is_square(f: &QPoly) -> Result<bool> {
    require_squarefree(f)?;
    Ok(is_rational_square(&discriminant(f)?))
}

/// Cycle type of the k-th power of an element with cycle type `t`.
pub fn power_cycle_type(t: &[usize], k: usize) -> Vec<usize> {
    let mut out: Vec<usize> = t
        .iter()
        .flat_map(|&l| {
            let g = if k == 0 { l } else { l.gcd(&k) };
            std::iter::repeat_n(l / g, g)
        })
        .collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn special_type(n: usize, cycle: usize) -> Vec<usize> {
    let mut t = vec![cycle];
    t.extend(std::iter::repeat_n(1, n - cycle));
    t
}

/// Smallest power of an element of type `t` that is a single `cycle`-cycle, if any.
fn power_to_single_cycle(t: &[usize], cycle: usize) -> Option<usize> {
    let n: usize = t.iter().sum();
    let order = t.iter().fold(1u64, |acc, &l| lcm(acc, l as u64)) as usize;
    let target = special_type(n, cycle);
    (1..=order).find(|&k| power_cycle_type(t, k) == target)
}

/// Cycle types occurring in AGL(1, p).
pub fn affine_cycle_types(p: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for a in 1..p {
        for b in 0..p {
            let images: Vec<usize> = (0..p).map(|x| (a * x + b) % p).collect();
            out.insert(Perm::from_images(&images).expect("affine map is a bijection").cycle_type());
        }
    }
    out
}

/// R(x) = Res_y(f(y), f(x + y)) / x^n, whose roots are the differences of distinct roots.
pub fn root_difference_poly(f: &QPoly) -> Result<QPoly> {
    let n = f.degree().ok_or_else(|| Error::input("zero polynomial"))?;
    let points = n * n + 1;
    let mut xs = Vec::with_capacity(points);
    let mut ys = Vec::with_capacity(points);
    for x0 in 0..points as i64 {
        let shift = Poly::new(Rationals, vec![BigRational::from_integer(x0.into()), BigRational::one()]);
        ys.push(f.resultant(&f.compose(&shift))?);
        xs.push(BigRational::from_integer(x0.into()));
    }
    let r = interpolate(&Rationals, &xs, &ys)?;
    r.exact_div(&Poly::monomial(Rationals, BigRational::one(), n))
}

fn sample_json(samples: &[DedekindSample]) -> Value {
    json!(samples.iter().map(|s| json!({"p": s.prime, "type": s.cycle_type})).collect::<Vec<_>>())
}

fn certify_over_q(f: &QPoly, cert: &mut GaloisCertificate) -> Result<()> {
    let n = f.degree().unwrap_or(0);
    let fac = factor_over_rationals(f)?;
    cert.factor_degrees = fac.degrees();
    if !fac.is_irreducible() {
        cert.note("reducible over Q", "Zassenhaus", json!({"factor_degrees": cert.factor_degrees}));
        return Ok(());
    }
    cert.certify(
        &[Property::Irreducible, Property::Transitive],
        "irreducible over Q, so the group is transitive",
        "Zassenhaus",
        json!({"factor_degrees": cert.factor_degrees}),
    );
    let disc = discriminant(f)?;
    let square = is_rational_square(&disc);
    let disc_data = json!({"discriminant": disc.to_string(), "square": square});

    if n == 3 {
        if square {
            cert.certify(
                &[Property::CyclicOrderN],
                "irreducible cubic with square discriminant has group C_3",
                "discriminant",
                disc_data,
            );
        } else {
            cert.certify(
                &[Property::EqualsSn, Property::TwoTransitive],
                "irreducible cubic with non-square discriminant has group S_3",
                "discriminant",
                disc_data,
            );
            cert.alternating_or_symmetric = true;
        }
        return Ok(());
    }

    let samples = dedekind_cycle_types(f, DEFAULT_PRIME_BUDGET)?;
    let affine = affine_cycle_types(n);
    if let Some(s) = samples.iter().find(|s| !affine.contains(&s.cycle_type)) {
        cert.certify(
            &[Property::TwoTransitive],
            "transitive of prime degree with a cycle type outside AGL(1,n), hence doubly transitive",
            "Dedekind + Burnside",
            json!({"p": s.prime, "type": s.cycle_type}),
        );
    }
    if let Some((s, k)) =
        samples.iter().find_map(|s| power_to_single_cycle(&s.cycle_type, 2).map(|k| (s, k)))
    {
        cert.certify(
            &[Property::EqualsSn, Property::TwoTransitive],
            "primitive group containing a transposition is S_n",
            "Dedekind power",
            json!({"p": s.prime, "type": s.cycle_type, "power": k}),
        );
    }
    if let Some((s, k)) =
        samples.iter().find_map(|s| power_to_single_cycle(&s.cycle_type, 3).map(|k| (s, k)))
    {
        let data = json!({
            "p": s.prime, "type": s.cycle_type, "power": k,
            "discriminant": disc.to_string(), "square": square,
        });
        if square {
            cert.certify(
                &[Property::ContainsAn, Property::TwoTransitive],
                "primitive group with a 3-cycle inside A_n is A_n",
                "Dedekind power + discriminant",
                data,
            );
        } else if !cert.has(Property::EqualsSn) {
            cert.certify(
                &[Property::EqualsSn, Property::TwoTransitive],
                "primitive group with a 3-cycle and non-square discriminant is S_n",
                "Dedekind power + discriminant",
                data,
            );
        }
    }
    cert.alternating_or_symmetric = cert.has(Property::EqualsSn) || cert.has(Property::ContainsAn);

    if n == 5 && !cert.has(Property::TwoTransitive) {
        let r = root_difference_poly(f)?;
        if is_squarefree(&r)? {
            let degrees = factor_over_rationals(&r)?.degrees();
            if degrees.iter().all(|&d| d <= n) {
                cert.certify(
                    &[Property::CyclicOrderN],
                    "all root differences lie in a field of degree n, so the splitting field has degree n",
                    "root-difference resultant",
                    json!({"factor_degrees": degrees}),
                );
            }
        }
    }
    cert.note("Frobenius cycle types", "Dedekind", sample_json(&samples));
    Ok(())
}

fn check_degree(n: usize) -> Result<()> {
    if !(3..=7).contains(&n) || n % 2 == 0 {
        return Err(Error::input(format!("certification needs odd degree in 3..=7, got {n}")));
    }
    Ok(())
}

/// Strongest property certificate available for `f` over its base.
pub fn certify_properties(f: &BasePoly) -> Result<GaloisCertificate> {
    let n = f.degree().unwrap_or(0);
    check_degree(n)?;
    if !f.is_squarefree()? {
        return Err(Error::input("polynomial has repeated roots"));
    }
    let mut cert = GaloisCertificate::new(f);
    match (f, f.as_rational()) {
        (BasePoly::Rational(q), _) => certify_over_q(q, &mut cert)?,
        (BasePoly::Cyclotomic(p), rational) => {
            let ell = p.field().conductor();
            if let Some(q) = rational.filter(|_| n >= 5) {
                let mut over_q = GaloisCertificate::new(&BasePoly::Rational(q.clone()));
                certify_over_q(&q, &mut over_q)?;
                if over_q.alternating_or_symmetric {
                    cert.factor_degrees = vec![n];
                    cert.certify(
                        &[Property::Irreducible, Property::Transitive, Property::TwoTransitive],
                        "Gal(f/Q) contains A_n and the base is abelian over Q, so the group over the base is S_n or A_n",
                        "abelian base change",
                        json!({"over_Q": over_q.property_names()}),
                    );
                    cert.alternating_or_symmetric = true;
                    return Ok(cert);
                }
            }
            let fac = factor_over_cyclotomic(p, ell)?;
            cert.factor_degrees = fac.degrees();
            let data = json!({"factor_degrees": cert.factor_degrees});
            if fac.is_irreducible() {
                cert.certify(
                    &[Property::Irreducible, Property::Transitive],
                    format!("irreducible over {}", f.base()),
                    "Trager norm",
                    data,
                );
            } else {
                cert.note(format!("reducible over {}", f.base()), "Trager norm", data);
            }
        }
    }
    Ok(cert)
}

/// Everything certifiable for `f`: full certification in degrees 3, 5, 7 and
/// order bounds when `f` is reducible or of larger degree.
pub fn galois_profile(f: &BasePoly) -> Result<GaloisCertificate> {
    let n = f.degree().unwrap_or(0);
    if check_degree(n).is_err() {
        return reducible_order_bound(f);
    }
    let mut cert = certify_properties(f)?;
    if !cert.is_irreducible() {
        let extra = reducible_order_bound(f)?;
        cert.properties.extend(extra.properties);
        cert.evidence.extend(extra.evidence);
        cert.factor_degrees = extra.factor_degrees;
    }
    Ok(cert)
}

/// Factor degrees of `f` over its base, with the method used.
pub fn factor_degrees_over(f: &BasePoly) -> Result<(Vec<usize>, &'static str)> {
    match f {
        BasePoly::Rational(q) => Ok((factor_over_rationals(q)?.degrees(), "Zassenhaus")),
        BasePoly::Cyclotomic(p) => {
            let ell = p.field().conductor();
            Ok((factor_over_cyclotomic(p, ell)?.degrees(), "Trager norm"))
        }
    }
}

fn factorial(d: usize) -> BigInt {
    (1..=d).fold(BigInt::one(), |acc, k| acc * k)
}

/// Order information for the group of a possibly reducible polynomial.
pub fn reducible_order_bound(h: &BasePoly) -> Result<GaloisCertificate> {
    let n = h.degree().unwrap_or(0);
    if n == 0 {
        return Err(Error::input("polynomial must have positive degree"));
    }
    if !h.is_squarefree()? {
        return Err(Error::input("polynomial has repeated roots"));
    }
    let mut cert = GaloisCertificate::new(h);
    let (degrees, method) = factor_degrees_over(h)?;
    cert.factor_degrees = degrees.clone();
    let bound = degrees.iter().fold(BigInt::one(), |acc, &d| acc * factorial(d));
    let data = json!({"factor_degrees": degrees, "order_bound": bound.to_string()});
    if degrees.len() == 1 {
        cert.certify(
            &[Property::Irreducible, Property::Transitive],
            format!("irreducible over {}", h.base()),
            method,
            data.clone(),
        );
    }
    if degrees.iter().all(|&d| d <= 2) {
        let q = degrees.iter().filter(|&&d| d == 2).count() as u32;
        let k = 2u64.pow(q);
        let mut props = vec![Property::OrderDivides(k)];
        if n % 2 == 1 {
            props.push(Property::OrderPrimeToN);
        }
        cert.certify(
            &props,
            format!("every factor has degree at most 2, so the group is an elementary abelian 2-group of order dividing {k}"),
            method,
            data,
        );
    } else if is_prime(n as u64) && degrees.len() > 1 {
        cert.certify(
            &[Property::OrderPrimeToN],
            "n is prime and the polynomial is reducible, so no factor has degree n and the group order divides a product of factorials below n",
            method,
            data,
        );
    } else {
        cert.note("factor degrees only; order prime to n not decided", method, data);
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_types() {
        assert_eq!(power_cycle_type(&[3, 2], 3), vec![2, 1, 1, 1]);
        assert_eq!(power_cycle_type(&[3, 2], 2), vec![3, 1, 1]);
        assert_eq!(power_cycle_type(&[4, 1], 2), vec![2, 2, 1]);
        assert_eq!(power_to_single_cycle(&[4, 1], 2), None);
    }

    #[test]
    fn affine_types_degree_five() {
        let t = affine_cycle_types(5);
        let expected: BTreeSet<Vec<usize>> =
            [vec![1, 1, 1, 1, 1], vec![5], vec![2, 2, 1], vec![4, 1]].into_iter().collect();
        assert_eq!(t, expected);
    }
}
