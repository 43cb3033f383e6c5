//! Cyclotomic polynomials and exact arithmetic in Q(ζ_m) = Q[t]/Φ_m(t).

use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::integer::{divisors, is_odd_prime, totient};
use crate::exactmath::{Field, FieldTag, Matrix, Poly, PrimeField, QMatrix, QPoly, Rationals};

/// Residue of a rational polynomial modulo Φ_m, in the power basis of ζ_m.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloElement {
    conductor: u64,
    coords: Vec<BigRational>,
}

impl CycloElement {
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Exactly φ(m) coordinates.
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The rational value when every nonconstant coordinate vanishes.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coords.iter().skip(1).all(Zero::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "ζ{}[{}]", self.conductor, cs.join(", "))
    }
}

/// The field Q(ζ_m), carrying Φ_m as its defining modulus.
#[derive(Clone)]
pub struct CyclotomicField {
    conductor: u64,
    modulus: Arc<QPoly>,
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor
    }
}

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.conductor)
    }
}

impl CyclotomicField {
    pub fn new(conductor: u64) -> Result<Self> {
        let modulus = Arc::new(cyclotomic_poly(conductor)?);
        Ok(CyclotomicField { conductor, modulus })
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Degree φ(m) over Q.
    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn modulus(&self) -> &QPoly {
        &self.modulus
    }

    /// Reduces a rational polynomial in ζ into canonical form.
    pub fn reduce(&self, p: &QPoly) -> CycloElement {
        let r = p.rem(&self.modulus).expect("modulus is nonzero");
        let mut coords = r.into_coeffs();
        coords.resize(self.degree(), BigRational::zero());
        CycloElement { conductor: self.conductor, coords }
    }

    pub fn element(&self, coords: &[BigRational]) -> CycloElement {
        self.reduce(&Poly::new(Rationals, coords.to_vec()))
    }

    pub fn embed(&self, q: &BigRational) -> CycloElement {
        self.element(std::slice::from_ref(q))
    }

    pub fn zeta(&self) -> CycloElement {
        self.zeta_pow(1)
    }

    pub fn zeta_pow(&self, k: u64) -> CycloElement {
        let k = (k % self.conductor) as usize;
        self.reduce(&Poly::monomial(Rationals, Rationals.one(), k))
    }

    pub fn to_poly(&self, a: &CycloElement) -> QPoly {
        Poly::new(Rationals, a.coords.clone())
    }

    /// Matrix of `x ↦ a·x` on the power basis (columns are images of ζ^j).
    pub fn multiplication_matrix(&self, a: &CycloElement) -> QMatrix {
        let d = self.degree();
        let columns: Vec<Vec<BigRational>> = (0..d)
            .map(|j| self.mul(a, &self.zeta_pow(j as u64)).coords)
            .collect();
        Matrix::from_columns(Rationals, d, &columns).expect("square by construction")
    }

    /// Field norm N_{Q(ζ_m)/Q}(a) as the determinant of multiplication by `a`.
    pub fn norm(&self, a: &CycloElement) -> BigRational {
        self.multiplication_matrix(a)
            .determinant()
            .expect("square matrix")
    }
}

impl Field for CyclotomicField {
    type Elem = CycloElement;

    fn tag(&self) -> FieldTag {
        FieldTag::Cyclotomic(self.conductor)
    }

    fn zero(&self) -> CycloElement {
        CycloElement { conductor: self.conductor, coords: vec![BigRational::zero(); self.degree()] }
    }

    fn one(&self) -> CycloElement {
        self.embed(&Rationals.one())
    }

    fn is_zero(&self, a: &CycloElement) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &CycloElement, b: &CycloElement) -> CycloElement {
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect();
        CycloElement { conductor: self.conductor, coords }
    }

    fn sub(&self, a: &CycloElement, b: &CycloElement) -> CycloElement {
        let coords = a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect();
        CycloElement { conductor: self.conductor, coords }
    }

    fn mul(&self, a: &CycloElement, b: &CycloElement) -> CycloElement {
        let d = self.degree();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        // Φ_m is monic: fold the top coefficients down.
        let m = self.modulus.coeffs();
        for k in (d..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (j, mj) in m.iter().take(d).enumerate() {
                if !mj.is_zero() {
                    prod[k - d + j] -= &c * mj;
                }
            }
        }
        prod.truncate(d);
        CycloElement { conductor: self.conductor, coords: prod }
    }

    fn neg(&self, a: &CycloElement) -> CycloElement {
        let coords = a.coords.iter().map(|x| -x).collect();
        CycloElement { conductor: self.conductor, coords }
    }

    fn inv(&self, a: &CycloElement) -> Option<CycloElement> {
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = self.to_poly(a).xgcd(&self.modulus).ok()?;
        debug_assert!(g.is_one(), "Φ_m is irreducible");
        Some(self.reduce(&s))
    }

    fn from_i64(&self, v: i64) -> CycloElement {
        self.embed(&Rationals.from_i64(v))
    }

    fn from_rational(&self, q: &BigRational) -> Option<CycloElement> {
        Some(self.embed(q))
    }
}

/// Φ_m(t), by dividing t^m − 1 by Φ_d for the proper divisors d of m.
pub fn cyclotomic_poly(m: u64) -> Result<QPoly> {
    if m == 0 {
        return Err(Error::input("cyclotomic polynomial of conductor 0"));
    }
    let mut num = Poly::monomial(Rationals, Rationals.one(), m as usize)
        .sub(&Poly::one(Rationals));
    for d in divisors(m) {
        if d < m {
            num = num.exact_div(&cyclotomic_poly(d)?)?;
        }
    }
    debug_assert_eq!(num.degree(), Some(totient(m) as usize));
    Ok(num)
}

/// Inverse in Q(ζ_m) via the extended gcd with Φ_m.
pub fn cyclo_invert(a: &CycloElement) -> Result<CycloElement> {
    let field = CyclotomicField::new(a.conductor)?;
    field.inv(a).ok_or(Error::DivisionByZero)
}

/// Checks Φ_ℓ(t) ≡ (t − 1)^(ℓ−1) over F_ℓ and N(1 − ζ_ℓ) = Φ_ℓ(1) = ℓ.
pub fn phi_ell_mod_ell_identity(ell: u64) -> Result<bool> {
    if !is_odd_prime(ell) {
        return Err(Error::input(format!("{ell} is not an odd prime")));
    }
    let fl = PrimeField::new(ell)?;
    let phi = cyclotomic_poly(ell)?;
    let phi_mod = phi.map(fl, |c| fl.from_rational(c).expect("integral coefficients"));
    let power = Poly::from_i64s(fl, &[-1, 1]).pow(ell - 1);
    let congruence = phi_mod == power;

    let field = CyclotomicField::new(ell)?;
    let one_minus_zeta = field.sub(&field.one(), &field.zeta());
    let ell_q = Rationals.from_i64(ell as i64);
    let norm_ok = field.norm(&one_minus_zeta) == ell_q && phi.eval(&Rationals.one()) == ell_q;
    Ok(congruence && norm_ok)
}

/// Whether Q(ζ_m) contains a primitive r-th root of unity. The roots of unity
/// of Q(ζ_m) are the 2m-th ones for odd m and the m-th ones for even m.
pub fn contains_root_of_unity(r: u64, m: u64) -> bool {
    if r == 0 || m == 0 {
        return false;
    }
    if m % 2 == 0 {
        m % r == 0
    } else {
        (2 * m) % r == 0
    }
}

/// Order of the group of roots of unity in Q(ζ_m) for odd m ≥ 3.
pub fn torsion_unit_order(m: u64) -> Result<u64> {
    if m % 2 == 0 || m < 3 {
        return Err(Error::input(format!(
            "torsion unit order is only supported for odd conductors >= 3, got {m}"
        )));
    }
    Ok(2 * m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, ratio};

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_poly(5).unwrap(), Poly::from_i64s(Rationals, &[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_poly(15).unwrap().degree(), Some(8));
        // (t^6 − 1)(t − 1) / ((t^2 − 1)(t^3 − 1)) = t^2 − t + 1
        let t = |k: usize| {
            Poly::monomial(Rationals, rat(1), k).sub(&Poly::one(Rationals))
        };
        let oracle = t(6).mul(&t(1)).exact_div(&t(2).mul(&t(3))).unwrap();
        assert_eq!(oracle, Poly::from_i64s(Rationals, &[1, -1, 1]));
        assert_eq!(cyclotomic_poly(6).unwrap(), oracle);
        assert!(cyclotomic_poly(0).is_err());
    }

    #[test]
    fn product_over_divisors_is_t_m_minus_1() {
        for m in 1..=30u64 {
            let prod = divisors(m)
                .into_iter()
                .map(|d| cyclotomic_poly(d).unwrap())
                .fold(Poly::one(Rationals), |acc, p| acc.mul(&p));
            let target = Poly::monomial(Rationals, rat(1), m as usize).sub(&Poly::one(Rationals));
            assert_eq!(prod, target, "m = {m}");
            assert_eq!(cyclotomic_poly(m).unwrap().degree(), Some(totient(m) as usize));
        }
    }

    #[test]
    fn inversion_examples() {
        let k3 = CyclotomicField::new(3).unwrap();
        assert_eq!(cyclo_invert(&k3.one()).unwrap(), k3.one());
        let inv = cyclo_invert(&k3.zeta()).unwrap();
        assert_eq!(inv.coords(), &[rat(-1), rat(-1)]);
        assert_eq!(inv, k3.zeta_pow(2));

        let k5 = CyclotomicField::new(5).unwrap();
        let a = k5.sub(&k5.one(), &k5.zeta());
        let b = cyclo_invert(&a).unwrap();
        assert_eq!(k5.mul(&a, &b), k5.one());
        // (1 − ζ)^(-1) = (4 + 3ζ + 2ζ^2 + ζ^3) / 5
        assert_eq!(b.coords(), &[ratio(4, 5), ratio(3, 5), ratio(2, 5), ratio(1, 5)]);
        assert_eq!(cyclo_invert(&k5.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn phi_mod_ell() {
        for ell in [3, 5, 7, 11, 13] {
            assert!(phi_ell_mod_ell_identity(ell).unwrap(), "ell = {ell}");
        }
        assert!(phi_ell_mod_ell_identity(2).is_err());
        assert!(phi_ell_mod_ell_identity(9).is_err());
    }

    #[test]
    fn roots_of_unity_rule() {
        assert!(!contains_root_of_unity(5, 7));
        assert!(contains_root_of_unity(2, 7));
        assert!(contains_root_of_unity(3, 15));
        assert!(contains_root_of_unity(6, 3));
        assert!(!contains_root_of_unity(4, 3));
        assert_eq!(torsion_unit_order(7).unwrap(), 14);
        assert_eq!(torsion_unit_order(3).unwrap(), 6);
        assert!(torsion_unit_order(4).is_err());
        assert!(torsion_unit_order(1).is_err());
    }

    #[test]
    fn torsion_order_five_by_enumeration() {
        // k-th roots of unity present in Q(ζ_5) for k | 2·5·small: largest is 10
        let orders: Vec<u64> = (1..=60).filter(|&k| contains_root_of_unity(k, 5)).collect();
        assert_eq!(orders, vec![1, 2, 5, 10]);
        assert_eq!(*orders.last().unwrap(), torsion_unit_order(5).unwrap());
    }

    #[test]
    fn norm_of_zeta_power_is_one() {
        let k7 = CyclotomicField::new(7).unwrap();
        assert_eq!(k7.norm(&k7.zeta_pow(3)), rat(1));
        assert_eq!(k7.mul(&k7.zeta_pow(4), &k7.zeta_pow(3)), k7.one());
    }
}
