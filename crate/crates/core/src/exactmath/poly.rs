use std::fmt;

use super::field::{Field, FieldTag};
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients lowest degree first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector and `lead()` is always nonzero when present.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64s(field: F, coeffs: &[i64]) -> Self {
        let cs = coeffs.iter().map(|&c| field.from_i64(c)).collect();
        Poly::new(field, cs)
    }

    pub fn zero(field: F) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        let one = field.one();
        Poly::new(field, vec![one])
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Poly::new(field, vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(field: F, c: F::Elem, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Poly::new(field, coeffs)
    }

    pub fn x(field: F) -> Self {
        let one = field.one();
        Poly::monomial(field, one, 1)
    }

    /// `x - a`
    pub fn linear_root(field: F, a: &F::Elem) -> Self {
        let c = vec![field.neg(a), field.one()];
        Poly::new(field, c)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn tag(&self) -> FieldTag {
        self.field.tag()
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| self.field.is_one(c))
    }

    pub(crate) fn check_same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.tag(), right: other.tag() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(f.clone(), coeffs)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = f.mul(a, b);
                out[i + j] = f.add(&out[i + j], &t);
            }
        }
        Poly::new(f.clone(), out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division; errors on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_same_field(divisor)?;
        let f = &self.field;
        let dlead = divisor.lead().ok_or(Error::DivisionByZero)?;
        let dinv = f.inv(dlead).ok_or(Error::DivisionByZero)?;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(f.clone()), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![f.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(&rem[k + dd], &dinv);
            if f.is_zero(&c) {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = f.mul(&c, d);
                rem[k + j] = f.sub(&rem[k + j], &t);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(f.clone(), quot), Poly::new(f.clone(), rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient; errors when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.div_rem(self)?.1.is_zero())
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = self.field.inv(l).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(c, &f.from_i64(i as i64)))
            .collect();
        Poly::new(f.clone(), coeffs)
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// `self(other(x))`
    pub fn compose(&self, other: &Self) -> Self {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Poly::zero(f.clone()), |acc, c| {
            acc.mul(other).add(&Poly::constant(f.clone(), c.clone()))
        })
    }

    /// Monic greatest common divisor. Errors when both inputs are zero.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check_same_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::input("gcd of two zero polynomials"));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        self.check_same_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::input("gcd of two zero polynomials"));
        }
        let f = self.field.clone();
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f.clone()), Poly::zero(f.clone()));
        let (mut t0, mut t1) = (Poly::zero(f.clone()), Poly::one(f.clone()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = f.inv(r0.lead().expect("nonzero gcd")).expect("nonzero");
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// `self^e mod modulus`
    pub fn pow_mod(&self, mut e: u128, modulus: &Self) -> Result<Self> {
        let mut base = self.rem(modulus)?;
        let mut acc = Poly::one(self.field.clone()).rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            base = base.mul(&base).rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Applies a coefficient map into another field.
    pub fn map<G: Field>(&self, target: G, f: impl Fn(&F::Elem) -> G::Elem) -> Poly<G> {
        let coeffs = self.coeffs.iter().map(f).collect();
        Poly::new(target, coeffs)
    }

    /// Resultant over the field, via the Euclidean remainder sequence.
    pub fn resultant(&self, other: &Self) -> Result<F::Elem> {
        self.check_same_field(other)?;
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(f.zero());
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = f.one();
        loop {
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            if db == 0 {
                return Ok(f.mul(&acc, &f.pow(b.lead().unwrap(), da as u64)));
            }
            let r = a.rem(&b)?;
            if r.is_zero() {
                return Ok(f.zero());
            }
            let dr = r.degree().unwrap();
            // res(a, b) = (-1)^(da*db) * lc(b)^(da - dr) * res(b, r)
            let mut factor = f.pow(b.lead().unwrap(), (da - dr) as u64);
            if (da * db) % 2 == 1 {
                factor = f.neg(&factor);
            }
            acc = f.mul(&acc, &factor);
            a = b;
            b = r;
        }
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]{:?}", self.field.tag(), self.coeffs)
    }
}

/// Lagrange interpolation through `(xs[i], ys[i])` with distinct abscissae.
pub fn interpolate<F: Field>(field: &F, xs: &[F::Elem], ys: &[F::Elem]) -> Result<Poly<F>> {
    if xs.len() != ys.len() {
        return Err(Error::input("interpolation data length mismatch"));
    }
    let mut out = Poly::zero(field.clone());
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if field.is_zero(yi) {
            continue;
        }
        let mut basis = Poly::one(field.clone());
        let mut denom = field.one();
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&Poly::linear_root(field.clone(), xj));
            denom = field.mul(&denom, &field.sub(xi, xj));
        }
        let c = field.div(yi, &denom)?;
        out = out.add(&basis.scale(&c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{PrimeField, Rationals};

    fn q(cs: &[i64]) -> Poly<Rationals> {
        Poly::from_i64s(Rationals, cs)
    }

    #[test]
    fn gcd_examples() {
        // x^2 - 1 and x - 1
        assert_eq!(q(&[-1, 0, 1]).gcd(&q(&[-1, 1])).unwrap(), q(&[-1, 1]));
        // x^5 - x - 1 and 5x^4 - 1
        let f = q(&[-1, -1, 0, 0, 0, 1]);
        assert_eq!(f.gcd(&f.derivative()).unwrap(), q(&[1]));
        // gcd with zero normalizes to monic
        assert_eq!(q(&[]).gcd(&q(&[2, 0, 0, 1])).unwrap(), q(&[2, 0, 0, 1]));
        assert_eq!(q(&[]).gcd(&q(&[4, 0, 0, 2])).unwrap(), q(&[2, 0, 0, 1]));
    }

    #[test]
    fn gcd_errors() {
        assert!(matches!(q(&[]).gcd(&q(&[])), Err(Error::Input(_))));
        let a = Poly::from_i64s(PrimeField::new(3).unwrap(), &[1, 1]);
        let b = Poly::from_i64s(PrimeField::new(5).unwrap(), &[1, 1]);
        assert!(matches!(a.gcd(&b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn xgcd_bezout() {
        let a = q(&[-1, -1, 0, 0, 0, 1]);
        let b = q(&[1, 0, 1]);
        let (g, s, t) = a.xgcd(&b).unwrap();
        assert!(g.is_one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn resultant_matches_discriminant_formula() {
        // disc(x^3 + p x + q) = -4p^3 - 27q^2 and res(f, f') = -disc for cubics
        let f = q(&[-2, 0, 0, 1]);
        let r = f.resultant(&f.derivative()).unwrap();
        assert_eq!(r, Rationals.from_i64(108));
        // res(x - a, g) = g(a)
        let g = q(&[3, 1, 1]);
        assert_eq!(q(&[-2, 1]).resultant(&g).unwrap(), Rationals.from_i64(9));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = q(&[7, -3, 0, 2]);
        let xs: Vec<_> = (0..4).map(|i| Rationals.from_i64(i)).collect();
        let ys: Vec<_> = xs.iter().map(|x| f.eval(x)).collect();
        assert_eq!(interpolate(&Rationals, &xs, &ys).unwrap(), f);
    }

    #[test]
    fn compose_and_pow_mod() {
        let f = q(&[0, 0, 1]);
        let g = q(&[1, 1]);
        assert_eq!(f.compose(&g), q(&[1, 2, 1]));
        let fp = PrimeField::new(5).unwrap();
        let m = Poly::from_i64s(fp, &[2, 0, 1]);
        // x^5 mod (x^2 + 2) over F_5: x^2 = -2, x^4 = 4, x^5 = 4x
        assert_eq!(Poly::x(fp).pow_mod(5, &m).unwrap(), Poly::from_i64s(fp, &[0, 4]));
    }
}
