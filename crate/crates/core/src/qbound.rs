//! Dimension bound for a rational space carrying commuting automorphisms of
//! coprime odd prime orders l and r.

use crate::cyclo::{cyclotomic_poly, CyclotomicField};
use crate::error::{Error, Result};
use crate::exactmath::integer::is_odd_prime;
use crate::exactmath::{Field, Matrix, QMatrix, QPoly, Rationals, Solution};
use crate::factor::factor_rational_over_cyclotomic;

/// Largest (l - 1)(r - 1) accepted by [`synthesize_instance`].
pub const SYNTHESIS_GUARD: u64 = 64;

/// Commuting A, B on Q^d with A^l = B^r = 1.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutingPair {
    ell: u64,
    r: u64,
    a: QMatrix,
    b: QMatrix,
}

fn check_primes(ell: u64, r: u64) -> Result<()> {
    if !is_odd_prime(ell) || !is_odd_prime(r) || ell == r {
        return Err(Error::input(format!("{ell} and {r} must be distinct odd primes")));
    }
    Ok(())
}

impl CommutingPair {
    pub fn new(ell: u64, r: u64, a: QMatrix, b: QMatrix) -> Result<Self> {
        check_primes(ell, r)?;
        if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
            return Err(Error::input("A and B must be square of the same size"));
        }
        if a.mul(&b)? != b.mul(&a)? {
            return Err(Error::input("A and B do not commute"));
        }
        if !a.pow(ell)?.is_identity() {
            return Err(Error::input(format!("A^{ell} is not the identity")));
        }
        if !b.pow(r)?.is_identity() {
            return Err(Error::input(format!("B^{r} is not the identity")));
        }
        Ok(CommutingPair { ell, r, a, b })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn a(&self) -> &QMatrix {
        &self.a
    }

    pub fn b(&self) -> &QMatrix {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    /// Block-diagonal sum of two pairs with the same orders.
    pub fn direct_sum(&self, other: &CommutingPair) -> Result<CommutingPair> {
        if (self.ell, self.r) != (other.ell, other.r) {
            return Err(Error::input("direct sum needs matching orders"));
        }
        Ok(CommutingPair {
            ell: self.ell,
            r: self.r,
            a: self.a.direct_sum(&other.a),
            b: self.b.direct_sum(&other.b),
        })
    }
}

/// Q(zeta_{lr}) as a Q-space, A and B multiplication by zeta^r and zeta^l.
pub fn synthesize_instance(ell: u64, r: u64) -> Result<CommutingPair> {
    check_primes(ell, r)?;
    if (ell - 1) * (r - 1) > SYNTHESIS_GUARD {
        return Err(Error::limit(format!(
            "(l-1)(r-1) = {} exceeds {SYNTHESIS_GUARD}",
            (ell - 1) * (r - 1)
        )));
    }
    let k = CyclotomicField::new(ell * r)?;
    let a = k.multiplication_matrix(&k.zeta_pow(r));
    let b = k.multiplication_matrix(&k.zeta_pow(ell));
    CommutingPair::new(ell, r, a, b)
}

/// Companion matrix of Phi_l with B = 1: satisfies every hypothesis except B != 1.
pub fn b_trivial_block(ell: u64, r: u64) -> Result<CommutingPair> {
    check_primes(ell, r)?;
    let phi = cyclotomic_poly(ell)?;
    let d = ell as usize - 1;
    let mut a = Matrix::zeros(Rationals, d, d);
    for i in 1..d {
        a.set(i, i - 1, Rationals.one());
    }
    for i in 0..d {
        a.set(i, d - 1, Rationals.neg(&phi.coeff(i)));
    }
    CommutingPair::new(ell, r, a, Matrix::identity(Rationals, d))
}

#[derive(Clone, Debug, PartialEq)]
pub struct QlnReport {
    pub minpoly_a: QPoly,
    pub minpoly_b: QPoly,
    pub minpolys_cyclotomic: bool,
    pub dim: usize,
    pub v0_dimension: usize,
    pub bound: u64,
    pub satisfied: bool,
    /// Basis of (B - 1)V.
    pub image_basis: Vec<Vec<num_rational::BigRational>>,
    /// Basis of ker(B - 1).
    pub kernel_basis: Vec<Vec<num_rational::BigRational>>,
    pub splitting_exact: bool,
}

/// Restriction of `m` to the invariant subspace spanned by `basis`.
fn restrict(m: &QMatrix, basis: &[Vec<num_rational::BigRational>]) -> Result<QMatrix> {
    let dim = m.rows();
    let b = Matrix::from_columns(Rationals, dim, basis)?;
    let mut cols = Vec::with_capacity(basis.len());
    for v in basis {
        match b.solve(&m.mul_vec(v)?)? {
            Solution::Solved(x) => cols.push(x),
            Solution::NoSolution => return Err(Error::internal("subspace is not invariant")),
        }
    }
    Matrix::from_columns(Rationals, basis.len(), &cols)
}

pub fn analyze_commuting_pair(p: &CommutingPair) -> Result<QlnReport> {
    let dim = p.dim();
    let id = Matrix::identity(Rationals, dim);
    let a1 = p.a.sub(&id)?;
    if !a1.is_invertible() {
        return Err(Error::precondition("A - 1 is not invertible"));
    }
    if p.b.is_identity() {
        return Err(Error::precondition("B is the identity"));
    }
    let b1 = p.b.sub(&id)?;
    let image_basis = b1.column_space();
    let kernel_basis = b1.kernel();
    let mut joint = image_basis.clone();
    joint.extend(kernel_basis.iter().cloned());
    let splitting_exact = joint.len() == dim && Matrix::from_columns(Rationals, dim, &joint)?.rank() == dim;

    let a0 = restrict(&p.a, &image_basis)?;
    let b0 = restrict(&p.b, &image_basis)?;
    let minpoly_a = a0.minimal_polynomial()?;
    let minpoly_b = b0.minimal_polynomial()?;
    let minpolys_cyclotomic = minpoly_a == cyclotomic_poly(p.ell)? && minpoly_b == cyclotomic_poly(p.r)?;

    let bound = (p.ell - 1) * (p.r - 1);
    let v0 = image_basis.len();
    let satisfied = v0 as u64 >= bound && v0 as u64 % bound == 0;
    Ok(QlnReport {
        minpoly_a,
        minpoly_b,
        minpolys_cyclotomic,
        dim,
        v0_dimension: v0,
        bound,
        satisfied,
        image_basis,
        kernel_basis,
        splitting_exact,
    })
}

/// (l - 1)(r - 1), the degree of Q(zeta_{lr}) over Q.
pub fn tensor_dimension(ell: u64, r: u64) -> Result<u64> {
    check_primes(ell, r)?;
    Ok((ell - 1) * (r - 1))
}

/// Checks linear disjointness by factoring Phi_r over Q(zeta_l).
pub fn tensor_dimension_cross_check(ell: u64, r: u64) -> Result<bool> {
    check_primes(ell, r)?;
    let phi = cyclotomic_poly(r)?;
    let fac = factor_rational_over_cyclotomic(&phi, ell)?;
    Ok(fac.is_irreducible() && fac.degrees() == vec![r as usize - 1])
}
