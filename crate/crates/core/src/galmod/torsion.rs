//! The model X = Q_R (x) F_l[t]/(t-1)^(l-1) of the l-torsion of the heart, with
//! delta acting as multiplication by t, its (1 - delta)-adic filtration and the
//! unipotence of endomorphisms fixing the bottom layer.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    coordinates, find_invertible_hom, permutation_module, split_heart, FlMatrix, FlVector, GModule,
    HeartModule,
};
use crate::cyclo::phi_ell_mod_ell_identity;
use crate::error::{Error, Result};
use crate::exactmath::integer::is_odd_prime;
use crate::exactmath::{span_rank, Matrix, PrimeField};
use crate::permgrp::PermutationGroup;

/// Cap on brute-force order computation when a matrix is not unipotent.
const ORDER_SEARCH_LIMIT: u64 = 100_000;

#[derive(Clone, Debug)]
pub struct TorsionModel {
    pub ell: u64,
    pub n: usize,
    pub heart: HeartModule,
    /// G acting on X; basis index is a * (l - 1) + k for heart vector a times (t - 1)^k.
    pub module: GModule,
    pub delta: FlMatrix,
}

impl TorsionModel {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn field(&self) -> PrimeField {
        self.module.field()
    }

    /// 1 - delta.
    pub fn nilpotent(&self) -> FlMatrix {
        Matrix::identity(self.field(), self.dim()).sub(&self.delta).expect("square")
    }
}

/// Multiplication by u = t - 1 on F_l[u]/(u^(l-1)) in the basis 1, u, ..., u^(l-2).
fn shift_matrix(f: PrimeField, size: usize) -> FlMatrix {
    let mut u = Matrix::zeros(f, size, size);
    for k in 0..size.saturating_sub(1) {
        u.set(k + 1, k, 1);
    }
    u
}

/// Builds the model and re-verifies its defining identities.
pub fn build_torsion_model(group: Arc<PermutationGroup>, ell: u64) -> Result<TorsionModel> {
    if !is_odd_prime(ell) {
        return Err(Error::input(format!("{ell} is not an odd prime")));
    }
    let n = group.degree();
    let p = permutation_module(group, ell)?;
    let (_, heart) = split_heart(&p)?;
    let f = p.field();
    let r = ell as usize - 1;
    let id_r = Matrix::identity(f, r);
    let u = shift_matrix(f, r);
    let action: Vec<FlMatrix> = heart.module.action().iter().map(|m| m.kronecker(&id_r)).collect();
    let dim = (n - 1) * r;
    let module = GModule::trusted(Arc::clone(heart.module.group()), f, dim, action);
    let delta = Matrix::identity(f, n - 1).kronecker(&id_r.add(&u)?);

    // sum_{j<l} delta^j = P_l(delta) must vanish.
    let mut sum = Matrix::zeros(f, dim, dim);
    let mut power = Matrix::identity(f, dim);
    for _ in 0..ell {
        sum = sum.add(&power)?;
        power = power.mul(&delta)?;
    }
    if !sum.is_zero() {
        return Err(Error::internal("delta does not satisfy the cyclotomic relation"));
    }
    for g in module.action() {
        if g.mul(&delta)? != delta.mul(g)? {
            return Err(Error::internal("delta does not commute with the group"));
        }
    }
    if !phi_ell_mod_ell_identity(ell)? {
        return Err(Error::internal("cyclotomic congruence failed"));
    }
    Ok(TorsionModel { ell, n, heart, module, delta })
}

/// One layer M_{i+1}/M_i of the filtration.
#[derive(Clone, Debug)]
pub struct QuotientStep {
    pub index: usize,
    pub dim: usize,
    pub isomorphic_to_heart: bool,
    /// "induced by (1-delta)^i", "generic search" or "none".
    pub method: &'static str,
}

#[derive(Clone, Debug)]
pub struct Filtration {
    /// dim M_i for i = 0..=l-1.
    pub dims: Vec<usize>,
    pub bases: Vec<Vec<FlVector>>,
    pub steps: Vec<QuotientStep>,
}

impl Filtration {
    pub fn all_layers_heart(&self) -> bool {
        self.steps.iter().all(|s| s.isomorphic_to_heart)
    }
}

/// M_i = ker (1 - delta)^i, checking each quotient against the heart.
pub fn filtration_of_model(x: &TorsionModel) -> Result<Filtration> {
    let f = x.field();
    let dim = x.dim();
    let r = x.ell as usize - 1;
    let nil = x.nilpotent();
    let mut bases: Vec<Vec<FlVector>> = Vec::with_capacity(r + 1);
    let mut power = Matrix::identity(f, dim);
    for _ in 0..=r {
        bases.push(power.kernel());
        power = power.mul(&nil)?;
    }
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();

    let mut steps = Vec::with_capacity(r);
    let mut nil_power = Matrix::identity(f, dim);
    for i in 0..r {
        let lower = &bases[i];
        let complement = extend_basis(f, dim, lower, &bases[i + 1]);
        let quotient = quotient_module(x, lower, &complement)?;

        // (1-delta)^i maps M_{i+1} onto M_1, which is the heart sitting in the top u-degree.
        let mut rows = vec![vec![0u64; complement.len()]; x.n - 1];
        for (j, c) in complement.iter().enumerate() {
            let w = nil_power.mul_vec(c)?;
            for (a, row) in rows.iter_mut().enumerate() {
                row[j] = w[a * r + (r - 1)];
            }
        }
        let induced = Matrix::from_rows(f, &rows)?;
        let (iso, method) = if complement.len() != x.n - 1 {
            (false, "none")
        } else if find_invertible_hom(&quotient, &x.heart.module, Some(&induced), i as u64)?
            .is_some_and(|t| t == induced)
        {
            (true, "induced by (1-delta)^i")
        } else if find_invertible_hom(&quotient, &x.heart.module, None, i as u64)?.is_some() {
            (true, "generic search")
        } else {
            (false, "none")
        };
        steps.push(QuotientStep { index: i, dim: complement.len(), isomorphic_to_heart: iso, method });
        nil_power = nil_power.mul(&nil)?;
    }
    Ok(Filtration { dims, bases, steps })
}

/// Vectors of `upper` completing a basis of `lower` to one of span(upper).
fn extend_basis(f: PrimeField, dim: usize, lower: &[FlVector], upper: &[FlVector]) -> Vec<FlVector> {
    let mut span: Vec<FlVector> = lower.to_vec();
    let mut rank = span_rank(&f, dim, &span);
    let mut out = Vec::new();
    for v in upper {
        span.push(v.clone());
        let next = span_rank(&f, dim, &span);
        if next > rank {
            rank = next;
            out.push(v.clone());
        } else {
            span.pop();
        }
    }
    out
}

/// Action on span(lower, complement)/span(lower) in the complement basis.
fn quotient_module(x: &TorsionModel, lower: &[FlVector], complement: &[FlVector]) -> Result<GModule> {
    let f = x.field();
    let k = complement.len();
    let mut basis = lower.to_vec();
    basis.extend_from_slice(complement);
    let mut action = Vec::new();
    for g in x.module.action() {
        let mut cols = Vec::with_capacity(k);
        for c in complement {
            let image = g.mul_vec(c)?;
            let coords = coordinates(f, &basis, &image)?
                .ok_or_else(|| Error::internal("filtration step is not G-stable"))?;
            cols.push(coords[lower.len()..].to_vec());
        }
        action.push(Matrix::from_columns(f, k, &cols)?);
    }
    Ok(GModule::trusted(Arc::clone(x.module.group()), f, k, action))
}

/// sigma = 1 + (1 - delta) E with E = sum_k E_k (x) U^k for random E_k.
pub fn random_engel_sigma(x: &TorsionModel, seed: u64) -> Result<FlMatrix> {
    let f = x.field();
    let r = x.ell as usize - 1;
    let h = x.n - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = shift_matrix(f, r);
    let mut e = Matrix::zeros(f, x.dim(), x.dim());
    let mut u_power = Matrix::identity(f, r);
    for _ in 0..r {
        let data: Vec<u64> = (0..h * h).map(|_| rng.gen_range(0..x.ell)).collect();
        let ek = Matrix::from_vec(f, h, h, data)?;
        e = e.add(&ek.kronecker(&u_power))?;
        u_power = u_power.mul(&u)?;
    }
    Matrix::identity(f, x.dim()).add(&x.nilpotent().mul(&e)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngelReport {
    pub order: u64,
    pub order_is_ell_power: bool,
    /// dim V^s and dim (1 - s)V for the prime-to-l part s of sigma.
    pub fixed_dim: usize,
    pub image_dim: usize,
}

/// Multiplicative order of an invertible matrix; fast path for l-power orders.
pub fn matrix_order(m: &FlMatrix, ell: u64) -> Result<u64> {
    let mut power = m.clone();
    let mut order = 1u64;
    // A unipotent matrix of size d has order dividing l^j with l^(j-1) < d.
    let mut bound = 1usize;
    while bound < m.rows().max(1) * ell as usize {
        if power.is_identity() {
            return Ok(order);
        }
        power = power.pow(ell)?;
        order *= ell;
        bound *= ell as usize;
    }
    let mut acc = m.clone();
    for k in 1..=ORDER_SEARCH_LIMIT {
        if acc.is_identity() {
            return Ok(k);
        }
        acc = acc.mul(m)?;
    }
    Err(Error::limit("matrix order exceeds the search limit"))
}

/// For s of order prime to l: bases of V^s and (1 - s)V, and whether they are complementary.
pub fn semisimple_split(s: &FlMatrix, ell: u64) -> Result<(Vec<FlVector>, Vec<FlVector>, bool)> {
    let order = matrix_order(s, ell)?;
    if order % ell == 0 {
        return Err(Error::input("the split needs an element of order prime to l"));
    }
    let f = *s.field();
    let one_minus = Matrix::identity(f, s.rows()).sub(s)?;
    let fixed = one_minus.kernel();
    let image = one_minus.column_space();
    let mut all = fixed.clone();
    all.extend(image.iter().cloned());
    let direct = span_rank(&f, s.rows(), &all) == s.rows() && all.len() == s.rows();
    Ok((fixed, image, direct))
}

/// Checks the hypotheses on sigma and reports its order.
pub fn engel_unipotence_check(x: &TorsionModel, sigma: &FlMatrix) -> Result<EngelReport> {
    if sigma.rows() != x.dim() || !sigma.is_square() || sigma.tag() != x.delta.tag() {
        return Err(Error::input("sigma has the wrong shape"));
    }
    if !sigma.is_invertible() {
        return Err(Error::input("sigma is not invertible"));
    }
    if sigma.mul(&x.delta)? != x.delta.mul(sigma)? {
        return Err(Error::input("sigma does not commute with delta"));
    }
    let m1 = x.nilpotent().kernel();
    for v in &m1 {
        if sigma.mul_vec(v)? != *v {
            return Err(Error::input("sigma does not fix M_1 pointwise"));
        }
    }
    let order = matrix_order(sigma, x.ell)?;
    let ell_part = {
        let mut o = order;
        let mut p = 1;
        while o % x.ell == 0 {
            o /= x.ell;
            p *= x.ell;
        }
        p
    };
    let semisimple = sigma.pow(ell_part)?;
    let (fixed, image, _) = semisimple_split(&semisimple, x.ell)?;
    Ok(EngelReport {
        order,
        order_is_ell_power: order == ell_part,
        fixed_dim: fixed.len(),
        image_dim: image.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgrp::catalog_group;

    #[test]
    fn shift_is_nilpotent() {
        let f = PrimeField::new(5).unwrap();
        let u = shift_matrix(f, 4);
        assert!(!u.pow(3).unwrap().is_zero());
        assert!(u.pow(4).unwrap().is_zero());
    }

    #[test]
    fn delta_has_order_ell() {
        let x = build_torsion_model(catalog_group(3, "S3").unwrap(), 5).unwrap();
        assert_eq!(matrix_order(&x.delta, 5).unwrap(), 5);
    }
}
