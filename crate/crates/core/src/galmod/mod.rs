//! Modules over F_l for permutation groups: the permutation module, its heart,
//! the standard pairing, invariants and equivariant maps.

mod torsion;

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactmath::integer::{is_power_of, is_prime};
use crate::exactmath::{Field, Matrix, PrimeField, Solution};
use crate::permgrp::PermutationGroup;

pub use torsion::{
    build_torsion_model, engel_unipotence_check, filtration_of_model, random_engel_sigma,
    semisimple_split, EngelReport, Filtration, QuotientStep, TorsionModel,
};

pub type FlMatrix = Matrix<PrimeField>;
pub type FlVector = Vec<u64>;

/// Elements enumerated when checking that generator matrices define a homomorphism.
const HOMOMORPHISM_CHECK_LIMIT: usize = 6_000;
const RANDOM_HOM_TRIES: usize = 64;

/// A finite-dimensional representation of a permutation group over F_l.
#[derive(Clone, Debug)]
pub struct GModule {
    ell: u64,
    field: PrimeField,
    dim: usize,
    group: Arc<PermutationGroup>,
    action: Vec<FlMatrix>,
    permutation: bool,
}

impl GModule {
    /// Checked constructor: one invertible matrix per group generator, extending to a homomorphism.
    pub fn new(group: Arc<PermutationGroup>, ell: u64, action: Vec<FlMatrix>) -> Result<Self> {
        let field = PrimeField::new(ell)?;
        if action.len() != group.generators().len() {
            return Err(Error::input(format!(
                "{} matrices for {} generators",
                action.len(),
                group.generators().len()
            )));
        }
        let dim = action.first().map_or(0, Matrix::rows);
        for m in &action {
            if !m.is_square() || m.rows() != dim || m.tag() != field.tag() {
                return Err(Error::input("action matrices must be square of one size over F_l"));
            }
            if !m.is_invertible() {
                return Err(Error::input("action matrix is not invertible"));
            }
        }
        let module = GModule { ell, field, dim, group, action, permutation: false };
        module.check_homomorphism()?;
        Ok(module)
    }

    /// Constructor for actions that are homomorphisms by construction.
    pub(crate) fn trusted(
        group: Arc<PermutationGroup>,
        field: PrimeField,
        dim: usize,
        action: Vec<FlMatrix>,
    ) -> Self {
        GModule { ell: field.modulus(), field, dim, group, action, permutation: false }
    }

    /// Walks the Cayley graph and checks that every element gets a single matrix.
    fn check_homomorphism(&self) -> Result<()> {
        if self.group.order() > HOMOMORPHISM_CHECK_LIMIT {
            return Err(Error::limit("group too large for the homomorphism check"));
        }
        let elements = self.group.elements();
        let mut image: Vec<Option<FlMatrix>> = vec![None; elements.len()];
        image[0] = Some(Matrix::identity(self.field, self.dim));
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let mi = image[i].clone().expect("visited");
            for (g, rho) in self.group.generators().iter().zip(&self.action) {
                let j = self.group.index_of(&g.compose(&elements[i])).expect("closed group");
                let mj = rho.mul(&mi)?;
                match &image[j] {
                    Some(existing) if *existing != mj => {
                        return Err(Error::input("generator matrices do not define a homomorphism"))
                    }
                    Some(_) => {}
                    None => {
                        image[j] = Some(mj);
                        queue.push_back(j);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial(group: Arc<PermutationGroup>, ell: u64, dim: usize) -> Result<Self> {
        let field = PrimeField::new(ell)?;
        let action = vec![Matrix::identity(field, dim); group.generators().len()];
        Ok(GModule::trusted(group, field, dim, action))
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn group(&self) -> &Arc<PermutationGroup> {
        &self.group
    }

    pub fn action(&self) -> &[FlMatrix] {
        &self.action
    }

    pub fn is_permutation_module(&self) -> bool {
        self.permutation
    }

    /// The contragredient module, with g acting by the inverse transpose.
    pub fn dual(&self) -> GModule {
        let action = self
            .action
            .iter()
            .map(|m| m.inverse().expect("action matrices are invertible").transpose())
            .collect();
        GModule::trusted(Arc::clone(&self.group), self.field, self.dim, action)
    }

    fn same_setting(&self, other: &GModule) -> Result<()> {
        if self.ell != other.ell {
            return Err(Error::input(format!("modules over F_{} and F_{}", self.ell, other.ell)));
        }
        if !Arc::ptr_eq(&self.group, &other.group) && *self.group != *other.group {
            return Err(Error::input("modules for different groups"));
        }
        Ok(())
    }
}

/// F_l^n with generators acting by permutation matrices, e_i -> e_{g(i)}.
pub fn permutation_module(group: Arc<PermutationGroup>, ell: u64) -> Result<GModule> {
    if !is_prime(ell) {
        return Err(Error::input(format!("{ell} is not prime")));
    }
    let field = PrimeField::new(ell)?;
    let n = group.degree();
    let action = group
        .generators()
        .iter()
        .map(|g| {
            let mut m = Matrix::zeros(field, n, n);
            for i in 0..n {
                m.set(g.apply(i), i, 1);
            }
            m
        })
        .collect();
    let mut module = GModule::trusted(group, field, n, action);
    module.permutation = true;
    Ok(module)
}

/// The sum-zero submodule of a permutation module, in the basis e_i - e_n.
#[derive(Clone, Debug)]
pub struct HeartModule {
    pub module: GModule,
    /// n x (n-1) matrix whose columns are the basis vectors inside F_l^n.
    pub embedding: FlMatrix,
}

/// Splits F_l^n into the constants line and the heart; requires l not dividing n.
pub fn split_heart(p: &GModule) -> Result<(Vec<FlVector>, HeartModule)> {
    if !p.permutation {
        return Err(Error::input("split_heart needs a permutation module"));
    }
    let n = p.dim;
    if n as u64 % p.ell == 0 {
        return Err(Error::input(format!(
            "{} divides n = {n}: the constants lie inside the heart",
            p.ell
        )));
    }
    let f = p.field;
    let mut embedding = Matrix::zeros(f, n, n - 1);
    for j in 0..n - 1 {
        embedding.set(j, j, 1);
        embedding.set(n - 1, j, f.neg(&1));
    }
    let action = p
        .action
        .iter()
        .map(|m| {
            // Image of e_j - e_n is sum-zero, so its first n-1 entries are its coordinates.
            let img = m.mul(&embedding).expect("shapes agree");
            let rows: Vec<Vec<u64>> = (0..n - 1).map(|i| img.row(i).to_vec()).collect();
            Matrix::from_rows(f, &rows).expect("rectangular")
        })
        .collect();
    let heart = GModule::trusted(Arc::clone(&p.group), f, n - 1, action);
    Ok((vec![vec![1; n]], HeartModule { module: heart, embedding }))
}

/// Columns of the heart embedding as vectors of F_l^n.
pub fn heart_basis(h: &HeartModule) -> Vec<FlVector> {
    (0..h.embedding.cols()).map(|j| h.embedding.column(j)).collect()
}

/// Gram matrix of the pairing sum_a phi(a) psi(a) on the span of `basis`.
pub fn pairing_gram(p: &GModule, basis: &[FlVector]) -> Result<FlMatrix> {
    if !p.permutation {
        return Err(Error::input("the pairing is defined on a permutation module"));
    }
    if let Some(v) = basis.iter().find(|v| v.len() != p.dim) {
        return Err(Error::input(format!("vector of length {} is not in F_l^{}", v.len(), p.dim)));
    }
    let f = p.field;
    let rows: Vec<Vec<u64>> = basis
        .iter()
        .map(|u| {
            basis
                .iter()
                .map(|v| u.iter().zip(v).fold(0, |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
                .collect()
        })
        .collect();
    if rows.is_empty() {
        return Ok(Matrix::zeros(f, 0, 0));
    }
    Matrix::from_rows(f, &rows)
}

/// Cross Gram block sum_a u(a) v(a) between two families.
pub fn pairing_block(p: &GModule, left: &[FlVector], right: &[FlVector]) -> Result<FlMatrix> {
    let f = p.field;
    let rows: Vec<Vec<u64>> = left
        .iter()
        .map(|u| {
            right
                .iter()
                .map(|v| u.iter().zip(v).fold(0, |acc, (a, b)| f.add(&acc, &f.mul(a, b))))
                .collect()
        })
        .collect();
    Matrix::from_rows(f, &rows)
}

/// Basis of the vectors fixed by every generator.
pub fn invariant_subspace(v: &GModule) -> Vec<FlVector> {
    if v.dim == 0 {
        return Vec::new();
    }
    let f = v.field;
    let id = Matrix::identity(f, v.dim);
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for m in &v.action {
        let d = m.sub(&id).expect("same shape");
        rows.extend((0..v.dim).map(|i| d.row(i).to_vec()));
    }
    if rows.is_empty() {
        return Matrix::identity(f, v.dim).column_space();
    }
    Matrix::from_rows(f, &rows).expect("rectangular").kernel()
}

/// Basis of {T : T rho_V(g) = rho_W(g) T}, each T a dim W x dim V matrix.
pub fn equivariant_hom_space(v: &GModule, w: &GModule) -> Result<Vec<FlMatrix>> {
    v.same_setting(w)?;
    let f = v.field;
    let (dv, dw) = (v.dim, w.dim);
    let unknowns = dv * dw;
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for (rv, rw) in v.action.iter().zip(&w.action) {
        for i in 0..dw {
            for k in 0..dv {
                let mut row = vec![0u64; unknowns];
                for j in 0..dv {
                    let c = *rv.get(j, k);
                    if c != 0 {
                        row[i * dv + j] = f.add(&row[i * dv + j], &c);
                    }
                }
                for j in 0..dw {
                    let c = *rw.get(i, j);
                    if c != 0 {
                        row[j * dv + k] = f.sub(&row[j * dv + k], &c);
                    }
                }
                rows.push(row);
            }
        }
    }
    let basis = if rows.is_empty() {
        Matrix::identity(f, unknowns).column_space()
    } else {
        Matrix::from_rows(f, &rows)?.kernel()
    };
    basis.into_iter().map(|t| Matrix::from_vec(f, dw, dv, t)).collect()
}

/// Whether `t` intertwines the two actions.
pub fn is_equivariant(v: &GModule, w: &GModule, t: &FlMatrix) -> Result<bool> {
    v.same_setting(w)?;
    if t.rows() != w.dim || t.cols() != v.dim {
        return Ok(false);
    }
    for (rv, rw) in v.action.iter().zip(&w.action) {
        if t.mul(rv)? != rw.mul(t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An invertible equivariant map V -> W, trying `preferred` first, then the basis,
/// then seeded random combinations.
pub fn find_invertible_hom(
    v: &GModule,
    w: &GModule,
    preferred: Option<&FlMatrix>,
    seed: u64,
) -> Result<Option<FlMatrix>> {
    v.same_setting(w)?;
    if v.dim != w.dim {
        return Ok(None);
    }
    if let Some(t) = preferred {
        if is_equivariant(v, w, t)? && t.is_invertible() {
            return Ok(Some(t.clone()));
        }
    }
    let basis = equivariant_hom_space(v, w)?;
    if let Some(t) = basis.iter().find(|t| t.is_invertible()) {
        return Ok(Some(t.clone()));
    }
    if basis.len() < 2 {
        return Ok(None);
    }
    let f = v.field;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_HOM_TRIES {
        let mut t = Matrix::zeros(f, w.dim, v.dim);
        for b in &basis {
            let c: u64 = rng.gen_range(0..v.ell);
            t = t.add(&b.scale(&c))?;
        }
        if t.is_invertible() {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// True iff the image of the group in GL(V) is an l-group.
pub fn trivial_tower_check(v: &GModule) -> bool {
    let id = Matrix::identity(v.field, v.dim);
    let mut seen: HashSet<FlMatrix> = HashSet::from([id.clone()]);
    let mut queue = std::collections::VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in &v.action {
            let x = g.mul(&m).expect("square");
            if seen.insert(x.clone()) {
                queue.push_back(x);
            }
        }
    }
    is_power_of(seen.len() as u64, v.ell)
}

/// Checks that every equivariant map M -> V vanishes, for V with l-group image.
pub fn filtered_hom_vanishing(m: &GModule, v: &GModule) -> Result<bool> {
    let group = m.group();
    if !group.is_transitive() {
        return Err(Error::input("group must be transitive"));
    }
    if group.degree() as u64 % m.ell == 0 {
        return Err(Error::input("l must not divide n"));
    }
    if !trivial_tower_check(v) {
        return Err(Error::input("target module does not have an l-group image"));
    }
    Ok(equivariant_hom_space(m, v)?.is_empty())
}

/// Expresses `vector` in the given basis, if it lies in the span.
pub(crate) fn coordinates(
    field: PrimeField,
    basis: &[FlVector],
    vector: &[u64],
) -> Result<Option<FlVector>> {
    let b = Matrix::from_columns(field, vector.len(), basis)?;
    Ok(match b.solve(vector)? {
        Solution::Solved(x) => Some(x),
        Solution::NoSolution => None,
    })
}
