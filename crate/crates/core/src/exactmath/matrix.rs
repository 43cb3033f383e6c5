use std::fmt;

use super::field::{Field, FieldTag};
use super::poly::{interpolate, Poly};
use crate::error::{Error, Result};

/// Dense row-major matrix over a field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// Outcome of [`Matrix::solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution<E> {
    Solved(Vec<E>),
    NoSolution,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn from_vec(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::input(format!(
                "matrix data has {} entries, expected {rows}x{cols}",
                data.len()
            )));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn from_rows(field: F, rows: &[Vec<F::Elem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::input("ragged matrix rows"));
        }
        let data = rows.iter().flatten().cloned().collect();
        Matrix::from_vec(field, rows.len(), cols, data)
    }

    pub fn from_i64_rows(field: F, rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<Vec<F::Elem>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Matrix::from_rows(field, &rows)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: F, dim: usize, columns: &[Vec<F::Elem>]) -> Result<Self> {
        let mut m = Matrix::zeros(field, dim, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != dim {
                return Err(Error::input("column length mismatch"));
            }
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn tag(&self) -> FieldTag {
        self.field.tag()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.tag(), right: other.tag() });
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::input("matrix dimension mismatch"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.add(a, b)).collect();
        Ok(Matrix { data, ..self.clone_shape() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.sub(a, b)).collect();
        Ok(Matrix { data, ..self.clone_shape() })
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        Matrix { data, ..self.clone_shape() }
    }

    fn clone_shape(&self) -> Self {
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data: Vec::new() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.tag(), right: other.tag() });
        }
        if self.cols != other.rows {
            return Err(Error::input("matrix product dimension mismatch"));
        }
        let f = &self.field;
        let mut out = Matrix::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.mul(a, other.get(k, j));
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &t);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::input("matrix-vector dimension mismatch"));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Matrix::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::input("power of a non-square matrix"));
        }
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field.clone(), self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| self.field.is_zero(a))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let a = self.get(i, j);
                    if i == j {
                        self.field.is_one(a)
                    } else {
                        self.field.is_zero(a)
                    }
                })
            })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.rows + other.rows;
        let m = self.cols + other.cols;
        let mut out = Matrix::zeros(self.field.clone(), n, m);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kronecker(&self, other: &Self) -> Self {
        let f = &self.field;
        let mut out = Matrix::zeros(f.clone(), self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, f.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns. Pivots are chosen as the
    /// first nonzero entry in each column.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : Mv = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(row, fc));
                }
                v
            })
            .collect()
    }

    /// One solution of `Mx = rhs`, or `NoSolution` when inconsistent.
    pub fn solve(&self, rhs: &[F::Elem]) -> Result<Solution<F::Elem>> {
        if rhs.len() != self.rows {
            return Err(Error::input(format!(
                "right-hand side has length {}, expected {}",
                rhs.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let mut aug = Matrix::zeros(f.clone(), self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(Solution::NoSolution);
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Ok(Solution::Solved(x))
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = Matrix::zeros(f.clone(), n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(f.clone(), n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn determinant(&self) -> Result<F::Elem> {
        if !self.is_square() {
            return Err(Error::input("determinant of a non-square matrix"));
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return Ok(f.zero());
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).expect("nonzero pivot");
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), &inv);
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Basis of the column space, as the pivot columns of the matrix.
    pub fn column_space(&self) -> Vec<Vec<F::Elem>> {
        let (_, pivots) = self.rref();
        pivots.into_iter().map(|c| self.column(c)).collect()
    }

    /// Substitutes the matrix into a polynomial.
    pub fn eval_poly(&self, p: &Poly<F>) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::input("polynomial in a non-square matrix"));
        }
        let n = self.rows;
        let mut acc = Matrix::zeros(self.field.clone(), n, n);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self)?.add(&Matrix::identity(self.field.clone(), n).scale(c))?;
        }
        Ok(acc)
    }

    /// Monic minimal polynomial: the first power `M^k` linearly dependent on
    /// `I, M, ..., M^(k-1)` gives the relation.
    pub fn minimal_polynomial(&self) -> Result<Poly<F>> {
        if !self.is_square() {
            return Err(Error::input("minimal polynomial of a non-square matrix"));
        }
        let f = &self.field;
        let n = self.rows;
        let mut powers: Vec<Vec<F::Elem>> = vec![Matrix::identity(f.clone(), n).data];
        let mut current = Matrix::identity(f.clone(), n);
        for _ in 1..=n {
            current = current.mul(self)?;
            let basis = Matrix::from_columns(f.clone(), n * n, &powers)?;
            if let Solution::Solved(x) = basis.solve(&current.data)? {
                let mut coeffs: Vec<F::Elem> = x.iter().map(|c| f.neg(c)).collect();
                coeffs.push(f.one());
                return Ok(Poly::new(f.clone(), coeffs));
            }
            powers.push(current.data.clone());
        }
        Err(Error::Internal("minimal polynomial degree exceeded dimension".into()))
    }

    /// Characteristic polynomial `det(tI - M)` by interpolation at `0..=n`.
    /// Requires a field with more than `n` elements.
    pub fn characteristic_polynomial(&self) -> Result<Poly<F>> {
        if !self.is_square() {
            return Err(Error::input("characteristic polynomial of a non-square matrix"));
        }
        let f = &self.field;
        let n = self.rows;
        let xs: Vec<F::Elem> = (0..=n as i64).map(|i| f.from_i64(i)).collect();
        let mut ys = Vec::with_capacity(n + 1);
        for x in &xs {
            let shifted = Matrix::identity(f.clone(), n).scale(x).sub(self)?;
            ys.push(shifted.determinant()?);
        }
        interpolate(f, &xs, &ys)
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix[{}] {}x{}", self.field.tag(), self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Rank of the span of a set of vectors of a common length.
pub fn span_rank<F: Field>(field: &F, dim: usize, vectors: &[Vec<F::Elem>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(field.clone(), dim, vectors)
        .map(|m| m.rank())
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{PrimeField, Rationals};

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(Rationals, 2).kernel().is_empty());
        assert_eq!(Matrix::zeros(f3(), 2, 3).kernel().len(), 3);
        let ones = Matrix::from_i64_rows(f3(), &[&[1, 1, 1, 1, 1]]).unwrap();
        let k = ones.kernel();
        assert_eq!(k.len(), 4);
        for v in &k {
            assert!(ones.mul_vec(v).unwrap().iter().all(|x| *x == 0));
        }
    }

    #[test]
    fn solve_examples() {
        let v: Vec<_> = [3, -1].iter().map(|&x| Rationals.from_i64(x)).collect();
        assert_eq!(
            Matrix::identity(Rationals, 2).solve(&v).unwrap(),
            Solution::Solved(v.clone())
        );
        assert_eq!(
            Matrix::zeros(Rationals, 2, 2).solve(&v).unwrap(),
            Solution::NoSolution
        );
        let ones = Matrix::from_i64_rows(f3(), &[&[1, 1, 1, 1, 1]]).unwrap();
        let Solution::Solved(x) = ones.solve(&[1]).unwrap() else { panic!() };
        assert_eq!(ones.mul_vec(&x).unwrap(), vec![1]);
        assert_eq!(x, vec![1, 0, 0, 0, 0]);
        assert!(ones.solve(&[1, 1]).is_err());
    }

    #[test]
    fn minimal_polynomial_examples() {
        let t_minus_1 = Poly::from_i64s(Rationals, &[-1, 1]);
        assert_eq!(Matrix::identity(Rationals, 3).minimal_polynomial().unwrap(), t_minus_1);
        let t = Poly::from_i64s(Rationals, &[0, 1]);
        assert_eq!(Matrix::zeros(Rationals, 2, 2).minimal_polynomial().unwrap(), t);
        // companion matrix of t^4 + t^3 + t^2 + t + 1
        let c = Matrix::from_i64_rows(
            Rationals,
            &[&[0, 0, 0, -1], &[1, 0, 0, -1], &[0, 1, 0, -1], &[0, 0, 1, -1]],
        )
        .unwrap();
        let phi5 = Poly::from_i64s(Rationals, &[1, 1, 1, 1, 1]);
        assert!(c.eval_poly(&phi5).unwrap().is_zero());
        assert_eq!(c.minimal_polynomial().unwrap(), phi5);
        assert!(Matrix::zeros(Rationals, 2, 3).minimal_polynomial().is_err());
    }

    #[test]
    fn determinant_and_inverse() {
        let m = Matrix::from_i64_rows(Rationals, &[&[2, 1], &[7, 4]]).unwrap();
        assert_eq!(m.determinant().unwrap(), Rationals.from_i64(1));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let sing = Matrix::from_i64_rows(f3(), &[&[1, 2], &[2, 1]]).unwrap();
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn characteristic_polynomial_of_companion() {
        let c = Matrix::from_i64_rows(Rationals, &[&[0, -2], &[1, 3]]).unwrap();
        assert_eq!(
            c.characteristic_polynomial().unwrap(),
            Poly::from_i64s(Rationals, &[2, -3, 1])
        );
    }
}
