//! Sparse linear maps between labeled spaces, stored by column.

use super::scalar::Q;
use super::space::Shape;
use super::vector::{Accumulator, SparseVec};
use crate::error::{Error, Result};

/// A linear map `domain → codomain`; column `j` is the image of basis
/// vector `j` of the (flattened) domain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    domain: Shape,
    codomain: Shape,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(domain: Shape, codomain: Shape, cols: Vec<SparseVec>) -> Result<Self> {
        if cols.len() != domain.dim() {
            return Err(Error::mismatch(format!(
                "{} columns for a domain of dimension {}",
                cols.len(),
                domain.dim()
            )));
        }
        let cd = codomain.dim();
        if let Some(c) = cols.iter().find(|c| c.dim() != cd) {
            return Err(Error::mismatch(format!(
                "column of dimension {} for a codomain of dimension {cd}",
                c.dim()
            )));
        }
        Ok(SparseMatrix { domain, codomain, cols })
    }

    pub fn from_fn(domain: Shape, codomain: Shape, f: impl Fn(usize) -> SparseVec) -> Self {
        let cols = (0..domain.dim()).map(f).collect();
        SparseMatrix::new(domain, codomain, cols).expect("from_fn produced a column of the wrong dimension")
    }

    pub fn zero(domain: Shape, codomain: Shape) -> Self {
        let cd = codomain.dim();
        SparseMatrix::from_fn(domain, codomain, |_| SparseVec::zero(cd))
    }

    pub fn identity(shape: Shape) -> Self {
        let n = shape.dim();
        SparseMatrix::from_fn(shape.clone(), shape, |j| SparseVec::basis(n, j))
    }

    /// A functional on `domain`, as a map to the ground field.
    pub fn functional(domain: Shape, values: &SparseVec) -> Self {
        assert_eq!(domain.dim(), values.dim());
        let mut cols = vec![SparseVec::zero(1); domain.dim()];
        for (i, c) in values.entries() {
            cols[*i] = SparseVec::from_terms(1, vec![(0, c.clone())]);
        }
        SparseMatrix { domain, codomain: Shape::scalar(), cols }
    }

    /// The map `𝕜 → codomain` sending `1` to `v`.
    pub fn element(codomain: Shape, v: SparseVec) -> Self {
        SparseMatrix::new(Shape::scalar(), codomain, vec![v]).expect("element dimension")
    }

    pub fn domain(&self) -> &Shape {
        &self.domain
    }

    pub fn codomain(&self) -> &Shape {
        &self.codomain
    }

    pub fn cols(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nrows(&self) -> usize {
        self.codomain.dim()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn get(&self, row: usize, col: usize) -> Q {
        self.cols[col].get(row)
    }

    /// Nonzero entries as `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Q)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.entries().iter().map(move |(i, x)| (*i, j, x)))
    }

    pub fn with_shapes(self, domain: Shape, codomain: Shape) -> Result<Self> {
        SparseMatrix::new(domain, codomain, self.cols)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        assert_eq!(v.dim(), self.cols.len(), "apply: vector dimension mismatch");
        let mut acc = Accumulator::new(self.nrows());
        for (j, c) in v.entries() {
            acc.add_scaled(c, &self.cols[*j]);
        }
        acc.finish()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(
            other.nrows(),
            self.ncols(),
            "compose: inner dimensions differ"
        );
        SparseMatrix {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn try_compose(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if other.codomain != self.domain {
            return Err(Error::mismatch(format!(
                "cannot compose: codomain dimension {} vs domain dimension {}",
                other.nrows(),
                self.ncols()
            )));
        }
        Ok(self.compose(other))
    }

    /// `self ⊗ other` on flattened row-major indices.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut cols = Vec::with_capacity(self.ncols() * other.ncols());
        for a in &self.cols {
            for b in &other.cols {
                cols.push(a.kron(b));
            }
        }
        SparseMatrix {
            domain: self.domain.tensor(&other.domain),
            codomain: self.codomain.tensor(&other.codomain),
            cols,
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows: Vec<Vec<(usize, Q)>> = vec![Vec::new(); self.nrows()];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.entries() {
                rows[*i].push((j, x.clone()));
            }
        }
        let n = self.ncols();
        SparseMatrix {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            cols: rows.into_iter().map(|r| SparseVec::from_terms(n, r)).collect(),
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.axpy(&Q::one(), other)
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.axpy(&Q::from_int(-1), other)
    }

    pub fn axpy(&self, c: &Q, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), other.ncols());
        assert_eq!(self.nrows(), other.nrows());
        SparseMatrix {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| a.axpy(c, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> SparseMatrix {
        SparseMatrix {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            cols: self.cols.iter().map(|v| v.scale(c)).collect(),
        }
    }

    /// Entrywise equality, ignoring labels.
    pub fn same_entries(&self, other: &SparseMatrix) -> bool {
        self.cols == other.cols
    }

    /// Columns where the two maps differ.
    pub fn differing_columns(&self, other: &SparseMatrix) -> Vec<usize> {
        self.cols
            .iter()
            .zip(&other.cols)
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(j, _)| j)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::space::Space;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn mat(rows: &[&[i64]]) -> SparseMatrix {
        let r = rows.len();
        let c = rows[0].len();
        let dom = Shape::of(&Space::numbered("c", c));
        let cod = Shape::of(&Space::numbered("r", r));
        SparseMatrix::from_fn(dom, cod, |j| {
            SparseVec::from_dense(&rows.iter().map(|row| q(row[j])).collect::<Vec<_>>())
        })
    }

    #[test]
    fn compose_matches_hand_product() {
        let a = mat(&[&[1, 2], &[3, 4]]);
        let b = mat(&[&[0, 1], &[1, 0]]);
        let ab = a.compose(&b);
        assert_eq!(ab.get(0, 0), q(2));
        assert_eq!(ab.get(0, 1), q(1));
        assert_eq!(ab.get(1, 0), q(4));
        assert_eq!(ab.get(1, 1), q(3));
    }

    #[test]
    fn kron_and_transpose() {
        let a = mat(&[&[1, 2], &[0, 1]]);
        let i = SparseMatrix::identity(a.domain().clone());
        let k = a.kron(&i);
        assert_eq!(k.ncols(), 4);
        assert_eq!(k.get(0, 2), q(2));
        assert_eq!(k.get(1, 3), q(2));
        assert_eq!(a.transpose().get(1, 0), q(2));
        assert_eq!(a.transpose().transpose(), a);
    }
}
