//! Exact Gauss-Jordan elimination: kernels, images, subspace coordinates,
//! inverses.
//!
//! Rows are inserted one at a time into a fully reduced echelon form. The
//! reduced row echelon form of a matrix is unique, so every result here is
//! independent of insertion order and of hash or thread scheduling.

use std::collections::BTreeMap;

use super::matrix::SparseMatrix;
use super::scalar::Q;
use super::space::{Shape, Space};
use super::vector::{Accumulator, SparseVec};
use crate::error::{Error, Result};

/// A row space kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Rref {
    ncols: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Rref {
    pub fn new(ncols: usize) -> Self {
        Rref { ncols, rows: BTreeMap::new() }
    }

    pub fn from_rows<'a>(ncols: usize, rows: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut r = Rref::new(ncols);
        for v in rows {
            r.insert(v.clone());
        }
        r
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// Rows in increasing pivot order.
    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.rows.iter().map(|(p, r)| (*p, r))
    }

    /// `v` minus its component along the pivot rows.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        assert_eq!(v.dim(), self.ncols, "rref: row dimension mismatch");
        let hits: Vec<(usize, Q)> = v
            .entries()
            .iter()
            .filter(|(i, _)| self.rows.contains_key(i))
            .cloned()
            .collect();
        if hits.is_empty() {
            return v.clone();
        }
        let mut acc = Accumulator::new(self.ncols);
        acc.add_scaled(&Q::one(), v);
        for (p, c) in hits {
            acc.add_scaled(&-c, &self.rows[&p]);
        }
        acc.finish()
    }

    /// Adds a row; returns whether the rank increased.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(&v);
        let Some((lead, c)) = r.leading().cloned() else {
            return false;
        };
        let r = r.scale(&c.inv().expect("leading entry is nonzero"));
        for row in self.rows.values_mut() {
            let x = row.get(lead);
            if !x.is_zero() {
                *row = row.axpy(&-x, &r);
            }
        }
        self.rows.insert(lead, r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }
}

/// A subspace of a (possibly tensor) ambient space, with a basis whose
/// `k`-th vector has coordinate 1 at `read[k]` and 0 at every other read
/// position. Coordinates of a member are therefore read off directly.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: Shape,
    coords: Space,
    basis: SparseMatrix,
    read: Vec<usize>,
}

impl Subspace {
    fn build(ambient: Shape, vectors: Vec<SparseVec>, read: Vec<usize>) -> Subspace {
        let labels = unique_labels(&ambient, &vectors);
        let coords = Space::new(labels).expect("rendered labels are unique");
        let basis = SparseMatrix::new(Shape::of(&coords), ambient.clone(), vectors)
            .expect("basis vectors live in the ambient space");
        Subspace { ambient, coords, basis, read }
    }

    /// The span of `vectors`, with basis in reduced column echelon form.
    pub fn span(ambient: Shape, vectors: impl IntoIterator<Item = SparseVec>) -> Subspace {
        let mut r = Rref::new(ambient.dim());
        for v in vectors {
            r.insert(v);
        }
        let read = r.pivots();
        let rows = r.rows.into_values().collect();
        Subspace::build(ambient, rows, read)
    }

    pub fn full(ambient: Shape) -> Subspace {
        let n = ambient.dim();
        Subspace::span(ambient, (0..n).map(|i| SparseVec::basis(n, i)))
    }

    pub fn ambient(&self) -> &Shape {
        &self.ambient
    }

    pub fn coord_space(&self) -> &Space {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.read.len()
    }

    /// Inclusion `coordinates → ambient`.
    pub fn basis(&self) -> &SparseMatrix {
        &self.basis
    }

    pub fn basis_vector(&self, k: usize) -> &SparseVec {
        self.basis.col(k)
    }

    /// Linear map `ambient → coordinates` that agrees with `solve_in_subspace`
    /// on members of the subspace.
    pub fn projection(&self) -> SparseMatrix {
        let n = self.ambient.dim();
        let d = self.dim();
        let mut cols = vec![SparseVec::zero(d); n];
        for (k, &p) in self.read.iter().enumerate() {
            cols[p] = SparseVec::basis(d, k);
        }
        SparseMatrix::new(self.ambient.clone(), Shape::of(&self.coords), cols)
            .expect("projection shape")
    }

    /// Coordinates read at the pivot positions, without a membership check.
    pub fn read_coords(&self, v: &SparseVec) -> SparseVec {
        let terms = self
            .read
            .iter()
            .enumerate()
            .map(|(k, &p)| (k, v.get(p)))
            .collect();
        SparseVec::from_terms(self.dim(), terms)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.basis.apply(&self.read_coords(v)) == *v
    }

    /// Same column span as `other` (ambient shapes must agree).
    pub fn same_span(&self, other: &Subspace) -> bool {
        if self.ambient.dim() != other.ambient.dim() || self.dim() != other.dim() {
            return false;
        }
        (0..other.dim()).all(|k| self.contains(other.basis_vector(k)))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        (0..self.dim()).all(|k| other.contains(self.basis_vector(k)))
    }
}

fn unique_labels(ambient: &Shape, vectors: &[SparseVec]) -> Vec<String> {
    let mut labels: Vec<String> = vectors.iter().map(|v| render(ambient, v)).collect();
    let mut seen = std::collections::HashMap::new();
    for l in &labels {
        *seen.entry(l.clone()).or_insert(0usize) += 1;
    }
    if seen.values().any(|&c| c > 1) {
        for (k, l) in labels.iter_mut().enumerate() {
            *l = format!("#{k} {l}");
        }
    }
    labels
}

/// Human-readable linear combination, e.g. `x[1,2] + 2·x[a,a]`.
pub fn render(shape: &Shape, v: &SparseVec) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (n, (i, c)) in v.entries().iter().enumerate() {
        let label = shape.label(*i);
        let label = if shape.arity() > 1 { format!("({label})") } else { label };
        let neg = c.is_negative();
        let mag = c.abs();
        if n == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag.is_one() {
            out.push_str(&label);
        } else {
            out.push_str(&format!("{mag}·{label}"));
        }
    }
    out
}

pub fn rank(f: &SparseMatrix) -> usize {
    Rref::from_rows(f.nrows(), f.cols()).rank()
}

pub fn kernel_basis(f: &SparseMatrix) -> Subspace {
    let n = f.ncols();
    let rows = f.transpose();
    let r = Rref::from_rows(n, rows.cols());
    let free: Vec<usize> = (0..n).filter(|j| !r.is_pivot(*j)).collect();
    let vectors = free
        .iter()
        .map(|&j| {
            let mut terms = vec![(j, Q::one())];
            for (p, row) in r.rows() {
                let x = row.get(j);
                if !x.is_zero() {
                    terms.push((p, -x));
                }
            }
            SparseVec::from_terms(n, terms)
        })
        .collect();
    Subspace::build(f.domain().clone(), vectors, free)
}

pub fn image_basis(f: &SparseMatrix) -> Subspace {
    Subspace::span(f.codomain().clone(), f.cols().iter().cloned())
}

pub fn solve_in_subspace(v: &SparseVec, s: &Subspace) -> Result<SparseVec> {
    if v.dim() != s.ambient.dim() {
        return Err(Error::mismatch("vector is not in the subspace's ambient space"));
    }
    let c = s.read_coords(v);
    if s.basis.apply(&c) == *v {
        Ok(c)
    } else {
        Err(Error::NotInSubspace)
    }
}

/// Some `x` with `f x = v`, free variables set to zero.
pub fn solve(f: &SparseMatrix, v: &SparseVec) -> Option<SparseVec> {
    let n = f.ncols();
    let rows = f.transpose();
    let mut r = Rref::new(n + 1);
    for (i, row) in rows.cols().iter().enumerate() {
        let mut terms: Vec<(usize, Q)> = row.entries().to_vec();
        let b = v.get(i);
        if !b.is_zero() {
            terms.push((n, b));
        }
        r.insert(SparseVec::from_terms(n + 1, terms));
    }
    if r.is_pivot(n) {
        return None;
    }
    let terms = r.rows().map(|(p, row)| (p, row.get(n))).collect();
    Some(SparseVec::from_terms(n, terms))
}

pub fn inverse(f: &SparseMatrix) -> Result<SparseMatrix> {
    let n = f.ncols();
    if f.nrows() != n {
        return Err(Error::mismatch("inverse of a non-square matrix"));
    }
    let rows = f.transpose();
    let mut r = Rref::new(2 * n);
    for (i, row) in rows.cols().iter().enumerate() {
        let mut terms: Vec<(usize, Q)> = row.entries().to_vec();
        terms.push((n + i, Q::one()));
        r.insert(SparseVec::from_terms(2 * n, terms));
    }
    if r.pivots().iter().take(n).copied().ne(0..n) {
        return Err(Error::Singular);
    }
    // Row k of the inverse is the right half of pivot row k.
    let mut cols: Vec<Vec<(usize, Q)>> = vec![Vec::new(); n];
    for (k, row) in r.rows() {
        for (j, x) in row.entries() {
            if *j >= n {
                cols[j - n].push((k, x.clone()));
            }
        }
    }
    let cols = cols.into_iter().map(|c| SparseVec::from_terms(n, c)).collect();
    SparseMatrix::new(f.codomain().clone(), f.domain().clone(), cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    fn mat(rows: &[&[i64]]) -> SparseMatrix {
        let c = rows[0].len();
        let dom = Shape::of(&Space::numbered("c", c));
        let cod = Shape::of(&Space::numbered("r", rows.len()));
        SparseMatrix::from_fn(dom, cod, |j| {
            SparseVec::from_dense(&rows.iter().map(|row| q(row[j])).collect::<Vec<_>>())
        })
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let k = kernel_basis(&mat(&[&[1, 2], &[2, 4]]));
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis_vector(0).to_dense(), vec![q(-2), q(1)]);
    }

    #[test]
    fn kernel_trivial_cases() {
        assert_eq!(kernel_basis(&mat(&[&[0, 0], &[0, 0]])).dim(), 2);
        assert_eq!(kernel_basis(&mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).dim(), 0);
    }

    #[test]
    fn image_of_rank_one_matrix() {
        let im = image_basis(&mat(&[&[1, 1], &[2, 2]]));
        assert_eq!(im.dim(), 1);
        assert_eq!(im.basis_vector(0).to_dense(), vec![q(1), q(2)]);
        assert_eq!(image_basis(&mat(&[&[0, 0], &[0, 0]])).dim(), 0);
        assert_eq!(image_basis(&mat(&[&[1, 0], &[0, 1]])).dim(), 2);
    }

    #[test]
    fn solve_detects_non_members() {
        let im = image_basis(&mat(&[&[1, 1], &[2, 2]]));
        assert_eq!(solve_in_subspace(&SparseVec::zero(2), &im).unwrap(), SparseVec::zero(1));
        let b = im.basis_vector(0).clone();
        assert_eq!(solve_in_subspace(&b, &im).unwrap(), SparseVec::basis(1, 0));
        let outside = SparseVec::from_dense(&[q(1), q(0)]);
        assert!(matches!(solve_in_subspace(&outside, &im), Err(Error::NotInSubspace)));
    }

    #[test]
    fn inverse_and_solve() {
        let a = mat(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&a).unwrap();
        assert!(a.compose(&inv).same_entries(&SparseMatrix::identity(a.codomain().clone())));
        assert!(matches!(inverse(&mat(&[&[1, 2], &[2, 4]])), Err(Error::Singular)));
        let x = solve(&a, &SparseVec::from_dense(&[q(3), q(2)])).unwrap();
        assert_eq!(x.to_dense(), vec![q(1), q(1)]);
        assert!(solve(&mat(&[&[1, 2], &[2, 4]]), &SparseVec::from_dense(&[q(1), q(0)])).is_none());
    }

    #[test]
    fn render_combinations() {
        let s = Shape::of(&Space::new(["a", "b"]).unwrap());
        let v = SparseVec::from_terms(2, vec![(0, q(1)), (1, Q::new(-1, 2).unwrap())]);
        assert_eq!(render(&s, &v), "a - 1/2·b");
    }
}
