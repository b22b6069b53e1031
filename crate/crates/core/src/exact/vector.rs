//! Sparse vectors over ℚ with sorted, zero-free storage.

use super::scalar::Q;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SparseVec {
    dim: usize,
    entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn zero(dim: usize) -> Self {
        SparseVec { dim, entries: Vec::new() }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index {i} out of range for dimension {dim}");
        SparseVec { dim, entries: vec![(i, Q::one())] }
    }

    /// Sums duplicate indices and drops zeros; terms may arrive in any order.
    pub fn from_terms(dim: usize, mut terms: Vec<(usize, Q)>) -> Self {
        terms.sort_by_key(|t| t.0);
        let mut entries: Vec<(usize, Q)> = Vec::with_capacity(terms.len());
        for (i, c) in terms {
            assert!(i < dim, "index {i} out of range for dimension {dim}");
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += &c,
                _ => entries.push((i, c)),
            }
        }
        entries.retain(|(_, c)| !c.is_zero());
        SparseVec { dim, entries }
    }

    pub fn from_dense(values: &[Q]) -> Self {
        SparseVec {
            dim: values.len(),
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(usize, Q)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Q)> {
        self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Q {
        match self.entries.binary_search_by_key(&i, |t| t.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(usize, Q)> {
        self.entries.first()
    }

    pub fn to_dense(&self) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.dim];
        for (i, c) in &self.entries {
            v[*i] = c.clone();
        }
        v
    }

    pub fn scale(&self, c: &Q) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zero(self.dim);
        }
        SparseVec {
            dim: self.dim,
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    /// `self + c·other`, merging sorted entries.
    pub fn axpy(&self, c: &Q, other: &SparseVec) -> SparseVec {
        assert_eq!(self.dim, other.dim, "axpy dimension mismatch");
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + &(y * c);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { dim: self.dim, entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Q::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Q::from_int(-1), other)
    }

    pub fn neg(&self) -> SparseVec {
        self.scale(&Q::from_int(-1))
    }

    /// Tensor product, flattened row-major: index `i * other.dim + j`.
    pub fn kron(&self, other: &SparseVec) -> SparseVec {
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for (i, x) in &self.entries {
            for (j, y) in &other.entries {
                entries.push((i * other.dim + j, x * y));
            }
        }
        SparseVec { dim: self.dim * other.dim, entries }
    }

    /// Pairs with a functional stored as a vector of the same dimension.
    pub fn dot(&self, other: &SparseVec) -> Q {
        assert_eq!(self.dim, other.dim, "dot dimension mismatch");
        let (mut a, mut b) = (0, 0);
        let mut acc = Q::zero();
        while a < self.entries.len() && b < other.entries.len() {
            let (i, x) = &self.entries[a];
            let (j, y) = &other.entries[b];
            if i < j {
                a += 1;
            } else if j < i {
                b += 1;
            } else {
                acc += &(x * y);
                a += 1;
                b += 1;
            }
        }
        acc
    }

    /// Re-indexes into a larger or reshaped space via `f`.
    pub fn map_indices(&self, dim: usize, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_terms(dim, self.entries.iter().map(|(i, c)| (f(*i), c.clone())).collect())
    }
}

/// Accumulates `Σ cᵢ vᵢ` without intermediate merges.
pub struct Accumulator {
    dim: usize,
    terms: Vec<(usize, Q)>,
}

impl Accumulator {
    pub fn new(dim: usize) -> Self {
        Accumulator { dim, terms: Vec::new() }
    }

    pub fn push(&mut self, i: usize, c: Q) {
        self.terms.push((i, c));
    }

    pub fn add_scaled(&mut self, c: &Q, v: &SparseVec) {
        debug_assert_eq!(v.dim, self.dim);
        if c.is_zero() {
            return;
        }
        for (i, x) in &v.entries {
            self.terms.push((*i, x * c));
        }
    }

    pub fn finish(self) -> SparseVec {
        SparseVec::from_terms(self.dim, self.terms)
    }
}
