//! Sparse multi-index tensors and contraction, plus the flattened-index
//! helpers used on hot paths.

use std::collections::{BTreeMap, HashMap};

use super::matrix::SparseMatrix;
use super::scalar::Q;
use super::space::{Shape, Space};
use super::vector::{Accumulator, SparseVec};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseTensor {
    factors: Vec<Space>,
    entries: BTreeMap<Vec<usize>, Q>,
}

impl SparseTensor {
    pub fn new(factors: Vec<Space>, entries: impl IntoIterator<Item = (Vec<usize>, Q)>) -> Result<Self> {
        let mut map: BTreeMap<Vec<usize>, Q> = BTreeMap::new();
        for (idx, c) in entries {
            if idx.len() != factors.len() {
                return Err(Error::mismatch(format!(
                    "index tuple of arity {} for {} factors",
                    idx.len(),
                    factors.len()
                )));
            }
            if let Some((k, _)) = idx.iter().enumerate().find(|(k, &i)| i >= factors[*k].dim()) {
                return Err(Error::mismatch(format!("index out of range in factor {k}")));
            }
            *map.entry(idx).or_insert_with(Q::zero) += &c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(SparseTensor { factors, entries: map })
    }

    pub fn zero(factors: Vec<Space>) -> Self {
        SparseTensor { factors, entries: BTreeMap::new() }
    }

    pub fn from_vec(shape: &Shape, v: &SparseVec) -> Self {
        assert_eq!(shape.dim(), v.dim(), "tensor shape does not match vector");
        let entries = v
            .entries()
            .iter()
            .map(|(i, c)| (shape.split(*i), c.clone()))
            .collect();
        SparseTensor { factors: shape.factors().to_vec(), entries }
    }

    pub fn to_vec(&self) -> (Shape, SparseVec) {
        let shape = Shape::new(self.factors.clone());
        let terms = self
            .entries
            .iter()
            .map(|(k, c)| (shape.join(k), c.clone()))
            .collect();
        let v = SparseVec::from_terms(shape.dim(), terms);
        (shape, v)
    }

    /// A linear map as the tensor with factors `codomain ⊗ domain`.
    pub fn from_matrix(m: &SparseMatrix) -> Self {
        let mut factors = m.codomain().factors().to_vec();
        factors.extend(m.domain().factors().iter().cloned());
        let out = m.codomain().clone();
        let inp = m.domain().clone();
        let mut entries = BTreeMap::new();
        for (i, j, c) in m.entries() {
            let mut k = out.split(i);
            k.extend(inp.split(j));
            entries.insert(k, c.clone());
        }
        SparseTensor { factors, entries }
    }

    pub fn factors(&self) -> &[Space] {
        &self.factors
    }

    pub fn entries(&self) -> &BTreeMap<Vec<usize>, Q> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Contracts axes `a_axes` of `self` against axes `b_axes` of `other`
    /// pairwise. Result factors: free axes of `self`, then free axes of
    /// `other`, each in original order.
    pub fn contract(&self, a_axes: &[usize], other: &SparseTensor, b_axes: &[usize]) -> Result<SparseTensor> {
        if a_axes.len() != b_axes.len() {
            return Err(Error::mismatch("contraction axis lists differ in length"));
        }
        for (&a, &b) in a_axes.iter().zip(b_axes) {
            let (fa, fb) = (self.factors.get(a), other.factors.get(b));
            match (fa, fb) {
                (Some(x), Some(y)) if x == y => {}
                _ => return Err(Error::mismatch(format!("cannot contract axis {a} with axis {b}"))),
            }
        }
        let a_free: Vec<usize> = (0..self.factors.len()).filter(|k| !a_axes.contains(k)).collect();
        let b_free: Vec<usize> = (0..other.factors.len()).filter(|k| !b_axes.contains(k)).collect();

        let mut by_key: HashMap<Vec<usize>, Vec<(Vec<usize>, &Q)>> = HashMap::new();
        for (idx, c) in &other.entries {
            let key: Vec<usize> = b_axes.iter().map(|&k| idx[k]).collect();
            let free: Vec<usize> = b_free.iter().map(|&k| idx[k]).collect();
            by_key.entry(key).or_default().push((free, c));
        }
        let mut out: BTreeMap<Vec<usize>, Q> = BTreeMap::new();
        for (idx, c) in &self.entries {
            let key: Vec<usize> = a_axes.iter().map(|&k| idx[k]).collect();
            if let Some(matches) = by_key.get(&key) {
                let head: Vec<usize> = a_free.iter().map(|&k| idx[k]).collect();
                for (tail, d) in matches {
                    let mut full = head.clone();
                    full.extend_from_slice(tail);
                    *out.entry(full).or_insert_with(Q::zero) += &(c * *d);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        let mut factors: Vec<Space> = a_free.iter().map(|&k| self.factors[k].clone()).collect();
        factors.extend(b_free.iter().map(|&k| other.factors[k].clone()));
        Ok(SparseTensor { factors, entries: out })
    }

    /// Reorders factors: new factor `k` is old factor `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> SparseTensor {
        assert_eq!(perm.len(), self.factors.len());
        let factors = perm.iter().map(|&k| self.factors[k].clone()).collect();
        let entries = self
            .entries
            .iter()
            .map(|(idx, c)| (perm.iter().map(|&k| idx[k]).collect(), c.clone()))
            .collect();
        SparseTensor { factors, entries }
    }

    /// `label: scalar` pairs in index order.
    pub fn terms(&self) -> Vec<(String, Q)> {
        self.entries
            .iter()
            .map(|(idx, c)| {
                let l = if idx.is_empty() {
                    "1".to_string()
                } else {
                    idx.iter()
                        .zip(&self.factors)
                        .map(|(&i, s)| s.label(i))
                        .collect::<Vec<_>>()
                        .join(" ⊗ ")
                };
                (l, c.clone())
            })
            .collect()
    }
}

/// Applies `f` to the middle block of a flattened vector whose index is
/// `(l · mid + m) · right + r`. The result has index `(l · f.rows + m') · right + r`.
pub fn apply_mid(x: &SparseVec, mid: usize, right: usize, f: &SparseMatrix) -> SparseVec {
    assert_eq!(f.ncols(), mid, "apply_mid: map domain does not match block");
    assert_eq!(x.dim() % (mid * right).max(1), 0, "apply_mid: block does not divide vector");
    let left = if mid * right == 0 { 0 } else { x.dim() / (mid * right) };
    let out_mid = f.nrows();
    let mut acc = Accumulator::new(left * out_mid * right);
    for (idx, c) in x.entries() {
        let r = idx % right;
        let m = (idx / right) % mid;
        let l = idx / (right * mid);
        for (m2, d) in f.col(m).entries() {
            acc.push((l * out_mid + m2) * right + r, c * d);
        }
    }
    acc.finish()
}

/// Reorders tensor factors of a flattened vector: new factor `k` is old
/// factor `perm[k]`.
pub fn permute_flat(x: &SparseVec, dims: &[usize], perm: &[usize]) -> SparseVec {
    assert_eq!(dims.iter().product::<usize>(), x.dim());
    let new_dims: Vec<usize> = perm.iter().map(|&k| dims[k]).collect();
    let mut parts = vec![0; dims.len()];
    let terms = x
        .entries()
        .iter()
        .map(|(idx, c)| {
            let mut i = *idx;
            for k in (0..dims.len()).rev() {
                parts[k] = i % dims[k];
                i /= dims[k];
            }
            let j = perm
                .iter()
                .zip(&new_dims)
                .fold(0, |acc, (&k, &d)| acc * d + parts[k]);
            (j, c.clone())
        })
        .collect();
    SparseVec::from_terms(x.dim(), terms)
}

/// The flip `a ⊗ b ↦ b ⊗ a` on a two-factor flattened vector.
pub fn flip(x: &SparseVec, da: usize, db: usize) -> SparseVec {
    permute_flat(x, &[da, db], &[1, 0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn contract_with_identity_is_noop() {
        let s = Space::numbered("v", 3);
        let t = SparseTensor::new(
            vec![s.clone(), s.clone()],
            vec![(vec![0, 1], q(2)), (vec![2, 2], q(-1))],
        )
        .unwrap();
        let id = SparseTensor::from_matrix(&SparseMatrix::identity(Shape::of(&s)));
        let r = id.contract(&[1], &t, &[0]).unwrap();
        assert_eq!(r, t);
        let z = SparseTensor::zero(vec![s.clone()]);
        assert!(t.contract(&[1], &z, &[0]).unwrap().is_zero());
    }

    #[test]
    fn apply_mid_matches_kron() {
        let s = Space::numbered("v", 2);
        let t = Space::numbered("w", 3);
        let f = SparseMatrix::from_fn(Shape::of(&s), Shape::of(&t), |j| {
            SparseVec::from_terms(3, vec![(j, q(1)), (2, q(j as i64 + 1))])
        });
        let x = SparseVec::from_terms(8, vec![(0, q(1)), (3, q(2)), (6, q(-1))]);
        let via_kron = SparseMatrix::identity(Shape::of(&s))
            .kron(&f)
            .kron(&SparseMatrix::identity(Shape::of(&s)))
            .apply(&x);
        assert_eq!(apply_mid(&x, 2, 2, &f), via_kron);
    }

    #[test]
    fn permute_flat_round_trip() {
        let x = SparseVec::from_terms(24, vec![(5, q(1)), (17, q(3))]);
        let y = permute_flat(&x, &[2, 3, 4], &[2, 0, 1]);
        let back = permute_flat(&y, &[4, 2, 3], &[1, 2, 0]);
        assert_eq!(back, x);
    }
}
