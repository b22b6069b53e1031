//! Labeled bases and tensor shapes.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite-dimensional vector space given by an ordered list of distinct
/// basis labels.
#[derive(Clone)]
pub struct Space(Arc<SpaceInner>);

struct SpaceInner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Space {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(Space(Arc::new(SpaceInner { labels, index })))
    }

    /// A space with labels `prefix0, prefix1, ...`.
    pub fn numbered(prefix: &str, dim: usize) -> Self {
        Space::new((0..dim).map(|i| format!("{prefix}{i}"))).expect("numbered labels are distinct")
    }

    pub fn dim(&self) -> usize {
        self.0.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.index.get(label).copied()
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}

impl PartialEq for Space {
    fn eq(&self, other: &Space) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.labels == other.0.labels
    }
}

impl Eq for Space {}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Space{:?}", self.0.labels)
    }
}

/// An ordered tensor product of spaces, flattened row-major. The empty
/// shape is the ground field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Shape(Vec<Space>);

impl Shape {
    pub fn new(factors: Vec<Space>) -> Self {
        Shape(factors)
    }

    pub fn scalar() -> Self {
        Shape(Vec::new())
    }

    pub fn of(space: &Space) -> Self {
        Shape(vec![space.clone()])
    }

    /// `space ⊗ ... ⊗ space` with `k` factors.
    pub fn power(space: &Space, k: usize) -> Self {
        Shape(vec![space.clone(); k])
    }

    pub fn factors(&self) -> &[Space] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn dim(&self) -> usize {
        self.0.iter().map(Space::dim).product()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.0.iter().map(Space::dim).collect()
    }

    pub fn tensor(&self, other: &Shape) -> Shape {
        let mut f = self.0.clone();
        f.extend(other.0.iter().cloned());
        Shape(f)
    }

    /// Flattened index to per-factor indices.
    pub fn split(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.0.len()];
        for (k, s) in self.0.iter().enumerate().rev() {
            out[k] = idx % s.dim();
            idx /= s.dim();
        }
        out
    }

    pub fn join(&self, parts: &[usize]) -> usize {
        debug_assert_eq!(parts.len(), self.0.len());
        parts
            .iter()
            .zip(&self.0)
            .fold(0, |acc, (&i, s)| acc * s.dim() + i)
    }

    pub fn label(&self, idx: usize) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let parts = self.split(idx);
        parts
            .iter()
            .zip(&self.0)
            .map(|(&i, s)| s.label(i))
            .collect::<Vec<_>>()
            .join(" ⊗ ")
    }

    /// Parses a label written as factor labels joined by `⊗`.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        if self.0.is_empty() {
            return (label.trim() == "1").then_some(0);
        }
        let parts: Vec<&str> = label.split('⊗').map(str::trim).collect();
        if parts.len() != self.0.len() {
            return None;
        }
        let idx: Option<Vec<usize>> = parts
            .iter()
            .zip(&self.0)
            .map(|(p, s)| s.index_of(p))
            .collect();
        idx.map(|v| self.join(&v))
    }
}

impl From<&Space> for Shape {
    fn from(s: &Space) -> Self {
        Shape::of(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_labels() {
        assert!(Space::new(["a", "b", "a"]).is_err());
        assert_eq!(Space::new(Vec::<String>::new()).unwrap().dim(), 0);
    }

    #[test]
    fn shape_flattening_round_trips() {
        let a = Space::new(["x", "y"]).unwrap();
        let b = Space::new(["p", "q", "r"]).unwrap();
        let s = Shape::new(vec![a.clone(), b.clone(), a.clone()]);
        assert_eq!(s.dim(), 12);
        for idx in 0..12 {
            assert_eq!(s.join(&s.split(idx)), idx);
        }
        assert_eq!(s.split(5), vec![0, 2, 1]);
        assert_eq!(s.label(5), "x ⊗ r ⊗ y");
        assert_eq!(s.index_of("x ⊗ r ⊗ y"), Some(5));
        assert_eq!(Shape::scalar().dim(), 1);
        assert_eq!(Shape::scalar().label(0), "1");
    }
}
