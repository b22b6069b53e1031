//! Finite quivers, their paths, and path algebras.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{Q, Space, SparseVec};
use crate::wba::{AlgebraData, CoalgebraData, WeakBialgebra};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A path, read left to right: `arrows[0]` starts at `src`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub src: usize,
    pub tgt: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

const RESERVED: &[char] = &['.', ',', '[', ']', '(', ')', '|', '⊗', ' ', '+', '·'];

fn check_name(n: &str) -> Result<()> {
    if n.is_empty() || n.contains(RESERVED) {
        return Err(Error::InvalidQuiver(format!(
            "name `{n}` is empty or contains one of {RESERVED:?}"
        )));
    }
    Ok(())
}

impl Quiver {
    /// `arrows` are `(name, source vertex, target vertex)`.
    pub fn new<V: Into<String>>(vertices: impl IntoIterator<Item = V>, arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut names: HashMap<&str, ()> = HashMap::new();
        for v in &vertices {
            check_name(v)?;
            if names.insert(v, ()).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate name `{v}`")));
            }
        }
        let vidx = |n: &str| {
            vertices
                .iter()
                .position(|v| v == n)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex `{n}`")))
        };
        let mut out = Vec::new();
        for (name, s, t) in arrows {
            check_name(name)?;
            if names.insert(name, ()).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate name `{name}`")));
            }
            out.push(Arrow { name: name.to_string(), src: vidx(s)?, tgt: vidx(t)? });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    /// `1 → 2 → ⋯ → n` with arrows `a1, …, a(n-1)`.
    pub fn linear(n: usize) -> Self {
        let vs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let names: Vec<(String, String, String)> = (1..n)
            .map(|i| {
                let name = if n == 2 { "a".to_string() } else { format!("a{i}") };
                (name, i.to_string(), (i + 1).to_string())
            })
            .collect();
        let refs: Vec<(&str, &str, &str)> = names.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
        Quiver::new(vs, &refs).expect("linear quiver is valid")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm.
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.tgt] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.src == v) {
                indeg[a.tgt] -= 1;
                if indeg[a.tgt] == 0 {
                    stack.push(a.tgt);
                }
            }
        }
        seen == n
    }

    pub fn trivial(&self, v: usize) -> Path {
        Path { src: v, tgt: v, arrows: vec![] }
    }

    /// Paths of length `len`, in lexicographic order of arrow indices
    /// (vertices in order for length 0).
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        if len == 0 {
            return (0..self.vertices.len()).map(|v| self.trivial(v)).collect();
        }
        let mut out: Vec<Path> = self
            .arrows
            .iter()
            .enumerate()
            .map(|(k, a)| Path { src: a.src, tgt: a.tgt, arrows: vec![k] })
            .collect();
        for _ in 1..len {
            let mut next = Vec::new();
            for p in &out {
                for (k, a) in self.arrows.iter().enumerate() {
                    if a.src == p.tgt {
                        let mut arrows = p.arrows.clone();
                        arrows.push(k);
                        next.push(Path { src: p.src, tgt: a.tgt, arrows });
                    }
                }
            }
            out = next;
        }
        out
    }

    /// All paths of length `≤ max`, by length then arrow order.
    pub fn paths_up_to(&self, max: usize) -> Vec<Path> {
        (0..=max).flat_map(|l| self.paths_of_length(l)).collect()
    }

    /// Length of the longest path; `None` if the quiver has a cycle.
    pub fn max_path_length(&self) -> Option<usize> {
        if !self.is_acyclic() {
            return None;
        }
        let mut l = 0;
        while !self.paths_of_length(l + 1).is_empty() {
            l += 1;
        }
        Some(l)
    }

    /// Concatenation `p q` when `t(p) = s(q)`.
    pub fn compose(&self, p: &Path, q: &Path) -> Option<Path> {
        if p.tgt != q.src {
            return None;
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        Some(Path { src: p.src, tgt: q.tgt, arrows })
    }

    /// `e<v>` for trivial paths, arrow names joined by `.` otherwise.
    pub fn path_label(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e{}", self.vertices[p.src])
        } else {
            self.join_arrows(p)
        }
    }

    /// The vertex name for trivial paths; used inside face-algebra labels.
    pub fn face_part(&self, p: &Path) -> String {
        if p.is_trivial() {
            self.vertices[p.src].clone()
        } else {
            self.join_arrows(p)
        }
    }

    fn join_arrows(&self, p: &Path) -> String {
        p.arrows
            .iter()
            .map(|&a| self.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Parses a path label (`e<v>`, a vertex name, or `a.b.c`).
    pub fn parse_path(&self, label: &str) -> Result<Path> {
        let label = label.trim();
        if let Some(v) = self.vertex_index(label) {
            return Ok(self.trivial(v));
        }
        if let Some(v) = label.strip_prefix('e').and_then(|r| self.vertex_index(r)) {
            return Ok(self.trivial(v));
        }
        let mut path: Option<Path> = None;
        for name in label.split('.') {
            let k = self
                .arrow_index(name)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown arrow `{name}` in path `{label}`")))?;
            let a = &self.arrows[k];
            let step = Path { src: a.src, tgt: a.tgt, arrows: vec![k] };
            path = Some(match path {
                None => step,
                Some(p) => self
                    .compose(&p, &step)
                    .ok_or_else(|| Error::InvalidQuiver(format!("`{label}` is not a path")))?,
            });
        }
        path.ok_or_else(|| Error::InvalidQuiver(format!("empty path `{label}`")))
    }
}

/// Path algebra of an acyclic quiver with every path grouplike:
/// `Δ(p) = p ⊗ p`, `ε(p) = 1`.
pub fn path_algebra_wba(q: &Quiver) -> Result<Arc<WeakBialgebra>> {
    let max = q.max_path_length().ok_or(Error::CyclicQuiver)?;
    let paths = q.paths_up_to(max);
    let n = paths.len();
    let space = Space::new(paths.iter().map(|p| q.path_label(p)))?;
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let unit = SparseVec::from_terms(n, (0..q.vertices().len()).map(|v| (v, Q::one())).collect());
    let alg = AlgebraData::from_table(
        space.clone(),
        |i, j| match q.compose(&paths[i], &paths[j]) {
            Some(pq) => SparseVec::basis(n, index[&pq]),
            None => SparseVec::zero(n),
        },
        unit,
    )?;
    let coalg = CoalgebraData::from_fn(
        space,
        |i| SparseVec::basis(n * n, i * n + i),
        SparseVec::from_dense(&vec![Q::one(); n]),
    )?;
    Ok(Arc::new(WeakBialgebra::new_unchecked(format!("path algebra of {}", describe(q)), alg, coalg)?))
}

pub fn describe(q: &Quiver) -> String {
    let arrows: Vec<String> = q
        .arrows()
        .iter()
        .map(|a| format!("{}:{}→{}", a.name, q.vertices()[a.src], q.vertices()[a.tgt]))
        .collect();
    format!("Q(vertices {}; arrows {})", q.vertices().join(","), arrows.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_enumeration() {
        let q = Quiver::linear(3);
        assert_eq!(q.paths_of_length(0).len(), 3);
        assert_eq!(q.paths_of_length(1).len(), 2);
        assert_eq!(q.paths_of_length(2).len(), 1);
        assert!(q.paths_of_length(3).is_empty());
        assert_eq!(q.max_path_length(), Some(2));
        let p = &q.paths_of_length(2)[0];
        assert_eq!(q.path_label(p), "a1.a2");
        assert_eq!(q.parse_path("a1.a2").unwrap(), *p);
        assert!(q.parse_path("a2.a1").is_err());
    }

    #[test]
    fn two_cycle_is_cyclic() {
        let q = Quiver::new(["1", "2"], &[("p", "1", "2"), ("p*", "2", "1")]).unwrap();
        assert!(!q.is_acyclic());
        assert_eq!(q.paths_of_length(2).len(), 2);
        assert!(matches!(path_algebra_wba(&q), Err(Error::CyclicQuiver)));
    }

    #[test]
    fn rejects_reserved_characters() {
        assert!(Quiver::new(["1", "2"], &[("a.b", "1", "2")]).is_err());
        assert!(Quiver::new(["1", "1"], &[]).is_err());
    }
}
