//! Finite groups and groupoids, and groupoid algebras.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::{Q, Shape, Space, SparseMatrix, SparseVec, Subspace};
use crate::report::{Check, CheckReport, Witness};
use crate::wba::{AlgebraData, CoalgebraData, WeakBialgebra, WeakHopfAlgebra};

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl Group {
    /// `table[g][h]` is the index of `g·h`. Validates the group axioms.
    pub fn new<S: Into<String>>(elements: impl IntoIterator<Item = S>, table: Vec<Vec<usize>>) -> Result<Self> {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        let n = elements.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty".into()));
        }
        Space::new(elements.iter().cloned()).map_err(|_| Error::NotAGroup("duplicate element names".into()))?;
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::NotAGroup("table is not n×n over the elements".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!(
                            "not associative at ({}, {}, {})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        let inverses = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| table[g][h] == identity && table[h][g] == identity)
                    .ok_or_else(|| Error::NotAGroup(format!("{} has no inverse", elements[g])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Group { elements, table, identity, inverses })
    }

    /// `ℤ_n` with elements `e, g, g2, …`.
    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|k| match k {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g{k}"),
        });
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Group::new(names, table).expect("cyclic group")
    }

    /// `S_3` in cycle notation, with `(g·h)(x) = g(h(x))`.
    pub fn symmetric3() -> Self {
        // one-line images of 1, 2, 3
        let perms: [(&str, [usize; 3]); 6] = [
            ("e", [0, 1, 2]),
            ("(12)", [1, 0, 2]),
            ("(13)", [2, 1, 0]),
            ("(23)", [0, 2, 1]),
            ("(123)", [1, 2, 0]),
            ("(132)", [2, 0, 1]),
        ];
        let find = |p: [usize; 3]| perms.iter().position(|(_, q)| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|(_, g)| {
                perms
                    .iter()
                    .map(|(_, h)| find([g[h[0]], g[h[1]], g[h[2]]]))
                    .collect()
            })
            .collect();
        Group::new(perms.iter().map(|(n, _)| *n), table).expect("S3")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn name(&self, g: usize) -> &str {
        &self.elements[g]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn space(&self) -> Space {
        Space::new(self.elements.iter().cloned()).expect("distinct names")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite groupoid. Composition is written left to right: `g·h` is
/// defined when `t(g) = s(h)` and goes from `s(g)` to `t(h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Groupoid {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    compose: HashMap<(usize, usize), usize>,
    identities: Vec<usize>,
    inverses: Vec<usize>,
}

impl Groupoid {
    /// `morphisms` are `(name, source, target)`; `compose` lists every
    /// composable pair `(g, h, g·h)` by name. Validates the groupoid axioms.
    pub fn new(objects: &[&str], morphisms: &[(&str, &str, &str)], compose: &[(&str, &str, &str)]) -> Result<Self> {
        let objects: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
        let obj = |n: &str| {
            objects
                .iter()
                .position(|o| o == n)
                .ok_or_else(|| Error::InvalidGroupoid(format!("unknown object `{n}`")))
        };
        let mut ms = Vec::new();
        for (n, s, t) in morphisms {
            ms.push(Morphism { name: n.to_string(), src: obj(s)?, tgt: obj(t)? });
        }
        Space::new(ms.iter().map(|m| m.name.clone()))
            .map_err(|_| Error::InvalidGroupoid("duplicate morphism names".into()))?;
        let mor = |n: &str| {
            ms.iter()
                .position(|m| m.name == n)
                .ok_or_else(|| Error::InvalidGroupoid(format!("unknown morphism `{n}`")))
        };
        let mut table = HashMap::new();
        for (g, h, gh) in compose {
            let (g, h, gh) = (mor(g)?, mor(h)?, mor(gh)?);
            if table.insert((g, h), gh).is_some() {
                return Err(Error::InvalidGroupoid(format!("composite {}·{} given twice", ms[g].name, ms[h].name)));
            }
        }
        Groupoid::from_parts(objects, ms, table)
    }

    fn from_parts(objects: Vec<String>, ms: Vec<Morphism>, table: HashMap<(usize, usize), usize>) -> Result<Self> {
        let n = ms.len();
        let bad = |m: String| Err(Error::InvalidGroupoid(m));
        for g in 0..n {
            for h in 0..n {
                let composable = ms[g].tgt == ms[h].src;
                match (composable, table.get(&(g, h))) {
                    (true, None) => return bad(format!("missing composite {}·{}", ms[g].name, ms[h].name)),
                    (false, Some(_)) => return bad(format!("{}·{} is not composable", ms[g].name, ms[h].name)),
                    (true, Some(&gh)) if ms[gh].src != ms[g].src || ms[gh].tgt != ms[h].tgt => {
                        return bad(format!("{}·{} has wrong endpoints", ms[g].name, ms[h].name))
                    }
                    _ => {}
                }
            }
        }
        for ((g, h), gh) in &table {
            for k in 0..n {
                if let (Some(a), Some(b)) = (table.get(&(*gh, k)), table.get(&(*h, k))) {
                    if table.get(&(*g, *b)) != Some(a) {
                        return bad(format!("composition is not associative at {}", ms[*g].name));
                    }
                }
            }
        }
        let identities = (0..objects.len())
            .map(|o| {
                (0..n)
                    .find(|&e| {
                        ms[e].src == o
                            && ms[e].tgt == o
                            && (0..n).all(|g| {
                                (ms[g].src != o || table[&(e, g)] == g) && (ms[g].tgt != o || table[&(g, e)] == g)
                            })
                    })
                    .ok_or_else(|| Error::InvalidGroupoid(format!("object {} has no identity", objects[o])))
            })
            .collect::<Result<Vec<_>>>()?;
        let inverses = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| {
                        table.get(&(g, h)) == Some(&identities[ms[g].src])
                            && table.get(&(h, g)) == Some(&identities[ms[g].tgt])
                    })
                    .ok_or_else(|| Error::InvalidGroupoid(format!("{} is not invertible", ms[g].name)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Groupoid { objects, morphisms: ms, compose: table, identities, inverses })
    }

    /// A group as a one-object groupoid.
    pub fn from_group(g: &Group) -> Self {
        let ms = (0..g.order())
            .map(|k| Morphism { name: g.name(k).to_string(), src: 0, tgt: 0 })
            .collect();
        let table = (0..g.order())
            .flat_map(|a| (0..g.order()).map(move |b| ((a, b), g.mul(a, b))))
            .collect();
        Groupoid::from_parts(vec!["*".into()], ms, table).expect("groups are groupoids")
    }

    /// The pair groupoid on objects `1..=n`: one morphism `i → j` for each
    /// pair, named `e<i>` when `i = j` and `g[i,j]` otherwise.
    pub fn pair(n: usize) -> Self {
        let objects: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let name = |i: usize, j: usize| if i == j { format!("e{}", i + 1) } else { format!("g[{},{}]", i + 1, j + 1) };
        // identities first, then the rest in row-major order
        let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
        pairs.extend((0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))));
        let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let ms = pairs.iter().map(|&(i, j)| Morphism { name: name(i, j), src: i, tgt: j }).collect();
        let table = pairs
            .iter()
            .flat_map(|&(i, j)| (0..n).map(move |k| ((i, j), (j, k))))
            .map(|(a, b)| ((index[&a], index[&b]), index[&(a.0, b.1)]))
            .collect();
        Groupoid::from_parts(objects, ms, table).expect("pair groupoid")
    }

    /// Disjoint union; names of the second summand must not clash.
    pub fn disjoint_union(&self, other: &Groupoid) -> Result<Self> {
        let no = self.objects.len();
        let nm = self.morphisms.len();
        let mut objects = self.objects.clone();
        objects.extend(other.objects.iter().cloned());
        let mut ms = self.morphisms.clone();
        ms.extend(other.morphisms.iter().map(|m| Morphism { name: m.name.clone(), src: m.src + no, tgt: m.tgt + no }));
        Space::new(ms.iter().map(|m| m.name.clone()))
            .map_err(|_| Error::InvalidGroupoid("morphism names clash in disjoint union".into()))?;
        let mut table = self.compose.clone();
        table.extend(other.compose.iter().map(|(&(g, h), &gh)| ((g + nm, h + nm), gh + nm)));
        Groupoid::from_parts(objects, ms, table)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        self.compose.get(&(g, h)).copied()
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identities[object]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn space(&self) -> Space {
        Space::new(self.morphisms.iter().map(|m| m.name.clone())).expect("distinct names")
    }
}

/// `𝕜G` with `g·h` the composite (or 0), `1 = Σ id_x`, every morphism
/// grouplike, and `S(g) = g⁻¹`.
pub fn groupoid_algebra(g: &Groupoid) -> Result<WeakHopfAlgebra> {
    let space = g.space();
    let n = space.dim();
    let unit = SparseVec::from_terms(n, (0..g.objects().len()).map(|o| (g.identity(o), Q::one())).collect());
    let alg = AlgebraData::from_table(
        space.clone(),
        |a, b| match g.compose(a, b) {
            Some(c) => SparseVec::basis(n, c),
            None => SparseVec::zero(n),
        },
        unit,
    )?;
    let coalg = CoalgebraData::from_fn(
        space.clone(),
        |a| SparseVec::basis(n * n, a * n + a),
        SparseVec::from_dense(&vec![Q::one(); n]),
    )?;
    let name = if g.objects().len() == 1 { "group algebra" } else { "groupoid algebra" };
    let wba = WeakBialgebra::new_unchecked(format!("{name} on {}", space.labels().join(",")), alg, coalg)?;
    let sh = Shape::of(&space);
    let s = SparseMatrix::from_fn(sh.clone(), sh, |a| SparseVec::basis(n, g.inverse(a)));
    WeakHopfAlgebra::new(Arc::new(wba), s.clone(), Some(s))
}

/// Compares the computed counital maps with `ε_s(g) = id_{t(g)}` and
/// `ε_t(g) = id_{s(g)}`, and `Hs = Ht = span{id_x}`.
pub fn groupoid_closed_form_report(g: &Groupoid, h: &WeakHopfAlgebra) -> CheckReport {
    let w = h.wba();
    let mut r = CheckReport::new(w.name());
    let n = w.dim();
    let sh = w.shape();
    let ids = || (0..g.objects().len()).map(|o| SparseVec::basis(n, g.identity(o)));
    let es = SparseMatrix::from_fn(sh.clone(), sh.clone(), |a| SparseVec::basis(n, g.identity(g.morphisms()[a].tgt)));
    let et = SparseMatrix::from_fn(sh.clone(), sh.clone(), |a| SparseVec::basis(n, g.identity(g.morphisms()[a].src)));
    for (name, computed, stated) in [("eps-s-closed-form", w.eps_s(), &es), ("eps-t-closed-form", w.eps_t(), &et)] {
        let bad = computed.differing_columns(stated);
        let witnesses = bad
            .iter()
            .take(3)
            .map(|&k| Witness::new(vec![k], vec![w.space().label(k).to_string()], &sh, computed.col(k), stated.col(k)))
            .collect();
        r.push(Check::from_counts(name, n as u64, n as u64, 0, bad.len() as u64, false, witnesses));
    }
    let expected = Subspace::span(sh.clone(), ids());
    r.push(Check::boolean("hs-closed-form", w.hs().same_span(&expected), None));
    r.push(Check::boolean("ht-closed-form", w.ht().same_span(&expected), None));
    r.fact("dim", n);
    r.fact("dim-hs", w.hs().dim());
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_table() {
        let g = Group::symmetric3();
        let a = g.index_of("(12)").unwrap();
        let b = g.index_of("(23)").unwrap();
        // (12)∘(23): 1→1→2, 2→3→3, 3→2→1
        assert_eq!(g.name(g.mul(a, b)), "(123)");
        assert_eq!(g.name(g.inv(g.index_of("(123)").unwrap())), "(132)");
    }

    #[test]
    fn rejects_non_groups() {
        assert!(Group::new(["a", "b"], vec![vec![0, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn pair_groupoid() {
        let g = Groupoid::pair(2);
        assert_eq!(g.morphisms().len(), 4);
        let g12 = 2;
        assert_eq!(g.morphisms()[g12].name, "g[1,2]");
        assert_eq!(g.compose(g12, g.inverse(g12)), Some(g.identity(0)));
        assert!(g.compose(g12, g12).is_none());
    }

    #[test]
    fn pair_groupoid_counital_maps() {
        let g = Groupoid::pair(2);
        let h = groupoid_algebra(&g).unwrap();
        let r = groupoid_closed_form_report(&g, &h);
        assert!(r.all_passed(), "{r:?}");
        assert_eq!(h.wba().hs().dim(), 2);
    }

    #[test]
    fn missing_composite_is_rejected() {
        let e = Groupoid::new(&["x"], &[("i", "x", "x"), ("g", "x", "x")], &[("i", "i", "i"), ("i", "g", "g"), ("g", "i", "g")]);
        assert!(matches!(e, Err(Error::InvalidGroupoid(_))));
    }
}
