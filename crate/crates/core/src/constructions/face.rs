//! Face algebras of quivers, full or truncated by path length, and their
//! quotients by identifications of paths.

use std::collections::HashMap;
use std::sync::Arc;

use crate::engine::CheckOptions;
use crate::error::{Error, Result};
use crate::exact::{apply_mid, kernel_basis, Accumulator, Rref, Q, Shape, Space, SparseMatrix, SparseVec};
use crate::report::{Check, CheckReport};
use crate::wba::{check_weak_bialgebra, AlgebraData, CoalgebraData, WeakBialgebra};

use super::quiver::{describe, Path, Quiver};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceMode {
    /// All paths; needs an acyclic quiver.
    Full,
    /// Paths of length at most the bound, with graded truncation.
    Truncated(usize),
}

/// The face algebra with basis `x[p,q]` over pairs of equal-length paths.
#[derive(Debug)]
pub struct FaceAlgebra {
    quiver: Quiver,
    mode: FaceMode,
    max_len: usize,
    pairs: Vec<(Path, Path)>,
    index: HashMap<(Path, Path), usize>,
    wba: Arc<WeakBialgebra>,
}

pub fn face_algebra(q: &Quiver, mode: FaceMode) -> Result<FaceAlgebra> {
    let max_len = match mode {
        FaceMode::Full => q.max_path_length().ok_or(Error::CyclicQuiver)?,
        FaceMode::Truncated(l) => l,
    };
    let by_len: Vec<Vec<Path>> = (0..=max_len).map(|l| q.paths_of_length(l)).collect();
    let mut pairs = Vec::new();
    for ps in &by_len {
        for p in ps {
            for r in ps {
                pairs.push((p.clone(), r.clone()));
            }
        }
    }
    let n = pairs.len();
    let index: HashMap<(Path, Path), usize> = pairs.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let space = Space::new(pairs.iter().map(|(p, r)| format!("x[{},{}]", q.face_part(p), q.face_part(r))))?;

    let nv = q.vertices().len();
    let unit = SparseVec::from_terms(n, (0..nv * nv).map(|k| (k, Q::one())).collect());
    let product = |i: usize, j: usize| {
        let (p, r) = &pairs[i];
        let (p2, r2) = &pairs[j];
        match (q.compose(p, p2), q.compose(r, r2)) {
            (Some(a), Some(b)) => match index.get(&(a, b)) {
                Some(&k) => SparseVec::basis(n, k),
                // only reachable past the truncation; the grading rejects it first
                None => SparseVec::zero(n),
            },
            _ => SparseVec::zero(n),
        }
    };
    let mut alg = AlgebraData::from_table(space.clone(), product, unit)?;
    if let FaceMode::Truncated(l) = mode {
        alg = alg.with_grading(pairs.iter().map(|(p, _)| p.len()).collect(), l)?;
    }
    let delta = |i: usize| {
        let (p, r) = &pairs[i];
        let terms = by_len[p.len()]
            .iter()
            .map(|t| (index[&(p.clone(), t.clone())] * n + index[&(t.clone(), r.clone())], Q::one()))
            .collect();
        SparseVec::from_terms(n * n, terms)
    };
    let counit = SparseVec::from_terms(
        n,
        pairs.iter().enumerate().filter(|(_, (p, r))| p == r).map(|(i, _)| (i, Q::one())).collect(),
    );
    let coalg = CoalgebraData::from_fn(space, delta, counit)?;
    let name = match mode {
        FaceMode::Full => format!("face algebra of {}", describe(q)),
        FaceMode::Truncated(l) => format!("face algebra of {} truncated at length {l}", describe(q)),
    };
    let wba = Arc::new(WeakBialgebra::new_unchecked(name, alg, coalg)?);
    Ok(FaceAlgebra { quiver: q.clone(), mode, max_len, pairs, index, wba })
}

impl FaceAlgebra {
    pub fn wba(&self) -> &Arc<WeakBialgebra> {
        &self.wba
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn mode(&self) -> FaceMode {
        self.mode
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn pairs(&self) -> &[(Path, Path)] {
        &self.pairs
    }

    pub fn index_of(&self, p: &Path, q: &Path) -> Option<usize> {
        self.index.get(&(p.clone(), q.clone())).copied()
    }

    /// The basis vector `x[p,q]`.
    pub fn x(&self, p: &Path, q: &Path) -> Result<SparseVec> {
        let i = self
            .index_of(p, q)
            .ok_or_else(|| Error::Invalid("no face basis element for this pair of paths".into()))?;
        Ok(SparseVec::basis(self.pairs.len(), i))
    }

    /// `x[i,j]` for vertices `i, j`.
    pub fn x_vertices(&self, i: usize, j: usize) -> SparseVec {
        self.x(&self.quiver.trivial(i), &self.quiver.trivial(j)).expect("vertex pair")
    }

    /// `Σ_i x[i,j]`, spanning the source subalgebra.
    pub fn source_generator(&self, j: usize) -> SparseVec {
        let n = self.quiver.vertices().len();
        (0..n).fold(SparseVec::zero(self.pairs.len()), |acc, i| acc.add(&self.x_vertices(i, j)))
    }

    /// `Σ_i x[j,i]`, spanning the target subalgebra.
    pub fn target_generator(&self, j: usize) -> SparseVec {
        let n = self.quiver.vertices().len();
        (0..n).fold(SparseVec::zero(self.pairs.len()), |acc, i| acc.add(&self.x_vertices(j, i)))
    }

    /// `x[p,q] ↦ δ_{p,q} Σ_i x[i, t(q)]`.
    pub fn eps_s_closed_form(&self) -> SparseMatrix {
        let sh = self.wba.shape();
        SparseMatrix::from_fn(sh.clone(), sh, |k| {
            let (p, q) = &self.pairs[k];
            if p == q {
                self.source_generator(q.tgt)
            } else {
                SparseVec::zero(self.pairs.len())
            }
        })
    }

    /// `x[p,q] ↦ δ_{p,q} Σ_j x[s(q), j]`.
    pub fn eps_t_closed_form(&self) -> SparseMatrix {
        let sh = self.wba.shape();
        SparseMatrix::from_fn(sh.clone(), sh, |k| {
            let (p, q) = &self.pairs[k];
            if p == q {
                self.target_generator(q.src)
            } else {
                SparseVec::zero(self.pairs.len())
            }
        })
    }

    /// Checks the face-algebra specific closed forms against the computed
    /// counital data.
    pub fn closed_form_report(&self) -> CheckReport {
        let mut r = CheckReport::new(self.wba.name());
        let h = &self.wba;
        let diff = |name: &str, a: &SparseMatrix, b: &SparseMatrix| {
            let bad = a.differing_columns(b);
            Check::from_counts(name, a.ncols() as u64, a.ncols() as u64, 0, bad.len() as u64, false, vec![])
        };
        r.push(diff("eps-s-closed-form", h.eps_s(), &self.eps_s_closed_form()));
        r.push(diff("eps-t-closed-form", h.eps_t(), &self.eps_t_closed_form()));
        let nv = self.quiver.vertices().len();
        let hs_expected = crate::exact::Subspace::span(h.shape(), (0..nv).map(|j| self.source_generator(j)));
        let ht_expected = crate::exact::Subspace::span(h.shape(), (0..nv).map(|j| self.target_generator(j)));
        r.push(Check::boolean("hs-closed-form", h.hs().same_span(&hs_expected), None));
        r.push(Check::boolean("ht-closed-form", h.ht().same_span(&ht_expected), None));
        let expected_dim: usize = (0..=self.max_len).map(|l| self.quiver.paths_of_length(l).len().pow(2)).sum();
        r.push(Check::boolean("dimension-formula", expected_dim == h.dim(), None));
        r.fact("dim", h.dim());
        r.fact("dim-hs", h.hs().dim());
        r.fact("dim-ht", h.ht().dim());
        r
    }
}

/// Row reduction with a custom column priority: the column listed first in
/// `order` is the preferred pivot.
struct OrderedRref {
    to_col: Vec<usize>,
    from_col: Vec<usize>,
    rref: Rref,
}

impl OrderedRref {
    fn new(order: Vec<usize>) -> Self {
        let mut to_col = vec![0; order.len()];
        for (c, &i) in order.iter().enumerate() {
            to_col[i] = c;
        }
        OrderedRref { rref: Rref::new(order.len()), to_col, from_col: order }
    }

    fn permute(&self, v: &SparseVec) -> SparseVec {
        v.map_indices(v.dim(), |i| self.to_col[i])
    }

    fn unpermute(&self, v: &SparseVec) -> SparseVec {
        v.map_indices(v.dim(), |c| self.from_col[c])
    }

    fn insert(&mut self, v: &SparseVec) -> bool {
        let p = self.permute(v);
        self.rref.insert(p)
    }

    fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.unpermute(&self.rref.reduce(&self.permute(v)))
    }

    fn rank(&self) -> usize {
        self.rref.rank()
    }

    /// Natural indices that are not pivots, ascending.
    fn free(&self) -> Vec<usize> {
        let mut f: Vec<usize> = (0..self.from_col.len()).filter(|&i| !self.rref.is_pivot(self.to_col[i])).collect();
        f.sort_unstable();
        f
    }

    /// Quotient coordinates: reduce, then read the free positions.
    fn quotient_map(&self, domain: Shape, codomain: Shape, free: &[usize]) -> SparseMatrix {
        let pos: HashMap<usize, usize> = free.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let n = self.from_col.len();
        SparseMatrix::from_fn(domain, codomain, |i| {
            let r = self.reduce(&SparseVec::basis(n, i));
            SparseVec::from_terms(free.len(), r.entries().iter().map(|(j, c)| (pos[j], c.clone())).collect())
        })
    }
}

/// Longer items first, ties in natural order.
fn degree_descending(degrees: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..degrees.len()).collect();
    order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));
    order
}

/// An identification `path ≡ Σ c·path'`.
#[derive(Clone, Debug)]
pub struct Identification {
    pub path: Path,
    pub combination: Vec<(Q, Path)>,
}

/// The quotient of a face algebra induced by identifications of paths.
#[derive(Debug)]
pub struct FaceQuotient {
    /// Paths up to the truncation length, indexing the path space.
    pub paths: Vec<Path>,
    /// Path classes: the quotient path algebra's basis, as indices into `paths`.
    pub path_reps: Vec<usize>,
    /// Path space → quotient path algebra coordinates.
    pub path_projection: SparseMatrix,
    /// Face basis indices kept as representatives.
    pub reps: Vec<usize>,
    /// Face algebra → quotient coordinates.
    pub quotient_map: SparseMatrix,
    pub relation_dim: usize,
    pub wba: Arc<WeakBialgebra>,
    pub report: CheckReport,
}

impl FaceQuotient {
    /// Fails with `QuotientNotWeakBialgebra` if any check in the report failed.
    pub fn require_valid(&self) -> Result<()> {
        match self.report.first_failure() {
            Some(c) => Err(Error::QuotientNotWeakBialgebra { check: c.name.clone() }),
            None => Ok(()),
        }
    }

    /// Label of the quotient path-algebra basis element for a path index.
    pub fn path_label(&self, q: &Quiver, k: usize) -> String {
        q.path_label(&self.paths[self.path_reps[k]])
    }
}

fn path_product(q: &Quiver, paths: &[Path], index: &HashMap<Path, usize>, a: usize, b: usize) -> Option<Option<usize>> {
    // Some(None): composable but longer than the truncation; None: zero.
    q.compose(&paths[a], &paths[b]).map(|p| index.get(&p).copied())
}

/// Multiplies `v` (in path space) by a basis path on one side; `None` when
/// some term leaves the truncation.
fn mul_path_vec(q: &Quiver, paths: &[Path], index: &HashMap<Path, usize>, v: &SparseVec, a: usize, left: bool) -> Option<SparseVec> {
    let mut acc = Accumulator::new(paths.len());
    for (i, c) in v.entries() {
        let prod = if left { path_product(q, paths, index, a, *i) } else { path_product(q, paths, index, *i, a) };
        match prod {
            None => {}
            Some(None) => return None,
            Some(Some(k)) => acc.push(k, c.clone()),
        }
    }
    Some(acc.finish())
}

/// The quotient of `face` by the relations induced from identifying paths.
///
/// The path ideal is generated by `path − combination`, closed under
/// multiplication by paths inside the truncation. The face relations are the
/// kernel of `x[p,q] ↦ π(p) ⊗ π(q)`, closed under multiplication by face
/// basis elements inside the truncation. Representatives prefer low degree.
pub fn face_algebra_quotient(face: &FaceAlgebra, identifications: &[Identification], opts: &CheckOptions) -> Result<FaceQuotient> {
    let q = face.quiver();
    let paths = q.paths_up_to(face.max_len());
    let np = paths.len();
    let pindex: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let pidx = |p: &Path| {
        pindex
            .get(p)
            .copied()
            .ok_or_else(|| Error::Invalid(format!("path {} is outside the truncation", q.path_label(p))))
    };

    // Path ideal.
    let mut prel = OrderedRref::new(degree_descending(&paths.iter().map(Path::len).collect::<Vec<_>>()));
    let mut work = Vec::new();
    for id in identifications {
        let mut terms = vec![(pidx(&id.path)?, Q::one())];
        for (c, p) in &id.combination {
            terms.push((pidx(p)?, -c.clone()));
        }
        work.push(SparseVec::from_terms(np, terms));
    }
    while let Some(r) = work.pop() {
        if !prel.insert(&r) {
            continue;
        }
        for a in 0..np {
            for left in [true, false] {
                if let Some(v) = mul_path_vec(q, &paths, &pindex, &r, a, left) {
                    if !v.is_zero() {
                        work.push(v);
                    }
                }
            }
        }
    }
    let path_reps = prel.free();
    let path_labels: Vec<String> = path_reps.iter().map(|&i| q.path_label(&paths[i])).collect();
    let path_space = Space::numbered("path", np);
    let a_space = Space::new(path_labels)?;
    let pi = prel.quotient_map(Shape::of(&path_space), Shape::of(&a_space), &path_reps);

    // Face relations: kernel of x[p,q] ↦ π(p) ⊗ π(q).
    let h = face.wba();
    let n = h.dim();
    let na = a_space.dim();
    let phi = SparseMatrix::from_fn(h.shape(), Shape::power(&a_space, 2), |k| {
        let (p, r) = &face.pairs()[k];
        pi.col(pindex[p]).kron(pi.col(pindex[r]))
    });
    let degrees: Vec<usize> = face.pairs().iter().map(|(p, _)| p.len()).collect();
    let mut frel = OrderedRref::new(degree_descending(&degrees));
    let ker = kernel_basis(&phi);
    let mut work: Vec<SparseVec> = (0..ker.dim()).rev().map(|k| ker.basis_vector(k).clone()).collect();
    let alg = h.alg();
    while let Some(r) = work.pop() {
        if !frel.insert(&r) {
            continue;
        }
        for b in 0..n {
            let e = SparseVec::basis(n, b);
            for v in [alg.mul(&e, &r), alg.mul(&r, &e)].into_iter().flatten() {
                if !v.is_zero() {
                    work.push(v);
                }
            }
        }
    }
    let reps = frel.free();
    let qspace = Space::new(reps.iter().map(|&i| h.space().label(i).to_string()))?;
    let m = reps.len();
    let qmap = frel.quotient_map(h.shape(), Shape::of(&qspace), &reps);

    let grading = alg.grading().cloned();
    let mut qalg = {
        let mult = |i: usize, j: usize| -> SparseVec {
            match alg.mul_basis(reps[i], reps[j]) {
                Ok(v) => qmap.apply(v),
                Err(_) => SparseVec::zero(m),
            }
        };
        let unit = qmap.apply(h.one());
        AlgebraData::from_table(qspace.clone(), mult, unit)?
    };
    if let Some(g) = &grading {
        qalg = qalg.with_grading(reps.iter().map(|&i| g.degrees[i]).collect(), g.max)?;
    }
    let qcoalg = CoalgebraData::from_fn(
        qspace,
        |i| {
            let d = h.delta(&SparseVec::basis(n, reps[i]));
            apply_mid(&apply_mid(&d, n, n, &qmap), n, 1, &qmap)
        },
        SparseVec::from_terms(m, reps.iter().enumerate().map(|(k, &i)| (k, h.coalg().eps_basis(i))).collect()),
    )?;
    let name = format!("quotient of {} by {} path identification(s)", h.name(), identifications.len());
    let wba = Arc::new(WeakBialgebra::new_unchecked(name.clone(), qalg, qcoalg)?);

    let mut report = CheckReport::new(name);
    let relations: Vec<SparseVec> = frel.rref.rows().map(|(_, r)| frel.unpermute(r)).collect();
    let coideal_bad = relations
        .iter()
        .filter(|r| {
            let d = h.delta(r);
            !apply_mid(&apply_mid(&d, n, n, &qmap), n, 1, &qmap).is_zero()
        })
        .count();
    let nrel = relations.len() as u64;
    report.push(Check::from_counts("relations-coideal", nrel, nrel, 0, coideal_bad as u64, false, vec![]));
    let counit_bad = relations.iter().filter(|r| !h.eps(r).is_zero()).count();
    report.push(Check::from_counts("relations-counit", nrel, nrel, 0, counit_bad as u64, false, vec![]));
    report.fact("path-quotient-dim", na);
    report.fact("relation-dim", frel.rank());
    report.absorb("", check_weak_bialgebra(&wba, opts));

    Ok(FaceQuotient {
        paths,
        path_reps,
        path_projection: pi,
        reps,
        quotient_map: qmap,
        relation_dim: frel.rank(),
        wba,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Shape;

    fn two_cycle() -> Quiver {
        Quiver::new(["1", "2"], &[("p", "1", "2"), ("p*", "2", "1")]).unwrap()
    }

    #[test]
    fn a2_face_algebra() {
        let f = face_algebra(&Quiver::linear(2), FaceMode::Full).unwrap();
        let h = f.wba();
        assert_eq!(h.dim(), 5);
        assert_eq!(h.space().labels()[4], "x[a,a]");
        // ε(1) = number of vertices
        assert_eq!(h.eps(h.one()), Q::from_int(2));
        let rep = f.closed_form_report();
        assert!(rep.all_passed(), "{rep:?}");
        let xaa = SparseVec::basis(5, 4);
        let expected = f.x_vertices(0, 0).add(&f.x_vertices(0, 1));
        assert_eq!(h.eps_t().apply(&xaa), expected);
        let _ = Shape::of(h.space());
    }

    #[test]
    fn truncated_two_cycle_dimensions() {
        let f = face_algebra(&two_cycle(), FaceMode::Truncated(2)).unwrap();
        assert_eq!(f.wba().dim(), 12);
        assert!(f.closed_form_report().all_passed());
    }

    #[test]
    fn mat2_quotient_has_dim_8() {
        let q = two_cycle();
        let f = face_algebra(&q, FaceMode::Truncated(2)).unwrap();
        let ids = vec![
            Identification { path: q.parse_path("p.p*").unwrap(), combination: vec![(Q::one(), q.trivial(0))] },
            Identification { path: q.parse_path("p*.p").unwrap(), combination: vec![(Q::one(), q.trivial(1))] },
        ];
        let quo = face_algebra_quotient(&f, &ids, &CheckOptions::default()).unwrap();
        assert_eq!(quo.path_reps.len(), 4);
        assert_eq!(quo.wba.dim(), 8);
        let pp = q.parse_path("p.p*").unwrap();
        let a = quo.quotient_map.apply(&f.x(&pp, &pp).unwrap());
        let b = quo.quotient_map.apply(&f.x_vertices(0, 0));
        assert_eq!(a, b);
        assert!(quo.report.all_passed(), "{:?}", quo.report.failures().map(|c| &c.name).collect::<Vec<_>>());
    }

    #[test]
    fn empty_identifications_give_the_face_algebra() {
        let f = face_algebra(&Quiver::linear(2), FaceMode::Full).unwrap();
        let quo = face_algebra_quotient(&f, &[], &CheckOptions::default()).unwrap();
        assert_eq!(quo.wba.dim(), 5);
        assert_eq!(quo.relation_dim, 0);
        assert!(quo.report.all_passed());
    }

    #[test]
    fn identifying_vertices_collapses() {
        let q = Quiver::linear(2);
        let f = face_algebra(&q, FaceMode::Full).unwrap();
        let ids = vec![Identification { path: q.trivial(0), combination: vec![(Q::one(), q.trivial(1))] }];
        let quo = face_algebra_quotient(&f, &ids, &CheckOptions::default()).unwrap();
        assert!(quo.wba.dim() < 5);
    }
}
