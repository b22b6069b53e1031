//! Comodule algebras, coalgebras and Frobenius algebras built from quivers
//! and from the unit object.

use std::collections::HashMap;
use std::sync::Arc;

use crate::constructions::face::{face_algebra, face_algebra_quotient, FaceAlgebra, FaceMode, FaceQuotient, Identification};
use crate::constructions::quiver::{Path, Quiver};
use crate::corep::{hs_algebra, Comodule};
use crate::engine::CheckOptions;
use crate::error::Result;
use crate::exact::{Accumulator, Q, Shape, Space, SparseVec};
use crate::report::{CheckReport, Discrepancy, Witness};
use crate::structures::{check_comodule_frobenius, ComoduleAlgebra, ComoduleCoalgebra, ComoduleFrobenius};
use crate::wba::{AlgebraData, CoalgebraData};

/// `𝕜Q` (paths up to the face algebra's length bound) with
/// `ρ(p) = Σ_{|q| = |p|} q ⊗ x[q,p]`.
pub fn kq_comodule(f: &FaceAlgebra) -> Result<Arc<Comodule>> {
    let q = f.quiver();
    let paths = q.paths_up_to(f.max_len());
    let np = paths.len();
    let space = Space::new(paths.iter().map(|p| q.path_label(p)))?;
    let nh = f.wba().dim();
    let mut rho = Vec::with_capacity(np);
    for p in &paths {
        let mut acc = Accumulator::new(np * nh);
        for (k, r) in paths.iter().enumerate().filter(|(_, r)| r.len() == p.len()) {
            for (t, c) in f.x(r, p)?.entries() {
                acc.push(k * nh + t, c.clone());
            }
        }
        rho.push(acc.finish());
    }
    Ok(Arc::new(Comodule::from_fn("kQ", space, f.wba().clone(), |i| rho[i].clone())?))
}

/// Path algebra of `paths` (closed under splitting), graded by length when
/// the face algebra is truncated.
fn path_algebra_data(f: &FaceAlgebra, paths: &[Path], space: &Space) -> Result<AlgebraData> {
    let q = f.quiver();
    let n = paths.len();
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let unit = SparseVec::from_terms(n, (0..q.vertices().len()).map(|v| (v, Q::one())).collect());
    let alg = AlgebraData::from_table(
        space.clone(),
        |i, j| match q.compose(&paths[i], &paths[j]).and_then(|p| index.get(&p).copied()) {
            Some(k) => SparseVec::basis(n, k),
            None => SparseVec::zero(n),
        },
        unit,
    )?;
    match f.mode() {
        FaceMode::Full => Ok(alg),
        FaceMode::Truncated(l) => alg.with_grading(paths.iter().map(Path::len).collect(), l),
    }
}

/// Path coalgebra: `Δ(p) = Σ_i p₁⋯p_i ⊗ p_{i+1}⋯p_ℓ`, `ε = 1` on vertices.
fn path_coalgebra_data(q: &Quiver, paths: &[Path], space: &Space) -> Result<CoalgebraData> {
    let n = paths.len();
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let split = |p: &Path, i: usize| {
        let head = Path { src: p.src, tgt: if i == 0 { p.src } else { q.arrows()[p.arrows[i - 1]].tgt }, arrows: p.arrows[..i].to_vec() };
        let tail = Path { src: head.tgt, tgt: p.tgt, arrows: p.arrows[i..].to_vec() };
        (index[&head], index[&tail])
    };
    let counit = SparseVec::from_terms(n, paths.iter().enumerate().filter(|(_, p)| p.is_trivial()).map(|(i, _)| (i, Q::one())).collect());
    CoalgebraData::from_fn(
        space.clone(),
        |k| {
            let p = &paths[k];
            SparseVec::from_terms(n * n, (0..=p.len()).map(|i| split(p, i)).map(|(a, b)| (a * n + b, Q::one())).collect())
        },
        counit,
    )
}

/// The path algebra and path coalgebra of `f`'s quiver, both with the
/// coaction of [`kq_comodule`].
pub fn kq_comodule_instances(f: &FaceAlgebra) -> Result<(ComoduleAlgebra, ComoduleCoalgebra)> {
    let m = kq_comodule(f)?;
    let q = f.quiver();
    let paths = q.paths_up_to(f.max_len());
    let alg = path_algebra_data(f, &paths, m.space())?;
    let coalg = path_coalgebra_data(q, &paths, m.space())?;
    Ok((ComoduleAlgebra::new(m.clone(), alg)?, ComoduleCoalgebra::new(m, coalg)?))
}

/// The two-cycle `p: 1 → 2`, `p*: 2 → 1`.
pub fn two_cycle() -> Quiver {
    Quiver::new(["1", "2"], &[("p", "1", "2"), ("p*", "2", "1")]).expect("two-cycle is valid")
}

/// The matrix-algebra example together with everything it is built from.
#[derive(Debug)]
pub struct MatrixFrobenius {
    pub face: FaceAlgebra,
    pub quotient: FaceQuotient,
    pub frobenius: ComoduleFrobenius,
    pub report: CheckReport,
}

/// `𝕜Q/(pp* − e₁, p*p − e₂) ≅ Mat₂` for the two-cycle, with
/// `Δ(E_ij) = Σ_k E_ik ⊗ E_kj`, `ε(E_ij) = δ_ij`, and
/// `ρ(u) = Σ_{|q| = |u|} π(q) ⊗ [x[q,u]]` over the quotient of the
/// degree-2 truncated face algebra. Failures land in the report.
pub fn matrix_frobenius_example(opts: &CheckOptions) -> Result<MatrixFrobenius> {
    let q = two_cycle();
    let face = face_algebra(&q, FaceMode::Truncated(2))?;
    let ids = vec![
        Identification { path: q.parse_path("p.p*")?, combination: vec![(Q::one(), q.trivial(0))] },
        Identification { path: q.parse_path("p*.p")?, combination: vec![(Q::one(), q.trivial(1))] },
    ];
    let quo = face_algebra_quotient(&face, &ids, opts)?;
    let h = quo.wba.clone();
    let nh = h.dim();
    let pi = &quo.path_projection;
    let reps: Vec<Path> = quo.path_reps.iter().map(|&i| quo.paths[i].clone()).collect();
    let n = reps.len();
    let space = Space::new((0..n).map(|k| quo.path_label(&q, k)))?;
    let pindex: HashMap<&Path, usize> = quo.paths.iter().enumerate().map(|(i, p)| (p, i)).collect();

    // Representatives are the vertices and the two arrows, one per (src, tgt).
    let unit_of = |i: usize, j: usize| reps.iter().position(|r| r.src == i && r.tgt == j).expect("matrix unit");
    let alg = AlgebraData::from_table(
        space.clone(),
        |i, j| match q.compose(&reps[i], &reps[j]) {
            Some(p) => pi.col(pindex[&p]).clone(),
            None => SparseVec::zero(n),
        },
        SparseVec::from_terms(n, (0..2).map(|v| (unit_of(v, v), Q::one())).collect()),
    )?;
    let coalg = CoalgebraData::from_fn(
        space.clone(),
        |k| {
            let (i, j) = (reps[k].src, reps[k].tgt);
            SparseVec::from_terms(n * n, (0..2).map(|m| (unit_of(i, m) * n + unit_of(m, j), Q::one())).collect())
        },
        SparseVec::from_terms(n, reps.iter().enumerate().filter(|(_, r)| r.src == r.tgt).map(|(k, _)| (k, Q::one())).collect()),
    )?;

    let raw = |u: &Path| -> Result<Vec<(SparseVec, SparseVec)>> {
        let mut out = Vec::new();
        for r in quo.paths.iter().filter(|r| r.len() == u.len()) {
            out.push((pi.col(pindex[r]).clone(), face.x(r, u)?));
        }
        Ok(out)
    };
    let mut rho = Vec::with_capacity(n);
    for u in &reps {
        let mut acc = Accumulator::new(n * nh);
        for (a, x) in raw(u)? {
            let hx = quo.quotient_map.apply(&x);
            for (i, c) in a.entries() {
                for (t, d) in hx.entries() {
                    acc.push(i * nh + t, c * d);
                }
            }
        }
        rho.push(acc.finish());
    }
    let m = Arc::new(Comodule::from_fn("Mat2", space, h, |i| rho[i].clone())?);
    let frob = ComoduleFrobenius::new(m, alg.clone(), coalg)?;
    let mut report = check_comodule_frobenius(&frob, opts);
    report.fact("quotient-dim", quo.wba.dim());

    // ρ(p)ρ(p*) against ρ(e₁) with the face algebra left unquotiented.
    let fh = face.wba();
    let nf = fh.dim();
    let product_in = |xs: &[(SparseVec, SparseVec)], ys: &[(SparseVec, SparseVec)]| -> Result<SparseVec> {
        let mut acc = Accumulator::new(n * nf);
        for (a, x) in xs {
            for (b, y) in ys {
                let ab = alg.mul(a, b)?;
                let xy = match fh.mul(x, y) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                for (i, c) in ab.entries() {
                    for (t, d) in xy.entries() {
                        acc.push(i * nf + t, c * d);
                    }
                }
            }
        }
        Ok(acc.finish())
    };
    let (pp, ps, e1) = (q.parse_path("p")?, q.parse_path("p*")?, q.trivial(0));
    let lhs = product_in(&raw(&pp)?, &raw(&ps)?)?;
    let rhs = {
        let mut acc = Accumulator::new(n * nf);
        for (a, x) in raw(&e1)? {
            for (i, c) in a.entries() {
                for (t, d) in x.entries() {
                    acc.push(i * nf + t, c * d);
                }
            }
        }
        acc.finish()
    };
    if lhs != rhs {
        let shape = Shape::new(vec![m_space(&frob), fh.space().clone()]);
        report.discrepancy(Discrepancy {
            name: "rho-multiplicative-over-unquotiented-face-algebra".into(),
            stated: "ρ(p)ρ(p*) = ρ(e1)".into(),
            computed: "differs before x[p.p*,p.p*] is identified with x[1,1]".into(),
            witness: Some(Witness::new(vec![], vec!["p".into(), "p*".into()], &shape, &lhs, &rhs)),
        });
    }
    Ok(MatrixFrobenius { face, quotient: quo, frobenius: frob, report })
}

fn m_space(f: &ComoduleFrobenius) -> Space {
    f.comodule().space().clone()
}

/// `Hs` with the multiplication of `H`, `Δ_s`, `ε|Hs` and coaction `Δ|Hs`.
pub fn unit_object_instance(h: &Arc<crate::wba::WeakBialgebra>) -> Result<ComoduleFrobenius> {
    let m = Arc::new(Comodule::unit_object(h)?);
    let alg = hs_algebra(h)?;
    ComoduleFrobenius::new(m, alg, h.hs_coalgebra().clone())
}
