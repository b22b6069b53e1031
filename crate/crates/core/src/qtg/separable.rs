//! Separable algebras with a symmetric separability idempotent and trace
//! form, and module-algebra actions of a Hopf algebra on them.

use crate::constructions::Group;
use crate::engine::{check_tuples, CheckOptions, Outcome};
use crate::error::{Error, Result};
use crate::exact::{rank, solve, Accumulator, Q, Shape, Space, SparseMatrix, SparseVec};
use crate::qtg::hopf::{group_algebra, HopfAlgebraData};
use crate::report::{Check, CheckReport, Discrepancy};
use crate::wba::{check_algebra, AlgebraData};

/// `B` with `e = e⁽¹⁾ ⊗ e⁽²⁾ ∈ B ⊗ B` and the trace form `ω` solved from
/// `ω(e⁽¹⁾)e⁽²⁾ = 1_B`.
#[derive(Debug, Clone)]
pub struct SeparableAlgebraData {
    alg: AlgebraData,
    idempotent: SparseVec,
    omega: SparseVec,
    supplied_omega: Option<SparseVec>,
}

impl SeparableAlgebraData {
    /// Derives `ω` from `e`; a supplied `ω` is kept for comparison only.
    pub fn new(alg: AlgebraData, idempotent: SparseVec, supplied_omega: Option<SparseVec>) -> Result<Self> {
        let n = alg.dim();
        if idempotent.dim() != n * n {
            return Err(Error::mismatch("idempotent must live in B ⊗ B"));
        }
        if supplied_omega.as_ref().is_some_and(|w| w.dim() != n) {
            return Err(Error::mismatch("trace form must be a functional on B"));
        }
        let omega = derive_trace_form(&alg, &idempotent)?;
        Ok(SeparableAlgebraData { alg, idempotent, omega, supplied_omega })
    }

    pub fn alg(&self) -> &AlgebraData {
        &self.alg
    }

    pub fn space(&self) -> &Space {
        self.alg.space()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn one(&self) -> &SparseVec {
        self.alg.unit()
    }

    pub fn idempotent(&self) -> &SparseVec {
        &self.idempotent
    }

    /// `(i, j, c)` with `e = Σ c · bᵢ ⊗ bⱼ`.
    pub fn idempotent_terms(&self) -> impl Iterator<Item = (usize, usize, &Q)> + '_ {
        let n = self.dim();
        self.idempotent.entries().iter().map(move |(k, c)| (k / n, k % n, c))
    }

    pub fn omega(&self) -> &SparseVec {
        &self.omega
    }

    pub fn supplied_omega(&self) -> Option<&SparseVec> {
        self.supplied_omega.as_ref()
    }

    pub fn omega_of(&self, x: &SparseVec) -> Q {
        x.dot(&self.omega)
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> Result<SparseVec> {
        self.alg.mul(x, y)
    }
}

/// The unique `ω` with `ω(e⁽¹⁾)e⁽²⁾ = 1_B`.
pub fn derive_trace_form(alg: &AlgebraData, e: &SparseVec) -> Result<SparseVec> {
    let n = alg.dim();
    let mut cols: Vec<Accumulator> = (0..n).map(|_| Accumulator::new(n)).collect();
    for (k, c) in e.entries() {
        cols[k / n].push(k % n, c.clone());
    }
    let sh = Shape::of(alg.space());
    let m = SparseMatrix::new(sh.clone(), sh, cols.into_iter().map(Accumulator::finish).collect())?;
    if rank(&m) < n {
        return Err(Error::Invalid("the idempotent does not determine a unique trace form".into()));
    }
    solve(&m, alg.unit()).ok_or_else(|| Error::Invalid("no trace form satisfies ω(e1)e2 = 1".into()))
}

fn flip(v: &SparseVec, n: usize) -> SparseVec {
    v.map_indices(n * n, |k| (k % n) * n + k / n)
}

/// `x ⊗ y ↦ Σ` over the idempotent, with `f` applied to each pair of
/// components.
fn over_e(s: &SeparableAlgebraData, f: impl Fn(&SparseVec, &SparseVec) -> Result<(SparseVec, SparseVec)>) -> Result<SparseVec> {
    let n = s.dim();
    let mut acc = Accumulator::new(n * n);
    for (i, j, c) in s.idempotent_terms() {
        let (x, y) = f(&SparseVec::basis(n, i), &SparseVec::basis(n, j))?;
        acc.add_scaled(c, &x.kron(&y));
    }
    Ok(acc.finish())
}

fn skip_overflow(r: Result<Outcome>) -> Outcome {
    r.unwrap_or(Outcome::OutOfTruncation)
}

pub fn check_separable(s: &SeparableAlgebraData, opts: &CheckOptions) -> CheckReport {
    let n = s.dim();
    let sp = s.space().clone();
    let bb = Shape::power(&sp, 2);
    let b1 = Shape::of(&sp);
    let mut r = CheckReport::new("separable algebra");
    r.absorb("algebra", check_algebra(&s.alg, opts));
    r.push(check_tuples("e-commutes", &[sp.clone()], &bb, opts, |t| {
        let b = SparseVec::basis(n, t[0]);
        skip_overflow((|| {
            let lhs = over_e(s, |x, y| Ok((s.mul(&b, x)?, y.clone())))?;
            let rhs = over_e(s, |x, y| Ok((x.clone(), s.mul(y, &b)?)))?;
            Ok(Outcome::compare(lhs, rhs))
        })())
    }));
    let e1e2 = {
        let mut acc = Accumulator::new(n);
        for (i, j, c) in s.idempotent_terms() {
            if let Ok(p) = s.alg.mul_basis(i, j) {
                acc.add_scaled(c, p);
            }
        }
        acc.finish()
    };
    r.push(crate::engine::check_equal("e-unit", &b1, &e1e2, s.one()));
    r.push(crate::engine::check_equal("e-symmetric", &bb, &flip(&s.idempotent, n), &s.idempotent));
    let (mut left, mut right) = (Accumulator::new(n), Accumulator::new(n));
    for (i, j, c) in s.idempotent_terms() {
        left.push(j, c * &s.omega.get(i));
        right.push(i, c * &s.omega.get(j));
    }
    r.push(crate::engine::check_equal("omega-left", &b1, &left.finish(), s.one()));
    r.push(crate::engine::check_equal("omega-right", &b1, &right.finish(), s.one()));
    let gram = SparseMatrix::from_fn(b1.clone(), b1.clone(), |i| {
        SparseVec::from_terms(n, (0..n).map(|j| (j, s.alg.mul_basis(i, j).map(|p| s.omega_of(p)).unwrap_or_else(|_| Q::zero()))).collect())
    });
    r.push(Check::boolean("omega-nondegenerate", rank(&gram) == n, None));
    r.push(check_tuples("omega-trace", &[sp.clone(), sp.clone()], &Shape::scalar(), opts, |t| {
        skip_overflow((|| {
            let ab = s.omega_of(s.alg.mul_basis(t[0], t[1])?);
            let ba = s.omega_of(s.alg.mul_basis(t[1], t[0])?);
            Ok(Outcome::compare(SparseVec::from_terms(1, vec![(0, ab)]), SparseVec::from_terms(1, vec![(0, ba)])))
        })())
    }));
    if let Some(w) = &s.supplied_omega {
        if w != &s.omega {
            r.discrepancy(Discrepancy {
                name: "supplied-omega".into(),
                stated: crate::exact::render(&b1, w),
                computed: crate::exact::render(&b1, &s.omega),
                witness: None,
            });
        }
    }
    r
}

/// `𝕜G` with `e = |G|⁻¹ Σ g ⊗ g⁻¹`; the derived trace form is
/// `ω(g) = |G|·δ_{g,1}`.
pub fn group_separable(g: &Group) -> SeparableAlgebraData {
    let n = g.order();
    let c = Q::new(1, n as i64).expect("nonzero order");
    let e = SparseVec::from_terms(n * n, (0..n).map(|x| (x * n + g.inv(x), c.clone())).collect());
    SeparableAlgebraData::new(group_algebra(g), e, None).expect("group algebras are separable")
}

/// A right action `◁: B ⊗ L → B`.
#[derive(Debug, Clone)]
pub struct ModuleAlgebraAction {
    act: SparseMatrix,
}

impl ModuleAlgebraAction {
    pub fn new(act: SparseMatrix, b: &SeparableAlgebraData, l: &HopfAlgebraData) -> Result<Self> {
        let dom = Shape::new(vec![b.space().clone(), l.wba().space().clone()]);
        Ok(ModuleAlgebraAction { act: act.with_shapes(dom, Shape::of(b.space()))? })
    }

    pub fn from_fn(b: &SeparableAlgebraData, l: &HopfAlgebraData, f: impl Fn(usize, usize) -> SparseVec) -> Result<Self> {
        let nl = l.dim();
        let dom = Shape::new(vec![b.space().clone(), l.wba().space().clone()]);
        let m = SparseMatrix::from_fn(dom, Shape::of(b.space()), |k| f(k / nl, k % nl));
        ModuleAlgebraAction::new(m, b, l)
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.act
    }

    /// `b ◁ h` on basis indices.
    pub fn right_basis(&self, b: usize, h: usize) -> &SparseVec {
        let nl = self.act.domain().factors()[1].dim();
        self.act.col(b * nl + h)
    }

    /// `b ◁ h`.
    pub fn right(&self, b: &SparseVec, h: &SparseVec) -> SparseVec {
        self.act.apply(&b.kron(h))
    }

    /// `h ▷ a = a ◁ S_L(h)`.
    pub fn left(&self, l: &HopfAlgebraData, h: &SparseVec, a: &SparseVec) -> SparseVec {
        self.right(a, &l.antipode().apply(h))
    }
}

/// Adjoint action `b ◁ h = h⁻¹ b h` of `𝕜G` on `𝕜G`.
pub fn adjoint_action(g: &Group, b: &SeparableAlgebraData, l: &HopfAlgebraData) -> Result<ModuleAlgebraAction> {
    let n = g.order();
    ModuleAlgebraAction::from_fn(b, l, |x, h| SparseVec::basis(n, g.mul(g.mul(g.inv(h), x), h)))
}

/// `b ◁ h = ε(h) b`.
pub fn trivial_action(b: &SeparableAlgebraData, l: &HopfAlgebraData) -> Result<ModuleAlgebraAction> {
    let nb = b.dim();
    ModuleAlgebraAction::from_fn(b, l, |x, h| SparseVec::basis(nb, x).scale(&l.eps_basis(h)))
}

/// Right module, module algebra, and the two compatibilities of the action
/// with `ω` and `e`.
pub fn check_action_data(l: &HopfAlgebraData, b: &SeparableAlgebraData, act: &ModuleAlgebraAction, opts: &CheckOptions) -> CheckReport {
    let nb = b.dim();
    let nl = l.dim();
    let bs = b.space().clone();
    let ls = l.wba().space().clone();
    let b1 = Shape::of(&bs);
    let mut r = CheckReport::new("module algebra action");
    let bv = |i: usize| SparseVec::basis(nb, i);
    let lv = |i: usize| SparseVec::basis(nl, i);

    r.push(check_tuples("right-module-assoc", &[bs.clone(), ls.clone(), ls.clone()], &b1, opts, |t| {
        skip_overflow((|| {
            let lhs = act.right(act.right_basis(t[0], t[1]), &lv(t[2]));
            let rhs = act.right(&bv(t[0]), &l.mul(&lv(t[1]), &lv(t[2]))?);
            Ok(Outcome::compare(lhs, rhs))
        })())
    }));
    r.push(check_tuples("right-module-unit", &[bs.clone()], &b1, opts, |t| {
        Outcome::compare(act.right(&bv(t[0]), l.one()), bv(t[0]))
    }));
    r.push(check_tuples("module-algebra", &[bs.clone(), bs.clone(), ls.clone()], &b1, opts, |t| {
        skip_overflow((|| {
            let lhs = act.right(b.alg.mul_basis(t[0], t[1])?, &lv(t[2]));
            let mut acc = Accumulator::new(nb);
            for (k, c) in l.delta_basis(t[2]).entries() {
                let (h1, h2) = (k / nl, k % nl);
                acc.add_scaled(c, &b.mul(act.right_basis(t[0], h1), act.right_basis(t[1], h2))?);
            }
            Ok(Outcome::compare(lhs, acc.finish()))
        })())
    }));
    r.push(check_tuples("module-algebra-unit", &[ls.clone()], &b1, opts, |t| {
        Outcome::compare(act.right(b.one(), &lv(t[0])), b.one().scale(&l.eps_basis(t[0])))
    }));
    r.push(check_tuples("trace-compat", &[ls.clone(), bs.clone(), bs.clone()], &Shape::scalar(), opts, |t| {
        skip_overflow((|| {
            let h = lv(t[0]);
            let lhs = b.omega_of(&b.mul(&act.left(l, &h, &bv(t[1])), &bv(t[2]))?);
            let rhs = b.omega_of(&b.mul(&bv(t[1]), act.right_basis(t[2], t[0]))?);
            Ok(Outcome::compare(SparseVec::from_terms(1, vec![(0, lhs)]), SparseVec::from_terms(1, vec![(0, rhs)])))
        })())
    }));
    r.push(check_tuples("idempotent-compat", &[ls.clone()], &Shape::power(&bs, 2), opts, |t| {
        skip_overflow((|| {
            let h = lv(t[0]);
            let lhs = over_e(b, |x, y| Ok((x.clone(), act.left(l, &h, y))))?;
            let rhs = over_e(b, |x, y| Ok((act.right(x, &h), y.clone())))?;
            Ok(Outcome::compare(lhs, rhs))
        })())
    }));
    r
}
