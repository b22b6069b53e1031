//! The quantum transformation groupoid `H(L, B, ◁)` on `B^op ⊗ L ⊗ B`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::constructions::Group;
use crate::engine::{check_matrices, CheckOptions};
use crate::error::{Error, Result};
use crate::exact::{Accumulator, Q, Shape, Space, SparseMatrix, SparseVec, Subspace};
use crate::qtg::hopf::{check_hopf, group_hopf, HopfAlgebraData};
use crate::qtg::separable::{adjoint_action, check_action_data, check_separable, group_separable, ModuleAlgebraAction, SeparableAlgebraData};
use crate::report::{Check, CheckReport, Discrepancy, Witness};
use crate::wba::{check_weak_hopf, AlgebraData, CoalgebraData, WeakBialgebra, WeakHopfAlgebra};

/// Label of the basis triple `a ⊗ h ⊗ b`.
pub fn triple_label(a: &str, h: &str, b: &str) -> String {
    format!("[{a}|{h}|{b}]")
}

/// `H(L, B, ◁)` with the verification report of its construction.
#[derive(Debug, Clone)]
pub struct Qtg {
    l: Arc<HopfAlgebraData>,
    b: Arc<SeparableAlgebraData>,
    act: Arc<ModuleAlgebraAction>,
    left: Vec<Vec<SparseVec>>,
    hopf: WeakHopfAlgebra,
    report: CheckReport,
}

/// `h ▷ a` for basis elements, indexed `[h][a]`.
fn left_table(l: &HopfAlgebraData, b: &SeparableAlgebraData, act: &ModuleAlgebraAction) -> Vec<Vec<SparseVec>> {
    let (nb, nl) = (b.dim(), l.dim());
    (0..nl).map(|h| (0..nb).map(|a| act.left(l, &SparseVec::basis(nl, h), &SparseVec::basis(nb, a))).collect()).collect()
}

impl Qtg {
    pub fn l(&self) -> &Arc<HopfAlgebraData> {
        &self.l
    }

    pub fn b(&self) -> &Arc<SeparableAlgebraData> {
        &self.b
    }

    pub fn action(&self) -> &Arc<ModuleAlgebraAction> {
        &self.act
    }

    pub fn hopf(&self) -> &WeakHopfAlgebra {
        &self.hopf
    }

    pub fn wba(&self) -> &Arc<WeakBialgebra> {
        self.hopf.wba()
    }

    pub fn report(&self) -> &CheckReport {
        &self.report
    }

    /// `h ▷ a` for basis elements.
    pub fn left_basis(&self, h: usize, a: usize) -> &SparseVec {
        &self.left[h][a]
    }

    pub fn index(&self, a: usize, h: usize, b: usize) -> usize {
        (a * self.l.dim() + h) * self.b.dim() + b
    }

    /// `a ⊗ h ⊗ b` for vectors.
    pub fn triple(&self, a: &SparseVec, h: &SparseVec, b: &SparseVec) -> SparseVec {
        a.kron(h).kron(b)
    }

    /// `ε_s(a ⊗ h ⊗ b) = 1_B ⊗ 1_L ⊗ (a ◁ h)b`.
    pub fn eps_s_closed_form(&self) -> Result<SparseMatrix> {
        let (nb, nl) = (self.b.dim(), self.l.dim());
        let mut cols = Vec::with_capacity(nb * nl * nb);
        for a in 0..nb {
            for h in 0..nl {
                for b in 0..nb {
                    let ab = self.b.mul(self.act.right_basis(a, h), &SparseVec::basis(nb, b))?;
                    cols.push(self.triple(self.b.one(), self.l.one(), &ab));
                }
            }
        }
        SparseMatrix::new(self.wba().shape(), self.wba().shape(), cols)
    }

    /// `ε_t(a ⊗ h ⊗ b) = (h ▷ b)a ⊗ 1_L ⊗ 1_B`.
    pub fn eps_t_closed_form(&self) -> Result<SparseMatrix> {
        let (nb, nl) = (self.b.dim(), self.l.dim());
        let mut cols = Vec::with_capacity(nb * nl * nb);
        for a in 0..nb {
            for h in 0..nl {
                for b in 0..nb {
                    let ba = self.b.mul(&self.left[h][b], &SparseVec::basis(nb, a))?;
                    cols.push(self.triple(&ba, self.l.one(), self.b.one()));
                }
            }
        }
        SparseMatrix::new(self.wba().shape(), self.wba().shape(), cols)
    }

    /// `1_B ⊗ 1_L ⊗ B`.
    pub fn hs_closed_form(&self) -> Subspace {
        let nb = self.b.dim();
        Subspace::span(self.wba().shape(), (0..nb).map(|b| self.triple(self.b.one(), self.l.one(), &SparseVec::basis(nb, b))))
    }

    /// `B^op ⊗ 1_L ⊗ 1_B`.
    pub fn ht_closed_form(&self) -> Subspace {
        let nb = self.b.dim();
        Subspace::span(self.wba().shape(), (0..nb).map(|a| self.triple(&SparseVec::basis(nb, a), self.l.one(), self.b.one())))
    }
}

/// Multiplication, unit, comultiplication, counit and antipode of
/// `H(L, B, ◁)`, without any checks.
pub fn qtg_structure(l: &HopfAlgebraData, b: &SeparableAlgebraData, act: &ModuleAlgebraAction) -> Result<WeakHopfAlgebra> {
    let (nb, nl) = (b.dim(), l.dim());
    let n = nb * nb * nl;
    let idx = |a: usize, h: usize, c: usize| (a * nl + h) * nb + c;
    let split = |k: usize| (k / (nl * nb), (k / nb) % nl, k % nb);
    let bl = b.space().labels();
    let ll = l.wba().space().labels();
    let mut labels = Vec::with_capacity(n);
    for a in bl {
        for h in ll {
            for c in bl {
                labels.push(triple_label(a, h, c));
            }
        }
    }
    let space = Space::new(labels)?;
    let sh = Shape::of(&space);
    let lv = |i: usize| SparseVec::basis(nl, i);
    let bv = |i: usize| SparseVec::basis(nb, i);

    let left = left_table(l, b, act);
    let lmul = l.wba().alg();
    let bmul = b.alg();
    let tensor3 = |x: &SparseVec, y: &SparseVec, z: &SparseVec| x.kron(y).kron(z);

    // (a ⊗ h ⊗ b)(a' ⊗ h' ⊗ b') = (h₁ ▷ a')a ⊗ h₂h'₁ ⊗ (b ◁ h'₂)b'
    let product = |i: usize, j: usize| -> Result<SparseVec> {
        let (a, h, c) = split(i);
        let (a2, h2, c2) = split(j);
        let mut acc = Accumulator::new(n);
        for (k, x) in l.delta_basis(h).entries() {
            let (h_1, h_2) = (k / nl, k % nl);
            let first = bmul.mul(&left[h_1][a2], &bv(a))?;
            for (k2, y) in l.delta_basis(h2).entries() {
                let (h2_1, h2_2) = (k2 / nl, k2 % nl);
                let mid = lmul.mul_basis(h_2, h2_1)?;
                let last = bmul.mul(act.right_basis(c, h2_2), &bv(c2))?;
                acc.add_scaled(&(x * y), &tensor3(&first, mid, &last));
            }
        }
        Ok(acc.finish())
    };
    let cols: Vec<SparseVec> = (0..n * n).into_par_iter().map(|k| product(k / n, k % n)).collect::<Result<_>>()?;
    let mult = SparseMatrix::new(Shape::power(&space, 2), sh.clone(), cols)?;
    let unit = tensor3(b.one(), l.one(), b.one());
    let alg = AlgebraData::new(space.clone(), mult, unit)?;

    // Δ(a ⊗ h ⊗ b) = (a ⊗ h₁ ⊗ e⁽¹⁾) ⊗ ((h₂ ▷ e⁽²⁾) ⊗ h₃ ⊗ b)
    let lco = l.wba().coalg();
    let mut comult = Vec::with_capacity(n);
    for k in 0..n {
        let (a, h, c) = split(k);
        let d2 = lco.delta2(&lv(h));
        let mut acc = Accumulator::new(n * n);
        for (t, x) in d2.entries() {
            let (h_1, h_2, h_3) = (t / (nl * nl), (t / nl) % nl, t % nl);
            for (e1, e2, y) in b.idempotent_terms() {
                let lhs = SparseVec::basis(n, idx(a, h_1, e1));
                let rhs = tensor3(&left[h_2][e2], &lv(h_3), &bv(c));
                acc.add_scaled(&(x * y), &lhs.kron(&rhs));
            }
        }
        comult.push(acc.finish());
    }
    // ε(a ⊗ h ⊗ b) = ω(a(b ◁ S_L⁻¹(h)))
    let mut counit = Vec::with_capacity(n);
    for k in 0..n {
        let (a, h, c) = split(k);
        let bh = act.right(&bv(c), l.antipode_inv().col(h));
        counit.push((k, b.omega_of(&bmul.mul(&bv(a), &bh)?)));
    }
    let coalg = CoalgebraData::new(space.clone(), SparseMatrix::new(sh.clone(), Shape::power(&space, 2), comult)?, SparseVec::from_terms(n, counit))?;
    let wba = Arc::new(WeakBialgebra::new_unchecked(format!("H({}, B, ◁)", l.name()), alg, coalg)?);

    // S(a ⊗ h ⊗ b) = b ⊗ S_L(h) ⊗ a, S⁻¹(a ⊗ h ⊗ b) = b ⊗ S_L⁻¹(h) ⊗ a
    let swap = |m: &SparseMatrix| {
        SparseMatrix::from_fn(sh.clone(), sh.clone(), |k| {
            let (a, h, c) = split(k);
            tensor3(&bv(c), m.col(h), &bv(a))
        })
    };
    WeakHopfAlgebra::new(wba, swap(l.antipode()), Some(swap(l.antipode_inv())))
}

/// Builds `H(L, B, ◁)` and runs the weak Hopf suite and the counital closed
/// forms on it. Fails with `ActionDataInvalid` if `L`, `B` or `◁` do not
/// satisfy their hypotheses.
pub fn build_qtg(l: Arc<HopfAlgebraData>, b: Arc<SeparableAlgebraData>, act: Arc<ModuleAlgebraAction>, opts: &CheckOptions) -> Result<Qtg> {
    let mut report = CheckReport::new("quantum transformation groupoid");
    let inputs = [("L", check_hopf(&l, opts)), ("B", check_separable(&b, opts)), ("action", check_action_data(&l, &b, &act, opts))];
    for (prefix, r) in inputs {
        if let Some(c) = r.first_failure() {
            return Err(Error::ActionDataInvalid(format!("{prefix}/{}", c.name)));
        }
        report.absorb(prefix, r);
    }
    let hopf = qtg_structure(&l, &b, &act)?;
    let left = left_table(&l, &b, &act);
    let mut q = Qtg { l, b, act, left, hopf, report: CheckReport::default() };
    report.absorb("", check_weak_hopf(&q.hopf, opts));
    closed_form_checks(&q, opts, &mut report)?;
    s_squared_facts(&q, &mut report);
    report.subject = q.wba().name().to_string();
    q.report = report;
    Ok(q)
}

fn closed_form_checks(q: &Qtg, opts: &CheckOptions, r: &mut CheckReport) -> Result<()> {
    let w = q.wba();
    r.push(check_matrices("eps-s-closed-form", w.eps_s(), &q.eps_s_closed_form()?, opts));
    r.push(check_matrices("eps-t-closed-form", w.eps_t(), &q.eps_t_closed_form()?, opts));
    r.push(Check::boolean("hs-closed-form", w.hs().same_span(&q.hs_closed_form()), None));
    r.push(Check::boolean("ht-closed-form", w.ht().same_span(&q.ht_closed_form()), None));
    Ok(())
}

/// Whether `S²` fixes `Hs` and `Ht` pointwise; recorded, not required.
fn s_squared_facts(q: &Qtg, r: &mut CheckReport) {
    let s = q.hopf.antipode();
    let s2 = s.compose(s);
    let fixes = |sub: &Subspace| (0..sub.dim()).all(|k| s2.apply(sub.basis_vector(k)) == *sub.basis_vector(k));
    r.fact("s2-identity-on-hs", fixes(q.wba().hs()));
    r.fact("s2-identity-on-ht", fixes(q.wba().ht()));
}

/// `H(𝕜G, 𝕜G, adjoint)` with the trace form solved from the idempotent.
/// The report also compares against the closed forms displayed for this
/// family: `ω = ε_{𝕜G}` and `ε(a ⊗ h ⊗ b) = 1`.
pub fn group_qtg(g: &Group, opts: &CheckOptions) -> Result<Qtg> {
    let l = Arc::new(group_hopf(g));
    let b = Arc::new(group_separable(g));
    let act = Arc::new(adjoint_action(g, &b, &l)?);
    let mut q = build_qtg(l, b, act, opts)?;
    let n = g.order();
    let ones = SparseVec::from_dense(&vec![Q::one(); n]);
    let bsh = Shape::of(&g.space());
    if q.b.omega() != &ones {
        q.report.discrepancy(Discrepancy {
            name: "omega-equals-counit".into(),
            stated: "ω = ε on the group algebra".into(),
            computed: format!("ω = {}", crate::exact::render(&bsh, q.b.omega())),
            witness: None,
        });
    }
    let w = q.wba();
    let eps = w.coalg().counit();
    if let Some(k) = (0..w.dim()).find(|&k| !eps.get(k).is_one()) {
        let sh = Shape::scalar();
        let one = SparseVec::basis(1, 0);
        let got = SparseVec::from_terms(1, vec![(0, eps.get(k))]);
        q.report.discrepancy(Discrepancy {
            name: "counit-constant-one".into(),
            stated: "ε(a⊗h⊗b) = 1".into(),
            computed: format!("ε(a⊗h⊗b) = |G|·δ(a·hbh⁻¹, 1); differs at {}", w.space().label(k)),
            witness: Some(Witness::new(vec![k], vec![w.space().label(k).to_string()], &sh, &one, &got)),
        });
    }
    Ok(q)
}
