//! Hopf algebras given by structure constants, and group Hopf algebras.

use std::sync::Arc;

use crate::constructions::Group;
use crate::engine::CheckOptions;
use crate::error::Result;
use crate::exact::{inverse, Q, Shape, SparseMatrix, SparseVec};
use crate::report::{Check, CheckReport};
use crate::wba::{check_weak_hopf, AlgebraData, CoalgebraData, WeakBialgebra, WeakHopfAlgebra};

/// A Hopf algebra `L` with an invertible antipode.
#[derive(Debug, Clone)]
pub struct HopfAlgebraData {
    wba: Arc<WeakBialgebra>,
    antipode: SparseMatrix,
    antipode_inv: SparseMatrix,
}

impl HopfAlgebraData {
    /// Fails with `Singular` if the antipode is not invertible.
    pub fn new(name: impl Into<String>, alg: AlgebraData, coalg: CoalgebraData, antipode: SparseMatrix) -> Result<Self> {
        let wba = Arc::new(WeakBialgebra::new_unchecked(name, alg, coalg)?);
        let antipode = antipode.with_shapes(wba.shape(), wba.shape())?;
        let antipode_inv = inverse(&antipode)?;
        Ok(HopfAlgebraData { wba, antipode, antipode_inv })
    }

    pub fn wba(&self) -> &Arc<WeakBialgebra> {
        &self.wba
    }

    pub fn name(&self) -> &str {
        self.wba.name()
    }

    pub fn dim(&self) -> usize {
        self.wba.dim()
    }

    pub fn shape(&self) -> Shape {
        self.wba.shape()
    }

    pub fn one(&self) -> &SparseVec {
        self.wba.one()
    }

    pub fn antipode(&self) -> &SparseMatrix {
        &self.antipode
    }

    pub fn antipode_inv(&self) -> &SparseMatrix {
        &self.antipode_inv
    }

    pub fn mul(&self, x: &SparseVec, y: &SparseVec) -> Result<SparseVec> {
        self.wba.mul(x, y)
    }

    pub fn delta_basis(&self, i: usize) -> &SparseVec {
        self.wba.coalg().delta_basis(i)
    }

    pub fn eps_basis(&self, i: usize) -> Q {
        self.wba.coalg().eps_basis(i)
    }

    pub fn weak_hopf(&self) -> WeakHopfAlgebra {
        WeakHopfAlgebra::new(self.wba.clone(), self.antipode.clone(), Some(self.antipode_inv.clone()))
            .expect("shapes fixed at construction")
    }
}

/// The weak Hopf suite plus the conditions that make it an honest Hopf
/// algebra: `Δ(1) = 1 ⊗ 1` and `S(h₁)h₂ = ε(h)1 = h₁S(h₂)`.
pub fn check_hopf(l: &HopfAlgebraData, opts: &CheckOptions) -> CheckReport {
    let mut r = check_weak_hopf(&l.weak_hopf(), opts);
    r.push(Check::boolean("delta-unit", l.wba.is_bialgebra(), None));
    let hopf = r.fact_value("is-hopf") == Some("true");
    r.push(Check::boolean("hopf-antipode", hopf, None));
    r
}

/// `𝕜G` with `Δ(g) = g ⊗ g`, `ε(g) = 1`, `S(g) = g⁻¹`.
pub fn group_hopf(g: &Group) -> HopfAlgebraData {
    let n = g.order();
    let alg = group_algebra(g);
    let coalg = CoalgebraData::from_fn(g.space(), |i| SparseVec::basis(n * n, i * n + i), SparseVec::from_dense(&vec![Q::one(); n]))
        .expect("group coalgebra");
    let sh = Shape::of(&g.space());
    let s = SparseMatrix::from_fn(sh.clone(), sh, |i| SparseVec::basis(n, g.inv(i)));
    HopfAlgebraData::new(format!("group algebra of order {n}"), alg, coalg, s).expect("group antipode is invertible")
}

/// The group algebra `𝕜G` as an algebra.
pub fn group_algebra(g: &Group) -> AlgebraData {
    let n = g.order();
    AlgebraData::from_table(g.space(), |i, j| SparseVec::basis(n, g.mul(i, j)), SparseVec::basis(n, g.identity()))
        .expect("group algebra")
}
