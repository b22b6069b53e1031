//! The functor `Γ: X ↦ B^op ⊗ X ⊗ B` from `L`-bicomodules to comodules
//! over `H(L, B, ◁)`, its monoidal structure `Γ̂`, and the transport of
//! algebras along it.

use std::sync::Arc;

use crate::corep::{associator, bar_map, bar_product, check_comodule, check_morphism, unit_isomorphisms, BarProduct, Comodule};
use crate::engine::{check_equal, check_matrices, CheckOptions};
use crate::error::{Error, Result};
use crate::exact::{rank, solve, Accumulator, Shape, Space, SparseMatrix, SparseVec};
use crate::qtg::bicomod::{check_bicomodule_algebra, Bicomodule, BicomoduleAlgebra};
use crate::qtg::build::{triple_label, Qtg};
use crate::report::{Check, CheckReport};
use crate::structures::{check_comodule_algebra, check_internal, functor_g_unchecked, ComoduleAlgebra, Formulaic, Internal, InternalAlgebra};
use crate::wba::AlgebraData;

/// `Γ(X)` as a comodule over the QTG, for a right `L`-comodule `X`:
/// `a ⊗ x ⊗ b ↦ (a ⊗ x₀ ⊗ e⁽¹⁾) ⊗ ((x₁,₁ ▷ e⁽²⁾) ⊗ x₁,₂ ⊗ b)`.
pub fn gamma(q: &Qtg, x: &Comodule) -> Result<Arc<Comodule>> {
    let l = q.l();
    if !Arc::ptr_eq(x.h(), l.wba()) {
        return Err(Error::mismatch(format!("{} is not a comodule over L", x.name())));
    }
    let (nb, nl, dx) = (q.b().dim(), l.dim(), x.dim());
    let nh = q.wba().dim();
    let bl = q.b().space().labels();
    let labels = bl.iter().flat_map(|a| x.space().labels().iter().flat_map(move |m| bl.iter().map(move |b| triple_label(a, m, b))));
    let space = Space::new(labels)?;
    let dg = space.dim();
    let mut cols = Vec::with_capacity(dg);
    for a in 0..nb {
        for i in 0..dx {
            for c in 0..nb {
                let mut acc = Accumulator::new(dg * nh);
                for (s, c1) in x.rho_basis(i).entries() {
                    let (x0, h) = (s / nl, s % nl);
                    for (t, c2) in l.delta_basis(h).entries() {
                        let (h1, h2) = (t / nl, t % nl);
                        for (e1, e2, c3) in q.b().idempotent_terms() {
                            let lhs = (a * dx + x0) * nb + e1;
                            let scale = &(c1 * c2) * c3;
                            for (a2, c4) in q.left_basis(h1, e2).entries() {
                                acc.push(lhs * nh + q.index(*a2, h2, c), &scale * c4);
                            }
                        }
                    }
                }
                cols.push(acc.finish());
            }
        }
    }
    Ok(Arc::new(Comodule::from_fn(format!("Γ({})", x.name()), space, q.wba().clone(), |k| cols[k].clone())?))
}

/// `Γ(f) = Id ⊗ f ⊗ Id: Γ(X) → Γ(Y)`.
pub fn gamma_map(q: &Qtg, f: &SparseMatrix, gx: &Comodule, gy: &Comodule) -> Result<SparseMatrix> {
    let id = SparseMatrix::identity(Shape::of(q.b().space()));
    id.kron(f).kron(&id).with_shapes(gx.shape(), gy.shape())
}

/// A bicomodule together with its image under `Γ`.
#[derive(Debug, Clone)]
pub struct GammaObject {
    pub x: Bicomodule,
    pub image: Arc<Comodule>,
}

impl GammaObject {
    pub fn new(q: &Qtg, x: Bicomodule) -> Result<Self> {
        let image = gamma(q, x.right())?;
        Ok(GammaObject { x, image })
    }
}

/// `Γ̂_{X,Y}: Γ(X) ⊗̄ Γ(Y) → Γ(X ⊗ Y)` with the bar product it starts from.
#[derive(Debug, Clone)]
pub struct GammaPair {
    pub bar: BarProduct,
    pub target: GammaObject,
    pub map: SparseMatrix,
}

/// `(a ⊗ x ⊗ b) ⊗ (a' ⊗ y ⊗ b') ↦ (x₋₁ ▷ a')a ⊗ x₀ ⊗ y₀ ⊗ (b ◁ y₁)b'` on
/// all of `Γ(X) ⊗ Γ(Y)`.
pub fn gamma_hat_raw(q: &Qtg, x: &Bicomodule, y: &Bicomodule) -> Result<SparseMatrix> {
    let (nb, nl, dx, dy) = (q.b().dim(), q.l().dim(), x.dim(), y.dim());
    let (gx, gy) = (nb * dx * nb, nb * dy * nb);
    let dxy = dx * dy;
    let b = q.b();
    let bv = |i: usize| SparseVec::basis(nb, i);
    let mut cols = Vec::with_capacity(gx * gy);
    for k in 0..gx * gy {
        let (s, t) = (k / gy, k % gy);
        let (a, i, c) = (s / (dx * nb), (s / nb) % dx, s % nb);
        let (a2, j, c2) = (t / (dy * nb), (t / nb) % dy, t % nb);
        let mut acc = Accumulator::new(nb * dxy * nb);
        for (u, c1) in x.left().col(i).entries() {
            let (h, x0) = (u / dx, u % dx);
            let first = b.mul(&q.left_basis(h, a2), &bv(a))?;
            for (w, c3) in y.right().rho_basis(j).entries() {
                let (y0, h2) = (w / nl, w % nl);
                let last = b.mul(q.action().right_basis(c, h2), &bv(c2))?;
                let mid = SparseVec::basis(dxy, x0 * dy + y0);
                acc.add_scaled(&(c1 * c3), &first.kron(&mid).kron(&last));
            }
        }
        cols.push(acc.finish());
    }
    SparseMatrix::new(Shape::new(vec![space_of(q, x)?, space_of(q, y)?]), Shape::new(vec![Space::numbered("γ", nb * dxy * nb)]), cols)
}

fn space_of(q: &Qtg, x: &Bicomodule) -> Result<Space> {
    let bl = q.b().space().labels();
    Space::new(bl.iter().flat_map(|a| x.space().labels().iter().flat_map(move |m| bl.iter().map(move |b| triple_label(a, m, b)))))
}

/// `Γ̂_{X,Y}` on the bar product `Γ(X) ⊗̄ Γ(Y)`.
pub fn gamma_hat_pair(q: &Qtg, x: &GammaObject, y: &GammaObject, opts: &CheckOptions) -> Result<GammaPair> {
    let bar = bar_product(&x.image, &y.image, opts)?;
    let target = GammaObject::new(q, x.x.tensor(&y.x)?)?;
    let map = gamma_hat_raw(q, &x.x, &y.x)?.compose(bar.iota()).with_shapes(bar.comodule().shape(), target.image.shape())?;
    Ok(GammaPair { bar, target, map })
}

/// `Γ̂₀: Hs → Γ(𝕜)`, `1_B ⊗ 1_L ⊗ b ↦ 1_B ⊗ 1 ⊗ b`, on the coordinates of
/// `Hs` used by the unit object.
pub fn gamma_hat_unit(q: &Qtg, unit: &GammaObject) -> Result<SparseMatrix> {
    if unit.x.dim() != 1 {
        return Err(Error::mismatch("Γ̂₀ lands in the image of the unit bicomodule"));
    }
    let nb = q.b().dim();
    let hs = q.wba().hs();
    let one_b = q.b().one();
    let hs_shape = Shape::of(hs.coord_space());
    let embed = SparseMatrix::from_fn(Shape::of(q.b().space()), q.wba().shape(), |j| {
        one_b.kron(q.l().one()).kron(&SparseVec::basis(nb, j))
    });
    let into = SparseMatrix::from_fn(Shape::of(q.b().space()), unit.image.shape(), |j| {
        one_b.kron(&SparseVec::basis(1, 0)).kron(&SparseVec::basis(nb, j))
    });
    let cols = (0..hs.dim())
        .map(|k| {
            let c = solve(&embed, hs.basis_vector(k)).ok_or(Error::NotInSubspace)?;
            Ok(into.apply(&c))
        })
        .collect::<Result<Vec<_>>>()?;
    SparseMatrix::new(hs_shape, unit.image.shape(), cols)
}

/// `Γ̂_{X,Y}`, `Γ̂₀` and the checks that make `(Γ, Γ̂, Γ̂₀)` monoidal on
/// `(X, Y)`.
#[derive(Debug, Clone)]
pub struct GammaMonoidal {
    pub pair: GammaPair,
    pub unit: SparseMatrix,
    pub report: CheckReport,
}

pub fn gamma_hat_monoidal(q: &Qtg, x: &Bicomodule, y: &Bicomodule, opts: &CheckOptions) -> Result<GammaMonoidal> {
    let mut r = CheckReport::new(format!("Γ̂ on ({}, {})", x.name(), y.name()));
    let gx = GammaObject::new(q, x.clone())?;
    let gy = GammaObject::new(q, y.clone())?;
    let gk = GammaObject::new(q, Bicomodule::unit(q.l()))?;
    for (p, g) in [("gamma-x", &gx), ("gamma-y", &gy), ("gamma-unit", &gk)] {
        r.absorb(p, check_comodule(&g.image, opts));
    }
    let pair = gamma_hat_pair(q, &gx, &gy, opts)?;
    r.absorb("gamma-xy", check_comodule(&pair.target.image, opts));
    r.push(check_morphism("pair-morphism", &pair.map, pair.bar.comodule(), &pair.target.image, opts)?);
    r.fact("pair-rank", rank(&pair.map));
    r.fact("bar-dim", pair.bar.dim());
    let unit = gamma_hat_unit(q, &gk)?;
    let hs = Arc::new(Comodule::unit_object(q.wba())?);
    r.push(check_morphism("unit-morphism", &unit, &hs, &gk.image, opts)?);
    r.push(unit_constraint_left(q, &gx, &gk, &unit, opts)?);
    r.push(unit_constraint_right(q, &gx, &gk, &unit, opts)?);
    Ok(GammaMonoidal { pair, unit, report: r })
}

/// `Γ(l_X) Γ̂_{𝕜,X} (Γ̂₀ ⊗̄ Id) = l_{Γ(X)}`.
pub fn unit_constraint_left(q: &Qtg, x: &GammaObject, unit: &GammaObject, g0: &SparseMatrix, opts: &CheckOptions) -> Result<Check> {
    let ui = unit_isomorphisms(&x.image, opts)?;
    let p = gamma_hat_pair(q, unit, x, opts)?;
    let id = SparseMatrix::identity(x.image.shape());
    let g0_id = bar_map(g0, &id, &ui.left_bar, &p.bar, opts)?;
    // l_X: 𝕜 ⊗ X → X is the identity on flattened coordinates
    let gl = gamma_map(q, &SparseMatrix::identity(x.x.shape()), &p.target.image, &x.image)?;
    Ok(check_matrices("unit-left", &gl.compose(&p.map).compose(&g0_id), &ui.l, opts))
}

/// `Γ(r_X) Γ̂_{X,𝕜} (Id ⊗̄ Γ̂₀) = r_{Γ(X)}`.
pub fn unit_constraint_right(q: &Qtg, x: &GammaObject, unit: &GammaObject, g0: &SparseMatrix, opts: &CheckOptions) -> Result<Check> {
    let ui = unit_isomorphisms(&x.image, opts)?;
    let p = gamma_hat_pair(q, x, unit, opts)?;
    let id = SparseMatrix::identity(x.image.shape());
    let id_g0 = bar_map(&id, g0, &ui.right_bar, &p.bar, opts)?;
    let gr = gamma_map(q, &SparseMatrix::identity(x.x.shape()), &p.target.image, &x.image)?;
    Ok(check_matrices("unit-right", &gr.compose(&p.map).compose(&id_g0), &ui.r, opts))
}

/// `Γ(α) Γ̂_{X⊗Y,Z} (Γ̂_{X,Y} ⊗̄ Id) = Γ̂_{X,Y⊗Z} (Id ⊗̄ Γ̂_{Y,Z}) a` on
/// `(Γ(X) ⊗̄ Γ(Y)) ⊗̄ Γ(Z)`.
pub fn gamma_hat_associativity(q: &Qtg, x: &Bicomodule, y: &Bicomodule, z: &Bicomodule, opts: &CheckOptions) -> Result<CheckReport> {
    let mut r = CheckReport::new(format!("Γ̂ associativity on ({}, {}, {})", x.name(), y.name(), z.name()));
    let gx = GammaObject::new(q, x.clone())?;
    let gy = GammaObject::new(q, y.clone())?;
    let gz = GammaObject::new(q, z.clone())?;
    let a = associator(&gx.image, &gy.image, &gz.image, opts)?;
    let xy = gamma_hat_pair(q, &gx, &gy, opts)?;
    let xy_z = gamma_hat_pair(q, &xy.target, &gz, opts)?;
    let yz = gamma_hat_pair(q, &gy, &gz, opts)?;
    let x_yz = gamma_hat_pair(q, &gx, &yz.target, opts)?;
    let id_x = SparseMatrix::identity(gx.image.shape());
    let id_z = SparseMatrix::identity(gz.image.shape());
    let left = bar_map(&xy.map, &id_z, &a.xy_z, &xy_z.bar, opts)?;
    let right = bar_map(&id_x, &yz.map, &a.x_yz, &x_yz.bar, opts)?;
    // α: (X ⊗ Y) ⊗ Z → X ⊗ (Y ⊗ Z) is the identity on flattened coordinates
    let alpha = SparseMatrix::identity(xy_z.target.x.shape());
    let g_alpha = gamma_map(q, &alpha, &xy_z.target.image, &x_yz.target.image)?;
    r.push(check_morphism("alpha-morphism", &g_alpha, &xy_z.target.image, &x_yz.target.image, opts)?);
    let lhs = g_alpha.compose(&xy_z.map).compose(&left);
    let rhs = x_yz.map.compose(&right).compose(&a.forward);
    r.push(check_matrices("associativity", &lhs, &rhs, opts));
    r.absorb("associator", a.report);
    Ok(r)
}

/// An algebra `A` in `L`-bicomodules carried to a comodule algebra over
/// the QTG: `m̄ = Γ(m) Γ̂_{A,A}`, `ū = Γ(u) Γ̂₀`, then read off as formulas.
#[derive(Debug, Clone)]
pub struct Transported {
    pub internal: InternalAlgebra,
    pub algebra: ComoduleAlgebra,
    pub report: CheckReport,
}

pub fn transport_algebra(q: &Qtg, a: &BicomoduleAlgebra, opts: &CheckOptions) -> Result<Transported> {
    let input = check_bicomodule_algebra(a, opts);
    if let Some(c) = input.first_failure() {
        return Err(Error::CheckFailed { check: format!("input/{}", c.name), witness: c.witnesses.first().cloned().map(Box::new) });
    }
    let ga = GammaObject::new(q, a.x.clone())?;
    let gk = GammaObject::new(q, Bicomodule::unit(q.l()))?;
    let pair = gamma_hat_pair(q, &ga, &ga, opts)?;
    let mult = gamma_map(q, a.alg.mult(), &pair.target.image, &ga.image)?.compose(&pair.map);
    let unit = gamma_map(q, &a.unit_map(), &gk.image, &ga.image)?.compose(&gamma_hat_unit(q, &gk)?);
    let internal = InternalAlgebra::new(ga.image.clone(), mult, unit, opts)?;
    let y = Internal::Alg(internal.clone());
    let mut report = CheckReport::new(format!("transport of {}", a.x.name()));
    report.absorb("input", input);
    report.absorb("internal", check_internal(&y, opts)?);
    let algebra = match functor_g_unchecked(&y)? {
        Formulaic::Alg(x) => x,
        _ => unreachable!("an internal algebra maps to a comodule algebra"),
    };
    report.absorb("formulaic", check_comodule_algebra(&algebra, opts));
    Ok(Transported { internal, algebra, report })
}

/// Compares a comodule algebra on `B^op ⊗ L ⊗ B` with the QTG itself:
/// multiplication, unit and coaction against `m_H`, `u_H` and `Δ_H`.
pub fn compare_with_qtg(q: &Qtg, t: &ComoduleAlgebra, opts: &CheckOptions) -> CheckReport {
    let mut r = CheckReport::new("comparison with the QTG");
    let h = q.wba();
    let same_space = t.comodule.space() == h.space();
    r.push(Check::boolean("same-labels", same_space, None));
    if !same_space {
        return r;
    }
    r.push(check_matrices("mult-equals-m-h", t.alg.mult(), h.alg().mult(), opts));
    r.push(check_equal("unit-equals-u-h", &h.shape(), t.alg.unit(), h.one()));
    r.push(check_matrices("coaction-equals-delta-h", t.comodule.coaction(), h.coalg().comult(), opts));
    r
}

/// `B^op ⊗ B` with `(a ⊗ b)(a' ⊗ b') = a'a ⊗ bb'`, on labels `(a ⊗ b)`.
pub fn bop_b_algebra(q: &Qtg) -> Result<AlgebraData> {
    let b = q.b();
    let nb = b.dim();
    let bl = b.space().labels();
    let space = Space::new(bl.iter().flat_map(|a| bl.iter().map(move |c| format!("({a} ⊗ {c})"))))?;
    let bv = |i: usize| SparseVec::basis(nb, i);
    let mut table = Vec::with_capacity(nb.pow(4));
    for i in 0..nb * nb {
        for j in 0..nb * nb {
            let (a, c, a2, c2) = (i / nb, i % nb, j / nb, j % nb);
            table.push(b.mul(&bv(a2), &bv(a))?.kron(&b.mul(&bv(c), &bv(c2))?));
        }
    }
    AlgebraData::from_table(space, |i, j| table[i * nb * nb + j].clone(), b.one().kron(b.one()))
}

/// `a ⊗ b ↦ a ⊗ 1 ⊗ b` from `B^op ⊗ B` to `Γ(𝕜)`.
pub fn bop_b_identification(q: &Qtg, bop_b: &AlgebraData, gamma_unit: &Comodule) -> Result<SparseMatrix> {
    let nb = q.b().dim();
    SparseMatrix::new(
        Shape::of(bop_b.space()),
        gamma_unit.shape(),
        (0..nb * nb).map(|k| SparseVec::basis(nb, k / nb).kron(&SparseVec::basis(1, 0)).kron(&SparseVec::basis(nb, k % nb))).collect(),
    )
}

/// `φ` is bijective, multiplicative and unital.
pub fn check_algebra_isomorphism(phi: &SparseMatrix, from: &AlgebraData, to: &AlgebraData, opts: &CheckOptions) -> CheckReport {
    let mut r = CheckReport::new("algebra isomorphism");
    let n = from.dim();
    r.push(Check::boolean("bijective", n == to.dim() && rank(phi) == n, None));
    r.push(check_matrices("multiplicative", &phi.compose(from.mult()), &to.mult().compose(&phi.kron(phi)), opts));
    r.push(check_equal("unital", &Shape::of(to.space()), &phi.apply(from.unit()), to.unit()));
    r
}
