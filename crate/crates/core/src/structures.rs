//! Comodule algebras, coalgebras and Frobenius algebras given by formulas,
//! their counterparts internal to the comodule category, and the functors
//! `F` and `G` between the two descriptions.

use std::sync::Arc;

use crate::corep::{associator, bar_map, bar_product, check_comodule, check_morphism, hs_bistructure, pair_coaction, rho_s, unit_isomorphisms, BarProduct, Comodule};
use crate::engine::{check_equal, check_matrices, check_tuples, CheckOptions, Outcome};
use crate::error::{Error, Result};
use crate::exact::{apply_mid, Accumulator, Shape, SparseMatrix, SparseVec};
use crate::report::{Check, CheckReport};
use crate::wba::{check_algebra, check_coalgebra, AlgebraData, CoalgebraData, WeakBialgebra};

/// An algebra `(A, m_A, u_A)` on the space of a comodule.
#[derive(Clone, Debug)]
pub struct ComoduleAlgebra {
    pub comodule: Arc<Comodule>,
    pub alg: AlgebraData,
}

/// A coalgebra `(C, Δ_C, ε_C)` on the space of a comodule.
#[derive(Clone, Debug)]
pub struct ComoduleCoalgebra {
    pub comodule: Arc<Comodule>,
    pub coalg: CoalgebraData,
}

/// Both structures on one space and coaction.
#[derive(Clone, Debug)]
pub struct ComoduleFrobenius {
    pub algebra: ComoduleAlgebra,
    pub coalgebra: ComoduleCoalgebra,
}

impl ComoduleAlgebra {
    pub fn new(comodule: Arc<Comodule>, alg: AlgebraData) -> Result<Self> {
        if alg.space() != comodule.space() {
            return Err(Error::mismatch("algebra and comodule live on different spaces"));
        }
        Ok(ComoduleAlgebra { comodule, alg })
    }
}

impl ComoduleCoalgebra {
    pub fn new(comodule: Arc<Comodule>, coalg: CoalgebraData) -> Result<Self> {
        if coalg.space() != comodule.space() {
            return Err(Error::mismatch("coalgebra and comodule live on different spaces"));
        }
        Ok(ComoduleCoalgebra { comodule, coalg })
    }
}

impl ComoduleFrobenius {
    pub fn new(comodule: Arc<Comodule>, alg: AlgebraData, coalg: CoalgebraData) -> Result<Self> {
        Ok(ComoduleFrobenius {
            algebra: ComoduleAlgebra::new(comodule.clone(), alg)?,
            coalgebra: ComoduleCoalgebra::new(comodule, coalg)?,
        })
    }

    pub fn comodule(&self) -> &Arc<Comodule> {
        &self.algebra.comodule
    }
}

/// `x ↦ ε(x 1₁) 1₂`.
fn eps_t_right(h: &WeakBialgebra) -> Result<SparseMatrix> {
    let n = h.dim();
    let cols = (0..n)
        .map(|x| {
            let mut acc = Accumulator::new(n);
            for (k, c) in h.delta_one().entries() {
                let e = h.coalg().eps(h.alg().mul_basis(x, k / n)?);
                if !e.is_zero() {
                    acc.push(k % n, c * &e);
                }
            }
            Ok(acc.finish())
        })
        .collect::<Result<Vec<_>>>()?;
    SparseMatrix::new(h.shape(), h.shape(), cols)
}

/// Multiplication-colinearity, unit-in-`Ht`, and the six equivalent forms
/// of the unit condition (`unit-alt-1` … `unit-alt-6`).
pub fn check_comodule_algebra(a: &ComoduleAlgebra, opts: &CheckOptions) -> CheckReport {
    let m = &a.comodule;
    let h = m.h();
    let nh = h.dim();
    let d = m.dim();
    let alg = &a.alg;
    let mut r = CheckReport::new(format!("comodule algebra {}", m.name()));
    r.absorb("algebra", check_algebra(alg, opts));
    r.absorb("comodule", check_comodule(m, opts));
    let ms = m.space().clone();
    let sh_ah = Shape::new(vec![ms.clone(), h.space().clone()]);

    r.push(check_tuples("mult-colinear", &[ms.clone(), ms.clone()], &sh_ah, opts, |i| {
        let Ok(ab) = alg.mul_basis(i[0], i[1]) else {
            return Outcome::OutOfTruncation;
        };
        let lhs = m.rho(ab);
        let mut acc = Accumulator::new(d * nh);
        for (x, c) in m.rho_basis(i[0]).entries() {
            for (y, e) in m.rho_basis(i[1]).entries() {
                let (Ok(p), Ok(q)) = (alg.mul_basis(x / nh, y / nh), h.alg().mul_basis(x % nh, y % nh)) else {
                    return Outcome::OutOfTruncation;
                };
                acc.add_scaled(&(c * e), &p.kron(q));
            }
        }
        Outcome::compare(lhs, acc.finish())
    }));

    let one = alg.unit();
    let rho1 = m.rho(one);
    let in_ht = {
        let ht = h.ht();
        let c = apply_mid(&rho1, nh, 1, &ht.projection());
        apply_mid(&c, ht.dim(), 1, ht.basis()) == rho1
    };
    r.push(Check::boolean("unit-in-Ht", in_ht, None));

    let eps_t = h.eps_t();
    let eps_t2 = match eps_t_right(h) {
        Ok(e) => e,
        Err(e) => {
            r.push(Check::boolean("unit-alt-2", false, None).with_detail(e.to_string()));
            return r;
        }
    };
    r.push(check_equal("unit-alt-1", &sh_ah, &rho1, &apply_mid(&rho1, nh, 1, eps_t)));
    r.push(check_equal("unit-alt-2", &sh_ah, &rho1, &apply_mid(&rho1, nh, 1, &eps_t2)));
    let left_mul = |u: usize, x: usize| alg.mul_basis(u, x).ok().cloned();
    let right_mul = |x: usize, u: usize| alg.mul_basis(x, u).ok().cloned();
    for (name, left, et) in [("unit-alt-3", true, eps_t), ("unit-alt-4", false, &eps_t2)] {
        r.push(check_tuples(name, &[ms.clone()], &sh_ah, opts, |i| {
            let mut acc = Accumulator::new(d * nh);
            for (k, c) in rho1.entries() {
                let prod = if left { left_mul(k / nh, i[0]) } else { right_mul(i[0], k / nh) };
                let Some(p) = prod else {
                    return Outcome::OutOfTruncation;
                };
                acc.add_scaled(c, &p.kron(&SparseVec::basis(nh, k % nh)));
            }
            let rhs = apply_mid(m.rho_basis(i[0]), nh, 1, et);
            Outcome::compare(acc.finish(), rhs)
        }));
    }
    let rho2 = apply_mid(&rho1, d, nh, m.coaction());
    let sh_ahh = Shape::new(vec![ms.clone(), h.space().clone(), h.space().clone()]);
    for (name, left) in [("unit-alt-5", false), ("unit-alt-6", true)] {
        let mut acc = Accumulator::new(d * nh * nh);
        let mut overflow = false;
        for (k, c) in rho1.entries() {
            for (t, e) in h.delta_one().entries() {
                let (x, y) = (t / nh, t % nh);
                let prod = if left { h.alg().mul_basis(x, k % nh) } else { h.alg().mul_basis(k % nh, x) };
                match prod {
                    Ok(p) => {
                        let v = SparseVec::basis(d, k / nh).kron(p).kron(&SparseVec::basis(nh, y));
                        acc.add_scaled(&(c * e), &v);
                    }
                    Err(_) => overflow = true,
                }
            }
        }
        if overflow {
            r.push(Check::from_counts(name, 1, 0, 1, 0, false, vec![]));
        } else {
            r.push(check_equal(name, &sh_ahh, &rho2, &acc.finish()));
        }
    }
    r
}

/// Comultiplication compatibility and counit compatibility.
pub fn check_comodule_coalgebra(c: &ComoduleCoalgebra, opts: &CheckOptions) -> CheckReport {
    let m = &c.comodule;
    let h = m.h();
    let nh = h.dim();
    let d = m.dim();
    let mut r = CheckReport::new(format!("comodule coalgebra {}", m.name()));
    r.absorb("coalgebra", check_coalgebra(&c.coalg, opts));
    r.absorb("comodule", check_comodule(m, opts));
    let ms = m.space().clone();
    let sh = Shape::new(vec![ms.clone(), ms.clone(), h.space().clone()]);
    match pair_coaction(m, m) {
        Ok(pair) => r.push(check_tuples("comult-compat", &[ms.clone()], &sh, opts, |i| {
            let lhs = pair.apply(c.coalg.delta_basis(i[0]));
            let rhs = apply_mid(m.rho_basis(i[0]), d, nh, c.coalg.comult());
            Outcome::compare(lhs, rhs)
        })),
        Err(_) => r.push(Check::from_counts("comult-compat", d as u64, 0, d as u64, 0, false, vec![])),
    }
    let eps_c = c.coalg.counit_matrix();
    r.push(check_tuples("counit-compat", &[ms.clone()], &h.shape(), opts, |i| {
        let lhs = apply_mid(m.rho_basis(i[0]), d, nh, &eps_c);
        let rhs = h.eps_s().apply(&lhs);
        Outcome::compare(lhs, rhs)
    }));
    r
}

/// `a b₁ ⊗ b₂ = Δ(ab) = a₁ ⊗ a₂ b` for all basis pairs.
pub fn check_frobenius_identity(alg: &AlgebraData, coalg: &CoalgebraData, opts: &CheckOptions) -> Check {
    let s = alg.space().clone();
    let n = s.dim();
    check_tuples("frobenius-eq", &[s.clone(), s.clone()], &Shape::power(&s, 2), opts, |i| {
        let Ok(ab) = alg.mul_basis(i[0], i[1]) else {
            return Outcome::OutOfTruncation;
        };
        let mid = coalg.delta(ab);
        let left = mul_first_two(alg, &SparseVec::basis(n, i[0]).kron(coalg.delta_basis(i[1])), n);
        let right = mul_last_two(alg, &coalg.delta_basis(i[0]).kron(&SparseVec::basis(n, i[1])), n);
        match (left, right) {
            (Ok(l), Ok(_)) if l != mid => Outcome::Differ(l, mid),
            (Ok(_), Ok(r)) if r != mid => Outcome::Differ(r, mid),
            (Ok(_), Ok(_)) => Outcome::Equal,
            _ => Outcome::OutOfTruncation,
        }
    })
}

/// `a ⊗ b ⊗ c ↦ ab ⊗ c`.
fn mul_first_two(alg: &AlgebraData, v: &SparseVec, n: usize) -> Result<SparseVec> {
    let mut acc = Accumulator::new(n * n);
    for (k, c) in v.entries() {
        let (ab, x) = (k / n, k % n);
        acc.add_scaled(c, &alg.mul_basis(ab / n, ab % n)?.kron(&SparseVec::basis(n, x)));
    }
    Ok(acc.finish())
}

/// `a ⊗ b ⊗ c ↦ a ⊗ bc`.
fn mul_last_two(alg: &AlgebraData, v: &SparseVec, n: usize) -> Result<SparseVec> {
    let mut acc = Accumulator::new(n * n);
    for (k, c) in v.entries() {
        let (a, bc) = (k / (n * n), k % (n * n));
        acc.add_scaled(c, &SparseVec::basis(n, a).kron(alg.mul_basis(bc / n, bc % n)?));
    }
    Ok(acc.finish())
}

pub fn check_comodule_frobenius(f: &ComoduleFrobenius, opts: &CheckOptions) -> CheckReport {
    let mut r = CheckReport::new(format!("comodule Frobenius algebra {}", f.comodule().name()));
    r.absorb("algebra-part", check_comodule_algebra(&f.algebra, opts));
    r.absorb("coalgebra-part", check_comodule_coalgebra(&f.coalgebra, opts));
    r.push(check_frobenius_identity(&f.algebra.alg, &f.coalgebra.coalg, opts));
    r
}

/// An algebra in the comodule category: `m̄: A ⊗̄ A → A`, `ū: Hs → A`.
#[derive(Clone, Debug)]
pub struct InternalAlgebra {
    pub comodule: Arc<Comodule>,
    pub bar: BarProduct,
    pub mult: SparseMatrix,
    pub unit: SparseMatrix,
}

/// A coalgebra in the comodule category: `Δ̄: C → C ⊗̄ C`, `ε̄: C → Hs`.
#[derive(Clone, Debug)]
pub struct InternalCoalgebra {
    pub comodule: Arc<Comodule>,
    pub bar: BarProduct,
    pub comult: SparseMatrix,
    pub counit: SparseMatrix,
}

#[derive(Clone, Debug)]
pub struct InternalFrobenius {
    pub algebra: InternalAlgebra,
    pub coalgebra: InternalCoalgebra,
}

impl InternalAlgebra {
    pub fn new(comodule: Arc<Comodule>, mult: SparseMatrix, unit: SparseMatrix, opts: &CheckOptions) -> Result<Self> {
        let bar = bar_product(&comodule, &comodule, opts)?;
        let hs = comodule.h().hs();
        let mult = mult.with_shapes(bar.comodule().shape(), comodule.shape())?;
        let unit = unit.with_shapes(Shape::of(hs.coord_space()), comodule.shape())?;
        Ok(InternalAlgebra { comodule, bar, mult, unit })
    }
}

impl InternalCoalgebra {
    pub fn new(comodule: Arc<Comodule>, comult: SparseMatrix, counit: SparseMatrix, opts: &CheckOptions) -> Result<Self> {
        let bar = bar_product(&comodule, &comodule, opts)?;
        let hs = comodule.h().hs();
        let comult = comult.with_shapes(comodule.shape(), bar.comodule().shape())?;
        let counit = counit.with_shapes(comodule.shape(), Shape::of(hs.coord_space()))?;
        Ok(InternalCoalgebra { comodule, bar, comult, counit })
    }
}

/// Runs a check that needs bar maps; a structure map that is not a
/// comodule morphism makes the check fail instead of aborting the report.
fn guarded(name: &str, r: &mut CheckReport, f: impl FnOnce() -> Result<Check>) {
    match f() {
        Ok(c) => r.push(c.renamed(name)),
        Err(e) => r.push(Check::boolean(name, false, None).with_detail(e.to_string())),
    }
}

fn internal_algebra_checks(x: &InternalAlgebra, opts: &CheckOptions, r: &mut CheckReport) -> Result<()> {
    let a = &x.comodule;
    let unit_obj = Arc::new(Comodule::unit_object(a.h())?);
    r.push(check_morphism("mult-morphism", &x.mult, x.bar.comodule(), a, opts)?);
    r.push(check_morphism("unit-morphism", &x.unit, &unit_obj, a, opts)?);
    let id = SparseMatrix::identity(a.shape());
    let asc = associator(a, a, a, opts)?;
    guarded("assoc", r, || {
        let lhs = x.mult.compose(&bar_map(&x.mult, &id, &asc.xy_z, &x.bar, opts)?);
        let rhs = x.mult.compose(&bar_map(&id, &x.mult, &asc.x_yz, &x.bar, opts)?).compose(&asc.forward);
        Ok(check_matrices("assoc", &lhs, &rhs, opts))
    });
    let u = unit_isomorphisms(a, opts)?;
    guarded("unit-left", r, || {
        let lhs = x.mult.compose(&bar_map(&x.unit, &id, &u.left_bar, &x.bar, opts)?);
        Ok(check_matrices("unit-left", &lhs, &u.l, opts))
    });
    guarded("unit-right", r, || {
        let lhs = x.mult.compose(&bar_map(&id, &x.unit, &u.right_bar, &x.bar, opts)?);
        Ok(check_matrices("unit-right", &lhs, &u.r, opts))
    });
    Ok(())
}

fn internal_coalgebra_checks(x: &InternalCoalgebra, opts: &CheckOptions, r: &mut CheckReport) -> Result<()> {
    let c = &x.comodule;
    let unit_obj = Arc::new(Comodule::unit_object(c.h())?);
    r.push(check_morphism("comult-morphism", &x.comult, c, x.bar.comodule(), opts)?);
    r.push(check_morphism("counit-morphism", &x.counit, c, &unit_obj, opts)?);
    let id = SparseMatrix::identity(c.shape());
    let asc = associator(c, c, c, opts)?;
    guarded("coassoc", r, || {
        let lhs = bar_map(&x.comult, &id, &x.bar, &asc.xy_z, opts)?.compose(&x.comult);
        let rhs = asc.backward.compose(&bar_map(&id, &x.comult, &x.bar, &asc.x_yz, opts)?).compose(&x.comult);
        Ok(check_matrices("coassoc", &lhs, &rhs, opts))
    });
    let u = unit_isomorphisms(c, opts)?;
    guarded("counit-left", r, || {
        let lhs = bar_map(&x.counit, &id, &x.bar, &u.left_bar, opts)?.compose(&x.comult);
        Ok(check_matrices("counit-left", &lhs, &u.l_inv, opts))
    });
    guarded("counit-right", r, || {
        let lhs = bar_map(&id, &x.counit, &x.bar, &u.right_bar, opts)?.compose(&x.comult);
        Ok(check_matrices("counit-right", &lhs, &u.r_inv, opts))
    });
    Ok(())
}

fn internal_frobenius_checks(x: &InternalFrobenius, opts: &CheckOptions, r: &mut CheckReport) -> Result<()> {
    let a = &x.algebra.comodule;
    let (m, d) = (&x.algebra.mult, &x.coalgebra.comult);
    let bar = &x.algebra.bar;
    let id = SparseMatrix::identity(a.shape());
    let asc = associator(a, a, a, opts)?;
    guarded("frobenius-eq", r, || {
        let mid = d.compose(m);
        // (m̄ ⊗̄ Id) a⁻¹ (Id ⊗̄ Δ̄) and (Id ⊗̄ m̄) a (Δ̄ ⊗̄ Id)
        let left = bar_map(m, &id, &asc.xy_z, bar, opts)?
            .compose(&asc.backward)
            .compose(&bar_map(&id, d, bar, &asc.x_yz, opts)?);
        let right = bar_map(&id, m, &asc.x_yz, bar, opts)?
            .compose(&asc.forward)
            .compose(&bar_map(d, &id, bar, &asc.xy_z, opts)?);
        let c1 = check_matrices("frobenius-eq", &left, &mid, opts);
        if !c1.passed() {
            return Ok(c1);
        }
        Ok(check_matrices("frobenius-eq", &right, &mid, opts))
    });
    Ok(())
}

/// A structure given by formulas on a comodule.
#[derive(Clone, Debug)]
pub enum Formulaic {
    Alg(ComoduleAlgebra),
    Coalg(ComoduleCoalgebra),
    Frob(ComoduleFrobenius),
}

/// A structure internal to the comodule category.
#[derive(Clone, Debug)]
pub enum Internal {
    Alg(InternalAlgebra),
    Coalg(InternalCoalgebra),
    Frob(InternalFrobenius),
}

impl Formulaic {
    pub fn comodule(&self) -> &Arc<Comodule> {
        match self {
            Formulaic::Alg(a) => &a.comodule,
            Formulaic::Coalg(c) => &c.comodule,
            Formulaic::Frob(f) => f.comodule(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Formulaic::Alg(_) => "alg",
            Formulaic::Coalg(_) => "coalg",
            Formulaic::Frob(_) => "frob",
        }
    }
}

impl Internal {
    pub fn comodule(&self) -> &Arc<Comodule> {
        match self {
            Internal::Alg(a) => &a.comodule,
            Internal::Coalg(c) => &c.comodule,
            Internal::Frob(f) => &f.algebra.comodule,
        }
    }
}

pub fn check_formulaic(x: &Formulaic, opts: &CheckOptions) -> CheckReport {
    match x {
        Formulaic::Alg(a) => check_comodule_algebra(a, opts),
        Formulaic::Coalg(c) => check_comodule_coalgebra(c, opts),
        Formulaic::Frob(f) => check_comodule_frobenius(f, opts),
    }
}

pub fn check_internal(y: &Internal, opts: &CheckOptions) -> Result<CheckReport> {
    let mut r = CheckReport::new(format!("internal structure on {}", y.comodule().name()));
    match y {
        Internal::Alg(a) => internal_algebra_checks(a, opts, &mut r)?,
        Internal::Coalg(c) => internal_coalgebra_checks(c, opts, &mut r)?,
        Internal::Frob(f) => {
            let mut ra = CheckReport::new("");
            internal_algebra_checks(&f.algebra, opts, &mut ra)?;
            r.absorb("algebra-part", ra);
            let mut rc = CheckReport::new("");
            internal_coalgebra_checks(&f.coalgebra, opts, &mut rc)?;
            r.absorb("coalgebra-part", rc);
            internal_frobenius_checks(f, opts, &mut r)?;
        }
    }
    Ok(r)
}

fn f_alg(a: &ComoduleAlgebra, opts: &CheckOptions) -> Result<InternalAlgebra> {
    let m = &a.comodule;
    let bar = bar_product(m, m, opts)?;
    // m̄ = m_A ∘ ι, ū(x) = 1_A ◁ x
    let mult = a.alg.mult().compose(bar.iota());
    let bi = hs_bistructure(m, opts)?;
    let hs = m.h().hs();
    let one = a.alg.unit();
    let unit = SparseMatrix::from_fn(Shape::of(hs.coord_space()), m.shape(), |x| {
        bi.right_action.apply(&one.kron(&SparseVec::basis(hs.dim(), x)))
    });
    InternalAlgebra::new(m.clone(), mult, unit, opts)
}

fn f_coalg(c: &ComoduleCoalgebra, opts: &CheckOptions) -> Result<InternalCoalgebra> {
    let m = &c.comodule;
    let bar = bar_product(m, m, opts)?;
    // Δ̄ = η ∘ Δ_C, ε̄ = (ε_C ⊗ Id) ∘ ρˢ
    let comult = bar.eta().compose(c.coalg.comult());
    let rs = rho_s(m)?;
    let ns = m.h().hs().dim();
    let counit = apply_left_functional(&rs, c.coalg.counit(), m.dim(), ns);
    InternalCoalgebra::new(m.clone(), comult, counit.with_shapes(m.shape(), Shape::of(m.h().hs().coord_space()))?, opts)
}

/// `(φ ⊗ Id) ∘ f` for `f: X → M ⊗ K` and a functional `φ` on `M`.
fn apply_left_functional(f: &SparseMatrix, phi: &SparseVec, dm: usize, dk: usize) -> SparseMatrix {
    let cols = f
        .cols()
        .iter()
        .map(|v| {
            let mut acc = Accumulator::new(dk);
            for (k, c) in v.entries() {
                let e = phi.get(k / dk);
                if !e.is_zero() {
                    acc.push(k % dk, c * &e);
                }
            }
            acc.finish()
        })
        .collect();
    debug_assert_eq!(f.nrows(), dm * dk);
    SparseMatrix::new(f.domain().clone(), Shape::new(vec![crate::exact::Space::numbered("k", dk)]), cols)
        .expect("functional application")
}

/// `F` without the precondition check.
pub fn functor_f_unchecked(x: &Formulaic, opts: &CheckOptions) -> Result<Internal> {
    Ok(match x {
        Formulaic::Alg(a) => Internal::Alg(f_alg(a, opts)?),
        Formulaic::Coalg(c) => Internal::Coalg(f_coalg(c, opts)?),
        Formulaic::Frob(f) => Internal::Frob(InternalFrobenius {
            algebra: f_alg(&f.algebra, opts)?,
            coalgebra: f_coalg(&f.coalgebra, opts)?,
        }),
    })
}

/// Formulaic structure → internal structure. Fails with
/// `FormulaicCheckFailed` if the input is not valid, and with
/// `InternalCheckFailed` if the image is not (which would be a bug).
pub fn functor_f(x: &Formulaic, opts: &CheckOptions) -> Result<Internal> {
    if let Some(c) = check_formulaic(x, opts).first_failure() {
        return Err(Error::FormulaicCheckFailed(c.name.clone()));
    }
    let y = functor_f_unchecked(x, opts)?;
    if let Some(c) = check_internal(&y, opts)?.first_failure() {
        return Err(Error::InternalCheckFailed(c.name.clone()));
    }
    Ok(y)
}

fn g_alg(y: &InternalAlgebra) -> Result<AlgebraData> {
    let m = &y.comodule;
    let h = m.h();
    // m_A = m̄ ∘ η, u_A = ū ∘ U₀
    let mult = y.mult.compose(y.bar.eta());
    let unit = y.unit.apply(&h.hs().projection().apply(h.one()));
    AlgebraData::new(m.space().clone(), mult, unit)
}

fn g_coalg(y: &InternalCoalgebra) -> Result<CoalgebraData> {
    let m = &y.comodule;
    let h = m.h();
    let hs = h.hs();
    // Δ_C = ι ∘ Δ̄, ε_C = U⁰ ∘ ε̄
    let comult = y.bar.iota().compose(&y.comult);
    let eps_hs = SparseVec::from_terms(hs.dim(), (0..hs.dim()).map(|k| (k, h.eps(hs.basis_vector(k)))).collect());
    let counit = SparseVec::from_terms(m.dim(), (0..m.dim()).map(|i| (i, y.counit.col(i).dot(&eps_hs))).collect());
    CoalgebraData::new(m.space().clone(), comult, counit)
}

pub fn functor_g_unchecked(y: &Internal) -> Result<Formulaic> {
    Ok(match y {
        Internal::Alg(a) => Formulaic::Alg(ComoduleAlgebra::new(a.comodule.clone(), g_alg(a)?)?),
        Internal::Coalg(c) => Formulaic::Coalg(ComoduleCoalgebra::new(c.comodule.clone(), g_coalg(c)?)?),
        Internal::Frob(f) => {
            Formulaic::Frob(ComoduleFrobenius::new(f.algebra.comodule.clone(), g_alg(&f.algebra)?, g_coalg(&f.coalgebra)?)?)
        }
    })
}

/// Internal structure → formulaic structure, with both checks enforced.
pub fn functor_g(y: &Internal, opts: &CheckOptions) -> Result<Formulaic> {
    if let Some(c) = check_internal(y, opts)?.first_failure() {
        return Err(Error::InternalCheckFailed(c.name.clone()));
    }
    let x = functor_g_unchecked(y)?;
    if let Some(c) = check_formulaic(&x, opts).first_failure() {
        return Err(Error::FormulaicCheckFailed(c.name.clone()));
    }
    Ok(x)
}

fn same_alg(a: &AlgebraData, b: &AlgebraData) -> bool {
    a.mult().same_entries(b.mult()) && a.unit() == b.unit()
}

fn same_coalg(a: &CoalgebraData, b: &CoalgebraData) -> bool {
    a.comult().same_entries(b.comult()) && a.counit() == b.counit()
}

pub fn same_formulaic(x: &Formulaic, y: &Formulaic) -> bool {
    let same_rho = x.comodule().coaction().same_entries(y.comodule().coaction());
    same_rho
        && match (x, y) {
            (Formulaic::Alg(a), Formulaic::Alg(b)) => same_alg(&a.alg, &b.alg),
            (Formulaic::Coalg(a), Formulaic::Coalg(b)) => same_coalg(&a.coalg, &b.coalg),
            (Formulaic::Frob(a), Formulaic::Frob(b)) => {
                same_alg(&a.algebra.alg, &b.algebra.alg) && same_coalg(&a.coalgebra.coalg, &b.coalgebra.coalg)
            }
            _ => false,
        }
}

pub fn same_internal(x: &Internal, y: &Internal) -> bool {
    let alg = |a: &InternalAlgebra, b: &InternalAlgebra| a.mult.same_entries(&b.mult) && a.unit.same_entries(&b.unit);
    let coalg =
        |a: &InternalCoalgebra, b: &InternalCoalgebra| a.comult.same_entries(&b.comult) && a.counit.same_entries(&b.counit);
    match (x, y) {
        (Internal::Alg(a), Internal::Alg(b)) => alg(a, b),
        (Internal::Coalg(a), Internal::Coalg(b)) => coalg(a, b),
        (Internal::Frob(a), Internal::Frob(b)) => alg(&a.algebra, &b.algebra) && coalg(&a.coalgebra, &b.coalgebra),
        _ => false,
    }
}

/// `G(F(X)) = X` and `F(G(F(X))) = F(X)`, as exact equality of all
/// structure tensors.
pub fn roundtrip_report(x: &Formulaic, opts: &CheckOptions) -> Result<CheckReport> {
    let mut r = CheckReport::new(format!("{} round trip on {}", x.kind(), x.comodule().name()));
    r.absorb("formulaic", check_formulaic(x, opts));
    let y = functor_f_unchecked(x, opts)?;
    r.absorb("internal", check_internal(&y, opts)?);
    let x2 = functor_g_unchecked(&y)?;
    r.push(Check::boolean("g-after-f", same_formulaic(x, &x2), None));
    let y2 = functor_f_unchecked(&x2, opts)?;
    r.push(Check::boolean("f-after-g", same_internal(&y, &y2), None));
    Ok(r)
}

/// A map that is an algebra map and a comodule map.
pub fn check_comodule_algebra_morphism(f: &SparseMatrix, a: &ComoduleAlgebra, b: &ComoduleAlgebra, opts: &CheckOptions) -> Result<CheckReport> {
    let mut r = CheckReport::new("comodule algebra morphism");
    r.push(check_morphism("comodule-map", f, &a.comodule, &b.comodule, opts)?);
    r.push(check_matrices("multiplicative", &f.compose(a.alg.mult()), &b.alg.mult().compose(&f.kron(f)), opts));
    r.push(check_equal("unital", &b.comodule.shape(), &f.apply(a.alg.unit()), b.alg.unit()));
    Ok(r)
}

/// A map that is a coalgebra map and a comodule map.
pub fn check_comodule_coalgebra_morphism(f: &SparseMatrix, a: &ComoduleCoalgebra, b: &ComoduleCoalgebra, opts: &CheckOptions) -> Result<CheckReport> {
    let mut r = CheckReport::new("comodule coalgebra morphism");
    r.push(check_morphism("comodule-map", f, &a.comodule, &b.comodule, opts)?);
    r.push(check_matrices("comultiplicative", &f.kron(f).compose(a.coalg.comult()), &b.coalg.comult().compose(f), opts));
    let eps_b = SparseMatrix::functional(b.comodule.shape(), b.coalg.counit());
    let eps_a = SparseMatrix::functional(a.comodule.shape(), a.coalg.counit());
    r.push(check_matrices("counital", &eps_b.compose(f), &eps_a, opts));
    Ok(r)
}

/// `f m̄_A = m̄_B (f ⊗̄ f)` and `f ū_A = ū_B`.
pub fn check_internal_algebra_morphism(f: &SparseMatrix, a: &InternalAlgebra, b: &InternalAlgebra, opts: &CheckOptions) -> Result<CheckReport> {
    let mut r = CheckReport::new("internal algebra morphism");
    r.push(check_morphism("comodule-map", f, &a.comodule, &b.comodule, opts)?);
    let ff = bar_map(f, f, &a.bar, &b.bar, opts)?;
    r.push(check_matrices("multiplicative", &f.compose(&a.mult), &b.mult.compose(&ff), opts));
    r.push(check_matrices("unital", &f.compose(&a.unit), &b.unit, opts));
    Ok(r)
}
