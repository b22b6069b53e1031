use std::sync::Arc;

use weakhopf::constructions::Group;
use weakhopf::corep::{check_comodule, check_morphism};
use weakhopf::qtg::*;
use weakhopf::{CheckOptions, Error, Q, Space, SparseMatrix, SparseVec, Status};

fn opts() -> CheckOptions {
    CheckOptions::default()
}

fn failures(r: &weakhopf::CheckReport) -> Vec<String> {
    r.failures().map(|c| c.name.clone()).collect()
}

fn z2() -> Qtg {
    group_qtg(&Group::cyclic(2), &opts()).unwrap()
}

#[test]
fn group_hopf_algebras() {
    let z = group_hopf(&Group::cyclic(2));
    assert_eq!(z.dim(), 2);
    assert_eq!(z.antipode(), &SparseMatrix::identity(z.shape()));

    let g = Group::symmetric3();
    let s3 = group_hopf(&g);
    for x in 0..6 {
        assert_eq!(s3.antipode().col(x), &SparseVec::basis(6, g.inv(x)));
    }
    let r = check_hopf(&s3, &opts());
    assert!(r.all_passed(), "{:?}", failures(&r));

    let trivial = group_hopf(&Group::cyclic(1));
    assert_eq!(trivial.dim(), 1);
}

#[test]
fn trace_form_of_group_idempotent() {
    let b = group_separable(&Group::cyclic(2));
    let half = Q::new(1, 2).unwrap();
    assert_eq!(b.idempotent(), &SparseVec::from_terms(4, vec![(0, half.clone()), (3, half)]));
    // ½(ω(1)·1 + ω(σ)·σ) = 1 forces ω(1) = 2, ω(σ) = 0
    assert_eq!(b.omega(), &SparseVec::from_terms(2, vec![(0, Q::from_int(2))]));

    let t = group_separable(&Group::cyclic(1));
    assert_eq!(t.idempotent(), &SparseVec::basis(1, 0));
    assert_eq!(t.omega(), &SparseVec::basis(1, 0));

    let s3 = group_separable(&Group::symmetric3());
    let r = check_separable(&s3, &opts());
    assert!(r.all_passed(), "{:?}", failures(&r));
    assert_eq!(s3.omega(), &SparseVec::from_terms(6, vec![(0, Q::from_int(6))]));
}

#[test]
fn supplied_trace_form_is_compared() {
    let g = Group::cyclic(2);
    let b = group_separable(&g);
    let eps = SparseVec::from_dense(&[Q::one(), Q::one()]);
    let b2 = SeparableAlgebraData::new(b.alg().clone(), b.idempotent().clone(), Some(eps)).unwrap();
    let r = check_separable(&b2, &opts());
    assert!(r.all_passed());
    assert_eq!(r.discrepancies.len(), 1);
    assert_eq!(b2.omega(), b.omega());
}

#[test]
fn action_data() {
    for g in [Group::cyclic(2), Group::symmetric3()] {
        let l = group_hopf(&g);
        let b = group_separable(&g);
        let adj = adjoint_action(&g, &b, &l).unwrap();
        let r = check_action_data(&l, &b, &adj, &opts());
        assert!(r.all_passed(), "{:?}", failures(&r));
        let triv = trivial_action(&b, &l).unwrap();
        let r = check_action_data(&l, &b, &triv, &opts());
        assert!(r.all_passed(), "{:?}", failures(&r));
    }
}

#[test]
fn left_multiplication_is_not_a_module_algebra_action() {
    let g = Group::symmetric3();
    let l = Arc::new(group_hopf(&g));
    let b = Arc::new(group_separable(&g));
    let bad = ModuleAlgebraAction::from_fn(&b, &l, |x, h| SparseVec::basis(6, g.mul(h, x))).unwrap();
    let r = check_action_data(&l, &b, &bad, &opts());
    assert_eq!(r.status_of("module-algebra-unit"), Some(Status::Fail));
    match build_qtg(l, b, Arc::new(bad), &opts()) {
        Err(Error::ActionDataInvalid(name)) => assert!(name.starts_with("action/"), "{name}"),
        other => panic!("expected ActionDataInvalid, got {other:?}"),
    }
}

#[test]
fn z2_qtg_structure() {
    let g = Group::cyclic(2);
    let q = z2();
    let h = q.wba();
    assert_eq!(h.dim(), 8);
    assert!(q.report().all_passed(), "{:?}", failures(q.report()));
    assert_eq!(h.space().label(q.index(1, 0, 1)), "[g|e|g]");

    // Δ(a⊗h⊗b) = ½ Σ_g (a⊗h⊗g) ⊗ (hg⁻¹h⁻¹ ⊗ h ⊗ b)
    let half = Q::new(1, 2).unwrap();
    for a in 0..2 {
        for x in 0..2 {
            for b in 0..2 {
                let mut terms = Vec::new();
                for k in 0..2 {
                    let c = g.mul(g.mul(x, g.inv(k)), g.inv(x));
                    terms.push((q.index(a, x, k) * 8 + q.index(c, x, b), half.clone()));
                }
                assert_eq!(h.delta(&SparseVec::basis(8, q.index(a, x, b))), SparseVec::from_terms(64, terms));
            }
        }
    }
    assert_eq!(q.report().fact_value("s2-identity-on-hs"), Some("true"));
}

#[test]
fn group_qtg_counit_and_discrepancies() {
    for g in [Group::cyclic(2), Group::cyclic(3)] {
        let q = group_qtg(&g, &opts()).unwrap();
        let n = g.order();
        // ε(a⊗h⊗b) = ω(a · hbh⁻¹) = |G| δ(a·hbh⁻¹, 1)
        for a in 0..n {
            for x in 0..n {
                for b in 0..n {
                    let p = g.mul(a, g.mul(g.mul(x, b), g.inv(x)));
                    let want = if p == g.identity() { Q::from_int(n as i64) } else { Q::zero() };
                    assert_eq!(q.wba().coalg().eps_basis(q.index(a, x, b)), want);
                }
            }
        }
        let names: Vec<&str> = q.report().discrepancies.iter().map(|d| d.name.as_str()).collect();
        assert_eq!(names, ["omega-equals-counit", "counit-constant-one"]);
    }
}

#[test]
fn trivial_group_qtg_is_the_ground_field() {
    let q = group_qtg(&Group::cyclic(1), &opts()).unwrap();
    assert_eq!(q.wba().dim(), 1);
    assert!(q.report().all_passed());
    assert_eq!(q.report().fact_value("is-hopf"), Some("true"));
}

#[test]
fn s3_qtg_counit_matches_conjugation_formula() {
    let g = Group::symmetric3();
    let q = group_qtg(&g, &opts()).unwrap();
    assert_eq!(q.wba().dim(), 216);
    assert!(q.report().all_passed(), "{:?}", failures(q.report()));
    for a in 0..6 {
        for x in 0..6 {
            for b in 0..6 {
                let p = g.mul(a, g.mul(g.mul(x, b), g.inv(x)));
                let want = if p == g.identity() { Q::from_int(6) } else { Q::zero() };
                assert_eq!(q.wba().coalg().eps_basis(q.index(a, x, b)), want);
            }
        }
    }
}

#[test]
fn bicomodules() {
    let q = z2();
    let l = q.l();
    let reg = Bicomodule::regular(l);
    let k = Bicomodule::unit(l);
    for x in [&reg, &k, &reg.tensor(&reg).unwrap()] {
        let r = check_bicomodule(x, &opts());
        assert!(r.all_passed(), "{}: {:?}", x.name(), failures(&r));
    }
    let ll = reg.tensor(&reg).unwrap();
    assert_eq!(ll.dim(), 4);
    assert_eq!(ll.space().label(1), "(e ⊗ g)");
    // λ(e ⊗ g) = g ⊗ (e ⊗ g)
    assert_eq!(ll.left().col(1), &SparseVec::basis(8, 4 + 1));

    let sum = SparseVec::from_dense(&[Q::one(), Q::one()]);
    let bad = Bicomodule::from_fn("bad", l.clone(), Space::new(["x"]).unwrap(), |_| sum.clone(), |_| SparseVec::basis(2, 0)).unwrap();
    let r = check_bicomodule(&bad, &opts());
    assert_eq!(r.status_of("left-counit"), Some(Status::Fail));
}

fn sign(q: &Qtg) -> Bicomodule {
    Bicomodule::graded("V", q.l(), Space::new(["v"]).unwrap(), &[1]).unwrap()
}

#[test]
fn gamma_of_ground_field() {
    let q = z2();
    let gk = gamma(&q, Bicomodule::unit(q.l()).right()).unwrap();
    assert_eq!(gk.dim(), 4);
    assert!(check_comodule(&gk, &opts()).all_passed());
    // (a⊗1⊗b) ↦ Σ (a⊗1⊗e⁽¹⁾)⊗(e⁽²⁾⊗1⊗b) with e = ½(1⊗1 + σ⊗σ)
    let half = Q::new(1, 2).unwrap();
    for a in 0..2 {
        for b in 0..2 {
            let terms = (0..2).map(|k| ((a * 2 + k) * 8 + q.index(k, 0, b), half.clone())).collect();
            assert_eq!(gk.rho_basis(a * 2 + b), &SparseVec::from_terms(32, terms));
        }
    }
}

#[test]
fn gamma_of_l_is_the_regular_comodule() {
    let q = z2();
    let gl = gamma(&q, Bicomodule::regular(q.l()).right()).unwrap();
    assert_eq!(gl.space(), q.wba().space());
    assert!(gl.coaction().same_entries(q.wba().coalg().comult()));
}

#[test]
fn gamma_of_sign_comodule() {
    let q = z2();
    let gv = gamma(&q, sign(&q).right()).unwrap();
    assert_eq!(gv.dim(), 4);
    let r = check_comodule(&gv, &opts());
    assert!(r.all_passed(), "{:?}", failures(&r));
}

#[test]
fn gamma_preserves_morphisms() {
    let q = z2();
    let l = q.l();
    let reg = Bicomodule::regular(l);
    let k = Bicomodule::unit(l);
    let v = sign(&q);
    let ll = reg.tensor(&reg).unwrap();
    let unit_map = SparseMatrix::element(reg.shape(), l.one().clone());
    let v_to_l = SparseMatrix::from_fn(v.shape(), reg.shape(), |_| SparseVec::basis(2, 1));
    let cases = [(&k, &reg, unit_map), (&v, &reg, v_to_l), (&ll, &reg, l.wba().alg().mult().clone())];
    for (x, y, f) in cases {
        assert!(check_bicomodule_morphism("f", &f, x, y, &opts()).unwrap().passed());
        let (gx, gy) = (gamma(&q, x.right()).unwrap(), gamma(&q, y.right()).unwrap());
        let gf = gamma_map(&q, &f, &gx, &gy).unwrap();
        assert!(check_morphism("Γf", &gf, &gx, &gy, &opts()).unwrap().passed(), "{} → {}", x.name(), y.name());
    }
}

#[test]
fn gamma_hat_monoidal_on_corpus_pairs() {
    let q = z2();
    let l = q.l();
    let reg = Bicomodule::regular(l);
    let k = Bicomodule::unit(l);
    let v = sign(&q);
    for (x, y) in [(&k, &k), (&reg, &reg), (&v, &v), (&v, &reg)] {
        let m = gamma_hat_monoidal(&q, x, y, &opts()).unwrap();
        assert!(m.report.all_passed(), "({}, {}): {:?}", x.name(), y.name(), failures(&m.report));
        assert!(m.report.get("unit-left").is_some() && m.report.get("unit-right").is_some());
    }
}

#[test]
fn gamma_hat_unit_sends_hs_basis_to_ground_field_image() {
    let q = z2();
    let gk = GammaObject::new(&q, Bicomodule::unit(q.l())).unwrap();
    let g0 = gamma_hat_unit(&q, &gk).unwrap();
    let hs = q.wba().hs();
    // 1_L is the basis element e, so a ⊗ 1_𝕜 ⊗ b ↦ a ⊗ e ⊗ b undoes Γ̂₀
    for k in 0..hs.dim() {
        let back = g0.col(k).map_indices(8, |i| q.index(i / 2, 0, i % 2));
        assert_eq!(&back, hs.basis_vector(k));
    }
}

#[test]
fn gamma_hat_associativity_on_l() {
    let q = z2();
    let reg = Bicomodule::regular(q.l());
    let r = gamma_hat_associativity(&q, &reg, &reg, &reg, &opts()).unwrap();
    assert!(r.all_passed(), "{:?}", failures(&r));
}

#[test]
fn gamma_hat_associativity_mixed() {
    let q = z2();
    let (v, k) = (sign(&q), Bicomodule::unit(q.l()));
    let r = gamma_hat_associativity(&q, &v, &k, &v, &opts()).unwrap();
    assert!(r.all_passed(), "{:?}", failures(&r));
}

#[test]
fn transport_of_l_is_the_qtg() {
    let q = z2();
    let t = transport_algebra(&q, &BicomoduleAlgebra::regular(q.l()), &opts()).unwrap();
    assert!(t.report.all_passed(), "{:?}", failures(&t.report));
    let c = compare_with_qtg(&q, &t.algebra, &opts());
    assert!(c.all_passed(), "{:?}", failures(&c));
}

#[test]
fn transport_of_ground_field_is_bop_tensor_b() {
    let q = z2();
    let t = transport_algebra(&q, &BicomoduleAlgebra::unit(q.l()), &opts()).unwrap();
    assert!(t.report.all_passed(), "{:?}", failures(&t.report));
    let bb = bop_b_algebra(&q).unwrap();
    let phi = bop_b_identification(&q, &bb, &t.algebra.comodule).unwrap();
    let r = check_algebra_isomorphism(&phi, &bb, &t.algebra.alg, &opts());
    assert!(r.all_passed(), "{:?}", failures(&r));
}

#[test]
fn bop_b_multiplication_swaps_the_left_factor() {
    let q = z2();
    let bb = bop_b_algebra(&q).unwrap();
    // (g ⊗ e)(e ⊗ g) = g ⊗ g in ℤ₂
    let x = SparseVec::basis(4, 2);
    let y = SparseVec::basis(4, 1);
    assert_eq!(bb.mul(&x, &y).unwrap(), SparseVec::basis(4, 3));
}

#[test]
fn transport_of_truncated_tensor_algebra() {
    let q = z2();
    let v = sign(&q);
    for d in [1, 2] {
        let t = truncated_tensor_algebra(&v, d).unwrap();
        assert_eq!(t.x.dim(), d + 1);
        let r = check_bicomodule_algebra(&t, &opts());
        assert!(r.all_passed(), "{:?}", failures(&r));
        let tr = transport_algebra(&q, &t, &opts()).unwrap();
        assert!(tr.report.all_passed(), "d = {d}: {:?}", failures(&tr.report));
    }
    let t = truncated_tensor_algebra(&v, 1).unwrap();
    // v·v = 0 after truncation
    assert!(t.alg.mul_basis(1, 1).unwrap().is_zero());
}

/// `𝕜ℤ₂` acting on `𝕜ℤ₃` by inversion, so `◁` is not trivial.
fn inversion_qtg() -> Qtg {
    let z3 = Group::cyclic(3);
    let l = Arc::new(group_hopf(&Group::cyclic(2)));
    let b = Arc::new(group_separable(&z3));
    let act = ModuleAlgebraAction::from_fn(&b, &l, |x, h| SparseVec::basis(3, if h == 0 { x } else { z3.inv(x) })).unwrap();
    build_qtg(l, b, Arc::new(act), &opts()).unwrap()
}

#[test]
fn inversion_action_qtg() {
    let q = inversion_qtg();
    assert_eq!(q.wba().dim(), 18);
    assert!(q.report().all_passed(), "{:?}", failures(q.report()));
    assert!(q.report().discrepancies.is_empty());

    let v = sign(&q);
    let reg = Bicomodule::regular(q.l());
    let m = gamma_hat_monoidal(&q, &v, &reg, &opts()).unwrap();
    assert!(m.report.all_passed(), "{:?}", failures(&m.report));
    let r = gamma_hat_associativity(&q, &reg, &v, &reg, &opts()).unwrap();
    assert!(r.all_passed(), "{:?}", failures(&r));

    let t = transport_algebra(&q, &BicomoduleAlgebra::regular(q.l()), &opts()).unwrap();
    assert!(t.report.all_passed(), "{:?}", failures(&t.report));
    assert!(compare_with_qtg(&q, &t.algebra, &opts()).all_passed());
    let t = transport_algebra(&q, &truncated_tensor_algebra(&v, 2).unwrap(), &opts()).unwrap();
    assert!(t.report.all_passed(), "{:?}", failures(&t.report));
}

#[test]
fn s3_gamma_hat_on_graded_lines() {
    let g = Group::symmetric3();
    let q = group_qtg(&g, &opts()).unwrap();
    let c3 = g.index_of("(123)").unwrap();
    let t = g.index_of("(12)").unwrap();
    let v = Bicomodule::graded("V", q.l(), Space::new(["v"]).unwrap(), &[c3]).unwrap();
    let w = Bicomodule::graded("W", q.l(), Space::new(["w"]).unwrap(), &[t]).unwrap();
    let m = gamma_hat_monoidal(&q, &v, &w, &opts()).unwrap();
    assert!(m.report.all_passed(), "{:?}", failures(&m.report));
    assert_eq!(m.report.fact_value("bar-dim"), Some("216"));
    let r = gamma_hat_associativity(&q, &v, &w, &v, &opts()).unwrap();
    assert!(r.all_passed(), "{:?}", failures(&r));
}
