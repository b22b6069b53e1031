use std::sync::Arc;

use weakhopf::constructions::*;
use weakhopf::corep::{bar_product, Comodule};
use weakhopf::exact::{Q, SparseMatrix, SparseVec};
use weakhopf::structures::*;
use weakhopf::wba::{AlgebraData, CoalgebraData};
use weakhopf::{CheckOptions, Error, Status};

fn opts() -> CheckOptions {
    CheckOptions::default()
}

fn face(q: &Quiver) -> FaceAlgebra {
    face_algebra(q, FaceMode::Full).unwrap()
}

fn names(r: &weakhopf::CheckReport) -> Vec<String> {
    r.failures().map(|c| c.name.clone()).collect()
}

fn label_index(m: &Comodule, l: &str) -> usize {
    m.space().labels().iter().position(|x| x == l).unwrap()
}

#[test]
fn kq_comodule_algebra_over_a2() {
    let f = face(&Quiver::linear(2));
    let (a, _) = kq_comodule_instances(&f).unwrap();
    let r = check_comodule_algebra(&a, &opts());
    assert!(r.all_passed(), "{:?}", names(&r));
    assert_eq!(r.status_of("mult-colinear"), Some(Status::Pass));
    assert_eq!(r.status_of("unit-in-Ht"), Some(Status::Pass));
}

#[test]
fn kq_instances_over_a3_and_a_point() {
    for q in [Quiver::linear(3), Quiver::linear(1)] {
        let f = face(&q);
        let (a, c) = kq_comodule_instances(&f).unwrap();
        let ra = check_comodule_algebra(&a, &opts());
        assert!(ra.all_passed(), "{:?}", names(&ra));
        let rc = check_comodule_coalgebra(&c, &opts());
        assert!(rc.all_passed(), "{:?}", names(&rc));
    }
}

#[test]
fn coaction_off_the_diagonal_breaks_coassociativity() {
    let f = face(&Quiver::linear(2));
    let (a, _) = kq_comodule_instances(&f).unwrap();
    let m = a.comodule.clone();
    let n = f.wba().dim();
    let e1 = label_index(&m, "e1");
    let xaa = f.x(&f.quiver().parse_path("a").unwrap(), &f.quiver().parse_path("a").unwrap()).unwrap();
    let broken = Comodule::from_fn("broken", m.space().clone(), f.wba().clone(), |i| {
        if i == e1 {
            SparseVec::basis(m.dim(), e1).kron(&xaa)
        } else {
            m.rho_basis(i).clone()
        }
    })
    .unwrap();
    assert_eq!(broken.rho_basis(e1).dim(), m.dim() * n);
    let alg = ComoduleAlgebra::new(Arc::new(broken), a.alg.clone()).unwrap();
    let r = check_comodule_algebra(&alg, &opts());
    // ε(x[a,a]) = 1 keeps the counit axiom; ρ(e2) has an e1 ⊗ x[1,2] term
    assert_eq!(r.status_of("comodule/counit"), Some(Status::Pass));
    let c = r.get("comodule/coassoc").unwrap();
    assert_eq!(c.status, Status::Fail);
    assert_eq!(c.witnesses[0].labels, vec!["e2".to_string()]);
    assert_eq!(r.status_of("unit-in-Ht"), Some(Status::Fail));
}

#[test]
fn unit_object_is_frobenius() {
    let hs = [
        face(&Quiver::linear(2)).wba().clone(),
        groupoid_algebra(&Groupoid::pair(2)).unwrap().wba().clone(),
        groupoid_algebra(&Groupoid::from_group(&Group::cyclic(3))).unwrap().wba().clone(),
    ];
    let dims = [2, 2, 1];
    for (h, d) in hs.iter().zip(dims) {
        let x = unit_object_instance(h).unwrap();
        assert_eq!(x.comodule().dim(), d);
        let r = check_comodule_frobenius(&x, &opts());
        assert!(r.all_passed(), "{}: {:?}", h.name(), names(&r));
    }
}

#[test]
fn path_coalgebra_is_a_comodule_coalgebra() {
    let f = face(&Quiver::linear(2));
    let (_, c) = kq_comodule_instances(&f).unwrap();
    let r = check_comodule_coalgebra(&c, &opts());
    assert!(r.all_passed(), "{:?}", names(&r));
    assert!(r.get("comult-compat").is_some());
}

#[test]
fn counit_one_on_an_arrow_breaks_counit_compat() {
    let f = face(&Quiver::linear(2));
    let (_, c) = kq_comodule_instances(&f).unwrap();
    let a = label_index(&c.comodule, "a");
    let mut eps = c.coalg.counit().clone();
    eps = eps.add(&SparseVec::basis(eps.dim(), a));
    let coalg = CoalgebraData::new(c.coalg.space().clone(), c.coalg.comult().clone(), eps).unwrap();
    let bad = ComoduleCoalgebra::new(c.comodule.clone(), coalg).unwrap();
    let r = check_comodule_coalgebra(&bad, &opts());
    let chk = r.get("counit-compat").unwrap();
    assert_eq!(chk.status, Status::Fail);
    assert!(chk.witnesses.iter().any(|w| w.labels == vec!["a".to_string()]));
}

#[test]
fn kq_is_frobenius_iff_arrowless() {
    for (q, expect) in [(Quiver::linear(1), true), (Quiver::new(["1", "2"], &[]).unwrap(), true), (Quiver::linear(2), false), (Quiver::linear(3), false)] {
        let f = face(&q);
        let (a, c) = kq_comodule_instances(&f).unwrap();
        let fr = ComoduleFrobenius::new(a.comodule.clone(), a.alg, c.coalg).unwrap();
        let r = check_comodule_frobenius(&fr, &opts());
        assert_eq!(r.status_of("frobenius-eq") == Some(Status::Pass), expect, "{q:?}");
    }
}

#[test]
fn matrix_example_is_mat2() {
    let ex = matrix_frobenius_example(&opts()).unwrap();
    let fr = &ex.frobenius;
    let m = fr.comodule();
    assert_eq!(m.space().labels(), &["e1", "e2", "p", "p*"]);
    let alg = &fr.algebra.alg;
    let b = |l: &str| SparseVec::basis(4, label_index(m, l));
    // matrix units e1 = E11, p = E12, p* = E21, e2 = E22
    assert_eq!(alg.mul(&b("p"), &b("p*")).unwrap(), b("e1"));
    assert_eq!(alg.mul(&b("p*"), &b("p")).unwrap(), b("e2"));
    assert!(alg.mul(&b("p"), &b("p")).unwrap().is_zero());
    let eps = fr.coalgebra.coalg.counit();
    assert_eq!(eps.get(label_index(m, "p")), Q::zero());
    assert_eq!(eps.get(label_index(m, "e1")), Q::one());
    assert!(ex.report.all_passed(), "{:?}", names(&ex.report));
    assert_eq!(ex.report.status_of("frobenius-eq"), Some(Status::Pass));
    assert_eq!(ex.report.discrepancies.len(), 1);
}

#[test]
fn unit_alternatives_agree_with_unit_in_ht() {
    let f = face(&Quiver::linear(2));
    let (a, _) = kq_comodule_instances(&f).unwrap();
    let x = unit_object_instance(f.wba()).unwrap();
    for alg in [a, x.algebra] {
        let r = check_comodule_algebra(&alg, &opts());
        let base = r.status_of("unit-in-Ht").unwrap();
        for k in 1..=6 {
            assert_eq!(r.status_of(&format!("unit-alt-{k}")), Some(base), "alt {k}");
        }
    }
}

#[test]
fn functor_f_on_kq() {
    let f = face(&Quiver::linear(2));
    let (a, _) = kq_comodule_instances(&f).unwrap();
    let y = functor_f(&Formulaic::Alg(a.clone()), &opts()).unwrap();
    let Internal::Alg(ia) = &y else { panic!() };
    assert_eq!(ia.bar.dim(), 4);
    let labels = ia.bar.comodule().space().labels().to_vec();
    let k = labels.iter().position(|l| l == "(e1 ⊗ a)").unwrap();
    assert_eq!(ia.mult.col(k), &SparseVec::basis(3, label_index(&a.comodule, "a")));
    // oracle: m̄ = m_A ∘ ι entrywise
    let oracle = a.alg.mult().compose(ia.bar.iota());
    assert!(ia.mult.same_entries(&oracle));
}

#[test]
fn functor_f_on_unit_object_has_identity_unit() {
    let f = face(&Quiver::linear(2));
    let x = unit_object_instance(f.wba()).unwrap();
    let y = functor_f(&Formulaic::Frob(x.clone()), &opts()).unwrap();
    let Internal::Frob(fr) = &y else { panic!() };
    assert!(fr.algebra.unit.same_entries(&SparseMatrix::identity(x.comodule().shape())));
    assert!(check_internal(&y, &opts()).unwrap().all_passed());
}

#[test]
fn functor_f_on_path_coalgebra_counit() {
    let f = face(&Quiver::linear(2));
    let (_, c) = kq_comodule_instances(&f).unwrap();
    let y = functor_f(&Formulaic::Coalg(c.clone()), &opts()).unwrap();
    let Internal::Coalg(ic) = &y else { panic!() };
    // oracle: ε̄(m) = Σ ε_C(m_[0]) ε_s(m_[1]), read in Hs coordinates
    let h = f.wba();
    let n = h.dim();
    let hs = h.hs();
    for i in 0..c.comodule.dim() {
        let mut want = SparseVec::zero(n);
        for (k, v) in c.comodule.rho_basis(i).entries() {
            let e = c.coalg.counit().get(k / n);
            if !e.is_zero() {
                want = want.add(&h.eps_s().apply(&SparseVec::basis(n, k % n)).scale(&(&e * v)));
            }
        }
        let got = hs.basis().apply(ic.counit.col(i));
        assert_eq!(got, want, "column {i}");
    }
}

#[test]
fn zero_unit_fails_unitality() {
    let f = face(&Quiver::linear(2));
    let (a, _) = kq_comodule_instances(&f).unwrap();
    let Internal::Alg(mut ia) = functor_f(&Formulaic::Alg(a), &opts()).unwrap() else { panic!() };
    ia.unit = SparseMatrix::zero(ia.unit.domain().clone(), ia.unit.codomain().clone());
    let r = check_internal(&Internal::Alg(ia), &opts()).unwrap();
    let c = r.get("unit-left").unwrap();
    assert_eq!(c.status, Status::Fail);
    assert!(!c.witnesses.is_empty());
}

#[test]
fn roundtrips() {
    let f = face(&Quiver::linear(2));
    let (a, c) = kq_comodule_instances(&f).unwrap();
    let x = unit_object_instance(f.wba()).unwrap();
    let ex = matrix_frobenius_example(&opts()).unwrap();
    let cases = [Formulaic::Alg(a), Formulaic::Coalg(c), Formulaic::Frob(x), Formulaic::Frob(ex.frobenius)];
    for x in &cases {
        let r = roundtrip_report(x, &opts()).unwrap();
        assert!(r.all_passed(), "{}: {:?}", r.subject, names(&r));
        let y = functor_f(x, &opts()).unwrap();
        let x2 = functor_g(&y, &opts()).unwrap();
        assert!(same_formulaic(x, &x2));
    }
}

#[test]
fn perturbed_mult_is_rejected_by_g() {
    let f = face(&Quiver::linear(2));
    let (a, _) = kq_comodule_instances(&f).unwrap();
    let Internal::Alg(mut ia) = functor_f(&Formulaic::Alg(a.clone()), &opts()).unwrap() else { panic!() };
    // send every bar basis element to e1
    let e1 = SparseVec::basis(3, label_index(&a.comodule, "e1"));
    ia.mult = SparseMatrix::from_fn(ia.mult.domain().clone(), ia.mult.codomain().clone(), |_| e1.clone());
    let err = functor_g(&Internal::Alg(ia), &opts()).unwrap_err();
    assert!(matches!(err, Error::InternalCheckFailed(_)), "{err}");
}

#[test]
fn invalid_formulaic_input_is_rejected_by_f() {
    let f = face(&Quiver::linear(2));
    let (a, _) = kq_comodule_instances(&f).unwrap();
    let m = a.comodule.clone();
    let b = |l: &str| SparseVec::basis(3, label_index(&m, l));
    // unit e1 only
    let alg = AlgebraData::new(m.space().clone(), a.alg.mult().clone(), b("e1")).unwrap();
    let bad = ComoduleAlgebra::new(m.clone(), alg).unwrap();
    assert!(matches!(functor_f(&Formulaic::Alg(bad), &opts()), Err(Error::FormulaicCheckFailed(_))));
}

#[test]
fn algebra_maps_are_morphisms_in_both_categories() {
    let f = face(&Quiver::linear(2));
    let (a, _) = kq_comodule_instances(&f).unwrap();
    let id = SparseMatrix::identity(a.comodule.shape());
    assert!(check_comodule_algebra_morphism(&id, &a, &a, &opts()).unwrap().all_passed());
    let Internal::Alg(ia) = functor_f(&Formulaic::Alg(a.clone()), &opts()).unwrap() else { panic!() };
    assert!(check_internal_algebra_morphism(&id, &ia, &ia, &opts()).unwrap().all_passed());
    let bar = bar_product(&a.comodule, &a.comodule, &opts()).unwrap();
    let ff = weakhopf::corep::bar_map(&id, &id, &bar, &bar, &opts()).unwrap();
    assert!(ff.same_entries(&SparseMatrix::identity(bar.comodule().shape())));
}
