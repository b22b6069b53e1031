//! Invariants over generated inputs.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use weakhopf::constructions::{face_algebra, groupoid_algebra, groupoid_closed_form_report, FaceMode, Group, Groupoid, Quiver};
use weakhopf::corep::{bar_product, check_comodule, Comodule};
use weakhopf::exact::{image_basis, inverse, kernel_basis, rank, solve};
use weakhopf::wba::{check_weak_bialgebra, check_weak_hopf};
use weakhopf::{CheckOptions, Q, Shape, Space, SparseMatrix, SparseVec};

fn big(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn scalar() -> impl Strategy<Value = (i64, i64)> {
    prop_oneof![
        (-20i64..20, 1i64..12),
        (any::<i64>(), 1i64..i64::MAX),
        (-(1i64 << 40)..(1i64 << 40), 1i64..(1i64 << 40)),
    ]
}

fn q((n, d): (i64, i64)) -> Q {
    Q::new(n, d).expect("nonzero denominator")
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = SparseMatrix> {
    proptest::collection::vec(-3i64..4, rows * cols).prop_map(move |vals| {
        let dom = Shape::of(&Space::numbered("c", cols));
        let cod = Shape::of(&Space::numbered("r", rows));
        SparseMatrix::from_fn(dom, cod, |j| SparseVec::from_dense(&(0..rows).map(|i| Q::from_int(vals[i * cols + j])).collect::<Vec<_>>()))
    })
}

/// An acyclic quiver on `n` vertices with arrows only from lower to higher
/// vertex numbers.
fn dag() -> impl Strategy<Value = Quiver> {
    (1usize..4).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let k = pairs.len();
        proptest::collection::vec(0usize..k.max(1), 0..=k.min(3)).prop_map(move |picks| {
            let vertices: Vec<String> = (1..=n).map(|v| v.to_string()).collect();
            let arrows: Vec<(String, String, String)> = picks
                .iter()
                .filter(|_| k > 0)
                .enumerate()
                .map(|(a, &p)| (format!("a{a}"), vertices[pairs[p].0].clone(), vertices[pairs[p].1].clone()))
                .collect();
            let view: Vec<(&str, &str, &str)> = arrows.iter().map(|(a, s, t)| (a.as_str(), s.as_str(), t.as_str())).collect();
            Quiver::new(vertices.clone(), &view).expect("valid quiver")
        })
    })
}

proptest! {
    #[test]
    fn scalar_arithmetic_agrees_with_big_rationals(a in scalar(), b in scalar()) {
        let (x, y) = (q(a), q(b));
        let (bx, by) = (big(a.0, a.1), big(b.0, b.1));
        prop_assert_eq!((x.clone() + y.clone()).to_big_rational(), &bx + &by);
        prop_assert_eq!((x.clone() - y.clone()).to_big_rational(), &bx - &by);
        prop_assert_eq!((x.clone() * y.clone()).to_big_rational(), &bx * &by);
        if !y.is_zero() {
            prop_assert_eq!((x.clone() / y.clone()).to_big_rational(), &bx / &by);
        }
        // equal values compare equal however they were reached
        prop_assert_eq!(Q::from_big_rational(bx.clone()), x.clone());
        prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
    }

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        let (x, y, z) = (q(a), q(b), q(c));
        prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
        prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
        if let Some(inv) = x.inv() {
            prop_assert!((x * inv).is_one());
        }
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        let x = q(a);
        prop_assert_eq!(x.to_string().parse::<Q>().unwrap(), x);
    }

    #[test]
    fn scalar_parse_never_panics(s in "\\PC{0,12}") {
        let _ = s.parse::<Q>();
    }

    #[test]
    fn composition_is_associative(a in matrix(2, 3), b in matrix(3, 4), c in matrix(4, 2)) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn kronecker_mixed_product(a in matrix(2, 2), b in matrix(2, 3), c in matrix(2, 2), d in matrix(3, 2)) {
        prop_assert!(a.kron(&b).compose(&c.kron(&d)).same_entries(&a.compose(&c).kron(&b.compose(&d))));
    }

    #[test]
    fn rank_nullity(m in matrix(3, 5)) {
        let k = kernel_basis(&m);
        prop_assert_eq!(k.dim() + rank(&m), 5);
        prop_assert_eq!(image_basis(&m).dim(), rank(&m));
        for j in 0..k.dim() {
            prop_assert!(m.apply(k.basis_vector(j)).is_zero());
        }
        prop_assert_eq!(rank(&m.transpose()), rank(&m));
    }

    #[test]
    fn solve_recovers_a_preimage(m in matrix(4, 3), x in proptest::collection::vec(-3i64..4, 3)) {
        let x = SparseVec::from_dense(&x.into_iter().map(Q::from_int).collect::<Vec<_>>());
        let y = m.apply(&x);
        let sol = solve(&m, &y).expect("y lies in the image");
        prop_assert_eq!(m.apply(&sol), y);
    }

    #[test]
    fn inverse_is_two_sided(m in matrix(3, 3)) {
        match inverse(&m) {
            Ok(inv) => {
                let id = SparseMatrix::identity(m.domain().clone());
                prop_assert!(inv.compose(&m).same_entries(&id));
                prop_assert!(m.compose(&inv).same_entries(&id));
            }
            Err(_) => prop_assert!(rank(&m) < 3),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cyclic_group_algebras_are_hopf(n in 1usize..7) {
        let h = groupoid_algebra(&Groupoid::from_group(&Group::cyclic(n))).unwrap();
        prop_assert!(check_weak_hopf(&h, &CheckOptions::default()).all_passed());
        prop_assert!(h.wba().is_bialgebra());
        prop_assert_eq!(h.wba().hs().dim(), 1);
        // over a bialgebra the bar product is the whole tensor product
        let m = Arc::new(Comodule::regular(h.wba()));
        let b = bar_product(&m, &m, &CheckOptions::default()).unwrap();
        prop_assert_eq!(b.dim(), n * n);
        prop_assert!(b.report().all_passed());
    }

    #[test]
    fn pair_groupoid_algebras(n in 1usize..5) {
        let g = Groupoid::pair(n);
        let h = groupoid_algebra(&g).unwrap();
        prop_assert_eq!(h.wba().dim(), n * n);
        prop_assert!(check_weak_hopf(&h, &CheckOptions::default()).all_passed());
        prop_assert!(groupoid_closed_form_report(&g, &h).all_passed());
        prop_assert_eq!(h.wba().is_bialgebra(), n == 1);
    }

    #[test]
    fn face_algebras_of_acyclic_quivers(q in dag()) {
        let f = face_algebra(&q, FaceMode::Full).unwrap();
        let opts = CheckOptions::default();
        prop_assert!(check_weak_bialgebra(f.wba(), &opts).all_passed());
        prop_assert!(f.closed_form_report().all_passed());
        prop_assert_eq!(f.wba().hs().dim(), q.vertices().len());
        let m = Arc::new(Comodule::regular(f.wba()));
        prop_assert!(check_comodule(&m, &opts).all_passed());
    }

    #[test]
    fn reports_do_not_depend_on_thread_count(q in dag()) {
        let f = face_algebra(&q, FaceMode::Full).unwrap();
        let one = CheckOptions::default().with_threads(1);
        let four = CheckOptions::default().with_threads(4);
        let a = one.install(|| check_weak_bialgebra(f.wba(), &one));
        let b = four.install(|| check_weak_bialgebra(f.wba(), &four));
        prop_assert_eq!(format!("{a:?}"), format!("{b:?}"));
    }
}
