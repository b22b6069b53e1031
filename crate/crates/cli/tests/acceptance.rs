//! Acceptance criteria 1–10, one line each. Exits non-zero if any fails.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use weakhopf::constructions::{
    face_algebra, groupoid_algebra, groupoid_closed_form_report, kq_comodule, kq_comodule_instances, matrix_frobenius_example,
    unit_object_instance, FaceMode, Group, Groupoid, Quiver,
};
use weakhopf::corep::{bar_product, unit_isomorphisms, Comodule};
use weakhopf::qtg::{
    bop_b_algebra, bop_b_identification, check_algebra_isomorphism, compare_with_qtg, gamma, gamma_hat_associativity, gamma_hat_monoidal,
    group_qtg, transport_algebra, Bicomodule, BicomoduleAlgebra, Qtg,
};
use weakhopf::structures::{check_comodule_frobenius, roundtrip_report, ComoduleFrobenius, Formulaic};
use weakhopf::wba::{check_weak_bialgebra, check_weak_hopf};
use weakhopf::{CheckOptions, CheckReport, Status};
use weakhopf_cli::{parse_file, run_suite, Suite};

type Outcome = Result<String, String>;

fn opts() -> CheckOptions {
    CheckOptions::default()
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn passed(what: &str, r: &CheckReport) -> Result<(), String> {
    match r.first_failure() {
        None => Ok(()),
        Some(c) => Err(format!("{what}: `{}` failed", c.name)),
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn z2_qtg() -> Qtg {
    group_qtg(&Group::cyclic(2), &opts()).expect("ℤ₂ QTG builds")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let resolved = parse_file(&data("weak_bialgebras.toml"), &opts()).map_err(|e| e.to_string())?;
    let report = run_suite(Suite::Wba, &resolved, &[], "weak_bialgebras.toml", &opts(), false).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let want = [("face-A2", "5"), ("face-A3", "14"), ("kZ2", "2"), ("pair-groupoid", "4"), ("path-A3", "6")];
    ensure(report.structures.len() == want.len(), "unexpected structure count")?;
    for (s, (name, dim)) in report.structures.iter().zip(want) {
        ensure(s.structure == name, format!("expected {name}, found {}", s.structure))?;
        passed(name, &s.report)?;
        ensure(s.status == Status::Pass, format!("{name} is not a clean pass"))?;
        ensure(s.report.fact_value("dim") == Some(dim), format!("{name} has dim {:?}, expected {dim}", s.report.fact_value("dim")))?;
    }
    ensure(elapsed < Duration::from_secs(5), format!("took {}", secs(elapsed)))?;
    Ok(format!("5 structures, dims 5/14/2/4/6, {}", secs(elapsed)))
}

fn criterion_2() -> Outcome {
    let pg = groupoid_algebra(&Groupoid::pair(2)).map_err(|e| e.to_string())?;
    passed("pair groupoid", &check_weak_hopf(&pg, &opts()))?;

    let start = Instant::now();
    let z2 = z2_qtg();
    passed("ℤ₂ QTG", &check_weak_hopf(z2.hopf(), &opts()))?;
    let t_z2 = start.elapsed();
    ensure(z2.wba().dim() == 8, "ℤ₂ QTG dimension")?;
    ensure(t_z2 < Duration::from_secs(5), format!("ℤ₂ QTG took {}", secs(t_z2)))?;

    let start = Instant::now();
    let s3 = group_qtg(&Group::symmetric3(), &opts()).map_err(|e| e.to_string())?;
    let t_s3 = start.elapsed();
    ensure(s3.wba().dim() == 216, "S₃ QTG dimension")?;
    passed("S₃ QTG", s3.report())?;
    let iv = s3.report().get("delta-multiplicative").ok_or("S₃ report lacks delta-multiplicative")?;
    ensure(iv.total == 216u64.pow(2) && !iv.sampled, "Δ-multiplicativity was not exhaustive")?;
    let triple = s3.report().get("counit-weak-mult-left").ok_or("S₃ report lacks counit-weak-mult-left")?;
    ensure(triple.total == 216u64.pow(3) && !triple.sampled, "the triple loop was not exhaustive")?;
    ensure(t_s3 < Duration::from_secs(60), format!("S₃ construction and checks took {}", secs(t_s3)))?;
    Ok(format!("pair groupoid, ℤ₂ QTG (dim 8, {}), S₃ QTG (dim 216, {} for all checks)", secs(t_z2), secs(t_s3)))
}

fn criterion_3() -> Outcome {
    let g = Groupoid::pair(2);
    passed("pair groupoid", &groupoid_closed_form_report(&g, &groupoid_algebra(&g).map_err(|e| e.to_string())?))?;
    for (name, q) in [("𝔥(A₂)", Quiver::linear(2)), ("𝔥(A₃)", Quiver::linear(3))] {
        let f = face_algebra(&q, FaceMode::Full).map_err(|e| e.to_string())?;
        let r = f.closed_form_report();
        passed(name, &r)?;
        ensure(r.get("eps-s-closed-form").is_some() && r.get("eps-t-closed-form").is_some(), "missing face closed forms")?;
    }
    for q in [z2_qtg(), group_qtg(&Group::symmetric3(), &opts()).map_err(|e| e.to_string())?] {
        for name in ["eps-s-closed-form", "eps-t-closed-form", "hs-closed-form", "ht-closed-form"] {
            let c = q.report().get(name).ok_or(format!("QTG report lacks {name}"))?;
            ensure(c.passed(), format!("QTG dim {}: {name} failed", q.wba().dim()))?;
        }
        ensure(q.report().get("eps-s-closed-form").unwrap().total == q.wba().dim() as u64, "closed form not checked on every triple")?;
    }
    Ok("pair groupoid, 𝔥(A₂), 𝔥(A₃), both QTGs on every basis triple".into())
}

fn criterion_4() -> Outcome {
    let f = face_algebra(&Quiver::linear(2), FaceMode::Full).map_err(|e| e.to_string())?;
    let m = kq_comodule(&f).map_err(|e| e.to_string())?;
    let b = bar_product(&m, &m, &opts()).map_err(|e| e.to_string())?;
    ensure(b.dim() == 4, format!("dim 𝕜Q ⊗̄ 𝕜Q = {}", b.dim()))?;
    passed("bar product", b.report())?;
    for name in ["projector-idempotent", "eta-iota-identity", "equals-hs-cotensor"] {
        ensure(b.report().get(name).is_some_and(|c| c.passed()), format!("{name} missing or failed"))?;
    }
    let p = b.projector();
    let fixed: Vec<String> = (0..9).filter(|&k| p.col(k).entries() == [(k, weakhopf::Q::one())]).map(|k| p.codomain().label(k)).collect();
    ensure(fixed == ["e1 ⊗ e1", "e1 ⊗ a", "e2 ⊗ e2", "a ⊗ e2"], format!("fixed basis tensors {fixed:?}"))?;
    let u = unit_isomorphisms(&m, &opts()).map_err(|e| e.to_string())?;
    passed("unit isomorphisms", &u.report)?;

    let h = groupoid_algebra(&Groupoid::from_group(&Group::cyclic(2))).map_err(|e| e.to_string())?;
    ensure(h.wba().is_bialgebra(), "𝕜ℤ₂ is not recognized as a bialgebra")?;
    ensure(h.wba().hs().dim() == 1, "Hs ≠ span{1} for 𝕜ℤ₂")?;
    let r = Arc::new(Comodule::regular(h.wba()));
    let bb = bar_product(&r, &r, &opts()).map_err(|e| e.to_string())?;
    ensure(bb.dim() == 4, "⊗̄ ≠ ⊗ for 𝕜ℤ₂")?;
    passed("bialgebra bar product", bb.report())?;
    Ok("dim 4 with basis e1⊗e1, e1⊗a, e2⊗e2, a⊗e2; ⊗̄ = ⊗ over 𝕜ℤ₂".into())
}

fn roundtrip(name: &str, x: Formulaic) -> Result<(), String> {
    let r = roundtrip_report(&x, &opts()).map_err(|e| format!("{name}: {e}"))?;
    for c in ["g-after-f", "f-after-g"] {
        ensure(r.status_of(c) == Some(Status::Pass), format!("{name}: {c} failed"))?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    let f = face_algebra(&Quiver::linear(2), FaceMode::Full).map_err(|e| e.to_string())?;
    let (a, c) = kq_comodule_instances(&f).map_err(|e| e.to_string())?;
    roundtrip("𝕜Q comodule algebra", Formulaic::Alg(a))?;
    roundtrip("path comodule coalgebra", Formulaic::Coalg(c))?;
    let hs = unit_object_instance(f.wba()).map_err(|e| e.to_string())?;
    passed("Hs Frobenius", &check_comodule_frobenius(&hs, &opts()))?;
    roundtrip("Hs unit-object Frobenius", Formulaic::Frob(hs))?;
    let mat = matrix_frobenius_example(&opts()).map_err(|e| e.to_string())?;
    passed("Mat₂ Frobenius", &check_comodule_frobenius(&mat.frobenius, &opts()))?;
    roundtrip("Mat₂ Frobenius", Formulaic::Frob(mat.frobenius))?;
    Ok("FG = Id and GF = Id on all four instances".into())
}

fn kq_frobenius(q: &Quiver) -> Result<ComoduleFrobenius, String> {
    let f = face_algebra(q, FaceMode::Full).map_err(|e| e.to_string())?;
    let (a, c) = kq_comodule_instances(&f).map_err(|e| e.to_string())?;
    ComoduleFrobenius::new(a.comodule.clone(), a.alg, c.coalg).map_err(|e| e.to_string())
}

fn criterion_6() -> Outcome {
    let arrowless = Quiver::new(["1", "2"], &[]).map_err(|e| e.to_string())?;
    let r = check_comodule_frobenius(&kq_frobenius(&arrowless)?, &opts());
    ensure(r.status_of("frobenius-eq") == Some(Status::Pass), "arrowless quiver: frobenius-eq did not pass")?;
    let r = check_comodule_frobenius(&kq_frobenius(&Quiver::linear(2))?, &opts());
    let c = r.get("frobenius-eq").ok_or("A₂: no frobenius-eq check")?;
    ensure(c.status == Status::Fail, "A₂: frobenius-eq did not fail")?;
    let w = c.witnesses.first().ok_or("A₂: failure without witness")?;
    Ok(format!("arrowless passes; A₂ fails at ({})", w.labels.join(", ")))
}

fn criterion_7() -> Outcome {
    let q = z2_qtg();
    let l = Bicomodule::regular(q.l());
    let assoc = gamma_hat_associativity(&q, &l, &l, &l, &opts()).map_err(|e| e.to_string())?;
    passed("associativity (L, L, L)", &assoc)?;
    ensure(assoc.status_of("associativity") == Some(Status::Pass), "no associativity check")?;
    let m = gamma_hat_monoidal(&q, &l, &l, &opts()).map_err(|e| e.to_string())?;
    passed("monoidal (L, L)", &m.report)?;
    for c in ["unit-left", "unit-right"] {
        ensure(m.report.status_of(c) == Some(Status::Pass), format!("{c} did not pass"))?;
    }

    let t = transport_algebra(&q, &BicomoduleAlgebra::regular(q.l()), &opts()).map_err(|e| e.to_string())?;
    passed("transport of L", &t.report)?;
    passed("transport of L against (H, m_H, u_H)", &compare_with_qtg(&q, &t.algebra, &opts()))?;

    let k = BicomoduleAlgebra::unit(q.l());
    let t = transport_algebra(&q, &k, &opts()).map_err(|e| e.to_string())?;
    passed("transport of 𝕜", &t.report)?;
    let bb = bop_b_algebra(&q).map_err(|e| e.to_string())?;
    let gk = gamma(&q, Bicomodule::unit(q.l()).right()).map_err(|e| e.to_string())?;
    let phi = bop_b_identification(&q, &bb, &gk).map_err(|e| e.to_string())?;
    passed("B^op ⊗ B ≅ transport of 𝕜", &check_algebra_isomorphism(&phi, &bb, &t.algebra.alg, &opts()))?;
    Ok("associator and unitors exact; transport(L) = H; transport(𝕜) ≅ B^op⊗B".into())
}

fn criterion_8() -> Outcome {
    let required = [
        "assoc",
        "unit-left",
        "unit-right",
        "coassoc",
        "counit-left",
        "counit-right",
        "delta-multiplicative",
        "counit-weak-mult-left",
        "counit-weak-mult-right",
        "unit-weak-comult-left",
        "unit-weak-comult-right",
        "antipode-i",
        "antipode-ii",
        "antipode-iii",
    ];
    for q in [z2_qtg(), group_qtg(&Group::symmetric3(), &opts()).map_err(|e| e.to_string())?] {
        for name in required {
            let c = q.report().get(name).ok_or(format!("dim {}: report lacks {name}", q.wba().dim()))?;
            ensure(c.status == Status::Pass, format!("dim {}: {name} is {}", q.wba().dim(), c.status.as_str()))?;
        }
        passed("QTG", q.report())?;
        passed("QTG weak bialgebra recheck", &check_weak_bialgebra(q.wba(), &opts()))?;
    }
    Ok(format!("{} axioms PASS on dims 8 and 216", required.len()))
}

fn criterion_9() -> Outcome {
    let q = z2_qtg();
    passed("ℤ₂ QTG", q.report())?;
    let d = q.report().discrepancies.iter().find(|d| d.name == "counit-constant-one").ok_or("no counit-constant-one discrepancy")?;
    let w = d.witness.as_ref().ok_or("discrepancy without witness")?;
    let eps = q.wba().coalg().eps_basis(w.indices[0]);
    ensure(!eps.is_one(), format!("witness {} has ε = 1", w.labels.join(",")))?;
    Ok(format!("all axioms pass; ε = 1 contradicted at {} where ε = {eps}", w.labels.join(",")))
}

fn cli(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_weakhopf")).args(args).output().map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

fn criterion_10() -> Outcome {
    let runs = [
        ("wba", "weak_bialgebras.toml", "text"),
        ("qtg-full", "qtg_z2.toml", "json"),
        ("gamma-monoidal", "qtg_z2.toml", "json"),
        ("internal-roundtrip", "kq_a2.toml", "text"),
    ];
    for (suite, file, format) in runs {
        let path = data(file);
        let base = cli(&[suite, &path, "--format", format])?;
        for threads in ["1", "8"] {
            for _ in 0..2 {
                let again = cli(&[suite, &path, "--format", format, "--threads", threads])?;
                ensure(again == base, format!("{suite} on {file} differs with {threads} threads"))?;
            }
        }
    }
    Ok("4 suites × (default, 1, 8 threads) × 2 runs byte-identical".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("weak bialgebra suite on five examples", criterion_1),
        ("weak Hopf suite on pair groupoid and both QTGs", criterion_2),
        ("counital closed forms", criterion_3),
        ("bar product over 𝔥(A₂) and over a bialgebra", criterion_4),
        ("category-isomorphism round trips", criterion_5),
        ("Frobenius dichotomy for 𝕜Q", criterion_6),
        ("Γ̂ coherence and transported algebras for ℤ₂", criterion_7),
        ("QTG construction report", criterion_8),
        ("counit discrepancy under the derived trace form", criterion_9),
        ("deterministic reports across runs and thread counts", criterion_10),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let t = secs(start.elapsed());
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {title} [{detail}] ({t})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {title} [{why}] ({t})", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
