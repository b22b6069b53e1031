use std::collections::BTreeMap;
use std::process::Command;

use proptest::prelude::*;

use weakhopf::qtg::check_hopf;
use weakhopf::structures::Formulaic;
use weakhopf::{CheckOptions, Status};
use weakhopf_cli::{dump, emit_report, parse_file, parse_str, run_suite, CliError, Format, Item, Location, Resolved, Suite};

fn opts() -> CheckOptions {
    CheckOptions::default()
}

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_weakhopf")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

const A2: &str = r#"
[quiver.A2]
vertices = ["1", "2"]
arrows = [["a", "1", "2"]]
"#;

#[test]
fn quiver_file() {
    let r = parse_str(A2, &opts()).unwrap();
    let Some(Item::Quiver(q)) = r.get("A2") else { panic!("no quiver") };
    assert_eq!(q.vertices().len(), 2);
    assert_eq!(q.arrows().len(), 1);
}

/// Permutations of {0,1,2} as image tuples, composed right to left.
fn s3_oracle() -> (Vec<String>, Vec<Vec<usize>>) {
    let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let name = |p: &[usize; 3]| format!("p{}{}{}", p[0] + 1, p[1] + 1, p[2] + 1);
    let table = perms
        .iter()
        .map(|a| perms.iter().map(|b| perms.iter().position(|c| (0..3).all(|i| c[i] == a[b[i]])).unwrap()).collect())
        .collect();
    (perms.iter().map(name).collect(), table)
}

#[test]
fn group_file_with_full_table() {
    let (names, table) = s3_oracle();
    let rows: Vec<String> = table
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|&k| format!("\"{}\"", names[k])).collect::<Vec<_>>().join(", ")))
        .collect();
    let src = format!(
        "[group.S3]\nelements = [{}]\ntable = [{}]\n\n[hopf.kS3]\ngroup = \"S3\"\n",
        names.iter().map(|n| format!("\"{n}\"")).collect::<Vec<_>>().join(", "),
        rows.join(", ")
    );
    let r = parse_str(&src, &opts()).unwrap();
    let Some(Item::Group(g)) = r.get("S3") else { panic!("no group") };
    for a in 0..6 {
        for b in 0..6 {
            assert_eq!(g.mul(a, b), table[a][b]);
        }
    }
    let Some(Item::Hopf(l)) = r.get("kS3") else { panic!("no hopf") };
    assert_eq!(l.dim(), 6);
    assert!(check_hopf(l, &opts()).all_passed());

    // a table that is not a group is rejected
    let bad = src.replace("table = [[\"p123\"", "table = [[\"p213\"");
    assert!(matches!(parse_str(&bad, &opts()), Err(CliError::Parse { .. })));
}

#[test]
fn zero_denominator_is_a_parse_error() {
    let src = "[separable.B]\nbasis = [\"e\"]\nmult = [[\"e\", \"e\", \"e\", \"1\"]]\nunit = [[\"e\", \"1/0\"]]\nidempotent = [[\"e\", \"e\", 1]]\n";
    match parse_str(src, &opts()) {
        Err(CliError::Parse { location: Some(Location { line, column }), message }) => {
            assert_eq!((line, column), (4, 15));
            assert!(message.contains("1/0"), "{message}");
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
    assert!(matches!(parse_str("[quiver.A\nvertices = 1", &opts()), Err(CliError::Parse { .. })));
}

#[test]
fn resolution_errors() {
    let dangling = format!("{A2}\n[wba.F]\nface = \"A3\"\n");
    match parse_str(&dangling, &opts()) {
        Err(CliError::Resolution { location: Some(l), message }) => {
            assert_eq!(l.line, 7);
            assert!(message.contains("A3"));
        }
        other => panic!("{other:?}"),
    }
    let duplicate = format!("{A2}\n[wba.A2]\npath = \"A2\"\n");
    assert!(matches!(parse_str(&duplicate, &opts()), Err(CliError::Resolution { .. })));
    let wrong_kind = format!("{A2}\n[wba.F]\nface = \"A2\"\n\n[wba.G]\nface = \"F\"\n");
    assert!(matches!(parse_str(&wrong_kind, &opts()), Err(CliError::Resolution { .. })));
    let unknown_label = "[group.Z2]\nelements = [\"e\", \"g\"]\ntable = [[\"e\", \"g\"], [\"g\", \"h\"]]\n";
    assert!(matches!(parse_str(unknown_label, &opts()), Err(CliError::Resolution { .. })));
}

const BROKEN_HOPF: &str = r#"
[hopf.L]
basis = ["e", "g"]
mult = [["e", "e", "e", 1], ["e", "g", "g", 1], ["g", "e", "g", 1], ["g", "g", "g", 1]]
unit = [["e", 1]]
comult = [["e", "e", "e", 1], ["g", "g", "g", 1]]
counit = [["e", 1], ["g", 1]]
antipode = [["e", "e", 1], ["g", "g", 1]]
"#;

#[test]
fn construction_invariants_are_enforced_unless_unchecked() {
    // g·g = g makes the antipode axiom fail at g
    match parse_str(BROKEN_HOPF, &opts()) {
        Err(CliError::Validation { structure, check, .. }) => {
            assert_eq!(structure, "L");
            assert!(check.starts_with("antipode") || check.starts_with("hopf"), "{check}");
        }
        other => panic!("{other:?}"),
    }
    let unchecked = BROKEN_HOPF.replace("[hopf.L]", "[hopf.L]\nunchecked = true") + "\n[wba.H]\nhopf = \"L\"\n";
    let r = parse_str(&unchecked, &opts()).unwrap();
    let rep = run_suite(Suite::Wha, &r, &[], "inline", &opts(), false).unwrap();
    assert_eq!(rep.status, Status::Fail);
    assert_eq!(rep.exit_code(), 1);
}

#[test]
fn suite_mismatch() {
    let r = parse_file(&data("kq_a2.toml"), &opts()).unwrap();
    assert!(matches!(run_suite(Suite::Wha, &r, &[], "kq", &opts(), false), Err(CliError::SuiteMismatch { .. })));
    assert!(matches!(run_suite(Suite::Wba, &r, &["kQ".to_string()], "kq", &opts(), false), Err(CliError::SuiteMismatch { .. })));
    assert!(matches!(run_suite(Suite::Comodule, &r, &["missing".to_string()], "kq", &opts(), false), Err(CliError::SuiteMismatch { .. })));
}

#[test]
fn qtg_full_on_z2() {
    let r = parse_file(&data("qtg_z2.toml"), &opts()).unwrap();
    let rep = run_suite(Suite::QtgFull, &r, &[], "qtg_z2.toml", &opts(), false).unwrap();
    assert_eq!(rep.status, Status::Pass);
    assert_eq!(rep.structures[0].report.fact_value("dim"), Some("8"));
    assert!(rep.structures[0].report.discrepancies.iter().any(|d| d.name == "counit-constant-one"));
}

#[test]
fn comodule_frobenius_on_a2_fails_with_witness() {
    let r = parse_file(&data("kq_a2.toml"), &opts()).unwrap();
    let rep = run_suite(Suite::ComoduleFrobenius, &r, &[], "kq_a2.toml", &opts(), false).unwrap();
    let c = rep.structures[0].report.get("frobenius-eq").unwrap();
    assert_eq!(c.status, Status::Fail);
    assert_eq!(c.witnesses[0].labels, ["e1", "a"]);

    let text = emit_report(&rep, Format::Text);
    assert!(text.contains("CHECK frobenius-eq: FAIL\n"));
    assert!(text.contains("  witness (0, 2): e1 | a\n    lhs: e1 ⊗ a:1\n    rhs: e1 ⊗ a:1, a ⊗ e2:1\n"), "{text}");
    assert!(text.ends_with("SUMMARY: FAIL\n"));
}

#[test]
fn internal_roundtrip_on_kq_algebra() {
    let r = parse_file(&data("kq_a2.toml"), &opts()).unwrap();
    let rep = run_suite(Suite::InternalRoundtrip, &r, &["kQ-algebra".into(), "kQ-coalgebra".into()], "kq_a2.toml", &opts(), false).unwrap();
    assert_eq!(rep.status, Status::Pass);
    for s in &rep.structures {
        assert_eq!(s.report.status_of("g-after-f"), Some(Status::Pass));
        assert_eq!(s.report.status_of("f-after-g"), Some(Status::Pass));
    }
}

#[test]
fn all_pass_report_has_no_fail_lines() {
    let (code, out, _) = bin(&["wba", &data("weak_bialgebras.toml")]);
    assert_eq!(code, 0);
    assert!(!out.contains(": FAIL"));
    assert!(!out.contains(": SKIP"));
    assert!(out.lines().filter(|l| l.starts_with("CHECK ")).all(|l| l.ends_with(": PASS")));
}

#[test]
fn truncated_run_reports_skips_with_its_own_exit_code() {
    let (code, out, _) = bin(&["wba", &data("truncated.toml")]);
    assert_eq!(code, 2);
    assert!(out.contains("CHECK assoc: SKIP\n"));
    assert!(out.ends_with("SUMMARY: SKIP\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["comodule-frobenius", &data("kq_a2.toml")]).0, 1);
    assert_eq!(bin(&["comodule-frobenius", &data("arrowless.toml")]).0, 0);
    assert_eq!(bin(&["wba", "/nonexistent.toml"]).0, 3);
    assert_eq!(bin(&["no-such-suite", "x"]).0, 3);
    assert_eq!(bin(&["wba"]).0, 3);
    let (code, _, err) = bin(&["wha", &data("kq_a2.toml")]);
    assert_eq!(code, 3);
    assert!(err.contains("suite `wha`"), "{err}");
    assert_eq!(bin(&["--help"]).0, 0);
}

#[test]
fn json_report_schema() {
    let (code, out, _) = bin(&["comodule-frobenius", &data("kq_a2.toml"), "--format", "json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["tool"], "weakhopf");
    assert_eq!(v["suite"], "comodule-frobenius");
    assert_eq!(v["status"], "fail");
    assert!(v["version"].is_string());
    let s = &v["structures"][0];
    assert_eq!(s["structure"], "kQ-frobenius");
    assert!(s.get("timing_ms").is_none());
    let check = s["report"]["checks"].as_array().unwrap().iter().find(|c| c["name"] == "frobenius-eq").unwrap();
    assert_eq!(check["status"], "fail");
    let w = &check["witnesses"][0];
    assert_eq!(w["indices"], serde_json::json!([0, 2]));
    assert_eq!(w["lhs"], serde_json::json!([["e1 ⊗ a", "1"]]));

    let (_, timed, _) = bin(&["comodule-frobenius", &data("kq_a2.toml"), "--format", "json", "--timing"]);
    let v: serde_json::Value = serde_json::from_str(&timed).unwrap();
    assert!(v["structures"][0]["timing_ms"].is_number());
}

#[test]
fn output_path() {
    let path = std::env::temp_dir().join(format!("weakhopf-report-{}.txt", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, _) = bin(&["comodule", &data("kq_a2.toml"), "--output", p]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("SUITE comodule"));
    std::fs::remove_file(path).unwrap();
}

/// Every structure tensor of a resolved file by name, rendered for comparison.
fn tensors(r: &Resolved) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    for (name, item) in &r.items {
        let t = match item {
            Item::Wba(w) => {
                let s = w.hopf.as_ref().map(|h| format!("{:?}", h.antipode())).unwrap_or_default();
                format!("{:?}{:?}{:?}{:?}{s}", w.wba.alg().mult(), w.wba.alg().unit(), w.wba.coalg().comult(), w.wba.coalg().counit())
            }
            Item::Hopf(h) => format!("{:?}{:?}{:?}", h.wba().alg().mult(), h.wba().coalg().comult(), h.antipode()),
            Item::Separable(b) => format!("{:?}{:?}{:?}", b.alg().mult(), b.idempotent(), b.omega()),
            Item::Action(a) => format!("{:?}", a.action.matrix()),
            Item::Qtg(q) => format!("{:?}{:?}{:?}", q.qtg.wba().alg().mult(), q.qtg.wba().coalg().comult(), q.qtg.hopf().antipode()),
            Item::Comodule(m) => format!("{:?}", m.coaction()),
            Item::Bicomodule(x) => format!("{:?}{:?}", x.left(), x.right().coaction()),
            Item::Bundle(f) => match f {
                Formulaic::Alg(a) => format!("{:?}{:?}{:?}", a.comodule.coaction(), a.alg.mult(), a.alg.unit()),
                Formulaic::Coalg(c) => format!("{:?}{:?}{:?}", c.comodule.coaction(), c.coalg.comult(), c.coalg.counit()),
                Formulaic::Frob(x) => format!("{:?}{:?}{:?}", x.comodule().coaction(), x.algebra.alg.mult(), x.coalgebra.coalg.comult()),
            },
            Item::Quiver(q) => format!("{q:?}"),
            Item::Group(g) => format!("{g:?}"),
            Item::Groupoid(g) => {
                let n = g.morphisms().len();
                let table: Vec<_> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| g.compose(a, b)).collect();
                format!("{:?}{:?}{table:?}", g.objects(), g.morphisms())
            }
            Item::Gamma(g) => format!("{g:?}"),
        };
        out.insert(name.clone(), t);
    }
    out
}

#[test]
fn dump_round_trip_reproduces_tensors() {
    for file in ["weak_bialgebras.toml", "kq_a2.toml", "arrowless.toml", "truncated.toml", "qtg_z2.toml", "inversion.toml"] {
        let r = parse_file(&data(file), &opts()).unwrap();
        let text = dump(&r);
        let r2 = parse_str(&text, &opts()).unwrap_or_else(|e| panic!("{file}: {e}"));
        let (a, b) = (tensors(&r), tensors(&r2));
        for (name, t) in &a {
            assert_eq!(Some(t), b.get(name), "{file}: {name}");
        }
        assert_eq!(dump(&r2), text, "{file}: dump is not a fixed point");
    }
}

#[test]
fn explicit_qtg_parts_match_the_group_preset() {
    let r = parse_file(&data("inversion.toml"), &opts()).unwrap();
    let rep = run_suite(Suite::QtgFull, &r, &[], "inversion.toml", &opts(), false).unwrap();
    assert_eq!(rep.status, Status::Pass);
    assert_eq!(rep.structures[0].report.fact_value("dim"), Some("18"));
    let rep = run_suite(Suite::GammaMonoidal, &r, &[], "inversion.toml", &opts(), false).unwrap();
    assert_eq!(rep.status, Status::Pass);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn generated_quiver_files_round_trip(n in 1usize..4, arrows in proptest::collection::vec((0usize..3, 0usize..3), 0..3)) {
        let vertices: Vec<String> = (1..=n).map(|v| format!("\"v{v}\"")).collect();
        let arrows: Vec<String> = arrows
            .iter()
            .enumerate()
            .filter(|(_, (s, t))| s < t && *t < n)
            .map(|(k, (s, t))| format!("[\"x{k}\", \"v{}\", \"v{}\"]", s + 1, t + 1))
            .collect();
        let src = format!(
            "[quiver.Q]\nvertices = [{}]\narrows = [{}]\n\n[wba.F]\nface = \"Q\"\n\n[wba.P]\npath = \"Q\"\n\n[comodule.M]\nh = \"F\"\npreset = \"kq\"\n\n[bundle.A]\nkind = \"comodule-algebra\"\npreset = \"kq\"\nh = \"F\"\n",
            vertices.join(", "),
            arrows.join(", ")
        );
        let r = parse_str(&src, &opts()).unwrap();
        let r2 = parse_str(&dump(&r), &opts()).unwrap();
        let (a, b) = (tensors(&r), tensors(&r2));
        for (name, t) in &a {
            prop_assert_eq!(Some(t), b.get(name));
        }
        let rep = run_suite(Suite::Wba, &r2, &[], "generated", &opts(), false).unwrap();
        prop_assert_eq!(rep.status, Status::Pass);
    }
}
