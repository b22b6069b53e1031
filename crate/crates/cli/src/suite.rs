//! Named suites mapping declared structures to library checkers.

use std::time::Instant;

use clap::ValueEnum;
use serde::Serialize;

use weakhopf::corep::check_comodule;
use weakhopf::qtg::{gamma_hat_associativity, gamma_hat_monoidal};
use weakhopf::structures::{check_formulaic, roundtrip_report, Formulaic};
use weakhopf::wba::{check_weak_bialgebra, check_weak_hopf};
use weakhopf::{CheckOptions, CheckReport, Status};

use crate::error::{CliError, Result};
use crate::input::{Item, Resolved};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Wba,
    Wha,
    Comodule,
    ComoduleAlgebra,
    ComoduleCoalgebra,
    ComoduleFrobenius,
    InternalRoundtrip,
    QtgFull,
    GammaMonoidal,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Wba => "wba",
            Suite::Wha => "wha",
            Suite::Comodule => "comodule",
            Suite::ComoduleAlgebra => "comodule-algebra",
            Suite::ComoduleCoalgebra => "comodule-coalgebra",
            Suite::ComoduleFrobenius => "comodule-frobenius",
            Suite::InternalRoundtrip => "internal-roundtrip",
            Suite::QtgFull => "qtg-full",
            Suite::GammaMonoidal => "gamma-monoidal",
        }
    }

    fn expects(self) -> &'static str {
        match self {
            Suite::Wba => "a wba structure",
            Suite::Wha => "a wba structure with an antipode",
            Suite::Comodule => "a comodule structure",
            Suite::ComoduleAlgebra => "a bundle of kind comodule-algebra",
            Suite::ComoduleCoalgebra => "a bundle of kind comodule-coalgebra",
            Suite::ComoduleFrobenius => "a bundle of kind comodule-frobenius",
            Suite::InternalRoundtrip => "a bundle structure",
            Suite::QtgFull => "a qtg structure",
            Suite::GammaMonoidal => "a gamma structure",
        }
    }

    fn accepts(self, item: &Item) -> bool {
        match (self, item) {
            (Suite::Wba, Item::Wba(_)) => true,
            (Suite::Wha, Item::Wba(w)) => w.hopf.is_some(),
            (Suite::Comodule, Item::Comodule(_)) => true,
            (Suite::ComoduleAlgebra, Item::Bundle(Formulaic::Alg(_))) => true,
            (Suite::ComoduleCoalgebra, Item::Bundle(Formulaic::Coalg(_))) => true,
            (Suite::ComoduleFrobenius, Item::Bundle(Formulaic::Frob(_))) => true,
            (Suite::InternalRoundtrip, Item::Bundle(_)) => true,
            (Suite::QtgFull, Item::Qtg(_)) => true,
            (Suite::GammaMonoidal, Item::Gamma(_)) => true,
            _ => false,
        }
    }
}

/// The result of one suite on one structure.
#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub structure: String,
    pub kind: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    pub report: CheckReport,
}

/// The machine-readable report of a suite run.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub suite: Suite,
    pub input: String,
    pub status: Status,
    pub structures: Vec<StructureReport>,
}

impl SuiteReport {
    /// 0 all-pass, 1 any failure, 2 pass with skipped tuples.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Skip => 2,
        }
    }
}

pub fn combine(statuses: impl IntoIterator<Item = Status>) -> Status {
    let mut out = Status::Pass;
    for s in statuses {
        match s {
            Status::Fail => return Status::Fail,
            Status::Skip => out = Status::Skip,
            Status::Pass => {}
        }
    }
    out
}

/// The structures a suite runs on: the named ones, or every structure of
/// the expected kind when none are named.
pub fn select<'a>(suite: Suite, resolved: &'a Resolved, names: &'a [String]) -> Result<Vec<(&'a str, &'a Item)>> {
    let mismatch = |what: String| CliError::SuiteMismatch { suite: suite.name().to_string(), expected: what };
    if names.is_empty() {
        let all: Vec<_> = resolved.items.iter().filter(|(_, i)| suite.accepts(i)).map(|(n, i)| (n.as_str(), i)).collect();
        if all.is_empty() {
            return Err(mismatch(format!("{}; the input declares none", suite.expects())));
        }
        return Ok(all);
    }
    names
        .iter()
        .map(|n| match resolved.get(n) {
            Some(item) if suite.accepts(item) => Ok((n.as_str(), item)),
            Some(item) => Err(mismatch(format!("{}; `{n}` is a {}", suite.expects(), item.kind()))),
            None => Err(mismatch(format!("{}; `{n}` is not declared", suite.expects()))),
        })
        .collect()
}

fn run_one(suite: Suite, resolved: &Resolved, item: &Item, opts: &CheckOptions) -> Result<CheckReport> {
    Ok(match (suite, item) {
        (Suite::Wba, Item::Wba(w)) => {
            let mut r = check_weak_bialgebra(&w.wba, opts);
            if let Some(cf) = &w.closed_forms {
                r.absorb("closed-form", cf.clone());
            }
            r
        }
        (Suite::Wha, Item::Wba(w)) => check_weak_hopf(w.hopf.as_ref().expect("selected"), opts),
        (Suite::Comodule, Item::Comodule(m)) => check_comodule(m, opts),
        (Suite::InternalRoundtrip, Item::Bundle(f)) => roundtrip_report(f, opts)?,
        (_, Item::Bundle(f)) => check_formulaic(f, opts),
        (Suite::QtgFull, Item::Qtg(q)) => q.qtg.report().clone(),
        (Suite::GammaMonoidal, Item::Gamma(g)) => {
            let bic = |n: &str| match resolved.get(n) {
                Some(Item::Bicomodule(b)) => b.clone(),
                _ => unreachable!("checked at resolution"),
            };
            let q = match resolved.get(&g.qtg) {
                Some(Item::Qtg(q)) => q.qtg.clone(),
                _ => unreachable!("checked at resolution"),
            };
            let mut r = gamma_hat_monoidal(&q, &bic(&g.x), &bic(&g.y), opts)?.report;
            if let Some(z) = &g.z {
                r.absorb("associativity", gamma_hat_associativity(&q, &bic(&g.x), &bic(&g.y), &bic(z), opts)?);
            }
            r
        }
        _ => unreachable!("selected by Suite::accepts"),
    })
}

/// Runs a suite on the selected structures inside the configured pool.
pub fn run_suite(suite: Suite, resolved: &Resolved, names: &[String], input: &str, opts: &CheckOptions, timing: bool) -> Result<SuiteReport> {
    let targets = select(suite, resolved, names)?;
    let structures = targets
        .into_iter()
        .map(|(name, item)| {
            let start = Instant::now();
            let report = opts.install(|| run_one(suite, resolved, item, opts))?;
            let elapsed = start.elapsed().as_secs_f64() * 1e3;
            Ok(StructureReport {
                structure: name.to_string(),
                kind: item.kind(),
                status: report.overall(),
                timing_ms: timing.then_some(elapsed),
                report,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport {
        tool: "weakhopf",
        version: weakhopf::VERSION,
        suite,
        input: input.to_string(),
        status: combine(structures.iter().map(|s| s.status)),
        structures,
    })
}
