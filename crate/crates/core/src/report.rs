//! Named check results with counterexample witnesses.

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::exact::{Shape, SparseTensor, SparseVec};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// No failures, but some tuples fell outside a graded truncation.
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

/// An input basis tuple on which the two sides of an identity differ.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub labels: Vec<String>,
    pub lhs: SparseTensor,
    pub rhs: SparseTensor,
}

impl Witness {
    pub fn new(indices: Vec<usize>, labels: Vec<String>, shape: &Shape, lhs: &SparseVec, rhs: &SparseVec) -> Self {
        Witness {
            indices,
            labels,
            lhs: SparseTensor::from_vec(shape, lhs),
            rhs: SparseTensor::from_vec(shape, rhs),
        }
    }
}

struct Terms<'a>(&'a SparseTensor);

impl Serialize for Terms<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms = self.0.terms();
        let mut seq = s.serialize_seq(Some(terms.len()))?;
        for (label, value) in terms {
            seq.serialize_element(&(label, value.to_string()))?;
        }
        seq.end()
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Witness", 4)?;
        st.serialize_field("indices", &self.indices)?;
        st.serialize_field("labels", &self.labels)?;
        st.serialize_field("lhs", &Terms(&self.lhs))?;
        st.serialize_field("rhs", &Terms(&self.rhs))?;
        st.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Number of input tuples in the exhaustive domain.
    pub total: u64,
    pub verified: u64,
    pub skipped: u64,
    pub failures: u64,
    pub sampled: bool,
    pub witnesses: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn from_counts(name: &str, total: u64, verified: u64, skipped: u64, failures: u64, sampled: bool, witnesses: Vec<Witness>) -> Self {
        let status = if failures > 0 {
            Status::Fail
        } else if skipped > 0 {
            Status::Skip
        } else {
            Status::Pass
        };
        Check {
            name: name.to_string(),
            status,
            total,
            verified,
            skipped,
            failures,
            sampled,
            witnesses,
            detail: None,
        }
    }

    /// A single yes/no condition.
    pub fn boolean(name: &str, ok: bool, witness: Option<Witness>) -> Self {
        Check::from_counts(name, 1, 1, 0, u64::from(!ok), false, witness.into_iter().collect())
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// A documented mismatch between a stated closed form and what the
/// structure maps compute. Recorded, never counted as a failure.
#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy {
    pub name: String,
    pub stated: String,
    pub computed: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub subject: String,
    pub checks: Vec<Check>,
    pub facts: Vec<(String, String)>,
    pub discrepancies: Vec<Discrepancy>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>) -> Self {
        CheckReport { subject: subject.into(), ..Default::default() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Records a fact, replacing any earlier value under the same key.
    pub fn fact(&mut self, key: impl Into<String>, value: impl ToString) {
        let (key, value) = (key.into(), value.to_string());
        match self.facts.iter_mut().find(|(k, _)| *k == key) {
            Some(slot) => slot.1 = value,
            None => self.facts.push((key, value)),
        }
    }

    pub fn discrepancy(&mut self, d: Discrepancy) {
        self.discrepancies.push(d);
    }

    /// Appends another report's contents, prefixing check and fact names.
    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        let name = |n: &str| if prefix.is_empty() { n.to_string() } else { format!("{prefix}/{n}") };
        for c in other.checks {
            let n = name(&c.name);
            self.checks.push(c.renamed(n));
        }
        for (k, v) in other.facts {
            self.fact(name(&k), v);
        }
        for mut d in other.discrepancies {
            d.name = name(&d.name);
            self.discrepancies.push(d);
        }
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn fact_value(&self, key: &str) -> Option<&str> {
        self.facts.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn status_of(&self, name: &str) -> Option<Status> {
        self.get(name).map(|c| c.status)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn overall(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Skip) {
            Status::Skip
        } else {
            Status::Pass
        }
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.failures().next()
    }
}
