use std::fmt;

use serde::ser::{Serialize, SerializeMap, SerializeStruct, Serializer};

use super::{IdentityVerdict, Verdict};
use crate::structures::Valuation;
use crate::trivalent::LawCheck;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryVerdict {
    Valid,
    Refuted,
    SampledClean,
}

impl EntryVerdict {
    pub fn name(self) -> &'static str {
        match self {
            EntryVerdict::Valid => "valid",
            EntryVerdict::Refuted => "refuted",
            EntryVerdict::SampledClean => "sampled-clean",
        }
    }
}

impl fmt::Display for EntryVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Variable assignment shown with a refutation, values already rendered.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Witness(pub Vec<(String, String)>);

impl From<&Valuation> for Witness {
    fn from(v: &Valuation) -> Self {
        Witness(v.iter().map(|(k, x)| (k.to_string(), x.to_string())).collect())
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(", "))
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

/// One checked law, axiom or schema within a suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteEntry {
    pub name: String,
    pub statement: Option<String>,
    pub verdict: EntryVerdict,
    pub witness: Option<Witness>,
    pub status: Option<String>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    /// Set for entries that are supposed to be refuted.
    pub expected: Option<EntryVerdict>,
    pub note: Option<String>,
}

impl SuiteEntry {
    pub fn new(name: impl Into<String>, verdict: EntryVerdict) -> Self {
        SuiteEntry {
            name: name.into(),
            statement: None,
            verdict,
            witness: None,
            status: None,
            samples: None,
            seed: None,
            expected: None,
            note: None,
        }
    }

    pub fn from_verdict(name: impl Into<String>, statement: impl Into<String>, v: &Verdict) -> Self {
        let mut e = match v {
            Verdict::Valid => SuiteEntry::new(name, EntryVerdict::Valid),
            Verdict::Refuted { witness, status } => {
                let mut e = SuiteEntry::new(name, EntryVerdict::Refuted);
                e.witness = Some(witness.into());
                e.status = Some(status.name().to_string());
                e
            }
            Verdict::SampledClean { samples, seed } => {
                let mut e = SuiteEntry::new(name, EntryVerdict::SampledClean);
                e.samples = Some(*samples);
                e.seed = Some(*seed);
                e
            }
        };
        e.statement = Some(statement.into());
        e
    }

    pub fn from_identity(
        name: impl Into<String>,
        statement: impl Into<String>,
        v: &IdentityVerdict,
    ) -> Self {
        let mut e = match v {
            IdentityVerdict::Valid => SuiteEntry::new(name, EntryVerdict::Valid),
            IdentityVerdict::Refuted { witness, lhs, rhs } => {
                let mut e = SuiteEntry::new(name, EntryVerdict::Refuted);
                e.witness = Some(witness.into());
                e.status = Some(format!("{lhs} / {rhs}"));
                e
            }
            IdentityVerdict::SampledClean { samples, seed } => {
                let mut e = SuiteEntry::new(name, EntryVerdict::SampledClean);
                e.samples = Some(*samples);
                e.seed = Some(*seed);
                e
            }
        };
        e.statement = Some(statement.into());
        e
    }

    pub fn from_law(c: &LawCheck) -> Self {
        let mut e = SuiteEntry::new(
            c.law.clone(),
            if c.holds { EntryVerdict::Valid } else { EntryVerdict::Refuted },
        );
        e.statement = Some(c.statement.clone());
        e.witness = c.counterexample.as_ref().map(|cx| {
            Witness(cx.iter().map(|(k, v)| (k.clone(), v.symbol().to_string())).collect())
        });
        if !c.expect_valid {
            e.expected = Some(EntryVerdict::Refuted);
        }
        e.note = Some(format!("{} assignments", c.assignments));
        e
    }

    pub fn expecting_refutation(mut self) -> Self {
        self.expected = Some(EntryVerdict::Refuted);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// The entry came out as it should.
    pub fn ok(&self) -> bool {
        match self.expected {
            Some(EntryVerdict::Refuted) => self.verdict == EntryVerdict::Refuted,
            _ => self.verdict != EntryVerdict::Refuted,
        }
    }
}

impl fmt::Display for SuiteEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", if self.ok() { "PASS" } else { "FAIL" }, self.name, self.verdict)?;
        if let Some(status) = &self.status {
            write!(f, " ({status})")?;
        }
        if let Some(w) = &self.witness {
            write!(f, " at {w}")?;
        }
        if let (Some(n), Some(seed)) = (self.samples, self.seed) {
            write!(f, " [{n} samples, seed {seed}]")?;
        }
        if self.expected == Some(EntryVerdict::Refuted) {
            f.write_str(" [expected refuted]")?;
        }
        if let Some(note) = &self.note {
            write!(f, " [{note}]")?;
        }
        Ok(())
    }
}

impl Serialize for SuiteEntry {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SuiteEntry", 9)?;
        st.serialize_field("name", &self.name)?;
        if let Some(x) = &self.statement {
            st.serialize_field("statement", x)?;
        }
        st.serialize_field("verdict", self.verdict.name())?;
        if let Some(x) = &self.witness {
            st.serialize_field("witness", x)?;
        }
        if let Some(x) = &self.status {
            st.serialize_field("status", x)?;
        }
        if let Some(x) = &self.samples {
            st.serialize_field("samples", x)?;
        }
        if let Some(x) = &self.seed {
            st.serialize_field("seed", x)?;
        }
        if let Some(x) = &self.expected {
            st.serialize_field("expected", x.name())?;
        }
        if let Some(x) = &self.note {
            st.serialize_field("note", x)?;
        }
        st.end()
    }
}

/// Results of running a named suite on one structure.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub structure: String,
    pub entries: Vec<SuiteEntry>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, structure: impl Into<String>) -> Self {
        SuiteReport { suite: suite.into(), structure: structure.into(), entries: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.entries.iter().all(SuiteEntry::ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteEntry> {
        self.entries.iter().filter(|e| !e.ok())
    }

    pub fn get(&self, name: &str) -> Option<&SuiteEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn push(&mut self, e: SuiteEntry) {
        self.entries.push(e);
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {} on {}", self.suite, self.structure)?;
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} entries, {} failed", self.entries.len(), failed)
    }
}

