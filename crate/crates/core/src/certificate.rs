//! Hypothesis-gated conclusions. A certificate carries a conclusion only when
//! every hypothesis it lists has passed; otherwise it is a refusal naming the
//! first hypothesis that failed or was never declared.

use crate::ambient::{Fact, Provenance};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Undeclared,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub status: Status,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Hypothesis {
    pub fn computed(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Hypothesis {
        Hypothesis {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            provenance: Provenance::Computed,
            detail: detail.into(),
        }
    }

    pub fn declared(name: impl Into<String>, value: Option<bool>, detail: impl Into<String>) -> Hypothesis {
        Hypothesis {
            name: name.into(),
            status: match value {
                Some(true) => Status::Pass,
                Some(false) => Status::Fail,
                None => Status::Undeclared,
            },
            provenance: Provenance::Declared,
            detail: detail.into(),
        }
    }

    pub fn from_fact(name: impl Into<String>, fact: Fact) -> Hypothesis {
        let mut h = Hypothesis::declared(name, fact.value, "");
        h.provenance = fact.provenance;
        h
    }

    /// A numeric hypothesis whose input may be missing.
    pub fn maybe(name: impl Into<String>, value: Option<(bool, Provenance)>, detail: impl Into<String>) -> Hypothesis {
        match value {
            Some((ok, provenance)) => Hypothesis {
                name: name.into(),
                status: if ok { Status::Pass } else { Status::Fail },
                provenance,
                detail: detail.into(),
            },
            None => Hypothesis::declared(name, None, detail),
        }
    }

    pub fn with_provenance(mut self, p: Provenance) -> Hypothesis {
        self.provenance = p;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Conclusion {
    WeaklyGeneralisedAlternating,
    AngledChunkDecomposition,
    Hyperbolic,
    Satellite { companion: String },
    Prime,
    NotTorusKnot,
    Quasifuchsian,
    NotAccidental,
    NotSemiFiber,
    GutsEuler { value: i64 },
    /// Lower bound `(v8 / 2) * half_octahedra`.
    VolumeAtLeast { half_octahedra: i64, value: f64 },
    SlopeLengths { meridian_at_most: String, longitude_at_most: String },
    FillingThreshold { q_above: f64 },
    FilledVolumeAtLeast { factor: f64, value: f64 },
    CombinatorialLength { quarter_pis: i64, value: f64 },
    HyperbolicFilling { description: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    /// Short name of the result applied.
    pub result: &'static str,
    /// Plain statement of what the result gives.
    pub statement: &'static str,
    hypotheses: Vec<Hypothesis>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conclusion: Option<Conclusion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    refusal: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn new(result: &'static str, statement: &'static str, hypotheses: Vec<Hypothesis>, conclusion: Conclusion) -> Certificate {
        let blocker = hypotheses.iter().find(|h| !h.passed());
        let refusal = blocker.map(|h| {
            let why = match h.status {
                Status::Undeclared => "not declared".to_string(),
                _ if h.detail.is_empty() => "fails".to_string(),
                _ => h.detail.clone(),
            };
            format!("{}: {}", h.name, why)
        });
        Certificate {
            result,
            statement,
            conclusion: if refusal.is_none() { Some(conclusion) } else { None },
            refusal,
            hypotheses,
            notes: Vec::new(),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Certificate {
        self.notes.push(note.into());
        self
    }

    pub fn conclusion(&self) -> Option<&Conclusion> {
        self.conclusion.as_ref()
    }

    pub fn granted(&self) -> bool {
        self.conclusion.is_some()
    }

    pub fn refusal(&self) -> Option<&str> {
        self.refusal.as_deref()
    }

    pub fn hypotheses(&self) -> &[Hypothesis] {
        &self.hypotheses
    }

    pub fn hypothesis(&self, name: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.name == name)
    }

    /// First hypothesis that did not pass.
    pub fn first_failure(&self) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| !h.passed())
    }
}
