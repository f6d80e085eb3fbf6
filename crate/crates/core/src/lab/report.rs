use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::atlas::isomorphism;
use crate::conditions::{verify_violation, P3};
use crate::error::{Error, Result};
use crate::graph::{circulant, parse_graph6, to_graph6, Graph};
use crate::kb::biclique_graph;
use crate::twins::twin_reduce;

use super::cycle_shape;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    ProvedYes,
    ProvedNo,
    Unknown,
}

/// Evidence attached to a definite status. Graphs are stored as graph6 so a
/// report can be re-checked without the run that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// `KB(preimage) ≅ graph`.
    Preimage { graph: String, preimage: String },
    /// `p3` is an induced P3 of `graph` in no diamond or gem.
    Violation { graph: String, p3: P3 },
    /// `witnesses[q]` certifies `graph - q` for every vertex `q`.
    EveryRemovalViolates { graph: String, witnesses: Vec<P3> },
    /// `KB(host) ≅ KB(C_k)` and `Tw(host)` is an induced `C_k` with at most
    /// one pendant per cycle vertex, or (when `shape_ok` is false) is not.
    CycleKb {
        host: String,
        k: usize,
        shape_ok: bool,
    },
}

fn g6(s: &str) -> Result<Graph> {
    parse_graph6(s)
}

impl Certificate {
    pub fn preimage(graph: &Graph, preimage: &Graph) -> Certificate {
        Certificate::Preimage {
            graph: to_graph6(graph),
            preimage: to_graph6(preimage),
        }
    }

    pub fn violation(graph: &Graph, p3: P3) -> Certificate {
        Certificate::Violation {
            graph: to_graph6(graph),
            p3,
        }
    }

    /// Recompute the certified fact from scratch.
    pub fn verify(&self) -> Result<bool> {
        match self {
            Certificate::Preimage { graph, preimage } => {
                let (g, h) = (g6(graph)?, g6(preimage)?);
                if !h.is_connected() || h.n() < 2 {
                    return Ok(false);
                }
                Ok(isomorphism(&biclique_graph(&h)?.graph, &g)?.is_some())
            }
            Certificate::Violation { graph, p3 } => Ok(verify_violation(&g6(graph)?, *p3)),
            Certificate::EveryRemovalViolates { graph, witnesses } => {
                let g = g6(graph)?;
                if witnesses.len() != g.n() {
                    return Ok(false);
                }
                for (q, p) in witnesses.iter().enumerate() {
                    if !verify_violation(&g.remove_vertex(q)?.0, *p) {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Certificate::CycleKb { host, k, shape_ok } => {
                let h = g6(host)?;
                let kb = biclique_graph(&h)?.graph;
                let target = circulant(*k, &[1, 2])?;
                Ok(isomorphism(&kb, &target)?.is_some()
                    && cycle_shape(&twin_reduce(&h).graph, *k) == *shape_ok)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LabItem {
    /// graph6 of the graph the item is about.
    pub subject: String,
    pub kind: String,
    pub status: Status,
    pub certificate: Option<Certificate>,
}

impl LabItem {
    pub fn new(
        subject: &Graph,
        kind: &str,
        status: Status,
        certificate: Option<Certificate>,
    ) -> Self {
        LabItem {
            subject: to_graph6(subject),
            kind: kind.into(),
            status,
            certificate,
        }
    }
}

/// One claim per report. Everything except `wall_time_ms` is a pure function
/// of the claim and its parameters.
#[derive(Clone, Debug, Serialize)]
pub struct LabReport {
    pub schema_version: u32,
    pub claim: String,
    pub parameters: BTreeMap<String, Value>,
    pub counts: BTreeMap<String, usize>,
    /// graph6 of graphs singled out by the claim.
    pub exceptional: Vec<String>,
    pub findings: Vec<Value>,
    pub items: Vec<LabItem>,
    pub notes: Vec<String>,
    pub wall_time_ms: u64,
}

impl LabReport {
    pub fn new(claim: &str) -> Self {
        LabReport {
            schema_version: SCHEMA_VERSION,
            claim: claim.into(),
            parameters: BTreeMap::new(),
            counts: BTreeMap::new(),
            exceptional: Vec::new(),
            findings: Vec::new(),
            items: Vec::new(),
            notes: Vec::new(),
            wall_time_ms: 0,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.into(), value.into());
        self
    }

    pub fn count(&self, key: &str) -> usize {
        self.counts.get(key).copied().unwrap_or(0)
    }

    /// Tally item statuses into `counts`.
    pub fn tally_items(&mut self) {
        for (key, status) in [
            ("proved_yes", Status::ProvedYes),
            ("proved_no", Status::ProvedNo),
            ("unknown", Status::Unknown),
        ] {
            let c = self.items.iter().filter(|i| i.status == status).count();
            self.counts.insert(key.into(), c);
        }
        self.counts.insert("items".into(), self.items.len());
    }

    /// Definite statuses all carry a certificate and every certificate
    /// re-verifies.
    pub fn certificates_hold(&self) -> Result<bool> {
        for item in &self.items {
            match (&item.status, &item.certificate) {
                (Status::Unknown, None) => {}
                (Status::Unknown, Some(_)) => return Ok(false),
                (_, None) => return Ok(false),
                (_, Some(c)) => {
                    if !c.verify()? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    pub(crate) fn ensure_certificates(self) -> Result<Self> {
        if self.certificates_hold()? {
            Ok(self)
        } else {
            Err(Error::VerificationFailed(format!(
                "a certificate in {} does not re-verify",
                self.claim
            )))
        }
    }

    /// JSON with the timing field zeroed, for reproducibility comparisons.
    pub fn deterministic_json(&self) -> String {
        let mut copy = self.clone();
        copy.wall_time_ms = 0;
        serde_json::to_string_pretty(&copy).expect("reports serialize")
    }
}
