//! Certified verdicts on `V/G`: is it a topological manifold, and can
//! `(V + R^d)/G` be smooth for some `d`?
//!
//! Every definite answer carries the statements it rests on. Anything the
//! available criteria do not settle is reported as unknown.

mod analyze;
mod dim1;
mod factor;
mod finite;
mod json;
mod main_conditions;
mod stabilizer;

pub use analyze::analyze;
pub use dim1::{check_dim1, normalize_signs, reflection_subgroup, ReflectionSubgroupReport};
pub use factor::{factor_spec, partition_blocks};
pub use finite::check_finite_case;
pub use json::{element_to_json, vector_to_json};
pub use main_conditions::{check_main_conditions, IvStatus, MainConditions};
pub use stabilizer::{sample_condition_iv, stabilizer, Counterexample, SampleVector};

use orbispace_reducer::ReduceError;
use orbispace_repmodel::RepError;
use orbispace_weightset::WeightError;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Topological {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Smooth {
    No,
    Open,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Tag {
    Prop1st,
    Cor2dim,
    Cor1dim,
    Mich,
    Submain,
    MainNecessity,
    MainSufficiency,
    Mainp,
    AdGE,
    Abel,
    Main1,
    GrHi,
    HG3,
    GiHr,
    TorExample,
    ProductRule,
    Reduction,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertStep {
    #[serde(rename = "theorem")]
    pub tag: Tag,
    pub detail: String,
    pub witness: Option<serde_json::Value>,
}

impl CertStep {
    pub fn new(tag: Tag, detail: impl Into<String>) -> Self {
        CertStep { tag, detail: detail.into(), witness: None }
    }

    pub fn with_witness(mut self, w: serde_json::Value) -> Self {
        self.witness = Some(w);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub topological: Topological,
    #[serde(rename = "smooth_for_all_d")]
    pub smooth: Smooth,
    pub certificate: Vec<CertStep>,
}

impl Verdict {
    pub fn new(topological: Topological, smooth: Smooth, certificate: Vec<CertStep>) -> Self {
        Verdict { topological, smooth, certificate }
    }

    pub fn unknown(certificate: Vec<CertStep>) -> Self {
        Verdict::new(Topological::Unknown, Smooth::Unknown, certificate)
    }

    pub fn cites(&self, tag: Tag) -> bool {
        self.certificate.iter().any(|s| s.tag == tag)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("verdict serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalyzeError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Weight(#[from] WeightError),
}
