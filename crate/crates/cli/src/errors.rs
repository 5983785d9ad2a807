use orbispace_reducer::ReduceError;
use orbispace_repmodel::RepError;
use orbispace_verdict::AnalyzeError;
use orbispace_weightset::WeightError;

use crate::DocError;

pub const INVALID: i32 = 1;
pub const CAP: i32 = 2;
pub const INTERNAL: i32 = 3;

/// An error with its exit code and a stable kind name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub kind: String,
    pub message: String,
}

impl Failure {
    pub fn input(kind: &str, message: String) -> Self {
        Failure { code: INVALID, kind: kind.to_string(), message }
    }

    pub fn cap(message: String) -> Self {
        Failure { code: CAP, kind: "CapExceeded".to_string(), message }
    }

    pub fn internal(message: String) -> Self {
        Failure { code: INTERNAL, kind: "InternalContradiction".to_string(), message }
    }
}

impl From<DocError> for Failure {
    fn from(e: DocError) -> Self {
        Failure::input(e.kind, e.message)
    }
}

impl From<WeightError> for Failure {
    fn from(e: WeightError) -> Self {
        let message = e.to_string();
        match e {
            WeightError::CapExceeded { .. } => Failure::cap(message),
            WeightError::InternalContradiction(_) => Failure::internal(message),
            WeightError::BadLength { .. } => Failure::input("BadLength", message),
            WeightError::Not1Stable => Failure::input("Not1Stable", message),
            WeightError::NotAClass => Failure::input("NotAClass", message),
        }
    }
}

impl From<RepError> for Failure {
    fn from(e: RepError) -> Self {
        let message = e.to_string();
        let kind = match e {
            RepError::CapExceeded { .. } | RepError::TooManyLinearCycles(_) => return Failure::cap(message),
            RepError::InternalContradiction(_) => return Failure::internal(message),
            RepError::BadShape(_) => "BadShape",
            RepError::ZeroWeight(_) => "ZeroWeight",
            RepError::WeightsDontSpan => "WeightsDontSpan",
            RepError::InconsistentAd | RepError::InconsistentAdAt(_) => "InconsistentAd",
            RepError::NotOrthogonal(_) => "NotOrthogonal",
            RepError::GramNotPositiveDefinite => "GramNotPositiveDefinite",
        };
        Failure::input(kind, message)
    }
}

impl From<ReduceError> for Failure {
    fn from(e: ReduceError) -> Self {
        let message = e.to_string();
        match e {
            ReduceError::Weight(w) => w.into(),
            ReduceError::Rep(r) => r.into(),
            ReduceError::InternalContradiction(_) => Failure::internal(message),
            ReduceError::Not1Stable => Failure::input("Not1Stable", message),
            ReduceError::NoReducibleClass => Failure::input("NoReducibleClass", message),
            ReduceError::MixedConjugationOnClass { .. } => Failure::input("MixedConjugationOnClass", message),
        }
    }
}

impl From<AnalyzeError> for Failure {
    fn from(e: AnalyzeError) -> Self {
        match e {
            AnalyzeError::Rep(r) => r.into(),
            AnalyzeError::Reduce(r) => r.into(),
            AnalyzeError::Weight(w) => w.into(),
        }
    }
}
