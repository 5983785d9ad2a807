use orbispace_linalg::rat_to_string;
use orbispace_repmodel::MonomialElement;
use serde_json::{json, Value};

use crate::SampleVector;

/// Generator-style JSON for an element; rationals as `"p/q"` strings.
pub fn element_to_json(g: &MonomialElement) -> Value {
    let b = &g.v0_block;
    let block: Vec<Vec<String>> =
        (0..b.rows()).map(|i| (0..b.cols()).map(|j| rat_to_string(&b[(i, j)])).collect()).collect();
    json!({
        "perm": g.perm,
        "conj": g.conj,
        "rot": g.rot.iter().map(rat_to_string).collect::<Vec<_>>(),
        "v0_block": block,
    })
}

pub fn vector_to_json(v: &SampleVector) -> Value {
    json!({
        "modulus": v.modulus,
        "phase": v.phase.iter().map(rat_to_string).collect::<Vec<_>>(),
    })
}
