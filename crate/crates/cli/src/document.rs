//! The JSON spec document. Rationals are `"p/q"` strings; integers are
//! accepted too and written back as strings.

use orbispace_linalg::{parse_rat, rat_to_string, Rat, RatMatrix};
use orbispace_repmodel::{Caps, Generator, MonomialElement, RepSpec, DEFAULT_GROUP_ORDER_CAP, DEFAULT_IV_TRIALS};
use orbispace_weightset::WeightMultiset;
use serde::{Deserialize, Serialize};

pub const VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatText {
    Text(String),
    Int(i64),
}

impl RatText {
    fn parse(&self, at: &str) -> Result<Rat, DocError> {
        match self {
            RatText::Text(s) => parse_rat(s).map_err(|_| DocError::schema(format!("{at}: bad rational {s:?}"))),
            RatText::Int(k) => Ok(Rat::from_integer((*k).into())),
        }
    }

    fn from_rat(x: &Rat) -> Self {
        RatText::Text(rat_to_string(x))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub perm: Vec<usize>,
    pub conj: Vec<bool>,
    pub rot: Vec<RatText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v0_block: Option<Vec<Vec<RatText>>>,
}

fn default_cap() -> usize {
    DEFAULT_GROUP_ORDER_CAP
}

fn default_trials() -> usize {
    DEFAULT_IV_TRIALS
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsDoc {
    #[serde(default = "default_cap")]
    pub group_order_cap: usize,
    #[serde(default = "default_trials")]
    pub iv_trials: usize,
    #[serde(default)]
    pub seed: u64,
}

impl Default for CapsDoc {
    fn default() -> Self {
        CapsDoc { group_order_cap: default_cap(), iv_trials: default_trials(), seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub version: String,
    pub m: usize,
    pub weights: Vec<Vec<i64>>,
    #[serde(default)]
    pub v0_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v0_gram: Option<Vec<Vec<RatText>>>,
    #[serde(default)]
    pub generators: Vec<GeneratorDoc>,
    #[serde(default)]
    pub caps: CapsDoc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocError {
    pub kind: &'static str,
    pub message: String,
}

impl DocError {
    fn schema(message: String) -> Self {
        DocError { kind: "Schema", message }
    }
}

fn matrix(rows: &[Vec<RatText>], n: usize, at: &str) -> Result<RatMatrix, DocError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(DocError::schema(format!("{at}: expected a {n}x{n} matrix")));
    }
    let data = rows
        .iter()
        .enumerate()
        .map(|(i, r)| r.iter().enumerate().map(|(j, x)| x.parse(&format!("{at}[{i}][{j}]"))).collect())
        .collect::<Result<Vec<Vec<Rat>>, _>>()?;
    Ok(RatMatrix::from_rows(data, n))
}

fn matrix_doc(m: &RatMatrix) -> Vec<Vec<RatText>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| RatText::from_rat(&m[(i, j)])).collect()).collect()
}

/// Parses JSON text; errors end with `at line L column C`.
pub fn parse_document(text: &str) -> Result<SpecDocument, DocError> {
    serde_json::from_str(text).map_err(|e| {
        let kind = if e.is_syntax() || e.is_eof() { "MalformedJson" } else { "Schema" };
        DocError { kind, message: e.to_string() }
    })
}

impl SpecDocument {
    pub fn to_spec(&self) -> Result<RepSpec, DocError> {
        let weights = WeightMultiset::new(self.m, self.weights.clone())
            .map_err(|e| DocError::schema(format!("weights: {e}")))?;
        let n = self.weights.len();
        let v0_gram = match &self.v0_gram {
            Some(g) => matrix(g, self.v0_dim, "v0_gram")?,
            None => RatMatrix::identity(self.v0_dim),
        };
        let mut generators = Vec::with_capacity(self.generators.len());
        for (k, g) in self.generators.iter().enumerate() {
            let at = format!("generators[{k}]");
            if g.perm.len() != n || g.conj.len() != n || g.rot.len() != n {
                return Err(DocError::schema(format!("{at}: perm, conj and rot need {n} entries")));
            }
            let rot = g.rot.iter().enumerate().map(|(j, r)| r.parse(&format!("{at}.rot[{j}]"))).collect::<Result<Vec<_>, _>>()?;
            let v0_block = match &g.v0_block {
                Some(b) => matrix(b, self.v0_dim, &format!("{at}.v0_block"))?,
                None => RatMatrix::identity(self.v0_dim),
            };
            generators.push(Generator {
                name: g.name.clone(),
                element: MonomialElement::new(g.perm.clone(), g.conj.clone(), rot, v0_block),
            });
        }
        let caps = Caps { group_order_cap: self.caps.group_order_cap, iv_trials: self.caps.iv_trials, seed: self.caps.seed };
        Ok(RepSpec { weights, v0_dim: self.v0_dim, v0_gram, generators, caps })
    }

    /// Canonical document of a spec: every optional field written out.
    pub fn from_spec(spec: &RepSpec) -> Self {
        SpecDocument {
            version: VERSION.to_string(),
            m: spec.m(),
            weights: spec.weights.items().to_vec(),
            v0_dim: spec.v0_dim,
            v0_gram: Some(matrix_doc(&spec.v0_gram)),
            generators: spec
                .generators
                .iter()
                .map(|g| GeneratorDoc {
                    name: g.name.clone(),
                    perm: g.element.perm.clone(),
                    conj: g.element.conj.clone(),
                    rot: g.element.rot.iter().map(RatText::from_rat).collect(),
                    v0_block: Some(matrix_doc(&g.element.v0_block)),
                })
                .collect(),
            caps: CapsDoc {
                group_order_cap: spec.caps.group_order_cap,
                iv_trials: spec.caps.iv_trials,
                seed: spec.caps.seed,
            },
        }
    }
}
