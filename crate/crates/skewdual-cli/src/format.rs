//! JSON records written by the command-line tool.

use serde::Serialize;
use skewdual::codes::{Central, CodeParameters, CodeSpace, SkewCode};
use skewdual::geometry::Subspace;
use skewdual::Elem;

pub const SCHEMA: &str = "skewdual/1";

#[derive(Serialize)]
pub struct Params {
    pub q: u64,
    pub r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<Elem>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field_modulus: Option<Vec<Elem>>,
    pub length: usize,
}

impl From<&CodeParameters> for Params {
    fn from(p: &CodeParameters) -> Params {
        let (k, modulus) = match &p.central {
            Central::Cyclic(k) => (Some(*k), None),
            Central::Explicit(m) => (None, Some(m.clone())),
        };
        Params {
            q: p.q,
            r: p.r,
            k,
            modulus,
            field_modulus: p.field_modulus.clone(),
            length: p.length(),
        }
    }
}

#[derive(Serialize)]
pub struct Header<'a> {
    pub schema: &'static str,
    pub command: &'a str,
    pub params: Params,
}

#[derive(Serialize)]
pub struct CodeRecord {
    pub generator: Vec<Elem>,
    pub dim: usize,
    pub selfdual: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<Elem>>>,
}

impl CodeRecord {
    pub fn new(space: &CodeSpace, code: &SkewCode, with_matrix: bool) -> CodeRecord {
        CodeRecord {
            generator: code.generator().to_vec(),
            dim: code.dim(),
            selfdual: space.is_selfdual(code),
            matrix: with_matrix.then(|| space.generator_matrix(code)),
        }
    }
}

#[derive(Serialize)]
pub struct Exists {
    pub exists: bool,
    pub separable: bool,
    pub reason: String,
}

#[derive(Serialize)]
pub struct Count {
    /// Decimal string, since counts overflow 64 bits quickly.
    pub count: String,
}

#[derive(Serialize)]
pub struct Verify {
    pub generator: Vec<Elem>,
    pub dim: usize,
    pub selforthogonal: bool,
    pub selfdual: bool,
}

#[derive(Serialize)]
pub struct Summary {
    pub raw: u64,
    pub yielded: u64,
}

#[derive(Serialize)]
pub struct OracleOut {
    pub scanned: u64,
    pub ideals: usize,
    pub selforthogonal: usize,
    pub selfdual: usize,
    /// RREF matrices of the selfdual codes.
    pub witnesses: Vec<Vec<Vec<Elem>>>,
}

pub fn rref(s: &Subspace) -> Vec<Vec<Elem>> {
    s.rows().clone()
}
