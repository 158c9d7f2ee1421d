//! Structured output. Every value is exact: integers and rationals travel as
//! decimal strings, dyadic values as `k/2^e`.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub command: String,
    pub tower: String,
    #[serde(flatten)]
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    Tower {
        generators: Vec<String>,
        moduli: Vec<String>,
        caps: Vec<CapEntry>,
    },
    Dyadic {
        lower: String,
        tail: String,
        exact: bool,
    },
    Element {
        residues: Vec<String>,
        moduli: Vec<String>,
    },
    Certificate {
        levels: Vec<CertificateLevel>,
        delta: Vec<String>,
    },
    Boolean {
        value: bool,
        exact: bool,
    },
    Generator {
        value: String,
        exact: bool,
    },
    Rational {
        value: String,
        exact: bool,
    },
    Count {
        modulus: String,
        count: String,
    },
    Ratios {
        levels: Vec<RatioLevel>,
        limit: String,
        exact: bool,
    },
    Dichotomy {
        branch: String,
        lambda: Option<Vec<String>>,
        sigma: Option<Vec<String>>,
    },
    Refinement {
        coarse: String,
        map: Vec<LevelPair>,
    },
    Error {
        error: String,
        message: String,
        level: Option<usize>,
        prime: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapEntry {
    pub prime: String,
    pub cap: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateLevel {
    pub n: usize,
    pub modulus: String,
    pub d: String,
    pub u: String,
    pub v: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioLevel {
    pub n: usize,
    pub modulus: String,
    pub count: String,
    pub ratio: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelPair {
    pub k: usize,
    pub n: usize,
}
