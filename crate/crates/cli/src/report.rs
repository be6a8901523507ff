//! Versioned report schema shared by the text and JSON outputs.

use ordclosure::BigInt;
use ordclosure::linalg::Lattice;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub input: InputEcho,
    pub disc: DiscReport,
    pub dual_quotient_divisors: Vec<String>,
    pub primes: Vec<PrimeEntry>,
    pub closure: Option<LatticeJson>,
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub kind: String,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscReport {
    pub value: String,
    pub factors: Vec<PrimePower>,
    pub unresolved: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: String,
    pub e: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEntry {
    pub p: String,
    pub tame: String,
    pub exps_per_ideal: Vec<Vec<u32>>,
    pub anisotropy: String,
    pub method: String,
    pub certified: bool,
    pub index: String,
    pub closure_basis: LatticeJson,
}

/// `(1/den) * rows`, rows in Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub den: String,
    pub rows: Vec<Vec<String>>,
}

impl From<&Lattice> for LatticeJson {
    fn from(l: &Lattice) -> Self {
        LatticeJson {
            den: l.den().to_string(),
            rows: l
                .basis()
                .row_vecs()
                .iter()
                .map(|r| r.iter().map(BigInt::to_string).collect())
                .collect(),
        }
    }
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn is_factorization_complete(&self) -> bool {
        self.disc.unresolved == "1"
    }
}
