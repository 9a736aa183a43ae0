//! JSON report schema. Rationals are strings `p/q` (or `p`), indices 1-based.

use serde::{Deserialize, Serialize};
use totneg::criteria::{Violation, ViolationKind};
use totneg::hull::{HullWitness, SignWord};
use totneg::lcp::LcpSolutionSet;
use totneg::text::{format_rational, parse_rational};
use totneg::{ExactMatrix, IndexSet, Rational};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// Subcommand name.
    pub command: String,
    /// Full argument list of the invocation.
    pub argv: Vec<String>,
    pub input_digest: String,
    pub class: Option<String>,
    pub order: Option<usize>,
    pub methods: Vec<MethodReport>,
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lcp: Option<LcpReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodReport {
    pub name: String,
    /// `None` when a one-sided check was inconclusive.
    pub holds: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcome: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hull: Option<HullReport>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub kind: String,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// The failing hull member; `witness` of the enclosing method refers to it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HullReport {
    pub label: String,
    pub z: String,
    pub zt: String,
    pub member: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LcpReport {
    /// `finite` or `infinite`.
    pub kind: String,
    pub solutions: Vec<Vec<String>>,
    pub families: Vec<FamilyReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub support: Vec<usize>,
    pub vertices: Vec<Vec<String>>,
    pub rays: Vec<Vec<String>>,
}

pub fn vector_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

pub fn parse_vector(v: &[String]) -> Result<Vec<Rational>, String> {
    v.iter()
        .map(|s| parse_rational(s).ok_or_else(|| format!("invalid rational `{s}`")))
        .collect()
}

impl WitnessReport {
    pub fn from_violation(v: &Violation<Rational>) -> Self {
        WitnessReport {
            kind: v.kind.name().to_string(),
            rows: v.rows.as_slice().to_vec(),
            cols: v.cols.as_slice().to_vec(),
            vector: v.vector.as_deref().map(vector_strings),
            detail: v.detail.as_ref().map(format_rational),
        }
    }

    /// Rebuilds the violation for a matrix of shape `shape`.
    pub fn to_violation(&self, shape: (usize, usize)) -> Result<Violation<Rational>, String> {
        let kind = ViolationKind::from_name(&self.kind).ok_or_else(|| format!("unknown witness kind `{}`", self.kind))?;
        let rows = IndexSet::new(self.rows.clone(), shape.0).map_err(|e| e.to_string())?;
        let cols = IndexSet::new(self.cols.clone(), shape.1).map_err(|e| e.to_string())?;
        let vector = self.vector.as_deref().map(parse_vector).transpose()?;
        let detail = match &self.detail {
            Some(s) => Some(parse_rational(s).ok_or_else(|| format!("invalid rational `{s}`"))?),
            None => None,
        };
        Ok(Violation { kind, rows, cols, vector, detail })
    }
}

pub fn matrix_strings(a: &ExactMatrix) -> Vec<Vec<String>> {
    (0..a.rows()).map(|i| vector_strings(a.row(i))).collect()
}

impl HullReport {
    pub fn from_witness(w: &HullWitness<Rational>) -> Self {
        HullReport {
            label: w.label.clone(),
            z: w.z.to_string(),
            zt: w.zt.to_string(),
            member: matrix_strings(&w.member),
        }
    }

    pub fn member(&self) -> Result<ExactMatrix, String> {
        let rows = self.member.iter().map(|r| parse_vector(r)).collect::<Result<Vec<_>, _>>()?;
        ExactMatrix::from_rows(rows).map_err(|e| e.to_string())
    }

    pub fn words(&self) -> Result<(SignWord, SignWord), String> {
        let parse = |s: &str| SignWord::parse(s).ok_or_else(|| format!("invalid sign word `{s}`"));
        Ok((parse(&self.z)?, parse(&self.zt)?))
    }
}

impl LcpReport {
    pub fn from_solutions(sols: &LcpSolutionSet<Rational>) -> Self {
        LcpReport {
            kind: match sols.kind() {
                totneg::lcp::SolutionKind::Finite => "finite",
                totneg::lcp::SolutionKind::Infinite => "infinite",
            }
            .to_string(),
            solutions: sols.solutions.iter().map(|s| vector_strings(s)).collect(),
            families: sols
                .families
                .iter()
                .map(|f| FamilyReport {
                    support: f.support.as_slice().to_vec(),
                    vertices: f.vertices.iter().map(|v| vector_strings(v)).collect(),
                    rays: f.rays.iter().map(|v| vector_strings(v)).collect(),
                })
                .collect(),
        }
    }
}
