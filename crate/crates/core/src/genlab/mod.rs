//! Test corpora of TN, TNP and near-miss matrices, the cross-validation
//! harness and the orthant impossibility suite.

mod construct;
mod harness;

pub use construct::{
    generate_n_matrix, generate_near_miss, generate_random, generate_tn, generate_tn_corank_one,
    generate_tn_with_budget, generate_tnp, is_n_matrix, worked_example, DEFAULT_BUDGET,
};
pub use harness::{
    cross_validate, cross_validate_methods, cross_validation_weights, orthant_impossibility_suite, CrossReport, MethodRun,
    OrthantFailure, OrthantReport,
};

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use crate::criteria::SignClass;
use crate::error::{arg_err, Result};
use crate::minors::{minors_up_to, MinorRecord};
use crate::scalar::Scalar;
use crate::text::{digest_hex, format_matrix, format_rational};
use crate::{ExactMatrix, Rational};

/// Class a generator aims for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Tn(usize),
    Tnp(usize),
    NearMiss(usize),
    Random,
}

impl Target {
    pub fn order(self) -> Option<usize> {
        match self {
            Target::Tn(k) | Target::Tnp(k) | Target::NearMiss(k) => Some(k),
            Target::Random => None,
        }
    }

    /// The class to cross-validate against.
    pub fn class(self) -> SignClass {
        match self {
            Target::Tnp(_) => SignClass::TotallyNonPositive,
            _ => SignClass::TotallyNegative,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Tn(k) => write!(f, "TN_{k}"),
            Target::Tnp(k) => write!(f, "TNP_{k}"),
            Target::NearMiss(k) => write!(f, "near-miss_{k}"),
            Target::Random => f.write_str("random"),
        }
    }
}

/// Full minor enumeration of an emitted matrix up to its order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub order: usize,
    pub minors_checked: usize,
    pub max_minor: Rational,
    /// Minors that are not negative, in enumeration order.
    pub non_negative: Vec<MinorRecord<Rational>>,
    /// SHA-256 of the matrix text.
    pub digest: String,
}

impl Certificate {
    pub fn enumerate(a: &ExactMatrix, order: usize) -> Self {
        let mut minors_checked = 0;
        let mut max_minor: Option<Rational> = None;
        let mut non_negative = Vec::new();
        for rec in minors_up_to(a, order).expect("order within shape") {
            minors_checked += 1;
            if max_minor.as_ref().map_or(true, |m| rec.value > *m) {
                max_minor = Some(rec.value.clone());
            }
            if !rec.value.is_neg() {
                non_negative.push(rec);
            }
        }
        Certificate {
            order,
            minors_checked,
            max_minor: max_minor.expect("at least one entry"),
            non_negative,
            digest: digest_hex(&format_matrix(a)),
        }
    }

    /// Whether the enumeration confirms `target`.
    pub fn holds(&self, target: Target) -> bool {
        match target {
            Target::Tn(k) => k == self.order && self.non_negative.is_empty(),
            Target::Tnp(k) => k == self.order && !self.max_minor.is_pos(),
            Target::NearMiss(k) => k == self.order && self.non_negative.len() == 1,
            Target::Random => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedInstance {
    pub matrix: ExactMatrix,
    pub target: Target,
    pub seed: u64,
    /// Candidates drawn until this one was accepted.
    pub attempts: usize,
    pub certificate: Certificate,
}

impl GeneratedInstance {
    /// `key=value` lines for the metadata sidecar.
    pub fn metadata(&self) -> String {
        let (m, n) = self.matrix.shape();
        let mut out = format!(
            "class={}\norder={}\nshape={m}x{n}\nseed={}\nattempts={}\nminors_checked={}\nmax_minor={}\ndigest={}\n",
            self.target,
            self.certificate.order,
            self.seed,
            self.attempts,
            self.certificate.minors_checked,
            format_rational(&self.certificate.max_minor),
            self.certificate.digest,
        );
        if let Some(rec) = self.certificate.non_negative.first() {
            out.push_str(&format!(
                "failing_minor={:?}x{:?}={}\n",
                rec.rows.as_slice(),
                rec.cols.as_slice(),
                format_rational(&rec.value)
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    shape: (usize, usize),
    target: Target,
    count: usize,
    seed: u64,
}

impl CorpusSpec {
    pub fn new(shape: (usize, usize), target: Target, count: usize, seed: u64) -> Result<Self> {
        if shape.0 == 0 || shape.1 == 0 {
            return arg_err("shape must be positive");
        }
        if count == 0 {
            return arg_err("count must be at least 1");
        }
        if let Some(k) = target.order() {
            if k == 0 || k > shape.0.min(shape.1) {
                return arg_err(format!("order {k} does not fit shape {}x{}", shape.0, shape.1));
            }
        }
        Ok(CorpusSpec { shape, target, count, seed })
    }

    pub fn shape(&self) -> (usize, usize) {
        self.shape
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Instance `i` of a corpus uses seed `spec.seed + i`.
pub fn generate_instance(spec: &CorpusSpec, i: usize) -> Result<GeneratedInstance> {
    let seed = spec.seed.wrapping_add(i as u64);
    match spec.target {
        Target::Tn(k) => generate_tn(spec.shape, k, seed),
        Target::Tnp(k) => generate_tnp(spec.shape, k, seed),
        Target::NearMiss(k) => generate_near_miss(spec.shape, k, seed),
        Target::Random => generate_random(spec.shape, seed),
    }
}

pub fn generate_corpus(spec: &CorpusSpec) -> Result<Vec<GeneratedInstance>> {
    (0..spec.count).map(|i| generate_instance(spec, i)).collect()
}

/// Writes `<stem>.mat` and `<stem>.meta` into `dir`, returning the matrix path.
pub fn write_instance(dir: &Path, stem: &str, inst: &GeneratedInstance) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("{stem}.mat"));
    fs::write(&path, format_matrix(&inst.matrix))?;
    fs::write(dir.join(format!("{stem}.meta")), inst.metadata())?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_matrix;

    #[test]
    fn corpus_spec_validation() {
        assert!(CorpusSpec::new((0, 2), Target::Random, 1, 0).is_err());
        assert!(CorpusSpec::new((2, 2), Target::Random, 0, 0).is_err());
        assert!(CorpusSpec::new((2, 2), Target::Tn(3), 1, 0).is_err());
        assert!(CorpusSpec::new((2, 3), Target::Tnp(2), 1, 0).is_ok());
    }

    #[test]
    fn corpus_round_trips_through_files() {
        let spec = CorpusSpec::new((3, 3), Target::Tn(3), 3, 40).unwrap();
        let corpus = generate_corpus(&spec).unwrap();
        assert_eq!(corpus.len(), 3);
        let dir = std::env::temp_dir().join(format!("totneg-corpus-{}", std::process::id()));
        for (i, inst) in corpus.iter().enumerate() {
            let path = write_instance(&dir, &format!("tn-{i}"), inst).unwrap();
            let back = parse_matrix(&fs::read_to_string(&path).unwrap()).unwrap();
            assert_eq!(back, inst.matrix);
            let meta = fs::read_to_string(path.with_extension("meta")).unwrap();
            assert!(meta.contains("class=TN_3\n"));
            assert!(meta.contains(&format!("digest={}\n", inst.certificate.digest)));
            assert!(meta.contains(&format!("seed={}\n", 40 + i)));
        }
        fs::remove_dir_all(&dir).unwrap();
        assert_eq!(generate_corpus(&spec).unwrap(), corpus);
    }

    #[test]
    fn certificate_counts() {
        let n3 = ExactMatrix::from_i64(&[&[-1, -2, -4], &[-2, -3, -5], &[-4, -5, -6]]).unwrap();
        let c = Certificate::enumerate(&n3, 3);
        assert_eq!(c.minors_checked, 19);
        assert!(c.holds(Target::Tn(3)));
        assert!(c.holds(Target::Tnp(3)));
        let near = ExactMatrix::from_i64(&[&[-1, -2], &[-2, -5]]).unwrap();
        let c = Certificate::enumerate(&near, 2);
        assert!(c.holds(Target::NearMiss(2)));
        assert_eq!(c.max_minor, Rational::from_int(1));
    }
}
