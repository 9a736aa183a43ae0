//! Decision procedures and falsifiers for total negativity (TN) and total
//! non-positivity (TNP) of order `k`.
//!
//! Every procedure returns a [`Verdict`]; a failing verdict always carries a
//! [`Violation`] that [`verify_violation`] can re-check from the matrix alone.

mod minor;
mod nonpositive;
pub(crate) mod snr;
mod vd;
mod verify;

pub use minor::{check_by_contiguous_minors, check_by_minor_definition};
pub use nonpositive::{
    check_tnp_snr, check_tnp_snr_capped, check_tnp_vd, check_tnp_vd_order, vd_check_nonpositive,
    TnpSnrMode, TnpVdMode,
};
pub use snr::{check_tn_snr_all_vectors, check_tn_snr_single_vector, sign_non_reversal, SnrMode};
pub use vd::{check_tn_vd_single_vector, check_tn_vd_single_vector_order, vd_check, VdOutcome};
pub use verify::{verify_lcp_variant_witness, verify_violation};

use std::fmt;

use crate::error::{arg_err, Result};
use crate::matrix::{IndexSet, Matrix};
use crate::scalar::{Scalar, Sign};

/// Largest `min(m, n)` for which sweeps over all square submatrices run.
pub const SWEEP_DIM_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignClass {
    TotallyNegative,
    TotallyNonPositive,
}

impl SignClass {
    /// Whether a minor value is allowed by the class.
    pub fn admits<T: Scalar>(self, minor: &T) -> bool {
        match self {
            SignClass::TotallyNegative => minor.is_neg(),
            SignClass::TotallyNonPositive => !minor.is_pos(),
        }
    }

    pub fn violation_kind(self) -> ViolationKind {
        match self {
            SignClass::TotallyNegative => ViolationKind::NonNegativeMinor,
            SignClass::TotallyNonPositive => ViolationKind::PositiveMinor,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            SignClass::TotallyNegative => "tn",
            SignClass::TotallyNonPositive => "tnp",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassQuery {
    pub class: SignClass,
    pub order: usize,
}

impl ClassQuery {
    pub fn tn(order: usize) -> Self {
        ClassQuery { class: SignClass::TotallyNegative, order }
    }

    pub fn tnp(order: usize) -> Self {
        ClassQuery { class: SignClass::TotallyNonPositive, order }
    }
}

/// Which characterization produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    MinorDefinition,
    ContiguousMinors,
    SnrSingleVector,
    SnrAllVectors,
    VdSingleVector,
    TnpSnrSingleVector,
    TnpSnrAllVectors,
    TnpVdSingleVector,
    TnpVdAllVectors,
    LcpSingleVector,
    LcpSingleVectorVariant,
    LcpPatterns,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::MinorDefinition => "minors",
            Method::ContiguousMinors => "contiguous",
            Method::SnrSingleVector => "snr",
            Method::SnrAllVectors => "snr-all",
            Method::VdSingleVector => "vd",
            Method::TnpSnrSingleVector => "tnp-snr",
            Method::TnpSnrAllVectors => "tnp-snr-all",
            Method::TnpVdSingleVector => "tnp-vd",
            Method::TnpVdAllVectors => "tnp-vd-all",
            Method::LcpSingleVector => "lcp",
            Method::LcpSingleVectorVariant => "lcp-variant",
            Method::LcpPatterns => "lcp-patterns",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// A minor that is `>= 0` (TN class).
    NonNegativeMinor,
    /// A minor that is `> 0` (TNP class).
    PositiveMinor,
    /// `vector` is reversed by the submatrix.
    SignReversal,
    /// The sign-change count grows from `vector` to its image.
    VariationIncrease,
    /// Counts tie but the end signs disagree.
    EqualitySignClause,
    /// The LCP at the test vector `vector` has an unexpected solution set.
    LcpSolutionSet,
    /// For `q = vector > 0` the LCP has solutions with patterns `(+, 0, +, ...)`
    /// and `(0, +, 0, ...)` at once.
    ForbiddenPatternPair,
}

impl ViolationKind {
    pub fn name(self) -> &'static str {
        match self {
            ViolationKind::NonNegativeMinor => "non-negative-minor",
            ViolationKind::PositiveMinor => "positive-minor",
            ViolationKind::SignReversal => "sign-reversal",
            ViolationKind::VariationIncrease => "variation-increase",
            ViolationKind::EqualitySignClause => "equality-sign-clause",
            ViolationKind::LcpSolutionSet => "lcp-solution-set",
            ViolationKind::ForbiddenPatternPair => "forbidden-pattern-pair",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            ViolationKind::NonNegativeMinor,
            ViolationKind::PositiveMinor,
            ViolationKind::SignReversal,
            ViolationKind::VariationIncrease,
            ViolationKind::EqualitySignClause,
            ViolationKind::LcpSolutionSet,
            ViolationKind::ForbiddenPatternPair,
        ]
        .into_iter()
        .find(|k| k.name() == name)
    }
}

/// Re-checkable evidence that a matrix is outside the queried class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation<T> {
    pub kind: ViolationKind,
    pub rows: IndexSet,
    pub cols: IndexSet,
    pub vector: Option<Vec<T>>,
    pub detail: Option<T>,
}

impl<T> Violation<T> {
    pub fn minor(kind: ViolationKind, rows: IndexSet, cols: IndexSet, value: T) -> Self {
        Violation { kind, rows, cols, vector: None, detail: Some(value) }
    }

    pub fn with_vector(kind: ViolationKind, rows: IndexSet, cols: IndexSet, x: Vec<T>) -> Self {
        Violation { kind, rows, cols, vector: Some(x), detail: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict<T> {
    pub holds: bool,
    pub method: Method,
    pub witness: Option<Violation<T>>,
}

impl<T> Verdict<T> {
    pub fn pass(method: Method) -> Self {
        Verdict { holds: true, method, witness: None }
    }

    pub fn fail(method: Method, witness: Violation<T>) -> Self {
        Verdict { holds: false, method, witness: Some(witness) }
    }
}

/// Test coefficients `global_sign * (a_1, -a_2, a_3, ...)` with `a_i >= 0`.
///
/// Magnitudes repeat cyclically when a longer vector is needed, so one choice
/// serves every submatrix size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaChoice<T> {
    magnitudes: Vec<T>,
    global_sign: Sign,
}

impl<T: Scalar> AlphaChoice<T> {
    pub fn new(magnitudes: Vec<T>, global_sign: Sign) -> Result<Self> {
        if magnitudes.is_empty() {
            return arg_err("alpha needs at least one magnitude");
        }
        if magnitudes.iter().any(|m| m.is_neg()) {
            return arg_err("alpha magnitudes must be non-negative");
        }
        if magnitudes.iter().all(|m| m.is_zero()) {
            return arg_err("alpha magnitudes must not all vanish");
        }
        Ok(AlphaChoice { magnitudes, global_sign })
    }

    /// All-ones magnitudes with a positive leading sign.
    pub fn ones() -> Self {
        AlphaChoice { magnitudes: vec![T::one()], global_sign: Sign::Plus }
    }

    /// Reads a signed vector `(c_1, ..., c_r)` whose nonzero entries alternate
    /// as `s, -s, s, ...`.
    pub fn from_signed(coeffs: &[T]) -> Result<Self> {
        let lead = coeffs
            .iter()
            .enumerate()
            .find_map(|(i, c)| Sign::of(c).map(|s| s * Sign::alternating(i + 1)));
        let Some(global_sign) = lead else {
            return arg_err("alpha must be nonzero");
        };
        let mut mags = Vec::with_capacity(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            let pattern = (global_sign * Sign::alternating(i + 1)).to_scalar::<T>();
            let m = c.clone() * pattern;
            if m.is_neg() {
                return arg_err(format!("alpha coefficient {} breaks the alternating pattern", i + 1));
            }
            mags.push(m);
        }
        AlphaChoice::new(mags, global_sign)
    }

    pub fn magnitudes(&self) -> &[T] {
        &self.magnitudes
    }

    pub fn global_sign(&self) -> Sign {
        self.global_sign
    }

    /// Whether every realized coefficient is nonzero, so `realize(r)` lies in the
    /// alternating orthant for every `r`.
    pub fn is_strictly_alternating(&self) -> bool {
        self.magnitudes.iter().all(|m| m.is_pos())
    }

    /// The length-`r` coefficient vector.
    pub fn realize(&self, r: usize) -> Result<Vec<T>> {
        let alpha: Vec<T> = (0..r)
            .map(|i| {
                let mag = self.magnitudes[i % self.magnitudes.len()].clone();
                mag * (self.global_sign * Sign::alternating(i + 1)).to_scalar::<T>()
            })
            .collect();
        if alpha.iter().all(|a| a.is_zero()) {
            return arg_err(format!("alpha vanishes at length {r}"));
        }
        Ok(alpha)
    }
}

/// Independent random trials for falsifier modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub trials: usize,
    pub seed: u64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling { trials: 64, seed: 0 }
    }
}

pub(crate) fn check_order<T: Scalar>(a: &Matrix<T>, k: usize) -> Result<()> {
    let bound = a.rows().min(a.cols());
    if k == 0 || k > bound {
        return arg_err(format!("order {k} outside [1, {bound}]"));
    }
    Ok(())
}

pub(crate) fn check_sweep_cap<T: Scalar>(a: &Matrix<T>, cap: usize) -> Result<()> {
    let d = a.rows().min(a.cols());
    if d > cap {
        return Err(crate::Error::Resource(format!(
            "min(m, n) = {d} exceeds the all-submatrix sweep cap {cap}"
        )));
    }
    Ok(())
}

/// Witness for a failed single-vector test at `sub`. Vectors outside the mixed
/// orthant prove nothing on their own; there the sweep order (all smaller
/// sizes already passed) pins the failure on `det(sub)` instead.
pub(crate) fn single_vector_witness<T: Scalar>(
    kind: ViolationKind,
    class: SignClass,
    rows: IndexSet,
    cols: IndexSet,
    sub: &Matrix<T>,
    x: Vec<T>,
) -> Violation<T> {
    if crate::signs::is_mixed_orthant(&x) {
        Violation::with_vector(kind, rows, cols, x)
    } else {
        let det = sub.det().expect("square submatrix");
        debug_assert!(!class.admits(&det));
        Violation::minor(class.violation_kind(), rows, cols, det)
    }
}

/// First entry outside the class, reported as a 1x1 minor.
pub(crate) fn entry_violation<T: Scalar>(a: &Matrix<T>, class: SignClass) -> Option<Violation<T>> {
    a.first_entry_failing(|v| class.admits(v)).map(|(i, j, v)| {
        Violation::minor(
            class.violation_kind(),
            IndexSet::interval(i, 1),
            IndexSet::interval(j, 1),
            v,
        )
    })
}
