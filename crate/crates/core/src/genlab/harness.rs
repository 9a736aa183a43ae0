//! Cross-validation of every decision procedure against the minor oracle,
//! and the orthant impossibility suite.

use std::time::{Duration, Instant};

use rand::Rng;

use super::construct::{generate_tn_corank_one, generate_tnp};
use crate::criteria::{
    check_by_contiguous_minors, check_by_minor_definition, check_tn_snr_single_vector,
    check_tn_vd_single_vector_order, check_tnp_snr, check_tnp_vd_order, sign_non_reversal,
    vd_check, vd_check_nonpositive, verify_lcp_variant_witness, verify_violation, AlphaChoice,
    ClassQuery, SignClass, TnpSnrMode, TnpVdMode, Verdict, Violation,
};
use crate::error::{arg_err, Error, Result};
use crate::lcp::{
    lcp_single_vector_check, lcp_single_vector_check_variant, tnp_lcp_sufficient_check,
    TnpLcpMode, TnpLcpOutcome,
};
use crate::matrix::Matrix;
use crate::random;
use crate::scalar::Scalar;
use crate::signs::{is_alternating_orthant, EndSignReference};
use crate::ExactMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct MethodRun<T> {
    pub name: &'static str,
    pub holds: bool,
    pub witness: Option<Violation<T>>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossReport<T> {
    pub class: SignClass,
    pub order: usize,
    /// The unanimous verdict.
    pub holds: bool,
    pub runs: Vec<MethodRun<T>>,
    /// Outcome name of the one-sided TNP LCP check, when it ran.
    pub tnp_lcp: Option<&'static str>,
    /// Set when the one-sided TNP LCP check contradicts the minors verdict.
    pub tnp_lcp_contradiction: Option<String>,
}

/// Odd-row weights used for the `lcp-variant` run.
pub fn cross_validation_weights<T: Scalar>() -> Vec<T> {
    vec![T::from_int(2), T::from_ratio(1, 3)]
}

fn timed<T>(name: &'static str, f: impl FnOnce() -> Result<Verdict<T>>) -> Result<MethodRun<T>> {
    let start = Instant::now();
    let v = f()?;
    Ok(MethodRun { name, holds: v.holds, witness: v.witness, elapsed: start.elapsed() })
}

/// Runs every decision procedure for `class` of order `k`, re-checks each
/// witness, and fails with [`Error::Disagreement`] unless all agree.
pub fn cross_validate<T: Scalar>(a: &Matrix<T>, class: SignClass, k: usize) -> Result<CrossReport<T>> {
    let rep = cross_validate_methods(a, class, k)?;
    match &rep.tnp_lcp_contradiction {
        Some(msg) => Err(Error::Disagreement(msg.clone())),
        None => Ok(rep),
    }
}

/// Like [`cross_validate`], but a contradiction from the one-sided TNP LCP
/// check is recorded in the report instead of failing.
pub fn cross_validate_methods<T: Scalar>(a: &Matrix<T>, class: SignClass, k: usize) -> Result<CrossReport<T>> {
    let ones = AlphaChoice::ones();
    let mut runs = Vec::new();
    let mut tnp_lcp = None;
    let mut tnp_lcp_contradiction = None;
    match class {
        SignClass::TotallyNegative => {
            let q = ClassQuery::tn(k);
            runs.push(timed("minors", || check_by_minor_definition(a, q))?);
            runs.push(timed("contiguous", || check_by_contiguous_minors(a, q))?);
            runs.push(timed("snr", || check_tn_snr_single_vector(a, k, &ones))?);
            runs.push(timed("vd", || {
                check_tn_vd_single_vector_order(a, k, &ones, EndSignReference::Nonzero)
            })?);
            runs.push(timed("lcp", || lcp_single_vector_check(a, k))?);
            runs.push(timed("lcp-variant", || lcp_single_vector_check_variant(a, k, &cross_validation_weights())
            )?);
        }
        SignClass::TotallyNonPositive => {
            let q = ClassQuery::tnp(k);
            runs.push(timed("minors", || check_by_minor_definition(a, q))?);
            runs.push(timed("tnp-snr", || check_tnp_snr(a, k, &TnpSnrMode::SingleVector(ones.clone())))?);
            runs.push(timed("tnp-vd", || check_tnp_vd_order(a, k, &TnpVdMode::SingleVector(ones.clone())))?);
        }
    }
    let holds = runs[0].holds;
    for run in &runs {
        if run.holds != holds {
            return Err(Error::Disagreement(format!(
                "{} says {} but minors say {}; witness {:?}",
                run.name, run.holds, holds, run.witness
            )));
        }
        if let Some(w) = &run.witness {
            let ok = if run.name == "lcp-variant" {
                verify_lcp_variant_witness(a, w, &cross_validation_weights())?
            } else {
                verify_violation(a, class, w)?
            };
            if !ok {
                return Err(Error::Disagreement(format!("{} produced a witness that does not re-check: {w:?}", run.name)));
            }
        }
    }
    if class == SignClass::TotallyNonPositive {
        let start = Instant::now();
        let outcome = tnp_lcp_sufficient_check(a, k, TnpLcpMode::SingleQ)?;
        let (name, contradicts) = match &outcome {
            TnpLcpOutcome::SufficientConditionHolds => ("sufficient-condition-holds", !holds),
            TnpLcpOutcome::ViolationFound { positive_minor, .. } => {
                let ok = verify_violation(a, class, positive_minor)?;
                ("violation-found", holds || !ok)
            }
            TnpLcpOutcome::Inconclusive { .. } => ("inconclusive", false),
        };
        if contradicts {
            tnp_lcp_contradiction = Some(format!("tnp-lcp returned {name} against minors verdict {holds}"));
        }
        tnp_lcp = Some(name);
        runs.push(MethodRun { name: "tnp-lcp", holds, witness: None, elapsed: start.elapsed() });
    }
    Ok(CrossReport { class, order: k, holds, runs, tnp_lcp, tnp_lcp_contradiction })
}

/// One failed property in the orthant suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthantFailure {
    pub class: SignClass,
    pub matrix: ExactMatrix,
    pub x: Vec<crate::Rational>,
    pub property: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthantReport {
    pub r: usize,
    /// `(matrix, x)` pairs checked, over both classes.
    pub samples: usize,
    pub matrices: usize,
    /// Whether an instance with positive determinant was generated.
    pub positive_det_found: bool,
    pub failures: Vec<OrthantFailure>,
}

/// Matrices per pool; each is paired with many vectors.
const VECTORS_PER_MATRIX: usize = 50;

/// For TN and TNP matrices of order `r - 1` and vectors with every coordinate
/// nonzero, both signs present and not alternating, checks that `A x` does
/// not reverse `x` and that variation does not increase. `trials` vectors are
/// drawn per class.
pub fn orthant_impossibility_suite(r: usize, trials: usize, seed: u64) -> Result<OrthantReport> {
    if r < 3 {
        return arg_err("the orthant suite needs r >= 3");
    }
    let mut rng = random::seeded(seed);
    let pool_size = trials.div_ceil(VECTORS_PER_MATRIX).max(2);
    let mut tn_pool = Vec::new();
    let mut positive_det_found = false;
    for i in 0..pool_size {
        let positive = i % 2 == 0;
        match generate_tn_corank_one(r, positive, rng.gen()) {
            Ok(inst) => {
                positive_det_found |= positive;
                tn_pool.push(inst.matrix);
            }
            Err(Error::Resource(_)) if positive => {
                tn_pool.push(generate_tn_corank_one(r, false, rng.gen())?.matrix);
            }
            Err(e) => return Err(e),
        }
    }
    // Half degenerate TNP instances, half the TN pool (TN implies TNP).
    let mut tnp_pool = Vec::new();
    for i in 0..pool_size {
        if i % 2 == 0 {
            tnp_pool.push(generate_tnp((r, r), r - 1, rng.gen())?.matrix);
        } else {
            tnp_pool.push(tn_pool[i].clone());
        }
    }
    let mut failures = Vec::new();
    let mut samples = 0;
    for (class, pool) in [(SignClass::TotallyNegative, &tn_pool), (SignClass::TotallyNonPositive, &tnp_pool)] {
        for t in 0..trials {
            let a = &pool[t % pool.len()];
            let x = loop {
                let x = random::mixed_vector::<crate::Rational>(&mut rng, r, false);
                if !is_alternating_orthant(&x) {
                    break x;
                }
            };
            samples += 1;
            let mut fail = |property| {
                failures.push(OrthantFailure { class, matrix: a.clone(), x: x.clone(), property })
            };
            match class {
                SignClass::TotallyNegative => {
                    if sign_non_reversal(a, &x, true)?.is_none() {
                        fail("strict-snr");
                    }
                    if !vd_check(a, &x, EndSignReference::Nonzero)?.satisfied {
                        fail("vd");
                    }
                }
                SignClass::TotallyNonPositive => {
                    if sign_non_reversal(a, &x, false)?.is_none() {
                        fail("snr");
                    }
                    if vd_check_nonpositive(a, &x)?.is_some() {
                        fail("vd");
                    }
                }
            }
        }
    }
    Ok(OrthantReport { r, samples, matrices: tn_pool.len() + tnp_pool.len(), positive_det_found, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genlab::{generate_near_miss, generate_tn, worked_example};
    use crate::Rational;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn unanimous_on_fixtures() {
        let n3 = m(&[&[-1, -2, -4], &[-2, -3, -5], &[-4, -5, -6]]);
        let rep = cross_validate(&n3, SignClass::TotallyNegative, 3).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.runs.len(), 6);

        let near = m(&[&[-1, -2], &[-2, -5]]);
        let rep = cross_validate(&near, SignClass::TotallyNegative, 2).unwrap();
        assert!(!rep.holds);
        assert!(rep.runs.iter().all(|r| r.witness.is_some()));

        let rep = cross_validate(&worked_example(), SignClass::TotallyNonPositive, 3).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.tnp_lcp, Some("inconclusive"));
    }

    #[test]
    fn degenerate_tnp_lcp_contradiction_is_reported() {
        // Positive determinant, yet the single-q LCP has only one nonzero solution.
        let a = m(&[&[-1000, -1000], &[0, -509]]);
        let rep = cross_validate_methods(&a, SignClass::TotallyNonPositive, 2).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.tnp_lcp, Some("sufficient-condition-holds"));
        assert!(rep.tnp_lcp_contradiction.is_some());
        assert!(matches!(cross_validate(&a, SignClass::TotallyNonPositive, 2), Err(Error::Disagreement(_))));
    }

    #[test]
    fn generated_instances_agree() {
        for seed in 0..4 {
            let a = generate_tn((4, 4), 4, seed).unwrap().matrix;
            assert!(cross_validate(&a, SignClass::TotallyNegative, 4).unwrap().holds);
            assert!(cross_validate(&a, SignClass::TotallyNonPositive, 4).unwrap().holds);
            let b = generate_near_miss((3, 4), 3, seed).unwrap().matrix;
            assert!(!cross_validate(&b, SignClass::TotallyNegative, 3).unwrap().holds);
        }
    }

    #[test]
    fn float_inputs_run() {
        let n2: Matrix<f64> = Matrix::from_i64(&[&[-1, -2], &[-2, -1]]).unwrap();
        assert!(cross_validate(&n2, SignClass::TotallyNegative, 2).unwrap().holds);
    }

    #[test]
    fn orthant_suite_is_clean() {
        let rep = orthant_impossibility_suite(3, 200, 9).unwrap();
        assert_eq!(rep.samples, 400);
        assert!(rep.positive_det_found);
        assert!(rep.failures.is_empty(), "{:?}", rep.failures.first());
        assert!(orthant_impossibility_suite(2, 10, 0).is_err());
    }

    #[test]
    fn positive_det_point_example() {
        let a = generate_tn_corank_one(3, true, 1).unwrap().matrix;
        let x: Vec<Rational> = [1, 1, -1].iter().map(|&v| Rational::from_int(v)).collect();
        assert!(sign_non_reversal(&a, &x, true).unwrap().is_some());
    }
}
