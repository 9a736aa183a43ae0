use super::{SignClass, Violation, ViolationKind};
use super::vd::vd_eval_negative;
use super::nonpositive::vd_check_nonpositive;
use crate::error::Result;
use crate::lcp::{has_forbidden_pattern_pair, lcp_test_vector, solve_lcp, LcpInstance, SolutionKind};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::signs::{is_mixed_orthant, s_minus, s_plus, EndSignReference};

/// Re-checks a witness against `a` using only the matrix and the witness.
/// `Ok(true)` means the witness does show `a` outside `class`.
pub fn verify_violation<T: Scalar>(a: &Matrix<T>, class: SignClass, v: &Violation<T>) -> Result<bool> {
    let sub = a.submatrix(&v.rows, &v.cols)?;
    let vector = || v.vector.clone().unwrap_or_default();
    Ok(match v.kind {
        ViolationKind::NonNegativeMinor => {
            let det = sub.det()?;
            !det.is_neg() && v.detail.as_ref().is_none_or(|d| *d == det)
        }
        ViolationKind::PositiveMinor => {
            let det = sub.det()?;
            det.is_pos() && v.detail.as_ref().is_none_or(|d| *d == det)
        }
        ViolationKind::SignReversal => {
            let x = vector();
            if x.len() != sub.cols() || !sub.is_square() || !is_mixed_orthant(&x) {
                return Ok(false);
            }
            let y = sub.mul_vec(&x)?;
            match class {
                SignClass::TotallyNegative => {
                    x.iter().zip(&y).all(|(xi, yi)| !(xi.clone() * yi.clone()).is_pos())
                }
                SignClass::TotallyNonPositive => x
                    .iter()
                    .zip(&y)
                    .all(|(xi, yi)| xi.is_zero() || (xi.clone() * yi.clone()).is_neg()),
            }
        }
        ViolationKind::VariationIncrease => {
            let x = vector();
            if x.len() != sub.cols() || !is_mixed_orthant(&x) {
                return Ok(false);
            }
            let y = sub.mul_vec(&x)?;
            match class {
                SignClass::TotallyNegative => s_plus(&y)?.s_plus > s_minus(&x)?,
                SignClass::TotallyNonPositive => s_minus(&y)? > s_minus(&x)?,
            }
        }
        ViolationKind::EqualitySignClause => {
            let x = vector();
            if x.len() != sub.cols() || !is_mixed_orthant(&x) {
                return Ok(false);
            }
            let failure = match class {
                SignClass::TotallyNegative => {
                    vd_eval_negative(&sub, &x, EndSignReference::default())?.failure
                }
                SignClass::TotallyNonPositive => vd_check_nonpositive(&sub, &x)?,
            };
            failure == Some(ViolationKind::EqualitySignClause)
        }
        ViolationKind::LcpSolutionSet => {
            // Only the first-row test vector is accepted; any other vector
            // would make the claim trivially true.
            let x = vector();
            sub.is_square() && x == lcp_test_vector(&sub, None)? && lcp_pair_refuted(&sub, &x)?
        }
        ViolationKind::ForbiddenPatternPair => {
            let q = vector();
            if !sub.is_square() || q.len() != sub.rows() || q.iter().any(|t| !t.is_pos()) {
                return Ok(false);
            }
            let r = sub.rows();
            has_forbidden_pattern_pair(&solve_lcp(&LcpInstance::new(sub, q)?)?, r)
        }
    })
}

/// [`verify_violation`] for an `LcpSolutionSet` witness produced with the
/// given odd-row weights.
pub fn verify_lcp_variant_witness<T: Scalar>(a: &Matrix<T>, v: &Violation<T>, odd_weights: &[T]) -> Result<bool> {
    if v.kind != ViolationKind::LcpSolutionSet {
        return verify_violation(a, SignClass::TotallyNegative, v);
    }
    let sub = a.submatrix(&v.rows, &v.cols)?;
    let x = v.vector.clone().unwrap_or_default();
    Ok(sub.is_square() && x == lcp_test_vector(&sub, Some(odd_weights))? && lcp_pair_refuted(&sub, &x)?)
}

/// Whether the LCP at `q = A x` has a solution set other than `{0, -x}`.
fn lcp_pair_refuted<T: Scalar>(sub: &Matrix<T>, x: &[T]) -> Result<bool> {
    let q = sub.mul_vec(x)?;
    let sols = solve_lcp(&LcpInstance::new(sub.clone(), q)?)?;
    let zero = vec![T::zero(); x.len()];
    let neg: Vec<T> = x.iter().map(|t| -t.clone()).collect();
    Ok(sols.kind() == SolutionKind::Infinite
        || sols.solutions.iter().any(|s| *s != zero && *s != neg)
        || !sols.solutions.contains(&zero)
        || !sols.solutions.contains(&neg))
}
