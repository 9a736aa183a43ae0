//! Variation-diminishing characterization of total negativity.

use super::snr::adjugate_test_vector;
use super::{
    check_order, entry_violation, single_vector_witness, AlphaChoice, Method, SignClass, Verdict,
    ViolationKind,
};
use crate::error::{arg_err, Result};
use crate::matrix::Matrix;
use crate::minors::contiguous_selections;
use crate::scalar::{Scalar, Sign};
use crate::signs::{is_mixed_orthant, s_plus, EndSignReference, SignProfile};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VdOutcome {
    pub satisfied: bool,
    /// `VariationIncrease` or `EqualitySignClause` when not satisfied.
    pub failure: Option<ViolationKind>,
    pub profile_in: SignProfile,
    pub profile_out: SignProfile,
}

fn reference_signs<T: Scalar>(
    x: &[T],
    profile: &SignProfile,
    reference: EndSignReference,
) -> (Option<Sign>, Option<Sign>) {
    match reference {
        EndSignReference::Nonzero => (profile.first_nonzero_sign, profile.last_nonzero_sign),
        EndSignReference::Component => (
            x.first().and_then(Sign::of),
            x.last().and_then(Sign::of),
        ),
    }
}

/// `S⁺(A x) <= S⁻(x)`, and on equality with `A x != 0` the end signs of `A x`
/// at the `S⁺` maximum are unique and match those of `x`. No orthant check.
pub(crate) fn vd_eval_negative<T: Scalar>(
    a: &Matrix<T>,
    x: &[T],
    reference: EndSignReference,
) -> Result<VdOutcome> {
    let y = a.mul_vec(x)?;
    let profile_in = s_plus(x)?;
    let profile_out = s_plus(&y)?;
    let failure = if profile_out.s_plus > profile_in.s_minus {
        Some(ViolationKind::VariationIncrease)
    } else if profile_out.s_plus == profile_in.s_minus && y.iter().any(|v| !v.is_zero()) {
        let (first, last) = reference_signs(x, &profile_in, reference);
        let first_ok = first.is_some() && profile_out.first_signs_at_max.unique() == first;
        let last_ok = last.is_some() && profile_out.last_signs_at_max.unique() == last;
        (!(first_ok && last_ok)).then_some(ViolationKind::EqualitySignClause)
    } else {
        None
    };
    Ok(VdOutcome { satisfied: failure.is_none(), failure, profile_in, profile_out })
}

/// Variation-diminishing check of `A` at a mixed-sign vector `x`.
pub fn vd_check<T: Scalar>(
    a: &Matrix<T>,
    x: &[T],
    reference: EndSignReference,
) -> Result<VdOutcome> {
    if !is_mixed_orthant(x) {
        return arg_err("variation check needs a vector with both signs present");
    }
    vd_eval_negative(a, x, reference)
}

/// Single-vector variation test on every contiguous `r x r` submatrix,
/// `2 <= r <= min(m, n)`; decides total negativity for entrywise-negative
/// input. Needs `m, n >= 2`.
pub fn check_tn_vd_single_vector<T: Scalar>(
    a: &Matrix<T>,
    alpha: &AlphaChoice<T>,
    reference: EndSignReference,
) -> Result<Verdict<T>> {
    if a.rows() < 2 || a.cols() < 2 {
        return arg_err("variation-diminishing test needs m, n >= 2");
    }
    check_tn_vd_single_vector_order(a, a.min_dim(), alpha, reference)
}

/// Same test restricted to sizes `2..=k`; decides TN of order `k`.
pub fn check_tn_vd_single_vector_order<T: Scalar>(
    a: &Matrix<T>,
    k: usize,
    alpha: &AlphaChoice<T>,
    reference: EndSignReference,
) -> Result<Verdict<T>> {
    check_order(a, k)?;
    let method = Method::VdSingleVector;
    if let Some(v) = entry_violation(a, SignClass::TotallyNegative) {
        return Ok(Verdict::fail(method, v));
    }
    for (rows, cols) in contiguous_selections(a.rows(), a.cols(), 2..=k) {
        let sub = a.submatrix_unchecked(rows.as_slice(), cols.as_slice());
        let x = adjugate_test_vector(&sub, &alpha.realize(rows.len())?);
        let outcome = vd_eval_negative(&sub, &x, reference)?;
        if let Some(kind) = outcome.failure {
            let class = SignClass::TotallyNegative;
            return Ok(Verdict::fail(
                method,
                single_vector_witness(kind, class, rows, cols, &sub, x),
            ));
        }
    }
    Ok(Verdict::pass(method))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ExactMatrix, Rational, Scalar};

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_i64(rows).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn pointwise_examples() {
        let n2 = m(&[&[-1, -2], &[-2, -1]]);
        let out = vd_check(&n2, &v(&[1, -1]), EndSignReference::Nonzero).unwrap();
        assert!(out.satisfied);
        assert_eq!((out.profile_out.s_plus, out.profile_in.s_minus), (1, 1));

        let out = vd_check(&n2, &v(&[-3, 3]), EndSignReference::Nonzero).unwrap();
        assert!(out.satisfied);
        assert_eq!(out.profile_out.first_signs_at_max.unique(), Some(Sign::Minus));

        let id = ExactMatrix::identity(2);
        assert!(vd_check(&id, &v(&[1, 1]), EndSignReference::Nonzero).is_err());
    }

    #[test]
    fn single_vector_examples() {
        let ones = AlphaChoice::ones();
        let n3 = m(&[&[-1, -2, -4], &[-2, -3, -5], &[-4, -5, -6]]);
        assert!(check_tn_vd_single_vector(&n3, &ones, EndSignReference::Nonzero).unwrap().holds);

        let near = m(&[&[-1, -2], &[-2, -5]]);
        let verdict = check_tn_vd_single_vector(&near, &ones, EndSignReference::Nonzero).unwrap();
        let w = verdict.witness.unwrap();
        assert_eq!(w.kind, ViolationKind::EqualitySignClause);
        assert_eq!(w.vector, Some(v(&[-7, 3])));

        let singular = m(&[&[-1, -1], &[-1, -1]]);
        let verdict =
            check_tn_vd_single_vector(&singular, &ones, EndSignReference::Nonzero).unwrap();
        let w = verdict.witness.unwrap();
        assert_eq!(w.kind, ViolationKind::VariationIncrease);
        assert_eq!(w.vector, Some(v(&[-2, 2])));
    }

    #[test]
    fn needs_two_rows_and_columns() {
        let row = m(&[&[-1, -2, -3]]);
        assert!(check_tn_vd_single_vector(&row, &AlphaChoice::ones(), EndSignReference::Nonzero)
            .is_err());
    }

    #[test]
    fn component_reading_flags_zero_ends() {
        // A x = (-2, 0, 7) ties S⁻(x) = 1; x has a zero first coordinate.
        let a = m(&[&[-1, -2, -4], &[-2, -3, -5], &[-4, -5, -6]]);
        let x = v(&[0, -5, 3]);
        let nz = vd_check(&a, &x, EndSignReference::Nonzero).unwrap();
        assert_eq!((nz.profile_out.s_plus, nz.profile_in.s_minus), (1, 1));
        assert!(nz.satisfied);
        let comp = vd_check(&a, &x, EndSignReference::Component).unwrap();
        assert_eq!(comp.failure, Some(ViolationKind::EqualitySignClause));
    }
}
