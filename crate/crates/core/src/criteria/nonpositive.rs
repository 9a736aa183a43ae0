//! Characterizations of total non-positivity. These sweep every square
//! submatrix, not only contiguous ones, so they are capped at
//! [`SWEEP_DIM_CAP`].

use super::snr::{adjugate_test_vector, candidate_vectors, first_non_reversed};
use super::{
    check_order, check_sweep_cap, entry_violation, single_vector_witness, AlphaChoice, Method, Sampling, SignClass,
    Verdict, Violation, ViolationKind, SWEEP_DIM_CAP,
};
use crate::error::{arg_err, Result};
use crate::matrix::Matrix;
use crate::minors::square_selections;
use crate::random;
use crate::signs::{is_mixed_orthant, s_minus, s_plus};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TnpSnrMode<T> {
    /// Random and `±1` mixed-sign vectors on every square submatrix.
    AllPn(Sampling),
    /// Random and `±d_r` alternating vectors on every square submatrix.
    AllAlt(Sampling),
    /// `adj(A_r) alpha` on every square submatrix; a decision procedure.
    /// `alpha` must have strictly positive magnitudes.
    SingleVector(AlphaChoice<T>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TnpVdMode<T> {
    AllPn(Sampling),
    SingleVector(AlphaChoice<T>),
}

fn witness<T: Scalar>(
    kind: ViolationKind,
    rows: crate::matrix::IndexSet,
    cols: crate::matrix::IndexSet,
    sub: &Matrix<T>,
    x: Vec<T>,
) -> Violation<T> {
    single_vector_witness(kind, SignClass::TotallyNonPositive, rows, cols, sub, x)
}

fn require_alternating<T: Scalar>(alpha: &AlphaChoice<T>) -> Result<()> {
    if !alpha.is_strictly_alternating() {
        return arg_err("non-positive single-vector tests need alpha with all magnitudes > 0");
    }
    Ok(())
}

/// Non-strict sign non-reversal on every square submatrix of size `2..=k`.
pub fn check_tnp_snr<T: Scalar>(
    a: &Matrix<T>,
    k: usize,
    mode: &TnpSnrMode<T>,
) -> Result<Verdict<T>> {
    check_tnp_snr_capped(a, k, mode, SWEEP_DIM_CAP)
}

/// [`check_tnp_snr`] with an explicit cap on `min(m, n)`.
pub fn check_tnp_snr_capped<T: Scalar>(
    a: &Matrix<T>,
    k: usize,
    mode: &TnpSnrMode<T>,
    cap: usize,
) -> Result<Verdict<T>> {
    check_order(a, k)?;
    check_sweep_cap(a, cap)?;
    let method = match mode {
        TnpSnrMode::SingleVector(alpha) => {
            require_alternating(alpha)?;
            Method::TnpSnrSingleVector
        }
        _ => {
            if k < 2 {
                return arg_err("sign non-reversal sweeps need order k >= 2");
            }
            Method::TnpSnrAllVectors
        }
    };
    if let Some(v) = entry_violation(a, SignClass::TotallyNonPositive) {
        return Ok(Verdict::fail(method, v));
    }
    let mut rng = random::seeded(match mode {
        TnpSnrMode::AllPn(s) | TnpSnrMode::AllAlt(s) => s.seed,
        TnpSnrMode::SingleVector(_) => 0,
    });
    for (rows, cols) in square_selections(a.rows(), a.cols(), 2..=k) {
        let sub = a.submatrix_unchecked(rows.as_slice(), cols.as_slice());
        let candidates = match mode {
            TnpSnrMode::SingleVector(alpha) => {
                vec![adjugate_test_vector(&sub, &alpha.realize(rows.len())?)]
            }
            TnpSnrMode::AllPn(s) => candidate_vectors(&sub, false, *s, &mut rng),
            TnpSnrMode::AllAlt(s) => candidate_vectors(&sub, true, *s, &mut rng),
        };
        for x in candidates {
            // adj(A_r) alpha = 0 leaves nothing to test.
            if x.iter().all(|v| v.is_zero()) {
                continue;
            }
            let y = sub.mul_vec(&x)?;
            if first_non_reversed(&x, &y, false).is_none() {
                let kind = ViolationKind::SignReversal;
                return Ok(Verdict::fail(method, witness(kind, rows, cols, &sub, x)));
            }
        }
    }
    Ok(Verdict::pass(method))
}

/// `S⁻(A x) <= S⁻(x)`; on equality with `A x != 0` the first and last nonzero
/// signs of `A x` match those of `x`. Returns the failure kind, if any.
pub fn vd_check_nonpositive<T: Scalar>(a: &Matrix<T>, x: &[T]) -> Result<Option<ViolationKind>> {
    let y = a.mul_vec(x)?;
    let before = s_minus(x)?;
    let after = s_minus(&y)?;
    if after > before {
        return Ok(Some(ViolationKind::VariationIncrease));
    }
    if after == before && y.iter().any(|v| !v.is_zero()) {
        let px = s_plus(x)?;
        let py = s_plus(&y)?;
        if px.first_nonzero_sign != py.first_nonzero_sign
            || px.last_nonzero_sign != py.last_nonzero_sign
        {
            return Ok(Some(ViolationKind::EqualitySignClause));
        }
    }
    Ok(None)
}

/// Variation test over every square submatrix of size `2..=min(m, n)`;
/// decides total non-positivity. Needs `m, n >= 2`.
pub fn check_tnp_vd<T: Scalar>(a: &Matrix<T>, mode: &TnpVdMode<T>) -> Result<Verdict<T>> {
    if a.rows() < 2 || a.cols() < 2 {
        return arg_err("variation-diminishing test needs m, n >= 2");
    }
    check_tnp_vd_order(a, a.min_dim(), mode)
}

/// [`check_tnp_vd`] restricted to sizes `2..=k`; decides TNP of order `k`.
pub fn check_tnp_vd_order<T: Scalar>(
    a: &Matrix<T>,
    k: usize,
    mode: &TnpVdMode<T>,
) -> Result<Verdict<T>> {
    check_order(a, k)?;
    check_sweep_cap(a, SWEEP_DIM_CAP)?;
    let method = match mode {
        TnpVdMode::SingleVector(alpha) => {
            require_alternating(alpha)?;
            Method::TnpVdSingleVector
        }
        TnpVdMode::AllPn(_) => Method::TnpVdAllVectors,
    };
    if let Some(v) = entry_violation(a, SignClass::TotallyNonPositive) {
        return Ok(Verdict::fail(method, v));
    }
    let mut rng = random::seeded(match mode {
        TnpVdMode::AllPn(s) => s.seed,
        TnpVdMode::SingleVector(_) => 0,
    });
    for (rows, cols) in square_selections(a.rows(), a.cols(), 2..=k) {
        let sub = a.submatrix_unchecked(rows.as_slice(), cols.as_slice());
        let candidates = match mode {
            TnpVdMode::SingleVector(alpha) => {
                vec![adjugate_test_vector(&sub, &alpha.realize(rows.len())?)]
            }
            TnpVdMode::AllPn(s) => candidate_vectors(&sub, false, *s, &mut rng)
                .into_iter()
                .filter(|x| is_mixed_orthant(x))
                .collect(),
        };
        for x in candidates {
            if let Some(kind) = vd_check_nonpositive(&sub, &x)? {
                return Ok(Verdict::fail(method, witness(kind, rows, cols, &sub, x)));
            }
        }
    }
    Ok(Verdict::pass(method))
}
