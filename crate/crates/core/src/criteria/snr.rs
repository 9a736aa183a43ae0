//! Sign non-reversal characterizations of total negativity.

use super::{
    check_order, check_sweep_cap, entry_violation, single_vector_witness, AlphaChoice, Method, Sampling, SignClass,
    Verdict, Violation, ViolationKind, SWEEP_DIM_CAP,
};
use crate::error::{arg_err, dim_err, Result};
use crate::matrix::{IndexSet, Matrix};
use crate::minors::{contiguous_selections, square_selections};
use crate::random;
use crate::scalar::Scalar;
use crate::signs::{alternating_signature, is_alternating_orthant, is_mixed_orthant};

/// Returns the smallest 1-based `i` at which `x` is not reversed, or `None`
/// when `A x` reverses every sign.
///
/// Strict: `x_i (A x)_i > 0`. Non-strict: `x_i != 0` and `x_i (A x)_i >= 0`.
pub fn sign_non_reversal<T: Scalar>(a: &Matrix<T>, x: &[T], strict: bool) -> Result<Option<usize>> {
    if !a.is_square() {
        return dim_err(format!("sign non-reversal needs a square matrix, got {:?}", a.shape()));
    }
    if x.iter().all(|v| v.is_zero()) {
        return arg_err("sign non-reversal is tested on nonzero vectors");
    }
    let y = a.mul_vec(x)?;
    Ok(first_non_reversed(x, &y, strict))
}

pub(crate) fn first_non_reversed<T: Scalar>(x: &[T], y: &[T], strict: bool) -> Option<usize> {
    x.iter().zip(y).position(|(xi, yi)| {
        let p = xi.clone() * yi.clone();
        if strict {
            p.is_pos()
        } else {
            !xi.is_zero() && !p.is_neg()
        }
    })
    .map(|i| i + 1)
}

/// `adj(A_r) alpha_r`, the single test vector for submatrix `A_r`.
pub(crate) fn adjugate_test_vector<T: Scalar>(sub: &Matrix<T>, alpha: &[T]) -> Vec<T> {
    sub.adjugate()
        .and_then(|adj| adj.mul_vec(alpha))
        .expect("square submatrix and matching alpha")
}

/// Single-vector sign non-reversal test on every contiguous `r x r`
/// submatrix with `2 <= r <= k`; a complete test for TN of order `k` when
/// every entry is negative. Order 1 reduces to the entry check.
pub fn check_tn_snr_single_vector<T: Scalar>(
    a: &Matrix<T>,
    k: usize,
    alpha: &AlphaChoice<T>,
) -> Result<Verdict<T>> {
    check_order(a, k)?;
    let method = Method::SnrSingleVector;
    if let Some(v) = entry_violation(a, SignClass::TotallyNegative) {
        return Ok(Verdict::fail(method, v));
    }
    for (rows, cols) in contiguous_selections(a.rows(), a.cols(), 2..=k) {
        let sub = a.submatrix_unchecked(rows.as_slice(), cols.as_slice());
        let alpha_r = alpha.realize(rows.len())?;
        let x = adjugate_test_vector(&sub, &alpha_r);
        // adj(A_r) alpha = 0 forces rank deficiency and fails the test.
        let reversed = x.iter().all(|v| v.is_zero())
            || first_non_reversed(&x, &sub.mul_vec(&x)?, true).is_none();
        if reversed {
            let class = SignClass::TotallyNegative;
            return Ok(Verdict::fail(
                method,
                single_vector_witness(ViolationKind::SignReversal, class, rows, cols, &sub, x),
            ));
        }
    }
    Ok(Verdict::pass(method))
}

/// Which vectors and submatrices the exhaustive-style falsifier covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnrMode {
    /// Every square submatrix against vectors with mixed signs.
    AllSubmatricesPn,
    /// Contiguous submatrices against alternating vectors.
    ContiguousAlt,
}

/// Largest size for which every `±1` sign word is tried.
const EXHAUSTIVE_PATTERN_LIMIT: usize = 10;

/// Candidate test vectors for a falsifier sweep over one `r x r` submatrix:
/// the deterministic `±1` words of the family, the adjugate vectors `adj(A_r)
/// (±d_r)` when they fall inside it, then `trials` random members.
pub(crate) fn candidate_vectors<T: Scalar>(
    sub: &Matrix<T>,
    alternating_only: bool,
    sampling: Sampling,
    rng: &mut random::SeededRng,
) -> Vec<Vec<T>> {
    let r = sub.rows();
    let d = alternating_signature::<T>(r).expect("r >= 1");
    let neg_d: Vec<T> = d.iter().map(|v| -v.clone()).collect();
    let mut out: Vec<Vec<T>> = Vec::new();
    if alternating_only {
        out.push(d.clone());
        out.push(neg_d.clone());
    } else if r <= EXHAUSTIVE_PATTERN_LIMIT {
        out.extend(random::mixed_sign_patterns(r));
    }
    for alpha in [&d, &neg_d] {
        let x = adjugate_test_vector(sub, alpha);
        let member = if alternating_only {
            is_alternating_orthant(&x)
        } else {
            is_mixed_orthant(&x)
        };
        if member {
            out.push(x);
        }
    }
    for _ in 0..sampling.trials {
        out.push(if alternating_only {
            random::alternating_vector(rng, r)
        } else {
            random::mixed_vector(rng, r, true)
        });
    }
    out
}

/// One-sided falsifier: searches for a reversed vector in the chosen family.
/// `holds` means no reversal was found.
pub fn check_tn_snr_all_vectors<T: Scalar>(
    a: &Matrix<T>,
    k: usize,
    mode: SnrMode,
    sampling: Sampling,
) -> Result<Verdict<T>> {
    if k < 2 {
        return arg_err("sign non-reversal sweeps need order k >= 2");
    }
    check_order(a, k)?;
    if mode == SnrMode::AllSubmatricesPn {
        check_sweep_cap(a, SWEEP_DIM_CAP)?;
    }
    let method = Method::SnrAllVectors;
    if let Some(v) = entry_violation(a, SignClass::TotallyNegative) {
        return Ok(Verdict::fail(method, v));
    }
    let mut rng = random::seeded(sampling.seed);
    let selections: Box<dyn Iterator<Item = (IndexSet, IndexSet)>> = match mode {
        SnrMode::AllSubmatricesPn => Box::new(square_selections(a.rows(), a.cols(), 2..=k)),
        SnrMode::ContiguousAlt => Box::new(contiguous_selections(a.rows(), a.cols(), 2..=k)),
    };
    for (rows, cols) in selections {
        let sub = a.submatrix_unchecked(rows.as_slice(), cols.as_slice());
        let alt = mode == SnrMode::ContiguousAlt;
        for x in candidate_vectors(&sub, alt, sampling, &mut rng) {
            let y = sub.mul_vec(&x)?;
            if first_non_reversed(&x, &y, true).is_none() {
                return Ok(Verdict::fail(
                    method,
                    Violation::with_vector(ViolationKind::SignReversal, rows, cols, x),
                ));
            }
        }
    }
    Ok(Verdict::pass(method))
}
