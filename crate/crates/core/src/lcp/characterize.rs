use super::{solve_lcp, LcpInstance, LcpSolutionSet, SignPattern, SolutionKind};
use crate::criteria::snr::candidate_vectors;
use crate::criteria::{
    check_order, check_sweep_cap, entry_violation, Method, Sampling, SignClass, Verdict,
    Violation, ViolationKind, SWEEP_DIM_CAP,
};
use crate::error::{arg_err, dim_err, Result};
use crate::matrix::{IndexSet, Matrix};
use crate::minors::{contiguous_selections, minors_up_to, square_selections};
use crate::random;
use crate::scalar::Scalar;

/// `x^{A_r}`: entries `sum_i w_i A_r^{ij}` at odd `j`, zero at even `j`,
/// summed over odd rows `i`. `None` weights gives the first-row vector
/// `(A^{11}, 0, A^{13}, 0, ...)`. Weights repeat cyclically.
pub fn lcp_test_vector<T: Scalar>(sub: &Matrix<T>, odd_weights: Option<&[T]>) -> Result<Vec<T>> {
    if !sub.is_square() {
        return dim_err(format!("LCP test vector needs a square matrix, got {:?}", sub.shape()));
    }
    let r = sub.rows();
    let mut x = vec![T::zero(); r];
    for j in (1..=r).step_by(2) {
        x[j - 1] = match odd_weights {
            None => sub.cofactor_minor(1, j)?,
            Some(w) => {
                let mut acc = T::zero();
                for (t, i) in (1..=r).step_by(2).enumerate() {
                    acc = acc + w[t % w.len()].clone() * sub.cofactor_minor(i, j)?;
                }
                acc
            }
        };
    }
    Ok(x)
}

fn expected_pair<T: Scalar>(x: &[T]) -> Vec<Vec<T>> {
    let zero = vec![T::zero(); x.len()];
    let neg: Vec<T> = x.iter().map(|v| -v.clone()).collect();
    if neg == zero {
        vec![zero]
    } else {
        let mut out = vec![zero, neg];
        out.sort_by(|a, b| super::solve::lex_cmp(a, b));
        out
    }
}

fn single_vector_sweep<T: Scalar>(
    a: &Matrix<T>,
    k: usize,
    odd_weights: Option<&[T]>,
    method: Method,
) -> Result<Verdict<T>> {
    check_order(a, k)?;
    for (rows, cols) in contiguous_selections(a.rows(), a.cols(), 1..=k) {
        let sub = a.submatrix_unchecked(rows.as_slice(), cols.as_slice());
        let x = lcp_test_vector(&sub, odd_weights)?;
        let q = sub.mul_vec(&x)?;
        let sols = solve_lcp(&LcpInstance::new(sub, q)?)?;
        if sols.kind() != SolutionKind::Finite || sols.solutions != expected_pair(&x) {
            return Ok(Verdict::fail(
                method,
                Violation::with_vector(ViolationKind::LcpSolutionSet, rows, cols, x),
            ));
        }
    }
    Ok(Verdict::pass(method))
}

/// For every contiguous `A_r`, `r in 1..=k`, the LCP at `q = A_r x^{A_r}` has
/// exactly the solutions `0` and `-x^{A_r}`. Decides TN of order `k`.
pub fn lcp_single_vector_check<T: Scalar>(a: &Matrix<T>, k: usize) -> Result<Verdict<T>> {
    single_vector_sweep(a, k, None, Method::LcpSingleVector)
}

/// [`lcp_single_vector_check`] with `x^{A_r}` a positive combination of the
/// odd-row vectors. `odd_weights[t]` weighs row `2t + 1`.
pub fn lcp_single_vector_check_variant<T: Scalar>(
    a: &Matrix<T>,
    k: usize,
    odd_weights: &[T],
) -> Result<Verdict<T>> {
    if odd_weights.is_empty() || odd_weights.iter().any(|w| !w.is_pos()) {
        return arg_err("odd-row weights must be nonempty and strictly positive");
    }
    single_vector_sweep(a, k, Some(odd_weights), Method::LcpSingleVectorVariant)
}

/// Whether one listed solution has pattern `(+, 0, +, 0, ...)` and another
/// `(0, +, 0, +, ...)`. Family vertices count as listed.
pub fn has_forbidden_pattern_pair<T: Scalar>(sols: &LcpSolutionSet<T>, r: usize) -> bool {
    let odd = SignPattern::alternating(r, true);
    let even = SignPattern::alternating(r, false);
    let reps = sols.representatives();
    reps.iter().any(|x| odd.matches(x)) && reps.iter().any(|x| even.matches(x))
}

/// `q = v⁺ - A x⁺` for a vector `x` reversed by `A` (`v = A x`), so that `x⁺`
/// and `x⁻` both solve the LCP.
fn reversal_q<T: Scalar>(a: &Matrix<T>, x: &[T]) -> Option<Vec<T>> {
    let v = a.mul_vec(x).ok()?;
    let reversed = x.iter().zip(&v).all(|(xi, vi)| !(xi.clone() * vi.clone()).is_pos());
    if !reversed {
        return None;
    }
    let pos = |w: &[T]| w.iter().map(|t| if t.is_pos() { t.clone() } else { T::zero() }).collect::<Vec<T>>();
    let x_plus = pos(x);
    let ax = a.mul_vec(&x_plus).ok()?;
    Some(pos(&v).into_iter().zip(ax).map(|(vp, axp)| vp - axp).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PositiveQCount<T> {
    AlwaysTwo,
    CounterexampleFound { q: Vec<T>, solutions: LcpSolutionSet<T> },
}

/// Falsifier for "exactly two solutions for every `q > 0`". Tries the
/// reversal-derived `q` (when positive) first, then `trials` random `q`.
pub fn count_solutions_for_positive_q<T: Scalar>(
    a_r: &Matrix<T>,
    trials: usize,
    seed: u64,
) -> Result<PositiveQCount<T>> {
    if !a_r.is_square() {
        return dim_err(format!("LCP matrix must be square, got {:?}", a_r.shape()));
    }
    let r = a_r.rows();
    let mut rng = random::seeded(seed);
    let mut qs: Vec<Vec<T>> = Vec::new();
    if r >= 2 {
        let s = Sampling { trials: 0, seed };
        for x in candidate_vectors(a_r, true, s, &mut rng) {
            if let Some(q) = reversal_q(a_r, &x) {
                if q.iter().all(|v| v.is_pos()) {
                    qs.push(q);
                }
            }
        }
    }
    qs.extend((0..trials).map(|_| random::positive_vector(&mut rng, r)));
    for q in qs {
        let sols = solve_lcp(&LcpInstance::new(a_r.clone(), q.clone())?)?;
        if sols.kind() != SolutionKind::Finite || sols.solutions.len() != 2 {
            return Ok(PositiveQCount::CounterexampleFound { q, solutions: sols });
        }
    }
    Ok(PositiveQCount::AlwaysTwo)
}

/// Falsifier built on the pattern-pair clause: 1x1 cells must have two
/// solutions at `q = 1`, and no contiguous `A_r`, `r in 2..=k`, may show the
/// forbidden pattern pair for the sampled `q > 0`. `holds` means no violation
/// was found.
pub fn check_tn_lcp_patterns<T: Scalar>(
    a: &Matrix<T>,
    k: usize,
    sampling: Sampling,
) -> Result<Verdict<T>> {
    check_order(a, k)?;
    let method = Method::LcpPatterns;
    // 1x1 LCP at q = 1 has two solutions iff the entry is negative.
    if let Some(v) = entry_violation(a, SignClass::TotallyNegative) {
        return Ok(Verdict::fail(method, v));
    }
    let mut rng = random::seeded(sampling.seed);
    for (rows, cols) in contiguous_selections(a.rows(), a.cols(), 2..=k) {
        let sub = a.submatrix_unchecked(rows.as_slice(), cols.as_slice());
        let r = sub.rows();
        let mut qs: Vec<Vec<T>> = candidate_vectors(&sub, true, Sampling { trials: 0, ..sampling }, &mut rng)
            .into_iter()
            .filter_map(|x| reversal_q(&sub, &x))
            .filter(|q| q.iter().all(|v| v.is_pos()))
            .collect();
        qs.extend((0..sampling.trials).map(|_| random::positive_vector(&mut rng, r)));
        for q in qs {
            let sols = solve_lcp(&LcpInstance::new(sub.clone(), q.clone())?)?;
            if has_forbidden_pattern_pair(&sols, r) {
                return Ok(Verdict::fail(
                    method,
                    Violation::with_vector(ViolationKind::ForbiddenPatternPair, rows, cols, q),
                ));
            }
        }
    }
    Ok(Verdict::pass(method))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TnpLcpMode {
    /// Pattern-pair condition over sampled `q >= 0` on every square submatrix
    /// of size `2..=k`. Needs `A <= 0` and `k >= 2`.
    SampledQ(Sampling),
    /// Single `q^{A_r} = A_r x^{A_r}` on every square submatrix of size `1..=k`.
    SingleQ,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TnpLcpOutcome<T> {
    /// The sufficient condition holds, so `A` is TNP of order `k`.
    SufficientConditionHolds,
    /// The condition fails at `rows x cols`, and a positive minor inside that
    /// submatrix confirms `A` is not TNP.
    ViolationFound {
        rows: IndexSet,
        cols: IndexSet,
        q: Vec<T>,
        /// Offending solutions, when the failure is a pair with distinct images.
        solutions: Vec<Vec<T>>,
        positive_minor: Violation<T>,
    },
    /// The condition fails but no positive minor backs the failure; the
    /// condition is only sufficient, so nothing follows.
    Inconclusive { rows: IndexSet, cols: IndexSet, q: Vec<T>, solutions: Vec<Vec<T>> },
}

/// First positive minor of `sub`, reported in the coordinates of the parent.
fn positive_minor_in<T: Scalar>(
    sub: &Matrix<T>,
    rows: &IndexSet,
    cols: &IndexSet,
) -> Option<Violation<T>> {
    let rec = minors_up_to(sub, sub.min_dim())
        .expect("nonempty square")
        .find(|m| m.value.is_pos())?;
    let lift = |local: &IndexSet, parent: &IndexSet| {
        IndexSet::from_sorted(local.as_slice().iter().map(|&i| parent.as_slice()[i - 1]).collect())
    };
    Some(Violation::minor(
        ViolationKind::PositiveMinor,
        lift(&rec.rows, rows),
        lift(&rec.cols, cols),
        rec.value,
    ))
}

/// Nonzero solutions with different images `A z`, if any.
fn differing_images<T: Scalar>(sub: &Matrix<T>, sols: &LcpSolutionSet<T>) -> Option<Vec<Vec<T>>> {
    let image = |z: &[T]| sub.mul_vec(z).expect("square");
    let lerp = |u: &[T], w: &[T], t: T| -> Vec<T> {
        u.iter().zip(w).map(|(a, b)| a.clone() + (b.clone() - a.clone()) * t.clone()).collect()
    };
    for f in &sols.families {
        let base = &f.vertices[0];
        for ray in &f.rays {
            if image(ray).iter().any(|v| !v.is_zero()) {
                let one: Vec<T> = base.iter().zip(ray).map(|(b, r)| b.clone() + r.clone()).collect();
                let two: Vec<T> = one.iter().zip(ray).map(|(b, r)| b.clone() + r.clone()).collect();
                return Some(vec![one, two]);
            }
        }
        // Images are affine along the piece, so two vertices with different
        // images give interior points (never zero) with different images.
        for (i, u) in f.vertices.iter().enumerate() {
            for w in &f.vertices[i + 1..] {
                if image(u) != image(w) {
                    let half = T::half();
                    let quarter = half.clone() * T::half();
                    return Some(vec![lerp(u, w, half), lerp(u, w, T::one() - quarter)]);
                }
            }
        }
    }
    let nonzero: Vec<Vec<T>> =
        sols.representatives().into_iter().filter(|z| z.iter().any(|v| !v.is_zero())).collect();
    let first = nonzero.first()?.clone();
    let base = image(&first);
    nonzero.into_iter().find(|z| image(z) != base).map(|z| vec![first, z])
}

/// Checks the LCP sufficient conditions for total non-positivity of order `k`
/// over all square submatrices. Never concludes non-membership without a
/// positive minor.
pub fn tnp_lcp_sufficient_check<T: Scalar>(
    a: &Matrix<T>,
    k: usize,
    mode: TnpLcpMode,
) -> Result<TnpLcpOutcome<T>> {
    check_order(a, k)?;
    check_sweep_cap(a, SWEEP_DIM_CAP)?;
    let min_size = match mode {
        TnpLcpMode::SampledQ(_) => {
            if k < 2 {
                return arg_err("sampled LCP condition needs order k >= 2");
            }
            if a.first_entry_failing(|v| !v.is_pos()).is_some() {
                return arg_err("sampled LCP condition needs a matrix with no positive entry");
            }
            2
        }
        TnpLcpMode::SingleQ => 1,
    };
    let mut rng = random::seeded(match mode {
        TnpLcpMode::SampledQ(s) => s.seed,
        TnpLcpMode::SingleQ => 0,
    });
    let mut inconclusive = None;
    for (rows, cols) in square_selections(a.rows(), a.cols(), min_size..=k) {
        let sub = a.submatrix_unchecked(rows.as_slice(), cols.as_slice());
        let r = sub.rows();
        let failure: Option<(Vec<T>, Vec<Vec<T>>)> = match mode {
            TnpLcpMode::SingleQ => {
                let x = lcp_test_vector(&sub, None)?;
                let q = sub.mul_vec(&x)?;
                if q.iter().any(|v| v.is_neg()) {
                    Some((q, Vec::new()))
                } else {
                    let sols = solve_lcp(&LcpInstance::new(sub.clone(), q.clone())?)?;
                    differing_images(&sub, &sols).map(|pair| (q, pair))
                }
            }
            TnpLcpMode::SampledQ(s) => {
                let mut qs: Vec<Vec<T>> = candidate_vectors(&sub, true, Sampling { trials: s.trials, seed: s.seed }, &mut rng)
                    .into_iter()
                    .filter_map(|x| reversal_q(&sub, &x))
                    .collect();
                qs.extend((0..s.trials).map(|_| random::positive_vector(&mut rng, r)));
                let odd = SignPattern::alternating(r, true);
                let even = SignPattern::alternating(r, false);
                let mut found = None;
                for q in qs {
                    if q.iter().any(|v| v.is_neg()) {
                        continue;
                    }
                    let sols = solve_lcp(&LcpInstance::new(sub.clone(), q.clone())?)?;
                    let reps = sols.representatives();
                    let pair = reps.iter().filter(|z| odd.matches(z)).find_map(|z1| {
                        reps.iter()
                            .filter(|z| even.matches(z))
                            .find(|z2| sub.mul_vec(z1).ok() != sub.mul_vec(z2).ok())
                            .map(|z2| vec![z1.clone(), z2.clone()])
                    });
                    if let Some(pair) = pair {
                        found = Some((q, pair));
                        break;
                    }
                }
                found
            }
        };
        let Some((q, solutions)) = failure else {
            continue;
        };
        match positive_minor_in(&sub, &rows, &cols) {
            Some(positive_minor) => {
                return Ok(TnpLcpOutcome::ViolationFound { rows, cols, q, solutions, positive_minor });
            }
            None => {
                if inconclusive.is_none() {
                    inconclusive = Some(TnpLcpOutcome::Inconclusive { rows, cols, q, solutions });
                }
            }
        }
    }
    Ok(inconclusive.unwrap_or(TnpLcpOutcome::SufficientConditionHolds))
}

/// Over `trials` random `q > 0`, checks that no two nonzero solutions have
/// disjoint supports while one of them has two consecutive positive
/// coordinates. `A_r` must be TN of order `r - 1`, `r >= 2`.
pub fn disjoint_support_pair_check<T: Scalar>(a_r: &Matrix<T>, trials: usize, seed: u64) -> Result<bool> {
    if !a_r.is_square() || a_r.rows() < 2 {
        return arg_err("disjoint support check needs a square matrix of size at least 2");
    }
    let r = a_r.rows();
    if minors_up_to(a_r, r - 1)?.any(|m| !m.value.is_neg()) {
        return arg_err(format!("matrix is not totally negative of order {}", r - 1));
    }
    let mut rng = random::seeded(seed);
    let consecutive = |z: &[T]| z.windows(2).any(|w| w[0].is_pos() && w[1].is_pos());
    let disjoint = |u: &[T], v: &[T]| u.iter().zip(v).all(|(a, b)| a.is_zero() || b.is_zero());
    for _ in 0..trials {
        let q = random::positive_vector::<T>(&mut rng, r);
        let sols = solve_lcp(&LcpInstance::new(a_r.clone(), q)?)?;
        let reps: Vec<Vec<T>> =
            sols.representatives().into_iter().filter(|z| z.iter().any(|v| !v.is_zero())).collect();
        for (i, u) in reps.iter().enumerate() {
            for v in &reps[i + 1..] {
                if disjoint(u, v) && (consecutive(u) || consecutive(v)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
