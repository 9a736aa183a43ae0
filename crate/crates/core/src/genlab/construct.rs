//! Generators. Every candidate is checked against the minor definition and
//! dropped on failure, so correctness never rests on the construction.

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use super::{Certificate, GeneratedInstance, Target};
use crate::criteria::{check_by_contiguous_minors, ClassQuery};
use crate::error::{arg_err, Error, Result};
use crate::minors::minors_up_to;
use crate::random::{self, SeededRng};
use crate::scalar::Scalar;
use crate::{ExactMatrix, Rational};

/// Default number of candidates tried before giving up.
pub const DEFAULT_BUDGET: usize = 100_000;

fn attempt_rng(seed: u64, attempt: usize) -> SeededRng {
    let mut rng = random::seeded(seed);
    rng.set_stream(attempt as u64);
    rng
}

fn check_shape(shape: (usize, usize), k: usize) -> Result<()> {
    let (m, n) = shape;
    if m == 0 || n == 0 {
        return arg_err("shape must be positive");
    }
    if k == 0 || k > m.min(n) {
        return arg_err(format!("order {k} outside [1, {}] for shape {m}x{n}", m.min(n)));
    }
    Ok(())
}

fn exhausted(what: &str, budget: usize) -> Error {
    Error::Resource(format!("no {what} instance found in {budget} attempts"))
}

/// Product of unit lower bidiagonal factors `I + t e_{i+1} e_i^T` in Neville
/// order, with positive `t`. All minors that are not forced to vanish by the
/// triangular shape are positive.
fn neville_lower(n: usize, rng: &mut SeededRng) -> ExactMatrix {
    let mut l = ExactMatrix::identity(n);
    for j in 0..n.saturating_sub(1) {
        for i in (j..n - 1).rev() {
            let t = Rational::from_int(rng.gen_range(1..=3));
            // Right-multiplying by the factor adds t * column (i+1) to column i.
            for r in 0..n {
                let v = l[(r, i)].clone() + t.clone() * l[(r, i + 1)].clone();
                l.set(r, i, v);
            }
        }
    }
    l
}

/// Scales by the least common denominator so all entries are integers. A
/// positive scale keeps every minor's sign.
fn clear_denominators(a: &ExactMatrix) -> ExactMatrix {
    let lcm = a
        .data()
        .iter()
        .fold(num_bigint::BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let g = a
        .data()
        .iter()
        .map(|v| (v * Rational::from_integer(lcm.clone())).to_integer())
        .fold(num_bigint::BigInt::zero(), |acc, v| acc.gcd(&v));
    let g = if g.is_zero() { num_bigint::BigInt::one() } else { g };
    a.scale(&Rational::new(lcm, g))
}

/// `L D U^T` with `L`, `U` Neville products and `D` an `m x n` diagonal. With
/// `d_1 < 0` and later pivots tiny and positive, the leading term of every
/// minor's Cauchy-Binet expansion is negative.
fn ldu_candidate(m: usize, n: usize, pivots: &[Rational], rng: &mut SeededRng) -> ExactMatrix {
    let l = neville_lower(m, rng);
    let u = neville_lower(n, rng);
    let mut d = ExactMatrix::zeros(m, n);
    for (i, p) in pivots.iter().enumerate() {
        d.set(i, i, p.clone());
    }
    clear_denominators(&l.mul(&d).unwrap().mul(&u.transpose()).unwrap())
}

/// Starts coarse to keep entries small and halves every eight rejections,
/// down to `1/1024`.
fn attempt_eps(attempt: usize) -> Rational {
    Rational::new(1.into(), (4i64 << (attempt / 8).min(8)).into())
}

fn eps_power(eps: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * eps.clone())
}

/// Pivots `(-1, c_2 eps, c_3 eps^2, ...)`; those past `k` get random signs
/// unless `strict_tail` is set.
fn tn_pivots(p: usize, k: usize, eps: &Rational, rng: &mut SeededRng) -> Vec<Rational> {
    (0..p)
        .map(|i| {
            if i == 0 {
                return -Rational::one();
            }
            let c: Rational = random::positive_ratio(rng, 9, 1);
            let v = c * eps_power(eps, i);
            if i >= k && rng.gen_bool(0.5) {
                -v
            } else {
                v
            }
        })
        .collect()
}

fn certify(a: &ExactMatrix, k: usize, target: Target, seed: u64, attempts: usize) -> GeneratedInstance {
    GeneratedInstance {
        certificate: Certificate::enumerate(a, k),
        matrix: a.clone(),
        target,
        seed,
        attempts,
    }
}

/// A matrix verified TN of order `k`.
pub fn generate_tn(shape: (usize, usize), k: usize, seed: u64) -> Result<GeneratedInstance> {
    generate_tn_with_budget(shape, k, seed, DEFAULT_BUDGET)
}

pub fn generate_tn_with_budget(
    shape: (usize, usize),
    k: usize,
    seed: u64,
    budget: usize,
) -> Result<GeneratedInstance> {
    check_shape(shape, k)?;
    let (m, n) = shape;
    for attempt in 0..budget {
        let mut rng = attempt_rng(seed, attempt);
        let pivots = tn_pivots(m.min(n), k, &attempt_eps(attempt), &mut rng);
        let a = ldu_candidate(m, n, &pivots, &mut rng);
        if check_by_contiguous_minors(&a, ClassQuery::tn(k))?.holds {
            return Ok(certify(&a, k, Target::Tn(k), seed, attempt + 1));
        }
    }
    Err(exhausted("TN", budget))
}

/// An `r x r` matrix verified TN of order `r - 1` whose determinant has the
/// requested sign (`true` for positive).
pub fn generate_tn_corank_one(r: usize, positive_det: bool, seed: u64) -> Result<GeneratedInstance> {
    if r < 2 {
        return arg_err("need r >= 2");
    }
    for attempt in 0..DEFAULT_BUDGET {
        let mut rng = attempt_rng(seed, attempt);
        let eps = attempt_eps(attempt);
        let mut pivots = tn_pivots(r - 1, r - 1, &eps, &mut rng);
        let c: Rational = random::positive_ratio(&mut rng, 9, 1);
        let last = c * eps_power(&eps, r + 1);
        pivots.push(if positive_det { -last } else { last });
        let a = ldu_candidate(r, r, &pivots, &mut rng);
        let det = a.det()?;
        if det.is_pos() == positive_det
            && !det.is_zero()
            && check_by_contiguous_minors(&a, ClassQuery::tn(r - 1))?.holds
        {
            return Ok(certify(&a, r - 1, Target::Tn(r - 1), seed, attempt + 1));
        }
    }
    Err(exhausted("TN corank-one", DEFAULT_BUDGET))
}

/// The worked-example matrix `[[0,0,0],[-1,-3,-3],[-1,-1,-1]]`, TNP of order 3.
pub fn worked_example() -> ExactMatrix {
    ExactMatrix::from_i64(&[&[0, 0, 0], &[-1, -3, -3], &[-1, -1, -1]]).expect("fixed shape")
}

/// A matrix verified TNP of order `k`: a TN instance with a zero or repeated
/// row or column inserted.
pub fn generate_tnp(shape: (usize, usize), k: usize, seed: u64) -> Result<GeneratedInstance> {
    check_shape(shape, k)?;
    let (m, n) = shape;
    let tnp_holds = |a: &ExactMatrix| -> Result<bool> {
        Ok(minors_up_to(a, k)?.all(|rec| !rec.value.is_pos()))
    };
    if m == 1 && n == 1 {
        let mut rng = attempt_rng(seed, 0);
        let v = if rng.gen_bool(0.5) { Rational::zero() } else { -random::positive_ratio::<Rational>(&mut rng, 9, 1) };
        let a = ExactMatrix::from_rows(vec![vec![v]])?;
        return Ok(certify(&a, k, Target::Tnp(k), seed, 1));
    }
    for attempt in 0..DEFAULT_BUDGET {
        let mut rng = attempt_rng(seed, attempt);
        // Insert along rows when possible; transpose handles the column case.
        let along_rows = if m == 1 { false } else if n == 1 { true } else { rng.gen_bool(0.5) };
        let (bm, bn) = if along_rows { (m - 1, n) } else { (n - 1, m) };
        let base_k = k.min(bm.min(bn));
        let base = generate_tn_with_budget((bm, bn), base_k, rng.gen(), 1000)?.matrix;
        let pos = rng.gen_range(0..=bm);
        let zero_row = rng.gen_bool(0.5);
        let mut rows: Vec<Vec<Rational>> = (0..bm).map(|i| base.row(i).to_vec()).collect();
        let inserted = if zero_row || bm == 0 {
            vec![Rational::zero(); bn]
        } else {
            rows[pos.min(bm - 1)].clone()
        };
        rows.insert(pos, inserted);
        let mut a = ExactMatrix::from_rows(rows)?;
        if !along_rows {
            a = a.transpose();
        }
        if tnp_holds(&a)? {
            return Ok(certify(&a, k, Target::Tnp(k), seed, attempt + 1));
        }
    }
    Err(exhausted("TNP", DEFAULT_BUDGET))
}

/// A negative matrix failing TN of order `k` at exactly one minor, obtained
/// by moving a single entry of a TN instance just past the nearest root of
/// the minors that contain it. Minors of size exactly `k` are preferred.
pub fn generate_near_miss(shape: (usize, usize), k: usize, seed: u64) -> Result<GeneratedInstance> {
    check_shape(shape, k)?;
    let (m, n) = shape;
    for attempt in 0..DEFAULT_BUDGET {
        let mut rng = attempt_rng(seed, attempt);
        let base = generate_tn_with_budget(shape, k, rng.gen(), 1000)?.matrix;
        if k == 1 {
            let (i, j) = (rng.gen_range(0..m), rng.gen_range(0..n));
            let mut a = base;
            a.set(i, j, Rational::zero());
            return Ok(certify(&a, k, Target::NearMiss(k), seed, attempt + 1));
        }
        let mut cells: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        cells.shuffle(&mut rng);
        let strict_size = attempt % 2 == 0;
        for (i, j) in cells {
            if let Some(a) = perturb_entry(&base, i, j, k, strict_size) {
                if failing_minor_count(&a, k)? == 1 {
                    return Ok(certify(&clear_denominators(&a), k, Target::NearMiss(k), seed, attempt + 1));
                }
            }
        }
    }
    Err(exhausted("near-miss", DEFAULT_BUDGET))
}

fn failing_minor_count(a: &ExactMatrix, k: usize) -> Result<usize> {
    Ok(minors_up_to(a, k)?.filter(|rec| !rec.value.is_neg()).count())
}

/// Moves entry `(i, j)` upward past the smallest root among minors through
/// it, staying below the next root and below zero.
fn perturb_entry(base: &ExactMatrix, i: usize, j: usize, k: usize, need_size_k: bool) -> Option<ExactMatrix> {
    let v0 = base[(i, j)].clone();
    let mut roots: Vec<(Rational, usize)> = Vec::new();
    for rec in minors_up_to(base, k).ok()? {
        let (ri, cj) = (i + 1, j + 1);
        if !rec.rows.as_slice().contains(&ri) || !rec.cols.as_slice().contains(&cj) {
            continue;
        }
        // The minor is affine in the entry: D(v) = D(v0) + slope * (v - v0).
        let slope = if rec.order() == 1 {
            Rational::one()
        } else {
            let sub = base.submatrix(&rec.rows, &rec.cols).ok()?;
            let li = rec.rows.as_slice().iter().position(|&r| r == ri)? + 1;
            let lj = rec.cols.as_slice().iter().position(|&c| c == cj)? + 1;
            let minor = sub.cofactor_minor(li, lj).ok()?;
            if (li + lj) % 2 == 0 { minor } else { -minor }
        };
        if slope.is_pos() {
            roots.push((v0.clone() - rec.value.clone() / slope, rec.order()));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    let (first, size) = roots.first()?.clone();
    if need_size_k && size != k {
        return None;
    }
    let next = roots.get(1).map(|r| r.0.clone())?;
    if next <= first || !first.is_neg() {
        return None;
    }
    let upper = if next.is_neg() { next } else { Rational::zero() };
    let v = (first + upper) * Rational::half();
    let mut a = base.clone();
    a.set(i, j, v);
    Some(a)
}

/// Whether every principal minor is negative.
pub fn is_n_matrix(a: &ExactMatrix) -> Result<bool> {
    if !a.is_square() {
        return Ok(false);
    }
    Ok(minors_up_to(a, a.rows())?.filter(|rec| rec.rows == rec.cols).all(|rec| rec.value.is_neg()))
}

/// A square matrix with negative entries and negative principal minors. The
/// entries of a TN instance are scaled independently by `1 + delta u`,
/// `|u| <= 1`, with `delta` halving after each rejected candidate.
pub fn generate_n_matrix(n: usize, seed: u64) -> Result<GeneratedInstance> {
    if n == 0 {
        return arg_err("size must be positive");
    }
    let base = generate_tn_with_budget((n, n), n, seed, DEFAULT_BUDGET)?.matrix;
    for attempt in 0..DEFAULT_BUDGET {
        let mut rng = attempt_rng(seed, attempt + 1);
        let delta = Rational::new(1.into(), num_bigint::BigInt::from(1u64 << (attempt % 24)));
        let a = ExactMatrix::from_fn(n, n, |i, j| {
            let u = Rational::from_ratio(rng.gen_range(-8..=8), 8);
            base[(i, j)].clone() * (Rational::one() + delta.clone() * u)
        });
        if a.data().iter().all(|v| v.is_neg()) && is_n_matrix(&a)? {
            return Ok(certify(&clear_denominators(&a), n, Target::Random, seed, attempt + 1));
        }
    }
    Err(exhausted("N-matrix", DEFAULT_BUDGET))
}

/// Entries `p/q` with `|p| <= 9`, `q <= 4`, each sign equally likely, zero
/// with probability about 1/19.
pub fn generate_random(shape: (usize, usize), seed: u64) -> Result<GeneratedInstance> {
    let (m, n) = shape;
    if m == 0 || n == 0 {
        return arg_err("shape must be positive");
    }
    let mut rng = random::seeded(seed);
    let a = ExactMatrix::from_fn(m, n, |_, _| Rational::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=4)));
    let k = m.min(n);
    Ok(certify(&a, k, Target::Random, seed, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::check_by_minor_definition;

    #[test]
    fn tn_instances_are_certified() {
        for (shape, k) in [((2, 2), 2), ((3, 3), 3), ((4, 3), 3), ((2, 5), 2), ((5, 5), 3), ((1, 4), 1)] {
            for seed in 0..3 {
                let inst = generate_tn(shape, k, seed).unwrap();
                assert_eq!(inst.matrix.shape(), shape);
                assert!(check_by_minor_definition(&inst.matrix, ClassQuery::tn(k)).unwrap().holds);
                assert!(inst.certificate.holds(Target::Tn(k)));
                assert!(inst.matrix.data().iter().all(|v| v.is_integer()));
            }
        }
        assert_eq!(generate_tn((3, 3), 3, 7).unwrap().matrix, generate_tn((3, 3), 3, 7).unwrap().matrix);
        assert!(generate_tn((2, 2), 3, 0).is_err());
    }

    #[test]
    fn corank_one_instances() {
        for r in 2..=5 {
            for positive in [true, false] {
                let inst = generate_tn_corank_one(r, positive, 11).unwrap();
                assert_eq!(inst.matrix.det().unwrap().is_pos(), positive);
                assert!(check_by_minor_definition(&inst.matrix, ClassQuery::tn(r - 1)).unwrap().holds);
            }
        }
    }

    #[test]
    fn tnp_instances_are_certified() {
        for (shape, k) in [((3, 2), 2), ((4, 3), 3), ((3, 3), 3), ((1, 3), 1), ((1, 1), 1), ((5, 4), 2)] {
            for seed in 0..3 {
                let inst = generate_tnp(shape, k, seed).unwrap();
                assert_eq!(inst.matrix.shape(), shape);
                assert!(check_by_minor_definition(&inst.matrix, ClassQuery::tnp(k)).unwrap().holds);
            }
        }
        assert!(check_by_minor_definition(&worked_example(), ClassQuery::tnp(3)).unwrap().holds);
    }

    #[test]
    fn near_misses_fail_once() {
        for (shape, k) in [((2, 2), 2), ((3, 3), 3), ((3, 3), 2), ((4, 4), 4), ((2, 3), 1)] {
            for seed in 0..3 {
                let inst = generate_near_miss(shape, k, seed).unwrap();
                assert!(inst.matrix.data().iter().all(|v| !v.is_pos()));
                assert_eq!(failing_minor_count(&inst.matrix, k).unwrap(), 1);
                assert!(!inst.certificate.holds(Target::Tn(k)));
            }
        }
    }

    #[test]
    fn n_matrices_have_negative_principal_minors() {
        let mut non_tn = 0;
        for n in 1..=5 {
            for seed in 0..6 {
                let a = generate_n_matrix(n, seed).unwrap().matrix;
                assert!(is_n_matrix(&a).unwrap());
                assert!(a.data().iter().all(|v| v.is_neg()));
                if !check_by_minor_definition(&a, ClassQuery::tn(n)).unwrap().holds {
                    non_tn += 1;
                }
            }
        }
        assert!(non_tn > 0);
        assert!(!is_n_matrix(&ExactMatrix::from_i64(&[&[-1, -2], &[-2, -5]]).unwrap()).unwrap());
    }

    #[test]
    fn random_instances_are_reproducible() {
        let a = generate_random((3, 4), 5).unwrap();
        assert_eq!(a.matrix, generate_random((3, 4), 5).unwrap().matrix);
        assert!(generate_random((0, 4), 5).is_err());
    }
}
