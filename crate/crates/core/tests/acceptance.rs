//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use totneg::criteria::{
    check_by_minor_definition, check_tn_snr_single_vector, check_tn_vd_single_vector_order,
    check_tnp_snr, check_tnp_vd_order, AlphaChoice, ClassQuery, SignClass, TnpSnrMode, TnpVdMode,
};
use totneg::genlab::{
    cross_validate, cross_validate_methods, generate_n_matrix, generate_near_miss, generate_random, generate_tn,
    generate_tnp, orthant_impossibility_suite, worked_example, GeneratedInstance,
};
use totneg::hull::{IntervalHull, SignWord, HULL_SWEEP_CAP};
use totneg::lcp::{
    count_solutions_for_positive_q, solve_lcp, tnp_lcp_sufficient_check, LcpInstance,
    PositiveQCount, TnpLcpMode, TnpLcpOutcome,
};
use totneg::minors::contiguous_selections;
use totneg::random;
use totneg::signs::{check_splus_sminus_duality, is_alternating_orthant, s_minus, s_plus, EndSignReference};
use totneg::{ExactMatrix, Rational, Scalar, Sign};

const PER_CLASS: usize = 216;
const RANDOM_COUNT: usize = 540;
const MAX_DIM: usize = 6;
const HULLS_PER_SHAPE: usize = 50;
const HULL_SAMPLES: usize = 100;
const N_MATRICES: usize = 100;
const POSITIVE_Q: usize = 20;
const ORTHANT_TRIALS_PER_CLASS: usize = 1700;
const ALPHA_CHOICES: usize = 10;

type Outcome = Result<String, String>;

#[derive(Clone)]
struct Instance {
    label: &'static str,
    matrix: ExactMatrix,
}

fn shapes() -> Vec<(usize, usize)> {
    (1..=MAX_DIM).flat_map(|m| (1..=MAX_DIM).map(move |n| (m, n))).collect()
}

/// Order cycles through `1..=min(m, n)`, largest first.
fn order_for(shape: (usize, usize), i: usize) -> usize {
    let p = shape.0.min(shape.1);
    p - (i / 36) % p
}

fn build_corpus() -> Result<Vec<Instance>, String> {
    let shapes = shapes();
    let gen = |label: &'static str, f: &(dyn Fn((usize, usize), usize, u64) -> totneg::Result<GeneratedInstance> + Sync)| {
        (0..PER_CLASS)
            .into_par_iter()
            .map(|i| {
                let shape = shapes[i % shapes.len()];
                let inst = f(shape, order_for(shape, i), 1000 + i as u64)
                    .map_err(|e| format!("{label} {shape:?}: {e}"))?;
                Ok(Instance { label, matrix: inst.matrix })
            })
            .collect::<Result<Vec<_>, String>>()
    };
    let mut out = gen("tn", &|s, k, seed| generate_tn(s, k, seed))?;
    out.extend(gen("tnp", &|s, k, seed| generate_tnp(s, k, seed))?);
    out.extend(gen("near-miss", &|s, k, seed| generate_near_miss(s, k, seed))?);
    let random: Vec<Instance> = (0..RANDOM_COUNT)
        .into_par_iter()
        .map(|i| {
            let shape = shapes[i % shapes.len()];
            let mut a = generate_random(shape, 5000 + i as u64).unwrap().matrix;
            // Half the random matrices are made entrywise negative.
            if i % 2 == 1 {
                a = a.map(|v| if v.is_zero() { -Rational::one() } else { -v.abs() });
            }
            Instance { label: "random", matrix: a }
        })
        .collect();
    out.extend(random);
    Ok(out)
}

fn orders(a: &ExactMatrix) -> std::ops::RangeInclusive<usize> {
    1..=a.rows().min(a.cols())
}

fn criterion_1(corpus: &[Instance]) -> Outcome {
    let results: Vec<Result<(usize, usize), String>> = corpus
        .par_iter()
        .map(|inst| {
            let mut holds = 0;
            let mut runs = 0;
            for k in orders(&inst.matrix) {
                let rep = cross_validate(&inst.matrix, SignClass::TotallyNegative, k)
                    .map_err(|e| format!("{} k={k}: {e}", inst.label))?;
                runs += 1;
                holds += rep.holds as usize;
            }
            Ok((runs, holds))
        })
        .collect();
    let mut runs = 0;
    let mut holds = 0;
    for r in results {
        let (a, b) = r?;
        runs += a;
        holds += b;
    }
    Ok(format!("{} instances, {runs} (matrix, k) pairs, {holds} TN, 0 disagreements", corpus.len()))
}

#[derive(Default)]
struct TnpTally {
    runs: usize,
    holds: usize,
    sufficient: usize,
    /// Sufficient condition reported on a matrix that is not TNP.
    unsound: Vec<(usize, String)>,
}

fn criterion_2(corpus: &[Instance]) -> Outcome {
    let results: Vec<Result<TnpTally, String>> = corpus
        .par_iter()
        .map(|inst| {
            let mut t = TnpTally::default();
            for k in orders(&inst.matrix) {
                let rep = cross_validate_methods(&inst.matrix, SignClass::TotallyNonPositive, k)
                    .map_err(|e| format!("{} k={k}: {e}", inst.label))?;
                t.runs += 1;
                t.holds += rep.holds as usize;
                t.sufficient += (rep.tnp_lcp == Some("sufficient-condition-holds")) as usize;
                if rep.tnp_lcp_contradiction.is_some() {
                    t.unsound.push((k, format!("{} {:?}", inst.label, inst.matrix)));
                }
            }
            Ok(t)
        })
        .collect();
    let mut total = TnpTally::default();
    for r in results {
        let t = r?;
        total.runs += t.runs;
        total.holds += t.holds;
        total.sufficient += t.sufficient;
        total.unsound.extend(t.unsound);
    }
    let (runs, holds, sufficient) = (total.runs, total.holds, total.sufficient);
    let mut problems = Vec::new();
    if let Some((k, first)) = total.unsound.first() {
        problems.push(format!(
            "{} (matrix, k) pairs report the LCP sufficient condition without being TNP, first k={k} {first}",
            total.unsound.len()
        ));
    }

    let ex = worked_example();
    if !check_by_minor_definition(&ex, ClassQuery::tnp(3)).unwrap().holds {
        problems.push("example matrix is not TNP of order 3".to_string());
    }
    match tnp_lcp_sufficient_check(&ex, 3, TnpLcpMode::SingleQ).unwrap() {
        TnpLcpOutcome::Inconclusive { .. } => {}
        other => problems.push(format!("example LCP check returned {other:?}")),
    }
    let q: Vec<Rational> = [0, 1, 1].iter().map(|&v| Rational::from_int(v)).collect();
    let sols = solve_lcp(&LcpInstance::new(ex.clone(), q).unwrap()).unwrap();
    let point = |t: Rational| vec![t, Rational::zero(), Rational::zero()];
    if !sols.contains(&point(Rational::one())) {
        problems.push("(1,0,0) missing from the solution set".to_string());
    }
    for t in [Rational::from_ratio(3, 2), Rational::from_int(2), Rational::from_int(5)] {
        if !sols.contains(&point(t.clone())) {
            problems.push(format!("({},0,0) with t > 1 is not a solution", t));
        }
    }
    let image = |z: &[Rational]| ex.mul_vec(z).unwrap();
    if image(&point(Rational::one())) == image(&point(Rational::half())) {
        problems.push("images of (1,0,0) and (1/2,0,0) coincide".to_string());
    }
    let detail = format!("{runs} (matrix, k) pairs, {holds} TNP, {sufficient} certified by the LCP condition");
    if problems.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; {}", problems.join("; ")))
    }
}

fn hull_pair(shape: (usize, usize), i: usize) -> (ExactMatrix, ExactMatrix) {
    let seed = 20_000 + i as u64;
    let mut rng = random::seeded(seed);
    let k = shape.0.min(shape.1);
    let a = match i % 3 {
        0 => generate_tn(shape, k, seed).unwrap().matrix,
        1 => generate_tnp(shape, k, seed).unwrap().matrix,
        _ => generate_random(shape, seed).unwrap().matrix.map(|v| -v.abs()),
    };
    let spread = [Rational::zero(), Rational::from_ratio(1, 1000), Rational::from_ratio(1, 10), Rational::one()]
        [rng.gen_range(0..4)]
    .clone();
    let b = ExactMatrix::from_fn(shape.0, shape.1, |r, c| {
        let u = Rational::from_ratio(rng.gen_range(0..=4), 4);
        let base = a[(r, c)].abs().max(Rational::one());
        a[(r, c)].clone() + spread.clone() * u * base
    });
    (a, b)
}

/// Every `I_{z, z̃}` together with sampled members.
fn hull_members(hull: &IntervalHull<Rational>, seed: u64) -> Vec<ExactMatrix> {
    let (m, n) = hull.shape();
    let word = |bits: u32, len: usize| {
        SignWord((0..len).map(|t| if bits >> t & 1 == 1 { Sign::Minus } else { Sign::Plus }).collect())
    };
    let mut out = Vec::new();
    for zb in 0u32..1 << m {
        for wb in 0u32..1 << n {
            out.push(hull.i_matrix(&word(zb, m), &word(wb, n)).unwrap());
        }
    }
    out.extend((0..HULL_SAMPLES).map(|s| hull.sample_member(seed.wrapping_mul(1000) + s as u64)));
    out
}

fn criterion_3() -> Outcome {
    let shapes: Vec<(usize, usize)> = (1..=4).flat_map(|m| (1..=4).map(move |n| (m, n))).collect();
    let jobs: Vec<((usize, usize), usize)> =
        shapes.iter().flat_map(|&s| (0..HULLS_PER_SHAPE).map(move |i| (s, i))).collect();
    let results: Vec<Result<(usize, usize), String>> = jobs
        .par_iter()
        .map(|&(shape, i)| {
            let (a, b) = hull_pair(shape, i);
            let hull = IntervalHull::new(a, b).map_err(|e| e.to_string())?;
            debug_assert!(shape.0 + shape.1 <= HULL_SWEEP_CAP);
            let k = 1 + i % shape.0.min(shape.1);
            let members = hull_members(&hull, i as u64);
            let mut fails = 0;
            for class in [SignClass::TotallyNegative, SignClass::TotallyNonPositive] {
                let query = ClassQuery { class, order: k };
                let verdict = match class {
                    SignClass::TotallyNegative => hull.is_totally_negative(k),
                    SignClass::TotallyNonPositive => hull.is_totally_nonpositive(k),
                }
                .map_err(|e| e.to_string())?;
                let exhaustive = members
                    .iter()
                    .all(|c| check_by_minor_definition(c, query).unwrap().holds);
                if verdict.holds != exhaustive {
                    return Err(format!("{shape:?} hull {i} {class:?} k={k}: hull says {}, members say {exhaustive}", verdict.holds));
                }
                if let Some(w) = verdict.failing {
                    fails += 1;
                    if !hull.contains(&w.member) || check_by_minor_definition(&w.member, query).unwrap().holds {
                        return Err(format!("{shape:?} hull {i}: witness {} is not a failing member", w.label));
                    }
                }
            }
            Ok((2, fails))
        })
        .collect();
    let (mut checks, mut fails) = (0, 0);
    for r in results {
        let (c, f) = r?;
        checks += c;
        fails += f;
    }
    Ok(format!("{} hulls over 16 shapes, {checks} verdicts, {fails} failing with member witnesses", jobs.len()))
}

fn criterion_4() -> Outcome {
    let results: Vec<Result<(), String>> = (0..N_MATRICES)
        .into_par_iter()
        .map(|i| {
            let n = 1 + i % 5;
            let a = generate_n_matrix(n, 30_000 + i as u64).map_err(|e| e.to_string())?.matrix;
            match count_solutions_for_positive_q(&a, POSITIVE_Q, i as u64).map_err(|e| e.to_string())? {
                PositiveQCount::AlwaysTwo => Ok(()),
                PositiveQCount::CounterexampleFound { q, solutions } => {
                    Err(format!("n={n} q={q:?}: {} solutions", solutions.solutions.len()))
                }
            }
        })
        .collect();
    for r in results {
        r?;
    }
    Ok(format!("{N_MATRICES} matrices of size 1..5, at least {POSITIVE_Q} positive q each, always 2 solutions"))
}

fn criterion_5() -> Outcome {
    let mut total = 0;
    let mut notes = Vec::new();
    let reports: Vec<_> = [3usize, 4, 5]
        .par_iter()
        .map(|&r| (r, orthant_impossibility_suite(r, ORTHANT_TRIALS_PER_CLASS, 40 + r as u64)))
        .collect();
    for (r, rep) in reports {
        let rep = rep.map_err(|e| format!("r={r}: {e}"))?;
        if let Some(f) = rep.failures.first() {
            return Err(format!("r={r}: {} failures, first {:?} at x={:?}", rep.failures.len(), f.property, f.x));
        }
        total += rep.samples;
        if !rep.positive_det_found {
            notes.push(format!("r={r} without positive determinant"));
        }
    }
    if total < 10_000 {
        return Err(format!("only {total} samples"));
    }
    let extra = if notes.is_empty() { "positive-determinant instances at every r".to_string() } else { notes.join(", ") };
    Ok(format!("{total} samples at r in 3..=5, 0 violations, {extra}"))
}

fn criterion_6(corpus: &[Instance]) -> Outcome {
    let results: Vec<Result<usize, String>> = corpus
        .par_iter()
        .enumerate()
        .map(|(idx, inst)| {
            let a = &inst.matrix;
            let p = a.rows().min(a.cols());
            let tn = check_by_minor_definition(a, ClassQuery::tn(p)).unwrap().holds;
            let mut rng = random::seeded(idx as u64);
            let mut checks = 0;
            for (rows, cols) in contiguous_selections(a.rows(), a.cols(), 1..=p) {
                let sub = a.submatrix(&rows, &cols).unwrap();
                let r = sub.rows();
                let det = sub.det().unwrap();
                let adj = sub.adjugate().unwrap();
                if sub.mul(&adj).unwrap() != ExactMatrix::identity(r).scale(&det) {
                    return Err(format!("{}: A adj(A) != det I", inst.label));
                }
                let alpha: Vec<Rational> = random::alternating_vector(&mut rng, r);
                let x = adj.mul_vec(&alpha).unwrap();
                let lhs = sub.mul_vec(&x).unwrap();
                let rhs: Vec<Rational> = alpha.iter().map(|v| v.clone() * det.clone()).collect();
                if lhs != rhs {
                    return Err(format!("{}: A_r x != det(A_r) alpha", inst.label));
                }
                if tn && !is_alternating_orthant(&x) {
                    return Err(format!("{}: test vector of a TN instance is not alternating", inst.label));
                }
                checks += 3;
            }
            for _ in 0..4 {
                let n = rng.gen_range(1..=8);
                let x: Vec<Rational> = (0..n).map(|_| Rational::from_int(rng.gen_range(-2..=2))).collect();
                checks += sign_identities(&x)?;
            }
            Ok(checks)
        })
        .collect();
    let mut checks = 0;
    for r in results {
        checks += r?;
    }
    // Every vector over {-1, 0, 1} up to length 6.
    for n in 1..=6u32 {
        for code in 0..3u32.pow(n) {
            let x: Vec<Rational> =
                (0..n).map(|t| Rational::from_int((code / 3u32.pow(t) % 3) as i64 - 1)).collect();
            checks += sign_identities(&x)?;
        }
    }
    Ok(format!("{checks} identities exact over the corpus and all sign words up to length 6"))
}

fn sign_identities(x: &[Rational]) -> Result<usize, String> {
    if x.iter().all(|v| v.is_zero()) {
        let ok = s_plus(x).unwrap().s_plus == x.len() && s_minus(x).unwrap() == 0;
        return if ok { Ok(1) } else { Err(format!("zero vector counts wrong for length {}", x.len())) };
    }
    if check_splus_sminus_duality(x).unwrap() {
        Ok(1)
    } else {
        Err(format!("duality fails at {x:?}"))
    }
}

fn random_alpha(rng: &mut random::SeededRng, i: usize) -> AlphaChoice<Rational> {
    let len = rng.gen_range(1..=4);
    let mags: Vec<Rational> = (0..len).map(|_| random::positive_ratio(rng, 20, 7)).collect();
    let sign = if i < ALPHA_CHOICES / 2 { Sign::Plus } else { Sign::Minus };
    AlphaChoice::new(mags, sign).unwrap()
}

fn criterion_7(corpus: &[Instance]) -> Outcome {
    let results: Vec<Result<(), String>> = corpus
        .par_iter()
        .enumerate()
        .map(|(idx, inst)| {
            let a = &inst.matrix;
            let k = a.rows().min(a.cols());
            let mut rng = random::seeded(90_000 + idx as u64);
            let verdicts = |alpha: &AlphaChoice<Rational>| -> [bool; 4] {
                [
                    check_tn_snr_single_vector(a, k, alpha).unwrap().holds,
                    check_tn_vd_single_vector_order(a, k, alpha, EndSignReference::Nonzero).unwrap().holds,
                    check_tnp_snr(a, k, &TnpSnrMode::SingleVector(alpha.clone())).unwrap().holds,
                    check_tnp_vd_order(a, k, &TnpVdMode::SingleVector(alpha.clone())).unwrap().holds,
                ]
            };
            let reference = verdicts(&AlphaChoice::ones());
            for i in 0..ALPHA_CHOICES {
                let alpha = random_alpha(&mut rng, i);
                if verdicts(&alpha) != reference {
                    return Err(format!("{} instance {idx}: verdicts change under {alpha:?}", inst.label));
                }
            }
            Ok(())
        })
        .collect();
    for r in results {
        r?;
    }
    Ok(format!("{} instances x {ALPHA_CHOICES} alpha choices (half with negative lead), 4 tests each", corpus.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = match build_corpus() {
        Ok(c) => c,
        Err(e) => {
            println!("corpus generation failed: {e}");
            return ExitCode::FAILURE;
        }
    };
    println!("corpus: {} instances in {:.1?}", corpus.len(), start.elapsed());
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 TN equivalence", Box::new(|| criterion_1(&corpus))),
        ("2 TNP equivalence", Box::new(|| criterion_2(&corpus))),
        ("3 hull verdicts", Box::new(criterion_3)),
        ("4 N-matrix LCP count", Box::new(criterion_4)),
        ("5 orthant impossibility", Box::new(criterion_5)),
        ("6 exact identities", Box::new(|| criterion_6(&corpus))),
        ("7 alpha invariance", Box::new(|| criterion_7(&corpus))),
    ];
    // `ACCEPTANCE_ONLY=2,5` runs a subset.
    let only: Option<Vec<String>> =
        std::env::var("ACCEPTANCE_ONLY").ok().map(|v| v.split(',').map(|s| s.trim().to_string()).collect());
    let criteria: Vec<_> = criteria
        .into_iter()
        .filter(|(name, _)| only.as_ref().map_or(true, |o| o.iter().any(|n| name.split(' ').next() == Some(n))))
        .collect();
    let mut failed = 0;
    for (name, run) in &criteria {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("criterion {name}: PASS ({detail}) [{:.1?}]", t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({why}) [{:.1?}]", t.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed in {:.1?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
