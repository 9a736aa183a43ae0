//! Exact linear complementarity: find `x >= 0` with `y = A x + q >= 0` and
//! `x . y = 0`, and the LCP tests for total negativity and non-positivity.

mod characterize;
mod solve;

pub use characterize::{
    check_tn_lcp_patterns, count_solutions_for_positive_q, disjoint_support_pair_check,
    has_forbidden_pattern_pair, lcp_single_vector_check, lcp_single_vector_check_variant,
    lcp_test_vector, tnp_lcp_sufficient_check, PositiveQCount, TnpLcpMode, TnpLcpOutcome,
};
pub use solve::{solve_lcp, LCP_DIM_CAP};

use crate::error::{dim_err, Result};
use crate::matrix::{IndexSet, Matrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcpInstance<T: Scalar> {
    a: Matrix<T>,
    q: Vec<T>,
}

impl<T: Scalar> LcpInstance<T> {
    pub fn new(a: Matrix<T>, q: Vec<T>) -> Result<Self> {
        if !a.is_square() {
            return dim_err(format!("LCP matrix must be square, got {:?}", a.shape()));
        }
        if q.len() != a.rows() {
            return dim_err(format!("q has length {}, matrix is {}x{}", q.len(), a.rows(), a.cols()));
        }
        Ok(LcpInstance { a, q })
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.a
    }

    pub fn q(&self) -> &[T] {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    /// `A x + q`.
    pub fn slack(&self, x: &[T]) -> Vec<T> {
        self.a
            .mul_vec(x)
            .expect("length checked by caller")
            .into_iter()
            .zip(&self.q)
            .map(|(ax, q)| ax + q.clone())
            .collect()
    }

    pub fn is_solution(&self, x: &[T]) -> bool {
        if x.len() != self.dim() || x.iter().any(|v| v.is_neg()) {
            return false;
        }
        let y = self.slack(x);
        y.iter().all(|v| !v.is_neg())
            && x.iter().zip(&y).all(|(xi, yi)| (xi.clone() * yi.clone()).is_zero())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionKind {
    Finite,
    Infinite,
}

/// A polyhedral piece of the solution set living on one support: the convex
/// hull of `vertices` plus the cone of `rays`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFamily<T> {
    pub support: IndexSet,
    pub vertices: Vec<Vec<T>>,
    pub rays: Vec<Vec<T>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcpSolutionSet<T> {
    /// Isolated solutions, deduplicated and sorted lexicographically.
    pub solutions: Vec<Vec<T>>,
    pub families: Vec<SolutionFamily<T>>,
}

impl<T: Scalar> LcpSolutionSet<T> {
    pub fn kind(&self) -> SolutionKind {
        if self.families.is_empty() {
            SolutionKind::Finite
        } else {
            SolutionKind::Infinite
        }
    }

    /// Isolated solutions together with the vertices of every family.
    pub fn representatives(&self) -> Vec<Vec<T>> {
        let mut out = self.solutions.clone();
        for f in &self.families {
            for v in &f.vertices {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
        }
        out.sort_by(|x, y| solve::lex_cmp(x, y));
        out
    }

    /// Membership of `x` in the solution set described here.
    pub fn contains(&self, x: &[T]) -> bool {
        self.solutions.iter().any(|s| s.as_slice() == x)
            || self.families.iter().any(|f| family_contains(f, x))
    }
}

/// Exact for points, half-lines and segments. Larger pieces only match their
/// vertices.
fn family_contains<T: Scalar>(f: &SolutionFamily<T>, x: &[T]) -> bool {
    if f.vertices.len() == 1 && f.rays.len() <= 1 {
        let base = &f.vertices[0];
        let diff: Vec<T> = x.iter().zip(base).map(|(a, b)| a.clone() - b.clone()).collect();
        if diff.iter().all(|d| d.is_zero()) {
            return true;
        }
        let Some(ray) = f.rays.first() else {
            return false;
        };
        return scalar_multiple(&diff, ray).is_some_and(|m| !m.is_neg());
    }
    if f.rays.is_empty() && f.vertices.len() == 2 {
        let (p, r) = (&f.vertices[0], &f.vertices[1]);
        let diff: Vec<T> = x.iter().zip(p).map(|(a, b)| a.clone() - b.clone()).collect();
        let dir: Vec<T> = r.iter().zip(p).map(|(a, b)| a.clone() - b.clone()).collect();
        if diff.iter().all(|d| d.is_zero()) {
            return true;
        }
        return scalar_multiple(&diff, &dir)
            .is_some_and(|m| !m.is_neg() && m <= T::one());
    }
    f.vertices.iter().any(|v| v.as_slice() == x)
}

/// `m` with `diff = m * dir`, if any.
fn scalar_multiple<T: Scalar>(diff: &[T], dir: &[T]) -> Option<T> {
    let i = dir.iter().position(|d| !d.is_zero())?;
    let m = diff[i].clone() / dir[i].clone();
    diff.iter()
        .zip(dir)
        .all(|(a, b)| *a == m.clone() * b.clone())
        .then_some(m)
}

/// Per-coordinate sign in a solution-pattern test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternEntry {
    Plus,
    Zero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignPattern(Vec<PatternEntry>);

impl SignPattern {
    pub fn new(entries: Vec<PatternEntry>) -> Option<Self> {
        (!entries.is_empty()).then_some(SignPattern(entries))
    }

    /// `(+, 0, +, 0, ...)` when `odd` is set, otherwise `(0, +, 0, +, ...)`.
    pub fn alternating(r: usize, odd: bool) -> Self {
        SignPattern(
            (0..r)
                .map(|i| if (i % 2 == 0) == odd { PatternEntry::Plus } else { PatternEntry::Zero })
                .collect(),
        )
    }

    pub fn entries(&self) -> &[PatternEntry] {
        &self.0
    }

    pub fn matches<T: Scalar>(&self, x: &[T]) -> bool {
        x.len() == self.0.len()
            && self.0.iter().zip(x).all(|(p, v)| match p {
                PatternEntry::Plus => v.is_pos(),
                PatternEntry::Zero => v.is_zero(),
            })
    }
}
