//! Sign-change counting and orthant predicates.
//!
//! `S⁻(x)` counts sign changes after deleting zeros; `S⁺(x)` is the maximum
//! count over every `±1` assignment to the zeros. The zero vector has
//! `S⁻ = 0` and `S⁺ = n`.

use crate::error::{arg_err, Result};
use crate::scalar::{Scalar, Sign};

/// Which signs an end coordinate takes across all maximizers of `S⁺`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SignSet {
    pub plus: bool,
    pub minus: bool,
}

impl SignSet {
    pub const BOTH: SignSet = SignSet { plus: true, minus: true };

    pub fn only(s: Sign) -> SignSet {
        match s {
            Sign::Plus => SignSet { plus: true, minus: false },
            Sign::Minus => SignSet { plus: false, minus: true },
        }
    }

    fn insert(&mut self, s: Sign) {
        match s {
            Sign::Plus => self.plus = true,
            Sign::Minus => self.minus = true,
        }
    }

    pub fn contains(&self, s: Sign) -> bool {
        match s {
            Sign::Plus => self.plus,
            Sign::Minus => self.minus,
        }
    }

    /// The sign, if exactly one is possible.
    pub fn unique(&self) -> Option<Sign> {
        match (self.plus, self.minus) {
            (true, false) => Some(Sign::Plus),
            (false, true) => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.plus && !self.minus
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignProfile {
    pub s_minus: usize,
    pub s_plus: usize,
    pub first_signs_at_max: SignSet,
    pub last_signs_at_max: SignSet,
    pub first_nonzero_sign: Option<Sign>,
    pub last_nonzero_sign: Option<Sign>,
}

/// How the variation-diminishing equality clause reads the end signs of the
/// input vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EndSignReference {
    /// Compare with the first and last nonzero coordinates.
    #[default]
    Nonzero,
    /// Compare with the literal first and last coordinates; a zero there is a
    /// mismatch.
    Component,
}

fn nonempty<T>(x: &[T]) -> Result<()> {
    if x.is_empty() {
        return arg_err("sign analysis of an empty vector");
    }
    Ok(())
}

fn nonzero_signs<T: Scalar>(x: &[T]) -> impl Iterator<Item = Sign> + '_ {
    x.iter().filter_map(Sign::of)
}

pub fn s_minus<T: Scalar>(x: &[T]) -> Result<usize> {
    nonempty(x)?;
    Ok(count_changes(nonzero_signs(x)))
}

fn count_changes(signs: impl Iterator<Item = Sign>) -> usize {
    let mut prev = None;
    let mut changes = 0;
    for s in signs {
        if prev.is_some_and(|p| p != s) {
            changes += 1;
        }
        prev = Some(s);
    }
    changes
}

const SIGNS: [Sign; 2] = [Sign::Minus, Sign::Plus];

fn slot(s: Sign) -> usize {
    match s {
        Sign::Minus => 0,
        Sign::Plus => 1,
    }
}

/// Full sign profile of `x`, with `S⁺` and end-sign sets computed by a
/// forward and a backward pass over the zero assignments.
pub fn s_plus<T: Scalar>(x: &[T]) -> Result<SignProfile> {
    nonempty(x)?;
    let n = x.len();
    let fixed: Vec<Option<Sign>> = x.iter().map(Sign::of).collect();
    let first_nonzero_sign = fixed.iter().flatten().next().copied();
    let last_nonzero_sign = fixed.iter().rev().flatten().next().copied();
    let s_minus = count_changes(fixed.iter().flatten().copied());

    if first_nonzero_sign.is_none() {
        return Ok(SignProfile {
            s_minus: 0,
            s_plus: n,
            first_signs_at_max: SignSet::BOTH,
            last_signs_at_max: SignSet::BOTH,
            first_nonzero_sign: None,
            last_nonzero_sign: None,
        });
    }

    let allowed = |i: usize, s: Sign| fixed[i].is_none_or(|f| f == s);
    // forward[i][s]: most changes in x[..=i] with x[i] assigned s.
    let mut forward = vec![[None::<usize>; 2]; n];
    let mut backward = vec![[None::<usize>; 2]; n];
    for s in SIGNS {
        if allowed(0, s) {
            forward[0][slot(s)] = Some(0);
        }
        if allowed(n - 1, s) {
            backward[n - 1][slot(s)] = Some(0);
        }
    }
    for i in 1..n {
        for s in SIGNS.into_iter().filter(|&s| allowed(i, s)) {
            forward[i][slot(s)] = SIGNS
                .into_iter()
                .filter_map(|p| forward[i - 1][slot(p)].map(|c| c + usize::from(p != s)))
                .max();
        }
    }
    for i in (0..n - 1).rev() {
        for s in SIGNS.into_iter().filter(|&s| allowed(i, s)) {
            backward[i][slot(s)] = SIGNS
                .into_iter()
                .filter_map(|p| backward[i + 1][slot(p)].map(|c| c + usize::from(p != s)))
                .max();
        }
    }
    let best = SIGNS
        .into_iter()
        .filter_map(|s| forward[n - 1][slot(s)])
        .max()
        .expect("at least one assignment");
    let mut first = SignSet::default();
    let mut last = SignSet::default();
    for s in SIGNS {
        if backward[0][slot(s)] == Some(best) {
            first.insert(s);
        }
        if forward[n - 1][slot(s)] == Some(best) {
            last.insert(s);
        }
    }
    Ok(SignProfile {
        s_minus,
        s_plus: best,
        first_signs_at_max: first,
        last_signs_at_max: last,
        first_nonzero_sign,
        last_nonzero_sign,
    })
}

/// `d_n = (1, -1, 1, ..., (-1)^(n-1))`.
pub fn alternating_signature<T: Scalar>(n: usize) -> Result<Vec<T>> {
    if n == 0 {
        return arg_err("alternating signature of length 0");
    }
    Ok((1..=n).map(|i| Sign::alternating(i).to_scalar()).collect())
}

/// All coordinates nonzero with alternating signs.
pub fn is_alternating_orthant<T: Scalar>(x: &[T]) -> bool {
    !x.is_empty()
        && x.iter().all(|v| !v.is_zero())
        && x.windows(2).all(|w| Sign::of(&w[0]) != Sign::of(&w[1]))
}

/// At least one positive and one negative coordinate.
pub fn is_mixed_orthant<T: Scalar>(x: &[T]) -> bool {
    x.iter().any(|v| v.is_pos()) && x.iter().any(|v| v.is_neg())
}

/// `x̄_i = (-1)^(i-1) x_i`.
pub fn checkerboard<T: Scalar>(x: &[T]) -> Vec<T> {
    x.iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 0 { v.clone() } else { -v.clone() })
        .collect()
}

/// Tests `S⁺(x) + S⁻(x̄) = n - 1` for a nonzero `x`.
pub fn check_splus_sminus_duality<T: Scalar>(x: &[T]) -> Result<bool> {
    nonempty(x)?;
    if x.iter().all(|v| v.is_zero()) {
        return arg_err("duality identity excludes the zero vector");
    }
    let plus = s_plus(x)?.s_plus;
    let minus = s_minus(&checkerboard(x))?;
    Ok(plus + minus == x.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from_int(x)).collect()
    }

    #[test]
    fn s_minus_examples() {
        assert_eq!(s_minus(&v(&[1, -2, 3])).unwrap(), 2);
        assert_eq!(s_minus(&v(&[0, 0, 0])).unwrap(), 0);
        assert_eq!(s_minus(&v(&[1, 0, 1])).unwrap(), 0);
        assert!(s_minus::<Rational>(&[]).is_err());
    }

    #[test]
    fn s_plus_examples() {
        let zero = s_plus(&v(&[0, 0, 0])).unwrap();
        assert_eq!(zero.s_plus, 3);
        assert_eq!(zero.s_minus, 0);
        assert!(!zero.first_signs_at_max.is_empty());

        let p = s_plus(&v(&[1, 0, 1])).unwrap();
        assert_eq!(p.s_plus, 2);
        assert_eq!(p.first_signs_at_max.unique(), Some(Sign::Plus));
        assert_eq!(p.last_signs_at_max.unique(), Some(Sign::Plus));

        let p = s_plus(&v(&[1, -1, 2])).unwrap();
        assert_eq!((p.s_plus, p.s_minus), (2, 2));
        assert!(s_plus::<Rational>(&[]).is_err());
    }

    #[test]
    fn leading_zeros_alternate_back() {
        let p = s_plus(&v(&[0, 1])).unwrap();
        assert_eq!(p.first_signs_at_max.unique(), Some(Sign::Minus));
        let p = s_plus(&v(&[0, 0, 1])).unwrap();
        assert_eq!(p.s_plus, 2);
        assert_eq!(p.first_signs_at_max.unique(), Some(Sign::Plus));
        let p = s_plus(&v(&[1, 0, 0, 1])).unwrap();
        assert_eq!(p.s_plus, 2);
        assert_eq!(p.first_signs_at_max.unique(), Some(Sign::Plus));
        // a single zero coordinate
        let p = s_plus(&v(&[0])).unwrap();
        assert_eq!(p.s_plus, 1);
    }

    #[test]
    fn signatures_and_orthants() {
        assert_eq!(alternating_signature::<Rational>(1).unwrap(), v(&[1]));
        assert_eq!(alternating_signature::<Rational>(3).unwrap(), v(&[1, -1, 1]));
        assert_eq!(alternating_signature::<Rational>(4).unwrap(), v(&[1, -1, 1, -1]));
        assert!(alternating_signature::<Rational>(0).is_err());

        assert!(is_alternating_orthant(&v(&[1, -2, 3])));
        assert!(is_mixed_orthant(&v(&[1, -2, 3])));
        assert!(!is_alternating_orthant(&v(&[1, 0, -1])));
        assert!(is_mixed_orthant(&v(&[1, 0, -1])));
        assert!(!is_alternating_orthant(&v(&[2, 3])));
        assert!(!is_mixed_orthant(&v(&[2, 3])));
    }

    #[test]
    fn duality_examples() {
        assert!(check_splus_sminus_duality(&v(&[1, 0, 1])).unwrap());
        assert!(check_splus_sminus_duality(&v(&[1, -1])).unwrap());
        assert!(check_splus_sminus_duality(&v(&[0, 0])).is_err());
    }
}
