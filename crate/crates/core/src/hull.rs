//! Interval hulls `{C : c_ij = t_ij a_ij + (1 - t_ij) b_ij, t_ij in [0, 1]}`
//! and their certification through the `I_{z, z̃}` test matrices.

use std::fmt;

use rand::Rng;

use crate::criteria::{check_by_contiguous_minors, check_by_minor_definition, ClassQuery, Violation};
use crate::error::{arg_err, dim_err, Error, Result};
use crate::matrix::Matrix;
use crate::random;
use crate::scalar::{Scalar, Sign};

/// Largest `m + n` for which all `2^{m+n}` test matrices are swept.
pub const HULL_SWEEP_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalHull<T: Scalar> {
    a: Matrix<T>,
    b: Matrix<T>,
}

/// A vector of signs `z`, used as the diagonal of `D_z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignWord(pub Vec<Sign>);

impl SignWord {
    pub fn plus(n: usize) -> Self {
        SignWord(vec![Sign::Plus; n])
    }

    /// `(+, -, +, ...)`.
    pub fn alternating(n: usize) -> Self {
        SignWord((1..=n).map(Sign::alternating).collect())
    }

    pub fn negated(&self) -> Self {
        SignWord(self.0.iter().map(|s| s.flip()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses a word such as `+-+` or `1,-1,1`.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let signs: Option<Vec<Sign>> = if s.contains(',') {
            s.split(',')
                .map(|t| match t.trim() {
                    "1" | "+1" | "+" => Some(Sign::Plus),
                    "-1" | "-" => Some(Sign::Minus),
                    _ => None,
                })
                .collect()
        } else {
            s.chars()
                .map(|c| match c {
                    '+' => Some(Sign::Plus),
                    '-' => Some(Sign::Minus),
                    _ => None,
                })
                .collect()
        };
        signs.filter(|v| !v.is_empty()).map(SignWord)
    }
}

impl fmt::Display for SignWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        Ok(())
    }
}

/// The failing test matrix of a hull verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullWitness<T: Scalar> {
    /// `C+`, `C-`, or `I` for a general `I_{z, z̃}` member.
    pub label: String,
    pub z: SignWord,
    pub zt: SignWord,
    pub member: Matrix<T>,
    pub violation: Violation<T>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullVerdict<T: Scalar> {
    pub holds: bool,
    pub failing: Option<HullWitness<T>>,
}

impl<T: Scalar> IntervalHull<T> {
    pub fn new(a: Matrix<T>, b: Matrix<T>) -> Result<Self> {
        if a.shape() != b.shape() {
            return dim_err(format!("hull endpoints differ in shape: {:?} vs {:?}", a.shape(), b.shape()));
        }
        Ok(IntervalHull { a, b })
    }

    pub fn a(&self) -> &Matrix<T> {
        &self.a
    }

    pub fn b(&self) -> &Matrix<T> {
        &self.b
    }

    pub fn shape(&self) -> (usize, usize) {
        self.a.shape()
    }

    fn midpoint(&self, i: usize, j: usize) -> T {
        (self.a[(i, j)].clone() + self.b[(i, j)].clone()) * T::half()
    }

    fn radius(&self, i: usize, j: usize) -> T {
        (self.a[(i, j)].clone() - self.b[(i, j)].clone()).abs() * T::half()
    }

    fn entry(&self, i: usize, j: usize, s: Sign) -> T {
        self.midpoint(i, j) - s.to_scalar::<T>() * self.radius(i, j)
    }

    /// `(A + B)/2 - D_z |A - B|/2 D_z̃`.
    pub fn i_matrix(&self, z: &SignWord, zt: &SignWord) -> Result<Matrix<T>> {
        let (m, n) = self.shape();
        if z.len() != m || zt.len() != n {
            return dim_err(format!(
                "sign words of lengths {}, {} do not fit a {m}x{n} hull",
                z.len(),
                zt.len()
            ));
        }
        Ok(Matrix::from_fn(m, n, |i, j| self.entry(i, j, z.0[i] * zt.0[j])))
    }

    /// `C+ = I_{d_m, d_n}` and `C- = I_{d_m, -d_n}`.
    pub fn c_plus_minus(&self) -> (Matrix<T>, Matrix<T>) {
        let (m, n) = self.shape();
        let dm = SignWord::alternating(m);
        let dn = SignWord::alternating(n);
        (
            self.i_matrix(&dm, &dn).expect("shape fits"),
            self.i_matrix(&dm, &dn.negated()).expect("shape fits"),
        )
    }

    /// Entrywise interval membership, exact.
    pub fn contains(&self, c: &Matrix<T>) -> bool {
        c.shape() == self.shape()
            && c.iter_entries().all(|(i, j, v)| {
                let (x, y) = (&self.a[(i, j)], &self.b[(i, j)]);
                let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
                lo <= v && v <= hi
            })
    }

    /// `t_ij a_ij + (1 - t_ij) b_ij`; every `t_ij` must lie in `[0, 1]`.
    pub fn member_with_t(&self, t: &Matrix<T>) -> Result<Matrix<T>> {
        if t.shape() != self.shape() {
            return dim_err("weight matrix shape differs from the hull");
        }
        if t.iter_entries().any(|(_, _, v)| v.is_neg() || *v > T::one()) {
            return arg_err("hull weights must lie in [0, 1]");
        }
        let (m, n) = self.shape();
        Ok(Matrix::from_fn(m, n, |i, j| {
            let w = t[(i, j)].clone();
            w.clone() * self.a[(i, j)].clone() + (T::one() - w) * self.b[(i, j)].clone()
        }))
    }

    /// A member with independent weights `t_ij = p/q`, `q <= 100`, drawn from
    /// `seed`.
    pub fn sample_member(&self, seed: u64) -> Matrix<T> {
        let mut rng = random::seeded(seed);
        let (m, n) = self.shape();
        let t = Matrix::from_fn(m, n, |_, _| {
            let q = rng.gen_range(1..=100);
            T::from_ratio(rng.gen_range(0..=q), q)
        });
        self.member_with_t(&t).expect("weights in range")
    }

    /// TN of order `k` of the whole hull, decided on `C+` and `C-`.
    pub fn is_totally_negative(&self, k: usize) -> Result<HullVerdict<T>> {
        let (cp, cm) = self.c_plus_minus();
        let (m, n) = self.shape();
        let dm = SignWord::alternating(m);
        let dn = SignWord::alternating(n);
        for (label, c, zt) in [("C+", cp, dn.clone()), ("C-", cm, dn.negated())] {
            let v = check_by_contiguous_minors(&c, ClassQuery::tn(k))?;
            if let Some(violation) = v.witness {
                return Ok(HullVerdict {
                    holds: false,
                    failing: Some(HullWitness {
                        label: label.to_string(),
                        z: dm,
                        zt,
                        member: c,
                        violation,
                    }),
                });
            }
        }
        Ok(HullVerdict { holds: true, failing: None })
    }

    /// TNP of order `k` of the whole hull, decided on every `I_{z, z̃}`.
    /// The words are visited in Gray-code order, one row or column updated
    /// per step, and the sweep stops at the first failing member.
    pub fn is_totally_nonpositive(&self, k: usize) -> Result<HullVerdict<T>> {
        let (m, n) = self.shape();
        if m + n > HULL_SWEEP_CAP {
            return Err(Error::Resource(format!(
                "m + n = {} exceeds the hull sweep cap {HULL_SWEEP_CAP}",
                m + n
            )));
        }
        if k == 0 || k > m.min(n) {
            return arg_err(format!("order {k} outside [1, {}]", m.min(n)));
        }
        let mut z = SignWord::plus(m);
        let mut zt = SignWord::plus(n);
        let mut c = self.i_matrix(&z, &zt)?;
        let total: u64 = 1 << (m + n);
        for step in 0..total {
            if step > 0 {
                let bit = step.trailing_zeros() as usize;
                if bit < m {
                    z.0[bit] = z.0[bit].flip();
                    for j in 0..n {
                        c.set(bit, j, self.entry(bit, j, z.0[bit] * zt.0[j]));
                    }
                } else {
                    let j = bit - m;
                    zt.0[j] = zt.0[j].flip();
                    for i in 0..m {
                        c.set(i, j, self.entry(i, j, z.0[i] * zt.0[j]));
                    }
                }
            }
            let v = check_by_minor_definition(&c, ClassQuery::tnp(k))?;
            if let Some(violation) = v.witness {
                return Ok(HullVerdict {
                    holds: false,
                    failing: Some(HullWitness {
                        label: "I".to_string(),
                        z,
                        zt,
                        member: c,
                        violation,
                    }),
                });
            }
        }
        Ok(HullVerdict { holds: true, failing: None })
    }

    /// `x_i (C x)_i >= x_i (I_{z,z} x)_i` for all `i`, with `z_i = +1` exactly
    /// when `x_i >= 0`. `C` must be a member of a square hull.
    pub fn rohn_inequality_check(&self, c: &Matrix<T>, x: &[T]) -> Result<bool> {
        if !self.a.is_square() {
            return dim_err("comparison inequality needs a square hull");
        }
        if x.len() != self.a.rows() {
            return dim_err("vector length differs from the hull size");
        }
        if !self.contains(c) {
            return arg_err("matrix is not a member of the hull");
        }
        let z = SignWord(x.iter().map(|v| if v.is_neg() { Sign::Minus } else { Sign::Plus }).collect());
        let izz = self.i_matrix(&z, &z)?;
        let cx = c.mul_vec(x)?;
        let ix = izz.mul_vec(x)?;
        Ok(x.iter()
            .zip(cx.iter().zip(&ix))
            .all(|(xi, (c, i))| xi.clone() * c.clone() >= xi.clone() * i.clone()))
    }
}
