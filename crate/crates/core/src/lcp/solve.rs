use itertools::Itertools;

use super::{LcpInstance, LcpSolutionSet, SolutionFamily};
use crate::error::{Error, Result};
use crate::matrix::IndexSet;
use crate::scalar::Scalar;

/// Largest `n` handled by the `2^n` support enumeration.
pub const LCP_DIM_CAP: usize = 20;

/// `M t = b` in reduced row echelon form.
struct Affine<T> {
    particular: Vec<T>,
    /// Columns spanning the kernel of `M`, each of length `cols`.
    kernel: Vec<Vec<T>>,
}

/// Solves `M t = b` exactly (or with exact zero tests for floats). `None` when
/// inconsistent.
fn solve_affine<T: Scalar>(m: &[Vec<T>], b: &[T], cols: usize) -> Option<Affine<T>> {
    let rows = m.len();
    let mut aug: Vec<Vec<T>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = T::one() / aug[r][c].clone();
        for v in aug[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for j in c..=cols {
                    let sub = f.clone() * aug[r][j].clone();
                    aug[i][j] = aug[i][j].clone() - sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if aug[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut particular = vec![T::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = aug[i][cols].clone();
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -aug[i][f].clone();
            }
            v
        })
        .collect();
    Some(Affine { particular, kernel })
}

/// Feasible set of one support `S` in kernel coordinates: `c_i + h_i . t >= 0`.
struct Region<T> {
    offsets: Vec<T>,
    normals: Vec<Vec<T>>,
}

impl<T: Scalar> Region<T> {
    fn feasible(&self, t: &[T]) -> bool {
        self.offsets.iter().zip(&self.normals).all(|(c, h)| {
            let mut v = c.clone();
            for (hi, ti) in h.iter().zip(t) {
                v = v + hi.clone() * ti.clone();
            }
            !v.is_neg()
        })
    }

    /// Point where the chosen constraints are tight, if they determine one.
    fn tight_point(&self, chosen: &[usize], d: usize) -> Option<Vec<T>> {
        let m: Vec<Vec<T>> = chosen.iter().map(|&i| self.normals[i].clone()).collect();
        let b: Vec<T> = chosen.iter().map(|&i| -self.offsets[i].clone()).collect();
        let sol = solve_affine(&m, &b, d)?;
        sol.kernel.is_empty().then_some(sol.particular)
    }

    /// Direction `u` with the chosen constraints tight along it, if unique up
    /// to scale.
    fn tight_direction(&self, chosen: &[usize], d: usize) -> Option<Vec<T>> {
        let m: Vec<Vec<T>> = chosen.iter().map(|&i| self.normals[i].clone()).collect();
        let zeros = vec![T::zero(); chosen.len()];
        let sol = solve_affine(&m, &zeros, d)?;
        (sol.kernel.len() == 1).then(|| sol.kernel[0].clone())
    }

    fn recedes(&self, u: &[T]) -> bool {
        self.normals.iter().all(|h| {
            let mut v = T::zero();
            for (hi, ui) in h.iter().zip(u) {
                v = v + hi.clone() * ui.clone();
            }
            !v.is_neg()
        })
    }
}

enum SupportResult<T> {
    Empty,
    Point(Vec<T>),
    Family(SolutionFamily<T>),
}

fn embed<T: Scalar>(n: usize, support: &[usize], xs: &[T]) -> Vec<T> {
    let mut x = vec![T::zero(); n];
    for (&i, v) in support.iter().zip(xs) {
        x[i] = v.clone();
    }
    x
}

fn push_unique<T: PartialEq>(list: &mut Vec<T>, v: T) {
    if !list.contains(&v) {
        list.push(v);
    }
}

fn solve_support<T: Scalar>(inst: &LcpInstance<T>, support: &[usize]) -> SupportResult<T> {
    let a = inst.matrix();
    let q = inst.q();
    let n = q.len();
    let m: Vec<Vec<T>> = support
        .iter()
        .map(|&i| support.iter().map(|&j| a[(i, j)].clone()).collect())
        .collect();
    let b: Vec<T> = support.iter().map(|&i| -q[i].clone()).collect();
    let Some(aff) = solve_affine(&m, &b, support.len()) else {
        return SupportResult::Empty;
    };
    let d = aff.kernel.len();
    // x_S = p + K t, and y_j = A_{jS} x_S + q_j for j outside S.
    let mut offsets = Vec::with_capacity(n);
    let mut normals = Vec::with_capacity(n);
    for (s, _) in support.iter().enumerate() {
        offsets.push(aff.particular[s].clone());
        normals.push(aff.kernel.iter().map(|k| k[s].clone()).collect::<Vec<T>>());
    }
    for j in (0..n).filter(|j| !support.contains(j)) {
        let row = |v: &[T]| {
            support
                .iter()
                .zip(v)
                .fold(T::zero(), |acc, (&i, vi)| acc + a[(j, i)].clone() * vi.clone())
        };
        offsets.push(row(&aff.particular) + q[j].clone());
        normals.push(aff.kernel.iter().map(|k| row(k)).collect());
    }
    let region = Region { offsets, normals };
    let to_x = |t: &[T]| {
        let xs: Vec<T> = (0..support.len())
            .map(|s| {
                aff.kernel
                    .iter()
                    .zip(t)
                    .fold(aff.particular[s].clone(), |acc, (k, ti)| acc + k[s].clone() * ti.clone())
            })
            .collect();
        embed(n, support, &xs)
    };
    if d == 0 {
        return if region.feasible(&[]) {
            SupportResult::Point(to_x(&[]))
        } else {
            SupportResult::Empty
        };
    }
    let mut vertices: Vec<Vec<T>> = Vec::new();
    for chosen in (0..n).combinations(d) {
        if let Some(t) = region.tight_point(&chosen, d) {
            if region.feasible(&t) {
                push_unique(&mut vertices, to_x(&t));
            }
        }
    }
    let mut rays: Vec<Vec<T>> = Vec::new();
    for chosen in (0..n).combinations(d - 1) {
        if let Some(u) = region.tight_direction(&chosen, d) {
            for dir in [u.clone(), u.iter().map(|v| -v.clone()).collect()] {
                if region.recedes(&dir) {
                    let zero_t = vec![T::zero(); d];
                    let base = to_x(&zero_t);
                    let moved = to_x(&dir);
                    let ray: Vec<T> =
                        moved.iter().zip(&base).map(|(m, b)| m.clone() - b.clone()).collect();
                    push_unique(&mut rays, normalize(ray));
                }
            }
        }
    }
    match (vertices.len(), rays.is_empty()) {
        (0, _) => SupportResult::Empty,
        (1, true) => SupportResult::Point(vertices.pop().expect("one vertex")),
        _ => {
            vertices.sort_by(|x, y| lex_cmp(x, y));
            rays.sort_by(|x, y| lex_cmp(x, y));
            SupportResult::Family(SolutionFamily {
                support: IndexSet::from_sorted(support.iter().map(|i| i + 1).collect()),
                vertices,
                rays,
            })
        }
    }
}

/// Scales a direction so its first nonzero coordinate has magnitude one.
fn normalize<T: Scalar>(v: Vec<T>) -> Vec<T> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let s = lead.abs();
            v.iter().map(|x| x.clone() / s.clone()).collect()
        }
        None => v,
    }
}

pub(crate) fn lex_cmp<T: Scalar>(x: &[T], y: &[T]) -> std::cmp::Ordering {
    for (a, b) in x.iter().zip(y) {
        match a.partial_cmp(b) {
            Some(std::cmp::Ordering::Equal) | None => continue,
            Some(o) => return o,
        }
    }
    x.len().cmp(&y.len())
}

/// All solutions of `x >= 0, y = A x + q >= 0, x . y = 0` by enumeration of
/// the `2^n` supports.
pub fn solve_lcp<T: Scalar>(inst: &LcpInstance<T>) -> Result<LcpSolutionSet<T>> {
    let n = inst.dim();
    if n > LCP_DIM_CAP {
        return Err(Error::Resource(format!(
            "LCP dimension {n} exceeds the support enumeration cap {LCP_DIM_CAP}"
        )));
    }
    let mut solutions: Vec<Vec<T>> = Vec::new();
    let mut families: Vec<SolutionFamily<T>> = Vec::new();
    for size in 0..=n {
        for support in (0..n).combinations(size) {
            match solve_support(inst, &support) {
                SupportResult::Empty => {}
                SupportResult::Point(x) => push_unique(&mut solutions, x),
                SupportResult::Family(f) => {
                    if !families.iter().any(|g| g.vertices == f.vertices && g.rays == f.rays) {
                        families.push(f);
                    }
                }
            }
        }
    }
    solutions.sort_by(|x, y| lex_cmp(x, y));
    debug_assert!(solutions.iter().all(|x| inst.is_solution(x)));
    Ok(LcpSolutionSet { solutions, families })
}
