//! Lazy streams over square selections and their minors.
//!
//! Order is deterministic: sizes ascending, then row sets, then column sets,
//! each lexicographic. Contiguous streams enumerate start positions in the
//! same order.

use itertools::Itertools;

use crate::error::{arg_err, Result};
use crate::matrix::{IndexSet, Matrix};
use crate::scalar::Scalar;

/// A minor together with the 1-based rows and columns that select it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinorRecord<T> {
    pub rows: IndexSet,
    pub cols: IndexSet,
    pub value: T,
}

impl<T> MinorRecord<T> {
    pub fn order(&self) -> usize {
        self.rows.len()
    }
}

/// All `r x r` selections of an `m x n` shape for `r` in `sizes`.
pub fn square_selections(
    m: usize,
    n: usize,
    sizes: std::ops::RangeInclusive<usize>,
) -> impl Iterator<Item = (IndexSet, IndexSet)> {
    sizes.flat_map(move |r| {
        (1..=m).combinations(r).flat_map(move |rows| {
            (1..=n).combinations(r).map(move |cols| {
                (IndexSet::from_sorted(rows.clone()), IndexSet::from_sorted(cols))
            })
        })
    })
}

/// Selections whose rows and columns are both intervals.
pub fn contiguous_selections(
    m: usize,
    n: usize,
    sizes: std::ops::RangeInclusive<usize>,
) -> impl Iterator<Item = (IndexSet, IndexSet)> {
    sizes.flat_map(move |r| {
        let row_starts = if r <= m { 1..=m + 1 - r } else { 1..=0 };
        row_starts.flat_map(move |i| {
            let col_starts = if r <= n { 1..=n + 1 - r } else { 1..=0 };
            col_starts.map(move |j| (IndexSet::interval(i, r), IndexSet::interval(j, r)))
        })
    })
}

fn check_order<T: Scalar>(a: &Matrix<T>, k: usize) -> Result<()> {
    if k == 0 || k > a.min_dim() {
        return arg_err(format!(
            "order {k} outside [1, {}] for a {}x{} matrix",
            a.min_dim(),
            a.rows(),
            a.cols()
        ));
    }
    Ok(())
}

fn records<'a, T: Scalar>(
    a: &'a Matrix<T>,
    sel: impl Iterator<Item = (IndexSet, IndexSet)> + 'a,
) -> impl Iterator<Item = MinorRecord<T>> + 'a {
    sel.map(move |(rows, cols)| {
        let value = a
            .submatrix_unchecked(rows.as_slice(), cols.as_slice())
            .det()
            .expect("square selection");
        MinorRecord { rows, cols, value }
    })
}

/// Every minor of size `1..=k`, each exactly once.
pub fn minors_up_to<T: Scalar>(
    a: &Matrix<T>,
    k: usize,
) -> Result<impl Iterator<Item = MinorRecord<T>> + '_> {
    check_order(a, k)?;
    Ok(records(a, square_selections(a.rows(), a.cols(), 1..=k)))
}

/// Every minor of size `1..=k` whose row and column sets are intervals.
pub fn contiguous_minors_up_to<T: Scalar>(
    a: &Matrix<T>,
    k: usize,
) -> Result<impl Iterator<Item = MinorRecord<T>> + '_> {
    check_order(a, k)?;
    Ok(records(a, contiguous_selections(a.rows(), a.cols(), 1..=k)))
}
