use super::{check_order, ClassQuery, Method, SignClass, Verdict, Violation};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::minors::{contiguous_minors_up_to, minors_up_to, MinorRecord};
use crate::scalar::Scalar;

fn first_offender<T: Scalar>(
    mut stream: impl Iterator<Item = MinorRecord<T>>,
    class: SignClass,
    method: Method,
) -> Verdict<T> {
    match stream.find(|rec| !class.admits(&rec.value)) {
        Some(rec) => Verdict::fail(
            method,
            Violation::minor(class.violation_kind(), rec.rows, rec.cols, rec.value),
        ),
        None => Verdict::pass(method),
    }
}

/// Every minor of size `<= k` is `< 0` (TN) or `<= 0` (TNP).
pub fn check_by_minor_definition<T: Scalar>(a: &Matrix<T>, q: ClassQuery) -> Result<Verdict<T>> {
    check_order(a, q.order)?;
    Ok(first_offender(minors_up_to(a, q.order)?, q.class, Method::MinorDefinition))
}

/// Contiguous minors only. This is a complete test for TN; for TNP the
/// reduction does not apply and the full definition is used instead (the
/// verdict then reports [`Method::MinorDefinition`]).
pub fn check_by_contiguous_minors<T: Scalar>(a: &Matrix<T>, q: ClassQuery) -> Result<Verdict<T>> {
    match q.class {
        SignClass::TotallyNegative => {
            check_order(a, q.order)?;
            Ok(first_offender(
                contiguous_minors_up_to(a, q.order)?,
                q.class,
                Method::ContiguousMinors,
            ))
        }
        SignClass::TotallyNonPositive => check_by_minor_definition(a, q),
    }
}
