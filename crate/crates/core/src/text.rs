//! Line-oriented text formats shared by the library and the CLI.
//!
//! A matrix block is a header line `m n` followed by `m` lines of `n`
//! whitespace-separated rationals (`p/q`, integer, or decimal; decimals are
//! converted exactly). A hull file holds two blocks separated by a blank line.
//! An LCP file holds one block followed by a `q:` line and `n` rationals.
//! Lines starting with `#` are ignored.

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::{ExactMatrix, Rational};

fn perr<T>(line: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, message: message.into() })
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.trim_start_matches('+').parse().ok()
}

/// Parses `p/q`, an integer, or a decimal literal (optionally with exponent)
/// into an exact rational.
pub fn parse_rational(token: &str) -> Option<Rational> {
    let token = token.trim();
    if let Some((p, q)) = token.split_once('/') {
        let p = parse_int(p)?;
        let q = parse_int(q)?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Some(i) = parse_int(token) {
        return Some(Rational::from_integer(i));
    }
    parse_decimal(token)
}

fn parse_decimal(token: &str) -> Option<Rational> {
    let (mantissa, exp) = match token.find(['e', 'E']) {
        Some(pos) => (&token[..pos], token[pos + 1..].parse::<i32>().ok()?),
        None => (token, 0),
    };
    let (neg, body) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num: BigInt = digits.parse().ok()?;
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(num * Pow::pow(&ten, scale as u32))
    } else {
        Rational::new(num, Pow::pow(&ten, (-scale) as u32))
    };
    Some(value)
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(v: &Rational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Lowercase hex SHA-256 of `text`.
pub fn digest_hex(text: &str) -> String {
    use sha2::{Digest, Sha256};
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn format_vector(v: &[Rational]) -> String {
    v.iter().map(format_rational).collect::<Vec<_>>().join(" ")
}

pub fn format_matrix(a: &ExactMatrix) -> String {
    let mut out = format!("{} {}\n", a.rows(), a.cols());
    for i in 0..a.rows() {
        out.push_str(&format_vector(a.row(i)));
        out.push('\n');
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate().peekable() }
    }

    fn skip_blank(&mut self) {
        while let Some((_, l)) = self.inner.peek() {
            let t = l.trim();
            if t.is_empty() || t.starts_with('#') {
                self.inner.next();
            } else {
                break;
            }
        }
    }

    /// Next content line as `(1-based line number, trimmed text)`.
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        self.skip_blank();
        self.inner.next().map(|(i, l)| (i + 1, l.trim()))
    }

    fn last_line(&mut self) -> usize {
        self.inner.peek().map_or(0, |(i, _)| i + 1)
    }
}

fn parse_row(line: usize, text: &str, expect: usize) -> Result<Vec<Rational>> {
    let vals: Option<Vec<_>> = text.split_whitespace().map(parse_rational).collect();
    let Some(vals) = vals else {
        return perr(line, format!("invalid rational in `{text}`"));
    };
    if vals.len() != expect {
        return perr(line, format!("expected {expect} values, found {}", vals.len()));
    }
    Ok(vals)
}

fn parse_block(lines: &mut Lines<'_>) -> Result<ExactMatrix> {
    let Some((ln, header)) = lines.next_content() else {
        return perr(lines.last_line(), "missing `m n` header");
    };
    let dims: Vec<&str> = header.split_whitespace().collect();
    let (m, n) = match dims.as_slice() {
        [m, n] => match (m.parse::<usize>(), n.parse::<usize>()) {
            (Ok(m), Ok(n)) if m > 0 && n > 0 => (m, n),
            _ => return perr(ln, format!("invalid shape header `{header}`")),
        },
        _ => return perr(ln, format!("expected `m n` header, found `{header}`")),
    };
    let mut data = Vec::with_capacity(m * n);
    for r in 0..m {
        let Some((ln, row)) = lines.inner.next().map(|(i, l)| (i + 1, l.trim())) else {
            return perr(ln + r + 1, format!("missing row {} of {m}", r + 1));
        };
        if row.is_empty() {
            return perr(ln, format!("blank line where row {} of {m} was expected", r + 1));
        }
        data.extend(parse_row(ln, row, n)?);
    }
    Matrix::new(m, n, data)
}

fn expect_end(lines: &mut Lines<'_>) -> Result<()> {
    match lines.next_content() {
        Some((ln, extra)) => perr(ln, format!("unexpected trailing content `{extra}`")),
        None => Ok(()),
    }
}

pub fn parse_matrix(text: &str) -> Result<ExactMatrix> {
    let mut lines = Lines::new(text);
    let a = parse_block(&mut lines)?;
    expect_end(&mut lines)?;
    Ok(a)
}

/// Two equally shaped blocks, interpreted as `(A, B)`.
pub fn parse_hull(text: &str) -> Result<(ExactMatrix, ExactMatrix)> {
    let mut lines = Lines::new(text);
    let a = parse_block(&mut lines)?;
    let b = parse_block(&mut lines)?;
    expect_end(&mut lines)?;
    if a.shape() != b.shape() {
        return Err(Error::Dimension(format!(
            "hull blocks have shapes {:?} and {:?}",
            a.shape(),
            b.shape()
        )));
    }
    Ok((a, b))
}

/// A square block followed by `q:` and `n` rationals, on the same line or
/// the lines after it.
pub fn parse_lcp(text: &str) -> Result<(ExactMatrix, Vec<Rational>)> {
    let mut lines = Lines::new(text);
    let a = parse_block(&mut lines)?;
    if !a.is_square() {
        return Err(Error::Dimension(format!("LCP matrix must be square, got {:?}", a.shape())));
    }
    let Some((ln, qline)) = lines.next_content() else {
        return perr(lines.last_line(), "missing `q:` line");
    };
    let Some(rest) = qline.strip_prefix("q:") else {
        return perr(ln, format!("expected `q:`, found `{qline}`"));
    };
    let mut tokens: Vec<String> = rest.split_whitespace().map(String::from).collect();
    while let Some((_, l)) = lines.next_content() {
        tokens.extend(l.split_whitespace().map(String::from));
    }
    let q = parse_row(ln, &tokens.join(" "), a.rows())?;
    Ok((a, q))
}

pub fn format_hull(a: &ExactMatrix, b: &ExactMatrix) -> String {
    format!("{}\n{}", format_matrix(a), format_matrix(b))
}

pub fn format_lcp(a: &ExactMatrix, q: &[Rational]) -> String {
    format!("{}q: {}\n", format_matrix(a), format_vector(q))
}
