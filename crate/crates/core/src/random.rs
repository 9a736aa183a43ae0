//! Seeded samplers for falsifiers and generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{Scalar, Sign};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `1 <= p <= max_num`, `1 <= q <= max_den`.
pub fn positive_ratio<T: Scalar>(rng: &mut SeededRng, max_num: i64, max_den: i64) -> T {
    T::from_ratio(rng.gen_range(1..=max_num), rng.gen_range(1..=max_den))
}

/// Strictly positive vector with numerators and denominators at most 100.
pub fn positive_vector<T: Scalar>(rng: &mut SeededRng, n: usize) -> Vec<T> {
    (0..n).map(|_| positive_ratio(rng, 100, 100)).collect()
}

pub fn random_sign(rng: &mut SeededRng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Nonzero coordinates with alternating signs.
pub fn alternating_vector<T: Scalar>(rng: &mut SeededRng, n: usize) -> Vec<T> {
    let lead = random_sign(rng);
    (0..n)
        .map(|i| {
            let s = lead * Sign::alternating(i + 1);
            positive_ratio::<T>(rng, 9, 4) * s.to_scalar()
        })
        .collect()
}

/// At least one positive and one negative coordinate; zeros allowed elsewhere
/// when `allow_zero` is set. Requires `n >= 2`.
pub fn mixed_vector<T: Scalar>(rng: &mut SeededRng, n: usize, allow_zero: bool) -> Vec<T> {
    debug_assert!(n >= 2);
    let mut x: Vec<T> = (0..n)
        .map(|_| {
            if allow_zero && rng.gen_bool(0.25) {
                T::zero()
            } else {
                positive_ratio::<T>(rng, 9, 4) * random_sign(rng).to_scalar()
            }
        })
        .collect();
    let p = rng.gen_range(0..n);
    let mut q = rng.gen_range(0..n - 1);
    if q >= p {
        q += 1;
    }
    x[p] = x[p].abs();
    if x[p].is_zero() {
        x[p] = T::one();
    }
    x[q] = -x[q].abs();
    if x[q].is_zero() {
        x[q] = -T::one();
    }
    x
}

/// Every nonzero sign word of length `n` with both signs present, as scalars.
pub fn mixed_sign_patterns<T: Scalar>(n: usize) -> impl Iterator<Item = Vec<T>> {
    (1u32..(1u32 << n) - 1).map(move |mask| {
        (0..n)
            .map(|i| if mask >> i & 1 == 1 { -T::one() } else { T::one() })
            .collect()
    })
}
