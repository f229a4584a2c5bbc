//! Exact big-integer binomial coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// The exact binomial coefficient `C(n, k)`.
///
/// Out-of-range arguments (`k < 0`, `k > n`, or `n < 0`) return 0 rather
/// than erroring, which matches how the coefficients appear inside
/// summation formulas.
///
/// Computed by the multiplicative formula with a stepwise exact division:
/// after step `i` the accumulator holds `C(n − k + i, i)`, which is always
/// an integer, so every division is exact.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k); // symmetry keeps the loop short
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = acc * BigInt::from(n - k + i) / BigInt::from(i);
    }
    acc
}
