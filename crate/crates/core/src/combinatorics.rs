//! Exact integer primitives: binomial coefficients, Hamming-ball volumes and
//! the binomial gcd windows used by the residue constraints of the K-sequence.
//!
//! Everything here is arbitrary precision. Nothing is approximated and nothing
//! can wrap.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Exact signed integer used for every count in the crate.
pub type ExactInt = BigInt;

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binom(n: u64, k: i64) -> ExactInt {
    if k < 0 || k as u64 > n {
        return ExactInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = ExactInt::one();
    for i in 0..k {
        // acc holds C(n, i) here, so the division is exact.
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of binary words of length `n` within Hamming distance `t` of a fixed
/// word: `sum_{l=0}^{t} C(n, l)`. Saturates at `2^n` once `t >= n`.
pub fn sphere_volume(n: u64, t: u64) -> ExactInt {
    let top = t.min(n);
    let mut term = ExactInt::one();
    let mut sum = ExactInt::one();
    for l in 0..top {
        term *= n - l;
        term /= l + 1;
        sum += &term;
    }
    sum
}

/// `gcd { C(n_minus_s, l) : max(0, t - s + 1) <= l <= t }`.
///
/// The lower index is clamped at zero, so once `s > t` the window contains
/// `C(., 0) = 1` and the result is 1. Zero binomials (for `l > n_minus_s`) drop
/// out of the gcd; a window that is zero throughout also yields 1.
///
/// Panics if `s == 0`.
pub fn gcd_window(n_minus_s: u64, t: u64, s: u64) -> ExactInt {
    assert!(s >= 1, "gcd_window requires s >= 1");
    let lo = (t + 1).saturating_sub(s);
    let mut g = ExactInt::zero();
    for l in lo..=t {
        if g.is_one() {
            break;
        }
        g = g.gcd(&binom(n_minus_s, l as i64));
    }
    if g.is_zero() {
        ExactInt::one()
    } else {
        g
    }
}

/// `2^e` as an exact integer.
pub fn pow2(e: u64) -> ExactInt {
    ExactInt::one() << e
}
