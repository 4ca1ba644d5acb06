// SPDX-License-Identifier: Apache-2.0

//! Normal-approximation summaries for Monte Carlo estimates.

use num_traits::Float;

/// Standard error `sqrt(p (1 - p) / trials)` of a proportion.
pub fn proportion_stderr<F: Float>(p: F, trials: usize) -> F {
    let t = F::from(trials).expect("trial count is representable");
    (p * (F::one() - p) / t).max(F::zero()).sqrt()
}

/// Standard error of a mean from `trials`, the mean and the sum of squares.
/// Uses the unbiased variance; a single trial has zero error.
pub fn stderr_from_moments<F: Float>(trials: F, mean: F, sum_sq: F) -> F {
    if trials <= F::one() {
        return F::zero();
    }
    let var = (sum_sq - trials * mean * mean) / (trials - F::one());
    (var.max(F::zero()) / trials).sqrt()
}

/// Whether `a - b` exceeds `z` combined standard errors.
pub fn exceeds_by<F: Float>(a: F, sa: F, b: F, sb: F, z: F) -> bool {
    a - b > z * (sa * sa + sb * sb).sqrt()
}
