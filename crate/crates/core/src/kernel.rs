//! Scalar capacity primitives.
//!
//! Every rate expression in the crate is built from three shapes:
//! `C(x) = ½·log₂(1 + x)`, the time-scaled slot term `t·C(s/t)` and the
//! coherent-combining SNR `(g₁√p₁ + g₂√p₂)²`. The checked functions validate
//! their inputs; the `pub(crate)` helpers below skip validation and are what
//! the evaluators call in their inner loops.

use std::f64::consts::LN_2;

use thiserror::Error;

/// Domain violation for a capacity primitive.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum KernelError {
    #[error("{name} must be finite and non-negative, got {value}")]
    Negative { name: &'static str, value: f64 },
    #[error("time fraction must lie in [0, 1], got {0}")]
    TimeFraction(f64),
}

fn check_non_negative(name: &'static str, value: f64) -> Result<(), KernelError> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(KernelError::Negative { name, value })
    }
}

/// Gaussian capacity `½·log₂(1 + snr)` in bits per channel use.
pub fn c_gauss(snr: f64) -> Result<f64, KernelError> {
    check_non_negative("snr", snr)?;
    Ok(cap(snr))
}

/// Rate carried by a slot of duration `t` that spends energy `s`: `t·C(s/t)`.
///
/// The value at `t = 0` is the continuous limit, 0.
pub fn slot_term(t: f64, s: f64) -> Result<f64, KernelError> {
    if !(0.0..=1.0).contains(&t) {
        return Err(KernelError::TimeFraction(t));
    }
    check_non_negative("s", s)?;
    Ok(slot(t, s))
}

/// Received SNR when two transmitters send the same codeword coherently.
pub fn coherent_snr(g1: f64, p1: f64, g2: f64, p2: f64) -> Result<f64, KernelError> {
    check_non_negative("g1", g1)?;
    check_non_negative("p1", p1)?;
    check_non_negative("g2", g2)?;
    check_non_negative("p2", p2)?;
    Ok(coherent(g1, p1, g2, p2))
}

#[inline]
pub(crate) fn cap(snr: f64) -> f64 {
    0.5 * snr.ln_1p() / LN_2
}

#[inline]
pub(crate) fn slot(t: f64, s: f64) -> f64 {
    if t <= 0.0 || s <= 0.0 {
        0.0
    } else {
        t * cap(s / t)
    }
}

/// `t·C(s / (t + i))`: slot rate with interference energy `i` treated as noise.
#[inline]
pub(crate) fn slot_with_interference(t: f64, s: f64, i: f64) -> f64 {
    if t <= 0.0 || s <= 0.0 {
        0.0
    } else {
        t * cap(s / (t + i))
    }
}

/// `t·C(lin/t + prod/t²)`: the two-receiver cut with a product term.
#[inline]
pub(crate) fn slot_with_product(t: f64, lin: f64, prod: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        t * cap(lin / t + prod / (t * t))
    }
}

#[inline]
pub(crate) fn coherent(g1: f64, p1: f64, g2: f64, p2: f64) -> f64 {
    let a = g1 * p1.sqrt() + g2 * p2.sqrt();
    a * a
}

/// Smallest energy `s` with `t·C(s/t) ≥ rate`.
#[inline]
pub(crate) fn slot_inverse(t: f64, rate: f64) -> f64 {
    if t <= 0.0 || rate <= 0.0 {
        0.0
    } else {
        t * (2.0 * rate * LN_2 / t).exp_m1()
    }
}
