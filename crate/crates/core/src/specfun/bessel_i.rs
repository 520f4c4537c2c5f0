//! Exponentially scaled modified Bessel function e^{−x} I_n(x).
//!
//! The scaling is what the variance formulas actually consume — they only
//! ever need e^{−2R²} I_n(2R²) — and it keeps every intermediate finite for
//! x up to 1e6 and beyond.

use super::{factorial, ln_factorial};
use crate::{Error, Result};

const ASYMPTOTIC_LIMIT: f64 = 30.0;

pub fn bessel_i_scaled(n: u32, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!(
            "bessel_i_scaled needs x >= 0, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    if x < ASYMPTOTIC_LIMIT {
        Ok(series_scaled(n, x))
    } else {
        Ok(asymptotic_scaled(n, x).0)
    }
}

/// e^{−x} (x/2)^n Σ_k (x²/4)^k / (k! (n+k)!). All terms are positive, so
/// plain summation is accurate to a few ulps.
pub(crate) fn series_scaled(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = if n as usize <= 150 {
        half.powi(n as i32) / factorial(n) * (-x).exp()
    } else {
        let ln_t0 = n as f64 * half.ln() - ln_factorial(n as u64) - x;
        if ln_t0 < -745.0 {
            return 0.0;
        }
        ln_t0.exp()
    };
    if term == 0.0 {
        return 0.0;
    }
    let q = half * half;
    let mut sum = term;
    let mut below = 0u32;
    for k in 0..600u32 {
        term *= q / ((k as f64 + 1.0) * (n as f64 + k as f64 + 1.0));
        sum += term;
        if term <= 1e-17 * sum {
            below += 1;
            if below >= 3 {
                break;
            }
        } else {
            below = 0;
        }
    }
    sum
}

/// e^{−x} I_n(x) ≈ (2πx)^{−1/2} Σ_k (−1)^k α_k(n)/(k! 8^k) x^{−k}, truncated
/// at the smallest term. Returns (value, first omitted term / envelope).
pub(crate) fn asymptotic_scaled(n: u32, x: f64) -> (f64, f64) {
    let mu = 4.0 * (n as f64) * (n as f64);
    let mut sum = 0.0f64;
    let mut term = 1.0f64;
    let mut k = 0u32;
    let omitted;
    loop {
        sum += term;
        let odd = (2 * k + 1) as f64;
        // (−1)^k α_k/(k! 8^k) x^{−k} advances by −(μ−(2k+1)²)/(8(k+1)x)
        let next = -term * (mu - odd * odd) / (8.0 * (k as f64 + 1.0) * x);
        // terms may grow while (2k+1)² < μ; optimal truncation is at the
        // smallest term past that hump
        let past_hump = odd * odd >= mu;
        if (past_hump && next.abs() >= term.abs())
            || next.abs() < 1e-19 * sum.abs().max(1e-300)
            || k >= 120
        {
            omitted = next.abs();
            break;
        }
        term = next;
        k += 1;
    }
    let envelope = 1.0 / (2.0 * std::f64::consts::PI * x).sqrt();
    (envelope * sum, omitted * envelope)
}
