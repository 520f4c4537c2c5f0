//! Generalized hypergeometric series ₂F₂(a₁, a₂; b₁, b₂; x).
//!
//! Straight term-by-term summation. For x < 0 the terms alternate and grow
//! large before the sum collapses, so the accumulation runs in
//! double-double arithmetic and the returned error estimate carries the
//! cancellation magnification max|term|/|sum|. Past |x| = 80, or whenever
//! the estimated cancellation exceeds the requested tolerance, the guard
//! refuses rather than returning digits that are not there.

use super::Accuracy;
use crate::dd::Dd;
use crate::{Error, Result};

const ARGUMENT_GUARD: f64 = 80.0;
const MAX_TERMS: usize = 8000;
/// Effective roundoff of the double-double accumulation.
const DD_EPS: f64 = 5e-32;

/// A series value together with its internal error estimate.
#[derive(Debug, Clone, Copy)]
pub struct SeriesEval {
    pub value: f64,
    pub err_estimate: f64,
}

pub fn hyp2f2(a1: f64, a2: f64, b1: f64, b2: f64, x: f64, acc: &Accuracy) -> Result<SeriesEval> {
    for &b in &[b1, b2] {
        if b <= 0.0 && b.fract() == 0.0 {
            return Err(Error::Domain(format!(
                "lower parameter {b} is a nonpositive integer"
            )));
        }
    }
    if !x.is_finite() {
        return Err(Error::Domain(format!("argument must be finite, got {x}")));
    }
    if x.abs() > ARGUMENT_GUARD {
        return Err(Error::CancellationGuard {
            estimate: f64::INFINITY,
            tolerance: acc.rel_tol,
        });
    }

    let mut term = Dd::ONE;
    let mut sum = Dd::ONE;
    let mut max_abs = 1.0f64;
    let mut below = 0usize;
    let mut converged = false;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        // numerator (a1+n)(a2+n)x and denominator (b1+n)(b2+n)(n+1), each
        // factor exact in f64 for the parameter sizes at hand
        let num = Dd::from(a1 + nf).mul(Dd::from(a2 + nf)).mul_f64(x);
        let den = Dd::from(b1 + nf).mul(Dd::from(b2 + nf)).mul_f64(nf + 1.0);
        term = term.mul(num).div(den);
        sum = sum.add(term);
        let t_abs = term.abs();
        max_abs = max_abs.max(t_abs);
        if t_abs <= acc.abs_tol + 0.01 * acc.rel_tol * sum.abs() {
            below += 1;
            if below >= 3 {
                converged = true;
                break;
            }
        } else {
            below = 0;
        }
    }
    let value = sum.to_f64();
    let magnification = max_abs / value.abs().max(f64::MIN_POSITIVE);
    let cancellation = DD_EPS * magnification;
    let err_estimate = cancellation + 4.0 * f64::EPSILON;
    if !converged {
        return Err(Error::Convergence {
            what: format!("2F2({a1},{a2};{b1},{b2};{x})"),
            achieved: term.abs() / value.abs().max(f64::MIN_POSITIVE),
        });
    }
    if x < 0.0 && cancellation > acc.rel_tol {
        return Err(Error::CancellationGuard {
            estimate: cancellation,
            tolerance: acc.rel_tol,
        });
    }
    Ok(SeriesEval {
        value,
        err_estimate,
    })
}
