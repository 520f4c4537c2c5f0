//! Bessel function of the first kind J_ν for real ν > −1 and x ≥ 0.
//!
//! Three regimes:
//! * x ≤ 9 — ascending power series (cancellation stays below ~1e3·eps);
//! * 9 < x < x* — backward (Miller) recurrence normalized against the
//!   Gegenbauer sum (x/2)^ν = Σ_k (ν+2k) Γ(ν+k)/k! · J_{ν+2k}(x);
//! * x ≥ x* — Hankel asymptotic expansion with the cosine and sine sums,
//!   truncated at the smallest term.
//!
//! The series/asymptotic crossover sits at x* = max(20, 2ν²), where both
//! sides agree to better than 1e-13.

use super::{gamma_pos, Order};
use crate::{Error, Result};

const TAYLOR_LIMIT: f64 = 9.0;
const RESCALE_THRESHOLD: f64 = 1e250;

pub fn bessel_j(nu: Order, x: f64) -> Result<f64> {
    bessel_j_unchecked(nu.value(), x)
}

/// Same as [`bessel_j`] for callers that already hold a validated order.
pub(crate) fn bessel_j_unchecked(nu: f64, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("bessel_j needs x >= 0, got {x}")));
    }
    if x == 0.0 {
        return if nu == 0.0 {
            Ok(1.0)
        } else if nu > 0.0 {
            Ok(0.0)
        } else {
            Err(Error::Domain(format!("J_nu(0) diverges for nu = {nu} < 0")))
        };
    }
    let crossover = crossover(nu);
    if x <= TAYLOR_LIMIT {
        taylor(nu, x)
    } else if x < crossover {
        Ok(miller(nu, x))
    } else {
        let (value, err) = asymptotic(nu, x);
        if err > 1e-10 {
            return Err(Error::Convergence {
                what: format!("J_{nu}({x}) asymptotic series"),
                achieved: err,
            });
        }
        Ok(value)
    }
}

pub(crate) fn crossover(nu: f64) -> f64 {
    (2.0 * nu * nu).max(20.0)
}

/// J_ν(z)/z^ν, stable down to z = 0 where it equals 1/(2^ν Γ(ν+1)).
pub(crate) fn bessel_j_over_power(nu: f64, z: f64) -> Result<f64> {
    debug_assert!(z >= 0.0);
    if z < 0.5 {
        let q = 0.25 * z * z;
        let mut term = 0.5f64.powf(nu) / gamma_pos(nu + 1.0);
        let mut sum = term;
        for n in 0..40u32 {
            term *= -q / ((n as f64 + 1.0) * (nu + n as f64 + 1.0));
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        Ok(sum)
    } else {
        Ok(bessel_j_unchecked(nu, z)? / z.powf(nu))
    }
}

fn taylor(nu: f64, x: f64) -> Result<f64> {
    let half = 0.5 * x;
    let gamma = gamma_pos(nu + 1.0);
    let mut term = if gamma.is_finite() && gamma != 0.0 {
        half.powf(nu) / gamma
    } else {
        0.0
    };
    if term == 0.0 {
        // (x/2)^ν/Γ(ν+1) underflowed; the whole series is below 1e-300.
        return Ok(0.0);
    }
    let q = half * half;
    let mut sum = term;
    let mut comp = 0.0f64;
    let mut below = 0u32;
    for n in 0..400u32 {
        term *= -q / ((n as f64 + 1.0) * (nu + n as f64 + 1.0));
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if term.abs() <= 1e-17 * sum.abs().max(1e-300) {
            below += 1;
            if below >= 3 {
                return Ok(sum);
            }
        } else {
            below = 0;
        }
    }
    Err(Error::Convergence {
        what: format!("J_{nu}({x}) power series"),
        achieved: term.abs() / sum.abs().max(f64::MIN_POSITIVE),
    })
}

fn miller(nu: f64, x: f64) -> f64 {
    // Offset above ν at which J_{ν+m}(x) has decayed below ~1e-18 of J_ν.
    let base = x.max(nu);
    let pad = (16.0 * (0.5 * base).cbrt() + 18.0).ceil() as usize;
    let m_top = ((x - nu).max(0.0).ceil() as usize + pad + 1) & !1; // even

    let mut y = vec![0.0f64; m_top + 2];
    y[m_top + 1] = 0.0;
    y[m_top] = 1.0;
    for m in (0..m_top).rev() {
        let mu = nu + (m + 1) as f64;
        let val = (2.0 * mu / x) * y[m + 1] - y[m + 2];
        y[m] = val;
        if val.abs() > RESCALE_THRESHOLD {
            for entry in y[m..].iter_mut() {
                *entry *= 1e-250;
            }
        }
    }

    // Normalization sum Σ_k w_k y_{2k} with w_k = (ν+2k) Γ(ν+k)/k!.
    let mut s = gamma_pos(nu + 1.0) * y[0];
    let mut u = gamma_pos(nu + 1.0); // u_k = Γ(ν+k)/k!, here at k = 1
    let mut k = 1usize;
    while 2 * k <= m_top {
        let w = (nu + 2.0 * k as f64) * u;
        if !w.is_finite() {
            break;
        }
        s += w * y[2 * k];
        u *= (nu + k as f64) / (k as f64 + 1.0);
        k += 1;
    }
    y[0] * (0.5 * x).powf(nu) / s
}

/// Hankel expansion; returns (value, error estimate from the first omitted
/// term relative to the modulus envelope).
pub(crate) fn asymptotic(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 0.0f64;
    let mut q = 0.0f64;
    let mut term = 1.0f64; // a_j x^{-j}, starting at j = 0
    let mut j = 0u32;
    let omitted;
    loop {
        let k = j / 2;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        if j % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
        let odd = (2 * j + 1) as f64;
        let next = term * (mu - odd * odd) / (8.0 * (j as f64 + 1.0) * x);
        // terms may grow while (2j+1)² < μ; truncate at the smallest term
        // past that hump
        let past_hump = odd * odd >= mu;
        if (past_hump && next.abs() >= term.abs()) || next.abs() < 1e-19 || j >= 120 {
            omitted = next.abs();
            break;
        }
        term = next;
        j += 1;
    }
    let (cos_w, sin_w) = phase(nu, x);
    let envelope = (2.0 / (std::f64::consts::PI * x)).sqrt();
    (envelope * (cos_w * p - sin_w * q), omitted)
}

/// cos/sin of ω_ν(x) = x − (2ν+1)π/4 without forming the large difference:
/// the constant phase is reduced modulo 2π first (exactly when (2ν+1)/4 is
/// dyadic, i.e. for every half-integer order) and then folded in through the
/// angle addition formulas.
fn phase(nu: f64, x: f64) -> (f64, f64) {
    let c = (2.0 * nu + 1.0) / 4.0;
    let c_red = c.rem_euclid(2.0);
    let (sin_phi, cos_phi) = if (c_red / 0.25).fract() == 0.0 {
        const S: f64 = std::f64::consts::FRAC_1_SQRT_2;
        const TABLE: [(f64, f64); 8] = [
            (0.0, 1.0),
            (S, S),
            (1.0, 0.0),
            (S, -S),
            (0.0, -1.0),
            (-S, -S),
            (-1.0, 0.0),
            (-S, S),
        ];
        TABLE[(c_red / 0.25) as usize]
    } else {
        (c_red * std::f64::consts::PI).sin_cos()
    };
    let (sin_x, cos_x) = x.sin_cos();
    (
        cos_x * cos_phi + sin_x * sin_phi,
        sin_x * cos_phi - cos_x * sin_phi,
    )
}
