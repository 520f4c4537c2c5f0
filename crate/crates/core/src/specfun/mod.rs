//! Self-contained special functions with controlled accuracy.
//!
//! Everything the variance formulas need: Bessel J_ν for real order ν > −1,
//! the exponentially scaled modified Bessel e^{−x} I_n(x), the regularized
//! lower incomplete gamma function for integer shape, a guarded ₂F₂ series,
//! and the product coefficients α_k(ν) that drive the Bessel asymptotics.
//!
//! All functions are pure; nothing here allocates shared state.

mod bessel_i;
mod bessel_j;
mod gamma_inc;
mod hyp2f2;

pub use bessel_i::bessel_i_scaled;
pub use bessel_j::bessel_j;
pub(crate) use bessel_j::{bessel_j_over_power, bessel_j_unchecked};
pub use gamma_inc::reg_lower_gamma;
pub use hyp2f2::{hyp2f2, SeriesEval};

use crate::{Error, Result};

/// Bessel order ν. All in-crate uses are integer or half-integer, but any
/// real ν > −1 is accepted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Order(f64);

impl Order {
    pub fn new(value: f64) -> Result<Order> {
        if !value.is_finite() || value <= -1.0 {
            return Err(Error::Domain(format!(
                "Bessel order must be > -1, got {value}"
            )));
        }
        Ok(Order(value))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Relative/absolute tolerance pair used by series truncation and spectrum
/// cutoffs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Accuracy {
    pub rel_tol: f64,
    pub abs_tol: f64,
}

impl Accuracy {
    pub fn new(rel_tol: f64, abs_tol: f64) -> Result<Accuracy> {
        if !(rel_tol > 0.0 && rel_tol <= 1e-3) {
            return Err(Error::Domain(format!(
                "rel_tol must lie in (0, 1e-3], got {rel_tol}"
            )));
        }
        if !(abs_tol >= 0.0) {
            return Err(Error::Domain(format!(
                "abs_tol must be >= 0, got {abs_tol}"
            )));
        }
        Ok(Accuracy { rel_tol, abs_tol })
    }
}

impl Default for Accuracy {
    fn default() -> Self {
        // abs_tol doubles as the spectrum truncation threshold; 1e-30 keeps
        // the dropped first-moment mass below every acceptance tolerance
        // even after multiplicity weighting.
        Accuracy {
            rel_tol: 1e-12,
            abs_tol: 1e-30,
        }
    }
}

/// α_k(ν) = ∏_{ℓ=1}^{k} {4ν² − (2ℓ−1)²}, with α_0 = 1.
///
/// When 4ν² is an integer the product is carried out in integer arithmetic
/// and widened on return; otherwise it is a plain floating product.
pub fn alpha_coeff(k: u32, nu: f64) -> f64 {
    let four_nu_sq = 4.0 * nu * nu;
    if four_nu_sq.fract() == 0.0 && four_nu_sq <= 4.0e15 {
        if let Some(exact) = alpha_coeff_integer(k, four_nu_sq as i128) {
            return exact as f64;
        }
    }
    let mut prod = 1.0;
    for l in 1..=k as u64 {
        let odd = (2 * l - 1) as f64;
        prod *= four_nu_sq - odd * odd;
    }
    prod
}

/// Exact α_k(ν) for 4ν² = `four_nu_sq` ∈ ℤ; `None` on i128 overflow.
pub fn alpha_coeff_integer(k: u32, four_nu_sq: i128) -> Option<i128> {
    let mut prod: i128 = 1;
    for l in 1..=k as i128 {
        let odd = 2 * l - 1;
        prod = prod.checked_mul(four_nu_sq - odd * odd)?;
    }
    Some(prod)
}

const MAX_EXACT_FACTORIAL: usize = 170;

fn factorial_table() -> [f64; MAX_EXACT_FACTORIAL + 1] {
    let mut t = [1.0; MAX_EXACT_FACTORIAL + 1];
    for n in 1..=MAX_EXACT_FACTORIAL {
        t[n] = t[n - 1] * n as f64;
    }
    t
}

fn ln_factorial_table() -> [f64; 2048] {
    // Kahan-compensated cumulative sum of ln n keeps the absolute error at
    // a few ulps across the whole table.
    let mut t = [0.0f64; 2048];
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for n in 1..2048usize {
        let term = (n as f64).ln() - c;
        let s = sum + term;
        c = (s - sum) - term;
        sum = s;
        t[n] = sum;
    }
    t
}

thread_local! {
    static FACTORIALS: [f64; MAX_EXACT_FACTORIAL + 1] = factorial_table();
    static LN_FACTORIALS: [f64; 2048] = ln_factorial_table();
}

/// n! as f64; +∞ past the overflow threshold.
pub(crate) fn factorial(n: u32) -> f64 {
    if n as usize <= MAX_EXACT_FACTORIAL {
        FACTORIALS.with(|t| t[n as usize])
    } else {
        f64::INFINITY
    }
}

/// ln n!.
pub(crate) fn ln_factorial(n: u64) -> f64 {
    if (n as usize) < 2048 {
        LN_FACTORIALS.with(|t| t[n as usize])
    } else {
        // Stirling with the first correction terms; n ≥ 2048 keeps the
        // truncation far below 1e-15 relative.
        let x = n as f64;
        let ln2pi = (2.0 * std::f64::consts::PI).ln();
        (x + 0.5) * x.ln() - x + 0.5 * ln2pi + 1.0 / (12.0 * x) - 1.0 / (360.0 * x * x * x)
    }
}

/// Γ(m/2) for m ≥ 1, exact recursion off Γ(1) and Γ(1/2) = √π.
pub(crate) fn gamma_half_integer(twice_arg: u32) -> f64 {
    debug_assert!(twice_arg >= 1);
    let mut val = if twice_arg % 2 == 0 {
        1.0
    } else {
        std::f64::consts::PI.sqrt()
    };
    let mut m = if twice_arg % 2 == 0 { 2 } else { 1 };
    while m < twice_arg {
        val *= m as f64 / 2.0;
        m += 2;
    }
    val
}

/// Γ(x) for x > 0: half-integer arguments resolve exactly, anything else
/// goes through a Lanczos approximation (g = 7, 9 terms).
pub(crate) fn gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let twice = 2.0 * x;
    if twice.fract() == 0.0 && twice <= 400.0 {
        return gamma_half_integer(twice as u32);
    }
    lanczos_gamma(x)
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_gamma(x: f64) -> f64 {
    let z = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
}
