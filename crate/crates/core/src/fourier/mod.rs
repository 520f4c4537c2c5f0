//! Generic radial-Fourier machinery: Hankel-type transforms of radial
//! profiles, ball indicator transforms, intersection volumes, structure
//! factors, and number variances by quadrature.
//!
//! The variance of the count in a ball of radius R for a process with
//! constant intensity ρ̃ and radial structure factor ŝ is
//!
//! ```text
//! Var = (2 π^{d/2} ρ̃ / Γ(d/2)) R^d ∫₀^∞ J_{d/2}(κR)²/κ · ŝ(κ) dκ.
//! ```
//!
//! The integral is split as ∫ J²/κ · ŝ = 1/d − ∫ J²/κ · (1 − ŝ); the first
//! piece is exact, and the second is damped by however fast ŝ approaches 1,
//! which for the Heisenberg family is the Gaussian e^{−κ²/4}. The
//! oscillatory integrand is handled lobe by lobe between consecutive zeros
//! of J_{d/2}(κR).

mod quad;
mod zeros;

pub use zeros::bessel_j_zero;

use crate::specfun::{
    bessel_i_scaled, bessel_j_over_power, bessel_j_unchecked, gamma_half_integer,
};
use crate::{Error, Result, Route, VarianceReport};

/// Which side of the transform a profile lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    /// Total correlation c(r) in real space.
    RealSpaceC,
    /// Structure factor ŝ(κ) in Fourier space.
    FourierSpaceS,
}

/// Decay envelope of a profile. For a Fourier-space structure factor the
/// envelope describes the complement 1 − ŝ(κ), which is what the variance
/// integrand actually sees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    /// |f(x)| ≲ e^{−(x/scale)²}.
    Gaussian { scale: f64 },
    /// |f(x)| ≲ C x^{−exponent}.
    Power { exponent: f64 },
    /// f(x) = 0 for x ≥ limit.
    Compact { limit: f64 },
}

/// A real-valued function of a nonnegative radial argument plus the decay
/// information the quadrature needs to truncate tails.
pub struct RadialProfile {
    eval: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    pub space: Space,
    pub decay: Decay,
}

impl RadialProfile {
    pub fn new(
        space: Space,
        decay: Decay,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        RadialProfile {
            eval: Box::new(eval),
            space,
            decay,
        }
    }

    pub fn real_space(eval: impl Fn(f64) -> f64 + Send + Sync + 'static, decay: Decay) -> Self {
        Self::new(Space::RealSpaceC, decay, eval)
    }

    pub fn fourier_space(eval: impl Fn(f64) -> f64 + Send + Sync + 'static, decay: Decay) -> Self {
        Self::new(Space::FourierSpaceS, decay, eval)
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    /// c(r) = −e^{−r²} of the Heisenberg family.
    pub fn heisenberg_total_correlation() -> Self {
        Self::real_space(|r| -(-r * r).exp(), Decay::Gaussian { scale: 1.0 })
    }

    /// ŝ(κ) = 1 − e^{−κ²/4}; the decay describes 1 − ŝ.
    pub fn heisenberg_structure_factor() -> Self {
        Self::fourier_space(
            |kappa| -(-0.25 * kappa * kappa).exp_m1(),
            Decay::Gaussian { scale: 2.0 },
        )
    }

    /// Poisson baseline ŝ ≡ 1. The complement vanishes identically, which
    /// the variance quadrature turns into an exact closed form.
    pub fn poisson_structure_factor() -> Self {
        Self::fourier_space(|_| 1.0, Decay::Compact { limit: 0.0 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailStrategy {
    /// Split off ∫ J²/κ = 1/(2ν) analytically and integrate the damped rest.
    SplitAddOne,
    /// Integrate ŝ·J²/κ directly to a cutoff and close with the asymptotic
    /// tail of ∫ J²/κ.
    GaussianCutoff,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Bisection depth per lobe.
    pub max_subdivisions: u32,
    pub tail_strategy: TailStrategy,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            max_subdivisions: 32,
            tail_strategy: TailStrategy::SplitAddOne,
        }
    }
}

/// Constant intensity ρ̃ with respect to Lebesgue measure in real dimension
/// d. The Heisenberg family has ρ̃ = π^{−D} in d = 2D.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityParams {
    pub intensity: f64,
    pub dim: u32,
}

impl DensityParams {
    pub fn new(intensity: f64, dim: u32) -> Result<Self> {
        if !(intensity > 0.0) || !intensity.is_finite() {
            return Err(Error::Domain(format!(
                "intensity must be positive, got {intensity}"
            )));
        }
        if dim == 0 {
            return Err(Error::Domain("real dimension must be >= 1".into()));
        }
        Ok(DensityParams { intensity, dim })
    }

    pub fn heisenberg(complex_dim: u32) -> Result<Self> {
        if complex_dim == 0 {
            return Err(Error::Domain("complex dimension D must be >= 1".into()));
        }
        Self::new(
            std::f64::consts::PI.powi(-(complex_dim as i32)),
            2 * complex_dim,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

const MAX_LOBES: usize = 2_000_000;

fn pi_pow_half(d: u32) -> f64 {
    let pi = std::f64::consts::PI;
    if d % 2 == 0 {
        pi.powi(d as i32 / 2)
    } else {
        pi.powi(d as i32 / 2) * pi.sqrt()
    }
}

/// vol(B_R) = π^{d/2} R^d / Γ(d/2 + 1).
pub fn ball_volume(d: u32, r: f64) -> f64 {
    debug_assert!(d >= 1 && r >= 0.0);
    pi_pow_half(d) * r.powi(d as i32) / gamma_half_integer(d + 2)
}

/// Fourier transform of the ball indicator:
/// (2π)^{d/2} (R/κ)^{d/2} J_{d/2}(κR) = (2π)^{d/2} R^d · J_{d/2}(κR)/(κR)^{d/2},
/// which tends to vol(B_R) as κ → 0.
pub fn ball_indicator_ft(d: u32, r: f64, kappa: f64) -> Result<f64> {
    if d == 0 || !(r > 0.0) || !(kappa >= 0.0) {
        return Err(Error::Domain(
            "ball_indicator_ft needs d >= 1, R > 0, kappa >= 0".into(),
        ));
    }
    let nu = d as f64 / 2.0;
    let g = bessel_j_over_power(nu, kappa * r)?;
    Ok((2.0 * std::f64::consts::PI).powi(d as i32).sqrt() * r.powi(d as i32) * g)
}

/// Fourier transform of the intersection volume,
/// (2π)^d R^d J_{d/2}(κR)²/κ^d; equals `ball_indicator_ft` squared.
pub fn intersection_volume_ft(d: u32, r: f64, kappa: f64) -> Result<f64> {
    if d == 0 || !(r > 0.0) || !(kappa >= 0.0) {
        return Err(Error::Domain(
            "intersection_volume_ft needs d >= 1, R > 0, kappa >= 0".into(),
        ));
    }
    let nu = d as f64 / 2.0;
    let g = bessel_j_over_power(nu, kappa * r)?;
    Ok((2.0 * std::f64::consts::PI).powi(d as i32) * r.powi(2 * d as i32) * g * g)
}

/// Regularized incomplete beta I_x(a, 1/2) for a = (d+1)/2, by the exact
/// climb I_x(a+1, b) = I_x(a, b) − x^a (1−x)^b / (a B(a, b)) from the
/// elementary base cases.
fn reg_beta_half(d: u32, x: f64) -> f64 {
    let sqrt_one_minus = (1.0 - x).max(0.0).sqrt();
    let (mut a2, mut val) = if d % 2 == 1 {
        // a climbs over integers starting at 1
        (2u32, 1.0 - sqrt_one_minus)
    } else {
        // a climbs over half-integers starting at 1/2
        (1u32, 2.0 / std::f64::consts::PI * x.sqrt().asin())
    };
    let target = d + 1; // 2a at the end
    while a2 < target {
        let a = a2 as f64 / 2.0;
        // B(a, 1/2) = Γ(a)Γ(1/2)/Γ(a+1/2)
        let beta = gamma_half_integer(a2) * gamma_half_integer(1) / gamma_half_integer(a2 + 1);
        val -= x.powf(a) * sqrt_one_minus / (a * beta);
        a2 += 2;
    }
    val.clamp(0.0, 1.0)
}

/// vol(B_R ∩ (B_R + x)) with |x| = r: the hyperspherical-lens closed form
/// 2·cap = vol(B_R) · I_{1−t²}((d+1)/2, 1/2) with t = r/(2R).
pub fn intersection_volume_real(d: u32, r_ball: f64, r: f64) -> Result<f64> {
    if d == 0 || !(r_ball > 0.0) || !(r >= 0.0) {
        return Err(Error::Domain(
            "intersection_volume_real needs d >= 1, R > 0, r >= 0".into(),
        ));
    }
    if r >= 2.0 * r_ball {
        return Ok(0.0);
    }
    if r == 0.0 {
        return Ok(ball_volume(d, r_ball));
    }
    let t = r / (2.0 * r_ball);
    let x = (1.0 - t) * (1.0 + t);
    Ok(ball_volume(d, r_ball) * reg_beta_half(d, x))
}

/// Heisenberg structure factor ŝ(κ) = 1 − e^{−κ²/4}; independent of D.
pub fn structure_factor_heisenberg(_complex_dim: u32, kappa: f64) -> f64 {
    debug_assert!(kappa >= 0.0);
    -(-0.25 * kappa * kappa).exp_m1()
}

/// J_ν(κR)²/κ, evaluated through the regular factor J_ν(z)/z^ν near the
/// origin so that κ = 0 is never a 0/0.
fn jsq_over_kappa(nu: f64, r: f64, kappa: f64) -> f64 {
    let z = kappa * r;
    if z < 0.5 {
        let g = bessel_j_over_power(nu, z).unwrap_or(f64::NAN);
        // J²/κ = g² z^{2ν}/κ = g² κ^{2ν−1} R^{2ν}
        g * g * kappa.powf(2.0 * nu - 1.0) * r.powf(2.0 * nu)
    } else {
        let j = bessel_j_unchecked(nu, z).unwrap_or(f64::NAN);
        j * j / kappa
    }
}

/// Asymptotic tail ∫_z^∞ J_ν(u)²/u du for large z; returns (value, error).
fn jsq_over_arg_tail(nu: f64, z: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let pi = std::f64::consts::PI;
    let smooth = (1.0 / z + (mu - 1.0) / (24.0 * z * z * z)) / pi;
    let omega = z - (2.0 * nu + 1.0) * pi / 4.0;
    let osc = -(2.0 * omega).sin() / (2.0 * pi * z * z);
    let err = (2.0 + (mu - 1.0).abs() / 2.0) / (pi * z * z * z);
    (smooth + osc, err)
}

/// ∫₀^{κ_tail} J_ν(κR)²/κ · g(κ) dκ over lobes delimited by the zeros of
/// J_ν(κR). Returns (value, quadrature error, discarded-tail bound).
fn damped_jsq_integral(
    nu: f64,
    r: f64,
    g: &dyn Fn(f64) -> f64,
    kappa_tail: f64,
    q: &QuadratureSpec,
) -> Result<(f64, f64, f64)> {
    if kappa_tail <= 0.0 {
        return Ok((0.0, 0.0, 0.0));
    }
    let mut edges = vec![0.0f64];
    let mut m = 1u32;
    loop {
        let kappa_zero = zeros::bessel_j_zero(nu, m) / r;
        if kappa_zero >= kappa_tail {
            break;
        }
        edges.push(kappa_zero);
        m += 1;
        if edges.len() > MAX_LOBES {
            return Err(Error::ResourceLimit(format!(
                "more than {MAX_LOBES} integration lobes at R = {r}"
            )));
        }
    }
    edges.push(kappa_tail);

    let f = |kappa: f64| jsq_over_kappa(nu, r, kappa) * g(kappa);
    let panel_abs = q.abs_tol / edges.len() as f64;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut err = 0.0f64;
    for w in edges.windows(2) {
        let (v, e) = quad::integrate(&f, w[0], w[1], panel_abs, q.rel_tol, q.max_subdivisions);
        err += e;
        let y = v - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    if !sum.is_finite() {
        return Err(Error::Convergence {
            what: "damped J² lobe integration".into(),
            achieved: f64::INFINITY,
        });
    }
    let (tail_env, tail_env_err) = jsq_over_arg_tail(nu, kappa_tail * r);
    let tail_bound = g(kappa_tail).abs() * (tail_env.abs() + tail_env_err);
    Ok((sum, err, tail_bound))
}

/// Cutoff beyond which a damped complement profile is negligible.
fn complement_cutoff(decay: &Decay, q: &QuadratureSpec, r: f64) -> Result<f64> {
    let tol = q.abs_tol.clamp(1e-300, 1e-16) * 1e-2;
    match *decay {
        Decay::Compact { limit } => Ok(limit),
        Decay::Gaussian { scale } => Ok((scale * (1.0 / tol).ln().sqrt()).max(12.0)),
        Decay::Power { exponent } => {
            if exponent <= 1.0 {
                return Err(Error::MissingEnvelope(
                    "power-decay complement needs exponent > 1".into(),
                ));
            }
            let p = exponent;
            Ok(((1.0 / (std::f64::consts::PI * r * tol * (p - 1.0))).powf(1.0 / p)).max(12.0))
        }
    }
}

/// Number variance by Fourier quadrature:
/// Var = ρ̃ vol(B_R) − pref · ∫ J²/κ (1 − ŝ), pref = 2π^{d/2} ρ̃ R^d/Γ(d/2).
///
/// With ŝ ≡ 1 (Poisson) the integral term vanishes identically and the
/// result is exactly ρ̃·vol(B_R).
pub fn variance_quadrature_fourier(
    dens: &DensityParams,
    s_hat: &RadialProfile,
    r: f64,
    q: &QuadratureSpec,
) -> Result<VarianceReport> {
    if s_hat.space != Space::FourierSpaceS {
        return Err(Error::Domain(
            "variance_quadrature_fourier needs a Fourier-space profile".into(),
        ));
    }
    if !(r > 0.0) {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    let d = dens.dim;
    let nu = d as f64 / 2.0;
    let mean = dens.intensity * ball_volume(d, r);
    let pref = 2.0 * pi_pow_half(d) * dens.intensity * r.powi(d as i32) / gamma_half_integer(d);

    match q.tail_strategy {
        TailStrategy::SplitAddOne => {
            let g = |kappa: f64| 1.0 - s_hat.eval(kappa);
            let kappa_tail = complement_cutoff(&s_hat.decay, q, r)?;
            let (t, quad_err, tail) = damped_jsq_integral(nu, r, &g, kappa_tail, q)?;
            let variance = mean - pref * t;
            let err = pref * (quad_err + tail) + 4.0 * f64::EPSILON * mean;
            Ok(VarianceReport::new(mean, variance, Route::Quadrature, err))
        }
        TailStrategy::GaussianCutoff => {
            // Direct ∫ J²/κ ŝ to a cutoff past which ŝ ≈ 1, closed with the
            // asymptotic tail of ∫ J²/κ.
            let kappa_tail = complement_cutoff(&s_hat.decay, q, r)?.max(600.0 / r);
            let g = |kappa: f64| s_hat.eval(kappa);
            let (t, quad_err, _) = damped_jsq_integral(nu, r, &g, kappa_tail, q)?;
            let (tail, tail_err) = jsq_over_arg_tail(nu, kappa_tail * r);
            let variance = pref * (t + tail);
            let err = pref * (quad_err + tail_err) + 4.0 * f64::EPSILON * mean;
            Ok(VarianceReport::new(mean, variance, Route::Quadrature, err))
        }
    }
}

/// Number variance from the real-space total correlation:
/// Var = ρ̃ [ vol(B_R) + (2π^{d/2} ρ̃/Γ(d/2)) ∫₀^{2R} ℐ(r) c(r) r^{d−1} dr ].
pub fn variance_quadrature_real(
    dens: &DensityParams,
    c: &RadialProfile,
    r_ball: f64,
    q: &QuadratureSpec,
) -> Result<VarianceReport> {
    if c.space != Space::RealSpaceC {
        return Err(Error::Domain(
            "variance_quadrature_real needs a real-space profile".into(),
        ));
    }
    if !(r_ball > 0.0) {
        return Err(Error::Domain(format!(
            "radius must be positive, got {r_ball}"
        )));
    }
    let d = dens.dim;
    let vol = ball_volume(d, r_ball);
    let mean = dens.intensity * vol;

    let tol = q.abs_tol.clamp(1e-300, 1e-16) * 1e-2;
    let upper = match c.decay {
        Decay::Compact { limit } => limit.min(2.0 * r_ball),
        Decay::Gaussian { scale } => (scale * (1.0 / tol).ln().sqrt()).min(2.0 * r_ball),
        Decay::Power { .. } => 2.0 * r_ball,
    };

    let pref = 2.0 * pi_pow_half(d) * dens.intensity / gamma_half_integer(d);
    let mut integral = 0.0f64;
    let mut quad_err = 0.0f64;
    if upper > 0.0 {
        let f = |r: f64| {
            intersection_volume_real(d, r_ball, r).unwrap_or(f64::NAN)
                * c.eval(r)
                * r.powi(d as i32 - 1)
        };
        let n_panels = (upper.ceil() as usize).clamp(8, 256);
        let w = upper / n_panels as f64;
        for i in 0..n_panels {
            let (v, e) = quad::integrate(
                &f,
                i as f64 * w,
                (i + 1) as f64 * w,
                q.abs_tol / n_panels as f64,
                q.rel_tol,
                q.max_subdivisions,
            );
            integral += v;
            quad_err += e;
        }
        if !integral.is_finite() {
            return Err(Error::Convergence {
                what: "real-space variance integrand".into(),
                achieved: f64::INFINITY,
            });
        }
    }
    // allowance for the part of [0, 2R] clipped by the envelope
    let clipped = if upper < 2.0 * r_ball {
        let env = match c.decay {
            Decay::Gaussian { scale } => (-(upper / scale).powi(2)).exp(),
            _ => 0.0,
        };
        env * vol * upper.powi(d as i32 - 1) * (2.0 * r_ball - upper)
    } else {
        0.0
    };

    let variance = dens.intensity * (vol + pref * integral);
    let err = dens.intensity * pref * (quad_err + clipped) + 4.0 * f64::EPSILON * mean;
    Ok(VarianceReport::new(mean, variance, Route::Quadrature, err))
}

/// Hankel-type radial Fourier transform in dimension d:
/// forward  f̂(κ) = (2π)^{d/2} ∫₀^∞ r^{d−1} [J_ν(κr)/(κr)^ν] f(r) dr,
/// inverse  f(r) = (2π)^{−d/2} ∫₀^∞ κ^{d−1} [J_ν(κr)/(κr)^ν] f̂(κ) dκ,
/// with ν = (d−2)/2. The bracketed kernel is regular at zero, so the
/// argument 0 needs no special casing on either side.
pub fn radial_fourier(
    d: u32,
    profile: &RadialProfile,
    at: f64,
    direction: Direction,
    q: &QuadratureSpec,
) -> Result<f64> {
    if d == 0 {
        return Err(Error::Domain("dimension must be >= 1".into()));
    }
    if !(at >= 0.0) {
        return Err(Error::Domain(format!(
            "transform argument must be >= 0, got {at}"
        )));
    }
    match (direction, profile.space) {
        (Direction::Forward, Space::RealSpaceC) | (Direction::Inverse, Space::FourierSpaceS) => {}
        _ => {
            return Err(Error::Domain(
                "direction does not match the profile's space".into(),
            ))
        }
    }
    let nu = (d as f64 - 2.0) / 2.0;
    let coef = match direction {
        Direction::Forward => (2.0 * std::f64::consts::PI).powi(d as i32).sqrt(),
        Direction::Inverse => 1.0 / (2.0 * std::f64::consts::PI).powi(d as i32).sqrt(),
    };
    let h = |u: f64| {
        u.powi(d as i32 - 1) * bessel_j_over_power(nu, at * u).unwrap_or(f64::NAN) * profile.eval(u)
    };
    let target_abs = (q.abs_tol / coef).max(1e-300);

    let integral = match profile.decay {
        Decay::Compact { limit } => finite_oscillatory(&h, nu, at, limit, target_abs, q)?,
        Decay::Gaussian { scale } => {
            let tol = target_abs.clamp(1e-300, 1e-16) * 1e-2;
            let upper = scale * (1.0 / tol).ln().sqrt() + 1.0;
            finite_oscillatory(&h, nu, at, upper, target_abs, q)?
        }
        Decay::Power { exponent } => power_tail_lobes(&h, d, nu, at, exponent, target_abs, q)?,
    };
    let value = coef * integral;
    if !value.is_finite() {
        return Err(Error::Convergence {
            what: "radial Fourier transform".into(),
            achieved: f64::INFINITY,
        });
    }
    Ok(value)
}

/// Integral over [0, upper], split at the kernel zeros when the kernel
/// oscillates on that range.
fn finite_oscillatory(
    h: &dyn Fn(f64) -> f64,
    nu: f64,
    at: f64,
    upper: f64,
    abs_tol: f64,
    q: &QuadratureSpec,
) -> Result<f64> {
    if upper <= 0.0 {
        return Ok(0.0);
    }
    let mut edges = vec![0.0f64];
    if at > 0.0 {
        let kernel_nu = nu.max(0.0);
        let mut m = 1u32;
        loop {
            let z = zeros::bessel_j_zero(kernel_nu, m) / at;
            if z >= upper {
                break;
            }
            edges.push(z);
            m += 1;
            if edges.len() > MAX_LOBES {
                return Err(Error::ResourceLimit("too many kernel lobes".into()));
            }
        }
    }
    edges.push(upper);
    let panel_abs = abs_tol / edges.len() as f64;
    let mut sum = 0.0;
    for w in edges.windows(2) {
        let (v, _) = quad::integrate(h, w[0], w[1], panel_abs, q.rel_tol, q.max_subdivisions);
        sum += v;
    }
    Ok(sum)
}

/// Semi-infinite integral of an oscillatory integrand whose envelope decays
/// like u^a: march over fixed-width lobes, fit the local coefficient of the
/// u^a model over a trailing window, and close the integral with the fitted
/// tail once its spread-based uncertainty is inside the budget.
///
/// Alternating lobes make the fitted coefficient average toward zero and
/// the spread supplies a conservative bound; monotone (DC) tails fit the
/// coefficient tightly, so the added tail is accurate to the window spread.
fn power_tail_lobes(
    h: &dyn Fn(f64) -> f64,
    d: u32,
    nu: f64,
    at: f64,
    exponent: f64,
    abs_tol: f64,
    q: &QuadratureSpec,
) -> Result<f64> {
    const WINDOW: usize = 16;
    let kernel_decay = if at > 0.0 { nu.max(0.0) + 0.5 } else { 0.0 };
    let a = d as f64 - 1.0 - exponent - kernel_decay;
    if a >= -1.0 {
        return Err(Error::MissingEnvelope(format!(
            "tail envelope u^{a:.2} is not integrable"
        )));
    }
    let w = std::f64::consts::PI / at.max(0.5);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut recent = [f64::INFINITY; WINDOW];
    let mut lo = 0.0f64;
    let mut last_unc = f64::INFINITY;
    for i in 0..MAX_LOBES {
        let hi = lo + w;
        let (v, _) = quad::integrate(h, lo, hi, abs_tol / 64.0, q.rel_tol, q.max_subdivisions);
        let y = v - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        let mass = (hi.powf(a + 1.0) - lo.powf(a + 1.0)) / (a + 1.0);
        recent[i % WINDOW] = v / mass.max(1e-300);
        if i >= WINDOW {
            let mean_c = recent.iter().sum::<f64>() / WINDOW as f64;
            let min_c = recent.iter().cloned().fold(f64::INFINITY, f64::min);
            let max_c = recent.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let tail_mass = hi.powf(a + 1.0) / (-(a + 1.0));
            let tail_add = mean_c * tail_mass;
            let unc =
                (max_c - min_c) * tail_mass + tail_add.abs() * (WINDOW as f64 * w / hi).min(1.0);
            last_unc = unc;
            if unc <= abs_tol {
                return Ok(sum + tail_add);
            }
        }
        lo = hi;
    }
    Err(Error::Convergence {
        what: "power-tail lobe summation hit the lobe cap".into(),
        achieved: last_unc,
    })
}

/// Residual of n A_n − (n−1) A_{n−1} = e^{−2R²}[I_{n−1} + I_n](2R²)/2 with
/// A_n(R) = ∫₀^∞ J_n(κR)²/κ (1 − e^{−κ²/4}) dκ evaluated by quadrature.
/// Returns the maximum absolute residual over n = 1..D.
pub fn recurrence_check_an(complex_dim: u32, r: f64, q: &QuadratureSpec) -> Result<f64> {
    if complex_dim == 0 || !(r > 0.0) {
        return Err(Error::Domain("need D >= 1 and R > 0".into()));
    }
    let x = 2.0 * r * r;
    let kappa_tail = complement_cutoff(&Decay::Gaussian { scale: 2.0 }, q, r)?;
    let damp = |kappa: f64| (-0.25 * kappa * kappa).exp();
    let mut prev_a = 0.0f64;
    let mut max_residual = 0.0f64;
    for n in 1..=complex_dim {
        let (t, _, _) = damped_jsq_integral(n as f64, r, &damp, kappa_tail, q)?;
        let a_n = 1.0 / (2.0 * n as f64) - t;
        let rhs = 0.5 * (bessel_i_scaled(n - 1, x)? + bessel_i_scaled(n, x)?);
        let residual = (n as f64 * a_n - (n as f64 - 1.0) * prev_a - rhs).abs();
        max_residual = max_residual.max(residual);
        prev_a = a_n;
    }
    Ok(max_residual)
}

/// ∫₀^∞ J_ν(z)²/z dz via `lobes` zero-aligned panels plus the asymptotic
/// tail; verifies the closed form 1/(2ν) without any damping.
pub fn jsq_over_arg_integral(nu: f64, lobes: u32, q: &QuadratureSpec) -> Result<f64> {
    if !(nu > 0.0) {
        return Err(Error::Domain("need nu > 0".into()));
    }
    let z_cap = zeros::bessel_j_zero(nu, lobes);
    let g = |_: f64| 1.0;
    let (head, _, _) = damped_jsq_integral(nu, 1.0, &g, z_cap, q)?;
    let (tail, _) = jsq_over_arg_tail(nu, z_cap);
    Ok(head + tail)
}
