//! Closed-form means, variances, asymptotic expansions, and hyperuniformity
//! classification for the Heisenberg family on balls and polydisks.
//!
//! For a ball of radius R in ℝ^{2D}:
//!
//! * mean   E = R^{2D}/D!
//! * variance Var = E · e^{−2R²} [I₀(2R²) + 2 Σ_{n=1}^{D−1} I_n(2R²) + I_D(2R²)]
//!
//! so the ratio Var/E is exactly the scaled Bessel bracket. The same
//! variance admits a ₂F₂ form that serves as an independent cross-check,
//! and R·Var/E expands for large R in powers of R^{−2} with coefficients
//! built from α_k(D). Polydisk windows reduce to sums of p_k(R) and p_k(R)²
//! through the duality with a product of Bernoulli measures.

use crate::specfun::{bessel_i_scaled, factorial, hyp2f2, ln_factorial, reg_lower_gamma, Accuracy};
use crate::{Error, Result, Route, VarianceReport};

/// Complex dimension D and window radius R.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisenbergParams {
    dim: u32,
    radius: f64,
}

impl HeisenbergParams {
    pub fn new(dim: u32, radius: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Domain("complex dimension D must be >= 1".into()));
        }
        if !(radius >= 0.0) || !radius.is_finite() {
            return Err(Error::Domain(format!("radius must be >= 0, got {radius}")));
        }
        Ok(HeisenbergParams { dim, radius })
    }

    #[inline]
    pub fn dim(&self) -> u32 {
        self.dim
    }

    #[inline]
    pub fn radius(&self) -> f64 {
        self.radius
    }
}

/// Truncated expansion of R·Var/E in powers of R^{−2}.
#[derive(Debug, Clone)]
pub struct AsymptoticSeries {
    /// D/√π, the Class I limit of R·Var/E.
    pub prefactor: f64,
    /// c_k = (−1)^k α_k(D) / ((2k+1) k! 2^{4k}); coeffs[0] = 1.
    pub coeffs: Vec<f64>,
    pub k_max: usize,
    /// Magnitude of the first omitted term at the evaluation radius.
    pub trunc_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HyperuniformityLabel {
    ClassI,
    ClassII,
    ClassIII,
    NotHyperuniform,
}

impl HyperuniformityLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            HyperuniformityLabel::ClassI => "ClassI",
            HyperuniformityLabel::ClassII => "ClassII",
            HyperuniformityLabel::ClassIII => "ClassIII",
            HyperuniformityLabel::NotHyperuniform => "NotHyperuniform",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct HyperuniformityClass {
    pub label: HyperuniformityLabel,
    pub fitted_exponent: f64,
    pub fit_range: (f64, f64),
}

/// E[Ξ(B_R)] = R^{2D}/D!, evaluated in log space when the direct route
/// would overflow.
pub fn mean_ball(p: &HeisenbergParams) -> f64 {
    let d = p.dim;
    let r = p.radius;
    if r == 0.0 {
        return 0.0;
    }
    let ln_mean = 2.0 * d as f64 * r.ln() - ln_factorial(d as u64);
    if ln_mean.abs() < 700.0 && d <= 150 {
        r.powi(2 * d as i32) / factorial(d)
    } else {
        ln_mean.exp()
    }
}

/// Var/E for the ball: e^{−2R²}[I₀ + 2 Σ_{n<D} I_n + I_D](2R²), evaluated
/// entirely in scaled Bessel terms. Returns (ratio, error estimate).
fn ratio_bracket(d: u32, r: f64) -> Result<(f64, f64)> {
    let x = 2.0 * r * r;
    let mut bracket = bessel_i_scaled(0, x)?;
    for n in 1..d {
        bracket += 2.0 * bessel_i_scaled(n, x)?;
    }
    bracket += bessel_i_scaled(d, x)?;
    let err = 2.0 * d as f64 * 1e-14 * bracket;
    Ok((bracket, err))
}

/// Number variance of the ball window via the modified-Bessel closed form.
pub fn variance_ball_bessel(p: &HeisenbergParams) -> Result<VarianceReport> {
    let mean = mean_ball(p);
    if p.radius == 0.0 {
        return Ok(VarianceReport::new(0.0, 0.0, Route::Bessel, 0.0));
    }
    let (ratio, err) = ratio_bracket(p.dim, p.radius)?;
    Ok(VarianceReport::new(
        mean,
        mean * ratio,
        Route::Bessel,
        mean * err,
    ))
}

/// Number variance via the ₂F₂ form
/// Var = E · [1 − E · ₂F₂(D, D+1/2; D+1, 2D+1; −4R²)].
///
/// Errors with a cancellation guard once −4R² leaves the range where the
/// series carries the requested accuracy; callers should fall back to
/// [`variance_ball_bessel`] there.
pub fn variance_ball_2f2(p: &HeisenbergParams) -> Result<VarianceReport> {
    let mean = mean_ball(p);
    if p.radius == 0.0 {
        return Ok(VarianceReport::new(0.0, 0.0, Route::Hyp2F2, 0.0));
    }
    let d = p.dim as f64;
    let x = -4.0 * p.radius * p.radius;
    let acc = Accuracy::default();
    let f = hyp2f2(d, d + 0.5, d + 1.0, 2.0 * d + 1.0, x, &acc)?;
    let variance = mean * (1.0 - mean * f.value);
    let err = mean * mean * f.value.abs() * f.err_estimate + 4.0 * f64::EPSILON * mean;
    Ok(VarianceReport::new(mean, variance, Route::Hyp2F2, err))
}

/// Var/E for the ball window; defined as 1 at R = 0 by the Poisson limit.
pub fn ratio(p: &HeisenbergParams) -> Result<f64> {
    if p.radius == 0.0 {
        return Ok(1.0);
    }
    Ok(ratio_bracket(p.dim, p.radius)?.0)
}

/// Truncated asymptotic value of Var/E at radius R together with the series
/// that produced it. The series is cut at its smallest term if that happens
/// before `k_max`.
pub fn asymptotic_ratio(p: &HeisenbergParams, k_max: usize) -> (f64, AsymptoticSeries) {
    let d = p.dim as f64;
    let r = p.radius;
    let prefactor = d / std::f64::consts::PI.sqrt();
    let r2 = r * r;

    let mut coeffs = Vec::with_capacity(k_max + 1);
    let mut coeff = 1.0f64;
    let mut sum = 1.0f64;
    let mut scaled_prev = 1.0f64;
    let mut used_k = 0usize;
    let mut trunc;
    coeffs.push(1.0);
    loop {
        let k = used_k + 1;
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        // c_k/c_{k−1} = −(4D²−(2k−1)²)(2k−1)/((2k+1) k 16)
        coeff *= -(4.0 * d * d - odd * odd) * odd / ((2.0 * kf + 1.0) * kf * 16.0);
        let scaled = coeff / r2.powi(k as i32);
        trunc = scaled.abs();
        if scaled.abs() >= scaled_prev.abs() || k > k_max {
            break;
        }
        coeffs.push(coeff);
        sum += scaled;
        scaled_prev = scaled;
        used_k = k;
    }
    let value = prefactor / r * sum;
    (
        value,
        AsymptoticSeries {
            prefactor,
            coeffs,
            k_max: used_k,
            trunc_error: trunc,
        },
    )
}

/// Spectrum cutoff: smallest k past the bulk of the Poisson distribution
/// with mean R² at which p_k(R) drops below `abs_tol`.
pub(crate) fn pk_cutoff(r: f64, abs_tol: f64) -> Result<u32> {
    let r2 = r * r;
    let hard_floor = (r2 + 20.0 * (r2 + 1.0).sqrt()).ceil();
    if hard_floor > 5e7 {
        return Err(Error::ResourceLimit(format!(
            "spectrum cutoff ~{hard_floor:.0} modes at R = {r} is beyond the desk-scale cap"
        )));
    }
    let tol = abs_tol.max(1e-300);
    let mut k = hard_floor as u32;
    loop {
        if reg_lower_gamma(k + 1, r2)? < tol {
            return Ok(k);
        }
        k += 1 + k / 8;
    }
}

/// Σ_k p_k(R) and Σ_k p_k(R)², truncated with a Poisson tail bound.
/// Returns (sum_p, sum_p_sq, tail_bound).
pub(crate) fn pk_sums(r: f64, trunc: &Accuracy) -> Result<(f64, f64, f64)> {
    let r2 = r * r;
    let k_cut = pk_cutoff(r, trunc.abs_tol)?;
    let mut sum_p = 0.0f64;
    let mut comp = 0.0f64;
    let mut sum_p2 = 0.0f64;
    let mut last_p = 0.0f64;
    for k in 0..=k_cut {
        let p = reg_lower_gamma(k + 1, r2)?;
        let y = p - comp;
        let t = sum_p + y;
        comp = (t - sum_p) - y;
        sum_p = t;
        sum_p2 += p * p;
        last_p = p;
    }
    // p_{k+1}/p_k ≤ r²/(k+2) beyond the bulk, so the omitted mass is
    // geometrically dominated.
    let q = r2 / (k_cut as f64 + 2.0);
    let tail = if q < 1.0 {
        last_p * q / (1.0 - q)
    } else {
        f64::INFINITY
    };
    Ok((sum_p, sum_p2, tail))
}

/// E[Ξ(Δ_R^{(D)})] = (Σ_k p_k(R))^D; the inner sum telescopes to R², so the
/// result must equal R^{2D} up to the truncation bound.
pub fn mean_polydisk(p: &HeisenbergParams, trunc: &Accuracy) -> Result<f64> {
    if p.radius == 0.0 {
        return Ok(0.0);
    }
    let (sum_p, _, _) = pk_sums(p.radius, trunc)?;
    Ok(sum_p.powi(p.dim as i32))
}

/// Polydisk variance (Σ p_k)^D − (Σ p_k²)^D with the duality-route ratio
/// 1 − (Σp²/Σp)^D.
pub fn variance_polydisk(p: &HeisenbergParams, trunc: &Accuracy) -> Result<VarianceReport> {
    let d = p.dim as i32;
    if p.radius == 0.0 {
        return Ok(VarianceReport::new(0.0, 0.0, Route::Spectral, 0.0));
    }
    let (sum_p, sum_p2, tail) = pk_sums(p.radius, trunc)?;
    if sum_p == 0.0 {
        return Ok(VarianceReport::new(0.0, 0.0, Route::Spectral, tail));
    }
    let mean = sum_p.powi(d);
    let ratio = 1.0 - (sum_p2 / sum_p).powi(d);
    let variance = mean * ratio;
    let err = tail * d as f64 * sum_p.powi(d - 1).max(1.0) + 8.0 * f64::EPSILON * mean;
    Ok(VarianceReport::new(mean, variance, Route::Spectral, err))
}

/// Power-law classification of the Heisenberg ball variance on a log-spaced
/// R grid.
pub fn classify(d: u32, fit_range: (f64, f64), n_points: usize) -> Result<HyperuniformityClass> {
    let var_fn = |r: f64| -> Result<f64> {
        let p = HeisenbergParams::new(d, r)?;
        Ok(variance_ball_bessel(&p)?.variance)
    };
    classify_profile(2 * d, var_fn, fit_range, n_points)
}

/// Classification of an arbitrary variance profile in real dimension `d`.
///
/// Fits log Var against log R with a free exponent, refits under the
/// fixed-exponent R^{d−1} log R model, and labels per the growth classes:
/// a winning log-correction is Class II, exponent ≲ d−1 is Class I,
/// exponent ≈ d is not hyperuniform, strictly between is Class III.
pub fn classify_profile(
    d: u32,
    var_fn: impl Fn(f64) -> Result<f64>,
    fit_range: (f64, f64),
    n_points: usize,
) -> Result<HyperuniformityClass> {
    let (r_min, r_max) = fit_range;
    if !(r_min >= 1.0) || !(r_max > r_min) {
        return Err(Error::Domain(format!(
            "need 1 <= R_min < R_max, got ({r_min}, {r_max})"
        )));
    }
    if n_points < 5 {
        return Err(Error::Domain("need at least 5 fit points".into()));
    }

    let mut xs = Vec::with_capacity(n_points);
    let mut ys = Vec::with_capacity(n_points);
    let log_step = (r_max / r_min).ln() / (n_points - 1) as f64;
    for i in 0..n_points {
        let r = r_min * (log_step * i as f64).exp();
        let v = var_fn(r)?;
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::DegenerateFit(format!(
                "variance not positive/finite at R = {r}"
            )));
        }
        xs.push(r.ln());
        ys.push(v.ln());
    }

    let n = n_points as f64;
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("fit grid collapsed".into()));
    }
    let exponent = sxy / sxx;
    let intercept = mean_y - exponent * mean_x;
    let mut sse_power = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        let res = y - (intercept + exponent * x);
        sse_power += res * res;
    }

    // Class II model: log V = b + (d−1) log R + log log R, intercept free.
    let dm1 = d as f64 - 1.0;
    let mut b_acc = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        b_acc += y - dm1 * x - x.ln();
    }
    let b = b_acc / n;
    let mut sse_log = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        let res = y - (b + dm1 * x + x.ln());
        sse_log += res * res;
    }

    let fit_tol = 0.2;
    let label = if sse_log < sse_power {
        HyperuniformityLabel::ClassII
    } else if exponent <= dm1 + fit_tol {
        HyperuniformityLabel::ClassI
    } else if (exponent - d as f64).abs() <= fit_tol {
        HyperuniformityLabel::NotHyperuniform
    } else if exponent < d as f64 {
        HyperuniformityLabel::ClassIII
    } else {
        HyperuniformityLabel::NotHyperuniform
    };

    Ok(HyperuniformityClass {
        label,
        fitted_exponent: exponent,
        fit_range,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hp(d: u32, r: f64) -> HeisenbergParams {
        HeisenbergParams::new(d, r).unwrap()
    }

    #[test]
    fn mean_ball_values() {
        assert_eq!(mean_ball(&hp(1, 1.0)), 1.0);
        assert_eq!(mean_ball(&hp(2, 1.0)), 0.5);
        let m = mean_ball(&hp(3, 2.0));
        assert!(((m - 64.0 / 6.0) / m).abs() < 1e-15);
        // log-space path stays finite and consistent
        let big = mean_ball(&hp(40, 100.0));
        assert!(big.is_finite() && big > 0.0);
    }

    #[test]
    fn variance_bessel_reference_point() {
        // e^{−2}[I₀(2)+I₁(2)], 40-digit reference 0.5237776118026086987
        let rep = variance_ball_bessel(&hp(1, 1.0)).unwrap();
        assert!((rep.variance - 0.523_777_611_802_608_7).abs() < 1e-13);
        assert!((rep.ratio * rep.mean - rep.variance).abs() <= 1e-14 * rep.variance);
    }

    #[test]
    fn variance_poissonian_small_window() {
        let rep = variance_ball_bessel(&hp(1, 1e-3)).unwrap();
        assert!(rep.ratio <= 1.0 && rep.ratio >= 1.0 - 3e-6, "{}", rep.ratio);
    }

    #[test]
    fn two_forms_agree() {
        // agreement wherever the cancellation guard lets the series run
        for d in 1..=4u32 {
            for &r in &[0.25, 0.5, 1.0, 2.0, 3.0, 3.5, 4.0] {
                let b = variance_ball_bessel(&hp(d, r)).unwrap();
                match variance_ball_2f2(&hp(d, r)) {
                    Ok(f) => assert!(
                        (b.variance - f.variance).abs() <= 1e-8 * b.mean,
                        "D={d} R={r}: {} vs {}",
                        b.variance,
                        f.variance
                    ),
                    Err(Error::CancellationGuard { .. }) => {
                        assert!(r >= 3.5, "guard fired unexpectedly early at D={d} R={r}");
                    }
                    Err(other) => panic!("D={d} R={r}: {other:?}"),
                }
            }
        }
        // the tighter 1e-10 figure holds comfortably away from the guard
        for d in 1..=4u32 {
            for &r in &[0.25, 0.5, 1.0, 2.0, 3.0] {
                let b = variance_ball_bessel(&hp(d, r)).unwrap();
                let f = variance_ball_2f2(&hp(d, r)).unwrap();
                assert!((b.variance - f.variance).abs() <= 1e-10 * b.mean);
            }
        }
    }

    #[test]
    fn two_f2_guard_points_to_bessel() {
        match variance_ball_2f2(&hp(1, 6.0)) {
            Err(Error::CancellationGuard { .. }) => {}
            other => panic!("expected guard for R=6, got {other:?}"),
        }
    }

    #[test]
    fn two_f2_small_radius_leading_behavior() {
        // D=1: Var = R² − R⁴(1 + o(1)) as R → 0 since the series is 1 at 0
        for &r in &[1e-3, 1e-2, 0.05] {
            let rep = variance_ball_2f2(&hp(1, r)).unwrap();
            let r2 = r * r;
            let correction = (r2 - rep.variance) / (r2 * r2);
            assert!(
                (correction - 1.0).abs() < 5.0 * r2 + 1e-6,
                "R={r}: correction {correction}"
            );
        }
    }

    #[test]
    fn sub_poissonian_on_grid() {
        for d in 1..=6u32 {
            for i in 1..=25 {
                let r = 2.0 * i as f64;
                let rep = variance_ball_bessel(&hp(d, r)).unwrap();
                assert!(
                    rep.variance > 0.0 && rep.variance < rep.mean,
                    "D={d} R={r}: var {} mean {}",
                    rep.variance,
                    rep.mean
                );
            }
        }
    }

    #[test]
    fn small_window_poisson_limit() {
        for d in 1..=6u32 {
            for &r in &[0.01, 0.05, 0.1] {
                let rep = variance_ball_bessel(&hp(d, r)).unwrap();
                assert!(rep.ratio <= 1.0 + 1e-14);
                assert!(rep.ratio >= 1.0 - 3.0 * r * r);
            }
        }
    }

    #[test]
    fn class_i_limit() {
        // R·Var/E → D/√π
        let sqrt_pi = std::f64::consts::PI.sqrt();
        let r = 100.0;
        let v = ratio(&hp(1, r)).unwrap();
        assert!((r * v - 1.0 / sqrt_pi).abs() < 1e-4);
        let v = ratio(&hp(3, r)).unwrap();
        assert!((r * v - 3.0 / sqrt_pi).abs() < 1e-3);
    }

    #[test]
    fn asymptotic_series_coefficients() {
        let (_, series) = asymptotic_ratio(&hp(1, 20.0), 3);
        assert_eq!(series.coeffs[0], 1.0);
        assert_eq!(series.coeffs[1], -0.0625); // −α₁(1)/(3·1·16) = −1/16
        assert!((series.prefactor - 0.564_189_583_547_756_3).abs() < 1e-15);
    }

    #[test]
    fn asymptotic_matches_exact_ratio() {
        for d in 1..=3u32 {
            let p = hp(d, 20.0);
            let exact = ratio(&p).unwrap();
            let (approx, _) = asymptotic_ratio(&p, 5);
            assert!(
                ((approx - exact) / exact).abs() < 1e-6,
                "D={d}: {approx} vs {exact}"
            );
        }
    }

    #[test]
    fn asymptotic_dominance() {
        for d in 1..=4u32 {
            let pref = d as f64 / std::f64::consts::PI.sqrt();
            for &r in &[10.0, 20.0, 50.0] {
                let p = hp(d, r);
                let v = ratio(&p).unwrap();
                let (_, series) = asymptotic_ratio(&p, 1);
                let c1 = series.coeffs[1];
                assert!(
                    (r * v - pref).abs() <= 2.0 * pref * c1.abs() / (r * r),
                    "D={d} R={r}"
                );
            }
        }
    }

    #[test]
    fn optimal_truncation_cuts_series() {
        // At small R the asymptotic series turns early; k_max must shrink.
        let (_, series) = asymptotic_ratio(&hp(1, 1.2), 40);
        assert!(series.k_max < 40);
        assert_eq!(series.coeffs.len(), series.k_max + 1);
    }

    #[test]
    fn polydisk_mean_telescopes() {
        let acc = Accuracy::default();
        let m = mean_polydisk(&hp(1, 1.0), &acc).unwrap();
        assert!((m - 1.0).abs() < 1e-12);
        let m = mean_polydisk(&hp(2, 1.5), &acc).unwrap();
        assert!((m - 5.0625).abs() < 1e-10);
        let m = mean_polydisk(&hp(1, 1e-3), &acc).unwrap();
        assert!((m - 1e-6).abs() < 1e-16);
    }

    #[test]
    fn polydisk_equals_ball_in_dimension_one() {
        let acc = Accuracy::default();
        for &r in &[0.5, 1.0, 2.0, 5.0] {
            let pd = variance_polydisk(&hp(1, r), &acc).unwrap();
            let ball = variance_ball_bessel(&hp(1, r)).unwrap();
            assert!(
                (pd.variance - ball.variance).abs() <= 1e-10 * ball.variance,
                "R={r}: {} vs {}",
                pd.variance,
                ball.variance
            );
        }
    }

    #[test]
    fn polydisk_small_window_ratio_one() {
        let acc = Accuracy::default();
        let rep = variance_polydisk(&hp(3, 1e-3), &acc).unwrap();
        assert!((rep.ratio - 1.0).abs() < 1e-5, "{}", rep.ratio);
    }

    #[test]
    fn polydisk_two_term_expansion_at_moderate_radius() {
        // D=2, R=20: R·ratio within 2% of (2/√π)(1 − (1/(2√π))/20)
        let acc = Accuracy::default();
        let rep = variance_polydisk(&hp(2, 20.0), &acc).unwrap();
        let sqrt_pi = std::f64::consts::PI.sqrt();
        let two_term = 2.0 / sqrt_pi * (1.0 - 1.0 / (2.0 * sqrt_pi) / 20.0);
        assert!(((20.0 * rep.ratio - two_term) / two_term).abs() < 0.02);
    }

    #[test]
    fn polydisk_ball_leading_term_agreement() {
        let acc = Accuracy::default();
        let sqrt_pi = std::f64::consts::PI.sqrt();
        for d in 2..=4u32 {
            let rep = variance_polydisk(&hp(d, 50.0), &acc).unwrap();
            let gap = (50.0 * rep.ratio - d as f64 / sqrt_pi).abs();
            let allowance = 3.0 * (d as f64 - 1.0) / (2.0 * sqrt_pi) / 50.0;
            assert!(gap < allowance, "D={d}: gap {gap} allowance {allowance}");
        }
    }

    #[test]
    fn beta_identity_integer_exact() {
        use crate::specfun::alpha_coeff_integer;
        for d in 1..=6i128 {
            for k in 1..=6u32 {
                let mut lhs = alpha_coeff_integer(k, 0).unwrap();
                for n in 1..d {
                    lhs += 2 * alpha_coeff_integer(k, 4 * n * n).unwrap();
                }
                lhs += alpha_coeff_integer(k, 4 * d * d).unwrap();
                let alpha_d = alpha_coeff_integer(k, 4 * d * d).unwrap();
                assert_eq!(
                    lhs * (2 * k as i128 + 1),
                    2 * d * alpha_d,
                    "beta identity k={k} D={d}"
                );
            }
        }
    }

    #[test]
    fn classify_heisenberg_is_class_i() {
        for d in [1u32, 3] {
            let c = classify(d, (10.0, 100.0), 20).unwrap();
            assert_eq!(c.label, HyperuniformityLabel::ClassI, "D={d}");
            assert!(
                (c.fitted_exponent - (2.0 * d as f64 - 1.0)).abs() < 0.05,
                "D={d}: exponent {}",
                c.fitted_exponent
            );
        }
    }

    #[test]
    fn classify_poisson_control() {
        // Var ∝ R^d for Poisson: exponent d, not hyperuniform.
        let c =
            classify_profile(2, |r| Ok(r * r * std::f64::consts::PI), (10.0, 100.0), 20).unwrap();
        assert_eq!(c.label, HyperuniformityLabel::NotHyperuniform);
        assert!((c.fitted_exponent - 2.0).abs() < 0.05);
    }

    #[test]
    fn classify_log_corrected_profile_is_class_ii() {
        let c = classify_profile(2, |r| Ok(r * r.ln()), (10.0, 100.0), 20).unwrap();
        assert_eq!(c.label, HyperuniformityLabel::ClassII);
    }

    #[test]
    fn classify_fractional_exponent_is_class_iii() {
        let c = classify_profile(2, |r| Ok(r.powf(1.5)), (10.0, 100.0), 20).unwrap();
        assert_eq!(c.label, HyperuniformityLabel::ClassIII);
    }

    #[test]
    fn classify_rejects_degenerate_input() {
        assert!(classify(1, (10.0, 10.0), 20).is_err());
        assert!(classify(1, (10.0, 100.0), 3).is_err());
    }

    #[test]
    fn ratio_at_zero_radius_is_one() {
        assert_eq!(ratio(&hp(4, 0.0)).unwrap(), 1.0);
    }
}
