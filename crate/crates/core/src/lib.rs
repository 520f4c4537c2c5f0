//! Local number variances and hyperuniformity for the Heisenberg family of
//! determinantal point processes on ℂ^D ≅ ℝ^{2D}.
//!
//! The Heisenberg family has correlation kernel K(x, y) = e^{x·ȳ} against the
//! complex standard normal reference measure; D = 1 is the infinite Ginibre
//! point process. The crate computes the count statistics of a ball (or
//! polydisk) window by three independent routes that must agree tightly:
//!
//! * [`exact`] — closed forms: mean R^{2D}/D!, variance via scaled modified
//!   Bessel functions or a ₂F₂ series, the large-R asymptotic expansion of
//!   R·Var/E, and power-law classification of the variance growth.
//! * [`fourier`] — the generic radial pipeline: structure factors, ball
//!   indicator transforms, intersection volumes, and number variance by
//!   oscillatory quadrature of J_{d/2}(κR)²/κ · ŝ(κ).
//! * [`spectral`] — the Bernoulli spectrum of the counting variable (kernel
//!   eigenvalues p_k(R) with multiplicities), exact counting distributions,
//!   and reproducible Monte Carlo sampling of counts.
//!
//! [`specfun`] holds the self-contained special functions the other modules
//! are built on.

pub mod exact;
pub mod fourier;
pub mod specfun;
pub mod spectral;

mod dd;

pub use exact::{AsymptoticSeries, HeisenbergParams, HyperuniformityClass, HyperuniformityLabel};
pub use specfun::{Accuracy, Order};

/// Computational route a variance figure came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Bessel,
    Hyp2F2,
    Quadrature,
    Spectral,
    MonteCarlo,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Bessel => "bessel",
            Route::Hyp2F2 => "hyp2f2",
            Route::Quadrature => "quadrature",
            Route::Spectral => "spectral",
            Route::MonteCarlo => "montecarlo",
        }
    }
}

/// Mean, variance and their ratio for one window, with provenance.
#[derive(Debug, Clone, Copy)]
pub struct VarianceReport {
    pub mean: f64,
    pub variance: f64,
    /// variance / mean; 1 is the Poisson value, < 1 is sub-Poissonian.
    pub ratio: f64,
    pub route: Route,
    pub err_estimate: f64,
}

impl VarianceReport {
    pub(crate) fn new(mean: f64, variance: f64, route: Route, err_estimate: f64) -> Self {
        let ratio = if mean > 0.0 { variance / mean } else { 1.0 };
        VarianceReport {
            mean,
            variance,
            ratio,
            route,
            err_estimate,
        }
    }
}

/// Errors shared by all modules.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series/quadrature did not converge: {what} (achieved error ~{achieved:.3e})")]
    Convergence { what: String, achieved: f64 },

    #[error(
        "cancellation guard: estimated error {estimate:.3e} exceeds tolerance {tolerance:.3e}; \
         use the Bessel route instead"
    )]
    CancellationGuard { estimate: f64, tolerance: f64 },

    #[error("resource guard: {0}")]
    ResourceLimit(String),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("radial profile has no usable decay envelope: {0}")]
    MissingEnvelope(String),

    #[error("internal self-check failed: {0}")]
    SelfCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
