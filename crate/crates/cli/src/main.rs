//! Batch command-line front end: variance tables, asymptotic expansions,
//! hyperuniformity classification, count sampling, and the identity
//! verification suite, with CSV or JSON-lines output.
//!
//! Exit codes: 0 success, 2 usage error, 3 numeric guard, 4 verification
//! failure.

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hypervar::exact::{
    asymptotic_ratio, classify, classify_profile, mean_ball, mean_polydisk, variance_ball_2f2,
    variance_ball_bessel, variance_polydisk, HeisenbergParams, HyperuniformityLabel,
};
use hypervar::fourier::{
    ball_indicator_ft, ball_volume, intersection_volume_ft, recurrence_check_an,
    variance_quadrature_fourier, DensityParams, QuadratureSpec, RadialProfile,
};
use hypervar::specfun::{alpha_coeff_integer, Accuracy};
use hypervar::spectral::{
    ball_spectrum, polydisk_spectrum, sample_counts, spectrum_moments, BernoulliSpectrum,
};
use hypervar::{Error as CoreError, Route, VarianceReport};

const EXIT_NUMERIC: i32 = 3;
const EXIT_VERIFY: i32 = 4;

#[derive(Parser)]
#[command(
    name = "hypervar",
    about = "Number variances and hyperuniformity for the Heisenberg family of determinantal point processes",
    after_help = "Tolerance environment overrides: HYPERVAR_REL_TOL, HYPERVAR_ABS_TOL (series/spectra), \
                  HYPERVAR_QUAD_REL_TOL, HYPERVAR_QUAD_ABS_TOL (quadrature).\n\
                  Exit codes: 0 ok, 2 usage, 3 numeric guard, 4 verification failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for result rows.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    output: OutputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Expected number of points in the window.
    Mean {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value_t = WindowArg::Ball)]
        window: WindowArg,
    },
    /// Number variance of the window count.
    Variance {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value_t = RouteArg::Bessel)]
        route: RouteArg,
        #[arg(long, value_enum, default_value_t = WindowArg::Ball)]
        window: WindowArg,
        /// Sample count for the montecarlo route.
        #[arg(long, default_value_t = 1_000_000)]
        n_samples: u64,
        /// RNG seed; the only source of randomness.
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Var/E together with R·Var/E and its Class I limit D/sqrt(pi).
    Ratio {
        #[command(flatten)]
        point: PointArgs,
    },
    /// Coefficients of the R^{-2k} expansion of R·Var/E, with the
    /// exact-vs-truncated comparison at the given radius.
    Expand {
        #[arg(short = 'D', long = "dim", default_value_t = 1)]
        dim: u32,
        #[arg(long, default_value_t = 5)]
        kmax: usize,
        #[arg(short = 'R', long = "radius", default_value_t = 20.0)]
        radius: f64,
    },
    /// Fit the variance growth exponent and label the hyperuniformity class.
    Classify {
        #[arg(short = 'D', long = "dim", default_value_t = 1)]
        dim: u32,
        #[arg(long, default_value_t = 10.0)]
        rmin: f64,
        #[arg(long, default_value_t = 100.0)]
        rmax: f64,
        #[arg(short = 'n', long = "points", default_value_t = 20)]
        points: usize,
        /// Classify the Poisson baseline through the generic engine instead.
        #[arg(long, default_value_t = false)]
        poisson: bool,
    },
    /// Sample window counts and report moment statistics.
    Sample {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value_t = WindowArg::Ball)]
        window: WindowArg,
        #[arg(long, default_value_t = 1_000_000)]
        n_samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Emit rows over an R grid.
    Scan {
        #[arg(short = 'D', long = "dim", default_value_t = 1)]
        dim: u32,
        #[arg(long)]
        rmin: f64,
        #[arg(long)]
        rmax: f64,
        #[arg(short = 'n', long = "points")]
        points: usize,
        #[arg(long, value_enum, default_value_t = Spacing::Log)]
        spacing: Spacing,
        #[arg(long, value_enum, default_value_t = RouteArg::Bessel)]
        route: RouteArg,
        #[arg(long, value_enum, default_value_t = WindowArg::Ball)]
        window: WindowArg,
        #[arg(long, default_value_t = 1_000_000)]
        n_samples: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Run the identity suite; exits 4 if any check fails.
    Verify,
}

#[derive(clap::Args)]
struct PointArgs {
    #[arg(short = 'D', long = "dim", default_value_t = 1)]
    dim: u32,
    #[arg(short = 'R', long = "radius")]
    radius: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Bessel,
    Hyp2f2,
    Quadrature,
    Spectral,
    Montecarlo,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WindowArg {
    Ball,
    Polydisk,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Spacing {
    Log,
    Linear,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Serialize)]
struct OutputRow {
    #[serde(rename = "D")]
    dim: u32,
    #[serde(rename = "R")]
    radius: f64,
    mean: Option<f64>,
    variance: Option<f64>,
    ratio: Option<f64>,
    route: String,
    err_estimate: Option<f64>,
    extra: String,
}

impl OutputRow {
    fn from_report(dim: u32, radius: f64, rep: &VarianceReport, extra: String) -> Self {
        OutputRow {
            dim,
            radius,
            mean: Some(rep.mean),
            variance: Some(rep.variance),
            ratio: Some(rep.ratio),
            route: rep.route.as_str().to_string(),
            err_estimate: Some(rep.err_estimate),
            extra,
        }
    }
}

struct Emitter {
    format: OutputFormat,
    header_done: bool,
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.14e}")).unwrap_or_default()
}

/// Write a line to stdout; exit quietly if the reader closed the pipe.
fn print_line(args: std::fmt::Arguments) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{args}").is_err() {
        std::process::exit(0);
    }
}

impl Emitter {
    fn new(format: OutputFormat) -> Self {
        Emitter {
            format,
            header_done: false,
        }
    }

    fn emit(&mut self, row: &OutputRow) {
        match self.format {
            OutputFormat::Csv => {
                if !self.header_done {
                    print_line(format_args!("D,R,mean,variance,ratio,route,err_estimate,extra"));
                    self.header_done = true;
                }
                print_line(format_args!(
                    "{},{:.14e},{},{},{},{},{},{}",
                    row.dim,
                    row.radius,
                    fmt_opt(row.mean),
                    fmt_opt(row.variance),
                    fmt_opt(row.ratio),
                    row.route,
                    fmt_opt(row.err_estimate),
                    row.extra
                ));
            }
            OutputFormat::Json => {
                print_line(format_args!(
                    "{}",
                    serde_json::to_string(row).expect("row serializes")
                ));
            }
        }
    }
}

fn env_f64(name: &str, default: f64) -> f64 {
    match std::env::var(name) {
        Ok(v) => v.parse().unwrap_or_else(|_| {
            eprintln!("warning: ignoring unparsable {name}={v}");
            default
        }),
        Err(_) => default,
    }
}

fn accuracy_from_env() -> Accuracy {
    let d = Accuracy::default();
    Accuracy {
        rel_tol: env_f64("HYPERVAR_REL_TOL", d.rel_tol),
        abs_tol: env_f64("HYPERVAR_ABS_TOL", d.abs_tol),
    }
}

fn quad_from_env() -> QuadratureSpec {
    let d = QuadratureSpec::default();
    QuadratureSpec {
        rel_tol: env_f64("HYPERVAR_QUAD_REL_TOL", d.rel_tol),
        abs_tol: env_f64("HYPERVAR_QUAD_ABS_TOL", d.abs_tol),
        ..d
    }
}

fn main() {
    let cli = Cli::parse();
    let mut emitter = Emitter::new(cli.output);
    let outcome = match cli.command {
        Command::Mean { point, window } => cmd_mean(&mut emitter, &point, window),
        Command::Variance {
            point,
            route,
            window,
            n_samples,
            seed,
        } => cmd_variance(&mut emitter, &point, route, window, n_samples, seed),
        Command::Ratio { point } => cmd_ratio(&mut emitter, &point),
        Command::Expand { dim, kmax, radius } => cmd_expand(&mut emitter, dim, kmax, radius),
        Command::Classify {
            dim,
            rmin,
            rmax,
            points,
            poisson,
        } => cmd_classify(&mut emitter, dim, (rmin, rmax), points, poisson),
        Command::Sample {
            point,
            window,
            n_samples,
            seed,
        } => cmd_sample(&mut emitter, &point, window, n_samples, seed),
        Command::Scan {
            dim,
            rmin,
            rmax,
            points,
            spacing,
            route,
            window,
            n_samples,
            seed,
        } => cmd_scan(
            &mut emitter,
            dim,
            (rmin, rmax),
            points,
            spacing,
            route,
            window,
            n_samples,
            seed,
        ),
        Command::Verify => {
            std::process::exit(if run_verify() { 0 } else { EXIT_VERIFY });
        }
    };
    if let Err(e) = outcome {
        eprintln!("error: {e}");
        std::process::exit(EXIT_NUMERIC);
    }
}

fn params(point: &PointArgs) -> Result<HeisenbergParams, CoreError> {
    HeisenbergParams::new(point.dim, point.radius)
}

fn spectrum_for(window: WindowArg, d: u32, r: f64) -> Result<BernoulliSpectrum, CoreError> {
    let acc = accuracy_from_env();
    match window {
        WindowArg::Ball => ball_spectrum(d, r, &acc),
        WindowArg::Polydisk => polydisk_spectrum(d, r, &acc),
    }
}

fn cmd_mean(em: &mut Emitter, point: &PointArgs, window: WindowArg) -> Result<(), CoreError> {
    let p = params(point)?;
    let mean = match window {
        WindowArg::Ball => mean_ball(&p),
        WindowArg::Polydisk => mean_polydisk(&p, &accuracy_from_env())?,
    };
    em.emit(&OutputRow {
        dim: point.dim,
        radius: point.radius,
        mean: Some(mean),
        variance: None,
        ratio: None,
        route: "exact".into(),
        err_estimate: Some(0.0),
        extra: String::new(),
    });
    Ok(())
}

fn ball_route_report(
    route: RouteArg,
    d: u32,
    r: f64,
    n_samples: u64,
    seed: u64,
) -> Result<VarianceReport, CoreError> {
    let p = HeisenbergParams::new(d, r)?;
    match route {
        RouteArg::Bessel => variance_ball_bessel(&p),
        RouteArg::Hyp2f2 => variance_ball_2f2(&p),
        RouteArg::Quadrature => {
            let dens = DensityParams::heisenberg(d)?;
            let s_hat = RadialProfile::heisenberg_structure_factor();
            variance_quadrature_fourier(&dens, &s_hat, r, &quad_from_env())
        }
        RouteArg::Spectral => {
            let s = ball_spectrum(d, r, &accuracy_from_env())?;
            let (mean, variance) = spectrum_moments(&s);
            Ok(VarianceReport {
                mean,
                variance,
                ratio: if mean > 0.0 { variance / mean } else { 1.0 },
                route: Route::Spectral,
                err_estimate: s.tail_bound(),
            })
        }
        RouteArg::Montecarlo => {
            let s = ball_spectrum(d, r, &accuracy_from_env())?;
            let stats = sample_counts(&s, n_samples, seed)?;
            let se = monte_carlo_se(&stats);
            Ok(VarianceReport {
                mean: stats.mean,
                variance: stats.variance,
                ratio: if stats.mean > 0.0 {
                    stats.variance / stats.mean
                } else {
                    1.0
                },
                route: Route::MonteCarlo,
                err_estimate: se,
            })
        }
        RouteArg::All => unreachable!("expanded by the caller"),
    }
}

fn monte_carlo_se(stats: &hypervar::spectral::SampleStats) -> f64 {
    let n = stats.n_samples as f64;
    let m2 = stats.variance * (n - 1.0) / n;
    let m4 = (stats.excess_kurtosis + 3.0) * m2 * m2;
    ((m4 - m2 * m2 * (n - 3.0) / (n - 1.0)) / n).max(0.0).sqrt()
}

fn polydisk_route_report(
    route: RouteArg,
    d: u32,
    r: f64,
    n_samples: u64,
    seed: u64,
) -> Result<VarianceReport, CoreError> {
    let p = HeisenbergParams::new(d, r)?;
    match route {
        RouteArg::Spectral => variance_polydisk(&p, &accuracy_from_env()),
        RouteArg::Montecarlo => {
            let s = polydisk_spectrum(d, r, &accuracy_from_env())?;
            let stats = sample_counts(&s, n_samples, seed)?;
            Ok(VarianceReport {
                mean: stats.mean,
                variance: stats.variance,
                ratio: if stats.mean > 0.0 {
                    stats.variance / stats.mean
                } else {
                    1.0
                },
                route: Route::MonteCarlo,
                err_estimate: monte_carlo_se(&stats),
            })
        }
        _ => Err(CoreError::Domain(
            "polydisk windows support --route spectral or montecarlo".into(),
        )),
    }
}

fn cmd_variance(
    em: &mut Emitter,
    point: &PointArgs,
    route: RouteArg,
    window: WindowArg,
    n_samples: u64,
    seed: u64,
) -> Result<(), CoreError> {
    let (d, r) = (point.dim, point.radius);
    if route != RouteArg::All {
        let rep = match window {
            WindowArg::Ball => ball_route_report(route, d, r, n_samples, seed)?,
            WindowArg::Polydisk => polydisk_route_report(route, d, r, n_samples, seed)?,
        };
        em.emit(&OutputRow::from_report(d, r, &rep, String::new()));
        return Ok(());
    }
    if window == WindowArg::Polydisk {
        return Err(CoreError::Domain(
            "--route all applies to ball windows; polydisk has a single exact route".into(),
        ));
    }
    let mut variances: Vec<f64> = Vec::new();
    for &rt in &[
        RouteArg::Bessel,
        RouteArg::Hyp2f2,
        RouteArg::Quadrature,
        RouteArg::Spectral,
    ] {
        match ball_route_report(rt, d, r, n_samples, seed) {
            Ok(rep) => {
                variances.push(rep.variance);
                em.emit(&OutputRow::from_report(d, r, &rep, String::new()));
            }
            Err(CoreError::CancellationGuard { estimate, .. }) => {
                em.emit(&OutputRow {
                    dim: d,
                    radius: r,
                    mean: None,
                    variance: None,
                    ratio: None,
                    route: "hyp2f2".into(),
                    err_estimate: Some(estimate),
                    extra: "skipped: cancellation guard".into(),
                });
            }
            Err(e) => return Err(e),
        }
    }
    let mut max_disc = 0.0f64;
    for (i, a) in variances.iter().enumerate() {
        for b in variances.iter().skip(i + 1) {
            max_disc = max_disc.max((a - b).abs());
        }
    }
    em.emit(&OutputRow {
        dim: d,
        radius: r,
        mean: None,
        variance: None,
        ratio: None,
        route: "discrepancy".into(),
        err_estimate: None,
        extra: format!("max_pairwise={max_disc:.14e}"),
    });
    Ok(())
}

fn cmd_ratio(em: &mut Emitter, point: &PointArgs) -> Result<(), CoreError> {
    let p = params(point)?;
    let rep = variance_ball_bessel(&p)?;
    let limit = point.dim as f64 / std::f64::consts::PI.sqrt();
    em.emit(&OutputRow::from_report(
        point.dim,
        point.radius,
        &rep,
        format!(
            "R_times_ratio={:.14e};class_i_limit={:.14e}",
            point.radius * rep.ratio,
            limit
        ),
    ));
    Ok(())
}

fn cmd_expand(em: &mut Emitter, dim: u32, kmax: usize, radius: f64) -> Result<(), CoreError> {
    let p = HeisenbergParams::new(dim, radius)?;
    let exact = variance_ball_bessel(&p)?.ratio;
    let (approx, series) = asymptotic_ratio(&p, kmax);
    em.emit(&OutputRow {
        dim,
        radius,
        mean: None,
        variance: None,
        ratio: Some(exact),
        route: "expand".into(),
        err_estimate: Some(series.trunc_error),
        extra: format!(
            "prefactor={:.14e};k_max={};truncated={:.14e};rel_gap={:.14e}",
            series.prefactor,
            series.k_max,
            approx,
            ((approx - exact) / exact).abs()
        ),
    });
    for (k, c) in series.coeffs.iter().enumerate() {
        em.emit(&OutputRow {
            dim,
            radius,
            mean: None,
            variance: None,
            ratio: None,
            route: "expand".into(),
            err_estimate: None,
            extra: format!("k={k};coeff={c:.14e}"),
        });
    }
    Ok(())
}

fn cmd_classify(
    em: &mut Emitter,
    dim: u32,
    fit_range: (f64, f64),
    points: usize,
    poisson: bool,
) -> Result<(), CoreError> {
    let cls = if poisson {
        let dens = DensityParams::new(1.0 / std::f64::consts::PI, 2 * dim)?;
        classify_profile(
            2 * dim,
            |r| {
                let s = RadialProfile::poisson_structure_factor();
                Ok(variance_quadrature_fourier(&dens, &s, r, &quad_from_env())?.variance)
            },
            fit_range,
            points,
        )?
    } else {
        classify(dim, fit_range, points)?
    };
    em.emit(&OutputRow {
        dim,
        radius: fit_range.1,
        mean: None,
        variance: None,
        ratio: None,
        route: "classify".into(),
        err_estimate: None,
        extra: format!(
            "label={};fitted_exponent={:.14e};rmin={};rmax={};target_class_i={}",
            cls.label.as_str(),
            cls.fitted_exponent,
            fit_range.0,
            fit_range.1,
            2 * dim - 1
        ),
    });
    Ok(())
}

fn cmd_sample(
    em: &mut Emitter,
    point: &PointArgs,
    window: WindowArg,
    n_samples: u64,
    seed: u64,
) -> Result<(), CoreError> {
    let (d, r) = (point.dim, point.radius);
    let s = spectrum_for(window, d, r)?;
    let stats = sample_counts(&s, n_samples, seed)?;
    let (exact_mean, exact_var) = spectrum_moments(&s);
    let se = monte_carlo_se(&stats);
    em.emit(&OutputRow {
        dim: d,
        radius: r,
        mean: Some(stats.mean),
        variance: Some(stats.variance),
        ratio: Some(if stats.mean > 0.0 {
            stats.variance / stats.mean
        } else {
            1.0
        }),
        route: "montecarlo".into(),
        err_estimate: Some(se),
        extra: format!(
            "n_samples={};seed={};skewness={:.14e};excess_kurtosis={:.14e};exact_mean={:.14e};exact_variance={:.14e}",
            stats.n_samples, stats.seed, stats.skewness, stats.excess_kurtosis, exact_mean, exact_var
        ),
    });
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    em: &mut Emitter,
    dim: u32,
    range: (f64, f64),
    points: usize,
    spacing: Spacing,
    route: RouteArg,
    window: WindowArg,
    n_samples: u64,
    seed: u64,
) -> Result<(), CoreError> {
    let (rmin, rmax) = range;
    if !(rmin > 0.0 && rmax > rmin) || points < 2 {
        return Err(CoreError::Domain(
            "scan needs 0 < rmin < rmax and at least 2 points".into(),
        ));
    }
    let grid: Vec<f64> = (0..points)
        .map(|i| {
            let t = i as f64 / (points - 1) as f64;
            match spacing {
                Spacing::Log => rmin * (rmax / rmin).powf(t),
                Spacing::Linear => rmin + (rmax - rmin) * t,
            }
        })
        .collect();
    let routes: Vec<RouteArg> = match route {
        RouteArg::All => vec![
            RouteArg::Bessel,
            RouteArg::Hyp2f2,
            RouteArg::Quadrature,
            RouteArg::Spectral,
        ],
        other => vec![other],
    };
    for &r in &grid {
        for &rt in &routes {
            let rep = match window {
                WindowArg::Ball => ball_route_report(rt, dim, r, n_samples, seed),
                WindowArg::Polydisk => polydisk_route_report(rt, dim, r, n_samples, seed),
            };
            match rep {
                Ok(rep) => em.emit(&OutputRow::from_report(dim, r, &rep, String::new())),
                Err(CoreError::CancellationGuard { estimate, .. }) if route == RouteArg::All => {
                    em.emit(&OutputRow {
                        dim,
                        radius: r,
                        mean: None,
                        variance: None,
                        ratio: None,
                        route: "hyp2f2".into(),
                        err_estimate: Some(estimate),
                        extra: "skipped: cancellation guard".into(),
                    });
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(())
}

struct Check {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn check(name: &'static str, pass: bool, detail: String) -> Check {
    Check { name, pass, detail }
}

/// The identity suite behind `hypervar verify`.
fn run_verify() -> bool {
    let acc = Accuracy::default();
    let q = QuadratureSpec::default();
    let mut checks: Vec<Check> = Vec::new();

    // A_n recurrence by quadrature vs scaled Bessel right side
    let mut worst = 0.0f64;
    let mut failed = false;
    for d in 1..=4u32 {
        for &r in &[0.5, 1.0, 3.0] {
            match recurrence_check_an(d, r, &q) {
                Ok(res) => worst = worst.max(res),
                Err(_) => failed = true,
            }
        }
    }
    checks.push(check(
        "recurrence_An",
        !failed && worst <= 1e-8,
        format!("max residual {worst:.3e} (tol 1e-8)"),
    ));

    // beta identity, exact integers
    let mut ok = true;
    for d in 1..=6i128 {
        for k in 1..=6u32 {
            let mut lhs = alpha_coeff_integer(k, 0).unwrap();
            for n in 1..d {
                lhs += 2 * alpha_coeff_integer(k, 4 * n * n).unwrap();
            }
            lhs += alpha_coeff_integer(k, 4 * d * d).unwrap();
            ok &= lhs * (2 * k as i128 + 1) == 2 * d * alpha_coeff_integer(k, 4 * d * d).unwrap();
        }
    }
    checks.push(check(
        "beta_identity",
        ok,
        "integer-exact for k <= 6, D <= 6".into(),
    ));

    // spectral mean identity
    let mut worst = 0.0f64;
    let mut failed = false;
    for d in 1..=5u32 {
        for &r in &[0.5, 1.0, 2.0, 5.0, 10.0] {
            match ball_spectrum(d, r, &acc) {
                Ok(s) => {
                    let (mean, _) = spectrum_moments(&s);
                    let expect = mean_ball(&HeisenbergParams::new(d, r).unwrap());
                    worst = worst.max((mean - expect).abs() / expect);
                }
                Err(_) => failed = true,
            }
        }
    }
    checks.push(check(
        "spectral_mean_identity",
        !failed && worst <= 1e-10,
        format!("max rel gap {worst:.3e} (tol 1e-10)"),
    ));

    // intersection transform is the square of the indicator transform
    let mut worst = 0.0f64;
    for &d in &[1u32, 2, 3, 4, 6] {
        for &r in &[0.5, 1.0, 2.0] {
            for &kappa in &[0.0, 0.5, 1.7, 4.0, 9.3] {
                let a = intersection_volume_ft(d, r, kappa).unwrap();
                let b = ball_indicator_ft(d, r, kappa).unwrap();
                if a != 0.0 {
                    worst = worst.max((a - b * b).abs() / a.abs());
                }
            }
        }
    }
    checks.push(check(
        "intersection_ft_squares",
        worst <= 1e-12,
        format!("max rel gap {worst:.3e} (tol 1e-12)"),
    ));

    // Poisson exactness of the split quadrature
    let s = RadialProfile::poisson_structure_factor();
    let mut worst = 0.0f64;
    for &(rho, d, r) in &[(0.5f64, 2u32, 3.0f64), (1.0, 3, 1.0), (0.41, 4, 10.0)] {
        let dens = DensityParams::new(rho, d).unwrap();
        let rep = variance_quadrature_fourier(&dens, &s, r, &q).unwrap();
        let exact = rho * ball_volume(d, r);
        worst = worst.max((rep.variance - exact).abs() / exact);
    }
    checks.push(check(
        "poisson_exactness",
        worst <= 1e-14,
        format!("max rel gap {worst:.3e} (tol 1e-14)"),
    ));

    // polydisk equals ball in dimension one
    let mut worst = 0.0f64;
    for &r in &[0.5, 1.0, 2.0, 5.0] {
        let p = HeisenbergParams::new(1, r).unwrap();
        let pd = variance_polydisk(&p, &acc).unwrap();
        let ball = variance_ball_bessel(&p).unwrap();
        worst = worst.max((pd.variance - ball.variance).abs() / ball.variance);
    }
    checks.push(check(
        "polydisk_ball_d1",
        worst <= 1e-10,
        format!("max rel gap {worst:.3e} (tol 1e-10)"),
    ));

    // classification sanity
    let heis = classify(1, (10.0, 100.0), 20).unwrap();
    checks.push(check(
        "classify_heisenberg_class_i",
        heis.label == HyperuniformityLabel::ClassI && (heis.fitted_exponent - 1.0).abs() <= 0.05,
        format!(
            "label {} exponent {:.4}",
            heis.label.as_str(),
            heis.fitted_exponent
        ),
    ));

    let mut all = true;
    for c in &checks {
        print_line(format_args!(
            "{} {}: {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        ));
        all &= c.pass;
    }
    print_line(format_args!(
        "verify: {}/{} checks passed",
        checks.iter().filter(|c| c.pass).count(),
        checks.len()
    ));
    all
}
