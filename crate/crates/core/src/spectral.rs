//! Bernoulli-spectrum representation of the counting variables, exact
//! counting distributions, and reproducible Monte Carlo sampling.
//!
//! The count in a window is distributed as a sum of independent Bernoulli
//! variables whose success probabilities are the eigenvalues of the kernel
//! restricted to that window. For balls the monomial basis diagonalizes the
//! restriction: the eigenvalue of every degree-k monomial in dimension D is
//! p_{k+D−1}(R) = P(k+D, R²), with multiplicity C(k+D−1, D−1); the grouped
//! one-dimensional sum makes D = 5, R = 10 cheap. For polydisks the
//! eigenvalues are the products ∏_ℓ p_{n_ℓ}(R) over multi-indices, which is
//! the product-Bernoulli picture behind the duality
//! P(Ξ(Δ_R) = k) = P(Ξ_{Δ_R}(ℕ₀^D) = k).
//!
//! The ball spectrum construction is gated by a mandatory self-check of the
//! mean identity Σ mult·p = R^{2D}/D!; if that fails it returns an error
//! rather than numbers.

use crate::exact::{mean_ball, pk_cutoff, HeisenbergParams};
use crate::specfun::{reg_lower_gamma, Accuracy};
use crate::{Error, Result};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

/// Window geometry a spectrum belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Window {
    Ball { dim: u32, radius: f64 },
    Polydisk { dim: u32, radius: f64 },
}

/// One eigenvalue class: a Bernoulli success probability with its
/// multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub prob: f64,
    pub multiplicity: u64,
}

/// The counting variable as a sum of independent Bernoulli variables.
#[derive(Debug, Clone)]
pub struct BernoulliSpectrum {
    entries: Vec<SpectrumEntry>,
    window: Window,
    tail_bound: f64,
}

impl BernoulliSpectrum {
    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn window(&self) -> Window {
        self.window
    }

    /// Bound on the first-moment mass dropped by truncation.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// Total number of Bernoulli factors (counting multiplicity).
    pub fn total_modes(&self) -> u64 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }
}

/// Exact probability mass function of the count, indexed 0..=n_max.
#[derive(Debug, Clone)]
pub struct CountPmf {
    probs: Vec<f64>,
}

impl CountPmf {
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn n_max(&self) -> usize {
        self.probs.len() - 1
    }

    /// Probability generating function Σ_k P(k) z^k.
    pub fn pgf(&self, z: f64) -> f64 {
        let mut acc = 0.0;
        let mut zk = 1.0;
        for p in &self.probs {
            acc += p * zk;
            zk *= z;
        }
        acc
    }

    pub fn mean(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(k, p)| k as f64 * p)
            .sum()
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.probs
            .iter()
            .enumerate()
            .map(|(k, p)| (k as f64 - m) * (k as f64 - m) * p)
            .sum()
    }
}

/// Moment statistics of sampled counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleStats {
    pub n_samples: u64,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    pub skewness: f64,
    pub excess_kurtosis: f64,
    pub seed: u64,
}

/// Mode occupation probability p_k(R) = P(k+1, R²): the probability that
/// the k-th rotational mode falls inside radius R, equivalently the Poisson
/// tail P(Pois(R²) ≥ k+1).
pub fn pk(k: u32, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::Domain(format!("pk needs R >= 0, got {r}")));
    }
    reg_lower_gamma(k + 1, r * r)
}

const DEFAULT_ENTRY_CAP: usize = 2_000_000;

/// Ball spectrum: entries (p_{k+D−1}(R), C(k+D−1, D−1)) for k = 0..k_cut.
pub fn ball_spectrum(d: u32, r: f64, trunc: &Accuracy) -> Result<BernoulliSpectrum> {
    let params = HeisenbergParams::new(d, r)?;
    if r == 0.0 {
        return Ok(BernoulliSpectrum {
            entries: Vec::new(),
            window: Window::Ball { dim: d, radius: r },
            tail_bound: 0.0,
        });
    }
    let r2 = r * r;
    let tol = trunc.abs_tol.max(1e-300);
    // p_{k+D−1}(R) is strictly decreasing in k, so the retained block is an
    // initial segment; pk_cutoff bounds it defensively.
    let k_hard = pk_cutoff(r, tol)?;

    let mut entries = Vec::new();
    let mut mult: u64 = 1; // C(D−1, D−1)
    let mut k_cut = 0u32;
    let mut last_term = 0.0f64;
    for k in 0..=k_hard {
        if k > 0 {
            // C(k+D−1, D−1) = C(k+D−2, D−1) · (k+D−1)/k
            mult = mult.checked_mul(k as u64 + d as u64 - 1).ok_or_else(|| {
                Error::ResourceLimit(format!("ball multiplicities overflow at D={d}, R={r}"))
            })? / k as u64;
        }
        let p = reg_lower_gamma(k + d, r2)?;
        if p < tol {
            break;
        }
        entries.push(SpectrumEntry {
            prob: p,
            multiplicity: mult,
        });
        k_cut = k;
        last_term = p * mult as f64;
    }

    // geometric domination of the dropped terms
    let k_end = k_cut as f64 + d as f64;
    let rho = (k_end / (k_cut as f64 + 1.0)) * (r2 / (k_end + 1.0));
    let tail_bound = if rho < 1.0 {
        last_term * rho / (1.0 - rho)
    } else {
        f64::INFINITY
    };

    let spectrum = BernoulliSpectrum {
        entries,
        window: Window::Ball { dim: d, radius: r },
        tail_bound,
    };

    // Mandatory self-check: the spectrum mean must reproduce R^{2D}/D!.
    let expect = mean_ball(&params);
    let (mean, _) = spectrum_moments(&spectrum);
    let tol = tail_bound + 1e-11 * (1.0 + expect);
    if !(mean - expect).abs().le(&tol) {
        return Err(Error::SelfCheck(format!(
            "ball spectrum mean {mean} differs from R^(2D)/D! = {expect} beyond {tol}"
        )));
    }
    Ok(spectrum)
}

/// Polydisk spectrum: products ∏_ℓ p_{n_ℓ}(R) over multi-indices n ∈ ℕ₀^D
/// with the product above `trunc.abs_tol`, grouped into multiplicities.
pub fn polydisk_spectrum(d: u32, r: f64, trunc: &Accuracy) -> Result<BernoulliSpectrum> {
    polydisk_spectrum_capped(d, r, trunc, DEFAULT_ENTRY_CAP)
}

/// Same as [`polydisk_spectrum`] with an explicit cap on the number of
/// enumerated eigenvalue classes.
pub fn polydisk_spectrum_capped(
    d: u32,
    r: f64,
    trunc: &Accuracy,
    cap: usize,
) -> Result<BernoulliSpectrum> {
    HeisenbergParams::new(d, r)?;
    if d > 20 {
        return Err(Error::ResourceLimit(
            "polydisk enumeration supports D <= 20".into(),
        ));
    }
    let window = Window::Polydisk { dim: d, radius: r };
    if r == 0.0 {
        return Ok(BernoulliSpectrum {
            entries: Vec::new(),
            window,
            tail_bound: 0.0,
        });
    }
    let r2 = r * r;
    let tol = trunc.abs_tol.max(1e-300);

    // one-dimensional factors above tolerance
    let k_top = pk_cutoff(r, tol)?;
    let mut p1 = Vec::with_capacity(k_top as usize + 1);
    let mut sum_p1 = 0.0f64;
    let mut last = 0.0f64;
    for k in 0..=k_top {
        let p = reg_lower_gamma(k + 1, r2)?;
        sum_p1 += p;
        last = p;
        p1.push(p);
    }
    let rho = r2 / (k_top as f64 + 2.0);
    let tail_1d = if rho < 1.0 {
        last * rho / (1.0 - rho)
    } else {
        f64::INFINITY
    };

    // descending multisets n₁ ≥ n₂ ≥ … ≥ n_D with ∏ p_{n_ℓ} ≥ tol
    let mut raw: Vec<(f64, u64)> = Vec::new();
    let mut stack: Vec<usize> = Vec::with_capacity(d as usize);
    enumerate_multisets(
        &p1,
        d as usize,
        tol,
        1.0,
        p1.len() - 1,
        &mut stack,
        &mut raw,
        cap,
    )?;

    raw.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let mut entries: Vec<SpectrumEntry> = Vec::with_capacity(raw.len());
    for (prob, mult) in raw {
        match entries.last_mut() {
            Some(e) if e.prob == prob => e.multiplicity += mult,
            _ => entries.push(SpectrumEntry {
                prob,
                multiplicity: mult,
            }),
        }
    }

    let retained_mean: f64 = entries.iter().map(|e| e.prob * e.multiplicity as f64).sum();
    let full_mean_upper = (sum_p1 + tail_1d).powi(d as i32);
    let tail_bound = (full_mean_upper - retained_mean).max(0.0);

    Ok(BernoulliSpectrum {
        entries,
        window,
        tail_bound,
    })
}

/// Recursive enumeration of descending multisets with product pruning.
#[allow(clippy::too_many_arguments)]
fn enumerate_multisets(
    p1: &[f64],
    slots: usize,
    tol: f64,
    product: f64,
    max_index: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<(f64, u64)>,
    cap: usize,
) -> Result<()> {
    if slots == 0 {
        out.push((product, multiset_permutations(stack)));
        if out.len() > cap {
            return Err(Error::ResourceLimit(format!(
                "polydisk spectrum exceeds {cap} eigenvalue classes; D·R² too large"
            )));
        }
        return Ok(());
    }
    // indices descend; p_k decreases in k, so smaller k can only help the
    // product and larger k only hurts it.
    for idx in (0..=max_index).rev() {
        let next = product * p1[idx];
        if next < tol {
            continue; // still smaller for larger idx; keep scanning down
        }
        stack.push(idx);
        enumerate_multisets(p1, slots - 1, tol, next, idx, stack, out, cap)?;
        stack.pop();
    }
    Ok(())
}

/// Number of distinct permutations of the multiset held in `stack`.
fn multiset_permutations(stack: &[usize]) -> u64 {
    let d = stack.len() as u64;
    let mut numerator: u64 = 1;
    for i in 1..=d {
        numerator *= i;
    }
    let mut denom: u64 = 1;
    let mut run = 1u64;
    for w in stack.windows(2) {
        if w[0] == w[1] {
            run += 1;
            denom *= run;
        } else {
            run = 1;
        }
    }
    numerator / denom
}

/// First two moments of the Bernoulli sum: Σ m p and Σ m p (1 − p).
pub fn spectrum_moments(s: &BernoulliSpectrum) -> (f64, f64) {
    let mut mean = 0.0f64;
    let mut mean_c = 0.0f64;
    let mut var = 0.0f64;
    let mut var_c = 0.0f64;
    for e in &s.entries {
        let m = e.multiplicity as f64;
        let term = m * e.prob;
        let y = term - mean_c;
        let t = mean + y;
        mean_c = (t - mean) - y;
        mean = t;
        let term_v = m * e.prob * (1.0 - e.prob);
        let yv = term_v - var_c;
        let tv = var + yv;
        var_c = (tv - var) - yv;
        var = tv;
    }
    (mean, var)
}

/// Exact third and fourth cumulants of the Bernoulli sum; the quantitative
/// side of the central limit theorem bands.
pub fn spectrum_cumulants_34(s: &BernoulliSpectrum) -> (f64, f64) {
    let mut k3 = 0.0f64;
    let mut k4 = 0.0f64;
    for e in &s.entries {
        let m = e.multiplicity as f64;
        let p = e.prob;
        let pq = p * (1.0 - p);
        k3 += m * pq * (1.0 - 2.0 * p);
        k4 += m * pq * (1.0 - 6.0 * p + 6.0 * p * p);
    }
    (k3, k4)
}

const PMF_N_CAP: usize = 200_000;
const PMF_FLOOR: f64 = 1e-300;

/// Exact distribution of the count by convolving one Binomial(m, p) factor
/// per eigenvalue class.
pub fn counting_pmf(s: &BernoulliSpectrum, n_max: usize) -> Result<CountPmf> {
    if n_max > PMF_N_CAP {
        return Err(Error::ResourceLimit(format!(
            "counting_pmf supports n_max <= {PMF_N_CAP}"
        )));
    }
    let mut dist = vec![0.0f64; n_max + 1];
    dist[0] = 1.0;
    let mut used = 0usize; // highest index with mass so far
    for e in &s.entries {
        let factor = binomial_pmf(e.multiplicity, e.prob, n_max)?;
        if factor.len() == 1 && factor[0] == 1.0 {
            continue;
        }
        let new_used = (used + factor.len() - 1).min(n_max);
        let mut next = vec![0.0f64; new_used + 1];
        for (i, &di) in dist.iter().enumerate().take(used + 1) {
            if di == 0.0 {
                continue;
            }
            for (j, &fj) in factor.iter().enumerate() {
                let k = i + j;
                if k > new_used {
                    break;
                }
                next[k] += di * fj;
            }
        }
        dist[..=new_used].copy_from_slice(&next);
        used = new_used;
    }
    let total: f64 = dist.iter().sum();
    let slack = s.tail_bound + 1e-12 + 1e-9 * s.entries.len() as f64 * f64::EPSILON;
    if (total - 1.0).abs() > slack + 1e-9 {
        return Err(Error::SelfCheck(format!(
            "counting pmf sums to {total}, beyond the truncation allowance; n_max may be cutting real mass"
        )));
    }
    Ok(CountPmf { probs: dist })
}

/// Binomial(m, p) pmf truncated to its numerically supported range.
fn binomial_pmf(m: u64, p: f64, n_max: usize) -> Result<Vec<f64>> {
    if p <= 0.0 {
        return Ok(vec![1.0]);
    }
    if p >= 1.0 {
        if m as usize > n_max {
            return Err(Error::ResourceLimit(
                "deterministic factor exceeds n_max".into(),
            ));
        }
        let mut v = vec![0.0; m as usize + 1];
        v[m as usize] = 1.0;
        return Ok(v);
    }
    let ln_p0 = m as f64 * (-p).ln_1p();
    let mut out = Vec::new();
    if ln_p0 > -700.0 {
        let mut t = ln_p0.exp();
        let ratio = p / (1.0 - p);
        out.push(t);
        let mut j = 0u64;
        while (j as usize) < n_max && j < m {
            t *= (m - j) as f64 / (j as f64 + 1.0) * ratio;
            out.push(t);
            j += 1;
            if t < PMF_FLOOR && j as f64 > m as f64 * p {
                break;
            }
        }
    } else {
        // mass concentrated far from 0; walk up in log space to the mode
        let mode = ((m as f64 + 1.0) * p).floor().min(m as f64) as u64;
        let mut ln_t =
            ln_binomial(m, mode) + mode as f64 * p.ln() + (m - mode) as f64 * (-p).ln_1p();
        let start = mode;
        // downward from the mode
        let mut down = Vec::new();
        let mut lt = ln_t;
        let mut j = start;
        while j > 0 {
            lt += ((j) as f64 / (m - j + 1) as f64).ln() + ((1.0 - p) / p).ln();
            j -= 1;
            if lt < -700.0 {
                break;
            }
            down.push((j, lt.exp()));
        }
        let low = down.last().map(|&(j, _)| j).unwrap_or(start);
        if low as usize > n_max {
            return Err(Error::ResourceLimit(
                "binomial factor support exceeds n_max".into(),
            ));
        }
        out = vec![0.0; low as usize];
        for &(j, v) in down.iter().rev() {
            out.push(v);
            debug_assert_eq!(out.len() - 1, j as usize);
        }
        // upward from the mode
        let mut j = start;
        out.push(ln_t.exp());
        while (j as usize) < n_max && j < m {
            ln_t += ((m - j) as f64 / (j + 1) as f64).ln() + (p / (1.0 - p)).ln();
            j += 1;
            if ln_t < -700.0 {
                break;
            }
            out.push(ln_t.exp());
        }
    }
    Ok(out)
}

fn ln_binomial(n: u64, k: u64) -> f64 {
    crate::specfun::ln_factorial(n)
        - crate::specfun::ln_factorial(k)
        - crate::specfun::ln_factorial(n - k)
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based stream: an independent ChaCha8 stream keyed by
/// (seed, entry index, block index), so the sampled multiset never depends
/// on scheduling.
fn stream_rng(seed: u64, entry: u64, block: u64) -> ChaCha8Rng {
    let mut state = seed;
    let mut key = [0u8; 32];
    let a = splitmix64(&mut state);
    state ^= entry.wrapping_mul(0xA076_1D64_78BD_642F);
    let b = splitmix64(&mut state);
    state ^= block.wrapping_mul(0xE703_7ED1_A0B4_28DB);
    let c = splitmix64(&mut state);
    let d = splitmix64(&mut state);
    key[0..8].copy_from_slice(&a.to_le_bytes());
    key[8..16].copy_from_slice(&b.to_le_bytes());
    key[16..24].copy_from_slice(&c.to_le_bytes());
    key[24..32].copy_from_slice(&d.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

const SAMPLE_BLOCK: u64 = 1 << 16;
const SAMPLE_CAP: u64 = 100_000_000;

/// Draw `n_samples` independent counts (one Binomial(m, p) per eigenvalue
/// class, summed) and return moment statistics. Bit-reproducible for a
/// fixed (seed, n_samples).
pub fn sample_counts(s: &BernoulliSpectrum, n_samples: u64, seed: u64) -> Result<SampleStats> {
    if n_samples == 0 {
        return Err(Error::Domain("need n_samples >= 1".into()));
    }
    if n_samples > SAMPLE_CAP {
        return Err(Error::ResourceLimit(format!(
            "n_samples capped at {SAMPLE_CAP}"
        )));
    }
    let n = n_samples as usize;
    let mut totals = vec![0u64; n];
    for (ei, e) in s.entries.iter().enumerate() {
        if e.prob <= 0.0 {
            continue;
        }
        if e.prob >= 1.0 {
            for t in totals.iter_mut() {
                *t += e.multiplicity;
            }
            continue;
        }
        let dist = Binomial::new(e.multiplicity, e.prob)
            .map_err(|err| Error::Domain(format!("binomial factor: {err}")))?;
        let mut start = 0u64;
        let mut block = 0u64;
        while start < n_samples {
            let stop = (start + SAMPLE_BLOCK).min(n_samples);
            let mut rng = stream_rng(seed, ei as u64, block);
            for t in totals[start as usize..stop as usize].iter_mut() {
                *t += dist.sample(&mut rng);
            }
            start = stop;
            block += 1;
        }
    }

    let sum: u128 = totals.iter().map(|&t| t as u128).sum();
    let mean = sum as f64 / n as f64;
    let (mut m2, mut m3, mut m4) = (0.0f64, 0.0f64, 0.0f64);
    for &t in &totals {
        let dx = t as f64 - mean;
        let dx2 = dx * dx;
        m2 += dx2;
        m3 += dx2 * dx;
        m4 += dx2 * dx2;
    }
    m2 /= n as f64;
    m3 /= n as f64;
    m4 /= n as f64;
    let variance = if n > 1 {
        m2 * n as f64 / (n as f64 - 1.0)
    } else {
        0.0
    };
    let (skewness, excess_kurtosis) = if m2 > 0.0 {
        (m3 / m2.powf(1.5), m4 / (m2 * m2) - 3.0)
    } else {
        (0.0, 0.0)
    };
    Ok(SampleStats {
        n_samples,
        mean,
        variance,
        skewness,
        excess_kurtosis,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{variance_ball_bessel, HeisenbergParams};
    use proptest::prelude::*;

    fn acc() -> Accuracy {
        Accuracy::default()
    }

    #[test]
    fn pk_trivial_and_oracle() {
        let p = pk(0, 1.0).unwrap();
        assert!((p - 0.632_120_558_828_557_678).abs() < 1e-15);
        assert_eq!(pk(5, 0.0).unwrap(), 0.0);
        // Poisson-sum oracle for p_3(2) = P(Pois(4) ≥ 4)
        let mut term = (-4.0f64).exp() * 4.0f64.powi(4) / 24.0;
        let mut oracle = 0.0;
        let mut j = 4.0;
        while term > 1e-22 {
            oracle += term;
            term *= 4.0 / (j + 1.0);
            j += 1.0;
        }
        let got = pk(3, 2.0).unwrap();
        assert!((got - oracle).abs() < 1e-13, "{got} vs {oracle}");
        assert!((got - 0.566_529_879_633_291_066).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn pk_monotone_in_radius(k in 0u32..60, r in 0.0f64..8.0, dr in 0.0f64..4.0) {
            let a = pk(k, r).unwrap();
            let b = pk(k, r + dr).unwrap();
            prop_assert!(b >= a - 1e-15);
        }

        #[test]
        fn pk_monotone_in_mode(k in 0u32..60, r in 0.01f64..8.0) {
            let a = pk(k, r).unwrap();
            let b = pk(k + 1, r).unwrap();
            prop_assert!(b <= a + 1e-15);
        }
    }

    #[test]
    fn polydisk_d1_head_values() {
        let s = polydisk_spectrum(1, 1.0, &acc()).unwrap();
        let e = s.entries();
        assert!((e[0].prob - 0.632_120_558_828_557_7).abs() < 1e-12);
        assert!((e[1].prob - 0.264_241_117_657_115_36).abs() < 1e-12);
        assert!((e[2].prob - 0.080_301_397_071_394_2).abs() < 1e-12);
        assert!(e.iter().all(|x| x.multiplicity == 1));
        // probabilities strictly decreasing at this radius
        for w in e.windows(2) {
            assert!(w[1].prob < w[0].prob);
        }
    }

    #[test]
    fn polydisk_first_moment_squares() {
        let s = polydisk_spectrum(2, 1.0, &acc()).unwrap();
        let (mean, _) = spectrum_moments(&s);
        assert!(
            (mean - 1.0).abs() <= s.tail_bound() + 1e-12,
            "mean {mean}, tail {}",
            s.tail_bound()
        );
    }

    #[test]
    fn polydisk_at_tiny_radius_is_empty() {
        // all p_k fall below the truncation threshold as R → 0
        let trunc = Accuracy::new(1e-12, 1e-16).unwrap();
        let s = polydisk_spectrum(1, 1e-9, &trunc).unwrap();
        assert!(s.entries().is_empty());
        let (mean, var) = spectrum_moments(&s);
        assert_eq!((mean, var), (0.0, 0.0));
        // under the tighter default threshold the mean still vanishes
        let s = polydisk_spectrum(1, 1e-9, &acc()).unwrap();
        let (mean, _) = spectrum_moments(&s);
        assert!(mean < 2e-18);
    }

    #[test]
    fn ball_matches_polydisk_in_dimension_one() {
        for &r in &[0.5, 1.0, 2.0] {
            let b = ball_spectrum(1, r, &acc()).unwrap();
            let p = polydisk_spectrum(1, r, &acc()).unwrap();
            assert_eq!(b.entries().len(), p.entries().len(), "R={r}");
            for (x, y) in b.entries().iter().zip(p.entries()) {
                assert!((x.prob - y.prob).abs() < 1e-15);
                assert_eq!(x.multiplicity, y.multiplicity);
            }
        }
    }

    #[test]
    fn ball_mean_and_variance_identities() {
        let s = ball_spectrum(2, 1.5, &acc()).unwrap();
        let (mean, var) = spectrum_moments(&s);
        assert!((mean - 2.53125).abs() < 1e-12, "{mean}");
        let exact = variance_ball_bessel(&HeisenbergParams::new(2, 1.5).unwrap()).unwrap();
        assert!(
            (var - exact.variance).abs() <= 1e-10 * exact.variance,
            "{var} vs {}",
            exact.variance
        );
    }

    #[test]
    fn ball_multiplicities_are_binomials() {
        let s = ball_spectrum(3, 1.0, &acc()).unwrap();
        let mults: Vec<u64> = s.entries().iter().map(|e| e.multiplicity).collect();
        // C(k+2, 2) = 1, 3, 6, 10, …
        assert_eq!(&mults[..4], &[1, 3, 6, 10]);
    }

    #[test]
    fn moment_trivials() {
        let single = BernoulliSpectrum {
            entries: vec![SpectrumEntry {
                prob: 0.5,
                multiplicity: 4,
            }],
            window: Window::Ball {
                dim: 1,
                radius: 1.0,
            },
            tail_bound: 0.0,
        };
        assert_eq!(spectrum_moments(&single), (2.0, 1.0));
        let empty = BernoulliSpectrum {
            entries: vec![],
            window: Window::Ball {
                dim: 1,
                radius: 0.0,
            },
            tail_bound: 0.0,
        };
        assert_eq!(spectrum_moments(&empty), (0.0, 0.0));
        let s = ball_spectrum(1, 2.0, &acc()).unwrap();
        let (mean, var) = spectrum_moments(&s);
        assert!((mean - 4.0).abs() < 1e-11);
        let exact = variance_ball_bessel(&HeisenbergParams::new(1, 2.0).unwrap()).unwrap();
        assert!((var - exact.variance).abs() < 1e-10 * exact.variance);
    }

    #[test]
    fn pmf_single_bernoulli() {
        let s = BernoulliSpectrum {
            entries: vec![SpectrumEntry {
                prob: 0.3,
                multiplicity: 1,
            }],
            window: Window::Ball {
                dim: 1,
                radius: 1.0,
            },
            tail_bound: 0.0,
        };
        let pmf = counting_pmf(&s, 4).unwrap();
        assert!((pmf.probs()[0] - 0.7).abs() < 1e-15);
        assert!((pmf.probs()[1] - 0.3).abs() < 1e-15);
        assert!(pmf.probs()[2..].iter().all(|&p| p == 0.0));
    }

    #[test]
    fn pmf_moments_match_spectrum() {
        let s = ball_spectrum(2, 1.2, &acc()).unwrap();
        let pmf = counting_pmf(&s, 64).unwrap();
        let (mean, var) = spectrum_moments(&s);
        assert!((pmf.mean() - mean).abs() < 1e-12 + s.tail_bound() * 64.0);
        assert!((pmf.variance() - var).abs() < 1e-10);
    }

    #[test]
    fn pmf_handles_huge_multiplicity_factor() {
        // m·ln(1−p) underflows the direct start, forcing the log-space walk
        // around the mode.
        let s = BernoulliSpectrum {
            entries: vec![SpectrumEntry {
                prob: 1e-3,
                multiplicity: 1_000_000,
            }],
            window: Window::Ball {
                dim: 1,
                radius: 1.0,
            },
            tail_bound: 0.0,
        };
        let pmf = counting_pmf(&s, 1500).unwrap();
        assert!((pmf.mean() - 1000.0).abs() < 1e-6);
        assert!((pmf.variance() - 999.0).abs() < 1e-4);
        // normalization limited by the Stirling ln-factorial at m = 1e6
        let total: f64 = pmf.probs().iter().sum();
        assert!((total - 1.0).abs() < 1e-9, "{total}");
    }

    #[test]
    fn pmf_errors_when_n_max_truncates_mass() {
        let s = ball_spectrum(1, 5.0, &acc()).unwrap();
        match counting_pmf(&s, 4) {
            Err(Error::SelfCheck(_)) => {}
            other => panic!("expected self-check failure, got {other:?}"),
        }
    }

    #[test]
    fn pmf_generating_function_factorizes() {
        let s = ball_spectrum(2, 1.0, &acc()).unwrap();
        let pmf = counting_pmf(&s, 64).unwrap();
        for &z in &[0.3, 0.7, 1.0] {
            let direct = pmf.pgf(z);
            let mut ln_prod = 0.0f64;
            for e in s.entries() {
                ln_prod += e.multiplicity as f64 * (1.0 - e.prob + e.prob * z).ln();
            }
            let product = ln_prod.exp();
            assert!(
                (direct - product).abs() < 1e-12,
                "z={z}: {direct} vs {product}"
            );
        }
    }

    #[test]
    fn pmf_zero_probability_against_monte_carlo() {
        // P(count = 0) = ∏ (1 − p_k); 10⁷ samples with an early-exit scan.
        use rand::Rng;
        let s = ball_spectrum(1, 1.0, &acc()).unwrap();
        let pmf = counting_pmf(&s, 32).unwrap();
        let p0 = pmf.probs()[0];
        let n = 10_000_000u64;
        let mut rng = stream_rng(0xFEED, 7, 0);
        let mut zeros = 0u64;
        for _ in 0..n {
            let mut all_empty = true;
            for e in s.entries() {
                if rng.gen::<f64>() < e.prob {
                    all_empty = false;
                    break;
                }
            }
            if all_empty {
                zeros += 1;
            }
        }
        let freq = zeros as f64 / n as f64;
        let se = (p0 * (1.0 - p0) / n as f64).sqrt();
        assert!(
            (freq - p0).abs() < 4.0 * se,
            "freq {freq} vs pmf {p0}, se {se}"
        );
    }

    #[test]
    fn sampling_degenerate_probability_one() {
        let s = BernoulliSpectrum {
            entries: vec![SpectrumEntry {
                prob: 1.0,
                multiplicity: 5,
            }],
            window: Window::Ball {
                dim: 1,
                radius: 9.0,
            },
            tail_bound: 0.0,
        };
        let stats = sample_counts(&s, 1000, 7).unwrap();
        assert_eq!(stats.mean, 5.0);
        assert_eq!(stats.variance, 0.0);
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let s = ball_spectrum(2, 2.0, &acc()).unwrap();
        let a = sample_counts(&s, 40_000, 1234).unwrap();
        let b = sample_counts(&s, 40_000, 1234).unwrap();
        assert_eq!(a, b);
        let c = sample_counts(&s, 40_000, 1235).unwrap();
        assert_ne!(a.mean.to_bits(), c.mean.to_bits());
    }

    #[test]
    fn sampling_matches_exact_moments() {
        let s = ball_spectrum(1, 5.0, &acc()).unwrap();
        let n = 200_000u64;
        let stats = sample_counts(&s, n, 99).unwrap();
        let exact = variance_ball_bessel(&HeisenbergParams::new(1, 5.0).unwrap()).unwrap();
        // mean: SE = sqrt(Var/n)
        let se_mean = (exact.variance / n as f64).sqrt();
        assert!(
            (stats.mean - exact.mean).abs() < 5.0 * se_mean,
            "mean {} vs {}",
            stats.mean,
            exact.mean
        );
        // variance: SE ≈ sqrt((m4 − m2²)/n)
        let (_, k4) = spectrum_cumulants_34(&s);
        let m4 = k4 + 3.0 * exact.variance * exact.variance;
        let se_var = ((m4 - exact.variance * exact.variance) / n as f64).sqrt();
        assert!(
            (stats.variance - exact.variance).abs() < 5.0 * se_var,
            "var {} vs {}",
            stats.variance,
            exact.variance
        );
    }
}
