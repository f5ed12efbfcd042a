//! Numerical checks of the time-variable Fourier analysis behind the
//! Strichartz estimate.
//!
//! A solution evaluated at a fixed point of the group is a trigonometric
//! series `u(t) = sum_R a_R exp(i R t / (b gamma))` with period
//! `T = 2 pi b gamma`. The coefficients `a_R` are opaque complex data here.
//! Substituting `t = b gamma tau` reduces every integral to `[0, 2 pi]`:
//!
//! ```text
//! int_0^T |u(t)|^p dt = b gamma * int_0^{2 pi} |sum_R a_R e^{i R tau}|^p dtau
//! ```

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Rational;

#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeriesSpec {
    /// Finitely supported coefficients `a_R`.
    pub coeffs: BTreeMap<u64, Complex64>,
    /// The product `b gamma`; the period is `2 pi b gamma`.
    pub b_gamma: Rational,
}

impl TimeSeriesSpec {
    pub fn new(coeffs: BTreeMap<u64, Complex64>, b_gamma: Rational) -> Result<Self> {
        if b_gamma <= Rational::from_integer(0.into()) {
            return Err(Error::InvalidArgument(format!(
                "b gamma must be positive, got {b_gamma}"
            )));
        }
        Ok(TimeSeriesSpec { coeffs, b_gamma })
    }

    pub fn b_gamma_f64(&self) -> f64 {
        self.b_gamma.to_f64().unwrap_or(f64::NAN)
    }

    /// `T = 2 pi b gamma`.
    pub fn period(&self) -> f64 {
        2.0 * PI * self.b_gamma_f64()
    }

    pub fn max_frequency(&self) -> u64 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    /// `sum_R |a_R|^2`.
    pub fn energy(&self) -> f64 {
        self.coeffs.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        TimeSeriesSpec {
            coeffs: self.coeffs.iter().map(|(&r, &a)| (r, a * c)).collect(),
            b_gamma: self.b_gamma.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Equispaced rectangle rule, evaluated with an FFT. Exact for
    /// trigonometric polynomials below the Nyquist limit.
    Trapezoid,
    /// Composite Gauss-Legendre on equal panels.
    GaussLegendre,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureConfig {
    /// Number of nodes on `[0, 2 pi]`; a power of two.
    pub sample_count: usize,
    pub scheme: Scheme,
}

/// Nodes per Gauss-Legendre panel.
const GL_PANEL: usize = 16;

impl QuadratureConfig {
    /// Trapezoid with the next power of two `>= 4 (max R + 1)`.
    pub fn for_max_frequency(max_frequency: u64) -> Self {
        let want = 4 * (max_frequency as usize + 1);
        QuadratureConfig {
            sample_count: want.next_power_of_two(),
            scheme: Scheme::Trapezoid,
        }
    }

    pub fn doubled(self) -> Self {
        QuadratureConfig {
            sample_count: self.sample_count * 2,
            ..self
        }
    }

    /// Rejects non-powers of two and counts below `2 max R + 2`.
    pub fn validate(&self, max_frequency: u64) -> Result<()> {
        if !self.sample_count.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "sample count {} is not a power of two",
                self.sample_count
            )));
        }
        let required = 2 * max_frequency as usize + 2;
        if self.sample_count < required {
            return Err(Error::NyquistViolation {
                samples: self.sample_count,
                max_frequency,
                required,
            });
        }
        Ok(())
    }

    /// Nodes and weights on `[0, 2 pi]`.
    fn rule(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.sample_count;
        match self.scheme {
            Scheme::Trapezoid => {
                let h = 2.0 * PI / n as f64;
                ((0..n).map(|k| k as f64 * h).collect(), vec![h; n])
            }
            Scheme::GaussLegendre => {
                let per = GL_PANEL.min(n);
                let panels = n / per;
                let (x, w) = gauss_legendre(per);
                let width = 2.0 * PI / panels as f64;
                let mut nodes = Vec::with_capacity(n);
                let mut weights = Vec::with_capacity(n);
                for p in 0..panels {
                    let a = p as f64 * width;
                    for (xi, wi) in x.iter().zip(&w) {
                        nodes.push(a + (xi + 1.0) * width / 2.0);
                        weights.push(wi * width / 2.0);
                    }
                }
                (nodes, weights)
            }
        }
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]` by Newton iteration.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p1 = x;
                p0 = 1.0;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `u(tau)` at the quadrature nodes, with the matching weights.
fn samples_of(
    coeffs: &BTreeMap<u64, Complex64>,
    cfg: &QuadratureConfig,
) -> (Vec<Complex64>, Vec<f64>) {
    let (nodes, weights) = cfg.rule();
    let values = match cfg.scheme {
        Scheme::Trapezoid => {
            let n = cfg.sample_count;
            let mut buf = vec![Complex64::new(0.0, 0.0); n];
            for (&r, &a) in coeffs {
                buf[(r as usize) % n] += a;
            }
            FftPlanner::new().plan_fft_inverse(n).process(&mut buf);
            buf
        }
        Scheme::GaussLegendre => nodes
            .iter()
            .map(|&t| {
                coeffs
                    .iter()
                    .map(|(&r, &a)| a * Complex64::from_polar(1.0, r as f64 * t))
                    .sum()
            })
            .collect(),
    };
    (values, weights)
}

/// `int_0^{2 pi} |sum_R a_R e^{i R tau}|^p dtau`.
fn abs_pow_integral(coeffs: &BTreeMap<u64, Complex64>, p: f64, cfg: &QuadratureConfig) -> f64 {
    let (values, weights) = samples_of(coeffs, cfg);
    values
        .iter()
        .zip(&weights)
        .map(|(v, w)| w * v.norm().powf(p))
        .sum()
}

fn check_p(p: f64, min: f64, strict: bool) -> Result<()> {
    let ok = if strict { p > min } else { p >= min };
    if !ok || !p.is_finite() {
        let rel = if strict { ">" } else { ">=" };
        return Err(Error::InvalidExponent(format!("p = {p} must be finite and {rel} {min}")));
    }
    Ok(())
}

/// `int_0^T exp(i (R1 - R2) t / (b gamma)) dt` by quadrature.
pub fn orthogonality_integral(
    r1: u64,
    r2: u64,
    b_gamma: f64,
    cfg: &QuadratureConfig,
) -> Result<Complex64> {
    cfg.validate(r1.max(r2))?;
    let (nodes, weights) = cfg.rule();
    let k = r1 as f64 - r2 as f64;
    let sum: Complex64 = nodes
        .iter()
        .zip(&weights)
        .map(|(&t, &w)| w * Complex64::from_polar(1.0, k * t))
        .sum();
    Ok(sum * b_gamma)
}

/// Gram matrix of `{exp(i R t / (b gamma))}` for `R = 0..=r_max` on `[0, T]`.
pub fn gram_matrix(r_max: u64, b_gamma: f64, cfg: &QuadratureConfig) -> Result<Vec<Vec<Complex64>>> {
    (0..=r_max)
        .map(|i| {
            (0..=r_max)
                .map(|j| orthogonality_integral(i, j, b_gamma, cfg))
                .collect()
        })
        .collect()
}

/// `||u||_{L^p([0, T])}`.
pub fn lp_time_norm(ts: &TimeSeriesSpec, p: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_p(p, 1.0, false)?;
    cfg.validate(ts.max_frequency())?;
    let integral = ts.b_gamma_f64() * abs_pow_integral(&ts.coeffs, p, cfg);
    Ok(integral.powf(1.0 / p))
}

/// `||u||_{L^p[0, 2 pi]} / ||sum_R R^alpha a_R e^{i R tau}||_{L^2[0, 2 pi]}`
/// with `alpha = 1/2 - 1/p`, the quantity bounded by the Wainger-Sobolev
/// embedding.
pub fn wainger_ratio(ts: &TimeSeriesSpec, p: f64, cfg: &QuadratureConfig) -> Result<f64> {
    check_p(p, 2.0, true)?;
    if ts.coeffs.get(&0).is_some_and(|a| a.norm_sqr() > 0.0) {
        return Err(Error::InvalidArgument(
            "the zero frequency must vanish for the embedding ratio".into(),
        ));
    }
    if ts.coeffs.values().all(|a| a.norm_sqr() == 0.0) {
        return Err(Error::ZeroDenominator);
    }
    cfg.validate(ts.max_frequency())?;
    let alpha = 0.5 - 1.0 / p;
    let weighted: BTreeMap<u64, Complex64> = ts
        .coeffs
        .iter()
        .map(|(&r, &a)| (r, a * (r as f64).powf(alpha)))
        .collect();
    let num = abs_pow_integral(&ts.coeffs, p, cfg).powf(1.0 / p);
    let den = abs_pow_integral(&weighted, 2.0, cfg).sqrt();
    Ok(num / den)
}

/// Mixed norms of a sampled function `u[t][x]` with quadrature weights in
/// each variable: returns `(||u||_{L^p_t L^q_x}, ||u||_{L^q_x L^p_t})`.
///
/// For `q <= p` Minkowski's integral inequality gives `first <= second`.
pub fn mixed_norms(
    u: &[Vec<f64>],
    t_weights: &[f64],
    x_weights: &[f64],
    p: f64,
    q: f64,
) -> Result<(f64, f64)> {
    if u.len() != t_weights.len() {
        return Err(Error::DimensionMismatch {
            expected: t_weights.len(),
            actual: u.len(),
        });
    }
    if let Some(row) = u.iter().find(|row| row.len() != x_weights.len()) {
        return Err(Error::DimensionMismatch {
            expected: x_weights.len(),
            actual: row.len(),
        });
    }
    check_p(p, 1.0, false)?;
    check_p(q, 1.0, false)?;
    let space = |row: &[f64]| -> f64 {
        row.iter()
            .zip(x_weights)
            .map(|(v, w)| w * v.abs().powf(q))
            .sum::<f64>()
            .powf(1.0 / q)
    };
    let time_outer: f64 = u
        .iter()
        .zip(t_weights)
        .map(|(row, w)| w * space(row).powf(p))
        .sum::<f64>()
        .powf(1.0 / p);
    let space_outer: f64 = x_weights
        .iter()
        .enumerate()
        .map(|(j, wx)| {
            let time: f64 = u
                .iter()
                .zip(t_weights)
                .map(|(row, wt)| wt * row[j].abs().powf(p))
                .sum::<f64>()
                .powf(1.0 / p);
            wx * time.powf(q)
        })
        .sum::<f64>()
        .powf(1.0 / q);
    Ok((time_outer, space_outer))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Orthogonality,
    Parseval,
    Wainger,
    Minkowski,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::Orthogonality,
        Suite::Parseval,
        Suite::Wainger,
        Suite::Minkowski,
    ];

    pub fn default_tolerance(self) -> f64 {
        match self {
            Suite::Orthogonality | Suite::Parseval => 1e-10,
            Suite::Wainger => 1e-6,
            Suite::Minkowski => 1e-12,
        }
    }

    pub fn default_samples(self) -> usize {
        match self {
            Suite::Orthogonality => 1,
            Suite::Parseval => 100,
            Suite::Wainger => 200,
            Suite::Minkowski => 50,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Orthogonality => "orthogonality",
            Suite::Parseval => "parseval",
            Suite::Wainger => "wainger",
            Suite::Minkowski => "minkowski",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.to_string() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub pass: bool,
    pub max_error: f64,
    pub details: serde_json::Value,
}

/// Suite parameters.
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
}

impl SuiteConfig {
    pub fn defaults(suite: Suite, seed: u64) -> Self {
        SuiteConfig {
            seed,
            samples: suite.default_samples(),
            tolerance: suite.default_tolerance(),
        }
    }
}

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20240601;

/// Largest frequency and support size in the random suites.
pub const RANDOM_MAX_FREQUENCY: u64 = 256;

/// `b gamma` values cycled through by the Parseval suite (`gamma = 1`).
const B_GAMMA_CYCLE: [i64; 5] = [1, 16, 24, 72, 240];

/// Deterministic generator for sample `index` of a suite.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Random coefficients on a random subset of `lo..=RANDOM_MAX_FREQUENCY`
/// with at most `RANDOM_MAX_FREQUENCY` nonzero entries.
pub fn random_coefficients(rng: &mut ChaCha8Rng, lo: u64) -> BTreeMap<u64, Complex64> {
    let support = rng.gen_range(1..=RANDOM_MAX_FREQUENCY as usize);
    let mut coeffs = BTreeMap::new();
    while coeffs.len() < support.min((RANDOM_MAX_FREQUENCY - lo + 1) as usize) {
        let r = rng.gen_range(lo..=RANDOM_MAX_FREQUENCY);
        let a = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        coeffs.insert(r, a);
    }
    coeffs
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<VerifyReport> {
    if !(cfg.tolerance.is_finite() && cfg.tolerance > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {}",
            cfg.tolerance
        )));
    }
    let (max_error, details) = match suite {
        Suite::Orthogonality => orthogonality_suite(cfg)?,
        Suite::Parseval => parseval_suite(cfg)?,
        Suite::Wainger => wainger_suite(cfg)?,
        Suite::Minkowski => minkowski_suite(cfg)?,
    };
    Ok(VerifyReport {
        suite: suite.to_string(),
        pass: max_error <= cfg.tolerance,
        max_error,
        details,
    })
}

/// Entrywise `|G - T I| / T` over `R <= 16`, for both schemes and a few
/// values of `b gamma`.
fn orthogonality_suite(_cfg: &SuiteConfig) -> Result<(f64, serde_json::Value)> {
    const R_MAX: u64 = 16;
    let mut worst: f64 = 0.0;
    let mut rows = Vec::new();
    for scheme in [Scheme::Trapezoid, Scheme::GaussLegendre] {
        for b_gamma in [1.0, 24.0, 240.0] {
            let q = QuadratureConfig {
                scheme,
                ..QuadratureConfig::for_max_frequency(R_MAX)
            };
            let t = 2.0 * PI * b_gamma;
            let g = gram_matrix(R_MAX, b_gamma, &q)?;
            let mut err: f64 = 0.0;
            for (i, row) in g.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let target = if i == j { t } else { 0.0 };
                    err = err.max((v - target).norm() / t);
                }
            }
            worst = worst.max(err);
            rows.push(serde_json::json!({
                "scheme": format!("{scheme:?}"),
                "b_gamma": b_gamma,
                "samples": q.sample_count,
                "error": err,
            }));
        }
    }
    Ok((worst, serde_json::json!({ "r_max": R_MAX, "cases": rows })))
}

fn parseval_suite(cfg: &SuiteConfig) -> Result<(f64, serde_json::Value)> {
    let errors: Vec<f64> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(cfg.seed, i);
            let b_gamma = B_GAMMA_CYCLE[i % B_GAMMA_CYCLE.len()];
            let ts = TimeSeriesSpec::new(
                random_coefficients(&mut rng, 0),
                Rational::from_integer(b_gamma.into()),
            )?;
            let q = QuadratureConfig::for_max_frequency(ts.max_frequency());
            let norm = lp_time_norm(&ts, 2.0, &q)?;
            let exact = ts.period() * ts.energy();
            Ok((norm * norm - exact).abs() / exact)
        })
        .collect::<Result<_>>()?;
    let worst = errors.iter().copied().fold(0.0, f64::max);
    Ok((
        worst,
        serde_json::json!({ "samples": cfg.samples, "seed": cfg.seed }),
    ))
}

/// Ratios at the default resolution against twice that resolution.
fn wainger_suite(cfg: &SuiteConfig) -> Result<(f64, serde_json::Value)> {
    let mut worst: f64 = 0.0;
    let mut per_p = Vec::new();
    for p in [4.0, 6.0] {
        let pairs: Vec<(f64, f64)> = (0..cfg.samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = sample_rng(cfg.seed, i);
                let ts = TimeSeriesSpec::new(random_coefficients(&mut rng, 1), Rational::from_integer(1.into()))?;
                let q = QuadratureConfig::for_max_frequency(ts.max_frequency());
                let coarse = wainger_ratio(&ts, p, &q)?;
                let fine = wainger_ratio(&ts, p, &q.doubled())?;
                Ok((coarse, (coarse - fine).abs() / fine))
            })
            .collect::<Result<_>>()?;
        let max_ratio = pairs.iter().map(|x| x.0).fold(0.0, f64::max);
        let err = pairs.iter().map(|x| x.1).fold(0.0, f64::max);
        worst = worst.max(err);
        per_p.push(serde_json::json!({ "p": p, "max_ratio": max_ratio, "max_error": err }));
    }
    Ok((
        worst,
        serde_json::json!({ "samples": cfg.samples, "seed": cfg.seed, "by_p": per_p }),
    ))
}

/// Minkowski's inequality `||u||_{L^p_t L^q_x} <= ||u||_{L^q_x L^p_t}` for
/// `q <= p`, on random products `u(t, x) = sum_R a_R(x) e^{i R t}`.
/// The error is the relative excess of the left side, zero when it holds.
fn minkowski_suite(cfg: &SuiteConfig) -> Result<(f64, serde_json::Value)> {
    const POINTS: usize = 12;
    const PAIRS: [(f64, f64); 4] = [(2.0, 2.0), (4.0, 2.0), (6.0, 4.0), (8.0, 3.0)];
    let excess: Vec<f64> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(cfg.seed, i);
            let max_r = rng.gen_range(1..=32u64);
            let q_cfg = QuadratureConfig::for_max_frequency(max_r);
            let columns: Vec<Vec<f64>> = (0..POINTS)
                .map(|_| {
                    let coeffs: BTreeMap<u64, Complex64> = (0..=max_r)
                        .map(|r| (r, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))))
                        .collect();
                    samples_of(&coeffs, &q_cfg).0.iter().map(|v| v.norm()).collect()
                })
                .collect();
            let (_, t_weights) = q_cfg.rule();
            let x_weights: Vec<f64> = (0..POINTS).map(|_| rng.gen_range(0.1..1.0)).collect();
            let u: Vec<Vec<f64>> = (0..t_weights.len())
                .map(|k| columns.iter().map(|c| c[k]).collect())
                .collect();
            let mut worst: f64 = 0.0;
            for (p, q) in PAIRS {
                let (inner_x, inner_t) = mixed_norms(&u, &t_weights, &x_weights, p, q)?;
                worst = worst.max((inner_x - inner_t) / inner_t);
            }
            Ok(worst.max(0.0))
        })
        .collect::<Result<_>>()?;
    let worst = excess.iter().copied().fold(0.0, f64::max);
    Ok((
        worst,
        serde_json::json!({ "samples": cfg.samples, "seed": cfg.seed, "pairs": PAIRS }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn single(r: u64) -> TimeSeriesSpec {
        TimeSeriesSpec::new(BTreeMap::from([(r, Complex64::new(1.0, 0.0))]), int(1)).unwrap()
    }

    #[test]
    fn equal_frequencies_integrate_to_period() {
        let cfg = QuadratureConfig::for_max_frequency(7);
        let v = orthogonality_integral(7, 7, 3.0, &cfg).unwrap();
        assert!((v - Complex64::new(6.0 * PI, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn distinct_frequencies_integrate_to_zero() {
        for scheme in [Scheme::Trapezoid, Scheme::GaussLegendre] {
            let cfg = QuadratureConfig {
                scheme,
                ..QuadratureConfig::for_max_frequency(5)
            };
            assert!(orthogonality_integral(3, 5, 1.0, &cfg).unwrap().norm() < 1e-10 * 2.0 * PI);
            assert!(orthogonality_integral(4, 5, 1.0, &cfg).unwrap().norm() < 1e-14);
        }
    }

    #[test]
    fn nyquist_is_enforced() {
        let cfg = QuadratureConfig {
            sample_count: 8,
            scheme: Scheme::Trapezoid,
        };
        assert_eq!(
            orthogonality_integral(4, 0, 1.0, &cfg).unwrap_err(),
            Error::NyquistViolation {
                samples: 8,
                max_frequency: 4,
                required: 10
            }
        );
        assert!(orthogonality_integral(3, 0, 1.0, &cfg).is_ok());
        let odd = QuadratureConfig {
            sample_count: 12,
            scheme: Scheme::Trapezoid,
        };
        assert!(odd.validate(1).is_err());
    }

    #[test]
    fn default_sample_count() {
        assert_eq!(QuadratureConfig::for_max_frequency(0).sample_count, 4);
        assert_eq!(QuadratureConfig::for_max_frequency(7).sample_count, 32);
        assert_eq!(QuadratureConfig::for_max_frequency(8).sample_count, 64);
    }

    #[test]
    fn gauss_legendre_weights() {
        let (x, w) = gauss_legendre(5);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        // exact for x^8
        let m: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(8)).sum();
        assert!((m - 2.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn single_tone_norm() {
        let ts = single(5);
        let cfg = QuadratureConfig::for_max_frequency(5);
        for p in [1.0, 2.0, 3.5, 8.0] {
            let got = lp_time_norm(&ts, p, &cfg).unwrap();
            assert!((got - (2.0 * PI).powf(1.0 / p)).abs() < 1e-12);
        }
    }

    #[test]
    fn two_tone_l4_norm() {
        // |1 + e^{i tau}|^4 = 16 cos^4(tau/2), whose integral is 12 pi
        let ts = TimeSeriesSpec::new(
            BTreeMap::from([(0, Complex64::new(1.0, 0.0)), (1, Complex64::new(1.0, 0.0))]),
            int(3),
        )
        .unwrap();
        // trapezoid is exact at the default resolution; Gauss-Legendre needs panels
        for (scheme, n) in [(Scheme::Trapezoid, 8), (Scheme::GaussLegendre, 128)] {
            let cfg = QuadratureConfig {
                scheme,
                sample_count: n,
            };
            let got = lp_time_norm(&ts, 4.0, &cfg).unwrap();
            let want = (3.0 * 12.0 * PI).powf(0.25);
            assert!((got - want).abs() < 1e-12 * want, "{scheme:?}");
        }
    }

    #[test]
    fn single_tone_wainger_ratio() {
        let cfg = QuadratureConfig::for_max_frequency(9);
        for p in [3.0, 4.0, 6.0] {
            let alpha = 0.5 - 1.0 / p;
            let want = (2.0 * PI).powf(1.0 / p) / (9f64.powf(alpha) * (2.0 * PI).sqrt());
            let got = wainger_ratio(&single(9), p, &cfg).unwrap();
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn wainger_ratio_errors() {
        let cfg = QuadratureConfig::for_max_frequency(4);
        let zero = TimeSeriesSpec::new(BTreeMap::from([(3, Complex64::new(0.0, 0.0))]), int(1)).unwrap();
        assert_eq!(wainger_ratio(&zero, 4.0, &cfg).unwrap_err(), Error::ZeroDenominator);
        assert!(wainger_ratio(&single(0), 4.0, &cfg).is_err());
        assert!(wainger_ratio(&single(2), 2.0, &cfg).is_err());
    }

    #[test]
    fn suite_parsing() {
        assert_eq!("parseval".parse::<Suite>().unwrap(), Suite::Parseval);
        assert!("fourier".parse::<Suite>().is_err());
    }

    #[test]
    fn per_sample_streams_are_reproducible() {
        let a = random_coefficients(&mut sample_rng(7, 3), 1);
        let b = random_coefficients(&mut sample_rng(7, 3), 1);
        let c = random_coefficients(&mut sample_rng(7, 4), 1);
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.keys().all(|&r| (1..=RANDOM_MAX_FREQUENCY).contains(&r)));
    }

    #[test]
    fn mixed_norm_dimension_checks() {
        let u = vec![vec![1.0, 2.0]];
        assert!(mixed_norms(&u, &[1.0, 1.0], &[1.0, 1.0], 2.0, 2.0).is_err());
        let (a, b) = mixed_norms(&u, &[1.0], &[1.0, 1.0], 2.0, 2.0).unwrap();
        assert!((a - b).abs() < 1e-15);
    }
}
