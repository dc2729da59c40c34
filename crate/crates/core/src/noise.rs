//! Ornstein-Uhlenbeck dephasing noise.
//!
//! The noise `w(t)` is stationary Gaussian with autocorrelation
//! `b^2 exp(-|t - t'| / tau_c)`. Everything the spin sees is captured by
//! `chi(tau)`, half the variance of the accumulated phase `int_0^tau w dt`:
//! a coherence between levels `m` and `n` decays as `exp(-(m-n)^2 chi)`.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_non_negative, ensure_positive, Error, Result};
use crate::numeric::bisect_increasing;
use crate::rng::stream_rng;
use crate::spin::SpinQuantumNumber;

/// Below this `tau / tau_c` the closed form for chi is replaced by its series.
const SERIES_CUTOFF: f64 = 1e-4;

/// Markovianity parameter `2 S b tau_c` below which the noise counts as Markovian.
pub const MARKOVIAN_BELOW: f64 = 0.1;
/// Markovianity parameter above which the noise counts as quasi-static.
pub const QUASI_STATIC_ABOVE: f64 = 10.0;

/// Noise magnitude `b` (angular frequency) and memory time `tau_c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OUNoise {
    b: f64,
    tau_c: f64,
}

impl OUNoise {
    pub fn new(b: f64, tau_c: f64) -> Result<Self> {
        Ok(Self {
            b: ensure_positive("b", b)?,
            tau_c: ensure_positive("tau_c", tau_c)?,
        })
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn tau_c(&self) -> f64 {
        self.tau_c
    }

    /// `C(t, t') = b^2 exp(-|t - t'| / tau_c)`.
    pub fn autocorrelation(&self, lag: f64) -> f64 {
        self.b * self.b * (-lag.abs() / self.tau_c).exp()
    }

    /// `2 S b tau_c`.
    pub fn markov_param(&self, s: SpinQuantumNumber) -> f64 {
        s.twice() * self.b * self.tau_c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Markovian,
    Intermediate,
    QuasiStatic,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Markovian => "markovian",
            Regime::Intermediate => "intermediate",
            Regime::QuasiStatic => "quasi_static",
        }
    }
}

/// Regime label together with the parameter it was derived from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseRegime {
    pub regime: Regime,
    pub markov_param: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeLimit {
    /// `tau << tau_c`: `b^2 tau^2 / 2`.
    Short,
    /// `tau >> tau_c`: `b^2 tau_c tau`.
    Long,
}

/// Phenomenological dynamical-decoupling profile.
///
/// The modified `chi` grows as `tau^n` for `tau << tau_c` and linearly for
/// `tau >> tau_c`; `shape` is the constant `c_n` of the interpolant in
/// [`dd_chi`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DDProfile {
    n: f64,
    shape: f64,
}

impl DDProfile {
    pub const DEFAULT_SHAPE: f64 = 2.0;

    pub fn new(n: f64) -> Result<Self> {
        Self::with_shape(n, Self::DEFAULT_SHAPE)
    }

    pub fn with_shape(n: f64, shape: f64) -> Result<Self> {
        if !(n.is_finite() && n >= 1.0) {
            return Err(Error::param("n", format!("must be >= 1, got {n}")));
        }
        Ok(Self {
            n,
            shape: ensure_positive("shape", shape)?,
        })
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn shape(&self) -> f64 {
        self.shape
    }
}

/// `chi(tau) = b^2 tau_c^2 (tau/tau_c + exp(-tau/tau_c) - 1)`.
pub fn chi(noise: &OUNoise, tau: f64) -> Result<f64> {
    ensure_non_negative("tau", tau)?;
    Ok(chi_unchecked(noise, tau))
}

pub(crate) fn chi_unchecked(noise: &OUNoise, tau: f64) -> f64 {
    let x = tau / noise.tau_c;
    let shape = if x < SERIES_CUTOFF {
        x * x * (0.5 - x * (1.0 / 6.0 - x / 24.0))
    } else {
        x + (-x).exp_m1()
    };
    noise.b * noise.b * noise.tau_c * noise.tau_c * shape
}

pub fn chi_limit(noise: &OUNoise, tau: f64, limit: TimeLimit) -> f64 {
    let b2 = noise.b * noise.b;
    match limit {
        TimeLimit::Short => 0.5 * b2 * tau * tau,
        TimeLimit::Long => b2 * noise.tau_c * tau,
    }
}

/// The two asymptotic decoherence times: `(quasi-static, Markovian)`.
pub fn t2_asymptotes(s: SpinQuantumNumber, noise: &OUNoise) -> (f64, f64) {
    let quasi_static = 1.0 / (std::f64::consts::SQRT_2 * s.value() * noise.b);
    let markovian = 1.0 / ((s.twice() * noise.b).powi(2) * noise.tau_c);
    (quasi_static, markovian)
}

/// Decoherence time: the root of `(2S)^2 chi(T2) = 1`.
///
/// `chi` is bounded above by both asymptotes, so the larger asymptotic time
/// is a lower bracket; `chi >= b^2 tau_c (tau - tau_c)` gives the upper one.
pub fn t2(s: SpinQuantumNumber, noise: &OUNoise) -> f64 {
    let (qs, mk) = t2_asymptotes(s, noise);
    let lo = qs.max(mk);
    let hi = (mk + noise.tau_c).min(2.0 * lo).max(lo);
    let scale = s.twice().powi(2);
    let mut hi = hi;
    while scale * chi_unchecked(noise, hi) < 1.0 {
        hi *= 2.0;
    }
    bisect_increasing(|t| scale * chi_unchecked(noise, t) - 1.0, lo, hi, 1e-13)
}

/// Root of `(2S)^2 chi(T) = 1` for any increasing, unbounded `chi`,
/// bracketed outward from `guess`.
pub fn decoherence_time<F>(s: SpinQuantumNumber, chi_fn: F, guess: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    let scale = s.twice().powi(2);
    let g = |t: f64| scale * chi_fn(t) - 1.0;
    let mut lo = guess;
    let mut hi = guess;
    while g(lo) > 0.0 {
        lo *= 0.5;
    }
    while g(hi) < 0.0 {
        hi *= 2.0;
    }
    bisect_increasing(g, lo, hi, 1e-13)
}

pub fn classify(s: SpinQuantumNumber, noise: &OUNoise) -> NoiseRegime {
    regime_for(noise.markov_param(s))
}

pub fn regime_for(markov_param: f64) -> NoiseRegime {
    let regime = if markov_param < MARKOVIAN_BELOW {
        Regime::Markovian
    } else if markov_param > QUASI_STATIC_ABOVE {
        Regime::QuasiStatic
    } else {
        Regime::Intermediate
    };
    NoiseRegime {
        regime,
        markov_param,
    }
}

/// One stationary OU path with `steps + 1` samples spaced by `dt`, using the
/// exact discretization `x' = x e^{-dt/tau_c} + b sqrt(1 - e^{-2dt/tau_c}) xi`.
pub fn sample_ou_path(noise: &OUNoise, dt: f64, steps: usize, seed: u64) -> Result<Vec<f64>> {
    sample_ou_path_stream(noise, dt, steps, seed, 0)
}

/// Like [`sample_ou_path`] but drawing from stream `index` of `seed`.
pub fn sample_ou_path_stream(
    noise: &OUNoise,
    dt: f64,
    steps: usize,
    seed: u64,
    index: u64,
) -> Result<Vec<f64>> {
    ensure_positive("dt", dt)?;
    if steps == 0 {
        return Err(Error::param("steps", "must be >= 1"));
    }
    let step = OuStep::new(noise, dt);
    let mut rng = stream_rng(seed, index);
    let mut x = noise.b * rng.sample::<f64, _>(StandardNormal);
    let mut path = Vec::with_capacity(steps + 1);
    path.push(x);
    for _ in 0..steps {
        x = step.advance(x, rng.sample(StandardNormal));
        path.push(x);
    }
    Ok(path)
}

#[derive(Debug, Clone, Copy)]
struct OuStep {
    decay: f64,
    kick: f64,
}

impl OuStep {
    fn new(noise: &OUNoise, dt: f64) -> Self {
        Self {
            decay: (-dt / noise.tau_c).exp(),
            kick: noise.b * (-(-2.0 * dt / noise.tau_c).exp_m1()).sqrt(),
        }
    }

    #[inline]
    fn advance(&self, x: f64, xi: f64) -> f64 {
        x * self.decay + self.kick * xi
    }
}

/// Sample mean of `exp(-i 2S phi(tau))` with its per-component standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McCoherence {
    pub mean: Complex64,
    pub std_err_re: f64,
    pub std_err_im: f64,
    pub paths: usize,
    pub steps: usize,
    /// Quadrature step actually used (`tau / steps`).
    pub dt: f64,
}

/// Step used when the caller has no preference: fine enough for both the
/// noise memory and the evolution time.
pub fn default_mc_step(noise: &OUNoise, tau: f64) -> f64 {
    let by_memory = noise.tau_c / 20.0;
    if tau > 0.0 {
        by_memory.min(tau / 200.0)
    } else {
        by_memory
    }
}

/// Monte Carlo estimate of the GHZ coherence `E[exp(-i 2S phi(tau))]`.
///
/// The phase integral is accumulated with the trapezoidal rule over exact OU
/// paths. Path `k` uses RNG stream `k` of `seed`, so the result is the same
/// for any thread count. `dt` is rounded down so that it divides `tau`.
pub fn mc_coherence(
    s: SpinQuantumNumber,
    noise: &OUNoise,
    tau: f64,
    paths: usize,
    dt: f64,
    seed: u64,
) -> Result<McCoherence> {
    ensure_non_negative("tau", tau)?;
    ensure_positive("dt", dt)?;
    if paths < 100 {
        return Err(Error::param("paths", format!("need >= 100, got {paths}")));
    }
    let limit = noise.tau_c / 20.0;
    if dt > limit * (1.0 + 1e-12) {
        return Err(Error::StepTooCoarse { dt, limit });
    }
    if tau == 0.0 {
        return Ok(McCoherence {
            mean: Complex64::new(1.0, 0.0),
            std_err_re: 0.0,
            std_err_im: 0.0,
            paths,
            steps: 0,
            dt: 0.0,
        });
    }
    let steps = (tau / dt).ceil().max(1.0) as usize;
    let h = tau / steps as f64;
    let step = OuStep::new(noise, h);
    let twice_s = s.twice();
    let b = noise.b;

    let samples: Vec<(f64, f64)> = (0..paths as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream_rng(seed, k);
            let mut x = b * rng.sample::<f64, _>(StandardNormal);
            let mut phase = 0.0;
            for _ in 0..steps {
                let next = step.advance(x, rng.sample(StandardNormal));
                phase += 0.5 * h * (x + next);
                x = next;
            }
            let (sin, cos) = (twice_s * phase).sin_cos();
            (cos, -sin)
        })
        .collect();

    let n = paths as f64;
    let (sum_re, sum_im) = samples
        .iter()
        .fold((0.0, 0.0), |(a, b), (re, im)| (a + re, b + im));
    let (mean_re, mean_im) = (sum_re / n, sum_im / n);
    let (var_re, var_im) = samples.iter().fold((0.0, 0.0), |(a, b), (re, im)| {
        (a + (re - mean_re).powi(2), b + (im - mean_im).powi(2))
    });
    Ok(McCoherence {
        mean: Complex64::new(mean_re, mean_im),
        std_err_re: (var_re / (n - 1.0) / n).sqrt(),
        std_err_im: (var_im / (n - 1.0) / n).sqrt(),
        paths,
        steps,
        dt: h,
    })
}

/// Analytic GHZ coherence `exp(-(2S)^2 chi(tau))`.
pub fn ghz_coherence(s: SpinQuantumNumber, noise: &OUNoise, tau: f64) -> Result<f64> {
    Ok((-s.twice().powi(2) * chi(noise, tau)?).exp())
}

/// DD-modified `chi`: `b^2 tau_c^2 x^n / (c_n + x^(n-1))` with `x = tau/tau_c`.
///
/// Behaves as `(b^2 tau_c^2 / c_n) x^n` for `x << 1` and as `b^2 tau_c tau`
/// for `x >> 1`. With `n = 2, c_n = 2` both free-evolution limits are
/// recovered, though the crossover differs from [`chi`].
pub fn dd_chi(noise: &OUNoise, profile: &DDProfile, tau: f64) -> Result<f64> {
    ensure_non_negative("tau", tau)?;
    Ok(dd_chi_unchecked(noise, profile, tau))
}

pub(crate) fn dd_chi_unchecked(noise: &OUNoise, profile: &DDProfile, tau: f64) -> f64 {
    let x = tau / noise.tau_c;
    let scale = noise.b * noise.b * noise.tau_c * noise.tau_c;
    if x <= 1.0 {
        scale * x.powf(profile.n) / (profile.shape + x.powf(profile.n - 1.0))
    } else {
        scale * x / (profile.shape * x.powf(1.0 - profile.n) + 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn spin(two_s: u32) -> SpinQuantumNumber {
        SpinQuantumNumber::from_twice(two_s).unwrap()
    }

    /// Reference value of `x + e^{-x} - 1` by summing the alternating series
    /// `sum_{k>=2} (-x)^k / k!` with Kahan compensation.
    fn chi_shape_series(x: f64) -> f64 {
        let mut term = x * x / 2.0;
        let mut sum = 0.0_f64;
        let mut comp = 0.0;
        let mut k = 2.0;
        while term.abs() > 1e-30 * sum.abs().max(1e-300) && k < 400.0 {
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            k += 1.0;
            term *= -x / k;
        }
        sum
    }

    #[test]
    fn chi_reference_values() {
        let noise = OUNoise::new(1.0, 0.1).unwrap();
        assert_eq!(chi(&noise, 0.0).unwrap(), 0.0);
        // 0.01 * (10 + e^{-10} - 1)
        assert_relative_eq!(
            chi(&noise, 1.0).unwrap(),
            0.090_000_453_999_297_6,
            max_relative = 1e-14
        );
        // 0.01 * (2 + e^{-2} - 1)
        assert_relative_eq!(
            chi(&noise, 0.2).unwrap(),
            0.011_353_352_832_366_127,
            max_relative = 1e-14
        );
        assert!(chi(&noise, -1e-9).is_err());
    }

    #[test]
    fn chi_matches_series_oracle_at_small_x() {
        let noise = OUNoise::new(1.3, 2.0).unwrap();
        for &x in &[1e-8, 1e-6, 5e-5, 9.9e-5, 1.1e-4, 1e-3, 0.1, 1.0] {
            let exact = 1.69 * 4.0 * chi_shape_series(x);
            assert_relative_eq!(chi(&noise, x * 2.0).unwrap(), exact, max_relative = 1e-11);
        }
    }

    #[test]
    fn chi_limits() {
        let noise = OUNoise::new(1.0, 0.1).unwrap();
        assert_relative_eq!(
            chi_limit(&noise, 0.01, TimeLimit::Short),
            5e-5,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            chi_limit(&noise, 10.0, TimeLimit::Long),
            1.0,
            max_relative = 1e-15
        );
        // The leading correction is -x/3, so 1% holds up to x = 0.03.
        for &x in &[1e-4, 1e-3, 0.01, 0.029] {
            let tau = x * 0.1;
            let exact = chi(&noise, tau).unwrap();
            let short = chi_limit(&noise, tau, TimeLimit::Short);
            assert!((exact - short).abs() / exact < 0.01, "x={x}");
        }
        for &x in &[201.0, 1e3, 1e5] {
            let tau = x * 0.1;
            let exact = chi(&noise, tau).unwrap();
            let long = chi_limit(&noise, tau, TimeLimit::Long);
            assert!((exact - long).abs() / exact < 0.01, "x={x}");
        }
    }

    #[test]
    fn chi_strictly_increasing_on_log_grid() {
        let noise = OUNoise::new(0.7, 3.0).unwrap();
        let grid = crate::numeric::log_grid(3e-6, 3e6, 600);
        let values: Vec<f64> = grid.iter().map(|&t| chi(&noise, t).unwrap()).collect();
        assert!(values.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn t2_limits_and_defining_equation() {
        let s = spin(1);
        let qs = OUNoise::new(1.0, 100.0).unwrap();
        assert!((t2(s, &qs) / 2f64.sqrt() - 1.0).abs() < 0.01);
        let mk = OUNoise::new(1.0, 1e-4).unwrap();
        assert!((t2(s, &mk) / 1e4 - 1.0).abs() < 0.01);
        for two_s in [1, 2, 3, 8, 16, 1000] {
            for &tau_c in &[1e-5, 1e-2, 0.1, 1.0, 50.0, 1e4] {
                let noise = OUNoise::new(0.8, tau_c).unwrap();
                let s = spin(two_s);
                let t = t2(s, &noise);
                let residual = s.twice().powi(2) * chi(&noise, t).unwrap() - 1.0;
                assert!(
                    residual.abs() < 1e-9,
                    "2S={two_s} tau_c={tau_c} residual={residual}"
                );
                let (a, b) = t2_asymptotes(s, &noise);
                let asym = a.max(b);
                assert!(t >= asym && t <= 2.0 * asym, "2S={two_s} tau_c={tau_c}");
            }
        }
    }

    #[test]
    fn generic_decoherence_time_agrees_with_t2() {
        let noise = OUNoise::new(1.0, 0.3).unwrap();
        let s = spin(5);
        let t = decoherence_time(s, |tau| chi_unchecked(&noise, tau), 123.0);
        assert_relative_eq!(t, t2(s, &noise), max_relative = 1e-11);
    }

    #[test]
    fn classification() {
        let markov = classify(spin(1), &OUNoise::new(1.0, 1e-3).unwrap());
        assert_eq!(markov.regime, Regime::Markovian);
        assert_relative_eq!(markov.markov_param, 1e-3);
        let qs = classify(spin(1), &OUNoise::new(1.0, 100.0).unwrap());
        assert_eq!(qs.regime, Regime::QuasiStatic);
        assert_relative_eq!(qs.markov_param, 100.0);
        let mid = classify(spin(1000), &OUNoise::new(1.0, 1e-3).unwrap());
        assert_eq!(mid.regime, Regime::Intermediate);
        assert_relative_eq!(mid.markov_param, 1.0);
    }

    #[test]
    fn invalid_inputs() {
        assert!(OUNoise::new(0.0, 1.0).is_err());
        assert!(OUNoise::new(1.0, -1.0).is_err());
        assert!(OUNoise::new(f64::NAN, 1.0).is_err());
        let noise = OUNoise::new(1.0, 1.0).unwrap();
        assert!(sample_ou_path(&noise, 0.0, 10, 1).is_err());
        assert!(sample_ou_path(&noise, 0.1, 0, 1).is_err());
        assert!(mc_coherence(spin(1), &noise, 1.0, 99, 0.01, 1).is_err());
        assert!(matches!(
            mc_coherence(spin(1), &noise, 1.0, 1000, 0.1, 1),
            Err(Error::StepTooCoarse { .. })
        ));
        assert!(DDProfile::new(0.5).is_err());
        assert!(DDProfile::with_shape(2.0, 0.0).is_err());
    }

    #[test]
    fn ou_path_is_deterministic() {
        let noise = OUNoise::new(1.0, 0.5).unwrap();
        let a = sample_ou_path(&noise, 0.01, 50, 9).unwrap();
        let b = sample_ou_path(&noise, 0.01, 50, 9).unwrap();
        let c = sample_ou_path(&noise, 0.01, 50, 10).unwrap();
        assert_eq!(a.len(), 51);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn mc_at_zero_time_is_exact() {
        let noise = OUNoise::new(1.0, 0.1).unwrap();
        let r = mc_coherence(spin(8), &noise, 0.0, 100, 0.005, 3).unwrap();
        assert_eq!(r.mean, Complex64::new(1.0, 0.0));
        assert_eq!(r.std_err_re, 0.0);
        assert_eq!(r.std_err_im, 0.0);
    }

    #[test]
    fn dd_chi_limits() {
        let noise = OUNoise::new(1.5, 0.4).unwrap();
        let free = DDProfile::new(2.0).unwrap();
        assert_eq!(dd_chi(&noise, &free, 0.0).unwrap(), 0.0);
        for &x in &[1e-6, 1e-4, 1e-3, 0.009] {
            let tau = x * 0.4;
            let dd = dd_chi(&noise, &free, tau).unwrap();
            let short = chi_limit(&noise, tau, TimeLimit::Short);
            assert!((dd - short).abs() / short < 0.01, "x={x}");
        }
        for &n in &[1.0, 2.0, 3.0, 4.0, 6.5] {
            let p = DDProfile::new(n).unwrap();
            let tau = 1e3 * 0.4;
            let dd = dd_chi(&noise, &p, tau).unwrap();
            // n = 1 is linear at all times: x / (c + 1) on both sides.
            let long_scale = if n == 1.0 { 3.0 } else { 1.0 };
            let short_scale = if n == 1.0 { 3.0 } else { 2.0 };
            let long = chi_limit(&noise, tau, TimeLimit::Long) / long_scale;
            assert!((dd - long).abs() / long < 0.01, "n={n}");
            // short-time power law x^n / c_n
            let x = 1e-3_f64;
            let expected = 1.5f64.powi(2) * 0.16 * x.powf(n) / short_scale;
            let got = dd_chi(&noise, &p, x * 0.4).unwrap();
            assert!((got - expected).abs() / expected < 0.01, "n={n}");
        }
    }

    #[test]
    fn dd_chi_strictly_increasing() {
        let noise = OUNoise::new(1.0, 1.0).unwrap();
        for &n in &[2.0, 3.0, 4.0] {
            let p = DDProfile::new(n).unwrap();
            let grid = crate::numeric::log_grid(1e-5, 1e5, 400);
            let v: Vec<f64> = grid
                .iter()
                .map(|&t| dd_chi(&noise, &p, t).unwrap())
                .collect();
            assert!(v.windows(2).all(|w| w[1] > w[0]), "n={n}");
        }
    }

    #[test]
    fn dd_free_profile_matches_chi_only_asymptotically() {
        let noise = OUNoise::new(1.0, 1.0).unwrap();
        let p = DDProfile::new(2.0).unwrap();
        let rel = |tau: f64| {
            let a = chi(&noise, tau).unwrap();
            (dd_chi(&noise, &p, tau).unwrap() - a).abs() / a
        };
        assert!(rel(1e-3) < 0.05);
        assert!(rel(1e3) < 0.05);
        // Different interpolants disagree in the crossover.
        assert!(rel(1.0) > 0.05);
    }
}
