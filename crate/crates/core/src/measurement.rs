//! Measurement-level estimation for the GHZ-like protocol.
//!
//! After the dephased evolution the probe is projected onto
//! `(|S> +- |-S>)/sqrt(2)`. With visibility `V = exp(-(2S)^2 chi(tau))` and
//! phase `theta = 2 S omega tau` the outcome probabilities are
//! `P+- = (1 +- V cos theta) / 2`. The remaining `2S - 1` levels carry no
//! population for GHZ-protocol states, so that outcome never fires.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{ensure_non_negative, Error, Result};
use crate::noise::{ghz_coherence, OUNoise};
use crate::rng::stream_rng;
use crate::spin::SpinQuantumNumber;

/// Fewest repetitions used for the spread statistics.
pub const MIN_REPETITIONS: usize = 200;

/// The two-outcome parity measurement at fixed `(S, noise, tau)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryMeasurement {
    spin: SpinQuantumNumber,
    tau: f64,
    visibility: f64,
}

impl BinaryMeasurement {
    pub fn new(spin: SpinQuantumNumber, noise: &OUNoise, tau: f64) -> Result<Self> {
        Ok(Self {
            spin,
            tau,
            visibility: ghz_coherence(spin, noise, tau)?,
        })
    }

    /// Bypasses the noise model; `visibility` must lie in `[0, 1]`.
    pub fn with_visibility(spin: SpinQuantumNumber, tau: f64, visibility: f64) -> Result<Self> {
        ensure_non_negative("tau", tau)?;
        if !(0.0..=1.0).contains(&visibility) {
            return Err(Error::param(
                "visibility",
                format!("must be in [0, 1], got {visibility}"),
            ));
        }
        Ok(Self {
            spin,
            tau,
            visibility,
        })
    }

    pub fn visibility(&self) -> f64 {
        self.visibility
    }

    pub fn phase(&self, omega: f64) -> f64 {
        self.spin.twice() * omega * self.tau
    }

    /// `(P+, P-)`; the pair sums to one.
    pub fn probabilities(&self, omega: f64) -> (f64, f64) {
        let p_plus = 0.5 * (1.0 + self.visibility * self.phase(omega).cos());
        (p_plus, 1.0 - p_plus)
    }

    /// `(2 S tau)^2 V^2 sin^2 theta / (1 - V^2 cos^2 theta)`.
    pub fn classical_fisher(&self, omega: f64) -> Result<f64> {
        let (p_plus, p_minus) = self.probabilities(omega);
        if p_plus <= 0.0 || p_minus <= 0.0 {
            return Err(Error::DegenerateMeasurement(p_plus));
        }
        let (sin, cos) = self.phase(omega).sin_cos();
        let v2 = self.visibility * self.visibility;
        let k = self.spin.twice() * self.tau;
        Ok(k * k * v2 * sin * sin / (1.0 - v2 * cos * cos))
    }

    /// Inverts `P+(omega) = fraction` on the monotone branch of
    /// `cos theta` that contains `reference_phase`. Returns `None` when
    /// `(2 fraction - 1) / V` falls outside the open interval `(-1, 1)`.
    pub fn invert(&self, fraction: f64, reference_phase: f64) -> Option<f64> {
        let c = (2.0 * fraction - 1.0) / self.visibility;
        if c.is_nan() || c.abs() >= 1.0 {
            return None;
        }
        let branch = (reference_phase / PI).floor();
        let base = c.acos();
        let theta = if branch.rem_euclid(2.0) == 0.0 {
            branch * PI + base
        } else {
            (branch + 1.0) * PI - base
        };
        Some(theta / (self.spin.twice() * self.tau))
    }
}

pub fn outcome_probability(
    s: SpinQuantumNumber,
    noise: &OUNoise,
    tau: f64,
    omega: f64,
) -> Result<(f64, f64)> {
    Ok(BinaryMeasurement::new(s, noise, tau)?.probabilities(omega))
}

pub fn classical_fisher(
    s: SpinQuantumNumber,
    noise: &OUNoise,
    tau: f64,
    omega: f64,
) -> Result<f64> {
    BinaryMeasurement::new(s, noise, tau)?.classical_fisher(omega)
}

/// Aggregate of repeated `nu`-shot estimation experiments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimationRun {
    pub nu: u64,
    pub omega_true: f64,
    /// Mean estimate over unflagged repetitions.
    pub omega_hat: Option<f64>,
    /// Spread of the estimates over unflagged repetitions.
    pub sample_std: Option<f64>,
    /// `1 / sqrt(nu F)` with `F` the classical Fisher information at `omega_true`.
    pub crb: f64,
    pub repetitions: usize,
    /// Repetitions whose outcome fraction could not be inverted.
    pub flagged: usize,
}

impl EstimationRun {
    pub fn valid(&self) -> usize {
        self.repetitions - self.flagged
    }

    pub fn bias(&self) -> Option<f64> {
        self.omega_hat.map(|w| w - self.omega_true)
    }
}

/// Draws `nu` outcomes per repetition at `omega_true`, inverts the observed
/// fraction of `+` outcomes and reports the estimator spread against the
/// Cramér-Rao bound.
///
/// The phase `2 S omega_true tau` must sit within `pi/4` of an odd multiple
/// of `pi/2`, the local-estimation window around the optimal working point.
/// Repetition `k` draws from RNG stream `k` of `seed`.
pub fn simulate_and_estimate(
    s: SpinQuantumNumber,
    noise: &OUNoise,
    tau: f64,
    omega_true: f64,
    nu: u64,
    repetitions: usize,
    seed: u64,
) -> Result<EstimationRun> {
    let measurement = BinaryMeasurement::new(s, noise, tau)?;
    simulate_with(&measurement, omega_true, nu, repetitions, seed)
}

pub fn simulate_with(
    measurement: &BinaryMeasurement,
    omega_true: f64,
    nu: u64,
    repetitions: usize,
    seed: u64,
) -> Result<EstimationRun> {
    if nu == 0 {
        return Err(Error::param("nu", "must be >= 1"));
    }
    if repetitions < MIN_REPETITIONS {
        return Err(Error::param(
            "repetitions",
            format!("need >= {MIN_REPETITIONS}, got {repetitions}"),
        ));
    }
    let theta = measurement.phase(omega_true);
    let offset = (theta - FRAC_PI_2).rem_euclid(PI);
    let distance = offset.min(PI - offset);
    if distance > FRAC_PI_4 + 1e-12 {
        return Err(Error::param(
            "omega_true",
            format!("phase {theta} is more than pi/4 from the working point"),
        ));
    }
    let (p_plus, _) = measurement.probabilities(omega_true);
    let crb = 1.0 / (nu as f64 * measurement.classical_fisher(omega_true)?).sqrt();

    let estimates: Vec<Option<f64>> = (0..repetitions as u64)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream_rng(seed, k);
            let hits = (0..nu).filter(|_| rng.random::<f64>() < p_plus).count();
            measurement.invert(hits as f64 / nu as f64, theta)
        })
        .collect();

    let valid: Vec<f64> = estimates.iter().flatten().copied().collect();
    let flagged = repetitions - valid.len();
    let omega_hat = (!valid.is_empty()).then(|| valid.iter().sum::<f64>() / valid.len() as f64);
    let sample_std = (valid.len() >= 2).then(|| {
        let mean = omega_hat.unwrap_or_default();
        let var = valid.iter().map(|w| (w - mean).powi(2)).sum::<f64>() / (valid.len() - 1) as f64;
        var.sqrt()
    });
    Ok(EstimationRun {
        nu,
        omega_true,
        omega_hat,
        sample_std,
        crb,
        repetitions,
        flagged,
    })
}
