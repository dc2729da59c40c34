//! Self-check suites run by `spin-qfi validate`.
//!
//! Each suite compares an implementation path with an independent route:
//! Monte Carlo noise paths against the closed-form coherence, the SLD sum
//! against the closed-form QFIs, simulated estimators against the
//! Cramér-Rao bound, and DD yield-rate fits against their power laws.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::measurement::{classical_fisher, simulate_and_estimate};
use crate::noise::{chi, default_mc_step, ghz_coherence, mc_coherence, DDProfile, OUNoise};
use crate::numeric::log_grid;
use crate::optimize::{dd_scaling, ghz_yield_rate};
use crate::qfi::{drho_domega, qfi_generic, qfi_noisy_ghz, qfi_spin1_closed};
use crate::rng::{stream_rng, RNG_ALGORITHM};
use crate::spin::{dephase, ghz_like_state, spin1_param_state, Spin1Params, SpinQuantumNumber};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Mc,
    Oracle,
    Estimator,
    Dd,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Mc => "mc",
            Suite::Oracle => "oracle",
            Suite::Estimator => "estimator",
            Suite::Dd => "dd",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mc" => Ok(Suite::Mc),
            "oracle" => Ok(Suite::Oracle),
            "estimator" => Ok(Suite::Estimator),
            "dd" => Ok(Suite::Dd),
            other => Err(Error::param("suite", format!("unknown suite `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    /// `|measured - expected| <= tolerance`.
    pub fn absolute(name: impl Into<String>, measured: f64, expected: f64, tolerance: f64) -> Self {
        let passed = (measured - expected).abs() <= tolerance;
        Self {
            name: name.into(),
            measured,
            expected,
            tolerance,
            passed,
        }
    }

    /// `|measured - expected| <= tolerance * |expected|`.
    pub fn relative(name: impl Into<String>, measured: f64, expected: f64, tolerance: f64) -> Self {
        let passed = (measured - expected).abs() <= tolerance * expected.abs();
        Self {
            name: name.into(),
            measured,
            expected,
            tolerance,
            passed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub suite: Suite,
    pub seed: u64,
    pub rng_algorithm: &'static str,
    pub passed: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidateOptions {
    pub seed: u64,
    /// Monte Carlo paths per grid point (`mc` suite).
    pub paths: usize,
    /// Random tuples per closed form (`oracle` suite).
    pub samples: usize,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        Self {
            seed: 42,
            paths: 20_000,
            samples: 200,
        }
    }
}

pub fn run_suite(suite: Suite, options: ValidateOptions) -> Result<ValidationReport> {
    let checks = match suite {
        Suite::Mc => mc_checks(options)?,
        Suite::Oracle => oracle_checks(options)?,
        Suite::Estimator => estimator_checks(options)?,
        Suite::Dd => dd_checks()?,
    };
    Ok(ValidationReport {
        suite,
        seed: options.seed,
        rng_algorithm: RNG_ALGORITHM,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn mc_checks(options: ValidateOptions) -> Result<Vec<Check>> {
    let grid: [(u32, f64, f64, f64); 6] = [
        (1, 1.0, 0.05, 5.0),
        (1, 1.0, 0.1, 1.0),
        (2, 1.0, 1.0, 0.5),
        (8, 1.0, 0.1, 0.2),
        (1, 1.0, 100.0, 1.2),
        (8, 1.0, 20.0, 0.1),
    ];
    let mut checks = Vec::new();
    for (i, &(two_s, b, tau_c, tau)) in grid.iter().enumerate() {
        let s = SpinQuantumNumber::from_twice(two_s)?;
        let noise = OUNoise::new(b, tau_c)?;
        let dt = default_mc_step(&noise, tau);
        let seed = options.seed.wrapping_add(i as u64);
        let mc = mc_coherence(s, &noise, tau, options.paths, dt, seed)?;
        let exact = ghz_coherence(s, &noise, tau)?;
        let label = format!("S={s} b={b} tau_c={tau_c} tau={tau}");
        checks.push(Check::absolute(
            format!("coherence re [{label}]"),
            mc.mean.re,
            exact,
            3.0 * mc.std_err_re,
        ));
        checks.push(Check::absolute(
            format!("coherence im [{label}]"),
            mc.mean.im,
            0.0,
            3.0 * mc.std_err_im,
        ));
    }
    Ok(checks)
}

fn oracle_checks(options: ValidateOptions) -> Result<Vec<Check>> {
    let mut rng = stream_rng(options.seed, 0);
    let spins = [1u32, 2, 3, 4, 8];
    let mut worst_ghz = 0.0_f64;
    for _ in 0..options.samples {
        let s = SpinQuantumNumber::from_twice(spins[rng.random_range(0..spins.len())])?;
        let noise = OUNoise::new(
            rng.random_range(0.1..3.0),
            10f64.powf(rng.random_range(-2.0..2.0)),
        )?;
        let tau = rng.random_range(0.01..1.0) / (s.value() * noise.b());
        let omega = rng.random_range(-3.0..3.0);
        let chi = chi(&noise, tau)?;
        let psi = ghz_like_state(s);
        let generic = qfi_generic(
            &dephase(&psi, omega, tau, chi)?,
            &drho_domega(&psi, omega, tau, chi)?,
        )?;
        let closed = qfi_noisy_ghz(s, &noise, tau)?;
        worst_ghz = worst_ghz.max((generic.value - closed.value).abs() / closed.value);
    }
    let mut worst_spin1 = 0.0_f64;
    let mut worst_phase = 0.0_f64;
    for _ in 0..options.samples {
        let theta = rng.random_range(0.05..FRAC_PI_2 - 0.05);
        let phi = rng.random_range(0.05..FRAC_PI_2 - 0.05);
        let chi = rng.random_range(0.01..2.0);
        let tau = rng.random_range(0.1..3.0);
        let omega = rng.random_range(-3.0..3.0);
        let (l1, l2) = (
            rng.random_range(0.0..2.0 * PI),
            rng.random_range(0.0..2.0 * PI),
        );
        let closed = qfi_spin1_closed(Spin1Params::real(theta, phi), chi, tau)?.value;
        let psi = spin1_param_state(Spin1Params::new(theta, phi, l1, l2));
        let generic = qfi_generic(
            &dephase(&psi, omega, tau, chi)?,
            &drho_domega(&psi, omega, tau, chi)?,
        )?
        .value;
        worst_spin1 = worst_spin1.max((generic - closed).abs() / closed);
        let psi0 = spin1_param_state(Spin1Params::real(theta, phi));
        let zero_phase = qfi_generic(
            &dephase(&psi0, omega, tau, chi)?,
            &drho_domega(&psi0, omega, tau, chi)?,
        )?
        .value;
        worst_phase = worst_phase.max((generic - zero_phase).abs());
    }
    Ok(vec![
        Check::absolute(
            "GHZ closed form vs SLD (max relative deviation)",
            worst_ghz,
            0.0,
            1e-8,
        ),
        Check::absolute(
            "spin-1 closed form vs SLD (max relative deviation)",
            worst_spin1,
            0.0,
            1e-8,
        ),
        Check::absolute(
            "spin-1 QFI phase dependence (max absolute change)",
            worst_phase,
            0.0,
            1e-10,
        ),
    ])
}

fn estimator_checks(options: ValidateOptions) -> Result<Vec<Check>> {
    let s = SpinQuantumNumber::from_twice(8)?;
    let noise = OUNoise::new(1.0, 0.1)?;
    let tau = ghz_yield_rate(s, &noise).tau_opt;
    let omega = FRAC_PI_2 / (s.twice() * tau);
    let cfi = classical_fisher(s, &noise, tau, omega)?;
    let qfi = qfi_noisy_ghz(s, &noise, tau)?.value;
    let nu = 10_000;
    let run = simulate_and_estimate(s, &noise, tau, omega, nu, 500, options.seed)?;
    let std = run.sample_std.unwrap_or(f64::NAN);
    let bias = run.bias().unwrap_or(f64::NAN);
    Ok(vec![
        Check::relative("CFI = QFI at the working point", cfi, qfi, 1e-12),
        Check::relative("MLE spread vs Cramer-Rao bound", std, run.crb, 0.05),
        Check::absolute(
            "MLE bias",
            bias,
            0.0,
            3.0 * std / (run.valid() as f64).sqrt(),
        ),
        Check::absolute("flagged repetitions", run.flagged as f64, 0.0, 0.0),
    ])
}

fn dd_checks() -> Result<Vec<Check>> {
    let quasi_static = OUNoise::new(1.0, 100.0)?;
    let markovian = OUNoise::new(1.0, 1e-6)?;
    let mut checks = Vec::new();
    for n in [2.0, 3.0, 4.0] {
        let profile = DDProfile::new(n)?;
        let qs = dd_scaling(&profile, &log_grid(10.0, 1e4, 16), &quasi_static)?;
        let slope = qs.quasi_static_fit.map(|f| f.slope).unwrap_or(f64::NAN);
        checks.push(Check::absolute(
            format!("DD n={n}: quasi-static exponent"),
            slope,
            2.0 - 2.0 / n,
            0.1,
        ));
        let mk = dd_scaling(&profile, &log_grid(0.5, 500.0, 16), &markovian)?;
        let slope = mk.markovian_fit.map(|f| f.slope).unwrap_or(f64::NAN);
        checks.push(Check::absolute(
            format!("DD n={n}: Markovian exponent"),
            slope,
            0.0,
            0.1,
        ));
    }
    Ok(checks)
}
