//! Spin-S magnetometry under Ornstein-Uhlenbeck dephasing.
//!
//! The crate computes the quantum Fisher information (QFI) of a spin-S probe
//! whose Larmor frequency `omega` is to be estimated. It covers the
//! GHZ-like protocol `(|S> + |-S>)/sqrt(2)`, a generic spin-1 probe and
//! arbitrary density matrices. On top of that it provides decoherence-time
//! analysis, optimization of the QFI yield rate `R = max_tau F(tau)/tau`
//! over evolution time and initial state, power-law scaling fits, and a
//! simulated measurement whose maximum-likelihood estimator is checked
//! against the Cramér-Rao bound.
//!
//! Units: the gyromagnetic ratio is 1, so `omega`, the noise magnitude `b`
//! and the inverse times share one unit.

pub mod error;
pub mod measurement;
pub mod noise;
pub mod numeric;
pub mod optimize;
pub mod qfi;
pub mod report;
pub mod rng;
pub mod spin;
pub mod validate;

pub use error::{Error, Result};
pub use measurement::{
    classical_fisher, outcome_probability, simulate_and_estimate, BinaryMeasurement, EstimationRun,
};
pub use noise::{
    chi, chi_limit, classify, dd_chi, mc_coherence, sample_ou_path, t2, DDProfile, NoiseRegime,
    OUNoise, Regime, TimeLimit,
};
pub use optimize::{
    dd_scaling, fit_loglog_exponent, optimize_initial_state_spin1, sweep, yield_rate,
    yield_rate_asymptotic, StateOptResult, SweepParam, SweepTable, YieldResult,
};
pub use qfi::{
    drho_domega, min_error, qfi_generic, qfi_noisefree_ghz, qfi_noisy_ghz, qfi_spin1_closed,
    QfiMethod, QfiResult,
};
pub use spin::{
    dephase, evolve_noisefree, fidelity, ghz_like_state, spin1_param_state, sz_operator,
    DensityMatrix, PureState, Spin1Params, SpinQuantumNumber,
};
