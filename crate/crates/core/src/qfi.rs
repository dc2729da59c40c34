//! Quantum Fisher information for the Larmor frequency `omega`.
//!
//! Three routes are provided: the GHZ closed forms, the spin-1 closed form,
//! and a generic symmetric-logarithmic-derivative sum over the eigenbasis of
//! an arbitrary density matrix, which serves as the oracle for the others.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{ensure_non_negative, Error, Result};
use crate::noise::{chi, OUNoise};
use crate::spin::{hermitian_deviation, DensityMatrix, PureState, Spin1Params, SpinQuantumNumber};

/// Default cutoff on `p_i + p_j` in the SLD sum.
pub const DEFAULT_EIGEN_CUTOFF: f64 = 1e-12;
const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QfiMethod {
    ClosedFormGhz,
    ClosedFormSpin1,
    GenericSld,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QfiResult {
    pub value: f64,
    pub method: QfiMethod,
}

impl QfiResult {
    fn new(value: f64, method: QfiMethod) -> Self {
        Self { value, method }
    }
}

/// `(2S)^2 tau^2`.
pub fn qfi_noisefree_ghz(s: SpinQuantumNumber, tau: f64) -> Result<QfiResult> {
    ensure_non_negative("tau", tau)?;
    Ok(QfiResult::new(
        ghz_qfi_from_chi(s, 0.0, tau),
        QfiMethod::ClosedFormGhz,
    ))
}

/// `(2S)^2 tau^2 exp(-2 (2S)^2 chi(tau))`; underflows cleanly to zero.
pub fn qfi_noisy_ghz(s: SpinQuantumNumber, noise: &OUNoise, tau: f64) -> Result<QfiResult> {
    let chi = chi(noise, tau)?;
    Ok(QfiResult::new(
        ghz_qfi_from_chi(s, chi, tau),
        QfiMethod::ClosedFormGhz,
    ))
}

/// GHZ QFI for an arbitrary dephasing exponent `chi`.
pub fn ghz_qfi_from_chi(s: SpinQuantumNumber, chi: f64, tau: f64) -> f64 {
    let k = s.twice();
    (k * tau).powi(2) * (-2.0 * k * k * chi).exp()
}

/// Closed-form QFI of the dephased spin-1 state.
///
/// Written in the S_z populations `a = p_{+1}`, `b = p_0`, `c = p_{-1}` and
/// `r = exp(-2 chi)`, which is the cotangent form multiplied through by
/// `sin^4(theta) sin^4(phi)` and `exp(-12 chi)`:
///
/// `F = 4 tau^2 e^{-2 chi} N(r) / D(r)`.
///
/// The denominator only vanishes for S_z eigenstates, whose QFI is zero.
/// The relative phases `lambda1, lambda2` do not enter.
pub fn qfi_spin1_closed(p: Spin1Params, chi: f64, tau: f64) -> Result<QfiResult> {
    ensure_non_negative("chi", chi)?;
    ensure_non_negative("tau", tau)?;
    Ok(QfiResult::new(
        spin1_qfi_from_populations(p.populations(), chi, tau),
        QfiMethod::ClosedFormSpin1,
    ))
}

pub(crate) fn spin1_qfi_from_populations(pops: [f64; 3], chi: f64, tau: f64) -> f64 {
    let [a, b, c] = pops;
    let r = (-2.0 * chi).exp();
    let (r2, r3) = (r * r, r * r * r);
    let (a2, b2, c2) = (a * a, b * b, c * c);

    let numerator = a2 * b2
        + 2.0 * a2 * b * c * (1.0 + r + 2.0 * r3)
        + 4.0 * a2 * c2 * r3 * (1.0 + r + r2 + r3)
        + 2.0 * a * b2 * c * (1.0 + 2.0 * r - 2.0 * r2)
        + 2.0 * a * b * c2 * (1.0 + r + 2.0 * r3)
        + b2 * c2;
    let denominator = a2 * b
        + a2 * c * (1.0 + r + r2 + r3)
        + a * b2
        + 2.0 * a * b * c * (1.0 + r + r2)
        + a * c2 * (1.0 + r + r2 + r3)
        + b2 * c
        + b * c2;
    if denominator <= 0.0 || !denominator.is_finite() {
        return 0.0;
    }
    4.0 * tau * tau * (-2.0 * chi).exp() * numerator / denominator
}

/// Generic QFI `sum_{p_i + p_j > eps} 2 |<i| d rho |j>|^2 / (p_i + p_j)`.
pub fn qfi_generic(rho: &DensityMatrix, drho: &DMatrix<Complex64>) -> Result<QfiResult> {
    qfi_generic_with_cutoff(rho, drho, DEFAULT_EIGEN_CUTOFF)
}

pub fn qfi_generic_with_cutoff(
    rho: &DensityMatrix,
    drho: &DMatrix<Complex64>,
    cutoff: f64,
) -> Result<QfiResult> {
    let dim = rho.spin().dimension();
    if drho.nrows() != dim || drho.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: drho.nrows().max(drho.ncols()),
        });
    }
    for m in [rho.entries(), drho] {
        let deviation = hermitian_deviation(m);
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
    }
    let eig = rho.entries().clone().symmetric_eigen();
    let basis = &eig.eigenvectors;
    let d = basis.adjoint() * drho * basis;
    let p = &eig.eigenvalues;
    let mut total = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let denom = p[i] + p[j];
            if denom > cutoff {
                total += 2.0 * d[(i, j)].norm_sqr() / denom;
            }
        }
    }
    Ok(QfiResult::new(total.max(0.0), QfiMethod::GenericSld))
}

/// `d rho / d omega` of [`crate::spin::dephase`]: entry `(m, n)` times `-i (m - n) tau`.
pub fn drho_domega(psi: &PureState, omega: f64, tau: f64, chi: f64) -> Result<DMatrix<Complex64>> {
    let rho = crate::spin::dephase(psi, omega, tau, chi)?;
    let dim = rho.spin().dimension();
    Ok(DMatrix::from_fn(dim, dim, |i, j| {
        let dm = (j as f64) - (i as f64);
        rho.get(i, j) * Complex64::new(0.0, -dm * tau)
    }))
}

/// Cramér-Rao error `1 / sqrt(nu F)`.
pub fn min_error(f: &QfiResult, nu: u64) -> Result<f64> {
    if !(f.value.is_finite() && f.value > 0.0) {
        return Err(Error::param("qfi", format!("must be > 0, got {}", f.value)));
    }
    if nu == 0 {
        return Err(Error::param("nu", "must be >= 1"));
    }
    Ok(1.0 / (nu as f64 * f.value).sqrt())
}
