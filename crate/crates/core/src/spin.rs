//! Spin-S states and operators in the S_z eigenbasis.
//!
//! Basis index `k = 0..=2S` corresponds to magnetic quantum number
//! `m = S - k`, so index 0 is `|+S>` and the last index is `|-S>`.
//! The gyromagnetic ratio is fixed to 1, which makes the Larmor frequency
//! `omega` the estimated parameter.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{ensure_non_negative, Error, Result};

const NORM_TOL: f64 = 1e-12;

/// Spin quantum number stored as `2S` so half-integers stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinQuantumNumber {
    two_s: u32,
}

impl serde::Serialize for SpinQuantumNumber {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl SpinQuantumNumber {
    pub const HALF: SpinQuantumNumber = SpinQuantumNumber { two_s: 1 };
    pub const ONE: SpinQuantumNumber = SpinQuantumNumber { two_s: 2 };

    pub fn from_twice(two_s: u32) -> Result<Self> {
        if two_s == 0 {
            return Err(Error::InvalidSpin("2S must be >= 1".into()));
        }
        Ok(Self { two_s })
    }

    /// Accepts `s` only when `2s` is a positive integer.
    pub fn from_f64(s: f64) -> Result<Self> {
        let doubled = 2.0 * s;
        if !doubled.is_finite() || doubled < 1.0 || doubled > u32::MAX as f64 {
            return Err(Error::InvalidSpin(format!("{s} is out of range")));
        }
        if (doubled - doubled.round()).abs() > 1e-9 {
            return Err(Error::InvalidSpin(format!("{s} is not a half-integer")));
        }
        Self::from_twice(doubled.round() as u32)
    }

    /// Nearest half-integer spin to `s`, never below 1/2.
    pub fn nearest(s: f64) -> Result<Self> {
        if !s.is_finite() || s <= 0.0 {
            return Err(Error::InvalidSpin(format!("{s} is out of range")));
        }
        let doubled = (2.0 * s).round().max(1.0);
        if doubled > u32::MAX as f64 {
            return Err(Error::InvalidSpin(format!("{s} is out of range")));
        }
        Self::from_twice(doubled as u32)
    }

    pub fn two_s(self) -> u32 {
        self.two_s
    }

    pub fn value(self) -> f64 {
        self.two_s as f64 / 2.0
    }

    /// `2S` as a float; the factor that multiplies signal and noise.
    pub fn twice(self) -> f64 {
        self.two_s as f64
    }

    pub fn dimension(self) -> usize {
        self.two_s as usize + 1
    }

    /// Magnetic quantum number for basis index `k`.
    pub fn m(self, k: usize) -> f64 {
        self.value() - k as f64
    }

    /// `m = S, S-1, ..., -S` in basis order.
    pub fn m_values(self) -> impl Iterator<Item = f64> {
        (0..self.dimension()).map(move |k| self.m(k))
    }
}

impl fmt::Display for SpinQuantumNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.two_s.is_multiple_of(2) {
            write!(f, "{}", self.two_s / 2)
        } else {
            write!(f, "{}/2", self.two_s)
        }
    }
}

impl FromStr for SpinQuantumNumber {
    type Err = Error;

    /// Parses `"3/2"`, `"4"` or `"1.5"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: u32 = num
                .trim()
                .parse()
                .map_err(|_| Error::InvalidSpin(format!("cannot parse `{s}`")))?;
            return match den.trim() {
                "1" => Self::from_twice(num.saturating_mul(2)),
                "2" => Self::from_twice(num),
                _ => Err(Error::InvalidSpin(format!("`{s}` is not a half-integer"))),
            };
        }
        let value: f64 = s
            .parse()
            .map_err(|_| Error::InvalidSpin(format!("cannot parse `{s}`")))?;
        Self::from_f64(value)
    }
}

/// Normalized state vector over the `2S+1` S_z eigenstates.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    spin: SpinQuantumNumber,
    amplitudes: DVector<Complex64>,
}

impl PureState {
    /// Validates length and normalization (to 1e-12).
    pub fn new(spin: SpinQuantumNumber, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != spin.dimension() {
            return Err(Error::DimensionMismatch {
                expected: spin.dimension(),
                actual: amplitudes.len(),
            });
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::param(
                "amplitudes",
                format!("state is not normalized (norm^2 = {norm_sqr})"),
            ));
        }
        Ok(Self {
            spin,
            amplitudes: DVector::from_vec(amplitudes),
        })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(spin: SpinQuantumNumber, amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::param("amplitudes", "zero or non-finite vector"));
        }
        Self::new(spin, amplitudes.into_iter().map(|a| a / norm).collect())
    }

    pub fn spin(&self) -> SpinQuantumNumber {
        self.spin
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, k: usize) -> Complex64 {
        self.amplitudes[k]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `|psi><psi|`.
    pub fn projector(&self) -> DensityMatrix {
        let psi = &self.amplitudes;
        DensityMatrix {
            spin: self.spin,
            entries: psi * psi.adjoint(),
        }
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix in the S_z basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    spin: SpinQuantumNumber,
    entries: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Checks Hermiticity and trace (1e-12) and positivity (eigenvalues >= -1e-10).
    pub fn new(spin: SpinQuantumNumber, entries: DMatrix<Complex64>) -> Result<Self> {
        let dim = spin.dimension();
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: entries.nrows().max(entries.ncols()),
            });
        }
        let deviation = hermitian_deviation(&entries);
        if deviation > NORM_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > NORM_TOL || trace.im.abs() > NORM_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace is {trace}")));
        }
        let min_eig = entries
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -1e-10 {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(Self { spin, entries })
    }

    pub fn spin(&self) -> SpinQuantumNumber {
        self.spin
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }
}

/// Largest entrywise `|A - A^dagger|`.
pub fn hermitian_deviation(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Parameters of the general spin-1 pure state
/// `cos(theta)|1> + e^{i lambda1} sin(theta)cos(phi)|0> + e^{i lambda2} sin(theta)sin(phi)|-1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spin1Params {
    pub theta: f64,
    pub phi: f64,
    pub lambda1: f64,
    pub lambda2: f64,
}

impl Spin1Params {
    pub fn new(theta: f64, phi: f64, lambda1: f64, lambda2: f64) -> Self {
        Self {
            theta,
            phi,
            lambda1,
            lambda2,
        }
    }

    /// Real-amplitude state with both relative phases zero.
    pub fn real(theta: f64, phi: f64) -> Self {
        Self::new(theta, phi, 0.0, 0.0)
    }

    /// The GHZ-like point `(pi/4, pi/2)`.
    pub fn ghz_like() -> Self {
        Self::real(std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_2)
    }

    /// S_z populations `(p_{+1}, p_0, p_{-1})`.
    pub fn populations(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [ct * ct, st * st * cp * cp, st * st * sp * sp]
    }
}

/// Diagonal S_z with entries `S, S-1, ..., -S`.
pub fn sz_operator(spin: SpinQuantumNumber) -> DMatrix<f64> {
    DMatrix::from_diagonal(&DVector::from_iterator(spin.dimension(), spin.m_values()))
}

/// `(|S> + |-S>)/sqrt(2)`.
pub fn ghz_like_state(spin: SpinQuantumNumber) -> PureState {
    let dim = spin.dimension();
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let a = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[0] = a;
    amps[dim - 1] = a;
    PureState {
        spin,
        amplitudes: DVector::from_vec(amps),
    }
}

pub fn spin1_param_state(p: Spin1Params) -> PureState {
    let (st, ct) = p.theta.sin_cos();
    let (sp, cp) = p.phi.sin_cos();
    let amps = vec![
        Complex64::new(ct, 0.0),
        Complex64::from_polar(st * cp, p.lambda1),
        Complex64::from_polar(st * sp, p.lambda2),
    ];
    PureState {
        spin: SpinQuantumNumber::ONE,
        amplitudes: DVector::from_vec(amps),
    }
}

/// Applies `exp(-i omega tau S_z)`.
pub fn evolve_noisefree(psi: &PureState, omega: f64, tau: f64) -> PureState {
    let spin = psi.spin;
    let amps = psi
        .amplitudes
        .iter()
        .enumerate()
        .map(|(k, a)| a * Complex64::from_polar(1.0, -spin.m(k) * omega * tau))
        .collect::<Vec<_>>();
    PureState {
        spin,
        amplitudes: DVector::from_vec(amps),
    }
}

/// Noise-averaged state after free precession under Gaussian z-dephasing:
/// `rho_mn = psi_m psi_n^* exp(-i (m-n) omega tau) exp(-(m-n)^2 chi)`.
///
/// `chi` is half the variance of the accumulated random phase.
pub fn dephase(psi: &PureState, omega: f64, tau: f64, chi: f64) -> Result<DensityMatrix> {
    ensure_non_negative("chi", chi)?;
    let spin = psi.spin;
    let dim = spin.dimension();
    let entries = DMatrix::from_fn(dim, dim, |i, j| {
        let dm = (j as f64) - (i as f64); // m_i - m_j
        psi.amplitudes[i]
            * psi.amplitudes[j].conj()
            * Complex64::from_polar((-dm * dm * chi).exp(), -dm * omega * tau)
    });
    Ok(DensityMatrix { spin, entries })
}

/// `|<a|b>|`.
pub fn fidelity(a: &PureState, b: &PureState) -> Result<f64> {
    if a.spin != b.spin {
        return Err(Error::DimensionMismatch {
            expected: a.spin.dimension(),
            actual: b.spin.dimension(),
        });
    }
    Ok(a.amplitudes.dotc(&b.amplitudes).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

    fn spin(two_s: u32) -> SpinQuantumNumber {
        SpinQuantumNumber::from_twice(two_s).unwrap()
    }

    #[test]
    fn spin_parsing_and_display() {
        assert_eq!("1/2".parse::<SpinQuantumNumber>().unwrap().two_s(), 1);
        assert_eq!("3/2".parse::<SpinQuantumNumber>().unwrap().two_s(), 3);
        assert_eq!("4".parse::<SpinQuantumNumber>().unwrap().two_s(), 8);
        assert_eq!("2.5".parse::<SpinQuantumNumber>().unwrap().two_s(), 5);
        assert_eq!("8/1".parse::<SpinQuantumNumber>().unwrap().two_s(), 16);
        assert!("0".parse::<SpinQuantumNumber>().is_err());
        assert!("0.3".parse::<SpinQuantumNumber>().is_err());
        assert!("1/3".parse::<SpinQuantumNumber>().is_err());
        assert!("-1".parse::<SpinQuantumNumber>().is_err());
        assert_eq!(spin(3).to_string(), "3/2");
        assert_eq!(spin(8).to_string(), "4");
        assert_eq!(spin(8).dimension(), 9);
        assert_eq!(SpinQuantumNumber::nearest(0.2).unwrap().two_s(), 1);
        assert_eq!(SpinQuantumNumber::nearest(7.3).unwrap().two_s(), 15);
    }

    #[test]
    fn sz_diagonals() {
        let half = sz_operator(spin(1));
        assert_eq!(
            half,
            DMatrix::from_diagonal(&DVector::from_vec(vec![0.5, -0.5]))
        );
        let one = sz_operator(spin(2));
        assert_eq!(one.diagonal().as_slice(), &[1.0, 0.0, -1.0]);
        let four = sz_operator(spin(8));
        assert_eq!(four.nrows(), 9);
        let expected: Vec<f64> = (0..9).map(|k| 4.0 - k as f64).collect();
        assert_eq!(four.diagonal().as_slice(), expected.as_slice());
        assert_eq!(four.iter().filter(|v| **v != 0.0).count(), 8);
    }

    #[test]
    fn ghz_amplitudes() {
        for two_s in [1, 2, 8] {
            let psi = ghz_like_state(spin(two_s));
            let dim = two_s as usize + 1;
            for k in 0..dim {
                let expected = if k == 0 || k == dim - 1 {
                    FRAC_1_SQRT_2
                } else {
                    0.0
                };
                assert_eq!(psi.amplitude(k), Complex64::new(expected, 0.0));
            }
            assert_abs_diff_eq!(psi.norm_sqr(), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn spin1_parameterization() {
        let ghz = spin1_param_state(Spin1Params::ghz_like());
        assert!((fidelity(&ghz, &ghz_like_state(spin(2))).unwrap() - 1.0).abs() < 1e-15);
        assert_abs_diff_eq!(ghz.amplitude(1).norm(), 0.0, epsilon = 1e-16);

        let up = spin1_param_state(Spin1Params::real(0.0, 1.3));
        assert_eq!(up.amplitude(0), Complex64::new(1.0, 0.0));

        let mixed = spin1_param_state(Spin1Params::real(FRAC_PI_4, FRAC_PI_4));
        assert_abs_diff_eq!(mixed.amplitude(0).re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(mixed.amplitude(1).re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(mixed.amplitude(2).re, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn evolution_phases() {
        let psi = ghz_like_state(spin(1));
        assert_eq!(evolve_noisefree(&psi, 0.0, 3.0), psi);
        assert_eq!(evolve_noisefree(&psi, 2.0, 0.0), psi);

        let flipped = evolve_noisefree(&psi, PI, 1.0);
        assert_abs_diff_eq!(fidelity(&psi, &flipped).unwrap(), 0.0, epsilon = 1e-15);

        // S=4, omega*tau = pi/8: relative phase 2S*omega*tau = pi.
        let psi4 = evolve_noisefree(&ghz_like_state(spin(8)), FRAC_PI_8, 1.0);
        let rel = psi4.amplitude(8) / psi4.amplitude(0);
        assert_abs_diff_eq!(rel.re, -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(rel.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn dephase_rejects_negative_chi() {
        let psi = ghz_like_state(spin(2));
        assert!(dephase(&psi, 0.0, 1.0, -1e-3).is_err());
        assert!(dephase(&psi, 0.0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn dephase_ghz_block() {
        let s = spin(8);
        let chi = 0.0113534;
        let rho = dephase(&ghz_like_state(s), 0.3, 0.2, chi).unwrap();
        let coherence = rho.get(0, 8);
        assert_abs_diff_eq!(coherence.norm(), 0.5 * (-64.0 * chi).exp(), epsilon = 1e-15);
        assert_abs_diff_eq!(coherence.arg(), -8.0 * 0.3 * 0.2, epsilon = 1e-14);
        assert_abs_diff_eq!(rho.get(0, 0).re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.get(8, 8).re, 0.5, epsilon = 1e-15);
        let off_support: f64 = (1..8).map(|k| rho.get(k, k).norm()).sum();
        assert_eq!(off_support, 0.0);
        DensityMatrix::new(s, rho.entries().clone()).unwrap();
    }

    #[test]
    fn dephase_spin1_damping_factors() {
        let psi = spin1_param_state(Spin1Params::real(FRAC_PI_4, FRAC_PI_4));
        let chi = 0.1;
        let pure = psi.projector();
        let rho = dephase(&psi, 0.0, 1.0, chi).unwrap();
        assert_abs_diff_eq!(
            rho.get(0, 2).norm(),
            pure.get(0, 2).norm() * (-0.4_f64).exp(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            rho.get(0, 1).norm(),
            pure.get(0, 1).norm() * (-0.1_f64).exp(),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            rho.get(1, 2).norm(),
            pure.get(1, 2).norm() * (-0.1_f64).exp(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn density_matrix_validation() {
        let s = spin(1);
        let bad_trace = DMatrix::from_diagonal_element(2, 2, Complex64::new(0.6, 0.0));
        assert!(DensityMatrix::new(s, bad_trace).is_err());
        let mut non_herm = DMatrix::from_diagonal_element(2, 2, Complex64::new(0.5, 0.0));
        non_herm[(0, 1)] = Complex64::new(0.1, 0.0);
        assert!(matches!(
            DensityMatrix::new(s, non_herm),
            Err(Error::NotHermitian { .. })
        ));
        let mut negative = DMatrix::from_diagonal_element(2, 2, Complex64::new(0.5, 0.0));
        negative[(0, 1)] = Complex64::new(0.9, 0.0);
        negative[(1, 0)] = Complex64::new(0.9, 0.0);
        assert!(DensityMatrix::new(s, negative).is_err());
    }

    #[test]
    fn fidelity_basics() {
        let s = spin(2);
        let up = PureState::new(
            s,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        let zero = PureState::new(
            s,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 1.0),
                Complex64::new(0.0, 0.0),
            ],
        )
        .unwrap();
        assert_abs_diff_eq!(fidelity(&up, &up).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(fidelity(&up, &zero).unwrap(), 0.0);
        assert!(fidelity(&up, &ghz_like_state(spin(1))).is_err());
        let phased = spin1_param_state(Spin1Params::new(FRAC_PI_4, FRAC_PI_2, 0.0, 0.0));
        assert_abs_diff_eq!(
            fidelity(&phased, &ghz_like_state(s)).unwrap(),
            1.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn pure_state_validation() {
        let s = spin(1);
        assert!(PureState::new(s, vec![Complex64::new(1.0, 0.0)]).is_err());
        assert!(
            PureState::new(s, vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]).is_err()
        );
        let n = PureState::normalized(s, vec![Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0)])
            .unwrap();
        assert_abs_diff_eq!(n.norm_sqr(), 1.0, epsilon = 1e-15);
    }
}
