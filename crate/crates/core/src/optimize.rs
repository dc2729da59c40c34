//! Protocol optimization on top of the QFI.
//!
//! With a total time budget `T` split into `T / tau` repetitions, the
//! Cramér-Rao error is `1 / sqrt(T F(tau) / tau)`, so the figure of merit is
//! the yield rate `R = max_tau F(tau) / tau` and `delta_omega sqrt(T) = 1/sqrt(R)`.

use std::f64::consts::{E, FRAC_PI_2, SQRT_2};
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{ensure_positive, Error, Result};
use crate::noise::{
    chi_unchecked, classify, dd_chi_unchecked, decoherence_time, regime_for, t2, DDProfile,
    NoiseRegime, OUNoise, Regime,
};
use crate::numeric::{log_scan_max, nelder_mead_max, ScanMax};
use crate::qfi::{ghz_qfi_from_chi, spin1_qfi_from_populations};
use crate::spin::{fidelity, ghz_like_state, spin1_param_state, Spin1Params, SpinQuantumNumber};

/// Grid points of the coarse `tau` scan.
pub const SCAN_POINTS: usize = 200;
/// The scan covers `[T2 / SCAN_SPAN, T2 * SCAN_SPAN]`.
pub const SCAN_SPAN: f64 = 100.0;
/// Relative tolerance of the golden-section refinement in `tau`.
pub const TAU_REL_TOL: f64 = 1e-8;

/// Fit windows: rows with `2 S b tau_c` at most this are fitted as Markovian.
pub const MARKOVIAN_FIT_MAX: f64 = 0.01;
/// Rows with `2 S b tau_c` at least this are fitted as quasi-static.
pub const QUASI_STATIC_FIT_MIN: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum YieldMethod {
    Numeric,
    AsymptoticQuasiStatic,
    AsymptoticMarkovian,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct YieldResult {
    pub rate: f64,
    pub tau_opt: f64,
    pub regime: NoiseRegime,
    pub method: YieldMethod,
    /// The coarse scan peaked on its first or last point.
    pub on_boundary: bool,
}

impl YieldResult {
    /// `delta_omega_min * sqrt(T) = 1 / sqrt(R)`.
    pub fn precision_per_unit_time(&self) -> f64 {
        1.0 / self.rate.sqrt()
    }
}

/// Maximizes `qfi_curve(tau) / tau`, scanning two decades either side of
/// the decoherence time of `(s, noise)`.
pub fn yield_rate<F>(s: SpinQuantumNumber, noise: &OUNoise, qfi_curve: F) -> YieldResult
where
    F: Fn(f64) -> f64,
{
    yield_rate_around(qfi_curve, t2(s, noise), classify(s, noise))
}

/// [`yield_rate`] with an explicit time scale for the scan.
pub fn yield_rate_around<F>(qfi_curve: F, tau_scale: f64, regime: NoiseRegime) -> YieldResult
where
    F: Fn(f64) -> f64,
{
    let ScanMax {
        arg,
        value,
        on_boundary,
    } = log_scan_max(
        |tau| qfi_curve(tau) / tau,
        tau_scale / SCAN_SPAN,
        tau_scale * SCAN_SPAN,
        SCAN_POINTS,
        TAU_REL_TOL,
    );
    YieldResult {
        rate: value,
        tau_opt: arg,
        regime,
        method: YieldMethod::Numeric,
        on_boundary,
    }
}

/// Yield rate of the GHZ-like protocol.
pub fn ghz_yield_rate(s: SpinQuantumNumber, noise: &OUNoise) -> YieldResult {
    yield_rate(s, noise, |tau| {
        ghz_qfi_from_chi(s, chi_unchecked(noise, tau), tau)
    })
}

/// Closed-form GHZ yield rate deep in either limiting regime:
/// quasi-static `sqrt(2/e) S / b` at `tau = 1/(2 sqrt(2) S b)`,
/// Markovian `1/(2 e b^2 tau_c)` at `tau = 1/(2 (2 S b)^2 tau_c)`.
pub fn yield_rate_asymptotic(
    s: SpinQuantumNumber,
    noise: &OUNoise,
    regime: Regime,
) -> Result<YieldResult> {
    let b = noise.b();
    let k = s.twice();
    let (rate, tau_opt, method) = match regime {
        Regime::QuasiStatic => (
            (2.0 / E).sqrt() * s.value() / b,
            1.0 / (SQRT_2 * k * b),
            YieldMethod::AsymptoticQuasiStatic,
        ),
        Regime::Markovian => (
            1.0 / (2.0 * E * b * b * noise.tau_c()),
            1.0 / (2.0 * (k * b).powi(2) * noise.tau_c()),
            YieldMethod::AsymptoticMarkovian,
        ),
        Regime::Intermediate => {
            return Err(Error::param(
                "regime",
                "no closed form in the intermediate regime",
            ))
        }
    };
    Ok(YieldResult {
        rate,
        tau_opt,
        regime: classify(s, noise),
        method,
        on_boundary: false,
    })
}

/// Largest QFI along a curve (not the rate), scanned around `tau_scale`.
pub fn peak_qfi<F>(qfi_curve: F, tau_scale: f64) -> ScanMax
where
    F: Fn(f64) -> f64,
{
    log_scan_max(
        qfi_curve,
        tau_scale / SCAN_SPAN,
        tau_scale * SCAN_SPAN,
        SCAN_POINTS,
        TAU_REL_TOL,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    S,
    B,
    TauC,
}

impl SweepParam {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepParam::S => "s",
            SweepParam::B => "b",
            SweepParam::TauC => "tau-c",
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s" => Ok(SweepParam::S),
            "b" => Ok(SweepParam::B),
            "tau-c" | "tau_c" | "tauc" => Ok(SweepParam::TauC),
            other => Err(Error::param(
                "param",
                format!("unknown sweep parameter `{other}`"),
            )),
        }
    }
}

/// Values held fixed while one parameter is swept; the swept one is ignored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepFixed {
    pub s: SpinQuantumNumber,
    pub b: f64,
    pub tau_c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub value: f64,
    pub rate: f64,
    pub tau_opt: f64,
    pub markov_param: f64,
    pub regime: Regime,
    pub on_boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    /// Largest `|ln R - fit|` inside the window.
    pub max_residual: f64,
    pub window: Range<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub param: SweepParam,
    pub rows: Vec<SweepRow>,
    pub markovian_fit: Option<ExponentFit>,
    pub quasi_static_fit: Option<ExponentFit>,
}

impl SweepTable {
    fn from_rows(param: SweepParam, rows: Vec<SweepRow>) -> Result<Self> {
        let mut table = SweepTable {
            param,
            rows,
            markovian_fit: None,
            quasi_static_fit: None,
        };
        if let Some(w) = table.window(|p| p <= MARKOVIAN_FIT_MAX) {
            table.markovian_fit = Some(fit_loglog_exponent(&table, w)?);
        }
        if let Some(w) = table.window(|p| p >= QUASI_STATIC_FIT_MIN) {
            table.quasi_static_fit = Some(fit_loglog_exponent(&table, w)?);
        }
        Ok(table)
    }

    /// Longest contiguous run of rows whose Markovianity parameter satisfies
    /// `pred`, if it has at least four rows.
    pub fn window<P>(&self, pred: P) -> Option<Range<usize>>
    where
        P: Fn(f64) -> bool,
    {
        let mut best: Option<Range<usize>> = None;
        let mut start = None;
        for i in 0..=self.rows.len() {
            let inside = i < self.rows.len() && pred(self.rows[i].markov_param);
            match (inside, start) {
                (true, None) => start = Some(i),
                (false, Some(s)) => {
                    if best.as_ref().is_none_or(|b| i - s > b.len()) {
                        best = Some(s..i);
                    }
                    start = None;
                }
                _ => {}
            }
        }
        best.filter(|w| w.len() >= 4)
    }
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.len() < 8 {
        return Err(Error::param(
            "grid",
            format!("need >= 8 points, got {}", grid.len()),
        ));
    }
    for &v in grid {
        ensure_positive("grid", v)?;
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::param("grid", "must be strictly increasing"));
    }
    Ok(())
}

/// Spins nearest to each grid value, with repeats removed.
fn spin_grid(grid: &[f64]) -> Result<Vec<SpinQuantumNumber>> {
    let mut spins: Vec<SpinQuantumNumber> = Vec::with_capacity(grid.len());
    for &v in grid {
        let s = SpinQuantumNumber::nearest(v)?;
        if spins.last() != Some(&s) {
            spins.push(s);
        }
    }
    Ok(spins)
}

/// One GHZ yield-rate row per grid value of `param`, plus log-log exponent
/// fits over the Markovian and quasi-static windows.
///
/// For an `S` sweep, grid values are rounded to the nearest half-integer and
/// duplicates dropped. Rows are computed in parallel and kept in grid order.
pub fn sweep(param: SweepParam, grid: &[f64], fixed: SweepFixed) -> Result<SweepTable> {
    check_grid(grid)?;
    let points: Vec<(f64, SpinQuantumNumber, OUNoise)> = match param {
        SweepParam::S => {
            let noise = OUNoise::new(fixed.b, fixed.tau_c)?;
            spin_grid(grid)?
                .into_iter()
                .map(|s| (s.value(), s, noise))
                .collect()
        }
        SweepParam::B => grid
            .iter()
            .map(|&b| Ok((b, fixed.s, OUNoise::new(b, fixed.tau_c)?)))
            .collect::<Result<_>>()?,
        SweepParam::TauC => grid
            .iter()
            .map(|&tc| Ok((tc, fixed.s, OUNoise::new(fixed.b, tc)?)))
            .collect::<Result<_>>()?,
    };
    let rows = points
        .par_iter()
        .map(|&(value, s, noise)| {
            let y = ghz_yield_rate(s, &noise);
            SweepRow {
                value,
                rate: y.rate,
                tau_opt: y.tau_opt,
                markov_param: y.regime.markov_param,
                regime: y.regime.regime,
                on_boundary: y.on_boundary,
            }
        })
        .collect();
    SweepTable::from_rows(param, rows)
}

/// Least-squares slope of `ln R` against `ln value` over `window`.
pub fn fit_loglog_exponent(table: &SweepTable, window: Range<usize>) -> Result<ExponentFit> {
    if window.end > table.rows.len() || window.len() < 4 {
        return Err(Error::InvalidFitWindow(format!(
            "window {:?} needs >= 4 rows inside 0..{}",
            window,
            table.rows.len()
        )));
    }
    let rows = &table.rows[window.clone()];
    if let Some(bad) = rows
        .iter()
        .find(|r| r.rate.is_nan() || r.rate <= 0.0 || r.value.is_nan() || r.value <= 0.0)
    {
        return Err(Error::InvalidFitWindow(format!(
            "non-positive rate {} at value {}",
            bad.rate, bad.value
        )));
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.value.ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.rate.ln()).collect();
    let (slope, intercept, max_residual) = linear_fit(&xs, &ys);
    Ok(ExponentFit {
        slope,
        intercept,
        max_residual,
        window,
    })
}

/// Ordinary least squares `y = slope x + intercept` on centred data.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let max_residual = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - (slope * x + intercept)).abs())
        .fold(0.0, f64::max);
    (slope, intercept, max_residual)
}

/// Search settings for [`optimize_initial_state_spin1_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateOptConfig {
    /// Grid points per axis on `(0, pi/2)`.
    pub grid: usize,
    /// Number of best grid points refined by the simplex.
    pub starts: usize,
    pub x_tol: f64,
}

impl Default for StateOptConfig {
    fn default() -> Self {
        Self {
            grid: 64,
            starts: 5,
            x_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateOptResult {
    pub theta_opt: f64,
    pub phi_opt: f64,
    pub tau_opt: f64,
    pub r_max: f64,
    pub r_ghz: f64,
    pub fidelity_with_ghz: f64,
}

/// Yield rate of the real spin-1 state `(theta, phi)`; relative phases do not
/// affect the QFI and are left at zero.
pub fn spin1_yield_rate(noise: &OUNoise, theta: f64, phi: f64) -> YieldResult {
    let s = SpinQuantumNumber::ONE;
    let pops = Spin1Params::real(theta, phi).populations();
    yield_rate(s, noise, |tau| {
        spin1_qfi_from_populations(pops, chi_unchecked(noise, tau), tau)
    })
}

pub fn optimize_initial_state_spin1(noise: &OUNoise) -> StateOptResult {
    optimize_initial_state_spin1_with(noise, StateOptConfig::default())
}

/// Maximizes the spin-1 yield rate over `(theta, phi)`: grid search, then
/// Nelder-Mead from the best grid points and from the GHZ-like point.
pub fn optimize_initial_state_spin1_with(
    noise: &OUNoise,
    config: StateOptConfig,
) -> StateOptResult {
    let ghz = Spin1Params::ghz_like();
    let r_ghz = spin1_yield_rate(noise, ghz.theta, ghz.phi).rate;
    let objective = |x: &[f64]| spin1_yield_rate(noise, x[0], x[1]).rate;

    let n = config.grid.max(1);
    let h = FRAC_PI_2 / n as f64;
    let mut candidates: Vec<(f64, [f64; 2])> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let x = [
                (idx / n) as f64 * h + 0.5 * h,
                (idx % n) as f64 * h + 0.5 * h,
            ];
            (objective(&x), x)
        })
        .collect();
    candidates.sort_by(|a, b| b.0.total_cmp(&a.0));
    candidates.truncate(config.starts);
    candidates.push((r_ghz, [ghz.theta, ghz.phi]));

    let best = candidates
        .par_iter()
        .map(|(_, start)| {
            nelder_mead_max(
                objective,
                start,
                0.25 * h.max(0.01),
                config.x_tol,
                1e-13 * r_ghz.abs(),
                2000,
            )
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(None, |best: Option<(f64, Vec<f64>)>, r| match best {
            Some(b) if b.0 >= r.value => Some(b),
            _ => Some((r.value, r.x)),
        })
        .expect("at least one start");

    let (r_max, x) = if best.0 >= r_ghz {
        best
    } else {
        (r_ghz, vec![ghz.theta, ghz.phi])
    };
    let theta = fold_to_quadrant(x[0]);
    let phi = fold_to_quadrant(x[1]);
    let tau_opt = spin1_yield_rate(noise, theta, phi).tau_opt;
    let fidelity_with_ghz = fidelity(
        &spin1_param_state(Spin1Params::real(theta, phi)),
        &ghz_like_state(SpinQuantumNumber::ONE),
    )
    .expect("both spin-1");
    StateOptResult {
        theta_opt: theta,
        phi_opt: phi,
        tau_opt,
        r_max,
        r_ghz,
        fidelity_with_ghz,
    }
}

/// Angle in `[0, pi/2]` with the same `|sin|` and `|cos|`; populations only
/// depend on those.
fn fold_to_quadrant(angle: f64) -> f64 {
    let (s, c) = angle.sin_cos();
    s.abs().atan2(c.abs())
}

/// GHZ yield rate against `S` with the DD-modified dephasing exponent.
pub fn dd_scaling(profile: &DDProfile, s_grid: &[f64], noise: &OUNoise) -> Result<SweepTable> {
    check_grid(s_grid)?;
    let spins = spin_grid(s_grid)?;
    let rows = spins
        .par_iter()
        .map(|&s| {
            let dd = |tau: f64| dd_chi_unchecked(noise, profile, tau);
            let scale = decoherence_time(s, dd, t2(s, noise));
            let y = yield_rate_around(
                |tau| ghz_qfi_from_chi(s, dd(tau), tau),
                scale,
                regime_for(noise.markov_param(s)),
            );
            SweepRow {
                value: s.value(),
                rate: y.rate,
                tau_opt: y.tau_opt,
                markov_param: y.regime.markov_param,
                regime: y.regime.regime,
                on_boundary: y.on_boundary,
            }
        })
        .collect();
    SweepTable::from_rows(SweepParam::S, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::log_grid;

    fn spin(two_s: u32) -> SpinQuantumNumber {
        SpinQuantumNumber::from_twice(two_s).unwrap()
    }

    #[test]
    fn asymptotic_closed_forms() {
        let qs = yield_rate_asymptotic(
            spin(2),
            &OUNoise::new(1.0, 1e3).unwrap(),
            Regime::QuasiStatic,
        )
        .unwrap();
        assert!((qs.rate - 0.857_763_884_960_706_7).abs() < 1e-12);
        let mk = yield_rate_asymptotic(
            spin(1),
            &OUNoise::new(1.0, 1e-3).unwrap(),
            Regime::Markovian,
        )
        .unwrap();
        assert!((mk.rate - 183.939_720_585_721_2).abs() < 1e-9);
        assert!(yield_rate_asymptotic(
            spin(1),
            &OUNoise::new(1.0, 1.0).unwrap(),
            Regime::Intermediate
        )
        .is_err());
    }

    #[test]
    fn tau_opt_is_half_t2_in_both_limits() {
        for (two_s, tau_c) in [(1, 1e3), (8, 100.0), (1, 1e-3), (4, 1e-4)] {
            let s = spin(two_s);
            let noise = OUNoise::new(1.0, tau_c).unwrap();
            let y = ghz_yield_rate(s, &noise);
            let ratio = y.tau_opt / t2(s, &noise);
            assert!(
                (ratio - 0.5).abs() < 0.01,
                "2S={two_s} tau_c={tau_c}: {ratio}"
            );
            assert!(!y.on_boundary);
        }
    }

    #[test]
    fn yield_rate_flags_boundary_maximum() {
        let s = spin(1);
        let noise = OUNoise::new(1.0, 1.0).unwrap();
        // F(tau)/tau = tau^3 keeps growing: maximum sits on the right edge.
        let y = yield_rate(s, &noise, |tau| tau.powi(4));
        assert!(y.on_boundary);
    }

    #[test]
    fn precision_per_unit_time() {
        let y = ghz_yield_rate(spin(2), &OUNoise::new(1.0, 1.0).unwrap());
        assert!((y.precision_per_unit_time() * y.rate.sqrt() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn power_law_fit_is_exact() {
        let rows = log_grid(0.1, 100.0, 9)
            .into_iter()
            .map(|x| SweepRow {
                value: x,
                rate: 3.0 * x.powf(-1.7),
                tau_opt: 1.0,
                markov_param: 1.0,
                regime: Regime::Intermediate,
                on_boundary: false,
            })
            .collect::<Vec<_>>();
        let table = SweepTable {
            param: SweepParam::B,
            rows: rows.clone(),
            markovian_fit: None,
            quasi_static_fit: None,
        };
        let fit = fit_loglog_exponent(&table, 0..9).unwrap();
        assert!((fit.slope + 1.7).abs() < 1e-10);
        assert!((fit.intercept - 3f64.ln()).abs() < 1e-10);

        let flat = SweepTable {
            rows: rows.iter().map(|r| SweepRow { rate: 2.5, ..*r }).collect(),
            ..table.clone()
        };
        assert!(fit_loglog_exponent(&flat, 2..7).unwrap().slope.abs() < 1e-12);

        assert!(fit_loglog_exponent(&table, 0..3).is_err());
        assert!(fit_loglog_exponent(&table, 5..12).is_err());
        let mut negative = table.clone();
        negative.rows[4].rate = 0.0;
        assert!(matches!(
            fit_loglog_exponent(&negative, 0..9),
            Err(Error::InvalidFitWindow(_))
        ));
    }

    #[test]
    fn sweep_rejects_short_or_unsorted_grids() {
        let fixed = SweepFixed {
            s: spin(1),
            b: 1.0,
            tau_c: 1.0,
        };
        assert!(sweep(SweepParam::B, &[1.0, 2.0, 3.0], fixed).is_err());
        let mut g = log_grid(0.1, 10.0, 9);
        g.swap(2, 3);
        assert!(sweep(SweepParam::B, &g, fixed).is_err());
    }

    #[test]
    fn spin_sweep_rounds_and_deduplicates() {
        let fixed = SweepFixed {
            s: spin(1),
            b: 1.0,
            tau_c: 1.0,
        };
        let table = sweep(SweepParam::S, &log_grid(0.5, 3.0, 12), fixed).unwrap();
        let values: Vec<f64> = table.rows.iter().map(|r| r.value).collect();
        assert_eq!(values, vec![0.5, 1.0, 1.5, 2.0, 2.5, 3.0]);
    }

    #[test]
    fn sweep_param_parsing() {
        assert_eq!("tau-c".parse::<SweepParam>().unwrap(), SweepParam::TauC);
        assert_eq!("S".parse::<SweepParam>().unwrap(), SweepParam::S);
        assert!("omega".parse::<SweepParam>().is_err());
    }

    #[test]
    fn ghz_rate_is_unimodal() {
        for (two_s, b, tau_c) in [
            (1, 1.0, 1e-3),
            (8, 1.0, 0.1),
            (2, 3.0, 10.0),
            (40, 0.2, 1.0),
        ] {
            let s = spin(two_s);
            let noise = OUNoise::new(b, tau_c).unwrap();
            let t = t2(s, &noise);
            let values: Vec<f64> = log_grid(t / SCAN_SPAN, t * SCAN_SPAN, SCAN_POINTS)
                .into_iter()
                .map(|tau| ghz_qfi_from_chi(s, chi_unchecked(&noise, tau), tau) / tau)
                .collect();
            let signs: Vec<bool> = values.windows(2).map(|w| w[1] > w[0]).collect();
            let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
            assert_eq!(changes, 1, "2S={two_s} b={b} tau_c={tau_c}");
        }
    }

    #[test]
    fn state_optimum_never_below_ghz() {
        let noise = OUNoise::new(1.0, 0.3).unwrap();
        let r = optimize_initial_state_spin1_with(
            &noise,
            StateOptConfig {
                grid: 12,
                starts: 2,
                x_tol: 1e-6,
            },
        );
        assert!(r.r_max >= r.r_ghz - 1e-9);
        assert!((0.0..=FRAC_PI_2).contains(&r.theta_opt));
        assert!((0.0..=FRAC_PI_2).contains(&r.phi_opt));
        assert!(r.fidelity_with_ghz <= 1.0 + 1e-12);
    }

    #[test]
    fn fold_keeps_populations() {
        for &a in &[-2.0, -0.3, 0.4, 1.9, 3.5, 7.0] {
            let f = fold_to_quadrant(a);
            assert!((0.0..=FRAC_PI_2).contains(&f));
            assert!((f.cos().powi(2) - a.cos().powi(2)).abs() < 1e-14);
        }
    }
}
