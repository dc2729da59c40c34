//! Small derivative-free solvers: bisection, golden-section search,
//! grid scans and a Nelder-Mead simplex.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// `n` logarithmically spaced values from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        hi
                    } else {
                        (a + (b - a) * i as f64 / (n - 1) as f64).exp()
                    }
                })
                .collect()
        }
    }
}

/// `n` evenly spaced values from `lo` to `hi` inclusive.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Root of an increasing function on `[lo, hi]` with `f(lo) <= 0 <= f(hi)`,
/// bisected until the bracket is narrower than `rel_tol * hi`.
pub fn bisect_increasing<F>(mut f: F, mut lo: f64, mut hi: f64, rel_tol: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    for _ in 0..200 {
        if hi - lo <= rel_tol * hi.abs() {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Maximizer of a unimodal `f` on `[a, b]`, located to absolute tolerance `tol`.
pub fn golden_section_max<F>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    // The midpoint can lose to a probe point on flat or rounding-dominated tops.
    [(x, fx), (c, fc), (d, fd)].into_iter().fold(
        (x, fx),
        |best, cand| if cand.1 > best.1 { cand } else { best },
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanMax {
    pub arg: f64,
    pub value: f64,
    /// Grid maximum sat on the first or last grid point.
    pub on_boundary: bool,
}

/// Maximizes `f` over `[lo, hi]` (both > 0): a log-spaced scan with
/// `points` nodes, then golden-section refinement in `ln x` around the best
/// node to relative tolerance `rel_tol`.
pub fn log_scan_max<F>(mut f: F, lo: f64, hi: f64, points: usize, rel_tol: f64) -> ScanMax
where
    F: FnMut(f64) -> f64,
{
    let grid = log_grid(lo, hi, points.max(3));
    let values: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    let best = values
        .iter()
        .enumerate()
        .fold(0, |best, (i, v)| if *v > values[best] { i } else { best });
    let last = grid.len() - 1;
    let on_boundary = best == 0 || best == last;
    let left = grid[best.saturating_sub(1)].ln();
    let right = grid[(best + 1).min(last)].ln();
    let (ln_x, value) = golden_section_max(|u| f(u.exp()), left, right, rel_tol);
    if value >= values[best] {
        ScanMax {
            arg: ln_x.exp(),
            value,
            on_boundary,
        }
    } else {
        ScanMax {
            arg: grid[best],
            value: values[best],
            on_boundary,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

/// Nelder-Mead maximization with standard coefficients.
///
/// Stops when the simplex diameter drops below `x_tol` and the spread of
/// objective values below `f_tol`, or after `max_iter` iterations.
pub fn nelder_mead_max<F>(
    mut f: F,
    start: &[f64],
    step: f64,
    x_tol: f64,
    f_tol: f64,
    max_iter: usize,
) -> SimplexResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = start.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((start.to_vec(), f(start)));
    for i in 0..n {
        let mut x = start.to_vec();
        x[i] += step;
        let v = f(&x);
        simplex.push((x, v));
    }

    let mut iterations = 0;
    while iterations < max_iter {
        // Descending by objective: best first.
        simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
        let spread = simplex[0].1 - simplex[n].1;
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| {
                x.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max);
        if diameter < x_tol && spread.abs() <= f_tol {
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64)
            .collect();
        let along = |t: f64, worst: &[f64]| -> Vec<f64> {
            centroid
                .iter()
                .zip(worst)
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };

        let worst = simplex[n].0.clone();
        let reflected = along(-1.0, &worst);
        let fr = f(&reflected);
        if fr > simplex[0].1 {
            let expanded = along(-2.0, &worst);
            let fe = f(&expanded);
            simplex[n] = if fe > fr {
                (expanded, fe)
            } else {
                (reflected, fr)
            };
            continue;
        }
        if fr > simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
            continue;
        }
        let (contracted, fc) = if fr > simplex[n].1 {
            let x = along(-0.5, &worst);
            let v = f(&x);
            (x, v)
        } else {
            let x = along(0.5, &worst);
            let v = f(&x);
            (x, v)
        };
        if fc > simplex[n].1.max(fr) {
            simplex[n] = (contracted, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for (x, v) in simplex.iter_mut().skip(1) {
            for (xi, bi) in x.iter_mut().zip(&best) {
                *xi = bi + 0.5 * (*xi - bi);
            }
            *v = f(x);
        }
    }
    simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
    let (x, value) = simplex.swap_remove(0);
    SimplexResult {
        x,
        value,
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let g = log_grid(1e-3, 1e3, 7);
        assert_eq!(g.len(), 7);
        assert_eq!(g[6], 1e3);
        assert!((g[3] - 1.0).abs() < 1e-12);
        assert_eq!(log_grid(2.0, 5.0, 1), vec![2.0]);
        assert_eq!(linear_grid(0.0, 1.0, 5), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    }

    #[test]
    fn bisection_finds_sqrt2() {
        let r = bisect_increasing(|x| x * x - 2.0, 0.0, 2.0, 1e-14);
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn golden_section_on_parabola() {
        let (x, v) = golden_section_max(|x| -(x - 0.3).powi(2) + 1.0, -1.0, 2.0, 1e-10);
        // A smooth maximum is only resolvable to about sqrt(eps).
        assert!((x - 0.3).abs() < 5e-8);
        assert!((v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn log_scan_finds_interior_peak() {
        // x e^{-x} peaks at x = 1.
        let m = log_scan_max(|x| x * (-x).exp(), 1e-3, 1e3, 200, 1e-10);
        assert!(!m.on_boundary);
        assert!((m.arg - 1.0).abs() < 1e-7);
        let edge = log_scan_max(|x| x, 1.0, 10.0, 20, 1e-10);
        assert!(edge.on_boundary);
    }

    #[test]
    fn nelder_mead_rosenbrock() {
        let r = nelder_mead_max(
            |x| -((1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2)),
            &[-1.2, 1.0],
            0.1,
            1e-10,
            1e-14,
            5000,
        );
        assert!((r.x[0] - 1.0).abs() < 1e-6, "{:?}", r);
        assert!((r.x[1] - 1.0).abs() < 1e-6, "{:?}", r);
    }
}
