// Sweeps S, b and tau_c and fits log-log exponents of the yield rate in the
// Markovian and quasi-static windows.

use spin_qfi::numeric::log_grid;
use spin_qfi::optimize::SweepFixed;
use spin_qfi::{sweep, SpinQuantumNumber, SweepParam};

fn main() {
    let fixed = SweepFixed {
        s: SpinQuantumNumber::ONE,
        b: 1.0,
        tau_c: 1.0,
    };
    let runs = [
        (
            SweepParam::S,
            log_grid(0.5, 1e6, 80),
            SweepFixed {
                tau_c: 1e-3,
                ..fixed
            },
        ),
        (SweepParam::B, log_grid(1e-4, 1e4, 60), fixed),
        (SweepParam::TauC, log_grid(1e-5, 1e5, 60), fixed),
    ];
    for (param, grid, fixed) in runs {
        let table = sweep(param, &grid, fixed).unwrap();
        let show = |fit: &Option<spin_qfi::optimize::ExponentFit>| match fit {
            Some(f) => format!("{:+.4} over {} rows", f.slope, f.window.len()),
            None => "no window".to_string(),
        };
        println!(
            "{param:>6}: Markovian exponent {}, quasi-static exponent {}",
            show(&table.markovian_fit),
            show(&table.quasi_static_fit)
        );
    }
}
