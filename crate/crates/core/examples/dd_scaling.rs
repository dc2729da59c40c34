// Dynamical decoupling reshapes the short-time dephasing to tau^n. In the
// quasi-static regime the yield rate then scales as S^(2 - 2/n); in the
// Markovian regime DD changes nothing.

use spin_qfi::numeric::log_grid;
use spin_qfi::{dd_chi, dd_scaling, DDProfile, OUNoise};

fn main() {
    let quasi_static = OUNoise::new(1.0, 100.0).unwrap();
    let markovian = OUNoise::new(1.0, 1e-6).unwrap();

    let profile = DDProfile::new(4.0).unwrap();
    for tau in [1.0, 10.0, 100.0, 1e3, 1e4] {
        println!(
            "chi_DD(n=4, tau={tau:.0e}) = {:.4e}",
            dd_chi(&quasi_static, &profile, tau).unwrap()
        );
    }

    for n in [2.0, 3.0, 4.0, 6.0] {
        let profile = DDProfile::new(n).unwrap();
        let qs = dd_scaling(&profile, &log_grid(10.0, 1e4, 16), &quasi_static).unwrap();
        let mk = dd_scaling(&profile, &log_grid(0.5, 500.0, 16), &markovian).unwrap();
        println!(
            "n = {n}: quasi-static exponent {:.4} (2 - 2/n = {:.4}), Markovian exponent {:.4}",
            qs.quasi_static_fit.unwrap().slope,
            2.0 - 2.0 / n,
            mk.markovian_fit.unwrap().slope
        );
    }
}
