// Optimizes the spin-1 initial state cos(theta)|1> + sin(theta)cos(phi)|0>
// + sin(theta)sin(phi)|-1> for the yield rate and compares it with the
// GHZ-like state.

use spin_qfi::{optimize_initial_state_spin1, OUNoise};

fn main() {
    println!(
        "{:>8} {:>12} {:>12} {:>7} {:>7} {:>7} {:>9}",
        "tau_c", "R_ghz", "R_opt", "ratio", "theta", "phi", "fidelity"
    );
    for tau_c in [1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0] {
        let r = optimize_initial_state_spin1(&OUNoise::new(1.0, tau_c).unwrap());
        println!(
            "{tau_c:>8.0e} {:>12.5e} {:>12.5e} {:>7.4} {:>7.4} {:>7.4} {:>9.5}",
            r.r_ghz,
            r.r_max,
            r.r_max / r.r_ghz,
            r.theta_opt,
            r.phi_opt,
            r.fidelity_with_ghz
        );
    }
}
