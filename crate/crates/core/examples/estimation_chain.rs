// Simulated Ramsey-type readout of a spin-4 GHZ-like probe: parity outcomes
// are drawn nu times, inverted for omega, and the spread of the estimates is
// compared with the Cramer-Rao bound 1/sqrt(nu F).

use std::f64::consts::FRAC_PI_2;

use spin_qfi::optimize::ghz_yield_rate;
use spin_qfi::{
    classical_fisher, qfi_noisy_ghz, simulate_and_estimate, OUNoise, SpinQuantumNumber,
};

fn main() {
    let s = SpinQuantumNumber::from_twice(8).unwrap();
    let noise = OUNoise::new(1.0, 0.1).unwrap();
    let tau = ghz_yield_rate(s, &noise).tau_opt;
    // Working point with 2S omega tau = pi/2.
    let omega = FRAC_PI_2 / (s.twice() * tau);

    let cfi = classical_fisher(s, &noise, tau, omega).unwrap();
    let qfi = qfi_noisy_ghz(s, &noise, tau).unwrap().value;
    println!("tau = {tau:.4}, omega = {omega:.4}: CFI = {cfi:.6}, QFI = {qfi:.6}");

    for nu in [100, 1_000, 10_000] {
        let run = simulate_and_estimate(s, &noise, tau, omega, nu, 500, 42).unwrap();
        println!(
            "nu = {nu:>6}: std = {:.4e}, bound = {:.4e}, bias = {:+.2e}, flagged {}",
            run.sample_std.unwrap(),
            run.crb,
            run.bias().unwrap(),
            run.flagged
        );
    }
}
