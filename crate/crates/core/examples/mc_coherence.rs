// Brute-force check of the dephasing factor: average exp(-i 2S phi) over
// sampled Ornstein-Uhlenbeck field paths and compare with exp(-(2S)^2 chi).

use spin_qfi::noise::{default_mc_step, ghz_coherence};
use spin_qfi::{mc_coherence, sample_ou_path, OUNoise, SpinQuantumNumber};

fn main() {
    let noise = OUNoise::new(1.0, 0.5).unwrap();

    let path = sample_ou_path(&noise, 0.05, 10, 1).unwrap();
    println!("one field path: {path:.3?}");

    let s = SpinQuantumNumber::ONE;
    println!(
        "{:>6} {:>10} {:>10} {:>10}",
        "tau", "exact", "sampled", "std err"
    );
    for tau in [0.1, 0.3, 0.6, 1.0] {
        let dt = default_mc_step(&noise, tau);
        let mc = mc_coherence(s, &noise, tau, 20_000, dt, 42).unwrap();
        let exact = ghz_coherence(s, &noise, tau).unwrap();
        println!(
            "{tau:>6.2} {exact:>10.5} {:>10.5} {:>10.1e}",
            mc.mean.re, mc.std_err_re
        );
    }
}
