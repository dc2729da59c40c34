// QFI of the GHZ-like protocol against evolution time for S = 4 and S = 8,
// with b = 1 and tau_c = 0.1. Both curves rise as tau^2, then collapse once
// dephasing sets in.

use spin_qfi::optimize::peak_qfi;
use spin_qfi::{qfi_noisefree_ghz, qfi_noisy_ghz, t2, OUNoise, SpinQuantumNumber};

fn main() {
    let noise = OUNoise::new(1.0, 0.1).expect("valid noise");
    let spins = [4.0, 8.0].map(|s| SpinQuantumNumber::from_f64(s).expect("half-integer"));

    println!("{:>6} {:>10} {:>10}", "tau", "F(S=4)", "F(S=8)");
    for i in 0..=20 {
        let tau = 0.025 * i as f64;
        let f = spins.map(|s| qfi_noisy_ghz(s, &noise, tau).expect("tau >= 0").value);
        println!("{tau:>6.3} {:>10.5} {:>10.5}", f[0], f[1]);
    }

    for s in spins {
        let peak = peak_qfi(
            |tau| qfi_noisy_ghz(s, &noise, tau).unwrap().value,
            t2(s, &noise),
        );
        let ideal = qfi_noisefree_ghz(s, peak.arg).unwrap().value;
        println!(
            "S = {s}: peak F = {:.4} at tau = {:.4} (noise-free value there: {:.3})",
            peak.value, peak.arg, ideal
        );
    }
}
