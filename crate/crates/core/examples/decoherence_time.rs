// Decoherence time T2 across the Markovian, intermediate and quasi-static
// regimes, next to its two asymptotic forms.

use spin_qfi::noise::t2_asymptotes;
use spin_qfi::{chi, classify, t2, OUNoise, SpinQuantumNumber};

fn main() {
    let s = SpinQuantumNumber::HALF;
    println!(
        "{:>8} {:>10} {:>14} {:>12} {:>12} {:>12}",
        "tau_c", "2Sb*tau_c", "regime", "T2", "quasi-static", "Markovian"
    );
    for tau_c in [1e-4, 1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0] {
        let noise = OUNoise::new(1.0, tau_c).unwrap();
        let regime = classify(s, &noise);
        let t = t2(s, &noise);
        let (qs, mk) = t2_asymptotes(s, &noise);
        println!(
            "{tau_c:>8.0e} {:>10.3e} {:>14} {t:>12.5e} {qs:>12.5e} {mk:>12.5e}",
            regime.markov_param,
            regime.regime.as_str()
        );
        let residual = (s.twice()).powi(2) * chi(&noise, t).unwrap() - 1.0;
        assert!(residual.abs() < 1e-9);
    }
}
