// QFI yield rate R = max_tau F(tau)/tau for the GHZ-like protocol, compared
// with the closed forms that hold deep in each limiting regime.

use spin_qfi::optimize::ghz_yield_rate;
use spin_qfi::{yield_rate_asymptotic, OUNoise, Regime, SpinQuantumNumber};

fn main() {
    let s = SpinQuantumNumber::from_twice(4).unwrap();
    for tau_c in [1e-4, 1e-2, 1.0, 1e2, 1e4] {
        let noise = OUNoise::new(1.0, tau_c).unwrap();
        let r = ghz_yield_rate(s, &noise);
        print!(
            "tau_c = {tau_c:.0e} ({}): R = {:.5e} at tau = {:.4e}, sensitivity {:.3e}/sqrt(time)",
            r.regime.regime.as_str(),
            r.rate,
            r.tau_opt,
            r.precision_per_unit_time()
        );
        match r.regime.regime {
            Regime::Intermediate => println!(),
            regime => {
                let a = yield_rate_asymptotic(s, &noise, regime).unwrap();
                println!("; closed form {:.5e}", a.rate);
            }
        }
    }
}
