//! Convergence thresholds for a spread of (n,k) codes, next to the power
//! penalty each one pays and the 1/(k+1) ceiling for single parity checks.
//!
//! Run with `cargo run --example thresholds`.

use csa::de::{self, DeSettings};
use csa::CodeParams;

fn main() -> csa::Result<()> {
    let settings = DeSettings::default();

    println!("{:>6} {:>7} {:>12} {:>9} {:>10}", "code", "rate", "penalty dB", "G*", "spc bound");
    for (n, k) in [(2, 1), (3, 1), (4, 2), (5, 3), (6, 4), (7, 4), (8, 4)] {
        let code = CodeParams::new(n, k)?;
        let result = de::threshold(code, 0.01, 2.0, 1e-4, settings)?;
        let bound = if code.is_single_parity_check() {
            format!("{:.4}", de::spc_bound(code.k()))
        } else {
            "-".to_string()
        };
        println!(
            "{:>6} {:>7.3} {:>12.4} {:>9.4} {:>10}",
            code.to_string(),
            code.rate(),
            code.power_penalty_db(),
            result.g_star,
            bound
        );
    }

    // Single parity checks trade rate for threshold along a clean frontier:
    // G* creeps up to 1/(k+1) while the penalty 10 log10((k+1)/k) fades.
    println!();
    println!("single parity checks (k+1,k):");
    println!("{:>3} {:>9} {:>9} {:>12}", "k", "G*", "1/(k+1)", "penalty dB");
    for k in 1..=6 {
        let code = CodeParams::new(k + 1, k)?;
        let bound = de::spc_bound(k);
        let result = de::threshold(code, 0.01, bound + 0.05, 1e-4, settings)?;
        println!(
            "{:>3} {:>9.4} {:>9.4} {:>12.4}",
            k,
            result.g_star,
            bound,
            code.power_penalty_db()
        );
    }
    Ok(())
}
