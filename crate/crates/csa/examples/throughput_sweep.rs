//! Simulated throughput of the three schemes over a load grid, next to the
//! infinite-frame prediction for the coded ones.
//!
//! Run with `cargo run --example throughput_sweep`. Scale `N_SA` and
//! `FRAMES` up (and add `--release`) for smoother curves.

use csa::mc::{self, Protocol};
use csa::CodeParams;

const N_SA: usize = 200;
const FRAMES: usize = 200;
const I_MAX: usize = 20;
const SEED: u64 = 1;

fn main() -> csa::Result<()> {
    let code = CodeParams::new(7, 4)?;
    let grid: Vec<f64> = (1..=13).map(|i| 0.1 * f64::from(i)).collect();

    let sa = mc::sweep(Protocol::Sa, N_SA, &grid, FRAMES, 1, SEED)?;
    let thma = mc::sweep(Protocol::Thma(code), N_SA, &grid, FRAMES, 1, SEED)?;
    let csa = mc::sweep(Protocol::Csa(code), N_SA, &grid, FRAMES, I_MAX, SEED)?;
    let limit = mc::asymptotic_sweep(Protocol::Csa(code), &grid, I_MAX)?;

    println!(
        "{N_SA} equivalent slots, {FRAMES} frames per point, up to {I_MAX} sweeps, code {code}"
    );
    println!(
        "{:>5} {:>9} {:>9} {:>9} {:>11} {:>11}",
        "G", "sa", "thma", "csa", "csa limit", "csa plr"
    );
    for (((s, t), c), l) in sa.iter().zip(&thma).zip(&csa).zip(&limit) {
        println!(
            "{:>5.2} {:>9.4} {:>9.4} {:>9.4} {:>11.4} {:>11.2e}",
            s.g_nominal, s.t_mean, t.t_mean, c.t_mean, l.t_mean, c.plr_mean
        );
    }

    // The peak gain over plain slotted ALOHA comes at the price of the
    // split: every burst spends n/k times the energy.
    let peak = |v: &[mc::ThroughputStats]| {
        v.iter().map(|s| s.t_mean).fold(f64::NEG_INFINITY, f64::max)
    };
    println!();
    println!(
        "peaks: sa {:.3}, thma {:.3}, csa {:.3}; csa pays {:.2} dB per burst",
        peak(&sa),
        peak(&thma),
        peak(&csa),
        code.power_penalty_db()
    );
    Ok(())
}
