//! Anatomy of one density-evolution run: the erasure probabilities p_i
//! (slot to burst) and q_i (burst to slot) on either side of the threshold.
//!
//! Run with `cargo run --example de_trace`.

use csa::de::{self, DeSettings};
use csa::CodeParams;

fn show(g: f64, code: CodeParams, settings: DeSettings) -> csa::Result<()> {
    let trace = de::de_run(g, code, settings)?;
    println!("{code} at G = {g}:");
    println!("{:>5} {:>13} {:>13}", "i", "p", "q");
    let head = 6.min(trace.steps.len());
    for (i, step) in trace.steps.iter().take(head).enumerate() {
        println!("{:>5} {:>13.6e} {:>13.6e}", i, step.p, step.q);
    }
    if trace.steps.len() > head {
        println!("{:>5}", "...");
        let last = trace.steps.len() - 1;
        println!(
            "{:>5} {:>13.6e} {:>13.6e}",
            last, trace.steps[last].p, trace.steps[last].q
        );
    }
    let verdict = if trace.converged {
        "converged: every burst gets through"
    } else {
        "stalled at a positive fixed point"
    };
    println!("{} after {} iterations\n", verdict, trace.iterations_used);
    Ok(())
}

fn main() -> csa::Result<()> {
    let code = CodeParams::new(4, 2)?;
    let settings = DeSettings::default();

    // The threshold separates total delivery from a macroscopic residue.
    let g_star = de::threshold(code, 0.01, 2.0, 1e-4, settings)?.g_star;
    println!("threshold of {code}: G* = {g_star:.4}\n");

    show(0.65, code, settings)?;
    show(0.75, code, settings)?;

    // The fixed point feeds straight into loss and throughput.
    println!("{:>6} {:>12} {:>12}", "G", "plr", "throughput");
    for g in [0.5, 0.65, 0.69, 0.7, 0.75, 0.9] {
        let a = de::asymptotic_throughput(g, code, settings)?;
        println!("{:>6.2} {:>12.4e} {:>12.4}", g, a.plr, a.throughput);
    }
    Ok(())
}
