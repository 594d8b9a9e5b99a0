//! Slot-degree laws behind the analysis: the exact finite-frame binomial,
//! its Poisson limit, the node-to-edge change of perspective, and how a
//! realized frame's histogram lines up with the model.
//!
//! Run with `cargo run --example degree_distributions`.

use csa::degree::{self, DegreeDistribution};
use csa::frame::{self, FrameConfig};
use csa::CodeParams;

fn row(label: &str, dist: &DegreeDistribution, upto: usize) {
    print!("{label:>14}");
    for d in 0..=upto {
        print!(" {:>8.5}", dist.coeff(d));
    }
    println!();
}

fn main() -> csa::Result<()> {
    let code = CodeParams::new(4, 2)?;
    let g = 0.6;
    // Mean slot degree is G n/k = 1.2 units.
    let d_max = degree::suggested_truncation(g * code.expansion());

    let m50 = degree::finite_node_dist(50, g, code, d_max)?;
    let m5000 = degree::finite_node_dist(5_000, g, code, d_max)?;
    let poisson = degree::poisson_node_dist(g, code, d_max)?;

    println!("node-perspective slot-degree law at G = {g}, code {code}:");
    print!("{:>14}", "d");
    (0..=6).for_each(|d| print!(" {d:>8}"));
    println!();
    row("M = 50", &m50, 6);
    row("M = 5000", &m5000, 6);
    row("Poisson", &poisson, 6);

    let sup = |a: &DegreeDistribution| {
        a.coeffs()
            .iter()
            .zip(poisson.coeffs())
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    };
    println!(
        "sup distance to the limit: {:.2e} at M = 50, {:.2e} at M = 5000\n",
        sup(&m50),
        sup(&m5000)
    );

    // Following a random edge lands on a slot proportionally to its degree;
    // a Poisson law is its own size-biased version, shifted by one.
    let via_node = poisson.node_to_edge()?;
    let direct = degree::poisson_edge_dist(g, code, d_max)?;
    println!("edge perspective (probability an edge enters a degree-d slot):");
    print!("{:>14}", "d");
    (0..=6).for_each(|d| print!(" {d:>8}"));
    println!();
    row("shifted node", &via_node, 6);
    row("direct", &direct, 6);
    println!();

    // One realized frame against the finite model.
    let cfg = FrameConfig::coded_for_load(2_000, code, g)?;
    let built = frame::build_frame(&cfg, 42);
    let empirical = built.empirical_degree_dist();
    let model = degree::finite_node_dist(cfg.m_users(), g, code, d_max)?;
    let mut tv = 0.0;
    for d in 0..=d_max.max(empirical.coeffs().len() - 1) {
        tv += (empirical.coeff(d) - model.coeff(d)).abs();
    }
    tv *= 0.5;
    println!(
        "one frame with {} slots and {} users: histogram is {:.4} total variation from the model",
        cfg.n_csa(),
        cfg.m_users(),
        tv
    );
    Ok(())
}
