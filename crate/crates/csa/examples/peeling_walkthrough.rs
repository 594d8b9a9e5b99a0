//! Step-by-step interference cancellation on a tiny hand-built frame, and a
//! stopping set that no amount of cancellation can break.
//!
//! Run with `cargo run --example peeling_walkthrough`.

use csa::decode;
use csa::frame::FrameGraph;
use csa::CodeParams;

fn main() -> csa::Result<()> {
    // Three bursts under a (3,2) code in 8 slots (4 equivalent data slots).
    // Any 2 of a burst's 3 units suffice. Bursts form a chain: 0 and 1 share
    // slot 2, bursts 1 and 2 share slot 4.
    let code = CodeParams::new(3, 2)?;
    let frame = FrameGraph::from_assignments(
        4,
        3,
        2,
        vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 6]],
    )?;

    println!("burst -> slots:");
    print!("{}", frame.dump());
    println!("slot loads: {:?}", frame.slot_degrees());
    println!();

    // Without cancellation only one pass over the initial singletons runs.
    // Bursts 0 and 2 see two clean units each; burst 1 sees only slot 3.
    let single = decode::thma_decode(&frame, code)?;
    println!("single pass recovers {:?}", single.recovered);

    // Cancellation clears slots 2 and 4 once bursts 0 and 2 are known,
    // which hands burst 1 its second clean unit in the next sweep.
    let (full, trace) = decode::ic_decode_traced(&frame, code, 10)?;
    println!("with cancellation, sweep by sweep:");
    print!("{}", trace.to_text());
    println!(
        "recovered {:?} in {} sweeps, {:?} per sweep",
        full.recovered, full.iterations_used, full.per_iteration_recovered
    );
    println!();

    // Two bursts occupying the same slot pair collide everywhere: no
    // singleton ever appears, so peeling cannot start. Losses below the
    // threshold come from exactly such stopping sets.
    let twins = FrameGraph::from_assignments(2, 2, 1, vec![vec![0, 1], vec![0, 1]])?;
    let stuck = decode::ic_decode(&twins, CodeParams::new(2, 1)?, 10)?;
    println!(
        "twin bursts on the same slot pair: recovered {:?} after {} sweeps",
        stuck.recovered, stuck.iterations_used
    );
    Ok(())
}
