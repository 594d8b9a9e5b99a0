//! Coded slotted ALOHA (CSA) with iterative interference cancellation.
//!
//! In CSA each of M users splits its burst into k data units, extends them to
//! n encoded units with an (n,k) MDS erasure code, and transmits the encoded
//! units in n distinct slots of a frame, chosen uniformly at random and
//! independently of the other users. The receiver decodes a user as soon as k
//! of its units are observed in singleton slots, then cancels the remaining
//! units of that user from the frame, which may turn further slots into
//! singletons. Iterating this peeling process is interference cancellation
//! (IC); the same frame decoded in a single pass, without cancellation, is
//! the coded-without-IC reference scheme, and n = k = 1 without coding is
//! classical slotted ALOHA.
//!
//! The crate has two pillars:
//!
//! * a finite-frame Monte Carlo simulator ([`frame`], [`decode`], [`mc`])
//!   that builds random burst/slot graphs and peels them exactly, with
//!   bit-reproducible results for a given seed at any thread count, and
//! * an asymptotic density-evolution analyzer ([`degree`], [`de`]) that
//!   tracks erasure probabilities on the limiting graph ensemble, locates
//!   the IC convergence threshold G* by bisection, and evaluates the
//!   single-parity-check bound 1/(k+1) and the power penalty 10 log10(n/k).
//!
//! Offered load is normalized as G = M / N_SA, where N_SA = N_CSA / k is the
//! slot count an uncoded slotted ALOHA frame would need for the same payload;
//! throughput T counts decoded bursts per such slot, so T = G (1 - PLR).
//!
//! The `examples/` directory is the guided tour: one runnable program per
//! capability, from threshold tables to a hand-checkable peeling walkthrough.

pub mod code;
pub mod de;
pub mod decode;
pub mod degree;
mod error;
pub mod frame;
pub mod mc;
pub mod report;
pub mod seed;

pub use code::{power_penalty_db, CodeParams};
pub use error::{Error, Result};
