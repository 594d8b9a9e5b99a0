//! Peeling decoders over a realized frame.
//!
//! All three protocols are one engine with different stopping rules. A slot
//! holding exactly one unit of a not-yet-recovered burst is a singleton; a
//! singleton hands that burst one clean unit. Once a burst holds k clean
//! units it is recovered and all its remaining units are cancelled, which
//! may create fresh singletons. The engine works in sweeps: sweep i
//! processes only the singletons that existed when sweep i started, so
//! `i_max` bounds the physical number of cancellation rounds.
//!
//! * IC decoding runs up to `i_max` sweeps;
//! * coded transmission without IC is exactly the first sweep (count
//!   singletons of the original frame, never cancel);
//! * slotted ALOHA is the first sweep of an unsplit frame (n = k = 1).
//!
//! Within a sweep the outcome is order-independent: a singleton stops being
//! one during a sweep only when its own burst was recovered, so skipping it
//! never loses information. Peeling has a unique terminal state; sweeps
//! only schedule it.

use crate::code::CodeParams;
use crate::error::{Error, Result};
use crate::frame::FrameGraph;

/// What a decoder run recovered and when.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    /// Recovered burst indices, ascending.
    pub recovered: Vec<usize>,
    /// Sweeps performed. Zero when the frame had no singletons at all.
    pub iterations_used: usize,
    /// Bursts recovered in each performed sweep; sums to `recovered.len()`.
    pub per_iteration_recovered: Vec<usize>,
}

/// One recovery event in an IC trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IcEvent {
    /// 1-based sweep in which the burst was recovered.
    pub sweep: usize,
    /// Recovered burst.
    pub burst: usize,
    /// The singleton slot that delivered its k-th clean unit.
    pub slot: usize,
}

/// Recovery events in execution order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IcTrace {
    pub events: Vec<IcEvent>,
}

impl IcTrace {
    /// Human-readable rendition, one line per recovery.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            out.push_str(&format!(
                "sweep {}: burst {} recovered via slot {}\n",
                e.sweep, e.burst, e.slot
            ));
        }
        out
    }
}

fn check_code(frame: &FrameGraph, code_n: u32, code_k: u32) -> Result<()> {
    if frame.units_per_burst() != code_n || frame.split_factor() != code_k {
        return Err(Error::CodeMismatch {
            code_n,
            code_k,
            frame_n: frame.units_per_burst(),
            frame_k: frame.split_factor(),
        });
    }
    Ok(())
}

/// Iterative interference cancellation with at most `i_max` sweeps.
pub fn ic_decode(frame: &FrameGraph, code: CodeParams, i_max: usize) -> Result<DecodeResult> {
    check_code(frame, code.n(), code.k())?;
    if i_max < 1 {
        return Err(Error::parameter("i_max must be at least 1"));
    }
    Ok(peel(frame, code.k() as usize, i_max, None))
}

/// [`ic_decode`] with a recovery-event trace.
pub fn ic_decode_traced(
    frame: &FrameGraph,
    code: CodeParams,
    i_max: usize,
) -> Result<(DecodeResult, IcTrace)> {
    check_code(frame, code.n(), code.k())?;
    if i_max < 1 {
        return Err(Error::parameter("i_max must be at least 1"));
    }
    let mut trace = IcTrace::default();
    let result = peel(frame, code.k() as usize, i_max, Some(&mut trace.events));
    Ok((result, trace))
}

/// Coded transmission without interference cancellation: one pass over the
/// original frame's singletons. Identical to [`ic_decode`] with `i_max` 1.
pub fn thma_decode(frame: &FrameGraph, code: CodeParams) -> Result<DecodeResult> {
    check_code(frame, code.n(), code.k())?;
    Ok(peel(frame, code.k() as usize, 1, None))
}

/// Plain slotted ALOHA: the frame must be unsplit (n = k = 1); a burst is
/// recovered iff its single slot held no collision.
pub fn sa_decode(frame: &FrameGraph) -> Result<DecodeResult> {
    check_code(frame, 1, 1)?;
    Ok(peel(frame, 1, 1, None))
}

fn peel(
    frame: &FrameGraph,
    k_needed: usize,
    i_max: usize,
    mut trace: Option<&mut Vec<IcEvent>>,
) -> DecodeResult {
    let m = frame.m_users();
    let n_csa = frame.n_csa();

    // Slot -> burst adjacency in CSR form; burst -> slot is `assignments`.
    let mut slot_ptr = vec![0u32; n_csa + 1];
    for row in frame.assignments() {
        for &s in row {
            slot_ptr[s as usize + 1] += 1;
        }
    }
    for i in 0..n_csa {
        slot_ptr[i + 1] += slot_ptr[i];
    }
    let mut slot_adj = vec![0u32; slot_ptr[n_csa] as usize];
    let mut cursor: Vec<u32> = slot_ptr[..n_csa].to_vec();
    for (b, row) in frame.assignments().iter().enumerate() {
        for &s in row {
            let c = &mut cursor[s as usize];
            slot_adj[*c as usize] = b as u32;
            *c += 1;
        }
    }

    // load[s] counts units of unresolved bursts still in slot s.
    let mut load: Vec<u32> = frame.slot_degrees().to_vec();
    let mut clean = vec![0u32; m];
    let mut recovered = vec![false; m];
    let mut recovered_list = Vec::new();
    let mut per_iteration = Vec::new();

    let mut queue: Vec<u32> = (0..n_csa as u32)
        .filter(|&s| load[s as usize] == 1)
        .collect();
    let mut next: Vec<u32> = Vec::new();
    let mut sweeps = 0;

    loop {
        // A queued slot may have been emptied by a later cancellation in
        // the sweep that queued it; such slots belong to recovered bursts
        // and carry nothing, so a sweep only counts if real work remains.
        queue.retain(|&s| load[s as usize] == 1);
        if queue.is_empty() || sweeps == i_max {
            break;
        }
        sweeps += 1;
        let mut hits = 0;
        for &queued in &queue {
            let s = queued as usize;
            if load[s] != 1 {
                // Emptied earlier this sweep by a cancellation.
                continue;
            }
            let lo = slot_ptr[s] as usize;
            let hi = slot_ptr[s + 1] as usize;
            let b = slot_adj[lo..hi]
                .iter()
                .copied()
                .find(|&b| !recovered[b as usize])
                .expect("a slot with load 1 holds exactly one unresolved unit")
                as usize;
            clean[b] += 1;
            if clean[b] as usize == k_needed {
                debug_assert!(!recovered[b]);
                recovered[b] = true;
                recovered_list.push(b);
                hits += 1;
                if let Some(events) = trace.as_deref_mut() {
                    events.push(IcEvent {
                        sweep: sweeps,
                        burst: b,
                        slot: s,
                    });
                }
                for &t in frame.burst_slots(b) {
                    let t = t as usize;
                    load[t] -= 1;
                    if load[t] == 1 {
                        next.push(t as u32);
                    }
                }
            }
        }
        per_iteration.push(hits);
        queue.clear();
        std::mem::swap(&mut queue, &mut next);
    }

    recovered_list.sort_unstable();
    DecodeResult {
        recovered: recovered_list,
        iterations_used: sweeps,
        per_iteration_recovered: per_iteration,
    }
}
