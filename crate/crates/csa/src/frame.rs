//! Random burst/slot frames: the finite graphs the decoder peels.
//!
//! A frame has N_CSA = k N_SA slots. Each of M bursts occupies n distinct
//! slots drawn uniformly at random, one encoded unit per slot. The
//! normalization constant N_SA is the slot count a plain slotted ALOHA
//! frame would need for the same payload, so offered load G = M / N_SA is
//! comparable across codes; plain slotted ALOHA itself is the n = k = 1
//! configuration.
//!
//! Construction is deterministic: burst b draws its slots from a ChaCha
//! stream seeded with `substream(frame_seed, b)`, so a frame is a pure
//! function of (config, seed), identical across platforms and independent
//! of how many other bursts exist.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::code::CodeParams;
use crate::degree::DegreeDistribution;
use crate::error::{Error, Result};
use crate::seed::substream;

/// Geometry of a frame: slot budget, splitting, and population.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameConfig {
    n_sa: usize,
    n: u32,
    k: u32,
    m_users: usize,
}

impl FrameConfig {
    /// Frame for M users of an (n,k) code over N_SA equivalent slots.
    pub fn coded(n_sa: usize, code: CodeParams, m_users: usize) -> Result<Self> {
        Self::validated(n_sa, code.n(), code.k(), m_users)
    }

    /// Like [`Self::coded`] with the population chosen to realize offered
    /// load `g` as closely as the integer user count allows,
    /// M = round(g N_SA).
    pub fn coded_for_load(n_sa: usize, code: CodeParams, g: f64) -> Result<Self> {
        Self::validated(n_sa, code.n(), code.k(), users_for_load(n_sa, g)?)
    }

    /// Plain slotted ALOHA: no splitting, no coding, n = k = 1.
    pub fn slotted_aloha(n_sa: usize, m_users: usize) -> Result<Self> {
        Self::validated(n_sa, 1, 1, m_users)
    }

    /// Slotted ALOHA populated for offered load `g`.
    pub fn slotted_aloha_for_load(n_sa: usize, g: f64) -> Result<Self> {
        Self::slotted_aloha(n_sa, users_for_load(n_sa, g)?)
    }

    fn validated(n_sa: usize, n: u32, k: u32, m_users: usize) -> Result<Self> {
        if n_sa < 1 {
            return Err(Error::parameter("n_sa must be at least 1"));
        }
        let n_csa = n_sa
            .checked_mul(k as usize)
            .ok_or_else(|| Error::parameter("k * n_sa overflows"))?;
        if (n as usize) > n_csa {
            return Err(Error::FrameTooSmall { n, n_csa });
        }
        Ok(FrameConfig {
            n_sa,
            n,
            k,
            m_users,
        })
    }

    pub fn n_sa(&self) -> usize {
        self.n_sa
    }

    /// Physical slot count, k N_SA.
    pub fn n_csa(&self) -> usize {
        self.n_sa * self.k as usize
    }

    pub fn m_users(&self) -> usize {
        self.m_users
    }

    /// Encoded units per burst.
    pub fn units_per_burst(&self) -> u32 {
        self.n
    }

    /// Data units per burst.
    pub fn split_factor(&self) -> u32 {
        self.k
    }

    /// Offered load this population realizes, M / N_SA.
    pub fn offered_load(&self) -> f64 {
        self.m_users as f64 / self.n_sa as f64
    }
}

/// Population realizing offered load `g` over `n_sa` equivalent slots.
pub fn users_for_load(n_sa: usize, g: f64) -> Result<usize> {
    if !(g.is_finite() && g >= 0.0) {
        return Err(Error::parameter("offered load must be finite and >= 0"));
    }
    Ok((g * n_sa as f64).round() as usize)
}

/// A realized frame: which slots each burst occupies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameGraph {
    n: u32,
    k: u32,
    n_sa: usize,
    /// Row b lists the slots of burst b, strictly increasing.
    assignments: Vec<Vec<u32>>,
    /// Units per slot, consistent with `assignments` by construction.
    slot_degree: Vec<u32>,
}

/// Draws the frame determined by `config` and `seed`.
pub fn build_frame(config: &FrameConfig, seed: u64) -> FrameGraph {
    let n_csa = config.n_csa();
    let n = config.n as usize;
    let mut slot_degree = vec![0u32; n_csa];
    let mut assignments = Vec::with_capacity(config.m_users);
    for b in 0..config.m_users {
        let mut rng = ChaCha8Rng::seed_from_u64(substream(seed, b as u64));
        let mut slots: Vec<u32> = rand::seq::index::sample(&mut rng, n_csa, n)
            .iter()
            .map(|s| s as u32)
            .collect();
        slots.sort_unstable();
        for &s in &slots {
            slot_degree[s as usize] += 1;
        }
        assignments.push(slots);
    }
    FrameGraph {
        n: config.n,
        k: config.k,
        n_sa: config.n_sa,
        assignments,
        slot_degree,
    }
}

impl FrameGraph {
    /// Builds a frame from explicit slot assignments, for hand-constructed
    /// decoding scenarios. Every row must hold exactly `n` distinct slots
    /// below k N_SA; rows are canonicalized to increasing order.
    pub fn from_assignments(
        n_sa: usize,
        n: u32,
        k: u32,
        assignments: Vec<Vec<u32>>,
    ) -> Result<Self> {
        if n_sa < 1 || n < 1 || k < 1 {
            return Err(Error::parameter("n_sa, n, and k must be at least 1"));
        }
        let n_csa = n_sa * k as usize;
        if (n as usize) > n_csa {
            return Err(Error::FrameTooSmall { n, n_csa });
        }
        let mut slot_degree = vec![0u32; n_csa];
        let mut canonical = Vec::with_capacity(assignments.len());
        for (b, mut row) in assignments.into_iter().enumerate() {
            if row.len() != n as usize {
                return Err(Error::InvalidFrame(format!(
                    "burst {b} occupies {} slots, expected {n}",
                    row.len()
                )));
            }
            row.sort_unstable();
            for w in row.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::InvalidFrame(format!(
                        "burst {b} uses slot {} twice",
                        w[0]
                    )));
                }
            }
            if let Some(&s) = row.last() {
                if s as usize >= n_csa {
                    return Err(Error::InvalidFrame(format!(
                        "burst {b} uses slot {s}, frame has {n_csa}"
                    )));
                }
            }
            for &s in &row {
                slot_degree[s as usize] += 1;
            }
            canonical.push(row);
        }
        Ok(FrameGraph {
            n,
            k,
            n_sa,
            assignments: canonical,
            slot_degree,
        })
    }

    pub fn m_users(&self) -> usize {
        self.assignments.len()
    }

    pub fn n_sa(&self) -> usize {
        self.n_sa
    }

    pub fn n_csa(&self) -> usize {
        self.slot_degree.len()
    }

    pub fn units_per_burst(&self) -> u32 {
        self.n
    }

    pub fn split_factor(&self) -> u32 {
        self.k
    }

    /// Slot lists per burst, each strictly increasing.
    pub fn assignments(&self) -> &[Vec<u32>] {
        &self.assignments
    }

    /// Slots of burst `b`.
    pub fn burst_slots(&self, b: usize) -> &[u32] {
        &self.assignments[b]
    }

    /// Units per slot.
    pub fn slot_degrees(&self) -> &[u32] {
        &self.slot_degree
    }

    /// Node-perspective histogram of this frame's slot degrees.
    pub fn empirical_degree_dist(&self) -> DegreeDistribution {
        let top = self.slot_degree.iter().copied().max().unwrap_or(0) as usize;
        let mut counts = vec![0.0; top + 1];
        for &d in &self.slot_degree {
            counts[d as usize] += 1.0;
        }
        DegreeDistribution::from_node_coeffs(counts)
            .expect("histogram of a nonempty frame has positive mass")
    }

    /// One line per burst: its slot indices, space-separated. Empty frames
    /// dump as the empty string.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for row in &self.assignments {
            let mut first = true;
            for &s in row {
                if !first {
                    out.push(' ');
                }
                out.push_str(&s.to_string());
                first = false;
            }
            out.push('\n');
        }
        out
    }
}
