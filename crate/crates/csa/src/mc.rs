//! Monte Carlo throughput estimation and its asymptotic counterparts.
//!
//! A point simulates many independent frames at one offered load and
//! reports mean throughput T (decoded bursts per slotted-ALOHA-equivalent
//! slot) and packet loss rate, each with the standard error of the mean. A
//! sweep walks a load grid. Asymptotic variants replace simulation with
//! density evolution (or the closed form G exp(-G) for slotted ALOHA).
//!
//! Reproducibility contract: a point's result is a pure function of
//! (protocol, n_sa, g, frames, i_max, seed). Frame j uses seed
//! `substream(point_seed, j)`, sweep point i uses `substream(master, i)`;
//! frames are simulated in parallel but reduced in index order with no
//! transcendental math on the parallel path, so results are bit-identical
//! for any worker count and across platforms.

use rayon::prelude::*;

use crate::code::CodeParams;
use crate::de::{self, DeSettings};
use crate::decode;
use crate::error::{Error, Result};
use crate::frame::{build_frame, FrameConfig};
use crate::seed::substream;

/// Which random-access scheme a run measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Protocol {
    /// Plain slotted ALOHA: one unsplit burst per user, no coding, no IC.
    Sa,
    /// Coded transmission decoded without interference cancellation.
    Thma(CodeParams),
    /// Coded transmission with iterative interference cancellation.
    Csa(CodeParams),
}

impl Protocol {
    /// Lowercase scheme tag used in reports and file names.
    pub fn label(&self) -> &'static str {
        match self {
            Protocol::Sa => "sa",
            Protocol::Thma(_) => "thma",
            Protocol::Csa(_) => "csa",
        }
    }

    /// The (n,k) splitting actually transmitted; (1,1) for slotted ALOHA.
    pub fn splitting(&self) -> (u32, u32) {
        match self {
            Protocol::Sa => (1, 1),
            Protocol::Thma(c) | Protocol::Csa(c) => (c.n(), c.k()),
        }
    }

    pub fn code(&self) -> Option<CodeParams> {
        match self {
            Protocol::Sa => None,
            Protocol::Thma(c) | Protocol::Csa(c) => Some(*c),
        }
    }

    /// Sweeps the decoder actually performs given a budget of `i_max`.
    fn effective_i_max(&self, i_max: usize) -> usize {
        match self {
            Protocol::Sa | Protocol::Thma(_) => 1,
            Protocol::Csa(_) => i_max,
        }
    }

    fn frame_config(&self, n_sa: usize, g: f64) -> Result<FrameConfig> {
        match self {
            Protocol::Sa => FrameConfig::slotted_aloha_for_load(n_sa, g),
            Protocol::Thma(c) | Protocol::Csa(c) => FrameConfig::coded_for_load(n_sa, *c, g),
        }
    }
}

/// Throughput and loss at one offered load, simulated or asymptotic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThroughputStats {
    pub protocol: Protocol,
    /// Equivalent slot count; `None` marks an asymptotic (infinite-frame)
    /// result.
    pub n_sa: Option<usize>,
    /// The load requested.
    pub g_nominal: f64,
    /// The load realized after rounding to an integer user count; equals
    /// `g_nominal` for asymptotic results.
    pub g_realized: f64,
    /// Simulated frames; 0 for asymptotic results.
    pub frames: usize,
    /// Cancellation sweeps the decoder was allowed (1 where IC is off).
    pub i_max: usize,
    /// Seed of this point's random stream; 0 for asymptotic results.
    pub seed: u64,
    pub t_mean: f64,
    pub t_stderr: f64,
    pub plr_mean: f64,
    pub plr_stderr: f64,
}

fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

fn check_common(g: f64, i_max: usize) -> Result<()> {
    if !(g.is_finite() && g >= 0.0) {
        return Err(Error::parameter("offered load must be finite and >= 0"));
    }
    if i_max < 1 {
        return Err(Error::parameter("i_max must be at least 1"));
    }
    Ok(())
}

/// Simulates `frames` independent frames of `protocol` at offered load `g`
/// over `n_sa` equivalent slots.
pub fn simulate_point(
    protocol: Protocol,
    n_sa: usize,
    g: f64,
    frames: usize,
    i_max: usize,
    seed: u64,
) -> Result<ThroughputStats> {
    check_common(g, i_max)?;
    if frames < 1 {
        return Err(Error::parameter("frames must be at least 1"));
    }
    let config = protocol.frame_config(n_sa, g)?;
    let m = config.m_users();
    let samples: Vec<(f64, f64)> = (0..frames)
        .into_par_iter()
        .map(|j| {
            let frame = build_frame(&config, substream(seed, j as u64));
            let decoded = match protocol {
                Protocol::Sa => decode::sa_decode(&frame),
                Protocol::Thma(c) => decode::thma_decode(&frame, c),
                Protocol::Csa(c) => decode::ic_decode(&frame, c, i_max),
            }
            .expect("frame was built for this protocol")
            .recovered
            .len();
            let t = decoded as f64 / n_sa as f64;
            let plr = if m == 0 {
                0.0
            } else {
                1.0 - decoded as f64 / m as f64
            };
            (t, plr)
        })
        .collect();
    let (t_mean, t_stderr) = mean_stderr(&samples.iter().map(|s| s.0).collect::<Vec<_>>());
    let (plr_mean, plr_stderr) = mean_stderr(&samples.iter().map(|s| s.1).collect::<Vec<_>>());
    Ok(ThroughputStats {
        protocol,
        n_sa: Some(n_sa),
        g_nominal: g,
        g_realized: config.offered_load(),
        frames,
        i_max: protocol.effective_i_max(i_max),
        seed,
        t_mean,
        t_stderr,
        plr_mean,
        plr_stderr,
    })
}

/// Simulates every load in `g_grid`; point i runs under seed
/// `substream(master_seed, i)`.
pub fn sweep(
    protocol: Protocol,
    n_sa: usize,
    g_grid: &[f64],
    frames: usize,
    i_max: usize,
    master_seed: u64,
) -> Result<Vec<ThroughputStats>> {
    if g_grid.is_empty() {
        return Err(Error::parameter("load grid must not be empty"));
    }
    g_grid
        .iter()
        .enumerate()
        .map(|(i, &g)| simulate_point(protocol, n_sa, g, frames, i_max, substream(master_seed, i as u64)))
        .collect()
}

/// Infinite-frame limit of one point: density evolution for the coded
/// schemes, the closed form T = G exp(-G) for slotted ALOHA.
pub fn asymptotic_point(protocol: Protocol, g: f64, i_max: usize) -> Result<ThroughputStats> {
    check_common(g, i_max)?;
    let (plr, t) = if g == 0.0 {
        (0.0, 0.0)
    } else {
        match protocol {
            Protocol::Sa => (1.0 - (-g).exp(), g * (-g).exp()),
            Protocol::Thma(c) => {
                let settings = DeSettings {
                    max_iter: 1,
                    ..DeSettings::default()
                };
                let a = de::asymptotic_throughput(g, c, settings)?;
                (a.plr, a.throughput)
            }
            Protocol::Csa(c) => {
                let settings = DeSettings {
                    max_iter: i_max,
                    ..DeSettings::default()
                };
                let a = de::asymptotic_throughput(g, c, settings)?;
                (a.plr, a.throughput)
            }
        }
    };
    Ok(ThroughputStats {
        protocol,
        n_sa: None,
        g_nominal: g,
        g_realized: g,
        frames: 0,
        i_max: protocol.effective_i_max(i_max),
        seed: 0,
        t_mean: t,
        t_stderr: 0.0,
        plr_mean: plr,
        plr_stderr: 0.0,
    })
}

/// [`asymptotic_point`] over a grid.
pub fn asymptotic_sweep(
    protocol: Protocol,
    g_grid: &[f64],
    i_max: usize,
) -> Result<Vec<ThroughputStats>> {
    if g_grid.is_empty() {
        return Err(Error::parameter("load grid must not be empty"));
    }
    g_grid
        .iter()
        .map(|&g| asymptotic_point(protocol, g, i_max))
        .collect()
}
