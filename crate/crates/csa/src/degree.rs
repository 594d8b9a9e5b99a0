//! Slot-degree distributions of the burst/slot graph.
//!
//! A frame is a bipartite graph: burst nodes on one side, slot nodes on the
//! other, an edge per transmitted unit. Every burst has degree exactly n, so
//! only the slot side has a distribution. With M users each picking n of the
//! N_CSA = k N_SA slots uniformly, a slot's degree is Binomial(M, q) with
//! q = G (n/k) / M, mean G n/k; as M grows at fixed load G the law tends to
//! Poisson(G n/k).
//!
//! Two perspectives of the same graph matter:
//!
//! * node: Psi_d, the fraction of slots with degree d;
//! * edge: rho_d, the fraction of edges attached to a degree-d slot,
//!   rho_d = d Psi_d / sum_j j Psi_j.
//!
//! Density evolution consumes the edge perspective through its generating
//! polynomial rho(x) = sum_d rho_d x^(d-1); in the Poisson limit this is
//! exp(-G (n/k) (1-x)), which [`crate::de`] uses in closed form. The
//! truncated forms here exist to model finite M, to cross-check the limit,
//! and to compare against empirical frame histograms.

use statrs::function::factorial::{ln_binomial, ln_factorial};

use crate::code::CodeParams;
use crate::error::{Error, Result};

/// Which side of the edge a distribution weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Perspective {
    /// Coefficient d is the fraction of slot nodes with degree d.
    Node,
    /// Coefficient d is the fraction of edges incident to a degree-d slot.
    /// Degree 0 carries no edges, so coefficient 0 is always zero.
    Edge,
}

/// A finitely truncated slot-degree distribution.
///
/// Coefficients are stored densely from degree 0 up to the truncation
/// degree and always sum to 1 (construction renormalizes after truncation).
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    coeffs: Vec<f64>,
    perspective: Perspective,
}

impl DegreeDistribution {
    /// Builds a node-perspective distribution from raw weights indexed by
    /// degree. Weights must be finite and nonnegative with a positive sum;
    /// they are normalized to sum to 1.
    pub fn from_node_coeffs(coeffs: Vec<f64>) -> Result<Self> {
        Self::normalized(coeffs, Perspective::Node)
    }

    /// Builds an edge-perspective distribution from raw weights indexed by
    /// slot degree. Same validity rules as [`Self::from_node_coeffs`], plus
    /// the degree-0 weight must be zero: no edge touches an empty slot.
    pub fn from_edge_coeffs(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.first().copied().unwrap_or(0.0) != 0.0 {
            return Err(Error::InvalidCoefficients(
                "edge perspective requires a zero degree-0 coefficient".into(),
            ));
        }
        Self::normalized(coeffs, Perspective::Edge)
    }

    fn normalized(mut coeffs: Vec<f64>, perspective: Perspective) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidCoefficients("no coefficients".into()));
        }
        for (d, &c) in coeffs.iter().enumerate() {
            if !c.is_finite() || c < 0.0 {
                return Err(Error::InvalidCoefficients(format!(
                    "coefficient {c} at degree {d}"
                )));
            }
        }
        let sum: f64 = coeffs.iter().sum();
        if sum <= 0.0 {
            return Err(Error::InvalidCoefficients("zero total mass".into()));
        }
        for c in &mut coeffs {
            *c /= sum;
        }
        Ok(DegreeDistribution {
            coeffs,
            perspective,
        })
    }

    pub fn perspective(&self) -> Perspective {
        self.perspective
    }

    /// All coefficients, indexed by degree, summing to 1.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient at `degree`; zero beyond the truncation degree.
    pub fn coeff(&self, degree: usize) -> f64 {
        self.coeffs.get(degree).copied().unwrap_or(0.0)
    }

    /// Largest degree carried, i.e. the truncation point.
    pub fn truncation_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Mean of the degree index under this distribution. For the node
    /// perspective this is the mean slot degree Psi'(1) = G n/k.
    pub fn mean_degree(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(d, &c)| d as f64 * c)
            .sum()
    }

    /// Evaluates the generating polynomial at `x` in [0, 1]:
    /// sum_d c_d x^d for the node perspective, sum_d c_d x^(d-1) for the
    /// edge perspective. Values lie in [0, 1] since coefficients do.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::UnitInterval { name: "x", value: x });
        }
        let poly: &[f64] = match self.perspective {
            Perspective::Node => &self.coeffs,
            Perspective::Edge => &self.coeffs[1..],
        };
        // Horner, highest degree first.
        let v = poly.iter().rev().fold(0.0, |acc, &c| acc * x + c);
        Ok(v.clamp(0.0, 1.0))
    }

    /// Reweights a node-perspective distribution by degree to obtain the
    /// edge perspective: rho_d = d Psi_d / sum_j j Psi_j.
    pub fn node_to_edge(&self) -> Result<DegreeDistribution> {
        if self.perspective != Perspective::Node {
            return Err(Error::parameter(
                "node_to_edge needs a node-perspective distribution",
            ));
        }
        let weighted: Vec<f64> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(d, &c)| d as f64 * c)
            .collect();
        if weighted.iter().sum::<f64>() <= 0.0 {
            return Err(Error::InvalidCoefficients(
                "zero mean degree leaves no edges to reweight".into(),
            ));
        }
        Self::normalized(weighted, Perspective::Edge)
    }
}

/// Truncation degree large enough that the discarded Poisson(lambda) tail
/// mass is far below 1e-12: twelve standard deviations past the mean plus
/// slack for small lambda.
pub fn suggested_truncation(lambda: f64) -> usize {
    (lambda + 12.0 * lambda.sqrt() + 20.0).ceil() as usize
}

fn check_load(g: f64) -> Result<()> {
    if !(g.is_finite() && g > 0.0) {
        return Err(Error::NonPositiveLoad(g));
    }
    Ok(())
}

fn check_d_max(d_max: usize) -> Result<()> {
    if d_max < 1 {
        return Err(Error::parameter("d_max must be at least 1"));
    }
    Ok(())
}

/// Exact node-perspective slot-degree distribution of a finite frame with
/// `m_users` users at offered load `g`: Binomial(M, q) with mean q M = G n/k,
/// truncated at `d_max` and renormalized.
///
/// Fails if the implied mean exceeds `m_users` (a slot cannot collect more
/// units than there are users under this model) or if truncation discards
/// all mass (only possible when the mean equals M exactly).
pub fn finite_node_dist(
    m_users: usize,
    g: f64,
    code: CodeParams,
    d_max: usize,
) -> Result<DegreeDistribution> {
    check_load(g)?;
    check_d_max(d_max)?;
    let mean = g * code.expansion();
    let m = m_users as f64;
    if mean > m {
        return Err(Error::MeanDegreeExceedsUsers { mean, m_users });
    }
    let q = mean / m;
    let d_hi = m_users.min(d_max);
    let mut coeffs = vec![0.0; d_max + 1];
    if q == 1.0 {
        // Degenerate: every slot collects a unit from every user.
        if m_users > d_max {
            return Err(Error::EmptyTruncation { d_max });
        }
        coeffs[m_users] = 1.0;
    } else {
        let ln_q = q.ln();
        let ln_1q = (1.0 - q).ln();
        for (d, c) in coeffs.iter_mut().enumerate().take(d_hi + 1) {
            let ln_pmf = ln_binomial(m_users as u64, d as u64)
                + d as f64 * ln_q
                + (m_users - d) as f64 * ln_1q;
            *c = ln_pmf.exp();
        }
        if coeffs.iter().sum::<f64>() <= 0.0 {
            return Err(Error::EmptyTruncation { d_max });
        }
    }
    DegreeDistribution::from_node_coeffs(coeffs)
}

/// Poisson(G n/k) node-perspective slot-degree distribution, the M -> inf
/// limit of [`finite_node_dist`], truncated at `d_max` and renormalized.
pub fn poisson_node_dist(g: f64, code: CodeParams, d_max: usize) -> Result<DegreeDistribution> {
    check_load(g)?;
    check_d_max(d_max)?;
    let lambda = g * code.expansion();
    let coeffs: Vec<f64> = (0..=d_max).map(|d| poisson_ln_pmf(lambda, d).exp()).collect();
    DegreeDistribution::from_node_coeffs(coeffs)
}

/// Edge-perspective counterpart of [`poisson_node_dist`]. Poisson is its own
/// size-biased law shifted by one: rho_d = exp(-lambda) lambda^(d-1)/(d-1)!,
/// so rho(x) = exp(-lambda (1-x)) with lambda = G n/k.
pub fn poisson_edge_dist(g: f64, code: CodeParams, d_max: usize) -> Result<DegreeDistribution> {
    check_load(g)?;
    check_d_max(d_max)?;
    let lambda = g * code.expansion();
    let mut coeffs = vec![0.0; d_max + 1];
    for (d, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = poisson_ln_pmf(lambda, d - 1).exp();
    }
    DegreeDistribution::from_edge_coeffs(coeffs)
}

fn poisson_ln_pmf(lambda: f64, d: usize) -> f64 {
    -lambda + d as f64 * lambda.ln() - ln_factorial(d as u64)
}
