//! Density evolution on the limiting burst/slot graph ensemble.
//!
//! Track p_i, the probability an edge carries an unknown unit from the slot
//! side after i rounds of cancellation, and q_i, the same from the burst
//! side. A burst with n units recovers once at most n - k of its other
//! edges are unknown, and a slot resolves an edge once all its other edges
//! are known; with Poisson slot degrees the slot side has the closed form
//! rho(x) = exp(-G (n/k) (1-x)), so one round is
//!
//!   q_i = sum_{e=n-k}^{n-1} C(n-1,e) p_{i-1}^e (1-p_{i-1})^{n-1-e}
//!   p_i = 1 - exp(-G (n/k) q_i)
//!
//! starting from p_0 = q_0 = 1. The sequence p_i is nonincreasing, so it
//! either collapses to (numerical) zero, in which case IC decoding succeeds
//! asymptotically at load G, or stalls at a positive fixed point. The
//! supremum of loads that collapse is the threshold G*, found here by
//! bisection. For single parity checks, n = k + 1, a slope argument at the
//! fixed point gives the clean bound G* <= 1/(k+1), approached from below
//! as k grows; [`spc_bound`] exposes it and the acceptance tests pin the
//! bisection against it.

use statrs::function::factorial::binomial;

use crate::code::CodeParams;
use crate::error::{Error, Result};

/// Iteration controls for one density-evolution run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeSettings {
    /// Hard cap on rounds.
    pub max_iter: usize,
    /// Declare success once p drops below this.
    pub epsilon: f64,
}

impl Default for DeSettings {
    fn default() -> Self {
        DeSettings {
            max_iter: 5000,
            epsilon: 1e-10,
        }
    }
}

impl DeSettings {
    fn validate(&self) -> Result<()> {
        if self.max_iter < 1 {
            return Err(Error::parameter("max_iter must be at least 1"));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::parameter("epsilon must lie in (0, 1)"));
        }
        Ok(())
    }
}

/// A step below this is treated as a stall at a positive fixed point.
const STALL_STEP: f64 = 1e-14;

/// One recorded round.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeStep {
    /// Slot-to-burst unknown-edge probability after this round.
    pub p: f64,
    /// Burst-to-slot unknown-edge probability after this round.
    pub q: f64,
}

/// Full record of a density-evolution run.
#[derive(Debug, Clone, PartialEq)]
pub struct DeTrace {
    /// steps[i] holds (p_i, q_i); steps[0] is the all-unknown start (1, 1).
    pub steps: Vec<DeStep>,
    /// True iff p fell below epsilon within max_iter rounds.
    pub converged: bool,
    /// p at the last recorded step.
    pub final_p: f64,
    /// Rounds actually performed, steps.len() - 1.
    pub iterations_used: usize,
}

/// Burst-side update: probability an edge stays unknown after the burst
/// tried to decode, given incoming unknown-probability `p` on its other
/// n - 1 edges. Unknown iff at least n - k of them are unknown.
pub fn burst_update(p: f64, code: CodeParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::UnitInterval { name: "p", value: p });
    }
    let n = u64::from(code.n());
    let k = u64::from(code.k());
    let mut q = 0.0;
    for e in (n - k)..=(n - 1) {
        q += binomial(n - 1, e) * p.powi(e as i32) * (1.0 - p).powi((n - 1 - e) as i32);
    }
    Ok(q.clamp(0.0, 1.0))
}

/// Slot-side update under the Poisson ensemble at offered load `g`:
/// p = 1 - rho(1 - q) = 1 - exp(-G (n/k) q).
pub fn slot_update(q: f64, g: f64, code: CodeParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::UnitInterval { name: "q", value: q });
    }
    if !(g.is_finite() && g > 0.0) {
        return Err(Error::NonPositiveLoad(g));
    }
    Ok(1.0 - (-g * code.expansion() * q).exp())
}

/// Runs density evolution at load `g` until convergence, stall, or the
/// iteration cap, recording every step.
pub fn de_run(g: f64, code: CodeParams, settings: DeSettings) -> Result<DeTrace> {
    settings.validate()?;
    if !(g.is_finite() && g > 0.0) {
        return Err(Error::NonPositiveLoad(g));
    }
    let mut steps = vec![DeStep { p: 1.0, q: 1.0 }];
    let mut converged = false;
    let mut p_prev = 1.0;
    for _ in 1..=settings.max_iter {
        let q = burst_update(p_prev, code)?;
        let p = slot_update(q, g, code)?;
        steps.push(DeStep { p, q });
        if p < settings.epsilon {
            converged = true;
            break;
        }
        if p_prev - p < STALL_STEP {
            break;
        }
        p_prev = p;
    }
    let final_p = steps.last().expect("at least the initial step").p;
    let iterations_used = steps.len() - 1;
    Ok(DeTrace {
        steps,
        converged,
        final_p,
        iterations_used,
    })
}

/// Outcome of a threshold search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdResult {
    pub code: CodeParams,
    /// Bisection midpoint after the bracket shrank below `tol`.
    pub g_star: f64,
    pub tol: f64,
    /// Settings each probe ran with.
    pub settings: DeSettings,
}

/// Locates the IC convergence threshold G* of `code` by bisection on
/// [bracket_lo, bracket_hi]: the largest load at which density evolution
/// drives p to zero.
///
/// Fails with a distinct error when the bracket does not straddle the
/// threshold: [`Error::BracketLowFails`] if evolution already stalls at the
/// lower end, [`Error::BracketHighSucceeds`] if it still converges at the
/// upper end.
pub fn threshold(
    code: CodeParams,
    bracket_lo: f64,
    bracket_hi: f64,
    tol: f64,
    settings: DeSettings,
) -> Result<ThresholdResult> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::parameter("tol must be positive"));
    }
    if !(bracket_lo.is_finite() && bracket_hi.is_finite() && 0.0 < bracket_lo && bracket_lo < bracket_hi) {
        return Err(Error::parameter(
            "bracket must satisfy 0 < bracket_lo < bracket_hi",
        ));
    }
    if !de_run(bracket_lo, code, settings)?.converged {
        return Err(Error::BracketLowFails(bracket_lo));
    }
    if de_run(bracket_hi, code, settings)?.converged {
        return Err(Error::BracketHighSucceeds(bracket_hi));
    }
    let (mut lo, mut hi) = (bracket_lo, bracket_hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if de_run(mid, code, settings)?.converged {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(ThresholdResult {
        code,
        g_star: 0.5 * (lo + hi),
        tol,
        settings,
    })
}

/// Threshold upper bound 1/(k+1) for single parity checks (n = k + 1),
/// from the stability of the fixed point: at the stall, q = p^k up to
/// lower-order terms and the slot side is linearized by its slope
/// G (n/k) k = G (k+1), so collapse requires G (k+1) < 1.
pub fn spc_bound(k: u32) -> f64 {
    1.0 / f64::from(k + 1)
}

/// Asymptotic packet loss rate and throughput of IC decoding at load `g`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticThroughput {
    /// Probability a burst stays unresolved: more than n - k of its n
    /// edges unknown at the fixed point.
    pub plr: f64,
    /// Decoded bursts per slotted-ALOHA-equivalent slot, G (1 - plr).
    pub throughput: f64,
}

/// Burst loss probability at edge-unknown level `p`: the burst fails iff
/// strictly more than n - k of its n units are lost,
/// sum_{e=n-k+1}^{n} C(n,e) p^e (1-p)^(n-e).
pub fn burst_loss_probability(p: f64, code: CodeParams) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::UnitInterval { name: "p", value: p });
    }
    let n = u64::from(code.n());
    let k = u64::from(code.k());
    let mut plr = 0.0;
    for e in (n - k + 1)..=n {
        plr += binomial(n, e) * p.powi(e as i32) * (1.0 - p).powi((n - e) as i32);
    }
    Ok(plr.clamp(0.0, 1.0))
}

/// Runs density evolution at load `g` and converts the fixed point into the
/// asymptotic packet loss rate and throughput.
pub fn asymptotic_throughput(
    g: f64,
    code: CodeParams,
    settings: DeSettings,
) -> Result<AsymptoticThroughput> {
    let trace = de_run(g, code, settings)?;
    let plr = burst_loss_probability(trace.final_p, code)?;
    Ok(AsymptoticThroughput {
        plr,
        throughput: g * (1.0 - plr),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(n: u32, k: u32) -> CodeParams {
        CodeParams::new(n, k).unwrap()
    }

    #[test]
    fn burst_update_hand_values() {
        // All-unknown input stays all-unknown regardless of the code.
        for (n, k) in [(2, 1), (3, 2), (7, 4)] {
            assert_eq!(burst_update(1.0, code(n, k)).unwrap(), 1.0);
        }
        // (3,1) at p = 1/2: needs both other edges unknown, C(2,2)/4.
        assert!((burst_update(0.5, code(3, 1)).unwrap() - 0.25).abs() < 1e-15);
        // (3,2) at p = 1/2: at least one of two unknown, 3/4.
        assert!((burst_update(0.5, code(3, 2)).unwrap() - 0.75).abs() < 1e-15);
        // Repetition (n,1) reduces to p^(n-1).
        assert!((burst_update(0.3, code(4, 1)).unwrap() - 0.3f64.powi(3)).abs() < 1e-15);
        // Single parity check (k+1,k) reduces to 1 - (1-p)^k.
        let k = 4;
        let want = 1.0 - (1.0 - 0.3f64).powi(k);
        assert!((burst_update(0.3, code(k as u32 + 1, k as u32)).unwrap() - want).abs() < 1e-15);
        // Perfect input decodes perfectly.
        assert_eq!(burst_update(0.0, code(7, 4)).unwrap(), 0.0);
    }

    #[test]
    fn slot_update_hand_values() {
        // Nothing unknown from the bursts resolves every edge.
        assert_eq!(slot_update(0.0, 0.7, code(2, 1)).unwrap(), 0.0);
        // q = 1, G = 0.5, (2,1): 1 - exp(-1).
        let want = 1.0 - (-1.0f64).exp();
        assert!((slot_update(1.0, 0.5, code(2, 1)).unwrap() - want).abs() < 1e-15);
        // q = 0.5, G = 0.6, (7,4): 1 - exp(-0.525).
        let want = 1.0 - (-0.525f64).exp();
        assert!((slot_update(0.5, 0.6, code(7, 4)).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn updates_reject_out_of_range_arguments() {
        let c = code(2, 1);
        assert!(burst_update(-0.1, c).is_err());
        assert!(burst_update(1.1, c).is_err());
        assert!(slot_update(0.5, 0.0, c).is_err());
        assert!(slot_update(1.5, 0.5, c).is_err());
        assert!(burst_loss_probability(2.0, c).is_err());
    }

    #[test]
    fn de_run_converges_below_threshold_and_stalls_above() {
        let c = code(4, 2);
        let ok = de_run(0.4, c, DeSettings::default()).unwrap();
        assert!(ok.converged);
        assert!(ok.final_p < 1e-10);
        assert_eq!(ok.steps.len(), ok.iterations_used + 1);
        assert_eq!(ok.steps[0], DeStep { p: 1.0, q: 1.0 });

        let stuck = de_run(0.9, c, DeSettings::default()).unwrap();
        assert!(!stuck.converged);
        assert!(stuck.final_p > 0.1);
        assert!(stuck.iterations_used < 5000, "stall exit, not the cap");
    }

    #[test]
    fn de_trace_is_monotone_nonincreasing() {
        for g in [0.3, 0.6, 1.2] {
            let tr = de_run(g, code(7, 4), DeSettings::default()).unwrap();
            for w in tr.steps.windows(2) {
                assert!(w[1].p <= w[0].p);
                assert!(w[1].q <= w[0].q);
            }
        }
    }

    #[test]
    fn de_run_honors_iteration_cap() {
        let tr = de_run(0.4, code(4, 2), DeSettings { max_iter: 3, epsilon: 1e-10 }).unwrap();
        assert_eq!(tr.iterations_used, 3);
        assert!(!tr.converged);
    }

    #[test]
    fn thresholds_match_known_values() {
        let settings = DeSettings::default();
        let cases = [
            ((4, 2), 0.692, 0.005),
            ((2, 1), 0.500, 0.005),
            ((6, 4), 0.500, 0.005),
            ((7, 4), 0.600, 0.010),
        ];
        for ((n, k), want, tol) in cases {
            let r = threshold(code(n, k), 0.01, 2.0, 1e-4, settings).unwrap();
            assert!(
                (r.g_star - want).abs() <= tol,
                "({n},{k}): got {} want {want}",
                r.g_star
            );
        }
    }

    #[test]
    fn threshold_endpoints_verified_post_hoc() {
        let settings = DeSettings::default();
        let r = threshold(code(4, 2), 0.01, 2.0, 1e-4, settings).unwrap();
        assert!(de_run(r.g_star - r.tol, r.code, settings).unwrap().converged);
        assert!(!de_run(r.g_star + r.tol, r.code, settings).unwrap().converged);
    }

    #[test]
    fn threshold_bracket_failures_are_distinct() {
        let c = code(2, 1);
        assert_eq!(
            threshold(c, 0.9, 2.0, 1e-4, DeSettings::default()),
            Err(Error::BracketLowFails(0.9))
        );
        assert_eq!(
            threshold(c, 0.01, 0.3, 1e-4, DeSettings::default()),
            Err(Error::BracketHighSucceeds(0.3))
        );
        assert!(threshold(c, 0.5, 0.2, 1e-4, DeSettings::default()).is_err());
    }

    #[test]
    fn spc_bound_values() {
        assert_eq!(spc_bound(1), 0.5);
        assert_eq!(spc_bound(4), 0.2);
        assert!((spc_bound(7) - 0.125).abs() < 1e-15);
    }

    #[test]
    fn burst_loss_probability_hand_values() {
        // (2,1) at p: loss iff both units unknown? No: loss iff more than
        // n - k = 1 unknown, i.e. both, p^2.
        let c = code(2, 1);
        assert!((burst_loss_probability(0.3, c).unwrap() - 0.09).abs() < 1e-15);
        // (3,2): loss iff >= 2 of 3 unknown: 3 p^2 (1-p) + p^3.
        let c = code(3, 2);
        let p = 0.4f64;
        let want = 3.0 * p * p * (1.0 - p) + p.powi(3);
        assert!((burst_loss_probability(p, c).unwrap() - want).abs() < 1e-15);
        assert_eq!(burst_loss_probability(0.0, c).unwrap(), 0.0);
        assert_eq!(burst_loss_probability(1.0, c).unwrap(), 1.0);
    }

    #[test]
    fn asymptotic_throughput_below_threshold_is_the_load() {
        let r = asymptotic_throughput(0.5, code(4, 2), DeSettings::default()).unwrap();
        assert!(r.plr < 1e-9);
        assert!((r.throughput - 0.5).abs() < 1e-9);
    }

    #[test]
    fn asymptotic_throughput_far_above_threshold_collapses() {
        let r = asymptotic_throughput(2.5, code(4, 2), DeSettings::default()).unwrap();
        assert!(r.plr > 0.9);
        assert!(r.throughput < 0.25);
    }
}
