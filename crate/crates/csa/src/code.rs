//! The (n,k) MDS code shared by every user.
//!
//! A burst is split into k data units and encoded into n > k units; any k of
//! the n suffice to reconstruct the burst. Only the pair (n,k) matters here:
//! the decoder counts clean units, it never touches payload.

use std::fmt;

use crate::error::{Error, Result};

/// Average transmit-power increase of an (n,k)-coded user over plain slotted
/// ALOHA, in dB.
///
/// Splitting a burst into k units and sending n of them spends n/k times the
/// energy of sending the burst once, assuming every unit is sent at the power
/// a whole burst would use per unit of time. Defined for any n >= k >= 1;
/// n = k gives 0 dB.
pub fn power_penalty_db(n: u32, k: u32) -> f64 {
    10.0 * (f64::from(n) / f64::from(k)).log10()
}

/// Validated (n,k) code parameters with 1 <= k < n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeParams {
    n: u32,
    k: u32,
}

impl CodeParams {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if k < 1 || k >= n {
            return Err(Error::InvalidCode { n, k });
        }
        Ok(CodeParams { n, k })
    }

    /// Encoded units per burst.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Data units per burst; how many clean units recovery needs.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Code rate k/n.
    pub fn rate(&self) -> f64 {
        f64::from(self.k) / f64::from(self.n)
    }

    /// Bandwidth expansion n/k: encoded units sent per slotted-ALOHA-
    /// equivalent slot of payload. Scales the exponent of the slot-side
    /// edge distribution.
    pub fn expansion(&self) -> f64 {
        f64::from(self.n) / f64::from(self.k)
    }

    /// See [`power_penalty_db`].
    pub fn power_penalty_db(&self) -> f64 {
        power_penalty_db(self.n, self.k)
    }

    /// Whether this is a single parity check, n = k + 1.
    pub fn is_single_parity_check(&self) -> bool {
        self.n == self.k + 1
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.k)
    }
}
