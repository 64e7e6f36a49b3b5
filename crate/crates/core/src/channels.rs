//! Beam-splitter loss acting on photon-number distributions.
//!
//! The absorbing sample (`1 - γ` transmission) followed by a detector of
//! efficiency `η` is a single pure-loss channel with transmittance
//! `τ = η(1 - γ)`. On a diagonal state it redistributes each `|j⟩` binomially:
//! `P_out(l) = Σ_j P_in(j) C(j, l) τ^l (1-τ)^(j-l)`.

use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Error, Result};
use crate::special::ln_binomial;
use crate::states::FockDensity;

/// Absorption coefficient and detection efficiency.
///
/// Only `gamma` and `eta` are serialized; `tau` is always derived.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawChannel", into = "RawChannel")]
pub struct ChannelParams {
    gamma: f64,
    eta: f64,
    tau: f64,
}

#[derive(Serialize, Deserialize)]
struct RawChannel {
    gamma: f64,
    eta: f64,
}

impl TryFrom<RawChannel> for ChannelParams {
    type Error = Error;

    fn try_from(raw: RawChannel) -> Result<Self> {
        ChannelParams::new(raw.gamma, raw.eta)
    }
}

impl From<ChannelParams> for RawChannel {
    fn from(c: ChannelParams) -> Self {
        RawChannel {
            gamma: c.gamma,
            eta: c.eta,
        }
    }
}

impl ChannelParams {
    pub fn new(gamma: f64, eta: f64) -> Result<Self> {
        check_unit_interval("gamma", gamma)?;
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "eta",
                value: eta,
                reason: "detection efficiency must lie in (0, 1]",
            });
        }
        Ok(Self {
            gamma,
            eta,
            tau: eta * (1.0 - gamma),
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }
}

/// `τ = η(1 - γ)`.
pub fn equivalent_transmittance(params: &ChannelParams) -> f64 {
    params.eta * (1.0 - params.gamma)
}

/// Transmitted state after a beam splitter of transmittance `tau` with vacuum
/// in the free port.
pub fn apply_loss(rho: &FockDensity, tau: f64) -> Result<FockDensity> {
    check_unit_interval("tau", tau)?;
    let dim = rho.dim();
    if tau == 1.0 {
        return Ok(rho.clone());
    }
    let mut out = vec![0.0; dim];
    if tau == 0.0 {
        out[0] = rho.total_mass();
        return Ok(FockDensity::from_parts(out, rho.tail_bound()));
    }
    let ln_t = tau.ln();
    let ln_r = (-tau).ln_1p();
    for (j, &pj) in rho.probs().iter().enumerate() {
        if pj == 0.0 {
            continue;
        }
        for (l, slot) in out.iter_mut().enumerate().take(j + 1) {
            let ln_w = ln_binomial(j, l) + l as f64 * ln_t + (j - l) as f64 * ln_r;
            *slot += pj * ln_w.exp();
        }
    }
    Ok(FockDensity::from_parts(out, rho.tail_bound()))
}
