use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::field::negativity_volume;
use super::grid::GridSpec;
use super::wigner::wigner_field;
use crate::channels::ChannelParams;
use crate::error::Result;
use crate::states::{self, StateSpec, DEFAULT_TRUNCATION_TOL};

/// `δ` below which a state is counted as classical.
pub const CLASSICALITY_THRESHOLD: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NegativityPoint {
    pub gamma: f64,
    pub tau: f64,
    pub delta: f64,
}

/// Negativity volume of `spec` after absorption `gamma` and detection `eta`.
pub fn negativity_at(spec: &StateSpec, gamma: f64, eta: f64, grid: GridSpec) -> Result<f64> {
    let tau = ChannelParams::new(gamma, eta)?.tau();
    let field = wigner_field(spec, tau, grid, DEFAULT_TRUNCATION_TOL)?;
    Ok(negativity_volume(&field))
}

/// `δ(γ)` over the given absorption values, on one grid sized for the state.
pub fn negativity_sweep(spec: &StateSpec, eta: f64, gammas: &[f64], grid: GridSpec) -> Result<Vec<NegativityPoint>> {
    gammas
        .par_iter()
        .map(|&gamma| {
            let tau = ChannelParams::new(gamma, eta)?.tau();
            Ok(NegativityPoint {
                gamma,
                tau,
                delta: negativity_at(spec, gamma, eta, grid)?,
            })
        })
        .collect()
}

/// Default grid for negativity work on `spec`.
pub fn negativity_grid(spec: &StateSpec, n_points: usize) -> Result<GridSpec> {
    Ok(GridSpec::for_mean_photons_with(states::mean_photons(spec)?, n_points))
}

/// First absorption at which `δ` drops below `threshold`: a coarse scan in
/// steps of `scan_step` followed by bisection down to `resolution`.
/// `None` if the state is already classical without absorption or stays
/// non-classical up to `γ = 1`.
pub fn classicality_threshold(
    spec: &StateSpec,
    eta: f64,
    threshold: f64,
    grid: GridSpec,
    scan_step: f64,
    resolution: f64,
) -> Result<Option<f64>> {
    let delta = |g: f64| negativity_at(spec, g, eta, grid);
    if delta(0.0)? < threshold {
        return Ok(None);
    }
    let steps = (1.0 / scan_step).ceil() as usize;
    let mut prev = 0.0;
    for k in 1..=steps {
        let g = (k as f64 * scan_step).min(1.0);
        if delta(g)? < threshold {
            let (mut lo, mut hi) = (prev, g);
            while hi - lo > resolution {
                let mid = 0.5 * (lo + hi);
                if delta(mid)? < threshold {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(Some(hi));
        }
        prev = g;
    }
    Ok(None)
}
