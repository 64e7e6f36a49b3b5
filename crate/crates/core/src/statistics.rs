//! Photon-number moments and Fano factor.
//!
//! Two routes are kept side by side. The phase-space route integrates the
//! Weyl symbols of `n̂` and `n̂²` against a Wigner field:
//!
//! `⟨n⟩ = ½∬(q²+p²)W - ½`,  `⟨n²⟩ = ¼∬(q²+p²)²W - ½∬(q²+p²)W`.
//!
//! The exact route sums over the photon-number distribution.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::apply_loss;
use crate::error::{Error, Result};
use crate::phasespace::{self, Convention, GridSpec, WignerField};
use crate::states::{self, FockDensity, StateSpec, DEFAULT_TRUNCATION_TOL};

/// Mean photon numbers below this are treated as zero when forming the Fano factor.
pub const MEAN_FLOOR: f64 = 1e-10;

/// Most negative variance tolerated from the phase-space route before it is
/// reported as an integration failure.
pub const VARIANCE_FLOOR: f64 = -1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MomentRoute {
    FromWigner,
    FromFock,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub mean_n: f64,
    pub mean_n2: f64,
    pub variance: f64,
    /// `variance / mean_n`, or NaN when the mean vanishes (see [`MomentReport::fano_defined`]).
    pub fano: f64,
    pub fano_defined: bool,
    pub route: MomentRoute,
}

impl MomentReport {
    fn from_moments(mean_n: f64, mean_n2: f64, route: MomentRoute) -> Result<Self> {
        let raw = mean_n2 - mean_n * mean_n;
        if raw < VARIANCE_FLOOR {
            return Err(Error::Numerical(format!(
                "negative photon-number variance {raw:e}; grid too small or too coarse"
            )));
        }
        let variance = raw.max(0.0);
        let fano_defined = mean_n > MEAN_FLOOR;
        let fano = if fano_defined { variance / mean_n } else { f64::NAN };
        Ok(Self {
            mean_n,
            mean_n2,
            variance,
            fano,
            fano_defined,
            route,
        })
    }

    /// Fano factor, `None` when the state has no photons.
    pub fn fano(&self) -> Option<f64> {
        self.fano_defined.then_some(self.fano)
    }
}

/// Moments from a Wigner field in the Fock-route convention.
pub fn moments_from_wigner(field: &WignerField) -> Result<MomentReport> {
    if field.convention() != Convention::FockRoute {
        return Err(Error::Convention { expected: "Fock-route" });
    }
    let s1 = field.integrate(|q, p, w| (q * q + p * p) * w);
    let s2 = field.integrate(|q, p, w| {
        let a = q * q + p * p;
        a * a * w
    });
    let mean_n = 0.5 * s1 - 0.5;
    let mean_n2 = 0.25 * s2 - 0.5 * s1;
    MomentReport::from_moments(mean_n, mean_n2, MomentRoute::FromWigner)
}

pub fn moments_from_fock(rho: &FockDensity) -> Result<MomentReport> {
    MomentReport::from_moments(rho.mean(), rho.second_moment(), MomentRoute::FromFock)
}

/// Exact moments of the m-subtracted state after detection loss `eta`.
pub fn exact_moments(m: u32, lambda: f64, tau: f64) -> Result<MomentReport> {
    let rho = states::photon_number_distribution(&StateSpec::subtracted(m, lambda), DEFAULT_TRUNCATION_TOL)?;
    moments_from_fock(&apply_loss(&rho, tau)?)
}

/// Phase-space moments of the m-subtracted state after loss `tau` on an
/// automatically sized grid.
pub fn wigner_moments(m: u32, lambda: f64, tau: f64, n_points: usize) -> Result<MomentReport> {
    let spec = StateSpec::subtracted(m, lambda);
    let grid = GridSpec::for_mean_photons_with(states::mean_photons(&spec)?, n_points);
    let field = phasespace::wigner_field(&spec, tau, grid, DEFAULT_TRUNCATION_TOL)?;
    moments_from_wigner(&field)
}

/// One row of a Fano sweep; CSV columns `m, lambda, eta, fano_exact, fano_wigner`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FanoRow {
    pub m: u32,
    pub lambda: f64,
    pub eta: f64,
    pub fano_exact: f64,
    pub fano_wigner: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FanoSweepOptions {
    /// Also evaluate the phase-space route.
    pub with_wigner: bool,
    pub n_points: usize,
}

impl Default for FanoSweepOptions {
    fn default() -> Self {
        Self {
            with_wigner: false,
            n_points: phasespace::DEFAULT_POINTS,
        }
    }
}

/// Fano factor versus `λ` with detection loss only (`γ = 0`, `τ = η`).
pub fn fano_vs_lambda(m: u32, eta: f64, lambdas: &[f64], opts: FanoSweepOptions) -> Result<Vec<FanoRow>> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "eta",
            value: eta,
            reason: "must lie in (0, 1]",
        });
    }
    lambdas
        .par_iter()
        .map(|&lambda| {
            let exact = exact_moments(m, lambda, eta)?;
            let fano_wigner = if opts.with_wigner {
                Some(wigner_moments(m, lambda, eta, opts.n_points)?.fano)
            } else {
                None
            };
            Ok(FanoRow {
                m,
                lambda,
                eta,
                fano_exact: exact.fano,
                fano_wigner,
            })
        })
        .collect()
}

/// `λ` at which the exact Fano factor of the m-subtracted state crosses 1.
/// `None` for `m = 0`, which is super-Poissonian for every `λ > 0`.
pub fn sub_poissonian_threshold(m: u32, eta: f64) -> Result<Option<f64>> {
    if m == 0 {
        return Ok(None);
    }
    let excess = |lambda: f64| -> Result<f64> { Ok(exact_moments(m, lambda, eta)?.fano - 1.0) };
    let mut lo = 1e-6;
    let mut hi = 1.0;
    if excess(lo)? >= 0.0 {
        return Ok(None);
    }
    while excess(hi)? <= 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e4 {
            return Ok(None);
        }
    }
    while hi - lo > 1e-13 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if excess(mid)? > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phasespace::{coherent_field, diagonal_field};
    use approx::assert_relative_eq;

    #[test]
    fn vacuum_has_undefined_fano() {
        let grid = GridSpec::for_mean_photons(0.0);
        let field = diagonal_field(&FockDensity::fock(0), 1.0, grid).unwrap();
        let r = moments_from_wigner(&field).unwrap();
        assert!(r.mean_n.abs() < 1e-12);
        assert!(r.variance.abs() < 1e-12);
        assert!(r.fano.is_nan());
        assert_eq!(r.fano(), None);
    }

    #[test]
    fn fock_two_is_number_squeezed() {
        let grid = GridSpec::for_mean_photons(2.0);
        let field = diagonal_field(&FockDensity::fock(2), 1.0, grid).unwrap();
        let r = moments_from_wigner(&field).unwrap();
        assert_relative_eq!(r.mean_n, 2.0, epsilon = 1e-10);
        assert!(r.variance.abs() < 1e-9);
        assert!(r.fano().unwrap().abs() < 1e-9);
    }

    #[test]
    fn one_subtracted_moments_both_routes() {
        // negative-binomial moments: mean (m+1)λ + m, variance (m+1)λ(1+λ)
        let exact = exact_moments(1, 0.1, 1.0).unwrap();
        assert_relative_eq!(exact.mean_n, 1.2, max_relative = 1e-12);
        assert_relative_eq!(exact.variance, 0.22, max_relative = 1e-10);
        assert_relative_eq!(exact.fano, 0.22 / 1.2, max_relative = 1e-10);
        let w = wigner_moments(1, 0.1, 1.0, 401).unwrap();
        assert_relative_eq!(w.mean_n, 1.2, epsilon = 1e-8);
        assert_relative_eq!(w.variance, 0.22, epsilon = 1e-7);
        assert_eq!(w.route, MomentRoute::FromWigner);
    }

    #[test]
    fn thermal_fano_is_one_plus_lambda() {
        let rows = fano_vs_lambda(0, 1.0, &[1.0], FanoSweepOptions::default()).unwrap();
        assert_relative_eq!(rows[0].fano_exact, 2.0, max_relative = 1e-10);
        assert_eq!(rows[0].fano_wigner, None);
    }

    #[test]
    fn single_subtraction_fano_vanishes_at_low_lambda() {
        let rows = fano_vs_lambda(1, 1.0, &[1e-6], FanoSweepOptions::default()).unwrap();
        assert!(rows[0].fano_exact < 1e-5);
    }

    #[test]
    fn threshold_for_single_subtraction() {
        let lam = sub_poissonian_threshold(1, 1.0).unwrap().unwrap();
        assert!((lam - 0.5f64.sqrt()).abs() < 1e-9);
        assert_eq!(sub_poissonian_threshold(0, 1.0).unwrap(), None);
    }

    #[test]
    fn loss_law_for_fano() {
        let before = exact_moments(2, 0.3, 1.0).unwrap().fano;
        let tau = 0.6;
        let after = exact_moments(2, 0.3, tau).unwrap().fano;
        assert_relative_eq!(after, tau * before + 1.0 - tau, max_relative = 1e-10);
    }

    #[test]
    fn coherent_field_rejected() {
        let field = coherent_field(1.0, 1.0, GridSpec::new(6.0, 51).unwrap()).unwrap();
        assert!(matches!(moments_from_wigner(&field), Err(Error::Convention { .. })));
    }
}
