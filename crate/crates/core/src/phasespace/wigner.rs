//! Pointwise Wigner functions and grid builders.
//!
//! Fock-diagonal states use the convention in which the vacuum is
//! `e^{-(q²+p²)}/π`. A Fock state `|j⟩` after loss `τ` has
//!
//! `W_j(α) = (1-2τ)^j e^{-α} L_j(2τα/(2τ-1)) / π`,  `α = q² + p²`.
//!
//! The product `u_j = (1-2τ)^j L_j(·)` is a polynomial in `τ` and obeys
//!
//! `(j+1) u_{j+1} = ((2j+1)(1-2τ) + 2τα) u_j - j (1-2τ)² u_{j-1}`,
//!
//! which is regular at `τ = 1/2` and is the only form evaluated here.

use rayon::prelude::*;

use super::field::{Convention, WignerField};
use super::grid::GridSpec;
use crate::error::{check_non_negative, check_unit_interval, Result};
use crate::states::{self, FockDensity, StateKind, StateSpec, Truncation};

use std::f64::consts::{FRAC_1_PI, LN_10};

const RESCALE_AT: f64 = 1e150;
const RESCALE_LN: f64 = 150.0 * LN_10;

/// `Σ_j P(j) W_j(α)` for a diagonal state after loss `tau`.
pub(crate) fn diagonal_lossy_radial(probs: &[f64], tau: f64, alpha: f64) -> f64 {
    let a = 1.0 - 2.0 * tau;
    let a2 = a * a;
    let b = 2.0 * tau * alpha;
    let mut prev = 0.0;
    let mut cur = 1.0;
    // exp(-α) is kept as a log scale until the end so large-α nodes with many
    // Fock terms neither overflow the recurrence nor underflow the prefactor.
    let mut log_scale = -alpha;
    let mut acc = probs.first().copied().unwrap_or(0.0);
    for (j, &pj) in probs.iter().enumerate().skip(1) {
        let k = (j - 1) as f64;
        let next = (((2.0 * k + 1.0) * a + b) * cur - k * a2 * prev) / (k + 1.0);
        prev = cur;
        cur = next;
        acc += pj * cur;
        if cur.abs() > RESCALE_AT {
            prev /= RESCALE_AT;
            cur /= RESCALE_AT;
            acc /= RESCALE_AT;
            log_scale += RESCALE_LN;
        }
    }
    acc * log_scale.exp() * FRAC_1_PI
}

/// Wigner function of `|j⟩` after a loss channel of transmittance `tau`.
pub fn wigner_fock_lossy(j: u32, tau: f64, q: f64, p: f64) -> Result<f64> {
    check_unit_interval("tau", tau)?;
    let mut weights = vec![0.0; j as usize + 1];
    weights[j as usize] = 1.0;
    Ok(diagonal_lossy_radial(&weights, tau, q * q + p * p))
}

/// Wigner function of an arbitrary diagonal state after loss.
pub fn wigner_diagonal_lossy(rho: &FockDensity, tau: f64, q: f64, p: f64) -> Result<f64> {
    check_unit_interval("tau", tau)?;
    Ok(diagonal_lossy_radial(rho.probs(), tau, q * q + p * p))
}

/// Coherent state `|√μ⟩` after loss, in the `(2/π) e^{-2(...)}` convention:
/// a Gaussian of quadrature variance 1/4 centered at `q = √(μτ)`, `p = 0`.
pub fn wigner_coherent_lossy(mu: f64, tau: f64, q: f64, p: f64) -> Result<f64> {
    check_non_negative("mu", mu)?;
    check_unit_interval("tau", tau)?;
    Ok(coherent_point(mu * tau, q, p))
}

fn coherent_point(mu_tau: f64, q: f64, p: f64) -> f64 {
    let dq = q - mu_tau.sqrt();
    2.0 * FRAC_1_PI * (-2.0 * (dq * dq + p * p)).exp()
}

/// Field of a diagonal state after loss. Exploits the rotational symmetry:
/// on a centered grid `α = h²(a² + b²)` for integer offsets `a, b`, so each
/// distinct `a² + b²` is evaluated once.
pub fn diagonal_field(rho: &FockDensity, tau: f64, grid: GridSpec) -> Result<WignerField> {
    check_unit_interval("tau", tau)?;
    let n = grid.n_points;
    let c = grid.center();
    let h = grid.spacing();
    let max_s = 2 * c * c;
    let mut needed = vec![false; max_s + 1];
    for a in 0..=c {
        for b in 0..=a {
            needed[a * a + b * b] = true;
        }
    }
    let radii: Vec<usize> = (0..=max_s).filter(|&s| needed[s]).collect();
    let radial: Vec<f64> = radii
        .par_iter()
        .map(|&s| diagonal_lossy_radial(rho.probs(), tau, h * h * s as f64))
        .collect();
    let mut lookup = vec![0.0; max_s + 1];
    for (&s, &w) in radii.iter().zip(&radial) {
        lookup[s] = w;
    }
    let mut values = vec![0.0; n * n];
    for i in 0..n {
        let a = i.abs_diff(c);
        for j in 0..n {
            let b = j.abs_diff(c);
            values[i * n + j] = lookup[a * a + b * b];
        }
    }
    Ok(WignerField::new(grid, values, Convention::FockRoute))
}

/// Lossy coherent-state field, evaluated row by row.
pub fn coherent_field(mu: f64, tau: f64, grid: GridSpec) -> Result<WignerField> {
    check_non_negative("mu", mu)?;
    check_unit_interval("tau", tau)?;
    let nodes = grid.nodes();
    let n = grid.n_points;
    let mu_tau = mu * tau;
    let mut values = vec![0.0; n * n];
    values.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
        let q = nodes[i];
        for (slot, &p) in row.iter_mut().zip(&nodes) {
            *slot = coherent_point(mu_tau, q, p);
        }
    });
    Ok(WignerField::new(grid, values, Convention::CoherentRoute))
}

/// Lossy Wigner field of the m-photon-subtracted twin-beam signal, as the
/// Fock series `(1-x)^(m+1) Σ_k C(m+k, m) x^k W_{m+k}` truncated at `tol`.
pub fn wigner_subtracted_lossy(m: u32, lambda: f64, tau: f64, grid: GridSpec, tol: f64) -> Result<WignerField> {
    wigner_field(&StateSpec::subtracted(m, lambda), tau, grid, tol)
}

/// Lossy Wigner field of any in-scope state. The grid must cover the
/// pre-loss mean photon number.
pub fn wigner_field(spec: &StateSpec, tau: f64, grid: GridSpec, tol: f64) -> Result<WignerField> {
    wigner_field_with(
        spec,
        tau,
        grid,
        Truncation {
            tol,
            ..Truncation::default()
        },
    )
}

pub fn wigner_field_with(spec: &StateSpec, tau: f64, grid: GridSpec, trunc: Truncation) -> Result<WignerField> {
    check_unit_interval("tau", tau)?;
    grid.check_coverage(states::mean_photons(spec)?)?;
    match spec.kind {
        StateKind::Coherent => coherent_field(spec.mu, tau, grid),
        _ => {
            let rho = states::photon_number_distribution_with(spec, trunc)?;
            diagonal_field(&rho, tau, grid)
        }
    }
}
