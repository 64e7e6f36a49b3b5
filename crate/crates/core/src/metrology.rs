//! Fisher information for absorption estimation from homodyne data.
//!
//! The q-quadrature marginal `Pr[q | γ]` of the lossy Wigner field is a
//! genuine probability density. Its classical Fisher information
//!
//! `F(γ) = ∫ (∂Pr/∂γ)² / Pr dq`
//!
//! bounds the precision `Δγ ≥ 1/√F` of any estimator built from q-samples.
//! This is what the dataset commands call QFI; it is not the symmetric
//! logarithmic derivative quantum Fisher information.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Error, Result};
use crate::phasespace::{self, marginal_q, GridSpec};
use crate::states::{self, StateKind, StateSpec, DEFAULT_TRUNCATION_TOL};

/// Marginal values below this are left out of the Fisher integrand.
pub const PROBABILITY_FLOOR: f64 = 1e-12;

/// Acceptable relative change of the estimate when the step is halved.
pub const RICHARDSON_TOL: f64 = 1e-3;

/// `min(1e-3, γ/10, (1-γ)/10)`.
pub fn default_step(gamma: f64) -> f64 {
    1e-3f64.min(gamma / 10.0).min((1.0 - gamma) / 10.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FisherEstimate {
    pub gamma: f64,
    pub eta: f64,
    pub state: StateSpec,
    pub fisher: f64,
    pub dgamma_step: f64,
    pub grid: GridSpec,
    /// `1/√fisher`; infinite when the marginal carries no information.
    pub delta_gamma: f64,
    /// Estimate repeated with half the step.
    pub fisher_half_step: f64,
    pub richardson_rel_change: f64,
}

impl FisherEstimate {
    pub fn is_step_stable(&self) -> bool {
        self.richardson_rel_change < RICHARDSON_TOL
    }
}

fn marginal_at(state: &StateSpec, gamma: f64, eta: f64, grid: GridSpec) -> Result<Vec<f64>> {
    let field = phasespace::wigner_field(state, eta * (1.0 - gamma), grid, DEFAULT_TRUNCATION_TOL)?;
    Ok(marginal_q(&field))
}

fn fisher_integral(weights: &[f64], center: &[f64], plus: &[f64], minus: &[f64], step: f64) -> Result<f64> {
    let mut fisher = 0.0;
    let mut kept = 0.0;
    let mut dropped = 0.0;
    for i in 0..center.len() {
        let d = (plus[i] - minus[i]) / (2.0 * step);
        if center[i] >= PROBABILITY_FLOOR {
            fisher += weights[i] * d * d / center[i];
            kept += weights[i] * d.abs();
        } else {
            dropped += weights[i] * d.abs();
        }
    }
    if dropped > 1e-6 * (kept + dropped) && dropped > 1e-12 {
        return Err(Error::Numerical(format!(
            "marginal falls below the probability floor where it still varies with γ \
             (dropped derivative mass {dropped:e} of {:e})",
            kept + dropped
        )));
    }
    Ok(fisher)
}

/// Fisher information of the q-marginal with respect to the absorption `γ`,
/// by central differences of marginals at `γ ± step`.
pub fn fisher_from_marginal(
    state: &StateSpec,
    gamma: f64,
    eta: f64,
    grid: GridSpec,
    step: f64,
) -> Result<FisherEstimate> {
    state.validate()?;
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            value: gamma,
            reason: "must lie in (0, 1)",
        });
    }
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "eta",
            value: eta,
            reason: "must lie in (0, 1]",
        });
    }
    if !(step > 0.0) || gamma - step <= 0.0 || gamma + step >= 1.0 {
        return Err(Error::InvalidParameter {
            name: "step",
            value: step,
            reason: "γ ± step must stay inside (0, 1)",
        });
    }
    grid.check_coverage(states::mean_photons(state)?)?;

    let weights = grid.simpson_weights();
    let center = marginal_at(state, gamma, eta, grid)?;
    let plus = marginal_at(state, gamma + step, eta, grid)?;
    let minus = marginal_at(state, gamma - step, eta, grid)?;
    let fisher = fisher_integral(&weights, &center, &plus, &minus, step)?;

    let half = 0.5 * step;
    let plus_h = marginal_at(state, gamma + half, eta, grid)?;
    let minus_h = marginal_at(state, gamma - half, eta, grid)?;
    let fisher_half_step = fisher_integral(&weights, &center, &plus_h, &minus_h, half)?;

    let richardson_rel_change = if fisher > 0.0 {
        (fisher_half_step - fisher).abs() / fisher
    } else {
        (fisher_half_step - fisher).abs()
    };
    Ok(FisherEstimate {
        gamma,
        eta,
        state: *state,
        fisher,
        dgamma_step: step,
        grid,
        delta_gamma: 1.0 / fisher.sqrt(),
        fisher_half_step,
        richardson_rel_change,
    })
}

/// Same as [`fisher_from_marginal`] on the default grid for the state and the
/// default step.
pub fn fisher_auto(state: &StateSpec, gamma: f64, eta: f64, n_points: usize) -> Result<FisherEstimate> {
    let grid = GridSpec::for_mean_photons_with(states::mean_photons(state)?, n_points);
    fisher_from_marginal(state, gamma, eta, grid, default_step(gamma))
}

/// Closed-form marginal Fisher information of a coherent probe, `ημ/(1-γ)`.
pub fn coherent_fisher(mu: f64, gamma: f64, eta: f64) -> f64 {
    eta * mu / (1.0 - gamma)
}

/// Shot-noise limit `Δγ = √((1-γ)/(ημ))`.
pub fn snl_delta_gamma(mu: f64, gamma: f64, eta: f64) -> Result<f64> {
    check_unit_interval("gamma", gamma)?;
    check_eta(eta)?;
    if !(mu > 0.0) {
        return Err(Error::Degenerate(
            "shot-noise limit needs a non-vacuum coherent probe (μ > 0)",
        ));
    }
    Ok(((1.0 - gamma) / (eta * mu)).sqrt())
}

/// Asymptotic Fock-probe limit `Δγ ≈ √(γ(1-γ)/(ηj))`.
pub fn uql_delta_gamma(j: u32, gamma: f64, eta: f64) -> Result<f64> {
    check_unit_interval("gamma", gamma)?;
    check_eta(eta)?;
    if j == 0 {
        return Err(Error::Degenerate("ultimate limit needs at least one photon (j > 0)"));
    }
    Ok((gamma * (1.0 - gamma) / (eta * j as f64)).sqrt())
}

fn check_eta(eta: f64) -> Result<()> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "eta",
            value: eta,
            reason: "must lie in (0, 1]",
        });
    }
    Ok(())
}

/// One row of a Fisher sweep. CSV columns follow field order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FisherRow {
    pub state_kind: StateKind,
    pub m_or_j: u32,
    pub lambda_or_mu: f64,
    pub gamma: f64,
    pub eta: f64,
    pub fisher: f64,
    pub delta_gamma: f64,
    pub dgamma_step: f64,
}

impl From<&FisherEstimate> for FisherRow {
    fn from(e: &FisherEstimate) -> Self {
        Self {
            state_kind: e.state.kind,
            m_or_j: e.state.index(),
            lambda_or_mu: e.state.intensity(),
            gamma: e.gamma,
            eta: e.eta,
            fisher: e.fisher,
            delta_gamma: e.delta_gamma,
            dgamma_step: e.dgamma_step,
        }
    }
}

/// Evaluates every `(state, γ)` point in parallel, preserving input order.
pub fn fisher_points(points: &[(StateSpec, f64)], eta: f64, n_points: usize) -> Result<Vec<FisherEstimate>> {
    points
        .par_iter()
        .map(|(state, gamma)| fisher_auto(state, *gamma, eta, n_points))
        .collect()
}

/// Fisher information versus `γ` for each state.
pub fn qfi_sweep_gamma(states: &[StateSpec], eta: f64, gammas: &[f64], n_points: usize) -> Result<Vec<FisherRow>> {
    let points: Vec<(StateSpec, f64)> = states
        .iter()
        .flat_map(|s| gammas.iter().map(move |&g| (*s, g)))
        .collect();
    Ok(fisher_points(&points, eta, n_points)?
        .iter()
        .map(FisherRow::from)
        .collect())
}

/// Fisher information versus `λ` at fixed `γ`: subtracted states for each
/// `m` and a coherent probe with `μ = λ`.
pub fn qfi_sweep_lambda(ms: &[u32], eta: f64, gamma: f64, lambdas: &[f64], n_points: usize) -> Result<Vec<FisherRow>> {
    let mut points = Vec::new();
    for &lambda in lambdas {
        for &m in ms {
            points.push((StateSpec::subtracted(m, lambda), gamma));
        }
        points.push((StateSpec::coherent(lambda), gamma));
    }
    Ok(fisher_points(&points, eta, n_points)?
        .iter()
        .map(FisherRow::from)
        .collect())
}

/// States plotted against `γ`: subtracted `m`, Fock `|m⟩` for `m ≥ 1`, and a
/// coherent probe with `μ = λ`.
pub fn gamma_sweep_states(ms: &[u32], lambda: f64) -> Vec<StateSpec> {
    let mut out: Vec<StateSpec> = ms.iter().map(|&m| StateSpec::subtracted(m, lambda)).collect();
    out.extend(ms.iter().filter(|&&m| m > 0).map(|&m| StateSpec::fock(m)));
    out.push(StateSpec::coherent(lambda));
    out
}

/// Smallest `λ` in `[lo, hi]` beyond which the coherent probe (`μ = λ`)
/// carries more marginal Fisher information than the m-subtracted state.
/// `None` when the sign does not change over the bracket.
pub fn coherent_crossover(m: u32, eta: f64, gamma: f64, lo: f64, hi: f64, n_points: usize) -> Result<Option<f64>> {
    let advantage = |lambda: f64| -> Result<f64> {
        let sub = fisher_auto(&StateSpec::subtracted(m, lambda), gamma, eta, n_points)?.fisher;
        let coh = fisher_auto(&StateSpec::coherent(lambda), gamma, eta, n_points)?.fisher;
        Ok(sub - coh)
    };
    let (mut a, mut b) = (lo, hi);
    let fa = advantage(a)?;
    let fb = advantage(b)?;
    if fa <= 0.0 || fb >= 0.0 {
        return Ok(None);
    }
    while b - a > 1e-4 * b {
        let mid = 0.5 * (a + b);
        if advantage(mid)? > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(Some(0.5 * (a + b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn snl_examples() {
        assert_relative_eq!(snl_delta_gamma(100.0, 0.0, 1.0).unwrap(), 0.1, max_relative = 1e-15);
        assert_relative_eq!(snl_delta_gamma(100.0, 0.99, 1.0).unwrap(), 0.01, max_relative = 1e-12);
        assert_relative_eq!(
            snl_delta_gamma(1.0, 0.5, 0.98).unwrap(),
            (0.5f64 / 0.98).sqrt(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            snl_delta_gamma(1.0, 0.5, 0.98).unwrap(),
            0.714_285_714_285_714_3,
            max_relative = 1e-12
        );
        assert!(snl_delta_gamma(0.0, 0.5, 1.0).is_err());
    }

    #[test]
    fn uql_examples() {
        assert_relative_eq!(uql_delta_gamma(100, 0.5, 1.0).unwrap(), 0.05, max_relative = 1e-15);
        assert!(uql_delta_gamma(1, 1e-14, 1.0).unwrap() < 1e-6);
        assert_relative_eq!(
            uql_delta_gamma(4, 0.2, 0.98).unwrap(),
            (0.16f64 / 3.92).sqrt(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            uql_delta_gamma(4, 0.2, 0.98).unwrap(),
            0.202_030_508_910_442,
            max_relative = 1e-12
        );
        assert!(uql_delta_gamma(0, 0.5, 1.0).is_err());
    }

    #[test]
    fn coherent_marginal_fisher_matches_closed_form() {
        for &(mu, gamma) in &[(1.0, 0.3), (10.0, 0.05), (0.01, 0.9)] {
            let est = fisher_auto(&StateSpec::coherent(mu), gamma, 0.98, 401).unwrap();
            let expected = coherent_fisher(mu, gamma, 0.98);
            assert!((est.fisher / expected - 1.0).abs() < 1e-2, "mu={mu} gamma={gamma}");
            assert!(est.is_step_stable());
            assert_relative_eq!(est.delta_gamma * est.fisher.sqrt(), 1.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn vacuum_carries_no_information() {
        let est = fisher_auto(&StateSpec::coherent(0.0), 0.4, 1.0, 201).unwrap();
        assert_eq!(est.fisher, 0.0);
        assert!(est.delta_gamma.is_infinite());
    }

    #[test]
    fn rejects_endpoints() {
        let grid = GridSpec::for_mean_photons(1.0);
        let s = StateSpec::fock(1);
        assert!(fisher_from_marginal(&s, 0.0, 1.0, grid, 1e-3).is_err());
        assert!(fisher_from_marginal(&s, 0.0005, 1.0, grid, 1e-3).is_err());
        assert!(fisher_from_marginal(&s, 0.5, 0.0, grid, 1e-3).is_err());
    }

    #[test]
    fn default_step_rule() {
        assert_eq!(default_step(0.5), 1e-3);
        assert_relative_eq!(default_step(0.005), 5e-4);
        assert_relative_eq!(default_step(0.999), 1e-4, max_relative = 1e-9);
    }

    #[test]
    fn sweep_states_layout() {
        let s = gamma_sweep_states(&[0, 1, 2, 3], 0.01);
        assert_eq!(s.len(), 8);
        assert_eq!(s[4], StateSpec::fock(1));
        assert_eq!(s[7], StateSpec::coherent(0.01));
    }

    #[test]
    fn homodyne_on_fock_is_bounded_by_photon_counting() {
        // The marginal sees |3⟩ through one quadrature only and cannot reach
        // the photon-counting value 12 at γ = 0.5, η = 1.
        let counting = crate::oracle::exact_fock_loss_fisher(3, 0.5, 1.0).unwrap();
        let marginal = fisher_auto(&StateSpec::fock(3), 0.5, 1.0, 401).unwrap().fisher;
        assert!(marginal > 0.0 && marginal < counting, "{marginal} vs {counting}");
    }
}
