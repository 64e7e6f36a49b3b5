//! Independent brute-force routes used to cross-check the primary
//! evaluators.
//!
//! The routes themselves share only the scalar primitives in
//! [`crate::special`] with `states`, `channels` and `phasespace`; the
//! verification functions at the bottom call both sides and compare.
//!
//! * Two-mode route: build the subtracted twin beam, trace out the idler,
//!   thin the signal photon by photon, and synthesize the Wigner function
//!   from ideal Fock-state Wigner functions.
//! * Derivative route: differentiate the generating function in `x` with
//!   truncated Taylor arithmetic.

mod jet;
mod two_mode;

use std::f64::consts::FRAC_1_PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::{laguerre_all, ln_binomial};

pub use jet::Jet;
pub use two_mode::{
    build_two_mode, build_two_mode_auto, subtraction_norm_brute_force, TwoModeAmplitudes, TWO_MODE_TAIL,
};

/// Highest subtraction order handled by the derivative route.
pub const MAX_JET_ORDER: u32 = 6;

/// `W = (1-x)^(m+1)/(π m!) · d^m/dx^m [ g(x) exp(-α(1-x) g(x)) ]`,
/// `g(x) = 1/(1 + x(2τ-1))`, evaluated at `x = λ/(1+λ)` with exact
/// order-m Taylor arithmetic.
pub fn derivative_route_wigner(m: u32, lambda: f64, tau: f64, q: f64, p: f64) -> Result<f64> {
    if m > MAX_JET_ORDER {
        return Err(Error::InvalidParameter {
            name: "m",
            value: m as f64,
            reason: "derivative route supports m <= 6",
        });
    }
    let x0 = lambda / (1.0 + lambda);
    let alpha = q * q + p * p;
    let order = m as usize;
    let x = Jet::variable(x0, order);
    let g = x.scale(2.0 * tau - 1.0).add_const(1.0).recip();
    let one_minus_x = x.scale(-1.0).add_const(1.0);
    let exponent = (&one_minus_x * &g).scale(-alpha);
    let f = &g * &exponent.exp();
    // f^(m)/m! is the m-th Taylor coefficient.
    Ok((1.0 - x0).powi(m as i32 + 1) * FRAC_1_PI * f.coeff(order))
}

/// Photon-by-photon thinning of a distribution (Pascal recursion).
pub fn thin_distribution(probs: &[f64], tau: f64) -> Vec<f64> {
    let mut out = vec![0.0; probs.len()];
    let mut row = vec![1.0];
    for (j, &pj) in probs.iter().enumerate() {
        if j > 0 {
            let mut next = vec![0.0; j + 1];
            for (l, v) in row.iter().enumerate() {
                next[l] += (1.0 - tau) * v;
                next[l + 1] += tau * v;
            }
            row = next;
        }
        if pj != 0.0 {
            for (l, v) in row.iter().enumerate() {
                out[l] += pj * v;
            }
        }
    }
    out
}

/// `Σ_l P(l) (-1)^l e^{-α} L_l(2α) / π` from ideal Fock Wigner functions.
pub fn fock_synthesis_wigner(probs: &[f64], q: f64, p: f64) -> f64 {
    let alpha = q * q + p * p;
    let lag = laguerre_all(probs.len().saturating_sub(1), 2.0 * alpha);
    let s: f64 = probs
        .iter()
        .zip(&lag)
        .enumerate()
        .map(|(l, (pl, ll))| if l % 2 == 0 { pl * ll } else { -pl * ll })
        .sum();
    s * (-alpha).exp() * FRAC_1_PI
}

/// Two-mode route for a fixed `(m, λ, τ)`, reusable across phase-space points.
#[derive(Debug, Clone)]
pub struct TwoModeRoute {
    lossy: Vec<f64>,
}

impl TwoModeRoute {
    pub fn new(m: u32, lambda: f64, tau: f64) -> Result<Self> {
        crate::error::check_unit_interval("tau", tau)?;
        let state = build_two_mode_auto(m as usize, lambda)?;
        Ok(Self {
            lossy: thin_distribution(&state.trace_idler(), tau),
        })
    }

    pub fn distribution(&self) -> &[f64] {
        &self.lossy
    }

    pub fn wigner(&self, q: f64, p: f64) -> f64 {
        fock_synthesis_wigner(&self.lossy, q, p)
    }
}

pub fn two_mode_route_wigner(m: u32, lambda: f64, tau: f64, q: f64, p: f64) -> Result<f64> {
    Ok(TwoModeRoute::new(m, lambda, tau)?.wigner(q, p))
}

/// Fisher information about `γ` in the photon count of `|j⟩` after loss
/// `τ = η(1-γ)`: `Σ_l P(l) (∂_γ ln P(l))²` with `P = Binomial(j, τ)`.
/// Analytically `j η² / (τ(1-τ))`.
pub fn exact_fock_loss_fisher(j: u32, gamma: f64, eta: f64) -> Result<f64> {
    if j == 0 {
        return Err(Error::Degenerate("vacuum carries no information about the loss"));
    }
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
    let tau = eta * (1.0 - gamma);
    let n = j as usize;
    let fisher = (0..=n)
        .map(|l| {
            let ln_p = ln_binomial(n, l) + l as f64 * tau.ln() + (n - l) as f64 * (-tau).ln_1p();
            let score = -eta * (l as f64 / tau - (n - l) as f64 / (1.0 - tau));
            ln_p.exp() * score * score
        })
        .sum();
    Ok(fisher)
}

/// One named agreement check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: impl Into<String>, max_error: f64, tolerance: f64) {
        self.checks.push(CheckResult {
            name: name.into(),
            max_error,
            tolerance,
            passed: max_error <= tolerance,
        });
    }
}

/// Parameter lattice for the three-route agreement check.
#[derive(Debug, Clone, Serialize)]
pub struct OracleLattice {
    pub ms: Vec<u32>,
    pub lambdas: Vec<f64>,
    pub taus: Vec<f64>,
    /// Half-width of the square sub-grid of probe points.
    pub half_width: f64,
    pub points_per_axis: usize,
    pub tolerance: f64,
}

impl Default for OracleLattice {
    fn default() -> Self {
        Self {
            ms: vec![0, 1, 2, 3],
            lambdas: vec![0.01, 0.1, 1.0],
            taus: vec![0.2, 0.49, 0.5, 0.51, 0.98],
            half_width: 3.0,
            points_per_axis: 21,
            tolerance: 1e-8,
        }
    }
}

impl OracleLattice {
    pub fn probe_points(&self) -> Vec<f64> {
        let n = self.points_per_axis;
        (0..n)
            .map(|i| -self.half_width + 2.0 * self.half_width * i as f64 / (n - 1) as f64)
            .collect()
    }
}

/// Largest pairwise disagreement among the series, derivative and two-mode
/// routes for one `(m, λ, τ)` over the lattice's probe points.
pub fn triple_agreement(m: u32, lambda: f64, tau: f64, lattice: &OracleLattice) -> Result<f64> {
    let rho = crate::states::photon_number_distribution(
        &crate::states::StateSpec::subtracted(m, lambda),
        crate::states::DEFAULT_TRUNCATION_TOL,
    )?;
    let two_mode = TwoModeRoute::new(m, lambda, tau)?;
    let pts = lattice.probe_points();
    let mut worst = 0.0f64;
    for &q in &pts {
        for &p in &pts {
            let series = crate::phasespace::wigner_diagonal_lossy(&rho, tau, q, p)?;
            let deriv = derivative_route_wigner(m, lambda, tau, q, p)?;
            let tm = two_mode.wigner(q, p);
            worst = worst
                .max((series - deriv).abs())
                .max((series - tm).abs())
                .max((deriv - tm).abs());
        }
    }
    Ok(worst)
}

/// Runs every oracle comparison and collects the results.
pub fn run_verification(lattice: &OracleLattice) -> Result<VerificationReport> {
    use rayon::prelude::*;

    let mut report = VerificationReport::default();

    let cases: Vec<(u32, f64, f64)> = lattice
        .ms
        .iter()
        .flat_map(|&m| {
            lattice
                .lambdas
                .iter()
                .flat_map(move |&l| lattice.taus.iter().map(move |&t| (m, l, t)))
        })
        .collect();
    let errors: Vec<f64> = cases
        .par_iter()
        .map(|&(m, l, t)| triple_agreement(m, l, t, lattice))
        .collect::<Result<_>>()?;
    let worst = errors.iter().copied().fold(0.0, f64::max);
    report.push("wigner: series vs derivative vs two-mode", worst, lattice.tolerance);

    let mut trace_err = 0.0f64;
    for &m in &lattice.ms {
        for &lambda in &lattice.lambdas {
            let rho = crate::states::photon_number_distribution(
                &crate::states::StateSpec::subtracted(m, lambda),
                crate::states::DEFAULT_TRUNCATION_TOL,
            )?;
            let traced = build_two_mode_auto(m as usize, lambda)?.trace_idler();
            let n = traced.len().max(rho.dim());
            for k in 0..n {
                trace_err = trace_err.max((traced.get(k).copied().unwrap_or(0.0) - rho.prob(k)).abs());
            }
        }
    }
    report.push("states: idler trace vs photon-number distribution", trace_err, 1e-12);

    let mut norm_err = 0.0f64;
    for &m in &lattice.ms {
        for &lambda in &lattice.lambdas {
            let primary = crate::states::subtracted_state_norm(m, lambda)?;
            let brute = subtraction_norm_brute_force(m as usize, lambda)?;
            norm_err = norm_err.max((primary / brute - 1.0).abs());
        }
    }
    report.push("states: subtraction normalization", norm_err, 1e-10);

    let mut loss_err = 0.0f64;
    for &m in &lattice.ms {
        let rho = crate::states::photon_number_distribution(
            &crate::states::StateSpec::subtracted(m, 1.0),
            crate::states::DEFAULT_TRUNCATION_TOL,
        )?;
        for &tau in &lattice.taus {
            let primary = crate::channels::apply_loss(&rho, tau)?;
            let oracle = thin_distribution(rho.probs(), tau);
            for (k, v) in oracle.iter().enumerate() {
                loss_err = loss_err.max((primary.prob(k) - v).abs());
            }
        }
    }
    report.push("channels: binomial loss vs photon-by-photon thinning", loss_err, 1e-12);

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn zeroth_derivative_is_thermal() {
        let lambda: f64 = 0.3;
        let x = lambda / (1.0 + lambda);
        let (q, p, tau) = (0.4, -0.9, 0.7);
        let alpha = q * q + p * p;
        let d = 1.0 + x * (2.0 * tau - 1.0);
        let expected = (1.0 - x) / (std::f64::consts::PI * d) * (-alpha * (1.0 - x) / d).exp();
        assert_relative_eq!(
            derivative_route_wigner(0, lambda, tau, q, p).unwrap(),
            expected,
            max_relative = 1e-14
        );
    }

    #[test]
    fn derivative_route_matches_two_mode() {
        for &(m, lambda, tau, q) in &[(1, 0.01, 0.98, 0.0), (3, 0.01, 0.49, 1.0), (2, 1.0, 0.5, 0.7)] {
            let d = derivative_route_wigner(m, lambda, tau, q, 0.0).unwrap();
            let t = two_mode_route_wigner(m, lambda, tau, q, 0.0).unwrap();
            assert!((d - t).abs() < 1e-10, "m={m} lambda={lambda} tau={tau}: {d} vs {t}");
        }
    }

    #[test]
    fn derivative_order_bound() {
        assert!(derivative_route_wigner(7, 0.1, 0.5, 0.0, 0.0).is_err());
        assert!(derivative_route_wigner(6, 0.1, 0.5, 0.0, 0.0).is_ok());
    }

    #[test]
    fn single_photon_half_loss_from_synthesis() {
        let lossy = thin_distribution(&[0.0, 1.0], 0.5);
        assert_eq!(lossy, vec![0.5, 0.5]);
        assert!(fock_synthesis_wigner(&lossy, 0.0, 0.0).abs() < 1e-17);
    }

    #[test]
    fn fock_loss_fisher_examples() {
        assert_relative_eq!(exact_fock_loss_fisher(1, 0.5, 1.0).unwrap(), 4.0, max_relative = 1e-13);
        assert_relative_eq!(
            exact_fock_loss_fisher(10, 0.5, 1.0).unwrap(),
            40.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(exact_fock_loss_fisher(3, 0.5, 1.0).unwrap(), 12.0, max_relative = 1e-12);
        let near_zero = exact_fock_loss_fisher(5, 1e-6, 0.98).unwrap();
        assert!(near_zero.is_finite());
        let tau: f64 = 0.98 * (1.0 - 1e-6);
        assert_relative_eq!(near_zero, 5.0 * 0.98 * 0.98 / (tau * (1.0 - tau)), max_relative = 1e-9);
        assert!(exact_fock_loss_fisher(1, 0.0, 1.0).is_err());
        assert!(exact_fock_loss_fisher(1, 1.0, 1.0).is_err());
        assert!(exact_fock_loss_fisher(0, 0.5, 1.0).is_err());
    }
}
