//! Probe states in the photon-number basis.
//!
//! The reduced signal of an m-photon-subtracted twin beam is an m-photon-added
//! thermal state whose photon-number distribution is a negative binomial
//! shifted by `m`:
//!
//! `P(m + k) = (1 - x)^(m+1) C(m + k, m) x^k`, with `x = λ / (1 + λ)`.
//!
//! Thermal and Fock baselines are the `m = 0` and `λ = 0` special cases of the
//! same structure. Coherent states are off-diagonal and are only handled
//! analytically in phase space.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_non_negative, Error, Result};

/// Default truncation tolerance for photon-number distributions.
pub const DEFAULT_TRUNCATION_TOL: f64 = 1e-12;

/// Hard cap on the number of Fock levels a distribution may use.
pub const DEFAULT_MAX_DIM: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StateKind {
    SubtractedTBS,
    Thermal,
    Coherent,
    Fock,
}

impl StateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            StateKind::SubtractedTBS => "SubtractedTBS",
            StateKind::Thermal => "Thermal",
            StateKind::Coherent => "Coherent",
            StateKind::Fock => "Fock",
        }
    }
}

impl fmt::Display for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "subtractedtbs" | "subtracted" => Ok(StateKind::SubtractedTBS),
            "thermal" => Ok(StateKind::Thermal),
            "coherent" => Ok(StateKind::Coherent),
            "fock" => Ok(StateKind::Fock),
            _ => Err(Error::Parse(format!("unknown state kind `{s}`"))),
        }
    }
}

/// Symbolic description of a probe state.
///
/// Serializes as the flat record `{kind, m, lambda, mu, j}`. Fields unused by
/// a kind are carried as zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateSpec {
    pub kind: StateKind,
    #[serde(default)]
    pub m: u32,
    #[serde(default)]
    pub lambda: f64,
    #[serde(default)]
    pub mu: f64,
    #[serde(default)]
    pub j: u32,
}

impl StateSpec {
    /// Signal mode of an m-photon-subtracted twin beam with `λ` mean photons
    /// per mode before subtraction.
    pub fn subtracted(m: u32, lambda: f64) -> Self {
        Self {
            kind: StateKind::SubtractedTBS,
            m,
            lambda,
            mu: 0.0,
            j: 0,
        }
    }

    pub fn thermal(lambda: f64) -> Self {
        Self {
            kind: StateKind::Thermal,
            m: 0,
            lambda,
            mu: 0.0,
            j: 0,
        }
    }

    pub fn coherent(mu: f64) -> Self {
        Self {
            kind: StateKind::Coherent,
            m: 0,
            lambda: 0.0,
            mu,
            j: 0,
        }
    }

    pub fn fock(j: u32) -> Self {
        Self {
            kind: StateKind::Fock,
            m: 0,
            lambda: 0.0,
            mu: 0.0,
            j,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_non_negative("lambda", self.lambda)?;
        check_non_negative("mu", self.mu)?;
        Ok(())
    }

    /// Thermal parameter `x = λ/(1+λ)`, always in `[0, 1)`.
    pub fn thermal_x(&self) -> f64 {
        thermal_x(self.lambda)
    }

    /// Photon number (`m` or `j`) identifying the state within its family.
    pub fn index(&self) -> u32 {
        match self.kind {
            StateKind::SubtractedTBS => self.m,
            StateKind::Fock => self.j,
            StateKind::Thermal | StateKind::Coherent => 0,
        }
    }

    /// `λ` or `μ` depending on kind.
    pub fn intensity(&self) -> f64 {
        match self.kind {
            StateKind::Coherent => self.mu,
            StateKind::SubtractedTBS | StateKind::Thermal => self.lambda,
            StateKind::Fock => 0.0,
        }
    }

    /// Parses the flat `key=value` form, e.g. `kind=SubtractedTBS,m=2,lambda=0.01`.
    pub fn from_kv(s: &str) -> Result<Self> {
        let mut spec = StateSpec::thermal(0.0);
        let mut kind = None;
        for pair in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{pair}`")))?;
            let bad = || Error::Parse(format!("bad value for `{key}`: `{value}`"));
            match key.trim() {
                "kind" => kind = Some(value.trim().parse::<StateKind>()?),
                "m" => spec.m = value.trim().parse().map_err(|_| bad())?,
                "lambda" => spec.lambda = value.trim().parse().map_err(|_| bad())?,
                "mu" => spec.mu = value.trim().parse().map_err(|_| bad())?,
                "j" => spec.j = value.trim().parse().map_err(|_| bad())?,
                other => return Err(Error::Parse(format!("unknown state key `{other}`"))),
            }
        }
        spec.kind = kind.ok_or_else(|| Error::Parse("missing `kind`".into()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_kv(&self) -> String {
        format!(
            "kind={},m={},lambda={},mu={},j={}",
            self.kind, self.m, self.lambda, self.mu, self.j
        )
    }
}

pub(crate) fn thermal_x(lambda: f64) -> f64 {
    lambda / (1.0 + lambda)
}

/// Truncated diagonal density operator in the photon-number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDensity {
    probs: Vec<f64>,
    tail_bound: f64,
}

impl FockDensity {
    /// Builds a distribution from explicit probabilities and an upper bound on
    /// the mass lost to truncation.
    pub fn new(probs: Vec<f64>, tail_bound: f64) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Degenerate("empty photon-number distribution"));
        }
        if let Some(&bad) = probs.iter().find(|p| !(**p >= 0.0) || !p.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "probability",
                value: bad,
                reason: "must be finite and non-negative",
            });
        }
        check_non_negative("tail_bound", tail_bound)?;
        let mass: f64 = probs.iter().sum();
        if mass > 1.0 + 1e-12 || mass + tail_bound < 1.0 - 1e-12 {
            return Err(Error::Numerical(format!(
                "distribution mass {mass} with tail bound {tail_bound:e} is not normalized"
            )));
        }
        Ok(Self { probs, tail_bound })
    }

    /// Point mass on `|j⟩`.
    pub fn fock(j: usize) -> Self {
        let mut probs = vec![0.0; j + 1];
        probs[j] = 1.0;
        Self { probs, tail_bound: 0.0 }
    }

    pub(crate) fn from_parts(probs: Vec<f64>, tail_bound: f64) -> Self {
        Self { probs, tail_bound }
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// `P(n)`, zero beyond the truncation.
    pub fn prob(&self, n: usize) -> f64 {
        self.probs.get(n).copied().unwrap_or(0.0)
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    pub fn total_mass(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.probs.iter().enumerate().map(|(n, p)| n as f64 * p).sum()
    }

    pub fn second_moment(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(n, p)| (n as f64) * (n as f64) * p)
            .sum()
    }

    /// `⟨n²⟩ - ⟨n⟩²`.
    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        self.second_moment() - mean * mean
    }

    /// Total-variation distance to another distribution over the union support.
    pub fn total_variation(&self, other: &FockDensity) -> f64 {
        let n = self.dim().max(other.dim());
        0.5 * (0..n).map(|k| (self.prob(k) - other.prob(k)).abs()).sum::<f64>()
    }
}

/// Truncation controls for [`photon_number_distribution_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    pub tol: f64,
    pub max_dim: usize,
}

impl Default for Truncation {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TRUNCATION_TOL,
            max_dim: DEFAULT_MAX_DIM,
        }
    }
}

/// Diagonal photon-number distribution of a state, truncated so the residual
/// mass is below `tol`.
pub fn photon_number_distribution(spec: &StateSpec, tol: f64) -> Result<FockDensity> {
    photon_number_distribution_with(
        spec,
        Truncation {
            tol,
            ..Truncation::default()
        },
    )
}

pub fn photon_number_distribution_with(spec: &StateSpec, trunc: Truncation) -> Result<FockDensity> {
    spec.validate()?;
    if !(trunc.tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: trunc.tol,
            reason: "truncation tolerance must be positive",
        });
    }
    match spec.kind {
        StateKind::Coherent => Err(Error::NotDiagonal("coherent")),
        StateKind::Fock => Ok(FockDensity::fock(spec.j as usize)),
        StateKind::Thermal => shifted_negative_binomial(0, spec.lambda, trunc),
        StateKind::SubtractedTBS => shifted_negative_binomial(spec.m as usize, spec.lambda, trunc),
    }
}

/// `P(m + k) = (1-x)^(m+1) C(m+k, m) x^k`, generated by the term ratio
/// `x (m+k+1)/(k+1)` and stopped once the geometric tail bound drops below
/// the tolerance for both the mass and the second moment.
fn shifted_negative_binomial(m: usize, lambda: f64, trunc: Truncation) -> Result<FockDensity> {
    let x = thermal_x(lambda);
    let mut probs = vec![0.0; m];
    // (1-x)^(m+1) = (1+λ)^-(m+1)
    let mut term = (-(m as f64 + 1.0) * lambda.ln_1p()).exp();
    let mut k = 0usize;
    loop {
        probs.push(term);
        let ratio = x * (m + k + 1) as f64 / (k + 1) as f64;
        // Ratios decrease monotonically toward x, so once below one the tails
        // of the mass and of the second moment are bounded by geometric sums.
        let (tail, tail_n2) = if ratio < 1.0 {
            let n = (m + k) as f64;
            let g = 1.0 - ratio;
            let n2 = n * n * ratio / g + 2.0 * n * ratio / (g * g) + ratio * (1.0 + ratio) / (g * g * g);
            (term * ratio / g, term * n2)
        } else {
            (f64::INFINITY, f64::INFINITY)
        };
        if tail < trunc.tol && tail_n2 < trunc.tol {
            return Ok(FockDensity::from_parts(probs, tail));
        }
        if probs.len() >= trunc.max_dim {
            let achieved = if tail.is_finite() {
                tail
            } else {
                1.0 - probs.iter().sum::<f64>()
            };
            return Err(Error::Truncation {
                achieved,
                tol: trunc.tol,
                dim: probs.len(),
            });
        }
        term *= ratio;
        k += 1;
    }
}

/// Normalization `N^m = 1/(√(m!) λ^(m/2))` of `a_i^m S(λ)|0,0⟩`.
pub fn subtracted_state_norm(m: u32, lambda: f64) -> Result<f64> {
    check_non_negative("lambda", lambda)?;
    if m == 0 {
        return Ok(1.0);
    }
    if lambda == 0.0 {
        return Err(Error::Degenerate(
            "photon subtraction from a vacuum idler has zero success probability",
        ));
    }
    let ln_norm = -0.5 * crate::special::ln_factorial(m as usize) - 0.5 * m as f64 * lambda.ln();
    Ok(ln_norm.exp())
}

/// Mean photon number: `(m+1)λ + m` for the subtracted state, `λ`, `μ`, `j`
/// for the baselines.
pub fn mean_photons(spec: &StateSpec) -> Result<f64> {
    spec.validate()?;
    Ok(match spec.kind {
        StateKind::SubtractedTBS => (spec.m as f64 + 1.0) * spec.lambda + spec.m as f64,
        StateKind::Thermal => spec.lambda,
        StateKind::Coherent => spec.mu,
        StateKind::Fock => spec.j as f64,
    })
}

/// Photon-number variance. The subtracted state has `(m+1)λ(1+λ)`.
pub fn photon_variance(spec: &StateSpec) -> Result<f64> {
    spec.validate()?;
    Ok(match spec.kind {
        StateKind::SubtractedTBS => (spec.m as f64 + 1.0) * spec.lambda * (1.0 + spec.lambda),
        StateKind::Thermal => spec.lambda * (1.0 + spec.lambda),
        StateKind::Coherent => spec.mu,
        StateKind::Fock => 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Brute-force oracle: unnormalized `C(p+m, m) x^p` weights summed until the
    /// remaining mass is negligible, then normalized.
    fn brute_force(m: usize, lambda: f64, n: usize) -> Vec<f64> {
        let x = lambda / (1.0 + lambda);
        let mut w = vec![0.0; m + n];
        let mut total = 0.0;
        for p in 0..n {
            let mut c = 1.0;
            for i in 1..=m {
                c *= (p + i) as f64 / i as f64;
            }
            let v = c * x.powi(p as i32);
            w[m + p] = v;
            total += v;
        }
        w.iter().map(|v| v / total).collect()
    }

    #[test]
    fn vacuum_from_zero_lambda() {
        let rho = photon_number_distribution(&StateSpec::subtracted(0, 0.0), 1e-12).unwrap();
        assert_eq!(rho.probs(), &[1.0]);
        assert_eq!(rho.tail_bound(), 0.0);
    }

    #[test]
    fn fock_limit_at_vanishing_lambda() {
        let rho = photon_number_distribution(&StateSpec::subtracted(2, 0.0), 1e-12).unwrap();
        assert_eq!(rho.prob(2), 1.0);
        let rho = photon_number_distribution(&StateSpec::subtracted(2, 1e-9), 1e-12).unwrap();
        assert!((rho.prob(2) - 1.0).abs() < 1e-8);
        assert!(rho.total_variation(&FockDensity::fock(2)) < 1e-8);
    }

    #[test]
    fn one_subtracted_unit_lambda_matches_brute_force() {
        let rho = photon_number_distribution(&StateSpec::subtracted(1, 1.0), 1e-12).unwrap();
        assert_eq!(rho.prob(0), 0.0);
        assert_relative_eq!(rho.prob(1), 0.25, max_relative = 1e-14);
        assert_relative_eq!(rho.prob(2), 0.25, max_relative = 1e-14);
        assert_relative_eq!(rho.prob(3), 0.1875, max_relative = 1e-14);
        let oracle = brute_force(1, 1.0, 200);
        for (n, p) in oracle.iter().enumerate().take(rho.dim()) {
            assert!((rho.prob(n) - p).abs() < 1e-14, "n = {n}");
        }
        assert!(rho.tail_bound() < 1e-12);
        assert_relative_eq!(rho.mean(), 3.0, max_relative = 1e-11);
    }

    #[test]
    fn thermal_and_fock_baselines() {
        let rho = photon_number_distribution(&StateSpec::thermal(0.5), 1e-12).unwrap();
        let x: f64 = 0.5 / 1.5;
        for n in 0..10 {
            assert_relative_eq!(rho.prob(n), (1.0 - x) * x.powi(n as i32), max_relative = 1e-13);
        }
        let rho = photon_number_distribution(&StateSpec::fock(4), 1e-12).unwrap();
        assert_eq!(rho.prob(4), 1.0);
        assert_eq!(rho.mean(), 4.0);
    }

    #[test]
    fn rejects_coherent_and_bad_tolerance() {
        assert_eq!(
            photon_number_distribution(&StateSpec::coherent(1.0), 1e-12),
            Err(Error::NotDiagonal("coherent"))
        );
        assert!(photon_number_distribution(&StateSpec::thermal(1.0), 0.0).is_err());
        assert!(photon_number_distribution(&StateSpec::thermal(-1.0), 1e-12).is_err());
    }

    #[test]
    fn truncation_failure_reports_bound() {
        let trunc = Truncation {
            tol: 1e-12,
            max_dim: 10,
        };
        match photon_number_distribution_with(&StateSpec::subtracted(1, 5.0), trunc) {
            Err(Error::Truncation { dim, achieved, .. }) => {
                assert_eq!(dim, 10);
                assert!(achieved > 1e-12);
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn norm_examples() {
        assert_eq!(subtracted_state_norm(0, 0.5).unwrap(), 1.0);
        assert_relative_eq!(subtracted_state_norm(1, 1.0).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(
            subtracted_state_norm(3, 0.25).unwrap(),
            1.0 / (6f64.sqrt() * 0.125),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            subtracted_state_norm(3, 0.25).unwrap(),
            3.265_986_323_710_904,
            max_relative = 1e-12
        );
        assert!(matches!(subtracted_state_norm(2, 0.0), Err(Error::Degenerate(_))));
    }

    #[test]
    fn mean_examples() {
        assert_relative_eq!(mean_photons(&StateSpec::subtracted(0, 0.01)).unwrap(), 0.01);
        assert_relative_eq!(
            mean_photons(&StateSpec::subtracted(3, 0.01)).unwrap(),
            3.04,
            max_relative = 1e-15
        );
        assert_relative_eq!(mean_photons(&StateSpec::subtracted(1, 1.0)).unwrap(), 3.0);
        assert_eq!(mean_photons(&StateSpec::coherent(2.5)).unwrap(), 2.5);
        assert_eq!(mean_photons(&StateSpec::fock(7)).unwrap(), 7.0);
    }

    #[test]
    fn kv_round_trip() {
        let spec = StateSpec::subtracted(2, 0.01);
        assert_eq!(StateSpec::from_kv(&spec.to_kv()).unwrap(), spec);
        let json = serde_json::to_value(spec).unwrap();
        let keys: Vec<_> = json.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys.len(), 5);
        for k in ["kind", "m", "lambda", "mu", "j"] {
            assert!(keys.iter().any(|key| key == k));
        }
        assert!(StateSpec::from_kv("m=2").is_err());
    }
}
