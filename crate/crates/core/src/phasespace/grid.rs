use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default number of nodes per axis.
pub const DEFAULT_POINTS: usize = 401;

/// Minimum half-width of any grid, in quadrature units.
pub const MIN_HALF_WIDTH: f64 = 6.0;

/// Coverage factor used when sizing grids automatically: `q_max = 5 √(2⟨n⟩+1)`.
pub const DEFAULT_COVERAGE: f64 = 5.0;

/// Smallest accepted coverage factor; grids below `3 √(2⟨n⟩+1)` are rejected.
pub const MIN_COVERAGE: f64 = 3.0;

/// Symmetric square grid `[-q_max, q_max]²` with an odd number of nodes per
/// axis, so the origin is a node and composite Simpson applies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub q_max: f64,
    pub n_points: usize,
}

impl GridSpec {
    pub fn new(q_max: f64, n_points: usize) -> Result<Self> {
        if !(q_max > 0.0) || !q_max.is_finite() {
            return Err(Error::InvalidGrid(format!("half-width must be positive, got {q_max}")));
        }
        if n_points < 5 || n_points.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "need an odd number of points >= 5 per axis, got {n_points}"
            )));
        }
        Ok(Self { q_max, n_points })
    }

    /// Grid sized for a state with the given mean photon number.
    pub fn for_mean_photons(mean_photons: f64) -> Self {
        Self::for_mean_photons_with(mean_photons, DEFAULT_POINTS)
    }

    pub fn for_mean_photons_with(mean_photons: f64, n_points: usize) -> Self {
        let q_max = MIN_HALF_WIDTH.max(DEFAULT_COVERAGE * (2.0 * mean_photons.max(0.0) + 1.0).sqrt());
        Self { q_max, n_points }
    }

    /// Smallest half-width allowed for a state with this mean photon number.
    pub fn required_half_width(mean_photons: f64) -> f64 {
        MIN_COVERAGE * (2.0 * mean_photons.max(0.0) + 1.0).sqrt()
    }

    pub fn check_coverage(&self, mean_photons: f64) -> Result<()> {
        let required = Self::required_half_width(mean_photons);
        if self.q_max < required {
            return Err(Error::GridCoverage {
                q_max: self.q_max,
                mean_photons,
                required,
            });
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.q_max / (self.n_points - 1) as f64
    }

    /// Index of the origin node.
    pub fn center(&self) -> usize {
        self.n_points / 2
    }

    /// Node coordinates, exactly antisymmetric about the origin.
    pub fn nodes(&self) -> Vec<f64> {
        let h = self.spacing();
        let c = self.center() as i64;
        (0..self.n_points as i64).map(|i| (i - c) as f64 * h).collect()
    }

    /// Composite Simpson weights `h/3 · [1, 4, 2, 4, ..., 4, 1]`.
    pub fn simpson_weights(&self) -> Vec<f64> {
        simpson_weights(self.n_points, self.spacing())
    }
}

pub(crate) fn simpson_weights(n: usize, h: f64) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n)
        .map(|i| {
            if i == 0 || i == n - 1 {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            }
        })
        .collect();
    for v in &mut w {
        *v *= h / 3.0;
    }
    w
}
