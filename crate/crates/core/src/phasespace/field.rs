use std::f64::consts::FRAC_1_PI;
use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::grid::GridSpec;

/// Normalization tolerance for fields on a compliant grid.
pub const NORMALIZATION_TOL: f64 = 1e-8;

/// Quadrature scaling of a field.
///
/// `FockRoute` fields have vacuum `e^{-(q²+p²)}/π` (quadrature variance 1/2);
/// `CoherentRoute` fields use `(2/π) e^{-2(...)}` (variance 1/4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Convention {
    FockRoute,
    CoherentRoute,
}

impl Convention {
    /// Largest possible `|W|` in this convention.
    pub fn peak_bound(self) -> f64 {
        match self {
            Convention::FockRoute => FRAC_1_PI,
            Convention::CoherentRoute => 2.0 * FRAC_1_PI,
        }
    }
}

/// Wigner values on a [`GridSpec`], row-major with `values[i * n + j] = W(q_i, p_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerField {
    grid: GridSpec,
    values: Vec<f64>,
    weights: Vec<f64>,
    convention: Convention,
}

impl WignerField {
    pub(crate) fn new(grid: GridSpec, values: Vec<f64>, convention: Convention) -> Self {
        debug_assert_eq!(values.len(), grid.n_points * grid.n_points);
        let weights = grid.simpson_weights();
        Self {
            grid,
            values,
            weights,
            convention,
        }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Per-axis quadrature weights.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn nodes(&self) -> Vec<f64> {
        self.grid.nodes()
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.grid.n_points + j]
    }

    pub fn value_at_origin(&self) -> f64 {
        let c = self.grid.center();
        self.value(c, c)
    }

    /// `∬ f(q, p, W(q, p)) dq dp` by tensor-product Simpson. Rows are summed
    /// in parallel and combined in index order, so the result is reproducible.
    pub fn integrate<F>(&self, f: F) -> f64
    where
        F: Fn(f64, f64, f64) -> f64 + Sync,
    {
        let nodes = self.grid.nodes();
        let n = self.grid.n_points;
        let rows: Vec<f64> = self
            .values
            .par_chunks(n)
            .enumerate()
            .map(|(i, row)| {
                let q = nodes[i];
                row.iter()
                    .zip(&nodes)
                    .zip(&self.weights)
                    .map(|((&w, &p), &wp)| wp * f(q, p, w))
                    .sum::<f64>()
                    * self.weights[i]
            })
            .collect();
        rows.iter().sum()
    }

    /// `∬ W dq dp`.
    pub fn normalization(&self) -> f64 {
        self.integrate(|_, _, w| w)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest pointwise difference to another field on the same grid.
    pub fn sup_distance(&self, other: &WignerField) -> f64 {
        assert_eq!(self.grid, other.grid, "fields live on different grids");
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()))
    }

    /// CSV with header `q,p,w`, one row per node, q-major.
    pub fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        let mut wtr = csv::Writer::from_writer(out);
        wtr.write_record(["q", "p", "w"])?;
        let nodes = self.grid.nodes();
        let n = self.grid.n_points;
        for (i, &q) in nodes.iter().enumerate() {
            for (j, &p) in nodes.iter().enumerate() {
                wtr.write_record([q.to_string(), p.to_string(), self.values[i * n + j].to_string()])?;
            }
        }
        wtr.flush()
    }

    /// Raw little-endian `f64` values, row-major (q index outer).
    pub fn write_binary<W: Write>(&self, mut out: W) -> io::Result<()> {
        let mut buf = Vec::with_capacity(self.values.len() * 8);
        for v in &self.values {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        out.write_all(&buf)
    }

    /// Reads back a binary dump written by [`WignerField::write_binary`].
    pub fn from_binary(grid: GridSpec, convention: Convention, bytes: &[u8]) -> io::Result<Self> {
        let n = grid.n_points * grid.n_points;
        if bytes.len() != n * 8 {
            return Err(io::Error::new(
                io::ErrorKind::InvalidData,
                format!("expected {} bytes, got {}", n * 8, bytes.len()),
            ));
        }
        let values = bytes
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
            .collect();
        Ok(Self::new(grid, values, convention))
    }
}

/// `δ = ∬|W| - 1`, computed as `∬(|W| - W)` so that it vanishes identically
/// for non-negative fields regardless of the grid's normalization error.
pub fn negativity_volume(field: &WignerField) -> f64 {
    let norm = field.normalization();
    if (norm - 1.0).abs() > NORMALIZATION_TOL {
        log::warn!("field normalization {norm} deviates from 1 by more than {NORMALIZATION_TOL:e}");
    }
    field.integrate(|_, _, w| w.abs() - w)
}

/// Quadrature distribution `Pr[q_i] = Σ_j W(q_i, p_j) w_j`.
pub fn marginal_q(field: &WignerField) -> Vec<f64> {
    let n = field.grid.n_points;
    field
        .values
        .chunks(n)
        .map(|row| row.iter().zip(&field.weights).map(|(w, wp)| w * wp).sum())
        .collect()
}
