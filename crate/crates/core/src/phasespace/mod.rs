//! Wigner functions on rectangular `(q, p)` grids, with normalization,
//! quadrature marginals and the negativity volume.

mod field;
mod grid;
mod negativity;
mod wigner;

pub use field::{marginal_q, negativity_volume, Convention, WignerField, NORMALIZATION_TOL};
pub use grid::{GridSpec, DEFAULT_COVERAGE, DEFAULT_POINTS, MIN_COVERAGE, MIN_HALF_WIDTH};
pub use negativity::{
    classicality_threshold, negativity_at, negativity_grid, negativity_sweep, NegativityPoint, CLASSICALITY_THRESHOLD,
};
pub use wigner::{
    coherent_field, diagonal_field, wigner_coherent_lossy, wigner_diagonal_lossy, wigner_field, wigner_field_with,
    wigner_fock_lossy, wigner_subtracted_lossy,
};
