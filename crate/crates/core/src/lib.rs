//! Photon-subtracted twin-beam states under absorption and detection loss.
//!
//! Subtracting `m` photons from the idler of a twin beam leaves the signal in
//! an m-photon-added thermal state. This crate evaluates those states (and
//! thermal, coherent and Fock baselines) after a loss channel of
//! transmittance `τ = η(1-γ)`:
//!
//! * [`states`]: photon-number distributions and closed-form moments.
//! * [`channels`]: binomial loss on diagonal states.
//! * [`phasespace`]: Wigner fields, marginals and negativity volume.
//! * [`statistics`]: photon-number moments and Fano factor, exact and from phase space.
//! * [`metrology`]: Fisher information for absorption estimation from the
//!   q-quadrature marginal, and shot-noise / ultimate-limit baselines.
//! * [`oracle`]: independent brute-force routes used for verification.
//! * [`cli`]: dataset commands behind the `twinbeam` binary.

// `!(x > 0.0)` rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channels;
pub mod cli;
pub mod error;
pub mod metrology;
pub mod oracle;
pub mod phasespace;
pub mod special;
pub mod states;
pub mod statistics;

pub use channels::{apply_loss, equivalent_transmittance, ChannelParams};
pub use error::{Error, Result};
pub use phasespace::{GridSpec, WignerField};
pub use states::{FockDensity, StateKind, StateSpec};
