//! Grid-based computational toolkit for variational 1-capacity, fine-topology
//! density profiles, generalized Lipschitz numbers, and quasiconformal
//! distortion numbers.
//!
//! Everything here operates on uniform grids in dimensions 1 to 3. Limits of
//! the form `r -> 0` are replaced by density profiles over a dyadic radius
//! schedule, with tail max/min estimates over the smallest scheduled radii;
//! no extrapolation beyond the grid scale is claimed. Capacities are computed
//! exactly (up to integer quantization of edge weights) as s-t min-cuts of
//! the level-set energy.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and the command
//! line front end live in the companion `fincap-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bvtools;
pub mod capacity;
pub mod corpus;
pub mod covering;
pub mod distortion;
pub mod error;
pub mod finetopo;
pub mod flow;
pub mod grid;
pub mod lipnum;
pub mod maximal;
pub mod measure;
mod num;

pub use error::CoreError;
pub use grid::{
    Ball, DensityProfile, GridDomain, NodeSet, Point, RadiusSchedule, ScalarField, VectorField,
};
