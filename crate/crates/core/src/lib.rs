//! Exact computations with finite-dimensional left bialgebroids.

// Index loops mirror the formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod bialgebroid;
pub mod cli;
pub mod comodule;
pub mod dual;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod frobenius;
pub mod hopf;
pub mod hopf_module;
pub mod integral;
pub mod io;
pub mod lie_rinehart;
pub mod lift;
pub mod matrix;
pub mod report;
pub mod tensor;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use bialgebroid::{LeftBialgebroid, RightBialgebroid};
