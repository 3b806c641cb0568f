//! Simulation harness, sensor-log IO and command-line front end for
//! location-unaware distribution learning. The algorithms live in
//! [`fieldcdf_core`].

pub mod cli;
pub mod config;
pub mod dataset;
mod error;
pub mod harness;
pub mod io;

pub use error::{Error, Result};
pub use fieldcdf_core as core;
