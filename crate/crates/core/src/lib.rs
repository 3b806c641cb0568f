//! Distribution learning for a bounded, Lipschitz spatio-temporal field sampled
//! along a unit path by a sensor that does not know where its samples were taken.
//!
//! The crate is `no_std` (it needs `alloc`) and contains the algorithmic parts:
//!
//! * [`field`]: bounded Lipschitz fields `X(s, t)` on `s ∈ [0, 1]`, including the
//!   sum-of-cosines field with random time-varying amplitudes.
//! * [`renewal`]: renewal-process sample locations, the stopping rule that fixes
//!   the sample count `M`, and full simulated sensing trials.
//! * [`estimate`]: the location-unaware estimator, which picks sample
//!   `⌊(M − 1)s⌋ + 1` of a trial as the field value at `s`.
//! * [`ecdf`]: empirical CDFs and the distances between them.
//! * [`bounds`]: closed-form error bounds, the DKW band and ε tuning.
//!
//! All transcendental math goes through `libm` so results are bit-identical
//! across targets.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod ecdf;
mod error;
pub mod estimate;
pub mod field;
pub mod renewal;
pub mod seed;

pub use bounds::{BoundParams, Theorem2Bound};
pub use ecdf::EmpiricalCdf;
pub use error::{Error, Result};
pub use estimate::{estimate_field_at, select_index, IntoPathPoint, PathPoint};
pub use field::{AmplitudeLaw, FieldKind, FieldRealization, FieldSpec};
pub use renewal::{
    IntersampleDistribution, IntersampleKind, LocationSequence, SimulatedTrial, TrialRecord,
    TrialView,
};
