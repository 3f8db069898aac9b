//! Accretive growth of a viscoelastic solid in 2D.
//!
//! The body occupies the sublevel sets of an arrival-time field `theta`:
//! a point `x` belongs to the body at time `t` once `theta(x) < t`. The
//! field solves a generalized eikonal equation whose speed depends on the
//! deformation state, while the deformation itself solves a viscoelastic
//! equilibrium on the whole container, with the not-yet-accreted region
//! filled by a very compliant fictitious medium. New material attaches
//! unstressed, which is encoded by freezing the deformation gradient into
//! a backstrain tensor at the instant of attachment.
//!
//! The crate is organized along the solver pipeline:
//!
//! * [`geometry`] — container, regions, uniform grid, difference stencils;
//! * [`constitutive`] — energy densities, dissipation, growth speed;
//! * [`eikonal`] — fast-marching arrival times plus a shortest-path oracle;
//! * [`backstrain`] — attachment-time recording of deformation gradients;
//! * [`equilibrium`] — per-step incremental energy minimization;
//! * [`coupling`] — the outer fixed-point loop tying the two solvers;
//! * [`harness`] — the self-verification suites;
//! * [`config`], [`export`] — run configuration and field output.

pub mod backstrain;
pub mod config;
pub mod constitutive;
pub mod coupling;
pub mod eikonal;
pub mod equilibrium;
pub mod error;
pub mod export;
pub mod geometry;
pub mod harness;
pub mod math;

pub use config::RunConfig;
pub use error::Error;
