//! Simulator and analysis toolkit for circle-invariant Lagrangian mean
//! curvature flow in C², reduced to the planar profile-curve flow
//!
//! ```text
//! ∂γ/∂t = κ − γ⊥/|γ|²
//! ```
//!
//! where κ is the curvature vector of γ and γ⊥ the normal projection of
//! the position. The crate provides:
//!
//! - [`geometry`]: discrete curve operators (curvature, radial forcing,
//!   winding/turning, Lagrangian angle, Hausdorff distances, resampling);
//! - [`flow`]: explicit front-tracking evolution in the physical, curve
//!   shortening, shrinker and expander gauges, with adaptive stepping,
//!   tangential redistribution and stop conditions;
//! - [`solitons`]: exact and shot special solutions (circle shrinkers,
//!   the Grim Reaper translator, minimal hyperbola profiles, self-similar
//!   profiles parameterized by asymptotic angle);
//! - [`singularity`]: singular-time estimation, Type I/II classification,
//!   parabolic rescaling, blow-down and blow-up model matching;
//! - [`scenarios`]: declarative experiment configs, generators for the
//!   standard initial curves, persistence and SVG plots.

pub mod flow;
pub mod geometry;
pub mod io;
pub mod scenarios;
pub mod singularity;
pub mod solitons;
pub mod vec2;

pub use vec2::Vec2;
