//! Discrete differential geometry of planar profile curves.
//!
//! A profile curve γ is a sampled polyline in the plane, closed or open,
//! standing for the circle-invariant Lagrangian surface
//! `(γ(s)cos φ, γ(s)sin φ)` it sweeps out. The surface itself is never
//! meshed; every quantity of interest reduces to curve-level data:
//! curvature vectors, the radial forcing term γ⊥/|γ|², winding and turning
//! numbers, the Lagrangian angle, and set distances between curves.
//!
//! All operations here are pure functions; none mutate shared state.

mod curve;
mod differential;
mod hausdorff;
mod resample;

pub use curve::{AsymptoticData, CurveDiagnostics, ProfileCurve, Topology};
pub use differential::{
    circular_range, curvature, default_origin_epsilon, diagnostics, flow_velocity,
    flow_velocity_eps, lagrangian_angle, radial_term, winding_and_turning,
};
pub(crate) use differential::radial_term_with_curvature;
pub use hausdorff::{
    hausdorff_distance, hausdorff_distance_windowed, point_to_polyline, polyline_hausdorff,
    PolylineDist,
};
pub use resample::{redistribute, resample};

use thiserror::Error;

/// Errors from curve validation and geometric operations.
#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("curve needs at least 8 points, got {0}")]
    TooFewPoints(usize),
    #[error("consecutive points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("closed curve must not duplicate its first point at the end")]
    ClosedDuplicateEndpoint,
    #[error("open curve requires asymptotic data")]
    MissingAsymptotics,
    #[error("asymptotic angle must lie in (0, π), got {0}")]
    BadAsymptoticAngle(f64),
    #[error("open-curve endpoint {index} is {dist:.3e} from its asymptotic ray (tolerance {tol:.3e})")]
    EndpointOffRay { index: usize, dist: f64, tol: f64 },
    #[error("degenerate curve: length {length:.3e} below 8 × target spacing {spacing:.3e}")]
    DegenerateCurve { length: f64, spacing: f64 },
    #[error("target spacing {spacing:.3e} not in (0, length/8 = {max:.3e})")]
    BadSpacing { spacing: f64, max: f64 },
    #[error("winding number undefined: curve passes within {eps:.3e} of the origin")]
    WindingUndefined { eps: f64 },
    #[error("turning number residual {residual:.3e} exceeds 0.01; curve under-resolved")]
    TurningResidual { residual: f64 },
    #[error("lagrangian angle undefined: sample {0} lies at the origin")]
    AngleAtOrigin(usize),
    #[error("point sets must be non-empty")]
    EmptyPointSet,
    #[error("no points inside the comparison window")]
    EmptyWindow,
}

pub type Result<T> = std::result::Result<T, GeometryError>;
