use serde::{Deserialize, Serialize};

use super::{GeometryError, Result};
use crate::vec2::Vec2;

/// Relative tolerance for the endpoint-on-ray check of open curves:
/// distance from an endpoint to its asymptotic ray, over the endpoint's
/// distance from the origin. Hyperbola-type profiles truncated at a
/// window of a few vertex distances satisfy this comfortably.
pub const RAY_TOLERANCE_REL: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    Closed,
    Open,
}

/// Asymptotic data for open profile curves.
///
/// The two asymptotic rays emanate from the origin at polar angles
/// `ray_bisector ± angle_alpha / 2`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AsymptoticData {
    /// Opening angle α between the rays, in (0, π).
    pub angle_alpha: f64,
    /// Direction of the symmetry axis between the rays.
    pub ray_bisector: f64,
}

impl AsymptoticData {
    pub fn new(angle_alpha: f64) -> Self {
        AsymptoticData {
            angle_alpha,
            ray_bisector: std::f64::consts::FRAC_PI_2,
        }
    }

    /// Unit directions of the two rays.
    pub fn ray_directions(&self) -> (Vec2, Vec2) {
        let a = self.ray_bisector - self.angle_alpha / 2.0;
        let b = self.ray_bisector + self.angle_alpha / 2.0;
        (Vec2::new(a.cos(), a.sin()), Vec2::new(b.cos(), b.sin()))
    }

    /// Distance from `p` to the nearer of the two rays (as half-lines).
    pub fn dist_to_rays(&self, p: Vec2) -> f64 {
        let (u, v) = self.ray_directions();
        let d = |dir: Vec2| {
            let t = p.dot(dir).max(0.0);
            (p - dir * t).norm()
        };
        d(u).min(d(v))
    }
}

/// A sampled planar profile curve.
///
/// Closed curves store each vertex once; the segment from the last point
/// back to the first is implicit. Open curves carry asymptotic data and
/// keep their endpoints within [`RAY_TOLERANCE_REL`] of the rays.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProfileCurve {
    pub points: Vec<Vec2>,
    pub topology: Topology,
    pub asymptotics: Option<AsymptoticData>,
    /// Traversal direction flag; `true` means the stored order is taken
    /// as the positive orientation.
    #[serde(default = "default_orientation")]
    pub forward: bool,
}

fn default_orientation() -> bool {
    true
}

impl ProfileCurve {
    /// Validating constructor for closed curves.
    pub fn closed(points: Vec<Vec2>) -> Result<Self> {
        let c = ProfileCurve {
            points,
            topology: Topology::Closed,
            asymptotics: None,
            forward: true,
        };
        c.validate()?;
        Ok(c)
    }

    /// Validating constructor for open curves.
    pub fn open(points: Vec<Vec2>, asymptotics: AsymptoticData) -> Result<Self> {
        let c = ProfileCurve {
            points,
            topology: Topology::Open,
            asymptotics: Some(asymptotics),
            forward: true,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn is_closed(&self) -> bool {
        self.topology == Topology::Closed
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of segments in the polyline.
    pub fn segment_count(&self) -> usize {
        if self.is_closed() {
            self.points.len()
        } else {
            self.points.len() - 1
        }
    }

    /// Endpoint of segment `i` (wraps for closed curves).
    #[inline]
    pub fn segment(&self, i: usize) -> (Vec2, Vec2) {
        let j = (i + 1) % self.points.len();
        (self.points[i], self.points[j])
    }

    /// Total polyline length.
    pub fn length(&self) -> f64 {
        (0..self.segment_count())
            .map(|i| {
                let (a, b) = self.segment(i);
                a.dist(b)
            })
            .sum()
    }

    /// Greatest pairwise extent, used to scale relative tolerances.
    pub fn diameter(&self) -> f64 {
        let (mut lo, mut hi) = (self.points[0], self.points[0]);
        for p in &self.points {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (hi - lo).norm()
    }

    /// Ratio of maximum to minimum consecutive spacing.
    pub fn spacing_ratio(&self) -> f64 {
        let mut min = f64::INFINITY;
        let mut max = 0.0_f64;
        for i in 0..self.segment_count() {
            let (a, b) = self.segment(i);
            let d = a.dist(b);
            min = min.min(d);
            max = max.max(d);
        }
        max / min
    }

    /// Check the structural invariants. Called by the constructors; callers
    /// mutating `points` directly should re-validate.
    pub fn validate(&self) -> Result<()> {
        let n = self.points.len();
        if n < 8 {
            return Err(GeometryError::TooFewPoints(n));
        }
        let diam = self.diameter();
        let tiny = 1e-14 * diam.max(1e-300);
        for i in 0..n - 1 {
            if self.points[i].dist(self.points[i + 1]) <= tiny {
                return Err(GeometryError::DuplicatePoint(i, i + 1));
            }
        }
        match self.topology {
            Topology::Closed => {
                if self.points[0].dist(self.points[n - 1]) <= tiny {
                    return Err(GeometryError::ClosedDuplicateEndpoint);
                }
            }
            Topology::Open => {
                let asym = self.asymptotics.ok_or(GeometryError::MissingAsymptotics)?;
                if !(asym.angle_alpha > 0.0 && asym.angle_alpha < std::f64::consts::PI) {
                    return Err(GeometryError::BadAsymptoticAngle(asym.angle_alpha));
                }
                for &idx in &[0, n - 1] {
                    let p = self.points[idx];
                    let dist = asym.dist_to_rays(p);
                    let tol = RAY_TOLERANCE_REL * p.norm();
                    if dist > tol {
                        return Err(GeometryError::EndpointOffRay { index: idx, dist, tol });
                    }
                }
            }
        }
        Ok(())
    }

    /// The mirror curve −γ. Same Lagrangian surface, other branch.
    pub fn negated(&self) -> ProfileCurve {
        let mut c = self.clone();
        for p in &mut c.points {
            *p = -*p;
        }
        if let Some(a) = &mut c.asymptotics {
            a.ray_bisector += std::f64::consts::PI;
        }
        c
    }
}

/// Scalar diagnostics recorded per curve along a trajectory.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveDiagnostics {
    pub length: f64,
    /// min |γ| over samples.
    pub min_radius: f64,
    /// max |κ| over samples.
    pub sup_curvature: f64,
    /// max |κ − γ⊥/|γ|²| over samples (physical velocity).
    pub sup_velocity: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub winding_number_about_origin: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub turning_number: Option<i64>,
    /// Circular range of the Lagrangian angle over samples away from the
    /// origin (2π minus the largest gap of the angles mod 2π).
    pub lagrangian_angle_oscillation: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle_points(r: f64, n: usize) -> Vec<Vec2> {
        (0..n)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                Vec2::new(r * t.cos(), r * t.sin())
            })
            .collect()
    }

    #[test]
    fn closed_curve_validates() {
        assert!(ProfileCurve::closed(circle_points(1.0, 64)).is_ok());
    }

    #[test]
    fn too_few_points_rejected() {
        let e = ProfileCurve::closed(circle_points(1.0, 5)).unwrap_err();
        assert!(matches!(e, GeometryError::TooFewPoints(5)));
    }

    #[test]
    fn duplicate_endpoint_rejected() {
        let mut pts = circle_points(1.0, 32);
        pts.push(pts[0]);
        let e = ProfileCurve::closed(pts).unwrap_err();
        assert!(matches!(e, GeometryError::ClosedDuplicateEndpoint));
    }

    #[test]
    fn open_needs_asymptotics() {
        let pts: Vec<Vec2> = (0..16)
            .map(|i| Vec2::new(i as f64 * 0.1 - 0.8, 1.0))
            .collect();
        let c = ProfileCurve {
            points: pts,
            topology: Topology::Open,
            asymptotics: None,
            forward: true,
        };
        assert!(matches!(
            c.validate(),
            Err(GeometryError::MissingAsymptotics)
        ));
    }

    #[test]
    fn lawlor_endpoints_on_rays() {
        // y = sqrt(x^2 + 1/3), asymptotic to the right-angle pair.
        let pts: Vec<Vec2> = (0..=64)
            .map(|i| {
                let x = -4.0 + 8.0 * i as f64 / 64.0;
                Vec2::new(x, (x * x + 1.0 / 3.0).sqrt())
            })
            .collect();
        let asym = AsymptoticData::new(std::f64::consts::FRAC_PI_2);
        assert!(ProfileCurve::open(pts, asym).is_ok());
    }

    #[test]
    fn endpoint_off_ray_rejected() {
        let mut pts: Vec<Vec2> = (0..=64)
            .map(|i| {
                let x = -4.0 + 8.0 * i as f64 / 64.0;
                Vec2::new(x, (x * x + 1.0 / 3.0).sqrt())
            })
            .collect();
        pts[0].y += 2.0;
        let asym = AsymptoticData::new(std::f64::consts::FRAC_PI_2);
        assert!(matches!(
            ProfileCurve::open(pts, asym),
            Err(GeometryError::EndpointOffRay { .. })
        ));
    }
}
