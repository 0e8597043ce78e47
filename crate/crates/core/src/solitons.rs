//! Exact and numerically shot special solutions of the profile-curve flow.
//!
//! A profile is self-similar when κ − γ⊥/|γ|² = λγ⊥ pointwise; the gauge
//! here fixes λ = −½ for shrinkers and +½ for expanders, so the shrinker
//! circle has radius 2 and rescaled flows match the T − t normalization
//! used by the singularity module. Minimal profiles have λ = 0, and the
//! Grim Reaper translator satisfies the curve-shortening identity
//! κ = (e₁)⊥ instead.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    self, AsymptoticData, GeometryError, ProfileCurve, Topology,
};
use crate::vec2::Vec2;

pub const LAMBDA_SHRINKER: f64 = -0.5;
pub const LAMBDA_EXPANDER: f64 = 0.5;

/// Residual tolerance for closed-form profiles.
pub const CLOSED_FORM_TOL: f64 = 1e-8;
/// Residual tolerance for shot profiles.
pub const SHOT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolitonKind {
    Minimal,
    Shrinker,
    Expander,
    Translator,
}

/// Parameters of a special solution.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolitonSpec {
    pub kind: SolitonKind,
    /// Self-similarity constant; −½ shrinker, +½ expander, 0 minimal.
    pub lambda: f64,
    /// Asymptotic opening angle for open profiles.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    /// Dilation parameter (vertex distance for shot profiles, radius for
    /// circles, hyperbola constant for minimal profiles).
    pub scale: f64,
    /// Translation speed; the Grim Reaper translates at unit speed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub translator_speed: Option<f64>,
}

/// A sampled special solution with its verification residual.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolitonProfile {
    pub spec: SolitonSpec,
    pub curve: ProfileCurve,
    /// sup |flow velocity − λγ⊥| over samples (self-similar kinds),
    /// sup |flow velocity| (minimal), or the translator identity residual.
    pub residual: f64,
}

#[derive(Debug, Error)]
pub enum SolitonError {
    #[error("no circle soliton for λ = {0}: a circle about the origin needs λ < 0")]
    NoMinimalCircle(f64),
    #[error("y margin {0} out of (0, π/2)")]
    BadYMargin(f64),
    #[error("need at least 16 samples, got {0}")]
    TooFewSamples(usize),
    #[error("hyperbola constant must be positive, got {0}")]
    BadHyperbolaConstant(f64),
    #[error("window {window} too small for vertex distance {vertex} (need > 2×)")]
    WindowTooSmall { window: f64, vertex: f64 },
    #[error("alpha {0} outside the open interval (0, π/2)")]
    AlphaOutOfRange(f64),
    #[error("shooting integrates self-similar kinds only; translators are closed-form")]
    ShootingUnsupported,
    #[error("tangent-angle derivative blew up at arclength {0}")]
    ShootingBlowUp(f64),
    #[error("asymptotic angle did not converge (spread {0:.3e} over the tail)")]
    AngleNotConverged(f64),
    #[error("no bracket for alpha = {alpha} in vertex distance range [{lo}, {hi}]")]
    NoBracket { alpha: f64, lo: f64, hi: f64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub type Result<T> = std::result::Result<T, SolitonError>;

/// The circle self-shrinker: radius √(−2/λ) about the origin.
pub fn circle_shrinker(lambda: f64) -> Result<SolitonProfile> {
    if lambda >= 0.0 {
        return Err(SolitonError::NoMinimalCircle(lambda));
    }
    let r = (-2.0 / lambda).sqrt();
    let n = 512;
    let points: Vec<Vec2> = (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            Vec2::new(r * t.cos(), r * t.sin())
        })
        .collect();
    let curve = ProfileCurve::closed(points)?;
    // analytic identity residual: |−2/r + λ·(−r)|·… both terms are radial,
    // κ − γ⊥/|γ|² = −(2/r) ê_r and λγ⊥ = λ r ê_r
    let residual = (-2.0 / r - lambda * r).abs();
    Ok(SolitonProfile {
        spec: SolitonSpec {
            kind: SolitonKind::Shrinker,
            lambda,
            alpha: None,
            scale: r,
            translator_speed: None,
        },
        curve,
        residual,
    })
}

/// The Grim Reaper translator of curve shortening flow:
/// {(−log cos y, y) : |y| ≤ π/2 − y_margin}, unit speed to the right.
pub fn grim_reaper(samples: usize, y_margin: f64) -> Result<SolitonProfile> {
    if samples < 16 {
        return Err(SolitonError::TooFewSamples(samples));
    }
    if !(y_margin > 0.0 && y_margin < std::f64::consts::FRAC_PI_2) {
        return Err(SolitonError::BadYMargin(y_margin));
    }
    let y_max = std::f64::consts::FRAC_PI_2 - y_margin;
    let points: Vec<Vec2> = (0..samples)
        .map(|i| {
            let y = -y_max + 2.0 * y_max * i as f64 / (samples - 1) as f64;
            Vec2::new(-y.cos().ln(), y)
        })
        .collect();
    // the tails approach the horizontal lines y = ±π/2, not rays through
    // the origin; the declared rays record the truncation directions so
    // the endpoint check stays meaningful
    let end = *points.last().unwrap();
    let curve = ProfileCurve {
        points,
        topology: Topology::Open,
        asymptotics: Some(AsymptoticData {
            angle_alpha: 2.0 * end.angle(),
            ray_bisector: 0.0,
        }),
        forward: true,
    };
    // analytic translator identity: κ = (e₁)⊥ exactly; the curvature at
    // height y is cos y and the normal component of e₁ is cos y as well
    let residual = curve
        .points
        .iter()
        .map(|p| {
            let y = p.y;
            // signed curvature −cos y against normal (−cos y, sin y):
            // κ − (e₁)⊥ = 0 identically; evaluate in closed form
            let kappa = Vec2::new(y.cos() * y.cos(), -y.sin() * y.cos());
            let nrm = Vec2::new(-y.cos(), y.sin());
            let e1_perp = nrm * Vec2::new(1.0, 0.0).dot(nrm);
            (kappa - e1_perp).norm()
        })
        .fold(0.0, f64::max);
    Ok(SolitonProfile {
        spec: SolitonSpec {
            kind: SolitonKind::Translator,
            lambda: 0.0,
            alpha: None,
            scale: 1.0,
            translator_speed: Some(1.0),
        },
        curve,
        residual,
    })
}

/// The minimal hyperbola profile {(x, √(x² + c))}: asymptotic angle exactly
/// π/2, Lagrangian angle constant, flow velocity zero.
pub fn lawlor_profile(c: f64, window: f64) -> Result<SolitonProfile> {
    if c <= 0.0 {
        return Err(SolitonError::BadHyperbolaConstant(c));
    }
    let vertex = c.sqrt();
    if window <= 2.0 * vertex {
        return Err(SolitonError::WindowTooSmall { window, vertex });
    }
    // dense sampling: the reported residual uses the discrete velocity
    // operator, whose truncation error is ~3h² at the vertex; n is kept
    // even so one sample lands exactly on the vertex
    let target_h = 4e-4_f64.min(window / 2048.0);
    let mut n = ((2.0 * window * (2.0f64).sqrt()) / target_h).ceil() as usize;
    n += n % 2;
    let points: Vec<Vec2> = (0..=n)
        .map(|i| {
            let x = -window + 2.0 * window * i as f64 / n as f64;
            Vec2::new(x, (x * x + c).sqrt())
        })
        .collect();
    let curve = ProfileCurve::open(points, AsymptoticData::new(std::f64::consts::FRAC_PI_2))?;
    let residual = minimal_residual(&curve);
    Ok(SolitonProfile {
        spec: SolitonSpec {
            kind: SolitonKind::Minimal,
            lambda: 0.0,
            alpha: Some(std::f64::consts::FRAC_PI_2),
            scale: c,
            translator_speed: None,
        },
        curve,
        residual,
    })
}

/// sup |flow velocity| over interior samples (one-sided endpoint stencils
/// are excluded; they carry lower accuracy by construction).
fn minimal_residual(curve: &ProfileCurve) -> f64 {
    let v = geometry::flow_velocity_eps(curve, 1e-12);
    interior(curve, &v).map(Vec2::norm).fold(0.0, f64::max)
}

fn interior<'a>(
    curve: &'a ProfileCurve,
    values: &'a [Vec2],
) -> Box<dyn Iterator<Item = Vec2> + 'a> {
    match curve.topology {
        Topology::Closed => Box::new(values.iter().copied()),
        Topology::Open => Box::new(values[1..values.len() - 1].iter().copied()),
    }
}

/// Verification primitive: sup over samples of the defect in the identity
/// the spec claims. Self-similar kinds check |flow velocity − λγ⊥|;
/// minimal profiles check |flow velocity|; translators check the curve
/// shortening identity |κ − (e₁)⊥|.
pub fn soliton_residual(curve: &ProfileCurve, spec: &SolitonSpec) -> f64 {
    match spec.kind {
        SolitonKind::Translator => {
            let kappa = geometry::curvature(curve);
            let vals: Vec<Vec2> = curve
                .points
                .iter()
                .zip(kappa.iter())
                .enumerate()
                .map(|(i, (_, &k))| {
                    let nrm = normal_at(curve, i);
                    k - nrm * Vec2::new(1.0, 0.0).dot(nrm)
                })
                .collect();
            interior(curve, &vals).map(Vec2::norm).fold(0.0, f64::max)
        }
        SolitonKind::Minimal => minimal_residual(curve),
        SolitonKind::Shrinker | SolitonKind::Expander => {
            let v = geometry::flow_velocity_eps(curve, 1e-12);
            let vals: Vec<Vec2> = curve
                .points
                .iter()
                .zip(v.iter())
                .enumerate()
                .map(|(i, (&g, &vv))| {
                    let nrm = normal_at(curve, i);
                    let g_perp = nrm * g.dot(nrm);
                    vv - g_perp * spec.lambda
                })
                .collect();
            interior(curve, &vals).map(Vec2::norm).fold(0.0, f64::max)
        }
    }
}

fn normal_at(curve: &ProfileCurve, i: usize) -> Vec2 {
    let n = curve.points.len();
    let p = &curve.points;
    let t = if curve.is_closed() {
        p[(i + 1) % n] - p[(i + n - 1) % n]
    } else if i == 0 {
        p[1] - p[0]
    } else if i == n - 1 {
        p[n - 1] - p[n - 2]
    } else {
        p[i + 1] - p[i - 1]
    };
    t.normalized().perp()
}

/// Result of one shooting integration.
#[derive(Debug, Clone)]
pub struct ShotProfile {
    pub profile: SolitonProfile,
    /// Limiting asymptotic polar angle of the right branch (open profiles).
    pub asymptotic_polar_angle: Option<f64>,
    /// Opening angle between the mirrored asymptotic rays.
    pub opening_angle: Option<f64>,
    /// Distance from the end of one full loop back to the vertex
    /// (candidate closed shrinkers).
    pub closure_defect: Option<f64>,
}

/// Integrate the self-similar profile equation by arclength shooting.
///
/// Symmetry ansatz: vertex on the positive y-axis at `vertex_distance`
/// with horizontal tangent; the state is (x, y, ψ) with dψ/ds =
/// ⟨γ, N⟩(1/|γ|² + λ), integrated by fixed-step RK4 to `max_arclength`,
/// then mirrored across the y-axis.
pub fn shoot_profile(
    kind: SolitonKind,
    vertex_distance: f64,
    max_arclength: f64,
) -> Result<ShotProfile> {
    let lambda = match kind {
        SolitonKind::Minimal => 0.0,
        SolitonKind::Shrinker => LAMBDA_SHRINKER,
        SolitonKind::Expander => LAMBDA_EXPANDER,
        SolitonKind::Translator => return Err(SolitonError::ShootingUnsupported),
    };
    let ds = (max_arclength / 40_000.0).min(2e-3 * vertex_distance.max(0.25));
    let mut state = [0.0f64, vertex_distance, 0.0]; // x, y, psi
    let mut path: Vec<Vec2> = vec![Vec2::new(state[0], state[1])];
    let mut s = 0.0;
    let steps = (max_arclength / ds).ceil() as usize;
    let mut closure: Option<(f64, usize)> = None; // (defect, index)
    let start = Vec2::new(0.0, vertex_distance);

    for k in 0..steps {
        state = rk4_step(state, ds, lambda);
        s += ds;
        if !state.iter().all(|v| v.is_finite()) {
            return Err(SolitonError::ShootingBlowUp(s));
        }
        let p = Vec2::new(state[0], state[1]);
        // track the best return to the start once well past the vertex
        if k as f64 * ds > 2.0 * vertex_distance {
            let d = p.dist(start);
            if closure.map_or(true, |(c, _)| d < c) {
                closure = Some((d, path.len()));
            }
        }
        path.push(p);
    }

    // refine the sampled closure defect by projecting onto the adjacent
    // path segments, otherwise it is floored at half the step size
    let closure_defect = closure.map(|(_, idx)| {
        let lo = idx.saturating_sub(1);
        let hi = (idx + 1).min(path.len() - 1);
        crate::geometry::point_to_polyline(start, &path[lo..=hi], false)
    });
    let is_open = closure_defect.map_or(true, |c| c > 1e-3 * vertex_distance);

    let (curve, asym_angle, opening) = if is_open {
        // asymptotic polar angle over the last fifth of arclength
        let tail_from = (path.len() as f64 * 0.8) as usize;
        let tail: Vec<f64> = path[tail_from..].iter().map(|p| p.angle()).collect();
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for a in &tail {
            lo = lo.min(*a);
            hi = hi.max(*a);
        }
        let spread = hi - lo;
        if spread > 1e-3 {
            return Err(SolitonError::AngleNotConverged(spread));
        }
        let beta = tail.iter().sum::<f64>() / tail.len() as f64;
        let opening = std::f64::consts::PI - 2.0 * beta;

        // mirror across the y-axis: the assembled curve runs
        // left ray → vertex → right ray
        let mut points: Vec<Vec2> = path.iter().rev().map(|p| Vec2::new(-p.x, p.y)).collect();
        points.extend(path.iter().skip(1).copied());
        let curve = ProfileCurve {
            points,
            topology: Topology::Open,
            asymptotics: Some(AsymptoticData::new(opening.clamp(1e-6, std::f64::consts::PI - 1e-6))),
            forward: true,
        };
        (curve, Some(beta), Some(opening))
    } else {
        // candidate closed profile: keep one loop up to the closure point
        let (_, idx) = closure.unwrap();
        let pts: Vec<Vec2> = path[..idx].to_vec();
        let curve = ProfileCurve {
            points: pts,
            topology: Topology::Closed,
            asymptotics: None,
            forward: true,
        };
        (curve, None, None)
    };

    let spec = SolitonSpec {
        kind,
        lambda,
        alpha: opening,
        scale: vertex_distance,
        translator_speed: None,
    };
    let residual = soliton_residual(&curve, &spec);
    Ok(ShotProfile {
        profile: SolitonProfile {
            spec,
            curve,
            residual,
        },
        asymptotic_polar_angle: asym_angle,
        opening_angle: opening,
        closure_defect,
    })
}

fn rk4_step(state: [f64; 3], ds: f64, lambda: f64) -> [f64; 3] {
    let f = |u: [f64; 3]| -> [f64; 3] {
        let (x, y, psi) = (u[0], u[1], u[2]);
        let nrm = Vec2::new(-psi.sin(), psi.cos());
        let g = Vec2::new(x, y);
        let r2 = g.norm_sq();
        [psi.cos(), psi.sin(), g.dot(nrm) * (1.0 / r2 + lambda)]
    };
    let k1 = f(state);
    let mid1 = add(state, k1, ds / 2.0);
    let k2 = f(mid1);
    let mid2 = add(state, k2, ds / 2.0);
    let k3 = f(mid2);
    let end = add(state, k3, ds);
    let k4 = f(end);
    [
        state[0] + ds / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        state[1] + ds / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        state[2] + ds / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
    ]
}

fn add(a: [f64; 3], k: [f64; 3], h: f64) -> [f64; 3] {
    [a[0] + h * k[0], a[1] + h * k[1], a[2] + h * k[2]]
}

/// Find the self-expander whose asymptotic opening angle is `alpha`, by
/// bisection over the vertex distance. The opening angle decreases as the
/// vertex moves out (verified, not assumed: the bracket is checked first).
pub fn expander_for_angle(alpha: f64) -> Result<SolitonProfile> {
    expander_for_angle_detailed(alpha).map(|s| s.profile)
}

pub fn expander_for_angle_detailed(alpha: f64) -> Result<ShotProfile> {
    if !(alpha > 0.0 && alpha < std::f64::consts::FRAC_PI_2) {
        return Err(SolitonError::AlphaOutOfRange(alpha));
    }
    let (mut lo, mut hi) = (0.02, 8.0);
    let arclength_for = |d: f64| (20.0 * d).max(30.0);
    let angle_at = |d: f64| -> Result<f64> {
        let shot = shoot_profile(SolitonKind::Expander, d, arclength_for(d))?;
        shot.opening_angle
            .ok_or(SolitonError::AngleNotConverged(0.0))
    };
    let a_lo = angle_at(lo)?;
    let a_hi = angle_at(hi)?;
    // opening angle near π/2 for small vertex distances, → 0 as it grows
    if !(a_lo > alpha && a_hi < alpha) {
        return Err(SolitonError::NoBracket { alpha, lo, hi });
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let a_mid = angle_at(mid)?;
        if (a_mid - alpha).abs() < 1e-4 || hi - lo < 1e-12 {
            return shoot_profile(SolitonKind::Expander, mid, arclength_for(mid));
        }
        if a_mid > alpha {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(SolitonError::NoBracket { alpha, lo, hi })
}
