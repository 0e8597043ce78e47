use std::f64::consts::{PI, TAU};

use super::curve::{CurveDiagnostics, ProfileCurve};
use super::{GeometryError, Result};
use crate::vec2::Vec2;

/// Default origin regularization radius: 1e-4 × curve diameter.
pub fn default_origin_epsilon(curve: &ProfileCurve) -> f64 {
    1e-4 * curve.diameter()
}

/// Unit tangent at sample `i`: central difference at interior and periodic
/// points, one-sided at open-curve endpoints.
fn tangent_at(curve: &ProfileCurve, i: usize) -> Vec2 {
    let n = curve.points.len();
    let p = &curve.points;
    if curve.is_closed() {
        (p[(i + 1) % n] - p[(i + n - 1) % n]).normalized()
    } else if i == 0 {
        (p[1] - p[0]).normalized()
    } else if i == n - 1 {
        (p[n - 1] - p[n - 2]).normalized()
    } else {
        (p[i + 1] - p[i - 1]).normalized()
    }
}

/// Second derivative of position with respect to chordal arclength through
/// the three points `(a, b, c)`, evaluated anywhere on the interpolating
/// quadratic (it is constant there).
#[inline]
fn second_difference(a: Vec2, b: Vec2, c: Vec2) -> Vec2 {
    let hm = b.dist(a);
    let hp = c.dist(b);
    (a * hp + c * hm - b * (hm + hp)) * (2.0 / (hm * hp * (hm + hp)))
}

/// Per-point curvature vectors κ.
///
/// Interior and periodic points use the three-point stencil on chordal
/// arclength, projected onto the local normal; exact in magnitude and
/// direction on uniformly sampled circles, second order on smooth
/// resampled curves. Open-curve endpoints reuse the one-sided stencil of
/// their nearest interior neighbour and carry lower accuracy.
pub fn curvature(curve: &ProfileCurve) -> Vec<Vec2> {
    let n = curve.points.len();
    let p = &curve.points;
    let mut out = vec![Vec2::ZERO; n];
    let range = if curve.is_closed() { 0..n } else { 1..n - 1 };
    for i in range {
        let a = p[(i + n - 1) % n];
        let b = p[i];
        let c = p[(i + 1) % n];
        let gpp = second_difference(a, b, c);
        let nrm = tangent_at(curve, i).perp();
        out[i] = nrm * gpp.dot(nrm);
    }
    if !curve.is_closed() {
        // one-sided: quadratic through the first/last three points,
        // projected on the endpoint's own normal
        let gpp0 = second_difference(p[0], p[1], p[2]);
        let n0 = tangent_at(curve, 0).perp();
        out[0] = n0 * gpp0.dot(n0);
        let gpp1 = second_difference(p[n - 3], p[n - 2], p[n - 1]);
        let n1 = tangent_at(curve, n - 1).perp();
        out[n - 1] = n1 * gpp1.dot(n1);
    }
    out
}

/// Per-point radial forcing vectors γ⊥/|γ|².
///
/// γ⊥ is the projection of the position onto the local normal. Samples
/// with |γ| < `origin_epsilon` get the regularized limit −κ/2, the value a
/// curve crossing the origin transversally attains there: with
/// γ(s) = sT + ½s²κ₀N₀ and N(s) = N₀ − sκ₀T₀, the product ⟨γ, N⟩ is
/// −½s²κ₀, so γ⊥/|γ|² → −κ/2. (A circle through the origin satisfies
/// γ⊥/|γ|² = −κ/2 identically, not just in the limit.)
pub fn radial_term(curve: &ProfileCurve, origin_epsilon: f64) -> Vec<Vec2> {
    let kappa = curvature(curve);
    radial_term_with_curvature(curve, origin_epsilon, &kappa)
}

pub(crate) fn radial_term_with_curvature(
    curve: &ProfileCurve,
    origin_epsilon: f64,
    kappa: &[Vec2],
) -> Vec<Vec2> {
    let n = curve.points.len();
    let mut out = vec![Vec2::ZERO; n];
    for i in 0..n {
        let g = curve.points[i];
        let r2 = g.norm_sq();
        if r2 < origin_epsilon * origin_epsilon {
            out[i] = kappa[i] * -0.5;
        } else {
            let nrm = tangent_at(curve, i).perp();
            out[i] = nrm * (g.dot(nrm) / r2);
        }
    }
    out
}

/// The right-hand side of the profile-curve flow: κ − γ⊥/|γ|², with the
/// default origin regularization.
pub fn flow_velocity(curve: &ProfileCurve) -> Vec<Vec2> {
    flow_velocity_eps(curve, default_origin_epsilon(curve))
}

/// As [`flow_velocity`] with an explicit regularization radius.
pub fn flow_velocity_eps(curve: &ProfileCurve, origin_epsilon: f64) -> Vec<Vec2> {
    let kappa = curvature(curve);
    let radial = radial_term_with_curvature(curve, origin_epsilon, &kappa);
    kappa
        .iter()
        .zip(radial.iter())
        .map(|(&k, &r)| k - r)
        .collect()
}

/// Winding number about the origin and turning number of a closed curve.
///
/// Both are computed as summed angle increments divided by 2π and must
/// round to integers with residual below 0.01; a larger residual signals
/// under-resolution. Winding is undefined when the curve passes within
/// `origin_epsilon` of the origin.
pub fn winding_and_turning(curve: &ProfileCurve, origin_epsilon: f64) -> Result<(i64, i64)> {
    let winding = winding_number(curve, origin_epsilon)?;
    let turning = turning_number(curve)?;
    Ok((winding, turning))
}

pub(crate) fn winding_number(curve: &ProfileCurve, origin_epsilon: f64) -> Result<i64> {
    let n = curve.points.len();
    let p = &curve.points;
    if p.iter().any(|q| q.norm() < origin_epsilon) {
        return Err(GeometryError::WindingUndefined {
            eps: origin_epsilon,
        });
    }
    let mut total = 0.0;
    for i in 0..n {
        let a = p[i];
        let b = p[(i + 1) % n];
        total += a.cross(b).atan2(a.dot(b));
    }
    round_to_integer(total / TAU)
}

pub(crate) fn turning_number(curve: &ProfileCurve) -> Result<i64> {
    let n = curve.points.len();
    let p = &curve.points;
    let mut total = 0.0;
    for i in 0..n {
        let e0 = p[(i + 1) % n] - p[i];
        let e1 = p[(i + 2) % n] - p[(i + 1) % n];
        total += e0.cross(e1).atan2(e0.dot(e1));
    }
    round_to_integer(total / TAU)
}

fn round_to_integer(x: f64) -> Result<i64> {
    let r = x.round();
    let residual = (x - r).abs();
    if residual >= 0.01 {
        return Err(GeometryError::TurningResidual { residual });
    }
    Ok(r as i64)
}

/// Per-point Lagrangian angle θ = arg(γ′) + arg(γ), unwrapped along the
/// curve. Samples within `origin_epsilon` of the origin are excluded
/// (`None`); the profile is minimal iff θ is constant.
pub fn lagrangian_angle(curve: &ProfileCurve, origin_epsilon: f64) -> Vec<Option<f64>> {
    let n = curve.points.len();
    let mut out = vec![None; n];
    let mut prev: Option<f64> = None;
    for i in 0..n {
        let g = curve.points[i];
        if g.norm() < origin_epsilon {
            continue;
        }
        let raw = tangent_at(curve, i).angle() + g.angle();
        let theta = match prev {
            None => raw.rem_euclid(TAU),
            Some(t) => {
                // unwrap: pick the representative nearest the previous value
                let mut v = raw;
                while v - t > PI {
                    v -= TAU;
                }
                while t - v > PI {
                    v += TAU;
                }
                v
            }
        };
        prev = Some(theta);
        out[i] = Some(theta);
    }
    out
}

/// Circular range of a set of angles: 2π minus the largest gap of the
/// values reduced mod 2π. Zero for constant angles regardless of where
/// they sit relative to the branch cut.
pub fn circular_range(angles: impl Iterator<Item = f64>) -> f64 {
    let mut vals: Vec<f64> = angles.map(|a| a.rem_euclid(TAU)).collect();
    if vals.len() < 2 {
        return 0.0;
    }
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut largest_gap = TAU - vals[vals.len() - 1] + vals[0];
    for w in vals.windows(2) {
        largest_gap = largest_gap.max(w[1] - w[0]);
    }
    (TAU - largest_gap).max(0.0)
}

/// Compute the full per-curve diagnostics record.
pub fn diagnostics(curve: &ProfileCurve, origin_epsilon: f64) -> CurveDiagnostics {
    let kappa = curvature(curve);
    let radial = radial_term_with_curvature(curve, origin_epsilon, &kappa);
    let sup_curvature = kappa.iter().map(|k| k.norm()).fold(0.0, f64::max);
    let sup_velocity = kappa
        .iter()
        .zip(radial.iter())
        .map(|(&k, &r)| (k - r).norm())
        .fold(0.0, f64::max);
    let min_radius = curve.points.iter().map(|p| p.norm()).fold(f64::INFINITY, f64::min);
    let (winding, turning) = if curve.is_closed() {
        (
            winding_number(curve, origin_epsilon).ok(),
            turning_number(curve).ok(),
        )
    } else {
        (None, None)
    };
    let osc = circular_range(
        lagrangian_angle(curve, origin_epsilon)
            .into_iter()
            .flatten(),
    );
    CurveDiagnostics {
        length: curve.length(),
        min_radius,
        sup_curvature,
        sup_velocity,
        winding_number_about_origin: winding,
        turning_number: turning,
        lagrangian_angle_oscillation: osc,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{AsymptoticData, Topology};

    fn circle(r: f64, n: usize) -> ProfileCurve {
        let pts = (0..n)
            .map(|i| {
                let t = TAU * i as f64 / n as f64;
                Vec2::new(r * t.cos(), r * t.sin())
            })
            .collect();
        ProfileCurve::closed(pts).unwrap()
    }

    fn open_curve(points: Vec<Vec2>, alpha: f64, bisector: f64) -> ProfileCurve {
        ProfileCurve {
            points,
            topology: Topology::Open,
            asymptotics: Some(AsymptoticData {
                angle_alpha: alpha,
                ray_bisector: bisector,
            }),
            forward: true,
        }
    }

    #[test]
    fn circle_curvature_exact() {
        let c = circle(2.0, 256);
        let k = curvature(&c);
        for (i, kv) in k.iter().enumerate() {
            assert!(
                (kv.norm() - 0.5).abs() < 1e-3,
                "|κ| at {} was {}",
                i,
                kv.norm()
            );
            // inward: κ · γ < 0
            assert!(kv.dot(c.points[i]) < 0.0);
        }
    }

    #[test]
    fn segment_curvature_zero() {
        let pts: Vec<Vec2> = (0..=16).map(|i| Vec2::new(i as f64 / 16.0, 0.0)).collect();
        let c = open_curve(pts, std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_4);
        for kv in curvature(&c).iter().skip(1).take(15) {
            assert!(kv.norm() < 1e-12);
        }
    }

    #[test]
    fn ellipse_vertex_curvature() {
        // parametric curvature ab/(a² sin²t + b² cos²t)^{3/2} at t = 0 is a/b² = 3
        let n = 512;
        let pts: Vec<Vec2> = (0..n)
            .map(|i| {
                let t = TAU * i as f64 / n as f64;
                Vec2::new(3.0 * t.cos(), t.sin())
            })
            .collect();
        let c = ProfileCurve::closed(pts).unwrap();
        let rs = crate::geometry::resample(&c, c.length() / 512.0).unwrap();
        let k = curvature(&rs);
        // sample nearest (3, 0)
        let (i, _) = rs
            .points
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.dist(Vec2::new(3.0, 0.0))
                    .partial_cmp(&b.dist(Vec2::new(3.0, 0.0)))
                    .unwrap()
            })
            .unwrap();
        assert!(
            (k[i].norm() - 3.0).abs() < 1e-2,
            "vertex |κ| = {}",
            k[i].norm()
        );
    }

    #[test]
    fn radial_term_point_on_circle() {
        // at (2, 0) with vertical tangent the normal is radial: γ⊥/|γ|² = (0.5, 0)
        let c = circle(2.0, 64);
        let r = radial_term(&c, 1e-6);
        let v = r[0];
        assert!((v - Vec2::new(0.5, 0.0)).norm() < 1e-6, "{:?}", v);
    }

    #[test]
    fn radial_term_line_through_origin() {
        let pts: Vec<Vec2> = (0..=16)
            .map(|i| {
                let t = -1.0 + 2.0 * i as f64 / 16.0;
                Vec2::new(t, t)
            })
            .collect();
        let c = open_curve(pts, 0.1, std::f64::consts::FRAC_PI_4);
        let r = radial_term(&c, 1e-9);
        for v in r.iter() {
            assert!(v.norm() < 1e-12);
        }
    }

    #[test]
    fn radial_term_origin_regularization() {
        // parabola y = x²/2 through the origin: κ(0) = (0, 1), regularized
        // limit −κ/2 = (0, −0.5); the non-regularized values just outside
        // must approach the same limit (continuity across ε)
        let make = |n: usize, span: f64| {
            let pts: Vec<Vec2> = (0..=n)
                .map(|i| {
                    let x = -span + 2.0 * span * i as f64 / n as f64;
                    Vec2::new(x, 0.5 * x * x)
                })
                .collect();
            open_curve(pts, 3.0, std::f64::consts::FRAC_PI_2)
        };
        let c = make(512, 1.0);
        // the middle sample is exactly at the origin
        let mid = 256;
        assert!(c.points[mid].norm() < 1e-14);
        let r = radial_term(&c, 1e-6);
        let k = curvature(&c);
        assert!((r[mid] - k[mid] * -0.5).norm() < 1e-14);
        assert!((r[mid] - Vec2::new(0.0, -0.5)).norm() < 1e-3, "{:?}", r[mid]);
        let near = mid + 2;
        assert!(
            (r[near] - Vec2::new(0.0, -0.5)).norm() < 0.02,
            "{:?}",
            r[near]
        );
        // continuity order: the mismatch at |γ| ≈ ε shrinks like O(ε)
        let errs: Vec<f64> = [64usize, 16, 4]
            .map(|k| {
                let i = mid + k;
                (r[i] - Vec2::new(0.0, -0.5)).norm()
            })
            .to_vec();
        assert!(errs[0] > errs[1] && errs[1] > errs[2], "{:?}", errs);
    }

    #[test]
    fn velocity_circle_radial_speed() {
        // both terms contribute −1/r: radial speed −2/r
        let c = circle(2.0, 512);
        let v = flow_velocity(&c);
        for (p, vv) in c.points.iter().zip(v.iter()) {
            let radial_speed = vv.dot(p.normalized());
            assert!((radial_speed + 1.0).abs() < 1e-6, "speed {}", radial_speed);
        }
    }

    #[test]
    fn velocity_lawlor_vertex_zero() {
        // the truncation constant at the vertex is (|κ''| + κ³)/12 ≈ 3, so
        // 1e-6 needs spacing below ~6e-4
        let c_param = 1.0 / 3.0;
        let n = 20_000;
        let pts: Vec<Vec2> = (0..=n)
            .map(|i| {
                let x = -3.0 + 6.0 * i as f64 / n as f64;
                Vec2::new(x, (x * x + c_param).sqrt())
            })
            .collect();
        let c = open_curve(pts, std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2);
        let v = flow_velocity(&c);
        let mid = n / 2;
        assert!(c.points[mid].x.abs() < 1e-12);
        assert!(v[mid].norm() < 1e-6, "vertex velocity {}", v[mid].norm());
    }

    #[test]
    fn velocity_line_through_origin_zero() {
        let pts: Vec<Vec2> = (0..=32)
            .map(|i| {
                let t = -2.0 + 4.0 * i as f64 / 32.0;
                Vec2::new(t * 0.6, t * 0.8)
            })
            .collect();
        let c = open_curve(pts, 0.2, (0.8f64).atan2(0.6));
        for v in flow_velocity(&c) {
            assert!(v.norm() < 1e-12);
        }
    }

    #[test]
    fn unit_circle_winding_turning() {
        let c = circle(1.0, 128);
        let (w, t) = winding_and_turning(&c, 1e-6).unwrap();
        assert_eq!((w, t), (1, 1));
    }

    #[test]
    fn winding_undefined_through_origin() {
        let pts: Vec<Vec2> = (0..64)
            .map(|i| {
                let t = TAU * i as f64 / 64.0;
                Vec2::new(t.cos() - 1.0, t.sin())
            })
            .collect();
        let c = ProfileCurve::closed(pts).unwrap();
        assert!(matches!(
            winding_number(&c, 1e-3),
            Err(GeometryError::WindingUndefined { .. })
        ));
    }

    #[test]
    fn chekanov_winding_zero() {
        // (e^{cos u}, sin u · e^{−cos u}) stays in the right half-plane
        let n = 256;
        let pts: Vec<Vec2> = (0..n)
            .map(|i| {
                let u = TAU * i as f64 / n as f64;
                Vec2::new(u.cos().exp(), u.sin() * (-u.cos()).exp())
            })
            .collect();
        let c = ProfileCurve::closed(pts).unwrap();
        let (w, t) = winding_and_turning(&c, 1e-6).unwrap();
        assert_eq!(w, 0);
        assert_eq!(t.abs(), 1);
    }

    #[test]
    fn figure_eight_turning_zero() {
        let n = 512;
        let pts: Vec<Vec2> = (0..n)
            .map(|i| {
                let u = TAU * (i as f64 + 0.5) / n as f64;
                let d = 1.0 + u.cos() * u.cos();
                Vec2::new(-3.0 * u.sin() / d, 3.0 * u.sin() * u.cos() / d)
            })
            .collect();
        let c = ProfileCurve::closed(pts).unwrap();
        assert_eq!(turning_number(&c).unwrap(), 0);
    }

    #[test]
    fn lagrangian_angle_line_through_origin() {
        // constant 2θ₀ mod π: the γ ↔ −γ branch redundancy makes arg(γ)
        // jump by π at the crossing, so the angle is constant on each half
        // and well defined mod π overall
        let theta0 = 0.7_f64;
        let dir = Vec2::new(theta0.cos(), theta0.sin());
        let pts: Vec<Vec2> = (0..=32)
            .map(|i| dir * (-2.0 + 4.0 * i as f64 / 32.0))
            .collect();
        let c = open_curve(pts, 0.2, theta0);
        let angles = lagrangian_angle(&c, 1e-9);
        let vals: Vec<f64> = angles.into_iter().flatten().collect();
        assert_eq!(vals.len(), 32); // one sample at the origin is excluded
        let expect = (2.0 * theta0).rem_euclid(PI);
        for v in &vals {
            let m = v.rem_euclid(PI);
            let diff = (m - expect).abs().min(PI - (m - expect).abs());
            assert!(diff < 1e-12, "angle {} vs {} (mod π)", v, expect);
        }
        // each half is exactly constant
        for half in [&vals[..16], &vals[16..]] {
            let first = half[0];
            for v in half {
                assert!((v - first).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn lagrangian_angle_lawlor_constant() {
        // y = sqrt(x² + 1/3): Re(γ²) is constant, so arg(γγ′) is constant
        let n = 2048;
        let pts: Vec<Vec2> = (0..=n)
            .map(|i| {
                let x = -4.0 + 8.0 * i as f64 / n as f64;
                Vec2::new(x, (x * x + 1.0 / 3.0).sqrt())
            })
            .collect();
        let c = open_curve(pts, std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2);
        let osc = circular_range(lagrangian_angle(&c, 1e-9).into_iter().flatten());
        assert!(osc < 1e-4, "oscillation {}", osc);
    }

    #[test]
    fn lagrangian_angle_circle() {
        // θ = 2φ + π/2 covers the circle twice: circular range ≈ 2π
        let c = circle(1.0, 256);
        let angles: Vec<f64> = lagrangian_angle(&c, 1e-9).into_iter().flatten().collect();
        // spot-check the formula at sample 10
        let phi = TAU * 10.0 / 256.0;
        let got = angles[10].rem_euclid(TAU);
        let want = (2.0 * phi + PI / 2.0).rem_euclid(TAU);
        assert!((got - want).abs() < 1e-3, "{} vs {}", got, want);
        let osc = circular_range(angles.into_iter());
        assert!((osc - TAU).abs() < 0.1, "oscillation {}", osc);
    }

    #[test]
    fn curvature_exact_on_circles_any_spacing() {
        // the three-point stencil reproduces circles exactly, even with
        // uneven spacing: the stencil is the circumcircle in disguise
        let pts: Vec<Vec2> = (0..64)
            .map(|i| {
                let u = i as f64 / 64.0;
                let t = TAU * (u + 0.1 * (TAU * u).sin());
                Vec2::new(2.0 * t.cos(), 2.0 * t.sin())
            })
            .collect();
        let c = ProfileCurve::closed(pts).unwrap();
        for kv in curvature(&c) {
            assert!((kv.norm() - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn convergence_second_order_on_ellipse() {
        // |κ| error on a smooth non-circular curve drops ≳ 3× per halving
        // of the spacing (second order), here with smoothly uneven samples
        let errs: Vec<f64> = [128usize, 256, 512]
            .iter()
            .map(|&n| {
                let pts: Vec<Vec2> = (0..n)
                    .map(|i| {
                        let u = i as f64 / n as f64;
                        let t = TAU * (u + 0.02 * (TAU * u).sin());
                        Vec2::new(2.0 * t.cos(), t.sin())
                    })
                    .collect();
                let c = ProfileCurve::closed(pts).unwrap();
                let ts: Vec<f64> = (0..n)
                    .map(|i| {
                        let u = i as f64 / n as f64;
                        TAU * (u + 0.02 * (TAU * u).sin())
                    })
                    .collect();
                curvature(&c)
                    .iter()
                    .zip(ts.iter())
                    .map(|(kv, t)| {
                        let exact =
                            2.0 / (4.0 * t.sin() * t.sin() + t.cos() * t.cos()).powf(1.5);
                        (kv.norm() - exact).abs()
                    })
                    .fold(0.0, f64::max)
            })
            .collect();
        assert!(errs[0] / errs[1] > 3.0, "{:?}", errs);
        assert!(errs[1] / errs[2] > 3.0, "{:?}", errs);
    }
}
