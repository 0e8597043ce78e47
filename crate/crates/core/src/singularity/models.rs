//! Blow-up model catalog and windowed Hausdorff fitting.
//!
//! The comparison set for a rescaled frame is its Lagrangian shadow: the
//! frame's points together with their reflection through the image of the
//! plane origin (γ and −γ sweep the same surface). Cone-type models (line
//! pairs, lines, minimal hyperbolas) anchor at that origin image; circles
//! anchor at the frame center, which is the blow-up point; the translator
//! fits a free rotation and translation at unit curvature scale.

use serde::{Deserialize, Serialize};

use super::{FrameCurve, Result, SingularityError};
use crate::geometry::point_to_polyline;
use crate::vec2::Vec2;

/// A fitted blow-up model.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ModelKind {
    /// Two perpendicular lines through the origin at angles θ, θ + π/2.
    LinePair { theta: f64 },
    /// A single line through the origin; multiplicity 2 when two curve
    /// branches coincide along it.
    Line { theta: f64, multiplicity: u8 },
    /// Circle about the blow-up point: radius 2 (self-shrinker of the
    /// full flow) or √2 (curve-shortening shrinker, for collapse away
    /// from the origin).
    Circle { radius: f64 },
    /// Grim Reaper translator at unit curvature, free rotation and
    /// vertex translation.
    GrimReaper { rotation: f64, translation: Vec2 },
    /// Minimal hyperbola Re(γ²) = −c about the origin.
    Lawlor { c: f64 },
    /// Nothing in the catalog fits below the acceptance distance.
    Unmatched,
}

impl ModelKind {
    pub fn id(&self) -> &'static str {
        match self {
            ModelKind::LinePair { .. } => "line_pair",
            ModelKind::Line { multiplicity: 2, .. } => "line_multiplicity_two",
            ModelKind::Line { .. } => "line",
            ModelKind::Circle { .. } => "circle",
            ModelKind::GrimReaper { .. } => "grim_reaper",
            ModelKind::Lawlor { .. } => "lawlor",
            ModelKind::Unmatched => "unmatched",
        }
    }
}

/// Result of a catalog search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatchReport {
    pub model: ModelKind,
    /// Windowed symmetric distance of the best fit.
    pub distance: f64,
    /// Distance gap to the runner-up model family.
    pub runner_up_margin: f64,
    pub runner_up: Option<ModelKind>,
    pub window_radius: f64,
}

/// Model families the matcher may fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelFamily {
    LinePair,
    Line,
    CircleTwo,
    CircleSqrtTwo,
    GrimReaper,
    Lawlor,
}

/// Self-shrinker models: the only legal Type I (tangent flow) limits.
pub fn shrinker_catalog() -> Vec<ModelFamily> {
    vec![
        ModelFamily::LinePair,
        ModelFamily::Line,
        ModelFamily::CircleTwo,
        ModelFamily::CircleSqrtTwo,
    ]
}

/// Full catalog, for Type II (ancient solution) limits.
pub fn standard_catalog() -> Vec<ModelFamily> {
    vec![
        ModelFamily::LinePair,
        ModelFamily::Line,
        ModelFamily::CircleTwo,
        ModelFamily::CircleSqrtTwo,
        ModelFamily::GrimReaper,
        ModelFamily::Lawlor,
    ]
}

/// All fits worse than this report as unmatched.
pub const UNMATCHED_DISTANCE: f64 = 0.5;

/// Fit every family in the catalog and rank by windowed distance.
pub fn match_model(
    frame: &FrameCurve,
    window_radius: f64,
    catalog: &[ModelFamily],
) -> Result<MatchReport> {
    let ctx = MatchContext::new(frame, window_radius)?;
    let mut fits: Vec<(ModelKind, f64)> = Vec::new();
    for family in catalog {
        if let Some(fit) = fit_family(&ctx, *family) {
            fits.push(fit);
        }
    }
    if fits.is_empty() {
        return Err(SingularityError::EmptyMatchWindow);
    }
    fits.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    let (best_model, best_dist) = fits[0].clone();
    let runner = fits.get(1).cloned();
    if best_dist > UNMATCHED_DISTANCE {
        return Ok(MatchReport {
            model: ModelKind::Unmatched,
            distance: best_dist,
            runner_up_margin: 0.0,
            runner_up: Some(best_model),
            window_radius,
        });
    }
    Ok(MatchReport {
        model: best_model,
        distance: best_dist,
        runner_up_margin: runner.as_ref().map(|r| r.1 - best_dist).unwrap_or(f64::INFINITY),
        runner_up: runner.map(|r| r.0),
        window_radius,
    })
}

/// Precomputed working set for one frame: windowed samples of the shadow
/// (curve ∪ mirror) at fit and full density, plus the polylines used as
/// distance targets.
struct MatchContext {
    window: f64,
    origin: Vec2,
    /// In-window shadow samples, subsampled for fit loops.
    probe: Vec<Vec2>,
    /// In-window shadow samples at full density, for final distances.
    full: Vec<Vec2>,
    /// Distance targets: the original and mirrored polylines, subsampled.
    target_polys: Vec<(Vec<Vec2>, bool)>,
    /// Median consecutive spacing of in-window points (full density).
    median_spacing: f64,
    /// Index runs of in-window points, for multiplicity detection.
    arcs: Vec<Vec<Vec2>>,
}

impl MatchContext {
    fn new(frame: &FrameCurve, window: f64) -> Result<Self> {
        let mirror = frame.mirrored_points();
        let branches: [&[Vec2]; 2] = [&frame.points, &mirror];

        let mut full = Vec::new();
        let mut arcs: Vec<Vec<Vec2>> = Vec::new();
        let mut spacings = Vec::new();
        for branch in branches {
            let mut run: Vec<Vec2> = Vec::new();
            for (i, p) in branch.iter().enumerate() {
                if p.norm() <= window {
                    if let Some(prev) = run.last() {
                        spacings.push(prev.dist(*p));
                    }
                    run.push(*p);
                    full.push(*p);
                } else if !run.is_empty() {
                    arcs.push(std::mem::take(&mut run));
                }
                if i + 1 == branch.len() && !run.is_empty() {
                    arcs.push(std::mem::take(&mut run));
                }
            }
        }
        if full.is_empty() {
            return Err(SingularityError::EmptyMatchWindow);
        }
        spacings.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let median_spacing = spacings
            .get(spacings.len() / 2)
            .copied()
            .unwrap_or(window * 0.1);

        let probe = subsample(&full, 400);
        let target_polys = branches
            .iter()
            .map(|b| (subsample_polyline(b, 1200), frame.closed))
            .collect();

        Ok(MatchContext {
            window,
            origin: frame.origin,
            probe,
            full,
            target_polys,
            median_spacing,
            arcs,
        })
    }

    /// Distance from a point to the shadow polylines.
    fn dist_to_curve(&self, p: Vec2) -> f64 {
        self.target_polys
            .iter()
            .map(|(poly, closed)| point_to_polyline(p, poly, *closed))
            .fold(f64::INFINITY, f64::min)
    }

    /// Symmetric windowed distance between the shadow and a model;
    /// `probe_only` trades accuracy for speed in fit loops.
    fn distance(&self, model: &ModelGeom, probe_only: bool) -> f64 {
        let curve_pts = if probe_only { &self.probe } else { &self.full };
        let d_curve = curve_pts
            .iter()
            .map(|p| model.dist_to(*p))
            .fold(0.0f64, f64::max);
        let d_model = model
            .parts
            .iter()
            .flatten()
            .filter(|p| p.norm() <= self.window)
            .map(|p| self.dist_to_curve(*p))
            .fold(0.0f64, f64::max);
        d_curve.max(d_model)
    }
}

/// Model geometry: sampled polylines for the coverage direction, plus an
/// analytic point distance where the family has one (lines, circles).
struct ModelGeom {
    parts: Vec<Vec<Vec2>>,
    closed: bool,
    analytic: Analytic,
}

enum Analytic {
    None,
    Circle { center: Vec2, radius: f64 },
    /// (anchor, unit direction) per infinite line.
    Lines(Vec<(Vec2, Vec2)>),
}

impl ModelGeom {
    fn one(points: Vec<Vec2>, closed: bool) -> Self {
        ModelGeom {
            parts: vec![points],
            closed,
            analytic: Analytic::None,
        }
    }

    fn dist_to(&self, p: Vec2) -> f64 {
        match &self.analytic {
            Analytic::Circle { center, radius } => (p.dist(*center) - radius).abs(),
            Analytic::Lines(lines) => lines
                .iter()
                .map(|(a, u)| (p - *a).cross(*u).abs())
                .fold(f64::INFINITY, f64::min),
            Analytic::None => self
                .parts
                .iter()
                .map(|part| point_to_polyline(p, part, self.closed))
                .fold(f64::INFINITY, f64::min),
        }
    }
}

fn subsample(points: &[Vec2], max: usize) -> Vec<Vec2> {
    if points.len() <= max {
        return points.to_vec();
    }
    let stride = points.len() as f64 / max as f64;
    (0..max)
        .map(|i| points[(i as f64 * stride) as usize])
        .collect()
}

/// Subsample preserving endpoints, for polyline targets.
fn subsample_polyline(points: &[Vec2], max: usize) -> Vec<Vec2> {
    if points.len() <= max {
        return points.to_vec();
    }
    let stride = (points.len() - 1) as f64 / (max - 1) as f64;
    let mut out: Vec<Vec2> = (0..max)
        .map(|i| points[((i as f64 * stride) as usize).min(points.len() - 1)])
        .collect();
    *out.last_mut().unwrap() = *points.last().unwrap();
    out
}

fn fit_family(ctx: &MatchContext, family: ModelFamily) -> Option<(ModelKind, f64)> {
    match family {
        ModelFamily::LinePair => {
            let theta = golden_min(0.0, std::f64::consts::FRAC_PI_2, 48, |th| {
                ctx.distance(&line_pair_geom(ctx, th), true)
            });
            let d = ctx.distance(&line_pair_geom(ctx, theta), false);
            Some((ModelKind::LinePair { theta }, d))
        }
        ModelFamily::Line => {
            let theta = golden_min(0.0, std::f64::consts::PI, 48, |th| {
                ctx.distance(&line_geom(ctx, th), true)
            });
            let d = ctx.distance(&line_geom(ctx, theta), false);
            let multiplicity = detect_multiplicity(ctx, theta);
            Some((ModelKind::Line { theta, multiplicity }, d))
        }
        ModelFamily::CircleTwo | ModelFamily::CircleSqrtTwo => {
            let radius = if family == ModelFamily::CircleTwo {
                2.0
            } else {
                std::f64::consts::SQRT_2
            };
            let model = ModelGeom {
                parts: vec![circle_points(radius, 720)],
                closed: true,
                analytic: Analytic::Circle {
                    center: Vec2::ZERO,
                    radius,
                },
            };
            Some((ModelKind::Circle { radius }, ctx.distance(&model, false)))
        }
        ModelFamily::GrimReaper => fit_grim_reaper(ctx),
        ModelFamily::Lawlor => {
            let lc = golden_min(-8.0, 4.0, 48, |lc| {
                ctx.distance(&lawlor_geom(ctx, lc.exp()), true)
            });
            let c = lc.exp();
            let d = ctx.distance(&lawlor_geom(ctx, c), false);
            Some((ModelKind::Lawlor { c }, d))
        }
    }
}

/// Coarse grid then golden-section refinement of a 1-D fit objective.
fn golden_min(lo: f64, hi: f64, grid: usize, mut f: impl FnMut(f64) -> f64) -> f64 {
    let mut best = (lo, f64::INFINITY);
    for i in 0..=grid {
        let x = lo + (hi - lo) * i as f64 / grid as f64;
        let v = f(x);
        if v < best.1 {
            best = (x, v);
        }
    }
    let span = (hi - lo) / grid as f64;
    let (mut a, mut b) = (best.0 - span, best.0 + span);
    let phi = 0.618_033_988_749_894_8;
    let (mut c, mut d) = (b - phi * (b - a), a + phi * (b - a));
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..40 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

fn line_dir_points(anchor: Vec2, dir: Vec2, window: f64, n: usize) -> Vec<Vec2> {
    // segment of the infinite line nearest the window center
    let t0 = (-anchor).dot(dir);
    (0..=n)
        .map(|i| {
            let t = t0 - 1.5 * window + 3.0 * window * i as f64 / n as f64;
            anchor + dir * t
        })
        .collect()
}

fn line_geom(ctx: &MatchContext, theta: f64) -> ModelGeom {
    let dir = Vec2::new(theta.cos(), theta.sin());
    ModelGeom {
        parts: vec![line_dir_points(ctx.origin, dir, ctx.window, 400)],
        closed: false,
        analytic: Analytic::Lines(vec![(ctx.origin, dir)]),
    }
}

fn line_pair_geom(ctx: &MatchContext, theta: f64) -> ModelGeom {
    let u = Vec2::new(theta.cos(), theta.sin());
    let v = u.perp();
    ModelGeom {
        parts: vec![
            line_dir_points(ctx.origin, u, ctx.window, 400),
            line_dir_points(ctx.origin, v, ctx.window, 400),
        ],
        closed: false,
        analytic: Analytic::Lines(vec![(ctx.origin, u), (ctx.origin, v)]),
    }
}

fn circle_points(radius: f64, n: usize) -> Vec<Vec2> {
    (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            Vec2::new(radius * t.cos(), radius * t.sin())
        })
        .collect()
}

fn lawlor_geom(ctx: &MatchContext, c: f64) -> ModelGeom {
    // both branches: the model's own Lagrangian shadow is the full
    // hyperbola pair Re(γ²) = −c
    let x_max = 1.5 * ctx.window;
    let n = 600;
    let upper: Vec<Vec2> = (0..=n)
        .map(|i| {
            let x = -x_max + 2.0 * x_max * i as f64 / n as f64;
            ctx.origin + Vec2::new(x, (x * x + c).sqrt())
        })
        .collect();
    let lower: Vec<Vec2> = upper.iter().map(|p| ctx.origin * 2.0 - *p).collect();
    ModelGeom {
        parts: vec![upper, lower],
        closed: false,
        analytic: Analytic::None,
    }
}

fn grim_reaper_points(rotation: f64, translation: Vec2, window: f64) -> Vec<Vec2> {
    let x_max = 2.5 * window;
    let y_max = (-x_max).exp().acos();
    let n = 500;
    (0..=n)
        .map(|i| {
            let y = -y_max + 2.0 * y_max * i as f64 / n as f64;
            let p = Vec2::new(-y.cos().ln(), y);
            p.rotate(rotation) + translation
        })
        .collect()
}

fn grim_reaper_geom(ctx: &MatchContext, rotation: f64, translation: Vec2) -> ModelGeom {
    let part = grim_reaper_points(rotation, translation, ctx.window);
    let mirror: Vec<Vec2> = part.iter().map(|p| ctx.origin * 2.0 - *p).collect();
    ModelGeom {
        parts: vec![part, mirror],
        closed: false,
        analytic: Analytic::None,
    }
}

fn fit_grim_reaper(ctx: &MatchContext) -> Option<(ModelKind, f64)> {
    // rotation initialized from the tangent at the frame center (the
    // normalization puts the curvature maximum there and the canonical
    // vertex tangent is vertical), plus a coarse circular scan as backup
    let center_idx = ctx
        .full
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.norm_sq().partial_cmp(&b.norm_sq()).unwrap())
        .map(|(i, _)| i)?;
    let tangent = {
        let a = ctx.full[center_idx.saturating_sub(2)];
        let b = ctx.full[(center_idx + 2).min(ctx.full.len() - 1)];
        (b - a).normalized()
    };
    let base = tangent.angle() - std::f64::consts::FRAC_PI_2;

    let eval = |p: &[f64; 3]| ctx.distance(&grim_reaper_geom(ctx, p[0], Vec2::new(p[1], p[2])), true);

    let mut starts = vec![base, base + std::f64::consts::PI];
    let mut scan_best = (0.0, f64::INFINITY);
    for k in 0..16 {
        let phi = std::f64::consts::TAU * k as f64 / 16.0;
        let v = eval(&[phi, 0.0, 0.0]);
        if v < scan_best.1 {
            scan_best = (phi, v);
        }
    }
    starts.push(scan_best.0);

    let mut best: Option<([f64; 3], f64)> = None;
    for phi0 in starts {
        let (params, value) = nelder_mead(&eval, [phi0, 0.0, 0.0], [0.4, 0.5, 0.5], 250);
        if best.as_ref().map_or(true, |(_, b)| value < *b) {
            best = Some((params, value));
        }
    }
    let (params, _) = best?;
    let rotation = params[0].rem_euclid(std::f64::consts::TAU);
    let translation = Vec2::new(params[1], params[2]);
    let d = ctx.distance(&grim_reaper_geom(ctx, rotation, translation), false);
    Some((ModelKind::GrimReaper { rotation, translation }, d))
}

/// Nelder–Mead simplex minimization in three parameters; the sup-based
/// fit objectives are kinked, where simple coordinate descent stalls.
fn nelder_mead(
    f: &impl Fn(&[f64; 3]) -> f64,
    x0: [f64; 3],
    scale: [f64; 3],
    iters: usize,
) -> ([f64; 3], f64) {
    let mut simplex: Vec<([f64; 3], f64)> = Vec::with_capacity(4);
    simplex.push((x0, f(&x0)));
    for d in 0..3 {
        let mut x = x0;
        x[d] += scale[d];
        simplex.push((x, f(&x)));
    }
    let combine = |a: &[f64; 3], wa: f64, b: &[f64; 3], wb: f64| {
        [
            wa * a[0] + wb * b[0],
            wa * a[1] + wb * b[1],
            wa * a[2] + wb * b[2],
        ]
    };
    for _ in 0..iters {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let worst = simplex[3];
        let centroid = {
            let mut c = [0.0; 3];
            for (x, _) in &simplex[..3] {
                for d in 0..3 {
                    c[d] += x[d] / 3.0;
                }
            }
            c
        };
        let reflect = combine(&centroid, 2.0, &worst.0, -1.0);
        let fr = f(&reflect);
        if fr < simplex[0].1 {
            let expand = combine(&centroid, 3.0, &worst.0, -2.0);
            let fe = f(&expand);
            simplex[3] = if fe < fr { (expand, fe) } else { (reflect, fr) };
        } else if fr < simplex[2].1 {
            simplex[3] = (reflect, fr);
        } else {
            let contract = combine(&centroid, 0.5, &worst.0, 0.5);
            let fc = f(&contract);
            if fc < worst.1 {
                simplex[3] = (contract, fc);
            } else {
                // shrink toward the best vertex
                let best = simplex[0].0;
                for v in simplex.iter_mut().skip(1) {
                    v.0 = combine(&best, 0.5, &v.0, 0.5);
                    v.1 = f(&v.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    simplex[0]
}

/// Two curve branches within 2× the median spacing of the fitted line
/// along more than 80% of the covered window means multiplicity two.
fn detect_multiplicity(ctx: &MatchContext, theta: f64) -> u8 {
    let dir = Vec2::new(theta.cos(), theta.sin());
    let tol = 2.0 * ctx.median_spacing;
    let bin_width = (4.0 * ctx.median_spacing).max(ctx.window / 64.0);
    let nbins = (2.0 * ctx.window / bin_width).ceil() as usize;
    let mut bins: Vec<Vec<usize>> = vec![Vec::new(); nbins];
    for (arc_id, arc) in ctx.arcs.iter().enumerate() {
        for p in arc {
            let rel = *p - ctx.origin;
            let along = rel.dot(dir);
            let off = (rel - dir * along).norm();
            if off <= tol {
                let bin = (((along + ctx.window) / bin_width) as isize)
                    .clamp(0, nbins as isize - 1) as usize;
                if !bins[bin].contains(&arc_id) {
                    bins[bin].push(arc_id);
                }
            }
        }
    }
    let covered = bins.iter().filter(|b| !b.is_empty()).count();
    let doubled = bins.iter().filter(|b| b.len() >= 2).count();
    if covered > 0 && doubled as f64 > 0.8 * covered as f64 {
        2
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame_from(points: Vec<Vec2>, closed: bool) -> FrameCurve {
        FrameCurve {
            points,
            closed,
            origin: Vec2::ZERO,
            sigma: 1.0,
            time: 0.0,
        }
    }

    /// V-shaped curve through the exact origin: in along one ray of the
    /// pair, out along the other; the mirrored shadow completes the X.
    fn v_curve(theta: f64, reach: f64, n: usize) -> Vec<Vec2> {
        let u = Vec2::new(theta.cos(), theta.sin());
        let v = Vec2::new(-theta.sin(), theta.cos());
        let mut pts: Vec<Vec2> = (0..=n)
            .map(|i| u * (reach * (n - i) as f64 / n as f64))
            .collect();
        pts.extend((1..=n).map(|i| v * (reach * i as f64 / n as f64)));
        pts
    }

    #[test]
    fn exact_rotated_line_pair() {
        let theta = 0.1;
        let frame = frame_from(v_curve(theta, 3.0, 300), false);
        let report = match_model(&frame, 2.0, &shrinker_catalog()).unwrap();
        match report.model {
            ModelKind::LinePair { theta: th } => {
                assert!((th - theta).abs() < 1e-3, "theta {}", th);
            }
            ref other => panic!("expected line pair, got {:?}", other),
        }
        assert!(report.distance < 1e-6, "distance {}", report.distance);
    }

    #[test]
    fn radius_two_circle_matches() {
        let pts = circle_points(2.0, 512);
        let frame = frame_from(pts, true);
        let report = match_model(&frame, 3.0, &shrinker_catalog()).unwrap();
        assert_eq!(report.model, ModelKind::Circle { radius: 2.0 });
        // floor: the 512-gon is one sagitta (~4e-5) away from the circle
        assert!(report.distance < 1e-4, "distance {}", report.distance);
        assert!(report.runner_up_margin > 0.1);
    }

    #[test]
    fn doubled_segment_is_line_multiplicity_two() {
        // two coincident copies of a horizontal segment through the
        // origin, as index-separated runs
        let mut pts: Vec<Vec2> = (0..300)
            .map(|i| Vec2::new(-2.5 + 5.0 * i as f64 / 299.0, 0.0))
            .collect();
        pts.extend((0..300).map(|i| Vec2::new(2.5 - 5.0 * i as f64 / 299.0, 1e-4)));
        let frame = frame_from(pts, true);
        let report = match_model(&frame, 2.0, &shrinker_catalog()).unwrap();
        match report.model {
            ModelKind::Line { multiplicity, theta } => {
                assert_eq!(multiplicity, 2);
                assert!(theta.min(std::f64::consts::PI - theta) < 1e-3);
            }
            ref other => panic!("expected doubled line, got {:?}", other),
        }
    }

    #[test]
    fn grim_reaper_self_fit() {
        let pts = grim_reaper_points(0.3, Vec2::new(0.2, -0.1), 5.0);
        let mut frame = frame_from(pts, false);
        frame.origin = Vec2::new(0.0, -40.0); // mirror far away
        let report = match_model(&frame, 5.0, &standard_catalog()).unwrap();
        match report.model {
            ModelKind::GrimReaper { rotation, .. } => {
                let diff = (rotation - 0.3).rem_euclid(std::f64::consts::TAU);
                let diff = diff.min(std::f64::consts::TAU - diff);
                assert!(diff < 5e-3, "rotation {}", rotation);
            }
            ref other => panic!("expected grim reaper, got {:?}", other),
        }
        assert!(report.distance < 5e-3, "distance {}", report.distance);
    }

    #[test]
    fn lawlor_self_fit() {
        let c = 1.3;
        let n = 600;
        let pts: Vec<Vec2> = (0..=n)
            .map(|i| {
                let x = -8.0 + 16.0 * i as f64 / n as f64;
                Vec2::new(x, (x * x + c).sqrt())
            })
            .collect();
        let frame = frame_from(pts, false);
        let report = match_model(&frame, 5.0, &standard_catalog()).unwrap();
        match report.model {
            ModelKind::Lawlor { c: fit } => {
                assert!((fit - c).abs() < 0.02, "c {}", fit);
            }
            ref other => panic!("expected lawlor, got {:?}", other),
        }
        assert!(report.distance < 1e-3, "distance {}", report.distance);
    }

    #[test]
    fn rotation_equivariance_of_theta_fit() {
        for beta in [0.0, 0.2, 0.77] {
            let frame = frame_from(v_curve(beta, 3.0, 300), false);
            let report = match_model(&frame, 2.0, &shrinker_catalog()).unwrap();
            if let ModelKind::LinePair { theta } = report.model {
                let want = beta.rem_euclid(std::f64::consts::FRAC_PI_2);
                let diff = (theta - want).abs();
                let diff = diff.min(std::f64::consts::FRAC_PI_2 - diff);
                assert!(diff < 1e-3, "beta {}: theta {} vs {}", beta, theta, want);
            } else {
                panic!("expected line pair at beta {}", beta);
            }
        }
    }

    #[test]
    fn unmatched_when_nothing_fits() {
        // a blob of points on a small square far from every model
        let pts: Vec<Vec2> = (0..200)
            .map(|i| {
                let t = i as f64 / 200.0 * std::f64::consts::TAU;
                Vec2::new(1.3 + 0.08 * t.cos(), 0.9 + 0.08 * t.sin())
            })
            .collect();
        let mut frame = frame_from(pts, true);
        frame.origin = Vec2::new(0.0, -50.0);
        let report = match_model(&frame, 2.0, &shrinker_catalog()).unwrap();
        assert_eq!(report.model, ModelKind::Unmatched);
    }
}
