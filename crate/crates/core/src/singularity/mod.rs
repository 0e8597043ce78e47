//! Singularity detection, timing, Type I/II classification, parabolic
//! rescaling, blow-down, and blow-up model matching.
//!
//! The ambient second fundamental form of the swept surface satisfies
//! |A|² = κ² + 3⟨γ,n̂⟩²/|γ|⁴ ≤ 4·max(sup|κ|, sup|γ⊥/|γ|²|)², with equality
//! of the bound on circles about the origin. The per-snapshot scalar
//! K = max(sup|κ|, sup|γ⊥/|γ|²|) is therefore the curve-level curvature
//! proxy, and the Type I monitor is (2K)²·(T̂ − t): exactly 1 along the
//! circle collapse, ≈ 2 along a curve-shortening collapse away from the
//! origin, and growing without bound at Type II singularities.
//!
//! Everything here is pure analysis over immutable trajectories; reports
//! are deterministic functions of their input.

mod models;

pub use models::{match_model, shrinker_catalog, standard_catalog, MatchReport, ModelKind};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flow::{StopReason, Trajectory};
use crate::geometry::{self, ProfileCurve};
use crate::vec2::Vec2;

/// Monitor magnitude above which a bounded-looking monitor is still
/// classified Type II. Calibration: the circle collapse sits at 1, the
/// curve-shortening collapse away from the origin at 2; conical and
/// translator singularities plateau far above (measured ≳ 16) because
/// their curvature scale outruns √(T−t) only logarithmically and the
/// per-decade growth test alone cannot see that at finite resolution.
pub const MONITOR_TYPE2_MAGNITUDE: f64 = 8.0;

/// Growth factor of the monitor over the final decade that forces a
/// Type II verdict.
pub const MONITOR_TYPE2_GROWTH: f64 = 5.0;

/// Bound on last/median of the monitor over the final decade for a
/// Type I verdict.
pub const MONITOR_TYPE1_RATIO: f64 = 3.0;

#[derive(Debug, Error)]
pub enum SingularityError {
    #[error("trajectory did not terminate at a singular-looking stop ({0:?})")]
    NotSingular(StopReason),
    #[error("insufficient pre-singular frames: {found} in the final decade (need ≥ 8)")]
    InsufficientFrames { found: usize },
    #[error("singular-time extrapolation failed: {0}")]
    EstimateFailed(String),
    #[error("requested sigma {sigma} needs the flow at t = {slice}, beyond the last snapshot {t_last}")]
    SigmaBeyondResolution { sigma: f64, slice: f64, t_last: f64 },
    #[error("type II rescaling requires a Type II verdict, got {0:?}")]
    NotTypeTwo(Verdict),
    #[error("blow-down window exhausted at lambda {0}")]
    WindowExhausted(f64),
    #[error("model matching found no points inside the window")]
    EmptyMatchWindow,
    #[error(transparent)]
    Geometry(#[from] geometry::GeometryError),
}

pub type Result<T> = std::result::Result<T, SingularityError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "I")]
    TypeI,
    #[serde(rename = "II")]
    TypeII,
    #[serde(rename = "none")]
    None,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

/// One sample of the curvature proxy along a trajectory.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ProxySample {
    pub time: f64,
    /// K = max(sup|κ|, sup|γ⊥/|γ|²|) over the snapshot.
    pub k: f64,
    /// Location of the pointwise maximum.
    pub argmax: Vec2,
    pub min_radius: f64,
}

/// Curvature-proxy history of a trajectory.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurvatureProxy {
    pub history: Vec<ProxySample>,
}

impl CurvatureProxy {
    pub fn from_trajectory(traj: &Trajectory) -> Self {
        let eps = origin_epsilon_for(traj);
        let history = traj
            .snapshots
            .iter()
            .map(|snap| {
                let (k, argmax) = pointwise_proxy_max(&snap.curve, eps);
                let min_radius = snap
                    .curve
                    .points
                    .iter()
                    .map(|p| p.norm())
                    .fold(f64::INFINITY, f64::min);
                ProxySample {
                    time: snap.time,
                    k,
                    argmax,
                    min_radius,
                }
            })
            .collect();
        CurvatureProxy { history }
    }

    pub fn last(&self) -> &ProxySample {
        self.history.last().expect("non-empty history")
    }
}

fn origin_epsilon_for(traj: &Trajectory) -> f64 {
    1e-4 * traj.first().curve.diameter()
}

/// Pointwise proxy max(|κ|, |γ⊥/|γ|²|) and its argmax location.
pub fn pointwise_proxy_max(curve: &ProfileCurve, origin_epsilon: f64) -> (f64, Vec2) {
    let kappa = geometry::curvature(curve);
    let radial = geometry::radial_term(curve, origin_epsilon);
    let mut best = (0.0f64, curve.points[0]);
    let interior = |i: usize| curve.is_closed() || (i > 0 && i + 1 < curve.points.len());
    for i in 0..curve.points.len() {
        if !interior(i) {
            continue;
        }
        let v = kappa[i].norm().max(radial[i].norm());
        if v > best.0 {
            best = (v, curve.points[i]);
        }
    }
    best
}

/// Outcome of the singular-time estimator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SingularityEstimate {
    /// Linear extrapolation of 1/K² over the final decade of snapshots.
    pub t_hat: f64,
    /// Power-law re-estimate from three spread points of the same decade
    /// (1/K² is convex in t at Type II singularities, so the linear fit
    /// underestimates there).
    pub t_hat_power_law: Option<f64>,
    /// True when the two estimators disagree by more than 5% of the
    /// decade span.
    pub estimator_disagreement: bool,
    /// Limit of the argmax-of-proxy location.
    pub w_hat: Vec2,
}

/// Estimate the singular time and point of a trajectory that terminated
/// by a blow-up stop condition.
pub fn estimate_singularity(traj: &Trajectory) -> Result<SingularityEstimate> {
    match traj.termination.reason {
        StopReason::SupVelocityThreshold | StopReason::MinRadiusThreshold => {}
        reason => return Err(SingularityError::NotSingular(reason)),
    }
    let proxy = CurvatureProxy::from_trajectory(traj);
    estimate_from_proxy(&proxy)
}

pub fn estimate_from_proxy(proxy: &CurvatureProxy) -> Result<SingularityEstimate> {
    let hist = &proxy.history;
    if hist.len() < 8 {
        return Err(SingularityError::InsufficientFrames { found: hist.len() });
    }
    let t_last = proxy.last().time;

    // bootstrap from a short trailing window (a wide one sees too much
    // curvature of 1/K² when the blow-up is not exactly parabolic), then
    // refit with the decade defined through the current estimate
    let mut t_hat = f64::NEG_INFINITY;
    for tail in [10usize, 8, 6, 4] {
        let from = hist.len().saturating_sub(tail);
        if let Ok(t) = fit_inverse_square(&hist[from..]) {
            if t > t_last {
                t_hat = t;
                break;
            }
        }
    }
    if t_hat <= t_last {
        // power-law bootstrap as a fallback
        let from = hist.len().saturating_sub(12);
        t_hat = power_law_estimate(&hist[from..]).unwrap_or(f64::NEG_INFINITY);
    }
    if t_hat <= t_last {
        return Err(SingularityError::EstimateFailed(format!(
            "extrapolated T = {t_hat} not beyond the last snapshot {t_last}"
        )));
    }

    for _ in 0..2 {
        let decade = final_decade(hist, t_hat);
        if decade.len() < 8 {
            return Err(SingularityError::InsufficientFrames {
                found: decade.len(),
            });
        }
        let refit = fit_inverse_square(decade)?;
        // keep the previous estimate when the refit collapses below the
        // recorded range (strongly super-parabolic data)
        if refit > t_last {
            t_hat = refit;
        }
    }

    let decade = final_decade(hist, t_hat);
    let t_hat_power_law = power_law_estimate(decade);
    let span = t_hat - decade.first().map(|s| s.time).unwrap_or(t_last);
    let estimator_disagreement = t_hat_power_law
        .map(|tp| (tp - t_hat).abs() > 0.05 * span)
        .unwrap_or(false);

    Ok(SingularityEstimate {
        t_hat,
        t_hat_power_law,
        estimator_disagreement,
        w_hat: proxy.last().argmax,
    })
}

/// Snapshots with T̂ − t within a factor 10 of the last available one.
fn final_decade(hist: &[ProxySample], t_hat: f64) -> &[ProxySample] {
    let t_last = hist.last().unwrap().time;
    let delta_min = (t_hat - t_last).max(1e-300);
    let cutoff = t_hat - 10.0 * delta_min;
    let start = hist.partition_point(|s| s.time < cutoff);
    &hist[start..]
}

/// Least-squares line through (t, 1/K²); its root is the singular time.
fn fit_inverse_square(samples: &[ProxySample]) -> Result<f64> {
    let n = samples.len() as f64;
    let (mut st, mut sy, mut stt, mut sty) = (0.0, 0.0, 0.0, 0.0);
    for s in samples {
        let y = 1.0 / (s.k * s.k);
        st += s.time;
        sy += y;
        stt += s.time * s.time;
        sty += s.time * y;
    }
    let denom = n * stt - st * st;
    if denom.abs() < 1e-300 {
        return Err(SingularityError::EstimateFailed(
            "degenerate time axis".into(),
        ));
    }
    let slope = (n * sty - st * sy) / denom;
    let intercept = (sy - slope * st) / n;
    if slope >= 0.0 {
        return Err(SingularityError::EstimateFailed(
            "1/K² is not decreasing; no blow-up in sight".into(),
        ));
    }
    Ok(-intercept / slope)
}

/// Self-consistent power-law fit K ~ C(T−t)^{−p} through three spread
/// samples: find T where the exponent from the first pair matches the
/// exponent from the second pair.
fn power_law_estimate(samples: &[ProxySample]) -> Option<f64> {
    if samples.len() < 3 {
        return None;
    }
    let a = samples[0];
    let b = samples[samples.len() / 2];
    let c = samples[samples.len() - 1];
    if !(a.k < b.k && b.k < c.k) {
        return None;
    }
    let mismatch = |t_sing: f64| -> f64 {
        let p12 = (b.k / a.k).ln() / ((t_sing - a.time) / (t_sing - b.time)).ln();
        let p23 = (c.k / b.k).ln() / ((t_sing - b.time) / (t_sing - c.time)).ln();
        p12 - p23
    };
    let span = c.time - a.time;
    let mut lo = c.time + 1e-9 * span.max(1e-12);
    let mut hi = c.time + 10.0 * span;
    let (flo, fhi) = (mismatch(lo), mismatch(hi));
    if !flo.is_finite() || !fhi.is_finite() || flo * fhi > 0.0 {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = mismatch(mid);
        if !fm.is_finite() {
            return None;
        }
        if fm * flo <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// One point of the Type I monitor history.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MonitorPoint {
    pub time: f64,
    /// (2K)²·(T̂ − t), the ambient |A|²(T−t) proxy.
    pub value: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub monitor: Vec<MonitorPoint>,
    /// last/first of the monitor over the final decade.
    pub growth_factor: Option<f64>,
    /// last/median of the monitor over the final decade.
    pub bounded_ratio: Option<f64>,
    /// median of the monitor over the final decade.
    pub monitor_median: Option<f64>,
}

/// Classify the singularity type from the monitor history.
///
/// Type II fires on monitor growth > 5 over the final decade of T̂ − t, or
/// on a monitor plateau far above every self-shrinker value (see
/// [`MONITOR_TYPE2_MAGNITUDE`]); Type I requires last/median < 3 and a
/// self-shrinker-scale plateau. Anything else is inconclusive.
pub fn classify_type(traj: &Trajectory, t_hat: f64) -> Classification {
    let proxy = CurvatureProxy::from_trajectory(traj);
    classify_from_proxy(&proxy, t_hat)
}

pub fn classify_from_proxy(proxy: &CurvatureProxy, t_hat: f64) -> Classification {
    let monitor: Vec<MonitorPoint> = proxy
        .history
        .iter()
        .filter(|s| s.time < t_hat)
        .map(|s| MonitorPoint {
            time: s.time,
            value: 4.0 * s.k * s.k * (t_hat - s.time),
        })
        .collect();

    // final decade in T̂ − t
    let t_last = monitor.last().map(|m| m.time).unwrap_or(0.0);
    let delta_min = (t_hat - t_last).max(1e-300);
    let decade: Vec<&MonitorPoint> = monitor
        .iter()
        .filter(|m| t_hat - m.time <= 10.0 * delta_min)
        .collect();

    if decade.len() < 4 {
        return Classification {
            verdict: Verdict::Inconclusive,
            monitor,
            growth_factor: None,
            bounded_ratio: None,
            monitor_median: None,
        };
    }

    let last = decade.last().unwrap().value;
    let first = decade[0].value;
    let mut values: Vec<f64> = decade.iter().map(|m| m.value).collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let median = values[values.len() / 2];

    let growth = last / first;
    let bounded = last / median;

    let verdict = if growth > MONITOR_TYPE2_GROWTH || median > MONITOR_TYPE2_MAGNITUDE {
        Verdict::TypeII
    } else if bounded < MONITOR_TYPE1_RATIO {
        Verdict::TypeI
    } else {
        Verdict::Inconclusive
    };

    Classification {
        verdict,
        monitor,
        growth_factor: Some(growth),
        bounded_ratio: Some(bounded),
        monitor_median: Some(median),
    }
}

/// A curve carried into a rescaled frame. `origin` is the image of the
/// plane's origin in frame coordinates (the anchor for cone-type models);
/// the frame center 0 is the blow-up point itself.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrameCurve {
    pub points: Vec<Vec2>,
    pub closed: bool,
    /// Image of the original origin: −σ·w.
    pub origin: Vec2,
    /// Scale factor applied.
    pub sigma: f64,
    /// Physical time of the underlying slice.
    pub time: f64,
}

impl FrameCurve {
    /// Reflect through the image of the origin: the other branch of the
    /// Lagrangian shadow γ ∪ −γ in frame coordinates.
    pub fn mirrored_points(&self) -> Vec<Vec2> {
        self.points.iter().map(|p| self.origin * 2.0 - *p).collect()
    }
}

/// Parabolic (Type I) rescaling about `w`: for each σ, the snapshot
/// nearest t = T̂ − σ⁻² recentred by w and scaled by σ — the gauge-time
/// s = −1 slice of the tangent flow. Linear time interpolation between
/// snapshots when their point counts agree.
pub fn type1_rescale(
    traj: &Trajectory,
    w: Vec2,
    t_hat: f64,
    sigmas: &[f64],
) -> Result<Vec<FrameCurve>> {
    let t_last = traj.last().time;
    let mut out = Vec::with_capacity(sigmas.len());
    for &sigma in sigmas {
        let slice = t_hat - 1.0 / (sigma * sigma);
        if slice > t_last {
            return Err(SingularityError::SigmaBeyondResolution {
                sigma,
                slice,
                t_last,
            });
        }
        let (points, closed) = curve_at_time(traj, slice);
        let rescaled: Vec<Vec2> = points.iter().map(|p| (*p - w) * sigma).collect();
        out.push(FrameCurve {
            points: rescaled,
            closed,
            origin: -w * sigma,
            sigma,
            time: slice,
        });
    }
    Ok(out)
}

/// Curve at an arbitrary time, linearly interpolated between the two
/// bracketing snapshots when they share a point count (the redistributor
/// keeps the vertex budget fixed, so they normally do).
fn curve_at_time(traj: &Trajectory, t: f64) -> (Vec<Vec2>, bool) {
    let snaps = &traj.snapshots;
    let closed = snaps[0].curve.is_closed();
    if t <= snaps[0].time {
        return (snaps[0].curve.points.clone(), closed);
    }
    let idx = snaps.partition_point(|s| s.time <= t);
    if idx >= snaps.len() {
        return (snaps.last().unwrap().curve.points.clone(), closed);
    }
    let (a, b) = (&snaps[idx - 1], &snaps[idx]);
    if a.curve.points.len() != b.curve.points.len() {
        let pick = if (t - a.time) <= (b.time - t) { a } else { b };
        return (pick.curve.points.clone(), closed);
    }
    let u = (t - a.time) / (b.time - a.time).max(1e-300);
    let pts = a
        .curve
        .points
        .iter()
        .zip(b.curve.points.iter())
        .map(|(p, q)| p.lerp(*q, u))
        .collect();
    (pts, closed)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Type2Sequence {
    pub frames: Vec<FrameCurve>,
    /// Set when the argmax location moved by more than ten spacings
    /// between consecutive frames (reported, sequence still emitted).
    pub argmax_unstable: bool,
}

/// Curvature-scale (Type II) rescaling: for a tail of snapshot times tᵢ,
/// recenter at the argmax-of-proxy point wᵢ and scale by σᵢ = K(tᵢ), so
/// the normalized curves have unit proxy at the center.
pub fn type2_rescale(traj: &Trajectory, verdict: Verdict) -> Result<Type2Sequence> {
    if verdict != Verdict::TypeII {
        return Err(SingularityError::NotTypeTwo(verdict));
    }
    let proxy = CurvatureProxy::from_trajectory(traj);
    let hist = &proxy.history;
    let k_last = proxy.last().k;

    let mut frames = Vec::new();
    let mut argmax_unstable = false;
    let mut prev_argmax: Option<Vec2> = None;
    for (snap, sample) in traj.snapshots.iter().zip(hist.iter()) {
        // tail of the blow-up: within a factor 32 of the final proxy
        if sample.k < k_last / 32.0 {
            continue;
        }
        let spacing = snap.curve.length() / snap.curve.segment_count() as f64;
        if let Some(prev) = prev_argmax {
            if prev.dist(sample.argmax) > 10.0 * spacing {
                argmax_unstable = true;
            }
        }
        prev_argmax = Some(sample.argmax);
        let sigma = sample.k;
        let points: Vec<Vec2> = snap
            .curve
            .points
            .iter()
            .map(|p| (*p - sample.argmax) * sigma)
            .collect();
        frames.push(FrameCurve {
            points,
            closed: snap.curve.is_closed(),
            origin: -sample.argmax * sigma,
            sigma,
            time: snap.time,
        });
    }
    Ok(Type2Sequence {
        frames,
        argmax_unstable,
    })
}

/// Blow-down of an ancient-solution sample: scale the frame down by λ.
/// Frame coordinates (including the origin image) divide by λ; the far
/// field of the input concentrates near the unit window.
pub fn blow_down(frame: &FrameCurve, lambdas: &[f64]) -> Result<Vec<FrameCurve>> {
    let extent = frame
        .points
        .iter()
        .map(|p| p.norm())
        .fold(0.0f64, f64::max);
    let mut out = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        if extent / lambda < 1.0 {
            return Err(SingularityError::WindowExhausted(lambda));
        }
        out.push(FrameCurve {
            points: frame.points.iter().map(|p| *p / lambda).collect(),
            closed: frame.closed,
            origin: frame.origin / lambda,
            sigma: frame.sigma / lambda,
            time: frame.time,
        });
    }
    Ok(out)
}

/// Full singularity report for a trajectory.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SingularityReport {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_hat: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_hat_power_law: Option<f64>,
    pub estimator_disagreement: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_hat: Option<Vec2>,
    pub type1_monitor: Vec<MonitorPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monitor_growth_factor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monitor_bounded_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monitor_median: Option<f64>,
    /// Best shrinker-catalog fit of the Type I rescaling at the largest
    /// resolvable σ.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blowup_match: Option<MatchReport>,
    /// Largest σ whose slice is both recorded and spatially resolved.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma_max: Option<f64>,
    /// Best full-catalog fit of the last Type II normalized frame.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type2_match: Option<MatchReport>,
    /// Best shrinker-catalog fit of the blow-down of the Type II frame.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blowdown_match: Option<MatchReport>,
    pub type2_argmax_unstable: bool,
}

/// Options for [`analyze`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalyzeOptions {
    /// Snap ŵ to the exact origin when |ŵ| is below this fraction of the
    /// initial curve diameter (circle-invariant blow-ups live there).
    pub origin_snap_fraction: f64,
    /// Window radius for Type I model matching.
    pub type1_window: f64,
    /// Window radius for Type II model matching.
    pub type2_window: f64,
    /// Blow-down factors tried against the shrinker catalog.
    pub blowdown_lambdas: Vec<f64>,
    /// Window radius for blow-down matching.
    pub blowdown_window: f64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            origin_snap_fraction: 0.05,
            type1_window: 2.0,
            type2_window: 5.0,
            blowdown_lambdas: vec![8.0, 12.0, 16.0, 24.0, 32.0],
            blowdown_window: 1.0,
        }
    }
}

fn empty_report(verdict: Verdict) -> SingularityReport {
    SingularityReport {
        verdict,
        t_hat: None,
        t_hat_power_law: None,
        estimator_disagreement: false,
        w_hat: None,
        type1_monitor: Vec::new(),
        monitor_growth_factor: None,
        monitor_bounded_ratio: None,
        monitor_median: None,
        blowup_match: None,
        sigma_max: None,
        type2_match: None,
        blowdown_match: None,
        type2_argmax_unstable: false,
    }
}

/// Run the full analysis pipeline: estimate, classify, rescale, match.
pub fn analyze(traj: &Trajectory, options: &AnalyzeOptions) -> SingularityReport {
    let estimate = match estimate_singularity(traj) {
        Ok(e) => e,
        Err(_) => return empty_report(Verdict::None),
    };

    let classification = classify_type(traj, estimate.t_hat);
    let diameter = traj.first().curve.diameter();
    let w = if estimate.w_hat.norm() < options.origin_snap_fraction * diameter {
        Vec2::ZERO
    } else {
        estimate.w_hat
    };

    // largest resolvable sigma: slice within the recorded range and the
    // rescaled spacing still below a third of unity; when the center is
    // not pinned to the exact origin, also keep the rescaled ŵ estimation
    // error (of order the final remnant size) small
    let t_last = traj.last().time;
    let spacing = {
        let c = &traj.last().curve;
        c.length() / c.segment_count() as f64
    };
    let sigma_time = 1.0 / (estimate.t_hat - t_last).max(1e-300).sqrt();
    let sigma_space = 0.33 / spacing;
    let mut sigma_max = sigma_time.min(sigma_space) * 0.999;
    if w != Vec2::ZERO {
        let remnant = traj
            .last()
            .curve
            .points
            .iter()
            .map(|p| p.dist(w))
            .fold(0.0f64, f64::max)
            .max(1e-300);
        sigma_max = sigma_max.min(0.05 / remnant);
    }

    let blowup_match = type1_rescale(traj, w, estimate.t_hat, &[sigma_max])
        .ok()
        .and_then(|frames| {
            match_model(&frames[0], options.type1_window, &shrinker_catalog()).ok()
        });

    let (type2_match, blowdown_match, argmax_unstable) =
        if classification.verdict == Verdict::TypeII {
            match type2_rescale(traj, classification.verdict) {
                Ok(seq) if !seq.frames.is_empty() => {
                    let last = seq.frames.last().unwrap();
                    let t2 = match_model(last, options.type2_window, &standard_catalog()).ok();
                    let bd = blow_down(last, &options.blowdown_lambdas)
                        .ok()
                        .and_then(|bds| {
                            bds.iter()
                                .filter_map(|f| {
                                    match_model(f, options.blowdown_window, &shrinker_catalog())
                                        .ok()
                                })
                                .min_by(|a, b| a.distance.partial_cmp(&b.distance).unwrap())
                        });
                    (t2, bd, seq.argmax_unstable)
                }
                _ => (None, None, false),
            }
        } else {
            (None, None, false)
        };

    SingularityReport {
        verdict: classification.verdict,
        t_hat: Some(estimate.t_hat),
        t_hat_power_law: estimate.t_hat_power_law,
        estimator_disagreement: estimate.estimator_disagreement,
        w_hat: Some(estimate.w_hat),
        type1_monitor: classification.monitor,
        monitor_growth_factor: classification.growth_factor,
        monitor_bounded_ratio: classification.bounded_ratio,
        monitor_median: classification.monitor_median,
        blowup_match,
        sigma_max: Some(sigma_max),
        type2_match,
        blowdown_match,
        type2_argmax_unstable: argmax_unstable,
    }
}
