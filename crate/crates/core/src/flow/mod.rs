//! Time evolution of profile curves.
//!
//! The stepper is an explicit first-order front tracker: velocities from
//! the geometry module, CFL time step `dt = cfl · h²` with step rejection,
//! per-step tangential redistribution back to uniform arclength, and a
//! fixed vertex budget so the spacing follows the curve's length. Four
//! gauges share the machinery:
//!
//! - `physical`:  κ − γ⊥/|γ|²
//! - `csf_only`:  κ
//! - `shrinker`:  κ − γ⊥/|γ|² + ½γ⊥
//! - `expander`:  κ − γ⊥/|γ|² − ½γ⊥
//!
//! The rescaled gauges add the normal projection ½γ⊥ rather than ½γ; the
//! tangential difference is a reparametrization, and redistribution owns
//! the tangential motion anyway.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    self, diagnostics, CurveDiagnostics, GeometryError, ProfileCurve, Topology,
};
use crate::vec2::Vec2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Gauge {
    #[default]
    Physical,
    CsfOnly,
    ShrinkerGauge,
    ExpanderGauge,
}

/// Conditions that end a run. All optional; a run must be stopped by
/// exactly one of them (or fail).
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct StopConditions {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_time: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sup_velocity_threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_radius_threshold: Option<f64>,
    /// Steady state: gauge velocity (interior points for open curves)
    /// drops below this.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steady_state_residual: Option<f64>,
}

/// Endpoint handling for open curves: endpoints are pinned to their
/// initial positions on the asymptotic rays; curvature and radial forcing
/// decay along the rays, so the error is confined to a boundary layer.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryPolicy {
    PinnedToAsymptote,
}

impl Default for BoundaryPolicy {
    fn default() -> Self {
        BoundaryPolicy::PinnedToAsymptote
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlowConfig {
    #[serde(default)]
    pub gauge: Gauge,
    /// CFL factor in (0, 0.5]; dt = cfl · (min spacing)².
    pub cfl_factor: f64,
    /// Target spacing as a fraction of current length; the vertex budget
    /// is the reciprocal and stays fixed along the run.
    pub target_spacing_fraction: f64,
    /// Spacing-ratio guard; per-step redistribution keeps the actual ratio
    /// near 1, so this only trips on pathological steps.
    pub remesh_trigger: f64,
    /// Origin regularization radius. Zero or negative: use 1e-4 × the
    /// initial curve diameter.
    pub origin_epsilon: f64,
    pub stop: StopConditions,
    #[serde(default)]
    pub boundary: BoundaryPolicy,
    /// Record a snapshot whenever this much time has passed…
    pub snapshot_cadence: f64,
    /// …or whenever the gauge sup-velocity has grown by this factor since
    /// the last recorded snapshot (geometric time density near blow-up).
    pub snapshot_velocity_factor: f64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig {
            gauge: Gauge::Physical,
            cfl_factor: 0.2,
            target_spacing_fraction: 1.0 / 256.0,
            remesh_trigger: 2.0,
            origin_epsilon: 0.0,
            stop: StopConditions::default(),
            boundary: BoundaryPolicy::PinnedToAsymptote,
            snapshot_cadence: 0.02,
            // 2^(1/12): twelve frames per doubling of sup-velocity, which
            // keeps ≥ 8 snapshots in the final decade of T − t for the
            // singular-time estimator even when the blow-up rate is
            // slower than parabolic.
            snapshot_velocity_factor: 2f64.powf(1.0 / 12.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    MaxTime,
    SupVelocityThreshold,
    MinRadiusThreshold,
    SteadyState,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TerminationRecord {
    pub reason: StopReason,
    pub time: f64,
    pub steps: u64,
    /// Gauge sup-velocity at termination.
    pub final_sup_velocity: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Snapshot {
    pub time: f64,
    pub curve: ProfileCurve,
    pub diagnostics: CurveDiagnostics,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Trajectory {
    pub snapshots: Vec<Snapshot>,
    pub termination: TerminationRecord,
}

impl Trajectory {
    pub fn last(&self) -> &Snapshot {
        self.snapshots.last().expect("trajectory has snapshots")
    }

    pub fn first(&self) -> &Snapshot {
        self.snapshots.first().expect("trajectory has snapshots")
    }
}

#[derive(Debug, Error)]
pub enum FlowError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("no stop condition configured; the run would not terminate")]
    NoStopCondition,
    #[error("time step underflow at t = {t}: dt = {dt:.3e} after {rejections} rejections")]
    TimeStepUnderflow { t: f64, dt: f64, rejections: u32 },
}

pub type Result<T> = std::result::Result<T, FlowError>;

/// Evolving state: the current curve plus step bookkeeping. One state is
/// strictly sequential; distinct states are independent.
#[derive(Debug, Clone)]
pub struct FlowState {
    pub curve: ProfileCurve,
    pub time: f64,
    pub steps: u64,
    vertex_budget: usize,
    origin_epsilon: f64,
}

/// Outcome of a single accepted step.
#[derive(Debug, Clone, Copy)]
pub struct StepInfo {
    pub dt: f64,
    pub sup_gauge_velocity: f64,
    /// max(sup|κ|, sup|γ⊥/|γ|²|) before the step: the curvature scale the
    /// snapshot cadence must resolve (it can outrun the velocity when the
    /// two velocity terms partially cancel).
    pub sup_proxy: f64,
    pub rejections: u32,
}

impl FlowState {
    /// Prepare a state: resolve the origin epsilon, resample the initial
    /// curve to the configured spacing and fix the vertex budget.
    pub fn new(initial: ProfileCurve, config: &FlowConfig) -> Result<Self> {
        initial.validate()?;
        let origin_epsilon = if config.origin_epsilon > 0.0 {
            config.origin_epsilon
        } else {
            geometry::default_origin_epsilon(&initial)
        };
        let target = config.target_spacing_fraction * initial.length();
        let curve = geometry::resample(&initial, target)?;
        let vertex_budget = curve.segment_count();
        Ok(FlowState {
            curve,
            time: 0.0,
            steps: 0,
            vertex_budget,
            origin_epsilon,
        })
    }

    pub fn origin_epsilon(&self) -> f64 {
        self.origin_epsilon
    }

    /// Gauge velocity field at the current curve.
    pub fn gauge_velocity(&self, gauge: Gauge) -> Vec<Vec2> {
        velocity_and_proxy(&self.curve, gauge, self.origin_epsilon).0
    }

    /// Sup of the gauge velocity over the movable points.
    pub fn sup_gauge_velocity(&self, gauge: Gauge) -> f64 {
        let v = self.gauge_velocity(gauge);
        movable_range(&self.curve)
            .map(|i| v[i].norm())
            .fold(0.0, f64::max)
    }

    /// One accepted forward step: explicit Euler on the gauge velocity,
    /// pinned endpoints for open curves, rejection-halved dt when the sup
    /// displacement exceeds half the minimum spacing, then tangential
    /// redistribution back to uniform arclength.
    pub fn step(&mut self, config: &FlowConfig, max_time_cap: Option<f64>) -> Result<StepInfo> {
        let (velocity, sup_proxy) =
            velocity_and_proxy(&self.curve, config.gauge, self.origin_epsilon);
        let sup_v = movable_range(&self.curve)
            .map(|i| velocity[i].norm())
            .fold(0.0, f64::max);

        let h_min = min_spacing(&self.curve);
        let mut dt = config.cfl_factor * h_min * h_min;
        let mut rejections = 0u32;
        while sup_v * dt > h_min / 2.0 {
            dt /= 2.0;
            rejections += 1;
            let floor = 1e-14 * max_time_cap.unwrap_or(1.0).max(self.time);
            if dt < floor {
                return Err(FlowError::TimeStepUnderflow {
                    t: self.time,
                    dt,
                    rejections,
                });
            }
        }
        if let Some(cap) = max_time_cap {
            if self.time + dt > cap {
                dt = cap - self.time;
            }
        }

        for i in movable_range(&self.curve) {
            self.curve.points[i] += velocity[i] * dt;
        }
        self.time += dt;
        self.steps += 1;

        // tangential redistribution (pure reparametrization)
        self.curve = geometry::redistribute(&self.curve, self.vertex_budget);
        debug_assert!(self.curve.spacing_ratio() <= config.remesh_trigger.max(4.0));

        Ok(StepInfo {
            dt,
            sup_gauge_velocity: sup_v,
            sup_proxy,
            rejections,
        })
    }
}

fn movable_range(curve: &ProfileCurve) -> std::ops::Range<usize> {
    match curve.topology {
        Topology::Closed => 0..curve.points.len(),
        Topology::Open => 1..curve.points.len() - 1,
    }
}

fn min_spacing(curve: &ProfileCurve) -> f64 {
    (0..curve.segment_count())
        .map(|i| {
            let (a, b) = curve.segment(i);
            a.dist(b)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Velocity field of the selected gauge.
pub fn gauge_velocity(curve: &ProfileCurve, gauge: Gauge, origin_epsilon: f64) -> Vec<Vec2> {
    velocity_and_proxy(curve, gauge, origin_epsilon).0
}

/// Gauge velocity plus the curvature-scale proxy max(sup|κ|, sup|γ⊥/|γ|²|)
/// over the movable points, computed in one pass.
fn velocity_and_proxy(
    curve: &ProfileCurve,
    gauge: Gauge,
    origin_epsilon: f64,
) -> (Vec<Vec2>, f64) {
    let kappa = geometry::curvature(curve);
    let radial = geometry::radial_term_with_curvature(curve, origin_epsilon, &kappa);
    let sup_proxy = movable_range(curve)
        .map(|i| kappa[i].norm().max(radial[i].norm()))
        .fold(0.0, f64::max);
    let velocity = match gauge {
        Gauge::CsfOnly => kappa,
        Gauge::Physical | Gauge::ShrinkerGauge | Gauge::ExpanderGauge => {
            let lambda = match gauge {
                Gauge::ShrinkerGauge => 0.5,
                Gauge::ExpanderGauge => -0.5,
                _ => 0.0,
            };
            (0..curve.points.len())
                .map(|i| {
                    let mut v = kappa[i] - radial[i];
                    if lambda != 0.0 {
                        // ½ γ⊥ = ½ ⟨γ, n̂⟩ n̂
                        let g = curve.points[i];
                        let t = tangent_for(curve, i);
                        let nrm = t.perp();
                        v += nrm * (lambda * g.dot(nrm));
                    }
                    v
                })
                .collect()
        }
    };
    (velocity, sup_proxy)
}

fn tangent_for(curve: &ProfileCurve, i: usize) -> Vec2 {
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

/// Run the flow from an initial curve until exactly one stop condition
/// fires. Snapshots are recorded at the configured time cadence plus a
/// geometric cadence in sup-velocity, so blow-up analysis has pre-singular
/// frames at every curvature scale.
pub fn run(initial: &ProfileCurve, config: &FlowConfig) -> Result<Trajectory> {
    let s = &config.stop;
    if s.max_time.is_none()
        && s.sup_velocity_threshold.is_none()
        && s.min_radius_threshold.is_none()
        && s.steady_state_residual.is_none()
    {
        return Err(FlowError::NoStopCondition);
    }

    let mut state = FlowState::new(initial.clone(), config)?;
    let eps = state.origin_epsilon;
    let mut snapshots = vec![Snapshot {
        time: 0.0,
        curve: state.curve.clone(),
        diagnostics: diagnostics(&state.curve, eps),
    }];
    let mut snap_intensity = {
        let (v, proxy) = velocity_and_proxy(&state.curve, config.gauge, eps);
        let sup_v = movable_range(&state.curve)
            .map(|i| v[i].norm())
            .fold(0.0, f64::max);
        sup_v.max(proxy).max(1e-300)
    };
    let mut snap_time = 0.0;

    let termination;
    loop {
        let sup_v = state.sup_gauge_velocity(config.gauge);
        let min_r = state
            .curve
            .points
            .iter()
            .map(|p| p.norm())
            .fold(f64::INFINITY, f64::min);

        let reason = if s.sup_velocity_threshold.map_or(false, |t| sup_v >= t) {
            Some(StopReason::SupVelocityThreshold)
        } else if s.min_radius_threshold.map_or(false, |t| min_r <= t) {
            Some(StopReason::MinRadiusThreshold)
        } else if state.steps > 0 && s.steady_state_residual.map_or(false, |t| sup_v <= t) {
            Some(StopReason::SteadyState)
        } else if s.max_time.map_or(false, |t| state.time >= t) {
            Some(StopReason::MaxTime)
        } else {
            None
        };

        if let Some(reason) = reason {
            termination = TerminationRecord {
                reason,
                time: state.time,
                steps: state.steps,
                final_sup_velocity: sup_v,
            };
            break;
        }

        let info = state.step(config, s.max_time)?;

        let due_time = state.time - snap_time >= config.snapshot_cadence;
        let due_velocity =
            info.sup_gauge_velocity >= config.snapshot_velocity_factor * snap_velocity;
        if due_time || due_velocity {
            snapshots.push(Snapshot {
                time: state.time,
                curve: state.curve.clone(),
                diagnostics: diagnostics(&state.curve, eps),
            });
            snap_time = state.time;
            snap_velocity = snap_velocity.max(info.sup_gauge_velocity);
        }
    }

    // always record the terminal curve
    if snapshots.last().map(|s| s.time) != Some(state.time) {
        snapshots.push(Snapshot {
            time: state.time,
            curve: state.curve.clone(),
            diagnostics: diagnostics(&state.curve, eps),
        });
    }

    Ok(Trajectory {
        snapshots,
        termination,
    })
}

/// Run several independent configurations. Results are identical to
/// sequential runs and preserve input order; per-run errors are isolated.
pub fn run_ensemble(jobs: &[(ProfileCurve, FlowConfig)]) -> Vec<Result<Trajectory>> {
    if jobs.len() <= 1 {
        return jobs.iter().map(|(c, f)| run(c, f)).collect();
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|(curve, config)| scope.spawn(move || run(curve, config)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("run panicked")).collect()
    })
}

#[cfg(test)]
mod tests;
