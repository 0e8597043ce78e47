//! Declarative experiment definitions: generators for the standard
//! initial curves, scenario configs with expected outcomes, the run
//! pipeline (flow → analysis → persistence → plots), and the built-in
//! scenario catalog.

pub mod plots;

use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flow::{self, FlowConfig, StopReason, Trajectory};
use crate::geometry::{AsymptoticData, GeometryError, ProfileCurve};
use crate::io::{self, IoError};
use crate::singularity::{self, AnalyzeOptions, SingularityReport, Verdict};
use crate::vec2::Vec2;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("parameter `{field}` out of range: {message}")]
    BadParameter {
        field: &'static str,
        message: String,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Flow(#[from] flow::FlowError),
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("unknown scenario `{0}`; see `scenario list`")]
    UnknownScenario(String),
}

pub type Result<T> = std::result::Result<T, ScenarioError>;

/// Initial-curve generators, mirroring the standard examples.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// (a cos u, b sin u): embedded torus profile enclosing the origin.
    Ellipse { a: f64, b: f64, samples: usize },
    /// (e^{cos u}, sin u · e^{−cos u}): embedded loop in the right
    /// half-plane, not enclosing the origin.
    Chekanov { samples: usize },
    /// scale·(−sin u, sin u cos u)/(1 + cos²u): immersed figure-eight
    /// through the origin with perpendicular crossing tangents.
    FigureEight { scale: f64, samples: usize },
    /// One branch of y = √(x² cot²(α/2) + c) for |x| ≤ window: open arc
    /// asymptotic to rays of opening angle α, bisector on the y-axis.
    Arc {
        alpha: f64,
        c: f64,
        window: f64,
        samples: usize,
    },
    /// (1 + eps·cos(k u))·e^{iu}: star-shaped closed curve about the
    /// origin (no embeddedness claim is made for the swept torus).
    Star { k: u32, eps: f64, samples: usize },
}

/// Build the initial curve for a generator spec.
pub fn generate(spec: &GeneratorSpec) -> Result<ProfileCurve> {
    match *spec {
        GeneratorSpec::Ellipse { a, b, samples } => {
            require(a > 0.0, "a", "must be positive")?;
            require(b > 0.0, "b", "must be positive")?;
            require(samples >= 8, "samples", "need at least 8")?;
            let pts = closed_param(samples, |u| Vec2::new(a * u.cos(), b * u.sin()));
            Ok(ProfileCurve::closed(pts)?)
        }
        GeneratorSpec::Chekanov { samples } => {
            require(samples >= 8, "samples", "need at least 8")?;
            let pts = closed_param(samples, |u| {
                Vec2::new(u.cos().exp(), u.sin() * (-u.cos()).exp())
            });
            Ok(ProfileCurve::closed(pts)?)
        }
        GeneratorSpec::FigureEight { scale, samples } => {
            require(scale > 0.0, "scale", "must be positive")?;
            require(samples >= 8, "samples", "need at least 8")?;
            let pts = closed_param(samples, |u| {
                let d = 1.0 + u.cos() * u.cos();
                Vec2::new(-scale * u.sin() / d, scale * u.sin() * u.cos() / d)
            });
            Ok(ProfileCurve::closed(pts)?)
        }
        GeneratorSpec::Arc {
            alpha,
            c,
            window,
            samples,
        } => {
            require(
                alpha > 0.0 && alpha < std::f64::consts::PI,
                "alpha",
                "must lie in (0, π)",
            )?;
            require(c > 0.0, "c", "must be positive")?;
            require(
                window > 2.0 * c.sqrt(),
                "window",
                "must exceed twice the vertex distance",
            )?;
            require(samples >= 8, "samples", "need at least 8")?;
            Ok(arc_curve(alpha, c, window, samples, None)?)
        }
        GeneratorSpec::Star { k, eps, samples } => {
            require(k >= 2, "k", "need at least 2 lobes")?;
            require(eps.abs() < 1.0, "eps", "must satisfy |eps| < 1")?;
            require(samples >= 8, "samples", "need at least 8")?;
            let pts = closed_param(samples, |u| {
                let r = 1.0 + eps * (k as f64 * u).cos();
                Vec2::new(r * u.cos(), r * u.sin())
            });
            Ok(ProfileCurve::closed(pts)?)
        }
    }
}

fn require(ok: bool, field: &'static str, message: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(ScenarioError::BadParameter {
            field,
            message: message.to_string(),
        })
    }
}

fn closed_param(samples: usize, f: impl Fn(f64) -> Vec2) -> Vec<Vec2> {
    (0..samples)
        .map(|i| f(std::f64::consts::TAU * (i as f64 + 0.5) / samples as f64))
        .collect()
}

/// Arc generator core, optionally with a multiplicative perturbation of
/// the hyperbola constant: y = √(x²cot²(α/2) + c·(1 + p(x))).
fn arc_curve(
    alpha: f64,
    c: f64,
    window: f64,
    samples: usize,
    perturb: Option<&dyn Fn(f64) -> f64>,
) -> std::result::Result<ProfileCurve, GeometryError> {
    let m = 1.0 / (alpha / 2.0).tan();
    let pts: Vec<Vec2> = (0..=samples)
        .map(|i| {
            let x = -window + 2.0 * window * i as f64 / samples as f64;
            let c_eff = match perturb {
                Some(p) => c * (1.0 + p(x)),
                None => c,
            };
            Vec2::new(x, (m * m * x * x + c_eff).sqrt())
        })
        .collect();
    ProfileCurve::open(pts, AsymptoticData::new(alpha))
}

/// Seeded smooth perturbation of the arc generator, sandwiched between
/// the hyperbolae with constants c(1 ± amplitude): random cosine modes
/// damped to zero at the truncation ends.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Perturbation {
    pub amplitude: f64,
    pub modes: u32,
}

pub fn generate_perturbed_arc(
    alpha: f64,
    c: f64,
    window: f64,
    samples: usize,
    perturbation: &Perturbation,
    seed: u64,
) -> Result<ProfileCurve> {
    require(
        perturbation.amplitude.abs() < 1.0,
        "amplitude",
        "must keep the sandwich: |amplitude| < 1",
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<f64> = (0..perturbation.modes)
        .map(|_| rng.gen_range(-1.0..1.0))
        .collect();
    let norm: f64 = coeffs.iter().map(|a| a.abs()).sum::<f64>().max(1e-12);
    let amp = perturbation.amplitude;
    let p = move |x: f64| {
        let damp = (1.0 - (x / window).powi(2)).powi(2);
        let wave: f64 = coeffs
            .iter()
            .enumerate()
            .map(|(j, a)| a * ((j as f64 + 1.0) * std::f64::consts::PI * x / window).cos())
            .sum();
        amp * damp * wave / norm
    };
    Ok(arc_curve(alpha, c, window, samples, Some(&p))?)
}

/// Declarative expectations a scenario can assert about its own outcome.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ExpectedOutcome {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stop_reason: Option<StopReason>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    /// Blow-up model id ("line_pair", "circle", …) for the Type I match.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blowup_model: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type2_model: Option<String>,
    /// (expected time, absolute tolerance)
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular_time: Option<(f64, f64)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub name: String,
    pub generator: GeneratorSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<Perturbation>,
    pub seed: u64,
    pub flow: FlowConfig,
    /// Run singularity analysis after the flow.
    pub analyze: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analyze_options: Option<AnalyzeOptions>,
    #[serde(default)]
    pub expected: ExpectedOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

/// Reproducibility record written beside every scenario's outputs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub artifact_version: String,
    pub config: ScenarioConfig,
    pub termination: crate::flow::TerminationRecord,
    pub outcome_ok: bool,
    pub outcome_notes: Vec<String>,
    pub wall_clock_seconds: f64,
    /// SHA-256 digests of every file written by the run.
    pub output_digests: std::collections::BTreeMap<String, String>,
}

#[derive(Debug)]
pub struct ScenarioOutcome {
    pub trajectory: Trajectory,
    pub report: Option<SingularityReport>,
    pub manifest: RunManifest,
    pub out_dir: PathBuf,
}

/// Execute a scenario: generate, evolve, analyze, persist, plot, check.
pub fn run_scenario(config: &ScenarioConfig, out_root: &Path) -> Result<ScenarioOutcome> {
    let started = Instant::now();
    let initial = match (&config.generator, &config.perturbation) {
        (
            GeneratorSpec::Arc {
                alpha,
                c,
                window,
                samples,
            },
            Some(p),
        ) => generate_perturbed_arc(*alpha, *c, *window, *samples, p, config.seed)?,
        (gen, _) => generate(gen)?,
    };

    let trajectory = flow::run(&initial, &config.flow)?;
    let report = if config.analyze {
        let opts = config.analyze_options.clone().unwrap_or_default();
        Some(singularity::analyze(&trajectory, &opts))
    } else {
        None
    };

    let out_dir = config
        .output_dir
        .clone()
        .unwrap_or_else(|| out_root.join(&config.name));
    std::fs::create_dir_all(&out_dir).map_err(IoError::from)?;

    let traj_path = out_dir.join("trajectory.jsonl");
    io::write_trajectory_jsonl(&traj_path, &trajectory)?;
    let mut written = vec![traj_path.clone()];

    if let Some(report) = &report {
        let report_path = out_dir.join("report.json");
        io::write_json(&report_path, report)?;
        written.push(report_path);
    }

    let montage = out_dir.join("montage.svg");
    plots::montage(&trajectory, &montage).map_err(IoError::from)?;
    written.push(montage);
    if let Some(report) = &report {
        if !report.type1_monitor.is_empty() {
            let mon = out_dir.join("monitor.svg");
            plots::monitor_plot(report, &mon).map_err(IoError::from)?;
            written.push(mon);
        }
    }

    let (outcome_ok, outcome_notes) = check_expectations(config, &trajectory, report.as_ref());

    let mut output_digests = std::collections::BTreeMap::new();
    for path in &written {
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        output_digests.insert(name, io::file_digest(path)?);
    }

    let manifest = RunManifest {
        artifact_version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        termination: trajectory.termination.clone(),
        outcome_ok,
        outcome_notes,
        wall_clock_seconds: started.elapsed().as_secs_f64(),
        output_digests,
    };
    io::write_json(&out_dir.join("manifest.json"), &manifest)?;

    Ok(ScenarioOutcome {
        trajectory,
        report,
        manifest,
        out_dir,
    })
}

/// Pure function of the trajectory and report: re-running the checks on
/// saved outputs reproduces the exit status.
pub fn check_expectations(
    config: &ScenarioConfig,
    trajectory: &Trajectory,
    report: Option<&SingularityReport>,
) -> (bool, Vec<String>) {
    let mut ok = true;
    let mut notes = Vec::new();
    let exp = &config.expected;

    if let Some(reason) = exp.stop_reason {
        if trajectory.termination.reason != reason {
            ok = false;
            notes.push(format!(
                "stop reason {:?}, expected {:?}",
                trajectory.termination.reason, reason
            ));
        }
    }
    if let Some(verdict) = exp.verdict {
        match report {
            Some(r) if r.verdict == verdict => {}
            Some(r) => {
                ok = false;
                notes.push(format!("verdict {:?}, expected {:?}", r.verdict, verdict));
            }
            None => {
                ok = false;
                notes.push("verdict expected but analysis disabled".into());
            }
        }
    }
    if let Some(model) = &exp.blowup_model {
        let got = report
            .and_then(|r| r.blowup_match.as_ref())
            .map(|m| m.model.id());
        if got != Some(model.as_str()) {
            ok = false;
            notes.push(format!("blow-up model {:?}, expected {}", got, model));
        }
    }
    if let Some(model) = &exp.type2_model {
        let got = report
            .and_then(|r| r.type2_match.as_ref())
            .map(|m| m.model.id());
        if got != Some(model.as_str()) {
            ok = false;
            notes.push(format!("type II model {:?}, expected {}", got, model));
        }
    }
    if let Some((t, tol)) = exp.singular_time {
        let got = report.and_then(|r| r.t_hat);
        match got {
            Some(th) if (th - t).abs() <= tol => {}
            other => {
                ok = false;
                notes.push(format!("singular time {:?}, expected {} ± {}", other, t, tol));
            }
        }
    }
    (ok, notes)
}

/// The built-in scenario catalog, one per standard example.
pub fn builtin_scenarios() -> Vec<ScenarioConfig> {
    let stop_velocity = |thr: f64| crate::flow::StopConditions {
        sup_velocity_threshold: Some(thr),
        max_time: Some(10.0),
        ..Default::default()
    };
    let base_flow = FlowConfig::default;

    vec![
        ScenarioConfig {
            name: "clifford".into(),
            generator: GeneratorSpec::Ellipse {
                a: 1.0,
                b: 1.0,
                samples: 2048,
            },
            perturbation: None,
            seed: 0,
            flow: FlowConfig {
                target_spacing_fraction: 1.0 / 512.0,
                stop: stop_velocity(1e3),
                ..base_flow()
            },
            analyze: true,
            analyze_options: None,
            expected: ExpectedOutcome {
                stop_reason: Some(StopReason::SupVelocityThreshold),
                verdict: Some(Verdict::TypeI),
                blowup_model: Some("circle".into()),
                singular_time: Some((0.25, 0.005)),
                ..Default::default()
            },
            output_dir: None,
        },
        ScenarioConfig {
            name: "ellipse-3-1".into(),
            generator: GeneratorSpec::Ellipse {
                a: 3.0,
                b: 1.0,
                samples: 4096,
            },
            perturbation: None,
            seed: 0,
            flow: FlowConfig {
                target_spacing_fraction: 1.0 / 2048.0,
                stop: crate::flow::StopConditions {
                    min_radius_threshold: Some(0.02),
                    sup_velocity_threshold: Some(2e4),
                    max_time: Some(10.0),
                    ..Default::default()
                },
                ..base_flow()
            },
            analyze: true,
            analyze_options: None,
            expected: ExpectedOutcome {
                blowup_model: Some("line_pair".into()),
                ..Default::default()
            },
            output_dir: None,
        },
        ScenarioConfig {
            name: "chekanov".into(),
            generator: GeneratorSpec::Chekanov { samples: 2048 },
            perturbation: None,
            seed: 0,
            flow: FlowConfig {
                target_spacing_fraction: 1.0 / 512.0,
                stop: stop_velocity(2e3),
                ..base_flow()
            },
            analyze: true,
            analyze_options: None,
            expected: ExpectedOutcome {
                verdict: Some(Verdict::TypeI),
                blowup_model: Some("circle".into()),
                ..Default::default()
            },
            output_dir: None,
        },
        ScenarioConfig {
            name: "figure-eight".into(),
            generator: GeneratorSpec::FigureEight {
                scale: 3.0,
                samples: 4096,
            },
            perturbation: None,
            seed: 0,
            flow: FlowConfig {
                target_spacing_fraction: 1.0 / 1024.0,
                stop: stop_velocity(2e5),
                ..base_flow()
            },
            analyze: true,
            analyze_options: None,
            expected: ExpectedOutcome {
                verdict: Some(Verdict::TypeII),
                type2_model: Some("grim_reaper".into()),
                ..Default::default()
            },
            output_dir: None,
        },
        ScenarioConfig {
            name: "lawlor-stability".into(),
            generator: GeneratorSpec::Arc {
                alpha: std::f64::consts::FRAC_PI_2,
                c: 1.0 / 3.0,
                window: 3.0,
                samples: 2048,
            },
            perturbation: Some(Perturbation {
                amplitude: 0.1,
                modes: 4,
            }),
            seed: 7,
            flow: FlowConfig {
                target_spacing_fraction: 1.0 / 256.0,
                stop: crate::flow::StopConditions {
                    steady_state_residual: Some(1e-5),
                    max_time: Some(100.0),
                    ..Default::default()
                },
                ..base_flow()
            },
            analyze: false,
            analyze_options: None,
            expected: ExpectedOutcome {
                stop_reason: Some(StopReason::SteadyState),
                ..Default::default()
            },
            output_dir: None,
        },
        ScenarioConfig {
            name: "obtuse-arc".into(),
            generator: GeneratorSpec::Arc {
                alpha: 2.2,
                c: 1.0 / 3.0,
                window: 4.0,
                samples: 4096,
            },
            perturbation: None,
            seed: 0,
            flow: FlowConfig {
                target_spacing_fraction: 1.0 / 2048.0,
                stop: crate::flow::StopConditions {
                    min_radius_threshold: Some(0.02),
                    sup_velocity_threshold: Some(1e4),
                    max_time: Some(10.0),
                    ..Default::default()
                },
                ..base_flow()
            },
            analyze: true,
            analyze_options: None,
            expected: ExpectedOutcome {
                verdict: Some(Verdict::TypeII),
                blowup_model: Some("line_pair".into()),
                ..Default::default()
            },
            output_dir: None,
        },
        ScenarioConfig {
            name: "acute-arc-expander".into(),
            generator: GeneratorSpec::Arc {
                alpha: std::f64::consts::FRAC_PI_4,
                c: 1.0,
                window: 3.0,
                samples: 2048,
            },
            perturbation: None,
            seed: 0,
            flow: FlowConfig {
                gauge: crate::flow::Gauge::ExpanderGauge,
                target_spacing_fraction: 1.0 / 512.0,
                stop: crate::flow::StopConditions {
                    max_time: Some(4.0),
                    ..Default::default()
                },
                ..base_flow()
            },
            analyze: false,
            analyze_options: None,
            expected: ExpectedOutcome {
                stop_reason: Some(StopReason::MaxTime),
                ..Default::default()
            },
            output_dir: None,
        },
        ScenarioConfig {
            name: "star-3".into(),
            generator: GeneratorSpec::Star {
                k: 3,
                eps: 0.25,
                samples: 2048,
            },
            perturbation: None,
            seed: 0,
            flow: FlowConfig {
                target_spacing_fraction: 1.0 / 512.0,
                stop: stop_velocity(1e3),
                ..base_flow()
            },
            analyze: true,
            analyze_options: None,
            expected: ExpectedOutcome::default(),
            output_dir: None,
        },
    ]
}

pub fn find_builtin(name: &str) -> Result<ScenarioConfig> {
    builtin_scenarios()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| ScenarioError::UnknownScenario(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::point_to_polyline;

    #[test]
    fn ellipse_passes_through_vertices() {
        let c = generate(&GeneratorSpec::Ellipse {
            a: 3.0,
            b: 1.0,
            samples: 512,
        })
        .unwrap();
        let near = |target: Vec2| point_to_polyline(target, &c.points, true);
        assert!(near(Vec2::new(3.0, 0.0)) < 1e-3);
        assert!(near(Vec2::new(0.0, 1.0)) < 1e-3);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn arc_at_right_angle_is_lawlor() {
        // arc(π/2, c): cot(π/4) = 1 gives exactly y = √(x² + c)
        let c = generate(&GeneratorSpec::Arc {
            alpha: std::f64::consts::FRAC_PI_2,
            c: 1.0 / 3.0,
            window: 4.0,
            samples: 1024,
        })
        .unwrap();
        for p in &c.points {
            let want = (p.x * p.x + 1.0 / 3.0).sqrt();
            assert!((p.y - want).abs() < 1e-12);
        }
    }

    #[test]
    fn figure_eight_hits_origin_with_transversal_crossing() {
        let c = generate(&GeneratorSpec::FigureEight {
            scale: 3.0,
            samples: 4096,
        })
        .unwrap();
        // passes through the origin
        let dist0 = point_to_polyline(Vec2::ZERO, &c.points, true);
        assert!(dist0 < 1e-6, "distance to origin {}", dist0);
        // crossing tangents at ±45°: near-origin points sit inside the
        // cone |y| ≤ |x|
        for p in c.points.iter().filter(|p| p.norm() < 0.5) {
            assert!(p.y.abs() <= p.x.abs() + 1e-9, "{:?} outside cone", p);
        }
    }

    #[test]
    fn all_generators_validate_across_ranges() {
        let specs = vec![
            GeneratorSpec::Ellipse { a: 3.0, b: 1.0, samples: 256 },
            GeneratorSpec::Ellipse { a: 1.0, b: 1.0, samples: 64 },
            GeneratorSpec::Chekanov { samples: 256 },
            GeneratorSpec::FigureEight { scale: 2.0, samples: 512 },
            GeneratorSpec::Arc { alpha: 2.2, c: 1.0 / 3.0, window: 4.0, samples: 512 },
            GeneratorSpec::Arc { alpha: 0.8, c: 0.5, window: 5.0, samples: 512 },
            GeneratorSpec::Star { k: 3, eps: 0.3, samples: 256 },
            GeneratorSpec::Star { k: 5, eps: -0.2, samples: 256 },
        ];
        for spec in specs {
            let curve = generate(&spec).expect("generator failed");
            curve.validate().expect("generated curve invalid");
        }
    }

    #[test]
    fn parameter_validation_names_field() {
        let err = generate(&GeneratorSpec::Ellipse {
            a: -1.0,
            b: 1.0,
            samples: 64,
        })
        .unwrap_err();
        match err {
            ScenarioError::BadParameter { field, .. } => assert_eq!(field, "a"),
            other => panic!("unexpected {:?}", other),
        }
        let err = generate(&GeneratorSpec::Arc {
            alpha: 3.2,
            c: 0.3,
            window: 4.0,
            samples: 64,
        })
        .unwrap_err();
        match err {
            ScenarioError::BadParameter { field, .. } => assert_eq!(field, "alpha"),
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn perturbed_arc_stays_sandwiched() {
        let alpha = std::f64::consts::FRAC_PI_2;
        let (c, window) = (1.0 / 3.0, 3.0);
        let p = Perturbation {
            amplitude: 0.1,
            modes: 4,
        };
        let curve = generate_perturbed_arc(alpha, c, window, 512, &p, 42).unwrap();
        for q in &curve.points {
            let lo = (q.x * q.x + c * 0.9).sqrt();
            let hi = (q.x * q.x + c * 1.1).sqrt();
            assert!(q.y >= lo - 1e-12 && q.y <= hi + 1e-12, "{:?}", q);
        }
        // deterministic in the seed
        let again = generate_perturbed_arc(alpha, c, window, 512, &p, 42).unwrap();
        assert_eq!(curve.points.len(), again.points.len());
        for (a, b) in curve.points.iter().zip(again.points.iter()) {
            assert_eq!(a.x.to_bits(), b.x.to_bits());
        }
    }

    #[test]
    fn scenario_catalog_generates() {
        for config in builtin_scenarios() {
            let curve = match (&config.generator, &config.perturbation) {
                (GeneratorSpec::Arc { alpha, c, window, samples }, Some(p)) => {
                    generate_perturbed_arc(*alpha, *c, *window, *samples, p, config.seed).unwrap()
                }
                (g, _) => generate(g).unwrap(),
            };
            curve.validate().expect(&config.name);
        }
    }

    #[test]
    fn run_scenario_writes_outputs_and_manifest() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = find_builtin("clifford").unwrap();
        // shrink the run so the test stays fast
        config.generator = GeneratorSpec::Ellipse {
            a: 1.0,
            b: 1.0,
            samples: 512,
        };
        config.flow.target_spacing_fraction = 1.0 / 128.0;
        // coarse spacing: loosen the timing expectation accordingly
        config.expected.singular_time = Some((0.25, 0.02));
        let outcome = run_scenario(&config, dir.path()).unwrap();
        assert!(outcome.out_dir.join("trajectory.jsonl").exists());
        assert!(outcome.out_dir.join("report.json").exists());
        assert!(outcome.out_dir.join("manifest.json").exists());
        assert!(outcome.out_dir.join("montage.svg").exists());
        assert!(outcome.manifest.output_digests.len() >= 3);
        assert!(outcome.manifest.outcome_ok, "{:?}", outcome.manifest.outcome_notes);
        // exit status reproducible from saved outputs
        let (ok, _) = check_expectations(
            &config,
            &outcome.trajectory,
            outcome.report.as_ref(),
        );
        assert_eq!(ok, outcome.manifest.outcome_ok);
    }
}
