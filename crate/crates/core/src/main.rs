//! Command-line front end: run scenarios, emit soliton profiles, analyze
//! saved trajectories.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use equiflow::flow::{StopReason, TerminationRecord};
use equiflow::io;
use equiflow::scenarios::{self, ScenarioConfig};
use equiflow::singularity::{self, AnalyzeOptions};
use equiflow::solitons;

/// Output root: `--out`, else the EQUIFLOW_OUT environment variable,
/// else ./runs.
fn output_root(cli_out: Option<PathBuf>) -> PathBuf {
    cli_out
        .or_else(|| std::env::var_os("EQUIFLOW_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("runs"))
}

#[derive(Parser)]
#[command(
    name = "equiflow",
    about = "Equivariant Lagrangian mean curvature flow: profile-curve simulator and singularity analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario from a JSON config file or the built-in catalog.
    Run {
        /// Path to a ScenarioConfig JSON file, or a built-in scenario name.
        config: String,
        /// Output root directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a soliton profile as curve-snapshot JSON plus residual report.
    Soliton {
        /// minimal | shrinker | expander | translator
        kind: String,
        /// Self-similarity constant for circle shrinkers.
        #[arg(long, default_value_t = -0.5)]
        lambda: f64,
        /// Asymptotic opening angle for expanders (radians).
        #[arg(long)]
        alpha: Option<f64>,
        /// Hyperbola constant for minimal profiles.
        #[arg(long, default_value_t = 1.0 / 3.0)]
        c: f64,
        /// Truncation half-window for minimal profiles.
        #[arg(long, default_value_t = 4.0)]
        window: f64,
        /// Sample count for translators.
        #[arg(long, default_value_t = 4097)]
        samples: usize,
        /// Distance from ±π/2 at which translators are truncated.
        #[arg(long, default_value_t = 0.01)]
        y_margin: f64,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// CSV table of (alpha, vertex_distance, residual) over an alpha
        /// sweep (expanders only).
        #[arg(long)]
        table: bool,
    },
    /// Analyze a saved trajectory: singularity report and plots.
    Analyze {
        /// trajectory.jsonl file.
        trajectory: PathBuf,
        /// Sidecar manifest (defaults to manifest.json beside the input).
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Report output path (defaults beside the input).
        #[arg(long)]
        report: Option<PathBuf>,
        /// Directory for SVG plots.
        #[arg(long)]
        plots: Option<PathBuf>,
    },
    /// Scenario catalog operations.
    Scenario {
        #[command(subcommand)]
        action: ScenarioAction,
    },
}

#[derive(Subcommand)]
enum ScenarioAction {
    /// List the built-in scenarios.
    List,
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { config, out } => run_command(&config, out),
        Command::Soliton {
            kind,
            lambda,
            alpha,
            c,
            window,
            samples,
            y_margin,
            out,
            table,
        } => soliton_command(&kind, lambda, alpha, c, window, samples, y_margin, out, table),
        Command::Analyze {
            trajectory,
            manifest,
            report,
            plots,
        } => analyze_command(trajectory, manifest, report, plots),
        Command::Scenario { action } => match action {
            ScenarioAction::List => {
                for s in scenarios::builtin_scenarios() {
                    println!("{}", s.name);
                }
                Ok(())
            }
        },
    }
}

fn run_command(config_arg: &str, out: Option<PathBuf>) -> Result<()> {
    let config: ScenarioConfig = if std::path::Path::new(config_arg).exists() {
        io::read_json(std::path::Path::new(config_arg))
            .with_context(|| format!("reading scenario config {config_arg}"))?
    } else {
        scenarios::find_builtin(config_arg)?
    };
    let root = output_root(out);
    let outcome = scenarios::run_scenario(&config, &root)?;
    println!(
        "{}: stopped by {:?} at t = {:.6} ({} steps), outputs in {}",
        config.name,
        outcome.manifest.termination.reason,
        outcome.manifest.termination.time,
        outcome.manifest.termination.steps,
        outcome.out_dir.display()
    );
    if let Some(report) = &outcome.report {
        println!("  verdict: {:?}", report.verdict);
        if let Some(m) = &report.blowup_match {
            println!(
                "  blow-up model: {} (distance {:.4})",
                m.model.id(),
                m.distance
            );
        }
        if let Some(m) = &report.type2_match {
            println!(
                "  type II model: {} (distance {:.4})",
                m.model.id(),
                m.distance
            );
        }
    }
    for note in &outcome.manifest.outcome_notes {
        eprintln!("  expectation failed: {note}");
    }
    if outcome.manifest.outcome_ok {
        Ok(())
    } else {
        bail!(
            "scenario {} did not meet its declared expectations",
            config.name
        )
    }
}

#[allow(clippy::too_many_arguments)]
fn soliton_command(
    kind: &str,
    lambda: f64,
    alpha: Option<f64>,
    c: f64,
    window: f64,
    samples: usize,
    y_margin: f64,
    out: Option<PathBuf>,
    table: bool,
) -> Result<()> {
    if table {
        if kind != "expander" {
            bail!("--table sweeps expander angles; use kind `expander`");
        }
        println!("alpha,vertex_distance,residual");
        let alphas = [0.3, 0.5, std::f64::consts::FRAC_PI_4, 1.0, 1.3];
        for &a in &alphas {
            let shot = solitons::expander_for_angle_detailed(a)?;
            println!("{a},{},{}", shot.profile.spec.scale, shot.profile.residual);
        }
        return Ok(());
    }

    let profile = match kind {
        "shrinker" => solitons::circle_shrinker(lambda)?,
        "translator" => solitons::grim_reaper(samples, y_margin)?,
        "minimal" => solitons::lawlor_profile(c, window)?,
        "expander" => {
            let a = alpha.context("expander profiles need --alpha")?;
            solitons::expander_for_angle(a)?
        }
        other => bail!(
            "unknown soliton kind `{other}`; use minimal | shrinker | expander | translator"
        ),
    };

    #[derive(serde::Serialize)]
    struct SolitonOutput {
        spec: equiflow::solitons::SolitonSpec,
        residual: f64,
        curve: io::CurveSnapshot,
    }
    let output = SolitonOutput {
        curve: io::CurveSnapshot::from_curve(&profile.curve, None),
        spec: profile.spec,
        residual: profile.residual,
    };
    match out {
        Some(path) => {
            io::write_json(&path, &output)?;
            println!(
                "{kind} profile: {} samples, residual {:.3e} → {}",
                output.curve.points.len(),
                output.residual,
                path.display()
            );
        }
        None => println!("{}", serde_json::to_string(&output)?),
    }
    Ok(())
}

fn analyze_command(
    trajectory: PathBuf,
    manifest: Option<PathBuf>,
    report_path: Option<PathBuf>,
    plots_dir: Option<PathBuf>,
) -> Result<()> {
    let termination = load_termination(&trajectory, manifest)?;
    let traj = io::read_trajectory_jsonl(&trajectory, termination)?;
    let report = singularity::analyze(&traj, &AnalyzeOptions::default());

    let report_path = report_path.unwrap_or_else(|| {
        trajectory
            .parent()
            .unwrap_or(std::path::Path::new("."))
            .join("report.json")
    });
    io::write_json(&report_path, &report)?;
    println!(
        "verdict {:?}; T = {:?}; report → {}",
        report.verdict,
        report.t_hat,
        report_path.display()
    );

    if let Some(dir) = plots_dir {
        std::fs::create_dir_all(&dir)?;
        scenarios::plots::montage(&traj, &dir.join("montage.svg"))?;
        if !report.type1_monitor.is_empty() {
            scenarios::plots::monitor_plot(&report, &dir.join("monitor.svg"))?;
        }
        println!("plots → {}", dir.display());
    }
    Ok(())
}

/// Termination record from the sidecar manifest; when absent, infer a
/// plausible record from the stored diagnostics so re-analysis of bare
/// trajectory files still works.
fn load_termination(
    trajectory: &std::path::Path,
    manifest: Option<PathBuf>,
) -> Result<TerminationRecord> {
    let manifest_path = manifest.unwrap_or_else(|| {
        trajectory
            .parent()
            .unwrap_or(std::path::Path::new("."))
            .join("manifest.json")
    });
    if manifest_path.exists() {
        let manifest: scenarios::RunManifest = io::read_json(&manifest_path)?;
        return Ok(manifest.termination);
    }
    let traj = io::read_trajectory_jsonl(
        trajectory,
        TerminationRecord {
            reason: StopReason::MaxTime,
            time: 0.0,
            steps: 0,
            final_sup_velocity: 0.0,
        },
    )?;
    let first_v = traj.first().diagnostics.sup_velocity.max(1e-12);
    let last = traj.last();
    let reason = if last.diagnostics.sup_velocity > 100.0 * first_v {
        StopReason::SupVelocityThreshold
    } else {
        StopReason::MaxTime
    };
    eprintln!(
        "no manifest found at {}; inferring stop reason {:?} from diagnostics",
        manifest_path.display(),
        reason
    );
    Ok(TerminationRecord {
        reason,
        time: last.time,
        steps: 0,
        final_sup_velocity: last.diagnostics.sup_velocity,
    })
}
