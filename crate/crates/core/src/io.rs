//! Persistence: curve snapshot JSON, trajectory JSON-lines, run manifests.
//!
//! One snapshot object per JSONL line; the termination record and config
//! echo live in a sidecar manifest. serde_json emits shortest-round-trip
//! decimals, so floats survive a write/read cycle exactly.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::flow::{Snapshot, TerminationRecord, Trajectory};
use crate::geometry::{AsymptoticData, CurveDiagnostics, ProfileCurve, Topology};
use crate::vec2::Vec2;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("trajectory file {0} holds no snapshots")]
    EmptyTrajectory(String),
}

pub type Result<T> = std::result::Result<T, IoError>;

/// Wire format of one curve snapshot.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveSnapshot {
    pub points: Vec<Vec2>,
    pub topology: Topology,
    pub asymptotics: Option<AsymptoticsField>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<CurveDiagnostics>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AsymptoticsField {
    pub alpha: f64,
    pub bisector: f64,
}

impl CurveSnapshot {
    pub fn from_curve(curve: &ProfileCurve, time: Option<f64>) -> Self {
        CurveSnapshot {
            points: curve.points.clone(),
            topology: curve.topology,
            asymptotics: curve.asymptotics.map(|a| AsymptoticsField {
                alpha: a.angle_alpha,
                bisector: a.ray_bisector,
            }),
            time,
            diagnostics: None,
        }
    }

    pub fn into_curve(self) -> ProfileCurve {
        ProfileCurve {
            points: self.points,
            topology: self.topology,
            asymptotics: self.asymptotics.map(|a| AsymptoticData {
                angle_alpha: a.alpha,
                ray_bisector: a.bisector,
            }),
            forward: true,
        }
    }
}

/// Write one snapshot per line.
pub fn write_trajectory_jsonl(path: &Path, traj: &Trajectory) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    for snap in &traj.snapshots {
        let mut record = CurveSnapshot::from_curve(&snap.curve, Some(snap.time));
        record.diagnostics = Some(snap.diagnostics.clone());
        serde_json::to_writer(&mut out, &record)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Read a trajectory back; the termination record comes from the caller
/// (normally the sidecar manifest).
pub fn read_trajectory_jsonl(path: &Path, termination: TerminationRecord) -> Result<Trajectory> {
    let reader = BufReader::new(File::open(path)?);
    let mut snapshots = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: CurveSnapshot =
            serde_json::from_str(&line).map_err(|source| IoError::Parse { line: i + 1, source })?;
        let time = record.time.unwrap_or(0.0);
        let diagnostics = record.diagnostics.clone();
        let curve = record.into_curve();
        let diagnostics = diagnostics
            .unwrap_or_else(|| crate::geometry::diagnostics(&curve, 1e-4 * curve.diameter()));
        snapshots.push(Snapshot {
            time,
            curve,
            diagnostics,
        });
    }
    if snapshots.is_empty() {
        return Err(IoError::EmptyTrajectory(path.display().to_string()));
    }
    Ok(Trajectory {
        snapshots,
        termination,
    })
}

/// SHA-256 digest of a file, hex encoded.
pub fn file_digest(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path)?;
    let mut hasher = Sha256::new();
    hasher.update(&bytes);
    Ok(format!("{:x}", hasher.finalize()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let reader = BufReader::new(File::open(path)?);
    Ok(serde_json::from_reader(reader)?)
}
