//! Static SVG emission: trajectory montages, monitor plots, and
//! rescaled-curve-versus-model overlays. Hand-rolled SVG keeps the output
//! dependency-free and byte-stable for manifest digests.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use crate::flow::Trajectory;
use crate::singularity::{FrameCurve, MonitorPoint, SingularityReport};
use crate::vec2::Vec2;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 640.0;
const PALETTE: [&str; 6] = [
    "#30426a", "#3f6aa0", "#4f93c4", "#6dbcd6", "#96d8d8", "#c7ecd9",
];

struct SvgCanvas {
    body: String,
    min: Vec2,
    max: Vec2,
}

impl SvgCanvas {
    fn new(min: Vec2, max: Vec2) -> Self {
        SvgCanvas {
            body: String::new(),
            min,
            max,
        }
    }

    fn map(&self, p: Vec2) -> (f64, f64) {
        let span = (self.max - self.min).x.max((self.max - self.min).y).max(1e-12);
        let cx = 0.5 * (self.min.x + self.max.x);
        let cy = 0.5 * (self.min.y + self.max.y);
        let s = 0.9 * WIDTH / span;
        (
            WIDTH / 2.0 + (p.x - cx) * s,
            HEIGHT / 2.0 - (p.y - cy) * s,
        )
    }

    fn polyline(&mut self, pts: &[Vec2], closed: bool, color: &str, width: f64) {
        if pts.len() < 2 {
            return;
        }
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = self.map(*p);
            let _ = write!(d, "{}{:.2},{:.2} ", if i == 0 { "M" } else { "L" }, x, y);
        }
        if closed {
            d.push('Z');
        }
        let _ = write!(
            self.body,
            r#"<path d="{}" fill="none" stroke="{}" stroke-width="{}"/>"#,
            d.trim(),
            color,
            width
        );
        self.body.push('\n');
    }

    fn text(&mut self, x: f64, y: f64, size: f64, color: &str, content: &str) {
        let _ = write!(
            self.body,
            r#"<text x="{:.1}" y="{:.1}" font-size="{}" font-family="monospace" fill="{}">{}</text>"#,
            x, y, size, color, content
        );
        self.body.push('\n');
    }

    fn axes(&mut self) {
        let (x0, y0) = self.map(Vec2::ZERO);
        let _ = write!(
            self.body,
            r##"<line x1="0" y1="{y0:.1}" x2="{WIDTH}" y2="{y0:.1}" stroke="#ccc" stroke-width="0.5"/><line x1="{x0:.1}" y1="0" x2="{x0:.1}" y2="{HEIGHT}" stroke="#ccc" stroke-width="0.5"/>"##
        );
        self.body.push('\n');
    }

    fn save(self, path: &Path) -> io::Result<()> {
        let doc = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        );
        std::fs::write(path, doc)
    }
}

fn bounds(points: impl Iterator<Item = Vec2>) -> (Vec2, Vec2) {
    let mut min = Vec2::new(f64::INFINITY, f64::INFINITY);
    let mut max = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        min.x = min.x.min(p.x);
        min.y = min.y.min(p.y);
        max.x = max.x.max(p.x);
        max.y = max.y.max(p.y);
    }
    (min, max)
}

/// Time-series montage of curves, annotated with the aspect ratio
/// (height/width) of each drawn frame.
pub fn montage(traj: &Trajectory, path: &Path) -> io::Result<()> {
    let total = traj.snapshots.len();
    let picks: Vec<usize> = if total <= 8 {
        (0..total).collect()
    } else {
        (0..8).map(|i| i * (total - 1) / 7).collect()
    };
    let (min, max) = bounds(traj.snapshots[0].curve.points.iter().copied());
    let mut svg = SvgCanvas::new(min, max);
    svg.axes();
    for (k, &i) in picks.iter().enumerate() {
        let snap = &traj.snapshots[i];
        let color = PALETTE[k % PALETTE.len()];
        svg.polyline(
            &snap.curve.points,
            snap.curve.is_closed(),
            color,
            1.2,
        );
        let (bmin, bmax) = bounds(snap.curve.points.iter().copied());
        let aspect = (bmax.y - bmin.y) / (bmax.x - bmin.x).max(1e-12);
        svg.text(
            8.0,
            16.0 + 14.0 * k as f64,
            11.0,
            color,
            &format!("t={:.4}  aspect={:.3}", snap.time, aspect),
        );
    }
    svg.save(path)
}

/// Monitor history (2K)²(T̂−t) against time, log-scaled in value.
pub fn monitor_plot(report: &SingularityReport, path: &Path) -> io::Result<()> {
    let monitor: &[MonitorPoint] = &report.type1_monitor;
    if monitor.is_empty() {
        return Ok(());
    }
    let pts: Vec<Vec2> = monitor
        .iter()
        .map(|m| Vec2::new(m.time, m.value.max(1e-12).log10()))
        .collect();
    let (min, max) = bounds(pts.iter().copied());
    let pad = Vec2::new(
        0.05 * (max.x - min.x).max(1e-9),
        0.05 * (max.y - min.y).max(0.2),
    );
    let mut svg = SvgCanvas::new(min - pad, max + pad);
    // reference levels: the circle collapse (1) and the Type II magnitude
    for (level, label) in [(1.0f64, "circle"), (8.0, "type II threshold")] {
        let y = level.log10();
        svg.polyline(
            &[Vec2::new(min.x, y), Vec2::new(max.x, y)],
            false,
            "#d88",
            0.6,
        );
        let (_, sy) = svg.map(Vec2::new(min.x, y));
        svg.text(8.0, sy - 3.0, 10.0, "#d88", label);
    }
    svg.polyline(&pts, false, "#30426a", 1.4);
    svg.text(
        8.0,
        14.0,
        11.0,
        "#333",
        &format!(
            "log10 monitor vs t; verdict {:?}",
            report.verdict
        ),
    );
    svg.save(path)
}

/// Rescaled curve against a fitted model geometry.
pub fn overlay_plot(
    frame: &FrameCurve,
    model_parts: &[Vec<Vec2>],
    window: f64,
    label: &str,
    path: &Path,
) -> io::Result<()> {
    let lim = Vec2::new(window, window);
    let mut svg = SvgCanvas::new(-lim, lim);
    svg.axes();
    svg.polyline(&frame.points, frame.closed, "#30426a", 1.4);
    let mirror = frame.mirrored_points();
    svg.polyline(&mirror, frame.closed, "#96a8c8", 0.8);
    for part in model_parts {
        svg.polyline(part, false, "#c0392b", 1.0);
    }
    svg.text(8.0, 14.0, 11.0, "#333", label);
    svg.save(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{Snapshot, StopReason, TerminationRecord};
    use crate::geometry::ProfileCurve;

    #[test]
    fn montage_writes_svg() {
        let n = 64;
        let circle = |r: f64| {
            let pts: Vec<Vec2> = (0..n)
                .map(|i| {
                    let a = std::f64::consts::TAU * i as f64 / n as f64;
                    Vec2::new(r * a.cos(), r * a.sin())
                })
                .collect();
            ProfileCurve::closed(pts).unwrap()
        };
        let snapshots: Vec<Snapshot> = [1.0, 0.8, 0.6]
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let curve = circle(r);
                let diagnostics = crate::geometry::diagnostics(&curve, 1e-6);
                Snapshot {
                    time: i as f64 * 0.05,
                    curve,
                    diagnostics,
                }
            })
            .collect();
        let traj = Trajectory {
            snapshots,
            termination: TerminationRecord {
                reason: StopReason::MaxTime,
                time: 0.1,
                steps: 10,
                final_sup_velocity: 2.0,
            },
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("montage.svg");
        montage(&traj, &path).unwrap();
        let body = std::fs::read_to_string(&path).unwrap();
        assert!(body.starts_with("<svg"));
        assert!(body.contains("aspect="));
    }
}
