use std::f64::consts::TAU;

use super::*;
use crate::geometry::AsymptoticData;

fn circle(r: f64, n: usize) -> ProfileCurve {
    let pts = (0..n)
        .map(|i| {
            let t = TAU * i as f64 / n as f64;
            Vec2::new(r * t.cos(), r * t.sin())
        })
        .collect();
    ProfileCurve::closed(pts).unwrap()
}

fn mean_radius(c: &ProfileCurve) -> f64 {
    c.points.iter().map(|p| p.norm()).sum::<f64>() / c.points.len() as f64
}

#[test]
fn single_step_circle_shrinks_at_rate() {
    // dr/dt = −2/r: one step of size dt moves the radius by ≈ 2·dt
    let config = FlowConfig {
        stop: StopConditions {
            max_time: Some(1.0),
            ..Default::default()
        },
        ..Default::default()
    };
    let mut state = FlowState::new(circle(1.0, 256), &config).unwrap();
    let r0 = mean_radius(&state.curve);
    let info = state.step(&config, None).unwrap();
    let r1 = mean_radius(&state.curve);
    let shrink = r0 - r1;
    let expect = 2.0 * info.dt;
    assert!(
        (shrink - expect).abs() < 0.05 * expect,
        "shrink {} vs {}",
        shrink,
        expect
    );
}

#[test]
fn line_through_origin_is_stationary() {
    // a straight line through the origin is the degenerate α → π case:
    // its two halves leave along opposite rays
    let pts: Vec<Vec2> = (0..=64)
        .map(|i| {
            let t = -2.0 + 4.0 * i as f64 / 64.0;
            Vec2::new(t, t)
        })
        .collect();
    let curve = ProfileCurve {
        points: pts,
        topology: crate::geometry::Topology::Open,
        asymptotics: Some(AsymptoticData {
            angle_alpha: std::f64::consts::PI - 1e-3,
            ray_bisector: 3.0 * std::f64::consts::FRAC_PI_4,
        }),
        forward: true,
    };
    let config = FlowConfig {
        stop: StopConditions {
            max_time: Some(0.01),
            ..Default::default()
        },
        target_spacing_fraction: 1.0 / 64.0,
        ..Default::default()
    };
    let before = crate::geometry::resample(&curve, curve.length() / 64.0).unwrap();
    let traj = run(&curve, &config).unwrap();
    let after = traj.last();
    for (a, b) in before.points.iter().zip(after.curve.points.iter()) {
        assert!(a.dist(*b) < 1e-12, "moved by {}", a.dist(*b));
    }
}

#[test]
fn shrinker_gauge_radius_two_is_stationary() {
    let config = FlowConfig {
        gauge: Gauge::ShrinkerGauge,
        stop: StopConditions {
            max_time: Some(1.0),
            ..Default::default()
        },
        target_spacing_fraction: 1.0 / 512.0,
        ..Default::default()
    };
    let traj = run(&circle(2.0, 512), &config).unwrap();
    let last = traj.last();
    for p in &last.curve.points {
        assert!(
            (p.norm() - 2.0).abs() < 1e-6,
            "radius drifted to {}",
            p.norm()
        );
    }
}

#[test]
fn circle_extinction_time() {
    // dr/dt = −2/r ⇒ r(t) = √(1 − 4t), extinction at t = 0.25
    let config = FlowConfig {
        stop: StopConditions {
            sup_velocity_threshold: Some(1e3),
            ..Default::default()
        },
        target_spacing_fraction: 1.0 / 512.0,
        ..Default::default()
    };
    let traj = run(&circle(1.0, 1024), &config).unwrap();
    assert_eq!(traj.termination.reason, StopReason::SupVelocityThreshold);
    let t_end = traj.termination.time;
    assert!(
        (t_end - 0.25).abs() < 0.005,
        "terminated at {} (expected near 0.25)",
        t_end
    );
    // pointwise law along the way
    for snap in traj.snapshots.iter().filter(|s| s.time <= 0.24) {
        let r_exact = (1.0 - 4.0 * snap.time).sqrt();
        for p in &snap.curve.points {
            assert!(
                (p.norm() - r_exact).abs() < 1e-3,
                "at t = {}: radius {} vs {}",
                snap.time,
                p.norm(),
                r_exact
            );
        }
    }
}

#[test]
fn csf_length_strictly_decreases() {
    let n = 256;
    let pts: Vec<Vec2> = (0..n)
        .map(|i| {
            let t = TAU * i as f64 / n as f64;
            Vec2::new(2.0 * t.cos(), t.sin() + 0.3 * (3.0 * t).sin())
        })
        .collect();
    let curve = ProfileCurve::closed(pts).unwrap();
    let config = FlowConfig {
        gauge: Gauge::CsfOnly,
        stop: StopConditions {
            max_time: Some(0.05),
            ..Default::default()
        },
        snapshot_cadence: 0.002,
        ..Default::default()
    };
    let traj = run(&curve, &config).unwrap();
    let lengths: Vec<f64> = traj.snapshots.iter().map(|s| s.diagnostics.length).collect();
    for w in lengths.windows(2) {
        assert!(w[1] < w[0], "length increased: {:?}", w);
    }
}

#[test]
fn ensemble_is_deterministic_and_ordered() {
    let config = FlowConfig {
        stop: StopConditions {
            max_time: Some(0.05),
            ..Default::default()
        },
        ..Default::default()
    };
    let jobs = vec![
        (circle(1.0, 128), config.clone()),
        (circle(1.0, 128), config.clone()),
    ];
    let out = run_ensemble(&jobs);
    assert_eq!(out.len(), 2);
    let a = out[0].as_ref().unwrap();
    let b = out[1].as_ref().unwrap();
    assert_eq!(a.snapshots.len(), b.snapshots.len());
    for (sa, sb) in a.snapshots.iter().zip(b.snapshots.iter()) {
        assert_eq!(sa.time.to_bits(), sb.time.to_bits());
        for (pa, pb) in sa.curve.points.iter().zip(sb.curve.points.iter()) {
            assert_eq!(pa.x.to_bits(), pb.x.to_bits());
            assert_eq!(pa.y.to_bits(), pb.y.to_bits());
        }
    }
}

#[test]
fn ensemble_empty() {
    assert!(run_ensemble(&[]).is_empty());
}

#[test]
fn ensemble_rotation_equivariance() {
    // ellipse (3,1) vs (1,3): trajectories related by 90° rotation
    let n = 256;
    let make = |a: f64, b: f64| {
        let pts: Vec<Vec2> = (0..n)
            .map(|i| {
                let t = TAU * i as f64 / n as f64;
                Vec2::new(a * t.cos(), b * t.sin())
            })
            .collect();
        ProfileCurve::closed(pts).unwrap()
    };
    let config = FlowConfig {
        stop: StopConditions {
            max_time: Some(0.02),
            ..Default::default()
        },
        ..Default::default()
    };
    let jobs = vec![(make(3.0, 1.0), config.clone()), (make(1.0, 3.0), config)];
    let out = run_ensemble(&jobs);
    let a = out[0].as_ref().unwrap().last();
    let b = out[1].as_ref().unwrap().last();
    // rotating (x, y) → (−y, x) maps ellipse (3,1) data onto (1,3) data;
    // compare as sets
    let rotated: Vec<Vec2> = a.curve.points.iter().map(|p| p.perp()).collect();
    let d = crate::geometry::hausdorff_distance(&rotated, &b.curve.points).unwrap();
    assert!(d < 1e-10, "rotation equivariance violated: {}", d);
}

#[test]
fn no_stop_condition_rejected() {
    let config = FlowConfig::default();
    assert!(matches!(
        run(&circle(1.0, 64), &config),
        Err(FlowError::NoStopCondition)
    ));
}

#[test]
fn extinction_time_converges_under_refinement() {
    // error in the circle extinction time should drop ≥ 3× per spacing halving
    let run_at = |frac: f64| {
        let config = FlowConfig {
            stop: StopConditions {
                sup_velocity_threshold: Some(2e3),
                ..Default::default()
            },
            target_spacing_fraction: frac,
            ..Default::default()
        };
        run(&circle(1.0, 2048), &config).unwrap().termination.time
    };
    let coarse = (run_at(1.0 / 128.0) - 0.25).abs();
    let fine = (run_at(1.0 / 256.0) - 0.25).abs();
    assert!(
        coarse / fine >= 3.0,
        "refinement gain {} (coarse {}, fine {})",
        coarse / fine,
        coarse,
        fine
    );
}
