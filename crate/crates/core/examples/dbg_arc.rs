use equiflow::flow::{StopReason, TerminationRecord};
use equiflow::io;
use equiflow::singularity::*;

fn main() {
    let manifest: equiflow::scenarios::RunManifest =
        io::read_json(std::path::Path::new("/tmp/runs/ellipse-3-1/manifest.json")).unwrap();
    let traj = io::read_trajectory_jsonl(
        std::path::Path::new("/tmp/runs/ellipse-3-1/trajectory.jsonl"),
        manifest.termination,
    )
    .unwrap();
    println!("snapshots: {}", traj.snapshots.len());
    let proxy = CurvatureProxy::from_trajectory(&traj);
    for s in proxy.history.iter().rev().take(14).collect::<Vec<_>>().iter().rev() {
        println!("t={:.6} K={:9.3} argmax=({:+.4},{:+.4}) min_r={:.5}", s.time, s.k, s.argmax.x, s.argmax.y, s.min_radius);
    }
    match estimate_from_proxy(&proxy) {
        Ok(est) => {
            println!("T̂={:.6} pl={:?} disagree={} ŵ=({:.4},{:.4})", est.t_hat, est.t_hat_power_law, est.estimator_disagreement, est.w_hat.x, est.w_hat.y);
            let cls = classify_from_proxy(&proxy, est.t_hat);
            println!("verdict {:?} growth {:?} bounded {:?} median {:?}", cls.verdict, cls.growth_factor, cls.bounded_ratio, cls.monitor_median);
        }
        Err(e) => println!("estimate error: {e}"),
    }
}
