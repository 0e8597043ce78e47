use super::{GeometryError, Result};
use crate::vec2::Vec2;

/// Symmetric Hausdorff distance between two point sets.
pub fn hausdorff_distance(a: &[Vec2], b: &[Vec2]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(GeometryError::EmptyPointSet);
    }
    Ok(directed(a, b).max(directed(b, a)))
}

/// Symmetric Hausdorff distance restricted to the closed ball of radius
/// `radius` about `center`: only points inside the window participate on
/// either side. Errors if either set misses the window entirely.
pub fn hausdorff_distance_windowed(
    a: &[Vec2],
    b: &[Vec2],
    center: Vec2,
    radius: f64,
) -> Result<f64> {
    let am: Vec<Vec2> = a.iter().copied().filter(|p| p.dist(center) <= radius).collect();
    let bm: Vec<Vec2> = b.iter().copied().filter(|p| p.dist(center) <= radius).collect();
    if am.is_empty() || bm.is_empty() {
        return Err(GeometryError::EmptyWindow);
    }
    Ok(directed(&am, &bm).max(directed(&bm, &am)))
}

fn directed(a: &[Vec2], b: &[Vec2]) -> f64 {
    a.iter()
        .map(|p| {
            b.iter()
                .map(|q| p.dist(*q))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Distance from a point to a polyline, measured to segments rather than
/// vertices, so sparsely sampled but geometrically accurate curves are not
/// penalized by their sampling density.
pub fn point_to_polyline(p: Vec2, poly: &[Vec2], closed: bool) -> f64 {
    let n = poly.len();
    if n == 1 {
        return p.dist(poly[0]);
    }
    let segs = if closed { n } else { n - 1 };
    let mut best = f64::INFINITY;
    for i in 0..segs {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let ab = b - a;
        let t = ((p - a).dot(ab) / ab.norm_sq().max(1e-300)).clamp(0.0, 1.0);
        best = best.min(p.dist(a + ab * t));
    }
    best
}

/// A polyline with its topology, for segment-based distance comparisons.
#[derive(Debug, Clone, Copy)]
pub struct PolylineDist<'a> {
    pub points: &'a [Vec2],
    pub closed: bool,
}

/// Symmetric polyline Hausdorff distance, optionally windowed: the sample
/// points of each side inside the window are measured against the whole
/// other polyline (segments included).
pub fn polyline_hausdorff(
    a: PolylineDist,
    b: PolylineDist,
    window: Option<(Vec2, f64)>,
) -> Result<f64> {
    let in_window = |p: &Vec2| match window {
        Some((c, r)) => p.dist(c) <= r,
        None => true,
    };
    let dir = |from: PolylineDist, to: PolylineDist| -> Option<f64> {
        let mut worst: Option<f64> = None;
        for p in from.points.iter().filter(|p| in_window(p)) {
            let d = point_to_polyline(*p, to.points, to.closed);
            worst = Some(worst.map_or(d, |w: f64| w.max(d)));
        }
        worst
    };
    match (dir(a, b), dir(b, a)) {
        (Some(x), Some(y)) => Ok(x.max(y)),
        _ => Err(GeometryError::EmptyWindow),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle_pts(r: f64, n: usize) -> Vec<Vec2> {
        (0..n)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
                Vec2::new(r * t.cos(), r * t.sin())
            })
            .collect()
    }

    #[test]
    fn identical_sets_zero() {
        let a = circle_pts(1.0, 32);
        assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn concentric_circles() {
        let a = circle_pts(1.0, 512);
        let b = circle_pts(2.0, 512);
        let d = hausdorff_distance(&a, &b).unwrap();
        assert!((d - 1.0).abs() < 1e-3, "distance {}", d);
    }

    #[test]
    fn offset_segments() {
        // brute force oracle: every point of one segment is 0.3 from the other
        let a: Vec<Vec2> = (0..=100).map(|i| Vec2::new(i as f64 / 100.0, 0.0)).collect();
        let b: Vec<Vec2> = (0..=100).map(|i| Vec2::new(i as f64 / 100.0, 0.3)).collect();
        let d = hausdorff_distance(&a, &b).unwrap();
        assert!((d - 0.3).abs() < 1e-12, "distance {}", d);
    }

    #[test]
    fn empty_set_rejected() {
        let a = circle_pts(1.0, 8);
        assert!(matches!(
            hausdorff_distance(&a, &[]),
            Err(GeometryError::EmptyPointSet)
        ));
    }

    #[test]
    fn window_restricts_comparison() {
        let a = circle_pts(1.0, 256);
        let mut b = circle_pts(1.0, 256);
        // corrupt b far from the window
        b[0] = Vec2::new(50.0, 0.0);
        let d =
            hausdorff_distance_windowed(&a, &b, Vec2::new(-1.0, 0.0), 0.5).unwrap();
        assert!(d < 1e-6, "windowed distance {}", d);
    }

    #[test]
    fn empty_window_rejected() {
        let a = circle_pts(1.0, 8);
        let b = circle_pts(1.0, 8);
        assert!(matches!(
            hausdorff_distance_windowed(&a, &b, Vec2::new(100.0, 0.0), 0.1),
            Err(GeometryError::EmptyWindow)
        ));
    }

    #[test]
    fn polyline_distance_ignores_sampling_density() {
        // same unit circle, one sampled 16×, one 256×: segment-based
        // distance stays at the sagitta level, not half the spacing
        let a = circle_pts(1.0, 16);
        let b = circle_pts(1.0, 256);
        let d = polyline_hausdorff(
            PolylineDist { points: &a, closed: true },
            PolylineDist { points: &b, closed: true },
            None,
        )
        .unwrap();
        assert!(d < 0.02, "polyline distance {}", d);
    }
}
