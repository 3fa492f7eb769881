//! Membership machinery for the thickened sets `K_h` and the pseudo-distance.
//!
//! `K_h` is the union of, per boundary edge, the rectangle of normal offsets
//! `t ∈ [−h, h]`; per screen endpoint, the tangential end-cap
//! `s ∈ [0, h], t ∈ [−h, h]`; and per corner (obstacle vertices and interior
//! screen vertices), the disk of radius `h` realizing the circular-arc join.
//! Obstacle material itself is always contained in `K_h`.
//!
//! Every such primitive enters the union at a well-defined level: the edge
//! band at `|t|`, the corner disk at `|x − v|`, the end-cap at `max(s, |t|)`.
//! The minimum of these entry levels over all primitives is the exact
//! membership gauge: `x ∈ K_h ⟺ gauge(x) ≤ h`, which makes the family
//! monotone in `h` by construction.

use super::{GeometryError, Point2, Scatterer, Segment};

/// Tangential end-cap at a screen endpoint.
#[derive(Debug, Clone, Copy)]
struct Cap {
    vertex: Point2,
    /// Unit direction pointing away from the screen.
    outward: Point2,
}

/// Preprocessed membership primitives for one scatterer.
#[derive(Debug, Clone)]
pub(crate) struct GaugeSet {
    loop_segments: Vec<Segment>,
    screen_segments: Vec<Segment>,
    /// Corner-join disks: obstacle vertices and interior screen vertices.
    disks: Vec<Point2>,
    caps: Vec<Cap>,
    scatterer: Scatterer,
}

impl GaugeSet {
    pub fn new(k: &Scatterer) -> Self {
        let mut loop_segments = Vec::new();
        let mut disks = Vec::new();
        for l in k.loops() {
            loop_segments.extend(l.segments());
            disks.extend_from_slice(l.vertices());
        }
        let mut screen_segments = Vec::new();
        let mut caps = Vec::new();
        for s in k.screens() {
            screen_segments.extend(s.segments());
            let vs = s.vertices();
            // interior vertices get arc joins
            disks.extend_from_slice(&vs[1..vs.len() - 1]);
            let head_dir = vs[0].sub(vs[1]);
            let tail_dir = vs[vs.len() - 1].sub(vs[vs.len() - 2]);
            caps.push(Cap {
                vertex: vs[0],
                outward: head_dir.scale(1.0 / head_dir.norm()),
            });
            caps.push(Cap {
                vertex: vs[vs.len() - 1],
                outward: tail_dir.scale(1.0 / tail_dir.norm()),
            });
        }
        Self {
            loop_segments,
            screen_segments,
            disks,
            caps,
            scatterer: k.clone(),
        }
    }

    /// Entry level of `x` into the thickening family: `min{h ≥ 0 : x ∈ K_h}`.
    pub fn entry_level(&self, x: Point2) -> f64 {
        let mut g = f64::INFINITY;
        if !self.loop_segments.is_empty() {
            if self.scatterer.inside_obstacle(x) {
                return 0.0;
            }
            for s in &self.loop_segments {
                g = g.min(s.distance_to(x));
            }
        }
        for s in &self.screen_segments {
            let (sc, tc) = s.frame_coords(x);
            if sc >= 0.0 && sc <= s.length() {
                g = g.min(tc.abs());
            }
        }
        for d in &self.disks {
            g = g.min(d.dist(x));
        }
        for c in &self.caps {
            let r = x.sub(c.vertex);
            let s = r.dot(c.outward);
            let t = c.outward.cross(r);
            if s >= 0.0 {
                g = g.min(s.max(t.abs()));
            }
        }
        g
    }

    /// Exact membership in `K_h`, per-primitive tests.
    pub fn contains(&self, h: f64, x: Point2) -> bool {
        self.entry_level(x) <= h
    }

    /// Exact Euclidean distance from `x` to the compact set `K_h`.
    pub fn distance_to_thickened(&self, h: f64, x: Point2) -> f64 {
        let mut d = f64::INFINITY;
        if !self.loop_segments.is_empty() {
            if self.scatterer.inside_obstacle(x) {
                return 0.0;
            }
            for s in &self.loop_segments {
                d = d.min((s.distance_to(x) - h).max(0.0));
            }
        }
        for s in &self.screen_segments {
            let (sc, tc) = s.frame_coords(x);
            let ds = (-sc).max(sc - s.length()).max(0.0);
            let dt = (tc.abs() - h).max(0.0);
            d = d.min(ds.hypot(dt));
        }
        for disk in &self.disks {
            d = d.min((disk.dist(x) - h).max(0.0));
        }
        for c in &self.caps {
            let r = x.sub(c.vertex);
            let s = r.dot(c.outward);
            let t = c.outward.cross(r);
            let ds = (-s).max(s - h).max(0.0);
            let dt = (t.abs() - h).max(0.0);
            d = d.min(ds.hypot(dt));
        }
        d
    }

    /// Exact Euclidean distance from `x` to the set `K` itself.
    pub fn distance_to_set(&self, x: Point2) -> f64 {
        self.distance_to_thickened(0.0, x)
    }
}

/// Exact point-to-set distance `dist(x, K)` over all edges and vertices,
/// zero inside obstacle material.
pub fn euclidean_distance_to(k: &Scatterer, x: Point2) -> Result<f64, GeometryError> {
    if k.is_empty() {
        return Err(GeometryError::EmptySet);
    }
    Ok(GaugeSet::new(k).distance_to_set(x))
}

/// Exact membership test `x ∈ K_h`.
pub fn thickening_contains(k: &Scatterer, h: f64, x: Point2) -> Result<bool, GeometryError> {
    if h < 0.0 {
        return Err(GeometryError::BadParameter(format!(
            "thickening level must be nonnegative, got {h}"
        )));
    }
    Ok(!k.is_empty() && GaugeSet::new(k).contains(h, x))
}

/// Pseudo-distance `d̃(x) = min{h ≥ 0 : x ∈ K_h}`, found by bisection on `h`
/// with exact per-primitive membership tests, to tolerance `tol`. When
/// `x ∉ K_{h_max}` the continuation `h_max + dist(x, K_{h_max})` is returned.
pub fn pseudo_distance(
    k: &Scatterer,
    x: Point2,
    h_max: f64,
    tol: f64,
) -> Result<f64, GeometryError> {
    if !(tol > 0.0) {
        return Err(GeometryError::BadParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if !(h_max > 0.0) {
        return Err(GeometryError::BadParameter(format!(
            "h_max must be positive, got {h_max}"
        )));
    }
    if k.is_empty() {
        return Err(GeometryError::EmptySet);
    }
    let gauge = GaugeSet::new(k);
    if !gauge.contains(h_max, x) {
        return Ok(h_max + gauge.distance_to_thickened(h_max, x));
    }
    if gauge.contains(0.0, x) {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0f64, h_max);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if gauge.contains(mid, x) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PolyChain;

    fn unit_segment_screen() -> Scatterer {
        let seg = PolyChain::open(vec![Point2::new(0., 0.), Point2::new(1., 0.)], 1e-9).unwrap();
        Scatterer::new(vec![], vec![seg], 1.0).unwrap()
    }

    #[test]
    fn pseudo_distance_examples() {
        let k = unit_segment_screen();
        // on K
        let d0 = pseudo_distance(&k, Point2::new(0.5, 0.0), 1.0, 1e-9).unwrap();
        assert!(d0 <= 1e-9);
        // perpendicular band entry
        let d1 = pseudo_distance(&k, Point2::new(0.5, 0.2), 1.0, 1e-9).unwrap();
        assert!((d1 - 0.2).abs() < 1e-8, "{d1}");
        // end-cap entry: reaches (1.3, 0) at h = 0.3
        let d2 = pseudo_distance(&k, Point2::new(1.3, 0.0), 1.0, 1e-9).unwrap();
        assert!((d2 - 0.3).abs() < 1e-8, "{d2}");
    }

    #[test]
    fn beyond_h_max_continuation() {
        let k = unit_segment_screen();
        // x = (0.5, 1.0), h_max = 0.25: K_{0.25} band reaches |t| = 0.25,
        // so dist = 0.75 and the convention gives 0.25 + 0.75 = 1.0.
        let d = pseudo_distance(&k, Point2::new(0.5, 1.0), 0.25, 1e-9).unwrap();
        assert!((d - 1.0).abs() < 1e-12, "{d}");
    }

    #[test]
    fn euclidean_distance_examples() {
        let k = unit_segment_screen();
        assert_eq!(euclidean_distance_to(&k, Point2::new(0.5, 0.0)).unwrap(), 0.0);
        assert!(
            (euclidean_distance_to(&k, Point2::new(0.5, 0.2)).unwrap() - 0.2).abs() < 1e-15
        );
        assert!((euclidean_distance_to(&k, Point2::new(2.0, 0.0)).unwrap() - 1.0).abs() < 1e-15);
        assert!(euclidean_distance_to(&Scatterer::empty(), Point2::new(0., 0.)).is_err());
    }

    #[test]
    fn obstacle_interior_is_at_level_zero() {
        let sq = PolyChain::closed(
            vec![
                Point2::new(-0.5, -0.5),
                Point2::new(0.5, -0.5),
                Point2::new(0.5, 0.5),
                Point2::new(-0.5, 0.5),
            ],
            1e-9,
        )
        .unwrap();
        let k = Scatterer::new(vec![sq], vec![], 1.0).unwrap();
        assert_eq!(euclidean_distance_to(&k, Point2::new(0.1, 0.2)).unwrap(), 0.0);
        assert!(thickening_contains(&k, 0.0, Point2::new(0.1, 0.2)).unwrap());
        // corner join: point diagonally off the corner at distance 0.1*sqrt(2)
        // enters only at h = 0.1*sqrt(2), not at 0.1
        let p = Point2::new(0.5 + 0.1, 0.5 + 0.1);
        assert!(!thickening_contains(&k, 0.12, p).unwrap());
        assert!(thickening_contains(&k, 0.1_f64.hypot(0.1) + 1e-12, p).unwrap());
    }

    #[test]
    fn monotone_nesting_of_levels() {
        let k = unit_segment_screen();
        let gauge = GaugeSet::new(&k);
        // sampled points: membership monotone in h
        for i in 0..50 {
            let x = Point2::new(-0.4 + 0.05 * i as f64, -0.3 + 0.017 * i as f64);
            let lvl = gauge.entry_level(x);
            for &h in &[0.05, 0.1, 0.2, 0.4] {
                assert_eq!(gauge.contains(h, x), lvl <= h);
            }
        }
    }

    #[test]
    fn sandwich_ratio_bounds() {
        // d̃/d stays in (0, ∞) and within [1/sqrt(2), 1] for the straight
        // screen (cap corners are the extreme case).
        let k = unit_segment_screen();
        let gauge = GaugeSet::new(&k);
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        let mut count = 0usize;
        for i in 0..40 {
            for j in 0..40 {
                let x = Point2::new(-0.5 + 2.0 * i as f64 / 39.0, -0.6 + 1.2 * j as f64 / 39.0);
                let d = gauge.distance_to_set(x);
                if d < 1e-6 || d > 0.5 {
                    continue;
                }
                let dt = gauge.entry_level(x);
                let ratio = dt / d;
                lo = lo.min(ratio);
                hi = hi.max(ratio);
                count += 1;
            }
        }
        assert!(count > 100);
        assert!(lo > 0.0 && hi.is_finite());
        assert!(lo >= 1.0 / 2.0_f64.sqrt() - 1e-9, "lo={lo}");
        assert!(hi <= 1.0 + 1e-9, "hi={hi}");
    }
}
