//! Piecewise-linear scatterer geometry.
//!
//! A scatterer is a compact set `K` in the plane given by closed polygonal
//! loops (obstacle boundaries, interiors included in `K`) plus open polylines
//! (screens, sets of empty interior). Loops use even-odd semantics, so a loop
//! nested inside another cuts a cavity (an annular obstacle is two nested
//! loops). All operations treat geometry as immutable values.

use serde::{Deserialize, Serialize};
use thiserror::Error;

mod connectivity;
mod gauge;
mod hausdorff;
pub mod io;
mod thicken;

pub use connectivity::{assumption_b_check, exterior_connected, AssumptionBReport};
pub use gauge::{euclidean_distance_to, pseudo_distance, thickening_contains};
pub use hausdorff::{hausdorff_distance, HausdorffResult};
pub use thicken::thicken;

/// Relative snap tolerance: vertices closer than `SNAP_REL * bounding_radius`
/// are considered coincident.
pub const SNAP_REL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("point has non-finite coordinates ({0}, {1})")]
    NonFinitePoint(f64, f64),
    #[error("{0}")]
    InvalidChain(String),
    #[error("chain is self-intersecting near ({0:.6}, {1:.6})")]
    SelfIntersection(f64, f64),
    #[error("closed loop must be oriented counterclockwise")]
    ClockwiseLoop,
    #[error("chains are not disjoint near ({0:.6}, {1:.6})")]
    ChainsNotDisjoint(f64, f64),
    #[error("vertex ({0:.6}, {1:.6}) lies outside the stated bounding radius {2}")]
    OutsideBoundingRadius(f64, f64, f64),
    #[error("empty set has no Hausdorff distance")]
    EmptySet,
    #[error("thickening self-intersects: h = {h} exceeds half the feature separation {sep}")]
    ThickeningSelfIntersects { h: f64, sep: f64 },
    #[error("{0}")]
    BadParameter(String),
    #[error("resolution too coarse for reliable connectivity (need < {0})")]
    ResolutionTooCoarse(f64),
    #[error("thickening grid of {0} cells exceeds the supported size")]
    GridTooLarge(usize),
}

/// A point in the plane. Coordinates are finite by construction everywhere
/// the crate creates them; `validate` enforces it on untrusted input.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        if self.x.is_finite() && self.y.is_finite() {
            Ok(())
        } else {
            Err(GeometryError::NonFinitePoint(self.x, self.y))
        }
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(&self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn dot(&self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product.
    pub fn cross(&self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn add(&self, other: Point2) -> Point2 {
        Point2::new(self.x + other.x, self.y + other.y)
    }

    pub fn sub(&self, other: Point2) -> Point2 {
        Point2::new(self.x - other.x, self.y - other.y)
    }

    pub fn scale(&self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

/// Closed segment between two points, with the exact distance kernels the
/// Hausdorff and thickening code is built on.
#[derive(Debug, Clone, Copy)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    pub fn new(a: Point2, b: Point2) -> Self {
        Self { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    /// Exact distance from `p` to the segment.
    pub fn distance_to(&self, p: Point2) -> f64 {
        self.closest_point(p).dist(p)
    }

    /// Closest point of the segment to `p`.
    pub fn closest_point(&self, p: Point2) -> Point2 {
        let d = self.b.sub(self.a);
        let len2 = d.dot(d);
        if len2 == 0.0 {
            return self.a;
        }
        let t = (p.sub(self.a).dot(d) / len2).clamp(0.0, 1.0);
        self.a.add(d.scale(t))
    }

    /// Signed projection coordinates of `p`: `s` along the segment (unclamped,
    /// in length units) and `t` across it (positive to the left of a→b).
    pub fn frame_coords(&self, p: Point2) -> (f64, f64) {
        let d = self.b.sub(self.a);
        let len = d.norm();
        if len == 0.0 {
            let r = p.sub(self.a);
            return (0.0, r.norm());
        }
        let u = d.scale(1.0 / len);
        let r = p.sub(self.a);
        (r.dot(u), u.cross(r))
    }

    /// Proper or improper intersection test with another segment;
    /// `eps` is an absolute slack on the orientation predicates.
    pub fn intersects(&self, other: &Segment, eps: f64) -> bool {
        let d1 = orient(other.a, other.b, self.a);
        let d2 = orient(other.a, other.b, self.b);
        let d3 = orient(self.a, self.b, other.a);
        let d4 = orient(self.a, self.b, other.b);
        if ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps))
            && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps))
        {
            return true;
        }
        // collinear / endpoint-touching cases: fall back to distance
        self.distance_to(other.a) <= eps
            || self.distance_to(other.b) <= eps
            || other.distance_to(self.a) <= eps
            || other.distance_to(self.b) <= eps
    }

    /// Minimal distance between two segments.
    pub fn distance_to_segment(&self, other: &Segment) -> f64 {
        if self.intersects(other, 0.0) {
            return 0.0;
        }
        self.distance_to(other.a)
            .min(self.distance_to(other.b))
            .min(other.distance_to(self.a))
            .min(other.distance_to(self.b))
    }
}

/// Twice the signed area of triangle `abc` (positive if counterclockwise).
pub fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// An open polyline or closed polygonal loop.
///
/// Invariants enforced at construction: at least 2 (open) or 3 (closed)
/// vertices, consecutive vertices separated by more than the snap tolerance,
/// no self-intersection, and counterclockwise orientation for loops. For
/// closed chains the first vertex is not repeated at the end.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyChain {
    vertices: Vec<Point2>,
    closed: bool,
}

impl PolyChain {
    pub fn closed(vertices: Vec<Point2>, snap_tol: f64) -> Result<Self, GeometryError> {
        Self::new(vertices, true, snap_tol)
    }

    pub fn open(vertices: Vec<Point2>, snap_tol: f64) -> Result<Self, GeometryError> {
        Self::new(vertices, false, snap_tol)
    }

    fn new(vertices: Vec<Point2>, closed: bool, snap_tol: f64) -> Result<Self, GeometryError> {
        for v in &vertices {
            v.validate()?;
        }
        let min = if closed { 3 } else { 2 };
        if vertices.len() < min {
            return Err(GeometryError::InvalidChain(format!(
                "{} chain needs at least {min} vertices, got {}",
                if closed { "closed" } else { "open" },
                vertices.len()
            )));
        }
        let n = vertices.len();
        let pairs = if closed { n } else { n - 1 };
        for i in 0..pairs {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            if a.dist(b) <= snap_tol {
                return Err(GeometryError::InvalidChain(format!(
                    "consecutive vertices {i} and {} coincide within snap tolerance",
                    (i + 1) % n
                )));
            }
        }
        let chain = Self { vertices, closed };
        if let Some(p) = chain.self_intersection(snap_tol) {
            return Err(GeometryError::SelfIntersection(p.x, p.y));
        }
        if closed && chain.signed_area() <= 0.0 {
            return Err(GeometryError::ClockwiseLoop);
        }
        Ok(chain)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        let n = self.vertices.len();
        let count = if self.closed { n } else { n - 1 };
        (0..count).map(move |i| Segment::new(self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Polyline length (perimeter for loops).
    pub fn length(&self) -> f64 {
        self.segments().map(|s| s.length()).sum()
    }

    pub fn signed_area(&self) -> f64 {
        if !self.closed {
            return 0.0;
        }
        let n = self.vertices.len();
        let mut twice = 0.0;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            twice += a.cross(b);
        }
        0.5 * twice
    }

    /// First self-intersection between non-adjacent segments, if any.
    fn self_intersection(&self, eps: f64) -> Option<Point2> {
        let segs: Vec<Segment> = self.segments().collect();
        let n = segs.len();
        for i in 0..n {
            for j in (i + 2)..n {
                // adjacent pairs share a vertex; for closed chains the last
                // and first are adjacent too.
                if self.closed && i == 0 && j == n - 1 {
                    continue;
                }
                if segs[i].intersects(&segs[j], eps) {
                    let p = segs[i].closest_point(segs[j].a);
                    return Some(p);
                }
            }
        }
        None
    }
}

/// A compact scatterer: obstacle loops plus screens inside a bounding disk.
#[derive(Debug, Clone, PartialEq)]
pub struct Scatterer {
    loops: Vec<PolyChain>,
    screens: Vec<PolyChain>,
    bounding_radius: f64,
}

impl Scatterer {
    /// Validating constructor. Distinct chains must be strictly disjoint
    /// (no crossings, no shared endpoints beyond snap tolerance).
    pub fn new(
        loops: Vec<PolyChain>,
        screens: Vec<PolyChain>,
        bounding_radius: f64,
    ) -> Result<Self, GeometryError> {
        if !(bounding_radius.is_finite() && bounding_radius >= 0.0) {
            return Err(GeometryError::BadParameter(format!(
                "bounding_radius must be finite and nonnegative, got {bounding_radius}"
            )));
        }
        for chain in loops.iter().chain(screens.iter()) {
            for v in chain.vertices() {
                if v.norm() > bounding_radius * (1.0 + 1e-12) {
                    return Err(GeometryError::OutsideBoundingRadius(
                        v.x,
                        v.y,
                        bounding_radius,
                    ));
                }
            }
        }
        for l in &loops {
            if !l.is_closed() {
                return Err(GeometryError::InvalidChain("loops must be closed".into()));
            }
        }
        for s in &screens {
            if s.is_closed() {
                return Err(GeometryError::InvalidChain("screens must be open".into()));
            }
        }
        let snap = SNAP_REL * bounding_radius.max(1e-300);
        let all: Vec<&PolyChain> = loops.iter().chain(screens.iter()).collect();
        for i in 0..all.len() {
            for j in (i + 1)..all.len() {
                for sa in all[i].segments() {
                    for sb in all[j].segments() {
                        if sa.intersects(&sb, snap) {
                            let p = sa.closest_point(sb.a);
                            return Err(GeometryError::ChainsNotDisjoint(p.x, p.y));
                        }
                    }
                }
            }
        }
        Ok(Self {
            loops,
            screens,
            bounding_radius,
        })
    }

    /// Scatterer with no material: the free-space control case.
    pub fn empty() -> Self {
        Self {
            loops: Vec::new(),
            screens: Vec::new(),
            bounding_radius: 0.0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.loops.is_empty() && self.screens.is_empty()
    }

    pub fn loops(&self) -> &[PolyChain] {
        &self.loops
    }

    pub fn screens(&self) -> &[PolyChain] {
        &self.screens
    }

    pub fn bounding_radius(&self) -> f64 {
        self.bounding_radius
    }

    pub fn has_screens(&self) -> bool {
        !self.screens.is_empty()
    }

    pub fn snap_tolerance(&self) -> f64 {
        SNAP_REL * self.bounding_radius.max(1e-300)
    }

    /// All boundary segments (loop edges and screen edges).
    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.loops
            .iter()
            .chain(self.screens.iter())
            .flat_map(|c| c.segments())
    }

    pub fn chains(&self) -> impl Iterator<Item = &PolyChain> {
        self.loops.iter().chain(self.screens.iter())
    }

    /// Even-odd test against the union of all loops: true when `p` lies in
    /// the material of an obstacle (a cavity between nested loops is outside).
    pub fn inside_obstacle(&self, p: Point2) -> bool {
        let mut crossings = 0u32;
        for l in &self.loops {
            let vs = l.vertices();
            let n = vs.len();
            for i in 0..n {
                let a = vs[i];
                let b = vs[(i + 1) % n];
                if (a.y > p.y) != (b.y > p.y) {
                    let t = (p.y - a.y) / (b.y - a.y);
                    let xc = a.x + t * (b.x - a.x);
                    if xc > p.x {
                        crossings += 1;
                    }
                }
            }
        }
        crossings % 2 == 1
    }

    /// Smallest distance between non-adjacent boundary segments, i.e. the
    /// clearance that bounds how far the set can be thickened before distinct
    /// pieces of boundary collide. `None` when there is no such pair (e.g. a
    /// single-edge screen).
    pub fn feature_separation(&self) -> Option<f64> {
        #[derive(Clone)]
        struct Tagged {
            seg: Segment,
            chain: usize,
            idx: usize,
            nsegs: usize,
            closed: bool,
        }
        let mut segs: Vec<Tagged> = Vec::new();
        for (ci, chain) in self.chains().enumerate() {
            let list: Vec<Segment> = chain.segments().collect();
            let nsegs = list.len();
            for (si, seg) in list.into_iter().enumerate() {
                segs.push(Tagged {
                    seg,
                    chain: ci,
                    idx: si,
                    nsegs,
                    closed: chain.is_closed(),
                });
            }
        }
        let mut best: Option<f64> = None;
        for i in 0..segs.len() {
            for j in (i + 1)..segs.len() {
                let (a, b) = (&segs[i], &segs[j]);
                if a.chain == b.chain {
                    let adjacent = b.idx == a.idx + 1
                        || (a.closed && a.idx == 0 && b.idx == a.nsegs - 1);
                    if adjacent {
                        continue;
                    }
                }
                let d = a.seg.distance_to_segment(&b.seg);
                best = Some(best.map_or(d, |x: f64| x.min(d)));
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn unit_square() -> Scatterer {
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
        Scatterer::new(vec![sq], vec![], 1.0).unwrap()
    }

    #[test]
    fn chain_invariants_enforced() {
        let tol = 1e-9;
        assert!(PolyChain::closed(
            vec![Point2::new(0., 0.), Point2::new(1., 0.)],
            tol
        )
        .is_err());
        assert!(PolyChain::open(vec![Point2::new(0., 0.)], tol).is_err());
        // coincident consecutive vertices
        assert!(PolyChain::open(
            vec![Point2::new(0., 0.), Point2::new(0., 1e-12)],
            tol
        )
        .is_err());
        // bowtie self-intersection
        assert!(matches!(
            PolyChain::closed(
                vec![
                    Point2::new(0., 0.),
                    Point2::new(1., 1.),
                    Point2::new(1., 0.),
                    Point2::new(0., 1.),
                ],
                tol
            ),
            Err(GeometryError::SelfIntersection(_, _))
        ));
        // clockwise rejected
        assert!(matches!(
            PolyChain::closed(
                vec![Point2::new(0., 0.), Point2::new(0., 1.), Point2::new(1., 0.)],
                tol
            ),
            Err(GeometryError::ClockwiseLoop)
        ));
        // NaN rejected
        assert!(PolyChain::open(
            vec![Point2::new(f64::NAN, 0.), Point2::new(1., 0.)],
            tol
        )
        .is_err());
    }

    #[test]
    fn scatterer_disjointness() {
        let a = PolyChain::closed(
            vec![Point2::new(0., 0.), Point2::new(1., 0.), Point2::new(0., 1.)],
            1e-9,
        )
        .unwrap();
        let b = PolyChain::closed(
            vec![
                Point2::new(0.5, 0.1),
                Point2::new(1.5, 0.1),
                Point2::new(0.5, 1.1),
            ],
            1e-9,
        )
        .unwrap();
        assert!(matches!(
            Scatterer::new(vec![a, b], vec![], 3.0),
            Err(GeometryError::ChainsNotDisjoint(_, _))
        ));
    }

    #[test]
    fn bounding_radius_enforced() {
        let sq = PolyChain::closed(
            vec![
                Point2::new(-1.0, -1.0),
                Point2::new(1.0, -1.0),
                Point2::new(1.0, 1.0),
                Point2::new(-1.0, 1.0),
            ],
            1e-9,
        )
        .unwrap();
        assert!(Scatterer::new(vec![sq.clone()], vec![], 1.0).is_err());
        assert!(Scatterer::new(vec![sq], vec![], 1.5).is_ok());
    }

    #[test]
    fn inside_obstacle_even_odd() {
        let outer = PolyChain::closed(
            vec![
                Point2::new(-2., -2.),
                Point2::new(2., -2.),
                Point2::new(2., 2.),
                Point2::new(-2., 2.),
            ],
            1e-9,
        )
        .unwrap();
        let inner = PolyChain::closed(
            vec![
                Point2::new(-1., -1.),
                Point2::new(1., -1.),
                Point2::new(1., 1.),
                Point2::new(-1., 1.),
            ],
            1e-9,
        )
        .unwrap();
        let ring = Scatterer::new(vec![outer, inner], vec![], 3.0).unwrap();
        assert!(ring.inside_obstacle(Point2::new(1.5, 0.0))); // in the ring material
        assert!(!ring.inside_obstacle(Point2::new(0.0, 0.0))); // cavity
        assert!(!ring.inside_obstacle(Point2::new(2.5, 0.0))); // outside
    }

    #[test]
    fn feature_separation_square() {
        let sq = unit_square();
        let sep = sq.feature_separation().unwrap();
        assert!((sep - 1.0).abs() < 1e-12, "{sep}");
        // single-segment screen has no non-adjacent pair
        let seg = PolyChain::open(vec![Point2::new(0., 0.), Point2::new(1., 0.)], 1e-9).unwrap();
        let s = Scatterer::new(vec![], vec![seg], 1.0).unwrap();
        assert!(s.feature_separation().is_none());
    }

    #[test]
    fn segment_distance_kernels() {
        let s = Segment::new(Point2::new(0., 0.), Point2::new(1., 0.));
        assert!((s.distance_to(Point2::new(0.5, 0.2)) - 0.2).abs() < 1e-15);
        assert!((s.distance_to(Point2::new(2.0, 0.0)) - 1.0).abs() < 1e-15);
        assert!((s.distance_to(Point2::new(-3.0, 4.0)) - 5.0).abs() < 1e-15);
        let (sc, tc) = s.frame_coords(Point2::new(1.3, -0.1));
        assert!((sc - 1.3).abs() < 1e-15 && (tc + 0.1).abs() < 1e-15);
    }
}
