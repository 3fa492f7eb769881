//! Admissibility checks: exterior connectedness and the component/perimeter
//! bounds on `∂K`.

use super::{GeometryError, Point2, Scatterer};

/// Rasterizes `K` over the square hull of the disk of radius `bbox_radius`
/// and flood-fills the complement from the border; true iff every free cell
/// is reachable, i.e. `K` does not enclose any region of the plane.
///
/// Cells are marked occupied conservatively: every cell a boundary segment
/// passes through, plus every cell whose center or corner lies in obstacle
/// material. Conservative marking can only disconnect the complement, never
/// falsely connect it across a barrier.
pub fn exterior_connected(
    k: &Scatterer,
    bbox_radius: f64,
    grid_resolution: f64,
) -> Result<bool, GeometryError> {
    if !(grid_resolution > 0.0) {
        return Err(GeometryError::BadParameter(format!(
            "grid resolution must be positive, got {grid_resolution}"
        )));
    }
    if bbox_radius < k.bounding_radius() {
        return Err(GeometryError::BadParameter(format!(
            "bbox radius {bbox_radius} smaller than scatterer bounding radius {}",
            k.bounding_radius()
        )));
    }
    if k.is_empty() {
        return Ok(true);
    }
    if let Some(sep) = k.feature_separation() {
        // a genuinely open gap narrower than two cell diagonals can be sealed
        // by conservative marking
        if grid_resolution * 2.0 * std::f64::consts::SQRT_2 >= sep {
            return Err(GeometryError::ResolutionTooCoarse(
                sep / (2.0 * std::f64::consts::SQRT_2),
            ));
        }
    }

    let r = bbox_radius;
    let n = ((2.0 * r) / grid_resolution).ceil() as usize + 2;
    let cell = 2.0 * r / (n as f64 - 2.0);
    let origin = Point2::new(-r - cell, -r - cell);
    let nx = n + 1;
    let ny = n + 1;
    let mut occupied = vec![false; nx * ny];
    let idx = |i: usize, j: usize| j * nx + i;

    // supercover traversal: mark every cell each segment passes through
    for seg in k.segments() {
        let steps = (seg.length() / (0.25 * cell)).ceil().max(1.0) as usize;
        for s in 0..=steps {
            let t = s as f64 / steps as f64;
            let p = seg.a.add(seg.b.sub(seg.a).scale(t));
            let fi = (p.x - origin.x) / cell;
            let fj = (p.y - origin.y) / cell;
            // mark the containing cell and, near cell lines, the neighbors —
            // this is the conservative corner/edge-crossing rule
            let i0 = fi.floor() as isize;
            let j0 = fj.floor() as isize;
            for di in -1..=1isize {
                for dj in -1..=1isize {
                    let (ci, cj) = (i0 + di, j0 + dj);
                    if ci < 0 || cj < 0 || ci as usize >= nx || cj as usize >= ny {
                        continue;
                    }
                    // cell rectangle distance to point
                    let cx0 = origin.x + ci as f64 * cell;
                    let cy0 = origin.y + cj as f64 * cell;
                    let dx = (cx0 - p.x).max(p.x - (cx0 + cell)).max(0.0);
                    let dy = (cy0 - p.y).max(p.y - (cy0 + cell)).max(0.0);
                    if dx.hypot(dy) <= 0.26 * cell {
                        occupied[idx(ci as usize, cj as usize)] = true;
                    }
                }
            }
        }
    }

    // obstacle interiors: scanline over cell centers
    if !k.loops().is_empty() {
        for j in 0..ny {
            let y = origin.y + (j as f64 + 0.5) * cell;
            let mut crossings: Vec<f64> = Vec::new();
            for l in k.loops() {
                let vs = l.vertices();
                let m = vs.len();
                for t in 0..m {
                    let a = vs[t];
                    let b = vs[(t + 1) % m];
                    if (a.y > y) != (b.y > y) {
                        crossings.push(a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x));
                    }
                }
            }
            crossings.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for pair in crossings.chunks(2) {
                if pair.len() < 2 {
                    break;
                }
                let i0 = (((pair[0] - origin.x) / cell) - 0.5).ceil().max(0.0) as usize;
                let i1 = (((pair[1] - origin.x) / cell) - 0.5).floor() as isize;
                for i in i0..=(i1.max(-1) as usize).min(nx - 1) {
                    if (origin.x + (i as f64 + 0.5) * cell) >= pair[0]
                        && (origin.x + (i as f64 + 0.5) * cell) <= pair[1]
                    {
                        occupied[idx(i, j)] = true;
                    }
                }
            }
        }
    }

    // flood fill (4-neighborhood) from the free border cells
    let mut visited = vec![false; nx * ny];
    let mut stack = Vec::new();
    for i in 0..nx {
        for &j in &[0usize, ny - 1] {
            if !occupied[idx(i, j)] {
                stack.push((i, j));
            }
        }
    }
    for j in 0..ny {
        for &i in &[0usize, nx - 1] {
            if !occupied[idx(i, j)] {
                stack.push((i, j));
            }
        }
    }
    while let Some((i, j)) = stack.pop() {
        let id = idx(i, j);
        if visited[id] || occupied[id] {
            continue;
        }
        visited[id] = true;
        if i > 0 {
            stack.push((i - 1, j));
        }
        if j > 0 {
            stack.push((i, j - 1));
        }
        if i + 1 < nx {
            stack.push((i + 1, j));
        }
        if j + 1 < ny {
            stack.push((i, j + 1));
        }
    }
    for j in 0..ny {
        for i in 0..nx {
            let id = idx(i, j);
            if !occupied[id] && !visited[id] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Verdict of the boundary-measure admissibility check: component count of
/// `∂K` and total one-dimensional boundary measure against given bounds.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AssumptionBReport {
    pub components: usize,
    pub perimeter: f64,
    pub max_components: usize,
    pub max_perimeter: f64,
    pub components_pass: bool,
    pub perimeter_pass: bool,
    pub pass: bool,
}

/// Counts connected components of `∂K` (chains merged when they touch within
/// the snap tolerance) and sums the boundary length; screens are one-sided
/// curves so each contributes its polyline length once.
pub fn assumption_b_check(
    k: &Scatterer,
    max_components: usize,
    max_perimeter: f64,
) -> AssumptionBReport {
    let chains: Vec<_> = k.chains().collect();
    let n = chains.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    let touch_tol = k.snap_tolerance();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut touching = false;
            'outer: for sa in chains[i].segments() {
                for sb in chains[j].segments() {
                    if sa.distance_to_segment(&sb) <= touch_tol {
                        touching = true;
                        break 'outer;
                    }
                }
            }
            if touching {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let mut roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    roots.sort_unstable();
    roots.dedup();
    let components = roots.len();
    let perimeter: f64 = chains.iter().map(|c| c.length()).sum();
    let components_pass = components <= max_components;
    let perimeter_pass = perimeter <= max_perimeter * (1.0 + 1e-12);
    AssumptionBReport {
        components,
        perimeter,
        max_components,
        max_perimeter,
        components_pass,
        perimeter_pass,
        pass: components_pass && perimeter_pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{thicken, PolyChain};

    fn square(cx: f64, cy: f64, half: f64, snap: f64) -> PolyChain {
        PolyChain::closed(
            vec![
                Point2::new(cx - half, cy - half),
                Point2::new(cx + half, cy - half),
                Point2::new(cx + half, cy + half),
                Point2::new(cx - half, cy + half),
            ],
            snap,
        )
        .unwrap()
    }

    #[test]
    fn convex_polygon_exterior_connected() {
        let k = Scatterer::new(vec![square(0., 0., 0.5, 1e-9)], vec![], 1.0).unwrap();
        assert!(exterior_connected(&k, 2.0, 0.05).unwrap());
    }

    #[test]
    fn screen_does_not_separate() {
        let seg = PolyChain::open(vec![Point2::new(0., 0.), Point2::new(1., 0.)], 1e-9).unwrap();
        let k = Scatterer::new(vec![], vec![seg], 1.0).unwrap();
        assert!(exterior_connected(&k, 2.0, 0.05).unwrap());
    }

    #[test]
    fn ring_with_cavity_disconnects() {
        // annular ring: the cavity is unreachable from infinity
        let ring = Scatterer::new(
            vec![square(0., 0., 1.0, 1e-9), square(0., 0., 0.5, 1e-9)],
            vec![],
            2.0,
        )
        .unwrap();
        assert!(!exterior_connected(&ring, 3.0, 0.04).unwrap());
    }

    #[test]
    fn coarse_resolution_rejected() {
        let k = Scatterer::new(
            vec![square(-0.6, 0., 0.25, 1e-9), square(0.6, 0., 0.25, 1e-9)],
            vec![],
            1.5,
        )
        .unwrap();
        // gap between squares is 0.7; resolution above the safe bound errors
        assert!(matches!(
            exterior_connected(&k, 2.0, 0.5),
            Err(GeometryError::ResolutionTooCoarse(_))
        ));
        assert!(exterior_connected(&k, 2.0, 0.05).unwrap());
    }

    #[test]
    fn thicken_preserves_exterior_connectivity() {
        let seg = PolyChain::open(vec![Point2::new(-0.5, 0.), Point2::new(0.5, 0.)], 1e-9).unwrap();
        let k = Scatterer::new(vec![], vec![seg], 1.0).unwrap();
        assert!(exterior_connected(&k, 2.0, 0.02).unwrap());
        let kh = thicken(&k, 0.1).unwrap();
        assert!(exterior_connected(&kh, 2.0, 0.02).unwrap());
    }

    #[test]
    fn assumption_b_counts() {
        let one = Scatterer::new(vec![square(0., 0., 0.5, 1e-9)], vec![], 1.0).unwrap();
        let r = assumption_b_check(&one, 1, 4.0);
        assert_eq!(r.components, 1);
        assert!((r.perimeter - 4.0).abs() < 1e-12);
        assert!(r.pass);

        let two = Scatterer::new(
            vec![square(-1.0, 0., 0.5, 1e-9), square(1.0, 0., 0.5, 1e-9)],
            vec![],
            2.0,
        )
        .unwrap();
        let r2 = assumption_b_check(&two, 1, 100.0);
        assert_eq!(r2.components, 2);
        assert!((r2.perimeter - 8.0).abs() < 1e-12);
        assert!(!r2.pass);
    }

    #[test]
    fn thickened_segment_perimeter() {
        // K_h of a length-1 segment at h=0.1: rectangle perimeter 2*1.2 + 2*0.2
        let seg = PolyChain::open(vec![Point2::new(0., 0.), Point2::new(1., 0.)], 1e-9).unwrap();
        let k = Scatterer::new(vec![], vec![seg], 1.0).unwrap();
        let kh = thicken(&k, 0.1).unwrap();
        let r = assumption_b_check(&kh, 1, 3.0);
        assert_eq!(r.components, 1);
        assert!((r.perimeter - 2.8).abs() < 0.03, "perimeter {}", r.perimeter);
        assert!(r.pass);
    }
}
