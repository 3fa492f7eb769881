//! Polygonal thickening `K_h`: normal offset bands on every edge, tangential
//! end-caps at screen endpoints, circular-arc joins (polygonized) at corners.
//!
//! The boundary is extracted by sampling the exact membership gauge on a grid
//! of spacing `h/16`, contouring the level `h` with marching squares (linear
//! interpolation along grid edges, saddle cells disambiguated by the gauge at
//! the cell center) and simplifying the resulting loops at tolerance `h/64`.

use super::gauge::GaugeSet;
use super::{GeometryError, Point2, PolyChain, Scatterer};

const CELL_DIVISOR: f64 = 16.0;
const SIMPLIFY_DIVISOR: f64 = 64.0;
const MAX_GRID_NODES: usize = 40_000_000;

/// Thickening `K_h` of a scatterer. The output contains loops only; screens
/// become thin obstacles. `h = 0` returns the input unchanged.
pub fn thicken(k: &Scatterer, h: f64) -> Result<Scatterer, GeometryError> {
    if !(h >= 0.0) || !h.is_finite() {
        return Err(GeometryError::BadParameter(format!(
            "thickness must be finite and nonnegative, got {h}"
        )));
    }
    if h == 0.0 || k.is_empty() {
        return Ok(k.clone());
    }
    if let Some(sep) = k.feature_separation() {
        if 2.0 * h >= sep {
            return Err(GeometryError::ThickeningSelfIntersects { h, sep });
        }
    }

    let gauge = GaugeSet::new(k);
    let cell = h / CELL_DIVISOR;

    // grid bounds: everything within gauge ≤ h lies within sqrt(2)h of K
    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for c in k.chains() {
        for v in c.vertices() {
            xmin = xmin.min(v.x);
            xmax = xmax.max(v.x);
            ymin = ymin.min(v.y);
            ymax = ymax.max(v.y);
        }
    }
    let pad = 1.5 * h + 2.0 * cell;
    xmin -= pad;
    ymin -= pad;
    xmax += pad;
    ymax += pad;
    let nx = ((xmax - xmin) / cell).ceil() as usize + 1;
    let ny = ((ymax - ymin) / cell).ceil() as usize + 1;
    if nx.saturating_mul(ny) > MAX_GRID_NODES {
        return Err(GeometryError::GridTooLarge(nx * ny));
    }

    let node = |i: usize, j: usize| Point2::new(xmin + i as f64 * cell, ymin + j as f64 * cell);
    // f < 0 inside K_h
    let mut field = vec![0.0f64; nx * ny];
    for j in 0..ny {
        for i in 0..nx {
            field[j * nx + i] = gauge.entry_level(node(i, j)) - h;
        }
    }

    let loops = contour_loops(&field, nx, ny, cell, xmin, ymin, |p| {
        gauge.entry_level(p) - h
    });

    let tol = h / SIMPLIFY_DIVISOR;
    let mut out_loops = Vec::new();
    let mut max_norm: f64 = 0.0;
    for ring in loops {
        let simplified = simplify_closed(&ring, tol);
        if simplified.len() < 3 {
            continue;
        }
        for v in &simplified {
            max_norm = max_norm.max(v.norm());
        }
        out_loops.push(simplified);
    }
    let radius = k.bounding_radius().max(max_norm * (1.0 + 1e-12));
    let snap = super::SNAP_REL * radius.max(1e-300);
    let chains = out_loops
        .into_iter()
        .map(|vs| {
            let mut ring = vs;
            if signed_area(&ring) < 0.0 {
                ring.reverse();
            }
            PolyChain::closed(ring, snap)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Scatterer::new(chains, Vec::new(), radius)
}

fn signed_area(ring: &[Point2]) -> f64 {
    let n = ring.len();
    let mut twice = 0.0;
    for i in 0..n {
        twice += ring[i].cross(ring[(i + 1) % n]);
    }
    0.5 * twice
}

/// Marching squares over a scalar field sampled at grid nodes; returns the
/// closed zero-level contours. `f_at` re-evaluates the field at off-node
/// points (saddle disambiguation).
fn contour_loops<F: Fn(Point2) -> f64>(
    field: &[f64],
    nx: usize,
    ny: usize,
    cell: f64,
    x0: f64,
    y0: f64,
    f_at: F,
) -> Vec<Vec<Point2>> {
    let node = |i: usize, j: usize| Point2::new(x0 + i as f64 * cell, y0 + j as f64 * cell);
    let fv = |i: usize, j: usize| field[j * nx + i];
    let inside = |i: usize, j: usize| fv(i, j) < 0.0;

    // edge ids: horizontal edge (i,j): node(i,j)-node(i+1,j); vertical: node(i,j)-node(i,j+1)
    let h_id = |i: usize, j: usize| 2 * (j * nx + i);
    let v_id = |i: usize, j: usize| 2 * (j * nx + i) + 1;

    let crossing = |a: (usize, usize), b: (usize, usize)| -> Point2 {
        let (fa, fb) = (fv(a.0, a.1), fv(b.0, b.1));
        let t = fa / (fa - fb);
        let pa = node(a.0, a.1);
        let pb = node(b.0, b.1);
        pa.add(pb.sub(pa).scale(t.clamp(0.0, 1.0)))
    };

    let mut segments: Vec<(usize, usize)> = Vec::new();
    let mut positions: std::collections::HashMap<usize, Point2> = std::collections::HashMap::new();
    let mut push = |e1: usize,
                    e2: usize,
                    p1: Point2,
                    p2: Point2,
                    segments: &mut Vec<(usize, usize)>,
                    positions: &mut std::collections::HashMap<usize, Point2>| {
        positions.entry(e1).or_insert(p1);
        positions.entry(e2).or_insert(p2);
        segments.push((e1, e2));
    };

    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            let c00 = inside(i, j);
            let c10 = inside(i + 1, j);
            let c11 = inside(i + 1, j + 1);
            let c01 = inside(i, j + 1);
            let mask = (c00 as u8) | (c10 as u8) << 1 | (c11 as u8) << 2 | (c01 as u8) << 3;
            if mask == 0 || mask == 15 {
                continue;
            }
            let bottom = || (h_id(i, j), crossing((i, j), (i + 1, j)));
            let top = || (h_id(i, j + 1), crossing((i, j + 1), (i + 1, j + 1)));
            let left = || (v_id(i, j), crossing((i, j), (i, j + 1)));
            let right = || (v_id(i + 1, j), crossing((i + 1, j), (i + 1, j + 1)));
            let mut emit = |a: (usize, Point2), b: (usize, Point2)| {
                push(a.0, b.0, a.1, b.1, &mut segments, &mut positions);
            };
            match mask {
                1 => emit(left(), bottom()),
                2 => emit(bottom(), right()),
                3 => emit(left(), right()),
                4 => emit(right(), top()),
                6 => emit(bottom(), top()),
                7 => emit(left(), top()),
                8 => emit(top(), left()),
                9 => emit(bottom(), top()),
                11 => emit(right(), top()),
                12 => emit(left(), right()),
                13 => emit(bottom(), right()),
                14 => emit(left(), bottom()),
                5 | 10 => {
                    let center = Point2::new(
                        x0 + (i as f64 + 0.5) * cell,
                        y0 + (j as f64 + 0.5) * cell,
                    );
                    let center_inside = f_at(center) < 0.0;
                    if mask == 5 {
                        if center_inside {
                            emit(left(), top());
                            emit(bottom(), right());
                        } else {
                            emit(left(), bottom());
                            emit(right(), top());
                        }
                    } else if center_inside {
                        emit(left(), bottom());
                        emit(right(), top());
                    } else {
                        emit(bottom(), right());
                        emit(top(), left());
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    // chain segments into closed loops: every crossing edge joins exactly two
    // cell segments for a field that is positive on the grid border
    let mut incident: std::collections::HashMap<usize, Vec<usize>> =
        std::collections::HashMap::new();
    for (si, &(a, b)) in segments.iter().enumerate() {
        incident.entry(a).or_default().push(si);
        incident.entry(b).or_default().push(si);
    }
    let mut visited = vec![false; segments.len()];
    let mut loops = Vec::new();
    for start in 0..segments.len() {
        if visited[start] {
            continue;
        }
        let mut ring_edges = Vec::new();
        let mut current = start;
        let mut entry_edge = segments[start].0;
        loop {
            visited[current] = true;
            let (a, b) = segments[current];
            let exit_edge = if a == entry_edge { b } else { a };
            ring_edges.push(exit_edge);
            let nexts = &incident[&exit_edge];
            let next = nexts.iter().copied().find(|&s| !visited[s]);
            match next {
                Some(s) => {
                    current = s;
                    entry_edge = exit_edge;
                }
                None => break,
            }
        }
        if ring_edges.len() >= 3 {
            let ring: Vec<Point2> = ring_edges.iter().map(|e| positions[e]).collect();
            loops.push(dedup_ring(ring));
        }
    }
    loops
}

/// Removes consecutive duplicates (contour points can coincide when a
/// crossing sits exactly on a grid node).
fn dedup_ring(ring: Vec<Point2>) -> Vec<Point2> {
    let mut out: Vec<Point2> = Vec::with_capacity(ring.len());
    for p in ring {
        if out.last().map_or(true, |q| q.dist(p) > 1e-300) {
            out.push(p);
        }
    }
    while out.len() > 1 && out[0].dist(*out.last().unwrap()) <= 1e-300 {
        out.pop();
    }
    out
}

/// Douglas–Peucker on a closed ring: split at the two mutually farthest
/// anchor candidates, simplify each arc, and rejoin.
fn simplify_closed(ring: &[Point2], tol: f64) -> Vec<Point2> {
    if ring.len() <= 4 {
        return ring.to_vec();
    }
    // anchor 0 and the vertex farthest from it
    let far = ring
        .iter()
        .enumerate()
        .max_by(|a, b| {
            ring[0]
                .dist(*a.1)
                .partial_cmp(&ring[0].dist(*b.1))
                .unwrap()
        })
        .map(|(i, _)| i)
        .unwrap_or(ring.len() / 2)
        .max(1);
    let mut first: Vec<Point2> = ring[0..=far].to_vec();
    let mut second: Vec<Point2> = ring[far..].to_vec();
    second.push(ring[0]);
    let mut a = douglas_peucker(&first, tol);
    let b = douglas_peucker(&second, tol);
    a.pop(); // shared anchor at `far`
    let mut out = a;
    let mut btail = b;
    btail.pop(); // shared anchor at 0
    out.extend(btail);
    first.clear();
    second.clear();
    out
}

fn douglas_peucker(pts: &[Point2], tol: f64) -> Vec<Point2> {
    if pts.len() <= 2 {
        return pts.to_vec();
    }
    let seg = super::Segment::new(pts[0], *pts.last().unwrap());
    let (mut imax, mut dmax) = (0usize, 0.0f64);
    for (i, p) in pts.iter().enumerate().skip(1).take(pts.len() - 2) {
        let d = seg.distance_to(*p);
        if d > dmax {
            dmax = d;
            imax = i;
        }
    }
    if dmax <= tol {
        return vec![pts[0], *pts.last().unwrap()];
    }
    let mut left = douglas_peucker(&pts[..=imax], tol);
    let right = douglas_peucker(&pts[imax..], tol);
    left.pop();
    left.extend(right);
    left
}
