//! Closest-point queries between convex "cores" (point, segment, polygon).
//!
//! Every obstacle is a core inflated by a radius: a disk is a point core, a
//! capsule a segment core, a polygon a polygon core with radius zero.

use crate::geom::Point;

/// Closest point on segment `ab` to `p`, with its parameter in `[0, 1]`.
pub fn closest_on_segment(p: Point, a: Point, b: Point) -> (Point, f64) {
    let ab = b - a;
    let len2 = ab.norm_sq();
    if len2 == 0.0 {
        return (a, 0.0);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    (a + ab * t, t)
}

pub fn dist_point_segment(p: Point, a: Point, b: Point) -> f64 {
    closest_on_segment(p, a, b).0.dist(p)
}

/// Intersection point of two closed segments, if any (collinear overlaps
/// return one shared point).
pub fn segment_intersection(a: Point, b: Point, c: Point, d: Point) -> Option<Point> {
    let r = b - a;
    let s = d - c;
    let denom = r.cross(s);
    let qp = c - a;
    if denom.abs() < 1e-300 {
        if qp.cross(r).abs() > 1e-12 * (1.0 + r.norm() * qp.norm()) {
            return None;
        }
        // collinear: test endpoint containment
        for (p, x, y) in [(c, a, b), (d, a, b), (a, c, d), (b, c, d)] {
            if dist_point_segment(p, x, y) <= 1e-12 * (1.0 + (y - x).norm()) {
                return Some(p);
            }
        }
        return None;
    }
    let t = qp.cross(s) / denom;
    let u = qp.cross(r) / denom;
    if (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u) {
        Some(a + r * t)
    } else {
        None
    }
}

/// Point-in-convex-polygon (counterclockwise vertices), boundary inclusive.
pub fn polygon_contains(vertices: &[Point], p: Point) -> bool {
    let n = vertices.len();
    (0..n).all(|i| {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        (b - a).cross(p - a) >= 0.0
    })
}

/// Signed distance to the boundary of a convex polygon: negative inside.
pub fn polygon_signed_distance(vertices: &[Point], p: Point) -> f64 {
    let n = vertices.len();
    let mut max_line = f64::NEG_INFINITY;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let outward = (b - a).normalized().perp() * -1.0;
        max_line = max_line.max(outward.dot(p - a));
    }
    if max_line <= 0.0 {
        return max_line;
    }
    (0..n)
        .map(|i| dist_point_segment(p, vertices[i], vertices[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min)
}

#[derive(Debug, Clone, Copy)]
pub enum Core<'a> {
    Point(Point),
    Segment(Point, Point),
    Polygon(&'a [Point]),
}

impl Core<'_> {
    fn segments(&self) -> Vec<(Point, Point)> {
        match *self {
            Core::Point(p) => vec![(p, p)],
            Core::Segment(a, b) => vec![(a, b)],
            Core::Polygon(v) => (0..v.len()).map(|i| (v[i], v[(i + 1) % v.len()])).collect(),
        }
    }

    fn polygon(&self) -> Option<&[Point]> {
        match self {
            Core::Polygon(v) => Some(v),
            _ => None,
        }
    }

    fn sample_point(&self) -> Point {
        match *self {
            Core::Point(p) | Core::Segment(p, _) => p,
            Core::Polygon(v) => v[0],
        }
    }
}

fn seg_seg_closest(a: Point, b: Point, c: Point, d: Point) -> (f64, Point, Point) {
    if let Some(x) = segment_intersection(a, b, c, d) {
        return (0.0, x, x);
    }
    let mut best = (f64::INFINITY, a, c);
    for (p, from_first, x, y) in [(a, true, c, d), (b, true, c, d), (c, false, a, b), (d, false, a, b)] {
        let (q, _) = closest_on_segment(p, x, y);
        let dd = p.dist(q);
        if dd < best.0 {
            best = if from_first { (dd, p, q) } else { (dd, q, p) };
        }
    }
    best
}

/// Distance between two cores and a closest pair `(on_a, on_b)`. Zero when
/// the cores intersect (the pair is then a shared point).
pub fn core_distance(a: Core<'_>, b: Core<'_>) -> (f64, Point, Point) {
    if let Some(poly) = b.polygon() {
        let p = a.sample_point();
        if polygon_contains(poly, p) {
            return (0.0, p, p);
        }
    }
    if let Some(poly) = a.polygon() {
        let p = b.sample_point();
        if polygon_contains(poly, p) {
            return (0.0, p, p);
        }
    }
    let mut best = (f64::INFINITY, Point::ORIGIN, Point::ORIGIN);
    for (p, q) in a.segments() {
        for (r, s) in b.segments() {
            let cand = seg_seg_closest(p, q, r, s);
            if cand.0 < best.0 {
                best = cand;
                if best.0 == 0.0 {
                    return best;
                }
            }
        }
    }
    best
}

/// Separating-axis penetration of two convex polygons: positive gap when
/// separated along some edge normal, otherwise minus the smallest overlap.
pub fn polygon_sat_separation(a: &[Point], b: &[Point]) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for (poly, _other) in [(a, b), (b, a)] {
        let n = poly.len();
        for i in 0..n {
            let e = poly[(i + 1) % n] - poly[i];
            let axis = e.normalized().perp();
            let (amin, amax) = project(a, axis);
            let (bmin, bmax) = project(b, axis);
            let gap = (bmin - amax).max(amin - bmax);
            best = best.max(gap);
        }
    }
    best
}

fn project(poly: &[Point], axis: Point) -> (f64, f64) {
    poly.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
        let d = p.dot(axis);
        (lo.min(d), hi.max(d))
    })
}
