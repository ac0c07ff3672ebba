//! Finite boundary test sets for the weak semiconvexity check.

use std::f64::consts::{PI, TAU};

use crate::analysis::ComponentPartition;
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::scene::{Boundary, Location, Obstacle, Scene, Shape};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySample {
    pub point: Point,
    pub obstacle: usize,
    pub component: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub points: Vec<BoundarySample>,
    pub per_obstacle: usize,
    pub critical_included: bool,
}

/// Point at fraction `u ∈ [0, 1)` of the perimeter, counterclockwise.
pub fn perimeter_point(o: &Obstacle, u: f64) -> Point {
    match &o.shape {
        Shape::Disk { center, radius } => *center + Point::unit(u * TAU) * *radius,
        Shape::Polygon { vertices } => {
            let n = vertices.len();
            let lens: Vec<f64> = (0..n).map(|i| vertices[i].dist(vertices[(i + 1) % n])).collect();
            let mut s = u * lens.iter().sum::<f64>();
            for i in 0..n {
                if s <= lens[i] || i + 1 == n {
                    return vertices[i].lerp(vertices[(i + 1) % n], (s / lens[i]).min(1.0));
                }
                s -= lens[i];
            }
            unreachable!()
        }
        Shape::Capsule { a, b, radius } => {
            let axis = *b - *a;
            let len = axis.norm();
            let phi = axis.atan2();
            let normal = axis.normalized().perp() * *radius;
            let arc = PI * radius;
            let total = 2.0 * len + 2.0 * arc;
            let mut s = u * total;
            if s < len {
                return (*a - normal).lerp(*b - normal, s / len);
            }
            s -= len;
            if s < arc {
                return *b + Point::unit(phi - PI / 2.0 + s / radius) * *radius;
            }
            s -= arc;
            if s < len {
                return (*b + normal).lerp(*a + normal, s / len);
            }
            s -= len;
            *a + Point::unit(phi + PI / 2.0 + s / radius) * *radius
        }
    }
}

/// Circles (possibly of radius zero) whose common tangents locate the
/// decisive boundary points of an obstacle.
fn primitives(o: &Obstacle) -> Vec<(Point, f64)> {
    match &o.shape {
        Shape::Disk { center, radius } => vec![(*center, *radius)],
        Shape::Polygon { vertices } => vertices.iter().map(|v| (*v, 0.0)).collect(),
        Shape::Capsule { a, b, radius } => vec![(*a, *radius), (*b, *radius)],
    }
}

/// Contact points of the common tangent lines of two circles.
pub fn common_tangents(c1: Point, r1: f64, c2: Point, r2: f64) -> Vec<(Point, Point, Point)> {
    let dvec = c2 - c1;
    let dlen = dvec.norm();
    let mut out = Vec::new();
    if dlen == 0.0 {
        return out;
    }
    let u = dvec * (1.0 / dlen);
    let v = u.perp();
    for s in [1.0, -1.0] {
        let g = (s * r2 - r1) / dlen;
        if g.abs() > 1.0 {
            continue;
        }
        let h = (1.0 - g * g).max(0.0).sqrt();
        for sign in [1.0, -1.0] {
            let n = u * g + v * (sign * h);
            let p1 = c1 - n * r1;
            let p2 = c2 - n * (s * r2);
            out.push((n, p1, p2));
            if h == 0.0 {
                break;
            }
        }
    }
    out
}

/// Extent of an obstacle along direction `n`.
fn support_range(o: &Obstacle, n: Point) -> (f64, f64) {
    match &o.shape {
        Shape::Disk { center, radius } => (n.dot(*center) - radius, n.dot(*center) + radius),
        Shape::Polygon { vertices } => vertices.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(n.dot(*v)), hi.max(n.dot(*v)))
        }),
        Shape::Capsule { a, b, radius } => {
            let (pa, pb) = (n.dot(*a), n.dot(*b));
            (pa.min(pb) - radius, pa.max(pb) + radius)
        }
    }
}

fn supports(o: &Obstacle, n: Point, level: f64, eps: f64) -> bool {
    let (lo, hi) = support_range(o, n);
    lo >= level - eps || hi <= level + eps
}

fn critical_points(scene: &Scene, id: usize) -> Vec<Point> {
    let o = &scene.obstacles[id];
    let eps = scene.eps_space.max(1e-12) * 10.0;
    let mut pts = Vec::new();
    match &o.shape {
        Shape::Disk { center, radius } => {
            for k in 0..4 {
                pts.push(*center + Point::unit(k as f64 * PI / 2.0) * *radius);
            }
        }
        Shape::Polygon { vertices } => pts.extend(vertices.iter().copied()),
        Shape::Capsule { a, b, radius } => {
            let normal = (*b - *a).normalized().perp() * *radius;
            pts.extend([*a + normal, *a - normal, *b + normal, *b - normal]);
            for axis in [Point::new(1.0, 0.0), Point::new(0.0, 1.0)] {
                for dir in [axis, -axis] {
                    let c = if dir.dot(*a) >= dir.dot(*b) { *a } else { *b };
                    pts.push(c + dir * *radius);
                }
            }
        }
    }
    if let Boundary::Partial(arcs) = &o.boundary {
        if let Shape::Disk { center, radius } = &o.shape {
            for arc in arcs.arcs() {
                pts.push(*center + arc.start.unit() * *radius);
                pts.push(*center + arc.end().unit() * *radius);
            }
        }
    }
    for other in &scene.obstacles {
        if other.id == id {
            continue;
        }
        for (c1, r1) in primitives(o) {
            for (c2, r2) in primitives(other) {
                if r1 == 0.0 && r2 == 0.0 {
                    continue;
                }
                for (n, p1, _) in common_tangents(c1, r1, c2, r2) {
                    let level = n.dot(p1);
                    if supports(o, n, level, eps) && supports(other, n, level, eps) {
                        pts.push(p1);
                    }
                }
            }
        }
    }
    pts
}

/// Exterior points on the common supporting segments between obstacles of
/// different components, at a quarter, half and three quarters of the way
/// between the contacts. Shadows of measure zero (a segment between two
/// touching tips, say) lie on such segments and are missed by a raster.
pub fn tangent_probes(scene: &Scene, partition: &ComponentPartition) -> Vec<Point> {
    let eps = scene.eps_space.max(1e-12) * 10.0;
    let mut out: Vec<Point> = Vec::new();
    for (i, a) in scene.obstacles.iter().enumerate() {
        for b in &scene.obstacles[i + 1..] {
            if partition.component_of[a.id] == partition.component_of[b.id] {
                continue;
            }
            for (c1, r1) in primitives(a) {
                for (c2, r2) in primitives(b) {
                    for (n, p1, p2) in common_tangents(c1, r1, c2, r2) {
                        let level = n.dot(p1);
                        if !(supports(a, n, level, eps) && supports(b, n, level, eps)) {
                            continue;
                        }
                        for t in [0.25, 0.5, 0.75] {
                            let q = p1.lerp(p2, t);
                            if !scene.in_closure(q) && out.iter().all(|o| o.dist(q) > eps) {
                                out.push(q);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Boundary test points: `n_per_obstacle` uniform perimeter samples per
/// obstacle plus, optionally, vertices, common-tangent contacts, axis
/// extremes and partial-interval endpoints. Points inside another obstacle
/// are not on `∂E` and are dropped.
pub fn boundary_samples(
    scene: &Scene,
    partition: &ComponentPartition,
    n_per_obstacle: usize,
    include_critical: bool,
) -> Result<SampleSet> {
    if n_per_obstacle < 16 {
        return Err(Error::InvalidArgument("at least 16 samples per obstacle".into()));
    }
    let dedup = scene.eps_space.max(1e-12) * 100.0;
    let mut points = Vec::new();
    for o in &scene.obstacles {
        let mut mine: Vec<Point> = (0..n_per_obstacle)
            .map(|k| perimeter_point(o, k as f64 / n_per_obstacle as f64))
            .collect();
        if include_critical {
            for p in critical_points(scene, o.id) {
                if o.locate(p, scene.eps_space) == Location::Boundary && mine.iter().all(|q| q.dist(p) > dedup) {
                    mine.push(p);
                }
            }
        }
        for p in mine {
            let buried = scene
                .obstacles
                .iter()
                .any(|other| other.id != o.id && other.locate(p, scene.eps_space) == Location::Interior);
            if !buried {
                points.push(BoundarySample {
                    point: p,
                    obstacle: o.id,
                    component: partition.component_of[o.id],
                });
            }
        }
    }
    Ok(SampleSet {
        points,
        per_obstacle: n_per_obstacle,
        critical_included: include_critical,
    })
}
