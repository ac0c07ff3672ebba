//! Angular footprints of obstacles and the arc-coverage shadow decision.
//!
//! A point `x` outside `E` is a shadow point exactly when the union of the
//! footprints of all obstacles seen from `x` is the whole circle of
//! directions.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::analysis::ComponentPartition;
use crate::arc::{Arc, ArcSet};
use crate::error::{Error, Result};
use crate::geom::{Angle, Point, Ray};
use crate::raycast::first_hit;
use crate::scene::{Location, Obstacle, Scene, Shape};
use crate::shape::closest_on_segment;

/// Wraps into `(-π, π]`.
fn wrap_pi(t: f64) -> f64 {
    let w = t.rem_euclid(std::f64::consts::TAU);
    if w > PI {
        w - std::f64::consts::TAU
    } else {
        w
    }
}

/// Smallest arc containing the given directions, all within a half-circle
/// of `reference`.
fn angular_hull(reference: f64, dirs: impl IntoIterator<Item = f64>, closed: bool) -> Arc {
    let (lo, hi) = dirs
        .into_iter()
        .map(|d| wrap_pi(d - reference))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), o| (lo.min(o), hi.max(o)));
    Arc::from_width(reference + lo, hi - lo, closed, closed)
}

/// Directions in which the open ray from `x` meets `o`.
///
/// For `x` outside `o` this is the cone of tangents; for `x` on the boundary
/// it is the half-circle (or vertex wedge) of inward directions, whose
/// bounding rays are closed only when they run along member boundary points.
pub fn hit_arc(x: Point, o: &Obstacle, eps_angle: f64, eps_space: f64) -> Result<Arc> {
    match o.locate(x, eps_space) {
        Location::Interior => Err(Error::InsideObstacle {
            point: x,
            obstacle: o.id,
        }),
        Location::Exterior => Ok(exterior_arc(x, o, eps_angle)),
        Location::Boundary => Ok(boundary_arc(x, o, eps_space)),
    }
}

fn exterior_arc(x: Point, o: &Obstacle, eps_angle: f64) -> Arc {
    match &o.shape {
        Shape::Disk { center, radius } => {
            let w = *center - x;
            let d = w.norm();
            let phi = w.atan2();
            let half = (radius / d).asin();
            let reach = (d * d - radius * radius).max(0.0).sqrt();
            let lo = phi - half;
            let hi = phi + half;
            let start_closed = o.boundary_member(x + Point::unit(lo) * reach, eps_angle);
            let end_closed = o.boundary_member(x + Point::unit(hi) * reach, eps_angle);
            Arc::from_width(lo, 2.0 * half, start_closed, end_closed)
        }
        Shape::Polygon { vertices } => {
            let centroid = vertices.iter().fold(Point::ORIGIN, |acc, v| acc + *v) * (1.0 / vertices.len() as f64);
            angular_hull(
                (centroid - x).atan2(),
                vertices.iter().map(|v| (*v - x).atan2()),
                o.boundary.is_closed(),
            )
        }
        Shape::Capsule { a, b, radius } => {
            let mid = a.lerp(*b, 0.5);
            let mut dirs = Vec::with_capacity(4);
            for c in [*a, *b] {
                let w = c - x;
                let d = w.norm();
                let half = if d > *radius { (radius / d).asin() } else { FRAC_PI_2 };
                dirs.push(w.atan2() - half);
                dirs.push(w.atan2() + half);
            }
            angular_hull((mid - x).atan2(), dirs, o.boundary.is_closed())
        }
    }
}

fn boundary_arc(x: Point, o: &Obstacle, eps_space: f64) -> Arc {
    let closed = o.boundary.is_closed();
    match &o.shape {
        Shape::Disk { center, .. } => {
            let phi = (*center - x).atan2();
            Arc::from_width(phi - FRAC_PI_2, PI, false, false)
        }
        Shape::Polygon { vertices } => {
            let n = vertices.len();
            if let Some(i) = (0..n).find(|&i| vertices[i].dist(x) <= eps_space) {
                let next = (vertices[(i + 1) % n] - vertices[i]).atan2();
                let prev = (vertices[(i + n - 1) % n] - vertices[i]).atan2();
                return Arc::new(Angle::wrap(next), Angle::wrap(prev), closed, closed);
            }
            let i = (0..n)
                .min_by(|&i, &j| {
                    let di = crate::shape::dist_point_segment(x, vertices[i], vertices[(i + 1) % n]);
                    let dj = crate::shape::dist_point_segment(x, vertices[j], vertices[(j + 1) % n]);
                    di.total_cmp(&dj)
                })
                .unwrap_or(0);
            let e = (vertices[(i + 1) % n] - vertices[i]).atan2();
            Arc::from_width(e, PI, closed, closed)
        }
        Shape::Capsule { a, b, .. } => {
            let (q, _) = closest_on_segment(x, *a, *b);
            let n = (q - x).atan2();
            let axis = *b - *a;
            let len = axis.norm();
            let s = (x - *a).dot(axis) / (len * len);
            let on_edge = s >= -eps_space / len && s <= 1.0 + eps_space / len;
            let flag = |u: f64| {
                if !(closed && on_edge) {
                    return false;
                }
                let along = Point::unit(u).dot(axis) / len;
                let remaining = if along > 0.0 { (1.0 - s) * len } else { s * len };
                remaining > eps_space
            };
            Arc::from_width(n - FRAC_PI_2, PI, flag(n - FRAC_PI_2), flag(n + FRAC_PI_2))
        }
    }
}

/// Union of the footprints of all obstacles seen from `x`.
pub fn direction_cover(scene: &Scene, x: Point) -> Result<ArcSet> {
    let mut arcs = Vec::with_capacity(scene.len());
    for o in &scene.obstacles {
        arcs.push(hit_arc(x, o, scene.eps_angle, scene.eps_space)?);
    }
    Ok(ArcSet::from_arcs(arcs, scene.eps_angle))
}

/// Footprint union restricted to a subset of obstacles.
pub fn cover_of(scene: &Scene, x: Point, ids: &[usize]) -> Result<ArcSet> {
    let mut arcs = Vec::with_capacity(ids.len());
    for &id in ids {
        arcs.push(hit_arc(x, &scene.obstacles[id], scene.eps_angle, scene.eps_space)?);
    }
    Ok(ArcSet::from_arcs(arcs, scene.eps_angle))
}

/// Shadow decision at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub shadowed: bool,
    /// A direction whose open ray misses the whole scene; present iff not shadowed.
    pub free_direction: Option<Angle>,
    pub cover: ArcSet,
}

/// Decides whether some open ray from `x` avoids `E`. `x` may be exterior or
/// on the boundary of `E`; interior points are rejected.
///
/// The returned witness is re-checked with the ray caster.
pub fn is_semiconvex_at(scene: &Scene, x: Point) -> Result<Verdict> {
    let cover = direction_cover(scene, x)?;
    let gaps = cover.complement(scene.eps_angle);
    if gaps.is_empty() {
        return Ok(Verdict {
            shadowed: true,
            free_direction: None,
            cover,
        });
    }
    let mut candidates: Vec<&Arc> = gaps.arcs().iter().collect();
    candidates.sort_by(|a, b| b.width.total_cmp(&a.width));
    for gap in &candidates {
        let dir = gap.mid();
        if !first_hit(&Ray::new(x, dir), scene).hit {
            return Ok(Verdict {
                shadowed: false,
                free_direction: Some(dir),
                cover,
            });
        }
    }
    Err(Error::WitnessRejected(candidates[0].mid().radians()))
}

/// Whether every ray from `x` meeting component `comp` also meets some other
/// component, decided by footprint containment.
pub fn is_projected(scene: &Scene, partition: &ComponentPartition, comp: usize, x: Point) -> Result<bool> {
    let group = partition.groups.get(comp).ok_or(Error::UnknownComponent(comp))?;
    let others: Vec<usize> = partition
        .groups
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != comp)
        .flat_map(|(_, g)| g.iter().copied())
        .collect();
    let mine = cover_of(scene, x, group)?;
    let rest = cover_of(scene, x, &others)?;
    Ok(rest.contains_set(&mine, scene.eps_angle))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::components;
    use crate::scene::Boundary;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, SQRT_2};

    fn disk(c: (f64, f64), r: f64, b: Boundary) -> Obstacle {
        Obstacle::disk(Point::new(c.0, c.1), r, b).unwrap()
    }

    #[test]
    fn closed_and_open_disk_footprints() {
        let a = hit_arc(Point::ORIGIN, &disk((2.0, 0.0), 1.0, Boundary::Closed), 1e-9, 1e-9).unwrap();
        assert!((a.start.radians() - (2.0 * PI - FRAC_PI_6)).abs() < 1e-12);
        assert!((a.width - 2.0 * FRAC_PI_6).abs() < 1e-12);
        assert!(a.start_closed && a.end_closed);
        let b = hit_arc(Point::ORIGIN, &disk((2.0, 0.0), 1.0, Boundary::Open), 1e-9, 1e-9).unwrap();
        assert!(!b.start_closed && !b.end_closed);
    }

    #[test]
    fn boundary_footprint_is_open_half_circle() {
        for mode in [Boundary::Open, Boundary::Closed] {
            let x = Point::new(2.0 - SQRT_2, 0.0);
            let a = hit_arc(x, &disk((2.0, 0.0), SQRT_2, mode), 1e-9, 1e-9).unwrap();
            assert!((a.start.radians() - 1.5 * PI).abs() < 1e-12);
            assert!((a.width - PI).abs() < 1e-12);
            assert!(!a.start_closed && !a.end_closed);
        }
    }

    #[test]
    fn interior_point_is_rejected() {
        assert!(hit_arc(Point::new(2.0, 0.0), &disk((2.0, 0.0), 1.0, Boundary::Open), 1e-9, 1e-9).is_err());
    }

    #[test]
    fn polygon_edge_point_footprint() {
        let r = Obstacle::rect(0.0, 2.0, 0.0, 1.0, Boundary::Closed).unwrap();
        let a = hit_arc(Point::new(1.0, 0.0), &r, 1e-9, 1e-9).unwrap();
        assert!(a.start.radians().abs() < 1e-12 && (a.width - PI).abs() < 1e-12);
        assert!(a.start_closed && a.end_closed);
        let corner = hit_arc(Point::new(0.0, 0.0), &r, 1e-9, 1e-9).unwrap();
        assert!((corner.width - FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn capsule_edge_point_closure() {
        let c = Obstacle::capsule(Point::new(0.0, 0.0), Point::new(2.0, 0.0), 0.5, Boundary::Closed).unwrap();
        let a = hit_arc(Point::new(1.0, -0.5), &c, 1e-9, 1e-9).unwrap();
        assert!(a.start_closed && a.end_closed);
        // the junction: one side continues along the edge, the other leaves along the cap
        let j = hit_arc(Point::new(2.0, -0.5), &c, 1e-9, 1e-9).unwrap();
        assert!(!j.start_closed && j.end_closed);
    }

    fn compass(b: Boundary) -> Scene {
        Scene::new(
            [(2.0, 0.0), (0.0, 2.0), (-2.0, 0.0), (0.0, -2.0)]
                .into_iter()
                .map(|c| disk(c, SQRT_2, b.clone()))
                .collect(),
        )
    }

    #[test]
    fn compass_cover() {
        assert!(direction_cover(&compass(Boundary::Closed), Point::ORIGIN)
            .unwrap()
            .is_full(1e-9));
        let open = direction_cover(&compass(Boundary::Open), Point::ORIGIN).unwrap();
        let comp = open.complement(1e-9);
        assert_eq!(comp.arcs().len(), 4);
        for (k, a) in comp.arcs().iter().enumerate() {
            assert_eq!(a.width, 0.0);
            assert!((a.start.radians() - (FRAC_PI_4 + k as f64 * FRAC_PI_2)).abs() < 1e-9);
        }
        let v = is_semiconvex_at(&compass(Boundary::Open), Point::ORIGIN).unwrap();
        assert!(!v.shadowed);
        assert!(v.free_direction.is_some());
        assert!(direction_cover(&Scene::default(), Point::ORIGIN).unwrap().is_empty());
    }

    #[test]
    fn single_obstacle_never_shadows() {
        let s = Scene::new(vec![Obstacle::rect(-1.0, 1.0, 1.0, 2.0, Boundary::Closed).unwrap()]);
        let v = is_semiconvex_at(&s, Point::ORIGIN).unwrap();
        assert!(!v.shadowed);
        let w = v.free_direction.unwrap();
        assert!(!first_hit(&Ray::new(Point::ORIGIN, w), &s).hit);
    }

    #[test]
    fn projection_examples() {
        let s = Scene::new(vec![
            disk((2.0, 0.0), 0.5, Boundary::Open),
            disk((4.0, 0.0), 1.5, Boundary::Open),
        ]);
        let p = components(&s);
        assert_eq!(p.len(), 2);
        assert!(is_projected(&s, &p, 0, Point::ORIGIN).unwrap());
        assert!(!is_projected(&s, &p, 1, Point::ORIGIN).unwrap());
        assert!(is_projected(&s, &p, 5, Point::ORIGIN).is_err());
        let t = Scene::new(vec![
            disk((2.0, 0.0), 0.5, Boundary::Closed),
            disk((-2.0, 0.0), 0.5, Boundary::Closed),
        ]);
        let p = components(&t);
        assert!(!is_projected(&t, &p, 0, Point::ORIGIN).unwrap());
        assert!(!is_projected(&t, &p, 1, Point::ORIGIN).unwrap());
    }
}
