//! Ray–obstacle intersection under open/closed/partial boundary semantics,
//! and a brute-force angular sampling oracle.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geom::{Point, Ray};
use crate::scene::{Location, Obstacle, Scene, Shape};

/// How the line of an open ray meets the closure of a convex shape,
/// ignoring boundary membership. Parameters are along the ray; only
/// contacts with some `t > eps` are reported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Contact {
    Miss,
    /// The ray touches only boundary points, for parameters in `[t_min, t_max]`.
    Graze {
        t_min: f64,
        t_max: f64,
    },
    /// The ray passes through the interior for `t` in `(t_enter, t_exit)`.
    Cross {
        t_enter: f64,
        t_exit: f64,
    },
}

fn disk_contact(ray: &Ray, center: Point, radius: f64, eps: f64) -> Contact {
    let d = ray.dir();
    let w = center - ray.origin;
    let t0 = w.dot(d);
    let h = w.cross(d).abs();
    if h > radius + eps {
        return Contact::Miss;
    }
    if (h - radius).abs() <= eps {
        return if t0 > eps {
            Contact::Graze { t_min: t0, t_max: t0 }
        } else {
            Contact::Miss
        };
    }
    let half = (radius * radius - h * h).sqrt();
    let (t1, t2) = (t0 - half, t0 + half);
    if t2 <= eps {
        Contact::Miss
    } else {
        Contact::Cross {
            t_enter: t1,
            t_exit: t2,
        }
    }
}

fn polygon_contact(ray: &Ray, vertices: &[Point], eps: f64) -> Contact {
    let d = ray.dir();
    let o = ray.origin;
    let sides: Vec<f64> = vertices.iter().map(|v| d.cross(*v - o)).collect();
    let max_s = sides.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min_s = sides.iter().copied().fold(f64::INFINITY, f64::min);
    if min_s > eps || max_s < -eps {
        return Contact::Miss;
    }
    if max_s > eps && min_s < -eps {
        let n = vertices.len();
        let (mut t_enter, mut t_exit) = (f64::NEG_INFINITY, f64::INFINITY);
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let outward = -(b - a).normalized().perp();
            let denom = outward.dot(d);
            let num = outward.dot(o - a);
            if denom.abs() < 1e-15 {
                if num > 0.0 {
                    return Contact::Miss;
                }
                continue;
            }
            let t = -num / denom;
            if denom < 0.0 {
                t_enter = t_enter.max(t);
            } else {
                t_exit = t_exit.min(t);
            }
        }
        if t_exit <= eps || t_enter > t_exit {
            return Contact::Miss;
        }
        return Contact::Cross { t_enter, t_exit };
    }
    // the line supports the polygon: contact is a vertex or an edge
    let (mut t_min, mut t_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for (v, s) in vertices.iter().zip(&sides) {
        if s.abs() <= eps {
            let t = d.dot(*v - o);
            t_min = t_min.min(t);
            t_max = t_max.max(t);
        }
    }
    if t_max <= eps {
        Contact::Miss
    } else {
        Contact::Graze { t_min, t_max }
    }
}

fn capsule_rect(a: Point, b: Point, radius: f64) -> [Point; 4] {
    let n = (b - a).normalized().perp() * radius;
    [a - n, b - n, b + n, a + n]
}

fn combine(parts: &[Contact]) -> Contact {
    let mut cross: Option<(f64, f64)> = None;
    let mut graze: Option<(f64, f64)> = None;
    for c in parts {
        match *c {
            Contact::Miss => {}
            Contact::Cross { t_enter, t_exit } => {
                cross = Some(match cross {
                    None => (t_enter, t_exit),
                    Some((lo, hi)) => (lo.min(t_enter), hi.max(t_exit)),
                });
            }
            Contact::Graze { t_min, t_max } => {
                graze = Some(match graze {
                    None => (t_min, t_max),
                    Some((lo, hi)) => (lo.min(t_min), hi.max(t_max)),
                });
            }
        }
    }
    match (cross, graze) {
        (Some((t_enter, t_exit)), _) => Contact::Cross { t_enter, t_exit },
        (None, Some((t_min, t_max))) => Contact::Graze { t_min, t_max },
        (None, None) => Contact::Miss,
    }
}

/// Geometric contact of the open ray with the closure of `o`.
pub fn contact(ray: &Ray, o: &Obstacle, eps_space: f64) -> Contact {
    match &o.shape {
        Shape::Disk { center, radius } => disk_contact(ray, *center, *radius, eps_space),
        Shape::Polygon { vertices } => polygon_contact(ray, vertices, eps_space),
        Shape::Capsule { a, b, radius } => {
            let rect = capsule_rect(*a, *b, *radius);
            combine(&[
                disk_contact(ray, *a, *radius, eps_space),
                disk_contact(ray, *b, *radius, eps_space),
                polygon_contact(ray, &rect, eps_space),
            ])
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct HitResult {
    pub hit: bool,
    pub t_first: Option<f64>,
    pub point: Option<Point>,
    pub obstacle_id: Option<usize>,
}

impl HitResult {
    pub fn miss() -> Self {
        HitResult::default()
    }

    fn at(ray: &Ray, t: f64, id: usize) -> Self {
        HitResult {
            hit: true,
            t_first: Some(t),
            point: Some(ray.at(t)),
            obstacle_id: Some(id),
        }
    }
}

/// Whether the open ray meets the point set of `o`.
///
/// `t_first` is the infimum of member parameters. When that infimum is the
/// excluded origin itself (the ray starts on or inside `o`), `eps_space` is
/// reported instead so that `t_first > 0` always holds.
pub fn ray_hits_obstacle(ray: &Ray, o: &Obstacle, eps_space: f64, eps_angle: f64) -> HitResult {
    match contact(ray, o, eps_space) {
        Contact::Miss => HitResult::miss(),
        Contact::Cross { t_enter, .. } => HitResult::at(ray, t_enter.max(eps_space), o.id),
        Contact::Graze { t_min, .. } => {
            let t = t_min.max(eps_space);
            let member = match &o.shape {
                Shape::Disk { .. } => o.boundary_member(ray.at(t_min), eps_angle),
                _ => o.boundary.is_closed(),
            };
            if member {
                HitResult::at(ray, t, o.id)
            } else {
                HitResult::miss()
            }
        }
    }
}

/// Nearest hit over all obstacles; ties within `eps_space` go to the lower id.
pub fn first_hit(ray: &Ray, scene: &Scene) -> HitResult {
    let mut best = HitResult::miss();
    for o in &scene.obstacles {
        let h = ray_hits_obstacle(ray, o, scene.eps_space, scene.eps_angle);
        if !h.hit {
            continue;
        }
        let t = h.t_first.unwrap_or(f64::INFINITY);
        match best.t_first {
            Some(bt) if t >= bt - scene.eps_space => {}
            _ => best = h,
        }
    }
    best
}

/// Directions from `x` tangent to, or through a vertex of, each obstacle.
pub fn critical_directions(scene: &Scene, x: Point) -> Vec<f64> {
    let mut out = Vec::new();
    let disk = |c: Point, r: f64, out: &mut Vec<f64>| {
        let w = c - x;
        let d = w.norm();
        let phi = w.atan2();
        if d > r {
            let half = (r / d).asin();
            out.push(phi - half);
            out.push(phi + half);
        } else {
            out.push(phi - TAU / 4.0);
            out.push(phi + TAU / 4.0);
        }
    };
    for o in &scene.obstacles {
        match &o.shape {
            Shape::Disk { center, radius } => disk(*center, *radius, &mut out),
            Shape::Polygon { vertices } => {
                out.extend(vertices.iter().map(|v| (*v - x).atan2()));
            }
            Shape::Capsule { a, b, radius } => {
                disk(*a, *radius, &mut out);
                disk(*b, *radius, &mut out);
                let n = (*b - *a).normalized().perp() * *radius;
                for p in [*a + n, *a - n, *b + n, *b - n] {
                    out.push((p - x).atan2());
                }
            }
        }
    }
    for t in out.iter_mut() {
        *t = t.rem_euclid(TAU);
    }
    out
}

/// Ground-truth shadow test by ray casting alone.
///
/// Casts `n_dirs` uniformly spaced rays plus every critical direction and the
/// midpoint between each pair of consecutive critical directions. Any free
/// gap is bounded by critical directions and therefore contains one of those
/// midpoints, so narrow gaps between uniform samples are not missed.
pub fn oracle_shadowed(scene: &Scene, x: Point, n_dirs: usize) -> Result<bool> {
    if n_dirs < 4 {
        return Err(Error::InvalidArgument("n_dirs must be at least 4".into()));
    }
    if let Some(o) = scene
        .obstacles
        .iter()
        .find(|o| o.locate(x, scene.eps_space) != Location::Exterior)
    {
        return Err(Error::InsideObstacle {
            point: x,
            obstacle: o.id,
        });
    }
    let mut crit = critical_directions(scene, x);
    crit.sort_by(f64::total_cmp);
    let mut probes = crit.clone();
    for i in 0..crit.len() {
        let a = crit[i];
        let b = if i + 1 == crit.len() {
            crit[0] + TAU
        } else {
            crit[i + 1]
        };
        probes.push(0.5 * (a + b));
    }
    let hits = |theta: f64| first_hit(&Ray::from_radians(x, theta), scene).hit;
    if !probes.into_iter().all(hits) {
        return Ok(false);
    }
    Ok((0..n_dirs).all(|k| hits(k as f64 * TAU / n_dirs as f64)))
}
