//! Convex obstacles with open, closed or partial boundaries, and scenes.

use crate::arc::{ArcSet, DEFAULT_EPS_ANGLE};
use crate::error::{Error, Result};
use crate::geom::{Angle, Point};
use crate::shape::{self, Core};

pub const DEFAULT_EPS_SPACE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Disk {
        center: Point,
        radius: f64,
    },
    /// Counterclockwise, strictly convex, at least three vertices.
    Polygon {
        vertices: Vec<Point>,
    },
    Capsule {
        a: Point,
        b: Point,
        radius: f64,
    },
}

/// Which boundary points belong to the obstacle.
#[derive(Debug, Clone, PartialEq)]
pub enum Boundary {
    Open,
    Closed,
    /// Disks only: boundary points whose polar angle about the center lies in
    /// the set are members.
    Partial(ArcSet),
}

impl Boundary {
    pub fn is_open(&self) -> bool {
        matches!(self, Boundary::Open)
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Boundary::Closed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Obstacle {
    pub id: usize,
    pub shape: Shape,
    pub boundary: Boundary,
}

impl Obstacle {
    pub fn disk(center: Point, radius: f64, boundary: Boundary) -> Result<Self> {
        Obstacle::new(0, Shape::Disk { center, radius }, boundary)
    }

    pub fn polygon(vertices: Vec<Point>, boundary: Boundary) -> Result<Self> {
        Obstacle::new(0, Shape::Polygon { vertices }, boundary)
    }

    /// Axis-aligned rectangle `[x0, x1] × [y0, y1]`.
    pub fn rect(x0: f64, x1: f64, y0: f64, y1: f64, boundary: Boundary) -> Result<Self> {
        Obstacle::polygon(
            vec![
                Point::new(x0, y0),
                Point::new(x1, y0),
                Point::new(x1, y1),
                Point::new(x0, y1),
            ],
            boundary,
        )
    }

    pub fn capsule(a: Point, b: Point, radius: f64, boundary: Boundary) -> Result<Self> {
        Obstacle::new(0, Shape::Capsule { a, b, radius }, boundary)
    }

    /// Validates the shape; clockwise polygons are reoriented.
    pub fn new(id: usize, shape: Shape, boundary: Boundary) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidObstacle {
            index: id,
            reason: reason.to_string(),
        };
        let shape = match shape {
            Shape::Disk { center, radius } => {
                if !center.is_finite() || !radius.is_finite() {
                    return Err(bad("non-finite disk"));
                }
                if radius <= 0.0 {
                    return Err(bad("disk radius must be positive"));
                }
                Shape::Disk { center, radius }
            }
            Shape::Polygon { mut vertices } => {
                if vertices.len() < 3 {
                    return Err(bad("polygon needs at least three vertices"));
                }
                if vertices.iter().any(|v| !v.is_finite()) {
                    return Err(bad("non-finite polygon vertex"));
                }
                let n = vertices.len();
                let area2: f64 = (0..n).map(|i| vertices[i].cross(vertices[(i + 1) % n])).sum();
                if area2 < 0.0 {
                    vertices.reverse();
                }
                let scale = vertices.iter().map(|v| v.norm()).fold(1.0, f64::max);
                for i in 0..n {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % n];
                    let c = vertices[(i + 2) % n];
                    let turn = (b - a).cross(c - b);
                    if turn <= 1e-12 * scale * scale {
                        return Err(bad("polygon is not strictly convex"));
                    }
                }
                // a strictly convex turn sequence must wind exactly once
                let winding: f64 = (0..n)
                    .map(|i| {
                        let e0 = vertices[(i + 1) % n] - vertices[i];
                        let e1 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
                        e0.cross(e1).atan2(e0.dot(e1))
                    })
                    .sum();
                if (winding - std::f64::consts::TAU).abs() > 1e-6 {
                    return Err(bad("polygon is not simple"));
                }
                Shape::Polygon { vertices }
            }
            Shape::Capsule { a, b, radius } => {
                if !a.is_finite() || !b.is_finite() || !radius.is_finite() {
                    return Err(bad("non-finite capsule"));
                }
                if radius <= 0.0 {
                    return Err(bad("capsule radius must be positive"));
                }
                if a == b {
                    return Err(bad("capsule with coincident ends; use a disk"));
                }
                Shape::Capsule { a, b, radius }
            }
        };
        if matches!(boundary, Boundary::Partial(_)) && !matches!(shape, Shape::Disk { .. }) {
            return Err(bad("partial boundary is only supported on disks"));
        }
        Ok(Obstacle { id, shape, boundary })
    }

    pub fn with_boundary(&self, boundary: Boundary) -> Obstacle {
        Obstacle {
            boundary,
            ..self.clone()
        }
    }

    pub fn core(&self) -> (Core<'_>, f64) {
        match &self.shape {
            Shape::Disk { center, radius } => (Core::Point(*center), *radius),
            Shape::Polygon { vertices } => (Core::Polygon(vertices), 0.0),
            Shape::Capsule { a, b, radius } => (Core::Segment(*a, *b), *radius),
        }
    }

    pub fn is_smooth(&self) -> bool {
        !matches!(self.shape, Shape::Polygon { .. })
    }

    /// Signed distance from `p` to the boundary; negative inside.
    pub fn signed_distance(&self, p: Point) -> f64 {
        match &self.shape {
            Shape::Disk { center, radius } => p.dist(*center) - radius,
            Shape::Polygon { vertices } => shape::polygon_signed_distance(vertices, p),
            Shape::Capsule { a, b, radius } => shape::dist_point_segment(p, *a, *b) - radius,
        }
    }

    pub fn locate(&self, p: Point, eps_space: f64) -> Location {
        let d = self.signed_distance(p);
        if d < -eps_space {
            Location::Interior
        } else if d <= eps_space {
            Location::Boundary
        } else {
            Location::Exterior
        }
    }

    /// Whether a point already known to be on the boundary is a member.
    pub fn boundary_member(&self, p: Point, eps_angle: f64) -> bool {
        match &self.boundary {
            Boundary::Open => false,
            Boundary::Closed => true,
            Boundary::Partial(arcs) => match &self.shape {
                Shape::Disk { center, .. } => arcs.contains(Angle::wrap((p - *center).atan2()), eps_angle),
                _ => false,
            },
        }
    }

    pub fn contains(&self, p: Point, eps_space: f64, eps_angle: f64) -> bool {
        match self.locate(p, eps_space) {
            Location::Interior => true,
            Location::Boundary => self.boundary_member(p, eps_angle),
            Location::Exterior => false,
        }
    }

    pub fn bounds(&self) -> (Point, Point) {
        match &self.shape {
            Shape::Disk { center, radius } => (
                Point::new(center.x - radius, center.y - radius),
                Point::new(center.x + radius, center.y + radius),
            ),
            Shape::Polygon { vertices } => vertices.iter().fold(
                (
                    Point::new(f64::INFINITY, f64::INFINITY),
                    Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
                ),
                |(lo, hi), v| {
                    (
                        Point::new(lo.x.min(v.x), lo.y.min(v.y)),
                        Point::new(hi.x.max(v.x), hi.y.max(v.y)),
                    )
                },
            ),
            Shape::Capsule { a, b, radius } => (
                Point::new(a.x.min(b.x) - radius, a.y.min(b.y) - radius),
                Point::new(a.x.max(b.x) + radius, a.y.max(b.y) + radius),
            ),
        }
    }

    /// Image under the similarity `p ↦ center + λ·R(phi)·(p − center) + shift`.
    pub fn transformed(&self, phi: f64, scale: f64, center: Point, shift: Point) -> Obstacle {
        let f = |p: Point| center + (p - center).rotate(phi) * scale + shift;
        let shape = match &self.shape {
            Shape::Disk { center: c, radius } => Shape::Disk {
                center: f(*c),
                radius: radius * scale,
            },
            Shape::Polygon { vertices } => Shape::Polygon {
                vertices: vertices.iter().map(|v| f(*v)).collect(),
            },
            Shape::Capsule { a, b, radius } => Shape::Capsule {
                a: f(*a),
                b: f(*b),
                radius: radius * scale,
            },
        };
        let boundary = match &self.boundary {
            Boundary::Partial(arcs) => Boundary::Partial(arcs.rotated(phi, DEFAULT_EPS_ANGLE)),
            b => b.clone(),
        };
        Obstacle {
            id: self.id,
            shape,
            boundary,
        }
    }
}

/// Axis-aligned rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    pub min: Point,
    pub max: Point,
}

impl BBox {
    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn diagonal(&self) -> f64 {
        (self.max - self.min).norm()
    }
}

/// The set E: a finite union of convex obstacles. Obstacle ids equal their
/// position in the list.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub obstacles: Vec<Obstacle>,
    pub eps_angle: f64,
    pub eps_space: f64,
}

impl Default for Scene {
    fn default() -> Self {
        Scene::new(Vec::new())
    }
}

impl Scene {
    pub fn new(obstacles: Vec<Obstacle>) -> Self {
        Scene::with_tolerances(obstacles, DEFAULT_EPS_ANGLE, DEFAULT_EPS_SPACE)
    }

    pub fn with_tolerances(mut obstacles: Vec<Obstacle>, eps_angle: f64, eps_space: f64) -> Self {
        for (i, o) in obstacles.iter_mut().enumerate() {
            o.id = i;
        }
        Scene {
            obstacles,
            eps_angle,
            eps_space,
        }
    }

    pub fn len(&self) -> usize {
        self.obstacles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.obstacles.is_empty()
    }

    /// Bounding box of all obstacle closures, padded by 10% per side.
    /// An empty scene gets `[-1, 1]²`.
    pub fn bbox(&self) -> BBox {
        if self.obstacles.is_empty() {
            return BBox {
                min: Point::new(-1.0, -1.0),
                max: Point::new(1.0, 1.0),
            };
        }
        let (lo, hi) = self.obstacles.iter().map(Obstacle::bounds).fold(
            (
                Point::new(f64::INFINITY, f64::INFINITY),
                Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
            ),
            |(lo, hi), (a, b)| {
                (
                    Point::new(lo.x.min(a.x), lo.y.min(a.y)),
                    Point::new(hi.x.max(b.x), hi.y.max(b.y)),
                )
            },
        );
        let pad = Point::new((hi.x - lo.x) * 0.1, (hi.y - lo.y) * 0.1);
        BBox {
            min: lo - pad,
            max: hi + pad,
        }
    }

    /// The first obstacle with `p` in its interior, if any.
    pub fn interior_obstacle(&self, p: Point) -> Option<usize> {
        self.obstacles
            .iter()
            .find(|o| o.locate(p, self.eps_space) == Location::Interior)
            .map(|o| o.id)
    }

    /// `p` is in the closure of some obstacle.
    pub fn in_closure(&self, p: Point) -> bool {
        self.obstacles
            .iter()
            .any(|o| o.locate(p, self.eps_space) != Location::Exterior)
    }

    pub fn contains(&self, p: Point) -> bool {
        self.obstacles
            .iter()
            .any(|o| o.contains(p, self.eps_space, self.eps_angle))
    }

    pub fn with_boundary(&self, boundary: Boundary) -> Scene {
        Scene {
            obstacles: self
                .obstacles
                .iter()
                .map(|o| o.with_boundary(boundary.clone()))
                .collect(),
            ..self.clone()
        }
    }

    pub fn transformed(&self, phi: f64, scale: f64, center: Point, shift: Point) -> Scene {
        Scene {
            obstacles: self
                .obstacles
                .iter()
                .map(|o| o.transformed(phi, scale, center, shift))
                .collect(),
            ..self.clone()
        }
    }

    pub fn without(&self, id: usize) -> Scene {
        let obstacles = self.obstacles.iter().filter(|o| o.id != id).cloned().collect();
        Scene::with_tolerances(obstacles, self.eps_angle, self.eps_space)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_nonconvex_polygon() {
        let v = vec![
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(1.0, 0.5),
            Point::new(2.0, 2.0),
            Point::new(0.0, 2.0),
        ];
        assert!(Obstacle::polygon(v, Boundary::Closed).is_err());
    }

    #[test]
    fn rejects_collinear_and_degenerate() {
        let v = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(1.0, 1.0),
        ];
        assert!(Obstacle::polygon(v, Boundary::Closed).is_err());
        let p = Point::new(1.0, 1.0);
        assert!(Obstacle::capsule(p, p, 0.5, Boundary::Open).is_err());
        assert!(Obstacle::disk(p, 0.0, Boundary::Open).is_err());
        assert!(Obstacle::rect(0.0, 1.0, 0.0, 1.0, Boundary::Partial(ArcSet::full())).is_err());
    }

    #[test]
    fn clockwise_polygon_is_reoriented() {
        let o = Obstacle::polygon(
            vec![Point::new(0.0, 0.0), Point::new(0.0, 1.0), Point::new(1.0, 0.0)],
            Boundary::Closed,
        )
        .unwrap();
        let Shape::Polygon { vertices } = &o.shape else {
            unreachable!()
        };
        let area2: f64 = (0..3).map(|i| vertices[i].cross(vertices[(i + 1) % 3])).sum();
        assert!(area2 > 0.0);
    }

    #[test]
    fn membership_by_mode() {
        let c = Point::new(0.0, 0.0);
        let on = Point::new(1.0, 0.0);
        let closed = Obstacle::disk(c, 1.0, Boundary::Closed).unwrap();
        let open = Obstacle::disk(c, 1.0, Boundary::Open).unwrap();
        let partial = Obstacle::disk(c, 1.0, Boundary::Partial(ArcSet::single(crate::Arc::point(0.0), 1e-9))).unwrap();
        assert!(closed.contains(on, 1e-9, 1e-9));
        assert!(!open.contains(on, 1e-9, 1e-9));
        assert!(partial.contains(on, 1e-9, 1e-9));
        assert!(!partial.contains(Point::new(0.0, 1.0), 1e-9, 1e-9));
        assert!(open.contains(Point::new(0.5, 0.0), 1e-9, 1e-9));
    }

    #[test]
    fn bbox_is_padded() {
        let s = Scene::new(vec![Obstacle::rect(0.0, 10.0, 0.0, 10.0, Boundary::Closed).unwrap()]);
        let b = s.bbox();
        assert!((b.min.x + 1.0).abs() < 1e-12 && (b.max.y - 11.0).abs() < 1e-12);
    }
}
