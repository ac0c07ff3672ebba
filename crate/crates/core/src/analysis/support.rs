//! Supporting and inner supporting rays from an exterior point.

use crate::analysis::ComponentPartition;
use crate::coverage::hit_arc;
use crate::error::{Error, Result};
use crate::geom::{Angle, Point, Ray};
use crate::raycast::{contact, ray_hits_obstacle, Contact};
use crate::scene::{Location, Scene};

/// A ray from an exterior point that touches the boundary of one component
/// without entering its interior.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportRay {
    pub ray: Ray,
    pub touch_point: Point,
    pub touch_obstacle: usize,
    /// The component the ray supports.
    pub component: usize,
    /// Touch parameter along the ray.
    pub touch_t: f64,
    /// The ray meets another component, strictly beyond the touch point.
    pub inner: bool,
    /// `(component, first contact parameter)` for every other-component obstacle the ray meets.
    pub beyond_hits: Vec<(usize, f64)>,
}

fn exterior(scene: &Scene, x: Point) -> Result<()> {
    match scene
        .obstacles
        .iter()
        .find(|o| o.locate(x, scene.eps_space) != Location::Exterior)
    {
        Some(o) => Err(Error::InsideObstacle {
            point: x,
            obstacle: o.id,
        }),
        None => Ok(()),
    }
}

/// Supporting rays of each component from `x`, one per (component,
/// direction) up to `eps_angle`. Candidates are the footprint endpoints of
/// all obstacles; ties keep the lower obstacle id, then the smaller angle.
pub fn supporting_rays(scene: &Scene, partition: &ComponentPartition, x: Point) -> Result<Vec<SupportRay>> {
    exterior(scene, x)?;
    let mut candidates: Vec<(usize, Angle)> = Vec::new();
    for o in &scene.obstacles {
        let arc = hit_arc(x, o, scene.eps_angle, scene.eps_space)?;
        candidates.push((o.id, arc.start));
        candidates.push((o.id, arc.end()));
    }
    candidates.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.radians().total_cmp(&b.1.radians())));

    let mut out: Vec<SupportRay> = Vec::new();
    for (_, dir) in candidates {
        let ray = Ray::new(x, dir);
        let contacts: Vec<Contact> = scene
            .obstacles
            .iter()
            .map(|o| contact(&ray, o, scene.eps_space))
            .collect();
        for (comp, group) in partition.groups.iter().enumerate() {
            if out
                .iter()
                .any(|s| s.component == comp && s.ray.direction.distance(dir) <= scene.eps_angle)
            {
                continue;
            }
            let crosses = group.iter().any(|&id| matches!(contacts[id], Contact::Cross { .. }));
            if crosses {
                continue;
            }
            let touch = group
                .iter()
                .filter_map(|&id| match contacts[id] {
                    Contact::Graze { t_min, .. } => Some((t_min.max(0.0), id)),
                    _ => None,
                })
                .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let Some((touch_t, touch_obstacle)) = touch else {
                continue;
            };
            let beyond_hits: Vec<(usize, f64)> = scene
                .obstacles
                .iter()
                .filter(|o| partition.component_of[o.id] != comp)
                .filter_map(|o| {
                    let h = ray_hits_obstacle(&ray, o, scene.eps_space, scene.eps_angle);
                    h.t_first.map(|t| (partition.component_of[o.id], t))
                })
                .collect();
            let inner = !beyond_hits.is_empty() && beyond_hits.iter().all(|&(_, t)| t > touch_t + scene.eps_space);
            out.push(SupportRay {
                ray,
                touch_point: ray.at(touch_t),
                touch_obstacle,
                component: comp,
                touch_t,
                inner,
                beyond_hits,
            });
        }
    }
    out.sort_by(|a, b| {
        a.component
            .cmp(&b.component)
            .then(a.ray.direction.radians().total_cmp(&b.ray.direction.radians()))
    });
    Ok(out)
}

pub fn inner_supporting_rays(scene: &Scene, partition: &ComponentPartition, x: Point) -> Result<Vec<SupportRay>> {
    Ok(supporting_rays(scene, partition, x)?
        .into_iter()
        .filter(|s| s.inner)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::components;
    use crate::scene::{Boundary, Obstacle};
    use std::f64::consts::{FRAC_PI_6, SQRT_2};

    fn disk(c: (f64, f64), r: f64, b: Boundary) -> Obstacle {
        Obstacle::disk(Point::new(c.0, c.1), r, b).unwrap()
    }

    #[test]
    fn one_disk_two_tangents() {
        let s = Scene::new(vec![disk((2.0, 0.0), 1.0, Boundary::Closed)]);
        let rays = supporting_rays(&s, &components(&s), Point::ORIGIN).unwrap();
        assert_eq!(rays.len(), 2);
        let mut touches: Vec<Point> = rays.iter().map(|r| r.touch_point).collect();
        touches.sort_by(|a, b| a.y.total_cmp(&b.y));
        let want = [
            Point::new(1.5, -(3f64.sqrt()) / 2.0),
            Point::new(1.5, 3f64.sqrt() / 2.0),
        ];
        for (t, w) in touches.iter().zip(want) {
            assert!(t.dist(w) < 1e-12, "{t} vs {w}");
        }
        let dirs: Vec<f64> = rays.iter().map(|r| r.ray.direction.radians()).collect();
        assert!(dirs.iter().any(|d| (d - FRAC_PI_6).abs() < 1e-12));
        assert!(rays.iter().all(|r| !r.inner));
    }

    #[test]
    fn closed_compass_diagonals() {
        let s = Scene::new(
            [(2.0, 0.0), (0.0, 2.0), (-2.0, 0.0), (0.0, -2.0)]
                .into_iter()
                .map(|c| disk(c, SQRT_2, Boundary::Closed))
                .collect(),
        );
        let rays = supporting_rays(&s, &components(&s), Point::ORIGIN).unwrap();
        assert_eq!(rays.len(), 4);
        for (k, r) in rays.iter().enumerate() {
            let want = std::f64::consts::FRAC_PI_4 * (1 + 2 * k) as f64;
            assert!((r.ray.direction.radians() - want).abs() < 1e-9);
        }
    }

    #[test]
    fn near_disk_tangents_pierce_far_disk() {
        let s = Scene::new(vec![
            disk((2.0, 0.0), 0.5, Boundary::Open),
            disk((4.0, 0.0), 1.5, Boundary::Open),
        ]);
        let p = components(&s);
        let inner = inner_supporting_rays(&s, &p, Point::ORIGIN).unwrap();
        assert_eq!(inner.len(), 2);
        assert!(inner.iter().all(|r| r.touch_obstacle == 0));
        assert!(
            supporting_rays(&Scene::default(), &components(&Scene::default()), Point::ORIGIN)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn single_obstacle_has_no_inner_rays() {
        let s = Scene::new(vec![Obstacle::rect(1.0, 2.0, -1.0, 1.0, Boundary::Open).unwrap()]);
        assert!(inner_supporting_rays(&s, &components(&s), Point::ORIGIN)
            .unwrap()
            .is_empty());
    }
}
