//! Invariants of the direction cover and the shadow verdict on random
//! scenes: similarity invariance, monotonicity in the obstacle set, and
//! agreement with individually cast rays.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semiconvex::{direction_cover, first_hit, is_semiconvex_at, Angle, Boundary, Obstacle, Point, Ray, Scene};
use std::f64::consts::TAU;

/// Two to five obstacles crowding the origin, each a disk, capsule or
/// triangle with a random boundary mode.
fn scene_from(seed: u64) -> Scene {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..6);
    let phase = rng.random_range(0.0..TAU);
    let obstacles = (0..n)
        .map(|k| {
            let phi = phase + k as f64 * TAU / n as f64 + rng.random_range(-0.3..0.3);
            let d = rng.random_range(1.0..3.0);
            let c = Point::unit(phi) * d;
            let r = d * rng.random_range(0.2..0.8);
            let boundary = if rng.random_bool(0.5) {
                Boundary::Open
            } else {
                Boundary::Closed
            };
            match rng.random_range(0..3) {
                0 => Obstacle::disk(c, r, boundary),
                1 => {
                    let h = Point::unit(rng.random_range(0.0..TAU)) * r;
                    Obstacle::capsule(c - h, c + h, r * 0.3, boundary)
                }
                _ => {
                    let t0 = rng.random_range(0.0..TAU);
                    let tri = (0..3).map(|j| c + Point::unit(t0 + j as f64 * TAU / 3.0) * r).collect();
                    Obstacle::polygon(tri, boundary)
                }
            }
            .expect("valid obstacle")
        })
        .collect();
    Scene::new(obstacles)
}

/// Distance from `theta` to the nearest endpoint of any cover arc.
fn endpoint_gap(cover: &semiconvex::ArcSet, theta: Angle) -> f64 {
    cover
        .arcs()
        .iter()
        .flat_map(|a| [a.start, a.end()])
        .map(|e| e.distance(theta))
        .fold(f64::INFINITY, f64::min)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cover_agrees_with_single_rays(seed in any::<u64>(), px in -0.8..0.8f64, py in -0.8..0.8f64, theta in 0.0..TAU) {
        let scene = scene_from(seed);
        let x = Point::new(px, py);
        prop_assume!(!scene.in_closure(x));
        let cover = direction_cover(&scene, x).unwrap();
        let dir = Angle::new(theta).unwrap();
        prop_assume!(endpoint_gap(&cover, dir) > 1e-7);
        let hit = first_hit(&Ray::new(x, dir), &scene).hit;
        prop_assert_eq!(cover.contains(dir, 0.0), hit);
    }

    #[test]
    fn verdict_is_invariant_under_similarities(
        seed in any::<u64>(),
        px in -0.8..0.8f64, py in -0.8..0.8f64,
        phi in 0.0..TAU, scale in 0.1..10.0f64,
        sx in -50.0..50.0f64, sy in -50.0..50.0f64,
    ) {
        let scene = scene_from(seed);
        let x = Point::new(px, py);
        prop_assume!(!scene.in_closure(x));
        let before = is_semiconvex_at(&scene, x).unwrap();
        let free = before.cover.complement(scene.eps_angle).measure();
        // Skip verdicts decided by a hair's width of free directions.
        prop_assume!(before.shadowed && free == 0.0 || free > 1e-6);

        let center = Point::new(0.3, -0.2);
        let moved = scene.transformed(phi, scale, center, Point::new(sx, sy));
        let y = center + (x - center).rotate(phi) * scale + Point::new(sx, sy);
        let after = is_semiconvex_at(&moved, y).unwrap();
        prop_assert_eq!(before.shadowed, after.shadowed);
        prop_assert!((before.cover.measure() - after.cover.measure()).abs() < 1e-9);
        if let Some(w) = after.free_direction {
            prop_assert!(!first_hit(&Ray::new(y, w), &moved).hit);
        }
    }

    #[test]
    fn removing_an_obstacle_shrinks_the_cover(seed in any::<u64>(), px in -0.8..0.8f64, py in -0.8..0.8f64, pick in any::<usize>()) {
        let scene = scene_from(seed);
        let x = Point::new(px, py);
        prop_assume!(!scene.in_closure(x));
        let sub = scene.without(pick % scene.len());
        let full = is_semiconvex_at(&scene, x).unwrap();
        let part = is_semiconvex_at(&sub, x).unwrap();
        prop_assert!(full.cover.contains_set(&part.cover, 1e-12));
        prop_assert!(part.cover.measure() <= full.cover.measure() + 1e-12);
        if part.shadowed {
            prop_assert!(full.shadowed);
        }
    }

    #[test]
    fn free_witness_escapes(seed in any::<u64>(), px in -0.8..0.8f64, py in -0.8..0.8f64) {
        let scene = scene_from(seed);
        let x = Point::new(px, py);
        prop_assume!(!scene.in_closure(x));
        let v = is_semiconvex_at(&scene, x).unwrap();
        prop_assert_eq!(v.shadowed, v.free_direction.is_none());
        if let Some(w) = v.free_direction {
            prop_assert!(!first_hit(&Ray::new(x, w), &scene).hit);
        }
    }
}
