//! Built-in regression scenes.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::io::parse_scene;
use crate::scene::{Boundary, Obstacle, Scene};
use crate::shadow_problem::{RingConfig, RingMode};

/// Certified minimal blocking configuration found by the shadow-problem
/// solver with its default search parameters.
pub const BLOCKING_RING: &str = include_str!("../../tests/fixtures/blocking_ring.json");

pub const FIXTURE_NAMES: [&str; 8] = [
    "pinwheel_rects",
    "pinwheel_capsules",
    "compass_disks",
    "hook_pair",
    "four_balls",
    "tip_hooks",
    "blocking_ring",
    "ring:<k>",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureMode {
    Open,
    Closed,
}

impl FixtureMode {
    fn boundary(self) -> Boundary {
        match self {
            FixtureMode::Open => Boundary::Open,
            FixtureMode::Closed => Boundary::Closed,
        }
    }
}

impl std::str::FromStr for FixtureMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "open" => Ok(FixtureMode::Open),
            "closed" => Ok(FixtureMode::Closed),
            other => Err(Error::InvalidArgument(format!(
                "mode must be open or closed, got {other:?}"
            ))),
        }
    }
}

/// Four disjoint rectangles in a pinwheel around the origin, 0.1 apart.
pub fn pinwheel_rects(mode: FixtureMode) -> Scene {
    let b = mode.boundary();
    let rects = [
        (-0.9, 3.0, 1.0, 1.2),
        (-1.2, -1.0, -0.9, 3.0),
        (-3.0, 0.9, -1.2, -1.0),
        (1.0, 1.2, -3.0, 0.9),
    ];
    Scene::new(
        rects
            .iter()
            .map(|&(x0, x1, y0, y1)| Obstacle::rect(x0, x1, y0, y1, b.clone()).expect("valid rectangle"))
            .collect(),
    )
}

/// Capsules inscribed in the pinwheel rectangles. The origin is shadowed,
/// but the lower half of each inner end cap is trapped in the pocket formed
/// by the neighbouring capsule, so the set is not weakly semiconvex.
pub fn pinwheel_capsules(mode: FixtureMode) -> Scene {
    // Exact quarter turns keep the coordinates free of rounding noise.
    let quarter = |p: Point| Point::new(-p.y, p.x);
    let (mut a, mut b) = (Point::new(-0.8, 1.1), Point::new(2.9, 1.1));
    let mut obstacles = Vec::with_capacity(4);
    for _ in 0..4 {
        obstacles.push(Obstacle::capsule(a, b, 0.1, mode.boundary()).expect("valid capsule"));
        (a, b) = (quarter(a), quarter(b));
    }
    Scene::new(obstacles)
}

/// Disks of radius √2 at (±2, 0) and (0, ±2).
pub fn compass_disks(mode: FixtureMode) -> Scene {
    Scene::new(
        [(2.0, 0.0), (0.0, 2.0), (-2.0, 0.0), (0.0, -2.0)]
            .iter()
            .map(|&(x, y)| Obstacle::disk(Point::new(x, y), SQRT_2, mode.boundary()).expect("valid disk"))
            .collect(),
    )
}

/// Two interlocking three-rectangle hooks. The origin is shadowed, but the
/// inner face of the left bar is not weakly semiconvex: rays threading the
/// channel between the right hook's arms end on the left hook's arms.
pub fn hook_pair(mode: FixtureMode) -> Scene {
    let b = mode.boundary();
    let rects = [
        (-2.2, -2.0, -2.0, 2.0),
        (-2.2, 0.6, 1.8, 2.0),
        (-2.2, 0.6, -2.0, -1.8),
        (2.0, 2.2, -1.5, 1.5),
        (-0.6, 2.2, 1.3, 1.5),
        (-0.6, 2.2, -1.5, -1.3),
    ];
    Scene::new(
        rects
            .iter()
            .map(|&(x0, x1, y0, y1)| Obstacle::rect(x0, x1, y0, y1, b.clone()).expect("valid rectangle"))
            .collect(),
    )
}

/// Four disjoint disks of very different sizes whose union is weakly
/// semiconvex yet shadows a small region around the origin. Every boundary
/// point escapes, if only through a narrow gap, and the set has smooth
/// boundary, so four is the fewest components possible here.
pub fn four_balls(mode: FixtureMode) -> Scene {
    Scene::new(
        [
            (5.09, 0.93, 4.58),
            (-0.44, 1.03, 0.88),
            (-7.03, -2.84, 4.94),
            (0.02, -0.68, 0.43),
        ]
        .iter()
        .map(|&(x, y, r)| Obstacle::disk(Point::new(x, y), r, mode.boundary()).expect("valid disk"))
        .collect(),
    )
}

/// Two point-symmetric hooks, each a roof with two wedge legs. The leg tips
/// of one hook sit at (−1, 0) and (1.5, 0), those of the other at (1, 0)
/// and (−1.5, 0). When closed, every point of the open segment between
/// (−1, 0) and (1, 0) is shadowed, since its horizontal rays end on a tip,
/// while the rest of the plane and every boundary point sees out. The
/// shadow has no interior.
pub fn tip_hooks(mode: FixtureMode) -> Scene {
    let hook: [&[(f64, f64)]; 3] = [
        &[(-1.0, 0.0), (-0.85, 2.1), (-1.15, 2.1)],
        &[(-1.6, 2.0), (1.9, 2.0), (1.9, 2.2), (-1.6, 2.2)],
        &[(1.5, 0.0), (1.65, 2.1), (1.35, 2.1)],
    ];
    let mut obstacles = Vec::new();
    for sign in [1.0, -1.0] {
        for piece in hook {
            let vertices = piece.iter().map(|&(x, y)| Point::new(sign * x, sign * y)).collect();
            obstacles.push(Obstacle::polygon(vertices, mode.boundary()).expect("valid polygon"));
        }
    }
    Scene::new(obstacles)
}

/// Radius of the symmetric `ring:<k>` fixture: just inside the largest
/// radius keeping equal neighbours disjoint.
pub fn ring_radius(k: usize) -> f64 {
    0.99 * (PI / k as f64).sin().min(1.0)
}

/// `k` equal disks on the unit circle at uniform angles.
pub fn ring(k: usize, mode: FixtureMode) -> Result<Scene> {
    if k == 0 {
        return Err(Error::InvalidArgument("ring needs at least one disk".into()));
    }
    let m = match mode {
        FixtureMode::Open => RingMode::Open,
        FixtureMode::Closed => RingMode::Closed,
    };
    RingConfig::symmetric(k, ring_radius(k), m).scene()
}

/// The pinned solver certificate, in the requested mode.
pub fn blocking_ring(mode: FixtureMode) -> Result<Scene> {
    Ok(parse_scene(BLOCKING_RING)?.with_boundary(mode.boundary()))
}

fn default_mode(name: &str) -> FixtureMode {
    match name {
        "pinwheel_rects" | "pinwheel_capsules" | "four_balls" => FixtureMode::Open,
        _ => FixtureMode::Closed,
    }
}

/// Looks up a fixture by name; `mode` defaults per fixture (open for the
/// pinwheels and `four_balls`, closed otherwise).
pub fn fixture(name: &str, mode: Option<FixtureMode>) -> Result<Scene> {
    let mode = mode.unwrap_or_else(|| default_mode(name));
    match name {
        "pinwheel_rects" => Ok(pinwheel_rects(mode)),
        "pinwheel_capsules" => Ok(pinwheel_capsules(mode)),
        "compass_disks" => Ok(compass_disks(mode)),
        "hook_pair" => Ok(hook_pair(mode)),
        "four_balls" => Ok(four_balls(mode)),
        "tip_hooks" => Ok(tip_hooks(mode)),
        "blocking_ring" => blocking_ring(mode),
        _ => match name.strip_prefix("ring:").map(str::parse::<usize>) {
            Some(Ok(k)) => ring(k, mode),
            _ => Err(Error::UnknownFixture(name.to_string())),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::components;

    #[test]
    fn names_resolve() {
        for name in [
            "pinwheel_rects",
            "pinwheel_capsules",
            "compass_disks",
            "hook_pair",
            "four_balls",
            "tip_hooks",
            "blocking_ring",
            "ring:5",
        ] {
            assert!(!fixture(name, None).unwrap().is_empty(), "{name}");
        }
        assert!(matches!(fixture("nope", None), Err(Error::UnknownFixture(_))));
        assert!(fixture("ring:x", None).is_err());
        assert!(fixture("ring:0", None).is_err());
    }

    #[test]
    fn component_counts() {
        assert_eq!(components(&pinwheel_rects(FixtureMode::Open)).len(), 4);
        assert_eq!(components(&pinwheel_capsules(FixtureMode::Open)).len(), 4);
        assert_eq!(components(&hook_pair(FixtureMode::Closed)).len(), 2);
        assert_eq!(components(&tip_hooks(FixtureMode::Closed)).len(), 2);
        assert_eq!(components(&four_balls(FixtureMode::Open)).len(), 4);
        assert_eq!(components(&compass_disks(FixtureMode::Closed)).len(), 1);
        assert_eq!(components(&compass_disks(FixtureMode::Open)).len(), 4);
        assert_eq!(components(&ring(7, FixtureMode::Closed).unwrap()).len(), 7);
    }
}
