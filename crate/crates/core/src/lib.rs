//! Semiconvexity of planar unions of convex obstacles.
//!
//! A set `E` is 1-semiconvex when every point outside it sees infinity along
//! some open ray that misses `E`, and weakly 1-semiconvex when the same holds
//! from every boundary point. This crate decides both for finite unions of
//! disks, convex polygons and capsules whose boundaries may be open, closed
//! or partially included, and builds the related shadow regions, supporting
//! rays, grid hulls and blocking-disk configurations on top.

pub mod analysis;
pub mod arc;
pub mod coverage;
pub mod error;
pub mod geom;
pub mod hull;
pub mod io;
pub mod raycast;
pub mod scene;
pub mod shadow_problem;
pub mod shape;

pub use arc::{Arc, ArcSet};
pub use coverage::{direction_cover, hit_arc, is_projected, is_semiconvex_at, Verdict};
pub use error::{Error, Result};
pub use geom::{normalize_angle, Angle, Point, Ray};
pub use raycast::{first_hit, oracle_shadowed, ray_hits_obstacle, HitResult};
pub use scene::{BBox, Boundary, Location, Obstacle, Scene, Shape};
