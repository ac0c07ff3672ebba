//! Scene files, built-in fixtures and rendering.

pub mod fixtures;
mod scene_file;
mod svg;

pub use fixtures::{fixture, FixtureMode, FIXTURE_NAMES};
pub use scene_file::{parse_scene, serialize_scene, EndFlags};
pub use svg::{render_svg, shadow_pgm, Overlays};
