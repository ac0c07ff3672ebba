use rayon::prelude::*;

use crate::analysis::SampleSet;
use crate::coverage::is_semiconvex_at;
use crate::error::Result;
use crate::geom::Point;
use crate::scene::Scene;

/// Outcome of the sampled weak semiconvexity test. Sound only at the
/// tested points.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakReport {
    pub pass: bool,
    pub tested: usize,
    /// Boundary points (with their component) from which every ray meets `E`.
    pub failures: Vec<(Point, usize)>,
    pub critical_points_included: bool,
}

pub fn weak_semiconvexity_report(scene: &Scene, samples: &SampleSet) -> Result<WeakReport> {
    let verdicts: Vec<Result<bool>> = samples
        .points
        .par_iter()
        .map(|s| is_semiconvex_at(scene, s.point).map(|v| v.shadowed))
        .collect();
    let mut failures = Vec::new();
    for (s, v) in samples.points.iter().zip(verdicts) {
        if v? {
            failures.push((s.point, s.component));
        }
    }
    Ok(WeakReport {
        pass: failures.is_empty(),
        tested: samples.points.len(),
        failures,
        critical_points_included: samples.critical_included,
    })
}
