//! Consistency audit of a scene against the structural theorems on weakly
//! semiconvex planar sets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{
    boundary_samples, components, inner_supporting_rays, shadow_scan, supporting_rays, tangent_probes,
    weak_semiconvexity_report, ComponentPartition, ShadowRaster, WeakReport,
};
use crate::coverage::{is_projected, is_semiconvex_at};
use crate::error::Result;
use crate::geom::Point;
use crate::scene::{Boundary, Scene};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditConfig {
    pub resolution: f64,
    pub samples_per_obstacle: usize,
    /// Random exterior points for the two-supporting-rays check.
    pub support_points: usize,
    /// Cap on shadow cells examined for projection and inner rays.
    pub max_shadow_points: usize,
    pub seed: u64,
}

impl AuditConfig {
    pub fn new(resolution: f64, samples_per_obstacle: usize) -> Self {
        AuditConfig {
            resolution,
            samples_per_obstacle,
            support_points: 100,
            max_shadow_points: 100,
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub applicable: bool,
    pub consistent: bool,
    pub details: String,
}

impl Check {
    fn inapplicable(name: &'static str, details: impl Into<String>) -> Self {
        Check {
            name,
            applicable: false,
            consistent: true,
            details: details.into(),
        }
    }

    fn verdict(name: &'static str, consistent: bool, details: impl Into<String>) -> Self {
        Check {
            name,
            applicable: true,
            consistent,
            details: details.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ModeSummary {
    pub open: usize,
    pub closed: usize,
    pub partial: usize,
}

impl ModeSummary {
    pub fn of(scene: &Scene) -> Self {
        let mut m = ModeSummary::default();
        for o in &scene.obstacles {
            match o.boundary {
                Boundary::Open => m.open += 1,
                Boundary::Closed => m.closed += 1,
                Boundary::Partial(_) => m.partial += 1,
            }
        }
        m
    }

    pub fn all_open(&self) -> bool {
        self.closed == 0 && self.partial == 0
    }

    pub fn all_closed(&self) -> bool {
        self.open == 0 && self.partial == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub n_components: usize,
    pub all_smooth: bool,
    pub modes: ModeSummary,
    pub weakly_semiconvex_sampled: bool,
    pub weak_tested: usize,
    pub weak_failures: usize,
    /// No shadowed cell or probe was found.
    pub semiconvex_sampled: bool,
    pub shadow_nonempty: bool,
    pub shadow_cells: usize,
    pub shadow_components: usize,
    /// Shadowed points found off the base raster: on common supporting
    /// segments, or on a refined raster when an open set fails the weak
    /// test and the base raster finds no shadow.
    pub shadow_probes: usize,
    pub enclosed_hole: bool,
    pub checks: Vec<Check>,
}

impl AuditReport {
    pub fn all_consistent(&self) -> bool {
        self.checks.iter().all(|c| !c.applicable || c.consistent)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Flat `key=value` lines in a fixed order.
    pub fn to_key_value(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            s.push_str(k);
            s.push('=');
            s.push_str(&v);
            s.push('\n');
        };
        kv("n_components", self.n_components.to_string());
        kv("all_smooth", self.all_smooth.to_string());
        kv(
            "modes",
            format!(
                "open:{},closed:{},partial:{}",
                self.modes.open, self.modes.closed, self.modes.partial
            ),
        );
        kv("weakly_semiconvex_sampled", self.weakly_semiconvex_sampled.to_string());
        kv("weak_tested", self.weak_tested.to_string());
        kv("weak_failures", self.weak_failures.to_string());
        kv("semiconvex_sampled", self.semiconvex_sampled.to_string());
        kv("shadow_nonempty", self.shadow_nonempty.to_string());
        kv("shadow_cells", self.shadow_cells.to_string());
        kv("shadow_components", self.shadow_components.to_string());
        kv("shadow_probes", self.shadow_probes.to_string());
        kv("enclosed_hole", self.enclosed_hole.to_string());
        for c in &self.checks {
            kv(
                &format!("check.{}", c.name),
                format!(
                    "applicable:{},consistent:{},details:{}",
                    c.applicable, c.consistent, c.details
                ),
            );
        }
        kv("all_consistent", self.all_consistent().to_string());
        s
    }

    /// One CSV line per check, with a header.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("check,applicable,consistent,details\n");
        for c in &self.checks {
            s.push_str(&format!(
                "{},{},{},\"{}\"\n",
                c.name,
                c.applicable,
                c.consistent,
                c.details.replace('"', "\"\"")
            ));
        }
        s
    }
}

fn spread<T: Clone>(items: &[T], max: usize) -> Vec<T> {
    if items.len() <= max {
        return items.to_vec();
    }
    let stride = items.len().div_ceil(max);
    items.iter().step_by(stride).cloned().collect()
}

fn random_exterior_points(scene: &Scene, n: usize, seed: u64) -> Vec<Point> {
    let bb = scene.bbox();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let mut tries = 0;
    while out.len() < n && tries < 100 * n.max(1) {
        tries += 1;
        let p = Point::new(
            rng.random_range(bb.min.x..bb.max.x),
            rng.random_range(bb.min.y..bb.max.y),
        );
        if !scene.in_closure(p) {
            out.push(p);
        }
    }
    out
}

fn lemma2_check(
    scene: &Scene,
    part: &ComponentPartition,
    modes: ModeSummary,
    weak: bool,
    cfg: &AuditConfig,
) -> Result<Check> {
    const NAME: &str = "Lemma2";
    if part.len() != 1 {
        return Ok(Check::inapplicable(NAME, "requires exactly one component"));
    }
    let pts = random_exterior_points(scene, cfg.support_points, cfg.seed);
    let mut histogram = [0usize; 5];
    for p in &pts {
        let n = supporting_rays(scene, part, *p)?.len();
        histogram[n.min(4)] += 1;
    }
    let hist = format!(
        "points={} count0={} count1={} count2={} count3={} count4+={}",
        pts.len(),
        histogram[0],
        histogram[1],
        histogram[2],
        histogram[3],
        histogram[4]
    );
    if !part.all_smooth() {
        return Ok(Check::inapplicable(
            NAME,
            format!("nonsmooth component (informational) {hist}"),
        ));
    }
    if modes.partial > 0 {
        return Ok(Check::inapplicable(
            NAME,
            format!("neither open nor closed (informational) {hist}"),
        ));
    }
    if !weak {
        return Ok(Check::inapplicable(
            NAME,
            format!("not weakly semiconvex (sampled) {hist}"),
        ));
    }
    Ok(Check::verdict(NAME, histogram[2] == pts.len(), hist))
}

/// Runs every analysis and evaluates each theorem's conclusion wherever its
/// hypotheses hold on the sampled data.
pub fn theorem_audit(scene: &Scene, cfg: &AuditConfig) -> Result<AuditReport> {
    let part = components(scene);
    let modes = ModeSummary::of(scene);
    let samples = boundary_samples(scene, &part, cfg.samples_per_obstacle, true)?;
    let weak: WeakReport = weak_semiconvexity_report(scene, &samples)?;
    let raster: ShadowRaster = shadow_scan(scene, cfg.resolution)?;
    let mut probes = Vec::new();
    for p in tangent_probes(scene, &part) {
        if is_semiconvex_at(scene, p)?.shadowed {
            probes.push(p);
        }
    }
    let k = part.len();
    if !raster.shadow_nonempty() && probes.is_empty() && !weak.pass && modes.all_open() && k > 0 {
        for factor in [2.0, 4.0, 8.0] {
            let fine = shadow_scan(scene, cfg.resolution / factor)?;
            if fine.shadow_nonempty() {
                probes = spread(&fine.shadow_points(), cfg.max_shadow_points);
                break;
            }
        }
    }
    let shadow = raster.shadow_nonempty() || !probes.is_empty();
    let hole = raster.has_enclosed_hole();
    let all_smooth = !part.is_empty() && part.all_smooth();
    let w = weak.pass;
    let both = w && shadow;
    let mut checks = Vec::new();

    checks.push(if both {
        Check::verdict("Thm1", k >= 2, format!("components={k} required>=2"))
    } else {
        Check::inapplicable("Thm1", "needs weak pass and nonempty shadow")
    });

    checks.push(if both && modes.all_open() {
        Check::verdict("Thm3comp", k >= 3, format!("components={k} required>=3"))
    } else if both {
        Check::inapplicable(
            "Thm3comp",
            "holds for open sets; closed or partial boundaries admit two components",
        )
    } else {
        Check::inapplicable("Thm3comp", "needs weak pass and nonempty shadow")
    });

    checks.push(if both && all_smooth && (modes.all_open() || modes.all_closed()) {
        Check::verdict("Thm2", k > 2, format!("components={k} required>2"))
    } else if both {
        Check::inapplicable("Thm2", "needs an open or closed set with smooth boundary")
    } else {
        Check::inapplicable("Thm2", "needs weak pass and nonempty shadow")
    });

    checks.push(if both && all_smooth && modes.all_open() {
        Check::verdict("Thm3", k >= 4, format!("components={k} required>=4"))
    } else if both {
        Check::inapplicable("Thm3", "needs an open set with smooth boundary")
    } else {
        Check::inapplicable("Thm3", "needs weak pass and nonempty shadow")
    });

    checks.push(if w && k == 1 && !hole {
        Check::verdict(
            "Cor1",
            !shadow,
            format!("shadow_cells={} shadow_probes={}", raster.shadow_count(), probes.len()),
        )
    } else {
        Check::inapplicable("Cor1", "needs weak pass and one simply connected component")
    });

    checks.push(lemma2_check(scene, &part, modes, w, cfg)?);

    let mut shadow_pts = spread(&raster.shadow_points(), cfg.max_shadow_points);
    shadow_pts.extend(spread(&probes, cfg.max_shadow_points));
    if both {
        let mut projected = 0;
        let mut without_inner = 0;
        for p in &shadow_pts {
            for c in 0..k {
                if is_projected(scene, &part, c, *p)? {
                    projected += 1;
                }
            }
            if inner_supporting_rays(scene, &part, *p)?.is_empty() {
                without_inner += 1;
            }
        }
        let scope = if modes.all_open() && (k == 3 || (k == 4 && all_smooth)) {
            "strict"
        } else {
            "extended"
        };
        checks.push(Check::verdict(
            "Lemma3",
            projected == 0,
            format!("scope={scope} shadow_points={} projected={projected}", shadow_pts.len()),
        ));
        checks.push(Check::verdict(
            "Lemma4",
            without_inner == 0,
            format!("shadow_points={} without_inner_ray={without_inner}", shadow_pts.len()),
        ));
    } else {
        checks.push(Check::inapplicable("Lemma3", "needs weak pass and nonempty shadow"));
        checks.push(Check::inapplicable("Lemma4", "needs weak pass and nonempty shadow"));
    }

    checks.push(if modes.all_open() && !shadow && k > 0 {
        Check::verdict("Prop1", w, format!("weak_failures={}", weak.failures.len()))
    } else {
        Check::inapplicable("Prop1", "needs an open set without shadow")
    });

    checks.push(if w && hole {
        Check::inapplicable("Prop2", "union encloses a hole; simple connectivity not claimed")
    } else if w {
        Check::verdict("Prop2", true, "convex pieces without enclosed hole")
    } else {
        Check::inapplicable("Prop2", "needs weak pass")
    });

    Ok(AuditReport {
        n_components: k,
        all_smooth,
        modes,
        weakly_semiconvex_sampled: w,
        weak_tested: weak.tested,
        weak_failures: weak.failures.len(),
        semiconvex_sampled: !shadow,
        shadow_nonempty: shadow,
        shadow_cells: raster.shadow_count(),
        shadow_components: raster.shadow_components,
        shadow_probes: probes.len(),
        enclosed_hole: hole,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::Obstacle;

    #[test]
    fn single_closed_disk_is_consistent() {
        let s = Scene::new(vec![
            Obstacle::disk(Point::new(0.5, -0.5), 1.0, Boundary::Closed).unwrap()
        ]);
        let r = theorem_audit(&s, &AuditConfig::new(0.1, 64)).unwrap();
        assert!(r.all_consistent());
        let cor = r.check("Cor1").unwrap();
        assert!(cor.applicable && cor.consistent);
        let l2 = r.check("Lemma2").unwrap();
        assert!(l2.applicable && l2.consistent, "{}", l2.details);
        assert!(r.to_csv().starts_with("check,applicable,consistent,details\n"));
        assert!(r.to_key_value().contains("check.Thm1=applicable:false"));
    }
}
