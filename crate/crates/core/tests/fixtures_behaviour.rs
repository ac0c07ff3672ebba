//! What each shipped fixture actually does, checked against brute-force ray
//! casting rather than the engine's own arc algebra.

use semiconvex::analysis::{
    boundary_samples, components, theorem_audit, weak_semiconvexity_report, AuditConfig, AuditReport, WeakReport,
};
use semiconvex::io::fixtures::{four_balls, hook_pair, pinwheel_capsules, pinwheel_rects, tip_hooks};
use semiconvex::io::FixtureMode;
use semiconvex::raycast::critical_directions;
use semiconvex::{first_hit, is_semiconvex_at, oracle_shadowed, Point, Ray, Scene};
use std::f64::consts::TAU;

/// True when no escape direction was found among `n` uniform directions,
/// the critical directions at `x`, and midpoints between consecutive ones.
/// Works on boundary points, where the exterior-only oracle does not apply.
fn every_ray_blocked(scene: &Scene, x: Point, n: usize) -> bool {
    let mut dirs: Vec<f64> = (0..n).map(|k| k as f64 * TAU / n as f64).collect();
    dirs.extend(critical_directions(scene, x));
    dirs.sort_by(f64::total_cmp);
    let mids: Vec<f64> = dirs.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    dirs.into_iter()
        .chain(mids)
        .all(|t| first_hit(&Ray::from_radians(x, t), scene).hit)
}

fn weak(scene: &Scene, per_obstacle: usize) -> WeakReport {
    let samples = boundary_samples(scene, &components(scene), per_obstacle, true).unwrap();
    weak_semiconvexity_report(scene, &samples).unwrap()
}

fn audit(scene: &Scene) -> AuditReport {
    theorem_audit(scene, &AuditConfig::new(0.05, 256)).unwrap()
}

fn applicable(report: &AuditReport, name: &str) -> bool {
    report.check(name).is_some_and(|c| c.applicable)
}

#[test]
fn four_balls_is_weakly_semiconvex_with_a_shadow() {
    let scene = four_balls(FixtureMode::Open);
    let part = components(&scene);
    assert_eq!(part.len(), 4);
    assert!(part.all_smooth());
    assert!(weak(&scene, 1024).pass);
    assert!(is_semiconvex_at(&scene, Point::new(0.0, 0.0)).unwrap().shadowed);
    assert!(oracle_shadowed(&scene, Point::new(0.0, 0.0), 100_000).unwrap());

    let report = audit(&scene);
    assert!(report.all_consistent(), "{}", report.to_key_value());
    assert!(report.shadow_nonempty);
    for name in ["Thm1", "Thm3comp", "Thm2", "Thm3"] {
        assert!(applicable(&report, name), "{name} should apply");
    }
}

#[test]
fn four_balls_closed_keeps_the_shadow() {
    let scene = four_balls(FixtureMode::Closed);
    assert!(is_semiconvex_at(&scene, Point::new(0.0, 0.0)).unwrap().shadowed);
    assert!(audit(&scene).all_consistent());
}

#[test]
fn tip_hooks_shadow_is_the_segment_between_the_tips() {
    let scene = tip_hooks(FixtureMode::Closed);
    assert_eq!(components(&scene).len(), 2);
    for k in 1..20 {
        let x = -1.0 + 2.0 * k as f64 / 20.0;
        let p = Point::new(x, 0.0);
        assert!(is_semiconvex_at(&scene, p).unwrap().shadowed, "{p:?}");
        assert!(oracle_shadowed(&scene, p, 100_000).unwrap(), "{p:?}");
    }
    // Just off the segment a ray slips out between the tips.
    for y in [-1e-3, 1e-3] {
        let p = Point::new(0.0, y);
        assert!(!is_semiconvex_at(&scene, p).unwrap().shadowed);
        assert!(!oracle_shadowed(&scene, p, 100_000).unwrap());
    }
}

#[test]
fn tip_hooks_audit_finds_the_thin_shadow() {
    let scene = tip_hooks(FixtureMode::Closed);
    assert!(weak(&scene, 1024).pass);
    let report = audit(&scene);
    assert!(report.all_consistent(), "{}", report.to_key_value());
    assert!(report.shadow_probes > 0);
    assert!(!report.semiconvex_sampled);
    assert!(applicable(&report, "Thm1"));
    assert!(!applicable(&report, "Thm2"));
}

#[test]
fn hook_pair_traps_part_of_its_boundary() {
    let scene = hook_pair(FixtureMode::Closed);
    assert_eq!(components(&scene).len(), 2);
    assert!(is_semiconvex_at(&scene, Point::new(0.0, 0.0)).unwrap().shadowed);
    let report = weak(&scene, 256);
    assert!(!report.pass);
    let (p, _) = report.failures[0];
    assert!(every_ray_blocked(&scene, p, 100_000), "{p:?}");
    assert!(every_ray_blocked(&scene, Point::new(-2.0, -1.15), 100_000));
}

#[test]
fn pinwheel_capsules_trap_their_inner_end_caps() {
    let scene = pinwheel_capsules(FixtureMode::Open);
    assert_eq!(components(&scene).len(), 4);
    assert!(components(&scene).all_smooth());
    assert!(is_semiconvex_at(&scene, Point::new(0.0, 0.0)).unwrap().shadowed);
    let report = weak(&scene, 256);
    assert!(!report.pass);
    for &(p, _) in report.failures.iter().take(5) {
        assert!(every_ray_blocked(&scene, p, 100_000), "{p:?}");
    }
    // Four-fold symmetry: every cap is trapped in the same way.
    let mut quadrants = [false; 4];
    for &(p, _) in &report.failures {
        let q = (p.atan2().rem_euclid(TAU) / (TAU / 4.0)) as usize;
        quadrants[q.min(3)] = true;
    }
    assert_eq!(quadrants, [true; 4]);
}

#[test]
fn pinwheel_rects_is_weakly_semiconvex_in_both_modes() {
    for mode in [FixtureMode::Open, FixtureMode::Closed] {
        let scene = pinwheel_rects(mode);
        assert!(weak(&scene, 512).pass, "{mode:?}");
        let report = audit(&scene);
        assert!(report.all_consistent(), "{mode:?}: {}", report.to_key_value());
        assert!(report.shadow_nonempty);
    }
}
