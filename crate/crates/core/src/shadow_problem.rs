//! The planar shadow problem: how few pairwise disjoint disks centered on the
//! unit circle, each of radius below one, block every ray from the center?

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use crate::arc::{Arc, ArcSet, DEFAULT_EPS_ANGLE};
use crate::coverage::is_semiconvex_at;
use crate::error::{Error, Result};
use crate::geom::{Angle, Point};
use crate::raycast::oracle_shadowed;
use crate::scene::{Boundary, Obstacle, Scene, DEFAULT_EPS_SPACE};

/// Directions used by the independent certificate check.
pub const CERTIFICATE_DIRECTIONS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingMode {
    Open,
    Closed,
}

impl RingMode {
    pub fn boundary(self) -> Boundary {
        match self {
            RingMode::Open => Boundary::Open,
            RingMode::Closed => Boundary::Closed,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RingMode::Open => "open",
            RingMode::Closed => "closed",
        }
    }
}

impl std::str::FromStr for RingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "open" => Ok(RingMode::Open),
            "closed" => Ok(RingMode::Closed),
            other => Err(Error::InvalidArgument(format!(
                "mode must be open or closed, got {other:?}"
            ))),
        }
    }
}

/// Disks centered at `(cos φᵢ, sin φᵢ)` with radii `rᵢ`.
#[derive(Debug, Clone, PartialEq)]
pub struct RingConfig {
    pub angles: Vec<Angle>,
    pub radii: Vec<f64>,
    pub mode: RingMode,
}

impl RingConfig {
    pub fn new(angles: &[f64], radii: &[f64], mode: RingMode) -> Self {
        RingConfig {
            angles: angles.iter().map(|&a| Angle::wrap(a)).collect(),
            radii: radii.to_vec(),
            mode,
        }
    }

    /// `k` equal disks at uniformly spaced angles starting at 0.
    pub fn symmetric(k: usize, radius: f64, mode: RingMode) -> Self {
        let angles: Vec<f64> = (0..k).map(|i| TAU * i as f64 / k as f64).collect();
        RingConfig::new(&angles, &vec![radius; k], mode)
    }

    pub fn k(&self) -> usize {
        self.radii.len()
    }

    pub fn with_mode(&self, mode: RingMode) -> Self {
        RingConfig { mode, ..self.clone() }
    }

    /// The disks as a scene (disk `i` has obstacle id `i`).
    pub fn scene(&self) -> Result<Scene> {
        let obstacles = self
            .angles
            .iter()
            .zip(&self.radii)
            .map(|(a, r)| Obstacle::disk(a.unit(), *r, self.mode.boundary()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Scene::new(obstacles))
    }

    /// Sorted by angle and rotated so the first center sits at angle 0.
    pub fn canonical(&self) -> Self {
        let mut pairs: Vec<(f64, f64)> = self
            .angles
            .iter()
            .zip(&self.radii)
            .map(|(a, r)| (a.radians(), *r))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let base = pairs.first().map_or(0.0, |p| p.0);
        RingConfig {
            angles: pairs.iter().map(|p| Angle::wrap(p.0 - base)).collect(),
            radii: pairs.iter().map(|p| p.1).collect(),
            mode: self.mode,
        }
    }

    fn sorted(&self) -> Vec<(f64, f64)> {
        let mut pairs: Vec<(f64, f64)> = self
            .angles
            .iter()
            .zip(&self.radii)
            .map(|(a, r)| (a.radians(), *r))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        pairs
    }

    /// Smallest `(asin rᵢ + asin rⱼ) − gap` over circularly adjacent
    /// centers; nonnegative means the closed arcs cover the circle.
    pub fn adjacent_overlap(&self) -> f64 {
        let p = self.sorted();
        let k = p.len();
        if k == 0 {
            return -TAU;
        }
        if k == 1 {
            return 2.0 * p[0].1.clamp(0.0, 1.0).asin() - TAU;
        }
        (0..k)
            .map(|i| {
                let (a, b) = (p[i], p[(i + 1) % k]);
                let gap = (b.0 - a.0).rem_euclid(TAU);
                let gap = if gap == 0.0 { TAU } else { gap };
                a.1.clamp(0.0, 1.0).asin() + b.1.clamp(0.0, 1.0).asin() - gap
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Smallest `chord − rᵢ − rⱼ` over all pairs (positive means disjoint).
    pub fn disjointness_slack(&self) -> f64 {
        let k = self.k();
        let mut slack = f64::INFINITY;
        for i in 0..k {
            for j in i + 1..k {
                let chord = self.angles[i].unit().dist(self.angles[j].unit());
                slack = slack.min(chord - self.radii[i] - self.radii[j]);
            }
        }
        slack
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    LengthMismatch { angles: usize, radii: usize },
    Empty,
    Radius { index: usize, radius: f64 },
    Overlap { i: usize, j: usize, slack: f64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::LengthMismatch { angles, radii } => write!(f, "{angles} angles but {radii} radii"),
            Violation::Empty => write!(f, "no disks"),
            Violation::Radius { index, radius } => write!(f, "disk {index}: radius {radius} outside (0, 1)"),
            Violation::Overlap { i, j, slack } => write!(f, "disks {i} and {j} not disjoint (slack {slack:e})"),
        }
    }
}

/// Checks radii in `(0, 1)` and strict pairwise disjointness, both with an
/// `eps_space` safety margin.
pub fn ring_config_valid(c: &RingConfig) -> (bool, Vec<Violation>) {
    let eps = DEFAULT_EPS_SPACE;
    let mut v = Vec::new();
    if c.angles.len() != c.radii.len() {
        v.push(Violation::LengthMismatch {
            angles: c.angles.len(),
            radii: c.radii.len(),
        });
        return (false, v);
    }
    if c.radii.is_empty() {
        v.push(Violation::Empty);
    }
    for (index, &radius) in c.radii.iter().enumerate() {
        if !(radius > eps && radius < 1.0 - eps) {
            v.push(Violation::Radius { index, radius });
        }
    }
    for i in 0..c.k() {
        for j in i + 1..c.k() {
            let chord = c.angles[i].unit().dist(c.angles[j].unit());
            let slack = chord - c.radii[i] - c.radii[j];
            if slack.is_nan() || slack <= eps {
                v.push(Violation::Overlap { i, j, slack });
            }
        }
    }
    (v.is_empty(), v)
}

fn require_valid(c: &RingConfig) -> Result<()> {
    let (ok, v) = ring_config_valid(c);
    if ok {
        Ok(())
    } else {
        let msg: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        Err(Error::InvalidRing(msg.join("; ")))
    }
}

/// Whether every ray from the origin meets one of the disks.
pub fn ring_config_shadowed(c: &RingConfig) -> Result<bool> {
    require_valid(c)?;
    Ok(is_semiconvex_at(&c.scene()?, Point::ORIGIN)?.shadowed)
}

/// The same decision from the footprint arcs `[φᵢ − asin rᵢ, φᵢ + asin rᵢ]`.
pub fn ring_config_shadowed_closed_form(c: &RingConfig) -> Result<bool> {
    require_valid(c)?;
    let closed = c.mode == RingMode::Closed;
    let arcs = c.angles.iter().zip(&c.radii).map(|(a, r)| {
        let h = r.asin();
        Arc::from_width(a.radians() - h, 2.0 * h, closed, closed)
    });
    Ok(ArcSet::from_arcs(arcs, DEFAULT_EPS_ANGLE)
        .covers_circle(DEFAULT_EPS_ANGLE)
        .0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub k: usize,
    /// Admissible radius just below the disjointness supremum.
    pub radius: f64,
    /// `2π − 2k·asin(radius)`.
    pub deficit: f64,
}

/// Relative distance below the supremal admissible radius at which the
/// symmetric deficit is reported; at the supremum itself it is zero and
/// not attained.
pub const SCAN_BACKOFF: f64 = 1e-6;

/// Coverage deficit of `k` equal disks at uniform angles with the largest
/// admissible radius, for `k = 2..=k_max`.
pub fn symmetric_infeasibility_scan(k_max: usize) -> Result<Vec<ScanRow>> {
    if k_max < 2 {
        return Err(Error::InvalidArgument("k_max must be at least 2".into()));
    }
    Ok((2..=k_max)
        .map(|k| {
            let sup = (PI / k as f64).sin().min(1.0);
            let radius = sup * (1.0 - SCAN_BACKOFF);
            ScanRow {
                k,
                radius,
                deficit: TAU - 2.0 * k as f64 * radius.asin(),
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchParams {
    pub restarts: usize,
    pub iterations: usize,
    /// Perturbation scale, decayed geometrically from the first to the second value.
    pub step: (f64, f64),
    pub seed: u64,
    /// Stop a restart once its objective exceeds this value.
    pub target_margin: f64,
    /// Allow open disks of radius exactly one (the center stays outside).
    pub unconstrained_radii: bool,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams {
            restarts: 32,
            iterations: 4000,
            step: (0.3, 1e-4),
            seed: 20240611,
            target_margin: 0.02,
            unconstrained_radii: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Attempt {
    pub k: usize,
    /// Best `min(coverage overlap, disjointness slack)`.
    pub best_objective: f64,
    pub best_config: RingConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub k_min: usize,
    pub config: RingConfig,
    /// Adjacent-arc overlap of the certified configuration.
    pub margin: f64,
    pub oracle_directions: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub found: Option<Certificate>,
    pub attempts: Vec<Attempt>,
}

fn radius_cap(mode: RingMode, params: &SearchParams) -> f64 {
    if params.unconstrained_radii && mode == RingMode::Open {
        1.0
    } else {
        1.0 - 1e-6
    }
}

fn objective(c: &RingConfig) -> f64 {
    c.adjacent_overlap().min(c.disjointness_slack())
}

fn local_search(k: usize, mode: RingMode, params: &SearchParams, stream: u64) -> (f64, RingConfig) {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(stream);
    let cap = radius_cap(mode, params);
    let clamp = |r: f64| r.clamp(1e-6, cap);
    let mut angles: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..TAU)).collect();
    let mut radii: Vec<f64> = (0..k).map(|_| rng.random_range(0.2..0.95)).collect();
    let mut best = RingConfig::new(&angles, &radii, mode);
    let mut best_obj = objective(&best);
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let (s0, s1) = params.step;
    let decay = if params.iterations > 1 {
        (s1 / s0).powf(1.0 / (params.iterations - 1) as f64)
    } else {
        1.0
    };
    let mut step = s0;
    for _ in 0..params.iterations {
        if best_obj >= params.target_margin {
            break;
        }
        let cand_a: Vec<f64> = angles.iter().map(|a| a + step * normal.sample(&mut rng)).collect();
        let cand_r: Vec<f64> = radii
            .iter()
            .map(|r| clamp(r + 0.5 * step * normal.sample(&mut rng)))
            .collect();
        let cand = RingConfig::new(&cand_a, &cand_r, mode);
        let obj = objective(&cand);
        if obj > best_obj {
            best_obj = obj;
            best = cand;
            angles = cand_a;
            radii = cand_r;
        }
        step *= decay;
    }
    (best_obj, best.canonical())
}

fn certify(c: &RingConfig, params: &SearchParams) -> Result<bool> {
    let margin = c.adjacent_overlap();
    let overlap_ok = match c.mode {
        RingMode::Closed => margin >= 0.0,
        RingMode::Open => margin > 0.0,
    };
    let valid = if params.unconstrained_radii {
        c.disjointness_slack() > DEFAULT_EPS_SPACE
    } else {
        ring_config_valid(c).0
    };
    if !(overlap_ok && valid) {
        return Ok(false);
    }
    let scene = c.scene()?;
    let exact = is_semiconvex_at(&scene, Point::ORIGIN)?.shadowed;
    Ok(exact && oracle_shadowed(&scene, Point::ORIGIN, CERTIFICATE_DIRECTIONS)?)
}

/// Smallest `k ≤ k_max` for which multi-start local search finds a valid,
/// blocking configuration, certified by the exact test and an independent
/// dense ray oracle. Deterministic for a fixed seed.
pub fn solve_min_blocking(k_max: usize, mode: RingMode, params: &SearchParams) -> Result<SolveReport> {
    if k_max < 2 {
        return Err(Error::InvalidArgument("k_max must be at least 2".into()));
    }
    if params.restarts == 0 || !(params.step.0 > 0.0 && params.step.1 > 0.0) {
        return Err(Error::InvalidArgument("need restarts ≥ 1 and positive steps".into()));
    }
    let mut attempts = Vec::new();
    for k in 2..=k_max {
        let results: Vec<(f64, RingConfig)> = (0..params.restarts)
            .into_par_iter()
            .map(|r| local_search(k, mode, params, (k * params.restarts + r) as u64))
            .collect();
        // Best objective wins; the lowest restart index breaks ties.
        let mut best = 0;
        for (i, r) in results.iter().enumerate() {
            if r.0 > results[best].0 {
                best = i;
            }
        }
        let (obj, config) = results[best].clone();
        attempts.push(Attempt {
            k,
            best_objective: obj,
            best_config: config.clone(),
        });
        if obj > 0.0 && certify(&config, params)? {
            return Ok(SolveReport {
                found: Some(Certificate {
                    k_min: k,
                    margin: config.adjacent_overlap(),
                    config,
                    oracle_directions: CERTIFICATE_DIRECTIONS,
                }),
                attempts,
            });
        }
    }
    Ok(SolveReport { found: None, attempts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn validity_examples() {
        let c = RingConfig::new(&[0.0, PI], &[0.9, 0.9], RingMode::Closed);
        assert!(ring_config_valid(&c).0);
        let c = RingConfig::new(&[0.0, PI / 3.0], &[0.9, 0.9], RingMode::Closed);
        let (ok, v) = ring_config_valid(&c);
        assert!(!ok);
        assert!(matches!(v[0], Violation::Overlap { i: 0, j: 1, .. }));
        let c = RingConfig::new(&[0.0, PI], &[1.0, 0.5], RingMode::Open);
        assert!(!ring_config_valid(&c).0);
        assert!(ring_config_shadowed(&c).is_err());
    }

    #[test]
    fn two_disks_never_block() {
        let c = RingConfig::new(&[0.0, PI], &[0.99, 0.99], RingMode::Closed);
        assert!(!ring_config_shadowed(&c).unwrap());
    }

    #[test]
    fn four_equal_disks_below_threshold_do_not_block() {
        let c = RingConfig::symmetric(4, FRAC_PI_4.sin() - 1e-6, RingMode::Closed);
        assert!(ring_config_valid(&c).0);
        assert!(!ring_config_shadowed(&c).unwrap());
        assert!(!ring_config_shadowed_closed_form(&c).unwrap());
    }

    #[test]
    fn abutting_arcs_block_only_when_closed() {
        // Angular radii summing to π, adjacent centers exactly αᵢ + αⱼ apart.
        let alpha = [0.9, 1.0, PI - 1.9];
        let angles = [0.0, alpha[0] + alpha[1], alpha[0] + 2.0 * alpha[1] + alpha[2]];
        let radii: Vec<f64> = alpha.iter().map(|a| a.sin()).collect();
        let closed = RingConfig::new(&angles, &radii, RingMode::Closed);
        assert!(ring_config_valid(&closed).0);
        assert!(closed.adjacent_overlap().abs() < 1e-12);
        assert!(ring_config_shadowed(&closed).unwrap());
        assert!(!ring_config_shadowed(&closed.with_mode(RingMode::Open)).unwrap());
    }

    #[test]
    fn scan_is_positive() {
        let rows = symmetric_infeasibility_scan(12).unwrap();
        assert_eq!(rows.len(), 11);
        assert!(rows.iter().all(|r| r.deficit > 0.0));
        assert!(symmetric_infeasibility_scan(1).is_err());
    }

    #[test]
    fn canonical_rotation_starts_at_zero() {
        let c = RingConfig::new(&[2.0, 1.0, 4.0], &[0.1, 0.2, 0.3], RingMode::Open).canonical();
        assert_eq!(c.angles[0].radians(), 0.0);
        assert_eq!(c.radii, vec![0.2, 0.1, 0.3]);
    }
}
