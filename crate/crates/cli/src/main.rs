//! `semiconvex` command-line tool.
//!
//! Exit codes: 0 success, 1 usage error, 2 parse or validation error,
//! 3 domain verdict (shadowed point, failed weak test, inconsistent audit,
//! unconverged hull, no blocking configuration found).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use semiconvex::analysis::{
    boundary_samples, components, inner_supporting_rays, shadow_scan, supporting_rays, theorem_audit,
    weak_semiconvexity_report, AuditConfig,
};
use semiconvex::hull::semiconvex_hull_grid;
use semiconvex::io::{fixture, parse_scene, render_svg, serialize_scene, shadow_pgm, FixtureMode, Overlays};
use semiconvex::shadow_problem::{solve_min_blocking, RingMode, SearchParams};
use semiconvex::{is_semiconvex_at, Error, Point, Scene};

#[derive(Parser)]
#[command(
    name = "semiconvex",
    version,
    about = "Semiconvexity analysis of planar obstacle scenes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Open,
    Closed,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether some open ray from a point misses the scene (exit 3 if shadowed).
    Check {
        /// Scene file, or `fixture:<name>[@open|@closed]`.
        scene: String,
        #[arg(long, value_parser = parse_point)]
        point: Point,
    },
    /// Sampled weak semiconvexity test over boundary points (exit 3 on failure).
    Weak {
        scene: String,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        /// Skip vertices, common-tangent contacts and other critical points.
        #[arg(long)]
        no_critical: bool,
    },
    /// Rasterize the shadow region.
    Shadow {
        scene: String,
        #[arg(long)]
        resolution: f64,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        pgm: Option<PathBuf>,
    },
    /// List supporting rays from an exterior point.
    Supports {
        scene: String,
        #[arg(long, value_parser = parse_point)]
        point: Point,
        /// Only inner supporting rays.
        #[arg(long)]
        inner: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check the scene against the structural theorems (exit 3 if inconsistent).
    Audit {
        scene: String,
        #[arg(long)]
        resolution: f64,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Grid approximation of the semiconvex hull (exit 3 if not converged).
    Hull {
        scene: String,
        #[arg(long)]
        resolution: f64,
        #[arg(long, default_value_t = 50)]
        max_iter: usize,
        #[arg(long)]
        pgm: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Search for the fewest disjoint disks on the unit circle blocking the center (exit 3 if none found).
    SolveShadow {
        #[arg(long)]
        kmax: usize,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = SearchParams::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = SearchParams::default().restarts)]
        restarts: usize,
        #[arg(long, default_value_t = SearchParams::default().iterations)]
        iterations: usize,
        /// Also admit open disks of radius exactly one.
        #[arg(long)]
        unconstrained_radii: bool,
        /// Write the certificate scene here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a built-in scene.
    Fixture {
        name: String,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Invalid(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<u8, Failure>;

fn parse_point(s: &str) -> Result<Point, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected x,y but got {s:?}"));
    }
    let x: f64 = parts[0].trim().parse().map_err(|e| format!("{e}"))?;
    let y: f64 = parts[1].trim().parse().map_err(|e| format!("{e}"))?;
    if !x.is_finite() || !y.is_finite() {
        return Err("coordinates must be finite".into());
    }
    Ok(Point::new(x, y))
}

fn fixture_mode(m: Mode) -> FixtureMode {
    match m {
        Mode::Open => FixtureMode::Open,
        Mode::Closed => FixtureMode::Closed,
    }
}

fn load(spec: &str) -> Result<Scene, Failure> {
    if let Some(rest) = spec.strip_prefix("fixture:") {
        let (name, mode) = match rest.split_once('@') {
            Some((n, m)) => (n, Some(m.parse::<FixtureMode>()?)),
            None => (rest, None),
        };
        return Ok(fixture(name, mode)?);
    }
    let text = fs::read_to_string(spec).map_err(|e| Failure::Io(format!("{spec}: {e}")))?;
    Ok(parse_scene(&text)?)
}

fn write(path: &PathBuf, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Check { scene, point } => {
            let s = load(&scene)?;
            let v = is_semiconvex_at(&s, point)?;
            match v.free_direction {
                Some(d) if !v.shadowed => {
                    println!("free witness_deg={:.9}", d.degrees());
                    Ok(0)
                }
                _ => {
                    println!("shadowed");
                    Ok(3)
                }
            }
        }
        Command::Weak {
            scene,
            samples,
            no_critical,
        } => {
            let s = load(&scene)?;
            let set = boundary_samples(&s, &components(&s), samples, !no_critical)?;
            let r = weak_semiconvexity_report(&s, &set)?;
            println!("pass={}", r.pass);
            println!("tested={}", r.tested);
            println!("critical_points_included={}", r.critical_points_included);
            println!("failures={}", r.failures.len());
            for (p, c) in &r.failures {
                println!("failure point={},{} component={c}", p.x, p.y);
            }
            Ok(if r.pass { 0 } else { 3 })
        }
        Command::Shadow {
            scene,
            resolution,
            svg,
            pgm,
        } => {
            let s = load(&scene)?;
            let r = shadow_scan(&s, resolution)?;
            println!("grid={}x{}", r.grid.nx, r.grid.ny);
            println!("shadow_cells={}", r.shadow_count());
            println!("shadow_components={}", r.shadow_components);
            if let Some(path) = svg {
                let overlays = Overlays {
                    shadow: Some(&r),
                    ..Overlays::default()
                };
                write(&path, &render_svg(&s, &overlays))?;
            }
            if let Some(path) = pgm {
                write(&path, &shadow_pgm(&r))?;
            }
            Ok(0)
        }
        Command::Supports {
            scene,
            point,
            inner,
            svg,
        } => {
            let s = load(&scene)?;
            let part = components(&s);
            let rays = if inner {
                inner_supporting_rays(&s, &part, point)?
            } else {
                supporting_rays(&s, &part, point)?
            };
            println!("count={}", rays.len());
            for r in &rays {
                println!(
                    "component={} direction_deg={:.9} touch={},{} obstacle={} inner={}",
                    r.component,
                    r.ray.direction.degrees(),
                    r.touch_point.x,
                    r.touch_point.y,
                    r.touch_obstacle,
                    r.inner
                );
            }
            if let Some(path) = svg {
                let overlays = Overlays {
                    rays: rays.iter().map(|r| r.ray).collect(),
                    ..Overlays::default()
                };
                write(&path, &render_svg(&s, &overlays))?;
            }
            Ok(0)
        }
        Command::Audit {
            scene,
            resolution,
            samples,
            csv,
        } => {
            let s = load(&scene)?;
            let r = theorem_audit(&s, &AuditConfig::new(resolution, samples))?;
            print!("{}", r.to_key_value());
            if let Some(path) = csv {
                write(&path, &r.to_csv())?;
            }
            Ok(if r.all_consistent() { 0 } else { 3 })
        }
        Command::Hull {
            scene,
            resolution,
            max_iter,
            pgm,
            svg,
        } => {
            let s = load(&scene)?;
            let h = semiconvex_hull_grid(&s, resolution, max_iter)?;
            println!("grid={}x{}", h.grid.nx, h.grid.ny);
            println!("iterations={}", h.iterations);
            println!("converged={}", h.converged);
            println!("delta={}", h.delta);
            println!("base_cells={}", h.base.iter().filter(|b| **b).count());
            println!("added_cells={}", h.added());
            if let Some(path) = pgm {
                write(&path, &h.to_pgm())?;
            }
            if let Some(path) = svg {
                let overlays = Overlays {
                    hull: Some(&h),
                    ..Overlays::default()
                };
                write(&path, &render_svg(&s, &overlays))?;
            }
            Ok(if h.converged { 0 } else { 3 })
        }
        Command::SolveShadow {
            kmax,
            mode,
            seed,
            restarts,
            iterations,
            unconstrained_radii,
            out,
        } => {
            let ring_mode = match mode {
                Mode::Open => RingMode::Open,
                Mode::Closed => RingMode::Closed,
            };
            let params = SearchParams {
                seed,
                restarts,
                iterations,
                unconstrained_radii,
                ..SearchParams::default()
            };
            let report = solve_min_blocking(kmax, ring_mode, &params)?;
            match report.found {
                Some(c) => {
                    let text = serialize_scene(&c.config.scene()?);
                    match out {
                        Some(path) => write(&path, &text)?,
                        None => print!("{text}"),
                    }
                    println!("k_min={} mode={} margin={:e}", c.k_min, ring_mode.name(), c.margin);
                    Ok(0)
                }
                None => {
                    let best: Vec<String> = report
                        .attempts
                        .iter()
                        .map(|a| format!("{}:{:e}", a.k, a.best_objective))
                        .collect();
                    println!("k_min=none mode={} best_margins={}", ring_mode.name(), best.join(","));
                    Ok(3)
                }
            }
        }
        Command::Fixture { name, mode, out } => {
            let s = fixture(&name, mode.map(fixture_mode))?;
            let text = serialize_scene(&s);
            match out {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
