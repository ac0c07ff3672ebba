//! Grid approximation of the 1-semiconvex hull by fixpoint iteration.
//!
//! Starting from a conservative rasterization of `E` (every cell whose
//! square meets the closure of `E`), each sweep marks the out-cells whose
//! center sees the current in-hull cells along every sampled direction.
//! Sweeps read the previous cell set only, so the result does not depend on
//! cell order.

use std::f64::consts::TAU;

use rayon::prelude::*;

use crate::analysis::Grid;
use crate::coverage::is_semiconvex_at;
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::raycast::critical_directions;
use crate::scene::Scene;

/// Uniform directions per cell test. A cell of side `h` seen from distance
/// `D` subtends about `h / D`; for the default resolutions and scene boxes
/// used here `TAU / 720` stays below that at the box diagonal.
pub const HULL_DIRECTIONS: usize = 720;

#[derive(Debug, Clone, PartialEq)]
pub struct HullRaster {
    pub grid: Grid,
    /// Row-major in-hull flags.
    pub cells: Vec<bool>,
    /// The starting cell set.
    pub base: Vec<bool>,
    pub iterations: usize,
    pub added_per_iteration: Vec<usize>,
    pub converged: bool,
    /// Cells added by the last sweep; zero once converged.
    pub delta: usize,
}

impl HullRaster {
    pub fn count(&self) -> usize {
        self.cells.iter().filter(|c| **c).count()
    }

    pub fn added(&self) -> usize {
        self.cells.iter().zip(&self.base).filter(|(c, b)| **c && !**b).count()
    }

    pub fn at(&self, p: Point) -> Option<bool> {
        self.grid.cell_of(p).map(|(i, j)| self.cells[self.grid.index(i, j)])
    }

    /// Portable graymap, top row first: 0 = starting set, 128 = added, 255 = out.
    pub fn to_pgm(&self) -> String {
        let g = &self.grid;
        let mut s = format!("P2\n{} {}\n255\n", g.nx, g.ny);
        for j in (0..g.ny).rev() {
            let row: Vec<&str> = (0..g.nx)
                .map(|i| {
                    let k = g.index(i, j);
                    match (self.base[k], self.cells[k]) {
                        (true, _) => "0",
                        (false, true) => "128",
                        (false, false) => "255",
                    }
                })
                .collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

/// Cells whose closed square meets the closure of `E`.
pub fn rasterize(scene: &Scene, grid: &Grid) -> Vec<bool> {
    let half_diag = grid.resolution * std::f64::consts::SQRT_2 / 2.0;
    let slack = half_diag * (1.0 + 1e-9) + scene.eps_space;
    (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let c = grid.center(k % grid.nx, k / grid.nx);
            scene.obstacles.iter().any(|o| o.signed_distance(c) <= slack)
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
struct IndexBox {
    i0: i64,
    i1: i64,
    j0: i64,
    j1: i64,
}

fn index_box(grid: &Grid, cells: &[bool]) -> Option<IndexBox> {
    let mut b: Option<IndexBox> = None;
    for (k, &c) in cells.iter().enumerate() {
        if !c {
            continue;
        }
        let (i, j) = ((k % grid.nx) as i64, (k / grid.nx) as i64);
        b = Some(match b {
            None => IndexBox {
                i0: i,
                i1: i,
                j0: j,
                j1: j,
            },
            Some(b) => IndexBox {
                i0: b.i0.min(i),
                i1: b.i1.max(i),
                j0: b.j0.min(j),
                j1: b.j1.max(j),
            },
        });
    }
    b
}

/// Walks the cells crossed by the open ray from the center of cell
/// `(i, j)`; returns whether it meets an in-hull cell. Through a cell
/// corner both side cells are checked as well.
fn ray_blocked(grid: &Grid, cells: &[bool], bx: &IndexBox, i: usize, j: usize, theta: f64) -> bool {
    let (dx, dy) = (theta.cos(), theta.sin());
    let h = grid.resolution;
    let (mut i, mut j) = (i as i64, j as i64);
    let sx: i64 = if dx > 0.0 {
        1
    } else if dx < 0.0 {
        -1
    } else {
        0
    };
    let sy: i64 = if dy > 0.0 {
        1
    } else if dy < 0.0 {
        -1
    } else {
        0
    };
    let mut t_max_x = if sx != 0 { 0.5 * h / dx.abs() } else { f64::INFINITY };
    let mut t_max_y = if sy != 0 { 0.5 * h / dy.abs() } else { f64::INFINITY };
    let t_dx = if sx != 0 { h / dx.abs() } else { f64::INFINITY };
    let t_dy = if sy != 0 { h / dy.abs() } else { f64::INFINITY };
    let tie = 1e-12 * h;
    let filled = |i: i64, j: i64| -> bool {
        i >= 0
            && j >= 0
            && (i as usize) < grid.nx
            && (j as usize) < grid.ny
            && cells[grid.index(i as usize, j as usize)]
    };
    loop {
        if (t_max_x - t_max_y).abs() <= tie {
            if filled(i + sx, j) || filled(i, j + sy) {
                return true;
            }
            i += sx;
            j += sy;
            t_max_x += t_dx;
            t_max_y += t_dy;
        } else if t_max_x < t_max_y {
            i += sx;
            t_max_x += t_dx;
        } else {
            j += sy;
            t_max_y += t_dy;
        }
        if filled(i, j) {
            return true;
        }
        let gone = (i > bx.i1 && sx >= 0) || (i < bx.i0 && sx <= 0) || (j > bx.j1 && sy >= 0) || (j < bx.j0 && sy <= 0);
        if gone {
            return false;
        }
    }
}

fn uniform_directions(n: usize) -> Vec<f64> {
    (0..n).map(|k| TAU * k as f64 / n as f64).collect()
}

/// First direction (hint first) along which the ray escapes the in-hull cells.
fn free_direction(
    grid: &Grid,
    cells: &[bool],
    bx: &IndexBox,
    (i, j): (usize, usize),
    hints: &[f64],
    dirs: &[f64],
    extra: &[f64],
) -> Option<f64> {
    hints
        .iter()
        .chain(dirs)
        .chain(extra)
        .copied()
        .find(|&t| !ray_blocked(grid, cells, bx, i, j, t))
}

/// Hull iteration from `initial` cells, using the scene only for the
/// tangency directions and first-guess witnesses.
pub fn semiconvex_hull_from(scene: &Scene, grid: Grid, initial: Vec<bool>, max_iter: usize) -> Result<HullRaster> {
    if max_iter == 0 {
        return Err(Error::InvalidArgument("max_iter must be at least 1".into()));
    }
    if initial.len() != grid.len() {
        return Err(Error::InvalidArgument("cell count does not match grid".into()));
    }
    let dirs = uniform_directions(HULL_DIRECTIONS);
    let mut cells = initial.clone();
    let mut witness: Vec<Option<f64>> = (0..grid.len())
        .into_par_iter()
        .map(|k| {
            if cells[k] {
                return None;
            }
            let c = grid.center(k % grid.nx, k / grid.nx);
            if scene.in_closure(c) {
                return None;
            }
            is_semiconvex_at(scene, c)
                .ok()
                .and_then(|v| v.free_direction)
                .map(|a| a.radians())
        })
        .collect();
    let mut added_per_iteration = Vec::new();
    let mut converged = false;
    for _ in 0..max_iter {
        let Some(bx) = index_box(&grid, &cells) else {
            added_per_iteration.push(0);
            converged = true;
            break;
        };
        let results: Vec<(bool, Option<f64>)> = (0..grid.len())
            .into_par_iter()
            .map(|k| {
                if cells[k] {
                    return (false, None);
                }
                let (i, j) = (k % grid.nx, k / grid.nx);
                let hints: Vec<f64> = witness[k].into_iter().collect();
                let c = grid.center(i, j);
                match free_direction(&grid, &cells, &bx, (i, j), &hints, &dirs, &[]) {
                    Some(t) => (false, Some(t)),
                    None => {
                        let extra = critical_directions(scene, c);
                        match free_direction(&grid, &cells, &bx, (i, j), &[], &[], &extra) {
                            Some(t) => (false, Some(t)),
                            None => (true, None),
                        }
                    }
                }
            })
            .collect();
        let mut added = 0;
        for (k, (shadowed, w)) in results.into_iter().enumerate() {
            if shadowed {
                cells[k] = true;
                added += 1;
            }
            witness[k] = w;
        }
        added_per_iteration.push(added);
        if added == 0 {
            converged = true;
            break;
        }
    }
    let delta = *added_per_iteration.last().unwrap_or(&0);
    Ok(HullRaster {
        grid,
        cells,
        base: initial,
        iterations: added_per_iteration.len(),
        added_per_iteration,
        converged,
        delta,
    })
}

/// Grid hull over the scene's padded bounding box.
pub fn semiconvex_hull_grid(scene: &Scene, resolution: f64, max_iter: usize) -> Result<HullRaster> {
    let grid = Grid::covering(scene.bbox(), resolution)?;
    let base = rasterize(scene, &grid);
    semiconvex_hull_from(scene, grid, base, max_iter)
}
