//! Raster classification of the shadow region.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::coverage::is_semiconvex_at;
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::scene::{BBox, Scene};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Free,
    Shadowed,
    /// Cell center in the closure of `E`.
    Inside,
}

/// Axis-aligned grid of square cells over a bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub origin: Point,
    pub resolution: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Grid {
    pub fn covering(bbox: BBox, resolution: f64) -> Result<Grid> {
        if !resolution.is_finite() || resolution <= 0.0 {
            return Err(Error::InvalidArgument("resolution must be positive".into()));
        }
        let nx = ((bbox.width() / resolution).ceil() as usize).max(1);
        let ny = ((bbox.height() / resolution).ceil() as usize).max(1);
        Ok(Grid {
            origin: bbox.min,
            resolution,
            nx,
            ny,
        })
    }

    pub fn center(&self, i: usize, j: usize) -> Point {
        Point::new(
            self.origin.x + (i as f64 + 0.5) * self.resolution,
            self.origin.y + (j as f64 + 0.5) * self.resolution,
        )
    }

    pub fn cell_of(&self, p: Point) -> Option<(usize, usize)> {
        let fx = ((p.x - self.origin.x) / self.resolution).floor();
        let fy = ((p.y - self.origin.y) / self.resolution).floor();
        if fx < 0.0 || fy < 0.0 || fx >= self.nx as f64 || fy >= self.ny as f64 {
            return None;
        }
        Some((fx as usize, fy as usize))
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn bbox(&self) -> BBox {
        BBox {
            min: self.origin,
            max: Point::new(
                self.origin.x + self.nx as f64 * self.resolution,
                self.origin.y + self.ny as f64 * self.resolution,
            ),
        }
    }
}

/// 8-connected labeling of cells satisfying `pred`. Returns per-cell labels
/// and the label count.
pub fn label_components(grid: &Grid, pred: impl Fn(usize) -> bool) -> (Vec<Option<u32>>, usize) {
    let mut labels = vec![None; grid.len()];
    let mut count = 0u32;
    let mut queue = VecDeque::new();
    for start in 0..grid.len() {
        if labels[start].is_some() || !pred(start) {
            continue;
        }
        labels[start] = Some(count);
        queue.push_back(start);
        while let Some(idx) = queue.pop_front() {
            let (i, j) = ((idx % grid.nx) as i64, (idx / grid.nx) as i64);
            for dj in -1..=1 {
                for di in -1..=1 {
                    let (ni, nj) = (i + di, j + dj);
                    if ni < 0 || nj < 0 || ni >= grid.nx as i64 || nj >= grid.ny as i64 {
                        continue;
                    }
                    let n = grid.index(ni as usize, nj as usize);
                    if labels[n].is_none() && pred(n) {
                        labels[n] = Some(count);
                        queue.push_back(n);
                    }
                }
            }
        }
        count += 1;
    }
    (labels, count as usize)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShadowRaster {
    pub grid: Grid,
    /// Row-major, `j * nx + i`.
    pub cells: Vec<Cell>,
    pub labels: Vec<Option<u32>>,
    pub shadow_components: usize,
}

impl ShadowRaster {
    pub fn cell(&self, i: usize, j: usize) -> Cell {
        self.cells[self.grid.index(i, j)]
    }

    pub fn at(&self, p: Point) -> Option<Cell> {
        self.grid.cell_of(p).map(|(i, j)| self.cell(i, j))
    }

    pub fn shadow_count(&self) -> usize {
        self.cells.iter().filter(|c| **c == Cell::Shadowed).count()
    }

    pub fn shadow_nonempty(&self) -> bool {
        self.cells.contains(&Cell::Shadowed)
    }

    /// Centers of shadowed cells in row-major order.
    pub fn shadow_points(&self) -> Vec<Point> {
        (0..self.cells.len())
            .filter(|&k| self.cells[k] == Cell::Shadowed)
            .map(|k| self.grid.center(k % self.grid.nx, k / self.grid.nx))
            .collect()
    }

    /// Whether some non-`Inside` cell is cut off from the raster border
    /// (4-connectivity), i.e. `E` encloses a hole.
    pub fn has_enclosed_hole(&self) -> bool {
        let g = &self.grid;
        let mut seen = vec![false; g.len()];
        let mut queue = VecDeque::new();
        for j in 0..g.ny {
            for i in 0..g.nx {
                if (i == 0 || j == 0 || i + 1 == g.nx || j + 1 == g.ny) && self.cell(i, j) != Cell::Inside {
                    let k = g.index(i, j);
                    seen[k] = true;
                    queue.push_back(k);
                }
            }
        }
        while let Some(k) = queue.pop_front() {
            let (i, j) = (k % g.nx, k / g.nx);
            let mut nb = Vec::with_capacity(4);
            if i > 0 {
                nb.push(k - 1);
            }
            if i + 1 < g.nx {
                nb.push(k + 1);
            }
            if j > 0 {
                nb.push(k - g.nx);
            }
            if j + 1 < g.ny {
                nb.push(k + g.nx);
            }
            for n in nb {
                if !seen[n] && self.cells[n] != Cell::Inside {
                    seen[n] = true;
                    queue.push_back(n);
                }
            }
        }
        (0..g.len()).any(|k| !seen[k] && self.cells[k] != Cell::Inside)
    }
}

/// Classifies every cell center over the padded scene box.
pub fn shadow_scan(scene: &Scene, resolution: f64) -> Result<ShadowRaster> {
    let grid = Grid::covering(scene.bbox(), resolution)?;
    shadow_scan_grid(scene, grid)
}

pub fn shadow_scan_grid(scene: &Scene, grid: Grid) -> Result<ShadowRaster> {
    let cells: Vec<Result<Cell>> = (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let p = grid.center(k % grid.nx, k / grid.nx);
            if scene.in_closure(p) {
                return Ok(Cell::Inside);
            }
            let v = is_semiconvex_at(scene, p)?;
            Ok(if v.shadowed { Cell::Shadowed } else { Cell::Free })
        })
        .collect();
    let cells: Vec<Cell> = cells.into_iter().collect::<Result<_>>()?;
    let (labels, shadow_components) = label_components(&grid, |k| cells[k] == Cell::Shadowed);
    Ok(ShadowRaster {
        grid,
        cells,
        labels,
        shadow_components,
    })
}
