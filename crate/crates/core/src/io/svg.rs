//! Deterministic SVG rendering of scenes and analysis overlays.

use std::f64::consts::TAU;
use std::fmt::Write;

use crate::analysis::{Cell, ShadowRaster};
use crate::geom::{Angle, Point, Ray};
use crate::hull::HullRaster;
use crate::scene::{BBox, Boundary, Obstacle, Scene, Shape};

#[derive(Debug, Clone, Default)]
pub struct Overlays<'a> {
    pub shadow: Option<&'a ShadowRaster>,
    pub hull: Option<&'a HullRaster>,
    pub rays: Vec<Ray>,
    /// Exterior points with a direction whose open ray misses the scene.
    pub witnesses: Vec<(Point, Angle)>,
}

fn f(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// World `(x, y)` to SVG user space, which points `y` downwards.
fn xy(p: Point) -> String {
    format!("{} {}", f(p.x), f(-p.y))
}

fn arc_path(center: Point, r: f64, start: f64, width: f64) -> String {
    let p0 = center + Point::unit(start) * r;
    let p1 = center + Point::unit(start + width) * r;
    let large = if width > TAU / 2.0 { 1 } else { 0 };
    format!("M {} A {} {} 0 {} 0 {}", xy(p0), f(r), f(r), large, xy(p1))
}

fn outline(o: &Obstacle) -> String {
    match &o.shape {
        Shape::Disk { center, radius } => {
            let top = *center + Point::new(0.0, *radius);
            let bottom = *center - Point::new(0.0, *radius);
            format!(
                "M {} A {r} {r} 0 1 0 {} A {r} {r} 0 1 0 {} Z",
                xy(top),
                xy(bottom),
                xy(top),
                r = f(*radius)
            )
        }
        Shape::Polygon { vertices } => {
            let pts: Vec<String> = vertices.iter().map(|v| xy(*v)).collect();
            format!("M {} Z", pts.join(" L "))
        }
        Shape::Capsule { a, b, radius } => {
            let n = (*b - *a).normalized().perp() * *radius;
            format!(
                "M {} L {} A {r} {r} 0 0 0 {} L {} A {r} {r} 0 0 0 {} Z",
                xy(*a - n),
                xy(*b - n),
                xy(*b + n),
                xy(*a + n),
                xy(*a - n),
                r = f(*radius)
            )
        }
    }
}

fn cells_rect(out: &mut String, origin: Point, h: f64, i: usize, j: usize, class: &str) {
    let x = origin.x + i as f64 * h;
    let y = origin.y + (j + 1) as f64 * h;
    let _ = writeln!(
        out,
        "<rect class=\"{class}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\"/>",
        f(x),
        f(-y),
        f(h),
        f(h)
    );
}

fn frame(scene: &Scene, overlays: &Overlays) -> BBox {
    let mut bb = scene.bbox();
    let mut grow = |g: BBox| {
        bb.min = Point::new(bb.min.x.min(g.min.x), bb.min.y.min(g.min.y));
        bb.max = Point::new(bb.max.x.max(g.max.x), bb.max.y.max(g.max.y));
    };
    if let Some(s) = overlays.shadow {
        grow(s.grid.bbox());
    }
    if let Some(h) = overlays.hull {
        grow(h.grid.bbox());
    }
    bb
}

/// Renders the scene: open boundaries dashed, closed solid, partial
/// boundaries solid on their included arcs only. Overlays are drawn in a
/// fixed order: hull, shadow, obstacles, rays, witnesses.
pub fn render_svg(scene: &Scene, overlays: &Overlays) -> String {
    let bb = frame(scene, overlays);
    let diag = bb.diagonal();
    let stroke = diag / 400.0;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\" width=\"800\" height=\"{}\">",
        f(bb.min.x),
        f(-bb.max.y),
        f(bb.width()),
        f(bb.height()),
        (800.0 * bb.height() / bb.width()).round() as i64
    );
    let _ = writeln!(
        s,
        "<style>path,line{{fill:none;stroke-width:{sw}}} .obstacle{{fill:#d8d8d8;stroke:none}} .open{{stroke:#000;stroke-dasharray:{d} {d}}} .closed{{stroke:#000}} .axis{{stroke:#bbb}} .shadow{{fill:#e05050;fill-opacity:0.6}} .hull{{fill:#5080e0;fill-opacity:0.35}} .ray{{stroke:#207020}} .witness{{stroke:#c07000}}</style>",
        sw = f(stroke),
        d = f(4.0 * stroke)
    );
    let _ = writeln!(
        s,
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\"><path d=\"M 0 0 L 10 5 L 0 10 Z\" style=\"fill:#207020;stroke:none\"/></marker></defs>"
    );
    let _ = writeln!(
        s,
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" style=\"fill:#fff\"/>",
        f(bb.min.x),
        f(-bb.max.y),
        f(bb.width()),
        f(bb.height())
    );
    if bb.min.y <= 0.0 && bb.max.y >= 0.0 {
        let _ = writeln!(
            s,
            "<line class=\"axis\" x1=\"{}\" y1=\"0.000000\" x2=\"{}\" y2=\"0.000000\"/>",
            f(bb.min.x),
            f(bb.max.x)
        );
    }
    if bb.min.x <= 0.0 && bb.max.x >= 0.0 {
        let _ = writeln!(
            s,
            "<line class=\"axis\" x1=\"0.000000\" y1=\"{}\" x2=\"0.000000\" y2=\"{}\"/>",
            f(-bb.max.y),
            f(-bb.min.y)
        );
    }
    if let Some(h) = overlays.hull {
        for k in 0..h.cells.len() {
            if h.cells[k] && !h.base[k] {
                cells_rect(
                    &mut s,
                    h.grid.origin,
                    h.grid.resolution,
                    k % h.grid.nx,
                    k / h.grid.nx,
                    "hull",
                );
            }
        }
    }
    if let Some(r) = overlays.shadow {
        for k in 0..r.cells.len() {
            if r.cells[k] == Cell::Shadowed {
                cells_rect(
                    &mut s,
                    r.grid.origin,
                    r.grid.resolution,
                    k % r.grid.nx,
                    k / r.grid.nx,
                    "shadow",
                );
            }
        }
    }
    for o in &scene.obstacles {
        let d = outline(o);
        let _ = writeln!(s, "<path class=\"obstacle\" d=\"{d}\"/>");
        match &o.boundary {
            Boundary::Open => {
                let _ = writeln!(s, "<path class=\"open\" d=\"{d}\"/>");
            }
            Boundary::Closed => {
                let _ = writeln!(s, "<path class=\"closed\" d=\"{d}\"/>");
            }
            Boundary::Partial(arcs) => {
                let _ = writeln!(s, "<path class=\"open\" d=\"{d}\"/>");
                if let Shape::Disk { center, radius } = &o.shape {
                    for a in arcs.arcs() {
                        if a.width >= TAU - 1e-12 {
                            let _ = writeln!(s, "<path class=\"closed\" d=\"{d}\"/>");
                        } else if a.width == 0.0 {
                            let p = *center + a.start.unit() * *radius;
                            let _ = writeln!(
                                s,
                                "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" style=\"fill:#000\"/>",
                                f(p.x),
                                f(-p.y),
                                f(2.0 * stroke)
                            );
                        } else {
                            let _ = writeln!(
                                s,
                                "<path class=\"closed\" d=\"{}\"/>",
                                arc_path(*center, *radius, a.start.radians(), a.width)
                            );
                        }
                    }
                }
            }
        }
    }
    for r in &overlays.rays {
        let end = r.at(diag);
        let _ = writeln!(
            s,
            "<line class=\"ray\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" marker-end=\"url(#arrow)\"/>",
            f(r.origin.x),
            f(-r.origin.y),
            f(end.x),
            f(-end.y)
        );
    }
    for (p, a) in &overlays.witnesses {
        let end = *p + a.unit() * (diag / 10.0);
        let _ = writeln!(
            s,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" style=\"fill:#c07000\"/>",
            f(p.x),
            f(-p.y),
            f(2.0 * stroke)
        );
        let _ = writeln!(
            s,
            "<line class=\"witness\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" marker-end=\"url(#arrow)\"/>",
            f(p.x),
            f(-p.y),
            f(end.x),
            f(-end.y)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Portable graymap of a shadow raster, top row first: 0 = inside `E`,
/// 128 = shadowed, 255 = free.
pub fn shadow_pgm(r: &ShadowRaster) -> String {
    let g = &r.grid;
    let mut s = format!("P2\n{} {}\n255\n", g.nx, g.ny);
    for j in (0..g.ny).rev() {
        let row: Vec<&str> = (0..g.nx)
            .map(|i| match r.cell(i, j) {
                Cell::Inside => "0",
                Cell::Shadowed => "128",
                Cell::Free => "255",
            })
            .collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::fixtures::{compass_disks, FixtureMode};

    #[test]
    fn empty_scene_has_axes() {
        let svg = render_svg(&Scene::default(), &Overlays::default());
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("class=\"axis\"").count(), 2);
        assert!(!svg.contains("<path class=\"obstacle\""));
    }

    #[test]
    fn dashed_open_solid_closed() {
        let open = render_svg(&compass_disks(FixtureMode::Open), &Overlays::default());
        assert_eq!(open.matches("<path class=\"open\"").count(), 4);
        let closed = render_svg(&compass_disks(FixtureMode::Closed), &Overlays::default());
        assert_eq!(closed.matches("<path class=\"closed\"").count(), 4);
        assert_eq!(
            closed,
            render_svg(&compass_disks(FixtureMode::Closed), &Overlays::default())
        );
    }
}
