//! JSON scene files. Angles are in degrees in files and radians everywhere
//! else; this module is the only place that converts.

use serde::{Deserialize, Serialize};

use crate::arc::DEFAULT_EPS_ANGLE;
use crate::arc::{Arc, ArcSet};
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::scene::{Boundary, Obstacle, Scene, Shape, DEFAULT_EPS_SPACE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndFlags {
    #[serde(rename = "cc")]
    ClosedClosed,
    #[serde(rename = "oo")]
    OpenOpen,
    #[serde(rename = "co")]
    ClosedOpen,
    #[serde(rename = "oc")]
    OpenClosed,
}

impl EndFlags {
    fn of(start_closed: bool, end_closed: bool) -> Self {
        match (start_closed, end_closed) {
            (true, true) => EndFlags::ClosedClosed,
            (false, false) => EndFlags::OpenOpen,
            (true, false) => EndFlags::ClosedOpen,
            (false, true) => EndFlags::OpenClosed,
        }
    }

    fn closed(self) -> (bool, bool) {
        match self {
            EndFlags::ClosedClosed => (true, true),
            EndFlags::OpenOpen => (false, false),
            EndFlags::ClosedOpen => (true, false),
            EndFlags::OpenClosed => (false, true),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum BoundaryName {
    Open,
    Closed,
    Partial,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum ObstacleFile {
    Disk {
        center: [f64; 2],
        radius: f64,
        boundary: BoundaryName,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        included_arcs: Option<Vec<(f64, f64, EndFlags)>>,
    },
    Polygon {
        vertices: Vec<[f64; 2]>,
        boundary: BoundaryName,
    },
    Capsule {
        a: [f64; 2],
        b: [f64; 2],
        radius: f64,
        boundary: BoundaryName,
    },
}

fn default_eps_angle() -> f64 {
    DEFAULT_EPS_ANGLE
}

fn default_eps_space() -> f64 {
    DEFAULT_EPS_SPACE
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneFile {
    #[serde(default = "default_eps_angle")]
    eps_angle: f64,
    #[serde(default = "default_eps_space")]
    eps_space: f64,
    obstacles: Vec<ObstacleFile>,
}

/// Degrees kept in files are rounded to this many decimals so that
/// serialization is a fixpoint after one round trip.
const DEGREE_DECIMALS: i32 = 9;

fn round_degrees(d: f64) -> f64 {
    let scale = 10f64.powi(DEGREE_DECIMALS);
    let r = (d * scale).round() / scale;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn point(p: [f64; 2]) -> Point {
    Point::new(p[0], p[1])
}

fn pair(p: Point) -> [f64; 2] {
    [p.x, p.y]
}

fn boundary_of(
    index: usize,
    name: BoundaryName,
    arcs: Option<Vec<(f64, f64, EndFlags)>>,
    eps_angle: f64,
) -> Result<Boundary> {
    let invalid = |reason: &str| Error::InvalidObstacle {
        index,
        reason: reason.to_string(),
    };
    match (name, arcs) {
        (BoundaryName::Open, None) => Ok(Boundary::Open),
        (BoundaryName::Closed, None) => Ok(Boundary::Closed),
        (BoundaryName::Partial, Some(list)) => {
            let mut out = Vec::with_capacity(list.len());
            for (start, end, flags) in list {
                if !start.is_finite() || !end.is_finite() {
                    return Err(invalid("non-finite arc endpoint"));
                }
                let mut width = end - start;
                if !(0.0..=360.0).contains(&width) {
                    width = width.rem_euclid(360.0);
                }
                let (sc, ec) = flags.closed();
                out.push(Arc::from_width(start.to_radians(), width.to_radians(), sc, ec));
            }
            Ok(Boundary::Partial(ArcSet::from_arcs(out, eps_angle)))
        }
        (BoundaryName::Partial, None) => Err(invalid("partial boundary needs included_arcs")),
        (_, Some(_)) => Err(invalid("included_arcs only allowed with partial boundary")),
    }
}

fn to_obstacle(index: usize, o: ObstacleFile, eps_angle: f64) -> Result<Obstacle> {
    let (shape, boundary) = match o {
        ObstacleFile::Disk {
            center,
            radius,
            boundary,
            included_arcs,
        } => (
            Shape::Disk {
                center: point(center),
                radius,
            },
            boundary_of(index, boundary, included_arcs, eps_angle)?,
        ),
        ObstacleFile::Polygon { vertices, boundary } => (
            Shape::Polygon {
                vertices: vertices.into_iter().map(point).collect(),
            },
            boundary_of(index, boundary, None, eps_angle)?,
        ),
        ObstacleFile::Capsule { a, b, radius, boundary } => (
            Shape::Capsule {
                a: point(a),
                b: point(b),
                radius,
            },
            boundary_of(index, boundary, None, eps_angle)?,
        ),
    };
    Obstacle::new(index, shape, boundary).map_err(|e| match e {
        Error::InvalidObstacle { reason, .. } => Error::InvalidObstacle { index, reason },
        other => other,
    })
}

/// Parses and validates a scene file.
pub fn parse_scene(text: &str) -> Result<Scene> {
    let file: SceneFile = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    for (name, v) in [("eps_angle", file.eps_angle), ("eps_space", file.eps_space)] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::InvalidArgument(format!("{name} must be finite and nonnegative")));
        }
    }
    let obstacles = file
        .obstacles
        .into_iter()
        .enumerate()
        .map(|(i, o)| to_obstacle(i, o, file.eps_angle))
        .collect::<Result<Vec<_>>>()?;
    Ok(Scene::with_tolerances(obstacles, file.eps_angle, file.eps_space))
}

fn name_of(b: &Boundary) -> BoundaryName {
    match b {
        Boundary::Open => BoundaryName::Open,
        Boundary::Closed => BoundaryName::Closed,
        Boundary::Partial(_) => BoundaryName::Partial,
    }
}

fn to_file(o: &Obstacle) -> ObstacleFile {
    let boundary = name_of(&o.boundary);
    match &o.shape {
        Shape::Disk { center, radius } => ObstacleFile::Disk {
            center: pair(*center),
            radius: *radius,
            boundary,
            included_arcs: match &o.boundary {
                Boundary::Partial(set) => Some(
                    set.arcs()
                        .iter()
                        .map(|a| {
                            let start = round_degrees(a.start.degrees());
                            let end = round_degrees(start + a.width.to_degrees());
                            (start, end, EndFlags::of(a.start_closed, a.end_closed))
                        })
                        .collect(),
                ),
                _ => None,
            },
        },
        Shape::Polygon { vertices } => ObstacleFile::Polygon {
            vertices: vertices.iter().map(|v| pair(*v)).collect(),
            boundary,
        },
        Shape::Capsule { a, b, radius } => ObstacleFile::Capsule {
            a: pair(*a),
            b: pair(*b),
            radius: *radius,
            boundary,
        },
    }
}

/// Canonical text: one obstacle per line, fixed key order.
pub fn serialize_scene(scene: &Scene) -> String {
    let mut s = String::from("{\n");
    s.push_str(&format!("  \"eps_angle\": {},\n", json_number(scene.eps_angle)));
    s.push_str(&format!("  \"eps_space\": {},\n", json_number(scene.eps_space)));
    if scene.obstacles.is_empty() {
        s.push_str("  \"obstacles\": []\n}\n");
        return s;
    }
    s.push_str("  \"obstacles\": [\n");
    let lines: Vec<String> = scene
        .obstacles
        .iter()
        .map(|o| {
            format!(
                "    {}",
                serde_json::to_string(&to_file(o)).expect("finite scene serializes")
            )
        })
        .collect();
    s.push_str(&lines.join(",\n"));
    s.push_str("\n  ]\n}\n");
    s
}

fn json_number(v: f64) -> String {
    serde_json::to_string(&v).expect("finite number")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Angle;

    #[test]
    fn minimal_disk_file() {
        let s =
            parse_scene(r#"{"obstacles":[{"kind":"disk","center":[1,2],"radius":0.5,"boundary":"closed"}]}"#).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.eps_angle, 1e-9);
        assert_eq!(s.eps_space, 1e-9);
    }

    #[test]
    fn nonconvex_polygon_reports_index() {
        let text = r#"{"obstacles":[
            {"kind":"disk","center":[0,0],"radius":1,"boundary":"open"},
            {"kind":"polygon","vertices":[[0,0],[2,0],[1,0.2],[1,2]],"boundary":"open"}]}"#;
        match parse_scene(text) {
            Err(Error::InvalidObstacle { index, .. }) => assert_eq!(index, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn degenerate_partial_arc_is_a_point() {
        let s = parse_scene(
            r#"{"obstacles":[{"kind":"disk","center":[0,0],"radius":1,"boundary":"partial","included_arcs":[[45,45,"cc"]]}]}"#,
        )
        .unwrap();
        let Boundary::Partial(set) = &s.obstacles[0].boundary else {
            panic!()
        };
        assert_eq!(set.arcs().len(), 1);
        assert_eq!(set.arcs()[0].width, 0.0);
        assert!(set.contains(Angle::from_degrees(45.0).unwrap(), 1e-12));
        assert!(s.obstacles[0].boundary_member(Point::unit(45f64.to_radians()), 1e-9));
    }

    #[test]
    fn syntax_and_unknown_keys_rejected() {
        match parse_scene("{\n  \"obstacles\": [\n  oops") {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(parse_scene(r#"{"obstacles":[],"colour":1}"#).is_err());
        assert!(parse_scene(
            r#"{"obstacles":[{"kind":"disk","center":[0,0],"radius":1,"boundary":"open","extra":1}]}"#
        )
        .is_err());
        assert!(parse_scene(
            r#"{"obstacles":[{"kind":"capsule","a":[0,0],"b":[1,0],"radius":1,"boundary":"partial"}]}"#
        )
        .is_err());
    }

    #[test]
    fn round_trip_is_byte_stable() {
        let text = r#"{"eps_angle":1e-10,"obstacles":[
            {"kind":"disk","center":[0.1,0.2],"radius":0.3,"boundary":"partial","included_arcs":[[350,20,"co"],[100.5,200.25,"oo"]]},
            {"kind":"polygon","vertices":[[0,0],[1,0],[0,1]],"boundary":"closed"},
            {"kind":"capsule","a":[0,0],"b":[1,1],"radius":0.1,"boundary":"open"}]}"#;
        let s = parse_scene(text).unwrap();
        let once = serialize_scene(&s);
        let again = parse_scene(&once).unwrap();
        assert_eq!(serialize_scene(&again), once);
        assert_eq!(again.obstacles.len(), 3);
        assert_eq!(again.eps_angle, 1e-10);
        assert_eq!(
            serialize_scene(&Scene::default()),
            "{\n  \"eps_angle\": 1e-9,\n  \"eps_space\": 1e-9,\n  \"obstacles\": []\n}\n"
        );
    }
}
