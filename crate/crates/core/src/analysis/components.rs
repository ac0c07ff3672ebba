use crate::scene::{Obstacle, Scene, Shape};
use crate::shape::{core_distance, polygon_sat_separation};

/// Connected components of `E`, as groups of obstacle ids.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentPartition {
    /// Sorted by smallest member id; ids ascending within a group.
    pub groups: Vec<Vec<usize>>,
    /// A group is smooth iff it is a single disk or a single capsule.
    pub smooth_flags: Vec<bool>,
    /// Component index of each obstacle id.
    pub component_of: Vec<usize>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn all_smooth(&self) -> bool {
        self.smooth_flags.iter().all(|&s| s)
    }
}

/// Signed gap between two obstacle closures (negative when the interiors
/// overlap) and a contact point on each.
pub fn separation(a: &Obstacle, b: &Obstacle) -> (f64, crate::Point, crate::Point) {
    let (ca, ra) = a.core();
    let (cb, rb) = b.core();
    let (dist, qa, qb) = core_distance(ca, cb);
    if dist > 0.0 {
        let u = (qb - qa).normalized();
        return (dist - ra - rb, qa + u * ra, qb - u * rb);
    }
    let sep = match (&a.shape, &b.shape) {
        (Shape::Polygon { vertices: va }, Shape::Polygon { vertices: vb }) => polygon_sat_separation(va, vb).min(0.0),
        _ => -(ra + rb),
    };
    (sep, qa, qa)
}

/// Whether two obstacles belong to the same connected component of `E`:
/// their interiors overlap, or their closures touch at a point that belongs
/// to at least one of them.
pub fn connected(a: &Obstacle, b: &Obstacle, eps_space: f64, eps_angle: f64) -> bool {
    let (sep, pa, pb) = separation(a, b);
    if sep < -eps_space {
        return true;
    }
    if sep > eps_space {
        return false;
    }
    a.boundary_member(pa, eps_angle) || b.boundary_member(pb, eps_angle)
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

pub fn components(scene: &Scene) -> ComponentPartition {
    let n = scene.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if connected(
                &scene.obstacles[i],
                &scene.obstacles[j],
                scene.eps_space,
                scene.eps_angle,
            ) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut component_of = vec![0; n];
    let mut root_slot: Vec<Option<usize>> = vec![None; n];
    for (i, comp) in component_of.iter_mut().enumerate() {
        let r = find(&mut parent, i);
        let slot = *root_slot[r].get_or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[slot].push(i);
        *comp = slot;
    }
    let smooth_flags = groups
        .iter()
        .map(|g| g.len() == 1 && scene.obstacles[g[0]].is_smooth())
        .collect();
    ComponentPartition {
        groups,
        smooth_flags,
        component_of,
    }
}
