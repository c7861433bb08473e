//! Coning the complementary regions of a planar Θ-graph gives a flag
//! triangulation of the 2-sphere containing Θ as a full subcomplex.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::model::ThetaGraphSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SphereVertex {
    /// One of the two essential (valence `k`) vertices.
    Pole { index: usize },
    /// The `position`-th subdivision vertex of arm `arm`, counted from pole 0.
    Arm { arm: usize, position: usize },
    /// The cone point of the region between arm `region` and the next arm.
    Cone { region: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct SphereTriangulation {
    pub vertices: Vec<SphereVertex>,
    pub edges: Vec<[usize; 2]>,
    pub triangles: Vec<[usize; 3]>,
    pub certificate: SphereCertificate,
}

/// What was checked about the triangulation, each by direct inspection of
/// the simplices rather than by appeal to the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SphereCertificate {
    pub euler_characteristic: i64,
    pub edges_in_two_triangles: bool,
    pub links_are_cycles: bool,
    pub flag: bool,
    pub theta_is_full_subcomplex: bool,
}

impl SphereCertificate {
    pub fn is_flag_sphere(&self) -> bool {
        self.euler_characteristic == 2
            && self.edges_in_two_triangles
            && self.links_are_cycles
            && self.flag
            && self.theta_is_full_subcomplex
    }
}

fn key(a: usize, b: usize) -> [usize; 2] {
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

/// Embeds Θ with its arms as nested arcs between the poles. Region `j` is
/// bounded by arms `j` and `j+1 mod k`, so the wrap-around region between
/// the last and first arm is the outer face. Each region is coned off.
pub fn cone_planar_nerve(theta: &ThetaGraphSpec) -> SphereTriangulation {
    let k = theta.k();
    let mut vertices = vec![SphereVertex::Pole { index: 0 }, SphereVertex::Pole { index: 1 }];
    // arm paths from pole 0 to pole 1, as vertex indices
    let mut paths: Vec<Vec<usize>> = Vec::with_capacity(k);
    for (arm, &len) in theta.arms.iter().enumerate() {
        let mut path = vec![0];
        for position in 0..len as usize {
            path.push(vertices.len());
            vertices.push(SphereVertex::Arm { arm, position });
        }
        path.push(1);
        paths.push(path);
    }
    let theta_vertex_count = vertices.len();

    let mut edges = BTreeSet::new();
    for path in &paths {
        for w in path.windows(2) {
            edges.insert(key(w[0], w[1]));
        }
    }
    let theta_edges = edges.clone();

    let mut triangles = Vec::new();
    for region in 0..k {
        let cone = vertices.len();
        vertices.push(SphereVertex::Cone { region });
        let next = &paths[(region + 1) % k];
        let boundary_edges = paths[region].windows(2).chain(next.windows(2));
        for w in boundary_edges {
            edges.insert(key(cone, w[0]));
            edges.insert(key(cone, w[1]));
            let mut t = [cone, w[0], w[1]];
            t.sort_unstable();
            triangles.push(t);
        }
    }
    let edges: Vec<[usize; 2]> = edges.into_iter().collect();
    let certificate = certify(vertices.len(), &edges, &triangles, theta_vertex_count, &theta_edges);
    SphereTriangulation {
        vertices,
        edges,
        triangles,
        certificate,
    }
}

fn certify(
    vertex_count: usize,
    edges: &[[usize; 2]],
    triangles: &[[usize; 3]],
    theta_vertex_count: usize,
    theta_edges: &BTreeSet<[usize; 2]>,
) -> SphereCertificate {
    let euler_characteristic = vertex_count as i64 - edges.len() as i64 + triangles.len() as i64;

    let mut per_edge: BTreeMap<[usize; 2], usize> = edges.iter().map(|&e| (e, 0)).collect();
    let mut triangles_ok = true;
    for t in triangles {
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            match per_edge.get_mut(&key(a, b)) {
                Some(c) => *c += 1,
                None => triangles_ok = false,
            }
        }
    }
    let edges_in_two_triangles = triangles_ok && per_edge.values().all(|&c| c == 2);

    let links_are_cycles = (0..vertex_count).all(|v| link_is_cycle(v, triangles));

    let mut adjacent = vec![vec![false; vertex_count]; vertex_count];
    for &[a, b] in edges {
        adjacent[a][b] = true;
        adjacent[b][a] = true;
    }
    let triangle_set: BTreeSet<[usize; 3]> = triangles.iter().copied().collect();
    let mut flag = true;
    for a in 0..vertex_count {
        for b in a + 1..vertex_count {
            if !adjacent[a][b] {
                continue;
            }
            for c in b + 1..vertex_count {
                if adjacent[a][c] && adjacent[b][c] && !triangle_set.contains(&[a, b, c]) {
                    flag = false;
                }
            }
        }
    }

    // full: every edge of the triangulation between Θ vertices is a Θ edge
    let theta_is_full_subcomplex = edges
        .iter()
        .filter(|e| e[1] < theta_vertex_count)
        .all(|e| theta_edges.contains(e));

    SphereCertificate {
        euler_characteristic,
        edges_in_two_triangles,
        links_are_cycles,
        flag,
        theta_is_full_subcomplex,
    }
}

/// The link of `v` is a single cycle: every link vertex has degree two and
/// the link graph is connected.
fn link_is_cycle(v: usize, triangles: &[[usize; 3]]) -> bool {
    let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for t in triangles.iter().filter(|t| t.contains(&v)) {
        let others: Vec<usize> = t.iter().copied().filter(|&x| x != v).collect();
        adjacency.entry(others[0]).or_default().push(others[1]);
        adjacency.entry(others[1]).or_default().push(others[0]);
    }
    if adjacency.len() < 3 || adjacency.values().any(|n| n.len() != 2) {
        return false;
    }
    let start = *adjacency.keys().next().unwrap();
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &y in &adjacency[&x] {
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen.len() == adjacency.len()
}
