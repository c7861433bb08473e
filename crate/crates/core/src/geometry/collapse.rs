//! Maps on `tree × Z` that collapse disjoint paths of the tree factor to
//! points and fix the `Z` coordinate.
//!
//! Collapsing connected pieces of a tree gives a tree again, and a tree
//! geodesic meets each collapsed piece in one segment, so the image distance
//! is the number of geodesic edges joining different pieces.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use super::tree::{biregular_ball, TreeBall};
use super::GeometryError;

/// Which child continues a path downward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ChildOrder {
    First,
    Last,
}

/// The tree obtained by collapsing each class to a vertex.
#[derive(Debug, Clone, Serialize)]
pub struct QuotientTree {
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<u32>,
    pub fiber_size: Vec<usize>,
    pub valence: Vec<usize>,
    /// Whether every member of the class has all its tree neighbours in the ball.
    pub interior: Vec<bool>,
}

impl QuotientTree {
    pub fn distance(&self, mut u: usize, mut v: usize) -> u32 {
        let mut steps = 0;
        while self.depth[u] > self.depth[v] {
            u = self.parent[u].unwrap();
            steps += 1;
        }
        while self.depth[v] > self.depth[u] {
            v = self.parent[v].unwrap();
            steps += 1;
        }
        while u != v {
            u = self.parent[u].unwrap();
            v = self.parent[v].unwrap();
            steps += 2;
        }
        steps
    }
}

/// What was checked about the quotient on its interior classes.
#[derive(Debug, Clone, Serialize)]
pub struct QuotientCertificate {
    pub interior_classes: usize,
    pub expected_valence: usize,
    pub valences: Vec<usize>,
    pub fiber_sizes: Vec<usize>,
    pub valence_ok: bool,
    pub fiber_ok: bool,
}

/// `(x, t) ↦ (class_of[x], t)` on `ball × [-slab, slab]`.
#[derive(Debug, Clone, Serialize)]
pub struct VertexMap {
    pub domain: TreeBall,
    pub class_of: Vec<usize>,
    pub quotient: QuotientTree,
    pub slab: u32,
    /// Size of each collapsed piece; 1 for the identity.
    pub s: u32,
    /// Valence every interior quotient vertex should have.
    pub expected_valence: usize,
}

impl VertexMap {
    pub fn identity(domain: TreeBall, slab: u32) -> Self {
        let class_of: Vec<usize> = (0..domain.len()).collect();
        let expected_valence = domain.m.max(domain.n) as usize;
        Self::from_classes(domain, class_of, slab, 1, expected_valence)
    }

    fn from_classes(domain: TreeBall, class_of: Vec<usize>, slab: u32, s: u32, expected_valence: usize) -> Self {
        let count = class_of.iter().max().map_or(0, |&c| c + 1);
        let mut neighbours: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); count];
        let mut fiber_size = vec![0usize; count];
        let mut interior = vec![true; count];
        for v in 0..domain.len() {
            let c = class_of[v];
            fiber_size[c] += 1;
            if domain.depth[v] >= domain.radius {
                interior[c] = false;
            }
            if let Some(p) = domain.parent[v] {
                let pc = class_of[p];
                if pc != c {
                    neighbours[c].insert(pc);
                    neighbours[pc].insert(c);
                }
            }
        }
        let root = class_of[0];
        let mut parent = vec![None; count];
        let mut depth = vec![u32::MAX; count];
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(c) = queue.pop_front() {
            for &d in &neighbours[c] {
                if depth[d] == u32::MAX {
                    depth[d] = depth[c] + 1;
                    parent[d] = Some(c);
                    queue.push_back(d);
                }
            }
        }
        let valence = neighbours.iter().map(BTreeSet::len).collect();
        VertexMap {
            domain,
            class_of,
            quotient: QuotientTree {
                parent,
                depth,
                fiber_size,
                valence,
                interior,
            },
            slab,
            s,
            expected_valence,
        }
    }

    pub fn image(&self, v: usize, t: i64) -> (usize, i64) {
        (self.class_of[v], t)
    }

    /// ℓ1 product distance in the domain.
    pub fn domain_distance(&self, (u, s): (usize, i64), (v, t): (usize, i64)) -> u64 {
        u64::from(self.domain.distance(u, v)) + s.abs_diff(t)
    }

    /// ℓ1 product distance between images.
    pub fn image_distance(&self, (u, s): (usize, i64), (v, t): (usize, i64)) -> u64 {
        u64::from(self.quotient.distance(self.class_of[u], self.class_of[v])) + s.abs_diff(t)
    }

    pub fn certificate(&self) -> QuotientCertificate {
        let q = &self.quotient;
        let interior: Vec<usize> = (0..q.parent.len()).filter(|&c| q.interior[c]).collect();
        let valences: BTreeSet<usize> = interior.iter().map(|&c| q.valence[c]).collect();
        let fibers: BTreeSet<usize> = interior.iter().map(|&c| q.fiber_size[c]).collect();
        QuotientCertificate {
            interior_classes: interior.len(),
            expected_valence: self.expected_valence,
            valence_ok: valences.iter().all(|&v| v == self.expected_valence),
            fiber_ok: fibers.iter().all(|&f| f == self.s as usize),
            valences: valences.into_iter().collect(),
            fiber_sizes: fibers.into_iter().collect(),
        }
    }
}

fn check_collapse(s: u32, radius: u32) -> Result<(), GeometryError> {
    if s == 0 {
        return Err(GeometryError::ZeroCollapse);
    }
    if radius < s {
        return Err(GeometryError::RadiusTooSmall { radius, s });
    }
    Ok(())
}

/// On the line `T_{2,2}`, sends `[ks, (k+1)s - 1]` to `k`.
pub fn collapse_map_line(s: u32, radius: u32) -> Result<VertexMap, GeometryError> {
    check_collapse(s, radius)?;
    let ball = biregular_ball(2, 2, radius)?;
    let pos = ball.line_positions().expect("T_{2,2}");
    let buckets: Vec<i64> = pos.iter().map(|&x| x.div_euclid(i64::from(s))).collect();
    let lowest = *buckets.iter().min().unwrap();
    let class_of = buckets.iter().map(|&b| (b - lowest) as usize).collect();
    Ok(VertexMap::from_classes(ball, class_of, radius, s, 2))
}

/// On `T_{3,3}`, collapses paths of `s` vertices to obtain `T_{s+2,s+2}`: a
/// path runs down from the root, and every vertex next to a path but not on
/// one starts a new path running down from it.
pub fn collapse_map_tree(s: u32, radius: u32) -> Result<VertexMap, GeometryError> {
    collapse_map_tree_ordered(s, radius, ChildOrder::First)
}

pub fn collapse_map_tree_ordered(s: u32, radius: u32, order: ChildOrder) -> Result<VertexMap, GeometryError> {
    check_collapse(s, radius)?;
    let ball = biregular_ball(3, 3, radius)?;
    let mut class_of = vec![usize::MAX; ball.len()];
    let mut starts = VecDeque::from([0usize]);
    let mut classes = 0;
    while let Some(start) = starts.pop_front() {
        let class = classes;
        classes += 1;
        let mut path = vec![start];
        class_of[start] = class;
        let mut v = start;
        for _ in 1..s {
            let kids = ball.children(v);
            let next = match order {
                ChildOrder::First => kids.first(),
                ChildOrder::Last => kids.last(),
            };
            let Some(&next) = next else { break };
            class_of[next] = class;
            path.push(next);
            v = next;
        }
        for &p in &path {
            for &c in ball.children(p) {
                if class_of[c] == usize::MAX {
                    starts.push_back(c);
                }
            }
        }
    }
    debug_assert!(class_of.iter().all(|&c| c != usize::MAX));
    Ok(VertexMap::from_classes(ball, class_of, radius, s, s as usize + 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_buckets() {
        let f = collapse_map_line(3, 9).unwrap();
        let pos = f.domain.line_positions().unwrap();
        let mut by_pos: Vec<(i64, usize)> = pos.iter().copied().zip(f.class_of.iter().copied()).collect();
        by_pos.sort_unstable();
        let zero = by_pos.iter().position(|p| p.0 == 0).unwrap();
        let images: Vec<u32> = by_pos[zero..zero + 9]
            .iter()
            .map(|&(_, c)| f.quotient.distance(f.class_of[0], c))
            .collect();
        assert_eq!(images, vec![0, 0, 0, 1, 1, 1, 2, 2, 2]);
        assert!(f.certificate().fiber_ok);
    }

    #[test]
    fn line_with_unit_collapse_is_identity() {
        let f = collapse_map_line(1, 5).unwrap();
        for u in 0..f.domain.len() {
            for v in 0..f.domain.len() {
                assert_eq!(f.domain.distance(u, v), f.quotient.distance(f.class_of[u], f.class_of[v]));
            }
        }
    }

    #[test]
    fn tree_quotient_valences() {
        for order in [ChildOrder::First, ChildOrder::Last] {
            let f = collapse_map_tree_ordered(4, 9, order).unwrap();
            let cert = f.certificate();
            assert!(cert.interior_classes > 0);
            assert!(cert.valence_ok, "{cert:?}");
            assert!(cert.fiber_ok, "{cert:?}");
            assert_eq!(cert.expected_valence, 6);
        }
    }

    #[test]
    fn radius_must_fit_a_path() {
        assert!(matches!(
            collapse_map_tree(4, 3),
            Err(GeometryError::RadiusTooSmall { radius: 3, s: 4 })
        ));
    }
}
