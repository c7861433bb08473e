//! Balls in biregular trees, rooted on the valence-`m` side.

use serde::Serialize;

use super::GeometryError;

/// Default ceiling on ball sizes, overridable through `AMALGAM_MAX_VERTICES`.
pub const DEFAULT_MAX_VERTICES: usize = 1 << 16;

/// The vertex cap from `AMALGAM_MAX_VERTICES`, or the default.
pub fn vertex_cap() -> usize {
    std::env::var("AMALGAM_MAX_VERTICES")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_VERTICES)
}

/// A ball of radius `radius` about the root of `T_{m,n}`. Vertices are
/// numbered breadth first; vertices at even depth have valence `m`, those
/// at odd depth valence `n`.
#[derive(Debug, Clone, Serialize)]
pub struct TreeBall {
    pub m: u32,
    pub n: u32,
    pub radius: u32,
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<u32>,
    #[serde(skip)]
    children: Vec<Vec<usize>>,
}

/// Vertices per level: `1, m, m(n-1), m(n-1)(m-1), …`.
pub fn level_sizes(m: u32, n: u32, radius: u32) -> Vec<u128> {
    let mut sizes = vec![1u128];
    for i in 0..radius {
        let last = *sizes.last().unwrap();
        let next = if i == 0 {
            u128::from(m)
        } else {
            let valence = if i % 2 == 0 { m } else { n };
            last.saturating_mul(u128::from(valence.saturating_sub(1)))
        };
        sizes.push(next);
    }
    sizes
}

pub fn ball_size(m: u32, n: u32, radius: u32) -> u128 {
    level_sizes(m, n, radius).iter().fold(0u128, |a, &b| a.saturating_add(b))
}

/// The largest radius whose ball fits under `cap` (capped at `limit`).
pub fn max_radius(m: u32, n: u32, cap: usize, limit: u32) -> u32 {
    let mut r = 0;
    while r < limit && ball_size(m, n, r + 1) <= cap as u128 {
        r += 1;
    }
    r
}

pub fn biregular_ball(m: u32, n: u32, radius: u32) -> Result<TreeBall, GeometryError> {
    biregular_ball_capped(m, n, radius, vertex_cap())
}

pub fn biregular_ball_capped(m: u32, n: u32, radius: u32, cap: usize) -> Result<TreeBall, GeometryError> {
    if m == 0 || n == 0 {
        return Err(GeometryError::BadValence { m, n });
    }
    let size = ball_size(m, n, radius);
    if size > cap as u128 {
        return Err(GeometryError::SizeLimit {
            requested: size,
            cap,
        });
    }
    let size = size as usize;
    let mut parent = Vec::with_capacity(size);
    let mut depth = Vec::with_capacity(size);
    let mut children = Vec::with_capacity(size);
    parent.push(None);
    depth.push(0);
    children.push(Vec::new());
    let mut frontier = vec![0usize];
    for d in 0..radius {
        let mut next = Vec::new();
        for &v in &frontier {
            let valence = if d % 2 == 0 { m } else { n };
            let count = if d == 0 { valence } else { valence - 1 };
            for _ in 0..count {
                let c = parent.len();
                parent.push(Some(v));
                depth.push(d + 1);
                children.push(Vec::new());
                children[v].push(c);
                next.push(c);
            }
        }
        frontier = next;
    }
    Ok(TreeBall {
        m,
        n,
        radius,
        parent,
        depth,
        children,
    })
}

impl TreeBall {
    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Neighbours of `v` inside the ball.
    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.parent[v].into_iter().chain(self.children[v].iter().copied())
    }

    /// The valence `v` has in the whole tree.
    pub fn full_valence(&self, v: usize) -> u32 {
        if self.depth[v].is_multiple_of(2) {
            self.m
        } else {
            self.n
        }
    }

    /// Number of vertices at each depth.
    pub fn level_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.radius as usize + 1];
        for &d in &self.depth {
            counts[d as usize] += 1;
        }
        counts
    }

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

    /// Signed positions when the ball is a segment of the line `T_{2,2}`:
    /// the root at 0, the first child's branch positive.
    pub fn line_positions(&self) -> Option<Vec<i64>> {
        if self.m != 2 || self.n != 2 {
            return None;
        }
        let mut pos = vec![0i64; self.len()];
        for v in 1..self.len() {
            let p = self.parent[v].unwrap();
            pos[v] = if p == 0 {
                if self.children[0][0] == v {
                    1
                } else {
                    -1
                }
            } else {
                pos[p] + pos[p].signum()
            };
        }
        Some(pos)
    }
}
