//! Empirical quasi-isometry constants of a vertex map.
//!
//! For a multiplicative constant `L` the least additive constant is
//! `C(L) = max(0, d/L - d', d' - L d)` over sampled pairs with domain
//! distance `d` and image distance `d'`. The measured pair is the least `L`
//! on a grid of step 1/100 with `C(L) <= L`, together with `C(L)`; the
//! identity measures `(1, 0)`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::collapse::VertexMap;
use super::GeometryError;

const GRID: i64 = 100;

/// Distinct `(domain distance, image distance)` pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct PairSample {
    pairs: BTreeSet<(u64, u64)>,
}

impl PairSample {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        PairSample {
            pairs: pairs.into_iter().collect(),
        }
    }

    pub fn pairs(&self) -> &BTreeSet<(u64, u64)> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Every pair of points at distance at least `margin` from the boundary of
/// `ball × [-slab, slab]`, reduced to the smallest and largest image
/// distance for each domain distance, which is all the constants depend on.
pub fn interior_pairs(f: &VertexMap, margin: u32) -> PairSample {
    let ball = &f.domain;
    let limit = ball.radius.saturating_sub(margin);
    let inside: Vec<usize> = (0..ball.len()).filter(|&v| ball.depth[v] <= limit).collect();
    // per tree distance: (least, greatest) image distance
    let mut extremes: BTreeMap<u64, (u64, u64)> = BTreeMap::new();
    let mut seen = vec![u32::MAX; ball.len()];
    let mut image = vec![0u64; ball.len()];
    for (round, &x) in inside.iter().enumerate() {
        let round = round as u32;
        let mut queue = VecDeque::from([(x, 0u64)]);
        seen[x] = round;
        image[x] = 0;
        while let Some((v, d)) = queue.pop_front() {
            let e = extremes.entry(d).or_insert((u64::MAX, 0));
            e.0 = e.0.min(image[v]);
            e.1 = e.1.max(image[v]);
            for w in ball.neighbours(v) {
                if ball.depth[w] <= limit && seen[w] != round {
                    seen[w] = round;
                    image[w] = image[v] + u64::from(f.class_of[w] != f.class_of[v]);
                    queue.push_back((w, d + 1));
                }
            }
        }
    }
    let offsets = 2 * u64::from(f.slab.saturating_sub(margin));
    let mut pairs = BTreeSet::new();
    for (&d, &(lo, hi)) in &extremes {
        for dt in 0..=offsets {
            pairs.insert((d + dt, lo + dt));
            pairs.insert((d + dt, hi + dt));
        }
    }
    PairSample { pairs }
}

/// `count` random pairs of interior points, reproducible from `seed`.
pub fn sampled_pairs(f: &VertexMap, margin: u32, count: usize, seed: u64) -> PairSample {
    let ball = &f.domain;
    let limit = ball.radius.saturating_sub(margin);
    let inside: Vec<usize> = (0..ball.len()).filter(|&v| ball.depth[v] <= limit).collect();
    let t_max = i64::from(f.slab.saturating_sub(margin));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = BTreeSet::new();
    for _ in 0..count {
        let mut point = || (inside[rng.gen_range(0..inside.len())], rng.gen_range(-t_max..=t_max));
        let (p, q) = (point(), point());
        pairs.insert((f.domain_distance(p, q), f.image_distance(p, q)));
    }
    PairSample { pairs }
}

fn ratio_string<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Distortion {
    #[serde(rename = "L", serialize_with = "ratio_string")]
    pub l: Ratio<i64>,
    #[serde(rename = "C", serialize_with = "ratio_string")]
    pub c: Ratio<i64>,
}

impl Distortion {
    /// Within an `(L, C)`-quasi-isometry bound, both as integers.
    pub fn within(&self, l: i64, c: i64) -> bool {
        self.l <= Ratio::from_integer(l) && self.c <= Ratio::from_integer(c)
    }
}

/// The least additive constant for multiplicative constant `l`.
pub fn additive_error(sample: &PairSample, l: Ratio<i64>) -> Ratio<i64> {
    let zero = Ratio::from_integer(0);
    sample
        .pairs
        .iter()
        .map(|&(d, d_image)| {
            let (d, d_image) = (Ratio::from_integer(d as i64), Ratio::from_integer(d_image as i64));
            let below = d / l - d_image;
            let above = d_image - l * d;
            below.max(above).max(zero)
        })
        .max()
        .unwrap_or(zero)
}

pub fn measure_distortion(sample: &PairSample) -> Result<Distortion, GeometryError> {
    if sample.is_empty() {
        return Err(GeometryError::EmptySample);
    }
    let at = |k: i64| Ratio::new(k, GRID);
    let good = |k: i64| additive_error(sample, at(k)) <= at(k);
    let (mut lo, mut hi) = (GRID, GRID);
    while !good(hi) {
        lo = hi;
        hi *= 2;
    }
    if good(lo) {
        hi = lo;
    }
    // good(hi) holds and good(lo) fails unless lo == hi
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if good(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let l = at(hi);
    Ok(Distortion {
        l,
        c: additive_error(sample, l),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{biregular_ball_capped, collapse_map_line, collapse_map_tree};

    #[test]
    fn identity_measures_one_zero() {
        let f = VertexMap::identity(biregular_ball_capped(3, 3, 5, 1000).unwrap(), 5);
        let d = measure_distortion(&interior_pairs(&f, 1)).unwrap();
        assert_eq!((d.l, d.c), (Ratio::from_integer(1), Ratio::from_integer(0)));
    }

    #[test]
    fn empty_sample() {
        assert_eq!(measure_distortion(&PairSample::default()), Err(GeometryError::EmptySample));
    }

    #[test]
    fn line_collapse_bound() {
        let f = collapse_map_line(3, 18).unwrap();
        let d = measure_distortion(&interior_pairs(&f, 3)).unwrap();
        assert!(d.within(3, 3), "{d:?}");
    }

    #[test]
    fn tree_collapse_bound() {
        let f = collapse_map_tree(4, 10).unwrap();
        let d = measure_distortion(&interior_pairs(&f, 4)).unwrap();
        assert!(d.within(4, 4), "{d:?}");
    }

    #[test]
    fn sampled_pairs_are_reproducible() {
        let f = collapse_map_tree(2, 8).unwrap();
        let a = sampled_pairs(&f, 2, 500, 7);
        assert_eq!(a, sampled_pairs(&f, 2, 500, 7));
        let full = interior_pairs(&f, 2);
        let (da, df) = (measure_distortion(&a).unwrap(), measure_distortion(&full).unwrap());
        assert!(da.l <= df.l);
    }
}
