//! Graph-of-spaces 2-complexes: branch circles, surface pieces cut along
//! their gluing curves, and tubes (annuli) with degree-labelled ends.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{CurveSpec, SurfaceAmalgamSpec};

/// A boundary circle glued to a branch circle, wrapping `degree` times.
pub type Attachment = (String, u64);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Piece {
    Surface { euler: i64, att: Vec<Attachment> },
    /// An annulus. With both ends on one circle at degree 1 it is a torus
    /// attached along a curve.
    Tube { ends: [Attachment; 2] },
}

impl Piece {
    pub fn surface(euler: i64, att: &[(&str, u64)]) -> Self {
        Piece::Surface {
            euler,
            att: att.iter().map(|&(c, d)| (c.to_string(), d)).collect(),
        }
    }

    pub fn tube(a: (&str, u64), b: (&str, u64)) -> Self {
        Piece::Tube {
            ends: [(a.0.to_string(), a.1), (b.0.to_string(), b.1)],
        }
    }

    pub fn attachments(&self) -> &[Attachment] {
        match self {
            Piece::Surface { att, .. } => att,
            Piece::Tube { ends } => ends,
        }
    }

    pub fn attachments_mut(&mut self) -> &mut [Attachment] {
        match self {
            Piece::Surface { att, .. } => att,
            Piece::Tube { ends } => ends,
        }
    }

    pub fn euler(&self) -> i64 {
        match self {
            Piece::Surface { euler, .. } => *euler,
            Piece::Tube { .. } => 0,
        }
    }

    pub fn is_surface(&self) -> bool {
        matches!(self, Piece::Surface { .. })
    }

    pub fn is_tube(&self) -> bool {
        matches!(self, Piece::Tube { .. })
    }

    /// Genus of a surface piece, `(2 - χ - #boundary) / 2`, when that is a
    /// non-negative integer.
    pub fn genus(&self) -> Option<i64> {
        match self {
            Piece::Surface { euler, att } => {
                let twice = 2 - euler - att.len() as i64;
                (twice >= 0 && twice % 2 == 0).then_some(twice / 2)
            }
            Piece::Tube { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum ComplexError {
    #[error("circle {0:?} is listed twice")]
    DuplicateCircle(String),
    #[error("piece {piece} refers to unknown circle {circle:?}")]
    UnknownCircle { piece: usize, circle: String },
    #[error("circle {0:?} has nothing attached to it")]
    FreeCircle(String),
    #[error("piece {piece} has attachment degree 0")]
    ZeroDegree { piece: usize },
    #[error("surface piece {piece} has euler characteristic {euler}, need at most -1")]
    NonNegativeEuler { piece: usize, euler: i64 },
    #[error("surface piece {piece}: euler {euler} with {boundary} boundary circles has no genus")]
    NoGenus {
        piece: usize,
        euler: i64,
        boundary: usize,
    },
    #[error("surface piece {piece} has no boundary")]
    ClosedSurface { piece: usize },
    #[error("label on unknown circle {0:?}")]
    LabelOnUnknownCircle(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Complex2 {
    pub circles: Vec<String>,
    pub pieces: Vec<Piece>,
    /// Optional colour tags on circles.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, String>,
}

impl Complex2 {
    pub fn new(circles: Vec<String>, pieces: Vec<Piece>) -> Self {
        Complex2 {
            circles,
            pieces,
            labels: BTreeMap::new(),
        }
    }

    pub fn circle_index(&self) -> HashMap<&str, usize> {
        self.circles.iter().enumerate().map(|(i, c)| (c.as_str(), i)).collect()
    }

    /// Every violated invariant, in piece order.
    pub fn validate(&self) -> Result<(), Vec<ComplexError>> {
        let mut errors = Vec::new();
        let mut known = BTreeSet::new();
        for c in &self.circles {
            if !known.insert(c.as_str()) {
                errors.push(ComplexError::DuplicateCircle(c.clone()));
            }
        }
        let mut used = BTreeSet::new();
        for (piece, p) in self.pieces.iter().enumerate() {
            for (circle, degree) in p.attachments() {
                if !known.contains(circle.as_str()) {
                    errors.push(ComplexError::UnknownCircle {
                        piece,
                        circle: circle.clone(),
                    });
                }
                used.insert(circle.as_str());
                if *degree == 0 {
                    errors.push(ComplexError::ZeroDegree { piece });
                }
            }
            if let Piece::Surface { euler, att } = p {
                if *euler > -1 {
                    errors.push(ComplexError::NonNegativeEuler { piece, euler: *euler });
                }
                if att.is_empty() {
                    errors.push(ComplexError::ClosedSurface { piece });
                } else if p.genus().is_none() {
                    errors.push(ComplexError::NoGenus {
                        piece,
                        euler: *euler,
                        boundary: att.len(),
                    });
                }
            }
        }
        for c in &self.circles {
            if !used.contains(c.as_str()) {
                errors.push(ComplexError::FreeCircle(c.clone()));
            }
        }
        for c in self.labels.keys() {
            if !known.contains(c.as_str()) {
                errors.push(ComplexError::LabelOnUnknownCircle(c.clone()));
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }

    pub fn euler_char(&self) -> i64 {
        self.pieces.iter().map(Piece::euler).sum()
    }

    pub fn surface_count(&self) -> usize {
        self.pieces.iter().filter(|p| p.is_surface()).count()
    }

    pub fn tube_count(&self) -> usize {
        self.pieces.iter().filter(|p| p.is_tube()).count()
    }

    /// Connectivity of the circle/piece incidence graph.
    pub fn is_connected(&self) -> bool {
        let n = self.circles.len();
        if n == 0 {
            return self.pieces.len() <= 1;
        }
        let index = self.circle_index();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut x = x;
            while parent[x] != r {
                let next = parent[x];
                parent[x] = r;
                x = next;
            }
            r
        }
        for p in &self.pieces {
            let ids: Vec<usize> = p
                .attachments()
                .iter()
                .filter_map(|(c, _)| index.get(c.as_str()).copied())
                .collect();
            if ids.is_empty() {
                return false;
            }
            for &j in &ids[1..] {
                let (a, b) = (find(&mut parent, ids[0]), find(&mut parent, j));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, 0);
        (0..n).all(|i| find(&mut parent, i) == root)
    }

    /// The multiset of piece shapes `(kind, euler, sorted degrees)`; equal
    /// for isomorphic complexes.
    fn shape_profile(&self) -> Vec<(bool, i64, Vec<u64>)> {
        let mut out: Vec<_> = self
            .pieces
            .iter()
            .map(|p| {
                let mut d: Vec<u64> = p.attachments().iter().map(|a| a.1).collect();
                d.sort_unstable();
                (p.is_surface(), p.euler(), d)
            })
            .collect();
        out.sort();
        out
    }
}

/// The complex of the amalgam: `S_g` cut along `a` glued to circle `A`,
/// `S_h` cut along `b` glued to `B`, and a tube wrapping `m` times around
/// `A` and `n` times around `B`.
pub fn build_amalgam_complex(spec: &SurfaceAmalgamSpec) -> Complex2 {
    let mut pieces = Vec::new();
    for (genus, curve, circle) in [(spec.g, spec.curve_a, "A"), (spec.h, spec.curve_b, "B")] {
        match curve {
            CurveSpec::NonSeparating => {
                pieces.push(Piece::surface(2 - 2 * i64::from(genus), &[(circle, 1), (circle, 1)]));
            }
            CurveSpec::Separating { split } => {
                for g in split {
                    pieces.push(Piece::surface(1 - 2 * i64::from(g), &[(circle, 1)]));
                }
            }
        }
    }
    pieces.push(Piece::tube(("A", u64::from(spec.m)), ("B", u64::from(spec.n))));
    Complex2::new(vec!["A".into(), "B".into()], pieces)
}

/// Circle and piece bijections, `circle_map[i]` being the image of circle
/// `i` of the first complex in the second.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    pub circle_map: Vec<usize>,
    pub piece_map: Vec<usize>,
}

type PieceKey = (bool, i64, Vec<(usize, u64)>);

fn piece_key(p: &Piece, circle_of: impl Fn(&str) -> usize) -> PieceKey {
    let mut att: Vec<(usize, u64)> = p.attachments().iter().map(|(c, d)| (circle_of(c), *d)).collect();
    att.sort_unstable();
    (p.is_surface(), p.euler(), att)
}

/// Colour refinement of circles across both complexes at once, so that
/// colours are comparable between them.
fn refine_circle_colours(c1: &Complex2, c2: &Complex2) -> (Vec<usize>, Vec<usize>) {
    let idx1 = c1.circle_index();
    let idx2 = c2.circle_index();
    let incid = |c: &Complex2, idx: &HashMap<&str, usize>| -> Vec<Vec<(usize, u64)>> {
        // per circle: (piece, degree) incidences
        let mut out = vec![Vec::new(); c.circles.len()];
        for (pi, p) in c.pieces.iter().enumerate() {
            for (circle, d) in p.attachments() {
                out[idx[circle.as_str()]].push((pi, *d));
            }
        }
        out
    };
    let inc1 = incid(c1, &idx1);
    let inc2 = incid(c2, &idx2);
    let mut col1 = vec![0usize; c1.circles.len()];
    let mut col2 = vec![0usize; c2.circles.len()];
    let mut classes = 0;
    loop {
        let mut table: BTreeMap<(usize, Vec<(PieceKey, u64)>), usize> = BTreeMap::new();
        let mut step = |c: &Complex2, inc: &[Vec<(usize, u64)>], col: &[usize], idx: &HashMap<&str, usize>| {
            (0..c.circles.len())
                .map(|i| {
                    let mut sig: Vec<(PieceKey, u64)> = inc[i]
                        .iter()
                        .map(|&(pi, d)| (piece_key(&c.pieces[pi], |name| col[idx[name]]), d))
                        .collect();
                    sig.sort();
                    let len = table.len();
                    *table.entry((col[i], sig)).or_insert(len)
                })
                .collect::<Vec<usize>>()
        };
        let n1 = step(c1, &inc1, &col1, &idx1);
        let n2 = step(c2, &inc2, &col2, &idx2);
        let count = table.len();
        col1 = n1;
        col2 = n2;
        if count == classes {
            return (col1, col2);
        }
        classes = count;
    }
}

/// Finds an isomorphism preserving piece kinds, Euler characteristics and
/// attachment multisets with degrees. Labels are ignored.
pub fn iso_check(c1: &Complex2, c2: &Complex2) -> Option<Isomorphism> {
    if c1.circles.len() != c2.circles.len()
        || c1.pieces.len() != c2.pieces.len()
        || c1.shape_profile() != c2.shape_profile()
    {
        return None;
    }
    let (col1, col2) = refine_circle_colours(c1, c2);
    let mut s1 = col1.clone();
    let mut s2 = col2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return None;
    }

    let idx1 = c1.circle_index();
    let idx2 = c2.circle_index();
    let mut target_counts: HashMap<PieceKey, usize> = HashMap::new();
    for p in &c2.pieces {
        *target_counts.entry(piece_key(p, |n| idx2[n])).or_default() += 1;
    }
    // circles of c1 in an order where each tends to touch already-placed ones
    let mut order: Vec<usize> = (0..c1.circles.len()).collect();
    let class_size = |c: usize| col1.iter().filter(|&&x| x == c).count();
    order.sort_by_key(|&i| (class_size(col1[i]), i));

    // pieces touching each circle, and how many distinct circles each piece touches
    let mut pieces_at: Vec<Vec<usize>> = vec![Vec::new(); c1.circles.len()];
    let mut pending: Vec<usize> = vec![0; c1.pieces.len()];
    for (pi, p) in c1.pieces.iter().enumerate() {
        let distinct: BTreeSet<usize> = p.attachments().iter().map(|(c, _)| idx1[c.as_str()]).collect();
        pending[pi] = distinct.len();
        for c in distinct {
            pieces_at[c].push(pi);
        }
    }

    struct Search<'a> {
        c1: &'a Complex2,
        idx1: &'a HashMap<&'a str, usize>,
        col1: &'a [usize],
        col2: &'a [usize],
        order: &'a [usize],
        pieces_at: &'a [Vec<usize>],
        pending: Vec<usize>,
        target_counts: &'a HashMap<PieceKey, usize>,
        used_counts: HashMap<PieceKey, usize>,
        map: Vec<Option<usize>>,
        taken: Vec<bool>,
    }

    impl Search<'_> {
        fn key_of(&self, pi: usize) -> PieceKey {
            piece_key(&self.c1.pieces[pi], |n| self.map[self.idx1[n]].unwrap())
        }

        fn run(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return true;
            }
            let c = self.order[depth];
            for t in 0..self.col2.len() {
                if self.taken[t] || self.col2[t] != self.col1[c] {
                    continue;
                }
                self.map[c] = Some(t);
                self.taken[t] = true;
                let mut completed = Vec::new();
                let mut ok = true;
                for &pi in &self.pieces_at[c] {
                    self.pending[pi] -= 1;
                    if self.pending[pi] == 0 {
                        let key = self.key_of(pi);
                        let used = self.used_counts.entry(key.clone()).or_default();
                        *used += 1;
                        completed.push(key.clone());
                        if *used > self.target_counts.get(&key).copied().unwrap_or(0) {
                            ok = false;
                        }
                    }
                }
                if ok && self.run(depth + 1) {
                    return true;
                }
                for key in completed {
                    *self.used_counts.get_mut(&key).unwrap() -= 1;
                }
                for &pi in &self.pieces_at[c] {
                    self.pending[pi] += 1;
                }
                self.map[c] = None;
                self.taken[t] = false;
            }
            false
        }
    }

    let mut search = Search {
        c1,
        idx1: &idx1,
        col1: &col1,
        col2: &col2,
        order: &order,
        pieces_at: &pieces_at,
        pending,
        target_counts: &target_counts,
        used_counts: HashMap::new(),
        map: vec![None; c1.circles.len()],
        taken: vec![false; c2.circles.len()],
    };
    if !search.run(0) {
        return None;
    }
    let circle_map: Vec<usize> = search.map.iter().map(|m| m.unwrap()).collect();

    // pair pieces with equal mapped keys, in index order
    let mut buckets: HashMap<PieceKey, Vec<usize>> = HashMap::new();
    for (pi, p) in c2.pieces.iter().enumerate().rev() {
        buckets.entry(piece_key(p, |n| idx2[n])).or_default().push(pi);
    }
    let mut piece_map = Vec::with_capacity(c1.pieces.len());
    for p in &c1.pieces {
        let key = piece_key(p, |n| circle_map[idx1[n]]);
        piece_map.push(buckets.get_mut(&key)?.pop()?);
    }
    Some(Isomorphism {
        circle_map,
        piece_map,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum CollapseError {
    #[error("fragment {fragment}: {reason}")]
    NotAProductFragment { fragment: usize, reason: String },
}

/// A `K_{m,n} × S¹` sub-complex: circles and the unit tubes joining them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductFragment {
    pub circles: Vec<String>,
    /// Piece indices of the tubes.
    pub tubes: Vec<usize>,
    /// Name of the circle everything collapses to.
    pub merged: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollapsedFragment {
    pub merged: String,
    pub circles: Vec<String>,
    /// Piece indices (in the input complex) of the spanning-tree tubes deleted.
    pub tree_tubes: Vec<usize>,
    pub tori: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollapseRecord {
    pub fragments: Vec<CollapsedFragment>,
}

fn check_fragment(c: &Complex2, index: usize, f: &ProductFragment) -> Result<(), CollapseError> {
    let fail = |reason: String| CollapseError::NotAProductFragment {
        fragment: index,
        reason,
    };
    let members: BTreeSet<&str> = f.circles.iter().map(String::as_str).collect();
    if members.len() != f.circles.len() || f.circles.is_empty() {
        return Err(fail("circle list is empty or repeats a circle".into()));
    }
    let mut adjacency: BTreeMap<&str, Vec<&str>> = members.iter().map(|&c| (c, Vec::new())).collect();
    let mut pairs = BTreeSet::new();
    for &t in &f.tubes {
        let Some(Piece::Tube { ends }) = c.pieces.get(t) else {
            return Err(fail(format!("piece {t} is not a tube")));
        };
        let (a, b) = (ends[0].0.as_str(), ends[1].0.as_str());
        if ends[0].1 != 1 || ends[1].1 != 1 {
            return Err(fail(format!("tube {t} has a non-unit degree")));
        }
        if !members.contains(a) || !members.contains(b) || a == b {
            return Err(fail(format!("tube {t} does not join two fragment circles")));
        }
        if !pairs.insert(if a < b { (a, b) } else { (b, a) }) {
            return Err(fail(format!("tube {t} doubles an edge")));
        }
        adjacency.get_mut(a).unwrap().push(b);
        adjacency.get_mut(b).unwrap().push(a);
    }
    // two-colour the tube graph
    let mut side: BTreeMap<&str, bool> = BTreeMap::new();
    let start = f.circles[0].as_str();
    side.insert(start, false);
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        let sx = side[x];
        for &y in &adjacency[x] {
            match side.get(y) {
                None => {
                    side.insert(y, !sx);
                    stack.push(y);
                }
                Some(&sy) if sy == sx => return Err(fail("tube graph is not bipartite".into())),
                _ => {}
            }
        }
    }
    if side.len() != members.len() {
        return Err(fail("tube graph is disconnected".into()));
    }
    let left = side.values().filter(|&&s| !s).count();
    let right = side.len() - left;
    if f.tubes.len() != left * right {
        return Err(fail(format!(
            "{} tubes cannot form a complete bipartite pattern on {left} + {right} circles",
            f.tubes.len()
        )));
    }
    Ok(())
}

/// Collapses each product fragment: merges its circles into one, deletes a
/// spanning tree of its tubes, and turns the remaining tubes into tori on the
/// merged circle. The tree is chosen lowest piece index first.
pub fn collapse_products(
    c: &Complex2,
    fragments: &[ProductFragment],
) -> Result<(Complex2, CollapseRecord), CollapseError> {
    collapse_products_with(c, fragments, None)
}

/// As [`collapse_products`], but with a spanning tree chosen by a seeded
/// shuffle of the tube order. The result is isomorphic for every seed.
pub fn collapse_products_seeded(
    c: &Complex2,
    fragments: &[ProductFragment],
    seed: u64,
) -> Result<(Complex2, CollapseRecord), CollapseError> {
    collapse_products_with(c, fragments, Some(seed))
}

fn collapse_products_with(
    c: &Complex2,
    fragments: &[ProductFragment],
    seed: Option<u64>,
) -> Result<(Complex2, CollapseRecord), CollapseError> {
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let mut rename: HashMap<String, String> = HashMap::new();
    let mut deleted = BTreeSet::new();
    let mut tori = BTreeSet::new();
    let mut record = CollapseRecord { fragments: Vec::new() };
    for (index, f) in fragments.iter().enumerate() {
        check_fragment(c, index, f)?;
        let mut tubes = f.tubes.clone();
        tubes.sort_unstable();
        if let Some(rng) = rng.as_mut() {
            tubes.shuffle(rng);
        }
        let local: HashMap<&str, usize> = f.circles.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut parent: Vec<usize> = (0..f.circles.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut tree = Vec::new();
        for &t in &tubes {
            let ends = c.pieces[t].attachments();
            let (a, b) = (local[ends[0].0.as_str()], local[ends[1].0.as_str()]);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                tree.push(t);
                deleted.insert(t);
            } else {
                tori.insert(t);
            }
        }
        tree.sort_unstable();
        for circle in &f.circles {
            rename.insert(circle.clone(), f.merged.clone());
        }
        record.fragments.push(CollapsedFragment {
            merged: f.merged.clone(),
            circles: f.circles.clone(),
            tree_tubes: tree,
            tori: f.tubes.len() + 1 - f.circles.len(),
        });
    }

    let mut circles = Vec::new();
    let mut seen = BTreeSet::new();
    for circle in &c.circles {
        let name = rename.get(circle).unwrap_or(circle).clone();
        if seen.insert(name.clone()) {
            circles.push(name);
        }
    }
    let mut pieces = Vec::new();
    for (i, p) in c.pieces.iter().enumerate() {
        if deleted.contains(&i) {
            continue;
        }
        let mut p = p.clone();
        for (circle, _) in p.attachments_mut() {
            if let Some(new) = rename.get(circle.as_str()) {
                *circle = new.clone();
            }
        }
        debug_assert!(!tori.contains(&i) || p.attachments().iter().all(|a| a.1 == 1));
        pieces.push(p);
    }
    let labels = c
        .labels
        .iter()
        .filter(|(k, _)| !rename.contains_key(k.as_str()))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    Ok((
        Complex2 {
            circles,
            pieces,
            labels,
        },
        record,
    ))
}
