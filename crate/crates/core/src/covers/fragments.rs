//! The two local building blocks of the towers: the double cover of a
//! surface in which a curve lifts to a bounding pair, and the
//! `K_{m,n} × S¹` cover of a single tube.

use std::collections::BTreeMap;

use serde::Serialize;

use super::cover::{CoverMap, PieceImage};
use crate::complex::{Complex2, Piece};
use crate::model::CurveSpec;

/// Pieces and piece images of the double cover of one side, cut along the
/// preimage of the curve.
pub(crate) struct SideCover {
    pub pieces: Vec<Piece>,
    pub images: Vec<PieceImage>,
}

/// The side's base pieces are those [`crate::complex::build_amalgam_complex`]
/// emits, starting at index `offset`. Upstairs the curve lifts to the two
/// circles `up`, each mapping with degree 1. For a separating curve the two
/// pieces come in split order, or most negative first with `by_euler`.
pub(crate) fn double_cover_side(
    genus: u32,
    curve: CurveSpec,
    up: [&str; 2],
    offset: usize,
    by_euler: bool,
) -> SideCover {
    let [c1, c2] = up;
    match curve {
        CurveSpec::NonSeparating => {
            // two copies of S_g cut open, glued crosswise along the pair
            let euler = 2 - 2 * i64::from(genus);
            SideCover {
                pieces: vec![
                    Piece::surface(euler, &[(c1, 1), (c2, 1)]),
                    Piece::surface(euler, &[(c1, 1), (c2, 1)]),
                ],
                images: vec![
                    PieceImage::new(offset, 1, &[(0, 1), (1, 1)]),
                    PieceImage::new(offset, 1, &[(1, 1), (0, 1)]),
                ],
            }
        }
        CurveSpec::Separating { split } => {
            // each complementary piece double covered with two boundary circles
            let euler = |g: u32| 1 - 2 * i64::from(g);
            let mut order = [0usize, 1];
            if by_euler {
                order.sort_by_key(|&i| euler(split[i]));
            }
            let pieces = order
                .iter()
                .map(|&i| Piece::surface(2 * euler(split[i]), &[(c1, 1), (c2, 1)]))
                .collect();
            let images = order
                .iter()
                .map(|&i| PieceImage::new(offset + i, 2, &[(0, 1), (0, 1)]))
                .collect();
            SideCover { pieces, images }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundingPairCover {
    pub eulers: [i64; 2],
    pub cover: CoverMap,
}

/// The double cover of `S_g` in which the curve lifts to two curves that
/// together cut it into two pieces.
pub fn bounding_pair_double_cover(genus: u32, curve: CurveSpec) -> BoundingPairCover {
    let mut base_pieces = Vec::new();
    match curve {
        CurveSpec::NonSeparating => {
            base_pieces.push(Piece::surface(2 - 2 * i64::from(genus), &[("A", 1), ("A", 1)]))
        }
        CurveSpec::Separating { split } => {
            for g in split {
                base_pieces.push(Piece::surface(1 - 2 * i64::from(g), &[("A", 1)]));
            }
        }
    }
    let side = double_cover_side(genus, curve, ["a1", "a2"], 0, false);
    let eulers = [side.pieces[0].euler(), side.pieces[1].euler()];
    let cover = CoverMap {
        total: Complex2::new(vec!["a1".into(), "a2".into()], side.pieces),
        base: Complex2::new(vec!["A".into()], base_pieces),
        degree: 2,
        connected: true,
        circle_map: BTreeMap::from([
            ("a1".to_string(), ("A".to_string(), 1)),
            ("a2".to_string(), ("A".to_string(), 1)),
        ]),
        piece_map: side.images,
    };
    BoundingPairCover { eulers, cover }
}

/// Circles and unit tubes of `K_{m,n} × S¹` over a tube wrapping `m` times
/// around `base_ends.0` and `n` times around `base_ends.1`.
pub(crate) struct ProductLift {
    /// `(name, base circle, degree)`: first the `n` circles on the `m` side.
    pub circles: Vec<(String, String, u64)>,
    pub tubes: Vec<Piece>,
    pub images: Vec<PieceImage>,
}

pub(crate) fn product_lift(
    m: u32,
    n: u32,
    names: (&str, &str),
    base_ends: (&str, &str),
    base_tube: usize,
) -> ProductLift {
    let left: Vec<String> = (1..=n).map(|i| format!("{}.{i}", names.0)).collect();
    let right: Vec<String> = (1..=m).map(|j| format!("{}.{j}", names.1)).collect();
    let mut circles = Vec::new();
    for c in &left {
        circles.push((c.clone(), base_ends.0.to_string(), u64::from(m)));
    }
    for c in &right {
        circles.push((c.clone(), base_ends.1.to_string(), u64::from(n)));
    }
    let mut tubes = Vec::new();
    let mut images = Vec::new();
    for l in &left {
        for r in &right {
            tubes.push(Piece::tube((l, 1), (r, 1)));
            images.push(PieceImage::new(base_tube, 1, &[(0, 1), (1, 1)]));
        }
    }
    ProductLift {
        circles,
        tubes,
        images,
    }
}

/// The degree-`mn` cover of the tube `A <-m- annulus -n-> B` by
/// `K_{m,n} × S¹`: `n` circles over `A` of degree `m`, `m` circles over `B`
/// of degree `n`, and a unit tube between every such pair.
pub fn kmn_cover_fragment(m: u32, n: u32) -> CoverMap {
    assert!(m >= 1 && n >= 1, "winding degrees must be positive");
    let base = Complex2::new(
        vec!["A".into(), "B".into()],
        vec![Piece::tube(("A", u64::from(m)), ("B", u64::from(n)))],
    );
    let lift = product_lift(m, n, ("u", "w"), ("A", "B"), 0);
    let total = Complex2::new(lift.circles.iter().map(|c| c.0.clone()).collect(), lift.tubes);
    CoverMap {
        total,
        base,
        degree: u64::from(m) * u64::from(n),
        connected: true,
        circle_map: lift.circles.into_iter().map(|(c, b, e)| (c, (b, e))).collect(),
        piece_map: lift.images,
    }
}
