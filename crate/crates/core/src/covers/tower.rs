//! The two covering towers over an amalgam's complex, ending in homeomorphic
//! spaces: `X ⟵2 X1 ⟵mn X2 ≃ X3 ⟵2 X4 ⟵16 X5` on the amalgam side and
//! `Z1 ⟵2 Z2` over the orbicomplex of the associated Θ-graph group, whose
//! degree-16 manifold cover `Z1` is recorded only through its vector.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use super::cover::{verify_cover, CoverMap, CoverReport, PieceImage};
use super::fragments::{double_cover_side, product_lift};
use crate::commensurability::associated_racg_vector;
use crate::complex::{
    build_amalgam_complex, collapse_products, iso_check, CollapseError, CollapseRecord, Complex2,
    Isomorphism, Piece, ProductFragment,
};
use crate::model::{EulerVector, SurfaceAmalgamSpec};

/// Degree of the manifold cover of the reflection orbicomplex.
pub const ORBIFOLD_COVER_DEGREE: u64 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum TowerError {
    #[error("collapsing product fragments failed: {0}")]
    Collapse(#[from] CollapseError),
}

#[derive(Debug, Clone, Serialize)]
pub struct Stage {
    pub name: String,
    pub complex: Complex2,
}

/// How stage `i + 1` sits over stage `i`.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Link {
    Cover(CoverMap),
    /// Stage `i + 1` is stage `i` with product fragments collapsed.
    HomotopyEquivalence(CollapseRecord),
}

#[derive(Debug, Clone, Serialize)]
pub struct Tower {
    pub stages: Vec<Stage>,
    pub links: Vec<Link>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LinkCheck {
    pub from: String,
    pub to: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<CoverReport>,
}

impl Tower {
    pub fn euler_chain(&self) -> Vec<i64> {
        self.stages.iter().map(|s| s.complex.euler_char()).collect()
    }

    pub fn stage(&self, name: &str) -> Option<&Complex2> {
        self.stages.iter().find(|s| s.name == name).map(|s| &s.complex)
    }

    /// The cover maps, with the index of the link each belongs to.
    pub fn covers(&self) -> impl Iterator<Item = (usize, &CoverMap)> {
        self.links.iter().enumerate().filter_map(|(i, l)| match l {
            Link::Cover(cm) => Some((i, cm)),
            Link::HomotopyEquivalence(_) => None,
        })
    }

    /// Verifies each cover link, and for collapse links checks that Euler
    /// characteristic and connectivity survive.
    pub fn verify(&self) -> Vec<LinkCheck> {
        self.links
            .iter()
            .enumerate()
            .map(|(i, link)| {
                let (lower, upper) = (&self.stages[i], &self.stages[i + 1]);
                let (from, to) = (upper.name.clone(), lower.name.clone());
                match link {
                    Link::Cover(cm) => {
                        let report = verify_cover(cm);
                        let matches_stages = cm.total == upper.complex && cm.base == lower.complex;
                        LinkCheck {
                            from,
                            to,
                            pass: report.pass && matches_stages,
                            degree: Some(cm.degree),
                            report: Some(report),
                        }
                    }
                    Link::HomotopyEquivalence(_) => LinkCheck {
                        from,
                        to,
                        pass: lower.complex.euler_char() == upper.complex.euler_char()
                            && lower.complex.is_connected() == upper.complex.is_connected(),
                        degree: None,
                        report: None,
                    },
                }
            })
            .collect()
    }
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn circle_map(entries: impl IntoIterator<Item = (String, String, u64)>) -> BTreeMap<String, (String, u64)> {
    entries.into_iter().map(|(c, b, e)| (c, (b, e))).collect()
}

/// `X1`: the double cover in which both curves lift to bounding pairs,
/// with the four pieces `S1..S4` of Euler characteristics `v1..v4`.
fn stage_x1(spec: &SurfaceAmalgamSpec, x: &Complex2) -> CoverMap {
    let side_a = double_cover_side(spec.g, spec.curve_a, ["a1", "a2"], 0, true);
    let b_offset = if spec.curve_a.is_separating() { 2 } else { 1 };
    let side_b = double_cover_side(spec.h, spec.curve_b, ["b1", "b2"], b_offset, true);
    let tube = x.pieces.len() - 1;
    let (m, n) = (u64::from(spec.m), u64::from(spec.n));

    let mut pieces = side_a.pieces;
    pieces.extend(side_b.pieces);
    pieces.push(Piece::tube(("a1", m), ("b1", n)));
    pieces.push(Piece::tube(("a2", m), ("b2", n)));
    let mut images = side_a.images;
    images.extend(side_b.images);
    images.push(PieceImage::new(tube, 1, &[(0, 1), (1, 1)]));
    images.push(PieceImage::new(tube, 1, &[(0, 1), (1, 1)]));

    let mut total = Complex2::new(names(&["a1", "a2", "b1", "b2"]), pieces);
    for (c, colour) in [("a1", "red"), ("a2", "blue"), ("b1", "green"), ("b2", "black")] {
        total.labels.insert(c.into(), colour.into());
    }
    CoverMap {
        total,
        base: x.clone(),
        degree: 2,
        connected: true,
        circle_map: circle_map(
            [("a1", "A"), ("a2", "A"), ("b1", "B"), ("b2", "B")]
                .map(|(c, b)| (c.to_string(), b.to_string(), 1)),
        ),
        piece_map: images,
    }
}

/// `X2`: the degree-`mn` cover. Each tube lifts to `K_{m,n} × S¹`; `S1`, `S2`
/// lift to `n` degree-`m` covers and `S3`, `S4` to `m` degree-`n` covers.
fn stage_x2(spec: &SurfaceAmalgamSpec, x1: &Complex2) -> (CoverMap, [ProductFragment; 2]) {
    let (m, n) = (spec.m, spec.n);
    let k1 = product_lift(m, n, ("red", "green"), ("a1", "b1"), 4);
    let k2 = product_lift(m, n, ("blue", "black"), ("a2", "b2"), 5);
    let mn = (m * n) as usize;

    let mut circles = Vec::new();
    let mut labels = BTreeMap::new();
    for (c, b, e) in k1.circles.iter().chain(&k2.circles) {
        circles.push((c.clone(), b.clone(), *e));
        labels.insert(c.clone(), c.split('.').next().unwrap().to_string());
    }
    let fragments = [
        ProductFragment {
            circles: k1.circles.iter().map(|c| c.0.clone()).collect(),
            tubes: (0..mn).collect(),
            merged: "C".into(),
        },
        ProductFragment {
            circles: k2.circles.iter().map(|c| c.0.clone()).collect(),
            tubes: (mn..2 * mn).collect(),
            merged: "C'".into(),
        },
    ];

    let mut pieces = k1.tubes;
    pieces.extend(k2.tubes);
    let mut images = k1.images;
    images.extend(k2.images);
    let surface_lifts = [
        (0, n, m, ("red", "blue")),
        (1, n, m, ("red", "blue")),
        (2, m, n, ("green", "black")),
        (3, m, n, ("green", "black")),
    ];
    for (base, copies, d, (c1, c2)) in surface_lifts {
        let euler = i64::from(d) * x1.pieces[base].euler();
        let d = u64::from(d);
        for i in 1..=copies {
            pieces.push(Piece::surface(euler, &[(&format!("{c1}.{i}"), 1), (&format!("{c2}.{i}"), 1)]));
            images.push(PieceImage::new(base, d, &[(0, d), (1, d)]));
        }
    }
    let mut total = Complex2::new(circles.iter().map(|c| c.0.clone()).collect(), pieces);
    total.labels = labels;
    let cm = CoverMap {
        total,
        base: x1.clone(),
        degree: u64::from(m * n),
        connected: true,
        circle_map: circle_map(circles),
        piece_map: images,
    };
    (cm, fragments)
}

/// `X4`: the double cover of the collapsed space. Each torus lifts to two
/// annuli joining the two circles over its branch circle; each surface lifts
/// to one copy in `T` (on `E1`, `E4`) and one in `T'` (on `E2`, `E3`).
/// Without tori that pattern would be disconnected, so the first surface
/// is then lifted crosswise instead.
fn stage_x4(x3: &Complex2) -> CoverMap {
    let has_tori = x3.pieces.iter().any(Piece::is_tube);
    let mut annuli = Vec::new();
    let mut copies_t = Vec::new();
    let mut copies_t_prime = Vec::new();
    let mut first_surface = true;
    for (q, p) in x3.pieces.iter().enumerate() {
        let unit = [(0, 1), (1, 1)];
        match p {
            Piece::Tube { ends } => {
                let (u, w) = if ends[0].0 == "C" { ("E1", "E2") } else { ("E3", "E4") };
                annuli.push((Piece::tube((u, 1), (w, 1)), PieceImage::new(q, 1, &unit)));
                annuli.push((Piece::tube((w, 1), (u, 1)), PieceImage::new(q, 1, &unit)));
            }
            Piece::Surface { euler, .. } => {
                let (t, t_prime) = if first_surface && !has_tori {
                    ([("E1", 1), ("E3", 1)], [("E2", 1), ("E4", 1)])
                } else {
                    ([("E1", 1), ("E4", 1)], [("E2", 1), ("E3", 1)])
                };
                first_surface = false;
                copies_t.push((Piece::surface(*euler, &t), PieceImage::new(q, 1, &unit)));
                copies_t_prime.push((Piece::surface(*euler, &t_prime), PieceImage::new(q, 1, &unit)));
            }
        }
    }
    let (pieces, images) = annuli.into_iter().chain(copies_t).chain(copies_t_prime).unzip();
    CoverMap {
        total: Complex2::new(names(&["E1", "E2", "E3", "E4"]), pieces),
        base: x3.clone(),
        degree: 2,
        connected: true,
        circle_map: circle_map(
            [("E1", "C"), ("E2", "C"), ("E3", "C'"), ("E4", "C'")]
                .map(|(c, b)| (c.to_string(), b.to_string(), 1)),
        ),
        piece_map: images,
    }
}

/// A degree-`d` cover in which every circle and every piece has a single
/// preimage wrapping `d` times; surfaces have the genus this forces.
fn uniform_cover(base: &Complex2, d: u64, rename: impl Fn(&str) -> String) -> CoverMap {
    let pieces = base
        .pieces
        .iter()
        .map(|p| {
            let mut p = p.clone();
            if let Piece::Surface { euler, .. } = &mut p {
                *euler *= d as i64;
            }
            for (c, _) in p.attachments_mut() {
                *c = rename(c);
            }
            p
        })
        .collect();
    let images = base
        .pieces
        .iter()
        .enumerate()
        .map(|(q, p)| {
            let lifts: Vec<(usize, u64)> = (0..p.attachments().len()).map(|j| (j, d)).collect();
            PieceImage::new(q, d, &lifts)
        })
        .collect();
    CoverMap {
        total: Complex2::new(base.circles.iter().map(|c| rename(c)).collect(), pieces),
        base: base.clone(),
        degree: d,
        connected: true,
        circle_map: base.circles.iter().map(|c| (rename(c), (c.clone(), d))).collect(),
        piece_map: images,
    }
}

/// `X, X1, X2, X3, X4, X5`, each stage covering or collapsing onto the previous.
pub fn build_tower_x(spec: &SurfaceAmalgamSpec) -> Result<Tower, TowerError> {
    let x = build_amalgam_complex(spec);
    let to_x = stage_x1(spec, &x);
    let x1 = to_x.total.clone();
    let (to_x1, fragments) = stage_x2(spec, &x1);
    let x2 = to_x1.total.clone();
    let (x3, record) = collapse_products(&x2, &fragments)?;
    let to_x3 = stage_x4(&x3);
    let x4 = to_x3.total.clone();
    let to_x4 = uniform_cover(&x4, ORBIFOLD_COVER_DEGREE, |c| format!("{c}'"));
    let x5 = to_x4.total.clone();
    let stages = [("X", x), ("X1", x1), ("X2", x2), ("X3", x3), ("X4", x4), ("X5", x5)]
        .into_iter()
        .map(|(name, complex)| Stage {
            name: name.into(),
            complex,
        })
        .collect();
    Ok(Tower {
        stages,
        links: vec![
            Link::Cover(to_x),
            Link::Cover(to_x1),
            Link::HomotopyEquivalence(record),
            Link::Cover(to_x3),
            Link::Cover(to_x4),
        ],
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ZTower {
    pub tower: Tower,
    /// The vector of the orbicomplex `Z1` covers.
    pub vector: EulerVector,
    pub orbifold_cover_degree: u64,
    /// `χ(Z1) = 16 · Σ w`.
    pub euler_matches_vector: bool,
}

/// `Z1`: two circles, a unit tube for each zero entry of the associated
/// vector and a surface of Euler characteristic `16 χ_i` for each negative
/// entry. `Z2`: its double cover on `D1..D4`, tubes lifting to `A` (on `D1`,
/// `D2`) and `A'` (on `D3`, `D4`), surfaces to `B` (on `D1`, `D4`) and `B'`
/// (on `D3`, `D2`); crosswise for the first surface when there are no tubes.
pub fn build_tower_z(spec: &SurfaceAmalgamSpec) -> ZTower {
    let data = associated_racg_vector(spec);
    let scale = ORBIFOLD_COVER_DEGREE as i64;
    let mut z1_pieces = Vec::new();
    for &entry in &data.blocks {
        z1_pieces.push(if entry == 0 {
            Piece::tube(("C1", 1), ("C2", 1))
        } else {
            Piece::surface(scale * entry, &[("C1", 1), ("C2", 1)])
        });
    }
    // tubes first, matching the vector's zero block
    z1_pieces.sort_by_key(|p| p.is_surface());
    let z1 = Complex2::new(names(&["C1", "C2"]), z1_pieces);

    let has_tubes = data.rank > 0;
    let unit = [(0, 1), (1, 1)];
    let mut lifted_a = Vec::new();
    let mut lifted_a_prime = Vec::new();
    let mut lifted_b = Vec::new();
    let mut lifted_b_prime = Vec::new();
    let mut first_surface = true;
    for (q, p) in z1.pieces.iter().enumerate() {
        let image = PieceImage::new(q, 1, &unit);
        match p {
            Piece::Tube { .. } => {
                lifted_a.push((Piece::tube(("D1", 1), ("D2", 1)), image.clone()));
                lifted_a_prime.push((Piece::tube(("D3", 1), ("D4", 1)), image));
            }
            Piece::Surface { euler, .. } => {
                let (b, b_prime) = if first_surface && !has_tubes {
                    ([("D1", 1), ("D2", 1)], [("D3", 1), ("D4", 1)])
                } else {
                    ([("D1", 1), ("D4", 1)], [("D3", 1), ("D2", 1)])
                };
                first_surface = false;
                lifted_b.push((Piece::surface(*euler, &b), image.clone()));
                lifted_b_prime.push((Piece::surface(*euler, &b_prime), image));
            }
        }
    }
    let (pieces, images) = lifted_a
        .into_iter()
        .chain(lifted_a_prime)
        .chain(lifted_b)
        .chain(lifted_b_prime)
        .unzip();
    let to_z1 = CoverMap {
        total: Complex2::new(names(&["D1", "D2", "D3", "D4"]), pieces),
        base: z1.clone(),
        degree: 2,
        connected: true,
        circle_map: circle_map(
            [("D1", "C1"), ("D2", "C2"), ("D3", "C1"), ("D4", "C2")]
                .map(|(c, b)| (c.to_string(), b.to_string(), 1)),
        ),
        piece_map: images,
    };
    let euler_matches_vector = z1.euler_char() * 4 == scale * data.w.sum_quarters();
    let z2 = to_z1.total.clone();
    ZTower {
        tower: Tower {
            stages: vec![
                Stage {
                    name: "Z1".into(),
                    complex: z1,
                },
                Stage {
                    name: "Z2".into(),
                    complex: z2,
                },
            ],
            links: vec![Link::Cover(to_z1)],
        },
        vector: data.w,
        orbifold_cover_degree: ORBIFOLD_COVER_DEGREE,
        euler_matches_vector,
    }
}

/// An isomorphism between the tops of the two towers.
pub fn check_x5_iso_z2(spec: &SurfaceAmalgamSpec) -> Result<Option<Isomorphism>, TowerError> {
    let x = build_tower_x(spec)?;
    let z = build_tower_z(spec);
    Ok(iso_check(
        x.stage("X5").expect("tower has X5"),
        z.tower.stage("Z2").expect("tower has Z2"),
    ))
}
