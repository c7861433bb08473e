//! Claimed covering maps between complexes and their verification.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::neumann::neumann_cover_exists;
use crate::complex::{Complex2, Piece};

/// Where a total piece goes: its base piece, its covering degree, and for
/// each of its attachments (tube ends, in order) the index of the base
/// attachment it lies over and the degree of the boundary cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceImage {
    pub base: usize,
    pub degree: u64,
    pub lifts: Vec<(usize, u64)>,
}

impl PieceImage {
    pub fn new(base: usize, degree: u64, lifts: &[(usize, u64)]) -> Self {
        PieceImage {
            base,
            degree,
            lifts: lifts.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverMap {
    pub total: Complex2,
    pub base: Complex2,
    pub degree: u64,
    /// Whether the total space is claimed to be connected.
    #[serde(default = "yes")]
    pub connected: bool,
    /// Total circle ↦ (base circle, covering degree).
    pub circle_map: BTreeMap<String, (String, u64)>,
    /// Indexed like `total.pieces`.
    pub piece_map: Vec<PieceImage>,
}

fn yes() -> bool {
    true
}

/// The numbered conditions a cover must satisfy; `Structure` covers maps
/// that are not even well formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "structure")]
    Structure,
    /// `χ(total) = D χ(base)`.
    #[serde(rename = "i")]
    EulerMultiplicative,
    /// Piece degrees over each base piece sum to `D`.
    #[serde(rename = "ii")]
    PieceDegreeSum,
    /// Circle degrees over each base circle sum to `D`.
    #[serde(rename = "iii")]
    CircleDegreeSum,
    /// Attachments lie over attachments with matching degrees.
    #[serde(rename = "iv")]
    AttachmentCompatibility,
    /// Each piece covers its image: Euler characteristic, boundary
    /// partitions and their realizability.
    #[serde(rename = "v")]
    PieceCover,
    #[serde(rename = "vi")]
    Connectivity,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::Structure => "structure",
            Condition::EulerMultiplicative => "(i)",
            Condition::PieceDegreeSum => "(ii)",
            Condition::CircleDegreeSum => "(iii)",
            Condition::AttachmentCompatibility => "(iv)",
            Condition::PieceCover => "(v)",
            Condition::Connectivity => "(vi)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub location: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub pass: bool,
    pub degree: u64,
    /// The violation with the lowest-numbered condition.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first: Option<Violation>,
    pub violations: Vec<Violation>,
}

impl CoverReport {
    pub fn has(&self, condition: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }
}

struct Collector(Vec<Violation>);

impl Collector {
    fn push(&mut self, condition: Condition, location: impl Into<String>, detail: impl Into<String>) {
        self.0.push(Violation {
            condition,
            location: location.into(),
            detail: detail.into(),
        });
    }
}

/// Checks every condition and reports all violations found.
pub fn verify_cover(cm: &CoverMap) -> CoverReport {
    let mut out = Collector(Vec::new());
    let d_total = cm.degree;
    check_structure(cm, &mut out);
    // later checks index freely, so stop at malformed maps
    if out.0.is_empty() {
        check_conditions(cm, &mut out);
    }
    let mut violations = out.0;
    violations.sort_by_key(|v| v.condition);
    CoverReport {
        pass: violations.is_empty(),
        degree: d_total,
        first: violations.first().cloned(),
        violations,
    }
}

fn check_structure(cm: &CoverMap, out: &mut Collector) {
    use Condition::Structure;
    if cm.degree == 0 {
        out.push(Structure, "cover", "degree is 0");
    }
    for (name, c) in [("total", &cm.total), ("base", &cm.base)] {
        if let Err(errors) = c.validate() {
            for e in errors {
                out.push(Structure, name, e.to_string());
            }
        }
    }
    let base_circles = cm.base.circle_index();
    for c in &cm.total.circles {
        match cm.circle_map.get(c) {
            None => out.push(Structure, format!("circle {c}"), "not mapped"),
            Some((b, e)) => {
                if !base_circles.contains_key(b.as_str()) {
                    out.push(Structure, format!("circle {c}"), format!("maps to unknown circle {b}"));
                }
                if *e == 0 {
                    out.push(Structure, format!("circle {c}"), "degree 0");
                }
            }
        }
    }
    let total_circles = cm.total.circle_index();
    for c in cm.circle_map.keys() {
        if !total_circles.contains_key(c.as_str()) {
            out.push(Structure, format!("circle {c}"), "mapped but not in the total space");
        }
    }
    if cm.piece_map.len() != cm.total.pieces.len() {
        out.push(
            Structure,
            "piece map",
            format!("{} entries for {} pieces", cm.piece_map.len(), cm.total.pieces.len()),
        );
        return;
    }
    for (i, (p, img)) in cm.total.pieces.iter().zip(&cm.piece_map).enumerate() {
        let Some(q) = cm.base.pieces.get(img.base) else {
            out.push(Structure, format!("piece {i}"), format!("maps to unknown piece {}", img.base));
            continue;
        };
        if img.degree == 0 {
            out.push(Structure, format!("piece {i}"), "degree 0");
        }
        if img.lifts.len() != p.attachments().len() {
            out.push(
                Structure,
                format!("piece {i}"),
                format!("{} lifts for {} attachments", img.lifts.len(), p.attachments().len()),
            );
        }
        for &(j, e) in &img.lifts {
            if j >= q.attachments().len() {
                out.push(Structure, format!("piece {i}"), format!("lift to missing attachment {j}"));
            }
            if e == 0 {
                out.push(Structure, format!("piece {i}"), "lift of degree 0");
            }
        }
    }
}

fn check_conditions(cm: &CoverMap, out: &mut Collector) {
    let d_total = cm.degree;
    let (total, base) = (&cm.total, &cm.base);

    // (i)
    let (chi_total, chi_base) = (total.euler_char(), base.euler_char());
    if chi_total != d_total as i64 * chi_base {
        out.push(
            Condition::EulerMultiplicative,
            "cover",
            format!("χ(total) = {chi_total}, D·χ(base) = {}", d_total as i64 * chi_base),
        );
    }

    // (ii)
    let mut piece_sums = vec![0u64; base.pieces.len()];
    for img in &cm.piece_map {
        piece_sums[img.base] += img.degree;
    }
    for (q, &s) in piece_sums.iter().enumerate() {
        if s != d_total {
            out.push(
                Condition::PieceDegreeSum,
                format!("base piece {q}"),
                format!("degrees over it sum to {s}, expected {d_total}"),
            );
        }
    }

    // (iii)
    let mut circle_sums: BTreeMap<&str, u64> = base.circles.iter().map(|c| (c.as_str(), 0)).collect();
    for (b, e) in cm.circle_map.values() {
        *circle_sums.get_mut(b.as_str()).unwrap() += e;
    }
    for (b, s) in circle_sums {
        if s != d_total {
            out.push(
                Condition::CircleDegreeSum,
                format!("base circle {b}"),
                format!("degrees over it sum to {s}, expected {d_total}"),
            );
        }
    }

    // (iv): pointwise compatibility, then the local fibre count at each circle
    let mut fibre: HashMap<(&str, usize, usize), u64> = HashMap::new();
    for (i, (p, img)) in total.pieces.iter().zip(&cm.piece_map).enumerate() {
        let q = &base.pieces[img.base];
        for (k, ((c, a_total), &(j, e))) in p.attachments().iter().zip(&img.lifts).enumerate() {
            let (b, a_base) = &q.attachments()[j];
            let (image, f) = &cm.circle_map[c];
            if image != b {
                out.push(
                    Condition::AttachmentCompatibility,
                    format!("piece {i} attachment {k}"),
                    format!("circle {c} lies over {image}, but the base attachment is on {b}"),
                );
            } else if a_total * f != e * a_base {
                out.push(
                    Condition::AttachmentCompatibility,
                    format!("piece {i} attachment {k}"),
                    format!("a'·f = {a_total}·{f} differs from e·a = {e}·{a_base}"),
                );
            }
            *fibre.entry((c.as_str(), img.base, j)).or_default() += e;
        }
    }
    let mut base_attachments: BTreeMap<&str, Vec<(usize, usize)>> = BTreeMap::new();
    for (q, piece) in base.pieces.iter().enumerate() {
        for (j, (b, _)) in piece.attachments().iter().enumerate() {
            base_attachments.entry(b.as_str()).or_default().push((q, j));
        }
    }
    for c in &total.circles {
        let (b, f) = &cm.circle_map[c];
        for &(q, j) in base_attachments.get(b.as_str()).map(Vec::as_slice).unwrap_or(&[]) {
            let s = fibre.get(&(c.as_str(), q, j)).copied().unwrap_or(0);
            if s != *f {
                out.push(
                    Condition::AttachmentCompatibility,
                    format!("circle {c}"),
                    format!("lifts of base piece {q} attachment {j} wrap {s} times, circle degree is {f}"),
                );
            }
        }
    }

    // (v)
    for (i, (p, img)) in total.pieces.iter().zip(&cm.piece_map).enumerate() {
        let q = &base.pieces[img.base];
        let d = img.degree;
        let loc = format!("piece {i}");
        match (p, q) {
            (Piece::Surface { euler, .. }, Piece::Surface { euler: base_euler, att }) => {
                if *euler != d as i64 * base_euler {
                    out.push(
                        Condition::PieceCover,
                        loc.clone(),
                        format!("euler {euler}, expected {d}·{base_euler}"),
                    );
                }
                let mut partitions = vec![Vec::new(); att.len()];
                for &(j, e) in &img.lifts {
                    partitions[j].push(e);
                }
                let mut sums_ok = true;
                for (j, part) in partitions.iter().enumerate() {
                    let s: u64 = part.iter().sum();
                    if s != d {
                        sums_ok = false;
                        out.push(
                            Condition::PieceCover,
                            loc.clone(),
                            format!("boundary degrees over base attachment {j} sum to {s}, expected {d}"),
                        );
                    }
                }
                if sums_ok && q.genus().is_some_and(|g| g >= 1) {
                    let realizable = neumann_cover_exists(*base_euler, att.len(), d, &partitions);
                    if realizable != Ok(true) {
                        out.push(
                            Condition::PieceCover,
                            loc.clone(),
                            format!("no connected degree-{d} cover has boundary partitions {partitions:?}"),
                        );
                    }
                }
            }
            (Piece::Tube { .. }, Piece::Tube { .. }) => {
                let mut seen = [false; 2];
                for &(j, e) in &img.lifts {
                    if e != d {
                        out.push(
                            Condition::PieceCover,
                            loc.clone(),
                            format!("tube end covers with degree {e}, tube degree is {d}"),
                        );
                    }
                    seen[j] = true;
                }
                if !(seen[0] && seen[1]) {
                    out.push(Condition::PieceCover, loc.clone(), "tube ends do not cover both base ends");
                }
            }
            _ => out.push(Condition::PieceCover, loc, "surface and tube pieces mixed"),
        }
    }

    // (vi)
    if cm.connected && !total.is_connected() {
        out.push(Condition::Connectivity, "total", "claimed connected, but is not");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(name: &str, base: &str, e: u64) -> (String, (String, u64)) {
        (name.to_string(), (base.to_string(), e))
    }

    /// A double cover of the one-holed torus with the given total euler.
    fn surface_cover(total_euler: i64) -> CoverMap {
        let base = Complex2::new(vec!["A".into()], vec![Piece::surface(-1, &[("A", 1)])]);
        let total = Complex2::new(
            vec!["a1".into(), "a2".into()],
            vec![Piece::surface(total_euler, &[("a1", 1), ("a2", 1)])],
        );
        CoverMap {
            total,
            base,
            degree: 2,
            connected: true,
            circle_map: [circle("a1", "A", 1), circle("a2", "A", 1)].into_iter().collect(),
            piece_map: vec![PieceImage::new(0, 2, &[(0, 1), (0, 1)])],
        }
    }

    #[test]
    fn good_cover_passes() {
        let r = verify_cover(&surface_cover(-2));
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn wrong_euler_is_caught() {
        let r = verify_cover(&surface_cover(-4));
        assert!(!r.pass);
        assert!(r.has(Condition::PieceCover));
        assert_eq!(r.first.unwrap().condition, Condition::EulerMultiplicative);
    }

    #[test]
    fn malformed_maps_are_structural() {
        let mut cm = surface_cover(-2);
        cm.piece_map[0].lifts.pop();
        let r = verify_cover(&cm);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.first.unwrap().condition, Condition::Structure);
    }

    #[test]
    fn condition_names_serialize_as_numerals() {
        let text = serde_json::to_string(&Condition::CircleDegreeSum).unwrap();
        assert_eq!(text, "\"iii\"");
    }
}
