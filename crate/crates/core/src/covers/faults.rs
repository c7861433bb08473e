//! Single-fault mutations of a valid cover map, each breaking one condition.

use serde::Serialize;

use super::cover::{Condition, CoverMap};
use crate::complex::Piece;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Fault {
    /// A surface's Euler characteristic lowered by 2.
    WrongEuler,
    /// A piece's covering degree raised by 1.
    WrongDegree,
    /// A tube removed from the total space.
    DroppedTube,
    /// A surface attachment moved to a circle over a different base circle.
    RetargetedAttachment,
    /// A boundary cover degree raised by 1, so its partition no longer sums to `d`.
    BrokenPartition,
    /// The total space doubled into two components, still claimed connected.
    Disconnection,
    /// A circle's covering degree raised by 1.
    WrongCircleDegree,
}

impl Fault {
    pub const ALL: [Fault; 7] = [
        Fault::WrongEuler,
        Fault::WrongDegree,
        Fault::DroppedTube,
        Fault::RetargetedAttachment,
        Fault::BrokenPartition,
        Fault::Disconnection,
        Fault::WrongCircleDegree,
    ];

    /// The condition this fault must be caught by.
    pub fn target(self) -> Condition {
        match self {
            Fault::WrongEuler | Fault::BrokenPartition => Condition::PieceCover,
            Fault::WrongDegree | Fault::DroppedTube => Condition::PieceDegreeSum,
            Fault::RetargetedAttachment => Condition::AttachmentCompatibility,
            Fault::Disconnection => Condition::Connectivity,
            Fault::WrongCircleDegree => Condition::CircleDegreeSum,
        }
    }

    /// Applies the fault; `None` when the map has nothing to mutate (no
    /// surface, no tube, or only one base circle).
    pub fn apply(self, cm: &CoverMap) -> Option<CoverMap> {
        let mut out = cm.clone();
        let first_surface = cm.total.pieces.iter().position(Piece::is_surface);
        match self {
            Fault::WrongEuler => {
                if let Piece::Surface { euler, .. } = &mut out.total.pieces[first_surface?] {
                    *euler -= 2;
                }
            }
            Fault::WrongDegree => out.piece_map.first_mut()?.degree += 1,
            Fault::DroppedTube => {
                let t = cm.total.pieces.iter().position(Piece::is_tube)?;
                out.total.pieces.remove(t);
                out.piece_map.remove(t);
            }
            Fault::RetargetedAttachment => {
                let s = first_surface?;
                let (circle, _) = &cm.total.pieces[s].attachments()[0];
                let base = &cm.circle_map[circle].0;
                let other = cm
                    .total
                    .circles
                    .iter()
                    .find(|c| &cm.circle_map[*c].0 != base)?
                    .clone();
                out.total.pieces[s].attachments_mut()[0].0 = other;
            }
            Fault::BrokenPartition => out.piece_map[first_surface?].lifts[0].1 += 1,
            Fault::Disconnection => {
                let rename = |c: &str| format!("{c}#2");
                let mut copy = cm.total.clone();
                copy.circles = copy.circles.iter().map(|c| rename(c)).collect();
                for p in &mut copy.pieces {
                    for (c, _) in p.attachments_mut() {
                        *c = rename(c);
                    }
                }
                copy.labels = copy.labels.into_iter().map(|(c, l)| (rename(&c), l)).collect();
                out.total.circles.extend(copy.circles);
                out.total.pieces.extend(copy.pieces);
                out.total.labels.extend(copy.labels);
                for (c, image) in &cm.circle_map {
                    out.circle_map.insert(rename(c), image.clone());
                }
                out.piece_map.extend(cm.piece_map.iter().cloned());
                out.degree *= 2;
                out.connected = true;
            }
            Fault::WrongCircleDegree => out.circle_map.values_mut().next()?.1 += 1,
        }
        Some(out)
    }
}
