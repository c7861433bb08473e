//! Half-plane configurations and their cyclic-order constraints.
//!
//! A union of `k` half-planes along a common line inside a coarse PD(3)
//! space carries a cyclic order on its half-planes, so any element
//! stabilizing the union acts through the dihedral group of order `2k`.
//! Everything here is decided by enumerating that group.

use serde::Serialize;

use super::{ClassifyError, ManifoldWitness, Obstruction, ThreeManifoldVerdict};
use crate::model::SurfaceAmalgamSpec;
use crate::perm::Perm;

/// The `2k` symmetries of a `k`-gon as permutations of its vertices:
/// rotations `i ↦ i + j` followed by reflections `i ↦ j - i`.
pub fn dihedral_elements(k: usize) -> Vec<Perm> {
    let rotations = (0..k).map(|j| Perm::from_images((0..k).map(|i| (i + j) % k).collect()));
    let reflections = (0..k).map(|j| Perm::from_images((0..k).map(|i| (j + k - i) % k).collect()));
    rotations.chain(reflections).collect()
}

fn normalized_type(cycle_type: &[usize], k: usize) -> Result<Vec<usize>, ClassifyError> {
    let total: usize = cycle_type.iter().sum();
    if k == 0 || total != k || cycle_type.contains(&0) {
        return Err(ClassifyError::BadCycleType {
            cycle_type: cycle_type.to_vec(),
            k,
        });
    }
    let mut t = cycle_type.to_vec();
    t.sort_unstable_by(|a, b| b.cmp(a));
    Ok(t)
}

/// Does the dihedral group acting on `k` cyclically ordered points contain
/// an element with this cycle type?
pub fn dihedral_realizable(cycle_type: &[usize], k: usize) -> Result<bool, ClassifyError> {
    let target = normalized_type(cycle_type, k)?;
    Ok(dihedral_elements(k)
        .iter()
        .any(|g| g.cycle_type() == target))
}

/// `k` half-planes glued along a line, with the permutation a distinguished
/// group element induces on them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalfPlaneConfig {
    pub index_count: usize,
    #[serde(serialize_with = "serialize_perm")]
    pub action: Perm,
}

fn serialize_perm<S: serde::Serializer>(p: &Perm, s: S) -> Result<S::Ok, S::Error> {
    p.images().serialize(s)
}

impl HalfPlaneConfig {
    /// Around a line of valence `n` in `T_{m,n} × R` with `m >= 2`: the `n`
    /// flat half-planes `P_i` permuted cyclically by the curve element, plus
    /// the two half-planes of the adjacent surface, which it fixes.
    /// Indices `0..n` are the `P_i`; `n`, `n+1` are the surface halves.
    pub fn branch_line(n: usize) -> Self {
        let k = n + 2;
        HalfPlaneConfig {
            index_count: k,
            action: Perm::from_cycles(k, &[(0..n).collect()]),
        }
    }

    /// Around the central line of `T_{1,n} × R`: two half-planes `P_{i1}`,
    /// `P_{i2}` for each of the `n` outer lines, cycled in two parallel
    /// `n`-cycles, plus the two fixed surface halves.
    /// Indices `0..n` are `P_{i1}`, `n..2n` are `P_{i2}`, `2n`, `2n+1` the surface.
    pub fn star_line(n: usize) -> Self {
        let k = 2 * n + 2;
        HalfPlaneConfig {
            index_count: k,
            action: Perm::from_cycles(k, &[(0..n).collect(), (n..2 * n).collect()]),
        }
    }

    pub fn cycle_type(&self) -> Vec<usize> {
        self.action.cycle_type()
    }

    pub fn realizable(&self) -> bool {
        dihedral_realizable(&self.cycle_type(), self.index_count)
            .expect("a permutation's cycle type always sums to its degree")
    }

    /// When the action has exactly two fixed half-planes `H1`, `H2`, they
    /// split the cyclic order into two arcs, which correspond to the two
    /// deep complementary components of `H1 ∪ H2`. Returns whether every
    /// dihedral element realizing the action exchanges those arcs; `None`
    /// when the action is not realizable or does not fix exactly two indices.
    pub fn forces_arc_swap(&self) -> Option<bool> {
        let k = self.index_count;
        let target = self.cycle_type();
        if self.action.fixed_points().len() != 2 {
            return None;
        }
        let mut any = false;
        let mut all_swap = true;
        for g in dihedral_elements(k) {
            if g.cycle_type() != target {
                continue;
            }
            any = true;
            let fixed = g.fixed_points();
            let (p, q) = (fixed[0], fixed[1]);
            let arc_one: Vec<usize> = (p + 1..q).collect();
            let arc_two: Vec<usize> = (q + 1..p + k).map(|i| i % k).collect();
            let mut image: Vec<usize> = arc_one.iter().map(|&i| g.apply(i)).collect();
            image.sort_unstable();
            let mut other = arc_two.clone();
            other.sort_unstable();
            if arc_one.is_empty() || image != other {
                all_swap = false;
            }
        }
        any.then_some(all_swap)
    }
}

/// Re-derives the 3-manifold verdict from half-plane configurations alone.
///
/// Windings `n >= 3` give an unrealizable cycle type around the line
/// stabilized by `b`. When a winding equals 2 the configuration is
/// realizable only by a reflection that swaps the two sides of the surface
/// through that line, so the curve must survive in some `Z/2` quotient of
/// the surface group; a separating curve cannot.
pub fn obstruction_oracle(spec: &SurfaceAmalgamSpec) -> ThreeManifoldVerdict {
    let (m, n) = (spec.m as usize, spec.n as usize);
    let around_b = if m >= 2 {
        HalfPlaneConfig::branch_line(n)
    } else {
        HalfPlaneConfig::star_line(n)
    };
    if !around_b.realizable() {
        let obstruction = if m >= 2 {
            Obstruction::DihedralCase1
        } else {
            Obstruction::DihedralCase2
        };
        return ThreeManifoldVerdict::obstructed(obstruction, around_b.index_count);
    }

    let sides = [(n, m, spec.curve_b), (m, n, spec.curve_a)];
    for (winding, partner, curve) in sides {
        if winding != 2 {
            continue;
        }
        let config = if partner >= 2 {
            HalfPlaneConfig::branch_line(winding)
        } else {
            HalfPlaneConfig::star_line(winding)
        };
        if config.forces_arc_swap() == Some(true) && curve.is_null_homologous() {
            let obstruction = if partner >= 2 {
                Obstruction::CommutatorCase3
            } else {
                Obstruction::CommutatorCase4
            };
            return ThreeManifoldVerdict::obstructed(obstruction, config.index_count);
        }
    }

    let twisted = [m, n].iter().filter(|&&w| w == 2).count();
    let witness = match twisted {
        0 => ManifoldWitness::TrivialIBundles,
        1 => ManifoldWitness::TwistedOneSide,
        _ => ManifoldWitness::TwistedBothSides,
    };
    ThreeManifoldVerdict::manifold(witness)
}
