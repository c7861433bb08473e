//! Existence of connected covers of a bordered surface with prescribed
//! boundary behaviour, by the parity criterion and by brute force.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::perm::{is_transitive, Perm};

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
pub enum NeumannError {
    #[error("euler {euler} with {boundary} boundary circles is not a surface")]
    NoGenus { euler: i64, boundary: usize },
    #[error("base surface has genus 0; the parity criterion does not apply")]
    GenusZero,
    #[error("{got} partitions given for {expected} boundary circles")]
    PartitionCount { expected: usize, got: usize },
    #[error("partition {index} sums to {sum}, not the degree {degree}")]
    BadPartition { index: usize, sum: u64, degree: u64 },
    #[error("cover degree must be at least 1")]
    ZeroDegree,
}

/// Whether a connected degree-`d` cover of a positive-genus surface exists
/// whose boundary circles over base boundary `j` have degrees `partitions[j]`.
/// True exactly when the number of boundary circles upstairs has the parity
/// of `d·χ`.
pub fn neumann_cover_exists(
    euler: i64,
    boundary_count: usize,
    d: u64,
    partitions: &[Vec<u64>],
) -> Result<bool, NeumannError> {
    let twice_genus = 2 - euler - boundary_count as i64;
    if twice_genus < 0 || twice_genus % 2 != 0 {
        return Err(NeumannError::NoGenus {
            euler,
            boundary: boundary_count,
        });
    }
    if twice_genus == 0 {
        return Err(NeumannError::GenusZero);
    }
    if d == 0 {
        return Err(NeumannError::ZeroDegree);
    }
    if partitions.len() != boundary_count {
        return Err(NeumannError::PartitionCount {
            expected: boundary_count,
            got: partitions.len(),
        });
    }
    for (index, p) in partitions.iter().enumerate() {
        let sum = p.iter().sum();
        if sum != d || p.contains(&0) {
            return Err(NeumannError::BadPartition { index, sum, degree: d });
        }
    }
    let circles: i64 = partitions.iter().map(|p| p.len() as i64).sum();
    Ok((circles - d as i64 * euler).rem_euclid(2) == 0)
}

/// All partitions of `d` into positive parts, each non-increasing.
pub fn partitions_of(d: u64) -> Vec<Vec<u64>> {
    fn go(rest: u64, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}

/// Every tuple of boundary partitions realized by a connected degree-`d`
/// cover of the genus-`genus` surface with `boundary` boundary circles.
///
/// Connected covers correspond to transitive actions of the free group
/// `⟨a_1, b_1, …, a_g, b_g, c_1, …, c_{b-1}⟩` on `d` points; the last
/// boundary word is `c_b = (∏[a_i, b_i] c_1 ⋯ c_{b-1})^{-1}`, and the cycle
/// type of each `c_j` lists the boundary degrees over boundary `j`.
pub fn realized_partitions(genus: usize, boundary: usize, d: usize) -> BTreeSet<Vec<Vec<u64>>> {
    assert!(boundary >= 1, "a bordered surface needs a boundary circle");
    let rank = 2 * genus + boundary - 1;
    let all = Perm::all(d);
    let mut out = BTreeSet::new();
    let mut choice = vec![0usize; rank];
    loop {
        let gens: Vec<&Perm> = choice.iter().map(|&i| &all[i]).collect();
        let owned: Vec<Perm> = gens.iter().map(|&p| p.clone()).collect();
        if is_transitive(d, &owned) {
            let mut product = Perm::identity(d);
            for i in 0..genus {
                product = product.then(&gens[2 * i].commutator(gens[2 * i + 1]));
            }
            let mut boundaries: Vec<&Perm> = gens[2 * genus..].to_vec();
            for c in &boundaries {
                product = product.then(c);
            }
            let last = product.inverse();
            boundaries.push(&last);
            let tuple = boundaries
                .iter()
                .map(|c| c.cycle_type().into_iter().map(|x| x as u64).collect())
                .collect();
            out.insert(tuple);
        }
        // odometer over the generator tuple
        let mut pos = 0;
        loop {
            if pos == rank {
                return out;
            }
            choice[pos] += 1;
            if choice[pos] < all.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_examples() {
        assert_eq!(neumann_cover_exists(-1, 1, 2, &[vec![1, 1]]), Ok(true));
        assert_eq!(neumann_cover_exists(-1, 1, 2, &[vec![2]]), Ok(false));
        assert_eq!(neumann_cover_exists(-2, 2, 16, &[vec![16], vec![16]]), Ok(true));
    }

    #[test]
    fn preconditions() {
        assert_eq!(neumann_cover_exists(0, 2, 2, &[vec![2], vec![2]]), Err(NeumannError::GenusZero));
        assert!(matches!(
            neumann_cover_exists(-1, 1, 2, &[vec![1]]),
            Err(NeumannError::BadPartition { .. })
        ));
        assert!(matches!(
            neumann_cover_exists(-2, 1, 2, &[vec![2]]),
            Err(NeumannError::NoGenus { .. })
        ));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=6).map(|d| partitions_of(d).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11]);
    }

    #[test]
    fn brute_force_on_the_one_holed_torus() {
        let r = realized_partitions(1, 1, 2);
        assert!(r.contains(&vec![vec![1, 1]]));
        assert!(!r.contains(&vec![vec![2]]));
    }
}
