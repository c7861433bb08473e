//! Small permutations on `{0, …, n-1}` in image-array form.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    image: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            image: (0..n).collect(),
        }
    }

    /// Panics unless `image` is a bijection of `0..image.len()`.
    pub fn from_images(image: Vec<usize>) -> Self {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            assert!(i < image.len() && !seen[i], "not a permutation: {image:?}");
            seen[i] = true;
        }
        Perm { image }
    }

    /// Builds a permutation from disjoint cycles; unlisted points are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Self {
        let mut image: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                image[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Perm::from_images(image)
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.image[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Perm {
        let mut image = vec![0; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            image[j] = i;
        }
        Perm { image }
    }

    /// `self` then `other`: `x ↦ other(self(x))`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            image: self.image.iter().map(|&i| other.image[i]).collect(),
        }
    }

    pub fn commutator(&self, other: &Perm) -> Perm {
        self.then(other)
            .then(&self.inverse())
            .then(&other.inverse())
    }

    /// Cycle lengths, sorted non-increasing (fixed points included).
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.image.len();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = self.image[p];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.image[i] == i).collect()
    }

    /// Every permutation of `n` points, in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Perm {
                image: current.clone(),
            });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }
}

/// Does the group generated by `gens` act transitively on `0..n`?
pub fn is_transitive(n: usize, gens: &[Perm]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(p) = stack.pop() {
        for g in gens {
            for q in [g.apply(p), g.inverse().apply(p)] {
                if !seen[q] {
                    seen[q] = true;
                    count += 1;
                    stack.push(q);
                }
            }
        }
    }
    count == n
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut wrote = false;
        for start in 0..n {
            if seen[start] || self.image[start] == start {
                continue;
            }
            f.write_str("(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
                first = false;
                p = self.image[p];
            }
            f.write_str(")")?;
            wrote = true;
        }
        if !wrote {
            f.write_str("()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(Perm::all(0).len(), 1);
        assert_eq!(Perm::all(3).len(), 6);
        assert_eq!(Perm::all(4).len(), 24);
    }

    #[test]
    fn cycles_and_types() {
        let p = Perm::from_cycles(5, &[vec![0, 1, 2]]);
        assert_eq!(p.cycle_type(), vec![3, 1, 1]);
        assert_eq!(p.then(&p.inverse()), Perm::identity(5));
        assert_eq!(p.to_string(), "(0 1 2)");
        assert_eq!(p.fixed_points(), vec![3, 4]);
    }

    #[test]
    fn transitivity() {
        let c = Perm::from_cycles(3, &[vec![0, 1, 2]]);
        assert!(is_transitive(3, &[c]));
        let t = Perm::from_cycles(3, &[vec![0, 1]]);
        assert!(!is_transitive(3, &[t]));
    }

    #[test]
    fn commutator_in_abelian_quotient_is_even() {
        for a in Perm::all(3) {
            for b in Perm::all(3) {
                let c = a.commutator(&b);
                // commutators lie in A_3
                assert_ne!(c.cycle_type(), vec![2, 1]);
            }
        }
    }
}
