//! Permutations of `n` slots.
//!
//! Composition acts on the left: `p.compose(&q)` is the map `i -> p(q(i))`,
//! so in `p.compose(&q)` the permutation `q` is applied first. Words of
//! generators `s_1, ..., s_n` (applied in that order) therefore evaluate to
//! `s_n ∘ ... ∘ s_1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// A bijection of `{0, ..., n-1}` stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image table, checking bijectivity.
    pub fn from_images<I: IntoIterator<Item = usize>>(images: I) -> Result<Self, AlgebraError> {
        let images: Vec<u32> = images.into_iter().map(|i| i as u32).collect();
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let i = i as usize;
            if i >= images.len() || seen[i] {
                return Err(AlgebraError::NotABijection);
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, AlgebraError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= degree || touched[a] {
                    return Err(AlgebraError::NotABijection);
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&i| i as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, AlgebraError> {
        if self.degree() != other.degree() {
            return Err(AlgebraError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    /// +1 for even permutations, -1 for odd ones, computed from the cycle type.
    pub fn sign(&self) -> i8 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut transpositions = 0usize;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.apply(i);
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Smallest point not fixed by the permutation.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &j)| *i as u32 != j)
            .map(|(i, _)| i)
    }

    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut order = 1u64;
        for start in 0..n {
            let mut len = 0u64;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.apply(i);
                len += 1;
            }
            if len > 0 {
                order = lcm(order, len);
            }
        }
        order
    }

    /// Moves the entry at position `i` to position `self(i)`.
    pub fn permute_slice<T: Clone>(&self, values: &[T]) -> Vec<T> {
        let mut out = values.to_vec();
        for (i, &j) in self.images.iter().enumerate() {
            out[j as usize] = values[i].clone();
        }
        out
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.apply(i);
            }
            out.push(cycle);
        }
        out
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = AlgebraError;
    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        Permutation::from_images(v.into_iter().map(|i| i as usize))
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

// Cycle notation, 1-indexed for display.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, i) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn inversion_sign(p: &Permutation) -> i8 {
        let v: Vec<usize> = p.images().collect();
        let mut inv = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    #[test]
    fn rejects_non_bijections() {
        assert_eq!(
            Permutation::from_images([0, 0, 1]),
            Err(AlgebraError::NotABijection)
        );
        assert_eq!(
            Permutation::from_images([0, 3]),
            Err(AlgebraError::NotABijection)
        );
    }

    #[test]
    fn composition_acts_on_the_left() {
        // p sends 0->1, q sends 1->2: (p∘q)(1) = p(2), (q∘p)(0) = q(1) = 2.
        let p = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let q = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let pq = p.compose(&q).unwrap();
        assert_eq!(pq.apply(1), p.apply(q.apply(1)));
        assert_eq!(pq.apply(1), 2);
        let qp = q.compose(&p).unwrap();
        assert_eq!(qp.apply(0), 2);
        assert_ne!(pq, qp);
    }

    #[test]
    fn rotation_of_the_triangle() {
        let cw = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let ccw = Permutation::from_cycles(3, &[&[0, 2, 1]]).unwrap();
        assert_eq!(cw.compose(&cw).unwrap(), ccw);
        assert_eq!(cw.inverse(), ccw);
        assert_eq!(cw.compose(&ccw).unwrap(), Permutation::identity(3));
    }

    #[test]
    fn degree_mismatch() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(
            a.compose(&b),
            Err(AlgebraError::DegreeMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn signs_of_small_cycles() {
        let id = Permutation::identity(5);
        assert_eq!(id.sign(), 1);
        for a in 0..5 {
            for b in 0..5 {
                if a == b {
                    continue;
                }
                let t = Permutation::from_cycles(5, &[&[a, b]]).unwrap();
                assert_eq!(t.sign(), -1);
                assert_eq!(inversion_sign(&t), -1);
                for c in 0..5 {
                    if c == a || c == b {
                        continue;
                    }
                    let three = Permutation::from_cycles(5, &[&[a, b, c]]).unwrap();
                    assert_eq!(three.sign(), 1);
                    assert_eq!(inversion_sign(&three), 1);
                }
            }
        }
    }

    #[test]
    fn display_is_one_indexed() {
        let p = Permutation::from_cycles(4, &[&[0, 2]]).unwrap();
        assert_eq!(p.to_string(), "(1 3)");
        assert_eq!(Permutation::identity(2).to_string(), "()");
    }

    #[test]
    fn permute_slice_moves_piece_to_image() {
        let p = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        assert_eq!(p.permute_slice(&['a', 'b', 'c']), vec!['c', 'a', 'b']);
    }

    proptest! {
        #[test]
        fn associativity(p in arb_perm(8), q in arb_perm(8), r in arb_perm(8)) {
            let left = p.compose(&q).unwrap().compose(&r).unwrap();
            let right = p.compose(&q.compose(&r).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn inverse_is_involution(p in arb_perm(10)) {
            prop_assert_eq!(p.inverse().inverse(), p.clone());
            prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
            prop_assert!(p.compose(&Permutation::identity(10)).unwrap() == p);
        }

        #[test]
        fn sign_is_multiplicative(p in arb_perm(9), q in arb_perm(9)) {
            let pq = p.compose(&q).unwrap();
            prop_assert_eq!(pq.sign(), p.sign() * q.sign());
            prop_assert_eq!(p.sign(), inversion_sign(&p));
        }

        #[test]
        fn permute_slice_matches_composition(p in arb_perm(7), q in arb_perm(7)) {
            let v: Vec<usize> = (0..7).collect();
            let two_steps = q.permute_slice(&p.permute_slice(&v));
            prop_assert_eq!(two_steps, q.compose(&p).unwrap().permute_slice(&v));
        }
    }
}
