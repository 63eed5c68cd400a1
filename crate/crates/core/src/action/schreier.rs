//! Deterministic incremental Schreier–Sims.
//!
//! Each level fixes the previous base points; its base point is the first slot
//! moved by the first element that reaches the level. Transversal entries map
//! the base point to each point of its basic orbit.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{ActionError, ActionSpace};
use crate::algebra::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    transversal: Vec<Option<Permutation>>,
}

#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(degree: usize) -> Self {
        StabilizerChain {
            degree,
            levels: Vec::new(),
        }
    }

    /// The chain of the group generated by `gens`.
    pub fn from_generators(degree: usize, gens: &[Permutation]) -> Result<Self, ActionError> {
        let mut chain = StabilizerChain::new(degree);
        for g in gens {
            if g.degree() != degree {
                return Err(ActionError::InvalidSpace(format!(
                    "slot permutation of degree {} in a degree-{degree} representation",
                    g.degree()
                )));
            }
            chain.extend(g.clone(), 0);
        }
        Ok(chain)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Lengths of the basic orbits.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels
            .iter()
            .map(|l| l.transversal.iter().filter(|t| t.is_some()).count())
            .collect()
    }

    pub fn order(&self) -> BigUint {
        self.orbit_lengths()
            .into_iter()
            .fold(BigUint::one(), |acc, n| acc * BigUint::from(n))
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.is_member(g.clone(), 0)
    }

    fn is_member(&self, mut g: Permutation, from: usize) -> bool {
        for level in &self.levels[from.min(self.levels.len())..] {
            let q = g.apply(level.base);
            match &level.transversal[q] {
                Some(t) => g = t.inverse().compose_unchecked(&g),
                None => return false,
            }
        }
        g.is_identity()
    }

    fn extend(&mut self, g: Permutation, k: usize) {
        if self.is_member(g.clone(), k) {
            return;
        }
        if k == self.levels.len() {
            let base = g.first_moved().expect("non-members are not the identity");
            let mut transversal = vec![None; self.degree];
            transversal[base] = Some(Permutation::identity(self.degree));
            self.levels.push(Level {
                base,
                gens: Vec::new(),
                transversal,
            });
        }
        self.levels[k].gens.push(g.clone());
        let reps: Vec<Permutation> = self.levels[k].transversal.iter().flatten().cloned().collect();
        for t in reps {
            self.update(g.compose_unchecked(&t), k);
        }
    }

    fn update(&mut self, h: Permutation, k: usize) {
        let q = h.apply(self.levels[k].base);
        if let Some(t) = &self.levels[k].transversal[q] {
            let sifted = t.inverse().compose_unchecked(&h);
            self.extend(sifted, k + 1);
            return;
        }
        self.levels[k].transversal[q] = Some(h.clone());
        let gens = self.levels[k].gens.clone();
        for s in gens {
            self.update(s.compose_unchecked(&h), k);
        }
    }
}

/// Exact order of the group generated by the player moves' slot permutations.
pub fn group_order(space: &ActionSpace) -> Result<BigUint, ActionError> {
    let gens = space.slot_representation()?;
    let Some(degree) = gens.first().map(Permutation::degree) else {
        return Ok(BigUint::one());
    };
    Ok(StabilizerChain::from_generators(degree, &gens)?.order())
}

/// Orbit count as the index `|U| / |G|`, valid when `U` is a torsor of the
/// ambient group.
pub fn orbit_count_via_index(space: &ActionSpace) -> Result<BigUint, ActionError> {
    let ambient = space.torsor_order().ok_or(ActionError::NotATorsor)?;
    if space.universe().count().as_ref() != Some(ambient) {
        return Err(ActionError::NotATorsor);
    }
    let order = group_order(space)?;
    if order.is_zero() || !(ambient % &order).is_zero() {
        return Err(ActionError::InvalidSpace("group order does not divide the ambient order".into()));
    }
    Ok(ambient / order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> Vec<Permutation> {
        let all: Vec<usize> = (0..n).collect();
        vec![
            Permutation::from_cycles(n, &[&[0, 1]]).unwrap(),
            Permutation::from_cycles(n, &[&all]).unwrap(),
        ]
    }

    #[test]
    fn symmetric_and_alternating_orders() {
        for n in 2..=8 {
            let chain = StabilizerChain::from_generators(n, &sym(n)).unwrap();
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(chain.order(), BigUint::from(fact));
        }
        let a5 = [
            Permutation::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
            Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
        ];
        let chain = StabilizerChain::from_generators(5, &a5).unwrap();
        assert_eq!(chain.order(), BigUint::from(60u32));
        assert!(!chain.contains(&Permutation::from_cycles(5, &[&[0, 1]]).unwrap()));
        assert!(chain.contains(&Permutation::from_cycles(5, &[&[2, 3, 4]]).unwrap()));
    }

    #[test]
    fn trivial_group() {
        let chain = StabilizerChain::from_generators(4, &[Permutation::identity(4)]).unwrap();
        assert_eq!(chain.order(), BigUint::one());
        assert!(chain.base().is_empty());
    }

    #[test]
    fn dihedral_square() {
        let r = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let f = Permutation::from_cycles(4, &[&[1, 3]]).unwrap();
        let chain = StabilizerChain::from_generators(4, &[r.clone(), f.clone()]).unwrap();
        assert_eq!(chain.order(), BigUint::from(8u32));
        assert!(chain.contains(&r) && chain.contains(&f));
        assert!(!chain.contains(&Permutation::from_cycles(4, &[&[0, 1]]).unwrap()));
    }
}
