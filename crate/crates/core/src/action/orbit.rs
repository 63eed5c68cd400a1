//! Orbits by breadth-first closure under generators and their inverses.

use std::collections::{HashMap, HashSet};

use super::{ActionError, ActionSpace, Config};

pub const DEFAULT_NODE_CAP: usize = 5_000_000;

/// Every configuration reachable from `u0`, in BFS discovery order.
///
/// Generators are tried in declaration order; inverses are included through
/// the declared pairing, so the result is symmetric.
pub fn orbit_of(space: &ActionSpace, u0: &Config, cap: usize) -> Result<Vec<Config>, ActionError> {
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut order = vec![u0.bytes().to_vec()];
    seen.insert(u0.bytes().to_vec());
    let n = space.generators().len();
    let mut head = 0;
    while head < order.len() {
        for i in 0..n {
            for j in [i, space.inverse_index(i)] {
                if let Some(v) = space.apply_index(j, &order[head]) {
                    if !seen.contains(&v) {
                        if order.len() >= cap {
                            return Err(ActionError::CapExceeded { cap });
                        }
                        seen.insert(v.clone());
                        order.push(v);
                    }
                }
            }
        }
        head += 1;
    }
    Ok(order.into_iter().map(Config::new).collect())
}

#[derive(Clone, Debug)]
pub struct OrbitPartition {
    configs: Vec<Config>,
    orbit_id: Vec<usize>,
    sizes: Vec<usize>,
    representatives: Vec<Config>,
    index: HashMap<Config, usize>,
}

impl OrbitPartition {
    /// The enumerated configurations, in lexicographic order.
    pub fn configs(&self) -> &[Config] {
        &self.configs
    }

    pub fn orbit_count(&self) -> usize {
        self.sizes.len()
    }

    /// Orbit sizes, orbits numbered by their smallest configuration.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn representatives(&self) -> &[Config] {
        &self.representatives
    }

    pub fn orbit_id(&self, c: &Config) -> Option<usize> {
        self.index.get(c).map(|&i| self.orbit_id[i])
    }

    pub fn same_orbit(&self, a: &Config, b: &Config) -> Option<bool> {
        Some(self.orbit_id(a)? == self.orbit_id(b)?)
    }

    pub fn members(&self, orbit: usize) -> impl Iterator<Item = &Config> {
        self.configs
            .iter()
            .zip(&self.orbit_id)
            .filter(move |(_, &o)| o == orbit)
            .map(|(c, _)| c)
    }

    /// Probability that independent uniform `u0`, `uf` share an orbit.
    pub fn solvable_fraction(&self) -> f64 {
        let total = self.configs.len() as f64;
        self.sizes.iter().map(|&s| (s as f64 / total).powi(2)).sum()
    }
}

/// Partitions the whole configuration set into orbits.
///
/// Orbits are discovered by scanning `U` in lexicographic order, so orbit `k`
/// is represented by its lexicographically smallest configuration.
pub fn orbit_partition(space: &ActionSpace, cap: usize) -> Result<OrbitPartition, ActionError> {
    let configs = space.universe().enumerate(cap)?;
    let index: HashMap<Config, usize> = configs.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    let mut orbit_id = vec![usize::MAX; configs.len()];
    let mut sizes = Vec::new();
    let mut representatives = Vec::new();
    let n = space.generators().len();
    let mut queue = Vec::new();
    for start in 0..configs.len() {
        if orbit_id[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        orbit_id[start] = id;
        queue.clear();
        queue.push(start);
        let mut head = 0;
        while head < queue.len() {
            let u = configs[queue[head]].bytes();
            for i in 0..n {
                for j in [i, space.inverse_index(i)] {
                    let Some(v) = space.apply_index(j, u) else { continue };
                    let k = *index.get(&Config::new(v)).ok_or_else(|| {
                        ActionError::InvalidSpace(format!("`{}` leaves the configuration set", space.generator(j).label))
                    })?;
                    if orbit_id[k] == usize::MAX {
                        orbit_id[k] = id;
                        queue.push(k);
                    }
                }
            }
            head += 1;
        }
        sizes.push(queue.len());
        representatives.push(configs[start].clone());
    }
    Ok(OrbitPartition {
        configs,
        orbit_id,
        sizes,
        representatives,
        index,
    })
}

pub fn is_transitive(space: &ActionSpace, cap: usize) -> Result<bool, ActionError> {
    Ok(orbit_partition(space, cap)?.orbit_count() == 1)
}

/// One configuration per orbit: the lexicographically smallest.
pub fn transversal(partition: &OrbitPartition) -> Vec<Config> {
    partition.representatives().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{Codec, Generator, MoveRule, Universe};
    use crate::algebra::Permutation;

    fn beads(gens: Vec<Permutation>) -> ActionSpace {
        let n = gens[0].degree();
        let generators = gens
            .into_iter()
            .enumerate()
            .map(|(k, p)| {
                let inv = MoveRule::Permute(p.inverse());
                vec![
                    Generator::new(format!("g{k}"), format!("g{k}'"), MoveRule::Permute(p)),
                    Generator::new(format!("g{k}'"), format!("g{k}"), inv).hidden(),
                ]
            })
            .flatten()
            .collect();
        ActionSpace::new(
            "test",
            Codec::pieces("ABCDEFG", n, 1),
            Universe::arrangements((0..n as u8).collect(), 1),
            generators,
        )
        .unwrap()
    }

    #[test]
    fn identity_only_orbit_is_a_point() {
        let s = beads(vec![Permutation::identity(3)]);
        let u = s.parse("BAC").unwrap();
        assert_eq!(orbit_of(&s, &u, 10).unwrap(), vec![u]);
    }

    #[test]
    fn three_cycle_splits_into_two_orbits() {
        let s = beads(vec![Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap()]);
        let p = orbit_partition(&s, 100).unwrap();
        assert_eq!(p.sizes(), &[3, 3]);
        let reps: Vec<String> = transversal(&p).iter().map(|c| s.render(c)).collect();
        assert_eq!(reps, vec!["ABC", "ACB"]);
        assert!((p.solvable_fraction() - 0.5).abs() < 1e-12);
        assert!(!is_transitive(&s, 100).unwrap());
    }

    #[test]
    fn cap_is_an_error() {
        let s = beads(vec![
            Permutation::from_cycles(5, &[&[0, 1]]).unwrap(),
            Permutation::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
        ]);
        let u = s.parse("ABCDE").unwrap();
        assert_eq!(orbit_of(&s, &u, 200).unwrap().len(), 120);
        assert!(matches!(orbit_of(&s, &u, 50), Err(ActionError::CapExceeded { cap: 50 })));
    }
}
