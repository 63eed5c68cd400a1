//! The configuration set `U` of a space: counted, enumerated, sampled.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use super::{ActionError, Config};

#[derive(Clone, Debug)]
pub enum Universe {
    /// Every arrangement of a multiset of pieces over as many positions,
    /// each piece carrying an orientation in `0..orientations`.
    Arrangements { pieces: Vec<u8>, orientations: u8 },
    /// An explicit list, kept sorted.
    Listed(Arc<Vec<Config>>),
    /// Infinite or not practically describable; only reachable sets are explored.
    Unbounded,
}

impl Universe {
    pub fn arrangements(mut pieces: Vec<u8>, orientations: u8) -> Self {
        pieces.sort_unstable();
        Universe::Arrangements {
            pieces,
            orientations: orientations.max(1),
        }
    }

    pub fn listed(mut configs: Vec<Config>) -> Self {
        configs.sort();
        configs.dedup();
        Universe::Listed(Arc::new(configs))
    }

    pub fn count(&self) -> Option<BigUint> {
        match self {
            Universe::Arrangements { pieces, orientations } => {
                let n = pieces.len();
                let mut count = factorial(n);
                let mut i = 0;
                while i < n {
                    let j = pieces[i..].iter().take_while(|&&p| p == pieces[i]).count();
                    count /= factorial(j);
                    i += j;
                }
                Some(count * BigUint::from(*orientations).pow(n as u32))
            }
            Universe::Listed(v) => Some(BigUint::from(v.len())),
            Universe::Unbounded => None,
        }
    }

    pub fn is_enumerable(&self, cap: usize) -> bool {
        self.count().is_some_and(|c| c <= BigUint::from(cap))
    }

    /// All configurations in lexicographic order.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<Config>, ActionError> {
        if !self.is_enumerable(cap) {
            return match self {
                Universe::Unbounded => Err(ActionError::NotEnumerable),
                _ => Err(ActionError::CapExceeded { cap }),
            };
        }
        match self {
            Universe::Arrangements { pieces, orientations } => {
                let n = pieces.len();
                let k = *orientations;
                let mut out = Vec::new();
                let mut perm = pieces.clone();
                loop {
                    if k == 1 {
                        out.push(Config::new(perm.clone()));
                    } else {
                        let mut orient = vec![0u8; n];
                        loop {
                            let mut bytes = perm.clone();
                            bytes.extend_from_slice(&orient);
                            out.push(Config::new(bytes));
                            if !increment(&mut orient, k) {
                                break;
                            }
                        }
                    }
                    if !next_permutation(&mut perm) {
                        break;
                    }
                }
                Ok(out)
            }
            Universe::Listed(v) => Ok(v.as_ref().clone()),
            Universe::Unbounded => Err(ActionError::NotEnumerable),
        }
    }

    /// A uniformly random configuration, when `U` is finite and describable.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Config> {
        match self {
            Universe::Arrangements { pieces, orientations } => {
                let mut bytes = pieces.clone();
                bytes.shuffle(rng);
                if *orientations > 1 {
                    for _ in 0..pieces.len() {
                        bytes.push(rng.random_range(0..*orientations));
                    }
                }
                Some(Config::new(bytes))
            }
            Universe::Listed(v) => v.choose(rng).cloned(),
            Universe::Unbounded => None,
        }
    }

    pub fn contains(&self, c: &Config) -> Option<bool> {
        match self {
            Universe::Arrangements { pieces, orientations } => {
                let n = pieces.len();
                let width = if *orientations > 1 { 2 * n } else { n };
                if c.width() != width {
                    return Some(false);
                }
                let mut sorted = c.bytes()[..n].to_vec();
                sorted.sort_unstable();
                Some(sorted == *pieces && c.bytes()[n..].iter().all(|&o| o < *orientations))
            }
            Universe::Listed(v) => Some(v.binary_search(c).is_ok()),
            Universe::Unbounded => None,
        }
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

fn increment(digits: &mut [u8], base: u8) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn next_permutation(v: &mut [u8]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
