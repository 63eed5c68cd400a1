//! The INRC group: identity, negation, reciprocal and correlative acting on
//! the four implication statements between two propositions.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Inrc {
    I,
    N,
    R,
    C,
}

impl Inrc {
    pub const ALL: [Inrc; 4] = [Inrc::I, Inrc::N, Inrc::R, Inrc::C];

    // (swaps the propositions, negates the implication)
    fn bits(self) -> (bool, bool) {
        match self {
            Inrc::I => (false, false),
            Inrc::N => (false, true),
            Inrc::R => (true, false),
            Inrc::C => (true, true),
        }
    }

    fn from_bits(swap: bool, negate: bool) -> Self {
        match (swap, negate) {
            (false, false) => Inrc::I,
            (false, true) => Inrc::N,
            (true, false) => Inrc::R,
            (true, true) => Inrc::C,
        }
    }

    pub fn then(self, other: Inrc) -> Inrc {
        let (s1, n1) = self.bits();
        let (s2, n2) = other.bits();
        Inrc::from_bits(s1 ^ s2, n1 ^ n2)
    }

    pub fn act(self, s: Statement) -> Statement {
        let (swap, negate) = self.bits();
        Statement {
            reversed: s.reversed ^ swap,
            negated: s.negated ^ negate,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Inrc::I => "I",
            Inrc::N => "N",
            Inrc::R => "R",
            Inrc::C => "C",
        }
    }
}

/// "A implies B" and its three transforms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Statement {
    pub reversed: bool,
    pub negated: bool,
}

impl Statement {
    pub const A_IMPLIES_B: Statement = Statement {
        reversed: false,
        negated: false,
    };
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = if self.reversed { ("B", "A") } else { ("A", "B") };
        if self.negated {
            write!(f, "{p} does not imply {q}")
        } else {
            write!(f, "{p} implies {q}")
        }
    }
}

pub fn klein_inrc_table() -> GroupTable {
    let labels = Inrc::ALL.iter().map(|x| x.label().to_string()).collect();
    let product = Inrc::ALL
        .iter()
        .map(|&x| {
            Inrc::ALL
                .iter()
                .map(|&y| Inrc::ALL.iter().position(|&z| z == x.then(y)).unwrap())
                .collect()
        })
        .collect();
    GroupTable::from_product(labels, product).expect("INRC is a group")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Word;

    #[test]
    fn klein_group_properties() {
        let t = klein_inrc_table();
        assert_eq!(t.order(), 4);
        assert!(t.is_commutative());
        for x in 0..4 {
            assert_eq!(t.mul(x, x), t.identity());
        }
        let n = t.index_of("N").unwrap();
        let r = t.index_of("R").unwrap();
        assert_eq!(t.evaluate_word(&Word::from_labels(["N", "N"])).unwrap(), t.identity());
        assert_eq!(t.mul(n, r), t.mul(r, n));
        assert_eq!(t.label(t.mul(n, r)), "C");
    }

    #[test]
    fn transforms_of_an_implication() {
        let s = Statement::A_IMPLIES_B;
        assert_eq!(Inrc::I.act(s).to_string(), "A implies B");
        assert_eq!(Inrc::R.act(s).to_string(), "B implies A");
        assert_eq!(Inrc::N.act(s).to_string(), "A does not imply B");
        assert_eq!(Inrc::C.act(s).to_string(), "B does not imply A");
        for x in Inrc::ALL {
            for y in Inrc::ALL {
                assert_eq!(x.act(y.act(s)), x.then(y).act(s));
            }
        }
    }
}
