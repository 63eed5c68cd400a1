//! Finite configuration spaces with named, possibly partial, moves.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;

use super::{ActionError, Codec, Config, Universe};
use crate::algebra::{Exponent, GroupoidArrow, Letter, Permutation, Word};

/// Tile id marking the empty cell of sliding puzzles.
pub const BLANK: u8 = 0;

pub type MoveFn = Arc<dyn Fn(&[u8]) -> Option<Vec<u8>> + Send + Sync>;

/// A sign invariant that decides orbit membership without search.
///
/// Only meaningful on arrangements of pairwise distinct pieces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityRule {
    /// The moves generate exactly the alternating group on the positions.
    Alternating,
    /// Sliding puzzle on a board with `cols` columns: the arrangement sign
    /// times the parity of the blank's taxicab displacement is invariant, and
    /// every arrangement with the same value is reachable.
    SlidingBlank { cols: usize },
    /// Pieces with orientations mod `modulus` moved by 3-cycles twisting all
    /// three pieces by one: the arrangement sign and the orientation total
    /// mod `modulus` are invariant and together separate the orbits.
    TwistedAlternating { slots: usize, modulus: u8 },
    /// Quarter turns of 2x2 blocks on a board with `cols` columns, twisting
    /// each piece by one quarter: for each piece, its orientation plus the
    /// parity of its cell is invariant mod 2, and the orientation total is
    /// invariant mod 4. These separate the orbits.
    CheckerTwist { slots: usize, cols: usize },
}

impl ParityRule {
    /// Whether `uf` lies in the orbit of `u0`, when the rule applies.
    pub fn same_orbit(&self, u0: &[u8], uf: &[u8]) -> Option<bool> {
        if u0.len() != uf.len() {
            return Some(false);
        }
        match *self {
            ParityRule::Alternating => Some(arrangement_sign(u0)? == arrangement_sign(uf)?),
            ParityRule::SlidingBlank { cols } => {
                let (s0, sf) = (arrangement_sign(u0)?, arrangement_sign(uf)?);
                let b0 = u0.iter().position(|&x| x == BLANK)?;
                let bf = uf.iter().position(|&x| x == BLANK)?;
                let taxicab = (b0 / cols).abs_diff(bf / cols) + (b0 % cols).abs_diff(bf % cols);
                let blank_sign = if taxicab % 2 == 0 { 1 } else { -1 };
                Some(s0 * sf == blank_sign)
            }
            ParityRule::TwistedAlternating { slots, modulus } => {
                let total = |u: &[u8]| u[slots..].iter().map(|&o| o as u32).sum::<u32>() % modulus as u32;
                Some(
                    arrangement_sign(&u0[..slots])? == arrangement_sign(&uf[..slots])?
                        && total(u0) == total(uf),
                )
            }
            ParityRule::CheckerTwist { slots, cols } => {
                let marks = |u: &[u8]| -> Option<(Vec<u8>, u32)> {
                    let mut per_piece = vec![0u8; slots];
                    for (cell, &piece) in u[..slots].iter().enumerate() {
                        let parity = ((cell / cols + cell % cols) % 2) as u8;
                        *per_piece.get_mut(piece as usize)? = (u[slots + cell] + parity) % 2;
                    }
                    Some((per_piece, u[slots..].iter().map(|&o| o as u32).sum::<u32>() % 4))
                };
                arrangement_sign(&u0[..slots])?;
                arrangement_sign(&uf[..slots])?;
                Some(marks(u0)? == marks(uf)?)
            }
        }
    }
}

/// Sign of an arrangement of the distinct pieces `0..n`, or `None` when the
/// pieces are not a permutation of `0..n`.
pub fn arrangement_sign(pieces: &[u8]) -> Option<i8> {
    let p = Permutation::from_images(pieces.iter().map(|&x| x as usize)).ok()?;
    Some(p.sign())
}

/// How a generator transforms a configuration.
///
/// Partial moves return `None` where they do not apply, so one search
/// serves groups and groupoids alike.
#[derive(Clone)]
pub enum MoveRule {
    /// The piece at position `i` moves to position `perm(i)`.
    Permute(Permutation),
    /// Pieces move as in `Permute`, and the piece leaving position `i` has its
    /// orientation increased by `twist[i]` modulo `modulus`. Layout: `n`
    /// piece bytes followed by `n` orientation bytes.
    Twist {
        perm: Permutation,
        twist: Vec<u8>,
        modulus: u8,
    },
    /// Applies only when the blank sits on the arrow's source cell.
    Arrow(GroupoidArrow),
    Custom(MoveFn),
}

impl MoveRule {
    pub fn custom<F>(f: F) -> Self
    where
        F: Fn(&[u8]) -> Option<Vec<u8>> + Send + Sync + 'static,
    {
        MoveRule::Custom(Arc::new(f))
    }

    #[inline]
    pub fn apply(&self, u: &[u8]) -> Option<Vec<u8>> {
        match self {
            MoveRule::Permute(p) => {
                let mut out = u.to_vec();
                for i in 0..p.degree() {
                    out[p.apply(i)] = u[i];
                }
                Some(out)
            }
            MoveRule::Twist { perm, twist, modulus } => {
                let n = perm.degree();
                let mut out = u.to_vec();
                for i in 0..n {
                    let j = perm.apply(i);
                    out[j] = u[i];
                    out[n + j] = (u[n + i] + twist[i]) % modulus;
                }
                Some(out)
            }
            MoveRule::Arrow(a) => {
                if u.get(a.source) != Some(&BLANK) {
                    return None;
                }
                let mut out = u.to_vec();
                for i in 0..a.effect.degree() {
                    out[a.effect.apply(i)] = u[i];
                }
                Some(out)
            }
            MoveRule::Custom(f) => f(u),
        }
    }

    /// The permutation of slots induced by this rule, when it has one.
    pub fn derived_slots(&self) -> Option<Permutation> {
        match self {
            MoveRule::Permute(p) => Some(p.clone()),
            MoveRule::Twist { perm, twist, modulus } => {
                let k = *modulus as usize;
                let n = perm.degree();
                let mut images = vec![0usize; n * k];
                for i in 0..n {
                    for o in 0..k {
                        images[i * k + o] = perm.apply(i) * k + (o + twist[i] as usize) % k;
                    }
                }
                Permutation::from_images(images).ok()
            }
            MoveRule::Arrow(_) | MoveRule::Custom(_) => None,
        }
    }
}

impl fmt::Debug for MoveRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveRule::Permute(p) => write!(f, "Permute{p}"),
            MoveRule::Twist { perm, twist, modulus } => write!(f, "Twist({perm}, {twist:?} mod {modulus})"),
            MoveRule::Arrow(a) => write!(f, "Arrow({} -> {})", a.source + 1, a.target + 1),
            MoveRule::Custom(_) => write!(f, "Custom"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub label: String,
    /// Label of the generator undoing this one.
    pub inverse: String,
    pub rule: MoveRule,
    /// Slot permutation realizing this move, for stabilizer-chain analysis.
    pub slots: Option<Permutation>,
    /// Present only as the inverse of a player move (e.g. the sheep backing up).
    pub hidden: bool,
}

impl Generator {
    pub fn new(label: impl Into<String>, inverse: impl Into<String>, rule: MoveRule) -> Self {
        let slots = rule.derived_slots();
        Generator {
            label: label.into(),
            inverse: inverse.into(),
            rule,
            slots,
            hidden: false,
        }
    }

    /// A self-inverse generator.
    pub fn involution(label: impl Into<String>, rule: MoveRule) -> Self {
        let label = label.into();
        Self::new(label.clone(), label, rule)
    }

    pub fn hidden(mut self) -> Self {
        self.hidden = true;
        self
    }

    pub fn with_slots(mut self, slots: Permutation) -> Self {
        self.slots = Some(slots);
        self
    }
}

/// A finite set of configurations acted on by named generators.
#[derive(Clone, Debug)]
pub struct ActionSpace {
    name: String,
    width: usize,
    generators: Vec<Generator>,
    index: HashMap<String, usize>,
    inverse: Vec<usize>,
    universe: Universe,
    codec: Codec,
    /// Order of the ambient group when `U` is a torsor for it.
    torsor_order: Option<BigUint>,
    parity: Option<ParityRule>,
}

impl ActionSpace {
    pub fn new(
        name: impl Into<String>,
        codec: Codec,
        universe: Universe,
        generators: Vec<Generator>,
    ) -> Result<Self, ActionError> {
        let name = name.into();
        let width = codec.width();
        let mut index = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if index.insert(g.label.clone(), i).is_some() {
                return Err(ActionError::InvalidSpace(format!("duplicate generator `{}`", g.label)));
            }
        }
        let mut inverse = Vec::with_capacity(generators.len());
        for g in &generators {
            let j = *index
                .get(&g.inverse)
                .ok_or_else(|| ActionError::InvalidSpace(format!("`{}` names unknown inverse `{}`", g.label, g.inverse)))?;
            if generators[j].inverse != g.label {
                return Err(ActionError::InvalidSpace(format!(
                    "inverse pairing of `{}` and `{}` is not symmetric",
                    g.label, g.inverse
                )));
            }
            inverse.push(j);
        }
        Ok(ActionSpace {
            name,
            width,
            generators,
            index,
            inverse,
            universe,
            codec,
            torsor_order: None,
            parity: None,
        })
    }

    /// Declares `U` a torsor of an ambient group of the given order
    /// (e.g. the wreath product of the orientation group with `S_n`).
    pub fn with_torsor(mut self, ambient_order: BigUint) -> Self {
        self.torsor_order = Some(ambient_order);
        self
    }

    pub fn with_parity(mut self, rule: ParityRule) -> Self {
        self.parity = Some(rule);
        self
    }

    pub fn parity(&self) -> Option<ParityRule> {
        self.parity
    }

    /// Replaces the slot representation of the player generators.
    pub fn with_slot_representation(mut self, slots: Vec<(String, Permutation)>) -> Result<Self, ActionError> {
        for (label, p) in slots {
            let i = self.generator_index(&label)?;
            self.generators[i].slots = Some(p);
        }
        Ok(self)
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn codec(&self) -> &Codec {
        &self.codec
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn torsor_order(&self) -> Option<&BigUint> {
        self.torsor_order.as_ref()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Generator {
        &self.generators[i]
    }

    /// Indices of the generators offered to players, in declaration order.
    pub fn player_generators(&self) -> Vec<usize> {
        (0..self.generators.len()).filter(|&i| !self.generators[i].hidden).collect()
    }

    pub fn player_labels(&self) -> Vec<&str> {
        self.generators
            .iter()
            .filter(|g| !g.hidden)
            .map(|g| g.label.as_str())
            .collect()
    }

    pub fn generator_index(&self, label: &str) -> Result<usize, ActionError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| ActionError::UnknownGenerator(label.to_string()))
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inverse[i]
    }

    #[inline]
    pub fn apply_index(&self, i: usize, u: &[u8]) -> Option<Vec<u8>> {
        self.generators[i].rule.apply(u)
    }

    /// `g · u`, or an error when `g` does not apply at `u`.
    pub fn apply(&self, label: &str, u: &Config) -> Result<Config, ActionError> {
        let i = self.generator_index(label)?;
        self.apply_index(i, u.bytes())
            .map(Config::new)
            .ok_or_else(|| ActionError::Inapplicable {
                generator: label.to_string(),
                config: self.render(u),
            })
    }

    pub fn apply_letter(&self, letter: &Letter, u: &Config) -> Result<Config, ActionError> {
        match letter.exponent {
            Exponent::Plus => self.apply(&letter.label, u),
            Exponent::Minus => {
                let i = self.generator_index(&letter.label)?;
                let inv = &self.generators[self.inverse[i]].label;
                self.apply(inv, u)
            }
        }
    }

    /// Applies the letters of `word` in order (first letter first).
    pub fn act(&self, word: &Word, u: &Config) -> Result<Config, ActionError> {
        word.letters()
            .iter()
            .try_fold(u.clone(), |acc, l| self.apply_letter(l, &acc))
    }

    pub fn render(&self, u: &Config) -> String {
        self.codec.render(u)
    }

    pub fn parse(&self, s: &str) -> Result<Config, ActionError> {
        let c = self.codec.parse(s)?;
        if self.universe.contains(&c) == Some(false) {
            return Err(ActionError::Codec(format!("`{s}` is not a configuration of {}", self.name)));
        }
        Ok(c)
    }

    /// Slot permutations of the player generators, which generate the group.
    pub fn slot_representation(&self) -> Result<Vec<Permutation>, ActionError> {
        self.player_generators()
            .into_iter()
            .map(|i| {
                self.generators[i]
                    .slots
                    .clone()
                    .ok_or_else(|| ActionError::MissingSlotRepresentation(self.generators[i].label.clone()))
            })
            .collect()
    }

    /// Checks that every generator is undone by its paired inverse wherever
    /// it applies, on the given configurations.
    pub fn check_inverse_pairing<'a, I>(&self, configs: I) -> Result<(), ActionError>
    where
        I: IntoIterator<Item = &'a Config>,
    {
        for u in configs {
            for (i, g) in self.generators.iter().enumerate() {
                if let Some(v) = self.apply_index(i, u.bytes()) {
                    let back = self.apply_index(self.inverse[i], &v);
                    if back.as_deref() != Some(u.bytes()) {
                        return Err(ActionError::InvalidSpace(format!(
                            "`{}` then `{}` does not return to {}",
                            g.label,
                            g.inverse,
                            self.render(u)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that each slot representation moves configurations exactly like
    /// the rule. Piece-position spaces read slot `i` as position `i`; oriented
    /// spaces read slot `i * k + o` as position `i` with orientation `o`.
    /// Representations on other slot sets are skipped.
    pub fn check_slot_agreement<'a, I>(&self, configs: I) -> Result<(), ActionError>
    where
        I: IntoIterator<Item = &'a Config>,
    {
        for u in configs {
            for g in &self.generators {
                let Some(slots) = &g.slots else { continue };
                let Some(via_slots) = self.act_via_slots(slots, u.bytes()) else {
                    continue;
                };
                if g.rule.apply(u.bytes()).as_ref() != Some(&via_slots) {
                    return Err(ActionError::InvalidSpace(format!(
                        "slot representation of `{}` disagrees with its rule at {}",
                        g.label,
                        self.render(u)
                    )));
                }
            }
        }
        Ok(())
    }

    fn act_via_slots(&self, slots: &Permutation, u: &[u8]) -> Option<Vec<u8>> {
        let Codec::Pieces {
            slots: n, orientations, ..
        } = &self.codec
        else {
            return None;
        };
        let (n, k) = (*n, *orientations as usize);
        let mut out = u.to_vec();
        if k == 1 {
            if slots.degree() != n {
                return None;
            }
            for i in 0..n {
                out[slots.apply(i)] = u[i];
            }
        } else {
            if slots.degree() != n * k {
                return None;
            }
            for i in 0..n {
                let s = slots.apply(i * k + u[n + i] as usize);
                out[s / k] = u[i];
                out[n + s / k] = (s % k) as u8;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::Universe;

    fn three_beads() -> ActionSpace {
        let swap12 = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let swap23 = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        ActionSpace::new(
            "beads3",
            Codec::pieces("JRB", 3, 1),
            Universe::arrangements(vec![0, 1, 2], 1),
            vec![
                Generator::involution("s12", MoveRule::Permute(swap12)),
                Generator::involution("s23", MoveRule::Permute(swap23)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn swap_second_and_third() {
        let s = three_beads();
        let u = s.parse("JRB").unwrap();
        let v = s.apply("s23", &u).unwrap();
        assert_eq!(s.render(&v), "JBR");
    }

    #[test]
    fn action_is_a_left_action() {
        // (g1 g2)·u = g1·(g2·u): acting with the word [s12, s23] equals the
        // permutation s23∘s12 acting on positions.
        let s = three_beads();
        let u = s.parse("JRB").unwrap();
        let w = Word::from_labels(["s12", "s23"]);
        let via_word = s.act(&w, &u).unwrap();
        let p = w
            .evaluate_permutation(3, |l| s.generator(s.generator_index(l).ok()?).slots.clone())
            .unwrap();
        assert_eq!(via_word.bytes(), p.permute_slice(u.bytes()).as_slice());
        assert_eq!(s.act(&Word::empty(), &u).unwrap(), u);
        assert_eq!(s.act(&w.then(&w.inverse()), &u).unwrap(), u);
    }

    #[test]
    fn rejects_bad_pairings() {
        let p = Permutation::from_cycles(2, &[&[0, 1]]).unwrap();
        let err = ActionSpace::new(
            "bad",
            Codec::pieces("AB", 2, 1),
            Universe::arrangements(vec![0, 1], 1),
            vec![Generator::new("a", "missing", MoveRule::Permute(p))],
        );
        assert!(matches!(err, Err(ActionError::InvalidSpace(_))));
    }

    #[test]
    fn arrows_need_the_blank_at_their_source() {
        let effect = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let arrow = GroupoidArrow::new("1>2", 0, 1, effect);
        let rule = MoveRule::Arrow(arrow);
        assert_eq!(rule.apply(&[0, 5, 6]), Some(vec![5, 0, 6]));
        assert_eq!(rule.apply(&[5, 0, 6]), None);
    }

    #[test]
    fn twist_slots_match_rule() {
        let perm = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let rule = MoveRule::Twist {
            perm,
            twist: vec![1, 1, 1],
            modulus: 3,
        };
        let slots = rule.derived_slots().unwrap();
        // piece 0 at position 0 with orientation 2 lands at position 1 with orientation 0.
        assert_eq!(slots.apply(2), 3);
        assert_eq!(rule.apply(&[0, 1, 2, 2, 0, 0]).unwrap(), vec![2, 0, 1, 1, 0, 1]);
    }
}
