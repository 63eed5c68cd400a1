//! Words over generator labels.
//!
//! A word is stored in application order: `letters[0]` acts first. The
//! written product of a word `s_1, ..., s_n` is `s_n ⋯ s_1`, matching the
//! left action used everywhere else in the crate.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{AlgebraError, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Exponent {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Exponent {
    pub fn flip(self) -> Self {
        match self {
            Exponent::Plus => Exponent::Minus,
            Exponent::Minus => Exponent::Plus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub label: String,
    pub exponent: Exponent,
}

impl Letter {
    pub fn new(label: impl Into<String>) -> Self {
        Letter {
            label: label.into(),
            exponent: Exponent::Plus,
        }
    }

    pub fn inverse_of(label: impl Into<String>) -> Self {
        Letter {
            label: label.into(),
            exponent: Exponent::Minus,
        }
    }

    pub fn inverse(&self) -> Self {
        Letter {
            label: self.label.clone(),
            exponent: self.exponent.flip(),
        }
    }

    pub fn is_inverse_of(&self, other: &Letter) -> bool {
        self.label == other.label && self.exponent != other.exponent
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            Exponent::Plus => write!(f, "{}", self.label),
            Exponent::Minus => write!(f, "{}^-1", self.label),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    /// A positive word from labels listed in application order.
    pub fn from_labels<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Word {
            letters: labels.into_iter().map(Letter::new).collect(),
        }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Word { letters }
    }

    /// Reversed with every exponent flipped.
    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(Letter::inverse).collect(),
        }
    }

    /// Cancels adjacent `s s^-1` pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for l in &self.letters {
            if out.last().is_some_and(|last| last.is_inverse_of(l)) {
                out.pop();
            } else {
                out.push(l.clone());
            }
        }
        Word { letters: out }
    }

    /// Labels in application order, assuming a positive word.
    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.letters.iter().map(|l| l.label.as_str())
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.exponent == Exponent::Plus)
    }

    /// Number of times each label is used (both exponents count).
    pub fn label_counts(&self) -> BTreeMap<String, u32> {
        let mut counts = BTreeMap::new();
        for l in &self.letters {
            *counts.entry(l.label.clone()).or_insert(0) += 1;
        }
        counts
    }

    /// The written product `s_n ∘ ... ∘ s_1` of the letters' permutations.
    pub fn evaluate_permutation<F>(&self, degree: usize, mut lookup: F) -> Result<Permutation, AlgebraError>
    where
        F: FnMut(&str) -> Option<Permutation>,
    {
        let mut acc = Permutation::identity(degree);
        for l in &self.letters {
            let p = lookup(&l.label).ok_or_else(|| AlgebraError::UnknownLabel(l.label.clone()))?;
            let p = match l.exponent {
                Exponent::Plus => p,
                Exponent::Minus => p.inverse(),
            };
            acc = p.compose(&acc)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = AlgebraError;

    /// Whitespace- or comma-separated labels; `^-1` marks an inverse letter.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let letter = if let Some(base) = tok.strip_suffix("^-1") {
                Letter::inverse_of(base)
            } else if let Some(base) = tok.strip_suffix("⁻¹") {
                Letter::inverse_of(base)
            } else {
                Letter::new(tok)
            };
            if letter.label.is_empty() {
                return Err(AlgebraError::UnknownLabel(tok.to_string()));
            }
            letters.push(letter);
        }
        Ok(Word { letters })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w: Word = "E E N^-1, S".parse().unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.letters()[2], Letter::inverse_of("N"));
        assert_eq!(w.to_string(), "E E N^-1 S");
        assert_eq!("".parse::<Word>().unwrap(), Word::empty());
    }

    #[test]
    fn inverse_reverses_and_flips() {
        let w = Word::from_labels(["a", "b"]);
        assert_eq!(w.inverse().to_string(), "b^-1 a^-1");
        assert!(w.then(&w.inverse()).free_reduce().is_empty());
    }

    #[test]
    fn free_reduction_cascades() {
        let w: Word = "a b c c^-1 b^-1 d".parse().unwrap();
        assert_eq!(w.free_reduce().to_string(), "a d");
    }

    #[test]
    fn evaluation_order_is_right_to_left() {
        // Applying a then b gives b∘a.
        let a = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let w = Word::from_labels(["a", "b"]);
        let p = w
            .evaluate_permutation(3, |l| match l {
                "a" => Some(a.clone()),
                "b" => Some(b.clone()),
                _ => None,
            })
            .unwrap();
        assert_eq!(p, b.compose(&a).unwrap());
        let err = Word::from_labels(["z"]).evaluate_permutation(3, |_| None);
        assert_eq!(err, Err(AlgebraError::UnknownLabel("z".into())));
    }

    #[test]
    fn counts() {
        let w: Word = "a a b^-1".parse().unwrap();
        let c = w.label_counts();
        assert_eq!(c["a"], 2);
        assert_eq!(c["b"], 1);
    }
}
