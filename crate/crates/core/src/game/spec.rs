use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::GameError;
use crate::action::Config;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Archetype {
    MentalCalculation,
    InverseCalculation,
    Factorization,
    Combination,
    RevealedCombination,
    ImpossibleFactorization,
    ChoiceFactorization,
}

impl Archetype {
    pub const ALL: [Archetype; 7] = [
        Archetype::MentalCalculation,
        Archetype::InverseCalculation,
        Archetype::Factorization,
        Archetype::Combination,
        Archetype::RevealedCombination,
        Archetype::ImpossibleFactorization,
        Archetype::ChoiceFactorization,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Archetype::MentalCalculation => "mental_calculation",
            Archetype::InverseCalculation => "inverse_calculation",
            Archetype::Factorization => "factorization",
            Archetype::Combination => "combination",
            Archetype::RevealedCombination => "revealed_combination",
            Archetype::ImpossibleFactorization => "impossible_factorization",
            Archetype::ChoiceFactorization => "choice_factorization",
        }
    }

    /// The target is hidden from the player.
    pub fn hides_target(self) -> bool {
        matches!(self, Archetype::Combination | Archetype::RevealedCombination)
    }

    /// The player answers with a configuration computed from a given program.
    pub fn is_calculation(self) -> bool {
        matches!(self, Archetype::MentalCalculation | Archetype::InverseCalculation)
    }
}

impl fmt::Display for Archetype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Archetype {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        Archetype::ALL
            .into_iter()
            .find(|a| a.as_str() == norm)
            .ok_or_else(|| GameError::InvalidSpec(format!("unknown archetype `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Variants {
    #[serde(default)]
    pub blind: bool,
    #[serde(default)]
    pub constrained: bool,
    #[serde(default)]
    pub memory: bool,
}

impl Variants {
    pub const NONE: Variants = Variants {
        blind: false,
        constrained: false,
        memory: false,
    };

    pub fn parse_list<'a, I: IntoIterator<Item = &'a str>>(names: I) -> Result<Self, GameError> {
        let mut v = Variants::default();
        for name in names {
            match name.trim().to_ascii_lowercase().as_str() {
                "blind" => v.blind = true,
                "constrained" => v.constrained = true,
                "memory" => v.memory = true,
                "" => {}
                other => return Err(GameError::InvalidSpec(format!("unknown variant `{other}`"))),
            }
        }
        Ok(v)
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.blind {
            out.push("blind");
        }
        if self.constrained {
            out.push("constrained");
        }
        if self.memory {
            out.push("memory");
        }
        out
    }
}

/// Cards dealt to the player in constrained variants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CardBudget {
    /// Cards per generator label; labels not listed get none.
    PerGenerator(BTreeMap<String, u32>),
    /// A cap on the number of moves, whatever they are.
    Total(u32),
}

impl CardBudget {
    pub fn allows(&self, label: &str) -> bool {
        match self {
            CardBudget::PerGenerator(m) => m.get(label).is_some_and(|&c| c > 0),
            CardBudget::Total(n) => *n > 0,
        }
    }

    pub fn spend(&mut self, label: &str) -> bool {
        if !self.allows(label) {
            return false;
        }
        match self {
            CardBudget::PerGenerator(m) => *m.get_mut(label).unwrap() -= 1,
            CardBudget::Total(n) => *n -= 1,
        }
        true
    }

    pub fn refund(&mut self, label: &str) {
        match self {
            CardBudget::PerGenerator(m) => *m.entry(label.to_string()).or_insert(0) += 1,
            CardBudget::Total(n) => *n += 1,
        }
    }

    pub fn total(&self) -> u32 {
        match self {
            CardBudget::PerGenerator(m) => m.values().sum(),
            CardBudget::Total(n) => *n,
        }
    }
}

/// When a submitted sequence wins: only if the target is its final step, or
/// if any step reaches it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WinAt {
    #[default]
    Final,
    Any,
}

/// A named subset of configurations: those with the given byte values at the
/// given positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub id: String,
    pub bytes: Vec<(usize, u8)>,
}

impl Component {
    pub fn contains(&self, c: &Config) -> bool {
        self.bytes.iter().all(|&(i, v)| c.bytes().get(i) == Some(&v))
    }
}

/// A request for a session, as posted by clients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameSpec {
    pub game: String,
    pub archetype: Archetype,
    #[serde(default)]
    pub variants: Variants,
    #[serde(default)]
    pub seed: u64,
    /// Overrides the game's default cards in constrained variants.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<CardBudget>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub win_at: Option<WinAt>,
}

impl GameSpec {
    pub fn new(game: impl Into<String>, archetype: Archetype) -> Self {
        GameSpec {
            game: game.into(),
            archetype,
            variants: Variants::NONE,
            seed: 0,
            budget: None,
            win_at: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_variants(mut self, variants: Variants) -> Self {
        self.variants = variants;
        self
    }

    /// Rejects archetype and variant combinations that make no sense.
    pub fn check_combination(&self) -> Result<(), GameError> {
        let a = self.archetype;
        let v = self.variants;
        if v.constrained && matches!(a, Archetype::ImpossibleFactorization | Archetype::ChoiceFactorization) {
            return Err(GameError::InvalidSpec(format!(
                "{a} has no constrained variant: a lack of cards would blur the structural impossibility"
            )));
        }
        if a.is_calculation() && (v.blind || v.constrained || v.memory) {
            return Err(GameError::InvalidSpec(format!("{a} has no variants")));
        }
        if v.memory && a != Archetype::RevealedCombination {
            return Err(GameError::InvalidSpec("the memory variant needs revealed components".into()));
        }
        Ok(())
    }
}
