//! Game definitions as JSON: every game exports one; custom permutation
//! games are built from one.

use serde::{Deserialize, Serialize};

use super::{build, permutation_space, CatalogError};
use crate::action::{Codec, Generator, MoveRule};
use crate::algebra::Permutation;
use crate::game::{Archetype, Game, GameDefaults, RenderMeta};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RuleDefinition {
    /// Piece at position `i` goes to `images[i]`.
    Permute { images: Vec<usize> },
    Twist { images: Vec<usize>, twist: Vec<u8>, modulus: u8 },
    /// Groupoid arrow moving the blank from `source` to `target`.
    Arrow { source: usize, target: usize },
    /// Defined in code; `slots` gives its permutation of slots when known.
    Custom,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorDefinition {
    pub label: String,
    pub inverse: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub hidden: bool,
    pub rule: RuleDefinition,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slots: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameDefinition {
    pub id: String,
    pub title: String,
    pub family: String,
    pub params: serde_json::Value,
    pub codec: Codec,
    /// Size of `U` as a decimal string, when finite and known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub configurations: Option<String>,
    pub generators: Vec<GeneratorDefinition>,
    pub defaults: GameDefaults,
    pub render: RenderMeta,
}

impl GameDefinition {
    pub fn of(game: &Game) -> Self {
        let generators = game
            .space
            .generators()
            .iter()
            .map(|g| GeneratorDefinition {
                label: g.label.clone(),
                inverse: g.inverse.clone(),
                hidden: g.hidden,
                rule: match &g.rule {
                    MoveRule::Permute(p) => RuleDefinition::Permute { images: p.images().collect() },
                    MoveRule::Twist { perm, twist, modulus } => RuleDefinition::Twist {
                        images: perm.images().collect(),
                        twist: twist.clone(),
                        modulus: *modulus,
                    },
                    MoveRule::Arrow(a) => RuleDefinition::Arrow {
                        source: a.source,
                        target: a.target,
                    },
                    MoveRule::Custom(_) => RuleDefinition::Custom,
                },
                slots: g.slots.as_ref().map(|p| p.images().collect()),
            })
            .collect();
        GameDefinition {
            id: game.id.clone(),
            title: game.title.clone(),
            family: game.family.clone(),
            params: game.params.clone(),
            codec: game.space.codec().clone(),
            configurations: game.space.universe().count().map(|c| c.to_string()),
            generators,
            defaults: game.defaults.clone(),
            render: game.render.clone(),
        }
    }
}

/// A user-defined game on `n` distinct pieces, each move given by its
/// cycles on positions numbered from 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PermutationGameFile {
    pub id: String,
    #[serde(default)]
    pub title: Option<String>,
    pub alphabet: String,
    pub n: usize,
    pub generators: Vec<PermutationMove>,
    #[serde(default)]
    pub archetype: Option<Archetype>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PermutationMove {
    pub label: String,
    /// Label of the reverse move; added automatically unless the move is
    /// its own inverse.
    #[serde(default)]
    pub inverse: Option<String>,
    pub cycles: Vec<Vec<usize>>,
}

pub fn permutation_game(file: &PermutationGameFile) -> Result<Game, CatalogError> {
    let n = file.n;
    if n == 0 || n > file.alphabet.chars().count() || n > 255 {
        return Err(CatalogError::BadParameter("n must be between 1 and the alphabet length".into()));
    }
    let mut gens = Vec::new();
    for m in &file.generators {
        let cycles: Vec<Vec<usize>> = m
            .cycles
            .iter()
            .map(|c| c.iter().map(|&i| i.checked_sub(1).filter(|&i| i < n)).collect::<Option<Vec<_>>>())
            .collect::<Option<_>>()
            .ok_or_else(|| CatalogError::BadParameter(format!("`{}` names a position outside 1..={n}", m.label)))?;
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        let p = Permutation::from_cycles(n, &refs)
            .map_err(|e| CatalogError::BadParameter(format!("`{}`: {e}", m.label)))?;
        let inv = p.inverse();
        if inv == p {
            gens.push(Generator::new(m.label.clone(), m.inverse.clone().unwrap_or(m.label.clone()), MoveRule::Permute(p)));
        } else {
            let back = m.inverse.clone().unwrap_or_else(|| format!("{}'", m.label));
            gens.push(Generator::new(m.label.clone(), back.clone(), MoveRule::Permute(p)));
            if !file.generators.iter().any(|o| o.label == back) {
                gens.push(Generator::new(back, m.label.clone(), MoveRule::Permute(inv)));
            }
        }
    }
    let space = permutation_space(&file.id, &file.alphabet, n, gens)?;
    let d = GameDefaults::new(file.archetype.unwrap_or(Archetype::Factorization));
    Ok(Game::new(
        file.id.clone(),
        file.title.clone().unwrap_or_else(|| file.id.clone()),
        "permutation",
        space,
        d,
    )
    .with_params(serde_json::to_value(file).expect("plain data"))
    .with_render(RenderMeta {
        board: serde_json::json!({"kind": "line", "beads": n}),
        sprites: Vec::new(),
        hint_layers: Vec::new(),
    }))
}

/// A game from a definition file: either a custom permutation game
/// (`"family": "permutation"`) or a catalog id.
pub fn game_from_json(text: &str) -> Result<Game, CatalogError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CatalogError::BadParameter(format!("invalid JSON: {e}")))?;
    if value.get("family").and_then(|f| f.as_str()) == Some("permutation") {
        let file: PermutationGameFile =
            serde_json::from_value(value).map_err(|e| CatalogError::BadParameter(e.to_string()))?;
        return permutation_game(&file);
    }
    let id = value
        .get("id")
        .and_then(|v| v.as_str())
        .ok_or_else(|| CatalogError::BadParameter("a definition needs an id".into()))?;
    build(id)
}
