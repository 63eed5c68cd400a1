use std::sync::{Arc, OnceLock};

use rand::seq::IndexedRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Archetype, CardBudget, Component, Variants, WinAt};
use crate::action::{orbit_partition, ActionSpace, Config, OrbitPartition};
use crate::algebra::{GroupTable, Word};

/// Largest configuration set whose orbit partition is cached for sampling.
pub const PARTITION_CACHE_LIMIT: usize = 400_000;

/// Steps of the random walk used to draw targets in large spaces.
pub const RANDOM_WALK_STEPS: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameDefaults {
    pub archetype: Archetype,
    #[serde(default)]
    pub variants: Variants,
    #[serde(default)]
    pub win_at: WinAt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<CardBudget>,
    /// Fixed start; drawn at random when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<Config>,
    /// Fixed target; drawn from the start's orbit when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Config>,
    /// Goal set: any of these wins (a transversal for choice games).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub goals: Vec<Config>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<Component>,
    /// Length of the random program in calculation games.
    #[serde(default = "default_program_length")]
    pub program_length: usize,
    /// Fixed program for calculation games.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub program: Option<Word>,
}

fn default_program_length() -> usize {
    4
}

impl GameDefaults {
    pub fn new(archetype: Archetype) -> Self {
        GameDefaults {
            archetype,
            variants: Variants::NONE,
            win_at: WinAt::Final,
            budget: None,
            start: None,
            target: None,
            goals: Vec::new(),
            components: Vec::new(),
            program_length: default_program_length(),
            program: None,
        }
    }
}

/// Client-side drawing hints: board geometry, sprite ids, overlay layers.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RenderMeta {
    pub board: serde_json::Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sprites: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hint_layers: Vec<HintLayer>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HintLayer {
    pub id: String,
    /// Color index per board cell, row by row.
    pub colors: Vec<Vec<u8>>,
}

/// A playable game: an action space with its default rules and rendering.
#[derive(Debug)]
pub struct Game {
    pub id: String,
    pub title: String,
    pub family: String,
    pub params: serde_json::Value,
    pub space: ActionSpace,
    pub defaults: GameDefaults,
    pub render: RenderMeta,
    /// Abstract group table, for games played on a group itself.
    pub table: Option<GroupTable>,
    partition: OnceLock<Option<Arc<OrbitPartition>>>,
}

impl Game {
    pub fn new(id: impl Into<String>, title: impl Into<String>, family: impl Into<String>, space: ActionSpace, defaults: GameDefaults) -> Self {
        Game {
            id: id.into(),
            title: title.into(),
            family: family.into(),
            params: serde_json::Value::Null,
            space,
            defaults,
            render: RenderMeta::default(),
            table: None,
            partition: OnceLock::new(),
        }
    }

    pub fn with_params(mut self, params: serde_json::Value) -> Self {
        self.params = params;
        self
    }

    pub fn with_render(mut self, render: RenderMeta) -> Self {
        self.render = render;
        self
    }

    pub fn with_table(mut self, table: GroupTable) -> Self {
        self.table = Some(table);
        self
    }

    /// The orbit partition of `U`, computed once, when `U` is small enough.
    pub fn partition(&self) -> Option<Arc<OrbitPartition>> {
        self.partition
            .get_or_init(|| {
                if !self.space.universe().is_enumerable(PARTITION_CACHE_LIMIT) {
                    return None;
                }
                orbit_partition(&self.space, PARTITION_CACHE_LIMIT).ok().map(Arc::new)
            })
            .clone()
    }

    /// A uniformly random configuration, or a random walk from the default
    /// start (else target) when `U` cannot be sampled directly.
    pub fn sample_configuration<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<Config> {
        if let Some(c) = self.space.universe().sample(rng) {
            return Some(c);
        }
        let start = self.defaults.start.clone().or_else(|| self.defaults.target.clone())?;
        Some(self.random_walk(&start, RANDOM_WALK_STEPS, rng).1)
    }

    /// A configuration in the orbit of `u0`: uniform when the partition is
    /// cached, otherwise the end of a random walk.
    pub fn sample_in_orbit<R: Rng + ?Sized>(&self, u0: &Config, rng: &mut R) -> Config {
        if let Some(p) = self.partition() {
            if let Some(id) = p.orbit_id(u0) {
                let members: Vec<&Config> = p.members(id).collect();
                return (*members.choose(rng).unwrap()).clone();
            }
        }
        self.random_walk(u0, RANDOM_WALK_STEPS, rng).1
    }

    /// A walk of up to `steps` random applicable player moves.
    pub fn random_walk<R: Rng + ?Sized>(&self, u0: &Config, steps: usize, rng: &mut R) -> (Word, Config) {
        let gens = self.space.player_generators();
        let mut word = Word::empty();
        let mut cur = u0.clone();
        for _ in 0..steps {
            let options: Vec<(usize, Vec<u8>)> = gens
                .iter()
                .filter_map(|&g| self.space.apply_index(g, cur.bytes()).map(|v| (g, v)))
                .collect();
            let Some((g, v)) = options.choose(rng) else { break };
            word.push(crate::algebra::Letter::new(self.space.generator(*g).label.clone()));
            cur = Config::new(v.clone());
        }
        (word, cur)
    }

    /// A walk backwards from `uf`: a word of `steps` moves that ends at `uf`
    /// from some start, returned with that start.
    pub fn random_walk_back<R: Rng + ?Sized>(&self, uf: &Config, steps: usize, rng: &mut R) -> (Word, Config) {
        let gens = self.space.player_generators();
        let mut labels = Vec::new();
        let mut cur = uf.clone();
        for _ in 0..steps {
            let options: Vec<(usize, Vec<u8>)> = gens
                .iter()
                .filter_map(|&g| {
                    let u = self.space.apply_index(self.space.inverse_index(g), cur.bytes())?;
                    (self.space.apply_index(g, &u).as_deref() == Some(cur.bytes())).then_some((g, u))
                })
                .collect();
            let Some((g, u)) = options.choose(rng) else { break };
            labels.push(self.space.generator(*g).label.clone());
            cur = Config::new(u.clone());
        }
        labels.reverse();
        (Word::from_labels(labels), cur)
    }
}
