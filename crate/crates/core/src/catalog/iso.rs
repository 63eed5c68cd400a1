//! Pairs of games whose actions are isomorphic, played side by side: a move
//! on either side moves both.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde_json::json;

use super::CatalogError;
use crate::action::{ActionSpace, Codec, Config, Generator, MoveRule, Universe};
use crate::algebra::Word;
use crate::game::{Archetype, Game, GameDefaults, RenderMeta};

/// Largest side validated exhaustively.
pub const ISO_LIMIT: usize = 100_000;

/// Longest word searched when realizing a right move on the left side.
pub const REVERSE_WORD_LIMIT: usize = 6;

/// A validated isomorphism: the configuration bijection and, for every
/// generator of either side, the word it induces on the other side.
#[derive(Clone, Debug)]
pub struct Isomorphism {
    pub forward: HashMap<Config, Config>,
    pub left_to_right: BTreeMap<String, Word>,
    pub right_to_left: BTreeMap<String, Word>,
}

fn all_configs(space: &ActionSpace) -> Result<Vec<Config>, CatalogError> {
    space
        .universe()
        .enumerate(ISO_LIMIT)
        .map_err(|_| CatalogError::BadParameter(format!("{} is too large to check exhaustively", space.name())))
}

/// Extends `phi` over the orbit of `u` with `phi(u) = v`, following the
/// mapping. Returns `None` on any conflict.
fn extend_over_orbit(
    a: &ActionSpace,
    b: &ActionSpace,
    mapping: &BTreeMap<String, Word>,
    phi: &HashMap<Config, Config>,
    used: &HashMap<Config, Config>,
    u: &Config,
    v: &Config,
) -> Option<HashMap<Config, Config>> {
    let mut local: HashMap<Config, Config> = HashMap::from([(u.clone(), v.clone())]);
    let mut image_of: HashMap<Config, Config> = HashMap::from([(v.clone(), u.clone())]);
    if used.contains_key(v) {
        return None;
    }
    let mut queue = VecDeque::from([u.clone()]);
    while let Some(x) = queue.pop_front() {
        let fx = local[&x].clone();
        for g in a.generators() {
            let word = mapping.get(&g.label)?;
            let gx = a.apply(&g.label, &x).ok();
            let gfx = b.act(word, &fx).ok();
            match (gx, gfx) {
                (None, None) => {}
                (Some(y), Some(fy)) => {
                    if let Some(known) = local.get(&y).or_else(|| phi.get(&y)) {
                        if *known != fy {
                            return None;
                        }
                        continue;
                    }
                    if used.contains_key(&fy) || image_of.get(&fy).is_some_and(|p| *p != y) {
                        return None;
                    }
                    image_of.insert(fy.clone(), y.clone());
                    local.insert(y.clone(), fy);
                    queue.push_back(y);
                }
                _ => return None,
            }
        }
    }
    Some(local)
}

/// Checks that `mapping` (left generator label to right word) induces a
/// bijection of configurations intertwining the two actions, and derives
/// the words realizing each right generator on the left.
pub fn check_isomorphism(
    a: &ActionSpace,
    b: &ActionSpace,
    mapping: &BTreeMap<String, Word>,
) -> Result<Isomorphism, CatalogError> {
    for g in a.generators() {
        if !mapping.contains_key(&g.label) {
            return Err(CatalogError::BadParameter(format!("`{}` has no image", g.label)));
        }
    }
    for w in mapping.values() {
        for l in w.labels() {
            b.generator_index(l)?;
        }
    }
    let left = all_configs(a)?;
    let right = all_configs(b)?;
    if left.len() != right.len() {
        return Err(CatalogError::BadParameter(format!(
            "{} has {} configurations and {} has {}",
            a.name(),
            left.len(),
            b.name(),
            right.len()
        )));
    }
    let mut phi: HashMap<Config, Config> = HashMap::new();
    let mut used: HashMap<Config, Config> = HashMap::new();
    for u in &left {
        if phi.contains_key(u) {
            continue;
        }
        let extension = right
            .iter()
            .find_map(|v| extend_over_orbit(a, b, mapping, &phi, &used, u, v))
            .ok_or_else(|| CatalogError::BadParameter("the mapping does not intertwine the two actions".into()))?;
        for (x, y) in extension {
            used.insert(y.clone(), x.clone());
            phi.insert(x, y);
        }
    }
    let mut right_to_left = BTreeMap::new();
    for h in b.generators() {
        let w = realize(a, b, &phi, &left, &h.label).ok_or_else(|| {
            CatalogError::BadParameter(format!("no word of {} realizes `{}`", a.name(), h.label))
        })?;
        right_to_left.insert(h.label.clone(), w);
    }
    Ok(Isomorphism {
        forward: phi,
        left_to_right: mapping.clone(),
        right_to_left,
    })
}

/// Shortest left word `w` with `phi(w u) = h phi(u)` for every `u`.
fn realize(a: &ActionSpace, b: &ActionSpace, phi: &HashMap<Config, Config>, left: &[Config], h: &str) -> Option<Word> {
    let wanted: Vec<Option<Config>> = left.iter().map(|u| b.apply(h, &phi[u]).ok()).collect();
    let matches = |w: &Word| {
        left.iter().zip(&wanted).all(|(u, want)| {
            let got = a.act(w, u).ok().map(|x| phi[&x].clone());
            got == *want
        })
    };
    let labels: Vec<&str> = a.player_labels();
    let mut layer = vec![Word::empty()];
    for _ in 0..=REVERSE_WORD_LIMIT {
        let mut next = Vec::new();
        for w in &layer {
            if matches(w) {
                return Some(w.clone());
            }
            for l in &labels {
                next.push(w.then(&Word::from_labels([*l])));
            }
        }
        layer = next;
    }
    None
}

fn pair_rule(a: &ActionSpace, b: &ActionSpace, left: Word, right: Word) -> MoveRule {
    let (a, b) = (a.clone(), b.clone());
    let split = a.width();
    MoveRule::custom(move |u: &[u8]| {
        let l = a.act(&left, &Config::from(&u[..split])).ok()?;
        let r = b.act(&right, &Config::from(&u[split..])).ok()?;
        let mut out = l.into_bytes();
        out.extend(r.into_bytes());
        Some(out)
    })
}

/// The linked space on pairs `(u, phi(u))`. Labels are kept when the two
/// sides use distinct labels, otherwise prefixed with `l:` and `r:`.
pub fn linked_space(name: &str, a: &ActionSpace, b: &ActionSpace, iso: &Isomorphism) -> Result<ActionSpace, CatalogError> {
    let clash = a.generators().iter().any(|g| b.generator_index(&g.label).is_ok());
    let tag = |side: &str, l: &str| if clash { format!("{side}:{l}") } else { l.to_string() };
    let mut gens = Vec::new();
    for g in a.generators() {
        let rule = pair_rule(a, b, Word::from_labels([g.label.as_str()]), iso.left_to_right[&g.label].clone());
        let mut gen = Generator::new(tag("l", &g.label), tag("l", &g.inverse), rule);
        gen.hidden = g.hidden;
        gens.push(gen);
    }
    for h in b.generators() {
        let rule = pair_rule(a, b, iso.right_to_left[&h.label].clone(), Word::from_labels([h.label.as_str()]));
        let mut gen = Generator::new(tag("r", &h.label), tag("r", &h.inverse), rule);
        gen.hidden = h.hidden;
        gens.push(gen);
    }
    let configs = iso
        .forward
        .iter()
        .map(|(u, v)| {
            let mut bytes = u.bytes().to_vec();
            bytes.extend_from_slice(v.bytes());
            Config::new(bytes)
        })
        .collect();
    let codec = Codec::Pair {
        left: Box::new(a.codec().clone()),
        left_width: a.width(),
        right: Box::new(b.codec().clone()),
    };
    Ok(ActionSpace::new(name, codec, Universe::listed(configs), gens)?)
}

/// Validates the mapping and builds the side-by-side game.
pub fn build_isomorphic_pair(a: &Game, b: &Game, mapping: &BTreeMap<String, Word>) -> Result<Game, CatalogError> {
    let iso = check_isomorphism(&a.space, &b.space, mapping)?;
    let id = format!("{}+{}", a.id, b.id);
    let space = linked_space(&id, &a.space, &b.space, &iso)?;
    let mut d = GameDefaults::new(Archetype::Factorization);
    if let Some(s) = &a.defaults.start {
        let mut bytes = s.bytes().to_vec();
        bytes.extend_from_slice(iso.forward[s].bytes());
        d.start = Some(Config::new(bytes));
    }
    let words = |m: &BTreeMap<String, Word>| -> BTreeMap<String, String> {
        m.iter().map(|(k, v)| (k.clone(), v.to_string())).collect()
    };
    Ok(Game::new(id, format!("{} | {}", a.title, b.title), "isomorphic_pair", space, d)
        .with_params(json!({
            "kind": "isomorphic_pair",
            "left": a.id,
            "right": b.id,
            "left_to_right": words(&iso.left_to_right),
            "right_to_left": words(&iso.right_to_left),
        }))
        .with_render(RenderMeta {
            board: json!({"kind": "split", "left": a.render.board, "right": b.render.board}),
            sprites: a.render.sprites.iter().chain(&b.render.sprites).cloned().collect(),
            hint_layers: Vec::new(),
        }))
}

pub fn square_lamps_game() -> Game {
    let mapping: BTreeMap<String, Word> = super::misc::square_to_lamps().into_iter().collect();
    let mut g = build_isomorphic_pair(&super::misc::square_d4_game(), &super::misc::two_lamps_game(), &mapping)
        .expect("the square and the lamps are isomorphic");
    g.id = "square_lamps".into();
    g
}
