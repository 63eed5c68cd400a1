//! Concrete games and an analyzer for their quantitative facts.

pub mod analyze;
pub mod beads;
pub mod definition;
pub mod elephants;
pub mod grid;
pub mod iso;
pub mod misc;
pub mod puzzles;
pub mod rubik;
pub mod taquin;

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::action::{factorial, ActionError, ActionSpace, Codec, Generator, MoveRule, Universe};
use crate::algebra::Permutation;
use crate::game::Game;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown game `{0}`")]
    UnknownGame(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// Arrangements of `n` distinct pieces acted on by permutations of positions.
pub fn permutation_space(
    name: &str,
    alphabet: &str,
    n: usize,
    gens: Vec<Generator>,
) -> Result<ActionSpace, ActionError> {
    Ok(ActionSpace::new(
        name,
        Codec::pieces(alphabet, n, 1),
        Universe::arrangements((0..n as u8).collect(), 1),
        gens,
    )?
    .with_torsor(factorial(n)))
}

/// A turn and its reverse, `label` and `label'`.
pub fn turn(label: &str, p: Permutation) -> Vec<Generator> {
    let back = format!("{label}'");
    let inv = p.inverse();
    vec![
        Generator::new(label, back.clone(), MoveRule::Permute(p)),
        Generator::new(back, label, MoveRule::Permute(inv)),
    ]
}

/// Ids of the games listed by default.
pub const GAME_IDS: &[&str] = &[
    "infernal",
    "linear5",
    "cyclic5",
    "even",
    "safe",
    "displacement",
    "sheep",
    "programmed_sheep",
    "ladybug",
    "elephants_reflected",
    "elephants_rotating",
    "elephants_reflected_herd",
    "elephants_rotating_herd",
    "square_free3",
    "square_taquin3",
    "square_rotation4",
    "square_crystallo3",
    "square_crystallo4",
    "hex",
    "hex_corrected",
    "hex_crystallo",
    "triangle",
    "taquin",
    "taquin3",
    "rubik",
    "primes",
    "code3",
    "z3",
    "inrc",
    "square_d4",
    "two_lamps",
    "square_lamps",
];

fn sized(id: &str, prefix: &str) -> Option<usize> {
    id.strip_prefix(prefix)?.parse().ok()
}

fn elephants(rest: &str, kind: elephants::ElephantKind) -> Result<Game, CatalogError> {
    let (size, herd) = match rest.strip_suffix("_herd") {
        Some(r) => (r, true),
        None => (rest, false),
    };
    let side = if size.is_empty() {
        6
    } else {
        size.parse().map_err(|_| CatalogError::BadParameter(format!("bad board side `{size}`")))?
    };
    elephants::elephant_game(kind, side, herd)
}

/// Builds a game from its id. Sized families accept a trailing size, such
/// as `linear7`, `cyclic6`, `square_free4` or `elephants_reflected8`.
pub fn build(id: &str) -> Result<Game, CatalogError> {
    use beads::BeadKind;
    use puzzles::{HexKind, SquareKind};
    match id {
        "infernal" => return beads::build(BeadKind::Infernal, 3, None),
        "even" => return beads::build(BeadKind::Even, 7, None),
        "safe" => return beads::build(BeadKind::Safe, 4, None),
        "displacement" => return Ok(grid::displacement_game()),
        "sheep" => {
            return grid::sheep_game(
                grid::default_sheep_board(),
                crate::action::Config::new(vec![0, 5, grid::N]),
                None,
            )
        }
        "programmed_sheep" => return grid::programmed_sheep_game(),
        "ladybug" => return Ok(grid::ladybug_game()),
        "hex" => return Ok(puzzles::hex_game(HexKind::Plain)),
        "hex_corrected" => return Ok(puzzles::hex_game(HexKind::Corrected)),
        "hex_crystallo" => return Ok(puzzles::hex_game(HexKind::Crystallo)),
        "triangle" => return Ok(puzzles::triangle_game()),
        "taquin" => return taquin::taquin_game(4, 4),
        "taquin3" => return taquin::taquin_game(3, 3),
        "rubik" => return Ok(rubik::rubik_game()),
        "primes" => return Ok(misc::primes_game()),
        "code3" => return Ok(misc::code_game()),
        "z3" => return Ok(misc::z3_game()),
        "inrc" => return Ok(misc::inrc_game()),
        "square_d4" => return Ok(misc::square_d4_game()),
        "two_lamps" => return Ok(misc::two_lamps_game()),
        "square_lamps" => return Ok(iso::square_lamps_game()),
        _ => {}
    }
    if let Some(rest) = id.strip_prefix("elephants_reflected") {
        return elephants(rest, elephants::ElephantKind::Reflected);
    }
    if let Some(rest) = id.strip_prefix("elephants_rotating") {
        return elephants(rest, elephants::ElephantKind::Rotating);
    }
    for kind in [SquareKind::Free, SquareKind::Taquin, SquareKind::Rotation, SquareKind::Crystallo] {
        if let Some(n) = sized(id, kind.name()) {
            return puzzles::square_game(kind, n);
        }
    }
    if let Some((r, c)) = id.strip_prefix("taquin").and_then(|rest| rest.split_once('x')) {
        if let (Ok(r), Ok(c)) = (r.parse(), c.parse()) {
            return taquin::taquin_game(r, c);
        }
    }
    if let Some(n) = sized(id, "linear") {
        return beads::build(BeadKind::Linear, n, None);
    }
    if let Some(n) = sized(id, "cyclic") {
        return beads::build(BeadKind::Cyclic, n, None);
    }
    if let Some(n) = sized(id, "infernal") {
        return beads::build(BeadKind::Infernal, n, None);
    }
    Err(CatalogError::UnknownGame(id.to_string()))
}

/// Shared, lazily built games.
pub fn game(id: &str) -> Result<Arc<Game>, CatalogError> {
    static CACHE: OnceLock<Mutex<BTreeMap<String, Arc<Game>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(g) = cache.lock().unwrap().get(id) {
        return Ok(g.clone());
    }
    let g = Arc::new(build(id)?);
    cache.lock().unwrap().entry(id.to_string()).or_insert(g.clone());
    Ok(g)
}
