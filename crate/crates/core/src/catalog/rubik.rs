//! The cube on its 48 moving facets. Facets 1 to 8 are on the up face,
//! then left, front, right, back and down, eight each.

use serde_json::json;

use super::turn;
use crate::action::{ActionSpace, Codec, Config, Universe};
use crate::algebra::Permutation;
use crate::game::{Archetype, Game, GameDefaults, RenderMeta};

pub const FACE_COLORS: &str = "ULFRBD";

const QUARTER_TURNS: [(&str, [[usize; 4]; 5]); 6] = [
    ("U", [[1, 3, 8, 6], [2, 5, 7, 4], [9, 33, 25, 17], [10, 34, 26, 18], [11, 35, 27, 19]]),
    ("L", [[9, 11, 16, 14], [10, 13, 15, 12], [1, 17, 41, 40], [4, 20, 44, 37], [6, 22, 46, 35]]),
    ("F", [[17, 19, 24, 22], [18, 21, 23, 20], [6, 25, 43, 16], [7, 28, 42, 13], [8, 30, 41, 11]]),
    ("R", [[25, 27, 32, 30], [26, 29, 31, 28], [3, 38, 43, 19], [5, 36, 45, 21], [8, 33, 48, 24]]),
    ("B", [[33, 35, 40, 38], [34, 37, 39, 36], [3, 9, 46, 32], [2, 12, 47, 29], [1, 14, 48, 27]]),
    ("D", [[41, 43, 48, 46], [42, 45, 47, 44], [14, 22, 30, 38], [15, 23, 31, 39], [16, 24, 32, 40]]),
];

/// Clockwise quarter turns of the six faces on the 48 facets (0-indexed).
pub fn face_turns() -> Vec<(String, Permutation)> {
    QUARTER_TURNS
        .iter()
        .map(|(label, cycles)| {
            let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.iter().map(|i| i - 1).collect()).collect();
            let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
            (label.to_string(), Permutation::from_cycles(48, &refs).unwrap())
        })
        .collect()
}

pub fn solved_cube() -> Config {
    Config::new((0..48).map(|i| (i / 8) as u8).collect())
}

/// Facet colors under the twelve quarter turns. Configurations are not
/// enumerated; only the reachable part is ever explored.
pub fn rubik_space() -> ActionSpace {
    let gens = face_turns().into_iter().flat_map(|(l, p)| turn(&l, p)).collect();
    ActionSpace::new("rubik", Codec::pieces(FACE_COLORS, 48, 1), Universe::Unbounded, gens)
        .expect("fixed generators are valid")
}

pub fn rubik_game() -> Game {
    let mut d = GameDefaults::new(Archetype::Factorization);
    d.target = Some(solved_cube());
    Game::new("rubik", "Hungarian cube", "cube", rubik_space(), d)
        .with_params(json!({"kind": "rubik"}))
        .with_render(RenderMeta {
            board: json!({"kind": "cube", "facets": 48, "faces": FACE_COLORS}),
            sprites: FACE_COLORS.chars().map(|c| format!("facet-{c}")).collect(),
            hint_layers: Vec::new(),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Word;

    #[test]
    fn four_quarter_turns_are_the_identity() {
        let s = rubik_space();
        let u = solved_cube();
        for (l, p) in face_turns() {
            assert_eq!(p.order(), 4);
            let w = Word::from_labels(vec![l.as_str(); 4]);
            assert_eq!(s.act(&w, &u).unwrap(), u);
        }
    }

    #[test]
    fn a_turn_moves_twenty_facets() {
        for (_, p) in face_turns() {
            assert_eq!((0..48).filter(|&i| p.apply(i) != i).count(), 20);
        }
    }
}
