//! Bead games: colored beads on a line or on turning plates.

use serde_json::json;

use super::{permutation_space, turn, CatalogError};
use crate::action::{ActionSpace, Generator, MoveRule, ParityRule};
use crate::algebra::Permutation;
use crate::game::{Archetype, Game, GameDefaults, RenderMeta};

/// Jaune, rouge, bleu, vert, orange, marron, noir, gris, pourpre.
pub const BEAD_COLORS: &str = "JRBVOMNGP";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BeadKind {
    Infernal,
    Linear,
    Cyclic,
    Even,
    Safe,
}

fn check_n(n: usize, min: usize) -> Result<(), CatalogError> {
    if n < min || n > BEAD_COLORS.len() {
        return Err(CatalogError::BadParameter(format!(
            "bead count must lie in {min}..={}",
            BEAD_COLORS.len()
        )));
    }
    Ok(())
}

fn adjacent_swaps(n: usize) -> Vec<Generator> {
    (0..n - 1)
        .map(|i| {
            let p = Permutation::from_cycles(n, &[&[i, i + 1]]).unwrap();
            Generator::involution(format!("s{}", i + 1), MoveRule::Permute(p))
        })
        .collect()
}

fn solved(n: usize) -> crate::action::Config {
    crate::action::Config::new((0..n as u8).collect())
}

/// Linear permutations: the `n - 1` swaps of neighbouring beads.
pub fn linear_space(n: usize) -> Result<ActionSpace, CatalogError> {
    check_n(n, 3)?;
    Ok(permutation_space(&format!("linear{n}"), BEAD_COLORS, n, adjacent_swaps(n))?)
}

/// Wheels reverse the beads they hold (two or three at a time).
pub fn infernal_space(n: usize, wheels: &[Vec<usize>]) -> Result<ActionSpace, CatalogError> {
    check_n(n, 3)?;
    let mut gens = Vec::new();
    for (k, w) in wheels.iter().enumerate() {
        if !(2..=3).contains(&w.len()) || w.iter().any(|&i| i >= n) || w.windows(2).any(|p| p[1] != p[0] + 1) {
            return Err(CatalogError::BadParameter(format!(
                "wheel {} must hold two or three consecutive beads",
                k + 1
            )));
        }
        let mut images: Vec<usize> = (0..n).collect();
        for (i, &pos) in w.iter().enumerate() {
            images[pos] = w[w.len() - 1 - i];
        }
        let p = Permutation::from_images(images).unwrap();
        gens.push(Generator::involution(format!("w{}", k + 1), MoveRule::Permute(p)));
    }
    Ok(permutation_space(&format!("infernal{n}"), BEAD_COLORS, n, gens)?)
}

/// Default wheel placement: a three-bead wheel at the entrance, then
/// two-bead wheels along the tube.
pub fn default_wheels(n: usize) -> Vec<Vec<usize>> {
    let mut wheels = vec![vec![0, 1, 2]];
    let mut i = 2;
    while i + 1 < n {
        wheels.push(vec![i, i + 1]);
        i += 1;
    }
    wheels
}

/// Beads on a circle: swap the two at the top, turn the plate either way.
pub fn cyclic_space(n: usize) -> Result<ActionSpace, CatalogError> {
    check_n(n, 5)?;
    let all: Vec<usize> = (0..n).collect();
    let swap = Permutation::from_cycles(n, &[&[0, 1]]).unwrap();
    let rot = Permutation::from_cycles(n, &[&all]).unwrap();
    let mut gens = vec![Generator::involution("swap", MoveRule::Permute(swap))];
    gens.extend(turn("rot", rot));
    Ok(permutation_space(&format!("cyclic{n}"), BEAD_COLORS, n, gens)?)
}

/// Seven beads on two overlapping plates of three and five beads.
pub fn even_space() -> ActionSpace {
    let tri = Permutation::from_cycles(7, &[&[0, 1, 2]]).unwrap();
    let pent = Permutation::from_cycles(7, &[&[2, 3, 4, 5, 6]]).unwrap();
    let mut gens = turn("tri", tri);
    gens.extend(turn("pent", pent));
    permutation_space("even", BEAD_COLORS, 7, gens)
        .expect("fixed generators are valid")
        .with_parity(ParityRule::Alternating)
}

pub fn build(kind: BeadKind, n: usize, wheels: Option<Vec<Vec<usize>>>) -> Result<Game, CatalogError> {
    let line = |n: usize| RenderMeta {
        board: json!({"kind": "line", "beads": n}),
        sprites: BEAD_COLORS.chars().take(n).map(|c| format!("bead-{c}")).collect(),
        hint_layers: Vec::new(),
    };
    Ok(match kind {
        BeadKind::Linear => {
            let mut d = GameDefaults::new(Archetype::Factorization);
            d.start = Some(solved(n));
            Game::new(format!("linear{n}"), "Linear permutations", "beads", linear_space(n)?, d)
                .with_params(json!({"kind": "linear", "n": n}))
                .with_render(line(n))
        }
        BeadKind::Infernal => {
            let wheels = wheels.unwrap_or_else(|| default_wheels(n));
            let mut d = GameDefaults::new(Archetype::MentalCalculation);
            d.start = Some(solved(n));
            d.program_length = 3;
            let space = infernal_space(n, &wheels)?;
            let id = if n == 3 { "infernal".to_string() } else { format!("infernal{n}") };
            Game::new(id, "Infernal machine", "beads", space, d)
                .with_params(json!({"kind": "infernal", "n": n, "wheels": wheels}))
                .with_render(RenderMeta {
                    board: json!({"kind": "tube", "beads": n, "wheels": wheels}),
                    sprites: BEAD_COLORS.chars().take(n).map(|c| format!("bead-{c}")).collect(),
                    hint_layers: Vec::new(),
                })
        }
        BeadKind::Cyclic => {
            let d = GameDefaults::new(Archetype::Factorization);
            Game::new(format!("cyclic{n}"), "Cyclic permutations", "beads", cyclic_space(n)?, d)
                .with_params(json!({"kind": "cyclic", "n": n}))
                .with_render(RenderMeta {
                    board: json!({"kind": "circle", "beads": n, "swap_at": [1, 2]}),
                    sprites: BEAD_COLORS.chars().take(n).map(|c| format!("bead-{c}")).collect(),
                    hint_layers: Vec::new(),
                })
        }
        BeadKind::Even => {
            let d = GameDefaults::new(Archetype::ImpossibleFactorization);
            Game::new("even", "Even permutations", "beads", even_space(), d)
                .with_params(json!({"kind": "even", "n": 7}))
                .with_render(RenderMeta {
                    board: json!({"kind": "plates", "plates": [[1, 2, 3], [3, 4, 5, 6, 7]]}),
                    sprites: BEAD_COLORS.chars().take(7).map(|c| format!("bead-{c}")).collect(),
                    hint_layers: Vec::new(),
                })
        }
        BeadKind::Safe => {
            let d = GameDefaults::new(Archetype::Combination);
            Game::new("safe", "Treasure safe", "beads", linear_space(4)?.renamed("safe"), d)
                .with_params(json!({"kind": "safe", "n": 4}))
                .with_render(line(4))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_second_and_third_bead() {
        let s = linear_space(3).unwrap();
        let u = s.parse("JRB").unwrap();
        assert_eq!(s.render(&s.apply("s2", &u).unwrap()), "JBR");
    }

    #[test]
    fn wheels_reverse_their_beads() {
        let s = infernal_space(3, &[vec![0, 1, 2]]).unwrap();
        let u = s.parse("JRB").unwrap();
        assert_eq!(s.render(&s.apply("w1", &u).unwrap()), "BRJ");
        assert!(infernal_space(4, &[vec![0, 2]]).is_err());
        assert!(infernal_space(4, &[vec![0, 1, 2, 3]]).is_err());
    }

    #[test]
    fn cyclic_rotation_moves_each_bead_to_its_neighbour() {
        let s = cyclic_space(5).unwrap();
        let u = s.parse("JRBVO").unwrap();
        assert_eq!(s.render(&s.apply("rot", &u).unwrap()), "OJRBV");
        assert_eq!(s.render(&s.apply("swap", &u).unwrap()), "RJBVO");
        assert!(cyclic_space(4).is_err());
    }
}
