//! The sliding taquin as a groupoid: each move applies only when the blank
//! sits where the arrow starts.

use serde_json::json;

use super::CatalogError;
use crate::action::{ActionSpace, Codec, Config, Generator, MoveRule, ParityRule, Universe};
use crate::algebra::{GroupoidArrow, Permutation};
use crate::game::{Archetype, Game, GameDefaults, RenderMeta};

/// Blank first, then tiles 1 to 15.
pub const TAQUIN_ALPHABET: &str = "_123456789ABCDEF";

/// Arrows `a>b`: the blank goes from cell `a` to the adjacent cell `b`
/// (cells numbered from 1, row by row), the tile on `b` sliding into `a`.
pub fn taquin_arrows(rows: usize, cols: usize) -> Vec<GroupoidArrow> {
    let n = rows * cols;
    let mut out = Vec::new();
    for a in 0..n {
        let (r, c) = (a / cols, a % cols);
        let mut next = Vec::new();
        if r > 0 {
            next.push(a - cols);
        }
        if c > 0 {
            next.push(a - 1);
        }
        if c + 1 < cols {
            next.push(a + 1);
        }
        if r + 1 < rows {
            next.push(a + cols);
        }
        for b in next {
            let effect = Permutation::from_cycles(n, &[&[a, b]]).unwrap();
            out.push(GroupoidArrow::new(format!("{}>{}", a + 1, b + 1), a, b, effect));
        }
    }
    out
}

pub fn taquin_space(rows: usize, cols: usize) -> Result<ActionSpace, CatalogError> {
    if rows < 2 || cols < 2 || rows * cols > TAQUIN_ALPHABET.len() {
        return Err(CatalogError::BadParameter("sides must be at least 2, with at most 16 cells".into()));
    }
    let n = rows * cols;
    let gens = taquin_arrows(rows, cols)
        .into_iter()
        .map(|a| {
            let inverse = format!("{}>{}", a.target + 1, a.source + 1);
            Generator::new(a.label.clone(), inverse, MoveRule::Arrow(a))
        })
        .collect();
    let name = if (rows, cols) == (4, 4) {
        "taquin".to_string()
    } else {
        format!("taquin{rows}x{cols}")
    };
    Ok(ActionSpace::new(
        name,
        Codec::pieces(TAQUIN_ALPHABET, n, 1),
        Universe::arrangements((0..n as u8).collect(), 1),
        gens,
    )?
    .with_parity(ParityRule::SlidingBlank { cols }))
}

/// Tiles in order, blank in the bottom right corner.
pub fn taquin_solved(rows: usize, cols: usize) -> Config {
    let n = rows * cols;
    let mut b: Vec<u8> = (1..n as u8).collect();
    b.push(0);
    Config::new(b)
}

pub fn taquin_game(rows: usize, cols: usize) -> Result<Game, CatalogError> {
    let space = taquin_space(rows, cols)?;
    let mut d = GameDefaults::new(Archetype::Factorization);
    d.target = Some(taquin_solved(rows, cols));
    let id = match (rows, cols) {
        (4, 4) => "taquin".to_string(),
        (3, 3) => "taquin3".to_string(),
        _ => format!("taquin{rows}x{cols}"),
    };
    Ok(Game::new(id, "Taquin", "taquin", space, d)
        .with_params(json!({"kind": "taquin", "rows": rows, "cols": cols}))
        .with_render(RenderMeta {
            board: json!({"kind": "taquin", "rows": rows, "cols": cols}),
            sprites: TAQUIN_ALPHABET.chars().skip(1).take(rows * cols - 1).map(|c| format!("tile-{c}")).collect(),
            hint_layers: Vec::new(),
        }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrows_need_the_blank() {
        let s = taquin_space(3, 3).unwrap();
        let u = taquin_solved(3, 3);
        assert_eq!(s.render(&u), "12345678_");
        assert_eq!(s.render(&s.apply("9>8", &u).unwrap()), "1234567_8");
        assert!(s.apply("1>2", &u).is_err());
    }

    #[test]
    fn arrows_come_in_inverse_pairs() {
        assert_eq!(taquin_arrows(2, 2).len(), 8);
        let s = taquin_space(2, 3).unwrap();
        s.check_inverse_pairing(s.universe().enumerate(1000).unwrap().iter()).unwrap();
    }
}
