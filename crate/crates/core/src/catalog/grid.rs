//! Games on a square grid: displacements, sheep and the ladybug.

use std::collections::BTreeMap;
use std::ops::Mul;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::CatalogError;
use crate::action::{ActionSpace, Codec, Config, Field, FieldKind, Generator, MoveRule, Universe};
use crate::algebra::Word;
use crate::solver::{factorize_within, Allowance};
use crate::game::{Archetype, CardBudget, Game, GameDefaults, RenderMeta, Variants, WinAt};

fn i16_at(b: &[u8], at: usize) -> i32 {
    u16::from_be_bytes([b[at], b[at + 1]]) as i32 - 32768
}

fn put_i16(out: &mut Vec<u8>, v: i32) -> Option<()> {
    let v = i16::try_from(v).ok()?;
    out.extend(((v as i32 + 32768) as u16).to_be_bytes());
    Some(())
}

/// The plane grid: `(3,-2)` is three cells east and two south of the origin.
pub fn displacement_space() -> ActionSpace {
    let step = |dx: i32, dy: i32| {
        MoveRule::custom(move |b: &[u8]| {
            let mut out = Vec::with_capacity(4);
            put_i16(&mut out, i16_at(b, 0) + dx)?;
            put_i16(&mut out, i16_at(b, 2) + dy)?;
            Some(out)
        })
    };
    ActionSpace::new(
        "displacement",
        Codec::fields(vec![Field::new("x", FieldKind::I16), Field::new("y", FieldKind::I16)]),
        Universe::Unbounded,
        vec![
            Generator::new("Sud", "Nord", step(0, -1)),
            Generator::new("Ouest", "Est", step(-1, 0)),
            Generator::new("Nord", "Sud", step(0, 1)),
            Generator::new("Est", "Ouest", step(1, 0)),
        ],
    )
    .expect("fixed generators are valid")
}

pub const N: u8 = 0;
pub const E: u8 = 1;
pub const S: u8 = 2;
pub const W: u8 = 3;

/// Cell offset of a heading, rows growing southwards.
fn heading_step(h: u8) -> (i32, i32) {
    match h {
        N => (0, -1),
        E => (1, 0),
        S => (0, 1),
        _ => (-1, 0),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Barn {
    pub x: u8,
    pub y: u8,
    /// Heading the sheep must have when walking in.
    pub entry: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheepBoard {
    pub width: u8,
    pub height: u8,
    #[serde(default)]
    pub obstacles: Vec<(u8, u8)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub barn: Option<Barn>,
}

impl SheepBoard {
    fn free(&self, x: i32, y: i32) -> bool {
        x >= 0
            && y >= 0
            && x < self.width as i32
            && y < self.height as i32
            && !self.obstacles.contains(&(x as u8, y as u8))
    }

    fn is_barn(&self, x: i32, y: i32) -> bool {
        self.barn.as_ref().is_some_and(|b| b.x as i32 == x && b.y as i32 == y)
    }

    /// Whether advancing from `(x, y)` with heading `h` is allowed.
    fn can_advance(&self, x: i32, y: i32, h: u8) -> Option<(i32, i32)> {
        let (dx, dy) = heading_step(h);
        let (nx, ny) = (x + dx, y + dy);
        if !self.free(nx, ny) {
            return None;
        }
        if let Some(b) = &self.barn {
            // The barn is entered and left through its door only.
            if self.is_barn(nx, ny) && h != b.entry {
                return None;
            }
            if self.is_barn(x, y) && h != (b.entry + 2) % 4 {
                return None;
            }
        }
        Some((nx, ny))
    }

    pub fn poses(&self) -> Vec<Config> {
        let mut out = Vec::new();
        for x in 0..self.width {
            for y in 0..self.height {
                if self.free(x as i32, y as i32) {
                    for h in 0..4 {
                        out.push(Config::new(vec![x, y, h]));
                    }
                }
            }
        }
        out
    }
}

/// Sheep poses `(x, y, heading)`; advancing is blocked by borders, obstacles
/// and the barn walls. Backing up exists only as the inverse of advancing.
pub fn sheep_space(name: &str, board: &SheepBoard) -> Result<ActionSpace, CatalogError> {
    if board.width == 0 || board.height == 0 {
        return Err(CatalogError::BadParameter("empty board".into()));
    }
    if let Some(b) = &board.barn {
        if !board.free(b.x as i32, b.y as i32) || b.entry > 3 {
            return Err(CatalogError::BadParameter("the barn must sit on a free cell".into()));
        }
    }
    let fwd = board.clone();
    let advance = MoveRule::custom(move |u: &[u8]| {
        let (x, y) = fwd.can_advance(u[0] as i32, u[1] as i32, u[2])?;
        Some(vec![x as u8, y as u8, u[2]])
    });
    let back = board.clone();
    let retreat = MoveRule::custom(move |u: &[u8]| {
        let (dx, dy) = heading_step(u[2]);
        let (px, py) = (u[0] as i32 - dx, u[1] as i32 - dy);
        if !back.free(px, py) {
            return None;
        }
        back.can_advance(px, py, u[2])?;
        Some(vec![px as u8, py as u8, u[2]])
    });
    let turn = |d: u8| MoveRule::custom(move |u: &[u8]| Some(vec![u[0], u[1], (u[2] + d) % 4]));
    Ok(ActionSpace::new(
        name,
        Codec::fields(vec![
            Field::new("x", FieldKind::U8),
            Field::new("y", FieldKind::U8),
            Field::new("heading", FieldKind::Heading),
        ]),
        Universe::listed(board.poses()),
        vec![
            Generator::new("advance", "retreat", advance),
            Generator::new("left", "right", turn(3)),
            Generator::new("right", "left", turn(1)),
            Generator::new("retreat", "advance", retreat).hidden(),
        ],
    )?)
}

pub fn default_sheep_board() -> SheepBoard {
    SheepBoard {
        width: 6,
        height: 6,
        obstacles: vec![(1, 4), (2, 1), (2, 2), (3, 4), (4, 2), (5, 1)],
        barn: Some(Barn { x: 5, y: 0, entry: E }),
    }
}

fn sheep_render(board: &SheepBoard) -> RenderMeta {
    RenderMeta {
        board: json!({"kind": "grid", "width": board.width, "height": board.height,
                      "obstacles": board.obstacles, "barn": board.barn}),
        sprites: vec!["sheep".into(), "barn".into(), "rock".into()],
        hint_layers: Vec::new(),
    }
}

pub fn sheep_game(board: SheepBoard, start: Config, cards: Option<CardBudget>) -> Result<Game, CatalogError> {
    let space = sheep_space("sheep", &board)?;
    let barn = board
        .barn
        .clone()
        .ok_or_else(|| CatalogError::BadParameter("the sheep game needs a barn".into()))?;
    let mut d = GameDefaults::new(Archetype::Factorization);
    d.variants = Variants {
        blind: true,
        constrained: true,
        memory: false,
    };
    d.win_at = WinAt::Any;
    d.start = Some(start.clone());
    d.goals = (0..4).map(|h| Config::new(vec![barn.x, barn.y, h])).collect();
    let cards = cards.unwrap_or_else(|| {
        CardBudget::PerGenerator(BTreeMap::from([
            ("advance".to_string(), 11),
            ("left".to_string(), 2),
            ("right".to_string(), 2),
        ]))
    });
    let allowance = match &cards {
        CardBudget::PerGenerator(m) => Allowance {
            per_generator: space
                .player_labels()
                .iter()
                .map(|l| Some(m.get(*l).copied().unwrap_or(0)))
                .collect(),
            total: None,
        },
        CardBudget::Total(n) => Allowance {
            per_generator: vec![None; space.player_generators().len()],
            total: Some(*n),
        },
    };
    let reachable = factorize_within(&space, &start, |u| u[0] == barn.x && u[1] == barn.y, &allowance, 1_000_000)
        .map_err(|e| CatalogError::BadParameter(e.to_string()))?;
    if reachable.is_none() {
        return Err(CatalogError::BadParameter("the barn is out of reach with these cards".into()));
    }
    d.budget = Some(cards);
    Ok(Game::new("sheep", "Sheep", "grid", space, d)
        .with_params(json!({"kind": "sheep", "board": board}))
        .with_render(sheep_render(&board)))
}

pub fn programmed_sheep_board() -> SheepBoard {
    SheepBoard {
        width: 6,
        height: 6,
        obstacles: Vec::new(),
        barn: Some(Barn { x: 2, y: 2, entry: N }),
    }
}

pub fn programmed_sheep_game() -> Result<Game, CatalogError> {
    let board = programmed_sheep_board();
    let space = sheep_space("programmed_sheep", &board)?;
    let barn = board.barn.clone().unwrap();
    let mut d = GameDefaults::new(Archetype::InverseCalculation);
    d.target = Some(Config::new(vec![barn.x, barn.y, barn.entry]));
    d.program = Some(Word::from_labels(["advance", "left", "advance"]));
    Ok(Game::new("programmed_sheep", "Programmed sheep", "grid", space, d)
        .with_params(json!({"kind": "programmed_sheep", "board": board}))
        .with_render(sheep_render(&board)))
}

pub const LADYBUG_SIDE: u8 = 7;
pub const LADYBUG_MOVES: u32 = 16;

/// The ladybug on a 7x7 board, `(x, y, dots)` with `x` the column (its die
/// value) and `y` the row counted from the south. North adds `x` dots, south
/// removes `x` dots and needs enough of them.
pub fn ladybug_space() -> ActionSpace {
    let side = LADYBUG_SIDE as i32;
    let mv = |dx: i32, dy: i32| {
        MoveRule::custom(move |u: &[u8]| {
            let (x, y) = (u[0] as i32 + dx, u[1] as i32 + dy);
            if x < 0 || y < 0 || x >= side || y >= side {
                return None;
            }
            let dots = u16::from_be_bytes([u[2], u[3]]) as i32 + dy * u[0] as i32;
            let dots = u16::try_from(dots).ok()?;
            let d = dots.to_be_bytes();
            Some(vec![x as u8, y as u8, d[0], d[1]])
        })
    };
    ActionSpace::new(
        "ladybug",
        Codec::fields(vec![
            Field::new("x", FieldKind::U8),
            Field::new("y", FieldKind::U8),
            Field::new("dots", FieldKind::U16),
        ]),
        Universe::Unbounded,
        vec![
            Generator::new("S", "N", mv(0, -1)),
            Generator::new("O", "E", mv(-1, 0)),
            Generator::new("N", "S", mv(0, 1)),
            Generator::new("E", "O", mv(1, 0)),
        ],
    )
    .expect("fixed generators are valid")
}

pub fn ladybug_config(x: u8, y: u8, dots: u16) -> Config {
    let d = dots.to_be_bytes();
    Config::new(vec![x, y, d[0], d[1]])
}

pub fn ladybug_game() -> Game {
    let mut d = GameDefaults::new(Archetype::Factorization);
    d.variants = Variants {
        blind: false,
        constrained: true,
        memory: false,
    };
    d.start = Some(ladybug_config(0, 0, 0));
    d.target = Some(ladybug_config(0, 0, 16));
    d.budget = Some(CardBudget::Total(LADYBUG_MOVES));
    Game::new("ladybug", "Ladybug", "grid", ladybug_space(), d)
        .with_params(json!({"kind": "ladybug", "side": LADYBUG_SIDE, "moves": LADYBUG_MOVES}))
        .with_render(RenderMeta {
            board: json!({"kind": "grid", "width": LADYBUG_SIDE, "height": LADYBUG_SIDE,
                          "column_values": (0..LADYBUG_SIDE).collect::<Vec<_>>(), "origin": "south_west"}),
            sprites: vec!["ladybug".into(), "die".into()],
            hint_layers: Vec::new(),
        })
}

pub fn displacement_game() -> Game {
    let mut d = GameDefaults::new(Archetype::Factorization);
    d.start = Some(Config::new(vec![128, 0, 128, 0]));
    Game::new("displacement", "Grid displacements", "grid", displacement_space(), d)
        .with_params(json!({"kind": "displacement"}))
        .with_render(RenderMeta {
            board: json!({"kind": "grid", "unbounded": true}),
            sprites: vec!["pawn".into()],
            hint_layers: Vec::new(),
        })
}

/// Most dots the ladybug can carry home to its start cell within `moves`
/// moves, by exhaustive dynamic programming over (cell, moves made).
///
/// Keeping only the best dot count per cell is exact: more dots never make a
/// later move illegal and never lower the final count.
pub fn ladybug_best_return(moves: u32) -> (u16, u32) {
    let side = LADYBUG_SIDE as usize;
    let mut best: Vec<Option<i32>> = vec![None; side * side];
    best[0] = Some(0);
    let mut top = (0u16, 0u32);
    for k in 1..=moves {
        let mut next: Vec<Option<i32>> = vec![None; side * side];
        for cell in 0..side * side {
            let Some(d) = best[cell] else { continue };
            let (x, y) = ((cell % side) as i32, (cell / side) as i32);
            for (dx, dy) in [(0, -1), (-1, 0), (0, 1), (1, 0)] {
                let (nx, ny) = (x + dx, y + dy);
                if nx < 0 || ny < 0 || nx >= side as i32 || ny >= side as i32 {
                    continue;
                }
                let nd = d + dy * x;
                if nd < 0 {
                    continue;
                }
                let slot = &mut next[ny as usize * side + nx as usize];
                *slot = Some(slot.map_or(nd, |v: i32| v.max(nd)));
            }
        }
        best = next;
        if let Some(d) = best[0] {
            if d as u16 > top.0 {
                top = (d as u16, k);
            }
        }
    }
    top
}

/// Dots as the signed area swept by the path: the sum of `x * dy` over steps.
pub fn signed_area(word: &Word) -> Option<i64> {
    let (mut x, mut area) = (0i64, 0i64);
    for l in word.labels() {
        match l {
            "E" => x += 1,
            "O" => x -= 1,
            "N" => area += x,
            "S" => area -= x,
            _ => return None,
        }
    }
    Some(area)
}

/// An element of the discrete Heisenberg group, acting on ladybug states by
/// `(x, y, d) -> (x + a, y + b, d + c + x b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Heisenberg {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Heisenberg {
    pub const IDENTITY: Heisenberg = Heisenberg { a: 0, b: 0, c: 0 };

    pub fn generator(label: &str) -> Option<Heisenberg> {
        Some(match label {
            "E" => Heisenberg { a: 1, b: 0, c: 0 },
            "O" => Heisenberg { a: -1, b: 0, c: 0 },
            "N" => Heisenberg { a: 0, b: 1, c: 0 },
            "S" => Heisenberg { a: 0, b: -1, c: 0 },
            _ => return None,
        })
    }

    /// The element of a word of ladybug moves (first letter acts first).
    pub fn of_word(word: &Word) -> Option<Heisenberg> {
        word.letters().iter().try_fold(Heisenberg::IDENTITY, |acc, l| {
            let g = Heisenberg::generator(&l.label)?;
            let g = if l.exponent == crate::algebra::Exponent::Minus { g.inverse() } else { g };
            Some(g * acc)
        })
    }

    pub fn inverse(self) -> Heisenberg {
        Heisenberg {
            a: -self.a,
            b: -self.b,
            c: -self.c + self.a * self.b,
        }
    }

    pub fn act(self, (x, y, d): (i64, i64, i64)) -> (i64, i64, i64) {
        (x + self.a, y + self.b, d + self.c + x * self.b)
    }
}

/// `g * h` applies `h` first.
impl Mul for Heisenberg {
    type Output = Heisenberg;

    fn mul(self, h: Heisenberg) -> Heisenberg {
        Heisenberg {
            a: self.a + h.a,
            b: self.b + h.b,
            c: self.c + h.c + h.a * self.b,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn east_and_south() {
        let s = displacement_space();
        let origin = s.parse("0,0").unwrap();
        assert_eq!(s.render(&s.apply("Est", &origin).unwrap()), "1,0");
        let w: Word = "Est Est Est Sud Sud".parse().unwrap();
        assert_eq!(s.render(&s.act(&w, &origin).unwrap()), "3,-2");
    }

    #[test]
    fn sheep_is_blocked_by_obstacles_and_walls() {
        let board = default_sheep_board();
        let s = sheep_space("sheep", &board).unwrap();
        let facing_rock = s.parse("2,3,N").unwrap();
        assert!(s.apply("advance", &facing_rock).is_err());
        let at_wall = s.parse("0,0,W").unwrap();
        assert!(s.apply("advance", &at_wall).is_err());
        s.check_inverse_pairing(s.universe().enumerate(10_000).unwrap().iter()).unwrap();
    }

    #[test]
    fn barn_door() {
        let board = default_sheep_board();
        let s = sheep_space("sheep", &board).unwrap();
        assert_eq!(s.render(&s.apply("advance", &s.parse("4,0,E").unwrap()).unwrap()), "5,0,E");
        assert!(s.apply("advance", &s.parse("5,0,S").unwrap()).is_err());
        assert_eq!(s.render(&s.apply("advance", &s.parse("5,0,W").unwrap()).unwrap()), "4,0,W");
    }

    #[test]
    fn sheep_cards_must_reach_the_barn() {
        let start = Config::new(vec![0, 5, N]);
        assert!(sheep_game(default_sheep_board(), start.clone(), None).is_ok());
        let short = CardBudget::PerGenerator(BTreeMap::from([
            ("advance".to_string(), 9),
            ("left".to_string(), 2),
            ("right".to_string(), 2),
        ]));
        assert!(sheep_game(default_sheep_board(), start, Some(short)).is_err());
    }

    #[test]
    fn ladybug_dots() {
        let s = ladybug_space();
        let start = ladybug_config(0, 0, 0);
        let w: Word = "E E E E N N N N O O O O S S S S".parse().unwrap();
        assert_eq!(s.act(&w, &start).unwrap(), ladybug_config(0, 0, 16));
        assert!(s.apply("S", &ladybug_config(3, 2, 0)).is_err());
        assert_eq!(signed_area(&w), Some(16));
        assert_eq!(Heisenberg::of_word(&w).unwrap(), Heisenberg { a: 0, b: 0, c: 16 });
    }

    #[test]
    fn heisenberg_product_matches_action() {
        let g = Heisenberg { a: 2, b: -1, c: 3 };
        let h = Heisenberg { a: -4, b: 5, c: 1 };
        let u = (3, 1, 7);
        assert_eq!((g * h).act(u), g.act(h.act(u)));
        assert_eq!(g * g.inverse(), Heisenberg::IDENTITY);
    }
}
