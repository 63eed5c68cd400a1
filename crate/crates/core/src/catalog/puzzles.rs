//! Tile puzzles on square, hexagonal and triangular pavings. Every cell is
//! always occupied, so moves are true permutations.

use num_bigint::BigUint;
use serde_json::json;

use super::{turn, CatalogError};
use crate::action::{factorial, ActionSpace, Codec, Config, Generator, MoveRule, ParityRule, Universe};
use crate::algebra::Permutation;
use crate::game::{Archetype, Game, GameDefaults, RenderMeta};

pub const TILE_ALPHABET: &str = "123456789ABCDEFG";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareKind {
    Free,
    Taquin,
    Rotation,
    Crystallo,
}

impl SquareKind {
    pub fn name(self) -> &'static str {
        match self {
            SquareKind::Free => "square_free",
            SquareKind::Taquin => "square_taquin",
            SquareKind::Rotation => "square_rotation",
            SquareKind::Crystallo => "square_crystallo",
        }
    }
}

fn transposition(n: usize, a: usize, b: usize) -> Generator {
    let p = Permutation::from_cycles(n, &[&[a, b]]).unwrap();
    Generator::involution(format!("t{}-{}", a + 1, b + 1), MoveRule::Permute(p))
}

/// Clockwise cycle of the 2x2 block whose top-left cell is `(r, c)`.
fn block_cycle(side: usize, r: usize, c: usize) -> Permutation {
    let at = |r: usize, c: usize| r * side + c;
    Permutation::from_cycles(
        side * side,
        &[&[at(r, c), at(r, c + 1), at(r + 1, c + 1), at(r + 1, c)]],
    )
    .unwrap()
}

/// Block turns named after the interior vertex `i:j` (column, row).
fn block_turns(side: usize, twisted: bool) -> Vec<Generator> {
    let n = side * side;
    let mut out = Vec::new();
    for r in 0..side - 1 {
        for c in 0..side - 1 {
            let cw = block_cycle(side, r, c);
            let ccw = cw.inverse();
            let (a, b) = (format!("cw{}:{}", c + 1, r + 1), format!("ccw{}:{}", c + 1, r + 1));
            let rule = |p: Permutation, quarter: u8| {
                if twisted {
                    let mut twist = vec![0u8; n];
                    for i in 0..n {
                        if p.apply(i) != i {
                            twist[i] = quarter;
                        }
                    }
                    MoveRule::Twist {
                        perm: p,
                        twist,
                        modulus: 4,
                    }
                } else {
                    MoveRule::Permute(p)
                }
            };
            out.push(Generator::new(a.clone(), b.clone(), rule(cw, 1)));
            out.push(Generator::new(b, a, rule(ccw, 3)));
        }
    }
    out
}

pub fn square_space(kind: SquareKind, side: usize) -> Result<ActionSpace, CatalogError> {
    if !(3..=4).contains(&side) {
        return Err(CatalogError::BadParameter("square puzzles come in sizes 3 and 4".into()));
    }
    let n = side * side;
    let name = format!("{}{}", kind.name(), side);
    let gens = match kind {
        SquareKind::Free => {
            let mut g = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    g.push(transposition(n, a, b));
                }
            }
            g
        }
        SquareKind::Taquin => {
            let mut g = Vec::new();
            for a in 0..n {
                if a % side + 1 < side {
                    g.push(transposition(n, a, a + 1));
                }
                if a + side < n {
                    g.push(transposition(n, a, a + side));
                }
            }
            g
        }
        SquareKind::Rotation => block_turns(side, false),
        SquareKind::Crystallo => block_turns(side, true),
    };
    let pieces: Vec<u8> = (0..n as u8).collect();
    Ok(match kind {
        SquareKind::Crystallo => ActionSpace::new(
            name,
            Codec::pieces(TILE_ALPHABET, n, 4),
            Universe::arrangements(pieces, 4),
            gens,
        )?
        .with_torsor(factorial(n) * BigUint::from(4u8).pow(n as u32))
        .with_parity(ParityRule::CheckerTwist { slots: n, cols: side }),
        _ => ActionSpace::new(name, Codec::pieces(TILE_ALPHABET, n, 1), Universe::arrangements(pieces, 1), gens)?
            .with_torsor(factorial(n)),
    })
}

fn solved(n: usize, oriented: bool) -> Config {
    let mut b: Vec<u8> = (0..n as u8).collect();
    if oriented {
        b.extend(std::iter::repeat_n(0, n));
    }
    Config::new(b)
}

pub fn square_game(kind: SquareKind, side: usize) -> Result<Game, CatalogError> {
    let space = square_space(kind, side)?;
    let n = side * side;
    let mut d = match kind {
        SquareKind::Crystallo => GameDefaults::new(Archetype::ImpossibleFactorization),
        _ => GameDefaults::new(Archetype::Factorization),
    };
    if kind != SquareKind::Crystallo {
        d.target = Some(solved(n, false));
    }
    let title = match kind {
        SquareKind::Free => "Free square puzzle",
        SquareKind::Taquin => "Square puzzle with adjacent swaps",
        SquareKind::Rotation => "Square puzzle with rotations",
        SquareKind::Crystallo => "Crystallographic square puzzle",
    };
    Ok(Game::new(format!("{}{}", kind.name(), side), title, "puzzle", space, d)
        .with_params(json!({"kind": kind.name(), "size": side}))
        .with_render(RenderMeta {
            board: json!({"kind": "square", "size": side, "orientations": if kind == SquareKind::Crystallo { 4 } else { 1 }}),
            sprites: TILE_ALPHABET.chars().take(n).map(|c| format!("tile-{c}")).collect(),
            hint_layers: Vec::new(),
        }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HexKind {
    Plain,
    Corrected,
    Crystallo,
}

impl HexKind {
    pub fn name(self) -> &'static str {
        match self {
            HexKind::Plain => "hex",
            HexKind::Corrected => "hex_corrected",
            HexKind::Crystallo => "hex_crystallo",
        }
    }
}

/// Cell 0 is the central hexagon, cells 1 to 6 surround it clockwise.
/// Vertex `k` of the central hexagon is shared with cells `k` and `k + 1`.
fn hex_vertex_cycle(k: usize) -> Permutation {
    let next = k % 6 + 1;
    Permutation::from_cycles(7, &[&[0, k, next]]).unwrap()
}

pub fn hex_space(kind: HexKind) -> ActionSpace {
    let mut gens = Vec::new();
    for k in 1..=6 {
        let p = hex_vertex_cycle(k);
        match kind {
            HexKind::Crystallo => {
                let mut twist = vec![0u8; 7];
                for i in 0..7 {
                    if p.apply(i) != i {
                        twist[i] = 1;
                    }
                }
                let back_twist: Vec<u8> = twist.iter().map(|t| (3 - t) % 3).collect();
                let label = format!("v{k}");
                let back = format!("v{k}'");
                gens.push(Generator::new(
                    label.clone(),
                    back.clone(),
                    MoveRule::Twist {
                        perm: p.clone(),
                        twist,
                        modulus: 3,
                    },
                ));
                gens.push(Generator::new(
                    back,
                    label,
                    MoveRule::Twist {
                        perm: p.inverse(),
                        twist: back_twist,
                        modulus: 3,
                    },
                ));
            }
            _ => gens.extend(turn(&format!("v{k}"), p)),
        }
    }
    let pieces: Vec<u8> = match kind {
        HexKind::Corrected => vec![0, 1, 2, 3, 4, 5, 5],
        _ => (0..7).collect(),
    };
    let name = kind.name();
    match kind {
        HexKind::Plain => ActionSpace::new(name, Codec::pieces(TILE_ALPHABET, 7, 1), Universe::arrangements(pieces, 1), gens)
            .expect("fixed generators are valid")
            .with_torsor(factorial(7))
            .with_parity(ParityRule::Alternating),
        HexKind::Corrected => {
            ActionSpace::new(name, Codec::pieces(TILE_ALPHABET, 7, 1), Universe::arrangements(pieces, 1), gens)
                .expect("fixed generators are valid")
        }
        HexKind::Crystallo => {
            ActionSpace::new(name, Codec::pieces(TILE_ALPHABET, 7, 3), Universe::arrangements(pieces, 3), gens)
                .expect("fixed generators are valid")
                .with_torsor(factorial(7) * BigUint::from(3u8).pow(7))
                .with_parity(ParityRule::TwistedAlternating { slots: 7, modulus: 3 })
        }
    }
}

/// One goal per orbit of the crystallographic hex puzzle: the solved
/// pattern and its single swap, each with orientation totals 0, 1 and 2.
pub fn hex_crystallo_goals() -> Vec<Config> {
    let mut out = Vec::new();
    for pieces in [[0u8, 1, 2, 3, 4, 5, 6], [1, 0, 2, 3, 4, 5, 6]] {
        for total in 0..3u8 {
            let mut b = pieces.to_vec();
            b.push(total);
            b.extend([0u8; 6]);
            out.push(Config::new(b));
        }
    }
    out
}

pub fn hex_game(kind: HexKind) -> Game {
    let space = hex_space(kind);
    let mut d = match kind {
        HexKind::Plain => GameDefaults::new(Archetype::ImpossibleFactorization),
        HexKind::Corrected => GameDefaults::new(Archetype::Factorization),
        HexKind::Crystallo => GameDefaults::new(Archetype::ChoiceFactorization),
    };
    if kind == HexKind::Crystallo {
        d.goals = hex_crystallo_goals();
    }
    let title = match kind {
        HexKind::Plain => "Hexagonal puzzle",
        HexKind::Corrected => "Corrected hexagonal puzzle",
        HexKind::Crystallo => "Crystallographic hexagonal puzzle",
    };
    Game::new(kind.name(), title, "puzzle", space, d)
        .with_params(json!({"kind": kind.name()}))
        .with_render(RenderMeta {
            board: json!({"kind": "hex", "cells": 7, "center": 1, "ring": "clockwise",
                          "orientations": if kind == HexKind::Crystallo { 3 } else { 1 }}),
            sprites: TILE_ALPHABET.chars().take(7).map(|c| format!("hex-{c}")).collect(),
            hint_layers: Vec::new(),
        })
}

/// A point of the triangular lattice, `a e1 + b e2` with `e1` at 0 degrees
/// and `e2` at 60 degrees.
type Point = (i32, i32);

fn rotate(p: Point) -> Point {
    (-p.1, p.0 + p.1)
}

fn mirror_a(p: Point) -> Point {
    (1 - p.1, 1 - p.0)
}

fn mirror_b(p: Point) -> Point {
    (-1 - p.1, -1 - p.0)
}

/// Corners of the eight triangles: six around the origin, then the outer
/// triangle beyond the side of inner triangle 0 and the one beyond inner
/// triangle 3.
pub fn triangle_cells() -> Vec<[Point; 3]> {
    let hexagon: Vec<Point> = std::iter::successors(Some((1, 0)), |&p| Some(rotate(p))).take(6).collect();
    let mut cells: Vec<[Point; 3]> = (0..6).map(|k| [(0, 0), hexagon[k], hexagon[(k + 1) % 6]]).collect();
    cells.push([hexagon[0], hexagon[1], (1, 1)]);
    cells.push([hexagon[3], hexagon[4], (-1, -1)]);
    cells
}

/// The moves as point maps, each acting on a subset of the triangles.
fn triangle_moves() -> Vec<(&'static str, fn(Point) -> Point, Vec<usize>)> {
    vec![
        ("rot", rotate as fn(Point) -> Point, (0..6).collect()),
        ("m1", mirror_a, vec![0, 6]),
        ("m2", mirror_b, vec![3, 7]),
    ]
}

fn cell_of(cells: &[[Point; 3]], corners: [Point; 3]) -> usize {
    let mut want = corners.to_vec();
    want.sort_unstable();
    cells
        .iter()
        .position(|c| {
            let mut have = c.to_vec();
            have.sort_unstable();
            have == want
        })
        .expect("moves map triangles onto triangles")
}

/// The moves on the 24 corner slots `3 t + k` (corner `k` of triangle `t`).
pub fn triangle_corner_generators() -> Vec<(String, Permutation)> {
    let cells = triangle_cells();
    let mut out = Vec::new();
    for (label, f, moved) in triangle_moves() {
        let mut images: Vec<usize> = (0..24).collect();
        for &t in &moved {
            let image = cells[t].map(f);
            let u = cell_of(&cells, image);
            for k in 0..3 {
                let j = cells[u].iter().position(|&q| q == image[k]).unwrap();
                images[3 * t + k] = 3 * u + j;
            }
        }
        let p = Permutation::from_images(images).unwrap();
        if label == "rot" {
            out.push(("rot'".to_string(), p.inverse()));
        }
        out.push((label.to_string(), p));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// The moves on the eight triangles, forgetting their corners.
pub fn triangle_piece_generators() -> Vec<(String, Permutation)> {
    triangle_corner_generators()
        .into_iter()
        .map(|(l, p)| {
            let images: Vec<usize> = (0..8).map(|t| p.apply(3 * t) / 3).collect();
            (l, Permutation::from_images(images).unwrap())
        })
        .collect()
}

pub fn triangle_space() -> ActionSpace {
    let mut gens = Vec::new();
    for (label, p) in triangle_piece_generators() {
        match label.as_str() {
            "rot" => gens.extend(turn("rot", p)),
            "rot'" => {}
            _ => gens.push(Generator::involution(label, MoveRule::Permute(p))),
        }
    }
    ActionSpace::new("triangle", Codec::pieces(TILE_ALPHABET, 8, 1), Universe::arrangements((0..8).collect(), 1), gens)
        .expect("fixed generators are valid")
        .with_torsor(factorial(8))
}

pub fn triangle_game() -> Game {
    let mut d = GameDefaults::new(Archetype::Factorization);
    d.target = Some(solved(8, false));
    Game::new("triangle", "Triangular puzzle", "puzzle", triangle_space(), d)
        .with_params(json!({"kind": "triangle"}))
        .with_render(RenderMeta {
            board: json!({"kind": "triangles", "cells": triangle_cells()}),
            sprites: TILE_ALPHABET.chars().take(8).map(|c| format!("triangle-{c}")).collect(),
            hint_layers: Vec::new(),
        })
}
