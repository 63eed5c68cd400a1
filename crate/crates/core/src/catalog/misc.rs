//! Small games: prime factorizations, three-digit codes, and games played
//! directly on a small group (rotations of a triangle, INRC, isometries of
//! a square, two lamps).

use serde_json::json;

use super::CatalogError;
use crate::action::{ActionSpace, Codec, Config, Field, FieldKind, Generator, MoveRule, Universe};
use crate::algebra::{klein_inrc_table, GroupTable, Word};
use crate::game::{Archetype, Component, Game, GameDefaults, RenderMeta};

pub const PRIMES: [u32; 4] = [2, 3, 5, 7];

/// Positive integers under multiplication by small primes. Division is
/// only the hidden inverse used by backward search.
pub fn primes_space() -> ActionSpace {
    let mut gens = Vec::new();
    for p in PRIMES {
        let times = MoveRule::custom(move |u: &[u8]| {
            let n = u32::from_be_bytes([u[0], u[1], u[2], u[3]]);
            Some(n.checked_mul(p)?.to_be_bytes().to_vec())
        });
        let divide = MoveRule::custom(move |u: &[u8]| {
            let n = u32::from_be_bytes([u[0], u[1], u[2], u[3]]);
            (n % p == 0).then(|| (n / p).to_be_bytes().to_vec())
        });
        gens.push(Generator::new(p.to_string(), format!("/{p}"), times));
        gens.push(Generator::new(format!("/{p}"), p.to_string(), divide).hidden());
    }
    ActionSpace::new("primes", Codec::fields(vec![Field::new("n", FieldKind::U32)]), Universe::Unbounded, gens)
        .expect("fixed generators are valid")
}

pub fn number(n: u32) -> Config {
    Config::new(n.to_be_bytes().to_vec())
}

pub fn primes_game() -> Game {
    let mut d = GameDefaults::new(Archetype::Factorization);
    d.start = Some(number(1));
    d.target = Some(number(84));
    Game::new("primes", "Prime factors", "numbers", primes_space(), d)
        .with_params(json!({"kind": "primes", "primes": PRIMES}))
        .with_render(RenderMeta {
            board: json!({"kind": "number"}),
            sprites: Vec::new(),
            hint_layers: Vec::new(),
        })
}

/// Three-digit codes, each wheel turned up or down.
pub fn code_space() -> ActionSpace {
    let mut gens = Vec::new();
    for i in 0..3 {
        let up = MoveRule::custom(move |u: &[u8]| {
            let mut v = u.to_vec();
            v[i] = (v[i] + 1) % 10;
            Some(v)
        });
        let down = MoveRule::custom(move |u: &[u8]| {
            let mut v = u.to_vec();
            v[i] = (v[i] + 9) % 10;
            Some(v)
        });
        gens.push(Generator::new(format!("{}+", i + 1), format!("{}-", i + 1), up));
        gens.push(Generator::new(format!("{}-", i + 1), format!("{}+", i + 1), down));
    }
    let all = (0..1000u32)
        .map(|n| Config::new(vec![(n / 100) as u8, (n / 10 % 10) as u8, (n % 10) as u8]))
        .collect();
    ActionSpace::new("code3", Codec::pieces("0123456789", 3, 1), Universe::listed(all), gens)
        .expect("fixed generators are valid")
}

/// Components "digit `j` at position `i`", with ids like `7@1`.
pub fn digit_components() -> Vec<Component> {
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..10u8 {
            out.push(Component {
                id: format!("{j}@{}", i + 1),
                bytes: vec![(i, j)],
            });
        }
    }
    out
}

pub fn code_game() -> Game {
    let mut d = GameDefaults::new(Archetype::RevealedCombination);
    d.components = digit_components();
    d.start = Some(Config::new(vec![0, 0, 0]));
    Game::new("code3", "Three-digit code", "numbers", code_space(), d)
        .with_params(json!({"kind": "code", "digits": 3}))
        .with_render(RenderMeta {
            board: json!({"kind": "wheels", "count": 3}),
            sprites: Vec::new(),
            hint_layers: Vec::new(),
        })
}

/// The group acting on itself by left multiplication, moves given by
/// `(label, inverse label)` pairs of elements.
pub fn table_space(name: &str, table: &GroupTable, moves: &[(&str, &str)]) -> Result<ActionSpace, CatalogError> {
    let mut gens = Vec::new();
    for &(label, inverse) in moves {
        let g = table
            .index_of(label)
            .ok_or_else(|| CatalogError::BadParameter(format!("`{label}` is not an element")))?;
        let t = table.clone();
        let rule = MoveRule::custom(move |u: &[u8]| Some(vec![t.mul(g, u[0] as usize) as u8]));
        gens.push(Generator::new(label, inverse, rule));
    }
    let labels: Vec<String> = table.elements().to_vec();
    let all = (0..table.order() as u8).map(|x| Config::new(vec![x])).collect();
    Ok(ActionSpace::new(name, Codec::Labels { labels }, Universe::listed(all), gens)?)
}

fn table_game(id: &str, title: &str, table: GroupTable, moves: &[(&str, &str)]) -> Game {
    let space = table_space(id, &table, moves).expect("fixed moves are elements");
    let mut d = GameDefaults::new(Archetype::MentalCalculation);
    d.start = Some(Config::new(vec![table.identity() as u8]));
    d.program_length = 3;
    Game::new(id, title, "group", space, d)
        .with_params(json!({"kind": id, "elements": table.elements()}))
        .with_render(RenderMeta {
            board: json!({"kind": "table", "elements": table.elements(), "product": table.product_table()}),
            sprites: Vec::new(),
            hint_layers: Vec::new(),
        })
        .with_table(table)
}

/// Rotations of an equilateral triangle by thirds of a turn.
pub fn z3_game() -> Game {
    let t = GroupTable::cyclic(3).expect("the cyclic group exists");
    table_game("z3", "Rotations of a triangle", t, &[("↷", "↶"), ("↶", "↷")])
}

pub fn inrc_game() -> Game {
    table_game("inrc", "INRC group", klein_inrc_table(), &[("N", "N"), ("R", "R"), ("C", "C")])
}

/// Orientation labels of an asymmetric drawing on a square: `r{k}` is `k`
/// clockwise quarter turns, `f{k}` the same after a reflection.
pub const D4_LABELS: [&str; 8] = ["r0", "r1", "r2", "r3", "f0", "f1", "f2", "f3"];

pub fn square_d4_space() -> ActionSpace {
    let rot = |d: u8| MoveRule::custom(move |u: &[u8]| Some(vec![(u[0] & 4) | ((u[0] + d) % 4)]));
    // Reflecting after r^k f^m gives r^-k f^(m+1).
    let flip = MoveRule::custom(|u: &[u8]| Some(vec![((u[0] & 4) ^ 4) | ((4 - u[0] % 4) % 4)]));
    let all = (0..8u8).map(|x| Config::new(vec![x])).collect();
    ActionSpace::new(
        "square_d4",
        Codec::Labels {
            labels: D4_LABELS.iter().map(|s| s.to_string()).collect(),
        },
        Universe::listed(all),
        vec![
            Generator::new("rot", "rot'", rot(1)),
            Generator::new("rot'", "rot", rot(3)),
            Generator::involution("flip", flip),
        ],
    )
    .expect("fixed generators are valid")
}

/// Two lamps `A` and `B`: byte `4 p + 2 a + b` where `p` tells whether `B`
/// is on the left and `a`, `b` whether each lamp is lit.
pub fn lamp_labels() -> Vec<String> {
    (0..8u8)
        .map(|i| {
            let (p, a, b) = (i >> 2, (i >> 1) & 1, i & 1);
            if p == 0 {
                format!("A{a}B{b}")
            } else {
                format!("B{b}A{a}")
            }
        })
        .collect()
}

pub fn two_lamps_space() -> ActionSpace {
    let toggle = MoveRule::custom(|u: &[u8]| {
        let left_bit = if u[0] & 4 == 0 { 2 } else { 1 };
        Some(vec![u[0] ^ left_bit])
    });
    let swap = MoveRule::custom(|u: &[u8]| Some(vec![u[0] ^ 4]));
    let all = (0..8u8).map(|x| Config::new(vec![x])).collect();
    ActionSpace::new(
        "two_lamps",
        Codec::Labels { labels: lamp_labels() },
        Universe::listed(all),
        vec![Generator::involution("toggle", toggle), Generator::involution("swap", swap)],
    )
    .expect("fixed generators are valid")
}

fn small_render(kind: &str) -> RenderMeta {
    RenderMeta {
        board: json!({ "kind": kind }),
        sprites: Vec::new(),
        hint_layers: Vec::new(),
    }
}

pub fn square_d4_game() -> Game {
    let mut d = GameDefaults::new(Archetype::Factorization);
    d.start = Some(Config::new(vec![0]));
    Game::new("square_d4", "Isometries of the square", "group", square_d4_space(), d)
        .with_params(json!({"kind": "square_d4"}))
        .with_render(small_render("drawing"))
}

pub fn two_lamps_game() -> Game {
    let mut d = GameDefaults::new(Archetype::Factorization);
    d.start = Some(Config::new(vec![0]));
    Game::new("two_lamps", "Two lamps", "group", two_lamps_space(), d)
        .with_params(json!({"kind": "two_lamps"}))
        .with_render(small_render("lamps"))
}

/// The word realizing `rot` on the lamps, and the one realizing `flip`.
pub fn square_to_lamps() -> Vec<(String, Word)> {
    vec![
        ("rot".into(), Word::from_labels(["toggle", "swap"])),
        ("rot'".into(), Word::from_labels(["swap", "toggle"])),
        ("flip".into(), Word::from_labels(["swap"])),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplying_by_primes() {
        let s = primes_space();
        let w: Word = "7 3 2 2".parse().unwrap();
        assert_eq!(s.act(&w, &number(1)).unwrap(), number(84));
        assert!(s.apply("/5", &number(84)).is_err());
        assert!(s.apply("2", &number(u32::MAX)).is_err());
    }

    #[test]
    fn code_wheels_wrap() {
        let s = code_space();
        assert_eq!(s.render(&s.apply("2+", &s.parse("794").unwrap()).unwrap()), "704");
        assert_eq!(s.render(&s.apply("3-", &s.parse("710").unwrap()).unwrap()), "719");
    }

    #[test]
    fn two_quarter_turns_make_a_half_turn() {
        let s = z3_game().space;
        let id = s.parse("·").unwrap();
        let w: Word = "↷ ↷".parse().unwrap();
        assert_eq!(s.render(&s.act(&w, &id).unwrap()), "↶");
    }

    #[test]
    fn flip_conjugates_rot_to_its_inverse() {
        let s = square_d4_space();
        for u in s.universe().enumerate(8).unwrap() {
            let a: Word = "flip rot flip".parse().unwrap();
            assert_eq!(s.act(&a, &u).unwrap(), s.apply("rot'", &u).unwrap());
        }
    }

    #[test]
    fn lamps_rot_has_order_four() {
        let s = two_lamps_space();
        let u = Config::new(vec![0]);
        let w: Word = "toggle swap".parse().unwrap();
        let mut v = u.clone();
        let mut order = 0;
        loop {
            v = s.act(&w, &v).unwrap();
            order += 1;
            if v == u {
                break;
            }
        }
        assert_eq!(order, 4);
    }
}
