//! Elephants on an even square board, walking between mirrors or carried
//! by turning plates.

use serde_json::json;

use super::CatalogError;
use crate::action::{ActionSpace, Codec, Config, Field, FieldKind, Generator, MoveRule, Universe};
use crate::game::{Archetype, Game, GameDefaults, HintLayer, RenderMeta};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElephantKind {
    Reflected,
    Rotating,
}

impl ElephantKind {
    pub fn name(self) -> &'static str {
        match self {
            ElephantKind::Reflected => "reflected",
            ElephantKind::Rotating => "rotating",
        }
    }

    /// Orientation states of one elephant.
    pub fn orientations(self) -> u8 {
        match self {
            ElephantKind::Reflected => 4,
            ElephantKind::Rotating => 8,
        }
    }
}

/// Horizontal mirror bit of a reflected elephant's orientation.
pub const H_FLIP: u8 = 1;
/// Vertical mirror bit.
pub const V_FLIP: u8 = 2;

/// D4 orientation byte: `refl * 4 + rot`, `rot` in clockwise quarter turns.
pub fn dihedral(rot: u8, refl: bool) -> u8 {
    (refl as u8) * 4 + rot % 4
}

fn check_side(side: u8) -> Result<(), CatalogError> {
    if side < 2 || side % 2 == 1 || side > 16 {
        return Err(CatalogError::BadParameter("the board side must be even, between 2 and 16".into()));
    }
    Ok(())
}

/// A move of one elephant `(x, y, o)` (row `y` counted from the top), or
/// `None` when it would leave the board.
type Step = std::sync::Arc<dyn Fn(u8, u8, u8) -> Option<(u8, u8, u8)> + Send + Sync>;

fn reflected_steps(side: u8) -> Vec<(String, String, Step)> {
    let mk = |dx: i32, dy: i32, flip: u8| -> Step {
        std::sync::Arc::new(move |x: u8, y: u8, o: u8| {
            let (nx, ny) = (x as i32 + dx, y as i32 + dy);
            if nx < 0 || ny < 0 || nx >= side as i32 || ny >= side as i32 {
                return None;
            }
            Some((nx as u8, ny as u8, o ^ flip))
        })
    };
    vec![
        ("S".into(), "N".into(), mk(0, 1, V_FLIP)),
        ("O".into(), "E".into(), mk(-1, 0, H_FLIP)),
        ("N".into(), "S".into(), mk(0, -1, V_FLIP)),
        ("E".into(), "O".into(), mk(1, 0, H_FLIP)),
    ]
}

/// Quarter turns of the 2x2 block around each interior vertex `(i, j)`,
/// the vertex at the top-left corner of cell `(i, j)`.
fn rotating_steps(side: u8) -> Vec<(String, String, Step)> {
    let mut out: Vec<(String, String, Step)> = Vec::new();
    for j in 1..side {
        for i in 1..side {
            for cw in [true, false] {
                let step: Step = std::sync::Arc::new(move |x: u8, y: u8, o: u8| {
                    let inside = (x == i - 1 || x == i) && (y == j - 1 || y == j);
                    if !inside {
                        return Some((x, y, o));
                    }
                    // Screen coordinates: clockwise runs top-left, top-right,
                    // bottom-right, bottom-left.
                    let (left, top) = (x == i - 1, y == j - 1);
                    let (nx, ny) = match (left, top, cw) {
                        (true, true, true) | (false, false, false) => (i, j - 1),
                        (false, true, true) | (true, false, false) => (i, j),
                        (false, false, true) | (true, true, false) => (i - 1, j),
                        (true, false, true) | (false, true, false) => (i - 1, j - 1),
                    };
                    let rot = if cw { (o + 1) % 4 } else { (o + 3) % 4 };
                    Some((nx, ny, (o & 4) | rot))
                });
                let (a, b) = (format!("cw{i}:{j}"), format!("ccw{i}:{j}"));
                if cw {
                    out.push((a, b, step));
                } else {
                    out.push((b, a, step));
                }
            }
        }
    }
    out
}

fn single_universe(kind: ElephantKind, side: u8) -> Universe {
    let mut all = Vec::new();
    for x in 0..side {
        for y in 0..side {
            for o in 0..kind.orientations() {
                all.push(Config::new(vec![x, y, o]));
            }
        }
    }
    Universe::listed(all)
}

/// One elephant, or four moving together (`herd`). Herd states list the
/// elephants in a fixed order; every move acts on all of them.
pub fn elephant_space(kind: ElephantKind, side: u8, herd: bool) -> Result<ActionSpace, CatalogError> {
    check_side(side)?;
    let steps = match kind {
        ElephantKind::Reflected => reflected_steps(side),
        ElephantKind::Rotating => rotating_steps(side),
    };
    let count = if herd { 4 } else { 1 };
    let gens = steps
        .into_iter()
        .map(|(label, inverse, step)| {
            let rule = MoveRule::custom(move |u: &[u8]| {
                let mut out = Vec::with_capacity(u.len());
                for e in u.chunks(3) {
                    let (x, y, o) = step(e[0], e[1], e[2])?;
                    out.extend([x, y, o]);
                }
                Some(out)
            });
            Generator::new(label, inverse, rule)
        })
        .collect();
    let mut fields = Vec::new();
    for k in 0..count {
        let suffix = if herd { format!("{}", k + 1) } else { String::new() };
        fields.push(Field::new(&format!("x{suffix}"), FieldKind::U8));
        fields.push(Field::new(&format!("y{suffix}"), FieldKind::U8));
        fields.push(Field::new(&format!("o{suffix}"), FieldKind::U8));
    }
    let universe = if herd {
        Universe::Unbounded
    } else {
        single_universe(kind, side)
    };
    let name = format!("elephants_{}{}", kind.name(), if herd { "_herd" } else { "" });
    Ok(ActionSpace::new(name, Codec::fields(fields), universe, gens)?)
}

/// The four corners, upright for the first two (different parities) and
/// mirrored for the other two on the rotating board; upright on the
/// reflected board. Either way, one goal per orbit.
pub fn corner_goals(kind: ElephantKind, side: u8) -> Vec<Config> {
    let m = side - 1;
    match kind {
        ElephantKind::Reflected => vec![
            Config::new(vec![0, 0, 0]),
            Config::new(vec![m, 0, 0]),
            Config::new(vec![0, m, 0]),
            Config::new(vec![m, m, 0]),
        ],
        ElephantKind::Rotating => vec![
            Config::new(vec![0, 0, 0]),
            Config::new(vec![m, 0, 0]),
            Config::new(vec![0, m, dihedral(0, true)]),
            Config::new(vec![m, m, dihedral(0, true)]),
        ],
    }
}

/// Four colors by cell parity, the invariant behind the orbits.
pub fn parity_layer(side: u8) -> HintLayer {
    HintLayer {
        id: "parity".into(),
        colors: (0..side)
            .map(|y| (0..side).map(|x| (y % 2) * 2 + x % 2).collect())
            .collect(),
    }
}

pub fn elephant_game(kind: ElephantKind, side: u8, herd: bool) -> Result<Game, CatalogError> {
    let space = elephant_space(kind, side, herd)?;
    let id = format!(
        "elephants_{}{}{}",
        kind.name(),
        if side == 6 { String::new() } else { side.to_string() },
        if herd { "_herd" } else { "" }
    );
    let mut d = if herd {
        let mut d = GameDefaults::new(Archetype::Factorization);
        let c = side / 2;
        d.start = Some(Config::new(vec![c - 1, c - 1, 0, c, c - 1, 0, c - 1, c, 0, c, c, 0]));
        d
    } else {
        let mut d = GameDefaults::new(Archetype::ChoiceFactorization);
        d.goals = corner_goals(kind, side);
        d
    };
    d.program_length = 4;
    let title = match kind {
        ElephantKind::Reflected => "Elephants in the mirror palace",
        ElephantKind::Rotating => "Elephants on turning plates",
    };
    Ok(Game::new(id, title, "elephants", space, d)
        .with_params(json!({"kind": kind.name(), "side": side, "herd": herd}))
        .with_render(RenderMeta {
            board: json!({"kind": "grid", "width": side, "height": side,
                          "orientations": kind.orientations(), "elephants": if herd { 4 } else { 1 }}),
            sprites: vec!["elephant".into()],
            hint_layers: vec![parity_layer(side)],
        }))
}
