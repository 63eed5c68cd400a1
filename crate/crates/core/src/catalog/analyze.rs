//! Quantitative facts about a game, computed exactly or left out.

use serde::{Deserialize, Serialize};

use crate::action::{group_order, orbit_count_via_index, orbit_of, StabilizerChain};
use crate::algebra::Word;
use crate::game::{Game, PARTITION_CACHE_LIMIT};

/// Largest orbit explored from the default start of an unbounded game.
pub const START_ORBIT_CAP: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

/// Big integers are decimal strings. Fields that could not be computed
/// within budget are `null` and listed in `not_computed`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub game: String,
    pub configurations: Option<String>,
    pub generators: usize,
    pub group_order: Option<String>,
    pub orbit_count: Option<String>,
    pub orbit_sizes: Option<Vec<usize>>,
    pub solvable_fraction: Option<f64>,
    pub orbit_count_via_index: Option<String>,
    pub start_orbit_size: Option<usize>,
    pub identities: Vec<IdentityCheck>,
    pub not_computed: Vec<String>,
}

pub fn analyze(game: &Game) -> AnalysisReport {
    let space = &game.space;
    let mut not_computed = Vec::new();
    let mut skip = |field: &str| not_computed.push(field.to_string());

    let configurations = space.universe().count().map(|c| c.to_string());
    if configurations.is_none() {
        skip("configurations");
    }
    let order = group_order(space).ok().map(|o| o.to_string());
    if order.is_none() {
        skip("group_order");
    }
    let partition = game.partition();
    let (orbit_count, orbit_sizes, solvable_fraction) = match &partition {
        Some(p) => {
            let mut sizes = p.sizes().to_vec();
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            (Some(p.orbit_count().to_string()), Some(sizes), Some(p.solvable_fraction()))
        }
        None => (None, None, None),
    };
    let via_index = orbit_count_via_index(space).ok().map(|c| c.to_string());
    let orbit_count = orbit_count.or_else(|| via_index.clone());
    if orbit_count.is_none() {
        skip("orbit_count");
    }
    if orbit_sizes.is_none() {
        skip("orbit_sizes");
        skip("solvable_fraction");
    }
    if via_index.is_none() {
        skip("orbit_count_via_index");
    }
    let start_orbit_size = match (&partition, &game.defaults.start) {
        (Some(p), Some(s)) => p.orbit_id(s).map(|id| p.sizes()[id]),
        (None, Some(s)) if !space.universe().is_enumerable(PARTITION_CACHE_LIMIT) => {
            orbit_of(space, s, START_ORBIT_CAP).ok().map(|o| o.len())
        }
        _ => None,
    };
    if start_orbit_size.is_none() {
        skip("start_orbit_size");
    }
    AnalysisReport {
        game: game.id.clone(),
        configurations,
        generators: space.generators().len(),
        group_order: order,
        orbit_count,
        orbit_sizes,
        solvable_fraction,
        orbit_count_via_index: via_index,
        start_orbit_size,
        identities: identities(game),
        not_computed,
    }
}

fn check(name: &str, holds: bool) -> IdentityCheck {
    IdentityCheck {
        name: name.to_string(),
        holds,
    }
}

/// Identities worth reporting for particular games.
fn identities(game: &Game) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    if let Some(t) = &game.table {
        out.push(check("associative", t.associativity_counterexample().is_none()));
        out.push(check("commutative", t.is_commutative()));
        let self_inverse = (0..t.order()).all(|x| t.inv(x) == x);
        out.push(check("every element is its own inverse", self_inverse));
        if game.id == "z3" {
            let w: Word = "↷ ↷".parse().expect("valid word");
            out.push(check("↷↷ = ↶", t.evaluate_word(&w).ok() == t.index_of("↶")));
        }
    }
    match game.id.as_str() {
        "triangle" => {
            let corners: Vec<_> = super::puzzles::triangle_corner_generators().into_iter().map(|(_, p)| p).collect();
            let corner_order = StabilizerChain::from_generators(24, &corners).map(|c| c.order()).ok();
            let piece_order = group_order(&game.space).ok();
            out.push(check(
                "a triangle back in place is back in its orientation",
                corner_order.is_some() && corner_order == piece_order,
            ));
        }
        "elephants_rotating" => {
            if let Some(p) = game.partition() {
                let home = crate::action::Config::new(vec![0, 0, 0]);
                let stabilizer = p
                    .orbit_id(&home)
                    .map(|id| p.members(id).filter(|c| c.bytes()[..2] == [0, 0]).count())
                    .unwrap_or(0);
                out.push(check("orbits × stabilizer = 8", p.orbit_count() * stabilizer == 8));
            }
        }
        "ladybug" => {
            let w: Word = "E E E E N N N N O O O O S S S S".parse().expect("valid word");
            let start = super::grid::ladybug_config(0, 0, 0);
            let end = game.space.act(&w, &start).ok();
            out.push(check(
                "a 16-move loop collects 16 dots",
                end == Some(super::grid::ladybug_config(0, 0, 16)),
            ));
        }
        _ => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build;

    #[test]
    fn even_report() {
        let r = analyze(&build("even").unwrap());
        assert_eq!(r.configurations.as_deref(), Some("5040"));
        assert_eq!(r.orbit_count.as_deref(), Some("2"));
        assert_eq!(r.orbit_sizes, Some(vec![2520, 2520]));
        assert_eq!(r.solvable_fraction, Some(0.5));
        assert_eq!(r.group_order.as_deref(), Some("2520"));
    }

    #[test]
    fn unbounded_fields_are_marked() {
        let r = analyze(&build("displacement").unwrap());
        assert!(r.configurations.is_none());
        assert!(r.not_computed.contains(&"configurations".to_string()));
        assert!(r.not_computed.contains(&"group_order".to_string()));
    }
}
