mod common;

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_bigint::BigUint;
use proptest::prelude::*;

use common::bfs_distances;
use ludigroup_core::action::{group_order, orbit_count_via_index, orbit_partition};
use ludigroup_core::algebra::Word;
use ludigroup_core::catalog::analyze::analyze;
use ludigroup_core::catalog::grid::{default_sheep_board, ladybug_config, signed_area, Heisenberg};
use ludigroup_core::catalog::iso::check_isomorphism;
use ludigroup_core::catalog::misc::{square_d4_space, square_to_lamps, two_lamps_space};
use ludigroup_core::catalog::taquin::taquin_solved;
use ludigroup_core::catalog::{build, game, CatalogError, GAME_IDS};
use ludigroup_core::rng::game_rng;

#[test]
fn every_listed_game_builds() {
    assert_eq!(GAME_IDS.len(), 32);
    for id in GAME_IDS {
        let g = game(id).unwrap();
        assert_eq!(g.id, *id);
        assert!(!g.space.player_labels().is_empty(), "{id}");
    }
    assert!(matches!(build("nope"), Err(CatalogError::UnknownGame(_))));
}

#[test]
fn sized_families() {
    assert_eq!(build("linear7").unwrap().space.player_labels().len(), 6);
    assert_eq!(build("elephants_reflected4").unwrap().space.universe().count(), Some(BigUint::from(64u32)));
    assert!(build("elephants_reflected5").is_err());
}

#[test]
fn linear_beads_swap_neighbours() {
    let g = game("linear5").unwrap();
    let u = g.space.parse("JRBVO").unwrap();
    assert_eq!(g.space.render(&g.space.apply("s2", &u).unwrap()), "JBRVO");
    assert_eq!(group_order(&g.space).unwrap(), BigUint::from(120u32));
    let three = build("linear3").unwrap();
    assert_eq!(three.space.render(&three.space.apply("s2", &three.space.parse("JRB").unwrap()).unwrap()), "JBR");
}

#[test]
fn even_game_is_the_alternating_group() {
    let g = game("even").unwrap();
    assert_eq!(group_order(&g.space).unwrap(), BigUint::from(2520u32));
    assert_eq!(orbit_count_via_index(&g.space).unwrap(), BigUint::from(2u32));
}

#[test]
fn the_sheep_is_stopped_by_obstacles() {
    let board = default_sheep_board();
    assert!(!board.obstacles.is_empty());
    let g = game("sheep").unwrap();
    let (ox, oy) = board.obstacles[0];
    // Face the obstacle from each free neighbour.
    let mut tried = 0;
    for (dx, dy, h) in [(0i32, 1i32, 0u8), (-1, 0, 1), (0, -1, 2), (1, 0, 3)] {
        let (x, y) = (ox as i32 + dx, oy as i32 + dy);
        let Ok(u) = g.space.parse(&format!("{x},{y},{}", ["N", "E", "S", "W"][h as usize])) else {
            continue;
        };
        tried += 1;
        assert!(g.space.apply("advance", &u).is_err(), "{x},{y}");
    }
    assert!(tried > 0);
}

#[test]
fn the_ladybug_loop_and_record() {
    let g = game("ladybug").unwrap();
    let w: Word = "E E E E N N N N O O O O S S S S".parse().unwrap();
    assert_eq!(g.space.act(&w, &ladybug_config(0, 0, 0)).unwrap(), ladybug_config(0, 0, 16));
    assert_eq!(signed_area(&w), Some(16));
    assert_eq!(Heisenberg::of_word(&w).unwrap().act((0, 0, 0)), (0, 0, 16));
}

#[test]
fn elephant_boards() {
    for (id, configs) in [("elephants_reflected", 144), ("elephants_rotating", 288)] {
        let g = game(id).unwrap();
        let p = orbit_partition(&g.space, 1000).unwrap();
        assert_eq!((p.configs().len(), p.orbit_count()), (configs, 4), "{id}");
    }
    let g = game("elephants_rotating").unwrap();
    let u = g.space.parse("0,0,0").unwrap();
    let there = g.space.apply("cw1:1", &u).unwrap();
    assert_eq!(g.space.render(&there), "1,0,1");
    assert_eq!(g.space.apply("ccw1:1", &there).unwrap(), u);
    let half: Word = "cw1:1 cw1:1".parse().unwrap();
    assert_eq!(g.space.render(&g.space.act(&half, &u).unwrap()), "1,1,2");
}

#[test]
fn puzzle_orders() {
    let hex = game("hex").unwrap();
    assert_eq!(orbit_partition(&hex.space, 400_000).unwrap().orbit_count(), 2);
    let corrected = game("hex_corrected").unwrap();
    assert_eq!(orbit_partition(&corrected.space, 400_000).unwrap().orbit_count(), 1);
    assert_eq!(group_order(&game("triangle").unwrap().space).unwrap(), BigUint::from(40320u32));
}

#[test]
fn fifteen_puzzle_moves() {
    let g = game("taquin").unwrap();
    assert_eq!(g.space.player_labels().len(), 48);
    let eight = game("taquin3").unwrap();
    assert_eq!(bfs_distances(&eight.space, &taquin_solved(3, 3)).len(), 181440);
}

#[test]
fn the_square_and_the_lamps_are_isomorphic() {
    let mapping: BTreeMap<String, Word> = square_to_lamps().into_iter().collect();
    let iso = check_isomorphism(&square_d4_space(), &two_lamps_space(), &mapping).unwrap();
    assert_eq!(iso.forward.len(), 8);
    assert_eq!(iso.right_to_left.len(), two_lamps_space().generators().len());
    let mut broken = mapping.clone();
    broken.insert("flip".into(), Word::empty());
    assert!(check_isomorphism(&square_d4_space(), &two_lamps_space(), &broken).is_err());
}

#[test]
fn analysis_reports() {
    let r = analyze(&game("rubik").unwrap());
    assert_eq!(r.group_order.as_deref(), Some("43252003274489856000"));
    assert!(r.not_computed.contains(&"orbit_sizes".to_string()));
    let h = analyze(&game("hex_crystallo").unwrap());
    assert_eq!(h.orbit_count_via_index.as_deref(), Some("6"));
    let z = analyze(&game("z3").unwrap());
    assert!(z.identities.iter().all(|c| c.holds || c.name == "every element is its own inverse"));
    let l = analyze(&game("ladybug").unwrap());
    assert!(l.identities.iter().all(|c| c.holds));
    let e = analyze(&game("elephants_rotating").unwrap());
    assert_eq!(e.orbit_sizes, Some(vec![72, 72, 72, 72]));
    assert!(e.identities.iter().all(|c| c.holds));
}

/// Reports for small games against files in `tests/golden`. Set
/// `LUDIGROUP_BLESS=1` to rewrite them.
#[test]
fn golden_reports() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let bless = std::env::var_os("LUDIGROUP_BLESS").is_some();
    for id in ["z3", "inrc", "linear5", "code3", "elephants_rotating", "square_lamps"] {
        let report = serde_json::to_string_pretty(&analyze(&game(id).unwrap())).unwrap() + "\n";
        let path = dir.join(format!("{id}.json"));
        if bless {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &report).unwrap();
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(report, expected, "{id}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ladybug_dots_are_the_signed_area(seed in any::<u64>(), len in 0usize..40) {
        let g = game("ladybug").unwrap();
        let start = ladybug_config(0, 0, 0);
        let mut rng = game_rng(seed);
        let (w, end) = g.random_walk(&start, len, &mut rng);
        let dots = u16::from_be_bytes([end.bytes()[2], end.bytes()[3]]) as i64;
        prop_assert_eq!(signed_area(&w), Some(dots));
        let h = Heisenberg::of_word(&w).unwrap();
        prop_assert_eq!(h.act((0, 0, 0)), (end.bytes()[0] as i64, end.bytes()[1] as i64, dots));
    }
}
