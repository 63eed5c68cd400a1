use ludigroup::store::{read_record, SessionStore};
use ludigroup_core::game::{Archetype, GameSpec, Status, Submission, Variants};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};

const GAMES: [&str; 5] = ["linear5", "taquin3", "code3", "even", "sheep"];

#[test]
fn records_replay_to_the_live_sessions() {
    let dir = tempfile::tempdir().unwrap();
    let store = SessionStore::with_dir(dir.path(), Vec::new()).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(17);
    let mut ids = Vec::new();
    for seed in 0..100u64 {
        let id = *GAMES.choose(&mut rng).unwrap();
        let archetype = if rng.random_bool(0.5) {
            Archetype::Factorization
        } else {
            Archetype::ImpossibleFactorization
        };
        let variants = Variants {
            constrained: archetype == Archetype::Factorization && rng.random_bool(0.3),
            ..Variants::NONE
        };
        let spec = GameSpec::new(id, archetype).with_variants(variants).with_seed(seed);
        let Ok((sid, view)) = store.create(spec) else { continue };
        for _ in 0..rng.random_range(0..30) {
            let _ = store.update(&sid, |s| match rng.random_range(0..10) {
                0 => s.undo(),
                1 if archetype == Archetype::ImpossibleFactorization => s.declare_impossible().map(|_| ()),
                _ => s.play_move(view.generators.choose(&mut rng).unwrap()).map(|_| ()),
            });
        }
        ids.push(sid);
    }
    assert!(ids.len() >= 90);
    let reloaded = SessionStore::with_dir(dir.path(), Vec::new()).unwrap();
    for sid in &ids {
        let live = store.read(sid, |s| s.state().clone()).unwrap();
        let back = reloaded.read(sid, |s| s.state().clone()).unwrap();
        assert_eq!(live, back, "{sid}");
        let record = read_record(&dir.path().join(format!("{sid}.json"))).unwrap();
        assert_eq!(record.status, live.status);
        assert_eq!(record.events, live.events);
        assert!(record.updated_at >= record.created_at);
    }
}

#[test]
fn finished_blind_sessions_survive_a_restart() {
    let dir = tempfile::tempdir().unwrap();
    let store = SessionStore::with_dir(dir.path(), Vec::new()).unwrap();
    let blind = Variants {
        blind: true,
        ..Variants::NONE
    };
    let (sid, _) = store.create(GameSpec::new("linear5", Archetype::Factorization).with_variants(blind)).unwrap();
    store
        .update(&sid, |s| s.submit(Submission::Word { word: "s1 s3".parse().unwrap() }))
        .unwrap();
    let reloaded = SessionStore::with_dir(dir.path(), Vec::new()).unwrap();
    let view = reloaded.read(&sid, |s| s.view()).unwrap();
    assert_ne!(view.status, Status::InProgress);
    assert_eq!(view.resolution.unwrap().trace.len(), 3);
}

#[test]
fn unknown_sessions_and_games() {
    let store = SessionStore::in_memory();
    assert!(store.read("nope", |_| ()).is_err());
    assert!(store.create(GameSpec::new("nope", Archetype::Factorization)).is_err());
}
