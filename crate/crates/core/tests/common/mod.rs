#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use rand::seq::IndexedRandom;
use rand::Rng;

use ludigroup_core::action::{ActionSpace, Config};
use ludigroup_core::algebra::Word;
use ludigroup_core::game::{Archetype, CardBudget, Game, GameError, GameSpec, Session, Status, Submission, Variants};
use ludigroup_core::rng::game_rng;

/// Plain BFS over player moves, written independently of the solver.
pub fn bfs_distances(space: &ActionSpace, u0: &Config) -> HashMap<Config, u32> {
    let labels: Vec<String> = space.player_labels().into_iter().map(String::from).collect();
    let mut dist = HashMap::from([(u0.clone(), 0u32)]);
    let mut queue = VecDeque::from([u0.clone()]);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        for l in &labels {
            if let Ok(v) = space.apply(l, &u) {
                if !dist.contains_key(&v) {
                    dist.insert(v.clone(), d + 1);
                    queue.push_back(v);
                }
            }
        }
    }
    dist
}

/// Sign of an arrangement of distinct values, by counting inversions.
pub fn inversion_sign(values: &[u8]) -> i8 {
    let mut inversions = 0;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] > values[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

pub const ALL_VARIANTS: [Variants; 8] = {
    let mut out = [Variants::NONE; 8];
    let mut i = 0;
    while i < 8 {
        out[i] = Variants {
            blind: i & 1 != 0,
            constrained: i & 2 != 0,
            memory: i & 4 != 0,
        };
        i += 1;
    }
    out
};

#[derive(Debug, Default)]
pub struct SuiteStats {
    pub admitted: usize,
    pub rejected: usize,
    pub steps: usize,
}

fn cards_balance(s: &Session) -> Result<(), String> {
    let st = s.state();
    let (Some(initial), Some(left)) = (&st.initial_cards, &st.cards) else {
        return Ok(());
    };
    match (initial, left) {
        (CardBudget::PerGenerator(a), CardBudget::PerGenerator(b)) => {
            for (label, &n) in a {
                let used = st.history.iter().filter(|h| *h == label).count() as u32;
                if b.get(label).copied().unwrap_or(0) + used != n {
                    return Err(format!("cards for `{label}` do not add up"));
                }
            }
            if st.history.iter().any(|h| !a.contains_key(h)) {
                return Err("a move was played without a card".into());
            }
        }
        (CardBudget::Total(a), CardBudget::Total(b)) => {
            if b + st.history.len() as u32 != *a {
                return Err("total cards do not add up".into());
            }
        }
        _ => return Err("card kinds changed".into()),
    }
    Ok(())
}

fn opacity(s: &Session) -> Result<(), String> {
    if s.status() != Status::InProgress {
        return Ok(());
    }
    let v = s.view();
    let spec = s.spec();
    if spec.variants.blind && v.configuration.is_some() {
        return Err("a blind session shows its configuration".into());
    }
    if spec.archetype.hides_target() && (v.target.is_some() || v.goals.is_some()) {
        return Err("a combination session shows its target".into());
    }
    if spec.archetype == Archetype::MentalCalculation && v.configuration.is_some() {
        return Err("a calculation session shows its answer".into());
    }
    if spec.archetype == Archetype::InverseCalculation && (v.start.is_some() || v.configuration.is_some()) {
        return Err("an inverse calculation shows its answer".into());
    }
    if v.resolution.is_some() {
        return Err("a resolution is shown before the end".into());
    }
    Ok(())
}

fn reveals(s: &Session, before: &BTreeSet<String>) -> Result<(), String> {
    let st = s.state();
    if !s.spec().variants.memory && !before.is_subset(&st.revealed) {
        return Err("a revealed component was hidden again".into());
    }
    let target = st.target.as_ref().and_then(|t| t.config());
    for id in &st.revealed {
        let comp = s.game().defaults.components.iter().find(|c| &c.id == id);
        let ok = comp.is_some_and(|c| target.is_some_and(|t| c.contains(t)));
        if !ok {
            return Err(format!("revealed component `{id}` does not hold the target"));
        }
    }
    Ok(())
}

fn check_all(s: &Session, before: &BTreeSet<String>) -> Result<(), String> {
    cards_balance(s)?;
    opacity(s)?;
    reveals(s, before)
}

/// Drives one session through random actions, checking the engine
/// invariants after every step and replay at the end.
/// Returns `None` when the validator rejects the spec.
pub fn drive_session(game: &Arc<Game>, spec: &GameSpec, steps: usize) -> Result<Option<usize>, String> {
    let tag = |e: String| format!("{} {} {:?} seed {}: {e}", game.id, spec.archetype, spec.variants.names(), spec.seed);
    let Ok(mut s) = Session::new(game.clone(), spec.clone()) else {
        return Ok(None);
    };
    let again = Session::new(game.clone(), spec.clone()).map_err(|e| tag(e.to_string()))?;
    if again.state() != s.state() {
        return Err(tag("the same seed drew two instances".into()));
    }
    let mut rng = game_rng(spec.seed ^ 0x5eed);
    let labels: Vec<String> = game.space.player_labels().into_iter().map(String::from).collect();
    let mut done = 0;
    check_all(&s, &BTreeSet::new()).map_err(tag)?;
    for _ in 0..steps {
        if s.status() != Status::InProgress {
            break;
        }
        let before = s.state().clone();
        let a = spec.archetype;
        let result: Result<(), GameError> = if a.is_calculation() {
            let answer = before.answer.clone().expect("calculations have answers");
            let text = if rng.random_bool(0.5) { game.space.render(&answer) } else { game.space.render(&before.start) };
            s.submit(Submission::Configuration { configuration: text }).map(|_| ())
        } else if spec.variants.blind {
            let len = rng.random_range(0..6);
            let word = Word::from_labels((0..len).map(|_| labels.choose(&mut rng).unwrap().as_str()));
            s.submit(Submission::Word { word }).map(|_| ())
        } else if a == Archetype::ImpossibleFactorization && rng.random_bool(0.1) {
            s.declare_impossible().map(|_| ())
        } else if rng.random_bool(0.25) {
            s.undo()
        } else {
            s.play_move(labels.choose(&mut rng).unwrap()).map(|_| ())
        };
        if result.is_err() && s.state() != &before {
            return Err(tag(format!("a rejected action changed the state: {:?}", result)));
        }
        check_all(&s, &before.revealed).map_err(tag)?;
        done += 1;
    }
    if s.status() != Status::InProgress && !labels.is_empty() {
        let snapshot = s.state().clone();
        if s.play_move(&labels[0]) != Err(GameError::Terminated) {
            return Err(tag("a finished session accepted a move".into()));
        }
        if s.state() != &snapshot {
            return Err(tag("a finished session changed".into()));
        }
    }
    let replayed = Session::replay(game.clone(), spec.clone(), s.events()).map_err(|e| tag(e.to_string()))?;
    if replayed.state() != s.state() {
        return Err(tag("replaying the event log gave another state".into()));
    }
    Ok(Some(done))
}

/// Every archetype and variant combination the validator admits, on the
/// given games.
pub fn engine_suite(ids: &[&str], seeds: u64, steps: usize) -> Result<SuiteStats, String> {
    let mut stats = SuiteStats::default();
    for id in ids {
        let game = ludigroup_core::catalog::game(id).map_err(|e| e.to_string())?;
        let t = std::time::Instant::now();
        for archetype in Archetype::ALL {
            for variants in ALL_VARIANTS {
                for seed in 0..seeds {
                    let spec = GameSpec::new(*id, archetype).with_variants(variants).with_seed(seed);
                    if spec.check_combination().is_err() {
                        stats.rejected += 1;
                        continue;
                    }
                    let ts = std::time::Instant::now();
                    let r = drive_session(&game, &spec, steps)?;
                    if std::env::var_os("ENGINE_TRACE").is_some() && ts.elapsed().as_secs_f64() > 0.5 {
                        eprintln!("  {id} {archetype} {:?} {seed} {:?} {:.2}s", variants.names(), r, ts.elapsed().as_secs_f64());
                    }
                    match r {
                        Some(n) => {
                            stats.admitted += 1;
                            stats.steps += n;
                        }
                        None => stats.rejected += 1,
                    }
                }
            }
        }
        if std::env::var_os("ENGINE_TRACE").is_some() {
            eprintln!("{id}: {:.2}s", t.elapsed().as_secs_f64());
        }
    }
    Ok(stats)
}
