//! Word factorization, solvability and inverse calculation.
//!
//! Searches use the player moves only. Backward steps apply each move's
//! paired inverse and keep the step only if the move itself applies at the
//! predecessor, so partial moves are honoured in both directions.

use std::collections::HashMap;

use thiserror::Error;

use crate::action::{ActionError, ActionSpace, Config, DEFAULT_NODE_CAP};
use crate::algebra::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("mission impossible: the target is not reachable")]
    NoSolution,
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error(transparent)]
    Action(#[from] ActionError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_depth: Option<usize>,
    pub node_cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_depth: None,
            node_cap: DEFAULT_NODE_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solvability {
    Solvable,
    Impossible,
}

type Layers = HashMap<Vec<u8>, u32>;

fn predecessors<'a>(space: &'a ActionSpace, gens: &'a [usize], v: &'a [u8]) -> impl Iterator<Item = Vec<u8>> + 'a {
    gens.iter().filter_map(move |&g| {
        let u = space.apply_index(space.inverse_index(g), v)?;
        (space.apply_index(g, &u).as_deref() == Some(v)).then_some(u)
    })
}

/// A shortest word of player moves carrying `u0` to `uf`.
///
/// Among shortest words the result is lexicographically least in the
/// declared generator order.
pub fn factorize(space: &ActionSpace, u0: &Config, uf: &Config, opts: SearchOptions) -> Result<Word, SolverError> {
    let gens = space.player_generators();
    let (a, b) = (u0.bytes(), uf.bytes());
    if a == b {
        return Ok(Word::empty());
    }
    let mut fwd: Layers = HashMap::from([(a.to_vec(), 0)]);
    let mut bwd: Layers = HashMap::from([(b.to_vec(), 0)]);
    let mut f_front = vec![a.to_vec()];
    let mut b_front = vec![b.to_vec()];
    let (mut df, mut db) = (0u32, 0u32);
    let meet: Vec<Vec<u8>> = loop {
        if f_front.is_empty() || b_front.is_empty() {
            return Err(SolverError::NoSolution);
        }
        if opts.max_depth.is_some_and(|m| (df + db) as usize >= m) {
            return Err(SolverError::BudgetExceeded);
        }
        let forward = f_front.len() <= b_front.len();
        let mut next = Vec::new();
        if forward {
            for u in &f_front {
                for &g in &gens {
                    let Some(v) = space.apply_index(g, u) else { continue };
                    if !fwd.contains_key(&v) {
                        fwd.insert(v.clone(), df + 1);
                        next.push(v);
                    }
                }
            }
            df += 1;
            f_front = next;
        } else {
            for v in &b_front {
                for u in predecessors(space, &gens, v) {
                    if !bwd.contains_key(&u) {
                        bwd.insert(u.clone(), db + 1);
                        next.push(u);
                    }
                }
            }
            db += 1;
            b_front = next;
        }
        if fwd.len() + bwd.len() > opts.node_cap {
            return Err(SolverError::BudgetExceeded);
        }
        let (front, other, other_depth) = if forward {
            (&f_front, &bwd, db)
        } else {
            (&b_front, &fwd, df)
        };
        let hits: Vec<Vec<u8>> = front
            .iter()
            .filter(|x| other.get(*x) == Some(&other_depth))
            .cloned()
            .collect();
        if !hits.is_empty() {
            // Any shortest path crosses forward depth `df` at a node of
            // backward depth `db`.
            break if forward {
                hits
            } else {
                fwd.iter()
                    .filter(|(k, &d)| d == df && bwd.get(*k) == Some(&db))
                    .map(|(k, _)| k.clone())
                    .collect()
            };
        }
    };

    // Forward nodes lying on some shortest path, layer by layer.
    let mut by_depth: Vec<Vec<&Vec<u8>>> = vec![Vec::new(); df as usize + 1];
    for (k, &d) in &fwd {
        by_depth[d as usize].push(k);
    }
    let mut good: Vec<std::collections::HashSet<Vec<u8>>> = vec![Default::default(); df as usize + 1];
    good[df as usize] = meet.into_iter().collect();
    for d in (0..df as usize).rev() {
        let (lower, upper) = good.split_at_mut(d + 1);
        for &u in &by_depth[d] {
            if gens
                .iter()
                .any(|&g| space.apply_index(g, u).is_some_and(|v| upper[0].contains(&v)))
            {
                lower[d].insert(u.clone());
            }
        }
    }

    let mut word = Word::empty();
    let mut cur = a.to_vec();
    for d in 1..=df as usize {
        let (g, v) = gens
            .iter()
            .find_map(|&g| space.apply_index(g, &cur).filter(|v| good[d].contains(v)).map(|v| (g, v)))
            .expect("good layers are connected");
        word.push(Letter::new(space.generator(g).label.clone()));
        cur = v;
    }
    for d in (0..db).rev() {
        let (g, v) = gens
            .iter()
            .find_map(|&g| {
                space
                    .apply_index(g, &cur)
                    .filter(|v| bwd.get(v) == Some(&d))
                    .map(|v| (g, v))
            })
            .expect("backward layers are connected");
        word.push(Letter::new(space.generator(g).label.clone()));
        cur = v;
    }
    Ok(word)
}

/// Shortest word from `u0` to any configuration satisfying `goal`, by
/// forward search. Returns the word and the configuration reached.
pub fn factorize_to<F>(space: &ActionSpace, u0: &Config, goal: F, opts: SearchOptions) -> Result<(Word, Config), SolverError>
where
    F: Fn(&[u8]) -> bool,
{
    let gens = space.player_generators();
    let mut parent: HashMap<Vec<u8>, Option<(Vec<u8>, usize)>> = HashMap::from([(u0.bytes().to_vec(), None)]);
    let mut layer = vec![u0.bytes().to_vec()];
    let mut depth = 0usize;
    let found = 'search: loop {
        if let Some(hit) = layer.iter().find(|u| goal(u)) {
            break 'search hit.clone();
        }
        if layer.is_empty() {
            return Err(SolverError::NoSolution);
        }
        if opts.max_depth.is_some_and(|m| depth >= m) {
            return Err(SolverError::BudgetExceeded);
        }
        let mut next = Vec::new();
        for u in &layer {
            for &g in &gens {
                let Some(v) = space.apply_index(g, u) else { continue };
                if !parent.contains_key(&v) {
                    parent.insert(v.clone(), Some((u.clone(), g)));
                    next.push(v);
                }
            }
        }
        if parent.len() > opts.node_cap {
            return Err(SolverError::BudgetExceeded);
        }
        layer = next;
        depth += 1;
    };
    let mut labels = Vec::new();
    let mut cur = found.clone();
    while let Some(Some((prev, g))) = parent.get(&cur) {
        labels.push(space.generator(*g).label.clone());
        cur = prev.clone();
    }
    labels.reverse();
    Ok((Word::from_labels(labels), Config::new(found)))
}

/// Single-source distances from `u0` over player moves.
pub fn distances_from(space: &ActionSpace, u0: &Config, cap: usize) -> Result<HashMap<Config, u32>, SolverError> {
    let gens = space.player_generators();
    let mut dist = HashMap::from([(u0.clone(), 0u32)]);
    let mut layer = vec![u0.clone()];
    let mut d = 0;
    while !layer.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for u in &layer {
            for &g in &gens {
                let Some(v) = space.apply_index(g, u.bytes()) else { continue };
                let v = Config::new(v);
                if !dist.contains_key(&v) {
                    if dist.len() >= cap {
                        return Err(SolverError::BudgetExceeded);
                    }
                    dist.insert(v.clone(), d);
                    next.push(v);
                }
            }
        }
        layer = next;
    }
    Ok(dist)
}

/// Sign-based verdict, when the space declares a parity rule.
pub fn parity_verdict(space: &ActionSpace, u0: &Config, uf: &Config) -> Option<Solvability> {
    let same = space.parity()?.same_orbit(u0.bytes(), uf.bytes())?;
    Some(if same {
        Solvability::Solvable
    } else {
        Solvability::Impossible
    })
}

pub fn decide_solvable(
    space: &ActionSpace,
    u0: &Config,
    uf: &Config,
    opts: SearchOptions,
) -> Result<Solvability, SolverError> {
    if let Some(v) = parity_verdict(space, u0, uf) {
        return Ok(v);
    }
    search_verdict(space, u0, uf, opts)
}

/// The verdict of an exhaustive search, ignoring any parity rule.
pub fn search_verdict(space: &ActionSpace, u0: &Config, uf: &Config, opts: SearchOptions) -> Result<Solvability, SolverError> {
    match factorize(space, u0, uf, opts) {
        Ok(_) => Ok(Solvability::Solvable),
        Err(SolverError::NoSolution) => Ok(Solvability::Impossible),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseSolution {
    /// `g_1^-1 g_2^-1 ... g_n^-1 · uf`: the start that `word` carries to `uf`.
    pub start: Config,
    /// `g_n^-1 ... g_1^-1 · uf`, the inverses undone in the wrong order, when
    /// that path is applicable.
    pub wrong_order: Option<Config>,
}

/// The configuration `u` with `word · u = uf`.
pub fn solve_inverse_calculation(space: &ActionSpace, uf: &Config, word: &Word) -> Result<InverseSolution, SolverError> {
    let start = space.act(&word.inverse(), uf)?;
    if space.act(word, &start)? != *uf {
        return Err(ActionError::InvalidSpace("inverse moves do not undo the word".into()).into());
    }
    let wrong = Word::from_letters(word.letters().iter().map(Letter::inverse).collect());
    Ok(InverseSolution {
        start,
        wrong_order: space.act(&wrong, uf).ok(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Trace {
    /// `u0`, `s_1·u0`, ... up to the last applicable step.
    pub configs: Vec<Config>,
    /// Index of the first letter that could not be applied.
    pub failed_at: Option<usize>,
}

impl Trace {
    pub fn last(&self) -> &Config {
        self.configs.last().expect("a trace holds at least its start")
    }

    pub fn completed(&self) -> bool {
        self.failed_at.is_none()
    }
}

pub fn verify_word(space: &ActionSpace, u0: &Config, word: &Word) -> Trace {
    let mut configs = vec![u0.clone()];
    for (i, l) in word.letters().iter().enumerate() {
        match space.apply_letter(l, configs.last().unwrap()) {
            Ok(v) => configs.push(v),
            Err(_) => {
                return Trace {
                    configs,
                    failed_at: Some(i),
                }
            }
        }
    }
    Trace {
        configs,
        failed_at: None,
    }
}

/// Move allowance per player generator, and optionally overall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Allowance {
    /// Indexed like `ActionSpace::player_generators`; `None` is unlimited.
    pub per_generator: Vec<Option<u32>>,
    pub total: Option<u32>,
}

/// Shortest word reaching `goal` without exceeding `allowance`.
///
/// States are (configuration, cards left), so a goal reachable only by
/// overspending one card kind is correctly reported unreachable.
pub fn factorize_within<F>(
    space: &ActionSpace,
    u0: &Config,
    goal: F,
    allowance: &Allowance,
    cap: usize,
) -> Result<Option<Word>, SolverError>
where
    F: Fn(&[u8]) -> bool,
{
    let gens = space.player_generators();
    type State = (Vec<u8>, Vec<Option<u32>>, Option<u32>);
    let start: State = (u0.bytes().to_vec(), allowance.per_generator.clone(), allowance.total);
    let mut parent: HashMap<State, Option<(State, usize)>> = HashMap::from([(start.clone(), None)]);
    let mut layer = vec![start];
    let mut found = None;
    while !layer.is_empty() && found.is_none() {
        if let Some(s) = layer.iter().find(|s| goal(&s.0)) {
            found = Some(s.clone());
            break;
        }
        let mut next = Vec::new();
        for s in &layer {
            if s.2 == Some(0) {
                continue;
            }
            for (k, &g) in gens.iter().enumerate() {
                if s.1[k] == Some(0) {
                    continue;
                }
                let Some(v) = space.apply_index(g, &s.0) else { continue };
                let mut left = s.1.clone();
                left[k] = left[k].map(|c| c - 1);
                let t: State = (v, left, s.2.map(|c| c - 1));
                if !parent.contains_key(&t) {
                    if parent.len() >= cap {
                        return Err(SolverError::BudgetExceeded);
                    }
                    parent.insert(t.clone(), Some((s.clone(), g)));
                    next.push(t);
                }
            }
        }
        layer = next;
    }
    let Some(mut cur) = found else { return Ok(None) };
    let mut labels = Vec::new();
    while let Some(Some((prev, g))) = parent.get(&cur) {
        labels.push(space.generator(*g).label.clone());
        cur = prev.clone();
    }
    labels.reverse();
    Ok(Some(Word::from_labels(labels)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{Codec, Generator, MoveRule, Universe};
    use crate::algebra::Permutation;

    fn linear(n: usize) -> ActionSpace {
        let gens = (0..n - 1)
            .map(|i| {
                let p = Permutation::from_cycles(n, &[&[i, i + 1]]).unwrap();
                Generator::involution(format!("s{}", i + 1), MoveRule::Permute(p))
            })
            .collect();
        ActionSpace::new(
            "linear",
            Codec::pieces("ABCDEFG", n, 1),
            Universe::arrangements((0..n as u8).collect(), 1),
            gens,
        )
        .unwrap()
    }

    #[test]
    fn trivial_and_reversal() {
        let s = linear(4);
        let u = s.parse("ABCD").unwrap();
        assert!(factorize(&s, &u, &u, SearchOptions::default()).unwrap().is_empty());
        let v = s.parse("DCBA").unwrap();
        let w = factorize(&s, &u, &v, SearchOptions::default()).unwrap();
        assert_eq!(w.len(), 6);
        assert_eq!(s.act(&w, &u).unwrap(), v);
    }

    #[test]
    fn lexicographic_tie_break() {
        // Two shortest words reach CBA: s1 s2 s1 and s2 s1 s2.
        let s = linear(3);
        let u = s.parse("ABC").unwrap();
        let v = s.parse("CBA").unwrap();
        let w = factorize(&s, &u, &v, SearchOptions::default()).unwrap();
        assert_eq!(w.to_string(), "s1 s2 s1");
    }

    #[test]
    fn matches_single_source_distances() {
        let s = linear(5);
        let u = s.parse("ABCDE").unwrap();
        let dist = distances_from(&s, &u, 1000).unwrap();
        assert_eq!(dist.len(), 120);
        for (v, d) in dist.iter().take(40) {
            let w = factorize(&s, &u, v, SearchOptions::default()).unwrap();
            assert_eq!(w.len() as u32, *d);
            assert_eq!(verify_word(&s, &u, &w).last(), v);
        }
    }

    #[test]
    fn inverse_calculation_orders() {
        let s = linear(3);
        let uf = s.parse("ABC").unwrap();
        let word = Word::from_labels(["s1", "s2"]);
        let sol = solve_inverse_calculation(&s, &uf, &word).unwrap();
        assert_eq!(s.act(&word, &sol.start).unwrap(), uf);
        assert_ne!(sol.wrong_order.unwrap(), sol.start);
        assert_eq!(solve_inverse_calculation(&s, &uf, &Word::empty()).unwrap().start, uf);
    }

    #[test]
    fn budget_blocks_overspending() {
        let s = linear(3);
        let u = s.parse("ABC").unwrap();
        let v = s.parse("CBA").unwrap();
        let only_one_each = Allowance {
            per_generator: vec![Some(1), Some(1)],
            total: None,
        };
        let goal = |b: &[u8]| b == v.bytes();
        assert_eq!(factorize_within(&s, &u, goal, &only_one_each, 1000).unwrap(), None);
        let two_s1 = Allowance {
            per_generator: vec![Some(2), Some(1)],
            total: None,
        };
        let w = factorize_within(&s, &u, goal, &two_s1, 1000).unwrap().unwrap();
        assert_eq!(w.to_string(), "s1 s2 s1");
    }
}
