use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Archetype, CardBudget, Game, GameError, GameSpec, WinAt};
use crate::action::Config;
use crate::algebra::{Exponent, Word};
use crate::rng::game_rng;
use crate::solver::{
    decide_solvable, factorize, factorize_to, factorize_within, solve_inverse_calculation, verify_word, Allowance,
    SearchOptions, Solvability, SolverError,
};

/// Attempts at drawing an instance that the dealt cards can solve.
const CONSTRAINED_ATTEMPTS: usize = 64;

/// Search cap used while validating instances.
const VALIDATION_CAP: usize = 2_000_000;

/// Search cap for the shortest solution behind derived cards.
const DERIVED_CAP: usize = 200_000;

/// Length of the walk drawing constrained targets in spaces too large to
/// partition.
const CONSTRAINED_WALK_STEPS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    InProgress,
    Won,
    Lost,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    Config { configuration: Config },
    AnyOf { goals: Vec<Config> },
}

impl Target {
    pub fn contains(&self, c: &Config) -> bool {
        match self {
            Target::Config { configuration } => configuration == c,
            Target::AnyOf { goals } => goals.contains(c),
        }
    }

    pub fn config(&self) -> Option<&Config> {
        match self {
            Target::Config { configuration } => Some(configuration),
            Target::AnyOf { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Submission {
    Word { word: Word },
    /// A configuration in the game's rendering.
    Configuration { configuration: String },
}

/// One entry of a session's event log.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Event {
    Move { generator: String },
    Undo { generator: String },
    Submit { submission: Submission },
    Declare,
    /// Components shown to the player after the preceding event.
    Reveal { components: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveOutcome {
    pub accepted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub configuration: Option<String>,
    pub revealed: Vec<String>,
    pub status: Status,
}

/// How a session ended, disclosed once it is over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<String>,
    /// Step at which the target was first reached.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reached_at: Option<usize>,
    /// Index of the first letter that could not be applied.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failed_at: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub answer: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Solvability>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionState {
    pub start: Config,
    pub current: Config,
    pub target: Option<Target>,
    pub program: Option<Word>,
    /// Expected answer of calculation games.
    pub answer: Option<Config>,
    pub win_at: WinAt,
    /// Accepted moves, undone ones removed.
    pub history: Vec<String>,
    pub cards: Option<CardBudget>,
    pub initial_cards: Option<CardBudget>,
    pub revealed: BTreeSet<String>,
    pub status: Status,
    pub events: Vec<Event>,
    pub resolution: Option<Resolution>,
}

/// What the player may see.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlayerView {
    pub game: String,
    pub archetype: Archetype,
    pub variants: Vec<String>,
    pub status: Status,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub configuration: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goals: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub program: Option<Word>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cards: Option<CardBudget>,
    pub moves: usize,
    pub revealed: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<Resolution>,
}

#[derive(Clone, Debug)]
pub struct Session {
    game: Arc<Game>,
    spec: GameSpec,
    state: SessionState,
}

struct Instance {
    start: Config,
    target: Option<Target>,
    program: Option<Word>,
    answer: Option<Config>,
}

impl Session {
    /// Draws a new instance from the spec's seed.
    pub fn new(game: Arc<Game>, spec: GameSpec) -> Result<Session, GameError> {
        spec.check_combination()?;
        if spec.game != game.id {
            return Err(GameError::InvalidSpec(format!("spec names `{}` but the game is `{}`", spec.game, game.id)));
        }
        let win_at = match spec.archetype {
            Archetype::Combination | Archetype::RevealedCombination => WinAt::Any,
            _ => spec.win_at.unwrap_or(game.defaults.win_at),
        };
        let mut rng = game_rng(spec.seed);
        let (instance, cards) = if spec.variants.constrained {
            draw_constrained(&game, &spec, &mut rng)?
        } else {
            (draw_instance(&game, &spec, &mut rng)?, None)
        };
        let state = SessionState {
            current: instance.start.clone(),
            start: instance.start,
            target: instance.target,
            program: instance.program,
            answer: instance.answer,
            win_at,
            history: Vec::new(),
            initial_cards: cards.clone(),
            cards,
            revealed: BTreeSet::new(),
            status: Status::InProgress,
            events: Vec::new(),
            resolution: None,
        };
        Ok(Session { game, spec, state })
    }

    /// Rebuilds a session from its spec and event log.
    pub fn replay(game: Arc<Game>, spec: GameSpec, events: &[Event]) -> Result<Session, GameError> {
        let mut s = Session::new(game, spec)?;
        for e in events {
            match e {
                Event::Move { generator } => {
                    s.play_move(generator)?;
                }
                Event::Undo { .. } => s.undo()?,
                Event::Submit { submission } => {
                    s.submit(submission.clone())?;
                }
                Event::Declare => {
                    s.declare_impossible()?;
                }
                Event::Reveal { .. } => {}
            }
        }
        if s.state.events != events {
            return Err(GameError::InvalidSpec("event log does not replay to itself".into()));
        }
        Ok(s)
    }

    /// Reattaches a persisted state to its game.
    pub fn from_parts(game: Arc<Game>, spec: GameSpec, state: SessionState) -> Session {
        Session { game, spec, state }
    }

    pub fn game(&self) -> &Arc<Game> {
        &self.game
    }

    pub fn spec(&self) -> &GameSpec {
        &self.spec
    }

    pub fn state(&self) -> &SessionState {
        &self.state
    }

    pub fn status(&self) -> Status {
        self.state.status
    }

    pub fn events(&self) -> &[Event] {
        &self.state.events
    }

    fn render(&self, c: &Config) -> String {
        self.game.space.render(c)
    }

    fn ensure_in_progress(&self) -> Result<(), GameError> {
        if self.state.status != Status::InProgress {
            return Err(GameError::Terminated);
        }
        Ok(())
    }

    fn ensure_interactive(&self, what: &str) -> Result<(), GameError> {
        self.ensure_in_progress()?;
        if self.spec.archetype.is_calculation() {
            return Err(GameError::ModeMismatch(format!("{what} is not part of {}", self.spec.archetype)));
        }
        if self.spec.variants.blind {
            return Err(GameError::ModeMismatch(format!("{what} is not allowed in the blind variant")));
        }
        Ok(())
    }

    fn player_label<'a>(&self, label: &'a str) -> Result<&'a str, GameError> {
        let i = self.game.space.generator_index(label)?;
        if self.game.space.generator(i).hidden {
            return Err(GameError::UnknownGenerator(label.to_string()));
        }
        Ok(label)
    }

    /// Components containing both `c` and the target.
    fn components_at(&self, c: &Config) -> Vec<String> {
        let Some(Target::Config { configuration: t }) = &self.state.target else {
            return Vec::new();
        };
        self.game
            .defaults
            .components
            .iter()
            .filter(|k| k.contains(c) && k.contains(t))
            .map(|k| k.id.clone())
            .collect()
    }

    /// Updates the visible components after the configuration changed and
    /// returns those newly shown.
    fn refresh_reveals(&mut self) -> Vec<String> {
        if self.spec.archetype != Archetype::RevealedCombination {
            return Vec::new();
        }
        let now = self.components_at(&self.state.current);
        let fresh: Vec<String> = if self.spec.variants.memory {
            self.state.revealed = now.iter().cloned().collect();
            now
        } else {
            let fresh: Vec<String> = now.into_iter().filter(|id| !self.state.revealed.contains(id)).collect();
            self.state.revealed.extend(fresh.iter().cloned());
            fresh
        };
        if !fresh.is_empty() {
            self.state.events.push(Event::Reveal {
                components: fresh.clone(),
            });
        }
        fresh
    }

    fn finish(&mut self, status: Status, resolution: Resolution) {
        self.state.status = status;
        self.state.resolution = Some(resolution);
    }

    fn check_reached(&mut self) {
        let reached = self.state.target.as_ref().is_some_and(|t| t.contains(&self.state.current));
        if reached {
            let r = Resolution {
                status: Status::Won,
                trace: Vec::new(),
                reached_at: Some(self.state.history.len()),
                failed_at: None,
                answer: None,
                verdict: None,
            };
            self.finish(Status::Won, r);
        }
    }

    pub fn play_move(&mut self, label: &str) -> Result<MoveOutcome, GameError> {
        self.ensure_interactive("playing a move")?;
        let label = self.player_label(label)?;
        if let Some(cards) = &self.state.cards {
            if !cards.allows(label) {
                return Err(GameError::OutOfCards(label.to_string()));
            }
        }
        let next = self
            .game
            .space
            .apply(label, &self.state.current)
            .map_err(|e| GameError::Inapplicable(e.to_string()))?;
        if let Some(cards) = &mut self.state.cards {
            cards.spend(label);
        }
        self.state.current = next;
        self.state.history.push(label.to_string());
        self.state.events.push(Event::Move {
            generator: label.to_string(),
        });
        let revealed = self.refresh_reveals();
        self.check_reached();
        Ok(MoveOutcome {
            accepted: true,
            configuration: Some(self.render(&self.state.current)),
            revealed,
            status: self.state.status,
        })
    }

    /// Takes back the last move and returns its card.
    pub fn undo(&mut self) -> Result<(), GameError> {
        self.ensure_interactive("undo")?;
        let label = self.state.history.last().cloned().ok_or(GameError::EmptyHistory)?;
        let i = self.game.space.generator_index(&label)?;
        let inverse = self.game.space.generator(self.game.space.inverse_index(i)).label.clone();
        let prev = self
            .game
            .space
            .apply(&inverse, &self.state.current)
            .map_err(|e| GameError::Inapplicable(e.to_string()))?;
        self.state.history.pop();
        self.state.current = prev;
        if let Some(cards) = &mut self.state.cards {
            cards.refund(&label);
        }
        self.state.events.push(Event::Undo { generator: label });
        self.refresh_reveals();
        Ok(())
    }

    /// Adjudicates a blind sequence or a calculation answer.
    pub fn submit(&mut self, submission: Submission) -> Result<Resolution, GameError> {
        self.ensure_in_progress()?;
        let a = self.spec.archetype;
        let resolution = match (&submission, a) {
            (Submission::Configuration { configuration }, Archetype::MentalCalculation | Archetype::InverseCalculation) => {
                let guess = self.game.space.parse(configuration)?;
                let answer = self.state.answer.clone().expect("calculation games carry an answer");
                let won = if a == Archetype::MentalCalculation {
                    guess == answer
                } else {
                    let program = self.state.program.as_ref().expect("calculation games carry a program");
                    let target = self.state.target.as_ref().and_then(Target::config);
                    self.game.space.act(program, &guess).ok().as_ref() == target
                };
                Resolution {
                    status: if won { Status::Won } else { Status::Lost },
                    trace: Vec::new(),
                    reached_at: None,
                    failed_at: None,
                    answer: Some(self.render(&answer)),
                    verdict: None,
                }
            }
            (Submission::Word { word }, _) if self.spec.variants.blind => self.adjudicate_blind(word)?,
            _ => {
                return Err(GameError::ModeMismatch(format!(
                    "this submission does not fit a{} {a} session",
                    if self.spec.variants.blind { " blind" } else { "" }
                )))
            }
        };
        if let Submission::Word { word } = &submission {
            self.state.history = word.labels().map(str::to_string).collect();
        }
        self.state.events.push(Event::Submit { submission });
        self.blind_reveals(&resolution);
        self.finish(resolution.status, resolution.clone());
        Ok(resolution)
    }

    fn blind_reveals(&mut self, resolution: &Resolution) {
        if self.spec.archetype != Archetype::RevealedCombination || resolution.trace.is_empty() {
            return;
        }
        let mut fresh = Vec::new();
        for step in &resolution.trace {
            let c = self.game.space.parse(step).expect("trace entries render back");
            for id in self.components_at(&c) {
                if self.state.revealed.insert(id.clone()) {
                    fresh.push(id);
                }
            }
        }
        if !fresh.is_empty() {
            self.state.events.push(Event::Reveal { components: fresh });
        }
    }

    fn adjudicate_blind(&mut self, word: &Word) -> Result<Resolution, GameError> {
        for l in word.letters() {
            if l.exponent == Exponent::Minus {
                return Err(GameError::ModeMismatch("submitted words use player moves only".into()));
            }
            self.player_label(&l.label)?;
        }
        if let Some(cards) = &self.state.cards {
            let mut left = cards.clone();
            for l in word.labels() {
                if !left.spend(l) {
                    return Err(GameError::BudgetViolation(l.to_string()));
                }
            }
            self.state.cards = Some(left);
        }
        let trace = verify_word(&self.game.space, &self.state.start, word);
        let target = self.state.target.as_ref();
        let reached_at = trace
            .configs
            .iter()
            .position(|c| target.is_some_and(|t| t.contains(c)));
        let won = match self.state.win_at {
            WinAt::Any => reached_at.is_some(),
            WinAt::Final => trace.completed() && target.is_some_and(|t| t.contains(trace.last())),
        };
        self.state.current = trace.last().clone();
        Ok(Resolution {
            status: if won { Status::Won } else { Status::Lost },
            trace: trace.configs.iter().map(|c| self.render(c)).collect(),
            reached_at,
            failed_at: trace.failed_at,
            answer: None,
            verdict: None,
        })
    }

    /// "Mission impossible": wins exactly when the target is unreachable.
    pub fn declare_impossible(&mut self) -> Result<Resolution, GameError> {
        self.ensure_in_progress()?;
        if self.spec.archetype != Archetype::ImpossibleFactorization {
            return Err(GameError::ModeMismatch(format!(
                "declaring impossibility is not part of {}",
                self.spec.archetype
            )));
        }
        let target = self.state.target.as_ref().and_then(Target::config).expect("impossible games have a target");
        let verdict = if same_orbit(&self.game, &self.state.start, target)? {
            Solvability::Solvable
        } else {
            Solvability::Impossible
        };
        let status = if verdict == Solvability::Impossible {
            Status::Won
        } else {
            Status::Lost
        };
        let resolution = Resolution {
            status,
            trace: Vec::new(),
            reached_at: None,
            failed_at: None,
            answer: None,
            verdict: Some(verdict),
        };
        self.state.events.push(Event::Declare);
        self.finish(status, resolution.clone());
        Ok(resolution)
    }

    pub fn view(&self) -> PlayerView {
        let a = self.spec.archetype;
        let over = self.state.status != Status::InProgress;
        let blind = self.spec.variants.blind;
        let show_current = over || !(blind || a == Archetype::MentalCalculation);
        let (target, goals) = match &self.state.target {
            _ if a.hides_target() && !over => (None, None),
            Some(Target::Config { configuration }) => (Some(self.render(configuration)), None),
            Some(Target::AnyOf { goals }) => (None, Some(goals.iter().map(|g| self.render(g)).collect())),
            None => (None, None),
        };
        let start = match a {
            Archetype::InverseCalculation if !over => None,
            _ => Some(self.render(&self.state.start)),
        };
        PlayerView {
            game: self.game.id.clone(),
            archetype: a,
            variants: self.spec.variants.names().into_iter().map(String::from).collect(),
            status: self.state.status,
            generators: self.game.space.player_labels().into_iter().map(String::from).collect(),
            start,
            configuration: (show_current && a != Archetype::InverseCalculation).then(|| self.render(&self.state.current)),
            target,
            goals,
            program: self.state.program.clone(),
            cards: self.state.cards.clone(),
            moves: self.state.history.len(),
            revealed: self.state.revealed.iter().cloned().collect(),
            resolution: self.state.resolution.clone(),
        }
    }
}

fn validation_opts() -> SearchOptions {
    SearchOptions {
        max_depth: None,
        node_cap: VALIDATION_CAP,
    }
}

fn sample(game: &Game, rng: &mut crate::rng::GameRng) -> Result<Config, GameError> {
    game.sample_configuration(rng)
        .ok_or_else(|| GameError::InvalidSpec(format!("{} cannot draw random configurations", game.id)))
}

/// Whether `a` and `b` share an orbit, by the cheapest available method.
pub fn same_orbit(game: &Game, a: &Config, b: &Config) -> Result<bool, GameError> {
    if let Some(p) = game.partition() {
        if let Some(same) = p.same_orbit(a, b) {
            return Ok(same);
        }
    }
    Ok(decide_solvable(&game.space, a, b, validation_opts())? == Solvability::Solvable)
}

fn draw_instance(game: &Game, spec: &GameSpec, rng: &mut crate::rng::GameRng) -> Result<Instance, GameError> {
    let d = &game.defaults;
    let start_or_sample = |rng: &mut crate::rng::GameRng| match &d.start {
        Some(s) => Ok(s.clone()),
        None => sample(game, rng),
    };
    match spec.archetype {
        Archetype::MentalCalculation => {
            let start = start_or_sample(rng)?;
            let (program, answer) = match &d.program {
                Some(p) => (p.clone(), game.space.act(p, &start)?),
                None => game.random_walk(&start, d.program_length, rng),
            };
            Ok(Instance {
                start,
                target: None,
                program: Some(program),
                answer: Some(answer),
            })
        }
        Archetype::InverseCalculation => {
            let target = match &d.target {
                Some(t) => t.clone(),
                None => sample(game, rng)?,
            };
            let program = match &d.program {
                Some(p) => p.clone(),
                None => game.random_walk_back(&target, d.program_length, rng).0,
            };
            let answer = solve_inverse_calculation(&game.space, &target, &program)?.start;
            Ok(Instance {
                start: answer.clone(),
                target: Some(Target::Config { configuration: target }),
                program: Some(program),
                answer: Some(answer),
            })
        }
        Archetype::Factorization | Archetype::Combination | Archetype::RevealedCombination => {
            let start = start_or_sample(rng)?;
            let target = if !d.goals.is_empty() && spec.archetype == Archetype::Factorization {
                Target::AnyOf { goals: d.goals.clone() }
            } else if let Some(t) = &d.target {
                Target::Config { configuration: t.clone() }
            } else {
                let mut t = game.sample_in_orbit(&start, rng);
                for _ in 0..16 {
                    if t != start {
                        break;
                    }
                    t = game.sample_in_orbit(&start, rng);
                }
                Target::Config { configuration: t }
            };
            Ok(Instance {
                start,
                target: Some(target),
                program: None,
                answer: None,
            })
        }
        Archetype::ImpossibleFactorization => {
            if game.space.parity().is_none() && game.partition().is_none() {
                return Err(GameError::InvalidSpec(format!(
                    "{} has no parity rule and is too large to partition, so impossibility cannot be adjudicated",
                    game.id
                )));
            }
            let start = sample(game, rng)?;
            let target = sample(game, rng)?;
            Ok(Instance {
                start,
                target: Some(Target::Config { configuration: target }),
                program: None,
                answer: None,
            })
        }
        Archetype::ChoiceFactorization => {
            if d.goals.is_empty() {
                return Err(GameError::InvalidSpec(format!("{} has no goal transversal", game.id)));
            }
            let start = start_or_sample(rng)?;
            let mut reachable = 0;
            for g in &d.goals {
                if same_orbit(game, &start, g)? {
                    reachable += 1;
                }
            }
            if reachable != 1 {
                return Err(GameError::InvalidSpec(format!(
                    "{} of the goals share the start's orbit; a transversal has exactly one",
                    reachable
                )));
            }
            Ok(Instance {
                start,
                target: Some(Target::AnyOf { goals: d.goals.clone() }),
                program: None,
                answer: None,
            })
        }
    }
}

fn allowance(game: &Game, cards: &CardBudget) -> Allowance {
    let labels = game.space.player_labels();
    match cards {
        CardBudget::PerGenerator(m) => Allowance {
            per_generator: labels.iter().map(|l| Some(m.get(*l).copied().unwrap_or(0))).collect(),
            total: None,
        },
        CardBudget::Total(n) => Allowance {
            per_generator: vec![None; labels.len()],
            total: Some(*n),
        },
    }
}

/// Cards for one more than each move of a shortest solution, or of
/// `fallback` when no shortest solution is found within the search cap.
fn derived_budget(game: &Game, instance: &Instance, fallback: Option<&Word>) -> Result<CardBudget, GameError> {
    let target = instance.target.as_ref().expect("factorization games have targets");
    let opts = SearchOptions {
        max_depth: None,
        node_cap: DERIVED_CAP,
    };
    let found = match target {
        Target::Config { configuration } => factorize(&game.space, &instance.start, configuration, opts),
        Target::AnyOf { goals } => {
            factorize_to(&game.space, &instance.start, |b| goals.iter().any(|g| g.bytes() == b), opts).map(|r| r.0)
        }
    };
    let word = match (found, fallback) {
        (Ok(w), _) => w,
        (Err(SolverError::BudgetExceeded), Some(w)) => w.clone(),
        (Err(e), _) => return Err(e.into()),
    };
    let counts = word.label_counts();
    Ok(CardBudget::PerGenerator(
        game.space
            .player_labels()
            .into_iter()
            .map(|l| (l.to_string(), counts.get(l).copied().unwrap_or(0) + 1))
            .collect(),
    ))
}

/// In spaces too large to partition, a target a short walk away from the
/// start, with the walk as a known solution.
fn walked_instance(game: &Game, spec: &GameSpec, rng: &mut crate::rng::GameRng) -> Result<Option<(Instance, Word)>, GameError> {
    let d = &game.defaults;
    let a = spec.archetype;
    let sampled_target = d.target.is_none() && (d.goals.is_empty() || a != Archetype::Factorization);
    let plays = matches!(a, Archetype::Factorization | Archetype::Combination | Archetype::RevealedCombination);
    if !plays || !sampled_target || game.partition().is_some() {
        return Ok(None);
    }
    let start = match &d.start {
        Some(s) => s.clone(),
        None => sample(game, rng)?,
    };
    let (word, target) = game.random_walk(&start, CONSTRAINED_WALK_STEPS, rng);
    let instance = Instance {
        start,
        target: Some(Target::Config { configuration: target }),
        program: None,
        answer: None,
    };
    Ok(Some((instance, word)))
}

fn draw_constrained(
    game: &Game,
    spec: &GameSpec,
    rng: &mut crate::rng::GameRng,
) -> Result<(Instance, Option<CardBudget>), GameError> {
    for _ in 0..CONSTRAINED_ATTEMPTS {
        let (instance, walk) = match walked_instance(game, spec, rng)? {
            Some((i, w)) => (i, Some(w)),
            None => (draw_instance(game, spec, rng)?, None),
        };
        let cards = match spec.budget.clone().or_else(|| game.defaults.budget.clone()) {
            Some(c) => c,
            // A known solution fits these cards by construction.
            None => {
                let cards = derived_budget(game, &instance, walk.as_ref())?;
                return Ok((instance, Some(cards)));
            }
        };
        let target = instance.target.clone().expect("constrained games have targets");
        let found = factorize_within(
            &game.space,
            &instance.start,
            |b| target.contains(&Config::from(b)),
            &allowance(game, &cards),
            VALIDATION_CAP,
        )?;
        if found.is_some() {
            return Ok((instance, Some(cards)));
        }
        if game.defaults.start.is_some() && (game.defaults.target.is_some() || !game.defaults.goals.is_empty()) {
            break;
        }
    }
    Err(GameError::InvalidSpec("no instance is solvable with the dealt cards".into()))
}
