//! Subcommands. [`run`] takes its streams as arguments so tests can drive
//! it without a terminal.

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use ludigroup_core::action::DEFAULT_NODE_CAP;
use ludigroup_core::algebra::Word;
use ludigroup_core::catalog::analyze::{analyze, AnalysisReport};
use ludigroup_core::catalog::definition::game_from_json;
use ludigroup_core::catalog::{self, GAME_IDS};
use ludigroup_core::game::{Archetype, CardBudget, Game, GameSpec, PlayerView, Session, Status, Submission, Variants};
use ludigroup_core::solver::{decide_solvable, factorize, SearchOptions, Solvability, SolverError};

use crate::store::SessionStore;

pub const DEFAULT_PORT: u16 = 8080;
pub const PORT_ENV: &str = "LUDIGROUP_PORT";

#[derive(Debug, Parser)]
#[command(name = "ludigroup", version, about = "Group-theory games: analysis, solving, play and a session service")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the catalog games.
    List,
    /// Report group order, orbits and identities of a game.
    Analyze {
        /// Catalog id or path to a game-definition JSON file.
        game: String,
        #[arg(long)]
        json: bool,
    },
    /// Print a shortest word from one configuration to another.
    Solve {
        game: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Largest number of configurations the search may visit.
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        max_nodes: usize,
    },
    /// Play a session in the terminal.
    Play {
        game: String,
        #[arg(long)]
        archetype: Option<Archetype>,
        /// blind, constrained or memory; repeat or separate with commas.
        #[arg(long = "variant", value_delimiter = ',')]
        variants: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the HTTP session service.
    Serve {
        /// Overridden by the LUDIGROUP_PORT environment variable.
        #[arg(long, default_value_t = DEFAULT_PORT)]
        port: u16,
        /// Directory keeping one JSON record per session.
        #[arg(long)]
        store: Option<PathBuf>,
        /// Extra game-definition files to serve.
        #[arg(long = "game-file")]
        game_files: Vec<PathBuf>,
    },
}

/// A catalog id, or a game-definition file when the argument names one.
pub fn load_game(arg: &str) -> Result<Arc<Game>, String> {
    let path = Path::new(arg);
    if arg.ends_with(".json") || path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{arg}: {e}"))?;
        return game_from_json(&text).map(Arc::new).map_err(|e| format!("{arg}: {e}"));
    }
    catalog::game(arg).map_err(|e| e.to_string())
}

pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(cli.command, input, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Usage problems come back as `Err` (exit 2); other outcomes pick their
/// own exit code.
fn execute(command: Command, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, String> {
    let io = |e: std::io::Error| e.to_string();
    match command {
        Command::List => {
            for id in GAME_IDS {
                let g = catalog::game(id).map_err(|e| e.to_string())?;
                writeln!(out, "{:<26} {:<26} {}", g.id, g.defaults.archetype, g.title).map_err(io)?;
            }
            Ok(0)
        }
        Command::Analyze { game, json } => {
            let g = load_game(&game)?;
            let report = analyze(&g);
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?).map_err(io)?;
            } else {
                write_report(out, &report).map_err(io)?;
            }
            Ok(0)
        }
        Command::Solve { game, from, to, max_nodes } => {
            let g = load_game(&game)?;
            let u0 = g.space.parse(&from).map_err(|e| format!("--from: {e}"))?;
            let uf = g.space.parse(&to).map_err(|e| format!("--to: {e}"))?;
            let opts = SearchOptions {
                max_depth: None,
                node_cap: max_nodes,
            };
            let result = match decide_solvable(&g.space, &u0, &uf, opts) {
                Ok(Solvability::Impossible) => Err(SolverError::NoSolution),
                Ok(Solvability::Solvable) => factorize(&g.space, &u0, &uf, opts),
                Err(e) => Err(e),
            };
            match result {
                Ok(word) => {
                    writeln!(out, "{word}").map_err(io)?;
                    Ok(0)
                }
                Err(SolverError::NoSolution) => {
                    writeln!(out, "MISSION IMPOSSIBLE").map_err(io)?;
                    Ok(1)
                }
                Err(SolverError::BudgetExceeded) => {
                    writeln!(err, "search budget exceeded ({max_nodes} configurations)").map_err(io)?;
                    Ok(1)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Play { game, archetype, variants, seed } => {
            let g = load_game(&game)?;
            let variants = Variants::parse_list(variants.iter().map(String::as_str)).map_err(|e| e.to_string())?;
            let spec = GameSpec::new(g.id.clone(), archetype.unwrap_or(g.defaults.archetype))
                .with_variants(variants)
                .with_seed(seed);
            let session = Session::new(g, spec).map_err(|e| e.to_string())?;
            play(session, input, out).map_err(io)?;
            Ok(0)
        }
        Command::Serve { port, store, game_files } => {
            let port = match std::env::var(PORT_ENV) {
                Ok(v) => v.trim().parse().map_err(|_| format!("{PORT_ENV}: bad port `{v}`"))?,
                Err(_) => port,
            };
            let mut extra = Vec::new();
            for f in &game_files {
                let text = std::fs::read_to_string(f).map_err(|e| format!("{}: {e}", f.display()))?;
                extra.push(game_from_json(&text).map_err(|e| format!("{}: {e}", f.display()))?);
            }
            let store = match store {
                Some(dir) => SessionStore::with_dir(dir, extra).map_err(|e| e.to_string())?,
                None => {
                    let s = SessionStore::in_memory();
                    extra.into_iter().for_each(|g| s.register_game(g));
                    s
                }
            };
            let rt = tokio::runtime::Runtime::new().map_err(io)?;
            rt.block_on(crate::api::serve(Arc::new(store), port)).map_err(io)?;
            Ok(0)
        }
    }
}

fn write_report(out: &mut dyn Write, r: &AnalysisReport) -> std::io::Result<()> {
    let or_dash = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
    writeln!(out, "game: {}", r.game)?;
    writeln!(out, "configurations: {}", or_dash(&r.configurations))?;
    writeln!(out, "generators: {}", r.generators)?;
    writeln!(out, "group order: {}", or_dash(&r.group_order))?;
    writeln!(out, "orbits: {}", or_dash(&r.orbit_count))?;
    if let Some(sizes) = &r.orbit_sizes {
        let sizes: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
        writeln!(out, "orbit sizes: {}", sizes.join(" "))?;
    }
    if let Some(f) = r.solvable_fraction {
        writeln!(out, "solvable fraction: {f:.6}")?;
    }
    writeln!(out, "orbits by index: {}", or_dash(&r.orbit_count_via_index))?;
    if let Some(n) = r.start_orbit_size {
        writeln!(out, "start orbit size: {n}")?;
    }
    for c in &r.identities {
        writeln!(out, "identity {}: {}", c.name, if c.holds { "holds" } else { "fails" })?;
    }
    if !r.not_computed.is_empty() {
        writeln!(out, "not computed: {}", r.not_computed.join(", "))?;
    }
    Ok(())
}

fn cards_text(cards: &CardBudget) -> String {
    match cards {
        CardBudget::PerGenerator(m) => m.iter().map(|(l, n)| format!("{l}×{n}")).collect::<Vec<_>>().join(" "),
        CardBudget::Total(n) => format!("{n} moves"),
    }
}

pub fn write_view(out: &mut dyn Write, v: &PlayerView) -> std::io::Result<()> {
    let status = serde_json::to_value(v.status).ok().and_then(|s| s.as_str().map(String::from)).unwrap_or_default();
    writeln!(out, "[{} · {} · {}]", v.game, v.archetype, status)?;
    if let Some(s) = &v.start {
        writeln!(out, "start:         {s}")?;
    }
    if let Some(c) = &v.configuration {
        writeln!(out, "configuration: {c}")?;
    }
    if let Some(t) = &v.target {
        writeln!(out, "target:        {t}")?;
    }
    if let Some(goals) = &v.goals {
        writeln!(out, "goals:         {}", goals.join(" | "))?;
    }
    if let Some(p) = &v.program {
        writeln!(out, "program:       {p}")?;
    }
    if let Some(c) = &v.cards {
        writeln!(out, "cards:         {}", cards_text(c))?;
    }
    if !v.revealed.is_empty() {
        writeln!(out, "revealed:      {}", v.revealed.join(" "))?;
    }
    writeln!(out, "moves:         {}", v.moves)?;
    if let Some(r) = &v.resolution {
        if let Some(a) = &r.answer {
            writeln!(out, "answer:        {a}")?;
        }
        if let Some(verdict) = r.verdict {
            writeln!(out, "verdict:       {verdict:?}")?;
        }
        if !r.trace.is_empty() {
            writeln!(out, "trace:         {}", r.trace.join(" → "))?;
        }
    }
    Ok(())
}

const PLAY_HELP: &str = "\
commands:
  <move>               play a move (interactive archetypes)
  undo                 take back the last move
  submit <word>        submit a whole word (blind variant)
  answer <config>      answer a calculation
  impossible           declare the target unreachable
  view | help | quit";

/// The terminal loop: one command per line until the session ends.
pub fn play(mut s: Session, input: &mut dyn BufRead, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "moves: {}", s.view().generators.join(" "))?;
    write_view(out, &s.view())?;
    let mut line = String::new();
    while s.status() == Status::InProgress {
        write!(out, "> ")?;
        out.flush()?;
        line.clear();
        if input.read_line(&mut line)? == 0 {
            break;
        }
        let text = line.trim();
        let (cmd, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        let result = match cmd {
            "" => continue,
            "quit" | "exit" => break,
            "help" => {
                writeln!(out, "{PLAY_HELP}")?;
                continue;
            }
            "view" => Ok(()),
            "undo" => s.undo(),
            "impossible" => s.declare_impossible().map(|_| ()),
            "answer" => s
                .submit(Submission::Configuration {
                    configuration: rest.trim().to_string(),
                })
                .map(|_| ()),
            "submit" => match rest.parse::<Word>() {
                Ok(word) => s.submit(Submission::Word { word }).map(|_| ()),
                Err(e) => {
                    writeln!(out, "error: {e}")?;
                    continue;
                }
            },
            label => s.play_move(label).map(|_| ()),
        };
        if let Err(e) = result {
            writeln!(out, "error: {e}")?;
            continue;
        }
        write_view(out, &s.view())?;
    }
    match s.status() {
        Status::Won => writeln!(out, "won")?,
        Status::Lost => writeln!(out, "lost")?,
        Status::InProgress => {}
    }
    Ok(())
}
