//! Live sessions keyed by id, optionally mirrored to one JSON record per
//! session in a directory.
//!
//! A record holds the spec and the event log; loading replays it.

use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use ludigroup_core::catalog::{self, CatalogError};
use ludigroup_core::game::{Event, Game, GameError, GameSpec, PlayerView, Session, Status};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use uuid::Uuid;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("unknown game `{0}`")]
    UnknownGame(String),
    #[error("unknown session `{0}`")]
    UnknownSession(String),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("session store: {0}")]
    Io(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SessionRecord {
    pub id: String,
    pub spec: GameSpec,
    pub events: Vec<Event>,
    pub status: Status,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
    pub updated_at: u64,
}

struct Entry {
    session: Session,
    created_at: u64,
    updated_at: u64,
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

pub struct SessionStore {
    extra_games: RwLock<BTreeMap<String, Arc<Game>>>,
    dir: Option<PathBuf>,
    sessions: RwLock<HashMap<String, Arc<Mutex<Entry>>>>,
}

impl Default for SessionStore {
    fn default() -> Self {
        SessionStore::in_memory()
    }
}

impl SessionStore {
    pub fn in_memory() -> Self {
        SessionStore {
            extra_games: RwLock::new(BTreeMap::new()),
            dir: None,
            sessions: RwLock::new(HashMap::new()),
        }
    }

    /// A store writing through to `dir`, holding the sessions already saved
    /// there.
    pub fn with_dir(dir: impl Into<PathBuf>, extra_games: Vec<Game>) -> Result<Self, StoreError> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir).map_err(|e| StoreError::Io(format!("{}: {e}", dir.display())))?;
        let store = SessionStore {
            dir: Some(dir.clone()),
            ..SessionStore::in_memory()
        };
        for g in extra_games {
            store.register_game(g);
        }
        let entries = std::fs::read_dir(&dir).map_err(|e| StoreError::Io(e.to_string()))?;
        for entry in entries {
            let path = entry.map_err(|e| StoreError::Io(e.to_string()))?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("json") {
                continue;
            }
            let record = read_record(&path)?;
            let session = store.replay(&record)?;
            let entry = Entry {
                session,
                created_at: record.created_at,
                updated_at: record.updated_at,
            };
            store.sessions.write().unwrap().insert(record.id.clone(), Arc::new(Mutex::new(entry)));
        }
        Ok(store)
    }

    /// Makes a game from a definition file available under its id.
    pub fn register_game(&self, game: Game) {
        self.extra_games.write().unwrap().insert(game.id.clone(), Arc::new(game));
    }

    pub fn game(&self, id: &str) -> Result<Arc<Game>, StoreError> {
        if let Some(g) = self.extra_games.read().unwrap().get(id) {
            return Ok(g.clone());
        }
        catalog::game(id).map_err(|e| match e {
            CatalogError::UnknownGame(id) => StoreError::UnknownGame(id),
            other => StoreError::Io(other.to_string()),
        })
    }

    pub fn game_ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = catalog::GAME_IDS.iter().map(|s| s.to_string()).collect();
        ids.extend(self.extra_games.read().unwrap().keys().cloned());
        ids
    }

    pub fn create(&self, spec: GameSpec) -> Result<(String, PlayerView), StoreError> {
        let game = self.game(&spec.game)?;
        let session = Session::new(game, spec)?;
        let id = Uuid::new_v4().to_string();
        let t = now();
        let entry = Entry {
            session,
            created_at: t,
            updated_at: t,
        };
        let view = entry.session.view();
        self.save(&id, &entry)?;
        self.sessions.write().unwrap().insert(id.clone(), Arc::new(Mutex::new(entry)));
        Ok((id, view))
    }

    fn entry(&self, id: &str) -> Result<Arc<Mutex<Entry>>, StoreError> {
        self.sessions
            .read()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| StoreError::UnknownSession(id.to_string()))
    }

    /// Runs `f` on the session, one writer at a time, and saves it when the
    /// event log grew.
    pub fn update<T>(&self, id: &str, f: impl FnOnce(&mut Session) -> Result<T, GameError>) -> Result<T, StoreError> {
        let entry = self.entry(id)?;
        let mut entry = entry.lock().unwrap();
        let before = entry.session.events().len();
        let out = f(&mut entry.session)?;
        if entry.session.events().len() != before {
            entry.updated_at = now();
            self.save(id, &entry)?;
        }
        Ok(out)
    }

    pub fn read<T>(&self, id: &str, f: impl FnOnce(&Session) -> T) -> Result<T, StoreError> {
        let entry = self.entry(id)?;
        let entry = entry.lock().unwrap();
        Ok(f(&entry.session))
    }

    pub fn record(&self, id: &str) -> Result<SessionRecord, StoreError> {
        let entry = self.entry(id)?;
        let entry = entry.lock().unwrap();
        Ok(to_record(id, &entry))
    }

    /// Rebuilds a session from its record.
    pub fn replay(&self, record: &SessionRecord) -> Result<Session, StoreError> {
        let game = self.game(&record.spec.game)?;
        Ok(Session::replay(game, record.spec.clone(), &record.events)?)
    }

    fn save(&self, id: &str, entry: &Entry) -> Result<(), StoreError> {
        let Some(dir) = &self.dir else { return Ok(()) };
        let text = serde_json::to_string_pretty(&to_record(id, entry)).map_err(|e| StoreError::Io(e.to_string()))?;
        let tmp = dir.join(format!("{id}.json.tmp"));
        std::fs::write(&tmp, text).map_err(|e| StoreError::Io(e.to_string()))?;
        std::fs::rename(&tmp, dir.join(format!("{id}.json"))).map_err(|e| StoreError::Io(e.to_string()))
    }
}

fn to_record(id: &str, entry: &Entry) -> SessionRecord {
    SessionRecord {
        id: id.to_string(),
        spec: entry.session.spec().clone(),
        events: entry.session.events().to_vec(),
        status: entry.session.status(),
        created_at: entry.created_at,
        updated_at: entry.updated_at,
    }
}

pub fn read_record(path: &Path) -> Result<SessionRecord, StoreError> {
    let text = std::fs::read_to_string(path).map_err(|e| StoreError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| StoreError::Io(format!("{}: {e}", path.display())))
}
