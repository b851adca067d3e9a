//! HTTP API over sessions. Bodies are parsed by hand so malformed input is a
//! 400 with a JSON error body rather than the framework's default.

use std::collections::{BTreeMap, HashMap};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tower_http::services::ServeDir;

use semitotal::catalog::{catalog, catalog_keys, CatalogInfo};
use semitotal::oracle::{Cap, Oracle, OracleCache, Query as OracleQuery};
use semitotal::search::Goal;
use semitotal::{Color, Graph, GraphJson};

use crate::error::{AppError, AppResult};
use crate::ops::{self, build_subject, ColoringSpec, EdgeInput, PathInput, ReduceParams};
use crate::session::Session;

type Shared = Arc<Mutex<Session>>;

#[derive(Default)]
pub struct AppState {
    sessions: Mutex<BTreeMap<String, Shared>>,
    next_id: AtomicU64,
    persist: Option<PathBuf>,
    oracle_cache: Option<PathBuf>,
}

#[derive(Debug, Clone, Default)]
pub struct ServerConfig {
    pub static_dir: Option<PathBuf>,
    pub persist_dir: Option<PathBuf>,
    pub oracle_cache: Option<PathBuf>,
}

impl AppState {
    /// Creates the state, reloading any sessions saved under the persist
    /// directory. Files that no longer replay are skipped.
    pub fn new(persist: Option<PathBuf>, oracle_cache: Option<PathBuf>) -> AppResult<Self> {
        let state = AppState {
            persist,
            oracle_cache,
            ..Default::default()
        };
        if let Some(dir) = &state.persist {
            std::fs::create_dir_all(dir).map_err(semitotal::Error::from)?;
            let mut max = 0;
            let entries = std::fs::read_dir(dir).map_err(semitotal::Error::from)?;
            for entry in entries.flatten() {
                let p = entry.path();
                if p.extension().and_then(|e| e.to_str()) != Some("json") {
                    continue;
                }
                match Session::load(&p) {
                    Ok(s) => {
                        if let Some(n) = s.id.strip_prefix('s').and_then(|n| n.parse::<u64>().ok()) {
                            max = max.max(n);
                        }
                        state.sessions.lock().unwrap().insert(s.id.clone(), Arc::new(Mutex::new(s)));
                    }
                    Err(e) => eprintln!("skipping {}: {e}", p.display()),
                }
            }
            state.next_id.store(max, Ordering::SeqCst);
        }
        Ok(state)
    }

    fn session(&self, id: &str) -> AppResult<Shared> {
        self.sessions
            .lock()
            .unwrap()
            .get(id)
            .cloned()
            .ok_or_else(|| AppError::UnknownSession(id.to_string()))
    }

    fn persist(&self, s: &Session) -> AppResult<()> {
        if let Some(dir) = &self.persist {
            s.save(dir)?;
        }
        Ok(())
    }
}

/// A rendered JSON or text response.
struct Reply {
    status: StatusCode,
    body: String,
    content_type: &'static str,
}

impl Reply {
    fn json<T: Serialize>(value: &T) -> Self {
        Reply {
            status: StatusCode::OK,
            body: ops::render(value),
            content_type: "application/json",
        }
    }

    fn created(mut self) -> Self {
        self.status = StatusCode::CREATED;
        self
    }
}

impl IntoResponse for Reply {
    fn into_response(self) -> Response {
        (self.status, [(header::CONTENT_TYPE, self.content_type)], self.body).into_response()
    }
}

impl IntoResponse for AppError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status()).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, [(header::CONTENT_TYPE, "application/json")], ops::render(&self.body())).into_response()
    }
}

type Handler = Result<Reply, AppError>;

fn parse_body<T: DeserializeOwned>(body: &Bytes) -> AppResult<T> {
    let text = if body.is_empty() { &b"{}"[..] } else { &body[..] };
    serde_json::from_slice(text).map_err(|e| AppError::Malformed(format!("malformed request body: {e}")))
}

fn parse_param<T: std::str::FromStr>(q: &HashMap<String, String>, key: &str) -> AppResult<Option<T>> {
    match q.get(key) {
        None => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|_| AppError::Malformed(format!("bad query parameter `{key}={v}`"))),
    }
}

/// Runs `f` on the session off the async runtime, then saves it.
async fn with_session<T, F>(state: Arc<AppState>, id: String, f: F) -> AppResult<T>
where
    T: Send + 'static,
    F: FnOnce(&mut Session) -> AppResult<T> + Send + 'static,
{
    let shared = state.session(&id)?;
    tokio::task::spawn_blocking(move || {
        let mut s = shared.lock().unwrap_or_else(|p| p.into_inner());
        let before = s.version();
        let out = f(&mut s)?;
        if s.version() != before {
            state.persist(&s)?;
        }
        Ok(out)
    })
    .await
    .map_err(|e| AppError::Conflict(format!("worker failed: {e}")))?
}

pub fn router(state: Arc<AppState>, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/health", get(|| async { Reply::json(&serde_json::json!({"ok": true})) }))
        .route("/catalog", get(list_catalog))
        .route("/catalog/{key}", get(catalog_entry))
        .route("/oracle", post(oracle))
        .route("/sessions", get(list_sessions).post(create_session))
        .route("/sessions/{id}", get(get_session).delete(delete_session))
        .route("/sessions/{id}/listing", get(listing))
        .route("/sessions/{id}/validate", get(validate))
        .route("/sessions/{id}/codes", get(codes))
        .route("/sessions/{id}/mcaps", get(mcaps))
        .route("/sessions/{id}/swap", post(swap))
        .route("/sessions/{id}/flip", post(flip))
        .route("/sessions/{id}/undo", post(undo))
        .route("/sessions/{id}/redo", post(redo))
        .route("/sessions/{id}/auto", post(auto))
        .route("/sessions/{id}/trace", get(trace))
        .route("/sessions/{id}/export", get(export))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

pub async fn serve(addr: SocketAddr, config: ServerConfig) -> AppResult<()> {
    let state = Arc::new(AppState::new(config.persist_dir, config.oracle_cache)?);
    let app = router(state, config.static_dir);
    let listener = tokio::net::TcpListener::bind(addr).await.map_err(semitotal::Error::from)?;
    eprintln!("listening on http://{}", listener.local_addr().map_err(semitotal::Error::from)?);
    axum::serve(listener, app).await.map_err(semitotal::Error::from)?;
    Ok(())
}

async fn list_catalog() -> Handler {
    let infos: Vec<CatalogInfo> = catalog_keys()
        .iter()
        .filter_map(|k| catalog(k).ok())
        .map(|e| e.info())
        .collect();
    Ok(Reply::json(&infos))
}

#[derive(Serialize)]
struct EntryOut {
    #[serde(flatten)]
    info: CatalogInfo,
    graph: GraphJson,
    hamilton: Option<Vec<usize>>,
}

async fn catalog_entry(Path(key): Path<String>) -> Handler {
    let e = catalog(&key).map_err(|err| match err {
        semitotal::Error::UnknownCatalogKey(k) => AppError::NotFound(format!("unknown catalog key `{k}`")),
        other => other.into(),
    })?;
    Ok(Reply::json(&EntryOut {
        info: e.info(),
        graph: e.graph.to_json(),
        hamilton: e.hamilton.map(|h| h.cycle),
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OracleBody {
    query: String,
    #[serde(default)]
    catalog: Option<String>,
    #[serde(default)]
    graph: Option<GraphJson>,
    #[serde(default)]
    cap: Option<usize>,
    #[serde(default)]
    consent: bool,
}

async fn oracle(State(state): State<Arc<AppState>>, body: Bytes) -> Handler {
    let b: OracleBody = parse_body(&body)?;
    let query: OracleQuery = b.query.parse()?;
    let graph: Graph = match (&b.catalog, &b.graph) {
        (Some(k), None) => catalog(k)?.graph.as_ref().clone(),
        (None, Some(g)) => Graph::from_json(g)?,
        _ => return Err(AppError::Usage("give exactly one of `catalog` or `graph`".into())),
    };
    let cap = match b.cap {
        Some(c) => Cap::new(c, b.consent)?,
        None => Cap::default(),
    };
    let mut oracle = Oracle::new(cap);
    if let Some(dir) = &state.oracle_cache {
        oracle = oracle.with_cache(OracleCache::new(dir.clone())?);
    }
    let out = tokio::task::spawn_blocking(move || oracle.query(query, &graph))
        .await
        .map_err(|e| AppError::Conflict(format!("worker failed: {e}")))??;
    Ok(Reply::json(&out))
}

async fn list_sessions(State(state): State<Arc<AppState>>) -> Handler {
    let ids: Vec<String> = state.sessions.lock().unwrap().keys().cloned().collect();
    Ok(Reply::json(&ids))
}

async fn create_session(State(state): State<Arc<AppState>>, body: Bytes) -> Handler {
    let spec: ColoringSpec = parse_body(&body)?;
    let subject = tokio::task::spawn_blocking(move || build_subject(&spec, true))
        .await
        .map_err(|e| AppError::Conflict(format!("worker failed: {e}")))??;
    let id = format!("s{}", state.next_id.fetch_add(1, Ordering::SeqCst) + 1);
    let session = Session::new(id.clone(), subject);
    state.persist(&session)?;
    let out = session.summary();
    state.sessions.lock().unwrap().insert(id, Arc::new(Mutex::new(session)));
    Ok(Reply::json(&out).created())
}

async fn get_session(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Handler {
    let out = with_session(state, id, |s| Ok(s.summary())).await?;
    Ok(Reply::json(&out))
}

async fn delete_session(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Handler {
    let removed = state.sessions.lock().unwrap().remove(&id);
    if removed.is_none() {
        return Err(AppError::UnknownSession(id));
    }
    if let Some(dir) = &state.persist {
        Session::remove(dir, &id);
    }
    Ok(Reply::json(&serde_json::json!({ "deleted": id })))
}

async fn listing(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Handler {
    let out = with_session(state, id, |s| Ok(ops::listing_out(s.current(), &s.subject.label))).await?;
    Ok(Reply::json(&out))
}

async fn validate(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Handler {
    let out = with_session(state, id, |s| Ok(ops::validate_out(s.current()))).await?;
    Ok(Reply::json(&out))
}

async fn codes(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Handler {
    let out = with_session(state, id, |s| Ok(ops::codes_out(s.current()))).await?;
    Ok(Reply::json(&out))
}

async fn mcaps(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(q): Query<HashMap<String, String>>,
) -> Handler {
    let c0: Option<Color> = parse_param(&q, "c0")?;
    let c1: Option<Color> = parse_param(&q, "c1")?;
    let pair = match (c0, c1) {
        (Some(a), Some(b)) => Some((a, b)),
        (None, None) => None,
        _ => return Err(AppError::Usage("give both `c0` and `c1`, or neither".into())),
    };
    let out = with_session(state, id, move |s| ops::mcaps_out(s.current(), pair)).await?;
    Ok(Reply::json(&out))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SwapBody {
    path: PathInput,
}

async fn swap(State(state): State<Arc<AppState>>, Path(id): Path<String>, body: Bytes) -> Handler {
    let b: SwapBody = parse_body(&body)?;
    let out = with_session(state, id, move |s| s.swap(&b.path)).await?;
    Ok(Reply::json(&out))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FlipBody {
    edge: EdgeInput,
}

async fn flip(State(state): State<Arc<AppState>>, Path(id): Path<String>, body: Bytes) -> Handler {
    let b: FlipBody = parse_body(&body)?;
    let out = with_session(state, id, move |s| s.flip(b.edge)).await?;
    Ok(Reply::json(&out))
}

async fn undo(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Handler {
    let out = with_session(state, id, |s| s.undo()).await?;
    Ok(Reply::json(&out))
}

async fn redo(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Handler {
    let out = with_session(state, id, |s| s.redo()).await?;
    Ok(Reply::json(&out))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AutoBody {
    #[serde(default)]
    goal: Option<String>,
    #[serde(default)]
    budget: Option<usize>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    max_steps: Option<usize>,
}

async fn auto(State(state): State<Arc<AppState>>, Path(id): Path<String>, body: Bytes) -> Handler {
    let b: AutoBody = parse_body(&body)?;
    let goal = match &b.goal {
        Some(g) => g.parse()?,
        None => Goal::Tc,
    };
    let params = ReduceParams {
        goal,
        budget: b.budget,
        max_steps: b.max_steps,
        seed: b.seed,
    };
    let out = with_session(state, id, move |s| s.auto(&params)).await?;
    Ok(Reply::json(&out))
}

async fn trace(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Handler {
    let out = with_session(state, id, |s| Ok(s.trace().to_json())).await?;
    Ok(Reply::json(&out))
}

async fn export(
    State(state): State<Arc<AppState>>,
    Path(id): Path<String>,
    Query(q): Query<HashMap<String, String>>,
) -> Handler {
    let format = q.get("format").map(String::as_str).unwrap_or("json").to_string();
    match format.as_str() {
        "json" => {
            let out = with_session(state, id, |s| Ok(s.subject.coloring_json(s.current()))).await?;
            Ok(Reply::json(&out))
        }
        "dot" => {
            let body = with_session(state, id, |s| {
                Ok(semitotal::dot::coloring_to_dot(s.current(), Some(&s.subject.label), None))
            })
            .await?;
            Ok(Reply {
                status: StatusCode::OK,
                body,
                content_type: "text/vnd.graphviz",
            })
        }
        other => Err(AppError::Malformed(format!("unknown export format `{other}`"))),
    }
}
