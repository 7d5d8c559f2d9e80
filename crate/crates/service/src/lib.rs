//! HTTP/JSON service over the ECN engine: evaluation, move listing, best
//! moves and in-memory play sessions against the engine.

pub mod api;
pub mod engine;
mod error;
mod schema;
mod sessions;

use std::cell::RefCell;
use std::net::SocketAddr;
use std::sync::Arc;
use std::time::Duration;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{HeaderValue, StatusCode};
use axum::routing::{get, post};
use axum::{Json, Router};
use ecn_core::reductions::catalog;
use ecn_core::{apply_move, Budget, Move, Position, Resolver, Ruleset};
use serde::de::DeserializeOwned;
use thread_local::ThreadLocal;
use tower_http::cors::{AllowOrigin, Any, CorsLayer};

use api::*;
pub use error::{ApiError, ApiResult};
use sessions::{Session, Sessions};

/// Moves per `/moves` page.
pub const PAGE_SIZE: usize = 500;

#[derive(Clone, Debug)]
pub struct Config {
    pub budget: Budget,
    pub session_ttl: Duration,
    /// `None` allows any origin.
    pub cors_origin: Option<String>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            budget: Budget::DEFAULT,
            session_ttl: Duration::from_secs(3600),
            cors_origin: None,
        }
    }
}

struct AppState {
    budget: Budget,
    resolvers: ThreadLocal<RefCell<Resolver>>,
    sessions: Sessions,
}

type Shared = Arc<AppState>;

impl AppState {
    /// Runs engine work on the blocking pool with that thread's resolver.
    async fn compute<T: Send + 'static>(
        self: &Arc<Self>,
        f: impl FnOnce(&mut Resolver) -> ApiResult<T> + Send + 'static,
    ) -> ApiResult<T> {
        let state = self.clone();
        tokio::task::spawn_blocking(move || {
            let cell = state.resolvers.get_or(|| RefCell::new(Resolver::new(state.budget)));
            f(&mut cell.borrow_mut())
        })
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
    }
}

pub fn router(config: Config) -> Router {
    let cors = match &config.cors_origin {
        Some(o) => match HeaderValue::from_str(o) {
            Ok(v) => CorsLayer::new().allow_origin(AllowOrigin::exact(v)),
            Err(_) => CorsLayer::new(),
        },
        None => CorsLayer::new().allow_origin(Any),
    }
    .allow_methods(Any)
    .allow_headers(Any);
    let state = Arc::new(AppState {
        budget: config.budget,
        resolvers: ThreadLocal::new(),
        sessions: Sessions::new(config.session_ttl),
    });
    Router::new()
        .route("/rulesets", get(rulesets))
        .route("/evaluate", post(evaluate))
        .route("/moves", post(moves))
        .route("/bestmove", post(bestmove))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/move", post(human_move))
        .route("/sessions/{id}/engine-move", post(engine_move))
        .route("/schema", get(schema::schema))
        .layer(cors)
        .with_state(state)
}

pub async fn serve(addr: SocketAddr, config: Config) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(config)).await
}

/// Malformed JSON of any kind is a 400 (axum's own extractor answers 422
/// for type errors, which this API reserves for budget failures).
fn body<T: DeserializeOwned>(bytes: &Bytes) -> ApiResult<T> {
    serde_json::from_slice(bytes).map_err(|e| ApiError::bad_request(format!("malformed request body: {e}")))
}

fn parse_position(ruleset: &str, position: &str) -> ApiResult<(Ruleset, Position)> {
    let r: Ruleset = ruleset.parse()?;
    let p: Position = position.parse()?;
    r.check_position(&p)?;
    Ok((r, p))
}

async fn rulesets() -> ApiResult<Json<Vec<RulesetEntry>>> {
    let entries = catalog(8)?
        .into_iter()
        .map(|(ruleset, res)| RulesetEntry {
            ruleset,
            resolution: res.tag().to_string(),
            detail: res.to_string(),
        })
        .collect();
    Ok(Json(entries))
}

async fn evaluate(State(st): State<Shared>, bytes: Bytes) -> ApiResult<Json<Evaluation>> {
    let req: PositionRequest = body(&bytes)?;
    let (r, p) = parse_position(&req.ruleset, &req.position)?;
    st.compute(move |res| {
        let (outcome, method) = res.outcome(&r, &p)?;
        let grundy = if method.is_oracle() { res.grundy(&r, &p).ok() } else { None };
        Ok(Json(Evaluation { outcome, method, grundy }))
    })
    .await
}

async fn moves(bytes: Bytes) -> ApiResult<Json<MovesPage>> {
    let req: MovesRequest = body(&bytes)?;
    let (r, p) = parse_position(&req.ruleset, &req.position)?;
    let offset = match &req.cursor {
        None => 0,
        Some(c) => c.parse::<usize>().map_err(|_| ApiError::bad_request(format!("bad cursor {c:?}")))?,
    };
    let succ = r.successors(&p)?;
    let total = succ.len();
    let end = (offset + PAGE_SIZE).min(total);
    let moves = succ
        .get(offset..end)
        .unwrap_or(&[])
        .iter()
        .map(|next| Ok(MoveView::new(&Move::between(&p, next)?, next.clone())))
        .collect::<ApiResult<Vec<_>>>()?;
    Ok(Json(MovesPage {
        total,
        moves,
        next_cursor: (end < total).then(|| end.to_string()),
    }))
}

async fn bestmove(State(st): State<Shared>, bytes: Bytes) -> ApiResult<Json<BestMove>> {
    let req: PositionRequest = body(&bytes)?;
    let (r, p) = parse_position(&req.ruleset, &req.position)?;
    st.compute(move |res| {
        let (outcome, _) = res.outcome(&r, &p)?;
        let best = match res.winning_move(&r, &p)? {
            Some(mv) => {
                let next = apply_move(&p, &mv)?;
                BestMove {
                    outcome,
                    mv: Some(MoveView::new(&mv, next.clone())),
                    position: Some(next),
                }
            }
            None => BestMove {
                outcome,
                mv: None,
                position: None,
            },
        };
        Ok(Json(best))
    })
    .await
}

async fn view(st: &Shared, session: &Session) -> ApiResult<SessionView> {
    let (r, p) = (session.ruleset.clone(), session.position.clone());
    let outcome = st.compute(move |res| Ok(res.outcome(&r, &p)?.0)).await?;
    Ok(session.view(outcome))
}

async fn create_session(State(st): State<Shared>, bytes: Bytes) -> ApiResult<(StatusCode, Json<SessionView>)> {
    let req: PositionRequest = body(&bytes)?;
    let (r, p) = parse_position(&req.ruleset, &req.position)?;
    let handle = st.sessions.create(r, p);
    let session = handle.lock().await;
    Ok((StatusCode::CREATED, Json(view(&st, &session).await?)))
}

async fn get_session(State(st): State<Shared>, Path(id): Path<String>) -> ApiResult<Json<SessionView>> {
    let handle = st.sessions.get(&id)?;
    let session = handle.lock().await;
    Ok(Json(view(&st, &session).await?))
}

async fn human_move(State(st): State<Shared>, Path(id): Path<String>, bytes: Bytes) -> ApiResult<Json<SessionView>> {
    let handle = st.sessions.get(&id)?;
    let req: MoveRequest = body(&bytes)?;
    let mv = Move::new(req.removals)?;
    let mut session = handle.lock().await;
    session.ruleset.check_move(&session.position, &mv)?;
    session.play(Player::Human, &mv)?;
    Ok(Json(view(&st, &session).await?))
}

async fn engine_move(State(st): State<Shared>, Path(id): Path<String>) -> ApiResult<Json<EngineReply>> {
    let handle = st.sessions.get(&id)?;
    let mut session = handle.lock().await;
    let (r, p) = (session.ruleset.clone(), session.position.clone());
    let chosen = st.compute(move |res| Ok(engine::choose(res, &r, &p)?)).await?;
    let Some((mv, _, choice)) = chosen else {
        return Err(ApiError::conflict("game over: no legal moves from the terminal position"));
    };
    let shown = session.play(Player::Engine, &mv)?;
    Ok(Json(EngineReply {
        choice,
        mv: shown,
        session: view(&st, &session).await?,
    }))
}
