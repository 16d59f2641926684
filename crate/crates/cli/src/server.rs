//! Local HTTP service for the browser front end.
//!
//! - `GET /healthz` answers `ok`.
//! - `GET /api/defaults` returns the default parameters, rule set and material table.
//! - `POST /api/generate` takes a generation request and returns
//!   `{"report": ..., "mesh": ...}`: 200 on a compliant ramp, 422 otherwise,
//!   400 when the request itself is invalid.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use rampgen_core::compliance::RuleSet;
use rampgen_core::export::{canonical_json, MaterialTable};
use rampgen_core::params::RampParams;
use serde_json::json;
use tower_http::cors::CorsLayer;
use tower_http::services::ServeDir;

use crate::request::GenerationRequest;

/// Largest accepted request body.
pub const BODY_LIMIT: usize = 8 << 20;

#[derive(Debug, Clone, Default)]
pub struct AppState {
    pub rules: RuleSet,
    pub materials: MaterialTable,
}

fn json_response(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn bad_request(msg: String) -> Response {
    json_response(StatusCode::BAD_REQUEST, json!({ "error": msg }).to_string())
}

async fn healthz() -> &'static str {
    "ok"
}

async fn defaults(State(state): State<Arc<AppState>>) -> Response {
    let body = canonical_json(&json!({
        "params": RampParams::default(),
        "rules": state.rules,
        "materials": state.materials,
    }));
    json_response(StatusCode::OK, body)
}

async fn generate(State(state): State<Arc<AppState>>, body: Bytes) -> Response {
    let Ok(text) = std::str::from_utf8(&body) else {
        return bad_request("malformed request: body is not UTF-8".into());
    };
    let prepared = match GenerationRequest::from_json(text).and_then(|r| r.prepare(None)) {
        Ok(p) => p,
        Err(e) => return bad_request(e.to_string()),
    };
    // Generation is CPU bound; keep it off the async workers.
    let run = tokio::task::spawn_blocking(move || prepared.run(&state.rules, &state.materials)).await;
    match run {
        Ok(outcome) => {
            let status = if outcome.score == 4 {
                StatusCode::OK
            } else {
                StatusCode::UNPROCESSABLE_ENTITY
            };
            json_response(status, outcome.response_body())
        }
        Err(e) => json_response(
            StatusCode::INTERNAL_SERVER_ERROR,
            json!({ "error": format!("generation panicked: {e}") }).to_string(),
        ),
    }
}

pub fn router(state: AppState, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/healthz", get(healthz))
        .route("/api/defaults", get(defaults))
        .route("/api/generate", post(generate))
        .layer(axum::extract::DefaultBodyLimit::max(BODY_LIMIT))
        .layer(CorsLayer::permissive())
        .with_state(Arc::new(state));
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Bind and serve until the process is interrupted.
pub async fn serve(addr: SocketAddr, state: AppState, static_dir: Option<PathBuf>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("rampgen listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state, static_dir))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
