//! HTTP annotation service.
//!
//! `GET /health` answers `ok`; `POST /tag` takes UTF-8 text and returns the
//! same TSV the `tag` command writes for that text.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;

use super::pipeline::Annotator;

pub const DEFAULT_BODY_LIMIT: usize = 1024 * 1024;

pub fn router(annotator: Arc<Annotator>, body_limit: usize) -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/tag", post(tag))
        .layer(DefaultBodyLimit::max(body_limit))
        .with_state(annotator)
}

async fn health() -> &'static str {
    "ok"
}

async fn tag(State(annotator): State<Arc<Annotator>>, body: Bytes) -> Response {
    if body.is_empty() {
        return (StatusCode::BAD_REQUEST, "empty body\n").into_response();
    }
    let Ok(text) = std::str::from_utf8(&body) else {
        return (StatusCode::BAD_REQUEST, "body is not valid UTF-8\n").into_response();
    };
    let tsv = annotator.text_to_tsv(text);
    (
        [(header::CONTENT_TYPE, "text/tab-separated-values; charset=utf-8")],
        tsv,
    )
        .into_response()
}

/// Serves until interrupted with Ctrl-C.
pub async fn serve(annotator: Arc<Annotator>, addr: SocketAddr, body_limit: usize) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(annotator, body_limit))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
