//! HTTP/JSON service over a shared workspace. Reads run concurrently;
//! every mutation takes the write lock, so writers are serialized.

use std::collections::HashMap;
use std::sync::Arc;

use axum::extract::{Path, Query, Request, State};
use axum::http::{header, StatusCode};
use axum::middleware::{self, Next};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::de::DeserializeOwned;
use serde_json::Value;
use tokio::sync::RwLock;

use crate::api::{self, render};
use crate::error::ApiError;
use crate::workspace::Workspace;

pub type Shared = Arc<RwLock<Workspace>>;

fn reply(result: Result<Value, ApiError>) -> Response {
    let (status, body) = match result {
        Ok(v) => (StatusCode::OK, render(&v)),
        Err(e) => (
            StatusCode::from_u16(e.http_status()).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR),
            render(&e.to_json()),
        ),
    };
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn parse<T: DeserializeOwned>(body: &str) -> Result<T, ApiError> {
    Ok(serde_json::from_str(body)?)
}

/// Runs a mutation under the write lock and persists the store on success.
async fn write<F>(state: &Shared, f: F) -> Response
where
    F: FnOnce(&mut Workspace) -> Result<Value, ApiError>,
{
    let mut ws = state.write().await;
    let result = f(&mut ws).and_then(|v| ws.save().map(|_| v));
    reply(result)
}

async fn units(State(s): State<Shared>, Path(id): Path<String>) -> Response {
    reply(api::unit(&*s.read().await, &id))
}

async fn unit_label(State(s): State<Shared>, Path(id): Path<String>) -> Response {
    reply(api::unit_label(&*s.read().await, &id))
}

async fn maps(State(s): State<Shared>) -> Response {
    reply(Ok(api::list_maps(&*s.read().await)))
}

async fn map(State(s): State<Shared>, Path(id): Path<String>) -> Response {
    reply(api::get_map(&*s.read().await, &id))
}

async fn junctions(State(s): State<Shared>, Path(id): Path<String>) -> Response {
    reply(api::junctions(&*s.read().await, &id))
}

async fn perspective(State(s): State<Shared>, Path(id): Path<String>, body: String) -> Response {
    let req: api::PerspectiveRequest = match parse(&body) {
        Ok(r) => r,
        Err(e) => return reply(Err(e)),
    };
    if req.persist {
        write(&s, |ws| api::persist_perspective_request(ws, &id, &req)).await
    } else {
        reply(api::perspective(&*s.read().await, &id, &req))
    }
}

async fn dsep(State(s): State<Shared>, body: String) -> Response {
    let ws = s.read().await;
    reply(parse(&body).and_then(|req| api::dsep(&ws, &req)))
}

async fn identify(State(s): State<Shared>, body: String) -> Response {
    let ws = s.read().await;
    reply(parse(&body).and_then(|req| api::identify(&ws, &req)))
}

async fn estimate(State(s): State<Shared>, body: String) -> Response {
    let ws = s.read().await;
    reply(parse(&body).and_then(|req| api::estimate(&ws, &req)))
}

async fn mediate(body: String) -> Response {
    reply(parse(&body).and_then(|req| api::mediate(&req)))
}

async fn whatif(State(s): State<Shared>, body: String) -> Response {
    let req: api::WhatifRequest = match parse(&body) {
        Ok(r) => r,
        Err(e) => return reply(Err(e)),
    };
    if req.record.is_some() {
        write(&s, |ws| api::whatif_record(ws, &req)).await
    } else {
        reply(api::whatif(&req))
    }
}

async fn ingest(State(s): State<Shared>, body: String) -> Response {
    let req: api::IngestRequest = match parse(&body) {
        Ok(r) => r,
        Err(e) => return reply(Err(e)),
    };
    write(&s, |ws| api::ingest(ws, &req)).await
}

async fn nanopub(State(s): State<Shared>, Path(id): Path<String>, Query(q): Query<HashMap<String, String>>) -> Response {
    reply(api::nanopub(&*s.read().await, &id, q.get("doi_prefix").map(String::as_str)))
}

async fn log_requests(req: Request, next: Next) -> Response {
    let line = format!("{} {}", req.method(), req.uri());
    let res = next.run(req).await;
    log::info!("{line} -> {}", res.status().as_u16());
    res
}

pub fn router(ws: Workspace) -> Router {
    router_shared(Arc::new(RwLock::new(ws)))
}

pub fn router_shared(state: Shared) -> Router {
    Router::new()
        .route("/units/{id}", get(units))
        .route("/units/{id}/label", get(unit_label))
        .route("/maps", get(maps))
        .route("/maps/{id}", get(map))
        .route("/maps/{id}/junctions", get(junctions))
        .route("/maps/{id}/perspective", post(perspective))
        .route("/dsep", post(dsep))
        .route("/identify", post(identify))
        .route("/estimate", post(estimate))
        .route("/mediate", post(mediate))
        .route("/whatif", post(whatif))
        .route("/ingest", post(ingest))
        .route("/nanopub/{id}", get(nanopub))
        .layer(middleware::from_fn(log_requests))
        .with_state(state)
}

/// Binds `listen_addr` and serves until interrupted.
pub fn serve_blocking(ws: Workspace) -> Result<(), ApiError> {
    let rt = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| ApiError::domain("RUNTIME_ERROR", e.to_string()))?;
    rt.block_on(async move {
        let addr = ws.config.listen_addr.clone();
        let listener = tokio::net::TcpListener::bind(&addr).await.map_err(|e| {
            let code = if e.kind() == std::io::ErrorKind::AddrInUse { "ADDRESS_IN_USE" } else { "BIND_ERROR" };
            ApiError::domain(code, format!("{addr}: {e}"))
        })?;
        log::info!("listening on {addr}");
        axum::serve(listener, router(ws))
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await
            .map_err(|e| ApiError::domain("SERVE_ERROR", e.to_string()))
    })
}
