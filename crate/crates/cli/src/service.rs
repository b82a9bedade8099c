//! Stateless HTTP JSON service. Each request is parsed and computed on a
//! blocking worker with nothing shared between requests.

use std::future::Future;

use axum::body::Bytes;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use tokio::net::TcpListener;

use curvecraft_core::io::problem::{parse_curve_problem, parse_interp_problem};
use curvecraft_core::Error;

use crate::compute::{self, classify, to_json, ErrorBody};

pub fn router() -> Router {
    Router::new()
        .route(
            "/api/bases",
            get(|| async { json(StatusCode::OK, to_json(&compute::bases_catalog())) }),
        )
        .route(
            "/api/aux",
            get(|| async { json(StatusCode::OK, to_json(&compute::aux_catalog())) }),
        )
        .route("/api/curve", post(curve))
        .route("/api/interpolate", post(interpolate))
        .fallback(|| async {
            let body = ErrorBody {
                code: "not_found",
                field: None,
                message: "no such endpoint".into(),
                value: None,
                bound: None,
                violations: vec![],
            };
            json(StatusCode::NOT_FOUND, to_json(&body))
        })
}

fn json(status: StatusCode, body: Vec<u8>) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn respond(outcome: Result<Vec<u8>, Error>) -> Response {
    match outcome {
        Ok(body) => json(StatusCode::OK, body),
        Err(e) => {
            let (status, body) = classify(&e);
            json(StatusCode::from_u16(status).expect("valid status"), to_json(&body))
        }
    }
}

async fn compute_blocking(work: impl FnOnce() -> Result<Vec<u8>, Error> + Send + 'static) -> Response {
    match tokio::task::spawn_blocking(work).await {
        Ok(outcome) => respond(outcome),
        Err(_) => json(
            StatusCode::INTERNAL_SERVER_ERROR,
            to_json(&ErrorBody {
                code: "internal",
                field: None,
                message: "computation aborted".into(),
                value: None,
                bound: None,
                violations: vec![],
            }),
        ),
    }
}

async fn curve(body: Bytes) -> Response {
    compute_blocking(move || {
        let problem = parse_curve_problem(&body)?;
        Ok(to_json(&compute::curve_polylines(&problem)?))
    })
    .await
}

async fn interpolate(body: Bytes) -> Response {
    compute_blocking(move || {
        let problem = parse_interp_problem(&body)?;
        Ok(to_json(&compute::interpolate(&problem)?.response))
    })
    .await
}

/// Serve until `shutdown` resolves; in-flight requests are completed first.
pub async fn serve(listener: TcpListener, shutdown: impl Future<Output = ()> + Send + 'static) -> std::io::Result<()> {
    axum::serve(listener, router()).with_graceful_shutdown(shutdown).await
}

async fn termination() {
    let ctrl_c = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    #[cfg(unix)]
    let term = async {
        match tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate()) {
            Ok(mut s) => {
                s.recv().await;
            }
            Err(_) => std::future::pending::<()>().await,
        }
    };
    #[cfg(not(unix))]
    let term = std::future::pending::<()>();
    tokio::select! {
        _ = ctrl_c => {},
        _ = term => {},
    }
}

pub fn serve_blocking(host: &str, port: u16) -> std::io::Result<()> {
    let runtime = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
    runtime.block_on(async {
        let listener = TcpListener::bind((host, port)).await?;
        eprintln!("listening on http://{}", listener.local_addr()?);
        serve(listener, termination()).await
    })
}
