//! Start the HTTP service on an ephemeral port, post one request, print the reply.
//!
//! For a long-running server use `upset-alttext serve --bind 127.0.0.1:8080`.

use upset_alttext::api::http::{router, DEFAULT_MAX_BODY_BYTES};
use upset_alttext::api::DescriptionResponse;

const REQUEST: &str = r#"{
  "data": {"sets": {"Cats": ["ann", "ben", "cal"], "Dogs": ["ben", "dot"], "Fish": ["cal", "dot", "eve"]}},
  "itemLabel": {"singular": "household", "plural": "households"},
  "title": "Pet ownership"
}"#;

#[tokio::main(flavor = "current_thread")]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await?;
    let addr = listener.local_addr()?;
    tokio::spawn(async move { axum::serve(listener, router(DEFAULT_MAX_BODY_BYTES)).await });

    let reply = tokio::task::spawn_blocking(move || {
        post(addr, "/api/v1/description?glossary=false", REQUEST)
    })
    .await??;
    let response: DescriptionResponse = serde_json::from_str(&reply)?;
    println!("engine {}", response.engine_version);
    println!("{}\n", response.short_description);
    print!("{}", response.long_description);
    Ok(())
}

fn post(addr: std::net::SocketAddr, path: &str, body: &str) -> std::io::Result<String> {
    use std::io::{Read, Write};
    let mut stream = std::net::TcpStream::connect(addr)?;
    write!(
        stream,
        "POST {path} HTTP/1.1\r\nHost: {addr}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    )?;
    let mut raw = String::new();
    stream.read_to_string(&mut raw)?;
    Ok(raw
        .split_once("\r\n\r\n")
        .map(|(_, b)| b.to_owned())
        .unwrap_or_default())
}
