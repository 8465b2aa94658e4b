// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Starts the solve service on a free local port and talks to it over
//! plain HTTP.

use std::time::Duration;

use nash_explorer::service::{serve, ServiceConfig};
use serde_json::{json, Value};
use tokio::io::{AsyncReadExt, AsyncWriteExt};
use tokio::net::{TcpListener, TcpStream};

async fn request(addr: &str, method: &str, path: &str, body: Option<&Value>) -> std::io::Result<(u16, Value)> {
    let payload = body.map(Value::to_string).unwrap_or_default();
    let mut s = TcpStream::connect(addr).await?;
    let head = format!(
        "{method} {path} HTTP/1.1\r\nHost: {addr}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n",
        payload.len()
    );
    s.write_all(head.as_bytes()).await?;
    s.write_all(payload.as_bytes()).await?;
    let mut raw = String::new();
    s.read_to_string(&mut raw).await?;
    let code = raw[9..12].parse().unwrap_or(0);
    let body = raw.split_once("\r\n\r\n").map(|(_, b)| b).unwrap_or("");
    Ok((code, serde_json::from_str(body).unwrap_or(Value::Null)))
}

#[tokio::main]
async fn main() -> std::io::Result<()> {
    let listener = TcpListener::bind("127.0.0.1:0").await?;
    let addr = listener.local_addr()?.to_string();
    let config = ServiceConfig {
        workers: 2,
        timeout: Duration::from_secs(30),
    };
    let (stop, stopped) = tokio::sync::oneshot::channel::<()>();
    let server = tokio::spawn(serve(listener, config, async {
        let _ = stopped.await;
    }));

    let game = "rows: T B\ncols: l r\n5 3\n6 4\n\n2 1\n3 4\n";
    let (code, body) = request(&addr, "POST", "/api/solve", Some(&json!({"game": game, "algorithm": "enum", "session": "demo"}))).await?;
    println!("solve -> {code}\n{}", body["report_text"].as_str().unwrap_or(""));
    println!("structured: {}", body["structured"]);

    let (code, body) = request(&addr, "POST", "/api/convert", Some(&json!({"game": game, "target": "xml"}))).await?;
    println!("convert -> {code}\n{}", body["text"].as_str().unwrap_or(""));

    let (code, body) = request(&addr, "GET", "/api/health", None).await?;
    println!("health -> {code} {body}");

    let _ = stop.send(());
    server.await.map_err(std::io::Error::other)??;
    Ok(())
}
