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

use std::io;
use std::time::Duration;

use nash_explorer::cli;
use nash_explorer::CancelToken;

fn main() {
    let interrupt = CancelToken::new();
    let on_signal = interrupt.clone();
    // First interrupt stops the solver at its next pivot; exit anyway if
    // that takes too long (for instance while still reading input).
    std::thread::spawn(move || {
        let Ok(rt) = tokio::runtime::Builder::new_current_thread().enable_all().build() else {
            return;
        };
        rt.block_on(async {
            if tokio::signal::ctrl_c().await.is_ok() {
                on_signal.cancel();
                tokio::time::sleep(Duration::from_secs(2)).await;
                std::process::exit(130);
            }
        });
    });
    let code = cli::run(
        std::env::args_os(),
        &mut io::stdin().lock(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
        &interrupt,
    );
    std::process::exit(code);
}
