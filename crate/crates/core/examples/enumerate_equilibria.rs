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

//! All extreme equilibria of a bimatrix game, printed as a report.
//!
//! Run with `cargo run --example enumerate_equilibria`.

use nash_explorer::enumeration::EnumOptions;
use nash_explorer::report::{EnumerationReport, RenderMode};
use nash_explorer::strategic::{BimatrixGame, InputMode};

fn main() -> nash_explorer::Result<()> {
    let game = BimatrixGame::parse_text("rows: T B\ncols: l r\n5 3\n6 4\n\n2 1\n3 4\n", InputMode::General)?;
    let report = EnumerationReport::compute(&game, &EnumOptions::default())?;
    print!("{}", report.render(RenderMode::Both));

    // Only player 1's payoffs are needed for a symmetric game.
    let anti = BimatrixGame::parse_text("-1 0 0\n0 -1 0\n0 0 -1\n", InputMode::Symmetric)?;
    let report = EnumerationReport::compute(&anti, &EnumOptions::default())?;
    println!("\nanti-coordination game: {} extreme equilibria", report.equilibria.len());
    assert_eq!(report.equilibria.len(), 7);
    Ok(())
}
