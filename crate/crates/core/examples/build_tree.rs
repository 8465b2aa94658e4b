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

//! Builds a game tree by editing, then reads off its reduced strategic form.

use nash_explorer::report::render_strategic_form;
use nash_explorer::tree::{Edit, GameTree, Owner};
use nash_explorer::Rational;

fn main() -> nash_explorer::Result<()> {
    let mut t = GameTree::new();
    let root = t.root();
    let kids = t.add_children(root, 2)?;
    t.assign_owner(root, Owner::Player(1))?;
    for &k in &kids {
        t.add_children(k, 2)?;
        t.assign_owner(k, Owner::Player(2))?;
    }
    t.set_move_names(1, &["T", "B"])?;
    t.set_move_names(2, &["l", "r", "a", "b"])?;
    let q = |v: &[i64]| v.iter().map(|&k| Rational::from_integer(k)).collect::<Vec<_>>();
    t.set_payoffs(1, q(&[5, 3, 6, 4]))?;
    t.set_payoffs(2, q(&[2, 1, 3, 4]))?;
    print!("{}", render_strategic_form(&t.to_strategic_form()?));

    // Player 2 no longer sees the move: merge the two sets.
    let sets = t.player_infosets(2);
    t.apply(&Edit::MergeInfosets {
        first: sets[0],
        second: sets[1],
    })?;
    let g = t.to_strategic_form()?;
    println!("\nafter merging: {} x {}", g.rows(), g.cols());
    assert_eq!((g.rows(), g.cols()), (2, 2));
    Ok(())
}
