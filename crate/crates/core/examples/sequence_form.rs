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

//! The sequence form of a small tree and the translation between
//! realization plans and behavior strategies.

use nash_explorer::report::render_sequence_form;
use nash_explorer::sequence::{behavior_to_mixed, SequenceForm};
use nash_explorer::tree::{GameTree, Owner};
use nash_explorer::Rational;

fn main() -> nash_explorer::Result<()> {
    // Player 1 moves, player 2 answers without seeing it, then player 1
    // moves again after one of player 2's moves.
    let mut t = GameTree::new();
    let root = t.root();
    let top = t.add_children(root, 2)?;
    t.assign_owner(root, Owner::Player(1))?;
    let mut later = Vec::new();
    for &k in &top {
        let kids = t.add_children(k, 2)?;
        t.assign_owner(k, Owner::Player(2))?;
        later.push(kids[0]);
    }
    let p2 = t.player_infosets(2);
    t.merge_infosets(p2[0], p2[1])?;
    t.add_children(later[0], 2)?;
    t.assign_owner(later[0], Owner::Player(1))?;
    t.default_payoffs()?;

    let sf = SequenceForm::new(&t)?;
    print!("{}", render_sequence_form(&sf));
    println!("reduced strategic form: {} x {}", t.to_strategic_form()?.rows(), t.to_strategic_form()?.cols());

    // Player 1 plays A with probability 1/4 and then always C.
    let p1 = sf.player(1);
    let weight = |label: &str| match label {
        "A" | "AC" => Rational::frac(1, 4),
        "B" => Rational::frac(3, 4),
        _ => Rational::zero(),
    };
    let plan: Vec<Rational> = p1.labels.iter().map(|l| weight(l)).collect();
    assert!(p1.is_feasible(&plan));
    let b = sf.realization_to_behavior(1, &plan);
    let mixed = behavior_to_mixed(&t, &b)?;
    println!("as a mixed strategy: {:?}", mixed.probs.iter().map(ToString::to_string).collect::<Vec<_>>());
    assert_eq!(sf.behavior_to_realization(&b), plan);
    Ok(())
}
