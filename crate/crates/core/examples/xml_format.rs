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

//! Writes a tree with a chance move as XML and reads it back.

use nash_explorer::tree::{from_xml, to_xml, GameDocument, GameTree, Owner};
use nash_explorer::Rational;

fn main() -> nash_explorer::Result<()> {
    let mut t = GameTree::new();
    let root = t.root();
    let kids = t.add_children(root, 2)?;
    t.assign_owner(root, Owner::Chance)?;
    t.set_chance_prob(root, 0, Rational::frac(1, 3))?;
    t.add_children(kids[0], 2)?;
    t.assign_owner(kids[0], Owner::Player(1))?;
    t.add_children(kids[1], 2)?;
    t.assign_owner(kids[1], Owner::Player(2))?;
    t.default_payoffs()?;
    t.rename_player(1, "Alice")?;
    t.set_setting("orientation", "vertical");

    let xml = to_xml(&t);
    print!("{xml}");
    let back = from_xml(&xml)?;
    assert_eq!(back, GameDocument::Tree(t));
    println!("read back an identical tree");
    Ok(())
}
