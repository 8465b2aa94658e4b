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

//! Components of equilibria as maximal cliques, and a check that mixing
//! inside a clique stays an equilibrium.

use nash_explorer::enumeration::enumerate_extreme_equilibria;
use nash_explorer::components::connected_components;
use nash_explorer::report::render_clique;
use nash_explorer::strategic::{BimatrixGame, MixedStrategy};
use nash_explorer::Rational;

fn main() -> nash_explorer::Result<()> {
    // The commitment game in strategic form.
    let game = BimatrixGame::from_i64(&[vec![5, 5, 3, 3], vec![6, 4, 6, 4]], &[vec![2, 2, 1, 1], vec![3, 4, 3, 4]])?;
    let eqs = enumerate_extreme_equilibria(&game)?;
    for (k, c) in connected_components(&eqs).iter().enumerate() {
        println!("component {}:", k + 1);
        for clique in &c.cliques {
            println!("  {}", render_clique(clique));
            // Average the player-2 strategies of the clique.
            let ys: Vec<&MixedStrategy> = eqs.iter().filter(|e| clique.right.contains(&e.idx2)).map(|e| &e.y).collect();
            let n = Rational::from_integer(ys.len() as i64);
            let avg: Vec<Rational> = (0..game.cols()).map(|j| ys.iter().map(|y| y.probs[j].clone()).sum::<Rational>() / &n).collect();
            let x = &eqs.iter().find(|e| clique.left.contains(&e.idx1)).expect("clique member").x;
            let y = MixedStrategy::new(2, avg)?;
            assert!(game.is_equilibrium(x, &y));
            println!("  midpoint of player 2's side is an equilibrium: {:?}", y.probs.iter().map(ToString::to_string).collect::<Vec<_>>());
        }
    }
    Ok(())
}
