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

//! Lemke's method from a prior, on a strategic-form game and on the
//! sequence form of a tree.

use nash_explorer::path::{lemke_prior, lemke_sequence, random_plan, random_prior};
use nash_explorer::report::{render_behavior, RenderMode};
use nash_explorer::sequence::SequenceForm;
use nash_explorer::strategic::BimatrixGame;
use nash_explorer::tree::{GameTree, Owner};
use nash_explorer::{CancelToken, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> nash_explorer::Result<()> {
    let cancel = CancelToken::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    // A coordination game: the prior decides which equilibrium is reached.
    let game = BimatrixGame::from_i64(&[vec![3, 0], vec![0, 2]], &[vec![3, 0], vec![0, 2]])?;
    for _ in 0..4 {
        let (xp, yp) = (random_prior(&mut rng, 2), random_prior(&mut rng, 2));
        let eq = lemke_prior(&game, &xp, &yp, &cancel)?;
        println!("prior ({}, {}) -> x = ({}, {})", xp[0], yp[0], eq.x.probs[0], eq.x.probs[1]);
    }

    // The commitment tree, solved without building its strategic form.
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
    let sf = SequenceForm::new(&t)?;
    let (xp, yp) = (random_plan(&sf, 1, &mut rng), random_plan(&sf, 2, &mut rng));
    let eq = lemke_sequence(&sf, &xp, &yp, &cancel)?;
    print!("{}", render_behavior(&t, &eq.behavior1, &eq.behavior2, (&eq.u, &eq.v), eq.pivots, RenderMode::Rational));
    Ok(())
}
