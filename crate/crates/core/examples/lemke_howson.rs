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

//! Lemke–Howson from every missing label of a random 8 x 8 game.

use nash_explorer::path::lemke_howson;
use nash_explorer::strategic::BimatrixGame;
use nash_explorer::CancelToken;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> nash_explorer::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut matrix = || (0..8).map(|_| (0..8).map(|_| rng.gen_range(0..20)).collect()).collect::<Vec<Vec<i64>>>();
    let (a, b) = (matrix(), matrix());
    let game = BimatrixGame::from_i64(&a, &b)?;
    let cancel = CancelToken::new();
    for label in 0..game.rows() + game.cols() {
        let eq = lemke_howson(&game, label, &cancel)?;
        assert!(game.is_equilibrium(&eq.x, &eq.y));
        let support = |s: &nash_explorer::strategic::MixedStrategy| s.support().iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(",");
        println!(
            "label {:>2}: {:>2} pivots, supports {{{}}} x {{{}}}, payoffs {} {}",
            label + 1,
            eq.pivots,
            support(&eq.x),
            support(&eq.y),
            eq.u,
            eq.v
        );
    }
    Ok(())
}
