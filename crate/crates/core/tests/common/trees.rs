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

//! Game trees used across test targets and a random generator for them.

use nash_explorer::tree::{GameTree, InfosetId, NodeId, Owner};

use rand::seq::SliceRandom;
use rand::Rng;

use super::{frac, q};

/// The player's own moves on the path to `node`, as (set, move index).
pub fn own_history(t: &GameTree, node: NodeId, player: usize) -> Vec<(InfosetId, usize)> {
    let mut out = Vec::new();
    let mut cur = node;
    while let Some(p) = t.node(cur).unwrap().parent() {
        let pn = t.node(p).unwrap();
        if pn.owner() == Owner::Player(player) {
            let k = pn.children().iter().position(|&c| c == cur).unwrap();
            out.push((pn.infoset().unwrap(), k));
        }
        cur = p;
    }
    out.reverse();
    out
}

/// Player 1 picks T or B, player 2 sees it and answers.
pub fn commitment() -> GameTree {
    let mut t = GameTree::new();
    let root = t.root();
    let kids = t.add_children(root, 2).unwrap();
    t.assign_owner(root, Owner::Player(1)).unwrap();
    for &k in &kids {
        t.add_children(k, 2).unwrap();
        t.assign_owner(k, Owner::Player(2)).unwrap();
    }
    t.set_move_names(1, &["T", "B"]).unwrap();
    t.set_move_names(2, &["l", "r", "a", "b"]).unwrap();
    t.set_payoffs(1, vec![q(5), q(3), q(6), q(4)]).unwrap();
    t.set_payoffs(2, vec![q(2), q(1), q(3), q(4)]).unwrap();
    t
}

/// The commitment game where player 2 misreads the move with
/// probability 1/100.
pub fn noisy_commitment() -> GameTree {
    let mut t = GameTree::new();
    let root = t.root();
    let top = t.add_children(root, 2).unwrap();
    t.assign_owner(root, Owner::Player(1)).unwrap();
    let mut signals = Vec::new();
    for &c in &top {
        signals.push(t.add_children(c, 2).unwrap());
        t.assign_owner(c, Owner::Chance).unwrap();
    }
    // Signal 0 reads "T", signal 1 reads "B".
    t.set_chance_prob(top[0], 0, frac(99, 100)).unwrap();
    t.set_chance_prob(top[1], 1, frac(99, 100)).unwrap();
    for s in &signals {
        for &n in s {
            t.add_children(n, 2).unwrap();
            t.assign_owner(n, Owner::Player(2)).unwrap();
        }
    }
    for (&n0, &n1) in signals[0].iter().zip(&signals[1]) {
        let a = t.node(n0).unwrap().infoset().unwrap();
        let b = t.node(n1).unwrap().infoset().unwrap();
        t.merge_infosets(a, b).unwrap();
    }
    t.set_move_names(1, &["T", "B"]).unwrap();
    t.set_move_names(2, &["l", "r", "a", "b"]).unwrap();
    t.set_payoffs(1, super::rats(&[5, 3, 5, 3, 6, 4, 6, 4])).unwrap();
    t.set_payoffs(2, super::rats(&[2, 1, 2, 1, 3, 4, 3, 4])).unwrap();
    t
}

/// Player 1 picks T (ending the game) or B, after which player 2 picks l or r.
pub fn threat() -> GameTree {
    let mut t = GameTree::new();
    let root = t.root();
    let kids = t.add_children(root, 2).unwrap();
    t.assign_owner(root, Owner::Player(1)).unwrap();
    t.add_children(kids[1], 2).unwrap();
    t.assign_owner(kids[1], Owner::Player(2)).unwrap();
    t.set_move_names(1, &["T", "B"]).unwrap();
    t.set_move_names(2, &["l", "r"]).unwrap();
    t.set_payoffs(1, super::rats(&[1, 0, 2])).unwrap();
    t.set_payoffs(2, super::rats(&[3, 0, 2])).unwrap();
    t
}

/// Player 1 chooses among A, B, C, D without seeing anything; after D he
/// chooses E or F. Player 2 answers A with a or b (then g or h after b),
/// B with c or d and C with e or f. Default names already match.
pub fn four_moves() -> GameTree {
    let mut t = GameTree::new();
    let root = t.root();
    let top = t.add_children(root, 4).unwrap();
    t.assign_owner(root, Owner::Player(1)).unwrap();
    for &c in &top[..3] {
        t.add_children(c, 2).unwrap();
        t.assign_owner(c, Owner::Player(2)).unwrap();
    }
    t.add_children(top[3], 2).unwrap();
    t.assign_owner(top[3], Owner::Player(1)).unwrap();
    let b = t.node(top[0]).unwrap().children()[1];
    t.add_children(b, 2).unwrap();
    t.assign_owner(b, Owner::Player(2)).unwrap();
    t.default_payoffs().unwrap();
    t
}

/// A random two-player tree with perfect recall. Information sets are formed
/// by merging nodes with equal own histories.
pub fn random_tree(rng: &mut impl Rng, max_nodes: usize, chance: bool) -> GameTree {
    let mut t = GameTree::new();
    let mut count = 1;
    while count < max_nodes {
        let leaves = t.leaves();
        let leaf = *leaves.choose(rng).unwrap();
        let k = if rng.gen_bool(0.15) { 1 } else { rng.gen_range(2..=3) };
        if count + k > max_nodes {
            break;
        }
        t.add_children(leaf, k).unwrap();
        count += k;
        if rng.gen_bool(0.1) {
            break;
        }
    }
    for id in t.nodes_bfs() {
        if t.node(id).unwrap().is_leaf() {
            continue;
        }
        let owner = match rng.gen_range(0..10) {
            0 | 1 if chance => Owner::Chance,
            0..=5 => Owner::Player(1),
            _ => Owner::Player(2),
        };
        t.assign_owner(id, owner).unwrap();
        if owner == Owner::Chance && rng.gen_bool(0.7) {
            let arity = t.node(id).unwrap().children().len();
            if arity > 1 {
                let p = frac(rng.gen_range(0..=10), 10);
                t.set_chance_prob(id, rng.gen_range(0..arity), p).unwrap();
            }
        }
    }
    let order = t.nodes_bfs();
    for (i, &id) in order.iter().enumerate() {
        let Owner::Player(p) = t.node(id).unwrap().owner() else { continue };
        let arity = t.node(id).unwrap().children().len();
        let hist = own_history(&t, id, p);
        for &other in &order[..i] {
            let on = t.node(other).unwrap();
            if on.owner() != Owner::Player(p) || on.children().len() != arity {
                continue;
            }
            let (h1, h2) = (t.node(other).unwrap().infoset().unwrap(), t.node(id).unwrap().infoset().unwrap());
            if h1 != h2 && own_history(&t, other, p) == hist && rng.gen_bool(0.6) {
                t.merge_infosets(h1, h2).unwrap();
                break;
            }
        }
    }
    for p in 1..=2 {
        for h in t.player_infosets(p) {
            if rng.gen_bool(0.2) {
                let n = t.infoset(h).unwrap().moves().len();
                t.apply(&nash_explorer::tree::Edit::SetMoveName {
                    infoset: h,
                    index: rng.gen_range(0..n),
                    label: format!("m{}", rng.gen_range(0..100)),
                })
                .unwrap();
            }
        }
    }
    for leaf in t.leaves() {
        for p in 1..=2 {
            let v = frac(rng.gen_range(-20..=20), rng.gen_range(1..=4));
            t.set_payoff(leaf, p, v).unwrap();
        }
    }
    t
}
