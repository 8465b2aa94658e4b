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

//! Perfect recall, reduced pure strategies and the reduced strategic form.

use std::collections::{BTreeMap, HashSet};

use super::{GameTree, InfosetId, NodeId, Owner};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::strategic::BimatrixGame;

/// A reduced pure strategy: one move per information set of the player, or
/// `None` where an earlier own move already excludes that set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedStrategy {
    pub player: usize,
    /// Information sets of the player in depth-first order.
    pub infosets: Vec<InfosetId>,
    pub choices: Vec<Option<usize>>,
}

impl ReducedStrategy {
    /// Concatenated move labels, `*` for unspecified sets.
    pub fn label(&self, tree: &GameTree) -> String {
        self.infosets
            .iter()
            .zip(&self.choices)
            .map(|(&h, c)| match c {
                Some(k) => tree.infoset(h).map(|s| s.moves()[*k].clone()).unwrap_or_default(),
                None => "*".to_string(),
            })
            .collect()
    }

    fn choice_at(&self, h: InfosetId) -> Option<usize> {
        let k = self.infosets.iter().position(|&x| x == h)?;
        self.choices[k]
    }
}

/// The player's own earlier moves as `(information set, move)` pairs.
pub(crate) type History = Vec<(InfosetId, usize)>;

impl GameTree {
    /// Own-move history of every node for `player`.
    pub(crate) fn histories(&self, player: usize) -> BTreeMap<NodeId, History> {
        let mut out = BTreeMap::new();
        let mut stack = vec![(self.root(), Vec::new())];
        while let Some((id, hist)) = stack.pop() {
            let n = self.node(id).expect("live");
            for (k, &c) in n.children().iter().enumerate() {
                let mut h: History = hist.clone();
                if n.owner() == Owner::Player(player) {
                    h.push((n.infoset().expect("player node"), k));
                }
                stack.push((c, h));
            }
            out.insert(id, hist);
        }
        out
    }

    /// True if all nodes of each information set of `player` share the same
    /// history of the player's own moves.
    pub fn check_perfect_recall(&self, player: usize) -> bool {
        let hist = self.histories(player);
        self.player_infosets(player).into_iter().all(|h| {
            let members = self.infoset(h).expect("live").members();
            members.iter().all(|m| hist[m] == hist[&members[0]])
        })
    }

    /// Number of pure strategies (one move at every information set).
    pub fn full_strategy_count(&self, player: usize) -> u128 {
        self.player_infosets(player)
            .iter()
            .map(|&h| self.infoset(h).expect("live").moves().len() as u128)
            .fold(1u128, u128::saturating_mul)
    }

    /// Reduced pure strategies, earlier information sets varying slowest.
    pub fn reduced_strategies(&self, player: usize) -> Result<Vec<ReducedStrategy>> {
        if !self.check_perfect_recall(player) {
            return Err(Error::ImperfectRecall(player));
        }
        let sets: Vec<InfosetId> = self
            .infosets_dfs()
            .into_iter()
            .filter(|&h| self.infoset(h).map(|s| s.player() == player).unwrap_or(false))
            .collect();
        let hist = self.histories(player);
        let required: Vec<History> = sets
            .iter()
            .map(|&h| hist[&self.infoset(h).expect("live").members()[0]].clone())
            .collect();
        let arity: Vec<usize> = sets.iter().map(|&h| self.infoset(h).expect("live").moves().len()).collect();
        let mut out = Vec::new();
        let mut choices: Vec<Option<usize>> = vec![None; sets.len()];
        fn rec(
            i: usize,
            sets: &[InfosetId],
            required: &[History],
            arity: &[usize],
            choices: &mut Vec<Option<usize>>,
            out: &mut Vec<Vec<Option<usize>>>,
        ) {
            if i == sets.len() {
                out.push(choices.clone());
                return;
            }
            let reachable = required[i].iter().all(|(h, k)| {
                let pos = sets.iter().position(|x| x == h).expect("own set");
                choices[pos] == Some(*k)
            });
            if reachable {
                for k in 0..arity[i] {
                    choices[i] = Some(k);
                    rec(i + 1, sets, required, arity, choices, out);
                }
            } else {
                choices[i] = None;
                rec(i + 1, sets, required, arity, choices, out);
            }
        }
        let mut raw = Vec::new();
        rec(0, &sets, &required, &arity, &mut choices, &mut raw);
        for c in raw {
            out.push(ReducedStrategy {
                player,
                infosets: sets.clone(),
                choices: c,
            });
        }
        Ok(out)
    }

    /// Expected payoffs when each player follows the given reduced strategy.
    pub fn expected_payoffs(&self, strategies: &[&ReducedStrategy]) -> Result<Vec<Rational>> {
        let mut total = vec![Rational::zero(); self.players().len()];
        let mut stack = vec![(self.root(), Rational::one())];
        while let Some((id, weight)) = stack.pop() {
            let n = self.node(id)?;
            if n.is_leaf() {
                for (t, p) in total.iter_mut().zip(n.payoffs()) {
                    *t += &weight * p;
                }
                continue;
            }
            match n.owner() {
                Owner::Unassigned => {
                    return Err(Error::InvalidGame(format!("node {} has no owner", id.0)));
                }
                Owner::Chance => {
                    for (&c, p) in n.children().iter().zip(n.chance_probs()) {
                        if !p.is_zero() {
                            stack.push((c, &weight * p));
                        }
                    }
                }
                Owner::Player(p) => {
                    let s = strategies
                        .iter()
                        .find(|s| s.player == p)
                        .ok_or_else(|| Error::InvalidGame(format!("no strategy for player {p}")))?;
                    let k = s
                        .choice_at(n.infoset().expect("player node"))
                        .ok_or_else(|| Error::Internal("reached an unspecified information set".into()))?;
                    stack.push((n.children()[k], weight));
                }
            }
        }
        Ok(total)
    }

    /// The reduced strategic form of a two-player tree. Strategy names are
    /// move tuples such as `lb`.
    pub fn to_strategic_form(&self) -> Result<BimatrixGame> {
        if self.players().len() != 2 {
            return Err(Error::Unsupported(format!(
                "strategic form needs exactly two players, the tree has {}",
                self.players().len()
            )));
        }
        self.check_assigned()?;
        let s1 = self.reduced_strategies(1)?;
        let s2 = self.reduced_strategies(2)?;
        let mut a = Vec::with_capacity(s1.len());
        let mut b = Vec::with_capacity(s1.len());
        for r in &s1 {
            let mut ra = Vec::with_capacity(s2.len());
            let mut rb = Vec::with_capacity(s2.len());
            for c in &s2 {
                let pay = self.expected_payoffs(&[r, c])?;
                ra.push(pay[0].clone());
                rb.push(pay[1].clone());
            }
            a.push(ra);
            b.push(rb);
        }
        let names = |ss: &[ReducedStrategy]| unique_names(ss.iter().map(|s| s.label(self)).collect());
        BimatrixGame::new(a, b)?.with_names(names(&s1), names(&s2))
    }
}

/// Makes labels unique by appending `#2`, `#3`, .. to repeats; an empty
/// label (a player without moves) becomes `-`.
fn unique_names(labels: Vec<String>) -> Vec<String> {
    let mut seen: HashSet<String> = HashSet::new();
    labels
        .into_iter()
        .map(|l| {
            let base = if l.is_empty() { "-".to_string() } else { l };
            let mut name = base.clone();
            let mut k = 2;
            while !seen.insert(name.clone()) {
                name = format!("{base}#{k}");
                k += 1;
            }
            name
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    /// The commitment game: player 1 moves T or B, player 2 observes it.
    fn commitment() -> GameTree {
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

    #[test]
    fn commitment_strategic_form() {
        let g = commitment().to_strategic_form().unwrap();
        assert_eq!(g.row_names(), ["T", "B"]);
        assert_eq!(g.col_names(), ["la", "lb", "ra", "rb"]);
        let expect = BimatrixGame::from_i64(
            &[vec![5, 5, 3, 3], vec![6, 4, 6, 4]],
            &[vec![2, 2, 1, 1], vec![3, 4, 3, 4]],
        )
        .unwrap();
        assert_eq!(g.a(), expect.a());
        assert_eq!(g.b(), expect.b());
    }

    #[test]
    fn absent_minded_player_lacks_recall() {
        let mut t = GameTree::new();
        let root = t.root();
        let kids = t.add_children(root, 2).unwrap();
        t.assign_owner(root, Owner::Player(1)).unwrap();
        t.add_children(kids[0], 2).unwrap();
        t.assign_owner(kids[0], Owner::Player(1)).unwrap();
        let a = t.node(root).unwrap().infoset().unwrap();
        let b = t.node(kids[0]).unwrap().infoset().unwrap();
        assert!(t.check_perfect_recall(1));
        t.merge_infosets(a, b).unwrap();
        assert!(!t.check_perfect_recall(1));
        assert_eq!(t.reduced_strategies(1), Err(Error::ImperfectRecall(1)));
    }

    #[test]
    fn one_move_each_gives_one_by_one() {
        let mut t = GameTree::new();
        let root = t.root();
        let kid = t.add_children(root, 1).unwrap()[0];
        t.assign_owner(root, Owner::Player(1)).unwrap();
        t.add_children(kid, 1).unwrap();
        t.assign_owner(kid, Owner::Player(2)).unwrap();
        let leaf = t.leaves()[0];
        t.set_payoff(leaf, 1, q(7)).unwrap();
        t.set_payoff(leaf, 2, q(-1)).unwrap();
        let g = t.to_strategic_form().unwrap();
        assert_eq!(g.a(), &[vec![q(7)]]);
        assert_eq!(g.b(), &[vec![q(-1)]]);
    }

    #[test]
    fn three_players_are_rejected() {
        let mut t = commitment();
        t.add_player("3");
        assert!(matches!(t.to_strategic_form(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn unassigned_nodes_are_rejected() {
        let mut t = GameTree::new();
        t.add_children(t.root(), 2).unwrap();
        assert!(matches!(t.to_strategic_form(), Err(Error::InvalidGame(_))));
    }
}
