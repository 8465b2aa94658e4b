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

//! Sequence form of a two-player tree with perfect recall.
//!
//! A sequence is the list of a player's own moves on a path from the root.
//! Realization weights `y` satisfy `E y = e`: the root sequence has weight 1
//! and at every information set the weight of the sequence leading there is
//! split among its moves. A nonterminal sequence followed by exactly one
//! information set carries no information beyond its extensions and is
//! substituted by their sum, the empty sequence included.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::strategic::MixedStrategy;
use crate::tree::{GameTree, History, InfosetId, Owner};

/// Sparse matrix as `(row, col, value)` triples sorted by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, Rational)>,
}

impl SparseMatrix {
    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries
            .binary_search_by(|(r, c, _)| (*r, *c).cmp(&(row, col)))
            .map(|i| self.entries[i].2.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            out[*r][*c] = v.clone();
        }
        out
    }

    /// `xᵀ M y`.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.entries.iter().map(|(r, c, v)| &x[*r] * v * &y[*c]).sum()
    }
}

/// One player's half of the sequence form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayerSequences {
    pub player: usize,
    /// Kept sequences in depth-first discovery order.
    pub sequences: Vec<History>,
    pub labels: Vec<String>,
    /// Dense constraint rows over `sequences`, with right-hand sides `rhs`.
    pub constraints: Vec<Vec<Rational>>,
    pub rhs: Vec<Rational>,
    /// Information sets in depth-first order, with the sequence leading there.
    pub infosets: Vec<(InfosetId, History)>,
    moves: BTreeMap<InfosetId, usize>,
    /// Each full sequence as a sum of kept ones.
    expansion: BTreeMap<History, Vec<usize>>,
}

impl PlayerSequences {
    fn index(&self, s: &History) -> Option<usize> {
        self.sequences.iter().position(|x| x == s)
    }

    /// Weight of any sequence, kept or substituted.
    pub fn weight(&self, plan: &[Rational], s: &History) -> Rational {
        self.expansion[s].iter().map(|&k| plan[k].clone()).sum()
    }

    /// True if the plan is nonnegative and satisfies the constraints.
    pub fn is_feasible(&self, plan: &[Rational]) -> bool {
        plan.len() == self.sequences.len()
            && plan.iter().all(|w| !w.is_negative())
            && self.constraints.iter().zip(&self.rhs).all(|(row, r)| {
                row.iter().zip(plan).map(|(a, b)| a * b).sum::<Rational>() == *r
            })
    }
}

/// Local move probabilities at every information set of one player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BehaviorStrategy {
    pub player: usize,
    pub local: BTreeMap<InfosetId, Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceForm {
    pub players: [PlayerSequences; 2],
    pub payoff1: SparseMatrix,
    pub payoff2: SparseMatrix,
    /// Total chance probability of the leaves behind each payoff entry.
    pub chance: SparseMatrix,
}

fn player_sequences(tree: &GameTree, player: usize) -> Result<PlayerSequences> {
    if !tree.check_perfect_recall(player) {
        return Err(Error::ImperfectRecall(player));
    }
    let hist = tree.histories(player);
    let sets: Vec<(InfosetId, History)> = tree
        .infosets_dfs()
        .into_iter()
        .filter(|&h| tree.infoset(h).map(|s| s.player() == player).unwrap_or(false))
        .map(|h| {
            let first = tree.infoset(h).expect("live").members()[0];
            (h, hist[&first].clone())
        })
        .collect();
    let moves: BTreeMap<InfosetId, usize> = sets
        .iter()
        .map(|(h, _)| (*h, tree.infoset(*h).expect("live").moves().len()))
        .collect();
    let mut next: BTreeMap<History, Vec<InfosetId>> = BTreeMap::new();
    for (h, s) in &sets {
        next.entry(s.clone()).or_default().push(*h);
    }
    let at_leaf: BTreeSet<&History> = tree.leaves().iter().map(|l| &hist[l]).collect();
    // Full sequences in depth-first order: each one followed by the
    // extensions through the sets it leads to.
    let mut full = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(s) = stack.pop() {
        for h in next.get(&s).into_iter().flatten().rev() {
            for k in (0..moves[h]).rev() {
                let mut t = s.clone();
                t.push((*h, k));
                stack.push(t);
            }
        }
        full.push(s);
    }
    let substituted =
        |s: &History| !at_leaf.contains(s) && next.get(s).map(Vec::len) == Some(1);
    let sequences: Vec<History> = full.iter().filter(|s| !substituted(s)).cloned().collect();
    let pos: BTreeMap<&History, usize> = sequences.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut expansion: BTreeMap<History, Vec<usize>> = BTreeMap::new();
    for s in full.iter().rev() {
        let e = if let Some(&i) = pos.get(s) {
            vec![i]
        } else {
            let h = next[s][0];
            (0..moves[&h])
                .flat_map(|k| {
                    let mut t = s.clone();
                    t.push((h, k));
                    expansion[&t].clone()
                })
                .collect()
        };
        expansion.insert(s.clone(), e);
    }
    let n = sequences.len();
    let row_of = |plus: &[usize], minus: &[usize]| {
        let mut row = vec![Rational::zero(); n];
        for &i in plus {
            row[i] += Rational::one();
        }
        for &i in minus {
            row[i] -= Rational::one();
        }
        row
    };
    let mut constraints = vec![row_of(&expansion[&Vec::new()], &[])];
    let mut rhs = vec![Rational::one()];
    for (h, s) in &sets {
        if substituted(s) {
            continue;
        }
        let ext: Vec<usize> = (0..moves[h])
            .flat_map(|k| {
                let mut t = s.clone();
                t.push((*h, k));
                expansion[&t].clone()
            })
            .collect();
        constraints.push(row_of(&ext, &expansion[s]));
        rhs.push(Rational::zero());
    }
    let labels = sequences
        .iter()
        .map(|s| {
            if s.is_empty() {
                "\u{2205}".to_string()
            } else {
                s.iter()
                    .map(|(h, k)| tree.infoset(*h).expect("live").moves()[*k].clone())
                    .collect()
            }
        })
        .collect();
    Ok(PlayerSequences {
        player,
        sequences,
        labels,
        constraints,
        rhs,
        infosets: sets,
        moves,
        expansion,
    })
}

impl SequenceForm {
    /// Builds the sequence form; payoff entries aggregate all leaves reached
    /// by a sequence pair, weighted by chance.
    pub fn new(tree: &GameTree) -> Result<Self> {
        if tree.players().len() != 2 {
            return Err(Error::Unsupported("the sequence form needs exactly two players".into()));
        }
        tree.check_assigned()?;
        let p1 = player_sequences(tree, 1)?;
        let p2 = player_sequences(tree, 2)?;
        let h1 = tree.histories(1);
        let h2 = tree.histories(2);
        let mut cells: BTreeMap<(usize, usize), [Rational; 3]> = BTreeMap::new();
        for leaf in tree.leaves() {
            let mut w = Rational::one();
            let mut cur = leaf;
            while let Some(p) = tree.node(cur)?.parent() {
                let pn = tree.node(p)?;
                if pn.owner() == Owner::Chance {
                    let k = pn.children().iter().position(|&c| c == cur).expect("child");
                    w *= &pn.chance_probs()[k];
                }
                cur = p;
            }
            if w.is_zero() {
                continue;
            }
            let i = p1.index(&h1[&leaf]).ok_or_else(|| Error::Internal("leaf sequence missing".into()))?;
            let j = p2.index(&h2[&leaf]).ok_or_else(|| Error::Internal("leaf sequence missing".into()))?;
            let pay = tree.node(leaf)?.payoffs();
            let cell = cells.entry((i, j)).or_insert([Rational::zero(), Rational::zero(), Rational::zero()]);
            cell[0] += &w * &pay[0];
            cell[1] += &w * &pay[1];
            cell[2] += &w;
        }
        let (rows, cols) = (p1.sequences.len(), p2.sequences.len());
        let pick = |k: usize| SparseMatrix {
            rows,
            cols,
            entries: cells.iter().map(|(&(i, j), v)| (i, j, v[k].clone())).collect(),
        };
        Ok(SequenceForm {
            payoff1: pick(0),
            payoff2: pick(1),
            chance: pick(2),
            players: [p1, p2],
        })
    }

    /// Number of moves at a set of `player`.
    pub fn moves_at(&self, player: usize, h: InfosetId) -> usize {
        self.player(player).moves[&h]
    }

    pub fn player(&self, player: usize) -> &PlayerSequences {
        &self.players[player - 1]
    }

    /// Expected payoffs of a pair of realization plans.
    pub fn expected_payoffs(&self, x: &[Rational], y: &[Rational]) -> (Rational, Rational) {
        (self.payoff1.bilinear(x, y), self.payoff2.bilinear(x, y))
    }

    /// Local move probabilities from a plan. Sets reached with weight zero
    /// get the uniform distribution.
    pub fn realization_to_behavior(&self, player: usize, plan: &[Rational]) -> BehaviorStrategy {
        let ps = self.player(player);
        let mut local = BTreeMap::new();
        for (h, s) in &ps.infosets {
            let k = ps.moves[h];
            let total = ps.weight(plan, s);
            let probs = if total.is_zero() {
                vec![Rational::frac(1, k as i64); k]
            } else {
                (0..k)
                    .map(|m| {
                        let mut t = s.clone();
                        t.push((*h, m));
                        ps.weight(plan, &t) / &total
                    })
                    .collect()
            };
            local.insert(*h, probs);
        }
        BehaviorStrategy { player, local }
    }

    /// Realization plan of a behavior strategy: each kept sequence gets the
    /// product of its move probabilities.
    pub fn behavior_to_realization(&self, beh: &BehaviorStrategy) -> Vec<Rational> {
        self.player(beh.player)
            .sequences
            .iter()
            .map(|s| s.iter().map(|(h, k)| beh.local[h][*k].clone()).product())
            .collect()
    }

    /// Aligned table of payoff pairs, blank where no leaf is reached.
    pub fn to_text(&self) -> String {
        let (p1, p2) = (&self.players[0], &self.players[1]);
        let cell = |i: usize, j: usize| {
            if self.payoff1.entries.binary_search_by(|(r, c, _)| (*r, *c).cmp(&(i, j))).is_ok() {
                format!("{},{}", self.payoff1.get(i, j), self.payoff2.get(i, j))
            } else {
                String::new()
            }
        };
        let mut grid = vec![std::iter::once(String::new()).chain(p2.labels.iter().cloned()).collect::<Vec<_>>()];
        for (i, l) in p1.labels.iter().enumerate() {
            grid.push(std::iter::once(l.clone()).chain((0..p2.labels.len()).map(|j| cell(i, j))).collect());
        }
        let widths: Vec<usize> = (0..grid[0].len())
            .map(|c| grid.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &grid {
            let line: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:>w$}")).collect();
            out.push_str(line.join(" ").trim_end());
            out.push('\n');
        }
        for ps in &self.players {
            out.push_str(&format!("\nConstraints player {}:\n", ps.player));
            for (row, r) in ps.constraints.iter().zip(&ps.rhs) {
                out.push_str(&format!("{} = {}\n", linear_text(row, &ps.labels), r));
            }
        }
        out
    }
}

/// The mixed strategy over reduced strategies that is realization
/// equivalent to `beh`: each reduced strategy gets the product of the local
/// probabilities of the moves it specifies.
pub fn behavior_to_mixed(tree: &GameTree, beh: &BehaviorStrategy) -> Result<MixedStrategy> {
    let probs = tree
        .reduced_strategies(beh.player)?
        .iter()
        .map(|s| {
            s.infosets
                .iter()
                .zip(&s.choices)
                .filter_map(|(h, c)| c.map(|k| beh.local[h][k].clone()))
                .product()
        })
        .collect();
    MixedStrategy::new(beh.player, probs)
}

fn linear_text(row: &[Rational], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, l) in row.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else { "+" };
        let mag = c.abs();
        let coef = if mag == Rational::one() { String::new() } else { format!("{mag} ") };
        if out.is_empty() {
            out.push_str(if c.is_negative() { "-" } else { "" });
        } else {
            out.push_str(&format!(" {sign} "));
        }
        out.push_str(&format!("{coef}y[{l}]"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for SequenceForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
