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

//! Extensive-form games: an arena-backed game tree with information sets,
//! chance moves and staged editing.

mod strategies;
mod xml;

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::strategic::letter_name;

pub(crate) use strategies::History;
pub use strategies::ReducedStrategy;
pub use xml::{from_xml, strategic_to_xml, to_xml, GameDocument};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InfosetId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Owner {
    Unassigned,
    /// 1-based player number.
    Player(usize),
    Chance,
}

#[derive(Debug, Clone)]
pub struct Node {
    parent: Option<NodeId>,
    children: Vec<NodeId>,
    owner: Owner,
    infoset: Option<InfosetId>,
    probs: Vec<Rational>,
    payoffs: Vec<Rational>,
}

impl Node {
    pub fn parent(&self) -> Option<NodeId> {
        self.parent
    }

    pub fn children(&self) -> &[NodeId] {
        &self.children
    }

    pub fn owner(&self) -> Owner {
        self.owner
    }

    pub fn infoset(&self) -> Option<InfosetId> {
        self.infoset
    }

    /// Probabilities of the outgoing edges of a chance node.
    pub fn chance_probs(&self) -> &[Rational] {
        &self.probs
    }

    /// Payoffs per player at a leaf.
    pub fn payoffs(&self) -> &[Rational] {
        &self.payoffs
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct Infoset {
    player: usize,
    members: Vec<NodeId>,
    moves: Vec<String>,
    custom_names: bool,
}

impl Infoset {
    pub fn player(&self) -> usize {
        self.player
    }

    pub fn members(&self) -> &[NodeId] {
        &self.members
    }

    pub fn moves(&self) -> &[String] {
        &self.moves
    }
}

/// One editing step, as sent by interactive clients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Edit {
    AddChildren { node: NodeId, count: usize },
    AddChild { node: NodeId },
    DeleteSubtree { node: NodeId },
    AssignOwner { node: NodeId, owner: Owner },
    MergeInfosets { first: InfosetId, second: InfosetId },
    DissolveInfoset { infoset: InfosetId },
    CutInfoset { infoset: InfosetId, boundary: usize },
    SetMoveNames { player: usize, labels: Vec<String> },
    SetMoveName { infoset: InfosetId, index: usize, label: String },
    SetChanceProb { node: NodeId, child: usize, prob: Rational },
    SetPayoffs { player: usize, values: Vec<Rational> },
    SetPayoff { leaf: NodeId, player: usize, value: Rational },
    DefaultPayoffs,
    RenamePlayer { player: usize, name: String },
}

#[derive(Debug, Clone)]
pub struct GameTree {
    nodes: Vec<Option<Node>>,
    free_nodes: Vec<usize>,
    infosets: Vec<Option<Infoset>>,
    free_infosets: Vec<usize>,
    root: NodeId,
    players: Vec<String>,
    settings: BTreeMap<String, String>,
}

impl Default for GameTree {
    fn default() -> Self {
        Self::new()
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidEdit(msg.into())
}

impl GameTree {
    /// A single leaf with two players named "1" and "2".
    pub fn new() -> Self {
        GameTree {
            nodes: vec![Some(Node {
                parent: None,
                children: Vec::new(),
                owner: Owner::Unassigned,
                infoset: None,
                probs: Vec::new(),
                payoffs: vec![Rational::zero(); 2],
            })],
            free_nodes: Vec::new(),
            infosets: Vec::new(),
            free_infosets: Vec::new(),
            root: NodeId(0),
            players: vec!["1".into(), "2".into()],
            settings: BTreeMap::new(),
        }
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn players(&self) -> &[String] {
        &self.players
    }

    pub fn settings(&self) -> &BTreeMap<String, String> {
        &self.settings
    }

    pub fn set_setting(&mut self, name: impl Into<String>, value: impl Into<String>) {
        self.settings.insert(name.into(), value.into());
    }

    pub fn node(&self, id: NodeId) -> Result<&Node> {
        self.nodes
            .get(id.0)
            .and_then(Option::as_ref)
            .ok_or_else(|| bad(format!("no node {}", id.0)))
    }

    fn node_mut(&mut self, id: NodeId) -> Result<&mut Node> {
        self.nodes
            .get_mut(id.0)
            .and_then(Option::as_mut)
            .ok_or_else(|| bad(format!("no node {}", id.0)))
    }

    pub fn infoset(&self, id: InfosetId) -> Result<&Infoset> {
        self.infosets
            .get(id.0)
            .and_then(Option::as_ref)
            .ok_or_else(|| bad(format!("no information set {}", id.0)))
    }

    fn infoset_mut(&mut self, id: InfosetId) -> Result<&mut Infoset> {
        self.infosets
            .get_mut(id.0)
            .and_then(Option::as_mut)
            .ok_or_else(|| bad(format!("no information set {}", id.0)))
    }

    /// Move labels on the edges leaving `id`; chance edges and edges of
    /// unassigned nodes have none.
    pub fn move_names(&self, id: NodeId) -> Result<&[String]> {
        match self.node(id)?.infoset {
            Some(h) => Ok(&self.infoset(h)?.moves),
            None => Ok(&[]),
        }
    }

    /// Live nodes in depth-first (left-to-right) order.
    pub fn nodes_dfs(&self) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        while let Some(id) = stack.pop() {
            out.push(id);
            let n = self.nodes[id.0].as_ref().expect("live node");
            stack.extend(n.children.iter().rev());
        }
        out
    }

    /// Live nodes in breadth-first order.
    pub fn nodes_bfs(&self) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut queue = VecDeque::from([self.root]);
        while let Some(id) = queue.pop_front() {
            out.push(id);
            queue.extend(self.nodes[id.0].as_ref().expect("live node").children.iter());
        }
        out
    }

    /// Leaves from left to right.
    pub fn leaves(&self) -> Vec<NodeId> {
        self.nodes_dfs()
            .into_iter()
            .filter(|&id| self.nodes[id.0].as_ref().expect("live").is_leaf())
            .collect()
    }

    fn first_visits(&self, order: Vec<NodeId>) -> Vec<InfosetId> {
        let mut seen = vec![false; self.infosets.len()];
        let mut out = Vec::new();
        for id in order {
            if let Some(h) = self.nodes[id.0].as_ref().expect("live").infoset {
                if !seen[h.0] {
                    seen[h.0] = true;
                    out.push(h);
                }
            }
        }
        out
    }

    /// Information sets in order of first visit by a breadth-first traversal.
    /// Default move names follow this order.
    pub fn infosets_bfs(&self) -> Vec<InfosetId> {
        self.first_visits(self.nodes_bfs())
    }

    /// Information sets in order of first visit by a depth-first traversal.
    /// Strategy labels list moves in this order, so `a*ce` reads along the
    /// tree from left to right.
    pub fn infosets_dfs(&self) -> Vec<InfosetId> {
        self.first_visits(self.nodes_dfs())
    }

    /// Information sets of `player` in breadth-first order.
    pub fn player_infosets(&self, player: usize) -> Vec<InfosetId> {
        self.infosets_bfs()
            .into_iter()
            .filter(|&h| self.infosets[h.0].as_ref().expect("live").player == player)
            .collect()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len() - self.free_nodes.len()
    }

    fn alloc_node(&mut self, parent: NodeId) -> NodeId {
        let node = Node {
            parent: Some(parent),
            children: Vec::new(),
            owner: Owner::Unassigned,
            infoset: None,
            probs: Vec::new(),
            payoffs: vec![Rational::zero(); self.players.len()],
        };
        match self.free_nodes.pop() {
            Some(i) => {
                self.nodes[i] = Some(node);
                NodeId(i)
            }
            None => {
                self.nodes.push(Some(node));
                NodeId(self.nodes.len() - 1)
            }
        }
    }

    fn alloc_infoset(&mut self, h: Infoset) -> InfosetId {
        match self.free_infosets.pop() {
            Some(i) => {
                self.infosets[i] = Some(h);
                InfosetId(i)
            }
            None => {
                self.infosets.push(Some(h));
                InfosetId(self.infosets.len() - 1)
            }
        }
    }

    /// Removes `node` from its information set, releasing the set if it
    /// becomes empty.
    fn detach(&mut self, node: NodeId) {
        let Some(h) = self.nodes[node.0].as_mut().expect("live").infoset.take() else {
            return;
        };
        let set = self.infosets[h.0].as_mut().expect("live infoset");
        set.members.retain(|&m| m != node);
        if set.members.is_empty() {
            self.infosets[h.0] = None;
            self.free_infosets.push(h.0);
        }
    }

    /// Moves `node` into a new singleton information set with the same moves.
    fn split_to_singleton(&mut self, node: NodeId) -> Result<InfosetId> {
        let h = self.node(node)?.infoset.ok_or_else(|| bad("node has no information set"))?;
        let set = self.infoset(h)?;
        if set.members.len() == 1 {
            return Ok(h);
        }
        let copy = Infoset {
            player: set.player,
            members: vec![node],
            moves: set.moves.clone(),
            custom_names: set.custom_names,
        };
        self.detach(node);
        let new = self.alloc_infoset(copy);
        self.node_mut(node)?.infoset = Some(new);
        Ok(new)
    }

    fn fresh_move_name(&self, player: usize, taken: &[String]) -> String {
        (0..)
            .map(|i| letter_name(i, player == 1))
            .find(|n| !taken.contains(n))
            .expect("infinite pool")
    }

    /// Applies one edit; on error the tree is unchanged.
    pub fn apply(&mut self, edit: &Edit) -> Result<()> {
        let mut next = self.clone();
        next.apply_in_place(edit)?;
        next.refresh_default_names();
        *self = next;
        Ok(())
    }

    fn apply_in_place(&mut self, edit: &Edit) -> Result<()> {
        match edit {
            Edit::AddChildren { node, count } => self.add_children_raw(*node, *count),
            Edit::AddChild { node } => self.add_child_raw(*node),
            Edit::DeleteSubtree { node } => self.delete_subtree_raw(*node),
            Edit::AssignOwner { node, owner } => self.assign_owner_raw(*node, *owner),
            Edit::MergeInfosets { first, second } => self.merge_raw(*first, *second),
            Edit::DissolveInfoset { infoset } => self.dissolve_raw(*infoset),
            Edit::CutInfoset { infoset, boundary } => self.cut_raw(*infoset, *boundary),
            Edit::SetMoveNames { player, labels } => self.set_move_names_raw(*player, labels),
            Edit::SetMoveName {
                infoset,
                index,
                label,
            } => {
                let set = self.infoset_mut(*infoset)?;
                let slot = set
                    .moves
                    .get_mut(*index)
                    .ok_or_else(|| bad(format!("no move {index}")))?;
                *slot = label.clone();
                set.custom_names = true;
                Ok(())
            }
            Edit::SetChanceProb { node, child, prob } => self.set_chance_prob_raw(*node, *child, prob),
            Edit::SetPayoffs { player, values } => {
                self.check_player(*player)?;
                let leaves = self.leaves();
                if values.len() != leaves.len() {
                    return Err(bad(format!(
                        "{} payoffs for {} leaves",
                        values.len(),
                        leaves.len()
                    )));
                }
                for (leaf, v) in leaves.into_iter().zip(values) {
                    self.node_mut(leaf)?.payoffs[player - 1] = v.clone();
                }
                Ok(())
            }
            Edit::SetPayoff { leaf, player, value } => {
                self.check_player(*player)?;
                let n = self.node_mut(*leaf)?;
                if !n.is_leaf() {
                    return Err(bad("payoffs belong to leaves"));
                }
                n.payoffs[player - 1] = value.clone();
                Ok(())
            }
            Edit::DefaultPayoffs => {
                for (k, leaf) in self.leaves().into_iter().enumerate() {
                    let n = self.node_mut(leaf)?;
                    for p in n.payoffs.iter_mut() {
                        *p = Rational::from(k as i64);
                    }
                }
                Ok(())
            }
            Edit::RenamePlayer { player, name } => {
                self.check_player(*player)?;
                self.players[player - 1] = name.clone();
                Ok(())
            }
        }
    }

    fn check_player(&self, player: usize) -> Result<()> {
        if player == 0 || player > self.players.len() {
            return Err(bad(format!("no player {player}")));
        }
        Ok(())
    }

    pub fn add_children(&mut self, node: NodeId, count: usize) -> Result<Vec<NodeId>> {
        self.apply(&Edit::AddChildren { node, count })?;
        Ok(self.node(node)?.children.clone())
    }

    pub fn add_child(&mut self, node: NodeId) -> Result<NodeId> {
        self.apply(&Edit::AddChild { node })?;
        Ok(*self.node(node)?.children.last().expect("child added"))
    }

    pub fn delete_subtree(&mut self, node: NodeId) -> Result<()> {
        self.apply(&Edit::DeleteSubtree { node })
    }

    pub fn assign_owner(&mut self, node: NodeId, owner: Owner) -> Result<()> {
        self.apply(&Edit::AssignOwner { node, owner })
    }

    pub fn merge_infosets(&mut self, first: InfosetId, second: InfosetId) -> Result<()> {
        self.apply(&Edit::MergeInfosets { first, second })
    }

    pub fn dissolve_infoset(&mut self, infoset: InfosetId) -> Result<()> {
        self.apply(&Edit::DissolveInfoset { infoset })
    }

    pub fn cut_infoset(&mut self, infoset: InfosetId, boundary: usize) -> Result<()> {
        self.apply(&Edit::CutInfoset { infoset, boundary })
    }

    pub fn set_move_names(&mut self, player: usize, labels: &[&str]) -> Result<()> {
        self.apply(&Edit::SetMoveNames {
            player,
            labels: labels.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn set_chance_prob(&mut self, node: NodeId, child: usize, prob: Rational) -> Result<()> {
        self.apply(&Edit::SetChanceProb { node, child, prob })
    }

    pub fn set_payoffs(&mut self, player: usize, values: Vec<Rational>) -> Result<()> {
        self.apply(&Edit::SetPayoffs { player, values })
    }

    pub fn set_payoff(&mut self, leaf: NodeId, player: usize, value: Rational) -> Result<()> {
        self.apply(&Edit::SetPayoff {
            leaf,
            player,
            value,
        })
    }

    pub fn default_payoffs(&mut self) -> Result<()> {
        self.apply(&Edit::DefaultPayoffs)
    }

    pub fn rename_player(&mut self, player: usize, name: &str) -> Result<()> {
        self.apply(&Edit::RenamePlayer {
            player,
            name: name.into(),
        })
    }

    /// Adds a personal player. Leaves get a zero payoff for the newcomer.
    pub fn add_player(&mut self, name: &str) {
        self.players.push(name.into());
        for n in self.nodes.iter_mut().flatten() {
            if n.children.is_empty() {
                n.payoffs.push(Rational::zero());
            }
        }
    }

    fn add_children_raw(&mut self, node: NodeId, count: usize) -> Result<()> {
        if count == 0 {
            return Err(bad("at least one child is needed"));
        }
        if !self.node(node)?.is_leaf() {
            return Err(bad("children can only be added to a leaf this way"));
        }
        let kids: Vec<NodeId> = (0..count).map(|_| self.alloc_node(node)).collect();
        let n = self.node_mut(node)?;
        n.children = kids;
        n.payoffs.clear();
        Ok(())
    }

    fn add_child_raw(&mut self, node: NodeId) -> Result<()> {
        let n = self.node(node)?;
        if n.is_leaf() {
            return self.add_children_raw(node, 1);
        }
        if n.infoset.is_some() {
            let h = self.split_to_singleton(node)?;
            let set = self.infoset(h)?;
            let name = self.fresh_move_name(set.player, &set.moves);
            self.infoset_mut(h)?.moves.push(name);
        }
        let child = self.alloc_node(node);
        let n = self.node_mut(node)?;
        n.children.push(child);
        if n.owner == Owner::Chance {
            n.probs = uniform(n.children.len());
        }
        Ok(())
    }

    fn delete_subtree_raw(&mut self, node: NodeId) -> Result<()> {
        let parent = self
            .node(node)?
            .parent
            .ok_or_else(|| bad("the root cannot be deleted"))?;
        let mut stack = vec![node];
        while let Some(id) = stack.pop() {
            stack.extend(self.node(id)?.children.iter().copied());
            self.detach(id);
            self.nodes[id.0] = None;
            self.free_nodes.push(id.0);
        }
        let pos = self
            .node(parent)?
            .children
            .iter()
            .position(|&c| c == node)
            .expect("child of its parent");
        self.node_mut(parent)?.children.remove(pos);
        if self.node(parent)?.children.is_empty() {
            self.detach(parent);
            let players = self.players.len();
            let p = self.node_mut(parent)?;
            p.owner = Owner::Unassigned;
            p.probs.clear();
            p.payoffs = vec![Rational::zero(); players];
            return Ok(());
        }
        if self.node(parent)?.infoset.is_some() {
            let h = self.split_to_singleton(parent)?;
            self.infoset_mut(h)?.moves.remove(pos);
        }
        let p = self.node_mut(parent)?;
        if p.owner == Owner::Chance {
            p.probs.remove(pos);
            let total: Rational = p.probs.iter().sum();
            p.probs = if total.is_zero() {
                uniform(p.probs.len())
            } else {
                p.probs.iter().map(|v| v / &total).collect()
            };
        }
        Ok(())
    }

    fn assign_owner_raw(&mut self, node: NodeId, owner: Owner) -> Result<()> {
        let n = self.node(node)?;
        if n.is_leaf() {
            return Err(bad("leaves have no owner"));
        }
        if let Owner::Player(p) = owner {
            self.check_player(p)?;
        }
        let arity = n.children.len();
        self.detach(node);
        let n = self.node_mut(node)?;
        n.owner = owner;
        n.probs.clear();
        match owner {
            Owner::Player(p) => {
                let h = self.alloc_infoset(Infoset {
                    player: p,
                    members: vec![node],
                    moves: vec![String::new(); arity],
                    custom_names: false,
                });
                self.node_mut(node)?.infoset = Some(h);
            }
            Owner::Chance => self.node_mut(node)?.probs = uniform(arity),
            Owner::Unassigned => {}
        }
        Ok(())
    }

    fn merge_raw(&mut self, first: InfosetId, second: InfosetId) -> Result<()> {
        if first == second {
            return Err(bad("cannot merge an information set with itself"));
        }
        let a = self.infoset(first)?;
        let b = self.infoset(second)?;
        if a.player != b.player {
            return Err(bad("information sets belong to different players"));
        }
        if a.moves.len() != b.moves.len() {
            return Err(bad("information sets have different numbers of moves"));
        }
        let moved = b.members.clone();
        self.infosets[second.0] = None;
        self.free_infosets.push(second.0);
        for &m in &moved {
            self.node_mut(m)?.infoset = Some(first);
        }
        self.infoset_mut(first)?.members.extend(moved);
        Ok(())
    }

    fn dissolve_raw(&mut self, h: InfosetId) -> Result<()> {
        let members = self.infoset(h)?.members.clone();
        for &m in &members[1..] {
            self.split_to_singleton(m)?;
        }
        Ok(())
    }

    fn cut_raw(&mut self, h: InfosetId, boundary: usize) -> Result<()> {
        let set = self.infoset(h)?;
        if boundary == 0 || boundary >= set.members.len() {
            return Err(bad("a cut must leave both parts nonempty"));
        }
        let moved: Vec<NodeId> = set.members[boundary..].to_vec();
        let copy = Infoset {
            player: set.player,
            members: moved.clone(),
            moves: set.moves.clone(),
            custom_names: set.custom_names,
        };
        self.infoset_mut(h)?.members.truncate(boundary);
        let new = self.alloc_infoset(copy);
        for m in moved {
            self.node_mut(m)?.infoset = Some(new);
        }
        Ok(())
    }

    fn set_move_names_raw(&mut self, player: usize, labels: &[String]) -> Result<()> {
        self.check_player(player)?;
        let sets = self.player_infosets(player);
        let total: usize = sets.iter().map(|&h| self.infosets[h.0].as_ref().expect("live").moves.len()).sum();
        if total != labels.len() {
            return Err(bad(format!(
                "player {player} has {total} moves, got {} names",
                labels.len()
            )));
        }
        let mut it = labels.iter();
        for h in sets {
            let set = self.infoset_mut(h)?;
            for m in set.moves.iter_mut() {
                *m = it.next().expect("counted").clone();
            }
            set.custom_names = true;
        }
        Ok(())
    }

    fn set_chance_prob_raw(&mut self, node: NodeId, child: usize, prob: &Rational) -> Result<()> {
        let n = self.node_mut(node)?;
        if n.owner != Owner::Chance {
            return Err(bad("not a chance node"));
        }
        if prob.is_negative() || *prob > Rational::one() {
            return Err(bad("probabilities must lie in [0, 1]"));
        }
        let k = n.probs.len();
        if child >= k {
            return Err(bad(format!("no child {child}")));
        }
        if k == 1 && *prob != Rational::one() {
            return Err(bad("a single chance move has probability 1"));
        }
        let rest_old: Rational = Rational::one() - &n.probs[child];
        let rest_new: Rational = Rational::one() - prob;
        for (j, p) in n.probs.iter_mut().enumerate() {
            if j == child {
                *p = prob.clone();
            } else if rest_old.is_zero() {
                *p = &rest_new / &Rational::from((k - 1) as i64);
            } else {
                *p = &*p * &rest_new / &rest_old;
            }
        }
        Ok(())
    }

    /// Recomputes default move names: breadth-first over information sets,
    /// `A, B, ..` for player 1 and `a, b, ..` for the others, skipping sets
    /// whose names were set explicitly.
    fn refresh_default_names(&mut self) {
        let mut counters: BTreeMap<usize, usize> = BTreeMap::new();
        for h in self.infosets_bfs() {
            let set = self.infosets[h.0].as_mut().expect("live");
            if set.custom_names {
                continue;
            }
            let c = counters.entry(set.player).or_insert(0);
            for m in set.moves.iter_mut() {
                *m = letter_name(*c, set.player == 1);
                *c += 1;
            }
        }
    }

    /// Errors unless every nonterminal node has an owner.
    pub fn check_assigned(&self) -> Result<()> {
        for id in self.nodes_dfs() {
            let n = self.node(id)?;
            if !n.is_leaf() && n.owner == Owner::Unassigned {
                return Err(Error::InvalidGame(format!("node {} has no owner", id.0)));
            }
        }
        Ok(())
    }

    fn canonical(&self) -> (Vec<String>, &BTreeMap<String, String>, Canon) {
        let order: BTreeMap<InfosetId, usize> = self
            .infosets_bfs()
            .into_iter()
            .enumerate()
            .map(|(k, h)| (h, k))
            .collect();
        (self.players.clone(), &self.settings, self.canon_node(self.root, &order))
    }

    fn canon_node(&self, id: NodeId, order: &BTreeMap<InfosetId, usize>) -> Canon {
        let n = self.nodes[id.0].as_ref().expect("live");
        let kids: Vec<Canon> = n.children.iter().map(|&c| self.canon_node(c, order)).collect();
        if kids.is_empty() {
            return Canon::Leaf(n.payoffs.clone());
        }
        match n.owner {
            Owner::Unassigned => Canon::Unassigned(kids),
            Owner::Chance => Canon::Chance(n.probs.clone(), kids),
            Owner::Player(p) => {
                let h = n.infoset.expect("player node has an information set");
                let set = self.infosets[h.0].as_ref().expect("live");
                Canon::Decision(p, order[&h], set.moves.clone(), kids)
            }
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
enum Canon {
    Leaf(Vec<Rational>),
    Unassigned(Vec<Canon>),
    Chance(Vec<Rational>, Vec<Canon>),
    Decision(usize, usize, Vec<String>, Vec<Canon>),
}

/// Trees are equal when their logical structure is: shape, owners,
/// information-set partition, move names, probabilities, payoffs, players
/// and settings. Arena indices do not matter.
impl PartialEq for GameTree {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for GameTree {}

fn uniform(k: usize) -> Vec<Rational> {
    (0..k).map(|_| Rational::frac(1, k as i64)).collect()
}
