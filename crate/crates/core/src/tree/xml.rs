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

//! XML persistence for game trees and strategic-form games.
//!
//! ```xml
//! <gte version="1.0">
//!    <display>
//!       <setting name="orientation">vertical</setting>
//!    </display>
//!    <players>
//!       <player playerId="1">1</player>
//!       <player playerId="2">2</player>
//!    </players>
//!    <extensiveForm>
//!       <node player="1" iset="1">
//!          <outcome move="T">
//!             <payoff player="1">1</payoff>
//!             <payoff player="2">3</payoff>
//!          </outcome>
//!          <node player="2" iset="2" move="B">
//!             ...
//! ```
//!
//! `player` is a player number or `chance`; a nonterminal node without it
//! is unassigned. Nodes sharing an `iset` value form one information set.
//! An edge below a chance node carries `prob` instead of `move`. A
//! strategic-form game is stored as
//! `<strategicForm rows=".." cols="..">` holding `<strategies player="k">`
//! (whitespace-separated names) and `<payoffs player="k">` (row-major
//! entries).

use std::collections::BTreeMap;
use std::io;

use quick_xml::events::{BytesDecl, BytesText, Event};
use quick_xml::Writer;

use super::{GameTree, Infoset, InfosetId, Node, NodeId, Owner};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::strategic::{letter_name, BimatrixGame};

/// Contents of an XML game file.
#[derive(Debug, Clone, PartialEq)]
pub enum GameDocument {
    Tree(GameTree),
    Strategic {
        game: BimatrixGame,
        players: Vec<String>,
        settings: BTreeMap<String, String>,
    },
}

impl GameDocument {
    /// The strategic form, computing it for trees.
    pub fn strategic_form(&self) -> Result<BimatrixGame> {
        match self {
            GameDocument::Tree(t) => t.to_strategic_form(),
            GameDocument::Strategic { game, .. } => Ok(game.clone()),
        }
    }
}

fn xml_err(e: impl std::fmt::Display) -> Error {
    Error::Xml(e.to_string())
}

fn write_header(
    w: &mut Writer<Vec<u8>>,
    players: &[String],
    settings: &BTreeMap<String, String>,
) -> io::Result<()> {
    if !settings.is_empty() {
        w.create_element("display").write_inner_content(|w| {
            for (k, v) in settings {
                w.create_element("setting")
                    .with_attribute(("name", k.as_str()))
                    .write_text_content(BytesText::new(v))?;
            }
            Ok(())
        })?;
    }
    w.create_element("players").write_inner_content(|w| {
        for (k, name) in players.iter().enumerate() {
            w.create_element("player")
                .with_attribute(("playerId", (k + 1).to_string().as_str()))
                .write_text_content(BytesText::new(name))?;
        }
        Ok(())
    })?;
    Ok(())
}

fn finish(w: Writer<Vec<u8>>) -> String {
    let mut s = String::from_utf8(w.into_inner()).expect("utf-8 output");
    s.push('\n');
    s
}

/// Serializes a tree. Information sets are numbered in breadth-first order.
pub fn to_xml(tree: &GameTree) -> String {
    let mut w = Writer::new_with_indent(Vec::new(), b' ', 3);
    let numbers: BTreeMap<InfosetId, usize> = tree
        .infosets_bfs()
        .into_iter()
        .enumerate()
        .map(|(k, h)| (h, k + 1))
        .collect();
    let result: io::Result<()> = (|| {
        w.write_event(Event::Decl(BytesDecl::new("1.0", Some("UTF-8"), None)))?;
        w.create_element("gte")
            .with_attribute(("version", "1.0"))
            .write_inner_content(|w| {
                write_header(w, tree.players(), tree.settings())?;
                w.create_element("extensiveForm").write_inner_content(|w| {
                    write_node(w, tree, tree.root(), &[], &numbers)
                })?;
                Ok(())
            })?;
        Ok(())
    })();
    result.expect("writing to memory cannot fail");
    finish(w)
}

fn write_node(
    w: &mut Writer<Vec<u8>>,
    tree: &GameTree,
    id: NodeId,
    edge: &[(&str, String)],
    numbers: &BTreeMap<InfosetId, usize>,
) -> io::Result<()> {
    let n = tree.node(id).expect("live node");
    if n.is_leaf() {
        let el = w.create_element("outcome").with_attributes(edge.iter().map(|(k, v)| (*k, v.as_str())));
        el.write_inner_content(|w| {
            for (p, v) in n.payoffs().iter().enumerate() {
                w.create_element("payoff")
                    .with_attribute(("player", (p + 1).to_string().as_str()))
                    .write_text_content(BytesText::new(&v.to_string()))?;
            }
            Ok(())
        })?;
        return Ok(());
    }
    let mut attrs: Vec<(&str, String)> = Vec::new();
    match n.owner() {
        Owner::Player(p) => {
            attrs.push(("player", p.to_string()));
            let h = n.infoset().expect("player node");
            attrs.push(("iset", numbers[&h].to_string()));
        }
        Owner::Chance => attrs.push(("player", "chance".into())),
        Owner::Unassigned => {}
    }
    attrs.extend(edge.iter().cloned());
    let names = tree.move_names(id).expect("live node");
    w.create_element("node")
        .with_attributes(attrs.iter().map(|(k, v)| (*k, v.as_str())))
        .write_inner_content(|w| {
            for (k, &c) in n.children().iter().enumerate() {
                let edge: Vec<(&str, String)> = match n.owner() {
                    Owner::Player(_) => vec![("move", names[k].clone())],
                    Owner::Chance => vec![("prob", n.chance_probs()[k].to_string())],
                    Owner::Unassigned => Vec::new(),
                };
                write_node(w, tree, c, &edge, numbers)?;
            }
            Ok(())
        })?;
    Ok(())
}

/// Serializes a strategic-form game.
pub fn strategic_to_xml(game: &BimatrixGame, settings: &BTreeMap<String, String>) -> String {
    let mut w = Writer::new_with_indent(Vec::new(), b' ', 3);
    let players = vec!["1".to_string(), "2".to_string()];
    let result: io::Result<()> = (|| {
        w.write_event(Event::Decl(BytesDecl::new("1.0", Some("UTF-8"), None)))?;
        w.create_element("gte")
            .with_attribute(("version", "1.0"))
            .write_inner_content(|w| {
                write_header(w, &players, settings)?;
                w.create_element("strategicForm")
                    .with_attribute(("rows", game.rows().to_string().as_str()))
                    .with_attribute(("cols", game.cols().to_string().as_str()))
                    .write_inner_content(|w| {
                        for (p, names) in [(1, game.row_names()), (2, game.col_names())] {
                            w.create_element("strategies")
                                .with_attribute(("player", p.to_string().as_str()))
                                .write_text_content(BytesText::new(&names.join(" ")))?;
                        }
                        for p in 1..=2 {
                            let cells: Vec<String> = game
                                .payoffs(p)
                                .iter()
                                .flatten()
                                .map(Rational::to_string)
                                .collect();
                            w.create_element("payoffs")
                                .with_attribute(("player", p.to_string().as_str()))
                                .write_text_content(BytesText::new(&cells.join(" ")))?;
                        }
                        Ok(())
                    })?;
                Ok(())
            })?;
        Ok(())
    })();
    result.expect("writing to memory cannot fail");
    finish(w)
}

fn elements<'a, 'i>(node: roxmltree::Node<'a, 'i>) -> Result<Vec<roxmltree::Node<'a, 'i>>> {
    let mut out = Vec::new();
    for c in node.children() {
        if c.is_element() {
            out.push(c);
        } else if c.is_text() && !c.text().unwrap_or("").trim().is_empty() {
            return Err(xml_err(format!(
                "unexpected text inside <{}>",
                node.tag_name().name()
            )));
        }
    }
    Ok(out)
}

fn attr_usize(node: roxmltree::Node, name: &str) -> Result<usize> {
    let v = node
        .attribute(name)
        .ok_or_else(|| xml_err(format!("<{}> lacks `{name}`", node.tag_name().name())))?;
    v.trim()
        .parse()
        .map_err(|_| xml_err(format!("bad `{name}` value `{v}`")))
}

fn parse_rational(text: &str) -> Result<Rational> {
    text.trim()
        .parse()
        .map_err(|_| xml_err(format!("`{}` is not a rational number", text.trim())))
}

/// Reads a game file.
pub fn from_xml(text: &str) -> Result<GameDocument> {
    let doc = roxmltree::Document::parse(text).map_err(xml_err)?;
    let root = doc.root_element();
    if root.tag_name().name() != "gte" {
        return Err(xml_err(format!("root element is <{}>, expected <gte>", root.tag_name().name())));
    }
    let mut players: Option<Vec<String>> = None;
    let mut settings = BTreeMap::new();
    let mut body = None;
    for el in elements(root)? {
        match el.tag_name().name() {
            "players" => {
                let mut named = Vec::new();
                for p in elements(el)? {
                    if p.tag_name().name() != "player" {
                        return Err(xml_err(format!("unknown element <{}>", p.tag_name().name())));
                    }
                    let id = attr_usize(p, "playerId")?;
                    named.push((id, p.text().unwrap_or("").trim().to_string()));
                }
                named.sort();
                if named.is_empty() {
                    return Err(xml_err("the players list is empty"));
                }
                if named.iter().enumerate().any(|(k, (id, _))| *id != k + 1) {
                    return Err(xml_err("players must be numbered 1, 2, .."));
                }
                players = Some(named.into_iter().map(|(_, n)| n).collect());
            }
            "display" => {
                for s in elements(el)? {
                    if s.tag_name().name() != "setting" {
                        return Err(xml_err(format!("unknown element <{}>", s.tag_name().name())));
                    }
                    let name = s.attribute("name").ok_or_else(|| xml_err("<setting> lacks `name`"))?;
                    settings.insert(name.to_string(), s.text().unwrap_or("").to_string());
                }
            }
            "extensiveForm" | "strategicForm" if body.is_none() => body = Some(el),
            other => return Err(xml_err(format!("unexpected element <{other}>"))),
        }
    }
    let players = players.ok_or_else(|| xml_err("missing <players>"))?;
    let body = body.ok_or_else(|| xml_err("missing <extensiveForm> or <strategicForm>"))?;
    if body.tag_name().name() == "strategicForm" {
        let game = read_strategic(body)?;
        return Ok(GameDocument::Strategic {
            game,
            players,
            settings,
        });
    }
    let kids = elements(body)?;
    let [top] = kids.as_slice() else {
        return Err(xml_err("<extensiveForm> must contain exactly one root"));
    };
    let mut b = TreeBuilder {
        nodes: Vec::new(),
        players: players.len(),
        groups: BTreeMap::new(),
        next_anon: 0,
    };
    b.read(*top, None)?;
    let tree = b.finish(players, settings)?;
    Ok(GameDocument::Tree(tree))
}

fn read_strategic(el: roxmltree::Node) -> Result<BimatrixGame> {
    let rows = attr_usize(el, "rows")?;
    let cols = attr_usize(el, "cols")?;
    let mut names: [Option<Vec<String>>; 2] = [None, None];
    let mut pays: [Option<Vec<Vec<Rational>>>; 2] = [None, None];
    for c in elements(el)? {
        let p = attr_usize(c, "player")?;
        if p != 1 && p != 2 {
            return Err(xml_err(format!("no player {p} in a bimatrix game")));
        }
        let text = c.text().unwrap_or("");
        match c.tag_name().name() {
            "strategies" => names[p - 1] = Some(text.split_whitespace().map(String::from).collect()),
            "payoffs" => {
                let cells = text.split_whitespace().map(parse_rational).collect::<Result<Vec<_>>>()?;
                if cells.len() != rows * cols {
                    return Err(xml_err(format!("expected {} payoffs, found {}", rows * cols, cells.len())));
                }
                pays[p - 1] = Some(cells.chunks(cols.max(1)).map(<[Rational]>::to_vec).collect());
            }
            other => return Err(xml_err(format!("unknown element <{other}>"))),
        }
    }
    let [Some(a), Some(b)] = pays else {
        return Err(xml_err("payoffs for both players are required"));
    };
    let game = BimatrixGame::new(a, b)?;
    let [r, c] = names;
    let r = r.unwrap_or_else(|| game.row_names().to_vec());
    let c = c.unwrap_or_else(|| game.col_names().to_vec());
    game.with_names(r, c)
}

struct TreeBuilder {
    nodes: Vec<Node>,
    players: usize,
    /// Information-set key -> (player, members, move names).
    groups: BTreeMap<String, (usize, Vec<NodeId>, Vec<String>)>,
    next_anon: usize,
}

impl TreeBuilder {
    fn read(&mut self, el: roxmltree::Node, parent: Option<NodeId>) -> Result<NodeId> {
        let id = NodeId(self.nodes.len());
        self.nodes.push(Node {
            parent,
            children: Vec::new(),
            owner: Owner::Unassigned,
            infoset: None,
            probs: Vec::new(),
            payoffs: Vec::new(),
        });
        match el.tag_name().name() {
            "outcome" => {
                let mut pay = vec![Rational::zero(); self.players];
                for p in elements(el)? {
                    if p.tag_name().name() != "payoff" {
                        return Err(xml_err(format!("unknown element <{}>", p.tag_name().name())));
                    }
                    let k = attr_usize(p, "player")?;
                    if k == 0 || k > self.players {
                        return Err(xml_err(format!("payoff for unknown player {k}")));
                    }
                    pay[k - 1] = parse_rational(p.text().unwrap_or(""))?;
                }
                self.nodes[id.0].payoffs = pay;
            }
            "node" => {
                let owner = match el.attribute("player") {
                    None => Owner::Unassigned,
                    Some("chance") => Owner::Chance,
                    Some(p) => {
                        let k: usize = p.trim().parse().map_err(|_| xml_err(format!("bad player `{p}`")))?;
                        if k == 0 || k > self.players {
                            return Err(xml_err(format!("unknown player {k}")));
                        }
                        Owner::Player(k)
                    }
                };
                let kids_el = elements(el)?;
                if kids_el.is_empty() {
                    return Err(xml_err("<node> without children; leaves are <outcome>"));
                }
                let mut kids = Vec::new();
                let mut moves = Vec::new();
                let mut probs = Vec::new();
                for c in kids_el {
                    if !matches!(c.tag_name().name(), "node" | "outcome") {
                        return Err(xml_err(format!("unknown element <{}>", c.tag_name().name())));
                    }
                    match owner {
                        Owner::Player(_) => moves.push(
                            c.attribute("move")
                                .ok_or_else(|| xml_err("edge of a player node lacks `move`"))?
                                .to_string(),
                        ),
                        Owner::Chance => probs.push(parse_rational(
                            c.attribute("prob")
                                .ok_or_else(|| xml_err("edge of a chance node lacks `prob`"))?,
                        )?),
                        Owner::Unassigned => {}
                    }
                    kids.push(self.read(c, Some(id))?);
                }
                if owner == Owner::Chance
                    && (probs.iter().any(|p| p.is_negative() || *p > Rational::one())
                        || probs.iter().sum::<Rational>() != Rational::one())
                {
                    return Err(xml_err("chance probabilities must be in [0, 1] and sum to 1"));
                }
                if let Owner::Player(p) = owner {
                    let key = match el.attribute("iset") {
                        Some(k) => k.to_string(),
                        None => {
                            self.next_anon += 1;
                            format!("\u{0}{}", self.next_anon)
                        }
                    };
                    let entry = self.groups.entry(key).or_insert((p, Vec::new(), moves.clone()));
                    if entry.0 != p || entry.2 != moves {
                        return Err(xml_err("nodes of one information set differ in player or moves"));
                    }
                    entry.1.push(id);
                }
                let n = &mut self.nodes[id.0];
                n.owner = owner;
                n.children = kids;
                n.probs = probs;
            }
            other => return Err(xml_err(format!("unknown element <{other}>"))),
        }
        Ok(id)
    }

    fn finish(self, players: Vec<String>, settings: BTreeMap<String, String>) -> Result<GameTree> {
        let mut tree = GameTree {
            nodes: self.nodes.into_iter().map(Some).collect(),
            free_nodes: Vec::new(),
            infosets: Vec::new(),
            free_infosets: Vec::new(),
            root: NodeId(0),
            players,
            settings,
        };
        for (_, (player, members, moves)) in self.groups {
            let h = tree.alloc_infoset(Infoset {
                player,
                members: members.clone(),
                moves,
                custom_names: false,
            });
            for m in members {
                tree.node_mut(m)?.infoset = Some(h);
            }
        }
        // A set keeps default naming exactly when its names are what the
        // default scheme would assign.
        let mut counters: BTreeMap<usize, usize> = BTreeMap::new();
        for h in tree.infosets_bfs() {
            let set = tree.infosets[h.0].as_mut().expect("live");
            let c = counters.entry(set.player).or_insert(0);
            let defaults: Vec<String> = (0..set.moves.len()).map(|k| letter_name(*c + k, set.player == 1)).collect();
            if defaults == set.moves {
                *c += set.moves.len();
            } else {
                set.custom_names = true;
            }
        }
        Ok(tree)
    }
}
