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

//! Loading games and running a solver on them, shared by the command line
//! and the HTTP service.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::cancel::CancelToken;
use crate::components::{Clique, Component};
use crate::enumeration::{EnumOptions, ExtremeEquilibrium};
use crate::error::{Error, Result};
use crate::path::{self, PathEquilibrium};
use crate::report::{self, EnumerationReport, RenderMode};
use crate::sequence::{BehaviorStrategy, SequenceForm};
use crate::strategic::{BimatrixGame, InputMode, MixedStrategy};
use crate::tree::{from_xml, strategic_to_xml, to_xml, GameDocument, InfosetId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// XML if the text starts with `<`, matrix text otherwise.
    #[default]
    Auto,
    Xml,
    Matrix,
}

/// Parses a game. `mode` only applies to matrix text.
pub fn load_game(text: &str, format: Format, mode: InputMode) -> Result<GameDocument> {
    let xml = match format {
        Format::Xml => true,
        Format::Matrix => false,
        Format::Auto => text.trim_start().starts_with('<'),
    };
    if xml {
        return from_xml(text);
    }
    let game = BimatrixGame::parse_text(text, mode)?;
    Ok(GameDocument::Strategic {
        game,
        players: vec!["1".into(), "2".into()],
        settings: BTreeMap::new(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// All extreme equilibria with components.
    #[default]
    Enum,
    /// Lemke–Howson for one missing label.
    Lh,
    /// Lemke's method from a prior.
    Lemke,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolveOptions {
    pub algorithm: Algorithm,
    pub mode: RenderMode,
    /// Missing label for Lemke–Howson: a strategy name or a 1-based number
    /// counting rows first, then columns.
    pub label: Option<String>,
    /// Explicit prior `x1,x2,..;y1,y2,..`. On a tree without `strategic`
    /// these are realization plans in sequence order.
    pub prior: Option<String>,
    /// Seed for a random prior when `prior` is absent.
    pub seed: Option<u64>,
    pub threads: usize,
    /// Run Lemke on the strategic form of a tree instead of its sequence
    /// form.
    pub strategic: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            algorithm: Algorithm::Enum,
            mode: RenderMode::Both,
            label: None,
            prior: None,
            seed: None,
            threads: 1,
            strategic: false,
        }
    }
}

/// A solver result as plain data. Probabilities are exact fractions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Structured {
    Enumeration {
        equilibria: Vec<StructuredEquilibrium>,
        /// Each component as its list of maximal cliques, with 1-based
        /// strategy identifiers.
        components: Vec<Vec<Clique>>,
    },
    Path {
        title: String,
        equilibrium: StructuredEquilibrium,
        pivots: usize,
    },
    Behavior {
        infosets: Vec<StructuredInfoset>,
        u: Rational,
        v: Rational,
        pivots: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredEquilibrium {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idx1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idx2: Option<usize>,
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
    pub u: Rational,
    pub v: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredInfoset {
    pub player: usize,
    pub id: usize,
    pub moves: Vec<String>,
    pub probs: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutput {
    pub text: String,
    pub structured: Structured,
}

fn tree_only(doc: &GameDocument) -> Result<&crate::tree::GameTree> {
    match doc {
        GameDocument::Tree(t) => Ok(t),
        GameDocument::Strategic { .. } => Err(Error::Unsupported("this needs a game tree".into())),
    }
}

/// Resolves a Lemke–Howson label to `0..m+n`.
pub fn parse_label(g: &BimatrixGame, label: &str) -> Result<usize> {
    let label = label.trim();
    if let Some(k) = g.row_names().iter().position(|s| s == label) {
        return Ok(k);
    }
    if let Some(k) = g.col_names().iter().position(|s| s == label) {
        return Ok(g.rows() + k);
    }
    match label.parse::<usize>() {
        Ok(k) if (1..=g.rows() + g.cols()).contains(&k) => Ok(k - 1),
        _ => Err(Error::Parse(format!("unknown strategy label `{label}`"))),
    }
}

fn label_name(g: &BimatrixGame, label: usize) -> &str {
    if label < g.rows() {
        &g.row_names()[label]
    } else {
        &g.col_names()[label - g.rows()]
    }
}

/// Parses `x1,x2;y1,y2`. Commas or whitespace separate entries.
pub fn parse_prior(text: &str) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let parts: Vec<&str> = text.split(';').collect();
    if parts.len() != 2 {
        return Err(Error::Parse("a prior needs one `;` between the players".into()));
    }
    let vector = |s: &str| -> Result<Vec<Rational>> {
        s.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect()
    };
    Ok((vector(parts[0])?, vector(parts[1])?))
}

fn enum_structured(r: &EnumerationReport) -> Structured {
    Structured::Enumeration {
        equilibria: r
            .equilibria
            .iter()
            .map(|e| StructuredEquilibrium {
                idx1: Some(e.idx1),
                idx2: Some(e.idx2),
                x: e.x.probs.clone(),
                y: e.y.probs.clone(),
                u: e.u.clone(),
                v: e.v.clone(),
            })
            .collect(),
        components: r.components.iter().map(|c| c.cliques.clone()).collect(),
    }
}

fn path_structured(title: String, eq: &PathEquilibrium) -> Structured {
    Structured::Path {
        title,
        equilibrium: StructuredEquilibrium {
            idx1: None,
            idx2: None,
            x: eq.x.probs.clone(),
            y: eq.y.probs.clone(),
            u: eq.u.clone(),
            v: eq.v.clone(),
        },
        pivots: eq.pivots,
    }
}

fn behavior_structured(tree: &crate::tree::GameTree, bs: [&BehaviorStrategy; 2], u: &Rational, v: &Rational, pivots: usize) -> Structured {
    let infosets = bs
        .iter()
        .flat_map(|b| {
            b.local.iter().map(move |(h, probs)| StructuredInfoset {
                player: b.player,
                id: h.0,
                moves: tree.infoset(*h).map(|s| s.moves().to_vec()).unwrap_or_default(),
                probs: probs.clone(),
            })
        })
        .collect();
    Structured::Behavior {
        infosets,
        u: u.clone(),
        v: v.clone(),
        pivots,
    }
}

/// Runs the selected algorithm.
pub fn solve(doc: &GameDocument, opts: &SolveOptions, cancel: &CancelToken) -> Result<SolveOutput> {
    match opts.algorithm {
        Algorithm::Enum => {
            let g = doc.strategic_form()?;
            let eo = EnumOptions {
                threads: opts.threads.max(1),
                cancel: cancel.clone(),
            };
            let r = EnumerationReport::compute(&g, &eo)?;
            Ok(SolveOutput {
                text: r.render(opts.mode),
                structured: enum_structured(&r),
            })
        }
        Algorithm::Lh => {
            let g = doc.strategic_form()?;
            let label = match &opts.label {
                Some(l) => parse_label(&g, l)?,
                None => 0,
            };
            let eq = path::lemke_howson(&g, label, cancel)?;
            let title = format!("Lemke-Howson, missing label {}", label_name(&g, label));
            Ok(SolveOutput {
                text: report::render_path(&g, &title, &eq, opts.mode),
                structured: path_structured(title, &eq),
            })
        }
        Algorithm::Lemke => match doc {
            GameDocument::Tree(tree) if !opts.strategic => {
                let sf = SequenceForm::new(tree)?;
                let (xp, yp) = match (&opts.prior, opts.seed) {
                    (Some(p), _) => parse_prior(p)?,
                    (None, Some(seed)) => {
                        let mut rng = ChaCha8Rng::seed_from_u64(seed);
                        let x = path::random_plan(&sf, 1, &mut rng);
                        (x, path::random_plan(&sf, 2, &mut rng))
                    }
                    (None, None) => (path::uniform_plan(&sf, 1), path::uniform_plan(&sf, 2)),
                };
                let eq = path::lemke_sequence(&sf, &xp, &yp, cancel)?;
                let text = report::render_behavior(tree, &eq.behavior1, &eq.behavior2, (&eq.u, &eq.v), eq.pivots, opts.mode);
                Ok(SolveOutput {
                    text,
                    structured: behavior_structured(tree, [&eq.behavior1, &eq.behavior2], &eq.u, &eq.v, eq.pivots),
                })
            }
            _ => {
                let g = doc.strategic_form()?;
                let (xp, yp) = match (&opts.prior, opts.seed) {
                    (Some(p), _) => parse_prior(p)?,
                    (None, Some(seed)) => {
                        let mut rng = ChaCha8Rng::seed_from_u64(seed);
                        let x = path::random_prior(&mut rng, g.rows());
                        (x, path::random_prior(&mut rng, g.cols()))
                    }
                    (None, None) => (path::uniform_prior(g.rows()), path::uniform_prior(g.cols())),
                };
                let eq = path::lemke_prior(&g, &xp, &yp, cancel)?;
                let title = "Lemke from prior".to_string();
                Ok(SolveOutput {
                    text: report::render_path(&g, &title, &eq, opts.mode),
                    structured: path_structured(title, &eq),
                })
            }
        },
    }
}

/// Re-renders structured output against the game it came from.
pub fn render_structured(doc: &GameDocument, s: &Structured, mode: RenderMode) -> Result<String> {
    let mixed = |e: &StructuredEquilibrium| -> Result<(MixedStrategy, MixedStrategy)> {
        Ok((MixedStrategy::new(1, e.x.clone())?, MixedStrategy::new(2, e.y.clone())?))
    };
    match s {
        Structured::Enumeration { equilibria, components } => {
            let equilibria = equilibria
                .iter()
                .map(|e| {
                    let (x, y) = mixed(e)?;
                    Ok(ExtremeEquilibrium {
                        x,
                        y,
                        u: e.u.clone(),
                        v: e.v.clone(),
                        idx1: e.idx1.ok_or_else(|| Error::Parse("missing idx1".into()))?,
                        idx2: e.idx2.ok_or_else(|| Error::Parse("missing idx2".into()))?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let components = components
                .iter()
                .map(|cliques| {
                    let mut edges: Vec<(usize, usize)> = cliques
                        .iter()
                        .flat_map(|c| c.left.iter().flat_map(move |&l| c.right.iter().map(move |&r| (l, r))))
                        .collect();
                    edges.sort();
                    edges.dedup();
                    Component {
                        edges,
                        cliques: cliques.clone(),
                    }
                })
                .collect();
            let r = EnumerationReport {
                game: doc.strategic_form()?,
                equilibria,
                components,
            };
            Ok(r.render(mode))
        }
        Structured::Path { title, equilibrium, pivots } => {
            let (x, y) = mixed(equilibrium)?;
            let eq = PathEquilibrium {
                x,
                y,
                u: equilibrium.u.clone(),
                v: equilibrium.v.clone(),
                pivots: *pivots,
            };
            Ok(report::render_path(&doc.strategic_form()?, title, &eq, mode))
        }
        Structured::Behavior { infosets, u, v, pivots } => {
            let tree = tree_only(doc)?;
            let mut bs = [1, 2].map(|player| BehaviorStrategy {
                player,
                local: BTreeMap::new(),
            });
            for h in infosets {
                let b = bs
                    .get_mut(h.player.wrapping_sub(1))
                    .ok_or_else(|| Error::Parse(format!("no player {}", h.player)))?;
                b.local.insert(InfosetId(h.id), h.probs.clone());
            }
            Ok(report::render_behavior(tree, &bs[0], &bs[1], (u, v), *pivots, mode))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Strategic,
    Sequence,
    Xml,
}

/// Converts a game to another presentation.
pub fn convert(doc: &GameDocument, target: Target) -> Result<String> {
    match target {
        Target::Strategic => Ok(report::render_strategic_form(&doc.strategic_form()?)),
        Target::Sequence => Ok(report::render_sequence_form(&SequenceForm::new(tree_only(doc)?)?)),
        Target::Xml => Ok(match doc {
            GameDocument::Tree(t) => to_xml(t),
            GameDocument::Strategic { game, settings, .. } => strategic_to_xml(game, settings),
        }),
    }
}

/// How a failure should be reported to a caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The input could not be read or does not describe a valid game.
    Input,
    /// A valid game this engine cannot handle.
    Unsupported,
    /// Ran out of time or was interrupted.
    Timeout,
    Internal,
}

pub fn classify(e: &Error) -> ErrorClass {
    match e {
        Error::Unsupported(_) | Error::ImperfectRecall(_) => ErrorClass::Unsupported,
        Error::Timeout | Error::Cancelled => ErrorClass::Timeout,
        Error::Internal(_) | Error::ZeroPivot { .. } => ErrorClass::Internal,
        _ => ErrorClass::Input,
    }
}
