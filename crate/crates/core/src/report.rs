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

//! Plain-text reports of games and equilibria.
//!
//! The enumeration report looks like this:
//!
//! ```text
//! Strategic form: 
//! 2 x 2 Payoff player 1
//!
//!   l r
//! T 5 3
//! B 6 4
//! ...
//! EE = Extreme Equilibrium, EP = Expected Payoffs
//!
//! Rational:
//! EE 1 P1: (1) 0 1 EP= 4 P2: (1) 0 1 EP= 4 
//!
//! Decimal:
//! EE 1 P1: (1) 0 1.0 EP= 4.0 P2: (1) 0 1.0 EP= 4.0 
//!
//! Connected component 1:
//! {1}  x  {1}
//! ```
//!
//! Columns are right-aligned within each block; only the token sequence is
//! meant to be stable.

use std::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::components::{connected_components, Clique, Component};
use crate::enumeration::{enumerate_with, EnumOptions, ExtremeEquilibrium};
use crate::error::Result;
use crate::path::PathEquilibrium;
use crate::sequence::{BehaviorStrategy, SequenceForm};
use crate::strategic::BimatrixGame;
use crate::tree::GameTree;

/// Which number blocks to print.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum RenderMode {
    Rational,
    Decimal,
    #[default]
    Both,
}

/// Rounds half away from zero to 4 places. Zero prints as `0`, other
/// values keep at least one decimal digit, so one prints as `1.0`.
pub fn render_decimal(r: &Rational) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let ten_k = BigInt::from(10_000);
    let num: BigInt = r.numer().abs() * &ten_k * 2 + r.denom();
    let den: BigInt = r.denom() * 2;
    let q = num.div_floor(&den);
    let (int, frac) = q.div_rem(&ten_k);
    let mut digits = format!("{:0>4}", frac.to_string());
    while digits.len() > 1 && digits.ends_with('0') {
        digits.pop();
    }
    let sign = if r.is_negative() && !q.is_zero() { "-" } else { "" };
    format!("{sign}{int}.{digits}")
}

fn render_value(r: &Rational, mode: RenderMode) -> String {
    match mode {
        RenderMode::Decimal => render_decimal(r),
        _ => r.to_string(),
    }
}

/// Lays out rows of cells, each column right-aligned to its widest cell
/// unless listed in `left`.
fn align(rows: &[Vec<String>], left: &[usize]) -> Vec<String> {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    rows.iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .map(|(c, s)| {
                    let w = widths[c];
                    if left.contains(&c) {
                        format!("{s:<w$}")
                    } else {
                        format!("{s:>w$}")
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect()
}

fn matrix_block(g: &BimatrixGame, player: usize) -> String {
    let mut rows = vec![std::iter::once(String::new()).chain(g.col_names().iter().cloned()).collect::<Vec<_>>()];
    for (name, row) in g.row_names().iter().zip(g.payoffs(player)) {
        rows.push(std::iter::once(name.clone()).chain(row.iter().map(Rational::to_string)).collect());
    }
    let mut out = format!("{} x {} Payoff player {player}\n\n", g.rows(), g.cols());
    for line in align(&rows, &[0]) {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Both payoff tables under a `Strategic form:` heading.
pub fn render_strategic_form(g: &BimatrixGame) -> String {
    format!("Strategic form: \n{}\n{}", matrix_block(g, 1), matrix_block(g, 2))
}

fn ee_lines(eqs: &[ExtremeEquilibrium], mode: RenderMode) -> Vec<String> {
    let rows: Vec<Vec<String>> = eqs
        .iter()
        .enumerate()
        .map(|(k, e)| {
            let mut r = vec!["EE".to_string(), (k + 1).to_string(), "P1:".into(), format!("({})", e.idx1)];
            r.extend(e.x.probs.iter().map(|p| render_value(p, mode)));
            r.push("EP=".into());
            r.push(render_value(&e.u, mode));
            r.push("P2:".into());
            r.push(format!("({})", e.idx2));
            r.extend(e.y.probs.iter().map(|p| render_value(p, mode)));
            r.push("EP=".into());
            r.push(render_value(&e.v, mode));
            r
        })
        .collect();
    align(&rows, &[]).into_iter().map(|l| l + " ").collect()
}

fn set_text(s: &std::collections::BTreeSet<usize>) -> String {
    let items: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

/// `{1}  x  {1, 2}`
pub fn render_clique(c: &Clique) -> String {
    format!("{}  x  {}", set_text(&c.left), set_text(&c.right))
}

/// All extreme equilibria of a game with their components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationReport {
    pub game: BimatrixGame,
    pub equilibria: Vec<ExtremeEquilibrium>,
    pub components: Vec<Component>,
}

impl EnumerationReport {
    pub fn compute(game: &BimatrixGame, opts: &EnumOptions) -> Result<Self> {
        let equilibria = enumerate_with(game, opts)?;
        let components = connected_components(&equilibria);
        Ok(EnumerationReport {
            game: game.clone(),
            equilibria,
            components,
        })
    }

    pub fn render(&self, mode: RenderMode) -> String {
        let mut out = render_strategic_form(&self.game);
        out.push_str("\nEE = Extreme Equilibrium, EP = Expected Payoffs\n");
        for (m, title) in [(RenderMode::Rational, "Rational:"), (RenderMode::Decimal, "Decimal:")] {
            if mode == m || mode == RenderMode::Both {
                out.push_str(&format!("\n{title}\n"));
                for line in ee_lines(&self.equilibria, m) {
                    out.push_str(&line);
                    out.push('\n');
                }
            }
        }
        for (k, c) in self.components.iter().enumerate() {
            out.push_str(&format!("\nConnected component {}:\n", k + 1));
            for cl in &c.cliques {
                out.push_str(&render_clique(cl));
                out.push('\n');
            }
        }
        out
    }
}

/// A single equilibrium found by path following, printed as the only EE
/// of the game.
pub fn render_path(g: &BimatrixGame, title: &str, eq: &PathEquilibrium, mode: RenderMode) -> String {
    let mut out = render_strategic_form(g);
    let _ = writeln!(out, "\n{title} ({} pivots)", eq.pivots);
    out.push_str("EE = Extreme Equilibrium, EP = Expected Payoffs\n");
    let single = [ExtremeEquilibrium {
        x: eq.x.clone(),
        y: eq.y.clone(),
        u: eq.u.clone(),
        v: eq.v.clone(),
        idx1: 1,
        idx2: 1,
    }];
    for (m, heading) in [(RenderMode::Rational, "Rational:"), (RenderMode::Decimal, "Decimal:")] {
        if mode == m || mode == RenderMode::Both {
            let _ = writeln!(out, "\n{heading}");
            for line in ee_lines(&single, m) {
                let _ = writeln!(out, "{line}");
            }
        }
    }
    out
}

fn behavior_lines(tree: &GameTree, beh: &BehaviorStrategy, mode: RenderMode) -> Vec<String> {
    let rows: Vec<Vec<String>> = tree
        .infosets_dfs()
        .into_iter()
        .filter(|h| beh.local.contains_key(h))
        .map(|h| {
            let moves = tree.infoset(h).map(|s| s.moves().join(" ")).unwrap_or_default();
            let mut r = vec![format!("P{}", beh.player), format!("[{moves}]:")];
            r.extend(beh.local[&h].iter().map(|p| render_value(p, mode)));
            r
        })
        .collect();
    rows.into_iter().map(|r| r.join(" ")).collect()
}

/// Behavior strategies found on the sequence form.
pub fn render_behavior(
    tree: &GameTree,
    b1: &BehaviorStrategy,
    b2: &BehaviorStrategy,
    payoffs: (&Rational, &Rational),
    pivots: usize,
    mode: RenderMode,
) -> String {
    let mut out = format!("Sequence form equilibrium ({pivots} pivots)\n");
    for (m, heading) in [(RenderMode::Rational, "Rational:"), (RenderMode::Decimal, "Decimal:")] {
        if mode == m || mode == RenderMode::Both {
            let _ = writeln!(out, "\n{heading}");
            for line in behavior_lines(tree, b1, m).into_iter().chain(behavior_lines(tree, b2, m)) {
                let _ = writeln!(out, "{line}");
            }
            let _ = writeln!(out, "EP= {} {}", render_value(payoffs.0, m), render_value(payoffs.1, m));
        }
    }
    out
}

/// The sequence form as a payoff table plus constraints.
pub fn render_sequence_form(sf: &SequenceForm) -> String {
    format!("Sequence form:\n{sf}")
}
