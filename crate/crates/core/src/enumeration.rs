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

//! All extreme equilibria of a bimatrix game.
//!
//! Only the vertices of the player-1 polyhedron `P` are enumerated. For each
//! vertex the labels it lacks form a set `L`; the vertices of the face of
//! `Q` where all of `L` is tight complete it to an equilibrium.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::mpsc;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::cancel::CancelToken;
use crate::error::{Error, Result};
use crate::polyhedron::{HPolyhedron, LabeledVertex};
use crate::strategic::{BimatrixGame, MixedStrategy};

/// A vertex pair of the best response polyhedra that is completely labeled.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremeEquilibrium {
    pub x: MixedStrategy,
    pub y: MixedStrategy,
    /// Expected payoff to player 1.
    pub u: Rational,
    /// Expected payoff to player 2.
    pub v: Rational,
    /// 1-based identifier of `x` among the distinct player-1 strategies.
    pub idx1: usize,
    /// 1-based identifier of `y` among the distinct player-2 strategies.
    pub idx2: usize,
}

#[derive(Debug, Clone)]
pub struct EnumOptions {
    /// Worker threads probing faces of `Q`; 1 runs everything inline.
    pub threads: usize,
    pub cancel: CancelToken,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            threads: 1,
            cancel: CancelToken::new(),
        }
    }
}

/// `P` over `(x, v)` and `Q` over `(y, u)`. Labels `0..m` belong to the rows
/// of the game and `m..m+n` to the columns.
pub fn best_response_polyhedra(g: &BimatrixGame) -> (HPolyhedron, HPolyhedron) {
    let (m, n) = (g.rows(), g.cols());
    let unit = |len: usize, k: usize| -> Vec<Rational> {
        (0..len)
            .map(|t| if t == k { -Rational::one() } else { Rational::zero() })
            .collect()
    };
    let mut x_names: Vec<String> = g.row_names().to_vec();
    x_names.push("v".into());
    let mut p = HPolyhedron::new(m + 1)
        .with_names(x_names)
        .expect("one name per variable");
    for i in 0..m {
        p.add_inequality(unit(m + 1, i), Rational::zero(), Some(i))
            .expect("dimension");
    }
    for j in 0..n {
        let mut c: Vec<Rational> = (0..m).map(|i| g.b()[i][j].clone()).collect();
        c.push(-Rational::one());
        p.add_inequality(c, Rational::zero(), Some(m + j))
            .expect("dimension");
    }
    let mut sum = vec![Rational::one(); m];
    sum.push(Rational::zero());
    p.add_equation(sum, Rational::one()).expect("dimension");

    let mut y_names: Vec<String> = g.col_names().to_vec();
    y_names.push("u".into());
    let mut q = HPolyhedron::new(n + 1)
        .with_names(y_names)
        .expect("one name per variable");
    for i in 0..m {
        let mut c = g.a()[i].clone();
        c.push(-Rational::one());
        q.add_inequality(c, Rational::zero(), Some(i)).expect("dimension");
    }
    for j in 0..n {
        q.add_inequality(unit(n + 1, j), Rational::zero(), Some(m + j))
            .expect("dimension");
    }
    let mut sum = vec![Rational::one(); n];
    sum.push(Rational::zero());
    q.add_equation(sum, Rational::one()).expect("dimension");
    (p, q)
}

/// Vertices of `q` at which every inequality labeled in `labels` is tight.
/// Each vertex reports all labels it has in `q`.
pub fn face_vertices(q: &HPolyhedron, labels: &BTreeSet<usize>, cancel: &CancelToken) -> Result<Vec<LabeledVertex>> {
    let face = q.face(labels);
    let mut out = face.enumerate_vertices(cancel)?;
    for v in &mut out {
        v.labels = q.labels_at(&v.coords);
    }
    Ok(out)
}

pub fn enumerate_extreme_equilibria(g: &BimatrixGame) -> Result<Vec<ExtremeEquilibrium>> {
    enumerate_with(g, &EnumOptions::default())
}

type Pair = (Vec<Rational>, Vec<Rational>);

fn probe(g: &BimatrixGame, q: &HPolyhedron, pv: &LabeledVertex, cancel: &CancelToken) -> Result<Vec<Pair>> {
    let (m, n) = (g.rows(), g.cols());
    let missing: BTreeSet<usize> = (0..m + n).filter(|l| !pv.labels.contains(l)).collect();
    let x = pv.coords[..m].to_vec();
    Ok(face_vertices(q, &missing, cancel)?
        .into_iter()
        .map(|qv| (x.clone(), qv.coords[..n].to_vec()))
        .collect())
}

pub fn enumerate_with(g: &BimatrixGame, opts: &EnumOptions) -> Result<Vec<ExtremeEquilibrium>> {
    let (p, q) = best_response_polyhedra(g);
    let cancel = &opts.cancel;
    let mut found: Vec<Pair> = Vec::new();
    if opts.threads <= 1 {
        for pv in p.vertices(cancel)? {
            found.extend(probe(g, &q, &pv?, cancel)?);
        }
    } else {
        let (work_tx, work_rx) = mpsc::channel::<(usize, LabeledVertex)>();
        let (done_tx, done_rx) = mpsc::channel::<(usize, Result<Vec<Pair>>)>();
        let work_rx = Mutex::new(work_rx);
        let mut produced: Result<()> = Ok(());
        std::thread::scope(|scope| {
            for _ in 0..opts.threads {
                let done_tx = done_tx.clone();
                let (work_rx, q) = (&work_rx, &q);
                scope.spawn(move || loop {
                    let next = work_rx.lock().expect("queue lock").recv();
                    let Ok((seq, pv)) = next else { break };
                    let _ = done_tx.send((seq, probe(g, q, &pv, cancel)));
                });
            }
            drop(done_tx);
            produced = (|| {
                for (seq, pv) in p.vertices(cancel)?.enumerate() {
                    let _ = work_tx.send((seq, pv?));
                }
                Ok(())
            })();
            drop(work_tx);
        });
        produced?;
        let mut by_seq: BTreeMap<usize, Vec<Pair>> = BTreeMap::new();
        for (seq, res) in done_rx {
            by_seq.insert(seq, res?);
        }
        found = by_seq.into_values().flatten().collect();
    }
    assemble(g, found)
}

/// Deduplicates, assigns strategy identifiers by first discovery and sorts
/// by `(idx1, idx2)`.
fn assemble(g: &BimatrixGame, found: Vec<Pair>) -> Result<Vec<ExtremeEquilibrium>> {
    let mut ids1: Vec<Vec<Rational>> = Vec::new();
    let mut ids2: Vec<Vec<Rational>> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let id_of = |ids: &mut Vec<Vec<Rational>>, s: &Vec<Rational>| match ids.iter().position(|t| t == s) {
        Some(k) => k + 1,
        None => {
            ids.push(s.clone());
            ids.len()
        }
    };
    for (x, y) in found {
        if !seen.insert((x.clone(), y.clone())) {
            continue;
        }
        let idx1 = id_of(&mut ids1, &x);
        let idx2 = id_of(&mut ids2, &y);
        let x = MixedStrategy::new(1, x)?;
        let y = MixedStrategy::new(2, y)?;
        let (u, v) = g.expected_payoffs(&x, &y)?;
        if !g.is_equilibrium(&x, &y) {
            return Err(Error::Internal("enumerated profile is not an equilibrium".into()));
        }
        out.push(ExtremeEquilibrium {
            x,
            y,
            u,
            v,
            idx1,
            idx2,
        });
    }
    out.sort_by_key(|e| (e.idx1, e.idx2));
    Ok(out)
}
