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

//! Vertex enumeration of pointed polyhedra by lexicographic reverse search.
//!
//! A polyhedron is given by inequalities `a z <= b` (each optionally tagged
//! with a label) and equations `a z = b` over free variables `z`. The
//! dictionary keeps every `z` basic; inequality slacks `s` are the
//! nonnegative variables and equation slacks are fixed at zero.
//!
//! Starting from a vertex found by a phase-1 simplex, the objective
//! "minimize the sum of the starting cobasic slacks" has that basis as its
//! unique optimum. Every lexicographically feasible basis reaches it by
//! simplex pivots (least-index entering, lexicographic leaving), and reverse
//! search walks that tree backwards. A vertex is reported only from its
//! lexicographically minimal basis.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{clear_denominators, IntegerTableau, Rational};
use crate::cancel::CancelToken;
use crate::error::{Error, Result};

/// One row `coeffs . z <= rhs` (or `= rhs` for equations).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    pub label: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolyhedron {
    dim: usize,
    names: Vec<String>,
    inequalities: Vec<Constraint>,
    equations: Vec<Constraint>,
}

/// A vertex with the labels of its tight inequalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledVertex {
    pub coords: Vec<Rational>,
    pub labels: BTreeSet<usize>,
    /// Indices of all tight inequalities.
    pub tight: Vec<usize>,
    /// Indices of the inequalities whose slacks are cobasic in the defining
    /// basis.
    pub cobasis: Vec<usize>,
}

/// Outcome of [`HPolyhedron::maximize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        point: Vec<Rational>,
        value: Rational,
        /// Inequalities whose slacks are cobasic in the optimal basis.
        cobasis: Vec<usize>,
    },
}

impl HPolyhedron {
    pub fn new(dim: usize) -> Self {
        HPolyhedron {
            dim,
            names: (0..dim).map(|j| format!("z{}", j + 1)).collect(),
            inequalities: Vec::new(),
            equations: Vec::new(),
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::Dimension("one name per variable".into()));
        }
        self.names = names;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn inequalities(&self) -> &[Constraint] {
        &self.inequalities
    }

    pub fn equations(&self) -> &[Constraint] {
        &self.equations
    }

    pub fn add_inequality(&mut self, coeffs: Vec<Rational>, rhs: Rational, label: Option<usize>) -> Result<()> {
        self.check_len(&coeffs)?;
        self.inequalities.push(Constraint { coeffs, rhs, label });
        Ok(())
    }

    pub fn add_equation(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> Result<()> {
        self.check_len(&coeffs)?;
        self.equations.push(Constraint {
            coeffs,
            rhs,
            label: None,
        });
        Ok(())
    }

    fn check_len(&self, coeffs: &[Rational]) -> Result<()> {
        if coeffs.len() != self.dim {
            return Err(Error::Dimension(format!(
                "constraint has {} coefficients, polyhedron has dimension {}",
                coeffs.len(),
                self.dim
            )));
        }
        Ok(())
    }

    /// The face where the inequalities carrying any of `labels` are tight.
    pub fn face(&self, labels: &BTreeSet<usize>) -> HPolyhedron {
        let mut face = HPolyhedron {
            dim: self.dim,
            names: self.names.clone(),
            inequalities: Vec::new(),
            equations: self.equations.clone(),
        };
        for c in &self.inequalities {
            match c.label {
                Some(l) if labels.contains(&l) => face.equations.push(c.clone()),
                _ => face.inequalities.push(c.clone()),
            }
        }
        face
    }

    /// Labels of the inequalities tight at `point`.
    pub fn labels_at(&self, point: &[Rational]) -> BTreeSet<usize> {
        self.inequalities
            .iter()
            .filter(|c| dot(&c.coeffs, point) == c.rhs)
            .filter_map(|c| c.label)
            .collect()
    }

    /// Streams all vertices. An empty polyhedron yields nothing; one with a
    /// lineality space is rejected.
    pub fn vertices(&self, cancel: &CancelToken) -> Result<VertexIter> {
        let dict = Dictionary::feasible(self, cancel.clone())?;
        let dict = match dict {
            Some(mut d) => {
                d.prepare_reverse_search()?;
                Some(d)
            }
            None => None,
        };
        Ok(VertexIter {
            dict,
            stack: Vec::new(),
            next: 0,
            started: false,
            done: false,
        })
    }

    pub fn enumerate_vertices(&self, cancel: &CancelToken) -> Result<Vec<LabeledVertex>> {
        self.vertices(cancel)?.collect()
    }

    /// Maximizes `objective . z` with the simplex method (least-index rule).
    pub fn maximize(&self, objective: &[Rational], cancel: &CancelToken) -> Result<LpOutcome> {
        self.check_len(objective)?;
        let Some(mut d) = Dictionary::feasible(self, cancel.clone())? else {
            return Ok(LpOutcome::Infeasible);
        };
        let scaled = clear_denominators(objective);
        let mut coeffs = vec![BigInt::zero(); d.t.ncols()];
        for (j, c) in scaled.iter().enumerate() {
            coeffs[j] = -c;
        }
        let row = d.push_objective(&coeffs)?;
        if !d.bland_simplex(row)? {
            return Ok(LpOutcome::Unbounded);
        }
        let point = d.point();
        let value = dot(objective, &point);
        let cobasis = (0..d.k).filter(|&i| !d.t.is_basic(d.s_col(i))).collect();
        Ok(LpOutcome::Optimal {
            point,
            value,
            cobasis,
        })
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

/// Iterator returned by [`HPolyhedron::vertices`].
pub struct VertexIter {
    dict: Option<Dictionary>,
    stack: Vec<usize>,
    next: usize,
    started: bool,
    done: bool,
}

impl VertexIter {
    fn advance(&mut self) -> Result<Option<LabeledVertex>> {
        let Some(d) = self.dict.as_mut() else {
            return Ok(None);
        };
        if !self.started {
            self.started = true;
            if d.is_lex_min() {
                return Ok(Some(d.vertex()));
            }
        }
        loop {
            while self.next < d.k {
                let rank = self.next;
                self.next += 1;
                if d.reverse(rank)? {
                    self.stack.push(self.next);
                    self.next = 0;
                    if d.is_lex_min() {
                        return Ok(Some(d.vertex()));
                    }
                }
            }
            let Some(resume) = self.stack.pop() else {
                return Ok(None);
            };
            let (row, col) = d
                .select_pivot()
                .ok_or_else(|| Error::Internal("reverse search lost its parent".into()))?;
            d.pivot(row, col)?;
            self.next = resume;
        }
    }
}

impl Iterator for VertexIter {
    type Item = Result<LabeledVertex>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.advance() {
            Ok(Some(v)) => Some(Ok(v)),
            Ok(None) => {
                self.done = true;
                None
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

/// Column layout: `z` (0..dim), inequality slacks, equation slacks, then
/// auxiliary columns (phase-1 variable, objective variables). Only
/// inequality slacks ever enter the basis after setup.
struct Dictionary {
    t: IntegerTableau,
    dim: usize,
    k: usize,
    n_eq: usize,
    labels: Vec<Option<usize>>,
    dead: Vec<bool>,
    artificial: Option<usize>,
    obj_row: Option<usize>,
    rank: Vec<usize>,
    by_rank: Vec<usize>,
    cancel: CancelToken,
}

impl Dictionary {
    /// Builds a dictionary at a feasible basis with every `z` basic, or
    /// returns `None` when the polyhedron is empty.
    fn feasible(poly: &HPolyhedron, cancel: CancelToken) -> Result<Option<Self>> {
        let dim = poly.dim;
        let k = poly.inequalities.len();
        let mut matrix = Vec::new();
        let mut rhs = Vec::new();
        for c in poly.inequalities.iter().chain(&poly.equations) {
            let mut all = c.coeffs.clone();
            all.push(c.rhs.clone());
            let mut ints = clear_denominators(&all);
            rhs.push(ints.pop().expect("rhs"));
            matrix.push(ints);
        }
        let nrows = matrix.len();
        if nrows == 0 {
            if dim == 0 {
                matrix.clear();
            } else {
                return Err(Error::Unsupported("polyhedron is not pointed".into()));
            }
        }
        let t = if nrows == 0 {
            IntegerTableau::new(Vec::new(), Vec::new(), Vec::new())?
        } else {
            IntegerTableau::with_identity(matrix, rhs)?
        };
        let mut d = Dictionary {
            t,
            dim,
            k,
            n_eq: poly.equations.len(),
            labels: poly.inequalities.iter().map(|c| c.label).collect(),
            dead: vec![false; nrows],
            artificial: None,
            obj_row: None,
            rank: (0..k).collect(),
            by_rank: (0..k).collect(),
            cancel,
        };
        // Equations: pivot a decision variable into each equation row.
        for l in 0..poly.equations.len() {
            let row = k + l;
            match (0..dim).find(|&j| !d.t.is_basic(j) && !d.t.entry(row, j).is_zero()) {
                Some(j) => d.pivot(row, j)?,
                None if d.t.rhs(row).is_zero() => d.dead[row] = true,
                None => return Ok(None),
            }
        }
        for j in 0..dim {
            if d.t.is_basic(j) {
                continue;
            }
            let row = (0..nrows)
                .find(|&r| d.is_slack_row(r) && !d.t.entry(r, j).is_zero())
                .ok_or_else(|| Error::Unsupported("polyhedron is not pointed".into()))?;
            d.pivot(row, j)?;
        }
        let worst = (0..nrows)
            .filter(|&r| d.is_slack_row(r) && d.t.rhs(r).is_negative())
            .min_by(|&a, &b| d.t.rhs(a).cmp(d.t.rhs(b)));
        if let Some(worst) = worst {
            if !d.phase_one(worst)? {
                return Ok(None);
            }
        }
        Ok(Some(d))
    }

    fn s_col(&self, i: usize) -> usize {
        self.dim + i
    }

    fn is_slack_col(&self, col: usize) -> bool {
        col >= self.dim && col < self.dim + self.k
    }

    fn is_slack_row(&self, r: usize) -> bool {
        !self.dead[r] && self.is_slack_col(self.t.basic(r))
    }

    /// Rows whose basic variable is sign-restricted.
    fn is_restricted_row(&self, r: usize) -> bool {
        !self.dead[r]
            && Some(r) != self.obj_row
            && (self.is_slack_col(self.t.basic(r)) || Some(self.t.basic(r)) == self.artificial)
    }

    fn pivot(&mut self, row: usize, col: usize) -> Result<()> {
        self.cancel.check()?;
        self.t.pivot(row, col)
    }

    fn push_aux_column(&mut self, entries: Vec<BigInt>) -> Result<usize> {
        self.t.add_column(entries)
    }

    fn push_objective(&mut self, coeffs: &[BigInt]) -> Result<usize> {
        let (row, _) = self.t.add_row(coeffs, BigInt::zero())?;
        self.dead.push(false);
        self.obj_row = Some(row);
        Ok(row)
    }

    fn pop_objective(&mut self) {
        self.t.remove_last_row();
        self.dead.pop();
        self.obj_row = None;
    }

    /// Phase 1: an auxiliary variable relaxes every inequality; minimizing it
    /// to zero finds a feasible basis. Returns false if none exists.
    fn phase_one(&mut self, worst: usize) -> Result<bool> {
        let scale = self.t.scale().clone();
        let entries = (0..self.t.nrows())
            .map(|r| if self.is_slack_row(r) { -&scale } else { BigInt::zero() })
            .collect();
        let a = self.push_aux_column(entries)?;
        self.artificial = Some(a);
        self.pivot(worst, a)?;
        let mut coeffs = vec![BigInt::zero(); self.t.ncols()];
        coeffs[a] = BigInt::from(1);
        let obj = self.push_objective(&coeffs)?;
        if !self.bland_simplex(obj)? {
            return Err(Error::Internal("phase 1 unbounded".into()));
        }
        let feasible = match self.t.row_of(a) {
            Some(r) if self.t.rhs(r).is_positive() => false,
            Some(r) => {
                match (0..self.k)
                    .map(|i| self.s_col(i))
                    .find(|&c| !self.t.is_basic(c) && !self.t.entry(r, c).is_zero())
                {
                    Some(c) => self.pivot(r, c)?,
                    None => self.dead[r] = true,
                }
                true
            }
            None => true,
        };
        self.pop_objective();
        Ok(feasible)
    }

    /// Simplex with the least-index rule on objective row `obj`, maximizing
    /// its basic variable. Returns false if unbounded.
    fn bland_simplex(&mut self, obj: usize) -> Result<bool> {
        loop {
            let entering = (0..self.k)
                .map(|i| self.s_col(i))
                .find(|&c| !self.t.is_basic(c) && self.t.entry(obj, c).is_negative());
            let Some(col) = entering else {
                return Ok(true);
            };
            let mut best: Option<usize> = None;
            for r in 0..self.t.nrows() {
                if !self.is_restricted_row(r) || !self.t.entry(r, col).is_positive() {
                    continue;
                }
                best = match best {
                    None => Some(r),
                    Some(b) => {
                        let lhs = self.t.rhs(r) * self.t.entry(b, col);
                        let rhs = self.t.rhs(b) * self.t.entry(r, col);
                        if lhs < rhs || (lhs == rhs && self.t.basic(r) < self.t.basic(b)) {
                            Some(r)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            let Some(row) = best else {
                return Ok(false);
            };
            self.pivot(row, col)?;
        }
    }

    /// Orders slacks so the current cobasis comes last and installs the
    /// objective that makes the current basis the unique optimum.
    fn prepare_reverse_search(&mut self) -> Result<()> {
        let (cobasic, basic): (Vec<usize>, Vec<usize>) =
            (0..self.k).partition(|&i| !self.t.is_basic(self.s_col(i)));
        self.by_rank = basic.into_iter().chain(cobasic.iter().copied()).collect();
        for (r, &i) in self.by_rank.iter().enumerate() {
            self.rank[i] = r;
        }
        let mut coeffs = vec![BigInt::zero(); self.t.ncols()];
        for &i in &cobasic {
            coeffs[self.s_col(i)] = BigInt::from(1);
        }
        self.push_objective(&coeffs)?;
        Ok(())
    }

    /// Compares rows `a` and `b` by the ratio vectors `(rhs, B^-1 row)` over
    /// the entering column's entries; true if `a` is lexicographically
    /// smaller.
    fn lex_less(&self, a: usize, b: usize, col: usize) -> bool {
        let pa = self.t.entry(a, col);
        let pb = self.t.entry(b, col);
        let cmp = |x: &BigInt, y: &BigInt| (x * pb).cmp(&(y * pa));
        match cmp(self.t.rhs(a), self.t.rhs(b)) {
            std::cmp::Ordering::Equal => {}
            o => return o.is_lt(),
        }
        let eq_cols = self.dim + self.k..self.dim + self.k + self.n_eq;
        let unit_cols = self.by_rank.iter().map(|&i| self.s_col(i)).chain(eq_cols);
        for c in unit_cols {
            match cmp(self.t.entry(a, c), self.t.entry(b, c)) {
                std::cmp::Ordering::Equal => {}
                o => return o.is_lt(),
            }
        }
        a < b
    }

    fn lex_min_ratio(&self, col: usize) -> Option<usize> {
        let mut best: Option<usize> = None;
        for r in 0..self.t.nrows() {
            if !self.is_restricted_row(r) || !self.t.entry(r, col).is_positive() {
                continue;
            }
            best = match best {
                Some(b) if !self.lex_less(r, b, col) => Some(b),
                _ => Some(r),
            };
        }
        best
    }

    /// The simplex pivot towards the root: least-rank improving slack enters.
    fn select_pivot(&self) -> Option<(usize, usize)> {
        let obj = self.obj_row?;
        let col = self
            .by_rank
            .iter()
            .map(|&i| self.s_col(i))
            .find(|&c| !self.t.is_basic(c) && self.t.entry(obj, c).is_negative())?;
        Some((self.lex_min_ratio(col)?, col))
    }

    /// Tries to step to the child reached by entering the slack of rank
    /// `rank`. Leaves the dictionary unchanged and returns false if that
    /// basis is not a child of the current one.
    fn reverse(&mut self, rank: usize) -> Result<bool> {
        let col = self.s_col(self.by_rank[rank]);
        let obj = self.obj_row.expect("objective installed");
        if self.t.is_basic(col) || !self.t.entry(obj, col).is_positive() {
            return Ok(false);
        }
        let Some(row) = self.lex_min_ratio(col) else {
            return Ok(false);
        };
        let leaving = self.t.basic(row);
        self.pivot(row, col)?;
        if self.select_pivot() == Some((row, leaving)) {
            return Ok(true);
        }
        self.pivot(row, leaving)?;
        Ok(false)
    }

    /// True if no degenerate basic slack could be exchanged for a cobasic
    /// slack of smaller rank, which singles out one basis per vertex.
    fn is_lex_min(&self) -> bool {
        for r in 0..self.t.nrows() {
            if !self.is_restricted_row(r) || !self.t.rhs(r).is_zero() {
                continue;
            }
            let own = self.rank[self.t.basic(r) - self.dim];
            let blocked = self.by_rank[..own].iter().any(|&i| {
                let c = self.s_col(i);
                !self.t.is_basic(c) && !self.t.entry(r, c).is_zero()
            });
            if blocked {
                return false;
            }
        }
        true
    }

    fn point(&self) -> Vec<Rational> {
        (0..self.dim).map(|j| self.t.value(j)).collect()
    }

    fn vertex(&self) -> LabeledVertex {
        let mut tight = Vec::new();
        let mut cobasis = Vec::new();
        for i in 0..self.k {
            match self.t.row_of(self.s_col(i)) {
                None => {
                    tight.push(i);
                    cobasis.push(i);
                }
                Some(r) if self.t.rhs(r).is_zero() => tight.push(i),
                Some(_) => {}
            }
        }
        let labels = tight.iter().filter_map(|&i| self.labels[i]).collect();
        LabeledVertex {
            coords: self.point(),
            labels,
            tight,
            cobasis,
        }
    }
}
