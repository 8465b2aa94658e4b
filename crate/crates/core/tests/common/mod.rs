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

//! Brute-force reference implementations used to check the solvers.
#![allow(dead_code)]
// Dense elimination reads best with explicit indices.
#![allow(clippy::needless_range_loop, clippy::type_complexity)]

use std::collections::{BTreeMap, BTreeSet};

use nash_explorer::strategic::BimatrixGame;
use nash_explorer::Rational;

pub mod trees;

pub fn q(n: i64) -> Rational {
    Rational::from(n)
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

pub fn rats(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

/// Parses a whitespace-separated list such as `"0 25/49 0 24/49"`.
pub fn parse_vec(s: &str) -> Vec<Rational> {
    s.split_whitespace().map(|t| t.parse().unwrap()).collect()
}

/// Gauss-Jordan elimination. Returns the solution if the system has exactly
/// one.
pub fn solve_unique(rows: &[Vec<Rational>], rhs: &[Rational], n: usize) -> Option<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| r.iter().cloned().chain([b.clone()]).collect())
        .collect();
    let mut pivot_row = 0;
    let mut pivot_cols = Vec::new();
    for col in 0..n {
        let Some(p) = (pivot_row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, p);
        let pv = a[pivot_row][col].clone();
        for v in a[pivot_row].iter_mut() {
            *v = &*v / &pv;
        }
        for r in 0..a.len() {
            if r != pivot_row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..=n {
                    let d = &f * &a[pivot_row][c];
                    a[r][c] = &a[r][c] - &d;
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }
    if a[pivot_row..].iter().any(|r| !r[n].is_zero()) || pivot_cols.len() < n {
        return None;
    }
    Some((0..n).map(|i| a[i][n].clone()).collect())
}

/// Inequality `coeffs . z <= rhs` with an optional label.
#[derive(Clone, Debug)]
pub struct Row {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    pub label: Option<usize>,
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// All vertices by trying every subset of inequalities as tight set.
pub fn brute_vertices(dim: usize, ineqs: &[Row], eqs: &[Row]) -> BTreeSet<Vec<Rational>> {
    let mut out = BTreeSet::new();
    let k = ineqs.len();
    assert!(k <= 16);
    for mask in 0u32..(1 << k) {
        if mask.count_ones() as usize > dim {
            continue;
        }
        let chosen: Vec<&Row> = eqs
            .iter()
            .chain((0..k).filter(|i| mask >> i & 1 == 1).map(|i| &ineqs[i]))
            .collect();
        let rows: Vec<Vec<Rational>> = chosen.iter().map(|r| r.coeffs.clone()).collect();
        let rhs: Vec<Rational> = chosen.iter().map(|r| r.rhs.clone()).collect();
        if let Some(z) = solve_unique(&rows, &rhs, dim) {
            if ineqs.iter().all(|r| dot(&r.coeffs, &z) <= r.rhs) {
                out.insert(z);
            }
        }
    }
    out
}

pub fn labels_at(ineqs: &[Row], z: &[Rational]) -> BTreeSet<usize> {
    ineqs
        .iter()
        .filter(|r| dot(&r.coeffs, z) == r.rhs)
        .filter_map(|r| r.label)
        .collect()
}

/// Best response polyhedra written out independently of the library.
/// Variables are `(x, v)` and `(y, u)`; labels `0..m` are rows and
/// `m..m+n` are columns.
pub fn best_response_rows(g: &BimatrixGame) -> ((Vec<Row>, Vec<Row>), (Vec<Row>, Vec<Row>)) {
    let (m, n) = (g.rows(), g.cols());
    let unit = |len: usize, i: usize, v: i64| {
        let mut c = vec![q(0); len];
        c[i] = q(v);
        c
    };
    let mut p = Vec::new();
    for i in 0..m {
        p.push(Row { coeffs: unit(m + 1, i, -1), rhs: q(0), label: Some(i) });
    }
    for j in 0..n {
        let mut c: Vec<Rational> = (0..m).map(|i| g.b()[i][j].clone()).collect();
        c.push(q(-1));
        p.push(Row { coeffs: c, rhs: q(0), label: Some(m + j) });
    }
    let mut pe = vec![q(1); m];
    pe.push(q(0));
    let mut qr = Vec::new();
    for i in 0..m {
        let mut c = g.a()[i].clone();
        c.push(q(-1));
        qr.push(Row { coeffs: c, rhs: q(0), label: Some(i) });
    }
    for j in 0..n {
        qr.push(Row { coeffs: unit(n + 1, j, -1), rhs: q(0), label: Some(m + j) });
    }
    let mut qe = vec![q(1); n];
    qe.push(q(0));
    (
        (p, vec![Row { coeffs: pe, rhs: q(1), label: None }]),
        (qr, vec![Row { coeffs: qe, rhs: q(1), label: None }]),
    )
}

pub type Profile = (Vec<Rational>, Vec<Rational>);

/// Extreme equilibria as completely labeled vertex pairs, by brute force.
pub fn brute_equilibria(g: &BimatrixGame) -> BTreeSet<Profile> {
    let (m, n) = (g.rows(), g.cols());
    let ((p, pe), (qr, qe)) = best_response_rows(g);
    let pv: Vec<_> = brute_vertices(m + 1, &p, &pe)
        .into_iter()
        .map(|z| (labels_at(&p, &z), z))
        .collect();
    let qv: Vec<_> = brute_vertices(n + 1, &qr, &qe)
        .into_iter()
        .map(|z| (labels_at(&qr, &z), z))
        .collect();
    let mut out = BTreeSet::new();
    for (lp, x) in &pv {
        for (lq, y) in &qv {
            if lp.union(lq).count() == m + n {
                out.insert((x[..m].to_vec(), y[..n].to_vec()));
            }
        }
    }
    out
}

/// Equilibria with equal-size supports; complete for nondegenerate games.
pub fn support_enumeration(g: &BimatrixGame) -> BTreeSet<Profile> {
    let (m, n) = (g.rows(), g.cols());
    let mut out = BTreeSet::new();
    for imask in 1u32..(1 << m) {
        for jmask in 1u32..(1 << n) {
            if imask.count_ones() != jmask.count_ones() {
                continue;
            }
            let is: Vec<usize> = (0..m).filter(|i| imask >> i & 1 == 1).collect();
            let js: Vec<usize> = (0..n).filter(|j| jmask >> j & 1 == 1).collect();
            let k = is.len();
            // y on J with payoff u: a_i . y = u for i in I, sum y = 1.
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for &i in &is {
                let mut r: Vec<Rational> = js.iter().map(|&j| g.a()[i][j].clone()).collect();
                r.push(q(-1));
                rows.push(r);
                rhs.push(q(0));
            }
            let mut r = vec![q(1); k];
            r.push(q(0));
            rows.push(r);
            rhs.push(q(1));
            let Some(ys) = solve_unique(&rows, &rhs, k + 1) else { continue };
            let mut rows = Vec::new();
            let mut rhs = Vec::new();
            for &j in &js {
                let mut r: Vec<Rational> = is.iter().map(|&i| g.b()[i][j].clone()).collect();
                r.push(q(-1));
                rows.push(r);
                rhs.push(q(0));
            }
            let mut r = vec![q(1); k];
            r.push(q(0));
            rows.push(r);
            rhs.push(q(1));
            let Some(xs) = solve_unique(&rows, &rhs, k + 1) else { continue };
            if ys[..k].iter().chain(&xs[..k]).any(Rational::is_negative) {
                continue;
            }
            let mut x = vec![q(0); m];
            let mut y = vec![q(0); n];
            for (t, &i) in is.iter().enumerate() {
                x[i] = xs[t].clone();
            }
            for (t, &j) in js.iter().enumerate() {
                y[j] = ys[t].clone();
            }
            if is_nash(g, &x, &y) {
                out.insert((x, y));
            }
        }
    }
    out
}

/// Best response check by explicit pure deviations.
pub fn is_nash(g: &BimatrixGame, x: &[Rational], y: &[Rational]) -> bool {
    let (m, n) = (g.rows(), g.cols());
    let row_pay: Vec<Rational> = (0..m).map(|i| dot(&g.a()[i], y)).collect();
    let col_pay: Vec<Rational> = (0..n)
        .map(|j| (0..m).map(|i| &x[i] * &g.b()[i][j]).sum())
        .collect();
    let u = dot(x, &row_pay);
    let v = dot(y, &col_pay);
    row_pay.iter().all(|p| p <= &u) && col_pay.iter().all(|p| p <= &v)
}

/// Maximal bicliques of a bipartite graph given as edges `(left, right)`.
pub fn brute_bicliques(edges: &BTreeSet<(usize, usize)>) -> BTreeSet<(BTreeSet<usize>, BTreeSet<usize>)> {
    let left: BTreeSet<usize> = edges.iter().map(|e| e.0).collect();
    let right_of = |u: &BTreeSet<usize>| -> BTreeSet<usize> {
        let all: BTreeSet<usize> = edges.iter().map(|e| e.1).collect();
        all.into_iter()
            .filter(|&r| u.iter().all(|&l| edges.contains(&(l, r))))
            .collect()
    };
    let left_of = |v: &BTreeSet<usize>| -> BTreeSet<usize> {
        left.iter()
            .copied()
            .filter(|&l| v.iter().all(|&r| edges.contains(&(l, r))))
            .collect()
    };
    let lv: Vec<usize> = left.iter().copied().collect();
    assert!(lv.len() <= 16);
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << lv.len()) {
        let u: BTreeSet<usize> = (0..lv.len()).filter(|i| mask >> i & 1 == 1).map(|i| lv[i]).collect();
        let v = right_of(&u);
        if !v.is_empty() && left_of(&v) == u {
            out.insert((u, v));
        }
    }
    out
}

/// Connected components of the bipartite graph as sets of left/right nodes.
pub fn brute_components(edges: &BTreeSet<(usize, usize)>) -> BTreeSet<(BTreeSet<usize>, BTreeSet<usize>)> {
    let mut comp: BTreeMap<(bool, usize), usize> = BTreeMap::new();
    for (k, &(l, r)) in edges.iter().enumerate() {
        comp.entry((false, l)).or_insert(k);
        comp.entry((true, r)).or_insert(k);
    }
    // Relabel until stable.
    loop {
        let mut changed = false;
        for &(l, r) in edges {
            let a = comp[&(false, l)];
            let b = comp[&(true, r)];
            let m = a.min(b);
            if a != m || b != m {
                comp.insert((false, l), m);
                comp.insert((true, r), m);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut groups: BTreeMap<usize, (BTreeSet<usize>, BTreeSet<usize>)> = BTreeMap::new();
    for (&(side, node), &c) in &comp {
        let g = groups.entry(c).or_default();
        if side {
            g.1.insert(node);
        } else {
            g.0.insert(node);
        }
    }
    groups.into_values().collect()
}

/// True if `point` is a convex combination of `gens`, found by trying every
/// subset of generators as an affinely independent support.
pub fn in_convex_hull(point: &[Rational], gens: &[Vec<Rational>]) -> bool {
    let d = point.len();
    let k = gens.len();
    assert!(k <= 16);
    for mask in 1u32..(1 << k) {
        let chosen: Vec<&Vec<Rational>> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| &gens[i]).collect();
        let c = chosen.len();
        if c > d + 1 {
            continue;
        }
        // Unknowns: lambda_1..c; rows: coordinates and sum to one.
        let mut rows: Vec<Vec<Rational>> = (0..d)
            .map(|t| chosen.iter().map(|g| g[t].clone()).collect())
            .collect();
        rows.push(vec![q(1); c]);
        let mut rhs = point.to_vec();
        rhs.push(q(1));
        if let Some(lambda) = solve_unique(&rows, &rhs, c) {
            if lambda.iter().all(|l| !l.is_negative()) {
                return true;
            }
        }
    }
    false
}

/// Random integer game with entries in `lo..=hi`; `dup_rows` copies row 0
/// onto row 1 to force degeneracy.
pub fn random_game(rng: &mut impl rand::Rng, m: usize, n: usize, lo: i64, hi: i64, dup_rows: bool) -> BimatrixGame {
    let mut a: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect()).collect();
    let mut b: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect()).collect();
    if dup_rows && m >= 2 {
        a[1] = a[0].clone();
        b[1] = b[0].clone();
    }
    BimatrixGame::from_i64(&a, &b).unwrap()
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(n) = rows.first().map(Vec::len) else { return 0 };
    let mut a = rows.to_vec();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let f = &a[i][col] / &a[r][col];
                for c in 0..n {
                    let d = &f * &a[r][c];
                    a[i][c] = &a[i][c] - &d;
                }
            }
        }
        r += 1;
    }
    r
}
