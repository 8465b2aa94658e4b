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

//! Path-following solvers that find one equilibrium each.
//!
//! [`lemke_howson`] drops one label at the artificial equilibrium and
//! follows the path of almost completely labeled vertex pairs.
//! [`lemke_prior`] and [`lemke_sequence`] run Lemke's method with the
//! covering vector given by a prior: at the start both players best
//! respond to the prior, and along the path the opponent's behavior is a
//! mix of prior and actual play whose prior weight `z0` falls to zero. The
//! sequence-form variant works on realization plans, so its size is linear
//! in the tree.
//!
//! All pivoting is exact, with a lexicographic leaving rule that cannot
//! cycle on degenerate games.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::arith::{denominator_lcm, solve_square, IntegerTableau, Rational};
use crate::cancel::CancelToken;
use crate::error::{Error, Result};
use crate::polyhedron::{HPolyhedron, LpOutcome};
use crate::sequence::{BehaviorStrategy, SequenceForm};
use crate::strategic::{BimatrixGame, MixedStrategy};

/// Result of a path-following run on a strategic-form game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathEquilibrium {
    pub x: MixedStrategy,
    pub y: MixedStrategy,
    pub u: Rational,
    pub v: Rational,
    pub pivots: usize,
}

/// Result of Lemke's method on the sequence form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceEquilibrium {
    /// Realization plans.
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
    pub behavior1: BehaviorStrategy,
    pub behavior2: BehaviorStrategy,
    pub u: Rational,
    pub v: Rational,
    pub pivots: usize,
}

/// Integer rows for `coeffs . vars = rhs`, scaled to clear denominators.
/// The entry at `unit` (if any) is set to 1 after scaling; it belongs to a
/// basic slack whose units do not matter.
fn integer_row(coeffs: &[Rational], rhs: &Rational, unit: Option<usize>) -> (Vec<BigInt>, BigInt) {
    let lcm = denominator_lcm(coeffs.iter().chain(std::iter::once(rhs)));
    let scale = |r: &Rational| (r.numer() * &lcm) / r.denom();
    let mut row: Vec<BigInt> = coeffs.iter().map(scale).collect();
    if let Some(u) = unit {
        row[u] = BigInt::one();
    }
    (row, scale(rhs))
}

/// Leaving row by the minimum ratio test, ties broken lexicographically
/// over `lex_cols`. Rows in `skip` are unconstrained. `prefer` wins any tie
/// on the first ratio.
fn leaving_row(
    t: &IntegerTableau,
    entering: usize,
    lex_cols: &[usize],
    skip: &dyn Fn(usize) -> bool,
    prefer: Option<usize>,
) -> Option<usize> {
    let key = |row: usize, k: usize| -> &BigInt {
        if k == 0 {
            t.rhs(row)
        } else {
            t.entry(row, lex_cols[k - 1])
        }
    };
    // a/p < b/q with p, q > 0
    let cmp = |r1: usize, r2: usize, k: usize| -> Ordering {
        (key(r1, k) * t.entry(r2, entering)).cmp(&(key(r2, k) * t.entry(r1, entering)))
    };
    let mut cands: Vec<usize> = (0..t.nrows())
        .filter(|&r| !skip(t.basic(r)) && t.entry(r, entering).is_positive())
        .collect();
    if cands.is_empty() {
        return None;
    }
    for k in 0..=lex_cols.len() {
        let best = *cands.iter().min_by(|&&a, &&b| cmp(a, b, k)).expect("nonempty");
        cands.retain(|&r| cmp(r, best, k) == Ordering::Equal);
        if k == 0 {
            if let Some(p) = prefer.and_then(|c| t.row_of(c)) {
                if cands.contains(&p) {
                    return Some(p);
                }
            }
        }
        if cands.len() == 1 {
            return Some(cands[0]);
        }
    }
    // Rows of the start basis inverse are distinct, so this is unreachable.
    Some(cands[0])
}

fn normalize(values: Vec<Rational>) -> Vec<Rational> {
    let total: Rational = values.iter().sum();
    values.into_iter().map(|v| v / &total).collect()
}

/// Lemke–Howson from the artificial equilibrium, dropping `label`
/// (`0..m` for rows, `m..m+n` for columns).
pub fn lemke_howson(g: &BimatrixGame, label: usize, cancel: &CancelToken) -> Result<PathEquilibrium> {
    let (m, n) = (g.rows(), g.cols());
    if label >= m + n {
        return Err(Error::InvalidGame(format!("label {} out of range 1..{}", label + 1, m + n)));
    }
    // Shift payoffs to be at least 1 so both polytopes are bounded.
    let positive = |mat: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
        let min = mat.iter().flatten().min().cloned().expect("nonempty game");
        let shift = Rational::one() - min;
        mat.iter().map(|r| r.iter().map(|v| v + &shift).collect()).collect()
    };
    let a = positive(g.a());
    let b = positive(g.b());
    // Columns: x (m), y (n), r (m), s (n).
    let width = 2 * (m + n);
    let (xc, yc, rc, sc) = (0, m, m + n, 2 * m + n);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..m {
        let mut c = vec![Rational::zero(); width];
        c[yc..yc + n].clone_from_slice(&a[i]);
        c[rc + i] = Rational::one();
        let (r, h) = integer_row(&c, &Rational::one(), Some(rc + i));
        rows.push(r);
        rhs.push(h);
    }
    for j in 0..n {
        let mut c = vec![Rational::zero(); width];
        for i in 0..m {
            c[xc + i] = b[i][j].clone();
        }
        c[sc + j] = Rational::one();
        let (r, h) = integer_row(&c, &Rational::one(), Some(sc + j));
        rows.push(r);
        rhs.push(h);
    }
    let basis: Vec<usize> = (rc..width).collect();
    let mut t = IntegerTableau::new(rows, rhs, basis.clone())?;
    let complement = |c: usize| if c < m + n { c + m + n } else { c - m - n };
    let has_label = |c: usize| c == label || c == label + m + n;
    let mut entering = label;
    let mut pivots = 0;
    loop {
        cancel.check()?;
        let row = leaving_row(&t, entering, &basis, &|_| false, None)
            .ok_or_else(|| Error::Internal("unbounded Lemke-Howson step".into()))?;
        let leaving = t.basic(row);
        t.pivot(row, entering)?;
        pivots += 1;
        if has_label(leaving) {
            break;
        }
        entering = complement(leaving);
    }
    let x = normalize((0..m).map(|i| t.value(xc + i)).collect());
    let y = normalize((0..n).map(|j| t.value(yc + j)).collect());
    finish(g, x, y, pivots)
}

fn finish(g: &BimatrixGame, x: Vec<Rational>, y: Vec<Rational>, pivots: usize) -> Result<PathEquilibrium> {
    let x = MixedStrategy::new(1, x)?;
    let y = MixedStrategy::new(2, y)?;
    if !g.is_equilibrium(&x, &y) {
        return Err(Error::Internal("path ended at a non-equilibrium".into()));
    }
    let (u, v) = g.expected_payoffs(&x, &y)?;
    Ok(PathEquilibrium { x, y, u, v, pivots })
}

/// The linear complementarity system shared by both Lemke variants: plans
/// `x` with `E x = e`, `y` with `F y = f`, payoff matrices `A`, `B` over
/// plan pairs and priors `xp`, `yp`.
struct Lcp<'a> {
    e: &'a [Vec<Rational>],
    e_rhs: &'a [Rational],
    f: &'a [Vec<Rational>],
    f_rhs: &'a [Rational],
    a: Vec<Vec<Rational>>,
    b: Vec<Vec<Rational>>,
    xp: &'a [Rational],
    yp: &'a [Rational],
}

fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn transpose(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Cobasis of an optimal basis of `min rhs.u s.t. Mᵀu >= c`: the
/// constraints whose complementary plan entries may be positive.
fn best_response_basis(m: &[Vec<Rational>], rhs: &[Rational], c: &[Rational], cancel: &CancelToken) -> Result<Vec<usize>> {
    let k = m.len();
    let mut poly = HPolyhedron::new(k);
    for (j, cj) in c.iter().enumerate() {
        poly.add_inequality((0..k).map(|r| -&m[r][j]).collect(), -cj, None)?;
    }
    let objective: Vec<Rational> = rhs.iter().map(|r| -r).collect();
    match poly.maximize(&objective, cancel)? {
        LpOutcome::Optimal { cobasis, .. } if cobasis.len() == k => Ok(cobasis),
        other => Err(Error::Internal(format!("best-response LP gave {other:?}"))),
    }
}

impl Lcp<'_> {
    fn solve(&self, cancel: &CancelToken) -> Result<(Vec<Rational>, Vec<Rational>, usize)> {
        let (n1, n2) = (self.a.len(), self.a.first().map_or(0, Vec::len));
        let (k1, k2) = (self.e.len(), self.f.len());
        let ay = mat_vec(&self.a, self.yp);
        let bt = transpose(&self.b, n2);
        let bx = mat_vec(&bt, self.xp);
        let n1_basis = best_response_basis(self.e, self.e_rhs, &ay, cancel)?;
        let n2_basis = best_response_basis(self.f, self.f_rhs, &bx, cancel)?;
        // The best-response plan of player 2; one of its positive entries
        // is left out of the start basis, and that variable enters first.
        let fb: Vec<Vec<Rational>> = self.f.iter().map(|r| n2_basis.iter().map(|&j| r[j].clone()).collect()).collect();
        let ystar = solve_square(&fb, self.f_rhs).ok_or_else(|| Error::Internal("singular plan basis".into()))?;
        let tau0 = n2_basis[ystar.iter().position(Rational::is_positive).ok_or_else(|| Error::Internal("empty best response".into()))?];

        // Columns: x, y, w1, w2, u, v, z0, artificials.
        let xc = 0;
        let yc = n1;
        let w1 = n1 + n2;
        let w2 = w1 + n1;
        let uc = w2 + n2;
        let vc = uc + k1;
        let z0 = vc + k2;
        let art = z0 + 1;
        let width = art + k1 + k2;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        let mut basis = Vec::new();
        let mut push = |c: Vec<Rational>, r: Rational, unit: usize| {
            let (row, h) = integer_row(&c, &r, Some(unit));
            rows.push(row);
            rhs.push(h);
            basis.push(unit);
        };
        for s in 0..n1 {
            let mut c = vec![Rational::zero(); width];
            c[w1 + s] = Rational::one();
            for r in 0..k1 {
                c[uc + r] = -&self.e[r][s];
            }
            c[yc..yc + n2].clone_from_slice(&self.a[s]);
            c[z0] = ay[s].clone();
            push(c, Rational::zero(), w1 + s);
        }
        for s in 0..n2 {
            let mut c = vec![Rational::zero(); width];
            c[w2 + s] = Rational::one();
            for r in 0..k2 {
                c[vc + r] = -&self.f[r][s];
            }
            c[xc..xc + n1].clone_from_slice(&bt[s]);
            c[z0] = bx[s].clone();
            push(c, Rational::zero(), w2 + s);
        }
        for r in 0..k1 {
            let mut c = vec![Rational::zero(); width];
            c[xc..xc + n1].clone_from_slice(&self.e[r]);
            c[z0] = self.e_rhs[r].clone();
            c[art + r] = Rational::one();
            push(c, self.e_rhs[r].clone(), art + r);
        }
        for r in 0..k2 {
            let mut c = vec![Rational::zero(); width];
            c[yc..yc + n2].clone_from_slice(&self.f[r]);
            c[z0] = self.f_rhs[r].clone();
            c[art + k1 + r] = Rational::one();
            push(c, self.f_rhs[r].clone(), art + k1 + r);
        }
        let mut t = IntegerTableau::new(rows, rhs, basis)?;

        // Pivot to the start basis. Any order works: each entering column
        // has a nonzero entry in some row that still has to leave.
        let mut enter: Vec<usize> = (uc..z0 + 1).collect();
        enter.extend(n1_basis.iter().map(|&s| xc + s));
        enter.extend(n2_basis.iter().filter(|&&s| s != tau0).map(|&s| yc + s));
        let mut leave: Vec<usize> = n1_basis.iter().map(|&s| w1 + s).collect();
        leave.extend(n2_basis.iter().map(|&s| w2 + s));
        leave.extend(art..width);
        for col in enter {
            let (pos, row) = leave
                .iter()
                .enumerate()
                .find_map(|(i, &l)| {
                    let r = t.row_of(l)?;
                    (!t.entry(r, col).is_zero()).then_some((i, r))
                })
                .ok_or_else(|| Error::Internal("singular start basis".into()))?;
            t.pivot(row, col)?;
            leave.swap_remove(pos);
        }
        let start: Vec<usize> = t.basis().to_vec();
        for r in 0..t.nrows() {
            let c = t.basic(r);
            if !(uc..z0).contains(&c) && t.rhs(r).is_negative() {
                return Err(Error::Internal("infeasible start basis".into()));
            }
        }
        let free = |c: usize| (uc..z0).contains(&c);
        let complement = |c: usize| match c {
            c if c < w1 => c + n1 + n2,
            c if c < uc => c - n1 - n2,
            _ => unreachable!("only plan and slack columns alternate"),
        };
        let mut entering = yc + tau0;
        let mut pivots = 0;
        loop {
            cancel.check()?;
            let row = leaving_row(&t, entering, &start, &free, Some(z0))
                .ok_or_else(|| Error::Internal("ray termination in Lemke's method".into()))?;
            let leaving = t.basic(row);
            t.pivot(row, entering)?;
            pivots += 1;
            if leaving == z0 {
                break;
            }
            entering = complement(leaving);
        }
        let x = (0..n1).map(|s| t.value(xc + s)).collect();
        let y = (0..n2).map(|s| t.value(yc + s)).collect();
        Ok((x, y, pivots))
    }
}

/// Uniform mixed strategy over `n` pure strategies.
pub fn uniform_prior(n: usize) -> Vec<Rational> {
    vec![Rational::frac(1, n as i64); n]
}

/// A point drawn from the uniform distribution on the simplex, up to a
/// grid of 2^20: sorted uniform cut points, returning the spacings.
pub fn random_prior(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    const GRID: i64 = 1 << 20;
    let mut cuts: Vec<i64> = (0..n.saturating_sub(1)).map(|_| rng.gen_range(0..=GRID)).collect();
    cuts.push(0);
    cuts.push(GRID);
    cuts.sort_unstable();
    cuts.windows(2).map(|w| Rational::frac(w[1] - w[0], GRID)).collect()
}

/// Lemke's method on a strategic-form game started from the prior
/// `(xp, yp)`.
pub fn lemke_prior(g: &BimatrixGame, xp: &[Rational], yp: &[Rational], cancel: &CancelToken) -> Result<PathEquilibrium> {
    MixedStrategy::new(1, xp.to_vec())?;
    MixedStrategy::new(2, yp.to_vec())?;
    if xp.len() != g.rows() || yp.len() != g.cols() {
        return Err(Error::Dimension("prior does not fit the game".into()));
    }
    // Negative payoffs keep the path away from rays.
    let negative = |mat: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
        let max = mat.iter().flatten().max().cloned().expect("nonempty game");
        let shift = max + Rational::one();
        mat.iter().map(|r| r.iter().map(|v| v - &shift).collect()).collect()
    };
    let e = vec![vec![Rational::one(); g.rows()]];
    let f = vec![vec![Rational::one(); g.cols()]];
    let one = [Rational::one()];
    let lcp = Lcp {
        e: &e,
        e_rhs: &one,
        f: &f,
        f_rhs: &one,
        a: negative(g.a()),
        b: negative(g.b()),
        xp,
        yp,
    };
    let (x, y, pivots) = lcp.solve(cancel)?;
    finish(g, x, y, pivots)
}

/// Realization plan of the behavior strategy that is uniform at every
/// information set.
pub fn uniform_plan(sf: &SequenceForm, player: usize) -> Vec<Rational> {
    let ps = sf.player(player);
    let local = ps
        .infosets
        .iter()
        .map(|(h, _)| (*h, uniform_prior(sf.moves_at(player, *h))))
        .collect();
    sf.behavior_to_realization(&BehaviorStrategy { player, local })
}

/// Realization plan of a random behavior strategy.
pub fn random_plan(sf: &SequenceForm, player: usize, rng: &mut impl Rng) -> Vec<Rational> {
    let ps = sf.player(player);
    let local = ps
        .infosets
        .iter()
        .map(|(h, _)| (*h, random_prior(rng, sf.moves_at(player, *h))))
        .collect();
    sf.behavior_to_realization(&BehaviorStrategy { player, local })
}

/// Lemke's method on the sequence form, started from the realization plans
/// `xp`, `yp`.
pub fn lemke_sequence(sf: &SequenceForm, xp: &[Rational], yp: &[Rational], cancel: &CancelToken) -> Result<SequenceEquilibrium> {
    let (p1, p2) = (sf.player(1), sf.player(2));
    if !p1.is_feasible(xp) || !p2.is_feasible(yp) {
        return Err(Error::InvalidGame("prior is not a realization plan".into()));
    }
    // Shift every leaf payoff below zero.
    let max = sf
        .payoff1
        .entries
        .iter()
        .chain(&sf.payoff2.entries)
        .zip(sf.chance.entries.iter().chain(&sf.chance.entries))
        .filter(|(_, (_, _, w))| w.is_positive())
        .map(|((_, _, v), (_, _, w))| v / w)
        .max()
        .unwrap_or_else(Rational::zero);
    let shift = max + Rational::one();
    let chance = sf.chance.to_dense();
    let shifted = |m: Vec<Vec<Rational>>| -> Vec<Vec<Rational>> {
        m.into_iter()
            .zip(&chance)
            .map(|(r, c)| r.into_iter().zip(c).map(|(v, w)| v - &shift * w).collect())
            .collect()
    };
    let lcp = Lcp {
        e: &p1.constraints,
        e_rhs: &p1.rhs,
        f: &p2.constraints,
        f_rhs: &p2.rhs,
        a: shifted(sf.payoff1.to_dense()),
        b: shifted(sf.payoff2.to_dense()),
        xp,
        yp,
    };
    let (x, y, pivots) = lcp.solve(cancel)?;
    if !p1.is_feasible(&x) || !p2.is_feasible(&y) {
        return Err(Error::Internal("path ended outside the plan polytopes".into()));
    }
    let (u, v) = sf.expected_payoffs(&x, &y);
    Ok(SequenceEquilibrium {
        behavior1: sf.realization_to_behavior(1, &x),
        behavior2: sf.realization_to_behavior(2, &y),
        x,
        y,
        u,
        v,
        pivots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dominance_game() -> BimatrixGame {
        BimatrixGame::from_i64(&[vec![5, 3], vec![6, 4]], &[vec![2, 1], vec![3, 4]]).unwrap()
    }

    #[test]
    fn every_label_finds_the_unique_equilibrium() {
        let g = dominance_game();
        for k in 0..4 {
            let eq = lemke_howson(&g, k, &CancelToken::new()).unwrap();
            assert_eq!(eq.x.probs, [Rational::zero(), Rational::one()]);
            assert_eq!(eq.y.probs, [Rational::zero(), Rational::one()]);
            assert_eq!(eq.u, Rational::from(4));
        }
    }

    #[test]
    fn uniform_prior_finds_the_unique_equilibrium() {
        let g = dominance_game();
        let eq = lemke_prior(&g, &uniform_prior(2), &uniform_prior(2), &CancelToken::new()).unwrap();
        assert_eq!(eq.y.probs, [Rational::zero(), Rational::one()]);
    }

    #[test]
    fn one_by_one() {
        let g = BimatrixGame::from_i64(&[vec![7]], &[vec![-2]]).unwrap();
        let eq = lemke_howson(&g, 1, &CancelToken::new()).unwrap();
        assert_eq!((eq.u, eq.v), (Rational::from(7), Rational::from(-2)));
        let eq = lemke_prior(&g, &[Rational::one()], &[Rational::one()], &CancelToken::new()).unwrap();
        assert_eq!(eq.x.probs, [Rational::one()]);
    }

    #[test]
    fn random_priors_lie_on_the_simplex() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for n in 1..8 {
            let p = random_prior(&mut rng, n);
            assert_eq!(p.len(), n);
            assert_eq!(p.iter().sum::<Rational>(), Rational::one());
            assert!(p.iter().all(|v| !v.is_negative()));
        }
    }

    #[test]
    fn cancelled_token_stops_the_path() {
        let token = CancelToken::new();
        token.cancel();
        assert_eq!(lemke_howson(&dominance_game(), 0, &token), Err(Error::Cancelled));
    }

    use rand::SeedableRng;
}
