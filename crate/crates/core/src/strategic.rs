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

//! Two-player games in strategic form.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Row/column label for the `index`-th strategy: `A..Z`, then `AA, AB, ..`.
pub fn letter_name(index: usize, upper: bool) -> String {
    let base = if upper { b'A' } else { b'a' };
    let mut n = index + 1;
    let mut out = Vec::new();
    while n > 0 {
        n -= 1;
        out.push(base + (n % 26) as u8);
        n /= 26;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

/// How the second payoff matrix is obtained from the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InputMode {
    #[default]
    General,
    ZeroSum,
    Symmetric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimatrixGame {
    a: Vec<Vec<Rational>>,
    b: Vec<Vec<Rational>>,
    row_names: Vec<String>,
    col_names: Vec<String>,
}

impl BimatrixGame {
    /// A game with default strategy names.
    pub fn new(a: Vec<Vec<Rational>>, b: Vec<Vec<Rational>>) -> Result<Self> {
        let m = a.len();
        let n = a.first().map_or(0, Vec::len);
        if m == 0 || n == 0 {
            return Err(Error::Dimension("a game needs at least one row and column".into()));
        }
        if a.iter().any(|r| r.len() != n)
            || b.len() != m
            || b.iter().any(|r| r.len() != n)
        {
            return Err(Error::Dimension(format!(
                "payoff matrices must both be {m} x {n}"
            )));
        }
        Ok(BimatrixGame {
            a,
            b,
            row_names: (0..m).map(|i| letter_name(i, true)).collect(),
            col_names: (0..n).map(|j| letter_name(j, false)).collect(),
        })
    }

    pub fn from_i64(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<Self> {
        let conv = |m: &[Vec<i64>]| -> Vec<Vec<Rational>> {
            m.iter()
                .map(|r| r.iter().map(|&v| Rational::from(v)).collect())
                .collect()
        };
        Self::new(conv(a), conv(b))
    }

    /// Zero-sum game: player 2 receives the negated payoffs.
    pub fn zero_sum(a: Vec<Vec<Rational>>) -> Result<Self> {
        let b = a
            .iter()
            .map(|r| r.iter().map(|v| -v).collect())
            .collect();
        Self::new(a, b)
    }

    /// Symmetric game: player 2's matrix is the transpose of player 1's.
    pub fn symmetric(a: Vec<Vec<Rational>>) -> Result<Self> {
        let m = a.len();
        if a.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension("a symmetric game needs a square matrix".into()));
        }
        let b = (0..m)
            .map(|i| (0..m).map(|j| a[j][i].clone()).collect())
            .collect();
        Self::new(a, b)
    }

    pub fn with_mode(a: Vec<Vec<Rational>>, b: Option<Vec<Vec<Rational>>>, mode: InputMode) -> Result<Self> {
        match (mode, b) {
            (InputMode::General, Some(b)) => Self::new(a, b),
            (InputMode::General, None) => {
                Err(Error::Parse("payoffs for player 2 are missing".into()))
            }
            (InputMode::ZeroSum, _) => Self::zero_sum(a),
            (InputMode::Symmetric, _) => Self::symmetric(a),
        }
    }

    pub fn with_names(mut self, rows: Vec<String>, cols: Vec<String>) -> Result<Self> {
        if rows.len() != self.rows() || cols.len() != self.cols() {
            return Err(Error::Dimension("wrong number of strategy names".into()));
        }
        for names in [&rows, &cols] {
            let mut seen = HashSet::new();
            if let Some(dup) = names.iter().find(|n| !seen.insert(n.as_str())) {
                return Err(Error::InvalidGame(format!("duplicate strategy name `{dup}`")));
            }
        }
        self.row_names = rows;
        self.col_names = cols;
        Ok(self)
    }

    pub fn rows(&self) -> usize {
        self.a.len()
    }

    pub fn cols(&self) -> usize {
        self.a[0].len()
    }

    pub fn a(&self) -> &[Vec<Rational>] {
        &self.a
    }

    pub fn b(&self) -> &[Vec<Rational>] {
        &self.b
    }

    pub fn row_names(&self) -> &[String] {
        &self.row_names
    }

    pub fn col_names(&self) -> &[String] {
        &self.col_names
    }

    /// Payoff matrix of `player` (1 or 2).
    pub fn payoffs(&self, player: usize) -> &[Vec<Rational>] {
        if player == 1 {
            &self.a
        } else {
            &self.b
        }
    }

    /// `(x^T A y, x^T B y)`.
    pub fn expected_payoffs(&self, x: &MixedStrategy, y: &MixedStrategy) -> Result<(Rational, Rational)> {
        self.check_profile(x, y)?;
        let ay = self.row_payoffs(&y.probs);
        let by = mat_vec(&self.b, &y.probs);
        Ok((dot(&x.probs, &ay), dot(&x.probs, &by)))
    }

    /// `A y`, the payoff of each row against `y`.
    pub fn row_payoffs(&self, y: &[Rational]) -> Vec<Rational> {
        mat_vec(&self.a, y)
    }

    /// `B^T x`, the payoff of each column against `x`.
    pub fn col_payoffs(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.cols())
            .map(|j| (0..self.rows()).map(|i| &x[i] * &self.b[i][j]).sum())
            .collect()
    }

    /// True iff every pure strategy played with positive probability is a
    /// best response to the other player's strategy.
    pub fn is_equilibrium(&self, x: &MixedStrategy, y: &MixedStrategy) -> bool {
        if self.check_profile(x, y).is_err() {
            return false;
        }
        supports_best_responses(&x.probs, &self.row_payoffs(&y.probs))
            && supports_best_responses(&y.probs, &self.col_payoffs(&x.probs))
    }

    fn check_profile(&self, x: &MixedStrategy, y: &MixedStrategy) -> Result<()> {
        if x.probs.len() != self.rows() || y.probs.len() != self.cols() {
            return Err(Error::Dimension(format!(
                "strategies of length {} and {} for a {} x {} game",
                x.probs.len(),
                y.probs.len(),
                self.rows(),
                self.cols()
            )));
        }
        Ok(())
    }

    /// Parses the plain matrix text format.
    ///
    /// Optional leading `rows:` and `cols:` lines give strategy names; `#`
    /// starts a comment. Then come one or two blank-line-separated blocks of
    /// whitespace-separated numbers. The second block is player 2's matrix
    /// and is omitted in zero-sum and symmetric mode.
    pub fn parse_text(text: &str, mode: InputMode) -> Result<Self> {
        let mut rows_names = None;
        let mut col_names = None;
        let mut blocks: Vec<Vec<Vec<Rational>>> = Vec::new();
        let mut current: Vec<Vec<Rational>> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                if !current.is_empty() {
                    blocks.push(std::mem::take(&mut current));
                }
                continue;
            }
            if let Some(rest) = line.strip_prefix("rows:") {
                rows_names = Some(rest.split_whitespace().map(String::from).collect::<Vec<_>>());
                continue;
            }
            if let Some(rest) = line.strip_prefix("cols:") {
                col_names = Some(rest.split_whitespace().map(String::from).collect::<Vec<_>>());
                continue;
            }
            let row = line
                .split_whitespace()
                .map(str::parse::<Rational>)
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            current.push(row);
        }
        if !current.is_empty() {
            blocks.push(current);
        }
        let expected = if mode == InputMode::General { 2 } else { 1 };
        if blocks.len() != expected {
            return Err(Error::Parse(format!(
                "expected {expected} payoff block(s), found {}",
                blocks.len()
            )));
        }
        let mut it = blocks.into_iter();
        let a = it.next().expect("one block");
        let game = Self::with_mode(a, it.next(), mode)?;
        let rows = rows_names.unwrap_or_else(|| game.row_names.clone());
        let cols = col_names.unwrap_or_else(|| game.col_names.clone());
        game.with_names(rows, cols)
    }

    /// Writes the game in the format read by [`BimatrixGame::parse_text`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "rows: {}", self.row_names.join(" "));
        let _ = writeln!(out, "cols: {}", self.col_names.join(" "));
        for (k, m) in [&self.a, &self.b].into_iter().enumerate() {
            if k > 0 {
                out.push('\n');
            }
            for row in m {
                let cells: Vec<String> = row.iter().map(Rational::to_string).collect();
                let _ = writeln!(out, "{}", cells.join(" "));
            }
        }
        out
    }
}

fn mat_vec(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| dot(row, v)).collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(p, q)| p * q).sum()
}

fn supports_best_responses(probs: &[Rational], payoffs: &[Rational]) -> bool {
    let Some(best) = payoffs.iter().max() else {
        return false;
    };
    probs
        .iter()
        .zip(payoffs)
        .all(|(p, u)| p.is_zero() || u == best)
}

/// A mixed strategy of player 1 (`x`) or player 2 (`y`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MixedStrategy {
    pub player: usize,
    pub probs: Vec<Rational>,
}

impl MixedStrategy {
    pub fn new(player: usize, probs: Vec<Rational>) -> Result<Self> {
        if player != 1 && player != 2 {
            return Err(Error::InvalidGame(format!("no player {player}")));
        }
        if probs.is_empty() || probs.iter().any(Rational::is_negative) {
            return Err(Error::InvalidGame("probabilities must be nonnegative".into()));
        }
        if probs.iter().sum::<Rational>() != Rational::one() {
            return Err(Error::InvalidGame("probabilities must sum to 1".into()));
        }
        Ok(MixedStrategy { player, probs })
    }

    pub fn pure(player: usize, len: usize, index: usize) -> Self {
        let probs = (0..len)
            .map(|k| if k == index { Rational::one() } else { Rational::zero() })
            .collect();
        MixedStrategy { player, probs }
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.probs.len())
            .filter(|&k| !self.probs[k].is_zero())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    fn strat(player: usize, probs: &[Rational]) -> MixedStrategy {
        MixedStrategy::new(player, probs.to_vec()).unwrap()
    }

    fn bagwell() -> BimatrixGame {
        BimatrixGame::from_i64(&[vec![5, 3], vec![6, 4]], &[vec![2, 1], vec![3, 4]]).unwrap()
    }

    #[test]
    fn default_names_are_letters() {
        let g = bagwell();
        assert_eq!(g.row_names(), ["A", "B"]);
        assert_eq!(g.col_names(), ["a", "b"]);
        assert_eq!(letter_name(26, true), "AA");
        assert_eq!(letter_name(27, false), "ab");
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        assert!(BimatrixGame::from_i64(&[vec![1, 2]], &[vec![1]]).is_err());
        assert!(BimatrixGame::from_i64(&[], &[]).is_err());
    }

    #[test]
    fn input_modes() {
        let z = BimatrixGame::zero_sum(vec![vec![Rational::zero()]]).unwrap();
        assert_eq!(z.b(), &[vec![Rational::zero()]]);
        let z = BimatrixGame::zero_sum(vec![
            vec![1.into(), (-2).into()],
            vec![0.into(), 3.into()],
        ])
        .unwrap();
        assert_eq!(
            z.b(),
            &[vec![(-1).into(), 2.into()], vec![0.into(), (-3).into()]]
        );
        let anti: Vec<Vec<Rational>> = (0..3)
            .map(|i| (0..3).map(|j| Rational::from(-((i == j) as i64))).collect())
            .collect();
        let s = BimatrixGame::symmetric(anti.clone()).unwrap();
        assert_eq!(s.b(), anti.as_slice());
        let rect = vec![vec![Rational::zero(); 3]; 2];
        assert!(BimatrixGame::symmetric(rect).is_err());
    }

    #[test]
    fn expected_payoffs_examples() {
        let g = bagwell();
        let x = strat(1, &[0.into(), 1.into()]);
        let y = strat(2, &[0.into(), 1.into()]);
        assert_eq!(g.expected_payoffs(&x, &y).unwrap(), (4.into(), 4.into()));
        let anti = BimatrixGame::symmetric(
            (0..3)
                .map(|i| (0..3).map(|j| Rational::from(-((i == j) as i64))).collect())
                .collect(),
        )
        .unwrap();
        let third = strat(1, &[q(1, 3), q(1, 3), q(1, 3)]);
        let third2 = strat(2, &[q(1, 3), q(1, 3), q(1, 3)]);
        assert_eq!(
            anti.expected_payoffs(&third, &third2).unwrap(),
            (q(-1, 3), q(-1, 3))
        );
        assert!(g.expected_payoffs(&third, &y).is_err());
    }

    #[test]
    fn equilibrium_examples() {
        let g = bagwell();
        let one = |p| MixedStrategy::pure(p, 2, 1);
        let zero = |p| MixedStrategy::pure(p, 2, 0);
        assert!(g.is_equilibrium(&one(1), &one(2)));
        assert!(!g.is_equilibrium(&zero(1), &zero(2)));
        let commit = BimatrixGame::from_i64(
            &[vec![5, 5, 3, 3], vec![6, 4, 6, 4]],
            &[vec![2, 2, 1, 1], vec![3, 4, 3, 4]],
        )
        .unwrap();
        let y = strat(2, &[0.into(), q(1, 2), 0.into(), q(1, 2)]);
        assert!(commit.is_equilibrium(&one(1), &y));
    }

    #[test]
    fn parse_text_with_names_and_decimals() {
        let text = "rows: T B\ncols: l r\n5 3\n6 4\n\n2 1\n3 0.99\n";
        let g = BimatrixGame::parse_text(text, InputMode::General).unwrap();
        assert_eq!(g.row_names(), ["T", "B"]);
        assert_eq!(g.b()[1][1], q(99, 100));
        let back = BimatrixGame::parse_text(&g.to_text(), InputMode::General).unwrap();
        assert_eq!(back, g);
        assert!(BimatrixGame::parse_text("1 2\n", InputMode::General).is_err());
        assert!(BimatrixGame::parse_text("1 x\n\n1 2", InputMode::General).is_err());
        let z = BimatrixGame::parse_text("1 -1\n-1 1", InputMode::ZeroSum).unwrap();
        assert_eq!(z.b()[0][1], 1.into());
        let dup = "rows: T T\n1\n2\n\n1\n2\n";
        assert!(BimatrixGame::parse_text(dup, InputMode::General).is_err());
    }

    #[test]
    fn mixed_strategy_validation() {
        assert!(MixedStrategy::new(1, vec![q(1, 2), q(1, 3)]).is_err());
        assert!(MixedStrategy::new(1, vec![q(3, 2), q(-1, 2)]).is_err());
        assert!(MixedStrategy::new(3, vec![1.into()]).is_err());
    }

    fn arb_game_and_profile() -> impl Strategy<Value = (BimatrixGame, MixedStrategy, MixedStrategy)> {
        (1usize..=6, 1usize..=6).prop_flat_map(|(m, n)| {
            (
                prop::collection::vec(prop::collection::vec(-3i64..4, n), m),
                prop::collection::vec(prop::collection::vec(-3i64..4, n), m),
                prop::collection::vec(0i64..3, m),
                prop::collection::vec(0i64..3, n),
            )
                .prop_filter_map("nonzero weights", |(a, b, wx, wy)| {
                    let norm = |w: &[i64], p| {
                        let s: i64 = w.iter().sum();
                        (s > 0).then(|| {
                            MixedStrategy::new(p, w.iter().map(|&v| q(v, s)).collect()).unwrap()
                        })
                    };
                    Some((BimatrixGame::from_i64(&a, &b).unwrap(), norm(&wx, 1)?, norm(&wy, 2)?))
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn equilibrium_check_matches_pure_deviations((g, x, y) in arb_game_and_profile()) {
            let (u, v) = g.expected_payoffs(&x, &y).unwrap();
            let no_row_gain = (0..g.rows()).all(|i| {
                let dev = MixedStrategy::pure(1, g.rows(), i);
                g.expected_payoffs(&dev, &y).unwrap().0 <= u
            });
            let no_col_gain = (0..g.cols()).all(|j| {
                let dev = MixedStrategy::pure(2, g.cols(), j);
                g.expected_payoffs(&x, &dev).unwrap().1 <= v
            });
            prop_assert_eq!(g.is_equilibrium(&x, &y), no_row_gain && no_col_gain);
        }
    }
}
