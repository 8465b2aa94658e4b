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

//! Integer tableau with fraction-free pivoting.
//!
//! Every entry is an integer; the rational value of an entry is
//! `entry / scale`. The column of each basic variable is `scale` times a
//! unit vector. A pivot multiplies by the pivot element and divides exactly
//! by the previous scale, so numbers stay as small as the determinants of the
//! bases visited.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerTableau {
    ncols: usize,
    /// Row-major entries; each row has `ncols + 1` entries, the last being
    /// the right-hand side.
    rows: Vec<Vec<BigInt>>,
    scale: BigInt,
    basis: Vec<usize>,
    row_of: Vec<Option<usize>>,
}

impl IntegerTableau {
    /// Builds a tableau whose initial basic columns are unit vectors.
    pub fn new(matrix: Vec<Vec<BigInt>>, rhs: Vec<BigInt>, basis: Vec<usize>) -> Result<Self> {
        let nrows = matrix.len();
        if rhs.len() != nrows || basis.len() != nrows {
            return Err(Error::Dimension(format!(
                "{nrows} rows, {} right-hand sides, {} basic columns",
                rhs.len(),
                basis.len()
            )));
        }
        let ncols = matrix.first().map_or(0, Vec::len);
        let mut row_of = vec![None; ncols];
        for (r, &b) in basis.iter().enumerate() {
            if b >= ncols || row_of[b].is_some() {
                return Err(Error::Dimension(format!("bad basic column {b}")));
            }
            row_of[b] = Some(r);
        }
        let mut rows = Vec::with_capacity(nrows);
        for (mut row, b) in matrix.into_iter().zip(rhs) {
            if row.len() != ncols {
                return Err(Error::Dimension("ragged matrix".into()));
            }
            row.push(b);
            rows.push(row);
        }
        for (r, &b) in basis.iter().enumerate() {
            for (i, row) in rows.iter().enumerate() {
                let expected = if i == r { BigInt::one() } else { BigInt::zero() };
                if row[b] != expected {
                    return Err(Error::Dimension(format!(
                        "basic column {b} is not a unit vector"
                    )));
                }
            }
        }
        Ok(IntegerTableau {
            ncols,
            rows,
            scale: BigInt::one(),
            basis,
            row_of,
        })
    }

    /// Appends one identity column per row and makes those columns basic.
    pub fn with_identity(matrix: Vec<Vec<BigInt>>, rhs: Vec<BigInt>) -> Result<Self> {
        let nrows = matrix.len();
        let width = matrix.first().map_or(0, Vec::len);
        let mut full = Vec::with_capacity(nrows);
        for (r, mut row) in matrix.into_iter().enumerate() {
            row.extend((0..nrows).map(|i| BigInt::from((i == r) as i32)));
            full.push(row);
        }
        let basis = (width..width + nrows).collect();
        Self::new(full, rhs, basis)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        &self.rows[row][col]
    }

    pub fn rhs(&self, row: usize) -> &BigInt {
        &self.rows[row][self.ncols]
    }

    pub fn row(&self, row: usize) -> &[BigInt] {
        &self.rows[row][..self.ncols]
    }

    pub fn basic(&self, row: usize) -> usize {
        self.basis[row]
    }

    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn row_of(&self, col: usize) -> Option<usize> {
        self.row_of[col]
    }

    pub fn is_basic(&self, col: usize) -> bool {
        self.row_of[col].is_some()
    }

    /// Current value of a variable: `rhs / scale` if basic, zero otherwise.
    pub fn value(&self, col: usize) -> Rational {
        match self.row_of[col] {
            Some(r) => Rational::new(self.rhs(r).clone(), self.scale.clone())
                .expect("scale is positive"),
            None => Rational::zero(),
        }
    }

    /// Makes `col` basic in `row`, replacing the variable basic there.
    pub fn pivot(&mut self, row: usize, col: usize) -> Result<()> {
        let p = self.rows[row][col].clone();
        if p.is_zero() {
            return Err(Error::ZeroPivot { row, col });
        }
        let (before, rest) = self.rows.split_at_mut(row);
        let (pivot_row, after) = rest.split_first_mut().expect("row in range");
        for other in before.iter_mut().chain(after.iter_mut()) {
            let factor = other[col].clone();
            for (j, v) in other.iter_mut().enumerate() {
                let mut num = &p * &*v;
                if !factor.is_zero() {
                    num -= &factor * &pivot_row[j];
                }
                let (q, rem) = num.div_rem(&self.scale);
                if !rem.is_zero() {
                    return Err(Error::Internal("inexact tableau division".into()));
                }
                *v = q;
            }
        }
        let old = self.basis[row];
        self.row_of[old] = None;
        self.row_of[col] = Some(row);
        self.basis[row] = col;
        if p.is_negative() {
            for v in self.rows.iter_mut().flatten() {
                *v = -&*v;
            }
            self.scale = -p;
        } else {
            self.scale = p;
        }
        Ok(())
    }

    /// Pivot expressed by variables: `leaving` must be basic.
    pub fn pivot_var(&mut self, leaving: usize, entering: usize) -> Result<()> {
        let row = self.row_of[leaving]
            .ok_or_else(|| Error::Internal(format!("column {leaving} is not basic")))?;
        self.pivot(row, entering)
    }

    /// Appends a nonbasic column given in current (scaled) terms.
    ///
    /// The column must equal `scale * B^-1 a` for some integer column `a` of
    /// the original system, or later pivots will not divide exactly.
    pub fn add_column(&mut self, entries: Vec<BigInt>) -> Result<usize> {
        if entries.len() != self.nrows() {
            return Err(Error::Dimension("column length".into()));
        }
        let col = self.ncols;
        for (row, e) in self.rows.iter_mut().zip(entries) {
            row.insert(col, e);
        }
        self.ncols += 1;
        self.row_of.push(None);
        Ok(col)
    }

    /// Appends the original equation `w + sum_j coeffs[j] x_j = rhs` where
    /// `w` is a fresh basic variable. Basic variables are eliminated so the
    /// row is in current terms. Returns `(row, column of w)`.
    pub fn add_row(&mut self, coeffs: &[BigInt], rhs: BigInt) -> Result<(usize, usize)> {
        if coeffs.len() != self.ncols {
            return Err(Error::Dimension("row length".into()));
        }
        let w = self.add_column(vec![BigInt::zero(); self.nrows()])?;
        let mut row: Vec<BigInt> = coeffs.iter().map(|c| c * &self.scale).collect();
        row.push(self.scale.clone());
        row.push(rhs * &self.scale);
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some(r) = self.row_of[j] {
                for (k, v) in row.iter_mut().enumerate() {
                    if k != w {
                        *v -= c * &self.rows[r][k];
                    }
                }
            }
        }
        self.rows.push(row);
        self.basis.push(w);
        self.row_of[w] = Some(self.rows.len() - 1);
        Ok((self.rows.len() - 1, w))
    }

    /// Removes the last row. Its basic variable becomes an all-zero column.
    pub fn remove_last_row(&mut self) {
        if self.rows.pop().is_some() {
            let b = self.basis.pop().expect("basis matches rows");
            self.row_of[b] = None;
        }
    }

    /// The tableau as rationals (entries divided by the scale), with the
    /// right-hand side as the last column.
    pub fn to_rational(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| Rational::new(v.clone(), self.scale.clone()).expect("positive"))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    /// Reference pivot on a rational tableau (rhs as last column).
    fn rational_pivot(t: &mut [Vec<Rational>], r: usize, s: usize) {
        let p = t[r][s].clone();
        for v in t[r].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r {
                let f = row[s].clone();
                for (j, v) in row.iter_mut().enumerate() {
                    *v = &*v - &(&f * &pivot_row[j]);
                }
            }
        }
    }

    #[test]
    fn zero_pivot_is_an_error() {
        let mut t = IntegerTableau::with_identity(big(&[&[0, 1]]), vec![BigInt::one()]).unwrap();
        assert_eq!(t.pivot(0, 0), Err(Error::ZeroPivot { row: 0, col: 0 }));
    }

    #[test]
    fn pivot_on_basic_column_is_identity() {
        let t0 = IntegerTableau::with_identity(big(&[&[2, 3], &[4, -1]]), vec![5.into(), 6.into()])
            .unwrap();
        let mut t = t0.clone();
        t.pivot(1, 3).unwrap();
        assert_eq!(t, t0);
    }

    #[test]
    fn add_row_eliminates_basic_variables() {
        let mut t = IntegerTableau::with_identity(big(&[&[2, 1]]), vec![4.into()]).unwrap();
        t.pivot(0, 0).unwrap();
        // w + x0 + x1 = 0 with x0 = (4 - x1 - s) / 2.
        let (r, w) = t.add_row(&[1.into(), 1.into(), 0.into()], 0.into()).unwrap();
        let rat = t.to_rational();
        assert_eq!(t.basic(r), w);
        assert_eq!(rat[r][1], Rational::frac(1, 2));
        assert_eq!(rat[r][2], Rational::frac(-1, 2));
        assert_eq!(rat[r][4], Rational::from(-2));
    }

    fn arb_system() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<i64>)> {
        (1usize..5, 1usize..5).prop_flat_map(|(m, n)| {
            (
                prop::collection::vec(prop::collection::vec(-6i64..7, n), m),
                prop::collection::vec(-6i64..7, m),
            )
        })
    }

    /// Picks the `k`-th (cyclically) nonzero entry in a nonbasic column.
    fn pick_pivot(t: &IntegerTableau, k: usize) -> Option<(usize, usize)> {
        let options: Vec<(usize, usize)> = (0..t.nrows())
            .flat_map(|r| (0..t.ncols()).map(move |c| (r, c)))
            .filter(|&(r, c)| !t.is_basic(c) && !t.entry(r, c).is_zero())
            .collect();
        (!options.is_empty()).then(|| options[k % options.len()])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn integer_pivots_match_rational_pivots(
            (matrix, rhs) in arb_system(),
            choices in prop::collection::vec((0usize..64, 0usize..64), 1..8),
        ) {
            let rows: Vec<&[i64]> = matrix.iter().map(Vec::as_slice).collect();
            let mut t = IntegerTableau::with_identity(
                big(&rows), rhs.iter().map(|&v| BigInt::from(v)).collect()).unwrap();
            let mut oracle = t.to_rational();
            for (a, b) in choices {
                let r = a % t.nrows();
                let s = b % t.ncols();
                if t.entry(r, s).is_zero() {
                    continue;
                }
                let basic_before = t.basic(r);
                t.pivot(r, s).unwrap();
                rational_pivot(&mut oracle, r, s);
                prop_assert_eq!(t.to_rational(), oracle.clone());
                prop_assert!(t.scale().is_positive());
                for row in 0..t.nrows() {
                    let b = t.basic(row);
                    for i in 0..t.nrows() {
                        let want = if i == row { t.scale().clone() } else { BigInt::zero() };
                        prop_assert_eq!(t.entry(i, b), &want);
                    }
                }
                // Pivoting straight back restores the previous basis.
                if s != basic_before {
                    let mut back = t.clone();
                    back.pivot(r, basic_before).unwrap();
                    let mut reoracle = oracle.clone();
                    rational_pivot(&mut reoracle, r, basic_before);
                    prop_assert_eq!(back.to_rational(), reoracle);
                }
            }
        }

        #[test]
        fn two_pivots_then_reversals_restore_tableau(
            (matrix, rhs) in arb_system(),
            picks in (0usize..1000, 0usize..1000),
        ) {
            let rows: Vec<&[i64]> = matrix.iter().map(Vec::as_slice).collect();
            let t0 = IntegerTableau::with_identity(
                big(&rows), rhs.iter().map(|&v| BigInt::from(v)).collect()).unwrap();
            let mut t = t0.clone();
            let Some((r1, s1)) = pick_pivot(&t, picks.0) else { return Ok(()) };
            let b1 = t.basic(r1);
            t.pivot(r1, s1).unwrap();
            let (r2, s2) = pick_pivot(&t, picks.1).expect("leaving column is a candidate");
            let b2 = t.basic(r2);
            t.pivot(r2, s2).unwrap();
            t.pivot(r2, b2).unwrap();
            t.pivot(r1, b1).unwrap();
            prop_assert_eq!(t, t0);
        }
    }
}
