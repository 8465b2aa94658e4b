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

//! Exact rationals and one integer pivot.
//!
//! Solves `x + 2y = 4, 3x - y = 5` by pivoting both variables into a
//! fraction-free tableau and reading the values back as fractions.

use nash_explorer::arith::IntegerTableau;
use nash_explorer::Rational;
use num_bigint::BigInt;

fn main() -> nash_explorer::Result<()> {
    let third: Rational = "1/3".parse()?;
    let sum = &third + &Rational::frac(1, 6);
    println!("1/3 + 1/6 = {sum}");
    assert_eq!(sum, Rational::frac(1, 2));

    // columns: s1 s2 x y, slacks basic
    let big = |v: &[i64]| v.iter().map(|&k| BigInt::from(k)).collect::<Vec<_>>();
    let mut t = IntegerTableau::new(vec![big(&[1, 0, 1, 2]), big(&[0, 1, 3, -1])], big(&[4, 5]), vec![0, 1])?;
    t.pivot(0, 2)?;
    t.pivot(1, 3)?;
    let (x, y) = (t.value(2), t.value(3));
    println!("x = {x}, y = {y}, common denominator {}", t.scale());
    assert_eq!((x, y), (Rational::frac(2, 1), Rational::frac(1, 1)));
    Ok(())
}
