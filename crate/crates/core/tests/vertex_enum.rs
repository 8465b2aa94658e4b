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

mod common;

use std::collections::BTreeSet;

use common::*;
use nash_explorer::error::Error;
use nash_explorer::polyhedron::HPolyhedron;
use nash_explorer::{CancelToken, Rational};
use proptest::prelude::*;

fn to_poly(dim: usize, ineqs: &[Row], eqs: &[Row]) -> HPolyhedron {
    let mut p = HPolyhedron::new(dim);
    for r in ineqs {
        p.add_inequality(r.coeffs.clone(), r.rhs.clone(), r.label).unwrap();
    }
    for r in eqs {
        p.add_equation(r.coeffs.clone(), r.rhs.clone()).unwrap();
    }
    p
}

fn arb_row(dim: usize) -> impl Strategy<Value = Row> {
    (prop::collection::vec(-3i64..=3, dim), -2i64..=4).prop_map(|(c, b)| Row {
        coeffs: rats(&c),
        rhs: q(b),
        label: None,
    })
}

fn arb_polyhedron() -> impl Strategy<Value = (usize, Vec<Row>, Vec<Row>)> {
    (1usize..=4, 0usize..=1).prop_flat_map(|(dim, neq)| {
        (
            Just(dim),
            prop::collection::vec(arb_row(dim), dim..=10 - neq),
            prop::collection::vec(arb_row(dim), neq),
        )
    })
}

fn check_against_oracle(dim: usize, ineqs: &mut [Row], eqs: &[Row]) -> Result<(), TestCaseError> {
    for (i, r) in ineqs.iter_mut().enumerate() {
        r.label = Some(i);
    }
    let poly = to_poly(dim, ineqs, eqs);
    let all_rows: Vec<Vec<Rational>> = ineqs.iter().chain(eqs).map(|r| r.coeffs.clone()).collect();
    let result = poly.enumerate_vertices(&CancelToken::new());
    if rank(&all_rows) < dim {
        // Nonempty polyhedra with a lineality space are rejected; empty
        // ones may be detected first.
        match result {
            Err(Error::Unsupported(_)) => {}
            Ok(v) => prop_assert!(v.is_empty()),
            Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
        }
        return Ok(());
    }
    let found = result.map_err(|e| TestCaseError::fail(format!("{e}")))?;
    let coords: Vec<Vec<Rational>> = found.iter().map(|v| v.coords.clone()).collect();
    let unique: BTreeSet<Vec<Rational>> = coords.iter().cloned().collect();
    prop_assert_eq!(unique.len(), coords.len(), "duplicate vertex");
    prop_assert_eq!(unique, brute_vertices(dim, ineqs, eqs));
    for v in &found {
        prop_assert_eq!(&v.labels, &labels_at(ineqs, &v.coords));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn vertices_match_brute_force((dim, mut ineqs, eqs) in arb_polyhedron()) {
        check_against_oracle(dim, &mut ineqs, &eqs)?;
    }

    #[test]
    fn bounded_degenerate_polytopes_match_brute_force(
        (dim, mut ineqs) in (2usize..=3).prop_flat_map(|d| (Just(d), prop::collection::vec(arb_row(d), 1..=10 - 2 * d)))
    ) {
        // Add a box so every case is a nonempty polytope; rhs values in a
        // small range make ties between constraints common.
        for j in 0..dim {
            let mut c = vec![q(0); dim];
            c[j] = q(1);
            ineqs.push(Row { coeffs: c.clone(), rhs: q(2), label: None });
            c[j] = q(-1);
            ineqs.push(Row { coeffs: c, rhs: q(0), label: None });
        }
        check_against_oracle(dim, &mut ineqs, &[])?;
    }
}

#[test]
fn one_by_one_game_polyhedra() {
    use nash_explorer::enumeration::best_response_polyhedra;
    use nash_explorer::strategic::BimatrixGame;
    let g = BimatrixGame::from_i64(&[vec![7]], &[vec![-2]]).unwrap();
    let (p, qp) = best_response_polyhedra(&g);
    let pv = p.enumerate_vertices(&CancelToken::new()).unwrap();
    let qv = qp.enumerate_vertices(&CancelToken::new()).unwrap();
    assert_eq!(pv.len(), 1);
    assert_eq!(pv[0].coords, vec![q(1), q(-2)]);
    assert_eq!(qv.len(), 1);
    assert_eq!(qv[0].coords, vec![q(1), q(7)]);
}
