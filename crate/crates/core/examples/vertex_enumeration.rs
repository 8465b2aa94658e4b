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

//! Vertices of a polyhedron by reverse search, with the labels of their
//! tight inequalities.

use nash_explorer::enumeration::best_response_polyhedra;
use nash_explorer::polyhedron::HPolyhedron;
use nash_explorer::strategic::BimatrixGame;
use nash_explorer::{CancelToken, Rational};

fn main() -> nash_explorer::Result<()> {
    let cancel = CancelToken::new();
    // A square pyramid: the apex lies on four facets, so it is degenerate
    // but still reported once.
    let r = |k: i64| Rational::from_integer(k);
    let mut p = HPolyhedron::new(3);
    for (k, (a, b)) in [(1, 0), (-1, 0), (0, 1), (0, -1)].into_iter().enumerate() {
        p.add_inequality(vec![r(a), r(b), r(1)], r(1), Some(k))?;
    }
    p.add_inequality(vec![r(0), r(0), r(-1)], r(0), Some(4))?;
    for v in p.enumerate_vertices(&cancel)? {
        let coords: Vec<String> = v.coords.iter().map(ToString::to_string).collect();
        println!("({}) tight {:?}", coords.join(", "), v.labels);
    }

    // The best response polyhedra of a game are the same kind of object.
    let game = BimatrixGame::from_i64(&[vec![1, 1], vec![0, 2]], &[vec![3, 3], vec![0, 2]])?;
    let (pp, _) = best_response_polyhedra(&game);
    println!("P has {} vertices", pp.enumerate_vertices(&cancel)?.len());
    Ok(())
}
