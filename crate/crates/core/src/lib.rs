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

//! Exact Nash equilibria of two-player games.
//!
//! Games come as payoff matrices ([`strategic::BimatrixGame`]) or as game
//! trees with information sets and chance moves ([`tree::GameTree`]).
//! All arithmetic is on exact rationals.
//!
//! * [`enumeration`] finds every extreme equilibrium by vertex enumeration,
//!   and [`components`] groups them into maximal cliques.
//! * [`path`] follows Lemke–Howson or Lemke paths to one equilibrium, on the
//!   strategic form or on the [`sequence`] form of a tree.
//! * [`report`] prints results; [`cli`] and [`service`] are the command-line
//!   and HTTP front ends.
//!
//! ```
//! use nash_explorer::enumeration::enumerate_extreme_equilibria;
//! use nash_explorer::strategic::BimatrixGame;
//!
//! let g = BimatrixGame::from_i64(&[vec![5, 3], vec![6, 4]], &[vec![2, 1], vec![3, 4]]).unwrap();
//! let eqs = enumerate_extreme_equilibria(&g).unwrap();
//! assert_eq!(eqs.len(), 1);
//! assert_eq!(eqs[0].u.to_string(), "4");
//! ```

pub mod arith;
pub mod cancel;
pub mod cli;
pub mod components;
pub mod enumeration;
pub mod path;
pub mod error;
pub mod polyhedron;
pub mod report;
pub mod sequence;
pub mod service;
pub mod solve;
pub mod strategic;
pub mod tree;

pub use arith::Rational;
pub use cancel::CancelToken;
pub use error::{Error, Result};
