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
use nash_explorer::components::{connected_components, maximal_bicliques};
use nash_explorer::enumeration::{enumerate_extreme_equilibria, enumerate_with, EnumOptions};
use nash_explorer::strategic::{BimatrixGame, MixedStrategy};
use nash_explorer::{CancelToken, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn found_set(g: &BimatrixGame) -> BTreeSet<Profile> {
    let eqs = enumerate_extreme_equilibria(g).unwrap();
    let set: BTreeSet<Profile> = eqs.iter().map(|e| (e.x.probs.clone(), e.y.probs.clone())).collect();
    assert_eq!(set.len(), eqs.len(), "duplicate equilibrium");
    for e in &eqs {
        assert!(g.is_equilibrium(&e.x, &e.y));
    }
    set
}

fn is_nondegenerate(g: &BimatrixGame) -> bool {
    let ((p, pe), (qr, qe)) = best_response_rows(g);
    let ok = |rows: &[Row], eqs: &[Row], dim: usize| {
        brute_vertices(dim, rows, eqs)
            .iter()
            .all(|z| labels_at(rows, z).len() == dim - 1)
    };
    ok(&p, &pe, g.rows() + 1) && ok(&qr, &qe, g.cols() + 1)
}

#[test]
fn random_games_match_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut nondegenerate = 0;
    for case in 0..220 {
        let m = rng.gen_range(1..=5);
        let n = rng.gen_range(1..=5);
        let dup = case % 4 == 0;
        let g = random_game(&mut rng, m, n, -4, 6, dup);
        let found = found_set(&g);
        assert_eq!(found, brute_equilibria(&g), "case {case}: {g:?}");
        if is_nondegenerate(&g) {
            nondegenerate += 1;
            assert_eq!(found, support_enumeration(&g), "case {case}");
            assert_eq!(found.len() % 2, 1, "generic game with even count");
        }
    }
    assert!(nondegenerate >= 50, "only {nondegenerate} nondegenerate cases");
}

#[test]
fn parallel_enumeration_is_identical() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let g = random_game(&mut rng, 4, 4, 0, 3, true);
        let single = enumerate_extreme_equilibria(&g).unwrap();
        let multi = enumerate_with(&g, &EnumOptions { threads: 4, cancel: CancelToken::new() }).unwrap();
        assert_eq!(single, multi);
    }
}

#[test]
fn random_bipartite_graphs_match_brute_force_bicliques() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..300 {
        let nl = rng.gen_range(1..=8);
        let nr = rng.gen_range(1..=8);
        let density = rng.gen_range(0.2..0.9);
        let edges: BTreeSet<(usize, usize)> = (1..=nl)
            .flat_map(|l| (1..=nr).map(move |r| (l, r)))
            .filter(|_| rng.gen_bool(density))
            .collect();
        if edges.is_empty() {
            continue;
        }
        let list: Vec<_> = edges.iter().copied().collect();
        let got: BTreeSet<_> = maximal_bicliques(&list).into_iter().map(|c| (c.left, c.right)).collect();
        assert_eq!(got, brute_bicliques(&edges));
        let comps = nash_explorer::components::components_of_edges(&list);
        let got: BTreeSet<_> = comps
            .iter()
            .map(|c| {
                (
                    c.edges.iter().map(|e| e.0).collect::<BTreeSet<_>>(),
                    c.edges.iter().map(|e| e.1).collect::<BTreeSet<_>>(),
                )
            })
            .collect();
        assert_eq!(got, brute_components(&edges));
        for c in &comps {
            // Cliques cover the component and none contains another.
            let covered: BTreeSet<(usize, usize)> = c
                .cliques
                .iter()
                .flat_map(|k| k.left.iter().flat_map(move |&l| k.right.iter().map(move |&r| (l, r))))
                .collect();
            assert_eq!(covered, c.edges.iter().copied().collect());
        }
    }
}

/// Random convex weights with small denominators.
fn random_weights(rng: &mut impl Rng, k: usize) -> Vec<Rational> {
    let raw: Vec<i64> = (0..k).map(|_| rng.gen_range(0..=5)).collect();
    let total: i64 = raw.iter().sum();
    if total == 0 {
        return (0..k).map(|i| if i == 0 { q(1) } else { q(0) }).collect();
    }
    raw.iter().map(|&w| frac(w, total)).collect()
}

fn mix(gens: &[&Vec<Rational>], w: &[Rational]) -> Vec<Rational> {
    (0..gens[0].len())
        .map(|t| gens.iter().zip(w).map(|(g, wi)| &g[t] * wi).sum())
        .collect()
}

#[test]
fn convex_combinations_of_cliques_are_equilibria() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut games = vec![
        BimatrixGame::from_i64(&[vec![5, 5, 3, 3], vec![6, 4, 6, 4]], &[vec![2, 2, 1, 1], vec![3, 4, 3, 4]]).unwrap(),
        BimatrixGame::symmetric(
            (0..3).map(|i| (0..3).map(|j| q(-((i == j) as i64))).collect()).collect(),
        )
        .unwrap(),
    ];
    for _ in 0..10 {
        games.push(random_game(&mut rng, 4, 3, 0, 2, true));
    }
    for g in &games {
        let eqs = enumerate_extreme_equilibria(g).unwrap();
        let xs: Vec<&Vec<Rational>> = {
            let mut v: Vec<(usize, &Vec<Rational>)> = eqs.iter().map(|e| (e.idx1, &e.x.probs)).collect();
            v.sort_by_key(|p| p.0);
            v.dedup_by_key(|p| p.0);
            v.into_iter().map(|p| p.1).collect()
        };
        let ys: Vec<&Vec<Rational>> = {
            let mut v: Vec<(usize, &Vec<Rational>)> = eqs.iter().map(|e| (e.idx2, &e.y.probs)).collect();
            v.sort_by_key(|p| p.0);
            v.dedup_by_key(|p| p.0);
            v.into_iter().map(|p| p.1).collect()
        };
        for comp in connected_components(&eqs) {
            for c in &comp.cliques {
                let lg: Vec<&Vec<Rational>> = c.left.iter().map(|&i| xs[i - 1]).collect();
                let rg: Vec<&Vec<Rational>> = c.right.iter().map(|&j| ys[j - 1]).collect();
                for _ in 0..100 {
                    let x = mix(&lg, &random_weights(&mut rng, lg.len()));
                    let y = mix(&rg, &random_weights(&mut rng, rg.len()));
                    let x = MixedStrategy::new(1, x).unwrap();
                    let y = MixedStrategy::new(2, y).unwrap();
                    assert!(g.is_equilibrium(&x, &y));
                }
            }
        }
    }
}
