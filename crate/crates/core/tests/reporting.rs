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

use nash_explorer::enumeration::EnumOptions;
use nash_explorer::report::{render_decimal, EnumerationReport, RenderMode};
use nash_explorer::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::random_game;

type Parsed = (usize, Vec<Rational>, Rational, usize, Vec<Rational>, Rational);

/// Reads `EE k P1: (i) .. EP= u P2: (j) .. EP= v` lines of one block.
fn parse_block(text: &str, heading: &str) -> Vec<Parsed> {
    let start = text.find(heading).unwrap() + heading.len();
    let mut out = Vec::new();
    for line in text[start..].lines().skip(1) {
        if !line.starts_with("EE ") {
            break;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        let p2 = tok.iter().position(|&t| t == "P2:").unwrap();
        let side = |toks: &[&str]| {
            let idx: usize = toks[0].trim_matches(|c| c == '(' || c == ')').parse().unwrap();
            let ep = toks.iter().position(|&t| t == "EP=").unwrap();
            let probs = toks[1..ep].iter().map(|t| t.parse().unwrap()).collect();
            (idx, probs, toks[ep + 1].parse().unwrap())
        };
        let (i, x, u) = side(&tok[3..p2]);
        let (j, y, v) = side(&tok[p2 + 1..]);
        out.push((i, x, u, j, y, v));
    }
    out
}

#[test]
fn rational_block_parses_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for k in 0..100 {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let g = random_game(&mut rng, m, n, -9, 9, k % 4 == 0);
        let r = EnumerationReport::compute(&g, &EnumOptions::default()).unwrap();
        let text = r.render(RenderMode::Both);
        assert_eq!(text, r.render(RenderMode::Both));
        let parsed = parse_block(&text, "Rational:");
        let expect: Vec<Parsed> = r
            .equilibria
            .iter()
            .map(|e| (e.idx1, e.x.probs.clone(), e.u.clone(), e.idx2, e.y.probs.clone(), e.v.clone()))
            .collect();
        assert_eq!(parsed, expect);
        // Decimal block re-renders the same numbers within rounding.
        let dec = parse_block(&text, "Decimal:");
        assert_eq!(dec.len(), parsed.len());
        let bound = Rational::frac(1, 20000);
        for (d, p) in dec.iter().zip(&parsed) {
            let close = |a: &Rational, b: &Rational| (a - b).abs() <= bound;
            assert!(d.1.iter().zip(&p.1).all(|(a, b)| close(a, b)));
            assert!(d.4.iter().zip(&p.4).all(|(a, b)| close(a, b)));
            assert!(close(&d.2, &p.2) && close(&d.5, &p.5));
        }
        let comps = text.matches("Connected component").count();
        assert_eq!(comps, r.components.len());
    }
}

#[test]
fn decimal_rendering_is_within_half_a_unit() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..2000 {
        let r = Rational::frac(rng.gen_range(-100_000..100_000), rng.gen_range(1..5000));
        let s = render_decimal(&r);
        let back: Rational = s.parse().unwrap();
        assert!((&back - &r).abs() <= Rational::frac(1, 20000), "{r} -> {s}");
        assert!(s == "0" || s.contains('.'));
    }
}

#[test]
fn modes_select_blocks() {
    let g = random_game(&mut ChaCha8Rng::seed_from_u64(1), 2, 2, 0, 5, false);
    let r = EnumerationReport::compute(&g, &EnumOptions::default()).unwrap();
    let rat = r.render(RenderMode::Rational);
    assert!(rat.contains("Rational:") && !rat.contains("Decimal:"));
    let dec = r.render(RenderMode::Decimal);
    assert!(!dec.contains("Rational:") && dec.contains("Decimal:"));
}
