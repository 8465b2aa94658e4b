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

//! Connected components of the extreme-equilibrium graph and their maximal
//! bipartite cliques.
//!
//! Player-1 strategies are the left nodes, player-2 strategies the right
//! nodes, and each extreme equilibrium is an edge. Any convex combination of
//! the left side of a clique with any convex combination of its right side
//! is an equilibrium.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::enumeration::ExtremeEquilibrium;

/// A biclique `left x right` of strategy identifiers (1-based).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Clique {
    pub left: BTreeSet<usize>,
    pub right: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    /// Edges `(idx1, idx2)` of this component, sorted.
    pub edges: Vec<(usize, usize)>,
    pub cliques: Vec<Clique>,
}

/// Groups equilibria into components ordered by their smallest edge and
/// lists the maximal cliques of each.
pub fn connected_components(eqs: &[ExtremeEquilibrium]) -> Vec<Component> {
    let edges: Vec<(usize, usize)> = eqs.iter().map(|e| (e.idx1, e.idx2)).collect();
    components_of_edges(&edges)
}

pub fn components_of_edges(edges: &[(usize, usize)]) -> Vec<Component> {
    // Union-find over (is_right, id) nodes.
    let mut parent: BTreeMap<(bool, usize), (bool, usize)> = BTreeMap::new();
    fn find(parent: &mut BTreeMap<(bool, usize), (bool, usize)>, x: (bool, usize)) -> (bool, usize) {
        let p = *parent.entry(x).or_insert(x);
        if p == x {
            return x;
        }
        let root = find(parent, p);
        parent.insert(x, root);
        root
    }
    for &(l, r) in edges {
        let a = find(&mut parent, (false, l));
        let b = find(&mut parent, (true, r));
        if a != b {
            parent.insert(a.max(b), a.min(b));
        }
    }
    let mut groups: BTreeMap<(bool, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for &(l, r) in edges {
        let root = find(&mut parent, (false, l));
        groups.entry(root).or_default().push((l, r));
    }
    let mut comps: Vec<Component> = groups
        .into_values()
        .map(|mut e| {
            e.sort();
            e.dedup();
            let cliques = maximal_bicliques(&e);
            Component { edges: e, cliques }
        })
        .collect();
    comps.sort_by(|a, b| a.edges[0].cmp(&b.edges[0]));
    comps
}

/// All maximal bicliques, found as the maximal cliques of the graph that
/// additionally joins every pair of left nodes and every pair of right
/// nodes. Sorted by left side, then right side.
pub fn maximal_bicliques(edges: &[(usize, usize)]) -> Vec<Clique> {
    let left: Vec<usize> = edges.iter().map(|e| e.0).collect::<BTreeSet<_>>().into_iter().collect();
    let right: Vec<usize> = edges.iter().map(|e| e.1).collect::<BTreeSet<_>>().into_iter().collect();
    let nl = left.len();
    let total = nl + right.len();
    let edge_set: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
    let adjacent = |a: usize, b: usize| -> bool {
        if a == b {
            return false;
        }
        match (a < nl, b < nl) {
            (true, true) | (false, false) => true,
            (true, false) => edge_set.contains(&(left[a], right[b - nl])),
            (false, true) => edge_set.contains(&(left[b], right[a - nl])),
        }
    };
    let neighbours: Vec<BTreeSet<usize>> = (0..total)
        .map(|a| (0..total).filter(|&b| adjacent(a, b)).collect())
        .collect();
    let mut found = Vec::new();
    bron_kerbosch(
        &neighbours,
        BTreeSet::new(),
        (0..total).collect(),
        BTreeSet::new(),
        &mut found,
    );
    let mut cliques: Vec<Clique> = found
        .into_iter()
        .filter_map(|c| {
            let l: BTreeSet<usize> = c.iter().filter(|&&v| v < nl).map(|&v| left[v]).collect();
            let r: BTreeSet<usize> = c.iter().filter(|&&v| v >= nl).map(|&v| right[v - nl]).collect();
            (!l.is_empty() && !r.is_empty()).then_some(Clique { left: l, right: r })
        })
        .collect();
    cliques.sort_by(|a, b| {
        let ka: Vec<usize> = a.left.iter().copied().collect();
        let kb: Vec<usize> = b.left.iter().copied().collect();
        ka.cmp(&kb).then_with(|| {
            a.right
                .iter()
                .copied()
                .collect::<Vec<_>>()
                .cmp(&b.right.iter().copied().collect::<Vec<_>>())
        })
    });
    cliques
}

fn bron_kerbosch(
    nbrs: &[BTreeSet<usize>],
    r: BTreeSet<usize>,
    mut p: BTreeSet<usize>,
    mut x: BTreeSet<usize>,
    out: &mut Vec<BTreeSet<usize>>,
) {
    if p.is_empty() && x.is_empty() {
        out.push(r);
        return;
    }
    let pivot = p
        .union(&x)
        .copied()
        .max_by_key(|&u| nbrs[u].intersection(&p).count())
        .expect("p or x nonempty");
    let candidates: Vec<usize> = p.difference(&nbrs[pivot]).copied().collect();
    for v in candidates {
        let mut r2 = r.clone();
        r2.insert(v);
        let p2 = p.intersection(&nbrs[v]).copied().collect();
        let x2 = x.intersection(&nbrs[v]).copied().collect();
        bron_kerbosch(nbrs, r2, p2, x2, out);
        p.remove(&v);
        x.insert(v);
    }
}
