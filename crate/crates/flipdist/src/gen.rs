//! Seeded generators: grid instances, random flip walks, random posets,
//! and random connected instances for randomized checks.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graph::{Graph, Orientation};
use crate::poset::FinitePoset;

/// A rows-by-cols grid with top at the corner `v0_0`, oriented rightward
/// and downward (acyclic).
pub fn grid_instance(rows: usize, cols: usize) -> Result<Orientation> {
    assert!(rows >= 1 && cols >= 1);
    let name = |r: usize, c: usize| format!("v{r}_{c}");
    let mut vertices = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            vertices.push(name(r, c));
        }
    }
    let mut edges = Vec::new();
    let mut tails = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((name(r, c), name(r, c + 1)));
                tails.push(name(r, c));
            }
            if r + 1 < rows {
                edges.push((name(r, c), name(r + 1, c)));
                tails.push(name(r, c));
            }
        }
    }
    let graph = Arc::new(Graph::new(vertices, edges, Some(name(0, 0)))?);
    let refs: Vec<&str> = tails.iter().map(|s| s.as_str()).collect();
    Orientation::from_tail_names(graph, &refs)
}

/// Applies a seeded random walk of legal vertex flips (both directions,
/// excluding top) and returns the endpoint; always same-class with the
/// start.
pub fn random_flip_walk(start: &Orientation, flips: usize, seed: u64) -> Orientation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = start.graph();
    let top = g.top_index();
    let mut cur = start.clone();
    for _ in 0..flips {
        let mut candidates: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| Some(v) != top && !g.edges_at(v).is_empty())
            .filter(|&v| cur.is_source(v) || cur.is_sink(v))
            .collect();
        candidates.sort_unstable();
        if candidates.is_empty() {
            break;
        }
        let v = candidates[rng.gen_range(0..candidates.len())];
        cur.flip_vertex_unchecked(v);
    }
    cur
}

/// Random poset on `n` elements: each forward pair is related with
/// probability `p`, transitively closed.
pub fn random_poset(n: usize, p: f64, seed: u64) -> FinitePoset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elements: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                le[i][j] = true;
            }
        }
    }
    // Transitive closure over the index order (relations only go forward).
    for k in 0..n {
        for i in 0..n {
            if le[i][k] {
                for j in 0..n {
                    if le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
    }
    FinitePoset::from_relation(elements, |a, b| le[a][b]).expect("closure is a partial order")
}

/// Random poset of height at most two: minimal elements below maximal
/// ones, cover pairs drawn independently.
pub fn random_height2_poset(n: usize, p: f64, seed: u64) -> FinitePoset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let elements: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    if n == 0 {
        return FinitePoset::new(elements, vec![]).expect("empty poset");
    }
    let lows = rng.gen_range(1..=n);
    let mut covers = Vec::new();
    for i in 0..lows {
        for j in lows..n {
            if rng.gen_bool(p) {
                covers.push((elements[i].clone(), elements[j].clone()));
            }
        }
    }
    FinitePoset::new(elements, covers).expect("bipartite covers form a poset")
}

/// Random connected multigraph on up to `max_vertices` vertices with an
/// acyclic orientation and a random top; the seed fixes everything.
pub fn random_connected_instance(max_vertices: usize, seed: u64) -> Result<Orientation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_vertices.max(2));
    let vertices: Vec<String> = (0..n).map(|i| format!("w{i:02}")).collect();
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut tails: Vec<String> = Vec::new();
    // Random spanning tree, oriented low to high.
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((vertices[j].clone(), vertices[i].clone()));
        tails.push(vertices[j].clone());
    }
    let extra = rng.gen_range(0..=n / 2 + 1);
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b {
            continue;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        edges.push((vertices[lo].clone(), vertices[hi].clone()));
        tails.push(vertices[lo].clone());
    }
    let top = vertices[rng.gen_range(0..n)].clone();
    let graph = Arc::new(Graph::new(vertices, edges, Some(top))?);
    let refs: Vec<&str> = tails.iter().map(|s| s.as_str()).collect();
    Orientation::from_tail_names(graph, &refs)
}

/// Deterministic JSON bundle for a generated grid pair.
pub fn grid_bundle(rows: usize, cols: usize, seed: u64, walk: usize) -> Result<BTreeMap<String, String>> {
    let reference = grid_instance(rows, cols)?;
    let x = random_flip_walk(&reference, walk, seed);
    let y = random_flip_walk(&reference, walk, seed.wrapping_add(1));
    let mut out = BTreeMap::new();
    out.insert(
        "graph".to_string(),
        crate::graph::graph_to_json(reference.graph()),
    );
    out.insert(
        "reference".to_string(),
        serde_json::to_string(&reference.tail_names()).unwrap(),
    );
    out.insert(
        "x".to_string(),
        serde_json::to_string(&x.tail_names()).unwrap(),
    );
    out.insert(
        "y".to_string(),
        serde_json::to_string(&y.tail_names()).unwrap(),
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corient::same_c;

    #[test]
    fn grid_is_acyclic_and_connected() {
        let o = grid_instance(3, 4).unwrap();
        assert!(o.is_acyclic());
        assert!(o.graph().is_connected());
        assert_eq!(o.graph().vertex_count(), 12);
        // 3 rows of 3 horizontal edges, 4 columns of 2 vertical edges.
        assert_eq!(o.graph().edge_count(), 9 + 8);
    }

    #[test]
    fn walks_stay_in_class_and_are_seed_deterministic() {
        let o = grid_instance(3, 3).unwrap();
        let a = random_flip_walk(&o, 25, 7);
        let b = random_flip_walk(&o, 25, 7);
        assert_eq!(a, b);
        assert!(same_c(&o, &a).unwrap());
    }

    #[test]
    fn random_posets_have_bounded_height() {
        for seed in 0..20 {
            let p = random_height2_poset(6, 0.4, seed);
            assert!(p.height() <= 2);
        }
    }

    #[test]
    fn random_instances_are_valid() {
        for seed in 0..20 {
            let o = random_connected_instance(9, seed).unwrap();
            assert!(o.is_acyclic());
            assert!(o.graph().is_connected());
            assert!(o.graph().top_index().is_some());
        }
    }
}
