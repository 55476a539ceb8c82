//! Generators for the three hardness reductions, with exact brute-force
//! solvers for the source problems so the biconditionals can be verified
//! end to end on small instances.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::alpha::{AlphaSpec, Matching};
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, Orientation};
use crate::poset::FinitePoset;

pub const DEFAULT_SEARCH_CAP: usize = 16;
pub const DEFAULT_JUMP_CAP: usize = 10;

/// Output of the Hamiltonicity-to-matching-flip-distance reduction.
#[derive(Debug, Clone)]
pub struct HamReduction {
    pub graph: Arc<Graph>,
    pub x: Matching,
    pub y: Matching,
    /// New vertex name -> original vertex or arc it came from.
    pub metadata: BTreeMap<String, String>,
}

/// Builds the gadget graph for an orientation of a cubic graph without
/// sinks or sources: one vertex per original vertex, a positive/negative
/// pair per arc, a four-cycle gadget per vertex, and the two matchings
/// whose flip distance is two exactly when the digraph has a directed
/// Hamiltonian cycle.
pub fn reduce_hamiltonicity(d: &Orientation) -> Result<HamReduction> {
    let g = d.graph();
    let n = g.vertex_count();
    if n < 3 {
        return Err(Error::Invalid("digraph needs at least three vertices".into()));
    }
    for v in 0..n {
        if g.edges_at(v).len() != 3 {
            return Err(Error::Invalid(format!(
                "vertex {:?} does not have degree three",
                g.vertex_name(v)
            )));
        }
        let out = d.out_degree(v);
        if out == 0 || out == 3 {
            return Err(Error::Invalid(format!(
                "vertex {:?} has outdegree {out}; sinks and sources are not allowed",
                g.vertex_name(v)
            )));
        }
    }
    let vertex_node = |v: usize| format!("v_{}", g.vertex_name(v));
    let plus_node = |e: usize| format!("p{e}");
    let minus_node = |e: usize| format!("m{e}");

    let mut vertices: Vec<String> = Vec::new();
    let mut metadata = BTreeMap::new();
    for v in 0..n {
        vertices.push(vertex_node(v));
        metadata.insert(vertex_node(v), format!("vertex {}", g.vertex_name(v)));
    }
    for e in 0..g.edge_count() {
        vertices.push(plus_node(e));
        vertices.push(minus_node(e));
        let arc = format!(
            "arc {} -> {}",
            g.vertex_name(d.tail(e)),
            g.vertex_name(d.head(e))
        );
        metadata.insert(plus_node(e), arc.clone());
        metadata.insert(minus_node(e), arc);
    }

    let mut edges: Vec<(String, String)> = Vec::new();
    for e in 0..g.edge_count() {
        edges.push((plus_node(e), minus_node(e)));
    }
    let mut matched_x = EdgeSet::new();
    let mut matched_y = EdgeSet::new();
    for v in 0..n {
        let incident = g.edges_at(v);
        let incoming: Vec<usize> = {
            let mut arcs: Vec<usize> = incident
                .iter()
                .copied()
                .filter(|&e| d.head(e) == v)
                .collect();
            arcs.sort_unstable();
            arcs
        };
        let outgoing: Vec<usize> = {
            let mut arcs: Vec<usize> = incident
                .iter()
                .copied()
                .filter(|&e| d.tail(e) == v)
                .collect();
            arcs.sort_unstable();
            arcs
        };
        let base = edges.len();
        if outgoing.len() == 1 {
            let (e, f, out) = (incoming[0], incoming[1], outgoing[0]);
            edges.push((plus_node(e), vertex_node(v)));
            edges.push((plus_node(f), vertex_node(v)));
            edges.push((plus_node(e), minus_node(out)));
            edges.push((plus_node(f), minus_node(out)));
            // X keeps the smaller incoming arc on the vertex node.
            matched_x.insert(base);
            matched_x.insert(base + 3);
            matched_y.insert(base + 1);
            matched_y.insert(base + 2);
        } else {
            let (e, f, inc) = (outgoing[0], outgoing[1], incoming[0]);
            edges.push((minus_node(e), vertex_node(v)));
            edges.push((minus_node(f), vertex_node(v)));
            edges.push((minus_node(e), plus_node(inc)));
            edges.push((minus_node(f), plus_node(inc)));
            // X keeps the larger outgoing arc on the vertex node.
            matched_x.insert(base + 1);
            matched_x.insert(base + 2);
            matched_y.insert(base);
            matched_y.insert(base + 3);
        }
    }
    let reduced = Arc::new(Graph::new(vertices, edges, None)?);
    let mut side1: BTreeSet<String> = BTreeSet::new();
    let mut side2: BTreeSet<String> = BTreeSet::new();
    for v in 0..n {
        if d.out_degree(v) == 1 {
            side1.insert(vertex_node(v));
        } else {
            side2.insert(vertex_node(v));
        }
    }
    for e in 0..g.edge_count() {
        side1.insert(minus_node(e));
        side2.insert(plus_node(e));
    }
    let x = Matching::new(
        Arc::clone(&reduced),
        side1.clone(),
        side2.clone(),
        matched_x,
    )?;
    let y = Matching::new(Arc::clone(&reduced), side1, side2, matched_y)?;
    Ok(HamReduction {
        graph: reduced,
        x,
        y,
        metadata,
    })
}

/// Output of the arc-reversal reduction for 2-in-2-out digraphs.
#[derive(Debug, Clone)]
pub struct TwoHamReduction {
    pub alpha: AlphaSpec,
    pub x: Orientation,
    pub y: Orientation,
}

/// The instance asking whether a 2-in-2-out digraph and its full reversal
/// are two flips apart.
pub fn reduce_two_ham(d: &Orientation) -> Result<TwoHamReduction> {
    let g = d.graph();
    check_two_in_two_out(d)?;
    let alpha = AlphaSpec::new(
        g.vertex_names()
            .iter()
            .map(|v| (v.clone(), 2))
            .collect(),
    );
    Ok(TwoHamReduction {
        alpha,
        x: d.clone(),
        y: d.reverse_all(),
    })
}

fn check_two_in_two_out(d: &Orientation) -> Result<()> {
    let g = d.graph();
    for v in 0..g.vertex_count() {
        let deg = g.edges_at(v).len();
        let out = d.out_degree(v);
        if deg != 4 || out != 2 {
            return Err(Error::Invalid(format!(
                "vertex {:?} is not 2-in-2-out",
                g.vertex_name(v)
            )));
        }
    }
    Ok(())
}

/// Output of the jump-number reduction.
#[derive(Debug, Clone)]
pub struct JumpReduction {
    pub x: Orientation,
    pub y: Orientation,
    pub top: String,
}

/// For a height-two poset: its cover graph plus a universal top vertex.
/// Both orientations direct covers upward; the top edges point toward the
/// top in `x` and away in `y`.
pub fn reduce_jump_number(p: &FinitePoset) -> Result<JumpReduction> {
    if p.height() > 2 {
        return Err(Error::Invalid(format!(
            "poset has height {}, need at most two",
            p.height()
        )));
    }
    let mut top = "T".to_string();
    while p.elements().contains(&top) {
        top.push('_');
    }
    let mut vertices = p.elements().to_vec();
    vertices.push(top.clone());
    let mut edges = Vec::new();
    let mut x_tails = Vec::new();
    let mut y_tails = Vec::new();
    for &(lo, hi) in p.covers() {
        edges.push((p.elements()[lo].clone(), p.elements()[hi].clone()));
        x_tails.push(p.elements()[lo].clone());
        y_tails.push(p.elements()[lo].clone());
    }
    for v in p.elements() {
        edges.push((v.clone(), top.clone()));
        x_tails.push(v.clone());
        y_tails.push(top.clone());
    }
    let graph = Arc::new(Graph::new(vertices, edges, Some(top.clone()))?);
    let x_refs: Vec<&str> = x_tails.iter().map(|s| s.as_str()).collect();
    let y_refs: Vec<&str> = y_tails.iter().map(|s| s.as_str()).collect();
    Ok(JumpReduction {
        x: Orientation::from_tail_names(Arc::clone(&graph), &x_refs)?,
        y: Orientation::from_tail_names(graph, &y_refs)?,
        top,
    })
}

/// Exact jump number by enumerating linear extensions.
pub fn jump_number_bruteforce(p: &FinitePoset, cap: usize) -> Result<u32> {
    if p.len() > cap {
        return Err(Error::CapExceeded(format!(
            "poset has {} elements, enumeration cap is {cap}",
            p.len()
        )));
    }
    if p.len() <= 1 {
        return Ok(0);
    }
    let mut best = u32::MAX;
    p.linear_extensions(&mut |ext| {
        let jumps = ext
            .windows(2)
            .filter(|w| !p.le(w[0], w[1]))
            .count() as u32;
        best = best.min(jumps);
        best > 0 // stop early at a jump-free extension
    });
    Ok(best)
}

/// Exact directed-Hamiltonian-cycle test by backtracking.
pub fn ham_cycle_exists(d: &Orientation, cap: usize) -> Result<bool> {
    let g = d.graph();
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::CapExceeded(format!(
            "digraph has {n} vertices, search cap is {cap}"
        )));
    }
    if n == 0 {
        return Ok(false);
    }
    let mut out_heads: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in 0..g.edge_count() {
        out_heads[d.tail(e)].push(d.head(e));
    }
    fn extend(
        out_heads: &[Vec<usize>],
        visited: &mut Vec<bool>,
        v: usize,
        count: usize,
        n: usize,
    ) -> bool {
        if count == n {
            return out_heads[v].contains(&0);
        }
        for &w in &out_heads[v] {
            if w != 0 && !visited[w] {
                visited[w] = true;
                if extend(out_heads, visited, w, count + 1, n) {
                    return true;
                }
                visited[w] = false;
            }
        }
        false
    }
    if n == 1 {
        return Ok(false);
    }
    let mut visited = vec![false; n];
    visited[0] = true;
    Ok(extend(&out_heads, &mut visited, 0, 1, n))
}

/// Whether the arc set of a 2-in-2-out digraph is the union of two
/// arc-disjoint directed Hamiltonian cycles, by backtracking over
/// per-vertex out-arc colorings.
pub fn two_ham_decomposition(d: &Orientation, cap: usize) -> Result<bool> {
    let g = d.graph();
    check_two_in_two_out(d)?;
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::CapExceeded(format!(
            "digraph has {n} vertices, search cap is {cap}"
        )));
    }
    if n == 0 {
        return Ok(false);
    }
    let out_arcs: Vec<[usize; 2]> = (0..n)
        .map(|v| {
            let arcs: Vec<usize> = g
                .edges_at(v)
                .iter()
                .copied()
                .filter(|&e| d.tail(e) == v)
                .collect();
            [arcs[0], arcs[1]]
        })
        .collect();
    // color[e] in {0,1}; per vertex each color has exactly one out-arc and
    // at most one in-arc.
    fn assign(
        d: &Orientation,
        out_arcs: &[[usize; 2]],
        color: &mut Vec<u8>,
        in_count: &mut Vec<[u8; 2]>,
        v: usize,
        n: usize,
    ) -> bool {
        if v == n {
            return both_colors_hamiltonian(d, out_arcs, color, n);
        }
        for swap in [false, true] {
            let (c0, c1) = if swap { (1, 0) } else { (0, 1) };
            let [a, b] = out_arcs[v];
            let ha = d.head(a);
            let hb = d.head(b);
            color[a] = c0;
            color[b] = c1;
            in_count[ha][c0 as usize] += 1;
            in_count[hb][c1 as usize] += 1;
            let ok = in_count[ha][c0 as usize] <= 1 && in_count[hb][c1 as usize] <= 1;
            if ok && assign(d, out_arcs, color, in_count, v + 1, n) {
                return true;
            }
            in_count[ha][c0 as usize] -= 1;
            in_count[hb][c1 as usize] -= 1;
        }
        false
    }
    fn both_colors_hamiltonian(
        d: &Orientation,
        out_arcs: &[[usize; 2]],
        color: &[u8],
        n: usize,
    ) -> bool {
        for c in 0..2u8 {
            let mut v = 0usize;
            for step in 0..n {
                let [a, b] = out_arcs[v];
                let e = if color[a] == c { a } else { b };
                v = d.head(e);
                if v == 0 && step + 1 != n {
                    return false;
                }
            }
            if v != 0 {
                return false;
            }
        }
        true
    }
    let mut color = vec![0u8; g.edge_count()];
    let mut in_count = vec![[0u8; 2]; n];
    Ok(assign(d, &out_arcs, &mut color, &mut in_count, 0, n))
}

/// Structural validators used by the reduction tests.
pub fn is_subcubic(g: &Graph) -> bool {
    (0..g.vertex_count()).all(|v| g.edges_at(v).len() <= 3)
}

pub fn is_two_connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n < 3 || !g.is_connected() {
        return false;
    }
    // No cut vertices: removing any single vertex keeps the rest connected.
    for cut in 0..n {
        let start = (0..n).find(|&v| v != cut).unwrap();
        let mut seen: BTreeSet<usize> = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &e in g.edges_at(v) {
                let w = g.other_end(e, v);
                if w != cut && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if seen.len() != n - 1 {
            return false;
        }
    }
    true
}
