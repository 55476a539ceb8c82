//! Brute-force exploration of flip graphs: exact distances and witness
//! sequences for every flip mode on small instances. The ground truth the
//! polynomial algorithm is checked against.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::corient::{FlipDirection, FlipSequence, FlipStep};
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Orientation};

/// Which elementary moves the oracle explores.
#[derive(Debug, Clone)]
pub enum FlipMode {
    /// Reversal of any simple directed cycle.
    Cycle,
    /// Reversal of directed cycles all of whose edges differ from `target`.
    CycleRestricted { target: Orientation },
    /// Vertex flips at sources and sinks distinct from top, both directions.
    Vertex,
    /// Reversal of minimal directed cuts with interiors of at most
    /// `max_interior` vertices.
    CutBounded { max_interior: usize },
}

/// Search limits. Overruns are hard errors, never silent truncation.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    pub max_states: usize,
    pub max_cycles: usize,
    pub max_depth: Option<usize>,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            max_states: 1_000_000,
            max_cycles: 10_000,
            max_depth: None,
        }
    }
}

/// All simple directed cycles as edge sets, sorted lexicographically.
pub fn enumerate_simple_directed_cycles(o: &Orientation, cap: usize) -> Result<Vec<EdgeSet>> {
    enumerate_cycles_filtered(o, cap, None)
}

fn enumerate_cycles_filtered(
    o: &Orientation,
    cap: usize,
    allowed: Option<&EdgeSet>,
) -> Result<Vec<EdgeSet>> {
    let g = o.graph();
    let n = g.vertex_count();
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in 0..g.edge_count() {
        if allowed.map_or(true, |a| a.contains(e)) {
            out_arcs[o.tail(e)].push(e);
        }
    }
    let mut cycles: Vec<EdgeSet> = Vec::new();
    // Anchor each cycle at its smallest vertex index; extend paths through
    // larger vertices only.
    fn dfs(
        o: &Orientation,
        out_arcs: &[Vec<usize>],
        anchor: usize,
        v: usize,
        on_path: &mut Vec<bool>,
        path: &mut Vec<usize>,
        cycles: &mut Vec<EdgeSet>,
        cap: usize,
    ) -> Result<()> {
        for &e in &out_arcs[v] {
            let w = o.head(e);
            if w == anchor {
                if cycles.len() >= cap {
                    return Err(Error::CapExceeded(format!(
                        "more than {cap} simple directed cycles"
                    )));
                }
                let mut cycle: EdgeSet = path.iter().copied().collect();
                cycle.insert(e);
                cycles.push(cycle);
                continue;
            }
            if w < anchor || on_path[w] {
                continue;
            }
            on_path[w] = true;
            path.push(e);
            dfs(o, out_arcs, anchor, w, on_path, path, cycles, cap)?;
            path.pop();
            on_path[w] = false;
        }
        Ok(())
    }
    for anchor in 0..n {
        let mut on_path = vec![false; n];
        on_path[anchor] = true;
        let mut path = Vec::new();
        dfs(o, &out_arcs, anchor, anchor, &mut on_path, &mut path, &mut cycles, cap)?;
    }
    cycles.sort();
    Ok(cycles)
}

/// Neighbors of an orientation under a flip mode, in deterministic order.
pub fn flip_neighbors(
    o: &Orientation,
    mode: &FlipMode,
    caps: &Caps,
) -> Result<Vec<(FlipStep, Orientation)>> {
    let g = o.graph();
    let mut neighbors = Vec::new();
    match mode {
        FlipMode::Cycle => {
            for cycle in enumerate_simple_directed_cycles(o, caps.max_cycles)? {
                let next = o.reverse_edges(&cycle);
                neighbors.push((FlipStep::Cycle { edges: cycle }, next));
            }
        }
        FlipMode::CycleRestricted { target } => {
            let allowed = o.differing_edges(target)?;
            for cycle in enumerate_cycles_filtered(o, caps.max_cycles, Some(&allowed))? {
                let next = o.reverse_edges(&cycle);
                neighbors.push((FlipStep::Cycle { edges: cycle }, next));
            }
        }
        FlipMode::Vertex => {
            let top = g.require_top()?;
            for &v in &g.vertices_by_name() {
                if v == top || g.edges_at(v).is_empty() {
                    continue;
                }
                let direction = if o.is_source(v) {
                    FlipDirection::SourceToSink
                } else if o.is_sink(v) {
                    FlipDirection::SinkToSource
                } else {
                    continue;
                };
                let mut next = o.clone();
                next.flip_vertex_unchecked(v);
                neighbors.push((
                    FlipStep::Vertex {
                        vertex: g.vertex_name(v).to_string(),
                        direction,
                    },
                    next,
                ));
            }
        }
        FlipMode::CutBounded { max_interior } => {
            let top = g.require_top()?;
            for interior in connected_subsets(o, *max_interior, top) {
                if let Some(edges) = bounded_dicut_edges(o, &interior) {
                    let next = o.reverse_edges(&edges);
                    let names: BTreeSet<String> = interior
                        .iter()
                        .map(|&v| g.vertex_name(v).to_string())
                        .collect();
                    neighbors.push((FlipStep::Cut { interior: names }, next));
                }
            }
        }
    }
    Ok(neighbors)
}

/// Connected vertex subsets of size at most `k` avoiding `top`, sorted.
fn connected_subsets(o: &Orientation, k: usize, top: usize) -> Vec<BTreeSet<usize>> {
    let g = o.graph();
    let n = g.vertex_count();
    let mut found: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut frontier: Vec<BTreeSet<usize>> = Vec::new();
    for v in 0..n {
        if v != top {
            let s = BTreeSet::from([v]);
            if found.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    while let Some(s) = frontier.pop() {
        if s.len() >= k {
            continue;
        }
        let mut boundary: BTreeSet<usize> = BTreeSet::new();
        for &v in &s {
            for &e in g.edges_at(v) {
                let w = g.other_end(e, v);
                if w != top && !s.contains(&w) {
                    boundary.insert(w);
                }
            }
        }
        for w in boundary {
            let mut next = s.clone();
            next.insert(w);
            if found.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    found.into_iter().collect()
}

/// Edges of the minimal dicut with canonical interior `interior`, if the
/// interior induces one: uniform crossing, connected complement.
fn bounded_dicut_edges(o: &Orientation, interior: &BTreeSet<usize>) -> Option<EdgeSet> {
    let g = o.graph();
    let mut edges = EdgeSet::new();
    let mut leaving = 0usize;
    let mut entering = 0usize;
    for &v in interior {
        for &e in g.edges_at(v) {
            if interior.contains(&g.other_end(e, v)) {
                continue;
            }
            edges.insert(e);
            if o.tail(e) == v {
                leaving += 1;
            } else {
                entering += 1;
            }
        }
    }
    if edges.is_empty() || (leaving != 0 && entering != 0) {
        return None;
    }
    // Minimality: the complement must also be connected, so the interior is
    // canonical for the cut.
    let n = g.vertex_count();
    let outside: Vec<usize> = (0..n).filter(|v| !interior.contains(v)).collect();
    if outside.is_empty() {
        return None;
    }
    let mut seen: BTreeSet<usize> = BTreeSet::from([outside[0]]);
    let mut stack = vec![outside[0]];
    while let Some(v) = stack.pop() {
        for &e in g.edges_at(v) {
            let w = g.other_end(e, v);
            if !interior.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    if seen.len() != outside.len() {
        return None;
    }
    Some(edges)
}

/// Result of a breadth-first oracle search.
#[derive(Debug, Clone)]
pub struct BfsOutcome {
    /// Exact flip distance, or `None` if the target was not reached within
    /// the caps (depth limit, or genuinely unreachable).
    pub distance: Option<usize>,
    pub witness: Option<FlipSequence>,
    pub states: usize,
}

/// Exact shortest flip count from `x` to `y` under a mode, with a witness.
pub fn bfs_distance(
    x: &Orientation,
    y: &Orientation,
    mode: &FlipMode,
    caps: &Caps,
) -> Result<BfsOutcome> {
    if x.graph().as_ref() != y.graph().as_ref() {
        return Err(Error::Invalid(
            "orientations live on different graphs".into(),
        ));
    }
    struct Node {
        orientation: Orientation,
        parent: usize,
        step: Option<FlipStep>,
        depth: usize,
    }
    let target = y.bit_key();
    let mut nodes = vec![Node {
        orientation: x.clone(),
        parent: usize::MAX,
        step: None,
        depth: 0,
    }];
    let mut index: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    index.insert(x.bit_key(), 0);
    let mut queue = VecDeque::from([0usize]);
    let mut found: Option<usize> = None;
    if x.bit_key() == target {
        found = Some(0);
    }
    while let Some(i) = queue.pop_front() {
        if found.is_some() {
            break;
        }
        if let Some(limit) = caps.max_depth {
            if nodes[i].depth >= limit {
                continue;
            }
        }
        let cur = nodes[i].orientation.clone();
        let depth = nodes[i].depth;
        for (step, next) in flip_neighbors(&cur, mode, caps)? {
            let key = next.bit_key();
            if index.contains_key(&key) {
                continue;
            }
            let j = nodes.len();
            if j >= caps.max_states {
                return Err(Error::CapExceeded(format!(
                    "more than {} states explored",
                    caps.max_states
                )));
            }
            index.insert(key.clone(), j);
            nodes.push(Node {
                orientation: next,
                parent: i,
                step: Some(step),
                depth: depth + 1,
            });
            if key == target {
                found = Some(j);
                break;
            }
            queue.push_back(j);
        }
    }
    let states = nodes.len();
    match found {
        None => Ok(BfsOutcome {
            distance: None,
            witness: None,
            states,
        }),
        Some(mut i) => {
            let distance = nodes[i].depth;
            let mut steps = Vec::new();
            while let Some(step) = nodes[i].step.clone() {
                steps.push(step);
                i = nodes[i].parent;
            }
            steps.reverse();
            Ok(BfsOutcome {
                distance: Some(distance),
                witness: Some(FlipSequence { steps }),
                states,
            })
        }
    }
}

/// Convenience wrapper returning only the distance.
pub fn oracle_distance(
    x: &Orientation,
    y: &Orientation,
    mode: &FlipMode,
    caps: &Caps,
) -> Result<Option<usize>> {
    Ok(bfs_distance(x, y, mode, caps)?.distance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corient::vertex_flip;
    use crate::fixtures;
    use crate::graph::{sources_and_sinks, Graph};
    use std::sync::Arc;

    #[test]
    fn acyclic_orientation_has_no_cycles() {
        let f = fixtures::fig7();
        let cycles =
            enumerate_simple_directed_cycles(&f.orientations["bottom"], 1000).unwrap();
        assert!(cycles.is_empty());
    }

    #[test]
    fn directed_triangle_has_one_cycle() {
        let g = Arc::new(
            Graph::new(
                vec!["a".into(), "b".into(), "c".into()],
                vec![
                    ("a".into(), "b".into()),
                    ("b".into(), "c".into()),
                    ("c".into(), "a".into()),
                ],
                None,
            )
            .unwrap(),
        );
        let o = Orientation::from_tail_names(g, &["a", "b", "c"]).unwrap();
        assert_eq!(enumerate_simple_directed_cycles(&o, 10).unwrap().len(), 1);
    }

    #[test]
    fn fig2_left_cycle_count_regression() {
        let f = fixtures::fig2();
        let cycles = enumerate_simple_directed_cycles(&f.orientations["left"], 1000).unwrap();
        assert_eq!(cycles.len(), 5);
        // The flip of the drawing is among them.
        let drawn: EdgeSet = [7, 8, 9, 10, 11, 12].into_iter().collect();
        assert!(cycles.contains(&drawn));
    }

    #[test]
    fn parallel_arcs_make_a_two_cycle() {
        let g = Arc::new(
            Graph::new(
                vec!["a".into(), "b".into()],
                vec![("a".into(), "b".into()), ("b".into(), "a".into())],
                None,
            )
            .unwrap(),
        );
        let o = Orientation::from_tail_names(g, &["a", "b"]).unwrap();
        let cycles = enumerate_simple_directed_cycles(&o, 10).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 2);
    }

    #[test]
    fn fig7_vertex_neighbors_at_bottom() {
        let f = fixtures::fig7();
        let caps = Caps::default();
        let neighbors =
            flip_neighbors(&f.orientations["bottom"], &FlipMode::Vertex, &caps).unwrap();
        assert_eq!(neighbors.len(), 1);
        match &neighbors[0].0 {
            FlipStep::Vertex { vertex, .. } => assert_eq!(vertex, "e"),
            _ => panic!("expected vertex step"),
        }
    }

    #[test]
    fn fig7_cut_bounded_neighbors_at_bottom() {
        let f = fixtures::fig7();
        let caps = Caps::default();
        let neighbors = flip_neighbors(
            &f.orientations["bottom"],
            &FlipMode::CutBounded { max_interior: 1 },
            &caps,
        )
        .unwrap();
        assert_eq!(neighbors.len(), 1);
        match &neighbors[0].0 {
            FlipStep::Cut { interior } => {
                assert_eq!(interior, &BTreeSet::from(["e".to_string()]))
            }
            _ => panic!("expected cut step"),
        }
        // The sole neighbor agrees with the vertex flip at e.
        assert_eq!(
            neighbors[0].1,
            vertex_flip(&f.orientations["bottom"], "e").unwrap()
        );
    }

    #[test]
    fn cycle_mode_on_acyclic_orientation_has_no_neighbors() {
        let f = fixtures::fig7();
        let caps = Caps::default();
        let neighbors =
            flip_neighbors(&f.orientations["bottom"], &FlipMode::Cycle, &caps).unwrap();
        assert!(neighbors.is_empty());
    }

    #[test]
    fn fig7_vertex_distance_is_four() {
        let f = fixtures::fig7();
        let caps = Caps::default();
        let outcome = bfs_distance(
            &f.orientations["bottom"],
            &f.orientations["top"],
            &FlipMode::Vertex,
            &caps,
        )
        .unwrap();
        assert_eq!(outcome.distance, Some(4));
        let witness = outcome.witness.unwrap();
        assert!(crate::distance::verify_sequence(
            &f.orientations["bottom"],
            &witness,
            &f.orientations["top"]
        ));
    }

    #[test]
    fn identical_orientations_are_at_distance_zero() {
        let f = fixtures::fig7();
        let caps = Caps::default();
        let x = &f.orientations["bottom"];
        for mode in [FlipMode::Cycle, FlipMode::Vertex] {
            assert_eq!(oracle_distance(x, x, &mode, &caps).unwrap(), Some(0));
        }
    }

    #[test]
    fn fig3_cycle_vs_restricted_distance() {
        // The drawing demonstrates a three-flip route (the two big faces
        // and the outer square), but breadth-first search finds an even
        // shorter one: after the big upper cycle, the lower halves splice
        // with the reversed bridges and upper outer arcs into one directed
        // cycle. Two flips are exact; restricted to differing edges the
        // four blocks must each be flipped.
        let f = fixtures::fig3();
        let caps = Caps::default();
        let x = &f.orientations["x"];
        let y = &f.orientations["y"];
        assert_eq!(
            oracle_distance(x, y, &FlipMode::Cycle, &caps).unwrap(),
            Some(2)
        );
        assert_eq!(
            oracle_distance(
                x,
                y,
                &FlipMode::CycleRestricted { target: y.clone() },
                &caps
            )
            .unwrap(),
            Some(4)
        );
    }

    #[test]
    fn fig3_three_flip_route_from_the_drawing_replays() {
        // The route the drawing describes: upper big face, then the lower
        // big face, then the outer square.
        let f = fixtures::fig3();
        let x = &f.orientations["x"];
        let y = &f.orientations["y"];
        let d1: EdgeSet = [0, 5, 6, 1, 9, 10, 2, 13, 14, 3, 17, 18, 4, 21, 22]
            .into_iter()
            .collect();
        let d2: EdgeSet = [23, 24, 4, 19, 20, 3, 15, 16, 2, 11, 12, 1, 7, 8, 0]
            .into_iter()
            .collect();
        let d3: EdgeSet = [21, 22, 23, 24].into_iter().collect();
        let mut cur = x.clone();
        for c in [d1, d2, d3] {
            cur = crate::alpha::flip_cycle(&cur, &c).unwrap();
        }
        assert_eq!(&cur, y);
    }

    #[test]
    fn depth_limit_reports_unreached() {
        let f = fixtures::fig7();
        let caps = Caps {
            max_depth: Some(2),
            ..Caps::default()
        };
        let outcome = bfs_distance(
            &f.orientations["bottom"],
            &f.orientations["top"],
            &FlipMode::Vertex,
            &caps,
        )
        .unwrap();
        assert_eq!(outcome.distance, None);
    }

    #[test]
    fn sources_sinks_consistency_on_fixtures() {
        // Vertex-mode neighbor count equals flippable source/sink count.
        let f = fixtures::fig7();
        let caps = Caps::default();
        let o = &f.orientations["top"];
        let (sources, sinks) = sources_and_sinks(o);
        let flippable = sources
            .iter()
            .chain(sinks.iter())
            .filter(|v| *v != "T")
            .count();
        let neighbors = flip_neighbors(o, &FlipMode::Vertex, &caps).unwrap();
        assert_eq!(neighbors.len(), flippable);
    }
}
