//! Partition matroids, exchangeability graphs, and the adjacency test for
//! vertices of common base polytopes.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::alpha::{AlphaSpec, Matching};
use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation};

/// A matroid whose independent sets respect per-class capacities over a
/// partition of the ground set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionMatroid {
    pub ground: Vec<String>,
    pub classes: BTreeMap<String, String>,
    pub capacities: BTreeMap<String, u32>,
}

impl PartitionMatroid {
    pub fn new(
        ground: Vec<String>,
        classes: BTreeMap<String, String>,
        capacities: BTreeMap<String, u32>,
    ) -> Result<PartitionMatroid> {
        let m = PartitionMatroid {
            ground,
            classes,
            capacities,
        };
        for e in &m.ground {
            let class = m.class_of(e)?;
            if !m.capacities.contains_key(class) {
                return Err(Error::Parse(format!(
                    "class {class:?} of element {e:?} has no capacity"
                )));
            }
        }
        if m.capacities.values().any(|&c| c == 0) {
            return Err(Error::Parse("capacities must be positive".into()));
        }
        Ok(m)
    }

    pub fn class_of(&self, element: &str) -> Result<&str> {
        self.classes
            .get(element)
            .map(|s| s.as_str())
            .ok_or_else(|| Error::Parse(format!("element {element:?} has no class")))
    }

    /// A basis meets every capacity exactly.
    pub fn is_basis(&self, set: &BTreeSet<String>) -> Result<bool> {
        let mut counts: BTreeMap<&str, u32> = BTreeMap::new();
        for e in set {
            if !self.ground.contains(e) {
                return Err(Error::Invalid(format!("{e:?} is not a ground element")));
            }
            *counts.entry(self.class_of(e)?).or_default() += 1;
        }
        Ok(self
            .capacities
            .iter()
            .all(|(c, &cap)| counts.get(c.as_str()).copied().unwrap_or(0) == cap))
    }
}

pub fn parse_matroid(text: &[u8]) -> Result<PartitionMatroid> {
    let raw: PartitionMatroid =
        serde_json::from_slice(text).map_err(|e| Error::Parse(format!("matroid JSON: {e}")))?;
    PartitionMatroid::new(raw.ground, raw.classes, raw.capacities)
}

pub fn matroid_to_json(m: &PartitionMatroid) -> String {
    serde_json::to_string(m).expect("matroid serialization cannot fail")
}

/// Bipartite graph of valid single-element basis exchanges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartiteExchange {
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub edges: BTreeSet<(String, String)>,
}

/// Exchangeability graph of a partition matroid: for a basis, removing `i`
/// frees exactly its class, so `i` exchanges with `j` iff their classes
/// coincide.
pub fn exchangeability_graph(
    m: &PartitionMatroid,
    basis: &BTreeSet<String>,
    other: &BTreeSet<String>,
) -> Result<BipartiteExchange> {
    if !m.is_basis(basis)? {
        return Err(Error::Invalid("first set is not a basis".into()));
    }
    let left: Vec<String> = basis.difference(other).cloned().collect();
    let right: Vec<String> = other.difference(basis).cloned().collect();
    let mut edges = BTreeSet::new();
    for i in &left {
        for j in &right {
            if m.class_of(i)? == m.class_of(j)? {
                edges.insert((i.clone(), j.clone()));
            }
        }
    }
    let shortcut = BipartiteExchange { left, right, edges };
    debug_assert_eq!(
        shortcut,
        exchangeability_graph_definitional(m, basis, other)?
    );
    Ok(shortcut)
}

/// The definitional route: an edge wherever swapping the pair yields a
/// basis again. Kept separate as the oracle for the class shortcut.
pub fn exchangeability_graph_definitional(
    m: &PartitionMatroid,
    basis: &BTreeSet<String>,
    other: &BTreeSet<String>,
) -> Result<BipartiteExchange> {
    if !m.is_basis(basis)? {
        return Err(Error::Invalid("first set is not a basis".into()));
    }
    let left: Vec<String> = basis.difference(other).cloned().collect();
    let right: Vec<String> = other.difference(basis).cloned().collect();
    let mut edges = BTreeSet::new();
    for i in &left {
        for j in &right {
            let mut swapped = basis.clone();
            swapped.remove(i);
            swapped.insert(j.clone());
            if m.is_basis(&swapped)? {
                edges.insert((i.clone(), j.clone()));
            }
        }
    }
    Ok(BipartiteExchange { left, right, edges })
}

/// Uniqueness status of a perfect matching in an exchange graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingUniqueness {
    Unique(BTreeSet<(String, String)>),
    None,
    Multiple,
}

/// Finds a perfect matching by augmenting paths, then tests uniqueness by
/// looking for an alternating cycle on the matched-edge orientation.
pub fn unique_perfect_matching(h: &BipartiteExchange) -> MatchingUniqueness {
    if h.left.len() != h.right.len() {
        return MatchingUniqueness::None;
    }
    let nl = h.left.len();
    let nr = h.right.len();
    if nl == 0 {
        return MatchingUniqueness::Unique(BTreeSet::new());
    }
    let right_index: BTreeMap<&str, usize> = h
        .right
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let adj: Vec<Vec<usize>> = h
        .left
        .iter()
        .map(|l| {
            h.edges
                .iter()
                .filter(|(a, _)| a == l)
                .map(|(_, b)| right_index[b.as_str()])
                .collect()
        })
        .collect();
    let mut match_of_right: Vec<Option<usize>> = vec![None; nr];
    fn augment(
        l: usize,
        adj: &[Vec<usize>],
        match_of_right: &mut Vec<Option<usize>>,
        visited: &mut Vec<bool>,
    ) -> bool {
        for &r in &adj[l] {
            if visited[r] {
                continue;
            }
            visited[r] = true;
            let free = match match_of_right[r] {
                None => true,
                Some(l2) => augment(l2, adj, match_of_right, visited),
            };
            if free {
                match_of_right[r] = Some(l);
                return true;
            }
        }
        false
    }
    for l in 0..nl {
        let mut visited = vec![false; nr];
        if !augment(l, &adj, &mut match_of_right, &mut visited) {
            return MatchingUniqueness::None;
        }
    }
    // Alternating cycle test: matched edges right -> left, unmatched
    // left -> right; a directed cycle is an alternating cycle.
    let mut match_of_left: Vec<usize> = vec![usize::MAX; nl];
    for (r, ml) in match_of_right.iter().enumerate() {
        match_of_left[ml.expect("perfect")] = r;
    }
    // Iterative cycle detection over left vertices.
    let mut state = vec![0u8; nl]; // 0 unseen, 1 active, 2 done
    for start in 0..nl {
        if state[start] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        state[start] = 1;
        while let Some(&mut (l, ref mut i)) = stack.last_mut() {
            if *i < adj[l].len() {
                let r = adj[l][*i];
                *i += 1;
                if r == match_of_left[l] {
                    continue; // not a forward edge
                }
                let l2 = match_of_right[r].expect("perfect");
                match state[l2] {
                    0 => {
                        state[l2] = 1;
                        stack.push((l2, 0));
                    }
                    1 => return MatchingUniqueness::Multiple,
                    _ => {}
                }
            } else {
                state[l] = 2;
                stack.pop();
            }
        }
    }
    let matching = (0..nl)
        .map(|l| (h.left[l].clone(), h.right[match_of_left[l]].clone()))
        .collect();
    MatchingUniqueness::Unique(matching)
}

/// Adjacency report for two common bases.
#[derive(Debug, Clone)]
pub struct AdjacencyReport {
    pub adjacent: bool,
    pub p_plus: Option<BTreeSet<(String, String)>>,
    pub p_minus: Option<BTreeSet<(String, String)>>,
}

/// Two common bases are adjacent on the common base polytope iff both
/// exchangeability graphs have unique perfect matchings whose union is a
/// single cycle.
pub fn polytope_adjacent(
    a: &BTreeSet<String>,
    b: &BTreeSet<String>,
    m_plus: &PartitionMatroid,
    m_minus: &PartitionMatroid,
) -> Result<AdjacencyReport> {
    if a == b {
        return Err(Error::Invalid("bases must be distinct".into()));
    }
    for (name, set) in [("first", a), ("second", b)] {
        if !m_plus.is_basis(set)? || !m_minus.is_basis(set)? {
            return Err(Error::Invalid(format!("{name} set is not a common basis")));
        }
    }
    let g_ab = exchangeability_graph(m_plus, a, b)?;
    let p_plus = match unique_perfect_matching(&g_ab) {
        MatchingUniqueness::Unique(p) => p,
        _ => {
            return Ok(AdjacencyReport {
                adjacent: false,
                p_plus: None,
                p_minus: None,
            })
        }
    };
    let g_ba = exchangeability_graph(m_minus, b, a)?;
    let p_minus = match unique_perfect_matching(&g_ba) {
        MatchingUniqueness::Unique(p) => p,
        _ => {
            return Ok(AdjacencyReport {
                adjacent: false,
                p_plus: Some(p_plus),
                p_minus: None,
            })
        }
    };
    let single = union_is_single_cycle(&p_plus, &p_minus);
    Ok(AdjacencyReport {
        adjacent: single,
        p_plus: Some(p_plus),
        p_minus: Some(p_minus),
    })
}

/// The union multigraph over the symmetric difference is 2-regular by
/// construction; it is a single cycle iff it is connected.
fn union_is_single_cycle(
    p_plus: &BTreeSet<(String, String)>,
    p_minus: &BTreeSet<(String, String)>,
) -> bool {
    let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (a, b) in p_plus.iter().chain(p_minus.iter()) {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let Some((&start, _)) = adj.iter().next() else {
        return false;
    };
    let mut seen: BTreeSet<&str> = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == adj.len()
}

/// The two vertex-side partition matroids whose common bases are the
/// perfect matchings of a bipartite graph. Ground elements are edge ids as
/// decimal strings.
pub fn matching_matroids(m: &Matching) -> Result<(PartitionMatroid, PartitionMatroid)> {
    let g = &m.graph;
    let side1 = m.side_mask()?;
    let ground: Vec<String> = (0..g.edge_count()).map(|e| e.to_string()).collect();
    let mut classes_plus = BTreeMap::new();
    let mut classes_minus = BTreeMap::new();
    for e in 0..g.edge_count() {
        let (a, b) = g.ends(e);
        let (v1_end, v2_end) = if side1[a] { (a, b) } else { (b, a) };
        classes_plus.insert(e.to_string(), g.vertex_name(v1_end).to_string());
        classes_minus.insert(e.to_string(), g.vertex_name(v2_end).to_string());
    }
    let caps_plus = m.v1.iter().map(|v| (v.clone(), 1)).collect();
    let caps_minus = m.v2.iter().map(|v| (v.clone(), 1)).collect();
    Ok((
        PartitionMatroid::new(ground.clone(), classes_plus, caps_plus)?,
        PartitionMatroid::new(ground, classes_minus, caps_minus)?,
    ))
}

/// The matching as a basis: its edge ids as strings.
pub fn matching_base(m: &Matching) -> BTreeSet<String> {
    m.matched.iter().map(|e| e.to_string()).collect()
}

/// Partition matroids over doubled arcs whose common bases are the
/// orientations with the given outdegrees. Arc `e` directed out of `v` is
/// the element `"e@v"`.
pub fn alpha_matroids(g: &Graph, a: &AlphaSpec) -> Result<(PartitionMatroid, PartitionMatroid)> {
    let mut ground = Vec::new();
    let mut classes_edge = BTreeMap::new();
    let mut classes_out = BTreeMap::new();
    for e in 0..g.edge_count() {
        let (x, y) = g.ends(e);
        for v in [x, y] {
            let name = format!("{e}@{}", g.vertex_name(v));
            ground.push(name.clone());
            classes_edge.insert(name.clone(), format!("edge{e}"));
            classes_out.insert(name, g.vertex_name(v).to_string());
        }
    }
    let caps_edge = (0..g.edge_count())
        .map(|e| (format!("edge{e}"), 1))
        .collect();
    let mut caps_out = BTreeMap::new();
    for v in g.vertex_names() {
        let alpha = a.get(v)?;
        if alpha > 0 {
            caps_out.insert(v.clone(), alpha);
        }
    }
    // Arcs out of a zero-outdegree vertex can never be chosen; drop them
    // from the ground set rather than carry zero-capacity classes.
    let mut filtered_ground = Vec::new();
    let mut filtered_edge = BTreeMap::new();
    let mut filtered_out = BTreeMap::new();
    for name in ground {
        let out_class = &classes_out[&name];
        if caps_out.contains_key(out_class) {
            filtered_ground.push(name.clone());
            filtered_edge.insert(name.clone(), classes_edge[&name].clone());
            filtered_out.insert(name.clone(), out_class.clone());
        }
    }
    Ok((
        PartitionMatroid::new(filtered_ground.clone(), filtered_edge, caps_edge)?,
        PartitionMatroid::new(filtered_ground, filtered_out, caps_out)?,
    ))
}

/// An orientation as a common basis of the doubled-arc matroids.
pub fn orientation_base(o: &Orientation) -> BTreeSet<String> {
    let g = o.graph();
    (0..g.edge_count())
        .map(|e| format!("{e}@{}", g.vertex_name(o.tail(e))))
        .collect()
}
