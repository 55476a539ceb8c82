//! Orientations with prescribed forward counts on cycles, represented by a
//! reference orientation: two orientations are in the same class iff their
//! difference is balanced. Vertex and cut flips, the distributive lattice,
//! the flip-count embedding, and the digraph realizing a distributive
//! lattice.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::alpha::flip_cycle;
use crate::error::{Error, Result};
use crate::graph::{directed_cut, is_balanced, EdgeSet, Graph, Orientation};
use crate::poset::{join_irreducibles, FiniteLattice};

/// Flip counts per vertex relative to the lattice minimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZVector {
    pub counts: BTreeMap<String, u32>,
}

impl ZVector {
    pub fn get(&self, vertex: &str) -> u32 {
        self.counts.get(vertex).copied().unwrap_or(0)
    }

    pub fn l1_distance(&self, other: &ZVector) -> u64 {
        let keys: BTreeSet<&String> = self.counts.keys().chain(other.counts.keys()).collect();
        keys.into_iter()
            .map(|k| (self.get(k) as i64 - other.get(k) as i64).unsigned_abs())
            .sum()
    }

    pub fn componentwise_min(&self, other: &ZVector) -> ZVector {
        self.componentwise(other, u32::min)
    }

    pub fn componentwise_max(&self, other: &ZVector) -> ZVector {
        self.componentwise(other, u32::max)
    }

    fn componentwise(&self, other: &ZVector, f: impl Fn(u32, u32) -> u32) -> ZVector {
        let keys: BTreeSet<String> = self
            .counts
            .keys()
            .chain(other.counts.keys())
            .cloned()
            .collect();
        ZVector {
            counts: keys
                .into_iter()
                .map(|k| {
                    let v = f(self.get(&k), other.get(&k));
                    (k, v)
                })
                .collect(),
        }
    }
}

/// Direction of a vertex flip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlipDirection {
    SourceToSink,
    SinkToSource,
}

/// One step of a replayable flip sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FlipStep {
    Cycle {
        edges: EdgeSet,
    },
    Vertex {
        vertex: String,
        direction: FlipDirection,
    },
    Cut {
        interior: BTreeSet<String>,
    },
}

/// An ordered, replayable list of flips.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipSequence {
    pub steps: Vec<FlipStep>,
}

impl FlipSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

pub fn flip_sequence_to_json(f: &FlipSequence) -> String {
    serde_json::to_string(f).expect("flip sequence serialization cannot fail")
}

pub fn parse_flip_sequence(text: &[u8]) -> Result<FlipSequence> {
    serde_json::from_slice(text).map_err(|e| Error::Parse(format!("flip sequence JSON: {e}")))
}

/// True iff the two orientations differ by a balanced edge set, i.e. they
/// realize the same forward count on every cycle.
pub fn same_c(x: &Orientation, y: &Orientation) -> Result<bool> {
    let diff = x.differing_edges(y)?;
    Ok(is_balanced(x, &diff))
}

/// Reverses every edge at a source or sink distinct from `top`.
pub fn vertex_flip(o: &Orientation, vertex: &str) -> Result<Orientation> {
    let g = o.graph();
    let v = g.vertex_index(vertex)?;
    if g.top_index() == Some(v) {
        return Err(Error::Invalid(format!("{vertex:?} is the fixed vertex")));
    }
    if !o.is_source(v) && !o.is_sink(v) {
        return Err(Error::Invalid(format!(
            "{vertex:?} is neither a source nor a sink"
        )));
    }
    let mut next = o.clone();
    next.flip_vertex_unchecked(v);
    Ok(next)
}

/// Reverses all edges of the directed cut induced by `u`.
pub fn cut_flip(o: &Orientation, u: &BTreeSet<String>) -> Result<Orientation> {
    let cut = directed_cut(o, u)?;
    Ok(o.reverse_edges(&cut.edges))
}

/// Result of contracting the rigid (strongly connected) parts of a pair.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub x: Orientation,
    pub y: Orientation,
    /// Original vertex name -> contracted block name.
    pub vertex_map: BTreeMap<String, String>,
}

/// Contracts every strongly connected component of `x` to a single vertex
/// named after its smallest member. Both orientations must agree inside
/// components; the results are acyclic.
pub fn contract_rigid(x: &Orientation, y: &Orientation) -> Result<Contraction> {
    let g = x.graph();
    if !same_c(x, y)? {
        return Err(Error::Invalid(
            "orientations are not in a common flip class".into(),
        ));
    }
    let comp = x.strongly_connected_components();
    for e in 0..g.edge_count() {
        let (a, b) = g.ends(e);
        if comp[a] == comp[b] && x.tail(e) != y.tail(e) {
            return Err(Error::Anomaly(format!(
                "orientations disagree on edge {e} inside a rigid component"
            )));
        }
    }
    // Name each block after its smallest member; list blocks by first
    // appearance in vertex order.
    let n = g.vertex_count();
    let mut block_name: BTreeMap<usize, String> = BTreeMap::new();
    for v in 0..n {
        let name = g.vertex_name(v).to_string();
        block_name
            .entry(comp[v])
            .and_modify(|cur| {
                if name < *cur {
                    *cur = name.clone();
                }
            })
            .or_insert(name);
    }
    let mut block_order: Vec<usize> = Vec::new();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for v in 0..n {
        if seen.insert(comp[v]) {
            block_order.push(comp[v]);
        }
    }
    let new_vertices: Vec<String> = block_order.iter().map(|b| block_name[b].clone()).collect();
    let new_index: BTreeMap<usize, usize> = block_order
        .iter()
        .enumerate()
        .map(|(i, &b)| (b, i))
        .collect();
    let mut new_edges = Vec::new();
    let mut x_tails = Vec::new();
    let mut y_tails = Vec::new();
    for e in 0..g.edge_count() {
        let (a, b) = g.ends(e);
        if comp[a] == comp[b] {
            continue;
        }
        new_edges.push((new_vertices[new_index[&comp[a]]].clone(), new_vertices[new_index[&comp[b]]].clone()));
        x_tails.push(new_vertices[new_index[&comp[x.tail(e)]]].clone());
        y_tails.push(new_vertices[new_index[&comp[y.tail(e)]]].clone());
    }
    let top = g.top_index().map(|t| new_vertices[new_index[&comp[t]]].clone());
    let new_graph = Arc::new(Graph::new(new_vertices.clone(), new_edges, top)?);
    let x_tail_refs: Vec<&str> = x_tails.iter().map(|s| s.as_str()).collect();
    let y_tail_refs: Vec<&str> = y_tails.iter().map(|s| s.as_str()).collect();
    let cx = Orientation::from_tail_names(Arc::clone(&new_graph), &x_tail_refs)?;
    let cy = Orientation::from_tail_names(new_graph, &y_tail_refs)?;
    debug_assert!(cx.is_acyclic());
    let vertex_map = (0..n)
        .map(|v| {
            (
                g.vertex_name(v).to_string(),
                new_vertices[new_index[&comp[v]]].clone(),
            )
        })
        .collect();
    Ok(Contraction {
        x: cx,
        y: cy,
        vertex_map,
    })
}

/// Checks the standing assumptions for lattice operations: a top vertex, a
/// connected graph, and an acyclic orientation.
pub(crate) fn check_lattice_instance(o: &Orientation) -> Result<()> {
    let g = o.graph();
    g.require_top()?;
    if !g.is_connected() {
        return Err(Error::Invalid("graph is not connected".into()));
    }
    if !o.is_acyclic() {
        return Err(Error::Invalid(
            "orientation has a directed cycle; contract rigid components first".into(),
        ));
    }
    Ok(())
}

/// Sinks distinct from top, kept sorted by vertex name.
struct SinkPool {
    by_rank: BTreeSet<(usize, usize)>,
    rank: Vec<usize>,
    top: usize,
}

impl SinkPool {
    fn new(o: &Orientation) -> SinkPool {
        let g = o.graph();
        let mut order: Vec<usize> = (0..g.vertex_count()).collect();
        order.sort_by(|&a, &b| g.vertex_name(a).cmp(g.vertex_name(b)));
        let mut rank = vec![0; g.vertex_count()];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        let top = g.top_index().expect("checked");
        let mut pool = SinkPool {
            by_rank: BTreeSet::new(),
            rank,
            top,
        };
        for v in 0..g.vertex_count() {
            pool.refresh(o, v);
        }
        pool
    }

    fn refresh(&mut self, o: &Orientation, v: usize) {
        if v != self.top && o.is_sink(v) {
            self.by_rank.insert((self.rank[v], v));
        } else {
            self.by_rank.remove(&(self.rank[v], v));
        }
    }

    fn smallest(&self) -> Option<usize> {
        self.by_rank.iter().next().map(|&(_, v)| v)
    }
}

/// Descends by sink flips (lexicographically smallest first) to the lattice
/// minimum, returning it together with per-vertex flip counts.
pub(crate) fn descend_counting(x: &Orientation) -> Result<(Orientation, Vec<u32>)> {
    check_lattice_instance(x)?;
    let g = Arc::clone(x.graph());
    let top = g.top_index().expect("checked");
    let bound: u64 = g
        .distances_from(top)
        .iter()
        .map(|d| d.expect("connected") as u64)
        .sum();
    let mut cur = x.clone();
    let mut counts = vec![0u32; g.vertex_count()];
    let mut pool = SinkPool::new(&cur);
    let mut flips: u64 = 0;
    while let Some(v) = pool.smallest() {
        cur.flip_vertex_unchecked(v);
        counts[v] += 1;
        flips += 1;
        if flips > bound {
            return Err(Error::Anomaly(
                "sink descent exceeded the height bound".into(),
            ));
        }
        pool.refresh(&cur, v);
        for &e in g.edges_at(v) {
            let w = g.other_end(e, v);
            pool.refresh(&cur, w);
        }
    }
    Ok((cur, counts))
}

/// The unique minimal element of the lattice containing `x`.
pub fn lattice_minimum(x: &Orientation) -> Result<Orientation> {
    Ok(descend_counting(x)?.0)
}

/// The number of times each vertex is flipped on any upward path from the
/// lattice minimum to `x`.
pub fn z_embedding(x: &Orientation) -> Result<ZVector> {
    let g = x.graph();
    let top = g.require_top()?;
    let (_, counts) = descend_counting(x)?;
    let counts = (0..g.vertex_count())
        .filter(|&v| v != top)
        .map(|v| (g.vertex_name(v).to_string(), counts[v]))
        .collect();
    Ok(ZVector { counts })
}

/// Breadth-first materialization of the lattice from its minimum by source
/// flips. Returns elements in a deterministic order plus cover pairs
/// (lower index, upper index).
pub fn enumerate_lattice(
    x: &Orientation,
    cap: usize,
) -> Result<(Vec<Orientation>, Vec<(usize, usize)>)> {
    check_lattice_instance(x)?;
    let g = Arc::clone(x.graph());
    let top = g.top_index().expect("checked");
    let min = lattice_minimum(x)?;
    let mut elements = vec![min.clone()];
    let mut by_key: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    by_key.insert(min.bit_key(), 0);
    let mut covers = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    let vertex_order = g.vertices_by_name();
    while let Some(i) = queue.pop_front() {
        let cur = elements[i].clone();
        for &v in &vertex_order {
            if v == top || !cur.is_source(v) {
                continue;
            }
            let mut next = cur.clone();
            next.flip_vertex_unchecked(v);
            let key = next.bit_key();
            let j = match by_key.get(&key) {
                Some(&j) => j,
                None => {
                    let j = elements.len();
                    if j >= cap {
                        return Err(Error::CapExceeded(format!(
                            "lattice has more than {cap} elements"
                        )));
                    }
                    elements.push(next);
                    by_key.insert(key, j);
                    queue.push_back(j);
                    j
                }
            };
            covers.push((i, j));
        }
    }
    covers.sort_unstable();
    covers.dedup();
    Ok((elements, covers))
}

/// The digraph whose flip lattice realizes a given distributive lattice:
/// the upward-oriented cover relation of the join-irreducibles plus one arc
/// to a fresh top vertex from every source and every sink.
pub fn birkhoff_digraph(l: &FiniteLattice) -> Result<Orientation> {
    if !l.is_distributive() {
        return Err(Error::Invalid("lattice is not distributive".into()));
    }
    let ji = join_irreducibles(l)?;
    let mut top = "T".to_string();
    while ji.elements().contains(&top) {
        top.push('_');
    }
    let mut vertices: Vec<String> = ji.elements().to_vec();
    vertices.push(top.clone());
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut tails: Vec<String> = Vec::new();
    for &(lo, hi) in ji.covers() {
        edges.push((ji.elements()[lo].clone(), ji.elements()[hi].clone()));
        tails.push(ji.elements()[lo].clone());
    }
    let mut endpoints: BTreeSet<usize> = BTreeSet::new();
    endpoints.extend(ji.minimal_elements());
    endpoints.extend(ji.maximal_elements());
    for v in endpoints {
        edges.push((ji.elements()[v].clone(), top.clone()));
        tails.push(ji.elements()[v].clone());
    }
    let graph = Arc::new(Graph::new(vertices, edges, Some(top))?);
    let tail_refs: Vec<&str> = tails.iter().map(|s| s.as_str()).collect();
    Orientation::from_tail_names(graph, &tail_refs)
}

/// Applies one flip step, validating its legality.
pub fn apply_step(o: &Orientation, step: &FlipStep) -> Result<Orientation> {
    match step {
        FlipStep::Cycle { edges } => flip_cycle(o, edges),
        FlipStep::Vertex { vertex, direction } => {
            let g = o.graph();
            let v = g.vertex_index(vertex)?;
            let legal = match direction {
                FlipDirection::SourceToSink => o.is_source(v),
                FlipDirection::SinkToSource => o.is_sink(v),
            };
            if !legal {
                return Err(Error::Invalid(format!(
                    "vertex {vertex:?} cannot be flipped {direction:?}"
                )));
            }
            vertex_flip(o, vertex)
        }
        FlipStep::Cut { interior } => {
            let g = o.graph();
            let mut inside = vec![false; g.vertex_count()];
            for name in interior {
                inside[g.vertex_index(name)?] = true;
            }
            let mut crossing = EdgeSet::new();
            let mut leaving = 0usize;
            let mut entering = 0usize;
            for e in 0..g.edge_count() {
                let (a, b) = g.ends(e);
                if inside[a] == inside[b] {
                    continue;
                }
                crossing.insert(e);
                if inside[o.tail(e)] {
                    leaving += 1;
                } else {
                    entering += 1;
                }
            }
            if crossing.is_empty() {
                return Err(Error::Invalid("cut step crosses no edges".into()));
            }
            if leaving != 0 && entering != 0 {
                return Err(Error::Invalid(
                    "cut step interior is not a directed cut".into(),
                ));
            }
            Ok(o.reverse_edges(&crossing))
        }
    }
}

/// Replays a flip sequence, validating each step.
pub fn replay(x: &Orientation, seq: &FlipSequence) -> Result<Orientation> {
    let mut cur = x.clone();
    for (i, step) in seq.steps.iter().enumerate() {
        cur = apply_step(&cur, step)
            .map_err(|e| Error::Invalid(format!("step {i} is illegal: {e}")))?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::poset::{downset_lattice, FinitePoset};

    fn fig7_element(flips: &[&str]) -> Orientation {
        let f = fixtures::fig7();
        let mut cur = f.orientations["bottom"].clone();
        for v in flips {
            cur = vertex_flip(&cur, v).unwrap();
        }
        cur
    }

    #[test]
    fn fig7_bottom_and_top_share_a_class() {
        let f = fixtures::fig7();
        assert!(same_c(&f.orientations["bottom"], &f.orientations["top"]).unwrap());
        assert!(same_c(&f.orientations["bottom"], &f.orientations["bottom"]).unwrap());
    }

    #[test]
    fn single_reversed_edge_leaves_the_class() {
        let f = fixtures::fig7();
        let bottom = &f.orientations["bottom"];
        let other = bottom.reverse_edges(&[4].into_iter().collect()); // e->d alone
        assert!(!same_c(bottom, &other).unwrap());
    }

    #[test]
    fn vertex_flip_at_source() {
        let f = fixtures::fig7();
        let flipped = vertex_flip(&f.orientations["bottom"], "e").unwrap();
        let z = z_embedding(&flipped).unwrap();
        assert_eq!(z.get("e"), 1);
        assert_eq!(z.get("b") + z.get("d") + z.get("f"), 0);
    }

    #[test]
    fn vertex_flip_rejects_top_and_interior_vertices() {
        let f = fixtures::fig7();
        let bottom = &f.orientations["bottom"];
        assert!(vertex_flip(bottom, "T").is_err());
        assert!(vertex_flip(bottom, "d").is_err());
    }

    #[test]
    fn double_vertex_flip_is_identity() {
        let f = fixtures::fig7();
        let bottom = &f.orientations["bottom"];
        let once = vertex_flip(bottom, "e").unwrap();
        let twice = vertex_flip(&once, "e").unwrap();
        assert_eq!(&twice, bottom);
    }

    #[test]
    fn cut_flip_examples() {
        let f = fixtures::fig7();
        let bottom = &f.orientations["bottom"];
        // Flip at the singleton {e}, then {d} is flippable.
        let z1 = cut_flip(bottom, &BTreeSet::from(["e".to_string()])).unwrap();
        let z2 = cut_flip(&z1, &BTreeSet::from(["d".to_string()])).unwrap();
        let z = z_embedding(&z2).unwrap();
        assert_eq!(
            (z.get("b"), z.get("d"), z.get("e"), z.get("f")),
            (0, 1, 1, 0)
        );
        // The big interior reaches the top element in one cut flip.
        let interior: BTreeSet<String> =
            ["b", "d", "e", "f"].iter().map(|s| s.to_string()).collect();
        let top = cut_flip(bottom, &interior).unwrap();
        assert_eq!(&top, &f.orientations["top"]);
        assert!(cut_flip(bottom, &BTreeSet::from(["d".to_string()])).is_err());
    }

    #[test]
    fn same_c_preserved_by_flips() {
        let f = fixtures::fig7();
        let bottom = &f.orientations["bottom"];
        let a = vertex_flip(bottom, "e").unwrap();
        assert!(same_c(bottom, &a).unwrap());
        let b = cut_flip(bottom, &BTreeSet::from(["e".to_string()])).unwrap();
        assert!(same_c(bottom, &b).unwrap());
    }

    #[test]
    fn contract_rigid_identity_on_acyclic() {
        let f = fixtures::fig7();
        let bottom = &f.orientations["bottom"];
        let top = &f.orientations["top"];
        let c = contract_rigid(bottom, top).unwrap();
        assert_eq!(c.x.graph().vertex_count(), 5);
        assert_eq!(c.x.graph().edge_count(), 9);
        assert!(c.vertex_map.iter().all(|(k, v)| k == v));
    }

    #[test]
    fn contract_rigid_collapses_triangle() {
        let g = Arc::new(
            Graph::new(
                vec!["a".into(), "b".into(), "c".into(), "d".into()],
                vec![
                    ("a".into(), "b".into()),
                    ("b".into(), "c".into()),
                    ("c".into(), "a".into()),
                    ("c".into(), "d".into()),
                ],
                Some("d".into()),
            )
            .unwrap(),
        );
        let x = Orientation::from_tail_names(g, &["a", "b", "c", "c"]).unwrap();
        let c = contract_rigid(&x, &x).unwrap();
        assert_eq!(c.x.graph().vertex_count(), 2);
        assert_eq!(c.x.graph().edge_count(), 1);
        assert_eq!(c.vertex_map["b"], "a");
        assert!(c.x.is_acyclic());
    }

    #[test]
    fn lattice_minimum_of_fig7() {
        let f = fixtures::fig7();
        let bottom = &f.orientations["bottom"];
        assert_eq!(&lattice_minimum(&f.orientations["top"]).unwrap(), bottom);
        assert_eq!(&lattice_minimum(bottom).unwrap(), bottom);
        let mid = fig7_element(&["e", "d"]);
        assert_eq!(&lattice_minimum(&mid).unwrap(), bottom);
    }

    #[test]
    fn z_embedding_of_fig7_elements() {
        let f = fixtures::fig7();
        let z_top = z_embedding(&f.orientations["top"]).unwrap();
        assert_eq!(
            (z_top.get("b"), z_top.get("d"), z_top.get("e"), z_top.get("f")),
            (1, 1, 1, 1)
        );
        let z_bottom = z_embedding(&f.orientations["bottom"]).unwrap();
        assert_eq!(z_bottom.counts.values().sum::<u32>(), 0);
        let z_mid = z_embedding(&fig7_element(&["e", "d"])).unwrap();
        assert_eq!(
            (z_mid.get("b"), z_mid.get("d"), z_mid.get("e"), z_mid.get("f")),
            (0, 1, 1, 0)
        );
    }

    #[test]
    fn z_counts_riders_with_no_differing_edges() {
        // Path T - a - b: reaching the target requires flipping b although
        // none of b's edges differ between the endpoints.
        let g = Arc::new(
            Graph::new(
                vec!["T".into(), "a".into(), "b".into()],
                vec![("a".into(), "T".into()), ("a".into(), "b".into())],
                Some("T".into()),
            )
            .unwrap(),
        );
        let x = Orientation::from_tail_names(Arc::clone(&g), &["a", "b"]).unwrap();
        let y = Orientation::from_tail_names(g, &["T", "b"]).unwrap();
        assert!(same_c(&x, &y).unwrap());
        let zx = z_embedding(&x).unwrap();
        let zy = z_embedding(&y).unwrap();
        assert_eq!((zx.get("a"), zx.get("b")), (0, 0));
        assert_eq!((zy.get("a"), zy.get("b")), (1, 1));
    }

    #[test]
    fn fig7_lattice_has_six_elements_and_six_covers() {
        let f = fixtures::fig7();
        let (elements, covers) = enumerate_lattice(&f.orientations["bottom"], 100).unwrap();
        assert_eq!(elements.len(), 6);
        assert_eq!(covers.len(), 6);
    }

    #[test]
    fn lattice_cap_is_enforced() {
        let f = fixtures::fig7();
        assert!(matches!(
            enumerate_lattice(&f.orientations["bottom"], 3),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn single_vertex_lattice() {
        let g = Arc::new(Graph::new(vec!["T".into()], vec![], Some("T".into())).unwrap());
        let o = Orientation::new(g, vec![]).unwrap();
        let (elements, covers) = enumerate_lattice(&o, 10).unwrap();
        assert_eq!(elements.len(), 1);
        assert!(covers.is_empty());
    }

    #[test]
    fn z_is_lipschitz_across_edges() {
        let f = fixtures::fig7();
        let (elements, _) = enumerate_lattice(&f.orientations["bottom"], 100).unwrap();
        let g = &f.graph;
        for o in &elements {
            let z = z_embedding(o).unwrap();
            for e in 0..g.edge_count() {
                let (a, b) = g.ends(e);
                let za = z.get(g.vertex_name(a)) as i64;
                let zb = z.get(g.vertex_name(b)) as i64;
                assert!((za - zb).abs() <= 1);
            }
            let dist = g.distances_from(g.top_index().unwrap());
            for v in 0..g.vertex_count() {
                assert!(z.get(g.vertex_name(v)) as usize <= dist[v].unwrap());
            }
        }
    }

    #[test]
    fn birkhoff_digraph_shapes() {
        let diamond = downset_lattice(
            &FinitePoset::new(vec!["p".into(), "q".into()], vec![]).unwrap(),
            100,
        )
        .unwrap();
        let d = birkhoff_digraph(&diamond).unwrap();
        assert_eq!(d.graph().vertex_count(), 3);
        assert_eq!(d.graph().edge_count(), 2);

        let chain3 = downset_lattice(
            &FinitePoset::new(vec!["p".into(), "q".into()], vec![("p".into(), "q".into())])
                .unwrap(),
            100,
        )
        .unwrap();
        let d = birkhoff_digraph(&chain3).unwrap();
        assert_eq!(d.graph().vertex_count(), 3);
        assert_eq!(d.graph().edge_count(), 3);

        let singleton = downset_lattice(&FinitePoset::new(vec![], vec![]).unwrap(), 100).unwrap();
        let d = birkhoff_digraph(&singleton).unwrap();
        assert_eq!(d.graph().vertex_count(), 1);
        assert_eq!(d.graph().edge_count(), 0);
    }

    #[test]
    fn replay_validates_steps() {
        let f = fixtures::fig7();
        let bottom = &f.orientations["bottom"];
        let seq = FlipSequence {
            steps: vec![FlipStep::Vertex {
                vertex: "d".into(),
                direction: FlipDirection::SourceToSink,
            }],
        };
        assert!(replay(bottom, &seq).is_err());
    }
}
