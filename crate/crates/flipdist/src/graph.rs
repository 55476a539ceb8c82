//! Graphs, orientations, edge sets, and directed cuts.
//!
//! Vertices are string identifiers ordered lexicographically for every
//! deterministic tie-break in the crate. Edges carry ids `0..m-1` and may be
//! parallel; self-loops are rejected. An optional distinguished vertex `top`
//! anchors cut sides and is never flipped.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected multigraph with named vertices and numbered edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    ends: Vec<(usize, usize)>,
    top: Option<usize>,
    index: BTreeMap<String, usize>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from vertex names and edge end-pairs (edge ids run in
    /// list order).
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(String, String)>,
        top: Option<String>,
    ) -> Result<Graph> {
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::Parse(format!("duplicate vertex {v:?}")));
            }
        }
        let mut ends = Vec::with_capacity(edges.len());
        for (id, (a, b)) in edges.iter().enumerate() {
            let ia = *index
                .get(a)
                .ok_or_else(|| Error::Parse(format!("edge {id} references unknown vertex {a:?}")))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| Error::Parse(format!("edge {id} references unknown vertex {b:?}")))?;
            if ia == ib {
                return Err(Error::Parse(format!("edge {id} is a self-loop at {a:?}")));
            }
            ends.push((ia, ib));
        }
        let top = match top {
            None => None,
            Some(t) => Some(
                *index
                    .get(&t)
                    .ok_or_else(|| Error::Parse(format!("top references unknown vertex {t:?}")))?,
            ),
        };
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (e, &(a, b)) in ends.iter().enumerate() {
            adjacency[a].push(e);
            adjacency[b].push(e);
        }
        Ok(Graph {
            vertices,
            ends,
            top,
            index,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::Invalid(format!("unknown vertex {name:?}")))
    }

    pub fn top_index(&self) -> Option<usize> {
        self.top
    }

    pub fn top_name(&self) -> Option<&str> {
        self.top.map(|t| self.vertices[t].as_str())
    }

    pub fn require_top(&self) -> Result<usize> {
        self.top
            .ok_or_else(|| Error::Invalid("graph has no top vertex".into()))
    }

    /// End pair of an edge, in the order given at construction.
    pub fn ends(&self, e: usize) -> (usize, usize) {
        self.ends[e]
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.ends[e];
        if v == a {
            b
        } else {
            a
        }
    }

    /// Edge ids incident to `v`.
    pub fn edges_at(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Vertex order used for deterministic tie-breaks: lexicographic by name.
    pub fn vertices_by_name(&self) -> Vec<usize> {
        self.index.values().copied().collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let reach = self.reachable(0, &EdgeSet::default(), true);
        reach.iter().all(|&r| r)
    }

    /// Vertices reachable from `start` in the underlying graph, optionally
    /// treating `removed` as deleted. `removed_is_excluded` selects whether
    /// the set is removed (true) or is the only allowed set (false).
    fn reachable(&self, start: usize, edges: &EdgeSet, removed_is_excluded: bool) -> Vec<bool> {
        let mut seen = vec![false; self.vertices.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adjacency[v] {
                if edges.contains(e) == removed_is_excluded {
                    continue;
                }
                let w = self.other_end(e, v);
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Unweighted distances from `start`; unreachable vertices get `None`.
    pub fn distances_from(&self, start: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.vertices.len()];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adjacency[v] {
                let w = self.other_end(e, v);
                if dist[w].is_none() {
                    dist[w] = Some(dist[v].unwrap() + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// A sorted set of edge ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(BTreeSet<usize>);

impl EdgeSet {
    pub fn new() -> EdgeSet {
        EdgeSet::default()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.contains(&e)
    }

    pub fn insert(&mut self, e: usize) -> bool {
        self.0.insert(e)
    }

    pub fn remove(&mut self, e: usize) -> bool {
        self.0.remove(&e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union_with(&mut self, other: &EdgeSet) {
        self.0.extend(other.iter());
    }
}

impl FromIterator<usize> for EdgeSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        EdgeSet(iter.into_iter().collect())
    }
}

/// An orientation of a graph: one tail per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    graph: Arc<Graph>,
    tails: Vec<usize>,
}

impl Orientation {
    pub fn new(graph: Arc<Graph>, tails: Vec<usize>) -> Result<Orientation> {
        if tails.len() != graph.edge_count() {
            return Err(Error::Parse(format!(
                "expected {} tails, got {}",
                graph.edge_count(),
                tails.len()
            )));
        }
        for (e, &t) in tails.iter().enumerate() {
            let (a, b) = graph.ends(e);
            if t != a && t != b {
                return Err(Error::Parse(format!(
                    "tail of edge {e} is not one of its ends"
                )));
            }
        }
        Ok(Orientation { graph, tails })
    }

    /// Builds an orientation from tail vertex names indexed by edge id.
    pub fn from_tail_names(graph: Arc<Graph>, tails: &[&str]) -> Result<Orientation> {
        let ids = tails
            .iter()
            .map(|t| graph.vertex_index(t))
            .collect::<Result<Vec<_>>>()?;
        Orientation::new(graph, ids)
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn tail(&self, e: usize) -> usize {
        self.tails[e]
    }

    pub fn head(&self, e: usize) -> usize {
        self.graph.other_end(e, self.tails[e])
    }

    pub fn tail_names(&self) -> Vec<String> {
        self.tails
            .iter()
            .map(|&t| self.graph.vertex_name(t).to_string())
            .collect()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.graph
            .edges_at(v)
            .iter()
            .filter(|&&e| self.tails[e] == v)
            .count()
    }

    /// All incident edges leave `v`. Isolated vertices count as sources.
    pub fn is_source(&self, v: usize) -> bool {
        self.graph.edges_at(v).iter().all(|&e| self.tails[e] == v)
    }

    /// All incident edges enter `v`. Isolated vertices count as sinks.
    pub fn is_sink(&self, v: usize) -> bool {
        self.graph.edges_at(v).iter().all(|&e| self.tails[e] != v)
    }

    /// Returns a copy with the given edges reversed.
    pub fn reverse_edges(&self, edges: &EdgeSet) -> Orientation {
        let mut tails = self.tails.clone();
        for e in edges.iter() {
            tails[e] = self.graph.other_end(e, tails[e]);
        }
        Orientation {
            graph: Arc::clone(&self.graph),
            tails,
        }
    }

    pub fn reverse_all(&self) -> Orientation {
        let all: EdgeSet = (0..self.graph.edge_count()).collect();
        self.reverse_edges(&all)
    }

    /// Reverses every edge incident to `v` in place.
    pub(crate) fn flip_vertex_unchecked(&mut self, v: usize) {
        let g = Arc::clone(&self.graph);
        for &e in g.edges_at(v) {
            self.tails[e] = g.other_end(e, self.tails[e]);
        }
    }

    /// Edge ids on which two orientations of the same graph disagree.
    pub fn differing_edges(&self, other: &Orientation) -> Result<EdgeSet> {
        if self.graph.as_ref() != other.graph.as_ref() {
            return Err(Error::Invalid(
                "orientations live on different graphs".into(),
            ));
        }
        Ok((0..self.tails.len())
            .filter(|&e| self.tails[e] != other.tails[e])
            .collect())
    }

    /// Compact canonical key (one bit per edge) for state de-duplication.
    pub fn bit_key(&self) -> Vec<u8> {
        let mut key = vec![0u8; (self.tails.len() + 7) / 8];
        for (e, &t) in self.tails.iter().enumerate() {
            if t != self.graph.ends(e).0 {
                key[e / 8] |= 1 << (e % 8);
            }
        }
        key
    }

    /// True if the digraph has no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        let n = self.graph.vertex_count();
        let mut indeg = vec![0usize; n];
        for e in 0..self.tails.len() {
            indeg[self.head(e)] += 1;
        }
        let mut queue: VecDeque<usize> =
            (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for &e in self.graph.edges_at(v) {
                if self.tails[e] == v {
                    let h = self.head(e);
                    indeg[h] -= 1;
                    if indeg[h] == 0 {
                        queue.push_back(h);
                    }
                }
            }
        }
        seen == n
    }

    /// Strongly connected components, as a component id per vertex.
    pub fn strongly_connected_components(&self) -> Vec<usize> {
        // Iterative Tarjan.
        let n = self.graph.vertex_count();
        let mut out_arcs = vec![Vec::new(); n];
        for e in 0..self.tails.len() {
            out_arcs[self.tails[e]].push(self.head(e));
        }
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut comp = vec![usize::MAX; n];
        let mut next_index = 0;
        let mut next_comp = 0;
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            while let Some(&mut (v, ref mut i)) = call.last_mut() {
                if *i == 0 {
                    index[v] = next_index;
                    low[v] = next_index;
                    next_index += 1;
                    stack.push(v);
                    on_stack[v] = true;
                }
                if *i < out_arcs[v].len() {
                    let w = out_arcs[v][*i];
                    *i += 1;
                    if index[w] == usize::MAX {
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    if low[v] == index[v] {
                        while let Some(w) = stack.pop() {
                            on_stack[w] = false;
                            comp[w] = next_comp;
                            if w == v {
                                break;
                            }
                        }
                        next_comp += 1;
                    }
                    call.pop();
                    if let Some(&mut (p, _)) = call.last_mut() {
                        low[p] = low[p].min(low[v]);
                    }
                }
            }
        }
        comp
    }
}

/// A directed cut: its edge ids, the side opposite `top`, and whether the
/// cut set excludes `top`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dicut {
    pub edges: EdgeSet,
    pub interior: BTreeSet<String>,
    pub positive: bool,
}

// ---------------------------------------------------------------------------
// JSON documents

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    id: usize,
    ends: [String; 2],
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    vertices: Vec<String>,
    edges: Vec<EdgeDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    top: Option<String>,
}

/// Parses the JSON graph format
/// `{"vertices":[...],"edges":[{"id":0,"ends":["a","b"]}],"top":"a"}`.
pub fn parse_graph(text: &[u8]) -> Result<Graph> {
    let doc: GraphDoc =
        serde_json::from_slice(text).map_err(|e| Error::Parse(format!("graph JSON: {e}")))?;
    graph_from_doc(doc)
}

fn graph_from_doc(doc: GraphDoc) -> Result<Graph> {
    let m = doc.edges.len();
    let mut slots: Vec<Option<[String; 2]>> = vec![None; m];
    for edge in doc.edges {
        if edge.id >= m {
            return Err(Error::Parse(format!(
                "edge id {} out of range 0..{m}",
                edge.id
            )));
        }
        if slots[edge.id].is_some() {
            return Err(Error::Parse(format!("duplicate edge id {}", edge.id)));
        }
        slots[edge.id] = Some(edge.ends);
    }
    let edges = slots
        .into_iter()
        .map(|s| s.expect("all ids in range and distinct"))
        .map(|[a, b]| (a, b))
        .collect();
    Graph::new(doc.vertices, edges, doc.top)
}

/// Serializes a graph to its canonical JSON form (edges in id order).
pub fn graph_to_json(g: &Graph) -> String {
    let doc = GraphDoc {
        vertices: g.vertex_names().to_vec(),
        edges: (0..g.edge_count())
            .map(|e| {
                let (a, b) = g.ends(e);
                EdgeDoc {
                    id: e,
                    ends: [g.vertex_name(a).to_string(), g.vertex_name(b).to_string()],
                }
            })
            .collect(),
        top: g.top_name().map(|s| s.to_string()),
    };
    serde_json::to_string(&doc).expect("graph serialization cannot fail")
}

/// Reference to a graph inside an orientation document: inline or by path.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphRef {
    Path(String),
    Inline(GraphDocOpaque),
}

/// Opaque inline graph document (kept as raw JSON for re-parsing).
#[derive(Serialize, Deserialize)]
pub struct GraphDocOpaque(serde_json::Value);

#[derive(Serialize, Deserialize)]
struct OrientationDocRaw {
    #[serde(skip_serializing_if = "Option::is_none")]
    graph: Option<GraphRef>,
    tails: Vec<String>,
}

/// A parsed orientation document: optional graph reference plus tails.
pub struct OrientationDoc {
    pub graph: Option<OrientationGraph>,
    pub tails: Vec<String>,
}

pub enum OrientationGraph {
    Inline(Graph),
    Path(String),
}

/// Parses `{"graph":<path or inline>,"tails":["a",...]}`.
pub fn parse_orientation_doc(text: &[u8]) -> Result<OrientationDoc> {
    let raw: OrientationDocRaw = serde_json::from_slice(text)
        .map_err(|e| Error::Parse(format!("orientation JSON: {e}")))?;
    let graph = match raw.graph {
        None => None,
        Some(GraphRef::Path(p)) => Some(OrientationGraph::Path(p)),
        Some(GraphRef::Inline(v)) => {
            let bytes = serde_json::to_vec(&v.0).expect("value reserialization");
            Some(OrientationGraph::Inline(parse_graph(&bytes)?))
        }
    };
    Ok(OrientationDoc {
        graph,
        tails: raw.tails,
    })
}

/// Serializes an orientation with its graph inline.
pub fn orientation_to_json(o: &Orientation) -> String {
    let graph_value: serde_json::Value =
        serde_json::from_str(&graph_to_json(o.graph())).expect("round trip");
    let doc = serde_json::json!({
        "graph": graph_value,
        "tails": o.tail_names(),
    });
    serde_json::to_string(&doc).expect("orientation serialization cannot fail")
}

// ---------------------------------------------------------------------------
// Operations

/// Source and sink vertex names of an orientation. Isolated vertices appear
/// in both sets.
pub fn sources_and_sinks(o: &Orientation) -> (BTreeSet<String>, BTreeSet<String>) {
    let g = o.graph();
    let mut sources = BTreeSet::new();
    let mut sinks = BTreeSet::new();
    for v in 0..g.vertex_count() {
        if o.is_source(v) {
            sources.insert(g.vertex_name(v).to_string());
        }
        if o.is_sink(v) {
            sinks.insert(g.vertex_name(v).to_string());
        }
    }
    (sources, sinks)
}

/// The set of vertices unreachable from `top` once the edges of `s` are
/// deleted from the underlying graph.
pub fn canonical_interior(g: &Graph, s: &EdgeSet) -> Result<BTreeSet<String>> {
    let top = g.require_top()?;
    let seen = g.reachable(top, s, true);
    Ok((0..g.vertex_count())
        .filter(|&v| !seen[v])
        .map(|v| g.vertex_name(v).to_string())
        .collect())
}

/// Builds the directed cut induced by the cut set `u`: every crossing edge
/// must leave `u`. The cut is positive when `top` lies outside `u`.
pub fn directed_cut(o: &Orientation, u: &BTreeSet<String>) -> Result<Dicut> {
    let g = o.graph();
    let top = g.require_top()?;
    if u.is_empty() {
        return Err(Error::Invalid("cut set is empty".into()));
    }
    let mut in_u = vec![false; g.vertex_count()];
    for name in u {
        in_u[g.vertex_index(name)?] = true;
    }
    if in_u.iter().all(|&b| b) {
        return Err(Error::Invalid("cut set is the whole vertex set".into()));
    }
    let mut edges = EdgeSet::new();
    for e in 0..g.edge_count() {
        let (a, b) = g.ends(e);
        if in_u[a] == in_u[b] {
            continue;
        }
        if !in_u[o.tail(e)] {
            return Err(Error::Invalid(format!(
                "edge {e} enters the cut set; not a directed cut"
            )));
        }
        edges.insert(e);
    }
    if edges.is_empty() {
        return Err(Error::Invalid("cut set has an empty crossing set".into()));
    }
    let positive = !in_u[top];
    let interior = canonical_interior(g, &edges)?;
    // The canonical interior must see every cut edge crossing it uniformly.
    for e in edges.iter() {
        let tail_in = interior.contains(g.vertex_name(o.tail(e)));
        let head_in = interior.contains(g.vertex_name(o.head(e)));
        let ok = if positive {
            tail_in && !head_in
        } else {
            !tail_in && head_in
        };
        if !ok {
            return Err(Error::Invalid(format!(
                "cut set does not induce a clean dicut (edge {e} vs canonical interior)"
            )));
        }
    }
    Ok(Dicut {
        edges,
        interior,
        positive,
    })
}

/// Vertex potential certifying that the sub-digraph `d` of `o` is balanced:
/// `p(tail) = p(head) + 1` across arcs of `d` and `p` constant across all
/// other edges. Roots: `top`'s component is anchored at `top` with 0, other
/// components at their smallest vertex. Returns `None` when a cycle of the
/// underlying graph has unequal signed counts.
pub fn difference_potential(o: &Orientation, d: &EdgeSet) -> Option<Vec<i64>> {
    let g = o.graph();
    let n = g.vertex_count();
    let mut p: Vec<Option<i64>> = vec![None; n];
    let mut roots: Vec<usize> = Vec::new();
    if let Some(t) = g.top_index() {
        roots.push(t);
    }
    roots.extend(0..n);
    for root in roots {
        if p[root].is_some() {
            continue;
        }
        p[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let pv = p[v].unwrap();
            for &e in g.edges_at(v) {
                let w = g.other_end(e, v);
                let step = if !d.contains(e) {
                    0
                } else if o.tail(e) == v {
                    -1 // walking tail -> head: potential drops by one
                } else {
                    1
                };
                match p[w] {
                    None => {
                        p[w] = Some(pv + step);
                        queue.push_back(w);
                    }
                    Some(pw) => {
                        if pw != pv + step {
                            return None;
                        }
                    }
                }
            }
        }
    }
    Some(p.into_iter().map(|x| x.unwrap()).collect())
}

/// True iff every cycle of the underlying graph meets `d` in equally many
/// forward and backward edges under `o`'s directions.
pub fn is_balanced(o: &Orientation, d: &EdgeSet) -> bool {
    difference_potential(o, d).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn triangle() -> Orientation {
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
        Orientation::from_tail_names(Arc::clone(&g), &["a", "b", "c"]).unwrap()
    }

    #[test]
    fn parse_fig2_counts() {
        let f = fixtures::fig2();
        assert_eq!(f.graph.vertex_count(), 10);
        assert_eq!(f.graph.edge_count(), 13);
    }

    #[test]
    fn parse_empty_graph() {
        let g = parse_graph(br#"{"vertices":["a"],"edges":[]}"#).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_rejects_unknown_vertex() {
        let err = parse_graph(br#"{"vertices":["a","b"],"edges":[{"id":0,"ends":["a","zz"]}]}"#);
        assert!(err.is_err());
    }

    #[test]
    fn parse_rejects_self_loop_and_duplicate_id() {
        assert!(parse_graph(br#"{"vertices":["a"],"edges":[{"id":0,"ends":["a","a"]}]}"#).is_err());
        let dup = br#"{"vertices":["a","b"],"edges":[{"id":0,"ends":["a","b"]},{"id":0,"ends":["a","b"]}]}"#;
        assert!(parse_graph(dup).is_err());
    }

    #[test]
    fn graph_json_round_trip_is_exact() {
        let f = fixtures::fig7();
        let s = graph_to_json(&f.graph);
        let g2 = parse_graph(s.as_bytes()).unwrap();
        assert_eq!(f.graph, g2);
        assert_eq!(s, graph_to_json(&g2));
    }

    #[test]
    fn fig7_bottom_sources_and_sinks() {
        let f = fixtures::fig7();
        let bottom = &f.orientations["bottom"];
        let (sources, sinks) = sources_and_sinks(bottom);
        assert_eq!(sources, BTreeSet::from(["e".to_string()]));
        assert_eq!(sinks, BTreeSet::from(["T".to_string()]));
    }

    #[test]
    fn single_arc_sources_and_sinks() {
        let g = Arc::new(
            Graph::new(
                vec!["u".into(), "v".into()],
                vec![("u".into(), "v".into())],
                None,
            )
            .unwrap(),
        );
        let o = Orientation::from_tail_names(g, &["u"]).unwrap();
        let (sources, sinks) = sources_and_sinks(&o);
        assert_eq!(sources, BTreeSet::from(["u".to_string()]));
        assert_eq!(sinks, BTreeSet::from(["v".to_string()]));
    }

    #[test]
    fn directed_triangle_has_no_sources_or_sinks() {
        let (sources, sinks) = sources_and_sinks(&triangle());
        assert!(sources.is_empty());
        assert!(sinks.is_empty());
    }

    #[test]
    fn fig7_directed_cut_at_e() {
        let f = fixtures::fig7();
        let bottom = &f.orientations["bottom"];
        let cut = directed_cut(bottom, &BTreeSet::from(["e".to_string()])).unwrap();
        assert_eq!(cut.edges.len(), 4);
        assert!(cut.positive);
        assert_eq!(cut.interior, BTreeSet::from(["e".to_string()]));
    }

    #[test]
    fn fig7_directed_cut_rejects_entering_edge() {
        let f = fixtures::fig7();
        let bottom = &f.orientations["bottom"];
        assert!(directed_cut(bottom, &BTreeSet::from(["d".to_string()])).is_err());
    }

    #[test]
    fn directed_cut_rejects_full_vertex_set() {
        let f = fixtures::fig7();
        let bottom = &f.orientations["bottom"];
        let all: BTreeSet<String> = f.graph.vertex_names().iter().cloned().collect();
        assert!(directed_cut(bottom, &all).is_err());
    }

    #[test]
    fn cut_reversal_involution() {
        let f = fixtures::fig7();
        let bottom = &f.orientations["bottom"];
        let u = BTreeSet::from(["e".to_string()]);
        let cut = directed_cut(bottom, &u).unwrap();
        let flipped = bottom.reverse_edges(&cut.edges);
        // After reversal the complement side induces the reverse cut.
        let complement: BTreeSet<String> = f
            .graph
            .vertex_names()
            .iter()
            .filter(|v| !u.contains(*v))
            .cloned()
            .collect();
        let back = directed_cut(&flipped, &complement).unwrap();
        assert_eq!(back.edges, cut.edges);
    }

    #[test]
    fn fig7_top_edges_are_balanced() {
        let f = fixtures::fig7();
        let bottom = &f.orientations["bottom"];
        let d: EdgeSet = [0, 6, 7, 8].into_iter().collect();
        assert!(is_balanced(bottom, &d));
        // Brute-force cross-check: every simple cycle of the underlying graph
        // must meet d in equally many forward and backward edges.
        assert!(balanced_by_cycle_enumeration(bottom, &d));
    }

    #[test]
    fn empty_set_is_balanced() {
        let f = fixtures::fig7();
        assert!(is_balanced(&f.orientations["bottom"], &EdgeSet::new()));
    }

    #[test]
    fn directed_triangle_is_unbalanced() {
        let o = triangle();
        let d: EdgeSet = [0, 1, 2].into_iter().collect();
        assert!(!is_balanced(&o, &d));
        assert!(!balanced_by_cycle_enumeration(&o, &d));
    }

    #[test]
    fn balance_invariant_under_reversal() {
        let f = fixtures::fig7();
        let bottom = &f.orientations["bottom"];
        let d: EdgeSet = [0, 6, 7, 8].into_iter().collect();
        let reversed = bottom.reverse_edges(&d);
        assert_eq!(is_balanced(bottom, &d), is_balanced(&reversed, &d));
    }

    #[test]
    fn canonical_interior_examples() {
        let f = fixtures::fig7();
        let g = &f.graph;
        let top_edges: EdgeSet = [0, 6, 7, 8].into_iter().collect();
        assert_eq!(
            canonical_interior(g, &top_edges).unwrap(),
            ["b", "d", "e", "f"]
                .iter()
                .map(|s| s.to_string())
                .collect()
        );
        let e_edges: EdgeSet = [2, 4, 5, 6].into_iter().collect();
        assert_eq!(
            canonical_interior(g, &e_edges).unwrap(),
            BTreeSet::from(["e".to_string()])
        );
        assert!(canonical_interior(g, &EdgeSet::new()).unwrap().is_empty());
    }

    #[test]
    fn canonical_interior_matches_directed_cut() {
        let f = fixtures::fig7();
        let bottom = &f.orientations["bottom"];
        let cut = directed_cut(bottom, &BTreeSet::from(["e".to_string()])).unwrap();
        assert_eq!(
            canonical_interior(&f.graph, &cut.edges).unwrap(),
            cut.interior
        );
    }

    /// Independent oracle: enumerate all simple cycles of the underlying
    /// graph and count signed meetings with `d`.
    fn balanced_by_cycle_enumeration(o: &Orientation, d: &EdgeSet) -> bool {
        let g = o.graph();
        let n = g.vertex_count();
        // Depth-first enumeration of all simple cycles anchored at their
        // smallest vertex.
        fn dfs(
            g: &Graph,
            o: &Orientation,
            d: &EdgeSet,
            anchor: usize,
            v: usize,
            used_vertices: &mut Vec<bool>,
            used_edges: &mut Vec<bool>,
            signed: i64,
            ok: &mut bool,
        ) {
            for &e in g.edges_at(v) {
                if used_edges[e] {
                    continue;
                }
                let w = g.other_end(e, v);
                let step = if !d.contains(e) {
                    0
                } else if o.tail(e) == v {
                    1
                } else {
                    -1
                };
                if w == anchor {
                    if signed + step != 0 {
                        *ok = false;
                    }
                    continue;
                }
                if w < anchor || used_vertices[w] {
                    continue;
                }
                used_vertices[w] = true;
                used_edges[e] = true;
                dfs(g, o, d, anchor, w, used_vertices, used_edges, signed + step, ok);
                used_vertices[w] = false;
                used_edges[e] = false;
            }
        }
        let mut ok = true;
        for anchor in 0..n {
            let mut used_vertices = vec![false; n];
            let mut used_edges = vec![false; g.edge_count()];
            used_vertices[anchor] = true;
            dfs(
                g,
                o,
                d,
                anchor,
                anchor,
                &mut used_vertices,
                &mut used_edges,
                0,
                &mut ok,
            );
        }
        ok
    }
}
