//! Orientations with prescribed outdegrees, the perfect-matching bijection,
//! directed-cycle flips, and difference decomposition into cycles.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, Orientation};

/// Prescribed outdegree per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaSpec {
    pub alpha: BTreeMap<String, u32>,
}

impl AlphaSpec {
    pub fn new(alpha: BTreeMap<String, u32>) -> AlphaSpec {
        AlphaSpec { alpha }
    }

    pub fn get(&self, vertex: &str) -> Result<u32> {
        self.alpha
            .get(vertex)
            .copied()
            .ok_or_else(|| Error::Invalid(format!("alpha is missing vertex {vertex:?}")))
    }
}

/// A perfect matching of a bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub graph: Arc<Graph>,
    pub v1: BTreeSet<String>,
    pub v2: BTreeSet<String>,
    pub matched: EdgeSet,
}

impl Matching {
    /// Validates bipartition, edge sides, disjointness, and coverage.
    pub fn new(
        graph: Arc<Graph>,
        v1: BTreeSet<String>,
        v2: BTreeSet<String>,
        matched: EdgeSet,
    ) -> Result<Matching> {
        let m = Matching {
            graph,
            v1,
            v2,
            matched,
        };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let g = &self.graph;
        for name in self.v1.intersection(&self.v2) {
            return Err(Error::Invalid(format!("vertex {name:?} on both sides")));
        }
        if self.v1.len() + self.v2.len() != g.vertex_count() {
            return Err(Error::Invalid("bipartition does not cover all vertices".into()));
        }
        for name in self.v1.iter().chain(self.v2.iter()) {
            g.vertex_index(name)?;
        }
        let side1 = self.side_mask()?;
        for e in 0..g.edge_count() {
            let (a, b) = g.ends(e);
            if side1[a] == side1[b] {
                return Err(Error::Invalid(format!(
                    "edge {e} does not join the two sides"
                )));
            }
        }
        let mut covered = vec![false; g.vertex_count()];
        for e in self.matched.iter() {
            if e >= g.edge_count() {
                return Err(Error::Invalid(format!("matched edge {e} out of range")));
            }
            let (a, b) = g.ends(e);
            if covered[a] || covered[b] {
                return Err(Error::Invalid("matched edges share a vertex".into()));
            }
            covered[a] = true;
            covered[b] = true;
        }
        if let Some(v) = (0..g.vertex_count()).find(|&v| !covered[v]) {
            return Err(Error::Invalid(format!(
                "vertex {:?} is not covered by the matching",
                g.vertex_name(v)
            )));
        }
        Ok(())
    }

    /// True-at-index map of membership in the first side.
    pub(crate) fn side_mask(&self) -> Result<Vec<bool>> {
        let g = &self.graph;
        let mut side1 = vec![false; g.vertex_count()];
        for name in &self.v1 {
            side1[g.vertex_index(name)?] = true;
        }
        Ok(side1)
    }

    /// The outdegree prescription a matching orientation satisfies: 1 on the
    /// first side, degree minus one on the second.
    pub fn alpha(&self) -> Result<AlphaSpec> {
        let g = &self.graph;
        let side1 = self.side_mask()?;
        let mut alpha = BTreeMap::new();
        for v in 0..g.vertex_count() {
            let value = if side1[v] {
                1
            } else {
                g.edges_at(v).len() as u32 - 1
            };
            alpha.insert(g.vertex_name(v).to_string(), value);
        }
        Ok(AlphaSpec::new(alpha))
    }
}

/// True iff every vertex has the prescribed outdegree.
pub fn check_alpha(o: &Orientation, a: &AlphaSpec) -> Result<bool> {
    let g = o.graph();
    for v in 0..g.vertex_count() {
        if o.out_degree(v) as u32 != a.get(g.vertex_name(v))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Orients matched edges from the first side to the second and everything
/// else the other way; the result satisfies the matching outdegrees.
pub fn matching_to_orientation(m: &Matching) -> Result<(AlphaSpec, Orientation)> {
    let g = &m.graph;
    let side1 = m.side_mask()?;
    let mut tails = Vec::with_capacity(g.edge_count());
    for e in 0..g.edge_count() {
        let (a, b) = g.ends(e);
        let from_side1 = m.matched.contains(e);
        let tail = match (side1[a], from_side1) {
            (true, true) | (false, false) => a,
            _ => b,
        };
        tails.push(tail);
    }
    let o = Orientation::new(Arc::clone(g), tails)?;
    let alpha = m.alpha()?;
    debug_assert!(check_alpha(&o, &alpha)?);
    Ok((alpha, o))
}

/// Extracts the perfect matching formed by edges directed from the first
/// side to the second.
pub fn orientation_to_matching(
    o: &Orientation,
    v1: &BTreeSet<String>,
    v2: &BTreeSet<String>,
) -> Result<Matching> {
    let g = o.graph();
    let mut side1 = vec![false; g.vertex_count()];
    for name in v1 {
        side1[g.vertex_index(name)?] = true;
    }
    let matched: EdgeSet = (0..g.edge_count())
        .filter(|&e| side1[o.tail(e)])
        .collect();
    Matching::new(Arc::clone(g), v1.clone(), v2.clone(), matched)
        .map_err(|e| Error::Invalid(format!("orientation is not a matching orientation: {e}")))
}

/// Reverses the edges of a single directed cycle.
pub fn flip_cycle(o: &Orientation, c: &EdgeSet) -> Result<Orientation> {
    validate_directed_cycle(o, c)?;
    Ok(o.reverse_edges(c))
}

fn validate_directed_cycle(o: &Orientation, c: &EdgeSet) -> Result<()> {
    let g = o.graph();
    if c.is_empty() {
        return Err(Error::Invalid("empty edge set is not a cycle".into()));
    }
    let mut out: BTreeMap<usize, usize> = BTreeMap::new();
    let mut inn: BTreeMap<usize, usize> = BTreeMap::new();
    for e in c.iter() {
        if e >= g.edge_count() {
            return Err(Error::Invalid(format!("edge {e} out of range")));
        }
        *out.entry(o.tail(e)).or_default() += 1;
        *inn.entry(o.head(e)).or_default() += 1;
    }
    let support: BTreeSet<usize> = out.keys().chain(inn.keys()).copied().collect();
    for &v in &support {
        if out.get(&v).copied().unwrap_or(0) != 1 || inn.get(&v).copied().unwrap_or(0) != 1 {
            return Err(Error::Invalid(
                "edge set is not 2-regular and consistently oriented".into(),
            ));
        }
    }
    // Single cycle: following the unique out-arc from the smallest support
    // vertex must traverse every edge.
    let start = *support.iter().next().unwrap();
    let mut seen = 0usize;
    let mut v = start;
    loop {
        let e = c
            .iter()
            .find(|&e| o.tail(e) == v)
            .expect("out-degree one on support");
        seen += 1;
        v = o.head(e);
        if v == start {
            break;
        }
        if seen > c.len() {
            break;
        }
    }
    if seen != c.len() {
        return Err(Error::Invalid("edge set is not a single cycle".into()));
    }
    Ok(())
}

/// Decomposes the differing edges of two orientations into edge-disjoint
/// directed cycles of the first, smallest-edge-id-first.
pub fn difference_cycles(x: &Orientation, y: &Orientation) -> Result<Vec<EdgeSet>> {
    let g = x.graph();
    let diff = x.differing_edges(y)?;
    // The difference must be Eulerian in x: in-degree equals out-degree at
    // every vertex.
    let mut balance = vec![0i64; g.vertex_count()];
    for e in diff.iter() {
        balance[x.tail(e)] += 1;
        balance[x.head(e)] -= 1;
    }
    if balance.iter().any(|&b| b != 0) {
        return Err(Error::Invalid(
            "differing edges are not Eulerian; not a common outdegree class".into(),
        ));
    }
    let mut remaining = diff;
    let mut out_arcs: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for e in remaining.iter() {
        out_arcs[x.tail(e)].push(e);
    }
    let mut cycles = Vec::new();
    while !remaining.is_empty() {
        let first = remaining.iter().next().unwrap();
        // Walk forward taking the smallest unused out-arc until a vertex on
        // the current path repeats, then extract that loop.
        let mut path: Vec<usize> = vec![first];
        let mut at: BTreeMap<usize, usize> = BTreeMap::new(); // vertex -> path pos of arc leaving it
        at.insert(x.tail(first), 0);
        remaining.remove(first);
        let mut cur = x.head(first);
        loop {
            if let Some(&pos) = at.get(&cur) {
                let cycle: EdgeSet = path.drain(pos..).collect();
                for e in cycle.iter() {
                    at.remove(&x.tail(e));
                }
                cycles.push(cycle);
                if path.is_empty() {
                    break;
                }
                cur = x.head(*path.last().unwrap());
                continue;
            }
            let e = out_arcs[cur]
                .iter()
                .copied()
                .filter(|&e| remaining.contains(e))
                .min()
                .expect("Eulerian difference always continues");
            at.insert(cur, path.len());
            path.push(e);
            remaining.remove(e);
            cur = x.head(e);
        }
    }
    Ok(cycles)
}

/// The dicut size determined by the outdegree prescription alone:
/// sum of alpha over `u` minus the number of internal edges.
pub fn dicut_size(g: &Graph, a: &AlphaSpec, u: &BTreeSet<String>) -> Result<i64> {
    let mut in_u = vec![false; g.vertex_count()];
    let mut total: i64 = 0;
    for name in u {
        in_u[g.vertex_index(name)?] = true;
        total += a.get(name)? as i64;
    }
    for e in 0..g.edge_count() {
        let (x, y) = g.ends(e);
        if in_u[x] && in_u[y] {
            total -= 1;
        }
    }
    Ok(total)
}
