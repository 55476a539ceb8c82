//! Exact vertex-flip distances between same-class orientations: laminar
//! decomposition of the difference into disjoint dicuts, the weighted cut
//! poset driving the monotone sequence construction, and an independent
//! lattice-route cross-check via the flip-count embedding.

use std::collections::{BTreeMap, BTreeSet};

use crate::corient::{
    check_lattice_instance, descend_counting, replay, same_c, FlipDirection, FlipSequence,
    FlipStep,
};
use crate::error::{Error, Result};
use crate::graph::{difference_potential, Dicut, EdgeSet, Graph, Orientation};

/// A family of disjoint dicuts decomposing a difference.
#[derive(Debug, Clone)]
pub struct DicutFamily {
    pub cuts: Vec<Dicut>,
    pub laminar: bool,
}

impl DicutFamily {
    /// Wraps hand-built cuts after verifying pairwise laminarity of the
    /// interiors and disjointness of the edge sets.
    pub fn verified(cuts: Vec<Dicut>, g: &Graph) -> Result<DicutFamily> {
        let top = g.require_top()?;
        for cut in &cuts {
            if cut.interior.contains(g.vertex_name(top)) {
                return Err(Error::Invalid(
                    "a cut interior contains the top vertex".into(),
                ));
            }
        }
        for i in 0..cuts.len() {
            for j in i + 1..cuts.len() {
                if !cuts[i].edges.is_disjoint(&cuts[j].edges) {
                    return Err(Error::Invalid(format!(
                        "cuts {i} and {j} share an edge"
                    )));
                }
                let a = &cuts[i].interior;
                let b = &cuts[j].interior;
                let nested = a.is_subset(b) || b.is_subset(a);
                let disjoint = a.intersection(b).next().is_none();
                if !nested && !disjoint {
                    return Err(Error::Invalid(format!(
                        "interiors of cuts {i} and {j} are not laminar"
                    )));
                }
            }
        }
        Ok(DicutFamily {
            cuts,
            laminar: true,
        })
    }
}

/// Sign of a cut in the weight calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Zero,
    Minus,
}

/// The forest of a laminar dicut family ordered by interior inclusion,
/// annotated with weights and signs.
#[derive(Debug, Clone)]
pub struct CutPoset {
    pub family: DicutFamily,
    /// Unique covering cut per non-maximal element.
    pub parent: Vec<Option<usize>>,
    pub weight: Vec<u32>,
    pub sign: Vec<Sign>,
    /// Interior minus the interiors of covered cuts.
    pub strict_interior: Vec<BTreeSet<String>>,
}

fn cut_agrees(positive: bool, s: Sign) -> bool {
    match s {
        Sign::Zero => true,
        Sign::Plus => positive,
        Sign::Minus => !positive,
    }
}

/// Decomposes the difference of two same-class acyclic orientations into a
/// laminar family of disjoint dicuts, one per connected component of each
/// level set of the difference potential. Every cut is a full dicut of `x`:
/// its edge set is exactly the boundary of its interior.
pub fn laminar_decompose(x: &Orientation, y: &Orientation) -> Result<DicutFamily> {
    check_lattice_instance(x)?;
    let diff = x.differing_edges(y)?;
    let potential = difference_potential(x, &diff).ok_or_else(|| {
        Error::Invalid("difference is not balanced; orientations are not same-class".into())
    })?;
    let g = x.graph();
    let n = g.vertex_count();
    let max_level = potential.iter().copied().max().unwrap_or(0);
    let min_level = potential.iter().copied().min().unwrap_or(0);
    let mut cuts = Vec::new();
    let mut levels: Vec<i64> = (1..=max_level).collect();
    levels.extend((min_level..=-1).rev());
    for k in levels {
        let in_level: Vec<bool> = (0..n)
            .map(|v| {
                if k > 0 {
                    potential[v] >= k
                } else {
                    potential[v] <= k
                }
            })
            .collect();
        for component in level_components(g, &in_level) {
            let mut edges = EdgeSet::new();
            for &v in &component {
                for &e in g.edges_at(v) {
                    if !in_component(&component, g.other_end(e, v)) {
                        edges.insert(e);
                    }
                }
            }
            let interior: BTreeSet<String> = component
                .iter()
                .map(|&v| g.vertex_name(v).to_string())
                .collect();
            cuts.push(Dicut {
                edges,
                interior,
                positive: k > 0,
            });
        }
    }
    let family = DicutFamily::verified(cuts, g)?;
    verify_decomposition(x, &diff, &family)?;
    Ok(family)
}

fn in_component(sorted: &[usize], v: usize) -> bool {
    sorted.binary_search(&v).is_ok()
}

/// Connected components of the induced subgraph on `mask`, each sorted,
/// ordered by smallest vertex name.
fn level_components(g: &Graph, mask: &[bool]) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut comp = vec![usize::MAX; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for &start in &g.vertices_by_name() {
        if !mask[start] || comp[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut member = vec![start];
        comp[start] = id;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &e in g.edges_at(v) {
                let w = g.other_end(e, v);
                if mask[w] && comp[w] == usize::MAX {
                    comp[w] = id;
                    member.push(w);
                    stack.push(w);
                }
            }
        }
        member.sort_unstable();
        components.push(member);
    }
    components
}

/// Fail-loudly verification: disjoint edge sets covering the difference,
/// and every cut a full uniform dicut of `x`.
fn verify_decomposition(x: &Orientation, diff: &EdgeSet, family: &DicutFamily) -> Result<()> {
    let g = x.graph();
    let mut union = EdgeSet::new();
    for (i, cut) in family.cuts.iter().enumerate() {
        if !union.is_disjoint(&cut.edges) {
            return Err(Error::Anomaly(format!("cut {i} overlaps earlier cuts")));
        }
        union.union_with(&cut.edges);
        let inside: BTreeSet<usize> = cut
            .interior
            .iter()
            .map(|name| g.vertex_index(name))
            .collect::<Result<_>>()?;
        // Full cut: the boundary of the interior is exactly the edge set,
        // uniformly directed.
        let mut boundary = EdgeSet::new();
        for &v in &inside {
            for &e in g.edges_at(v) {
                if !inside.contains(&g.other_end(e, v)) {
                    boundary.insert(e);
                }
            }
        }
        if boundary != cut.edges {
            return Err(Error::Anomaly(format!(
                "cut {i} is not the full boundary of its interior"
            )));
        }
        for e in cut.edges.iter() {
            if !diff.contains(e) {
                return Err(Error::Anomaly(format!(
                    "cut {i} contains non-difference edge {e}"
                )));
            }
            let tail_in = inside.contains(&x.tail(e));
            if tail_in != cut.positive {
                return Err(Error::Anomaly(format!(
                    "cut {i} is not uniformly directed in x"
                )));
            }
        }
    }
    if &union != diff {
        return Err(Error::Anomaly(
            "cuts do not cover the difference exactly".into(),
        ));
    }
    Ok(())
}

/// Builds the interior-inclusion forest over a laminar family and assigns
/// weights and signs: maximal cuts get weight one and their own polarity;
/// other cuts gain or lose one depending on whether they agree with the
/// covering cut's sign.
pub fn build_cut_poset(family: DicutFamily, g: &Graph) -> Result<CutPoset> {
    if !family.laminar {
        return Err(Error::Invalid("family is not verified laminar".into()));
    }
    let k = family.cuts.len();
    let mut parent: Vec<Option<usize>> = vec![None; k];
    for i in 0..k {
        let mut best: Option<usize> = None;
        for j in 0..k {
            if i == j {
                continue;
            }
            let ii = &family.cuts[i].interior;
            let jj = &family.cuts[j].interior;
            if ii.is_subset(jj) && ii != jj {
                best = match best {
                    None => Some(j),
                    Some(b) => {
                        let bb = &family.cuts[b].interior;
                        if jj.is_subset(bb) {
                            Some(j)
                        } else if bb.is_subset(jj) {
                            Some(b)
                        } else {
                            return Err(Error::Invalid(format!(
                                "cut {i} has incomparable covers; family is not laminar"
                            )));
                        }
                    }
                };
            }
        }
        parent[i] = best;
    }
    // Weights and signs top-down.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(family.cuts[i].interior.len()));
    let mut weight = vec![0i64; k];
    let mut sign = vec![Sign::Zero; k];
    for &i in &order {
        match parent[i] {
            None => {
                weight[i] = 1;
                sign[i] = if family.cuts[i].positive {
                    Sign::Plus
                } else {
                    Sign::Minus
                };
            }
            Some(p) => {
                let agrees = cut_agrees(family.cuts[i].positive, sign[p]);
                weight[i] = if agrees { weight[p] + 1 } else { weight[p] - 1 };
                if weight[i] < 0 {
                    return Err(Error::Invalid(format!(
                        "weight calculus produced a negative weight at cut {i}"
                    )));
                }
                sign[i] = if weight[i] == 0 {
                    Sign::Zero
                } else if sign[p] != Sign::Zero {
                    sign[p]
                } else if family.cuts[i].positive {
                    Sign::Plus
                } else {
                    Sign::Minus
                };
            }
        }
    }
    debug_assert!((0..k).all(|i| (weight[i] == 0) == (sign[i] == Sign::Zero)));
    let mut strict_interior: Vec<BTreeSet<String>> = family
        .cuts
        .iter()
        .map(|c| c.interior.clone())
        .collect();
    for i in 0..k {
        if let Some(p) = parent[i] {
            for name in &family.cuts[i].interior {
                strict_interior[p].remove(name);
            }
        }
    }
    let _ = g;
    Ok(CutPoset {
        family,
        parent,
        weight: weight.into_iter().map(|w| w as u32).collect(),
        sign,
        strict_interior,
    })
}

/// Flips every interior vertex of a full dicut exactly once, sources first
/// for positive cuts and sinks first for negative ones. The result differs
/// from `x` exactly on the cut's edges.
pub fn flip_interior(x: &Orientation, cut: &Dicut) -> Result<(FlipSequence, Orientation)> {
    let g = x.graph();
    let inside: BTreeSet<usize> = cut
        .interior
        .iter()
        .map(|name| g.vertex_index(name))
        .collect::<Result<_>>()?;
    // Must be a dicut of x right now: all boundary edges of the interior in
    // the cut, uniformly oriented.
    let mut boundary = EdgeSet::new();
    for &v in &inside {
        for &e in g.edges_at(v) {
            if !inside.contains(&g.other_end(e, v)) {
                boundary.insert(e);
                let tail_in = inside.contains(&x.tail(e));
                if tail_in != cut.positive {
                    return Err(Error::Invalid(
                        "interior is not a uniformly directed cut of the orientation".into(),
                    ));
                }
            }
        }
    }
    if boundary != cut.edges {
        return Err(Error::Invalid(
            "cut edges are not the boundary of the interior".into(),
        ));
    }
    let mut cur = x.clone();
    let steps = interior_pass(&mut cur, &inside, cut.positive)?;
    let sequence = FlipSequence {
        steps: steps
            .into_iter()
            .map(|v| FlipStep::Vertex {
                vertex: g.vertex_name(v).to_string(),
                direction: if cut.positive {
                    FlipDirection::SourceToSink
                } else {
                    FlipDirection::SinkToSource
                },
            })
            .collect(),
    };
    debug_assert_eq!(x.differing_edges(&cur).unwrap(), cut.edges);
    Ok((sequence, cur))
}

/// Flips each vertex of `inside` exactly once, peeling sources (positive)
/// or sinks (negative) of the current orientation, smallest name first.
/// Mutates `cur` in place and returns the flip order.
fn interior_pass(
    cur: &mut Orientation,
    inside: &BTreeSet<usize>,
    positive: bool,
) -> Result<Vec<usize>> {
    let g = cur.graph().clone();
    let mut rank = vec![usize::MAX; g.vertex_count()];
    for (r, &v) in g.vertices_by_name().iter().enumerate() {
        rank[v] = r;
    }
    // Induced degree toward unflipped interior vertices: in-degree for
    // positive passes (peel sources), out-degree for negative.
    let mut blocked = BTreeMap::new();
    for &v in inside {
        let count = g
            .edges_at(v)
            .iter()
            .filter(|&&e| {
                let other = g.other_end(e, v);
                if !inside.contains(&other) {
                    return false;
                }
                if positive {
                    cur.head(e) == v
                } else {
                    cur.tail(e) == v
                }
            })
            .count();
        blocked.insert(v, count);
    }
    let mut pool: BTreeSet<(usize, usize)> = blocked
        .iter()
        .filter(|&(_, &c)| c == 0)
        .map(|(&v, _)| (rank[v], v))
        .collect();
    let mut done: BTreeSet<usize> = BTreeSet::new();
    let mut order = Vec::with_capacity(inside.len());
    while let Some(&(r, v)) = pool.iter().next() {
        pool.remove(&(r, v));
        // Sanity: v must be a global source (resp. sink) of cur.
        let legal = if positive { cur.is_source(v) } else { cur.is_sink(v) };
        if !legal {
            return Err(Error::Anomaly(format!(
                "interior vertex {:?} is not flippable during its pass",
                g.vertex_name(v)
            )));
        }
        cur.flip_vertex_unchecked(v);
        done.insert(v);
        order.push(v);
        for &e in g.edges_at(v) {
            let w = g.other_end(e, v);
            if !inside.contains(&w) || done.contains(&w) {
                continue;
            }
            let releases = if positive {
                // Edge pointed v -> w before the flip.
                cur.head(e) == v // after flipping v the edge points w -> v
            } else {
                cur.tail(e) == v
            };
            if releases {
                let c = blocked.get_mut(&w).expect("interior vertex");
                *c -= 1;
                if *c == 0 {
                    pool.insert((rank[w], w));
                }
            }
        }
    }
    if order.len() != inside.len() {
        return Err(Error::Anomaly(
            "interior pass could not flip every interior vertex".into(),
        ));
    }
    Ok(order)
}

#[derive(Debug, Clone)]
struct StepRec {
    vertex: usize,
    direction: FlipDirection,
    pass: usize,
    deleted: bool,
}

/// Runs the inductive construction over an explicit cut poset: repeatedly
/// choose a minimal element that is currently a dicut, flip its interior,
/// and splice out cancelled flip pairs where a cut disagrees with its
/// cover's sign. The returned sequence is monotone, replays from `x` to
/// `y`, and flips each vertex exactly its weighted count.
pub fn monotone_sequence_from_poset(
    x: &Orientation,
    y: &Orientation,
    poset: &CutPoset,
) -> Result<FlipSequence> {
    let g = x.graph();
    let k = poset.family.cuts.len();
    let interiors: Vec<BTreeSet<usize>> = poset
        .family
        .cuts
        .iter()
        .map(|c| {
            c.interior
                .iter()
                .map(|n| g.vertex_index(n))
                .collect::<Result<BTreeSet<usize>>>()
        })
        .collect::<Result<_>>()?;
    let mut rank = vec![usize::MAX; g.vertex_count()];
    for (r, &v) in g.vertices_by_name().iter().enumerate() {
        rank[v] = r;
    }
    let mut pending_children = vec![0usize; k];
    for i in 0..k {
        if let Some(p) = poset.parent[i] {
            pending_children[p] += 1;
        }
    }
    let mut remaining: BTreeSet<usize> = (0..k).collect();
    let mut virt = x.clone();
    let mut steps: Vec<StepRec> = Vec::new();
    let mut passes: Vec<usize> = Vec::new(); // cut index per pass
    while !remaining.is_empty() {
        let mut candidates: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&i| pending_children[i] == 0)
            .collect();
        candidates.sort_by_key(|&i| {
            interiors[i]
                .iter()
                .map(|&v| rank[v])
                .min()
                .unwrap_or(usize::MAX)
        });
        let chosen = candidates
            .into_iter()
            .find(|&i| is_uniform_dicut(&virt, &interiors[i], poset.family.cuts[i].positive));
        let Some(i) = chosen else {
            return Err(Error::Anomaly(
                "no minimal element of the cut poset is currently flippable".into(),
            ));
        };
        let pass = passes.len();
        let positive = poset.family.cuts[i].positive;
        let order = interior_pass(&mut virt, &interiors[i], positive)?;
        for v in order {
            steps.push(StepRec {
                vertex: v,
                direction: if positive {
                    FlipDirection::SourceToSink
                } else {
                    FlipDirection::SinkToSource
                },
                pass,
                deleted: false,
            });
        }
        passes.push(i);
        remaining.remove(&i);
        if let Some(p) = poset.parent[i] {
            pending_children[p] -= 1;
        }
    }
    if &virt != y {
        return Err(Error::Anomaly(
            "executing all interior passes did not reach the target".into(),
        ));
    }
    // Cancellation: where a cut disagrees with its cover's sign, its pass is
    // spliced out against the next flip of each interior vertex. Deeper
    // recursion levels are later passes, so process passes in reverse.
    let pass_start: Vec<usize> = {
        let mut starts = vec![steps.len(); passes.len()];
        for (idx, s) in steps.iter().enumerate() {
            if idx < starts[s.pass] {
                starts[s.pass] = idx;
            }
        }
        let mut acc = steps.len();
        for j in (0..passes.len()).rev() {
            if starts[j] > acc {
                starts[j] = acc;
            }
            acc = starts[j];
        }
        starts
    };
    for j in (0..passes.len()).rev() {
        let cut = passes[j];
        let disagree = match poset.parent[cut] {
            Some(p) => !cut_agrees(poset.family.cuts[cut].positive, poset.sign[p]),
            None => false,
        };
        if !disagree {
            continue;
        }
        for &v in &interiors[cut] {
            let i1 = (pass_start[j]..steps.len())
                .find(|&idx| !steps[idx].deleted && steps[idx].vertex == v)
                .ok_or_else(|| Error::Anomaly("cancellation lost a flip".into()))?;
            if steps[i1].pass != j {
                return Err(Error::Anomaly(
                    "cancellation target is outside its own pass".into(),
                ));
            }
            let i2 = (i1 + 1..steps.len())
                .find(|&idx| !steps[idx].deleted && steps[idx].vertex == v)
                .ok_or_else(|| {
                    Error::Anomaly("cancellation has no partner flip".into())
                })?;
            if steps[i1].direction == steps[i2].direction {
                return Err(Error::Anomaly(
                    "cancellation pair flips in the same direction".into(),
                ));
            }
            steps[i1].deleted = true;
            steps[i2].deleted = true;
        }
    }
    let sequence = FlipSequence {
        steps: steps
            .iter()
            .filter(|s| !s.deleted)
            .map(|s| FlipStep::Vertex {
                vertex: g.vertex_name(s.vertex).to_string(),
                direction: s.direction,
            })
            .collect(),
    };
    verify_engine_output(x, y, poset, &sequence)?;
    Ok(sequence)
}

/// Post-verification of the constructed sequence: legal replay to the
/// target, per-vertex monotonicity, and flip counts matching the poset's
/// weights and signs.
fn verify_engine_output(
    x: &Orientation,
    y: &Orientation,
    poset: &CutPoset,
    seq: &FlipSequence,
) -> Result<()> {
    let end = replay(x, seq).map_err(|e| Error::Anomaly(format!("replay failed: {e}")))?;
    if &end != y {
        return Err(Error::Anomaly("sequence does not reach the target".into()));
    }
    let mut counts: BTreeMap<&str, (u32, Option<FlipDirection>)> = BTreeMap::new();
    for step in &seq.steps {
        let FlipStep::Vertex { vertex, direction } = step else {
            return Err(Error::Anomaly("non-vertex step in monotone sequence".into()));
        };
        let entry = counts.entry(vertex).or_insert((0, None));
        entry.0 += 1;
        match entry.1 {
            None => entry.1 = Some(*direction),
            Some(d) => {
                if d != *direction {
                    return Err(Error::Anomaly(format!(
                        "vertex {vertex:?} is flipped in both directions"
                    )));
                }
            }
        }
    }
    for (i, strict) in poset.strict_interior.iter().enumerate() {
        for name in strict {
            let (count, dir) = counts.remove(name.as_str()).unwrap_or((0, None));
            if count != poset.weight[i] {
                return Err(Error::Anomaly(format!(
                    "vertex {name:?} flipped {count} times, expected {}",
                    poset.weight[i]
                )));
            }
            let expected_dir = match poset.sign[i] {
                Sign::Plus => Some(FlipDirection::SourceToSink),
                Sign::Minus => Some(FlipDirection::SinkToSource),
                Sign::Zero => None,
            };
            if count > 0 && dir != expected_dir {
                return Err(Error::Anomaly(format!(
                    "vertex {name:?} flipped against its cut sign"
                )));
            }
        }
    }
    if let Some((name, _)) = counts.iter().find(|(_, (c, _))| *c > 0) {
        return Err(Error::Anomaly(format!(
            "vertex {name:?} flipped outside every strict interior"
        )));
    }
    Ok(())
}

fn is_uniform_dicut(o: &Orientation, inside: &BTreeSet<usize>, positive: bool) -> bool {
    let g = o.graph();
    for &v in inside {
        for &e in g.edges_at(v) {
            if inside.contains(&g.other_end(e, v)) {
                continue;
            }
            let tail_in = inside.contains(&o.tail(e));
            if tail_in != positive {
                return false;
            }
        }
    }
    true
}

/// Outcome of the monotone construction; `used_fallback` reports that the
/// poset route failed an internal check and the lattice route answered
/// instead.
#[derive(Debug, Clone)]
pub struct MonotoneOutcome {
    pub sequence: FlipSequence,
    pub used_fallback: bool,
    pub anomaly: Option<String>,
}

/// Shortest vertex flip sequence from `x` to `y`, built from the laminar
/// decomposition and cut poset.
pub fn monotone_sequence(x: &Orientation, y: &Orientation) -> Result<MonotoneOutcome> {
    let family = laminar_decompose(x, y)?;
    let poset = build_cut_poset(family, x.graph())?;
    match monotone_sequence_from_poset(x, y, &poset) {
        Ok(sequence) => Ok(MonotoneOutcome {
            sequence,
            used_fallback: false,
            anomaly: None,
        }),
        Err(Error::Anomaly(reason)) => {
            let sequence = meet_route(x, y)?;
            Ok(MonotoneOutcome {
                sequence,
                used_fallback: true,
                anomaly: Some(reason),
            })
        }
        Err(e) => Err(e),
    }
}

/// Minimum number of vertex flips transforming `x` into `y`.
pub fn vertex_flip_distance(x: &Orientation, y: &Orientation) -> Result<usize> {
    Ok(monotone_sequence(x, y)?.sequence.len())
}

/// Independent route: descend from `x` by sink flips to the meet of the
/// two flip-count vectors, then ascend by source flips to `y`. Monotone of
/// length equal to the L1 distance of the embeddings.
pub fn meet_route(x: &Orientation, y: &Orientation) -> Result<FlipSequence> {
    if !same_c(x, y)? {
        return Err(Error::Invalid(
            "orientations are not in a common flip class".into(),
        ));
    }
    let (_, zx) = descend_counting(x)?;
    let (_, zy) = descend_counting(y)?;
    let meet: Vec<i64> = zx
        .iter()
        .zip(&zy)
        .map(|(&a, &b)| a.min(b) as i64)
        .collect();
    let target: Vec<i64> = zy.iter().map(|&b| b as i64).collect();
    let mut cur = x.clone();
    let mut cur_z: Vec<i64> = zx.iter().map(|&a| a as i64).collect();
    let mut steps = Vec::new();
    guided_flips(&mut cur, &mut cur_z, &meet, false, &mut steps)?;
    guided_flips(&mut cur, &mut cur_z, &target, true, &mut steps)?;
    if &cur != y {
        return Err(Error::Anomaly("lattice route did not reach target".into()));
    }
    Ok(FlipSequence { steps })
}

/// The meet (componentwise minimum of embeddings) of two same-class
/// orientations.
pub fn lattice_meet(x: &Orientation, y: &Orientation) -> Result<Orientation> {
    let (_, zx) = descend_counting(x)?;
    let (_, zy) = descend_counting(y)?;
    let meet: Vec<i64> = zx
        .iter()
        .zip(&zy)
        .map(|(&a, &b)| a.min(b) as i64)
        .collect();
    let mut cur = x.clone();
    let mut cur_z: Vec<i64> = zx.iter().map(|&a| a as i64).collect();
    let mut steps = Vec::new();
    guided_flips(&mut cur, &mut cur_z, &meet, false, &mut steps)?;
    Ok(cur)
}

/// The join (componentwise maximum of embeddings) of two same-class
/// orientations.
pub fn lattice_join(x: &Orientation, y: &Orientation) -> Result<Orientation> {
    let (_, zx) = descend_counting(x)?;
    let (_, zy) = descend_counting(y)?;
    let join: Vec<i64> = zx
        .iter()
        .zip(&zy)
        .map(|(&a, &b)| a.max(b) as i64)
        .collect();
    let mut cur = x.clone();
    let mut cur_z: Vec<i64> = zx.iter().map(|&a| a as i64).collect();
    let mut steps = Vec::new();
    guided_flips(&mut cur, &mut cur_z, &join, true, &mut steps)?;
    Ok(cur)
}

/// Repeatedly flips the smallest-named vertex whose count is off target:
/// sources when ascending, sinks when descending.
fn guided_flips(
    cur: &mut Orientation,
    cur_z: &mut [i64],
    target: &[i64],
    ascending: bool,
    steps: &mut Vec<FlipStep>,
) -> Result<()> {
    let g = cur.graph().clone();
    let top = g.require_top()?;
    let order = g.vertices_by_name();
    loop {
        let mut flipped = false;
        for &v in &order {
            if v == top {
                continue;
            }
            let wants = if ascending {
                cur_z[v] < target[v]
            } else {
                cur_z[v] > target[v]
            };
            if !wants {
                continue;
            }
            let legal = if ascending {
                cur.is_source(v)
            } else {
                cur.is_sink(v)
            };
            if !legal {
                continue;
            }
            cur.flip_vertex_unchecked(v);
            cur_z[v] += if ascending { 1 } else { -1 };
            steps.push(FlipStep::Vertex {
                vertex: g.vertex_name(v).to_string(),
                direction: if ascending {
                    FlipDirection::SourceToSink
                } else {
                    FlipDirection::SinkToSource
                },
            });
            flipped = true;
            break;
        }
        if !flipped {
            break;
        }
    }
    let done = (0..g.vertex_count()).all(|v| v == top || cur_z[v] == target[v]);
    if !done {
        return Err(Error::Anomaly(
            "guided flips stalled before reaching the target counts".into(),
        ));
    }
    Ok(())
}

/// Replays `f` from `x`, checking each step's legality; true iff the final
/// orientation equals `y`.
pub fn verify_sequence(x: &Orientation, f: &FlipSequence, y: &Orientation) -> bool {
    matches!(replay(x, f), Ok(end) if &end == y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corient::{vertex_flip, z_embedding};
    use crate::fixtures;

    fn fig7_element(flips: &[&str]) -> Orientation {
        let f = fixtures::fig7();
        let mut cur = f.orientations["bottom"].clone();
        for v in flips {
            cur = vertex_flip(&cur, v).unwrap();
        }
        cur
    }

    fn interior(names: &[&str]) -> BTreeSet<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn decompose_bottom_to_top_is_one_full_cut() {
        let f = fixtures::fig7();
        let family =
            laminar_decompose(&f.orientations["bottom"], &f.orientations["top"]).unwrap();
        assert!(family.laminar);
        assert_eq!(family.cuts.len(), 1);
        assert_eq!(family.cuts[0].interior, interior(&["b", "d", "e", "f"]));
        assert_eq!(family.cuts[0].edges, [0, 6, 7, 8].into_iter().collect());
        assert!(family.cuts[0].positive);
    }

    #[test]
    fn decompose_identity_is_empty() {
        let f = fixtures::fig7();
        let x = &f.orientations["bottom"];
        assert!(laminar_decompose(x, x).unwrap().cuts.is_empty());
    }

    #[test]
    fn decompose_mixed_pair_has_singleton_interiors() {
        let f = fixtures::fig7();
        let family =
            laminar_decompose(&f.orientations["bottom"], &fig7_element(&["e", "d"])).unwrap();
        let interiors: Vec<BTreeSet<String>> =
            family.cuts.iter().map(|c| c.interior.clone()).collect();
        assert_eq!(interiors, vec![interior(&["d", "e"])]);
    }

    #[test]
    fn decompose_incomparable_pair_has_positive_and_negative() {
        let x = fig7_element(&["e", "f"]);
        let y = fig7_element(&["e", "d"]);
        let family = laminar_decompose(&x, &y).unwrap();
        assert_eq!(family.cuts.len(), 2);
        let pos: Vec<_> = family.cuts.iter().filter(|c| c.positive).collect();
        let neg: Vec<_> = family.cuts.iter().filter(|c| !c.positive).collect();
        assert_eq!(pos.len(), 1);
        assert_eq!(neg.len(), 1);
        assert_eq!(pos[0].interior, interior(&["d"]));
        assert_eq!(neg[0].interior, interior(&["f"]));
    }

    #[test]
    fn poset_of_antichain_family() {
        let f = fixtures::fig7();
        let x = fig7_element(&["e", "f"]);
        let y = fig7_element(&["e", "d"]);
        let family = laminar_decompose(&x, &y).unwrap();
        let poset = build_cut_poset(family, &f.graph).unwrap();
        assert!(poset.parent.iter().all(|p| p.is_none()));
        assert!(poset.weight.iter().all(|&w| w == 1));
    }

    #[test]
    fn weight_calculus_on_hand_built_nested_pairs() {
        let f = fixtures::fig7();
        // Disagreeing pair: negative outer covering positive inner.
        let outer = Dicut {
            edges: [0, 6, 7, 8].into_iter().collect(),
            interior: interior(&["b", "d", "e", "f"]),
            positive: false,
        };
        let inner = Dicut {
            edges: [1, 2].into_iter().collect(),
            interior: interior(&["b"]),
            positive: true,
        };
        let family = DicutFamily::verified(vec![inner, outer], &f.graph).unwrap();
        let poset = build_cut_poset(family, &f.graph).unwrap();
        assert_eq!(poset.weight, vec![0, 1]);
        assert_eq!(poset.sign[0], Sign::Zero);
        assert_eq!(poset.sign[1], Sign::Minus);

        // Agreeing pair: both positive.
        let outer = Dicut {
            edges: [0, 6, 7, 8].into_iter().collect(),
            interior: interior(&["b", "d", "e", "f"]),
            positive: true,
        };
        let inner = Dicut {
            edges: [1, 2].into_iter().collect(),
            interior: interior(&["b"]),
            positive: true,
        };
        let family = DicutFamily::verified(vec![inner, outer], &f.graph).unwrap();
        let poset = build_cut_poset(family, &f.graph).unwrap();
        assert_eq!(poset.weight, vec![2, 1]);
        assert_eq!(poset.sign, vec![Sign::Plus, Sign::Plus]);
        assert_eq!(poset.strict_interior[1], interior(&["d", "e", "f"]));
    }

    #[test]
    fn flip_interior_examples() {
        let f = fixtures::fig7();
        let bottom = &f.orientations["bottom"];
        let single = Dicut {
            edges: [2, 4, 5, 6].into_iter().collect(),
            interior: interior(&["e"]),
            positive: true,
        };
        let (seq, end) = flip_interior(bottom, &single).unwrap();
        assert_eq!(seq.len(), 1);
        assert_eq!(end, fig7_element(&["e"]));

        let big = Dicut {
            edges: [0, 6, 7, 8].into_iter().collect(),
            interior: interior(&["b", "d", "e", "f"]),
            positive: true,
        };
        let (seq, end) = flip_interior(bottom, &big).unwrap();
        let names: Vec<String> = seq
            .steps
            .iter()
            .map(|s| match s {
                FlipStep::Vertex { vertex, .. } => vertex.clone(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(names, vec!["e", "d", "f", "b"]);
        assert_eq!(&end, &f.orientations["top"]);

        let bogus = Dicut {
            edges: [1, 7].into_iter().collect(),
            interior: interior(&["d"]),
            positive: true,
        };
        assert!(flip_interior(bottom, &bogus).is_err());
    }

    #[test]
    fn monotone_sequence_bottom_to_top() {
        let f = fixtures::fig7();
        let outcome =
            monotone_sequence(&f.orientations["bottom"], &f.orientations["top"]).unwrap();
        assert!(!outcome.used_fallback);
        assert_eq!(outcome.sequence.len(), 4);
        assert!(verify_sequence(
            &f.orientations["bottom"],
            &outcome.sequence,
            &f.orientations["top"]
        ));
    }

    #[test]
    fn monotone_sequence_identity_is_empty() {
        let f = fixtures::fig7();
        let x = &f.orientations["bottom"];
        assert!(monotone_sequence(x, x).unwrap().sequence.is_empty());
    }

    #[test]
    fn monotone_sequence_incomparable_pair() {
        let x = fig7_element(&["e", "f"]);
        let y = fig7_element(&["e", "d"]);
        let outcome = monotone_sequence(&x, &y).unwrap();
        assert!(!outcome.used_fallback);
        assert_eq!(outcome.sequence.len(), 2);
        assert!(verify_sequence(&x, &outcome.sequence, &y));
    }

    #[test]
    fn distance_examples() {
        let f = fixtures::fig7();
        assert_eq!(
            vertex_flip_distance(&f.orientations["bottom"], &f.orientations["top"]).unwrap(),
            4
        );
        assert_eq!(
            vertex_flip_distance(&fig7_element(&["e"]), &fig7_element(&["e", "d", "f"])).unwrap(),
            2
        );
        let x = &f.orientations["bottom"];
        assert_eq!(vertex_flip_distance(x, x).unwrap(), 0);
    }

    #[test]
    fn cancellation_on_a_disagreeing_family() {
        // From the element above the bottom by flips at e and d, back down
        // to the bottom, but decomposed with a disagreeing nested family
        // rather than the level family: the outer negative top-edge cut
        // covers positive singleton cuts at b and f whose weights cancel to
        // zero.
        let f = fixtures::fig7();
        let x = fig7_element(&["e", "d"]);
        let y = f.orientations["bottom"].clone();
        let cut_b = Dicut {
            edges: [1, 2].into_iter().collect(),
            interior: interior(&["b"]),
            positive: true,
        };
        let cut_f = Dicut {
            edges: [5].into_iter().collect(),
            interior: interior(&["f"]),
            positive: true,
        };
        let cut_top = Dicut {
            edges: [6, 7].into_iter().collect(),
            interior: interior(&["b", "d", "e", "f"]),
            positive: false,
        };
        let family = DicutFamily::verified(vec![cut_b, cut_f, cut_top], &f.graph).unwrap();
        let poset = build_cut_poset(family, &f.graph).unwrap();
        assert_eq!(poset.weight, vec![0, 0, 1]);
        let seq = monotone_sequence_from_poset(&x, &y, &poset).unwrap();
        assert_eq!(seq.len(), 2);
        assert!(verify_sequence(&x, &seq, &y));
        for step in &seq.steps {
            let FlipStep::Vertex { direction, .. } = step else {
                unreachable!()
            };
            assert_eq!(*direction, FlipDirection::SinkToSource);
        }
    }

    #[test]
    fn meet_route_examples() {
        let f = fixtures::fig7();
        let x = fig7_element(&["e", "f"]);
        let y = fig7_element(&["e", "d"]);
        let seq = meet_route(&x, &y).unwrap();
        assert_eq!(seq.len(), 2);
        assert!(verify_sequence(&x, &seq, &y));

        let meet = lattice_meet(&x, &y).unwrap();
        assert_eq!(meet, fig7_element(&["e"]));
        let join = lattice_join(&x, &y).unwrap();
        assert_eq!(join, fig7_element(&["e", "d", "f"]));

        let bottom = &f.orientations["bottom"];
        let up = meet_route(bottom, &f.orientations["top"]).unwrap();
        assert_eq!(up.len(), 4);
        assert!(up.steps.iter().all(|s| matches!(
            s,
            FlipStep::Vertex {
                direction: FlipDirection::SourceToSink,
                ..
            }
        )));
        assert!(meet_route(bottom, bottom).unwrap().is_empty());
    }

    #[test]
    fn lengths_agree_with_embedding_distance() {
        let f = fixtures::fig7();
        let elements: Vec<Orientation> = vec![
            f.orientations["bottom"].clone(),
            fig7_element(&["e"]),
            fig7_element(&["e", "d"]),
            fig7_element(&["e", "f"]),
            fig7_element(&["e", "d", "f"]),
            f.orientations["top"].clone(),
        ];
        for a in &elements {
            for b in &elements {
                let za = z_embedding(a).unwrap();
                let zb = z_embedding(b).unwrap();
                let outcome = monotone_sequence(a, b).unwrap();
                assert!(!outcome.used_fallback);
                assert_eq!(outcome.sequence.len() as u64, za.l1_distance(&zb));
                assert_eq!(meet_route(a, b).unwrap().len(), outcome.sequence.len());
            }
        }
    }

    #[test]
    fn verify_sequence_examples() {
        let f = fixtures::fig7();
        let bottom = &f.orientations["bottom"];
        let good = FlipSequence {
            steps: ["e", "d", "f", "b"]
                .iter()
                .map(|v| FlipStep::Vertex {
                    vertex: v.to_string(),
                    direction: FlipDirection::SourceToSink,
                })
                .collect(),
        };
        assert!(verify_sequence(bottom, &good, &f.orientations["top"]));
        let bad = FlipSequence {
            steps: vec![FlipStep::Vertex {
                vertex: "d".into(),
                direction: FlipDirection::SourceToSink,
            }],
        };
        assert!(!verify_sequence(bottom, &bad, &f.orientations["top"]));
        assert!(verify_sequence(bottom, &FlipSequence::default(), bottom));
    }
}
