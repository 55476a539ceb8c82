//! DOT emission with canonical node and edge order, so outputs diff
//! cleanly. Layout is left to external tools.

use crate::corient::ZVector;
use crate::graph::{Graph, Orientation};

/// Hasse diagram of an enumerated lattice, nodes labeled by their
/// flip-count vectors and grouped by total count.
pub fn lattice_dot(elements: &[Orientation], covers: &[(usize, usize)], z: &[ZVector]) -> String {
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, zv) in z.iter().enumerate() {
        let label: Vec<String> = zv
            .counts
            .iter()
            .map(|(v, c)| format!("{v}={c}"))
            .collect();
        out.push_str(&format!("  n{i} [label=\"{}\"];\n", label.join(",")));
        let _ = &elements[i];
    }
    let mut ranks: Vec<(u32, usize)> = z
        .iter()
        .enumerate()
        .map(|(i, zv)| (zv.counts.values().sum::<u32>(), i))
        .collect();
    ranks.sort_unstable();
    let mut level = None;
    let mut group: Vec<usize> = Vec::new();
    let flush = |group: &mut Vec<usize>, out: &mut String| {
        if group.len() > 1 {
            let names: Vec<String> = group.iter().map(|i| format!("n{i}")).collect();
            out.push_str(&format!("  {{ rank=same; {}; }}\n", names.join("; ")));
        }
        group.clear();
    };
    for (r, i) in ranks {
        if level != Some(r) {
            flush(&mut group, &mut out);
            level = Some(r);
        }
        group.push(i);
    }
    flush(&mut group, &mut out);
    let mut sorted = covers.to_vec();
    sorted.sort_unstable();
    for (a, b) in sorted {
        out.push_str(&format!("  n{a} -> n{b};\n"));
    }
    out.push_str("}\n");
    out
}

/// Undirected flip graph over enumerated states.
pub fn flip_graph_dot(labels: &[String], edges: &[(usize, usize)]) -> String {
    let mut out = String::from("graph flips {\n  node [shape=box];\n");
    for (i, label) in labels.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{label}\"];\n"));
    }
    let mut sorted: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    sorted.sort_unstable();
    sorted.dedup();
    for (a, b) in sorted {
        out.push_str(&format!("  n{a} -- n{b};\n"));
    }
    out.push_str("}\n");
    out
}

/// The underlying graph with its orientation, arrows tail to head.
pub fn orientation_dot(o: &Orientation) -> String {
    let g: &Graph = o.graph();
    let mut out = String::from("digraph orientation {\n");
    for v in g.vertex_names() {
        let marker = if g.top_name() == Some(v.as_str()) {
            " [shape=doublecircle]"
        } else {
            ""
        };
        out.push_str(&format!("  \"{v}\"{marker};\n"));
    }
    for e in 0..g.edge_count() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{e}\"];\n",
            g.vertex_name(o.tail(e)),
            g.vertex_name(o.head(e))
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corient::{enumerate_lattice, z_embedding};
    use crate::fixtures;

    #[test]
    fn lattice_dot_is_stable_and_complete() {
        let f = fixtures::fig7();
        let (elements, covers) = enumerate_lattice(&f.orientations["bottom"], 100).unwrap();
        let z: Vec<_> = elements.iter().map(|o| z_embedding(o).unwrap()).collect();
        let a = lattice_dot(&elements, &covers, &z);
        let b = lattice_dot(&elements, &covers, &z);
        assert_eq!(a, b);
        assert_eq!(a.matches(" -> ").count(), 6);
        assert_eq!(a.matches("label=").count(), 6);
    }
}
