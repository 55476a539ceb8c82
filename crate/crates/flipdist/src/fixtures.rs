//! Built-in example instances used by tests and the CLI: the worked
//! examples from the figure drawings plus small generator inputs.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::alpha::{AlphaSpec, Matching};
use crate::graph::{EdgeSet, Graph, Orientation};
use crate::polytope::PartitionMatroid;
use crate::poset::FinitePoset;
use crate::reductions::reduce_jump_number;

/// A pair of partition matroids with two named common bases.
#[derive(Debug, Clone)]
pub struct MatroidScene {
    pub plus: PartitionMatroid,
    pub minus: PartitionMatroid,
    pub base_a: BTreeSet<String>,
    pub base_b: BTreeSet<String>,
}

/// A named bundle of related objects.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub graph: Graph,
    pub orientations: BTreeMap<String, Orientation>,
    pub alpha: Option<AlphaSpec>,
    pub matchings: BTreeMap<String, Matching>,
    pub matroids: Option<MatroidScene>,
    pub poset: Option<FinitePoset>,
}

impl Fixture {
    fn bare(name: &'static str, graph: Graph) -> Fixture {
        Fixture {
            name,
            graph,
            orientations: BTreeMap::new(),
            alpha: None,
            matchings: BTreeMap::new(),
            matroids: None,
            poset: None,
        }
    }
}

pub const FIXTURE_NAMES: &[&str] = &[
    "fig2", "fig3", "fig4", "fig6", "fig7", "k4ham", "prism", "z5circ", "z6circ", "chain2",
];

pub fn by_name(name: &str) -> Option<Fixture> {
    match name {
        "fig2" => Some(fig2()),
        "fig3" => Some(fig3()),
        "fig4" => Some(fig4()),
        "fig6" => Some(fig6()),
        "fig7" => Some(fig7()),
        "k4ham" => Some(k4ham()),
        "prism" => Some(prism()),
        "z5circ" => Some(z5circ()),
        "z6circ" => Some(z6circ()),
        "chain2" => Some(chain2()),
        _ => None,
    }
}

fn build_graph(vertices: &[&str], edges: &[(&str, &str)], top: Option<&str>) -> Graph {
    Graph::new(
        vertices.iter().map(|s| s.to_string()).collect(),
        edges
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        top.map(|s| s.to_string()),
    )
    .expect("fixture graph is valid")
}

fn orient(graph: &Arc<Graph>, tails: &[&str]) -> Orientation {
    Orientation::from_tail_names(Arc::clone(graph), tails).expect("fixture orientation is valid")
}

/// The ten-vertex thirteen-edge graph with its prescribed outdegrees and
/// the two orientations differing by one six-cycle flip.
pub fn fig2() -> Fixture {
    let graph = build_graph(
        &["a", "b", "c", "d", "e", "f", "g", "h", "j", "k"],
        &[
            ("a", "b"), // 0
            ("b", "d"), // 1
            ("c", "a"), // 2
            ("g", "d"), // 3
            ("j", "f"), // 4
            ("d", "h"), // 5
            ("h", "k"), // 6
            ("e", "c"), // 7
            ("c", "f"), // 8
            ("f", "g"), // 9
            ("g", "k"), // 10
            ("k", "j"), // 11
            ("j", "e"), // 12
        ],
        None,
    );
    let shared = Arc::new(graph.clone());
    let left = orient(
        &shared,
        &["a", "b", "c", "g", "j", "d", "h", "e", "c", "f", "g", "k", "j"],
    );
    let right = orient(
        &shared,
        &["a", "b", "c", "g", "j", "d", "h", "c", "f", "g", "k", "j", "e"],
    );
    let alpha = AlphaSpec::new(
        [
            ("a", 1),
            ("b", 1),
            ("c", 2),
            ("d", 1),
            ("e", 1),
            ("f", 1),
            ("g", 2),
            ("h", 1),
            ("j", 2),
            ("k", 1),
        ]
        .into_iter()
        .map(|(v, x)| (v.to_string(), x))
        .collect(),
    );
    let v1: BTreeSet<String> = ["a", "d", "e", "f", "k"].iter().map(|s| s.to_string()).collect();
    let v2: BTreeSet<String> = ["b", "c", "g", "h", "j"].iter().map(|s| s.to_string()).collect();
    let matched: EdgeSet = [0, 5, 7, 9, 11].into_iter().collect();
    let matching = Matching::new(Arc::clone(&shared), v1, v2, matched).expect("fixture matching");
    let mut fixture = Fixture::bare("fig2", graph);
    fixture.orientations.insert("left".into(), left);
    fixture.orientations.insert("right".into(), right);
    fixture.alpha = Some(alpha);
    fixture.matchings.insert("fig4".into(), matching);
    fixture
}

/// The matching form of the same instance.
pub fn fig4() -> Fixture {
    let mut f = fig2();
    f.name = "fig4";
    f
}

/// The twenty-vertex separation instance: reaching the four-cycle flip of
/// the C blocks is cheaper through three larger cycles.
pub fn fig3() -> Fixture {
    let graph = build_graph(
        &[
            "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n", "o", "p", "q",
            "r", "s", "t",
        ],
        &[
            ("a", "b"), // 0
            ("e", "f"), // 1
            ("i", "j"), // 2
            ("m", "n"), // 3
            ("q", "r"), // 4
            ("b", "c"), // 5
            ("c", "e"), // 6
            ("e", "d"), // 7
            ("d", "b"), // 8
            ("f", "g"), // 9
            ("g", "i"), // 10
            ("i", "h"), // 11
            ("h", "f"), // 12
            ("j", "k"), // 13
            ("k", "m"), // 14
            ("m", "l"), // 15
            ("l", "j"), // 16
            ("n", "o"), // 17
            ("o", "q"), // 18
            ("q", "p"), // 19
            ("p", "n"), // 20
            ("r", "s"), // 21
            ("s", "a"), // 22
            ("a", "t"), // 23
            ("t", "r"), // 24
        ],
        None,
    );
    let shared = Arc::new(graph.clone());
    let x = orient(
        &shared,
        &[
            "a", "e", "i", "m", "q", "b", "c", "e", "d", "f", "g", "i", "h", "j", "k", "m", "l",
            "n", "o", "q", "p", "r", "s", "a", "t",
        ],
    );
    let y = orient(
        &shared,
        &[
            "a", "e", "i", "m", "q", "c", "e", "d", "b", "g", "i", "h", "f", "k", "m", "l", "j",
            "o", "q", "p", "n", "r", "s", "a", "t",
        ],
    );
    let alpha = AlphaSpec::new(
        graph
            .vertex_names()
            .iter()
            .map(|v| {
                let out = match v.as_str() {
                    "a" | "e" | "i" | "m" | "q" => 2,
                    _ => 1,
                };
                (v.clone(), out)
            })
            .collect(),
    );
    let mut fixture = Fixture::bare("fig3", graph);
    fixture.orientations.insert("x".into(), x);
    fixture.orientations.insert("y".into(), y);
    fixture.alpha = Some(alpha);
    fixture
}

/// The labeled matroid pair over the fig2 edges with bases A and B.
pub fn fig6() -> Fixture {
    // Element labels: 1..8 as drawn, 9..13 for the remaining edges.
    // 1={a,c} 2={a,b} 3={b,d} 4={d,g} 5={f,g} 6={c,f} 7={e,j} 8={h,k}
    // 9={c,e} 10={f,j} 11={g,k} 12={d,h} 13={j,k}
    let one_side = [
        ("1", "a"),
        ("2", "a"),
        ("3", "d"),
        ("4", "d"),
        ("5", "f"),
        ("6", "f"),
        ("7", "e"),
        ("8", "k"),
        ("9", "e"),
        ("10", "f"),
        ("11", "k"),
        ("12", "d"),
        ("13", "k"),
    ];
    let other_side = [
        ("1", "c"),
        ("2", "b"),
        ("3", "b"),
        ("4", "g"),
        ("5", "g"),
        ("6", "c"),
        ("7", "j"),
        ("8", "h"),
        ("9", "c"),
        ("10", "j"),
        ("11", "g"),
        ("12", "h"),
        ("13", "j"),
    ];
    let ground: Vec<String> = (1..=13).map(|i| i.to_string()).collect();
    let to_classes = |pairs: &[(&str, &str)]| -> BTreeMap<String, String> {
        pairs
            .iter()
            .map(|(e, c)| (e.to_string(), c.to_string()))
            .collect()
    };
    let caps = |classes: &BTreeMap<String, String>| -> BTreeMap<String, u32> {
        classes.values().map(|c| (c.clone(), 1)).collect()
    };
    let classes_plus = to_classes(&one_side);
    let classes_minus = to_classes(&other_side);
    let plus = PartitionMatroid::new(ground.clone(), classes_plus.clone(), caps(&classes_plus))
        .expect("fixture matroid");
    let minus = PartitionMatroid::new(ground, classes_minus.clone(), caps(&classes_minus))
        .expect("fixture matroid");
    let base_a = ["1", "3", "5", "7", "8"].iter().map(|s| s.to_string()).collect();
    let base_b = ["2", "4", "6", "7", "8"].iter().map(|s| s.to_string()).collect();
    let mut fixture = fig2();
    fixture.name = "fig6";
    fixture.matroids = Some(MatroidScene {
        plus,
        minus,
        base_a,
        base_b,
    });
    fixture
}

/// The five-vertex lattice example: bottom and top of its six-element
/// flip lattice.
pub fn fig7() -> Fixture {
    let graph = build_graph(
        &["b", "d", "e", "f", "T"],
        &[
            ("b", "T"), // 0
            ("d", "b"), // 1
            ("e", "b"), // 2
            ("f", "b"), // 3
            ("e", "d"), // 4
            ("e", "f"), // 5
            ("e", "T"), // 6
            ("d", "T"), // 7
            ("f", "T"), // 8
        ],
        Some("T"),
    );
    let shared = Arc::new(graph.clone());
    let bottom = orient(&shared, &["b", "d", "e", "f", "e", "e", "e", "d", "f"]);
    let top = orient(&shared, &["T", "d", "e", "f", "e", "e", "T", "T", "T"]);
    let mut fixture = Fixture::bare("fig7", graph);
    fixture.orientations.insert("bottom".into(), bottom);
    fixture.orientations.insert("top".into(), top);
    fixture
}

/// Oriented complete graph on four vertices: the directed four-cycle plus
/// two chords; Hamiltonian.
pub fn k4ham() -> Fixture {
    let graph = build_graph(
        &["1", "2", "3", "4"],
        &[
            ("1", "2"),
            ("2", "3"),
            ("3", "4"),
            ("4", "1"),
            ("1", "3"),
            ("2", "4"),
        ],
        None,
    );
    let shared = Arc::new(graph.clone());
    let d = orient(&shared, &["1", "2", "3", "4", "1", "2"]);
    let mut fixture = Fixture::bare("k4ham", graph);
    fixture.orientations.insert("d".into(), d);
    fixture
}

/// Two directed triangles with all cross arcs pointing the same way; no
/// directed Hamiltonian cycle.
pub fn prism() -> Fixture {
    let graph = build_graph(
        &["a1", "a2", "a3", "b1", "b2", "b3"],
        &[
            ("a1", "a2"),
            ("a2", "a3"),
            ("a3", "a1"),
            ("b1", "b2"),
            ("b2", "b3"),
            ("b3", "b1"),
            ("a1", "b1"),
            ("a2", "b2"),
            ("a3", "b3"),
        ],
        None,
    );
    let shared = Arc::new(graph.clone());
    let d = orient(&shared, &["a1", "a2", "a3", "b1", "b2", "b3", "a1", "a2", "a3"]);
    let mut fixture = Fixture::bare("prism", graph);
    fixture.orientations.insert("d".into(), d);
    fixture
}

fn circulant(name: &'static str, n: usize) -> Fixture {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut edges = Vec::new();
    for step in [1usize, 2] {
        for i in 0..n {
            edges.push((names[i].clone(), names[(i + step) % n].clone()));
        }
    }
    let graph = Graph::new(names.clone(), edges, None).expect("fixture graph");
    let shared = Arc::new(graph.clone());
    let tails: Vec<&str> = (0..2 * n).map(|e| names[e % n].as_str()).collect();
    let d = Orientation::from_tail_names(Arc::clone(&shared), &tails).expect("fixture orientation");
    let mut fixture = Fixture::bare(name, graph);
    fixture.orientations.insert("d".into(), d);
    fixture
}

/// Circulant on five vertices with steps one and two; both arc families
/// are directed Hamiltonian cycles.
pub fn z5circ() -> Fixture {
    circulant("z5circ", 5)
}

/// Circulant on six vertices with steps one and two; admits no
/// decomposition into two directed Hamiltonian cycles.
pub fn z6circ() -> Fixture {
    circulant("z6circ", 6)
}

/// The two-element chain and its jump-number reduction instance.
pub fn chain2() -> Fixture {
    let poset = FinitePoset::new(
        vec!["a".into(), "b".into()],
        vec![("a".into(), "b".into())],
    )
    .expect("fixture poset");
    let r = reduce_jump_number(&poset).expect("fixture reduction");
    let mut fixture = Fixture::bare("chain2", r.x.graph().as_ref().clone());
    fixture.orientations.insert("x".into(), r.x);
    fixture.orientations.insert("y".into(), r.y);
    fixture.poset = Some(poset);
    fixture
}
