//! Named graphs used as fixtures and by `chroma gen-basic`.

use crate::graph::Graph;

pub fn cycle(n: usize) -> Graph {
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle on at least 3 vertices")
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("n <= 64")
}

pub fn star(leaves: usize) -> Graph {
    Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("n <= 64")
}

/// Outer 5-cycle `0..5`, spokes `i -- i+5`, inner pentagram on `5..10`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::new(10, outer.chain(spokes).chain(inner)).unwrap()
}

pub fn petersen_minus_vertex() -> Graph {
    petersen().without_vertex(0).unwrap()
}

/// K4 on `0..4` with the edge `01` replaced by the path `0-4-1`.
pub fn subdivided_k4() -> Graph {
    Graph::new(5, [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (4, 1)]).unwrap()
}

/// The fixture family: odd cycles up to C9, K2..K7, Petersen, Petersen minus a vertex and the
/// subdivided K4, each with a display name.
pub fn basic_family() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = [3, 5, 7, 9]
        .into_iter()
        .map(|n| (format!("C{n}"), cycle(n)))
        .collect();
    out.extend((2..=7).map(|n| (format!("K{n}"), complete(n))));
    out.push(("petersen".into(), petersen()));
    out.push(("petersen-minus-vertex".into(), petersen_minus_vertex()));
    out.push(("subdivided-K4".into(), subdivided_k4()));
    out
}
