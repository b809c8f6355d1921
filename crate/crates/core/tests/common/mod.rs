#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use chroma::bitset::ColorSet;
use chroma::fixtures::basic_family;
use chroma::io::{parse_graph6_lines, to_graph6};
use chroma::{Color, Graph, PartialEdgeColoring};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn corpus_text() -> String {
    std::fs::read_to_string(data("connected_le7.g6")).expect("corpus file")
}

pub fn corpus() -> Vec<Graph> {
    parse_graph6_lines(&corpus_text()).expect("corpus parses")
}

/// The n ≤ 7 corpus followed by the fixture family, as graph6 text.
pub fn full_corpus_text() -> String {
    let mut text = corpus_text();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    for (_, g) in basic_family() {
        text.push_str(&to_graph6(&g).unwrap());
        text.push('\n');
    }
    text
}

/// A greedy proper coloring over a random edge order with `2Δ - 1` colors, which always
/// suffices; optionally one random edge is left uncolored.
pub fn random_coloring(g: &Arc<Graph>, leave_one: bool, rng: &mut impl Rng) -> PartialEdgeColoring {
    let k = (2 * g.max_degree()).saturating_sub(1).max(1);
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.shuffle(rng);
    if leave_one && !order.is_empty() {
        order.pop();
    }
    let mut c = PartialEdgeColoring::uncolored(Arc::clone(g), k).unwrap();
    for id in order {
        let e = g.edge(id);
        let free: Vec<Color> = (c.missing(e.0) & c.missing(e.1)).iter().collect();
        c = c.with_color(e.0, e.1, *free.choose(rng).expect("2Δ - 1 colors suffice")).unwrap();
    }
    c
}

/// Present and missing sets partition the palette at every vertex, and agree with a scan.
pub fn partition_holds(c: &PartialEdgeColoring) -> bool {
    let palette = ColorSet::palette(c.palette_size());
    c.graph().vertices().all(|v| {
        let (p, m) = (c.present(v), c.missing(v));
        p.is_disjoint(m) && (p | m) == palette && p.len() + m.len() == c.palette_size() as usize
    }) && c.bookkeeping_consistent()
}
