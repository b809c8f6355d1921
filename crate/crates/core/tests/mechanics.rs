mod common;

use std::sync::Arc;

use chroma::fixtures::{basic_family, petersen};
use chroma::io::{parse_graph6, to_graph6};
use chroma::structures::canonical::canonical_conditions;
use chroma::structures::kierstead::kierstead_paths;
use chroma::structures::{canonicalize_k5_path, CanonicalOutcome};
use chroma::{ColoringError, Graph, PartialEdgeColoring, SwapScript};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{partition_holds, random_coloring};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
            Graph::new(n, pairs.iter().zip(&mask).filter(|(_, &m)| m).map(|(&p, _)| p)).unwrap()
        })
    })
}

fn arb_colored(max_n: usize) -> impl Strategy<Value = (PartialEdgeColoring, u64)> {
    (arb_graph(max_n), any::<u64>()).prop_filter_map("needs an edge", |(g, seed)| {
        (g.edge_count() > 0).then(|| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (random_coloring(&Arc::new(g), seed % 2 == 0, &mut rng), seed)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trips(g in arb_graph(12)) {
        let text = to_graph6(&g).unwrap();
        let back = parse_graph6(&text).unwrap();
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(to_graph6(&back).unwrap(), text);
    }

    #[test]
    fn swap_at_is_an_involution((c, seed) in arb_colored(9)) {
        prop_assert!(c.is_proper());
        prop_assert!(partition_holds(&c));
        let k = c.palette_size();
        let alpha = (seed % k as u64) as u8 + 1;
        let beta = (alpha % k) + 1;
        prop_assume!(alpha != beta);
        for x in c.graph().vertices() {
            let once = c.swap_at(x, alpha, beta).unwrap();
            prop_assert!(once.is_proper());
            prop_assert!(partition_holds(&once));
            let twice = once.swap_at(x, alpha, beta).unwrap();
            prop_assert_eq!(twice.colors(), c.colors());
        }
    }

    #[test]
    fn chains_partition_two_colored_edges((c, seed) in arb_colored(9)) {
        let k = c.palette_size();
        let alpha = (seed % k as u64) as u8 + 1;
        let beta = ((seed / 7) % k as u64) as u8 + 1;
        prop_assume!(alpha != beta);
        let mut owner = vec![None; c.graph().edge_count()];
        for x in c.graph().vertices() {
            let chain = c.kempe_chain(x, alpha, beta).unwrap();
            prop_assert!(chain.contains(x));
            for &id in chain.edges() {
                let col = c.color(id).unwrap();
                prop_assert!(col == alpha || col == beta);
                match owner[id] {
                    None => owner[id] = Some(chain.vertices().to_vec()),
                    Some(ref vs) => {
                        let mut a = vs.clone();
                        let mut b = chain.vertices().to_vec();
                        a.sort_unstable();
                        b.sort_unstable();
                        prop_assert_eq!(a, b);
                    }
                }
            }
        }
        for (id, o) in owner.iter().enumerate() {
            let col = c.color(id);
            prop_assert_eq!(o.is_some(), col == Some(alpha) || col == Some(beta));
        }
    }

    #[test]
    fn linked_is_symmetric((c, seed) in arb_colored(9)) {
        let k = c.palette_size();
        let alpha = (seed % k as u64) as u8 + 1;
        let beta = (alpha % k) + 1;
        prop_assume!(alpha != beta);
        for x in c.graph().vertices() {
            for y in c.graph().vertices() {
                prop_assert_eq!(c.linked(x, y, alpha, beta).unwrap(), c.linked(y, x, alpha, beta).unwrap());
            }
        }
    }

    #[test]
    fn subchain_swaps_are_proper_or_refused((c, seed) in arb_colored(9)) {
        let k = c.palette_size();
        let alpha = (seed % k as u64) as u8 + 1;
        let beta = (alpha % k) + 1;
        prop_assume!(alpha != beta);
        let n = c.graph().vertex_count();
        let x = (seed as usize / 3) % n;
        let y = (seed as usize / 11) % n;
        match c.swap_subchain(x, y, alpha, beta) {
            Ok(out) => {
                prop_assert!(out.is_proper());
                prop_assert!(partition_holds(&out));
                prop_assert!(c.linked(x, y, alpha, beta).unwrap());
            }
            Err(ColoringError::NotLinked { .. }) => prop_assert!(!c.linked(x, y, alpha, beta).unwrap()),
            Err(ColoringError::NotAPath { .. } | ColoringError::ImproperSubchainSwap { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
        prop_assert!(partition_holds(&c));
    }

    #[test]
    fn recoloring_keeps_bookkeeping((c, seed) in arb_colored(8)) {
        let g = c.graph_arc().clone();
        let id = seed as usize % g.edge_count();
        let e = g.edge(id);
        if let Some(col) = c.color(id) {
            let bare = c.without_color(e.0, e.1).unwrap();
            prop_assert!(partition_holds(&bare));
            let again = bare.with_color(e.0, e.1, col).unwrap();
            prop_assert_eq!(again.colors(), c.colors());
        }
    }
}

#[test]
fn matrix_script_passes_through_an_improper_state() {
    // a=0 b=1 u=2 s=3 w=4; ab uncolored
    let g = Arc::new(Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 1)]).unwrap());
    let c = PartialEdgeColoring::from_triples(Arc::clone(&g), 3, &[(1, 2, 1), (2, 3, 2), (3, 4, 1), (4, 1, 3)]).unwrap();
    assert!(c.is_proper());
    assert!(matches!(
        c.swap_subchain(3, 1, 1, 3),
        Err(ColoringError::ImproperSubchainSwap { .. })
    ));
    let script = SwapScript::new().swap_subchain(3, 1, 1, 3).recolor(2, 3, 2, 1).recolor(1, 2, 1, 2).color(0, 1, 3);
    let run = c.apply_script(&script).unwrap();
    assert_eq!(run.transcript.len(), 4);
    assert!(run.coloring.is_proper());
    assert!(run.coloring.is_complete());
    assert_eq!(run.coloring.color_of(0, 1), Some(3));
    assert_eq!(run.coloring.color_of(1, 2), Some(2));
    assert_eq!(run.coloring.color_of(2, 3), Some(1));
    // the input is untouched
    assert_eq!(c.color_of(0, 1), None);
}

#[test]
fn scripts_that_end_improper_are_rejected() {
    let g = Arc::new(Graph::new(3, [(0, 1), (1, 2)]).unwrap());
    let c = PartialEdgeColoring::from_triples(Arc::clone(&g), 2, &[(0, 1, 1), (1, 2, 2)]).unwrap();
    let err = c.apply_script(&SwapScript::new().recolor(1, 2, 2, 1)).unwrap_err();
    assert_eq!(err.index, 1);
}

/// Canonical outcomes on random near-colorings satisfy the conditions they claim, and the
/// recorded script reproduces them.
#[test]
fn canonicalizer_outcomes_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut graphs: Vec<Graph> = basic_family().into_iter().map(|(_, g)| g).collect();
    graphs.push(petersen());
    let mut canonical = 0;
    for g in graphs {
        let g = Arc::new(g);
        for _ in 0..20 {
            let c = random_coloring(&g, true, &mut rng);
            let Some(e) = c.uncolored_edge() else { continue };
            for (a, b) in [(e.0, e.1), (e.1, e.0)] {
                for k in kierstead_paths(&c, a, b, 5) {
                    match canonicalize_k5_path(&c, &k).unwrap() {
                        CanonicalOutcome::Canonical { coloring, script, .. } => {
                            canonical += 1;
                            assert!(coloring.is_proper());
                            assert_eq!(coloring.uncolored_edge(), Some(e));
                            assert!(canonical_conditions(&coloring, &k).is_ok());
                            let replay = c.apply_script(&script).unwrap().coloring;
                            assert_eq!(replay.colors(), coloring.colors());
                        }
                        CanonicalOutcome::Inapplicable { .. } | CanonicalOutcome::DeadEnd { .. } => {}
                    }
                }
            }
        }
    }
    assert!(canonical > 0);
}
