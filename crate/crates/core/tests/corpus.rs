mod common;

use chroma::fixtures::cycle;
use chroma::oracle::{self, chromatic_index, Class, OracleConfig};
use chroma::overfull::is_overfull;
use chroma::structures::check_val;

#[test]
fn chromatic_index_is_delta_or_delta_plus_one() {
    let cfg = OracleConfig::default();
    for g in common::corpus().iter().filter(|g| g.edge_count() > 0) {
        let chi = chromatic_index(g, &cfg).unwrap();
        assert!(chi.chi_prime == g.max_degree() || chi.chi_prime == g.max_degree() + 1);
        assert_eq!(chi.class == Class::Two, chi.chi_prime > g.max_degree());
        assert!(chi.witness.is_proper() && chi.witness.is_complete());
        assert!(chi.witness.colors().iter().all(|&c| (1..=chi.chi_prime as u8).contains(&c)));
        if is_overfull(g).unwrap().is_overfull {
            assert_eq!(chi.class, Class::Two);
        }
    }
}

#[test]
fn deleting_an_edge_never_raises_the_index() {
    let cfg = OracleConfig::default();
    for g in common::corpus().iter().step_by(7).filter(|g| g.edge_count() > 1) {
        let chi = chromatic_index(g, &cfg).unwrap().chi_prime;
        for e in g.edges() {
            let h = g.without_edge(e.0, e.1).unwrap();
            assert!(chromatic_index(&h, &cfg).unwrap().chi_prime <= chi);
        }
    }
}

#[test]
fn critical_graphs_are_connected_and_satisfy_val() {
    let cfg = OracleConfig::default();
    let mut critical = 0;
    for g in common::corpus() {
        if !oracle::is_delta_critical(&g, &cfg).unwrap() {
            continue;
        }
        critical += 1;
        assert!(g.is_connected());
        for e in g.edges() {
            assert!(check_val(&g, e.0, e.1).unwrap().is_ok());
            assert!(check_val(&g, e.1, e.0).unwrap().is_ok());
        }
    }
    assert!(critical > 0);
}

#[test]
fn odd_cycles_are_critical_and_even_ones_are_not() {
    let cfg = OracleConfig::default();
    for n in 3..=11 {
        assert_eq!(oracle::is_delta_critical(&cycle(n), &cfg).unwrap(), n % 2 == 1, "C{n}");
    }
}
