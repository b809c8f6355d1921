//! Acceptance criteria AC1 to AC7, one PASS/FAIL line each. Exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use chroma::census::{run_census, CensusConfig};
use chroma::fixtures::{complete, cycle, petersen, petersen_minus_vertex, subdivided_k4};
use chroma::oracle::{self, chromatic_index, Class, OracleConfig};
use chroma::overfull::{is_overfull, theorem1_hypothesis, verify_theorem1, Theorem1Verdict};
use chroma::ColoringError;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let g = petersen_minus_vertex();
    let cfg = OracleConfig::default();
    let critical = oracle::is_delta_critical(&g, &cfg).map_err(|e| e.to_string())?;
    let chi = chromatic_index(&g, &cfg).map_err(|e| e.to_string())?;
    let v = is_overfull(&g).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let facts = (g.vertex_count(), g.max_degree(), g.edge_count(), v.excess);
    ensure(critical, || "not Δ-critical".into())?;
    ensure(chi.class == Class::Two, || format!("χ′ = {}", chi.chi_prime))?;
    ensure(!v.is_overfull, || "overfull".into())?;
    ensure(facts == (9, 3, 12, 0), || format!("(n, Δ, |E|, excess) = {facts:?}"))?;
    ensure(3 * g.max_degree() == g.vertex_count(), || "Δ ≠ n/3".into())?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("n=9 Δ=3 |E|=12 excess=0 critical class2 in {elapsed:?}"))
}

fn ac2() -> Outcome {
    let start = Instant::now();
    let cfg = OracleConfig::default();
    let mut cases: Vec<(String, chroma::Graph, usize)> = Vec::new();
    for k in 1..=4 {
        cases.push((format!("C{}", 2 * k + 1), cycle(2 * k + 1), 3));
    }
    for m in 1..=3 {
        cases.push((format!("K{}", 2 * m), complete(2 * m), 2 * m - 1));
        cases.push((format!("K{}", 2 * m + 1), complete(2 * m + 1), 2 * m + 1));
    }
    cases.push(("Petersen".into(), petersen(), 4));
    for (name, g, want) in &cases {
        let chi = chromatic_index(g, &cfg).map_err(|e| format!("{name}: {e}"))?;
        ensure(chi.chi_prime == *want, || format!("χ′({name}) = {}, expected {want}", chi.chi_prime))?;
        ensure(chi.witness.is_proper() && chi.witness.is_complete(), || format!("{name}: bad witness"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("{} graphs exact in {elapsed:?}", cases.len()))
}

fn ac3() -> Outcome {
    let g = subdivided_k4();
    let h = theorem1_hypothesis(&g).map_err(|e| e.to_string())?;
    let v = is_overfull(&g).map_err(|e| e.to_string())?;
    let critical = oracle::is_delta_critical(&g, &OracleConfig::default()).map_err(|e| e.to_string())?;
    let facts = (g.vertex_count(), g.max_degree(), g.min_degree(), g.edge_count());
    ensure(facts == (5, 3, 2, 7), || format!("(n, Δ, δ, |E|) = {facts:?}"))?;
    ensure(h.holds && h.margin == Ratio::from_integer(0), || format!("margin {}", h.margin))?;
    ensure(critical, || "not Δ-critical".into())?;
    ensure(v.is_overfull && v.excess == 1, || format!("excess {}", v.excess))?;
    Ok("margin=0 critical overfull (7 > 6)".into())
}

fn census_cfg() -> CensusConfig {
    CensusConfig { seed: 7, samples: 100, ..CensusConfig::default() }
}

fn ac4_ac5(corpus: &str) -> (Outcome, Outcome) {
    let start = Instant::now();
    let report = match run_census(corpus, &census_cfg()) {
        Ok(r) => r,
        Err(e) => return (Err(e.to_string()), Err(e.to_string())),
    };
    let elapsed = start.elapsed();
    let s = &report.summary;
    let ac4 = (|| {
        ensure(s.violations == 0, || format!("{} violations", s.violations))?;
        ensure(s.undecided == 0, || format!("{} undecided graphs", s.undecided))?;
        ensure(s.critical > 0, || "no critical graphs".into())?;
        ensure(s.lemmas.values().all(|t| t.is_consistent()), || "inconsistent tally".into())?;
        ensure(elapsed < Duration::from_secs(600), || format!("took {elapsed:?}"))?;
        let tallies: Vec<String> =
            s.lemmas.iter().map(|(k, t)| format!("{k}={}/{}", t.ok, t.inapplicable)).collect();
        Ok(format!(
            "{} graphs, {} critical, 0 violations, {} dead ends in {elapsed:?}; ok/inapplicable {}",
            s.meta.graphs,
            s.critical,
            s.dead_ends,
            tallies.join(" ")
        ))
    })();
    let ac5 = (|| {
        let cfg = OracleConfig::default();
        let mut holds = 0;
        for g in chroma::io::parse_graph6_lines(corpus).map_err(|e| e.to_string())? {
            match verify_theorem1(&g, &cfg) {
                Theorem1Verdict::Holds => holds += 1,
                Theorem1Verdict::Counterexample { graph6 } => return Err(format!("counterexample {graph6}")),
                Theorem1Verdict::Undecided { reason } => return Err(format!("undecided: {reason}")),
                Theorem1Verdict::Inapplicable { .. } => {}
            }
        }
        let census_holds = s.theorem1.get("holds").copied().unwrap_or(0);
        ensure(!s.theorem1.contains_key("counterexample"), || "census counterexample".into())?;
        ensure(holds >= 1 && holds == census_holds, || format!("holds {holds}, census {census_holds}"))?;
        Ok(format!("0 counterexamples, {holds} holds"))
    })();
    (ac4, ac5)
}

fn ac6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let graphs: Vec<Arc<chroma::Graph>> =
        common::corpus().into_iter().filter(|g| g.edge_count() > 0).map(Arc::new).collect();
    let mut ops = 0usize;
    while ops < 10_000 {
        let g = &graphs[rng.gen_range(0..graphs.len())];
        let c = common::random_coloring(g, rng.gen_bool(0.5), &mut rng);
        let k = c.palette_size();
        if k < 2 {
            continue;
        }
        let alpha = rng.gen_range(1..=k);
        let beta = loop {
            let b = rng.gen_range(1..=k);
            if b != alpha {
                break b;
            }
        };
        let n = g.vertex_count();
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        match ops % 3 {
            0 => {
                let once = c.swap_at(x, alpha, beta).map_err(|e| e.to_string())?;
                ensure(once.is_proper() && common::partition_holds(&once), || "swap broke properness".into())?;
                let twice = once.swap_at(x, alpha, beta).map_err(|e| e.to_string())?;
                ensure(twice.colors() == c.colors(), || "swap∘swap ≠ id".into())?;
            }
            1 => {
                let l = c.linked(x, y, alpha, beta).map_err(|e| e.to_string())?;
                let chain = c.kempe_chain(x, alpha, beta).map_err(|e| e.to_string())?;
                ensure(l == (x == y || chain.contains(y)), || "linked disagrees with chain".into())?;
                ensure(l == c.linked(y, x, alpha, beta).unwrap(), || "linked not symmetric".into())?;
            }
            _ => match c.swap_subchain(x, y, alpha, beta) {
                Ok(out) => ensure(out.is_proper() && common::partition_holds(&out), || {
                    "subchain swap broke properness".into()
                })?,
                Err(
                    ColoringError::NotLinked { .. }
                    | ColoringError::NotAPath { .. }
                    | ColoringError::ImproperSubchainSwap { .. },
                ) => {}
                Err(e) => return Err(e.to_string()),
            },
        }
        ensure(common::partition_holds(&c), || "input mutated".into())?;
        ops += 1;
    }
    Ok(format!("{ops} operations"))
}

fn ac7(corpus: &str) -> Outcome {
    let lines = |cfg: &CensusConfig| -> Result<Vec<String>, String> {
        let r = run_census(corpus, cfg).map_err(|e| e.to_string())?;
        Ok(r.records.iter().map(|rec| rec.to_json_line(false)).collect())
    };
    let cfg = CensusConfig { samples: 20, ..census_cfg() };
    let (a, b) = (lines(&cfg)?, lines(&cfg)?);
    ensure(a == b, || "records differ between runs".into())?;
    Ok(format!("{} identical records", a.len()))
}

fn main() -> ExitCode {
    let corpus = common::full_corpus_text();
    let (ac4, ac5) = ac4_ac5(&corpus);
    let results = [
        ("AC1", ac1()),
        ("AC2", ac2()),
        ("AC3", ac3()),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6()),
        ("AC7", ac7(&corpus)),
    ];
    let mut failed = false;
    for (name, r) in results {
        match r {
            Ok(msg) => println!("{name} PASS {msg}"),
            Err(msg) => {
                failed = true;
                println!("{name} FAIL {msg}");
            }
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
