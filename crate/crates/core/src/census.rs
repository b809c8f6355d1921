//! Batch census: classify every graph of a corpus, and on Δ-critical graphs run every structural
//! checker over sampled colorings of `G - e`.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::coloring::{ColoringJson, PartialEdgeColoring};
use crate::graph::{Edge, Graph};
use crate::io::{parse_graph6, to_graph6, FormatError};
use crate::oracle::{self, Class, OracleConfig, OracleError};
use crate::overfull::{self, OverfullVerdict, Theorem1Verdict};
use crate::structures::canonical::{canonical_conditions, canonical_exists, check_k5_degrees};
use crate::structures::forklike::{fork_hypothesis_possible, validate_fork, validate_kite, validate_shortkite};
use crate::structures::kierstead::{kierstead_paths, validate_kierstead4};
use crate::structures::multifan::{check_fan_linked, validate_fan_linkage};
use crate::structures::{
    alpha_decompose, canonicalize_k5_path, check_degree_dichotomy, check_degree_dichotomy_colors,
    check_val, find_forklike, grow_multifan, CanonicalOutcome, ForkKind, StructureError, Verdict,
};

/// Tally names in report order.
pub const LEMMAS: [&str; 15] = [
    "val",
    "multifan_elementary",
    "multifan_linked",
    "fan_linkage_distinct",
    "fan_linkage_same",
    "kierstead4_elementary",
    "kierstead4_bound",
    "degree_dichotomy",
    "degree_dichotomy_colors",
    "fork",
    "short_kite",
    "kite",
    "k5_canonical",
    "k5_degrees",
    "parity",
];

/// Environment variable capping the worker pool.
pub const THREADS_ENV: &str = "CHROMA_THREADS";

#[derive(Debug, Clone)]
pub struct CensusConfig {
    pub seed: u64,
    /// Sampled colorings of `G - e` per critical edge.
    pub samples: usize,
    /// Budget for each oracle decision.
    pub timeout: Duration,
    pub witness_dir: Option<PathBuf>,
}

impl Default for CensusConfig {
    fn default() -> Self {
        Self { seed: 0, samples: 100, timeout: Duration::from_secs(10), witness_dir: None }
    }
}

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("samples must be at least 1")]
    NoSamples,
    #[error("timeout must be positive")]
    NoTimeout,
    #[error("corpus line {line}: {source}")]
    Corpus { line: usize, source: FormatError },
    #[error("witness output: {0}")]
    Io(#[from] std::io::Error),
    #[error("thread pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checked: u64,
    pub ok: u64,
    pub inapplicable: u64,
    pub violations: u64,
}

impl Tally {
    pub fn record(&mut self, v: &Verdict) {
        self.checked += 1;
        match v {
            Verdict::Ok => self.ok += 1,
            Verdict::Inapplicable { .. } => self.inapplicable += 1,
            Verdict::Violation { .. } => self.violations += 1,
        }
    }

    pub fn add(&mut self, other: &Tally) {
        self.checked += other.checked;
        self.ok += other.ok;
        self.inapplicable += other.inapplicable;
        self.violations += other.violations;
    }

    pub fn is_consistent(&self) -> bool {
        self.checked == self.ok + self.inapplicable + self.violations
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub graph6: String,
    pub edge: Option<[usize; 2]>,
    pub coloring: Option<ColoringJson>,
    pub lemma: String,
    pub detail: String,
}

impl Witness {
    /// File name derived from the content, so reruns overwrite rather than duplicate.
    pub fn file_name(&self) -> String {
        let json = serde_json::to_string(self).expect("serializable");
        format!("{}.json", &hex::encode(Sha256::digest(json.as_bytes()))[..16])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphRecord {
    pub graph6: String,
    pub n: usize,
    pub max_degree: usize,
    pub min_degree: usize,
    pub edges: usize,
    pub chi_prime: Option<usize>,
    pub class: Option<Class>,
    /// `decided`, `edgeless`, `timeout` (classification), or `sample-timeout`.
    pub status: String,
    pub is_critical: Option<bool>,
    pub overfull: Option<OverfullVerdict>,
    pub theorem1: Theorem1Verdict,
    pub lemmas: BTreeMap<String, Tally>,
    /// Runs of the 5-vertex normal form procedure that stopped without (i)–(iii).
    pub dead_ends: u64,
    pub witnesses: Vec<Witness>,
    pub timing_ms: u64,
}

impl GraphRecord {
    pub fn violations(&self) -> u64 {
        self.lemmas.values().map(|t| t.violations).sum()
    }

    /// One JSON line; `timing_ms` is dropped when `with_timing` is false.
    pub fn to_json_line(&self, with_timing: bool) -> String {
        let mut value = serde_json::to_value(self).expect("serializable");
        if !with_timing {
            value.as_object_mut().expect("object").remove("timing_ms");
        }
        value.to_string()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub seed: u64,
    pub samples: usize,
    pub timeout_ms: u64,
    pub corpus_sha256: String,
    pub graphs: usize,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub meta: Meta,
    pub critical: usize,
    pub undecided: usize,
    pub violations: u64,
    pub dead_ends: u64,
    pub theorem1: BTreeMap<String, usize>,
    pub lemmas: BTreeMap<String, Tally>,
}

#[derive(Debug, Clone)]
pub struct CensusReport {
    pub records: Vec<GraphRecord>,
    pub summary: Summary,
}

impl CensusReport {
    pub fn write_jsonl(&self, mut out: impl Write) -> std::io::Result<()> {
        for r in &self.records {
            writeln!(out, "{}", r.to_json_line(true))?;
        }
        writeln!(out, "{}", serde_json::json!({ "summary": self.summary }))
    }

    /// One row per graph with flattened tallies.
    pub fn write_csv(&self, out: impl Write) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<String> = [
            "graph6", "n", "max_degree", "min_degree", "edges", "chi_prime", "class", "status",
            "is_critical", "is_overfull", "excess", "hypothesis_margin", "theorem1",
        ]
        .map(String::from)
        .to_vec();
        for lemma in LEMMAS {
            for field in ["checked", "ok", "inapplicable", "violations"] {
                header.push(format!("{lemma}_{field}"));
            }
        }
        header.extend(["dead_ends".into(), "timing_ms".into()]);
        w.write_record(&header)?;
        let opt = |x: Option<String>| x.unwrap_or_default();
        for r in &self.records {
            let mut row = vec![
                r.graph6.clone(),
                r.n.to_string(),
                r.max_degree.to_string(),
                r.min_degree.to_string(),
                r.edges.to_string(),
                opt(r.chi_prime.map(|c| c.to_string())),
                opt(r.class.map(|c| match c {
                    Class::One => "class1".into(),
                    Class::Two => "class2".into(),
                })),
                r.status.clone(),
                opt(r.is_critical.map(|c| c.to_string())),
                opt(r.overfull.as_ref().map(|o| o.is_overfull.to_string())),
                opt(r.overfull.as_ref().map(|o| o.excess.to_string())),
                opt(r.overfull.as_ref().map(|o| o.hypothesis_margin.to_string())),
                r.theorem1.label().into(),
            ];
            for lemma in LEMMAS {
                let t = r.lemmas.get(lemma).copied().unwrap_or_default();
                row.extend([t.checked, t.ok, t.inapplicable, t.violations].map(|x| x.to_string()));
            }
            row.extend([r.dead_ends.to_string(), r.timing_ms.to_string()]);
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Parses a graph6 corpus, skipping blank lines and the optional header.
pub fn parse_corpus(text: &str) -> Result<Vec<(String, Graph)>, CensusError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let g = parse_graph6(line).map_err(|source| CensusError::Corpus { line: i + 1, source })?;
        let canonical = to_graph6(&g).map_err(|source| CensusError::Corpus { line: i + 1, source })?;
        out.push((canonical, g));
    }
    Ok(out)
}

pub fn corpus_sha256(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Seed for the samples of one edge: the first 8 bytes of `sha256("{seed}:{graph6}:{u}-{v}")`.
pub fn edge_seed(seed: u64, graph6: &str, e: Edge) -> u64 {
    let digest = Sha256::digest(format!("{seed}:{graph6}:{}-{}", e.0, e.1).as_bytes());
    u64::from_be_bytes(digest[..8].try_into().expect("8 bytes"))
}

fn pool() -> Result<rayon::ThreadPool, CensusError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()).filter(|&n| n > 0) {
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CensusError::Pool(e.to_string()))
}

/// Runs the census over graph6 text. Witness files are written when `witness_dir` is set.
pub fn run_census(corpus: &str, cfg: &CensusConfig) -> Result<CensusReport, CensusError> {
    if cfg.samples == 0 {
        return Err(CensusError::NoSamples);
    }
    if cfg.timeout.is_zero() {
        return Err(CensusError::NoTimeout);
    }
    let start = Instant::now();
    let graphs = parse_corpus(corpus)?;
    let mut records: Vec<GraphRecord> =
        pool()?.install(|| graphs.par_iter().map(|(g6, g)| census_graph(g6, g, cfg)).collect());
    records.sort_by(|a, b| a.graph6.cmp(&b.graph6));
    if let Some(dir) = &cfg.witness_dir {
        write_witnesses(dir, &records)?;
    }
    let mut lemmas: BTreeMap<String, Tally> = LEMMAS.iter().map(|l| (l.to_string(), Tally::default())).collect();
    let mut theorem1 = BTreeMap::new();
    for r in &records {
        for (name, t) in &r.lemmas {
            lemmas.entry(name.clone()).or_default().add(t);
        }
        *theorem1.entry(r.theorem1.label().to_string()).or_insert(0) += 1;
    }
    let summary = Summary {
        meta: Meta {
            seed: cfg.seed,
            samples: cfg.samples,
            timeout_ms: cfg.timeout.as_millis() as u64,
            corpus_sha256: corpus_sha256(corpus),
            graphs: records.len(),
            elapsed_ms: start.elapsed().as_millis() as u64,
        },
        critical: records.iter().filter(|r| r.is_critical == Some(true)).count(),
        undecided: records.iter().filter(|r| r.status != "decided" && r.status != "edgeless").count(),
        violations: records.iter().map(GraphRecord::violations).sum(),
        dead_ends: records.iter().map(|r| r.dead_ends).sum(),
        theorem1,
        lemmas,
    };
    Ok(CensusReport { records, summary })
}

pub fn write_witnesses(dir: &Path, records: &[GraphRecord]) -> std::io::Result<()> {
    let witnesses: Vec<&Witness> = records.iter().flat_map(|r| &r.witnesses).collect();
    if witnesses.is_empty() {
        return Ok(());
    }
    std::fs::create_dir_all(dir)?;
    for w in witnesses {
        let json = serde_json::to_string_pretty(w).expect("serializable");
        std::fs::write(dir.join(w.file_name()), json + "\n")?;
    }
    Ok(())
}

/// Per-graph accumulator.
struct Checks<'a> {
    graph6: &'a str,
    lemmas: BTreeMap<String, Tally>,
    witnesses: Vec<Witness>,
    dead_ends: u64,
}

impl<'a> Checks<'a> {
    fn new(graph6: &'a str) -> Self {
        Self {
            graph6,
            lemmas: LEMMAS.iter().map(|l| (l.to_string(), Tally::default())).collect(),
            witnesses: Vec::new(),
            dead_ends: 0,
        }
    }

    fn record(&mut self, lemma: &str, v: &Verdict, edge: Option<Edge>, c: Option<&PartialEdgeColoring>) {
        self.lemmas.get_mut(lemma).expect("known lemma").record(v);
        if let Verdict::Violation { detail } = v {
            self.witnesses.push(Witness {
                graph6: self.graph6.to_string(),
                edge: edge.map(|e| [e.0, e.1]),
                coloring: c.map(PartialEdgeColoring::to_json),
                lemma: lemma.to_string(),
                detail: detail.clone(),
            });
        }
    }

    /// Structural errors on objects the census built itself are bugs; they surface as
    /// violations so they cannot pass silently.
    fn outcome(&mut self, lemma: &str, r: Result<Verdict, StructureError>, edge: Edge, c: &PartialEdgeColoring) {
        let v = r.unwrap_or_else(|e| Verdict::violation(format!("checker error: {e}")));
        self.record(lemma, &v, Some(edge), Some(c));
    }

    fn all_inapplicable(&mut self, reason: &str) {
        let v = Verdict::inapplicable(reason);
        for lemma in LEMMAS {
            self.record(lemma, &v, None, None);
        }
    }
}

pub fn census_graph(graph6: &str, g: &Graph, cfg: &CensusConfig) -> GraphRecord {
    let start = Instant::now();
    let ocfg = OracleConfig::with_timeout(cfg.timeout);
    let mut checks = Checks::new(graph6);
    let mut record = GraphRecord {
        graph6: graph6.to_string(),
        n: g.vertex_count(),
        max_degree: g.max_degree(),
        min_degree: g.min_degree(),
        edges: g.edge_count(),
        chi_prime: None,
        class: None,
        status: "decided".into(),
        is_critical: None,
        overfull: overfull::is_overfull(g).ok(),
        theorem1: Theorem1Verdict::Undecided { reason: "not run".into() },
        lemmas: BTreeMap::new(),
        dead_ends: 0,
        witnesses: Vec::new(),
        timing_ms: 0,
    };
    match oracle::certify(g, &ocfg) {
        Err(OracleError::Edgeless) => {
            record.status = "edgeless".into();
            record.is_critical = Some(false);
            record.theorem1 = overfull::theorem1_from(g, false);
            checks.all_inapplicable("edgeless graph");
        }
        Err(e) => {
            record.status = if e == OracleError::Timeout { "timeout".into() } else { format!("error: {e}") };
            record.theorem1 = Theorem1Verdict::Undecided { reason: e.to_string() };
            checks.all_inapplicable("classification undecided");
        }
        Ok(cert) => {
            let critical = cert.is_delta_critical();
            record.chi_prime = Some(cert.chi.chi_prime);
            record.class = Some(cert.chi.class);
            record.is_critical = Some(critical);
            record.theorem1 = overfull::theorem1_from(g, critical);
            let parity = match overfull::parity_check(&cert.chi.witness) {
                Ok(None) => Verdict::Ok,
                Ok(Some(p)) => Verdict::violation(format!("color {} missing at {} vertices", p.color, p.missing_at)),
                Err(e) => Verdict::violation(format!("checker error: {e}")),
            };
            checks.record("parity", &parity, None, Some(&cert.chi.witness));
            if critical {
                if let Err(e) = critical_checks(&mut checks, graph6, g, cfg, &ocfg) {
                    record.status = if e == OracleError::Timeout { "sample-timeout".into() } else { format!("error: {e}") };
                }
            } else {
                let v = Verdict::inapplicable("not Δ-critical");
                for lemma in LEMMAS.iter().filter(|&&l| l != "parity") {
                    checks.record(lemma, &v, None, None);
                }
            }
        }
    }
    record.lemmas = checks.lemmas;
    record.witnesses = checks.witnesses;
    record.dead_ends = checks.dead_ends;
    record.timing_ms = start.elapsed().as_millis() as u64;
    record
}

fn critical_checks(
    checks: &mut Checks,
    graph6: &str,
    g: &Graph,
    cfg: &CensusConfig,
    ocfg: &OracleConfig,
) -> Result<(), OracleError> {
    for a in g.vertices() {
        let v = check_degree_dichotomy(g, a).unwrap_or_else(|e| Verdict::violation(e.to_string()));
        checks.record("degree_dichotomy", &v, None, None);
    }
    let graph = Arc::new(g.clone());
    let mut existence: HashMap<Vec<usize>, Verdict> = HashMap::new();
    for &e in g.edges() {
        for (x, y) in [(e.0, e.1), (e.1, e.0)] {
            let v = check_val(g, x, y).unwrap_or_else(|err| Verdict::violation(err.to_string()));
            checks.record("val", &v, Some(e), None);
        }
        let seed = edge_seed(cfg.seed, graph6, e);
        for c in oracle::sample_colorings(&graph, e, cfg.samples, seed, ocfg)? {
            coloring_checks(checks, &graph, e, &c, ocfg, &mut existence);
        }
    }
    Ok(())
}

fn coloring_checks(
    checks: &mut Checks,
    graph: &Arc<Graph>,
    e: Edge,
    c: &PartialEdgeColoring,
    ocfg: &OracleConfig,
    existence: &mut HashMap<Vec<usize>, Verdict>,
) {
    for (x, y) in [(e.0, e.1), (e.1, e.0)] {
        match grow_multifan(c, x) {
            Ok(f) => {
                let elementary = crate::structures::multifan::check_fan_elementary(c, &f);
                checks.record("multifan_elementary", &elementary, Some(e), Some(c));
                checks.outcome("multifan_linked", check_fan_linked(c, &f), e, c);
                match alpha_decompose(c, &f) {
                    Ok(d) => match validate_fan_linkage(c, &f, &d) {
                        Ok((distinct, same)) => {
                            checks.record("fan_linkage_distinct", &distinct, Some(e), Some(c));
                            checks.record("fan_linkage_same", &same, Some(e), Some(c));
                        }
                        Err(err) => {
                            checks.outcome("fan_linkage_distinct", Err(err.clone()), e, c);
                            checks.outcome("fan_linkage_same", Err(err), e, c);
                        }
                    },
                    Err(StructureError::NotElementary) => {
                        let v = Verdict::inapplicable("spokes are not elementary");
                        checks.record("fan_linkage_distinct", &v, Some(e), Some(c));
                        checks.record("fan_linkage_same", &v, Some(e), Some(c));
                    }
                    Err(err) => {
                        checks.outcome("fan_linkage_distinct", Err(err.clone()), e, c);
                        checks.outcome("fan_linkage_same", Err(err), e, c);
                    }
                }
            }
            Err(err) => checks.outcome("multifan_elementary", Err(err), e, c),
        }

        for k in kierstead_paths(c, x, y, 4) {
            match validate_kierstead4(c, &k) {
                Ok((first, second)) => {
                    checks.record("kierstead4_elementary", &first, Some(e), Some(c));
                    checks.record("kierstead4_bound", &second, Some(e), Some(c));
                }
                Err(err) => checks.outcome("kierstead4_elementary", Err(err), e, c),
            }
        }

        checks.outcome("degree_dichotomy_colors", check_degree_dichotomy_colors(c, x), e, c);

        let forks: Vec<Verdict> = find_forklike(c, ForkKind::Fork)
            .iter()
            .filter(|f| f.vertex("a") == x)
            .map(|f| validate_fork(c, f).unwrap_or_else(|err| Verdict::violation(format!("checker error: {err}"))))
            .collect();
        let fork = if let Some(v) = forks.iter().find(|v| v.is_violation()) {
            v.clone()
        } else if fork_hypothesis_possible(c, x, y) {
            Verdict::Ok
        } else {
            Verdict::inapplicable("no two vertices meet the degree hypothesis")
        };
        checks.record("fork", &fork, Some(e), Some(c));

        for k in kierstead_paths(c, x, y, 5) {
            checks.outcome("k5_degrees", check_k5_degrees(c, &k), e, c);
            let v = match canonicalize_k5_path(c, &k) {
                Ok(CanonicalOutcome::Canonical { coloring, .. }) => match canonical_conditions(&coloring, &k) {
                    Ok(()) if coloring.is_proper() => Verdict::Ok,
                    Ok(()) => Verdict::violation("normal form coloring is improper"),
                    Err(reason) => Verdict::violation(reason),
                },
                Ok(CanonicalOutcome::Inapplicable { reason }) => Verdict::Inapplicable { reason },
                Ok(CanonicalOutcome::DeadEnd { .. }) => {
                    checks.dead_ends += 1;
                    existence
                        .entry(k.vertices.clone())
                        .or_insert_with(|| {
                            let vs: [usize; 5] = k.vertices.clone().try_into().expect("5 vertices");
                            match canonical_exists(graph, vs, ocfg) {
                                Ok(Some(_)) => Verdict::Ok,
                                Ok(None) => Verdict::violation(format!(
                                    "no Δ-coloring of G - ab meets (i)-(iii) on {:?}",
                                    k.vertices
                                )),
                                Err(err) => Verdict::inapplicable(format!("existence search undecided: {err}")),
                            }
                        })
                        .clone()
                }
                Err(err) => Verdict::violation(format!("checker error: {err}")),
            };
            checks.record("k5_canonical", &v, Some(e), Some(c));
        }
    }
    for sk in find_forklike(c, ForkKind::ShortKite) {
        checks.outcome("short_kite", validate_shortkite(c, &sk), e, c);
    }
    for kt in find_forklike(c, ForkKind::Kite) {
        checks.outcome("kite", validate_kite(c, &kt), e, c);
    }
}
