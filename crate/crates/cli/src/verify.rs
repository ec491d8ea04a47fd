//! `verify-corpus`: every exhaustive check over all connected graphs in a
//! range of sizes.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use recolour_core::classifier::{graph_id, Answer, PathDecider};
use recolour_core::colouring::format_colouring;
use recolour_core::corpus::random_colouring;
use recolour_core::explorer::{
    lemma_cubic1_on, lemma_cubic2_on, lemma_first_on, theorem_delta_plus_one_on,
    theorem_main_on, DiameterPolicy, Verdict, VerificationReport,
};
use recolour_core::{
    apply_sequence, find_path_non_regular, to_edge_list, Colour, Colouring, Graph, ReconfigGraph,
};

use crate::cache::{self, CacheStatus};
use crate::{exit, Cli, Format, VerifyCorpusArgs};

const PIPELINE_PAIRS: usize = 5;
const SAMPLED_DECISIONS: usize = 10;
const CORPUS_DIAMETER: DiameterPolicy = DiameterPolicy::ExactUpTo(300);
const PIPELINE_CHECK: &str = "non-regular-pipeline";
const DECISION_CHECK: &str = "decision-equivalence";

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct Tally {
    pass: usize,
    fail: usize,
    skip: usize,
    instances: usize,
    max_distance: Option<usize>,
    max_ratio: Option<f64>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct Counterexample {
    graph: String,
    check: String,
    reason: String,
    colouring: Option<Vec<Colour>>,
    reproducer: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct CorpusReport {
    min_n: usize,
    max_n: usize,
    max_degree: Option<u64>,
    k_range: (u32, u32),
    seed: u64,
    graphs: usize,
    checks: BTreeMap<String, Tally>,
    counterexamples: Vec<Counterexample>,
}

pub fn run(cli: &Cli, args: &VerifyCorpusArgs) -> Result<u8> {
    let (min_n, max_n) = (args.min_n as usize, args.max_n as usize);
    let root = args.cache_dir.clone().unwrap_or_else(cache::default_dir);
    let mut graphs = Vec::new();
    for n in min_n..=max_n {
        let (gs, status) = cache::connected_graphs_cached(&root, n, args.max_degree.map(|d| d as usize))?;
        if let CacheStatus::Regenerated(why) = status {
            eprintln!("note: corpus cache for n = {n} was corrupt ({why}); regenerated");
        }
        graphs.extend(gs);
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
        .context("cannot start worker pool")?;
    let per_graph: Vec<(String, Vec<VerificationReport>)> = pool.install(|| {
        graphs
            .par_iter()
            .enumerate()
            .map(|(i, g)| (graph_id(g), check_graph(g, i as u64, args, cli.limit)))
            .collect()
    });

    let mut checks: BTreeMap<String, Tally> = BTreeMap::new();
    let mut counterexamples = Vec::new();
    for (gi, (id, reports)) in per_graph.into_iter().enumerate() {
        for r in reports {
            let t = checks.entry(r.check.clone()).or_insert(Tally {
                pass: 0,
                fail: 0,
                skip: 0,
                instances: 0,
                max_distance: None,
                max_ratio: None,
            });
            match r.verdict {
                Verdict::Pass => t.pass += 1,
                Verdict::Fail => t.fail += 1,
                Verdict::Skip => t.skip += 1,
            }
            t.instances += r.instances;
            t.max_distance = t.max_distance.max(r.max_distance);
            t.max_ratio = match (t.max_ratio, r.max_ratio) {
                (Some(a), Some(b)) => Some(a.max(b)),
                (a, b) => a.or(b),
            };
            if r.verdict == Verdict::Fail {
                let reproducer = match &args.out {
                    Some(dir) => Some(write_reproducer(dir, &graphs[gi], &r)?),
                    None => None,
                };
                counterexamples.push(Counterexample {
                    graph: id.clone(),
                    check: r.check,
                    reason: r.reason.unwrap_or_default(),
                    colouring: r.counterexample,
                    reproducer,
                });
            }
        }
    }

    let report = CorpusReport {
        min_n,
        max_n,
        max_degree: args.max_degree,
        k_range: args.k,
        seed: args.seed,
        graphs: graphs.len(),
        checks,
        counterexamples,
    };
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Text => print_text(&report),
    }
    Ok(if report.counterexamples.is_empty() {
        exit::SUCCESS
    } else {
        exit::INPUT_ERROR
    })
}

fn print_text(report: &CorpusReport) {
    println!(
        "{} connected graphs on {}..={} vertices",
        report.graphs, report.min_n, report.max_n
    );
    for (name, t) in &report.checks {
        let ratio = t.max_ratio.map_or("-".to_string(), |r| format!("{r:.3}"));
        println!(
            "{name}: pass {} fail {} skip {}, instances {}, max ratio {ratio}",
            t.pass, t.fail, t.skip, t.instances
        );
    }
    for c in &report.counterexamples {
        println!("COUNTEREXAMPLE {} on {}: {}", c.check, c.graph, c.reason);
        if let Some(path) = &c.reproducer {
            println!("  reproducer: {}", path.display());
        }
    }
}

/// Writes `<check>-<graph>.edges` and, when there is a counterexample
/// colouring, `<check>-<graph>.colouring`, both loadable by the other
/// commands. Returns the graph file.
fn write_reproducer(dir: &Path, g: &Graph, r: &VerificationReport) -> Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let stem = format!("{}-{}", r.check, graph_id(g).replace([':', ',', '-'], "_"));
    let path = dir.join(format!("{stem}.edges"));
    fs::write(&path, to_edge_list(g)).with_context(|| format!("cannot write {}", path.display()))?;
    if let Some(c) = r.counterexample.as_ref().filter(|c| !c.is_empty()) {
        let k = c.iter().copied().max().unwrap_or(1).max(g.max_degree() as Colour + 1);
        if let Ok(c) = Colouring::new(k, c.clone()) {
            let colouring = dir.join(format!("{stem}.colouring"));
            fs::write(&colouring, format_colouring(&c))
                .with_context(|| format!("cannot write {}", colouring.display()))?;
        }
    }
    Ok(path)
}

fn check_graph(g: &Graph, index: u64, args: &VerifyCorpusArgs, limit: u64) -> Vec<VerificationReport> {
    let mut reports = Vec::new();
    let top = g.max_degree() as Colour + 1;
    match ReconfigGraph::build(g, top, limit) {
        Ok(r) => {
            reports.push(theorem_delta_plus_one_on(&r));
            reports.push(theorem_main_on(&r, CORPUS_DIAMETER));
            reports.push(lemma_cubic1_on(&r));
            reports.push(lemma_cubic2_on(&r));
            reports.push(lemma_first_on(&r));
            reports.push(pipeline_check(g, &r, args.seed ^ index));
        }
        Err(e) => reports.push(VerificationReport::skip("reconfiguration-graph", e.to_string())),
    }
    let (lo, hi) = args.k;
    for k in lo..=hi {
        reports.push(decision_check(g, k, args.seed ^ index.rotate_left(32) ^ k as u64, limit));
    }
    reports
}

/// Seeded pairs through the constructive path finder, confirmed by replay
/// and by the oracle.
fn pipeline_check(g: &Graph, r: &ReconfigGraph, seed: u64) -> VerificationReport {
    if g.is_regular() || g.max_degree() < 3 {
        return VerificationReport::skip(PIPELINE_CHECK, "graph is regular or Δ < 3");
    }
    let mut report = VerificationReport::new(PIPELINE_CHECK);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n2 = g.n() * g.n();
    for _ in 0..PIPELINE_PAIRS {
        let a = random_colouring(g, r.k(), &mut rng).expect("k > Δ");
        let b = random_colouring(g, r.k(), &mut rng).expect("k > Δ");
        report.instances += 1;
        match find_path_non_regular(g, &a, &b) {
            Ok(p) if apply_sequence(g, &a, &p.sequence).is_ok_and(|end| end == b) => {
                report.record_distance(p.sequence.len());
            }
            Ok(_) => report.fail("sequence does not replay to the target", a.as_slice().to_vec()),
            Err(e) => report.fail(e.to_string(), a.as_slice().to_vec()),
        }
        let (ia, ib) = (r.index_of(&a), r.index_of(&b));
        if !matches!((ia, ib), (Some(x), Some(y)) if r.same_component(x, y)) {
            report.fail("oracle finds the pair unreachable", Vec::new());
        }
    }
    report.max_ratio = report.max_distance.map(|d| d as f64 / n2 as f64);
    report.notes.push("ratio: length / n^2".into());
    report
}

/// The decision procedure against oracle reachability, on one pair inside
/// every component, one across each consecutive pair of components, and a
/// few sampled pairs.
fn decision_check(g: &Graph, k: Colour, seed: u64, limit: u64) -> VerificationReport {
    let check = format!("{DECISION_CHECK}-k{k}");
    let r = match ReconfigGraph::build(g, k, limit) {
        Ok(r) if !r.is_empty() => r,
        Ok(_) => return VerificationReport::skip(&check, format!("no proper {k}-colouring")),
        Err(e) => return VerificationReport::skip(&check, e.to_string()),
    };
    let mut report = VerificationReport::new(&check);
    let mut decider = PathDecider::new(g, k, limit);
    let comps = r.components();
    let mut pairs = Vec::new();
    for (c, members) in comps.iter().enumerate() {
        pairs.push((members[0] as usize, *members.last().unwrap() as usize));
        if let Some(next) = comps.get(c + 1) {
            pairs.push((members[0] as usize, next[0] as usize));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLED_DECISIONS {
        pairs.push((rng.gen_range(0..r.len()), rng.gen_range(0..r.len())));
    }
    for (x, y) in pairs {
        report.instances += 1;
        let expected = if r.same_component(x, y) { Answer::Yes } else { Answer::No };
        match decider.decide(&r.colouring(x), &r.colouring(y)) {
            Ok(d) if d.answer == expected => {}
            Ok(d) => report.fail(
                format!("decided {:?} ({:?}), oracle says {expected:?}", d.answer, d.reason),
                r.colours(x),
            ),
            Err(e) => report.fail(e.to_string(), r.colours(x)),
        }
    }
    report
}
