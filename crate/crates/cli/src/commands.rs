use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::json;

use recolour_core::classifier::{
    classify_instance, decide_k_colour_path, frozen_census, Answer, ClassifierError, PathDecision,
};
use recolour_core::colouring::{format_colouring, parse_colouring};
use recolour_core::explorer::{build_reconfig_graph, oracle_shortest_sequence};
use recolour_core::sequence::{format_sequence, parse_sequence};
use recolour_core::{
    apply_sequence, degeneracy_ordering, eliminate_top_colour, find_path_non_regular,
    parse_edge_list, Colouring, ExplorerError, Graph, RecolouringSequence, SequenceError,
};

use crate::exit;
use crate::{Cli, Command, Format};

/// Above this many vertices exhaustive commands print a warning.
const EXHAUSTIVE_WARN_N: usize = 10;

pub fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Path(args) => path(cli, args),
        Command::Validate(args) => validate(cli, args),
        Command::Explore(args) => explore(cli, args),
        Command::Decide(args) => decide(cli, args),
        Command::Census(args) => census(cli, args),
        Command::Classify(args) => classify(cli, args),
        Command::Degeneracy(args) => degeneracy(cli, args),
        Command::Eliminate(args) => eliminate(cli, args),
        Command::VerifyCorpus(args) => crate::verify::run(cli, args),
    }
}

/// State-space overflow is inconclusive; every other error is an input error.
pub fn exit_code_for(e: &anyhow::Error) -> u8 {
    let limit = e.chain().any(|cause| {
        matches!(
            cause.downcast_ref::<ExplorerError>(),
            Some(ExplorerError::StateSpaceExceedsLimit { .. })
        ) || matches!(
            cause.downcast_ref::<ClassifierError>(),
            Some(ClassifierError::Explorer(ExplorerError::StateSpaceExceedsLimit { .. }))
        )
    });
    if limit {
        exit::INCONCLUSIVE
    } else {
        exit::INPUT_ERROR
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    parse_edge_list(&read(path)?).with_context(|| format!("bad graph file {}", path.display()))
}

fn load_colouring(path: &Path, g: &Graph, k: Option<u32>) -> Result<Colouring> {
    let c = parse_colouring(&read(path)?)
        .with_context(|| format!("bad colouring file {}", path.display()))?;
    if c.len() != g.n() {
        bail!(
            "{} colours {} vertices but the graph has {}",
            path.display(),
            c.len(),
            g.n()
        );
    }
    let c = match k {
        Some(k) => c
            .with_palette(k)
            .with_context(|| format!("{} does not fit palette {k}", path.display()))?,
        None => c,
    };
    if !recolour_core::is_proper(g, &c)? {
        bail!("{} is not a proper colouring", path.display());
    }
    Ok(c)
}

fn load_pair(args: &crate::PathArgs) -> Result<(Graph, Colouring, Colouring)> {
    let g = load_graph(&args.graph)?;
    let a = load_colouring(&args.colouring_a, &g, args.k)?;
    let b = load_colouring(&args.colouring_b, &g, args.k)?;
    if a.k() != b.k() {
        bail!("colourings use palettes {} and {}; pass --k", a.k(), b.k());
    }
    Ok((g, a, b))
}

fn warn_if_large(g: &Graph) {
    if g.n() > EXHAUSTIVE_WARN_N {
        eprintln!(
            "warning: exhaustive search on {} vertices may be slow or exceed the state-space limit",
            g.n()
        );
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn decision_code(answer: Answer) -> u8 {
    match answer {
        Answer::Yes => exit::SUCCESS,
        Answer::No => exit::NEGATIVE,
        Answer::Inconclusive => exit::INCONCLUSIVE,
    }
}

fn print_decision(cli: &Cli, d: &PathDecision) -> Result<()> {
    match cli.format {
        Format::Json => print_json(d),
        Format::Text => {
            println!("answer: {:?}", d.answer);
            println!("reason: {:?}", d.reason);
            for w in &d.witnesses {
                println!("frozen: colouring {} on vertices {:?}", w.side, w.component);
            }
            if let Some((wa, wb)) = d.windings {
                println!("windings: {wa} {wb}");
            }
            Ok(())
        }
    }
}

fn path(cli: &Cli, args: &crate::PathArgs) -> Result<u8> {
    let (g, a, b) = load_pair(args)?;
    let k = a.k();
    let constructive = g.is_connected()
        && !g.is_regular()
        && g.max_degree() >= 3
        && k as usize == g.max_degree() + 1;
    let (sequence, method) = if constructive {
        (find_path_non_regular(&g, &a, &b)?.sequence, "constructive")
    } else {
        warn_if_large(&g);
        let d = decide_k_colour_path(&g, k, &a, &b, cli.limit)?;
        if d.answer != Answer::Yes {
            print_decision(cli, &d)?;
            return Ok(decision_code(d.answer));
        }
        match oracle_shortest_sequence(&g, k, &a, &b, cli.limit) {
            Ok(Some(s)) => (s, "oracle"),
            Ok(None) => bail!("oracle found no path although the decision was yes"),
            Err(e @ ExplorerError::StateSpaceExceedsLimit { .. }) => {
                eprintln!("reachable ({:?}) but no sequence could be built: {e}", d.reason);
                return Ok(exit::INCONCLUSIVE);
            }
            Err(e) => return Err(e.into()),
        }
    };
    let valid = apply_sequence(&g, &a, &sequence).is_ok_and(|end| end == b);
    report_sequence(cli, args.out.as_deref(), &sequence, method, valid)?;
    Ok(if valid { exit::SUCCESS } else { exit::INPUT_ERROR })
}

fn report_sequence(
    cli: &Cli,
    out: Option<&Path>,
    sequence: &RecolouringSequence,
    method: &str,
    valid: bool,
) -> Result<()> {
    match cli.format {
        Format::Json => {
            if let Some(path) = out {
                write_or_print(Some(path), &format_sequence(sequence))?;
            }
            print_json(&json!({
                "method": method,
                "length": sequence.len(),
                "valid": valid,
                "sequence": sequence.steps(),
            }))
        }
        Format::Text => {
            write_or_print(out, &format_sequence(sequence))?;
            let status = format!("length: {}, valid: {valid}, method: {method}", sequence.len());
            if out.is_some() {
                println!("{status}");
            } else {
                eprintln!("{status}");
            }
            Ok(())
        }
    }
}

fn validate(cli: &Cli, args: &crate::ValidateArgs) -> Result<u8> {
    let g = load_graph(&args.graph)?;
    let c = parse_colouring(&read(&args.colouring)?)
        .with_context(|| format!("bad colouring file {}", args.colouring.display()))?;
    let seq = parse_sequence(&read(&args.sequence)?)
        .with_context(|| format!("bad sequence file {}", args.sequence.display()))?;
    if c.len() != g.n() {
        bail!("colouring has {} entries, graph has {} vertices", c.len(), g.n());
    }
    let result = apply_sequence(&g, &c, &seq);
    let failed_step = match &result {
        Err(SequenceError::ImproperStart) => bail!("start colouring is not proper"),
        Err(e) => Some(step_of(e)),
        Ok(_) => None,
    };
    match cli.format {
        Format::Json => print_json(&json!({
            "valid": result.is_ok(),
            "steps": seq.len(),
            "failedStep": failed_step,
            "error": result.as_ref().err().map(ToString::to_string),
        }))?,
        Format::Text => match &result {
            Ok(end) => {
                println!("valid: {} steps", seq.len());
                print!("{}", format_colouring(end));
            }
            Err(e) => println!("invalid: {e}"),
        },
    }
    Ok(if result.is_ok() { exit::SUCCESS } else { exit::NEGATIVE })
}

fn step_of(e: &SequenceError) -> usize {
    match *e {
        SequenceError::ImproperIntermediate(i) | SequenceError::NoOpStep(i) => i,
        SequenceError::VertexOutOfRange { step, .. } | SequenceError::ColourOutOfRange { step, .. } => {
            step
        }
        _ => 0,
    }
}

fn explore(cli: &Cli, args: &crate::ExploreArgs) -> Result<u8> {
    let g = load_graph(&args.graph)?;
    warn_if_large(&g);
    let summary = build_reconfig_graph(&g, args.k, cli.limit)?;
    match cli.format {
        Format::Json => print_json(&summary)?,
        Format::Text => {
            println!("colourings: {}", summary.total_colourings);
            println!("components: {}", summary.components.len());
            println!("components of size >= 2: {}", summary.nontrivial_components());
            println!("frozen: {}", summary.frozen_count);
            println!("isolated non-frozen: {}", summary.isolated_non_frozen);
            let max_diameter = summary.components.iter().map(|c| c.diameter).max().unwrap_or(0);
            println!("max diameter: {max_diameter}");
        }
    }
    Ok(exit::SUCCESS)
}

fn decide(cli: &Cli, args: &crate::PathArgs) -> Result<u8> {
    let (g, a, b) = load_pair(args)?;
    let d = decide_k_colour_path(&g, a.k(), &a, &b, cli.limit)?;
    print_decision(cli, &d)?;
    Ok(decision_code(d.answer))
}

fn census(cli: &Cli, args: &crate::ExploreArgs) -> Result<u8> {
    let g = load_graph(&args.graph)?;
    let census = frozen_census(&g, args.k, cli.limit)?;
    match cli.format {
        Format::Json => print_json(&census)?,
        Format::Text => {
            println!("frozen: {} ({:?})", census.count, census.method);
            for w in &census.witnesses {
                println!("{}", join(w.as_slice()));
            }
        }
    }
    Ok(exit::SUCCESS)
}

fn classify(cli: &Cli, args: &crate::ExploreArgs) -> Result<u8> {
    let g = load_graph(&args.graph)?;
    warn_if_large(&g);
    let report = classify_instance(&g, args.k, cli.limit)?;
    match cli.format {
        Format::Json => print_json(&report)?,
        Format::Text => {
            println!("graph: {}", report.graph);
            println!("k: {}, max degree: {}", report.k, report.max_degree);
            println!("empirical type: {:?}", report.empirical_type);
            match report.class_type {
                Some(t) => println!("class type: {t}"),
                None => println!("class type: contains a subclass of type 4"),
            }
            println!(
                "components: {} ({} of size >= 2), max diameter {} ({:.3}·n²)",
                report.evidence.components.len(),
                report.evidence.nontrivial_components(),
                report.max_diameter,
                report.max_diameter_ratio
            );
            for note in &report.notes {
                println!("note: {note}");
            }
        }
    }
    Ok(exit::SUCCESS)
}

fn degeneracy(cli: &Cli, args: &crate::GraphArg) -> Result<u8> {
    let g = load_graph(&args.graph)?;
    let ordering = degeneracy_ordering(&g);
    let back: Vec<usize> = ordering.order().iter().map(|&v| ordering.back_degree(v)).collect();
    match cli.format {
        Format::Json => print_json(&json!({
            "degeneracy": ordering.degeneracy(),
            "maxDegree": g.max_degree(),
            "order": ordering.order(),
            "backDegree": back,
        }))?,
        Format::Text => {
            println!("degeneracy: {}", ordering.degeneracy());
            println!("order: {}", join(ordering.order()));
        }
    }
    Ok(exit::SUCCESS)
}

fn eliminate(cli: &Cli, args: &crate::EliminateArgs) -> Result<u8> {
    let g = load_graph(&args.graph)?;
    let c = load_colouring(&args.colouring, &g, None)?;
    let e = eliminate_top_colour(&g, &c)?;
    match cli.format {
        Format::Json => {
            if let Some(path) = &args.out {
                write_or_print(Some(path), &format_sequence(&e.sequence))?;
            }
            print_json(&json!({
                "length": e.sequence.len(),
                "rounds": e.rounds.len(),
                "sequence": e.sequence.steps(),
                "colouring": e.colouring.as_slice(),
            }))?;
        }
        Format::Text => {
            write_or_print(args.out.as_deref(), &format_sequence(&e.sequence))?;
            let status = format!(
                "length: {}, rounds: {}, final: {}",
                e.sequence.len(),
                e.rounds.len(),
                join(e.colouring.as_slice())
            );
            if args.out.is_some() {
                println!("{status}");
            } else {
                eprintln!("{status}");
            }
        }
    }
    Ok(exit::SUCCESS)
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}
