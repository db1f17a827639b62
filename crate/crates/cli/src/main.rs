use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nilpower::analysis::{
    equivalence_classes, min_cyclic_cover_of_prime_roots, nth_roots, prime_roots, quotient_digraph,
};
use nilpower::catalog::{build_catalog, find_powergraph_twins, run_theorem_suite, CatalogEntry};
use nilpower::graphio::{digraph_to_dot, digraph_to_edge_list, graph_to_dot, graph_to_edge_list, parse_edge_list};
use nilpower::groups::{Validation, CLI_MAX_ORDER};
use nilpower::isocheck::{canonical_form_with, CanonOptions};
use nilpower::reconstruct::{reconstruct_digraph_bounded, verify_reconstruction};
use nilpower::{directed_power_graph, power_graph, FiniteGroup, GroupSpec};

#[derive(Parser)]
#[command(name = "nilpower", version, about = "Power graphs of finite nilpotent groups")]
struct Cli {
    /// Seed for the randomized relabeling checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupSource {
    /// Group spec such as `C2xC4`, `Q8`, `D16` or `H3`.
    #[arg(long, conflicts_with = "cayley", required_unless_present = "cayley")]
    group: Option<String>,
    /// Cayley table file, one row per line, identity first.
    #[arg(long)]
    cayley: Option<PathBuf>,
    /// Skip the associativity check on `--cayley` input.
    #[arg(long, requires = "cayley")]
    trust: bool,
    /// Largest group order accepted.
    #[arg(long, default_value_t = CLI_MAX_ORDER)]
    max_order: usize,
}

impl GroupSource {
    fn load(&self) -> Result<FiniteGroup> {
        if let Some(path) = &self.cayley {
            let text = read(path)?;
            let validation = if self.trust { Validation::Trust } else { Validation::Full };
            return FiniteGroup::parse_cayley(&text, validation, self.max_order)
                .with_context(|| format!("invalid Cayley table in {}", path.display()));
        }
        let text = self.group.as_deref().expect("clap enforces one source");
        let spec =
            GroupSpec::parse_bounded(text, self.max_order).with_context(|| format!("bad group spec {text:?}"))?;
        Ok(spec.realize())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write the power graph (or directed power graph) of a group.
    Build {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long)]
        digraph: bool,
        /// `.dot` selects DOT output, anything else the edge-list format.
        /// Without it the edge list goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-twin classes of the power graph and their quotient arcs.
    Classes {
        #[command(flatten)]
        source: GroupSource,
    },
    /// n-th roots of an element, or its prime roots when `--n` is omitted.
    Roots {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long)]
        element: usize,
        #[arg(long)]
        n: Option<u64>,
    },
    /// Minimum cover of the prime roots of an element by maximal cyclic subgroups.
    Cover {
        #[command(flatten)]
        source: GroupSource,
        #[arg(long)]
        element: usize,
    },
    /// Orient an unlabeled power graph read from an edge-list file.
    Reconstruct {
        #[arg(long)]
        graph: PathBuf,
        /// Check the result against the directed power graph of this group.
        #[arg(long)]
        expect_group: Option<String>,
        /// Write `PREFIX.edges` and `PREFIX.dot` instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = CLI_MAX_ORDER)]
        max_order: usize,
    },
    /// Check that isomorphic power graphs have isomorphic directed power graphs.
    Verify {
        #[arg(long, default_value_t = 32)]
        max_order: usize,
        /// Random relabelings per catalog graph for the canonical-form check.
        #[arg(long, default_value_t = 3)]
        relabelings: usize,
    },
    /// Non-isomorphic catalog groups with isomorphic power graphs.
    Twins {
        #[arg(long, default_value_t = 32)]
        max_order: usize,
    },
    /// List the catalog.
    Catalog {
        #[arg(long, default_value_t = 32)]
        max_order: usize,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn list(items: &[usize]) -> String {
    items.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

fn check_element(group: &FiniteGroup, element: usize) -> Result<()> {
    if element >= group.order() {
        bail!("element {element} out of range for a group of order {}", group.order());
    }
    Ok(())
}

fn catalog(max_order: usize) -> Result<Vec<CatalogEntry>> {
    let entries = build_catalog(max_order)?;
    eprintln!("catalog: {} groups of order <= {max_order}", entries.len());
    Ok(entries)
}

fn build(source: &GroupSource, digraph: bool, out: Option<&Path>) -> Result<ExitCode> {
    let group = source.load()?;
    let dot = out.is_some_and(|p| p.extension().is_some_and(|e| e == "dot"));
    let text = match (digraph, dot) {
        (true, true) => digraph_to_dot(&directed_power_graph(&group), Some(&group)),
        (true, false) => digraph_to_edge_list(&directed_power_graph(&group)),
        (false, true) => graph_to_dot(&power_graph(&group), Some(&group)),
        (false, false) => graph_to_edge_list(&power_graph(&group)),
    };
    match out {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn classes(source: &GroupSource) -> Result<ExitCode> {
    let group = source.load()?;
    let g = power_graph(&group);
    let partition = equivalence_classes(&g);
    let quotient = quotient_digraph(&directed_power_graph(&group), &partition)?;
    let mut out = String::from("block\tsize\telements\tpowers_to\n");
    for (b, members) in partition.blocks().iter().enumerate() {
        let targets: Vec<usize> = quotient.out_neighbors(b).ones().collect();
        writeln!(out, "{b}\t{}\t{}\t{}", members.len(), list(members), list(&targets))?;
    }
    print!("{out}");
    eprintln!("{}: {} elements, {} classes", group.name(), group.order(), partition.len());
    Ok(ExitCode::SUCCESS)
}

fn roots(source: &GroupSource, element: usize, n: Option<u64>) -> Result<ExitCode> {
    let group = source.load()?;
    check_element(&group, element)?;
    let result = match n {
        Some(n) => nth_roots(&group, element, n),
        None => prime_roots(&group, element),
    };
    println!("element\torder\tresult");
    println!("{element}\t{}\t{}", group.element_order(element), list(&result));
    Ok(ExitCode::SUCCESS)
}

fn cover(source: &GroupSource, element: usize) -> Result<ExitCode> {
    let group = source.load()?;
    check_element(&group, element)?;
    let cover = min_cyclic_cover_of_prime_roots(&group, element);
    let subgroups: Vec<String> = cover.cover.iter().map(|c| list(&c.elements)).collect();
    println!("element\torder\tcount\tresult");
    println!("{element}\t{}\t{}\t{}", group.element_order(element), cover.count, subgroups.join(";"));
    Ok(ExitCode::SUCCESS)
}

fn reconstruct(graph: &Path, expect: Option<&str>, out: Option<&Path>, max_order: usize) -> Result<ExitCode> {
    let text = read(graph)?;
    let g = parse_edge_list(&text)
        .and_then(|e| e.into_graph())
        .with_context(|| format!("invalid edge list in {}", graph.display()))?;
    let expected = expect
        .map(|s| GroupSpec::parse_bounded(s, max_order).with_context(|| format!("bad group spec {s:?}")))
        .transpose()?;
    let report = reconstruct_digraph_bounded(&g, max_order)?;
    eprintln!("case: {}", report.case_used.name());
    eprintln!("identity class: {}", list(&report.identity_class));
    for note in &report.notes {
        eprintln!("note: {note}");
    }
    match out {
        Some(prefix) => {
            write(&prefix.with_extension("edges"), &digraph_to_edge_list(&report.digraph))?;
            write(&prefix.with_extension("dot"), &digraph_to_dot(&report.digraph, None))?;
        }
        None => print!("{}", digraph_to_edge_list(&report.digraph)),
    }
    if let Some(spec) = expected {
        let truth = directed_power_graph(&spec.realize());
        if !verify_reconstruction(&truth, &report.digraph)? {
            eprintln!("mismatch: result is not isomorphic to the directed power graph of {spec}");
            return Ok(ExitCode::from(1));
        }
        eprintln!("verified against {spec}");
    }
    Ok(ExitCode::SUCCESS)
}

fn shuffled(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

fn verify(max_order: usize, relabelings: usize, seed: u64) -> Result<ExitCode> {
    let entries = catalog(max_order)?;
    let report = run_theorem_suite(&entries);
    print!("{}", report.to_tsv());
    eprint!("{}", report.summary());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let options = CanonOptions { bound: usize::MAX, collapse_twins: true };
    let mut unstable = Vec::new();
    for entry in &entries {
        for _ in 0..relabelings {
            let perm = shuffled(entry.group.order(), &mut rng);
            let relabeled = canonical_form_with(&entry.power_graph.permute(&perm), options)?;
            if relabeled.bytes() != entry.canonical.bytes() {
                unstable.push(entry.spec.to_string());
                break;
            }
        }
    }
    eprintln!("relabeling checks: {} per group, seed {seed}, unstable: {}", relabelings, unstable.len());
    for spec in &unstable {
        eprintln!("unstable canonical form: {spec}");
    }
    let failed = !report.violations.is_empty() || !unstable.is_empty();
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn twins(max_order: usize) -> Result<ExitCode> {
    let entries = catalog(max_order)?;
    let twins = find_powergraph_twins(&entries);
    println!("left\tright\tcertificate");
    for t in &twins {
        let cert = t.certificate.as_ref().map_or("none".to_string(), |c| c.describe());
        println!("{}\t{}\t{cert}", t.left, t.right);
    }
    eprintln!("twins: {}", twins.len());
    let uncertified = twins.iter().any(|t| t.certificate.is_none());
    Ok(if uncertified { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn list_catalog(max_order: usize) -> Result<ExitCode> {
    let entries = catalog(max_order)?;
    println!("spec\torder\tabelian\tedges\tarcs\tclasses");
    for e in &entries {
        println!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            e.spec,
            e.group.order(),
            e.group.is_abelian(),
            e.power_graph.edge_count(),
            e.directed.arc_count(),
            equivalence_classes(&e.power_graph).len()
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Build { source, digraph, out } => build(source, *digraph, out.as_deref()),
        Command::Classes { source } => classes(source),
        Command::Roots { source, element, n } => roots(source, *element, *n),
        Command::Cover { source, element } => cover(source, *element),
        Command::Reconstruct { graph, expect_group, out, max_order } => {
            reconstruct(graph, expect_group.as_deref(), out.as_deref(), *max_order)
        }
        Command::Verify { max_order, relabelings } => verify(*max_order, *relabelings, cli.seed),
        Command::Twins { max_order } => twins(*max_order),
        Command::Catalog { max_order } => list_catalog(*max_order),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
