use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use diffgraph::abelian::enumerate_specs;
use diffgraph::classes::class_table;
use diffgraph::graph::shuffle;
use diffgraph::group_graphs::{
    difference_graph, directed_power_graph, enhanced_power_graph, power_graph,
};
use diffgraph::harness::{verify_range, Suite, VerifyOptions};
use diffgraph::io::{export_dot, export_dot_directed, parse_group_spec, GraphFile};
use diffgraph::reconstruct::{reconstruct, ReconstructionReport, DEFAULT_VALIDATION_LIMIT};
use diffgraph::{Error, GroupSpec};

#[derive(Parser)]
#[command(
    name = "diffgraph",
    version,
    about = "Difference graphs of two-prime abelian groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Power,
    Enhanced,
    Difference,
    DirectedPower,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph of a group and write it as a graph file.
    Build {
        #[arg(long)]
        group: String,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Print the neighborhood classes of D(G).
    Classes {
        #[arg(long)]
        group: String,
    },
    /// Recover the group from an unlabeled difference graph.
    Reconstruct {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        shuffle_seed: Option<u64>,
        /// Skip rebuilding D(G) and checking isomorphism.
        #[arg(long, conflicts_with = "validate")]
        no_validate: bool,
        /// Validate even above the default vertex limit.
        #[arg(long)]
        validate: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run the verification harness over all specs up to an order.
    Verify {
        #[arg(long)]
        max_order: u64,
        /// Comma-separated suite names (default: all).
        #[arg(long, value_delimiter = ',')]
        suites: Option<Vec<Suite>>,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Flip one seeded vertex pair in every graph under test.
        #[arg(long, num_args = 0..=1, default_missing_value = "0", value_name = "SEED")]
        fault_inject: Option<u64>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// List canonical specs, one per line.
    Enumerate {
        #[arg(long)]
        max_order: u64,
    },
}

enum Failure {
    /// Invalid input: exit 2.
    Input(String),
    /// Verification failure: exit 1.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InternalMismatch(_) | Error::NotAClass(_) => Failure::Check(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn spec_arg(text: &str) -> Result<GroupSpec, Failure> {
    parse_group_spec(text).map_err(|e| Failure::Input(format!("--group {text:?}: {e}")))
}

fn build(group: &str, kind: Kind, out: &Path, dot: Option<&Path>) -> Result<(), Failure> {
    let spec = spec_arg(group)?;
    let labels: Vec<_> = spec.elements().collect();
    let (file, dot_text) = match kind {
        Kind::Difference => {
            let d = difference_graph(&spec)?;
            (
                GraphFile::from_labeled(&d),
                export_dot(&d.graph, Some(&d.labels)),
            )
        }
        Kind::DirectedPower => {
            let g = directed_power_graph(&spec);
            let dot = export_dot_directed(&g, Some(&labels));
            (
                GraphFile::from_digraph(&g)
                    .with_spec(&spec)
                    .with_labels(labels),
                dot,
            )
        }
        Kind::Power | Kind::Enhanced => {
            let g = match kind {
                Kind::Power => power_graph(&spec),
                _ => enhanced_power_graph(&spec)?,
            };
            let dot = export_dot(&g, Some(&labels));
            (
                GraphFile::from_graph(&g)
                    .with_spec(&spec)
                    .with_labels(labels),
                dot,
            )
        }
    };
    write_file(out, &file.write())?;
    if let Some(path) = dot {
        write_file(path, &dot_text)?;
    }
    println!("{} vertices, {} edges", file.vertices, file.edges.len());
    Ok(())
}

fn classes(group: &str) -> Result<(), Failure> {
    let spec = spec_arg(group)?;
    let d = difference_graph(&spec)?;
    println!(
        "{:>6}  {:<14}  {:>6}  {:>9}  example",
        "size", "kind", "degree", "predicted"
    );
    for row in class_table(&d)? {
        let predicted = row.predicted.map_or("-".to_string(), |p| p.to_string());
        println!(
            "{:>6}  {:<14}  {:>6}  {:>9}  {}",
            row.size,
            row.kind.tag.to_string(),
            row.degree,
            predicted,
            row.example
        );
    }
    Ok(())
}

fn print_report(r: &ReconstructionReport) {
    println!("spec {}", r.spec);
    println!("branch {}", r.branch);
    if let Some(p) = r.params {
        println!(
            "params p={} q={} n={} m={} k={} l={} r1={} t1={}",
            p.p, p.q, p.n, p.m, p.k, p.l, p.r1, p.t1
        );
    }
    let counts = |c: &std::collections::BTreeMap<u64, u64>| {
        c.iter()
            .map(|(o, n)| format!("{o}:{n}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!("order-counts-a {}", counts(&r.order_counts_a));
    println!("order-counts-b {}", counts(&r.order_counts_b));
    println!("validated {}", r.validated);
    for t in &r.trace {
        println!("trace {}: {}", t.step, t.detail);
    }
}

fn reconstruct_cmd(
    input: &Path,
    shuffle_seed: Option<u64>,
    no_validate: bool,
    force_validate: bool,
    report: Option<&Path>,
) -> Result<(), Failure> {
    let text = fs::read_to_string(input)
        .map_err(|e| Failure::Input(format!("{}: {e}", input.display())))?;
    let file = GraphFile::read(&text)?;
    if file.directed {
        return Err(Failure::Input(
            "reconstruct needs an undirected graph".into(),
        ));
    }
    let mut g = file.graph();
    if let Some(seed) = shuffle_seed {
        g = shuffle(&g, seed).0;
    }
    let validate = !no_validate && (force_validate || g.vertex_count() < DEFAULT_VALIDATION_LIMIT);
    let r = reconstruct(&g, validate)?;
    print_report(&r);
    if let Some(path) = report {
        write_file(path, &(r.to_json() + "\n"))?;
    }
    Ok(())
}

fn verify(
    max_order: u64,
    suites: Option<Vec<Suite>>,
    jobs: usize,
    fault_inject: Option<u64>,
    report: Option<&Path>,
) -> Result<(), Failure> {
    let opts = VerifyOptions {
        suites: suites.unwrap_or_else(|| Suite::ALL.to_vec()),
        jobs,
        fault_inject,
        ..VerifyOptions::default()
    };
    let start = Instant::now();
    let summary = verify_range(max_order, &opts);
    print!("{}", summary.to_text());
    eprintln!("elapsed {:.2}s", start.elapsed().as_secs_f64());
    if let Some(path) = report {
        write_file(path, &(summary.to_json() + "\n"))?;
    }
    if summary.all_passed() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "{} checks failed",
            summary.failed()
        )))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Build {
            group,
            kind,
            out,
            dot,
        } => build(&group, kind, &out, dot.as_deref()),
        Command::Classes { group } => classes(&group),
        Command::Reconstruct {
            input,
            shuffle_seed,
            no_validate,
            validate,
            report,
        } => reconstruct_cmd(
            &input,
            shuffle_seed,
            no_validate,
            validate,
            report.as_deref(),
        ),
        Command::Verify {
            max_order,
            suites,
            jobs,
            fault_inject,
            report,
        } => verify(max_order, suites, jobs, fault_inject, report.as_deref()),
        Command::Enumerate { max_order } => {
            for s in enumerate_specs(max_order) {
                println!("{s}");
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
