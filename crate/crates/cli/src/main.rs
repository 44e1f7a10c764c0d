use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand};

use oneplanar::census::{check_identities, verify_min_degree7_theorem, TheoremError};
use oneplanar::constructions::{glue_copies, GlueSpec};
use oneplanar::format::{parse_with_source, serialize};
use oneplanar::matching::{
    gallai_edmonds_certificate, lemma_matching_bound, maximum_matching, tutte_berge_certificate,
};
use oneplanar::{
    fixture, render_svg, triangulate, underlying_graph, validate, CombinatorialDrawing, Fixture,
    VertexId,
};

/// Toolkit for combinatorial 1-planar drawings in the `.1pd` format.
#[derive(Parser)]
#[command(name = "oneplanar", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check goodness, 1-planarity, rotations, connectivity and Euler.
    Validate { file: PathBuf },
    /// Census and counting identities.
    Stats { file: PathBuf },
    /// Insert uncrossed edges until every region is a triangle.
    Triangulate {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Evaluate the minimum-degree-7 inequality chain.
    Theorem { file: PathBuf },
    /// Maximum matching with a Tutte-Berge certificate.
    Matching {
        file: PathBuf,
        /// Separator vertices; defaults to the Gallai-Edmonds separator.
        #[arg(long, num_args = 0..)]
        certificate: Option<Vec<u32>>,
    },
    /// Build drawings.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Straight-line SVG of the planarization.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Index of the outer region in canonical region order.
        #[arg(long)]
        outer: Option<usize>,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// Copies of a base drawing glued at one vertex.
    Glue {
        #[arg(long)]
        copies: usize,
        /// Base drawing; the shipped 24-vertex fixture if omitted.
        #[arg(long)]
        base: Option<PathBuf>,
        /// Glue vertex; the smallest vertex id if omitted.
        #[arg(long)]
        hub: Option<u32>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Write a shipped fixture (fig1, k4_planar, k4_crossed, k6, c4,
    /// octahedron, stacked(N)).
    Fixture {
        name: String,
        #[arg(short, long)]
        output: PathBuf,
    },
}

/// Failure classes mapped onto exit codes.
enum Failure {
    /// Exit 1: the input was read but a check failed.
    Violation(anyhow::Error),
    /// Exit 2: unreadable or unparsable input.
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn load(path: &Path) -> Result<CombinatorialDrawing, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Usage)?;
    let (d, source) =
        parse_with_source(&text).map_err(|e| Failure::Usage(anyhow!("{}: {e}", path.display())))?;
    let report = validate(&d);
    if report.is_accepted() {
        return Ok(d);
    }
    for v in &report.violations {
        match source.line_of(v, &d) {
            Some(line) => println!("violation line={line} {v}"),
            None => println!("violation {v}"),
        }
    }
    Err(Failure::Violation(anyhow!(
        "{}: {} violations",
        path.display(),
        report.violations.len()
    )))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(Failure::Usage)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { file } => {
            let d = load(&file)?;
            println!("status=accepted");
            println!(
                "n={} m={} x={} mode={}",
                d.vertex_count(),
                d.edge_count(),
                d.crossing_count(),
                d.mode()
            );
        }
        Command::Stats { file } => {
            let d = load(&file)?;
            let r = check_identities(&d).map_err(|e| Failure::Violation(e.into()))?;
            let c = &r.census;
            println!("n={}", c.n);
            println!("m={}", c.m);
            println!("x={}", c.x);
            println!("t={}", c.t);
            println!("n7={}", c.n7);
            println!("regions={}", c.regions);
            println!("min_degree={}", c.min_degree);
            let hist: Vec<String> = c
                .degree_histogram
                .iter()
                .map(|(k, n)| format!("{k}:{n}"))
                .collect();
            println!("degree_histogram={}", hist.join(","));
            println!("triangulated={}", r.triangulated);
            for check in &r.checks {
                let status = match check.holds {
                    Some(true) => "holds".to_string(),
                    Some(false) => "fails".to_string(),
                    None => format!("inapplicable ({})", check.applicability),
                };
                println!(
                    "identity {} [{}] left={} right={} {status}",
                    check.identity.name(),
                    check.identity.relation(),
                    check.left,
                    check.right
                );
            }
            if !r.all_hold() {
                return Err(Failure::Violation(anyhow!("an applicable identity fails")));
            }
        }
        Command::Triangulate { file, output } => {
            let d = load(&file)?;
            let tri = triangulate(&d).map_err(|e| Failure::Violation(e.into()))?;
            for step in &tri.steps {
                println!(
                    "insert edge={} endpoints={},{} region_degree={} potential={}->{}",
                    step.new_edge,
                    step.endpoints.0,
                    step.endpoints.1,
                    step.region.degree(),
                    step.potential_before,
                    step.potential_after
                );
            }
            println!("inserted={}", tri.steps.len());
            println!("m={}", tri.drawing.edge_count());
            write(&output, &serialize(&tri.drawing))?;
        }
        Command::Theorem { file } => {
            let d = load(&file)?;
            let r = match verify_min_degree7_theorem(&d) {
                Ok(r) => r,
                Err(e @ TheoremError::MinDegree(_)) => {
                    println!("status=precondition_failed");
                    return Err(Failure::Violation(e.into()));
                }
                Err(e) => return Err(Failure::Violation(e.into())),
            };
            let chain: Vec<String> = r.chain.values().iter().map(i64::to_string).collect();
            println!("inserted_edges={}", r.inserted_edges);
            println!("three_n7={}", r.chain.three_n7);
            println!("degree_bound={}", r.chain.degree_bound);
            println!("crossing_bound={}", r.chain.crossing_bound);
            println!("region_bound={}", r.chain.region_bound);
            println!("final_bound={}", r.chain.final_bound);
            println!("chain={}", chain.join(">="));
            println!("n7={}", r.n7_triangulated);
            println!("n7_original={}", r.n7_original);
            println!("holds={}", r.conclusion_holds());
            if !r.conclusion_holds() {
                return Err(Failure::Violation(anyhow!("conclusion does not hold")));
            }
        }
        Command::Matching { file, certificate } => {
            let d = load(&file)?;
            let g = underlying_graph(&d);
            let m = maximum_matching(&g);
            let cert = match certificate {
                Some(ids) => {
                    let u: BTreeSet<VertexId> = ids.into_iter().map(VertexId).collect();
                    tutte_berge_certificate(&g, &u).map_err(|e| Failure::Usage(e.into()))?
                }
                None => gallai_edmonds_certificate(&g),
            };
            let n = g.vertex_count();
            println!("n={n}");
            println!("m={}", g.edge_count());
            println!("size={}", m.size());
            println!("lemma_bound={}", lemma_matching_bound(n as i64));
            let sep: Vec<String> = cert.separator.iter().map(|v| v.to_string()).collect();
            println!(
                "certificate U={{{}}} odd_components={} bound={}",
                sep.join(","),
                cert.odd_components,
                cert.bound
            );
            println!("size<={}", cert.bound);
            let pairs: Vec<String> = m.matching.iter().map(|(u, v)| format!("{u}-{v}")).collect();
            println!("matching={}", pairs.join(","));
            if m.size() > cert.bound {
                return Err(Failure::Violation(anyhow!(
                    "matching exceeds certificate bound"
                )));
            }
        }
        Command::Construct { what } => match what {
            Construct::Glue {
                copies,
                base,
                hub,
                output,
            } => {
                let base = match base {
                    Some(path) => load(&path)?,
                    None => fixture(Fixture::Fig1).map_err(|e| Failure::Usage(e.into()))?,
                };
                let hub = hub
                    .map(VertexId)
                    .or_else(|| base.vertices().next())
                    .ok_or_else(|| Failure::Usage(anyhow!("base drawing has no vertices")))?;
                let spec =
                    GlueSpec::new(base, hub, copies).map_err(|e| Failure::Usage(e.into()))?;
                let d = glue_copies(&spec);
                println!(
                    "n={} m={} x={} hub={hub} hub_degree={}",
                    d.vertex_count(),
                    d.edge_count(),
                    d.crossing_count(),
                    d.degree(hub)
                );
                write(&output, &serialize(&d))?;
            }
            Construct::Fixture { name, output } => {
                let d = name
                    .parse::<Fixture>()
                    .and_then(fixture)
                    .map_err(|e| Failure::Usage(e.into()))?;
                write(&output, &serialize(&d))?;
            }
        },
        Command::Render {
            file,
            output,
            outer,
        } => {
            let d = load(&file)?;
            let r = render_svg(&d, outer).map_err(|e| Failure::Violation(e.into()))?;
            println!("crossings={}", r.crossings_drawn);
            println!("outer_region={}", r.layout.outer_region);
            println!("sweeps={}", r.layout.sweeps);
            println!(
                "self_check={}",
                if r.check.passed() {
                    "passed"
                } else {
                    "warning"
                }
            );
            for issue in &r.check.issues {
                println!("warning {issue}");
            }
            write(&output, &r.svg)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
