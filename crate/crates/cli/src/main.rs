use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use ais_core::classify::{is_link, is_parallel_inverted, is_symmetric_inverted, Catalog};
use ais_core::export;
use ais_core::network::{maximal_cliques, DEFAULT_THRESHOLD_SQ};
use ais_core::pipeline::{fit_degrees, write_catalog_files, write_network_files, CatalogRun};
use ais_core::symmetry::{constellation, star, ColumnOp, RowOp};
use ais_core::{
    NetworkAnalysis, OutputFormat, Row, RunConfig, StatsReport, SymmetryOp, WeightMode,
};

#[derive(Debug, Parser)]
#[command(
    name = "ais",
    version,
    about = "All-interval twelve-tone rows: catalog, symmetry and voice-leading network"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Connect two rows when their squared voice-leading distance is at most N
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_THRESHOLD_SQ)]
    threshold_sq: u32,
    /// Edge weight: inv-d2 (1/d²) or inv-d (1/d)
    #[arg(long, global = true, default_value = "inv-d2", value_parser = parse_weight)]
    weight: WeightMode,
    /// Seed for community detection
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    seed: u64,
    /// Output directory for written files
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Comma-separated subset of csv,json,gexf,graphml,edgelist
    #[arg(long, global = true, value_name = "LIST", default_value = "csv,json,gexf,graphml,edgelist", value_parser = parse_formats)]
    format: Formats,
}

#[derive(Debug, Clone)]
struct Formats(Vec<OutputFormat>);

fn parse_weight(s: &str) -> Result<WeightMode, String> {
    s.parse().map_err(|e: ais_core::Error| e.to_string())
}

fn parse_formats(s: &str) -> Result<Formats, String> {
    OutputFormat::parse_list(s)
        .map(Formats)
        .map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate the prime forms and print or write the labeled catalog
    Generate,
    /// Apply a symmetry operation to a row or catalog label
    Transform {
        /// Row such as "[0 1 3 7 2 5 11 10 8 4 9 6]" or a label such as 12-0P
        row: String,
        /// T:n, I, R, M, Q, star or constellation
        op: String,
    },
    /// Print the S/P/L classification of rows or labels (all prime forms if none given)
    Classify { rows: Vec<String> },
    /// Build the threshold network, write graph files and print a summary
    Network,
    /// List the network neighbours of a row, nearest first
    Neighbors { row: String },
    /// List maximal cliques of the threshold network
    Cliques {
        /// Smallest clique size to print
        #[arg(long, default_value_t = 3)]
        min_size: usize,
    },
    /// Print the full statistics report as JSON
    Stats,
    /// Fit the degree distribution and print the fit as JSON
    FitDegree,
    /// Dump (label_a, label_b, d_squared) for every pair within a cap
    Distances {
        /// Largest squared distance to include
        #[arg(long, value_name = "N", default_value_t = DEFAULT_THRESHOLD_SQ)]
        cap: u32,
    },
}

/// Failure with the exit code it maps to.
enum Failure {
    Usage(anyhow::Error),
    Data(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Data(e)
    }
}

impl From<ais_core::Error> for Failure {
    fn from(e: ais_core::Error) -> Self {
        Failure::Data(e.into())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.into())
    }
}

fn usage<E: Into<anyhow::Error>>(e: E) -> Failure {
    Failure::Usage(e.into())
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        // downstream reader closed early, e.g. `ais generate | head`
        Err(Failure::Data(e)) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(Failure::Data(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|cause| {
        let kind = cause
            .downcast_ref::<io::Error>()
            .map(io::Error::kind)
            .or_else(|| {
                cause
                    .downcast_ref::<ais_core::Error>()
                    .and_then(ais_core::Error::io_kind)
            });
        kind == Some(io::ErrorKind::BrokenPipe)
    })
}

fn config(g: &GlobalOpts) -> RunConfig {
    RunConfig {
        threshold_sq: g.threshold_sq,
        weight_mode: g.weight,
        louvain_seed: g.seed,
        output_dir: g.out.clone().unwrap_or_else(|| PathBuf::from(".")),
        formats: g.format.0.clone(),
    }
}

fn run(cli: Cli) -> CmdResult {
    let cfg = config(&cli.global);
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Generate => generate(&cli.global, &cfg, &mut out)?,
        Command::Transform { row, op } => transform(&row, &op, &mut out)?,
        Command::Classify { rows } => classify(&rows, &mut out)?,
        Command::Network => network(&cfg, &mut out)?,
        Command::Neighbors { row } => neighbors(&row, &cfg, &mut out)?,
        Command::Cliques { min_size } => cliques(min_size, &cfg, &mut out)?,
        Command::Stats => {
            let run = CatalogRun::generate()?;
            let analysis = NetworkAnalysis::run(&run.catalog, &cfg)?;
            let report = StatsReport::compute(&run, &analysis, &cfg);
            serde_json::to_writer_pretty(&mut out, &report).context("writing stats")?;
            writeln!(out)?;
        }
        Command::FitDegree => {
            let run = CatalogRun::generate()?;
            let analysis = NetworkAnalysis::run(&run.catalog, &cfg)?;
            let fit = fit_degrees(&analysis.degrees.histogram);
            serde_json::to_writer_pretty(&mut out, &fit).context("writing fit")?;
            writeln!(out)?;
        }
        Command::Distances { cap } => distances(cap, &cli.global, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

/// Accepts a bracketed/comma row literal or a catalog label.
fn resolve_row(input: &str, catalog: Option<&Catalog>) -> Result<Row, Failure> {
    let looks_like_row = input.contains(['[', ',', ' ']);
    if looks_like_row {
        return input.parse::<Row>().map_err(usage);
    }
    let catalog =
        catalog.ok_or_else(|| usage(anyhow::anyhow!("label {input:?} needs the catalog")))?;
    catalog.lookup(input).map(|e| e.row).map_err(usage)
}

fn generate(g: &GlobalOpts, cfg: &RunConfig, out: &mut impl Write) -> CmdResult {
    let run = CatalogRun::generate()?;
    match &g.out {
        Some(dir) => {
            for path in write_catalog_files(&run.catalog, dir, &cfg.formats)? {
                writeln!(out, "{}", path.display())?;
            }
        }
        None => export::write_catalog_csv(out, &run.catalog)?,
    }
    Ok(())
}

fn transform(input: &str, op: &str, out: &mut impl Write) -> CmdResult {
    let run;
    let catalog = if input.contains(['[', ',', ' ']) {
        None
    } else {
        run = CatalogRun::generate()?;
        Some(&run.catalog)
    };
    let row = resolve_row(input, catalog)?;
    match op.to_ascii_lowercase().as_str() {
        "star" => {
            let s = star(&row).map_err(usage)?;
            for (name, r) in s.cells() {
                writeln!(out, "{name:<2} {r}")?;
            }
        }
        "constellation" => {
            let c = constellation(&row).map_err(usage)?;
            for row_op in RowOp::ALL {
                for column_op in ColumnOp::ALL {
                    let name = format!("{}.{}", row_op.name(), column_op.name());
                    writeln!(out, "{name:<5} {}", c.cell(row_op, column_op))?;
                }
            }
        }
        _ => {
            let op: SymmetryOp = op.parse().map_err(usage)?;
            writeln!(out, "{}", op.apply(&row).map_err(usage)?)?;
        }
    }
    Ok(())
}

fn classify(inputs: &[String], out: &mut impl Write) -> CmdResult {
    let run = CatalogRun::generate()?;
    let catalog = &run.catalog;
    writeln!(out, "label\trow\ts\tp\tl\tlink_windows")?;
    let rows: Vec<Row> = if inputs.is_empty() {
        catalog.rows()
    } else {
        inputs
            .iter()
            .map(|s| resolve_row(s, Some(catalog)))
            .collect::<Result<_, _>>()?
    };
    for row in rows {
        let row = row.require_normal_form().map_err(usage)?;
        let label = catalog.find_row(&row).map_or("-", |e| e.label.as_str());
        let (l, windows) = is_link(&row)?;
        let windows: Vec<String> = windows.iter().map(ToString::to_string).collect();
        writeln!(
            out,
            "{label}\t{row}\t{}\t{}\t{}\t{}",
            u8::from(is_symmetric_inverted(&row)?),
            u8::from(is_parallel_inverted(&row)?),
            u8::from(l),
            windows.join(";")
        )?;
    }
    Ok(())
}

fn network(cfg: &RunConfig, out: &mut impl Write) -> CmdResult {
    let run = CatalogRun::generate()?;
    let analysis = NetworkAnalysis::run(&run.catalog, cfg)?;
    let report = StatsReport::compute(&run, &analysis, cfg);
    let dir = &cfg.output_dir;
    let mut written = write_catalog_files(&run.catalog, dir, &cfg.formats)?;
    written.extend(write_network_files(
        &run.catalog,
        &analysis,
        &report,
        dir,
        &cfg.formats,
    )?);
    writeln!(out, "threshold_sq\t{}", report.threshold_sq)?;
    writeln!(out, "nodes\t{}", report.nodes)?;
    writeln!(out, "edges\t{}", report.edges)?;
    writeln!(out, "components\t{}", report.components)?;
    writeln!(out, "giant_component\t{}", report.giant_component)?;
    writeln!(out, "isolated\t{}", report.isolated)?;
    writeln!(out, "average_degree\t{:.4}", report.average_degree)?;
    writeln!(out, "close_coupled\t{}", report.close_coupled)?;
    match (report.modularity, report.communities) {
        (Some(q), Some(c)) => {
            writeln!(out, "communities\t{c}")?;
            writeln!(out, "modularity\t{q:.4}")?;
        }
        _ => writeln!(out, "communities\t-")?,
    }
    for path in written {
        writeln!(out, "wrote\t{}", path.display())?;
    }
    Ok(())
}

fn neighbors(input: &str, cfg: &RunConfig, out: &mut impl Write) -> CmdResult {
    let run = CatalogRun::generate()?;
    let row = resolve_row(input, Some(&run.catalog))?;
    let node = run
        .catalog
        .find_row(&row)
        .ok_or_else(|| usage(anyhow::anyhow!("{row} is not a prime form in the catalog")))?
        .index;
    let analysis = NetworkAnalysis::run(&run.catalog, cfg)?;
    for (n, d2) in analysis.neighbors_by_distance(node) {
        let e = &run.catalog.entries()[n];
        writeln!(out, "{}\t{}\t{}", e.label, d2, e.row)?;
    }
    Ok(())
}

fn cliques(min_size: usize, cfg: &RunConfig, out: &mut impl Write) -> CmdResult {
    let run = CatalogRun::generate()?;
    let analysis = NetworkAnalysis::run(&run.catalog, cfg)?;
    for clique in maximal_cliques(&analysis.graph) {
        if clique.len() < min_size {
            break;
        }
        let labels: Vec<&str> = clique
            .iter()
            .map(|&i| run.catalog.entries()[i].label.as_str())
            .collect();
        writeln!(out, "{}\t{}", clique.len(), labels.join(" "))?;
    }
    Ok(())
}

fn distances(cap: u32, g: &GlobalOpts, out: &mut impl Write) -> CmdResult {
    let run = CatalogRun::generate()?;
    let matrix = ais_core::DistanceMatrix::compute(&run.catalog.rows());
    match &g.out {
        Some(dir) => {
            let path = write_distances(dir, &matrix, &run.catalog, cap)?;
            writeln!(out, "{}", path.display())?;
        }
        None => export::write_distances_csv(out, &matrix, &run.catalog, cap)?,
    }
    Ok(())
}

fn write_distances(
    dir: &Path,
    matrix: &ais_core::DistanceMatrix,
    catalog: &Catalog,
    cap: u32,
) -> anyhow::Result<PathBuf> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join("distances.csv");
    let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    export::write_distances_csv(BufWriter::new(file), matrix, catalog, cap)?;
    Ok(path)
}
