//! End-to-end runs: catalog generation, network analysis and the stats report.

use std::collections::BTreeMap;
use std::fmt;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::classify::{build_catalog, Catalog, FlagCounts};
use crate::enumeration::{distinct_orbits, Corpus};
use crate::error::{Error, Result};
use crate::export;
use crate::metric::{close_coupled_pairs, DistanceMatrix};
use crate::network::{
    connected_components, degree_points, degree_stats, fit_pure_power_law, fit_truncated_power_law,
    hermits, louvain_communities, AisGraph, CommunityAssignment, DegreeStats, PowerLawFit,
    WeightMode, DEFAULT_THRESHOLD_SQ, FIT_METHOD,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    Gexf,
    Graphml,
    Edgelist,
}

impl OutputFormat {
    pub const ALL: [OutputFormat; 5] = [
        OutputFormat::Csv,
        OutputFormat::Json,
        OutputFormat::Gexf,
        OutputFormat::Graphml,
        OutputFormat::Edgelist,
    ];

    /// Parses a comma-separated list such as `csv,json`.
    pub fn parse_list(s: &str) -> Result<Vec<OutputFormat>> {
        let mut formats: Vec<OutputFormat> = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?;
        formats.sort_unstable();
        formats.dedup();
        if formats.is_empty() {
            return Err(Error::parse(s, "at least one output format is required"));
        }
        Ok(formats)
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Gexf => "gexf",
            OutputFormat::Graphml => "graphml",
            OutputFormat::Edgelist => "edgelist",
        })
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OutputFormat::ALL
            .into_iter()
            .find(|f| f.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::parse(
                    s,
                    "format must be one of csv, json, gexf, graphml, edgelist",
                )
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub threshold_sq: u32,
    pub weight_mode: WeightMode,
    pub louvain_seed: u64,
    pub output_dir: PathBuf,
    pub formats: Vec<OutputFormat>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            threshold_sq: DEFAULT_THRESHOLD_SQ,
            weight_mode: WeightMode::default(),
            louvain_seed: 0,
            output_dir: PathBuf::from("."),
            formats: OutputFormat::ALL.to_vec(),
        }
    }
}

/// Corpus plus the labeled catalog of its prime forms.
#[derive(Debug, Clone)]
pub struct CatalogRun {
    pub corpus: Corpus,
    pub catalog: Catalog,
}

impl CatalogRun {
    pub fn generate() -> Result<Self> {
        let corpus = Corpus::generate();
        let catalog = build_catalog(&corpus.primes)?;
        Ok(CatalogRun { corpus, catalog })
    }
}

/// Everything derived from the threshold graph.
#[derive(Debug, Clone)]
pub struct NetworkAnalysis {
    pub matrix: DistanceMatrix,
    pub graph: AisGraph,
    pub degrees: DegreeStats,
    pub components: Vec<Vec<usize>>,
    pub hermits: Vec<usize>,
    /// `None` when the graph has no edges.
    pub communities: Option<CommunityAssignment>,
    pub close_coupled: Vec<(usize, usize)>,
}

impl NetworkAnalysis {
    pub fn run(catalog: &Catalog, config: &RunConfig) -> Result<Self> {
        let matrix = DistanceMatrix::compute(&catalog.rows());
        Self::from_matrix(matrix, config)
    }

    pub fn from_matrix(matrix: DistanceMatrix, config: &RunConfig) -> Result<Self> {
        let graph = AisGraph::from_matrix(&matrix, config.threshold_sq, config.weight_mode);
        let communities = match louvain_communities(&graph, config.louvain_seed) {
            Ok(c) => Some(c),
            Err(Error::EmptyGraph) => None,
            Err(e) => return Err(e),
        };
        Ok(NetworkAnalysis {
            degrees: degree_stats(&graph),
            components: connected_components(&graph),
            hermits: hermits(&graph),
            close_coupled: close_coupled_pairs(&matrix),
            communities,
            graph,
            matrix,
        })
    }

    /// Neighbours of `node` sorted by ascending d², then catalog index.
    pub fn neighbors_by_distance(&self, node: usize) -> Vec<(usize, u32)> {
        let mut out: Vec<(usize, u32)> = self
            .graph
            .incident(node)
            .map(|(n, e)| (n, e.d_squared.value()))
            .collect();
        out.sort_by_key(|&(n, d)| (d, n));
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FitSummary {
    pub method: &'static str,
    pub truncated: Option<PowerLawFit>,
    pub pure: Option<PowerLawFit>,
}

pub fn fit_degrees(histogram: &BTreeMap<usize, usize>) -> FitSummary {
    let points = degree_points(histogram);
    FitSummary {
        method: FIT_METHOD,
        truncated: fit_truncated_power_law(&points).ok(),
        pure: fit_pure_power_law(&points).ok(),
    }
}

/// Aggregate figures of a run; every number is computed, none is stored.
#[derive(Debug, Clone, Serialize)]
pub struct StatsReport {
    pub threshold_sq: u32,
    pub weight_mode: WeightMode,
    pub louvain_seed: u64,
    pub normal_forms: usize,
    pub inversion_reduced: usize,
    pub primes: usize,
    pub symmetry_orbits: usize,
    pub flags: FlagCounts,
    pub nodes: usize,
    pub edges: usize,
    pub components: usize,
    pub giant_component: usize,
    pub isolated: usize,
    pub average_degree: f64,
    pub max_degree: usize,
    pub degree_histogram: BTreeMap<usize, usize>,
    pub modularity: Option<f64>,
    pub communities: Option<usize>,
    pub degree_fit: FitSummary,
    pub close_coupled: usize,
    pub max_distance_sq: u32,
}

impl StatsReport {
    pub fn compute(run: &CatalogRun, network: &NetworkAnalysis, config: &RunConfig) -> Self {
        StatsReport {
            threshold_sq: config.threshold_sq,
            weight_mode: config.weight_mode,
            louvain_seed: config.louvain_seed,
            normal_forms: run.corpus.normal_forms.len(),
            inversion_reduced: run.corpus.inversion_reduced.len(),
            primes: run.corpus.primes.len(),
            symmetry_orbits: distinct_orbits(&run.corpus.normal_forms).len(),
            flags: run.catalog.flag_counts(),
            nodes: network.graph.node_count(),
            edges: network.graph.edge_count(),
            components: network.components.len(),
            giant_component: network.components.first().map_or(0, Vec::len),
            isolated: network.hermits.len(),
            average_degree: network.degrees.average,
            max_degree: network.degrees.max,
            degree_histogram: network.degrees.histogram.clone(),
            modularity: network.communities.as_ref().map(|c| c.modularity),
            communities: network.communities.as_ref().map(|c| c.community_count),
            degree_fit: fit_degrees(&network.degrees.histogram),
            close_coupled: network.close_coupled.len(),
            max_distance_sq: network.matrix.max().value(),
        }
    }
}

fn create(dir: &Path, name: &str) -> Result<(PathBuf, BufWriter<File>)> {
    let path = dir.join(name);
    let file = File::create(&path)?;
    Ok((path, BufWriter::new(file)))
}

/// Writes `catalog.csv` and/or `catalog.json` into `dir`, creating it if needed.
pub fn write_catalog_files(
    catalog: &Catalog,
    dir: &Path,
    formats: &[OutputFormat],
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    if formats.contains(&OutputFormat::Csv) {
        let (path, w) = create(dir, "catalog.csv")?;
        export::write_catalog_csv(w, catalog)?;
        written.push(path);
    }
    if formats.contains(&OutputFormat::Json) {
        let (path, w) = create(dir, "catalog.json")?;
        export::write_catalog_json(w, catalog)?;
        written.push(path);
    }
    Ok(written)
}

/// Writes the requested graph files plus `stats.json` into `dir`.
pub fn write_network_files(
    catalog: &Catalog,
    network: &NetworkAnalysis,
    report: &StatsReport,
    dir: &Path,
    formats: &[OutputFormat],
) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let communities = network.communities.as_ref();
    for format in formats {
        match format {
            OutputFormat::Gexf => {
                let (path, w) = create(dir, "network.gexf")?;
                export::write_gexf(w, &network.graph, catalog, communities)?;
                written.push(path);
            }
            OutputFormat::Graphml => {
                let (path, w) = create(dir, "network.graphml")?;
                export::write_graphml(w, &network.graph, catalog, communities)?;
                written.push(path);
            }
            OutputFormat::Edgelist => {
                let (path, w) = create(dir, "edges.csv")?;
                export::write_edgelist_csv(w, &network.graph, catalog)?;
                written.push(path);
            }
            OutputFormat::Csv | OutputFormat::Json => {}
        }
    }
    let (path, mut w) = create(dir, "stats.json")?;
    serde_json::to_writer_pretty(&mut w, report)?;
    std::io::Write::write_all(&mut w, b"\n")?;
    written.push(path);
    Ok(written)
}
