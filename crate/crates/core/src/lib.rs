//! All-interval twelve-tone series: enumeration, symmetry reduction,
//! classification, a voice-leading metric and threshold-network analysis.

pub mod classify;
pub mod enumeration;
pub mod error;
pub mod export;
pub mod metric;
pub mod network;
pub mod pipeline;
pub mod row;
pub mod symmetry;

pub use classify::{build_catalog, Catalog, CatalogEntry, FlagCounts, PcSet};
pub use enumeration::{generate_normal_forms, generate_primes, is_prime_form, Corpus};
pub use error::{Error, Result};
pub use metric::{vl_distance_sq, DistanceMatrix, SquaredDistance};
pub use network::{AisGraph, WeightMode};
pub use pipeline::{CatalogRun, NetworkAnalysis, OutputFormat, RunConfig, StatsReport};
pub use row::{CyclicIntervalVector, PitchClass, Row};
pub use symmetry::{Constellation, Orbit, Star, SymmetryOp};
