//! Spectral clustering with a deflation-based embedding: similarity graph,
//! normalized Laplacian, embedding, k-means and mutual-information scoring.

mod dataset;
mod embed;
mod experiment;
mod graph;
mod kmeans;
mod mutual_info;

pub use dataset::{synthetic_blobs, Dataset};
pub use embed::{spectral_embed, EmbedOptions, SpectrumEnd};
pub use experiment::{
    cluster_once, run_clustering_experiment, write_clustering_outputs, ClusteringConfig, ClusteringReport, MiRow,
    MiSummary, TREND_ALLOWED_INVERSIONS, TREND_TOLERANCE,
};
pub use graph::{build_rnn_graph, normalized_laplacian, SimilarityGraph};
pub use kmeans::{kmeans, KMeansResult, DEFAULT_MAX_ITERS};
pub use mutual_info::{entropy, mutual_information};
