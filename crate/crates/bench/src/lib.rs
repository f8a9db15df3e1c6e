//! Experiment harness for the `ldml` mixture learner: seed sweeps over
//! synthetic attacked mixtures, metric aggregation, CSV reports and SVG
//! bar charts.

pub mod config;
pub mod error;
pub mod experiment;
pub mod plot;
pub mod presets;
pub mod report;

pub use config::RawConfig;
pub use error::{BenchError, Result};
pub use experiment::{run_experiment, worker_count, Algorithm, DatasetMode, ExperimentSpec, MetricMode, Params};
pub use plot::{emit_plot, render_svg};
pub use report::{emit_csv, load_csv, read_csv, summarize, write_csv, ExperimentReport, Outcome, Quantiles, Row};
