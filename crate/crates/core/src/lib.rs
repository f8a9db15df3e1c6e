//! List-decodable mean estimation for mixture learning.
//!
//! The crate turns any list-decodable mean estimator into a mixture learner
//! whose error and list size adapt to the relative weight of each component.
//! The main entry point is [`pipeline::full_algorithm`].

pub mod baselines;
pub mod datagen;
pub mod error;
pub mod format;
pub mod inner;
pub mod learners;
pub mod linalg;
pub mod metrics;
pub mod outer;
mod par;
pub mod pipeline;
pub mod rng;
pub mod tail;
pub mod types;

pub use error::{LdmlError, Result};
pub use types::{AlgoConfig, DataSet, Hypothesis, HypothesisList, Label, Metrics, Vector};
