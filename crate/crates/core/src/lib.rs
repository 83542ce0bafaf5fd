//! Automatic evaluation metrics for data-to-text generation and the tools to
//! check them against human judgments.
//!
//! Metric and statistics code is generic over [`Scalar`] (`f32` or `f64`).
//! The aliases below fix the scalar for the common cases.

pub mod corpus;
pub mod error;
pub mod grammar_metrics;
pub mod lexicon;
pub mod meta_eval;
pub mod metric;
pub mod scalar;
pub mod scorer;
pub mod stats;
pub mod textproc;
pub mod word_metrics;

pub use error::{Error, Result};
pub use metric::{MetricField, MetricVector, METRIC_COUNT};
pub use scalar::Scalar;

pub type MetricVector64 = MetricVector<f64>;
pub type MetricVector32 = MetricVector<f32>;
pub type CorrelationResult64 = stats::CorrelationResult<f64>;
pub type CorrelationResult32 = stats::CorrelationResult<f32>;
pub type IccResult64 = stats::IccResult<f64>;
pub type WilcoxonResult64 = stats::WilcoxonResult<f64>;
pub type WilliamsResult64 = stats::WilliamsResult<f64>;
pub type SurfaceStats64 = grammar_metrics::SurfaceStats<f64>;
