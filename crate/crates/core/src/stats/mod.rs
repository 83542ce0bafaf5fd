//! Statistical core: rank transforms, correlation with significance,
//! rater agreement and paired/unpaired rank tests.

mod correlation;
mod dist;
mod icc;
mod mann_whitney;
mod random;
mod rank;
mod wilcoxon;
mod williams;

pub use correlation::{fisher_z_compare, pearson, spearman, CorrelationResult, FisherZResult};
pub use icc::{icc, icc_all, IccModel, IccResult};
pub use mann_whitney::{mann_whitney_u, MannWhitneyResult};
pub use random::{random_baseline, RANDOM_GENERATOR};
pub use rank::rank_with_ties;
pub use wilcoxon::{
    wilcoxon_signed_rank, wilcoxon_signed_rank_with, WilcoxonMethod, WilcoxonResult, ZeroMethod, WILCOXON_EXACT_MAX_N,
};
pub use williams::{williams_test, WilliamsResult};

/// Significance level behind every "*" mark.
pub const DEFAULT_ALPHA: f64 = 0.05;
