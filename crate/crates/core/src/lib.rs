//! LOCC convertibility of bipartite pure states, necessary conditions on
//! entanglement catalysts, catalyst dimension bounds, exact grid search for
//! catalysts, and conversion probability metrics.
//!
//! Everything is generic over [`Scalar`]; the exact [`Rational`] instance is
//! the reference, while `f64`/`f32` instances compare with a small tolerance
//! on unit sums and prefix sums.

pub mod convertibility;
pub mod error;
pub mod filters;
pub mod metrics;
pub mod protocol;
pub mod sampling;
pub mod scalar;
pub mod search;
pub mod serde_support;
pub mod vectors;

pub use convertibility::{
    l_set, largest_below_uniform, lemma2_sufficient, nielsen_convertible, universal_rank_reach, Classification,
    LSetReport,
};
pub use error::{Error, ErrorKind, Result};
pub use filters::{
    dimension_bound, filter_cor1, filter_cor3, filter_pra99, filter_prop1, filter_rem2, filter_t1, filter_t2,
    run_battery, two_dim_feasible_interval, BatteryConfig, BatteryReport, BoundParams, CatalysisPair, Comparison,
    FilterId, FilterVerdict, RatioInterval, Witness,
};
pub use metrics::{
    majorization_distance, metric_report, p_max_catalytic, p_max_plain, prop2_check, prop2_report, MetricReport,
};
pub use protocol::{protocol_feasible, protocol_trace, Branch, EnsembleSpec, FeasibilityReport, ProtocolTrace};
pub use scalar::{Quotient, Rational, Scalar};
pub use search::{
    default_denominator, grid_scan, min_catalyst_dimension, min_catalyst_dimension_with, oracle_catalyzes, search_catalyst, GridSpec,
    MinDimensionReport, SearchOptions, SearchOutcome,
};
pub use vectors::{first_majorization_violation, majorizes, quantize, SchmidtVector};

/// Exact probability vector, the reference instance.
pub type ProbVector = SchmidtVector<Rational>;
pub type ProbVectorF64 = SchmidtVector<f64>;
pub type ProbVectorF32 = SchmidtVector<f32>;
pub type ExactPair = CatalysisPair<Rational>;
