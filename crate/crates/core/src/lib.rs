//! Crisp and lattice-valued ambiguous representations between finite
//! universes.

pub mod capacity;
pub mod cli;
pub mod crisp;
pub mod fuzzy;
pub mod generators;
pub mod hyperencoding;
pub mod hyperspace;
pub mod json;
pub mod lattice;
pub mod laws;
pub mod oracle;

pub use capacity::LCapacity;
pub use crisp::CrispAmbRep;
pub use fuzzy::LFuzzyAmbRep;
pub use generators::{GridWindow, MetricTable};
pub use hyperencoding::TripleSet;
pub use hyperspace::{FiniteSpace, InclusionHyperspace, SetFamily, Subset};
pub use lattice::{Elem, FiniteLattice, TNorm};

pub type MetricTableF64 = MetricTable<f64>;
pub type MetricTableF32 = MetricTable<f32>;
pub type RationalMetricTable = MetricTable<num_rational::Ratio<i64>>;
