//! Deciders and numerical certificates for graph equivalences: isomorphism,
//! 1-isomorphism (splits at cut vertices), 2-isomorphism (reversals across
//! cut pairs), cycle isomorphism, and agreement of squared-edge-length
//! measurement sets of frameworks in Euclidean space.

pub mod cycles;
pub mod error;
pub mod generate;
pub mod graph;
pub mod measurement;
pub mod whitney;

pub use cycles::{
    cycle_isomorphic, enumerate_cycles, is_cycle_subset, CycleIndex, CycleSet, EdgeBijection,
    DEFAULT_CYCLE_CAP,
};
pub use error::{Error, Result};
pub use graph::{
    block_decomposition, canonical_form, cut_vertices, graph_isomorphic, is_forest,
    BlockDecomposition, CanonicalForm, Edge, Graph, VertexBijection,
};
pub use measurement::{
    cycle_realizable_exact, distinguish_witness, is_member, lengths_squared, project_point,
    realize, reflect_across_cut_pair, sample_measurement_set, Certificate, CertificateRule,
    Configuration, Distinction, EdgeAxisMap, MeasurementPoint, MembershipVerdict, RealizeOptions,
};
pub use whitney::{
    apply_operations, enumerate_two_separations, one_isomorphic, reversal, split, split_fully,
    two_isomorphic, two_isomorphic_search, Operation, SearchOptions, SearchOutcome, SplitSpec,
    TwoSeparation,
};
