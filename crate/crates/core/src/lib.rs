//! Recolouring graphs of bounded maximum degree: constructive paths between
//! colourings, an exhaustive reconfiguration-graph oracle, and decision
//! procedures built on both.

pub mod classifier;
pub mod colouring;
pub mod corpus;
pub mod degeneracy;
pub mod explorer;
pub mod graph;
pub mod recolour;
pub mod sequence;

pub use classifier::{
    classify_instance, decide_k_colour_path, frozen_census, Answer, PathDecision, Reason,
    TypeReport,
};
pub use colouring::{is_frozen, is_proper, Colour, Colouring, ColouringError};
pub use degeneracy::{degeneracy, degeneracy_ordering, DegeneracyOrdering};
pub use explorer::{
    build_reconfig_graph, oracle_distance, ExplorerError, ReconfigGraph, ReconfigGraphSummary,
    DEFAULT_STATE_LIMIT,
};
pub use graph::{parse_edge_list, to_edge_list, Graph, GraphError, ParseError, Vertex};
pub use recolour::{eliminate_top_colour, find_path_non_regular, EngineError};
pub use sequence::{
    apply_sequence, reverse_sequence, RecolouringSequence, SequenceError, Step,
};
