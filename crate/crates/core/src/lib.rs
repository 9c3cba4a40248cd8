//! Finite-model toolkit for orthomodular lattices and their modal layer:
//! construction and law checking, Boolean blocks and filters, possibility
//! operators with classical-consequence sets, global-valuation and
//! compatible-actualization searches, context hypergraphs with
//! exactly-one-per-block assignment search, and Greechie pasting.

pub mod boolean;
pub mod catalog;
pub mod format;
pub mod hypergraph;
pub mod lattice;
pub mod modal;
pub mod paste;
pub mod valuation;

pub use boolean::{
    all_boolean_sublattices, enumerate_two_valuations, extend_to_maximal, generated_filter,
    maximal_blocks, maximal_filters, quotient, separating_maximal_filter, Block, BlockError,
    Filter, FilterError, Quotient, TwoValuation,
};
pub use catalog::{catalog, CatalogEntry, UnknownFixture, CATALOG_NAMES};
pub use format::{
    document_kind, emit_hypergraph, emit_lattice, hasse_dot, parse_hypergraph, parse_lattice,
    DocumentKind, ParseError, ParseErrorKind, FORMAT_VERSION,
};
pub use hypergraph::{
    count_assignments, hypergraph_assignment, hypergraph_assignment_with, hypergraph_mwi_report,
    AssignmentOutcome, ContextHypergraph, HypergraphError, HypergraphMwiReport,
    ParityCertificate,
};
pub use lattice::{
    BoundKind, BuildError, FiniteOrtholattice, Law, LawViolation, TripleReport,
};
pub use modal::{
    AtomPairWitness, AxiomCheck, CommonComplementReport, ManyWorldsOutcome, ModalError,
    ModalLattice, PossibilitySpace, SAxiom,
};
pub use paste::{find_short_loop, paste_greechie, PasteError};
pub use valuation::{
    check_mks, compatible_actualization, count_global_valuations, find_global_valuation,
    mwi_family_check, GlobalValuation, MksReport, MwiDesignation, MwiFamily, MwiReport,
    PerWorldWitness, ValuationError,
};
