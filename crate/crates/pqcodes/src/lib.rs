//! Exact verification and search toolkit for linear codes whose codewords
//! are subspaces of a finite vector space GF(q)^n.

pub mod catalog;
pub mod code;
pub mod decomp;
pub mod field;
pub mod json;
pub mod lattice;
pub mod search;
pub mod subspace;

pub use code::{AdditionTable, CheckOutcome, CheckReport, SubspaceCode};
pub use field::{make_field, Field, FieldSpec};
pub use lattice::{build_lattice_from_code, build_projective_lattice, FiniteLattice};
pub use search::{
    build_direct_sum_code, complete_addition_table, conjecture_harness, remark_counterexample,
    search_max_linear_code, SearchConfig, SearchOutcome,
};
pub use subspace::Subspace;
