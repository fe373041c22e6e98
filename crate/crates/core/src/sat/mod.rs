//! Compiler from rectilinear planar monotone 3-SAT to untangling hardness
//! instances, with enumeration-backed gadget verification.
//!
//! The building blocks are concrete coordinate templates whose combinatorial
//! behavior (crossing patterns, sequence counts, sequence lengths, final
//! matchings) is machine-checked exhaustively at construction time. The
//! assembled instance has a short untangle sequence exactly when the source
//! formula is satisfiable; a falsified clause forces its padded output chain
//! and with it an arbitrarily long detour.

mod assembly;
mod branching;
mod clause_gadget;
mod embedding;
mod formula;
mod or_gadget;
mod padding;
mod report;
mod variable_gadget;

pub use assembly::{
    assemble_m_phi, decide_via_untangling, Assembly, AssemblyError, Satisfiability,
};
pub use branching::verify_branching;
pub use clause_gadget::{build_clause_gadget, ClauseGadget};
pub use embedding::{derive_embedding, validate_embedding, EdgeDrop, Embedding, Rect};
pub use formula::{parse_formula, FormulaError, Polarity, RpmClause, RpmFormula};
pub use or_gadget::{build_or_gadget, Frame, OrGadget};
pub use padding::{build_padding, canonical_trigger, Padding};
pub use report::GadgetReport;
pub use variable_gadget::{build_variable_gadget, VariableGadget};

use thiserror::Error;

/// A violated constraint of a gadget definition, caught by the exhaustive
/// construction-time audit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("gadget constraint unsatisfied: {0}")]
pub struct ConstraintUnsatisfied(pub String);
