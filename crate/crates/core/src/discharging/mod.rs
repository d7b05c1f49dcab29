//! Two-stage charge redistribution on C6-saturated graphs, run with exact
//! rationals and audited identity by identity.
//!
//! The pipeline is `choose_root` → `initial_charge` → `classify` →
//! `stage_one` (g1..g5) → `stage_two` (f1..f7). Every rule is computed from
//! a snapshot of the previous stage and applied as a list of transfers, so
//! each rule conserves charge by construction.

mod audit;
mod charge;
mod ledger;
mod root;
mod stage_one;
mod stage_two;

use thiserror::Error;

use crate::graph::GraphError;
use crate::saturation::{SaturationError, Verdict};

pub use audit::{audit, audit_with_root, ledger_checks, AuditBranch, Check, CheckKind, DischargeAudit, Reduction};
pub use charge::Charge;
pub use ledger::{
    classify, initial_charge, AuxKey, AuxValue, ChargeLedger, Note, RuleConflict, Stage, Transfer,
    VertexClass, MAX_LEVEL,
};
pub use root::{choose_root, four_cycles_through, RootChoice, RootRule};
pub use stage_one::stage_one;
pub use stage_two::stage_two;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DischargeError {
    #[error("graph has an isolated vertex")]
    IsolatedVertex,
    #[error("minimum degree is 2 but every degree-2 vertex lies in a triangle")]
    NoGoodRoot,
    #[error("minimum degree {0} is at least 3")]
    DeltaTooLarge(usize),
    #[error("graph is not C6-saturated ({0})")]
    NotSaturated(Verdict),
    #[error("stage {0} has not been computed")]
    MissingStage(Stage),
    #[error(transparent)]
    Level(#[from] GraphError),
    #[error(transparent)]
    Saturation(#[from] SaturationError),
}

/// Runs the whole redistribution from a chosen root.
pub fn run_pipeline(g: &crate::graph::Graph, rc: &RootChoice) -> Result<ChargeLedger, DischargeError> {
    let ledger = classify(initial_charge(g, rc)?);
    stage_two(stage_one(ledger)?)
}
