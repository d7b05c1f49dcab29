//! Tools for cycle-saturated graphs: a bitset graph kernel, saturation
//! certificates, the C6-saturated construction family, exact saturation
//! number search, and an exact-arithmetic discharging auditor.

pub mod construction;
pub mod discharging;
pub mod graph;
pub mod graph6;
pub mod saturation;
pub mod search;

pub use graph::{bfs_levels, contains_cycle, paths_between, CyclePath, Graph, GraphError, LevelPartition, PathKind, VertexSet};
pub use graph6::{from_graph6, to_graph6};
pub use saturation::{check_saturated, SaturationReport, Verdict};
pub use discharging::{audit, Charge, ChargeLedger, DischargeAudit, DischargeError, Stage};
