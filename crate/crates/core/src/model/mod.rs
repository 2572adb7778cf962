//! Variable registry, centralized assembly, compact two-stage form, potential
//! evaluation, and price extraction.

pub mod assemble;
pub mod compact;
pub mod potential;
pub mod prices;
pub mod registry;

pub use assemble::{assemble_centralized, AssembledModel, ModelHandles};
pub use compact::{CompactModel, CompactRow};
pub use potential::{potential_value, CostModel, PotentialBreakdown};
pub use prices::extract_prices;
pub use registry::{ModelBuilder, ModelError, RowScope, SigmaAssignment, SigmaId, SigmaKind, Stage, VarId};
