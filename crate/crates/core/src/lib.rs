//! Root systems, the quantum-McKay Frobenius algebra and its checks.

pub mod campaign;
pub mod crc;
pub mod error;
pub mod folding;
pub mod gijk;
pub mod iso;
pub mod mckay;
pub mod par;
pub mod point;
pub mod qh;
pub mod rational;
pub mod root_system;
pub mod scalar;
pub mod series;

pub use campaign::{run_check, CampaignConfig, CheckKind, CheckOutcome};
pub use error::{Error, Result};
pub use folding::{fold, FoldedSystem};
pub use mckay::{build_group, GroupData};
pub use par::Execution;
pub use point::{EvalPoint, PointBackend, PointValue};
pub use qh::{AlgebraElement, LatticeMap, MultiplicationTable};
pub use rational::Rational;
pub use root_system::{Family, Root, RootSystem, RootSystemType};
pub use scalar::{Backend, Scalar};
pub use series::{Laurent, QSeries, SeriesBackend};
