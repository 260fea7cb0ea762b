//! Lattice points on and near positively curved plane arcs: brute-force
//! counting, explicit curvature-based upper bounds, and the sharpness
//! families that show those bounds cannot be improved.

pub mod bounds;
pub mod counting;
pub mod curve;
pub mod error;
pub mod geom;
pub mod lattice;
pub mod quad;
pub mod verify;

pub use bounds::{BoundVerdict, Comparison, Precondition, TheoremId};
pub use counting::{CountMode, CountReport, CountedPoint};
pub use curve::{Curve, CurveSpec, CurveStats};
pub use error::{Error, Result};
pub use geom::{AffineMap2, Mat2, Vec2};
pub use lattice::{Lattice, LatticeSpec};
pub use verify::{
    CampaignConfig, CampaignReport, FailureDump, IntersectionVerdict, SharpnessReport,
    TheoremTally,
};
