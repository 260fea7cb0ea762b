use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("basis vectors are linearly dependent or the map is singular")]
    DegenerateBasis,
    #[error("point is not a member of the lattice")]
    NotLatticePoint,
    #[error("points are collinear")]
    CollinearPoints,
    #[error("parameter outside the curve domain")]
    OutOfDomain,
    #[error("quadrature did not reach the requested tolerance within budget")]
    QuadratureFailure,
    #[error("operation requires a different curve kind: {0}")]
    WrongCurveKind(&'static str),
    #[error("quadratic form is not positive definite")]
    NotPositiveDefinite,
    #[error("mixed curvature sign: curve is not convex")]
    MixedCurvatureSign,
    #[error("curve declared closed but endpoints do not match")]
    NotClosed,
    #[error("candidate box contains too many lattice points ({0})")]
    TooManyCandidates(u128),
    #[error("instance is not integral in lattice coordinates")]
    NotIntegerInstance,
    #[error("chord longer than the diameter")]
    ChordTooLong,
    #[error("perturbation exceeds the stated delta")]
    PerturbationTooLarge,
    #[error("delta not admissible: {0}")]
    DeltaNotAdmissible(String),
    #[error("arc longer than a half circle")]
    ArcTooLong,
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
}
