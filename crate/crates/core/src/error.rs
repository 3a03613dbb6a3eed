use serde::Serialize;
use thiserror::Error;

use crate::angle_dynamics::Angle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InvalidReason {
    NotMisiurewicz,
    ConjugateLimbs,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum FsrError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not a Misiurewicz angle (odd denominator)")]
    NotMisiurewicz(Angle),
    #[error("no limb with q <= {bound} contains {theta}; raise the limb bound")]
    LimbNotFound { theta: Angle, bound: usize },
    #[error("{what} did not resolve within bound {bound}")]
    DepthExceeded { what: String, bound: usize },
    #[error("point {0} does not lie on the Hubbard tree")]
    NotOnTree(String),
    #[error("consistency failure: {0}")]
    ConsistencyFailure(String),
    #[error("invalid mating {theta_alpha} ⊥ {theta_beta}: {reason:?}")]
    InvalidMating { theta_alpha: Angle, theta_beta: Angle, reason: InvalidReason },
    #[error("ray closure exceeded {bound} joins")]
    ClosureDepthExceeded { bound: usize },
    #[error("preimage generations exceeded bound {bound}")]
    GenerationBoundExceeded { bound: usize },
    #[error("skeleton is disconnected: no class joins the two trees")]
    DisconnectedSkeleton,
    #[error("Euler characteristic violated: V={v} E={e} F={f}")]
    EulerViolation { v: usize, e: usize, f: usize },
    #[error("digon repair failed after {attempts} attempts")]
    RepairFailed { attempts: usize },
    #[error("mating is obstructed; the pullback is pinched")]
    ObstructedMating,
    #[error("subdivision check failed: {0}")]
    NotASubdivision(String),
    #[error("single-tree criterion failed: {}", .0.join("; "))]
    CriterionFailed(Vec<String>),
    #[error("no integer eigenvalue in 2..={bound} with a positive eigenvector")]
    NoIntegerEigenvalue { bound: usize },
    #[error("matrix is reducible")]
    ReducibleMatrix,
    #[error("no consistent angle assignment: {0}")]
    NoConsistentSolution(String),
    #[error("pseudo-equator is pinched")]
    Pinched,
    #[error("requested level {level} exceeds expansion bound {bound}")]
    LevelTooDeep { level: usize, bound: usize },
}

pub type Result<T> = std::result::Result<T, FsrError>;
