//! Order-of-smoothness computations for vectors and linear operators on
//! finite-dimensional normed spaces.
//!
//! The crate works over exact rationals on all polyhedral paths: unit balls
//! are symmetric polytopes given by their extreme points, dual balls are
//! derived by exact facet enumeration, and the smoothness order of an
//! operator is the exact rank of its extreme supporting functionals.
//! Euclidean (Hilbert-space) operators are analyzed numerically through the
//! singular value decomposition, with seeded sampling oracles as
//! cross-checks.

pub mod generate;
pub mod hilbert;
pub mod io;
pub mod linalg;
pub mod operator;
pub mod oracle;
pub mod scalar;
pub mod simplex;
pub mod space;
pub mod verify;

pub use operator::{
    adjoint, bj_orthogonal, classify_linf3_case, ext_j_operator, norm_attainment_ext,
    operator_norm, operator_smoothness, CaseLabel, ExtJPair, NormAttainment, Operator,
    OperatorError, SmoothnessReport,
};
pub use scalar::{Rat, Scalar};
pub use space::{
    validate_polyhedral, validate_polyhedral_scoped, EuclideanSpace, Field, PolyhedralSpace,
    Scope, Space, SpaceError, SupportFace,
};
