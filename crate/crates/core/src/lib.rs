//! Exact lattice-point generating functions of rational polytopes.
//!
//! This crate builds full-dimensional rational polytopes from vertex data,
//! derives their facet description and face lattice, classifies proper faces
//! into the visible/back/lower complexes relative to a point or direction,
//! and computes vertex-cone generating functions via triangulation and
//! half-open simplicial decomposition.
//!
//! On top of that machinery sit two identity checkers, both exact:
//!
//! * [`series::check_gram`] verifies the Brianchon-Gram identity and its two
//!   variants as truncated formal Laurent series, coefficient by coefficient
//!   over an explicit integer box.
//! * [`sigma::check_brion`] verifies Brion's formula and its two variants as
//!   identities of rational functions, by exact evaluation at random rational
//!   points.
//!
//! All arithmetic is exact: coordinates are arbitrary-precision rationals and
//! there is no floating-point fallback anywhere.

pub mod complexes;
pub mod cones;
pub mod generator;
pub mod linalg;
pub mod polytope;
pub mod rat;
pub mod series;
pub mod sigma;


pub use complexes::{classify_back, classify_lower, classify_visible, euler_char, FaceSubset};
pub use cones::{
    barrier_cone, barrier_membership, contains_line, extreme_rays, half_open_decompose,
    neg_shift_membership, parallelepiped_points, tangent_membership, triangulate, Cone,
    ParallelepipedPoints, ShiftedSimplicialCone,
};
pub use generator::{random_polytope, GenSpec};
pub use linalg::{det, kernel_basis, rank, solve_linear, IntVector, RatMatrix, RatVector};
pub use polytope::{hull, Face, Facet, Polytope};
pub use rat::{Int, Rat};
pub use series::{check_gram, gram_lhs, series_of, translate_series, GramReport, GramVariant, LatticeBox, TruncatedSeries};
pub use sigma::{
    check_brion, eval_sigma, phi_of_cone, polytope_poly_eval, sigma_vertex_cone, BrionReport,
    BrionVariant, EvalPoint, SigmaRep, VertexConeMode,
};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square")]
    NonSquare,
    #[error("zero vector has no primitive form")]
    ZeroVector,
    #[error("degenerate: polytope not full-dimensional")]
    Degenerate,
    #[error("classification undefined: point inside polytope")]
    PointInsidePolytope,
    #[error("classification undefined: point in polytope interior")]
    PointInInterior,
    #[error("direction must be non-zero")]
    ZeroDirection,
    #[error("face index {0} is not a face of this polytope")]
    NotAFace(usize),
    #[error("face index {0} is not a vertex face")]
    NotAVertex(usize),
    #[error("cannot triangulate cone containing a line")]
    ConeContainsLine,
    #[error("cone is not full-dimensional")]
    ConeNotFullDimensional,
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("shift vector not generic; reseed")]
    NotGeneric,
    #[error("evaluation point hits pole locus; reseed")]
    PoleHit,
    #[error("could not draw an admissible evaluation point")]
    NoAdmissiblePoint,
    #[error("could not generate a full-dimensional polytope")]
    GenerationFailed,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
