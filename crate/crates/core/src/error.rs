use thiserror::Error;

/// Unified error type for the whole crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // ---- parsing ----
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("zero subscript at byte {pos}")]
    ZeroSubscript { pos: usize },
    #[error("unbalanced bracket at byte {pos}")]
    UnbalancedBracket { pos: usize },
    #[error("equation is missing a '->', '=' or '→' separator")]
    MissingSeparator,
    #[error("equation side has no species")]
    EmptySide,
    #[error("duplicate species label '{0}'")]
    DuplicateSpecies(String),

    // ---- vectors over element orders ----
    #[error("element '{0}' does not appear in the given element order")]
    UnknownElement(String),
    #[error("species has no atoms (empty element map)")]
    EmptyComposition,

    // ---- linear algebra / geometry ----
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix shape {rows}x{cols} incompatible with operand of length {len}")]
    ShapeMismatch { rows: usize, cols: usize, len: usize },
    #[error("empty point list")]
    EmptyPointList,
    #[error("polytope is empty")]
    EmptyPolytope,
    #[error("point lies outside the polytope")]
    PointOutsidePolytope,
    #[error("point lies outside the convex hull of the generators")]
    PointOutsideHull,
    #[error("halfspace system describes an unbounded set")]
    Unbounded,
    #[error("a generating ray does not cross the slicing hyperplane")]
    RayMissesHyperplane,

    // ---- balancing ----
    #[error("nullspace is zero: no balancing coordinates exist")]
    ZeroNullspace,
    #[error("species '{0}' is not on the stated side of the reaction")]
    SpeciesNotOnSide(String),
    #[error("reaction admits no balance")]
    NoBalanceExists,

    // ---- redox ----
    #[error("the electron species appears on both sides of a half-reaction")]
    ElectronOnBothSides,
    #[error("half-reaction core (non-H/O/charge part) admits no balance")]
    HalfReactionInfeasible,
    #[error("half-reaction core admits multiple balances; extreme representatives: {0}")]
    HalfReactionAmbiguous(String),
    #[error("electrons appear on the same side of both half-reactions")]
    ElectronsSameSide,
    #[error("degenerate combination (zero weight, dependent vectors, or total cancellation)")]
    DegenerateCombination,

    // ---- mechanisms ----
    #[error("known and intermediate index sets must partition the species list")]
    PartitionMismatch,
    #[error("mechanism step {0} must both consume and produce at least one species")]
    OneSidedStep(usize),
    #[error("mechanism step matrix requires integer entries")]
    NonIntegralSteps,
    #[error("M*N is not zero: the elemental matrix does not annihilate the mechanism")]
    ElementMatrixMismatch,
    #[error("observed dependencies admit no lift into the elemental kernel")]
    InconsistentObservations,
    #[error("observed space does not lie in the known-species coordinates")]
    ObservedOutsideKnown,
    #[error("solution set is infinite: the mechanism admits a nonnegative kernel vector {0}")]
    InfiniteRepresentations(String),

    // ---- lattice ----
    #[error("polytope has non-integral vertices; polynomial counting not applicable")]
    NonIntegralVertices,
    #[error("fitted polynomial failed validation at n = {n}: predicted {predicted}, counted {counted}")]
    FitValidation {
        n: u32,
        predicted: String,
        counted: String,
    },
}
