use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by fan construction, polytope analysis and the
/// numerical verification layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ray {index} is the zero vector")]
    ZeroRay { index: usize },

    #[error("ray index {index} out of range (fan has {count} rays)")]
    RayIndexOutOfRange { index: usize, count: usize },

    #[error("cone {{{rays:?}}} is not strongly convex (contains a line)")]
    NotStronglyConvex { rays: Vec<usize> },

    #[error("maximal cones {a:?} and {b:?} overlap: their intersection is not a common face")]
    OverlappingCones { a: Vec<usize>, b: Vec<usize> },

    #[error("fan is not complete; uncovered direction {witness:?}")]
    NotComplete { witness: Vec<String> },

    #[error("ray values on cone {{{rays:?}}} admit no common linear function (not PL on the fan)")]
    InconsistentConeData { rays: Vec<usize> },

    #[error("not strictly concave: cone {{{cone_rays:?}}} fails strict inequality at ray {ray}")]
    NotStrictlyConcave { cone_rays: Vec<usize>, ray: usize },

    #[error("scale {scale} does not clear the denominators of the linear data")]
    NonIntegralScale { scale: String },

    #[error("section polytope has empty interior")]
    EmptyInterior,

    #[error("point is not in the relative interior of the cone")]
    NotInteriorPoint,

    #[error("zero slope vector has no period")]
    ZeroSlope,

    #[error("lattice points span a proper affine subspace: {detail}")]
    DegenerateLattice { detail: String },

    #[error("target point is not strictly inside the polytope")]
    NotInterior,

    #[error("iteration did not converge within {iterations} steps (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("negative input {x} outside the domain [0, ∞)")]
    NegativeInput { x: f64 },

    #[error("smoothing parameter must be positive, got {eps}")]
    NonpositiveEpsilon { eps: f64 },

    #[error("modulus must be positive, got {modulus}")]
    NonpositiveModulus { modulus: f64 },

    #[error("precondition failed: {detail}")]
    PreconditionFailed { detail: String },

    #[error("active ray set {active:?} matches no cone of the fan")]
    NoStratumPoint { active: Vec<usize> },

    #[error("point is not on an orbit family: {detail}")]
    NotOnFamily { detail: String },

    #[error("{check}: gap {worst:.3e} exceeds tolerance {tol:.3e}")]
    ToleranceExceeded { check: String, worst: f64, tol: f64 },

    #[error("smoothing parameter inadmissible at ray {ray}: requires 0 < ε < {bound} (got {eps})")]
    InadmissibleEpsilon { ray: usize, eps: f64, bound: String },

    #[error("transversality failed: θ(X_H) = {value:.6e} ≤ 0 at a sampled point")]
    NonPositive { value: f64, point: Vec<f64> },

    #[error("singular linear system")]
    SingularSystem,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}
