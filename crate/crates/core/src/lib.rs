//! Exact symplectic structures and polyhedral Hamiltonians on the complex
//! torus, built from a strictly concave rational PL function on a complete
//! fan.
//!
//! The combinatorial layers (`fan`, `polytope`, `slope`) run entirely on
//! arbitrary-precision rationals: strict inequalities such as strict
//! concavity, interior membership and fan completeness are decided exactly,
//! with a small rational simplex as the workhorse. The analytic layers
//! (`kahler`, `smoothing`, `dynamics`) evaluate the character-sum potential,
//! moment map, one- and two-forms, the boundary-smoothing Hamiltonian and
//! its orbit families in stabilized floating point. `verify` cross-checks
//! the resulting identities (wrapping-averaging, vanishing distortion,
//! contact positivity, exact central fiber) through independent evaluation
//! routes.

// `!(x > 0.0)` guards reject NaN along with nonpositive values; `x <= 0.0`
// would let NaN through
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// dense numeric kernels index several arrays in lockstep
#![allow(clippy::needless_range_loop)]

pub mod dynamics;
pub mod error;
pub mod fan;
pub mod input;
pub mod kahler;
pub mod linalg;
pub mod polytope;
pub mod rational;
pub mod simplex;
pub mod slope;
pub mod smoothing;
pub mod verify;

pub use error::{Error, Result};
