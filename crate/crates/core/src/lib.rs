//! Exact computation of the quiver data (nearby cycles, vanishing cycles and
//! variation) at the origin for the direct image `Rj_* L_a` of a rank-1 local
//! system on the complement of a central line arrangement in the plane,
//! together with irreducibility decisions and composition-factor counts.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: coefficient fields (rationals, Gaussian rationals, rational
//!   functions in `t1..tn`);
//! * [`linalg`]: rank, determinant, kernels and cokernels;
//! * [`arrangement`]: the local system and its stage-one extensions;
//! * [`mv`]: nearby cycles, the variation matrix and its minor;
//! * [`decomp`]: irreducibility and factor counting;
//! * [`sweep`] and [`verify`]: batch evaluation and identity checks used by
//!   the command-line tool.

pub mod arrangement;
pub mod decomp;
pub mod error;
pub mod exact;
pub mod linalg;
pub mod mv;
pub mod sweep;
pub mod verify;

pub use arrangement::{LocalSystem, Splitting, Stage1Diagram};
pub use decomp::{FactorKind, FactorReport, SimpleFactor};
pub use error::{Error, Result};
pub use exact::{Field, FieldElement, FieldMode, GaussianRational, Polynomial, Rational, RationalFunction};
pub use linalg::Matrix;
pub use mv::{Stage2Object, VarMatrix};

