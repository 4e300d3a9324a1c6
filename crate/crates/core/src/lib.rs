//! Few-qubit entanglement measures built around the negativity monogamy
//! inequality.
//!
//! The crate computes negativity, Wootters concurrence, the three-tangle and
//! the three-pi residual entanglement (the focus-averaged residual of
//! `N²_A(BC) - N²_AB - N²_AC`), and provides the randomized campaigns used to
//! check the monogamy inequalities, LU invariance and POVM monotonicity.
//!
//! Qubit 0 is the most significant bit of a basis index: `|ijk>` lives at
//! index `4i + 2j + k`.

pub mod error;
pub mod linalg;
pub mod measures;
pub mod monogamy;
pub mod rng;
pub mod states;
pub mod sweep;

pub use error::{Error, Result};
pub use linalg::{Complex, ComplexMatrix, EigenDecomposition};
pub use measures::Focus;
pub use monogamy::{CampaignStats, Check, MonogamyReport, SloccClass};
pub use states::{DensityMatrix, PovmPair, PureState, Sign};
