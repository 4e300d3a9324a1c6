//! Pure and mixed few-qubit states: constructors, the ket parser and seeded
//! samplers.

mod ket;
mod random;
mod state;

pub use ket::{parse_ket, PARSE_NORM_TOL};
pub use random::{
    haar_random_pure, haar_random_pure_with, haar_unitary, random_density, random_local_unitaries,
    random_povm_pair, PovmPair,
};
pub use state::{
    density_of, ghz_w_superposition, w_class_state, DensityMatrix, PureState, Sign, MAX_QUBITS,
    NORM_TOL, ZERO_NORM,
};

pub(crate) use state::check_w_coefficients;
