//! Dense complex linear algebra sized for a handful of qubits.

mod eig;
mod matrix;
mod qubits;

pub use eig::{
    hermitian_eig, hermitian_eigenvalues, matrix_sqrt_psd, trace_norm_hermitian,
    EigenDecomposition, HERMITIAN_TOL, MAX_SWEEPS, OFF_DIAGONAL_TOL, PSD_TOL,
};
pub use matrix::{kron, ComplexMatrix};
pub use qubits::{partial_trace, partial_transpose, qubit_mask};

pub type Complex = num_complex::Complex64;

/// Pauli `σ_y`.
pub fn sigma_y() -> ComplexMatrix {
    let z = Complex::new(0.0, 0.0);
    ComplexMatrix::from_rows(&[
        vec![z, Complex::new(0.0, -1.0)],
        vec![Complex::new(0.0, 1.0), z],
    ])
}
