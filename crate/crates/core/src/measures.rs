//! Entanglement measures.
//!
//! Negativity is normalized as `N = ‖ρ^{T_A}‖₁ - 1`, so a Bell state scores
//! 1 and negativity coincides with concurrence on pure two-qubit states and
//! on pure `1 | rest` bipartitions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eig, hermitian_eigenvalues, kron, matrix_sqrt_psd, partial_transpose, qubit_mask,
    sigma_y, trace_norm_hermitian, ComplexMatrix,
};
use crate::states::{check_w_coefficients, DensityMatrix, PureState, Sign};

/// Values within this distance below zero are rounding noise and clamp to 0.
pub const CLAMP_TOL: f64 = 1e-9;
/// Density eigenvalues at or below this are dropped when factoring
/// `ρ = W·W†` for the concurrence.
pub const RANK_TOL: f64 = 1e-13;

/// The distinguished qubit of a three-qubit monogamy inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Focus {
    A,
    B,
    C,
}

impl Focus {
    pub const ALL: [Focus; 3] = [Focus::A, Focus::B, Focus::C];

    pub fn qubit(self) -> usize {
        match self {
            Focus::A => 0,
            Focus::B => 1,
            Focus::C => 2,
        }
    }

    /// The other two qubits, ascending.
    pub fn partners(self) -> [usize; 2] {
        match self {
            Focus::A => [1, 2],
            Focus::B => [0, 2],
            Focus::C => [0, 1],
        }
    }

    pub fn label(self) -> char {
        match self {
            Focus::A => 'A',
            Focus::B => 'B',
            Focus::C => 'C',
        }
    }
}

impl fmt::Display for Focus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Clamps rounding noise below zero; anything further below is a bug.
pub fn clamp_nonnegative(value: f64, quantity: &'static str) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -CLAMP_TOL {
        Ok(0.0)
    } else {
        Err(Error::InternalConsistency { quantity, value })
    }
}

fn require_qubits(n: usize, expected: usize) -> Result<()> {
    if n != expected {
        return Err(Error::WrongQubitCount { expected, found: n });
    }
    Ok(())
}

fn check_bipartition(n_qubits: usize, part: &[usize]) -> Result<()> {
    let mask = qubit_mask(n_qubits, part)?;
    if mask == 0 || mask == (1 << n_qubits) - 1 {
        return Err(Error::InvalidBipartition { n_qubits });
    }
    Ok(())
}

/// Negativity `‖ρ^{T_part}‖₁ - 1` across the cut `part | rest`.
pub fn negativity(rho: &DensityMatrix, part: &[usize]) -> Result<f64> {
    let n = rho.n_qubits();
    check_bipartition(n, part)?;
    let pt = partial_transpose(rho.matrix(), n, part)?;
    clamp_nonnegative(trace_norm_hermitian(&pt)? - 1.0, "negativity")
}

/// `C² = 2(1 - Tr ρ_part²)` for a pure state.
pub fn concurrence_pure_bipartition_sq(psi: &PureState, part: &[usize]) -> Result<f64> {
    check_bipartition(psi.n_qubits(), part)?;
    let reduced = psi.reduced(part)?;
    clamp_nonnegative(
        2.0 * (1.0 - reduced.purity()),
        "squared pure-state concurrence",
    )
}

/// Pure-state concurrence `√(2(1 - Tr ρ_part²))` across `part | rest`.
pub fn concurrence_pure_bipartition(psi: &PureState, part: &[usize]) -> Result<f64> {
    Ok(concurrence_pure_bipartition_sq(psi, part)?.sqrt())
}

/// Spin-flip kernel `σ_y ⊗ σ_y`.
fn spin_flip() -> ComplexMatrix {
    kron(&sigma_y(), &sigma_y())
}

/// Eigenvalues of `ρ·ρ̃`, `ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y)`, in nonincreasing
/// order, obtained from the Hermitian matrix `√ρ·ρ̃·√ρ` which has the same
/// spectrum.
pub fn wootters_eigenvalues(rho: &DensityMatrix) -> Result<[f64; 4]> {
    require_qubits(rho.n_qubits(), 2)?;
    let yy = spin_flip();
    let tilde = &(&yy * &rho.matrix().conj()) * &yy;
    let root = matrix_sqrt_psd(rho.matrix())?;
    let m = (&(&root * &tilde) * &root).hermitian_part();
    let mut ev = hermitian_eigenvalues(&m)?;
    ev.reverse();
    let mut out = [0.0; 4];
    for (o, e) in out.iter_mut().zip(ev) {
        *o = e.max(0.0);
    }
    Ok(out)
}

/// `√λ_i` of `ρ·ρ̃` in nonincreasing order, computed as the singular values
/// of `τ = Wᵀ (σ_y⊗σ_y) W` where `ρ = W·W†`.
///
/// Singular values come from the Hermitian dilation `[[0, τ], [τ†, 0]]`, so
/// they carry absolute (not square-root amplified) rounding error even when
/// `ρ` is rank deficient.
pub fn wootters_singular_values(rho: &DensityMatrix) -> Result<[f64; 4]> {
    require_qubits(rho.n_qubits(), 2)?;
    let eig = hermitian_eig(rho.matrix())?;
    let kept: Vec<usize> = (0..4).filter(|&k| eig.eigenvalues[k] > RANK_TOL).collect();
    let rank = kept.len();
    let mut out = [0.0; 4];
    if rank == 0 {
        return Ok(out);
    }
    let mut w = ComplexMatrix::zeros(4, rank);
    for (col, &k) in kept.iter().enumerate() {
        let s = eig.eigenvalues[k].sqrt();
        for i in 0..4 {
            w[(i, col)] = eig.eigenvectors[(i, k)] * s;
        }
    }
    let tau = &(&w.transpose() * &spin_flip()) * &w;
    let mut dilation = ComplexMatrix::zeros(2 * rank, 2 * rank);
    for i in 0..rank {
        for j in 0..rank {
            dilation[(i, rank + j)] = tau[(i, j)];
            dilation[(rank + j, i)] = tau[(i, j)].conj();
        }
    }
    let ev = hermitian_eigenvalues(&dilation)?;
    for (o, e) in out.iter_mut().zip(ev.iter().rev().take(rank)) {
        *o = e.max(0.0);
    }
    Ok(out)
}

/// Wootters concurrence `max(0, √λ₁ - √λ₂ - √λ₃ - √λ₄)` of a two-qubit
/// density matrix.
pub fn concurrence_two_qubit(rho: &DensityMatrix) -> Result<f64> {
    let s = wootters_singular_values(rho)?;
    Ok((s[0] - s[1] - s[2] - s[3]).max(0.0))
}

fn pair_density(psi: &PureState, a: usize, b: usize) -> Result<DensityMatrix> {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    psi.reduced(&[lo, hi])
}

/// Squared negativities entering one focus of the three-qubit inequality:
/// `(N²_{F(rest)}, N²_{F,p1}, N²_{F,p2})`.
pub fn focus_squared_negativities(psi: &PureState, focus: Focus) -> Result<[f64; 3]> {
    require_qubits(psi.n_qubits(), 3)?;
    let f = focus.qubit();
    let whole = negativity(&psi.density(), &[f])?;
    let [p1, p2] = focus.partners();
    let pair1 = negativity(&pair_density(psi, f, p1)?, &[0])?;
    let pair2 = negativity(&pair_density(psi, f, p2)?, &[0])?;
    Ok([whole * whole, pair1 * pair1, pair2 * pair2])
}

/// Squared concurrences for one focus:
/// `(C²_{F(rest)}, C²_{F,p1}, C²_{F,p2})`.
pub fn focus_squared_concurrences(psi: &PureState, focus: Focus) -> Result<[f64; 3]> {
    require_qubits(psi.n_qubits(), 3)?;
    let f = focus.qubit();
    let whole = concurrence_pure_bipartition_sq(psi, &[f])?;
    let [p1, p2] = focus.partners();
    let c1 = concurrence_two_qubit(&pair_density(psi, f, p1)?)?;
    let c2 = concurrence_two_qubit(&pair_density(psi, f, p2)?)?;
    Ok([whole, c1 * c1, c2 * c2])
}

/// Three-tangle `C²_{A(BC)} - C²_{AB} - C²_{AC}`.
pub fn three_tangle(psi: &PureState) -> Result<f64> {
    let [whole, ab, ac] = focus_squared_concurrences(psi, Focus::A)?;
    clamp_nonnegative(whole - ab - ac, "three-tangle")
}

/// Residual `π_F = N²_{F(rest)} - N²_{F,p1} - N²_{F,p2}` for one focus.
pub fn residual_pi(psi: &PureState, focus: Focus) -> Result<f64> {
    let [whole, p1, p2] = focus_squared_negativities(psi, focus)?;
    clamp_nonnegative(whole - p1 - p2, "negativity residual")
}

/// Three-π: the mean of `π_A`, `π_B` and `π_C`.
pub fn three_pi(psi: &PureState) -> Result<f64> {
    let mut sum = 0.0;
    for focus in Focus::ALL {
        sum += residual_pi(psi, focus)?;
    }
    Ok(sum / 3.0)
}

/// n-qubit residual `N²_{F(rest)} - Σ_j N²_{F,j}` for qubit `focus`.
pub fn n_qubit_negativity_residual(psi: &PureState, focus: usize) -> Result<f64> {
    let n = psi.n_qubits();
    if n < 3 {
        return Err(Error::TooFewQubits {
            minimum: 3,
            found: n,
        });
    }
    if focus >= n {
        return Err(Error::IndexOutOfRange {
            index: focus,
            n_qubits: n,
        });
    }
    let whole = negativity(&psi.density(), &[focus])?;
    let mut residual = whole * whole;
    for partner in (0..n).filter(|&q| q != focus) {
        let pair = negativity(&pair_density(psi, focus, partner)?, &[0])?;
        residual -= pair * pair;
    }
    clamp_nonnegative(residual, "n-qubit negativity residual")
}

fn check_normalized_triple(alpha: f64, beta: f64, gamma: f64) -> Result<()> {
    check_w_coefficients(alpha.abs(), beta.abs(), gamma.abs())
}

/// Closed-form squared negativities of `α|100> + β|010> + γ|001>`:
/// `(N²_AB, N²_AC, N²_{A(BC)})`.
pub fn w_class_squared_negativities(alpha: f64, beta: f64, gamma: f64) -> Result<(f64, f64, f64)> {
    check_normalized_triple(alpha, beta, gamma)?;
    let (a2, b2, g2) = (alpha * alpha, beta * beta, gamma * gamma);
    let ab = 4.0 * a2 * b2 + 2.0 * g2 * g2 - 2.0 * g2 * (g2 * g2 + 4.0 * a2 * b2).sqrt();
    let ac = 4.0 * a2 * g2 + 2.0 * b2 * b2 - 2.0 * b2 * (b2 * b2 + 4.0 * a2 * g2).sqrt();
    let a_bc = 4.0 * a2 * (b2 + g2);
    Ok((ab, ac, a_bc))
}

/// Closed-form three-π of `α|100> + β|010> + γ|001>`.
pub fn three_pi_w_closed_form(alpha: f64, beta: f64, gamma: f64) -> Result<f64> {
    check_normalized_triple(alpha, beta, gamma)?;
    let (a2, b2, g2) = (alpha * alpha, beta * beta, gamma * gamma);
    let s = a2 * (a2 * a2 + 4.0 * b2 * g2).sqrt()
        + b2 * (b2 * b2 + 4.0 * a2 * g2).sqrt()
        + g2 * (g2 * g2 + 4.0 * a2 * b2).sqrt()
        - a2 * a2
        - b2 * b2
        - g2 * g2;
    Ok(4.0 / 3.0 * s)
}

/// Closed-form three-tangle of `√p|GHZ> ± √(1-p)|W>`:
/// `|p² ± (8√6/9)·√(p(1-p)³)|`.
pub fn three_tangle_ghzw_closed_form(p: f64, sign: Sign) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange {
            value: p,
            range: "[0, 1]",
        });
    }
    let q = 1.0 - p;
    Ok((p * p + sign.factor() * 8.0 * 6f64.sqrt() / 9.0 * (p * q * q * q).sqrt()).abs())
}

/// The `p` at which the closed-form three-tangle of the minus superposition
/// vanishes: `p/(1-p) = (4/3)·∛2`, i.e. `4∛2 / (3 + 4∛2)`.
pub fn ghzw_minus_tangle_zero() -> f64 {
    let c = 4.0 * 2f64.cbrt();
    c / (3.0 + c)
}

/// `(4/9)(√5 - 1)`, the three-π of the W state.
pub fn w_state_three_pi() -> f64 {
    4.0 / 9.0 * (5f64.sqrt() - 1.0)
}
