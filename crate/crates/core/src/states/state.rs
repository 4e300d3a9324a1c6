use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, partial_trace, Complex, ComplexMatrix};

/// Tolerance on `Σ|amplitude|² = 1`.
pub const NORM_TOL: f64 = 1e-10;
/// Below this norm a vector is treated as zero.
pub const ZERO_NORM: f64 = 1e-12;
/// Largest register the dense representation supports.
pub const MAX_QUBITS: usize = 10;

fn czero() -> Complex {
    Complex::new(0.0, 0.0)
}

fn norm_sq(v: &[Complex]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Sign of the W component in `√p|GHZ> ± √(1-p)|W>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Normalized n-qubit ket. Amplitude `k` multiplies the basis state whose
/// binary expansion (qubit 0 first) is `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex>,
}

impl PureState {
    /// Validating constructor. With `normalize` any nonzero vector is
    /// rescaled; without it the vector must already have unit norm.
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex>, normalize: bool) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::OutOfRange {
                value: n_qubits as f64,
                range: "1..=10 qubits",
            });
        }
        let expected = 1usize << n_qubits;
        if amplitudes.len() != expected {
            return Err(Error::WrongLength {
                expected,
                actual: amplitudes.len(),
            });
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let n2 = norm_sq(&amplitudes);
        if normalize {
            if n2.sqrt() <= ZERO_NORM {
                return Err(Error::ZeroVector);
            }
            let s = 1.0 / n2.sqrt();
            Ok(Self {
                n_qubits,
                amplitudes: amplitudes.into_iter().map(|z| z * s).collect(),
            })
        } else if (n2 - 1.0).abs() > NORM_TOL {
            Err(Error::NotNormalized { norm_sq: n2 })
        } else {
            Ok(Self {
                n_qubits,
                amplitudes,
            })
        }
    }

    /// Real amplitudes, validated.
    pub fn from_real(n_qubits: usize, amplitudes: &[f64], normalize: bool) -> Result<Self> {
        Self::new(
            n_qubits,
            amplitudes.iter().map(|&x| Complex::new(x, 0.0)).collect(),
            normalize,
        )
    }

    /// For vectors that are unit-norm by construction.
    pub(crate) fn from_unit_vector(n_qubits: usize, amplitudes: Vec<Complex>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << n_qubits);
        debug_assert!((norm_sq(&amplitudes) - 1.0).abs() < 1e-8);
        Self {
            n_qubits,
            amplitudes,
        }
    }

    /// Computational basis state `|index>`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::OutOfRange {
                value: index as f64,
                range: "basis index below 2^n",
            });
        }
        let mut amps = vec![czero(); dim];
        amps[index] = Complex::new(1.0, 0.0);
        Self::new(n_qubits, amps, false)
    }

    /// `(|0…0> + |1…1>)/√2`.
    pub fn ghz(n_qubits: usize) -> Result<Self> {
        if !(2..=MAX_QUBITS).contains(&n_qubits) {
            return Err(Error::OutOfRange {
                value: n_qubits as f64,
                range: "2..=10 qubits",
            });
        }
        let dim = 1usize << n_qubits;
        let mut amps = vec![czero(); dim];
        amps[0] = Complex::new(FRAC_1_SQRT_2, 0.0);
        amps[dim - 1] = Complex::new(FRAC_1_SQRT_2, 0.0);
        Ok(Self::from_unit_vector(n_qubits, amps))
    }

    /// Three-qubit `(|100> + |010> + |001>)/√3`.
    pub fn w() -> Self {
        let t = 1.0 / 3f64.sqrt();
        w_class_state(t, t, t).expect("W amplitudes are normalized")
    }

    /// `|Φ+> = (|00> + |11>)/√2`.
    pub fn bell() -> Self {
        Self::ghz(2).expect("two qubits")
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amplitudes
    }

    pub fn norm_sq(&self) -> f64 {
        norm_sq(&self.amplitudes)
    }

    /// `|self> ⊗ |other>`, with `self` occupying the leading qubits.
    pub fn tensor(&self, other: &PureState) -> Result<Self> {
        let n = self.n_qubits + other.n_qubits;
        if n > MAX_QUBITS {
            return Err(Error::OutOfRange {
                value: n as f64,
                range: "1..=10 qubits",
            });
        }
        let amps = self
            .amplitudes
            .iter()
            .flat_map(|a| other.amplitudes.iter().map(move |b| a * b))
            .collect();
        Ok(Self::from_unit_vector(n, amps))
    }

    pub fn density(&self) -> DensityMatrix {
        density_of(self)
    }

    /// Reduced density matrix on the `keep` qubits, computed directly from
    /// the amplitudes.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let rho = partial_trace(&self.density().matrix, self.n_qubits, keep)?;
        let n = rho.rows().trailing_zeros() as usize;
        Ok(DensityMatrix::from_trusted(n, rho))
    }

    /// Applies a 2×2 operator to one qubit and returns the (unnormalized)
    /// amplitudes together with their squared norm.
    pub fn apply_one_qubit_operator(
        &self,
        op: &ComplexMatrix,
        qubit: usize,
    ) -> Result<(Vec<Complex>, f64)> {
        if qubit >= self.n_qubits {
            return Err(Error::IndexOutOfRange {
                index: qubit,
                n_qubits: self.n_qubits,
            });
        }
        if op.rows() != 2 || op.cols() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                actual: op.rows().max(op.cols()),
            });
        }
        let bit = 1usize << (self.n_qubits - 1 - qubit);
        let mut out = self.amplitudes.clone();
        for i in 0..self.dim() {
            if i & bit != 0 {
                continue;
            }
            let a0 = self.amplitudes[i];
            let a1 = self.amplitudes[i | bit];
            out[i] = op[(0, 0)] * a0 + op[(0, 1)] * a1;
            out[i | bit] = op[(1, 0)] * a0 + op[(1, 1)] * a1;
        }
        let weight = norm_sq(&out);
        Ok((out, weight))
    }

    /// Applies one 2×2 unitary per qubit, `U_0 ⊗ U_1 ⊗ …`.
    pub fn apply_local_unitaries(&self, unitaries: &[ComplexMatrix]) -> Result<Self> {
        if unitaries.len() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                actual: unitaries.len(),
            });
        }
        let mut psi = self.clone();
        for (q, u) in unitaries.iter().enumerate() {
            let (amps, _) = psi.apply_one_qubit_operator(u, q)?;
            psi = PureState::new(psi.n_qubits, amps, true)?;
        }
        Ok(psi)
    }

    /// Relabels qubits: qubit `q` of `self` becomes qubit `perm[q]` of the
    /// result.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n_qubits;
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: perm.len(),
            });
        }
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::IndexOutOfRange {
                    index: p,
                    n_qubits: n,
                });
            }
            seen[p] = true;
        }
        let mut amps = vec![czero(); self.dim()];
        for (i, &a) in self.amplitudes.iter().enumerate() {
            let mut j = 0;
            for (q, &target) in perm.iter().enumerate() {
                if i >> (n - 1 - q) & 1 == 1 {
                    j |= 1 << (n - 1 - target);
                }
            }
            amps[j] = a;
        }
        Ok(Self::from_unit_vector(n, amps))
    }
}

/// Hermitian, positive semidefinite, unit-trace matrix on `n_qubits`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validating constructor: Hermitian and unit trace within `1e-10`,
    /// eigenvalues at least `-1e-10`.
    pub fn new(n_qubits: usize, matrix: ComplexMatrix) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: matrix.rows(),
            });
        }
        let deviation = matrix.hermitian_deviation();
        if deviation > NORM_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > NORM_TOL || tr.im.abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sq: tr.re });
        }
        let min = hermitian_eigenvalues(&matrix)?[0];
        if min < -NORM_TOL {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
            });
        }
        Ok(Self { n_qubits, matrix })
    }

    /// For matrices that are valid densities by construction.
    pub(crate) fn from_trusted(n_qubits: usize, matrix: ComplexMatrix) -> Self {
        Self { n_qubits, matrix }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn purity(&self) -> f64 {
        // Tr ρ² = Σ|ρ_ij|² for Hermitian ρ
        self.matrix.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let rho = partial_trace(&self.matrix, self.n_qubits, keep)?;
        let n = rho.rows().trailing_zeros() as usize;
        Ok(DensityMatrix::from_trusted(n, rho))
    }

    /// Convex mixture `p·self + (1-p)·other`.
    pub fn mix(&self, other: &DensityMatrix, p: f64) -> Result<DensityMatrix> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::OutOfRange {
                value: p,
                range: "[0, 1]",
            });
        }
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                actual: other.n_qubits,
            });
        }
        let m = &self.matrix.scale_real(p) + &other.matrix.scale_real(1.0 - p);
        Ok(Self::from_trusted(self.n_qubits, m))
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        Self::from_trusted(
            n_qubits,
            ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        )
    }
}

/// `|ψ><ψ|`.
pub fn density_of(psi: &PureState) -> DensityMatrix {
    DensityMatrix::from_trusted(psi.n_qubits, ComplexMatrix::outer(&psi.amplitudes))
}

/// `α|100> + β|010> + γ|001>` with nonnegative real coefficients.
pub fn w_class_state(alpha: f64, beta: f64, gamma: f64) -> Result<PureState> {
    check_w_coefficients(alpha, beta, gamma)?;
    let mut amps = vec![czero(); 8];
    amps[4] = Complex::new(alpha, 0.0);
    amps[2] = Complex::new(beta, 0.0);
    amps[1] = Complex::new(gamma, 0.0);
    PureState::new(3, amps, false)
}

pub(crate) fn check_w_coefficients(alpha: f64, beta: f64, gamma: f64) -> Result<()> {
    for x in [alpha, beta, gamma] {
        if !x.is_finite() {
            return Err(Error::NonFinite);
        }
        if x < 0.0 {
            return Err(Error::OutOfRange {
                value: x,
                range: "nonnegative W-class coefficient",
            });
        }
    }
    let n2 = alpha * alpha + beta * beta + gamma * gamma;
    if (n2 - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm_sq: n2 });
    }
    Ok(())
}

/// `√p|GHZ> ± √(1-p)|W>`. GHZ and W are orthogonal, so the result is
/// normalized for every `p`.
pub fn ghz_w_superposition(p: f64, sign: Sign) -> Result<PureState> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::OutOfRange {
            value: p,
            range: "[0, 1]",
        });
    }
    let g = (p / 2.0).sqrt();
    let w = sign.factor() * ((1.0 - p) / 3.0).sqrt();
    let mut amps = vec![czero(); 8];
    amps[0] = Complex::new(g, 0.0);
    amps[7] = Complex::new(g, 0.0);
    for i in [1, 2, 4] {
        amps[i] = Complex::new(w, 0.0);
    }
    Ok(PureState::from_unit_vector(3, amps))
}
