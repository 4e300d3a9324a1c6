//! Seeded samplers: Haar-random kets and unitaries, Ginibre densities and
//! random two-outcome single-qubit POVMs.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{Complex, ComplexMatrix};
use crate::rng::{seeded, Rng64};

use super::state::{DensityMatrix, PureState, MAX_QUBITS, NORM_TOL};

fn complex_normal(rng: &mut Rng64) -> Complex {
    Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn check_qubits(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::OutOfRange {
            value: n_qubits as f64,
            range: "1..=10 qubits",
        });
    }
    Ok(())
}

/// Haar-random ket drawn from an existing stream.
pub fn haar_random_pure_with(n_qubits: usize, rng: &mut Rng64) -> Result<PureState> {
    check_qubits(n_qubits)?;
    let amps: Vec<Complex> = (0..1usize << n_qubits)
        .map(|_| complex_normal(rng))
        .collect();
    PureState::new(n_qubits, amps, true)
}

/// Haar-random ket: a standard-normal complex vector, normalized.
pub fn haar_random_pure(n_qubits: usize, seed: u64) -> Result<PureState> {
    haar_random_pure_with(n_qubits, &mut seeded(seed))
}

/// `G·G† / Tr(G·G†)` for a `2^n × rank` complex Ginibre matrix `G`.
pub fn random_density(n_qubits: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    check_qubits(n_qubits)?;
    let dim = 1usize << n_qubits;
    if rank == 0 || rank > dim {
        return Err(Error::OutOfRange {
            value: rank as f64,
            range: "1..=2^n rank",
        });
    }
    let mut rng = seeded(seed);
    let g: Vec<Complex> = (0..dim * rank).map(|_| complex_normal(&mut rng)).collect();
    let g = ComplexMatrix::new(dim, rank, g)?;
    let ggd = (&g * &g.dagger()).hermitian_part();
    let tr = ggd.trace().re;
    Ok(DensityMatrix::from_trusted(
        n_qubits,
        ggd.scale_real(1.0 / tr),
    ))
}

/// Haar-random `dim × dim` unitary: modified Gram-Schmidt on the columns of
/// a complex Ginibre matrix. Gram-Schmidt leaves `R` with a positive real
/// diagonal, which is the phase convention that makes `Q` Haar-distributed.
pub fn haar_unitary(dim: usize, rng: &mut Rng64) -> ComplexMatrix {
    loop {
        let mut cols: Vec<Vec<Complex>> = (0..dim)
            .map(|_| (0..dim).map(|_| complex_normal(rng)).collect())
            .collect();
        let mut degenerate = false;
        for j in 0..dim {
            // two passes keep the columns orthogonal to machine precision
            for _ in 0..2 {
                for k in 0..j {
                    let (done, rest) = cols.split_at_mut(j);
                    let qk = &done[k];
                    let proj: Complex = qk.iter().zip(&rest[0]).map(|(a, b)| a.conj() * b).sum();
                    for (x, q) in rest[0].iter_mut().zip(qk) {
                        *x -= proj * q;
                    }
                }
            }
            let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                degenerate = true;
                break;
            }
            for x in cols[j].iter_mut() {
                *x /= norm;
            }
        }
        if degenerate {
            continue;
        }
        let mut u = ComplexMatrix::zeros(dim, dim);
        for (j, col) in cols.iter().enumerate() {
            for (i, &z) in col.iter().enumerate() {
                u[(i, j)] = z;
            }
        }
        return u;
    }
}

/// Three independent Haar-random single-qubit unitaries `(U_A, U_B, U_C)`.
pub fn random_local_unitaries(seed: u64) -> [ComplexMatrix; 3] {
    let mut rng = seeded(seed);
    [
        haar_unitary(2, &mut rng),
        haar_unitary(2, &mut rng),
        haar_unitary(2, &mut rng),
    ]
}

/// Two-outcome single-qubit POVM `A_1 = U_1·diag(a, b)·V`,
/// `A_2 = U_2·diag(√(1-a²), √(1-b²))·V`, acting on `target_qubit`.
#[derive(Debug, Clone, PartialEq)]
pub struct PovmPair {
    pub a: f64,
    pub b: f64,
    pub u1: ComplexMatrix,
    pub u2: ComplexMatrix,
    pub v: ComplexMatrix,
    pub target_qubit: usize,
}

impl PovmPair {
    pub fn new(
        a: f64,
        b: f64,
        u1: ComplexMatrix,
        u2: ComplexMatrix,
        v: ComplexMatrix,
        target_qubit: usize,
    ) -> Result<Self> {
        for x in [a, b] {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::OutOfRange {
                    value: x,
                    range: "[0, 1]",
                });
            }
        }
        for u in [&u1, &u2, &v] {
            if u.rows() != 2 || u.cols() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    actual: u.rows(),
                });
            }
            let dev = (&u.dagger() * u).max_abs_diff(&ComplexMatrix::identity(2));
            if dev > NORM_TOL {
                return Err(Error::InternalConsistency {
                    quantity: "unitarity deviation of POVM factor",
                    value: dev,
                });
            }
        }
        Ok(Self {
            a,
            b,
            u1,
            u2,
            v,
            target_qubit,
        })
    }

    /// `(A_1, A_2)`.
    pub fn elements(&self) -> (ComplexMatrix, ComplexMatrix) {
        let d1 = ComplexMatrix::from_real_diag(&[self.a, self.b]);
        let d2 = ComplexMatrix::from_real_diag(&[
            (1.0 - self.a * self.a).max(0.0).sqrt(),
            (1.0 - self.b * self.b).max(0.0).sqrt(),
        ]);
        (&(&self.u1 * &d1) * &self.v, &(&self.u2 * &d2) * &self.v)
    }

    /// `max |A_1†A_1 + A_2†A_2 - I|`.
    pub fn completeness_deviation(&self) -> f64 {
        let (a1, a2) = self.elements();
        let sum = &(&a1.dagger() * &a1) + &(&a2.dagger() * &a2);
        sum.max_abs_diff(&ComplexMatrix::identity(2))
    }
}

/// Random POVM: `a, b` uniform in `[0, 1]`, `U_1, U_2, V` Haar.
pub fn random_povm_pair(seed: u64, target_qubit: usize) -> Result<PovmPair> {
    if target_qubit >= 3 {
        return Err(Error::IndexOutOfRange {
            index: target_qubit,
            n_qubits: 3,
        });
    }
    let mut rng = seeded(seed);
    let a = rng.random::<f64>();
    let b = rng.random::<f64>();
    let u1 = haar_unitary(2, &mut rng);
    let u2 = haar_unitary(2, &mut rng);
    let v = haar_unitary(2, &mut rng);
    PovmPair::new(a, b, u1, u2, v, target_qubit)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unitarity(u: &ComplexMatrix) -> f64 {
        (&u.dagger() * u).max_abs_diff(&ComplexMatrix::identity(u.rows()))
    }

    #[test]
    fn haar_pure_is_normalized_and_deterministic() {
        let s = haar_random_pure(1, 3).unwrap();
        assert!((s.norm_sq() - 1.0).abs() < 1e-12);
        assert_eq!(
            haar_random_pure(3, 11).unwrap(),
            haar_random_pure(3, 11).unwrap()
        );
        assert_ne!(
            haar_random_pure(3, 11).unwrap(),
            haar_random_pure(3, 12).unwrap()
        );
        assert!(haar_random_pure(0, 1).is_err());
        assert!(haar_random_pure(11, 1).is_err());
    }

    #[test]
    fn random_density_rank_one_is_pure() {
        let rho = random_density(2, 1, 5).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-10);
        assert!(random_density(2, 5, 5).is_err());
        assert!(random_density(2, 0, 5).is_err());
    }

    #[test]
    fn random_density_satisfies_invariants() {
        for rank in 1..=4 {
            let rho = random_density(2, rank, 100 + rank as u64).unwrap();
            assert!(DensityMatrix::new(2, rho.matrix().clone()).is_ok());
        }
    }

    #[test]
    fn local_unitaries_are_unitary_and_deterministic() {
        let us = random_local_unitaries(9);
        for u in &us {
            assert!(unitarity(u) < 1e-10);
        }
        assert_eq!(us, random_local_unitaries(9));
        let big = haar_unitary(8, &mut seeded(1));
        assert!(unitarity(&big) < 1e-12);
    }

    #[test]
    fn povm_boundary_cases() {
        let mut rng = seeded(4);
        let (u1, u2, v) = (
            haar_unitary(2, &mut rng),
            haar_unitary(2, &mut rng),
            haar_unitary(2, &mut rng),
        );
        let full = PovmPair::new(1.0, 1.0, u1.clone(), u2.clone(), v.clone(), 0).unwrap();
        let (a1, a2) = full.elements();
        assert!(unitarity(&a1) < 1e-12);
        assert!(a2.max_abs() < 1e-15);
        let none = PovmPair::new(0.0, 0.0, u1, u2, v, 0).unwrap();
        let (a1, a2) = none.elements();
        assert!(a1.max_abs() < 1e-15);
        assert!(unitarity(&a2) < 1e-12);
    }

    #[test]
    fn povm_completeness() {
        for seed in 0..50 {
            let p = random_povm_pair(seed, (seed % 3) as usize).unwrap();
            assert!(p.completeness_deviation() < 1e-10);
        }
        assert!(random_povm_pair(0, 3).is_err());
    }
}
