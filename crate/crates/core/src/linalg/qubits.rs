//! Subsystem operations on `2^n × 2^n` matrices with qubit 0 as the most
//! significant index bit.

use crate::error::{Error, Result};

use super::{Complex, ComplexMatrix};

/// Bit mask of the given qubits within an `n_qubits` index.
pub fn qubit_mask(n_qubits: usize, qubits: &[usize]) -> Result<usize> {
    let mut mask = 0usize;
    for &q in qubits {
        if q >= n_qubits {
            return Err(Error::IndexOutOfRange { index: q, n_qubits });
        }
        mask |= 1 << (n_qubits - 1 - q);
    }
    Ok(mask)
}

fn check_dims(m: &ComplexMatrix, n_qubits: usize) -> Result<usize> {
    let dim = 1usize << n_qubits;
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: if m.rows() != dim { m.rows() } else { m.cols() },
        });
    }
    Ok(dim)
}

/// Transposes the row and column indices of the listed qubits. Pure entry
/// permutation; no arithmetic is performed.
pub fn partial_transpose(
    rho: &ComplexMatrix,
    n_qubits: usize,
    transposed: &[usize],
) -> Result<ComplexMatrix> {
    let dim = check_dims(rho, n_qubits)?;
    let mask = qubit_mask(n_qubits, transposed)?;
    let keep = !mask;
    let mut out = ComplexMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            let src_r = (r & keep) | (c & mask);
            let src_c = (c & keep) | (r & mask);
            out[(r, c)] = rho[(src_r, src_c)];
        }
    }
    Ok(out)
}

/// Scatters the low bits of `value` into the set bits of `mask`, lowest
/// first.
fn deposit(value: usize, mask: usize) -> usize {
    let mut out = 0;
    let mut bit = 0;
    let mut m = mask;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if value >> bit & 1 == 1 {
            out |= low;
        }
        bit += 1;
        m &= m - 1;
    }
    out
}

/// Traces out every qubit not in `keep`. The kept qubits keep their relative
/// order (ascending index, most significant first) in the result.
pub fn partial_trace(
    rho: &ComplexMatrix,
    n_qubits: usize,
    keep: &[usize],
) -> Result<ComplexMatrix> {
    let dim = check_dims(rho, n_qubits)?;
    if keep.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    let keep_mask = qubit_mask(n_qubits, keep)?;
    let trace_mask = (dim - 1) & !keep_mask;
    let kept = keep_mask.count_ones() as usize;
    let traced = n_qubits - kept;
    let out_dim = 1usize << kept;

    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for r in 0..out_dim {
        let rr = deposit(r, keep_mask);
        for c in 0..out_dim {
            let cc = deposit(c, keep_mask);
            let mut acc = Complex::new(0.0, 0.0);
            for t in 0..(1usize << traced) {
                let tt = deposit(t, trace_mask);
                acc += rho[(rr | tt, cc | tt)];
            }
            out[(r, c)] = acc;
        }
    }
    Ok(out)
}
