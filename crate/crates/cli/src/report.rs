//! Rows printed by `measure` and `verify`.

use serde::Serialize;
use threepi::measures::{
    n_qubit_negativity_residual, negativity, residual_pi, three_pi, three_tangle, Focus,
};
use threepi::{CampaignStats, Error, PureState, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantityRow {
    pub quantity: String,
    pub value: f64,
}

impl QuantityRow {
    fn new(quantity: impl Into<String>, value: f64) -> Self {
        Self {
            quantity: quantity.into(),
            value,
        }
    }
}

fn letters(qubits: impl IntoIterator<Item = usize>) -> String {
    qubits
        .into_iter()
        .map(|q| (b'a' + q as u8) as char)
        .collect()
}

/// Every bipartition up to swapping the two sides: parts smaller than the
/// complement, plus the half-size parts containing qubit 0.
fn bipartitions(n: usize) -> Vec<Vec<usize>> {
    let mut parts: Vec<Vec<usize>> = (1..(1usize << n) - 1)
        .map(|mask| {
            (0..n)
                .filter(|q| mask >> (n - 1 - q) & 1 == 1)
                .collect::<Vec<_>>()
        })
        .filter(|p: &Vec<usize>| 2 * p.len() < n || (2 * p.len() == n && p[0] == 0))
        .collect();
    parts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    parts
}

/// Bipartite negativities `n_<part>(<rest>)`, pairwise negativities
/// `n_<pair>`, then the residuals. Three qubits get `pi_*` and `tau_abc`;
/// larger registers get one `residual_<focus>` per qubit.
pub fn measure_rows(psi: &PureState) -> Result<Vec<QuantityRow>> {
    let n = psi.n_qubits();
    if n < 2 {
        return Err(Error::TooFewQubits {
            minimum: 2,
            found: n,
        });
    }
    let rho = psi.density();
    let mut rows = Vec::new();
    for part in bipartitions(n) {
        let rest = (0..n).filter(|q| !part.contains(q));
        let name = format!("n_{}({})", letters(part.iter().copied()), letters(rest));
        rows.push(QuantityRow::new(name, negativity(&rho, &part)?));
    }
    if n >= 3 {
        for i in 0..n {
            for j in i + 1..n {
                let pair = psi.reduced(&[i, j])?;
                rows.push(QuantityRow::new(
                    format!("n_{}", letters([i, j])),
                    negativity(&pair, &[0])?,
                ));
            }
        }
    }
    if n == 3 {
        for focus in Focus::ALL {
            let name = format!("pi_{}", letters([focus.qubit()]));
            rows.push(QuantityRow::new(name, residual_pi(psi, focus)?));
        }
        rows.push(QuantityRow::new("pi_abc", three_pi(psi)?));
        rows.push(QuantityRow::new("tau_abc", three_tangle(psi)?));
    } else if n > 3 {
        for q in 0..n {
            let name = format!("residual_{}", letters([q]));
            rows.push(QuantityRow::new(name, n_qubit_negativity_residual(psi, q)?));
        }
    }
    Ok(rows)
}

/// Flat view of [`CampaignStats`]: checks joined with `;`, and
/// `max_pi_minus_tau` left empty unless domination was checked.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyRow {
    pub samples: usize,
    pub seed: u64,
    pub checks: String,
    pub min_slack: f64,
    pub violations: usize,
    pub max_pi_minus_tau: Option<f64>,
}

impl From<&CampaignStats> for VerifyRow {
    fn from(s: &CampaignStats) -> Self {
        Self {
            samples: s.samples,
            seed: s.seed,
            checks: s
                .checks
                .iter()
                .map(|c| c.name())
                .collect::<Vec<_>>()
                .join(";"),
            min_slack: s.min_slack,
            violations: s.violations,
            max_pi_minus_tau: s.max_pi_minus_tau.is_finite().then_some(s.max_pi_minus_tau),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bipartition_labels() {
        assert_eq!(bipartitions(2), vec![vec![0]]);
        assert_eq!(bipartitions(3), vec![vec![0], vec![1], vec![2]]);
        let four = bipartitions(4);
        // 4 singletons plus the three 2|2 splits containing qubit 0
        assert_eq!(four.len(), 7);
        assert_eq!(four[4..], [vec![0, 1], vec![0, 2], vec![0, 3]]);
    }

    #[test]
    fn ghz_rows() {
        let rows = measure_rows(&PureState::ghz(3).unwrap()).unwrap();
        let get = |q: &str| rows.iter().find(|r| r.quantity == q).unwrap().value;
        assert!((get("n_a(bc)") - 1.0).abs() < 1e-12);
        assert!(get("n_ab").abs() < 1e-12);
        assert!((get("pi_abc") - 1.0).abs() < 1e-12);
        assert!((get("tau_abc") - 1.0).abs() < 1e-12);
        assert_eq!(rows.len(), 11);
    }
}
