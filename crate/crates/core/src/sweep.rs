//! Grid sweeps behind the three-π figures: the W-class simplex over
//! `(β, γ)` and the GHZ/W superposition line over `p`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{
    focus_squared_negativities, three_pi, three_tangle, three_tangle_ghzw_closed_form, Focus,
};
use crate::states::{ghz_w_superposition, w_class_state, Sign};

/// Allowed disagreement between the numeric and closed-form three-tangle.
pub const TANGLE_CROSS_CHECK_TOL: f64 = 1e-9;

/// One point of the W-class simplex, `α = √(1 - β² - γ²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WSweepRow {
    pub beta: f64,
    pub gamma: f64,
    pub pi_abc: f64,
}

/// One point of the `√p|GHZ> ± √(1-p)|W>` line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GhzwSweepRow {
    pub p: f64,
    pub pi_abc: f64,
    pub tau_abc: f64,
    /// `N²_{A(BC)}`
    pub n_sq_abc: f64,
    pub tau_closed_form: f64,
    pub pi_minus_tau: f64,
}

/// `k / (steps - 1)` for `k = 0..steps`.
pub fn unit_grid(steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::OutOfRange {
            value: steps as f64,
            range: "at least 2 grid points",
        });
    }
    let last = (steps - 1) as f64;
    Ok((0..steps).map(|k| k as f64 / last).collect())
}

/// Three-π over the `resolution × resolution` grid of `(β, γ) ∈ [0, 1]²`,
/// row-major in `β`. Points with `β² + γ² > 1` are omitted.
pub fn sweep_w(resolution: usize) -> Result<Vec<WSweepRow>> {
    let axis = unit_grid(resolution)?;
    let points: Vec<(f64, f64)> = axis
        .iter()
        .flat_map(|&b| axis.iter().map(move |&g| (b, g)))
        .filter(|&(b, g)| b * b + g * g <= 1.0)
        .collect();
    points
        .into_par_iter()
        .map(|(beta, gamma)| {
            let alpha = (1.0 - beta * beta - gamma * gamma).max(0.0).sqrt();
            let psi = w_class_state(alpha, beta, gamma)?;
            Ok(WSweepRow {
                beta,
                gamma,
                pi_abc: three_pi(&psi)?,
            })
        })
        .collect()
}

/// One row of the GHZ/W line at `p`.
pub fn ghzw_row(p: f64, sign: Sign) -> Result<GhzwSweepRow> {
    let psi = ghz_w_superposition(p, sign)?;
    let pi_abc = three_pi(&psi)?;
    let tau_abc = three_tangle(&psi)?;
    let tau_closed_form = three_tangle_ghzw_closed_form(p, sign)?;
    let gap = tau_abc - tau_closed_form;
    if gap.abs() > TANGLE_CROSS_CHECK_TOL {
        return Err(Error::InternalConsistency {
            quantity: "numeric minus closed-form three-tangle",
            value: gap,
        });
    }
    let [n_sq_abc, _, _] = focus_squared_negativities(&psi, Focus::A)?;
    Ok(GhzwSweepRow {
        p,
        pi_abc,
        tau_abc,
        n_sq_abc,
        tau_closed_form,
        pi_minus_tau: pi_abc - tau_abc,
    })
}

/// The GHZ/W line on `p_steps` uniform points of `[0, 1]`.
pub fn sweep_ghzw(sign: Sign, p_steps: usize) -> Result<Vec<GhzwSweepRow>> {
    unit_grid(p_steps)?
        .into_par_iter()
        .map(|p| ghzw_row(p, sign))
        .collect()
}
