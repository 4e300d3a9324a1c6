//! Monogamy inequality reports, SLOCC classification of pure three-qubit
//! states, and the seeded verification campaigns.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::hermitian_eigenvalues;
use crate::measures::{
    concurrence_two_qubit, focus_squared_concurrences, focus_squared_negativities, negativity,
    three_pi, three_tangle, Focus, CLAMP_TOL,
};
use crate::rng::derive_seed;
use crate::states::{
    haar_random_pure, random_density, random_local_unitaries, random_povm_pair, PovmPair, PureState,
};

/// Slack below `-MONOGAMY_TOL` is a violation.
pub const MONOGAMY_TOL: f64 = 1e-9;
/// `|π_after - π_before|` above this fails an LU trial.
pub const LU_TOL: f64 = 1e-8;
/// POVM branches with weight below this are skipped.
pub const BRANCH_WEIGHT_FLOOR: f64 = 1e-12;
pub const DEFAULT_SLOCC_TOL: f64 = 1e-9;

/// Squared terms of one focus: `whole_sq` is the focus-vs-rest term,
/// `pair*_sq` the two pairwise terms, `slack = whole_sq - pair1_sq - pair2_sq`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FocusTerms {
    pub focus: Focus,
    pub whole_sq: f64,
    pub pair1_sq: f64,
    pub pair2_sq: f64,
    pub slack: f64,
}

impl FocusTerms {
    fn new(focus: Focus, [whole_sq, pair1_sq, pair2_sq]: [f64; 3]) -> Self {
        Self {
            focus,
            whole_sq,
            pair1_sq,
            pair2_sq,
            slack: whole_sq - pair1_sq - pair2_sq,
        }
    }
}

/// Negativity monogamy report of a pure three-qubit state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonogamyReport {
    /// Focus A, B, C in that order.
    pub foci: [FocusTerms; 3],
    pub pi_a: f64,
    pub pi_b: f64,
    pub pi_c: f64,
    pub pi_abc: f64,
    pub tau_abc: f64,
}

impl MonogamyReport {
    pub fn focus(&self, focus: Focus) -> &FocusTerms {
        &self.foci[focus.qubit()]
    }

    pub fn slack(&self, focus: Focus) -> f64 {
        self.focus(focus).slack
    }

    pub fn min_slack(&self) -> f64 {
        self.foci
            .iter()
            .map(|t| t.slack)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Concurrence (CKW) counterpart of [`MonogamyReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcurrenceReport {
    pub foci: [FocusTerms; 3],
}

impl ConcurrenceReport {
    pub fn slack(&self, focus: Focus) -> f64 {
        self.foci[focus.qubit()].slack
    }
}

fn require_three(psi: &PureState) -> Result<()> {
    if psi.n_qubits() != 3 {
        return Err(Error::WrongQubitCount {
            expected: 3,
            found: psi.n_qubits(),
        });
    }
    Ok(())
}

fn negativity_terms(psi: &PureState) -> Result<[FocusTerms; 3]> {
    require_three(psi)?;
    let mut out = Vec::with_capacity(3);
    for focus in Focus::ALL {
        out.push(FocusTerms::new(
            focus,
            focus_squared_negativities(psi, focus)?,
        ));
    }
    Ok(out.try_into().expect("three foci"))
}

fn clamp_residual(slack: f64) -> f64 {
    if (-CLAMP_TOL..0.0).contains(&slack) {
        0.0
    } else {
        slack
    }
}

/// Full negativity monogamy report. A slack below `-1e-9` on any focus is
/// reported as [`Error::MonogamyViolation`]: the inequality holds for every
/// pure three-qubit state, so such a value means a numerical fault.
pub fn ckw_negativity_report(psi: &PureState) -> Result<MonogamyReport> {
    let foci = negativity_terms(psi)?;
    for t in &foci {
        if t.slack < -MONOGAMY_TOL {
            return Err(Error::MonogamyViolation {
                focus: t.focus.label(),
                slack: t.slack,
            });
        }
    }
    let pi_a = clamp_residual(foci[0].slack);
    let pi_b = clamp_residual(foci[1].slack);
    let pi_c = clamp_residual(foci[2].slack);
    Ok(MonogamyReport {
        foci,
        pi_a,
        pi_b,
        pi_c,
        pi_abc: (pi_a + pi_b + pi_c) / 3.0,
        tau_abc: three_tangle(psi)?,
    })
}

/// CKW report with squared concurrences. Focus A's slack is the
/// three-tangle.
pub fn ckw_concurrence_report(psi: &PureState) -> Result<ConcurrenceReport> {
    require_three(psi)?;
    let mut out = Vec::with_capacity(3);
    for focus in Focus::ALL {
        out.push(FocusTerms::new(
            focus,
            focus_squared_concurrences(psi, focus)?,
        ));
    }
    Ok(ConcurrenceReport {
        foci: out.try_into().expect("three foci"),
    })
}

/// The six SLOCC classes of pure three-qubit states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SloccClass {
    /// `A-B-C`
    Product,
    /// `A-BC`: qubit A detached.
    BipartiteA,
    /// `B-AC`
    BipartiteB,
    /// `C-AB`
    BipartiteC,
    W,
    Ghz,
}

impl SloccClass {
    pub const ALL: [SloccClass; 6] = [
        SloccClass::Product,
        SloccClass::BipartiteA,
        SloccClass::BipartiteB,
        SloccClass::BipartiteC,
        SloccClass::W,
        SloccClass::Ghz,
    ];

    pub fn label(self) -> &'static str {
        match self {
            SloccClass::Product => "A-B-C",
            SloccClass::BipartiteA => "A-BC",
            SloccClass::BipartiteB => "B-AC",
            SloccClass::BipartiteC => "C-AB",
            SloccClass::W => "W",
            SloccClass::Ghz => "GHZ",
        }
    }
}

impl fmt::Display for SloccClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SloccClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        SloccClass::ALL
            .into_iter()
            .find(|c| c.label() == s)
            .ok_or_else(|| format!("unknown SLOCC class '{s}'"))
    }
}

/// Decision tree: a single-qubit marginal counts as pure when its smaller
/// eigenvalue is below `tol`. Three pure marginals give `A-B-C`, exactly one
/// gives the bipartite class in which that qubit is detached, none gives GHZ
/// or W according to whether the three-tangle exceeds `tol`.
pub fn classify_slocc(psi: &PureState, tol: f64) -> Result<SloccClass> {
    require_three(psi)?;
    let mut pure = [false; 3];
    for (q, flag) in pure.iter_mut().enumerate() {
        let ev = hermitian_eigenvalues(psi.reduced(&[q])?.matrix())?;
        *flag = ev[0] < tol;
    }
    match pure.iter().filter(|&&p| p).count() {
        3 => Ok(SloccClass::Product),
        1 => Ok(match pure.iter().position(|&p| p) {
            Some(0) => SloccClass::BipartiteA,
            Some(1) => SloccClass::BipartiteB,
            _ => SloccClass::BipartiteC,
        }),
        0 => {
            if three_tangle(psi)? > tol {
                Ok(SloccClass::Ghz)
            } else {
                Ok(SloccClass::W)
            }
        }
        _ => Err(Error::Ambiguous),
    }
}

/// Outcome of one POVM monotonicity trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PovmTrial {
    pub avg_pi: f64,
    pub pi_before: f64,
    pub pass: bool,
}

/// Applies both POVM elements, renormalizes each branch and averages the
/// branch three-π weighted by the branch probabilities.
pub fn povm_monotonicity_with(psi: &PureState, povm: &PovmPair) -> Result<PovmTrial> {
    require_three(psi)?;
    let pi_before = three_pi(psi)?;
    let (a1, a2) = povm.elements();
    let mut avg_pi = 0.0;
    for op in [&a1, &a2] {
        let (amps, weight) = psi.apply_one_qubit_operator(op, povm.target_qubit)?;
        if weight < BRANCH_WEIGHT_FLOOR {
            continue;
        }
        let branch = PureState::new(3, amps, true)?;
        avg_pi += weight * three_pi(&branch)?;
    }
    Ok(PovmTrial {
        avg_pi,
        pi_before,
        pass: avg_pi <= pi_before + MONOGAMY_TOL,
    })
}

/// POVM trial with a random pair drawn from `seed`, acting on qubit
/// `seed mod 3`.
pub fn povm_monotonicity_trial(psi: &PureState, seed: u64) -> Result<PovmTrial> {
    let povm = random_povm_pair(seed, (seed % 3) as usize)?;
    povm_monotonicity_with(psi, &povm)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LuTrial {
    pub pi_after: f64,
    pub pi_before: f64,
}

/// `(U_A ⊗ U_B ⊗ U_C)|ψ>` with the unitaries drawn from `seed`.
pub fn lu_transform(psi: &PureState, seed: u64) -> Result<PureState> {
    require_three(psi)?;
    psi.apply_local_unitaries(&random_local_unitaries(seed))
}

pub fn lu_invariance_trial(psi: &PureState, seed: u64) -> Result<LuTrial> {
    let after = lu_transform(psi, seed)?;
    Ok(LuTrial {
        pi_after: three_pi(&after)?,
        pi_before: three_pi(psi)?,
    })
}

/// Properties a campaign can check on each sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// All three negativity monogamy slacks are nonnegative.
    Monogamy,
    /// Negativity never exceeds concurrence on random two-qubit densities.
    NLeC,
    /// Three-π dominates the three-tangle.
    Domination,
    /// POVM monotonicity of three-π.
    Povm,
    /// LU invariance of three-π.
    Lu,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::Monogamy,
        Check::NLeC,
        Check::Domination,
        Check::Povm,
        Check::Lu,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Monogamy => "monogamy",
            Check::NLeC => "n_le_c",
            Check::Domination => "domination",
            Check::Povm => "povm",
            Check::Lu => "lu",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                format!(
                    "unknown check '{s}' (expected one of monogamy, n_le_c, domination, povm, lu)"
                )
            })
    }
}

/// Aggregate of a verification campaign.
///
/// Every check contributes a margin per sample that is negative when the
/// checked property fails: the monogamy slacks, `C - N`, `π - τ`,
/// `π_before - ⟨π⟩`, and `-|π_after - π_before|` for LU trials.
/// `min_slack` is the smallest margin seen.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignStats {
    pub samples: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub min_slack: f64,
    pub violations: usize,
    /// Largest `π - τ` over the domination samples (`-inf` when that check
    /// was not requested).
    pub max_pi_minus_tau: f64,
}

#[derive(Debug, Clone, Copy)]
struct Partial {
    min_slack: f64,
    violations: usize,
    max_pi_minus_tau: f64,
}

impl Partial {
    const EMPTY: Partial = Partial {
        min_slack: f64::INFINITY,
        violations: 0,
        max_pi_minus_tau: f64::NEG_INFINITY,
    };

    fn margin(&mut self, value: f64, tol: f64) {
        self.min_slack = self.min_slack.min(value);
        if value < -tol {
            self.violations += 1;
        }
    }

    fn merge(self, other: Partial) -> Partial {
        Partial {
            min_slack: self.min_slack.min(other.min_slack),
            violations: self.violations + other.violations,
            max_pi_minus_tau: self.max_pi_minus_tau.max(other.max_pi_minus_tau),
        }
    }
}

/// Sub-stream tags so each check of a sample draws independent randomness.
const STATE_STREAM: u64 = 0;
const DENSITY_STREAM: u64 = 1;
const OPERATION_STREAM: u64 = 2;

fn evaluate_sample(seed: u64, checks: &[Check]) -> Result<Partial> {
    let mut acc = Partial::EMPTY;
    let needs_state = checks.iter().any(|c| *c != Check::NLeC);
    let psi = if needs_state {
        Some(haar_random_pure(3, derive_seed(seed, STATE_STREAM))?)
    } else {
        None
    };
    for &check in checks {
        match (check, &psi) {
            (Check::Monogamy, Some(psi)) => {
                for t in negativity_terms(psi)? {
                    acc.margin(t.slack, MONOGAMY_TOL);
                }
            }
            (Check::NLeC, _) => {
                let s = derive_seed(seed, DENSITY_STREAM);
                let rank = 1 + (s % 4) as usize;
                let rho = random_density(2, rank, s)?;
                let margin = concurrence_two_qubit(&rho)? - negativity(&rho, &[0])?;
                acc.margin(margin, MONOGAMY_TOL);
            }
            (Check::Domination, Some(psi)) => {
                let gap = three_pi(psi)? - three_tangle(psi)?;
                acc.max_pi_minus_tau = acc.max_pi_minus_tau.max(gap);
                acc.margin(gap, MONOGAMY_TOL);
            }
            (Check::Povm, Some(psi)) => {
                let trial = povm_monotonicity_trial(psi, derive_seed(seed, OPERATION_STREAM))?;
                acc.margin(trial.pi_before - trial.avg_pi, MONOGAMY_TOL);
            }
            (Check::Lu, Some(psi)) => {
                let trial = lu_invariance_trial(psi, derive_seed(seed, OPERATION_STREAM))?;
                acc.margin(-(trial.pi_after - trial.pi_before).abs(), LU_TOL);
            }
            (_, None) => unreachable!("state drawn whenever a pure-state check is requested"),
        }
    }
    Ok(acc)
}

/// Runs `checks` on `n_samples` seeded samples. Sample `i` is driven by
/// `derive_seed(seed, i)`, so the result is independent of the order in
/// which samples are evaluated.
pub fn random_verification_campaign(
    n_samples: usize,
    seed: u64,
    checks: &[Check],
) -> Result<CampaignStats> {
    if n_samples == 0 {
        return Err(Error::OutOfRange {
            value: 0.0,
            range: "at least one sample",
        });
    }
    let mut checks = checks.to_vec();
    checks.sort();
    checks.dedup();
    let total = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| evaluate_sample(derive_seed(seed, i), &checks))
        .try_reduce(|| Partial::EMPTY, |a, b| Ok(a.merge(b)))?;
    Ok(CampaignStats {
        samples: n_samples,
        seed,
        checks,
        min_slack: total.min_slack,
        violations: total.violations,
        max_pi_minus_tau: total.max_pi_minus_tau,
    })
}
