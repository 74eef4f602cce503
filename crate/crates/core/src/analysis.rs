//! Security checks that combine the quantum and classical values.

use serde::{Deserialize, Serialize};

use crate::classical::{
    classical_security_profile_with, classical_values, CheatValues, ClassicalProfile, ALL_PAIRS,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::protocol::{BccfProtocol, Outcome, Party};
use crate::quantum::{solve_quantum, QuantumReport, QuantumSolution, SolveOptions};
use crate::tol::EPS_EQ;

/// Slack for the product and saturation comparisons.
pub const SATURATION_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Quantum,
    Classical,
    #[default]
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AnalysisOptions {
    pub mode: Mode,
    pub solve: SolveOptions,
    pub exec: Execution,
}

/// Solve all four quantum problems, in the order of [`ALL_PAIRS`].
pub fn quantum_solves(
    proto: &BccfProtocol,
    opts: &SolveOptions,
    exec: Execution,
) -> Result<Vec<QuantumSolution>> {
    exec.map(&ALL_PAIRS, |&(party, outcome)| {
        solve_quantum(proto, party, outcome, opts)
    })
    .into_iter()
    .collect()
}

fn find(solutions: &[QuantumSolution], party: Party, outcome: Outcome) -> Result<&QuantumSolution> {
    solutions
        .iter()
        .find(|s| s.party == party && s.outcome == outcome)
        .ok_or_else(|| Error::Domain(format!("no solve for {party:?} forcing {}", outcome.bit())))
}

fn values(
    solutions: &[QuantumSolution],
    pick: impl Fn(&QuantumSolution) -> f64,
) -> Result<CheatValues> {
    let v = |p, o| find(solutions, p, o).map(&pick);
    Ok(CheatValues {
        alice: [
            v(Party::Alice, Outcome::Zero)?,
            v(Party::Alice, Outcome::One)?,
        ],
        bob: [v(Party::Bob, Outcome::Zero)?, v(Party::Bob, Outcome::One)?],
    })
}

/// `P_{A,c} · P_{B,c}` for both outcomes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KitaevCheck {
    /// Products of dual values.
    pub certified: [f64; 2],
    /// Products of primal values.
    pub empirical: [f64; 2],
    pub pass: bool,
}

fn products(v: &CheatValues) -> [f64; 2] {
    [0, 1].map(|c| v.alice[c] * v.bob[c])
}

/// Both products must be at least ½; the verdict uses the dual values.
/// Refuses solves that did not converge.
pub fn kitaev_check(solutions: &[QuantumSolution]) -> Result<KitaevCheck> {
    if let Some(s) = solutions.iter().find(|s| !s.converged) {
        return Err(Error::Unconverged(format!(
            "{:?} forcing {}: gap {:e} after {} iterations",
            s.party,
            s.outcome.bit(),
            s.gap,
            s.iterations
        )));
    }
    let certified = products(&values(solutions, |s| s.dual_value)?);
    let empirical = products(&values(solutions, |s| s.primal_value)?);
    Ok(KitaevCheck {
        certified,
        empirical,
        pass: certified.iter().all(|&p| p >= 0.5 - EPS_EQ),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SaturationProbe {
    /// Both products within [`SATURATION_TOL`] of ½.
    pub saturated: bool,
    /// Every quantum value within [`SATURATION_TOL`] of its classical value.
    pub classical_match: bool,
    pub max_deviation: f64,
}

/// When the Kitaev products are ½, the quantum values must be the classical
/// ones; `classical_match` reports whether they are.
pub fn saturation_probe(
    proto: &BccfProtocol,
    solutions: &[QuantumSolution],
) -> Result<SaturationProbe> {
    let quantum = values(solutions, |s| s.primal_value)?;
    let dual = values(solutions, |s| s.dual_value)?;
    let classical = classical_values(proto, Execution::Sequential);
    let saturated = products(&dual)
        .iter()
        .all(|p| (p - 0.5).abs() <= SATURATION_TOL);
    let pairs = quantum
        .alice
        .iter()
        .chain(&quantum.bob)
        .zip(classical.alice.iter().chain(&classical.bob));
    let max_deviation = pairs.map(|(q, c)| (q - c).abs()).fold(0.0, f64::max);
    Ok(SaturationProbe {
        saturated,
        classical_match: max_deviation <= SATURATION_TOL,
        max_deviation,
    })
}

/// Some cheating probability exceeds `1/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorollaryCheck {
    pub max_primal: f64,
    pub max_dual: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumSummary {
    /// Achieved cheating probabilities.
    pub primal: CheatValues,
    /// Certified upper bounds.
    pub dual: CheatValues,
    pub bias: f64,
    pub converged: bool,
    pub solves: Vec<QuantumReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BiasReport {
    /// `(P[0], P[1], P[abort])` for honest players.
    pub honest_outcomes: [f64; 3],
    pub quantum: Option<QuantumSummary>,
    pub classical: Option<ClassicalProfile>,
    pub kitaev: Option<KitaevCheck>,
    pub saturation: Option<SaturationProbe>,
    pub corollary: Option<CorollaryCheck>,
    /// Why a check is missing.
    pub diagnostics: Vec<String>,
}

impl BiasReport {
    /// False when some quantum solve stopped short of its tolerance.
    pub fn converged(&self) -> bool {
        self.quantum.as_ref().is_none_or(|q| q.converged)
    }

    /// Every check that ran passed.
    pub fn all_pass(&self) -> bool {
        self.converged()
            && self.kitaev.as_ref().is_none_or(|k| k.pass)
            && self.corollary.as_ref().is_none_or(|c| c.pass)
            && self
                .saturation
                .as_ref()
                .is_none_or(|s| !s.saturated || s.classical_match)
    }
}

/// Full report with default options.
pub fn bias_report(proto: &BccfProtocol) -> Result<BiasReport> {
    analyze(proto, &AnalysisOptions::default())
}

/// Non-convergence does not fail the call; it leaves `converged() == false`
/// and skips the checks that need certified values. A classical protocol
/// without exactly one perfect cheater is an error.
pub fn analyze(proto: &BccfProtocol, opts: &AnalysisOptions) -> Result<BiasReport> {
    let (p0, p1, abort) = proto.honest_outcome_distribution();
    let mut report = BiasReport {
        honest_outcomes: [p0, p1, abort],
        quantum: None,
        classical: None,
        kitaev: None,
        saturation: None,
        corollary: None,
        diagnostics: Vec::new(),
    };
    if opts.mode != Mode::Quantum {
        report.classical = Some(classical_security_profile_with(proto, opts.exec)?);
    }
    if opts.mode == Mode::Classical {
        return Ok(report);
    }

    let solutions = quantum_solves(proto, &opts.solve, opts.exec)?;
    let primal = values(&solutions, |s| s.primal_value)?;
    let dual = values(&solutions, |s| s.dual_value)?;
    report.quantum = Some(QuantumSummary {
        primal,
        dual,
        bias: primal.bias(),
        converged: solutions.iter().all(|s| s.converged),
        solves: solutions.iter().map(QuantumSolution::report).collect(),
    });
    let threshold = 0.5f64.sqrt();
    report.corollary = Some(CorollaryCheck {
        max_primal: primal.max(),
        max_dual: dual.max(),
        threshold,
        pass: dual.max() >= threshold - EPS_EQ,
    });
    match kitaev_check(&solutions) {
        Ok(k) => {
            report.kitaev = Some(k);
            report.saturation = Some(saturation_probe(proto, &solutions)?);
        }
        Err(e) => report
            .diagnostics
            .push(format!("kitaev check skipped: {e}")),
    }
    Ok(report)
}

/// Analyze many protocols; `opts.exec` spreads the protocols over threads
/// and each one is solved sequentially.
pub fn analyze_batch(protos: &[BccfProtocol], opts: &AnalysisOptions) -> Vec<Result<BiasReport>> {
    let inner = AnalysisOptions {
        exec: Execution::Sequential,
        ..*opts
    };
    opts.exec.map(protos, |p| analyze(p, &inner))
}
