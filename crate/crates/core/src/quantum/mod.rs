//! Quantum cheating probabilities through the reduced problems.

pub mod dual;
pub mod objective;
pub mod solver;

pub use dual::{
    alice_dual_levels, bob_dual_levels, check_alice_dual, check_bob_dual, dual_from_primal,
    eval_dual, eval_dual_alice, eval_dual_bob, AliceDual, BobDual, DualCertificate,
};
pub use objective::{alice_objective, bob_objective};
pub use solver::{solve_quantum, QuantumReport, QuantumSolution, SolveOptions};
