//! Cheating analysis for coin-flipping protocols built from bit commitment.
//!
//! A protocol is given by Alice's two commitment distributions `α₀, α₁` over
//! `A = A₁×…×Aₙ` and Bob's `β₀, β₁` over `B = B₁×…×Bₙ`. The crate computes
//! optimal classical and quantum cheating probabilities, certifies the
//! quantum ones with succinct dual solutions, and turns those duals into
//! point games that can be replayed move by move.
//!
//! ```
//! use bccf::{solve_quantum, BccfProtocol, Outcome, Party, SolveOptions};
//!
//! let proto = BccfProtocol::three_quarters();
//! let r = solve_quantum(&proto, Party::Bob, Outcome::Zero, &SolveOptions::default()).unwrap();
//! assert!((r.primal_value - 0.75).abs() < 1e-6);
//! ```

pub mod analysis;
pub mod classical;
pub mod dist;
pub mod error;
pub mod exec;
pub mod pointgame;
pub mod polytope;
pub mod protocol;
pub mod quantum;
pub mod random;
pub mod tol;

pub use analysis::{
    analyze, analyze_batch, bias_report, kitaev_check, saturation_probe, AnalysisOptions,
    BiasReport, KitaevCheck, Mode, SaturationProbe,
};
pub use classical::{
    alice_info_bound, bob_firstmsg_bound, classical_cheat, classical_cheat_exact,
    classical_security_profile, CheatValues, ClassicalProfile, ClassicalResult,
};
pub use dist::{fidelity, maxsum_identity_check, trace_distance, ProbDist};
pub use error::{Error, Result};
pub use exec::Execution;
pub use pointgame::{
    build_classical_game, build_game_pair, build_quantum_game, classical_alice_dual,
    classical_bob_dual, classical_final_point_theorem, validate, Axis, Configuration, GameKind,
    GamePair, Move, MoveKind, PointGame, WeightedPoint,
};
pub use polytope::{
    enumerate_vertices, lmo_alice, lmo_bob, membership, strategy_to_point, AliceCheatVars,
    BobCheatVars, CheatVars, DeterministicStrategy,
};
pub use protocol::{BccfProtocol, Outcome, PartialString, Party, Shape};
pub use quantum::{
    dual_from_primal, eval_dual_alice, eval_dual_bob, solve_quantum, AliceDual, BobDual,
    DualCertificate, QuantumReport, QuantumSolution, SolveOptions,
};
