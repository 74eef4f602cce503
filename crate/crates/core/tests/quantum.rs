mod common;

use bccf::classical::ALL_PAIRS;
use bccf::quantum::objective::{alice_value, bob_objective};
use bccf::quantum::{check_alice_dual, check_bob_dual, eval_dual};
use bccf::random::{random_protocol, random_protocol_with_shape};
use bccf::{
    alice_info_bound, eval_dual_alice, eval_dual_bob, membership, solve_quantum, AliceDual,
    BccfProtocol, BobDual, CheatVars, DualCertificate, Outcome, Party, Shape, SolveOptions,
};
use common::{fidelity, quantum_grid_2x2};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn solve(p: &BccfProtocol, party: Party, o: Outcome) -> bccf::QuantumSolution {
    solve_quantum(p, party, o, &SolveOptions::default()).unwrap()
}

/// Everything a returned solution claims, rechecked from scratch.
fn audit(p: &BccfProtocol, s: &bccf::QuantumSolution) {
    assert!(membership(p.shape(), &s.primal).unwrap().feasible);
    let recomputed = match &s.primal {
        CheatVars::Bob(v) => bob_objective(p, s.outcome, v.terminal()).unwrap().0,
        CheatVars::Alice(v) => alice_value(p, s.outcome, &v.terminal),
    };
    assert!((recomputed - s.primal_value).abs() < 1e-12);
    match &s.dual {
        DualCertificate::Bob(d) => check_bob_dual(p, d).unwrap(),
        DualCertificate::Alice(d) => check_alice_dual(p, d).unwrap(),
    }
    assert_eq!(s.dual.party(), s.party);
    assert_eq!(s.dual.outcome(), s.outcome);
    assert_eq!(eval_dual(p, &s.dual).unwrap(), s.dual_value);
    assert!(s.gap >= -1e-9, "weak duality: {}", s.gap);
}

#[test]
fn three_quarters_values_and_certificates() {
    let p = BccfProtocol::three_quarters();
    for (party, o) in ALL_PAIRS {
        let s = solve(&p, party, o);
        audit(&p, &s);
        assert!(s.converged && s.gap <= 1e-6);
        assert!((s.primal_value - 0.75).abs() < 1e-6);
        assert!((s.dual_value - 0.75).abs() < 1e-6);
    }
}

#[test]
fn hand_written_duals_for_three_quarters() {
    let p = BccfProtocol::three_quarters();
    let bob = BobDual {
        outcome: Outcome::One,
        v: [vec![0.75, 0.0, 1.5], vec![0.75, 1.5, 0.0]],
    };
    assert_eq!(eval_dual_bob(&p, &bob).unwrap(), 0.75);
    let mirrored = BobDual {
        outcome: Outcome::Zero,
        v: [bob.v[1].clone(), bob.v[0].clone()],
    };
    assert_eq!(eval_dual_bob(&p, &mirrored).unwrap(), 0.75);
    for outcome in Outcome::BOTH {
        let alice = AliceDual {
            outcome,
            z: vec![0.25, 0.25, 0.25, 0.0, 0.0, 0.0],
        };
        assert_eq!(eval_dual_alice(&p, &alice).unwrap(), 0.75);
    }
}

#[test]
fn former_stall_cases_converge() {
    for text in [
        include_str!("data/stall-2x2x2.json"),
        include_str!("data/stall-2x3x3.json"),
    ] {
        let p = BccfProtocol::from_json(text).unwrap();
        for (party, o) in ALL_PAIRS {
            let s = solve(&p, party, o);
            audit(&p, &s);
            assert!(s.converged, "{party:?}→{o:?} gap {}", s.gap);
        }
    }
}

#[test]
fn one_round_two_by_two_matches_grid_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let shape = Shape::new(vec![2], vec![2]).unwrap();
    for _ in 0..8 {
        let p = random_protocol_with_shape(&mut rng, &shape, 0.2);
        for (party, o) in ALL_PAIRS {
            let s = solve(&p, party, o);
            let grid = quantum_grid_2x2(&p, party, o);
            assert!(s.converged);
            assert!(
                (s.primal_value - grid).abs() < 1e-3,
                "{party:?}→{o:?}: {} vs {grid}",
                s.primal_value
            );
            assert!(grid <= s.dual_value + 1e-9);
        }
    }
}

#[test]
fn equal_alphas_with_orthogonal_betas_give_alice_everything() {
    let p = common::proto(
        &[3],
        &[2],
        &[0.2, 0.5, 0.3],
        &[0.2, 0.5, 0.3],
        &[1.0, 0.0],
        &[0.0, 1.0],
    );
    for o in Outcome::BOTH {
        let s = solve(&p, Party::Alice, o);
        assert!((s.primal_value - 1.0).abs() < 1e-6);
    }
}

#[test]
fn orthogonal_betas_cap_alice_at_the_state_overlap() {
    let (a0, a1) = ([0.6, 0.3, 0.1], [0.1, 0.2, 0.7]);
    let p = common::proto(&[3], &[2], &a0, &a1, &[1.0, 0.0], &[0.0, 1.0]);
    let want = 0.5 + 0.5 * fidelity(&a0, &a1).sqrt();
    for o in Outcome::BOTH {
        let s = solve(&p, Party::Alice, o);
        assert!(
            (s.primal_value - want).abs() < 1e-6,
            "{} vs {want}",
            s.primal_value
        );
    }
}

#[test]
fn random_solutions_pass_audit_and_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..12 {
        let p = random_protocol(&mut rng, 2, 3, 0.3);
        for (party, o) in ALL_PAIRS {
            let s = solve(&p, party, o);
            audit(&p, &s);
            assert!(s.converged, "{party:?}→{o:?} on {}", p.to_json());
            assert!(s.primal_value >= 0.5 - 1e-9);
            if party == Party::Alice {
                assert!(s.primal_value <= alice_info_bound(&p) + 1e-6);
            }
        }
    }
}

#[test]
fn seeded_start_reaches_the_same_value() {
    let p = BccfProtocol::from_json(include_str!("data/stall-2x2x2.json")).unwrap();
    let seeded = SolveOptions {
        seed: Some(11),
        ..Default::default()
    };
    for (party, o) in ALL_PAIRS {
        let a = solve_quantum(&p, party, o, &seeded).unwrap();
        let b = solve_quantum(&p, party, o, &seeded).unwrap();
        assert_eq!(a, b);
        let plain = solve(&p, party, o);
        assert!(
            a.primal_value.max(plain.primal_value) <= a.dual_value.min(plain.dual_value) + 1e-9
        );
    }
}

#[test]
fn tiny_budget_reports_non_convergence() {
    let p = BccfProtocol::from_json(include_str!("data/stall-2x3x3.json")).unwrap();
    let opts = SolveOptions {
        max_iter: 1,
        ..Default::default()
    };
    let s = solve_quantum(&p, Party::Alice, Outcome::One, &opts).unwrap();
    audit(&p, &s);
    assert!(!s.converged);
    assert!(s.gap > 1e-6);
}
