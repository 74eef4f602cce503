//! Succinct dual solutions and their evaluation.
//!
//! Bob's dual is determined by two vectors `v₀, v₁` over `B`; the remaining
//! variables `w₁,…,wₙ` follow by backward induction. Alice's dual is
//! determined by `z_{n+1}` over `A×B`; `zₙ,…,z₁` follow likewise and `z₁`
//! is the bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::CheatVars;
use crate::protocol::{BccfProtocol, Outcome, Party};
use crate::quantum::objective::{
    alice_reveal_gradient, bob_marginals, bob_multipliers, reveal_mass,
};
use crate::tol::{EPS_FEAS, EPS_ZERO};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BobDual {
    pub outcome: Outcome,
    /// `v[a]` over `B`.
    pub v: [Vec<f64>; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AliceDual {
    pub outcome: Outcome,
    /// `z_{n+1}` over `(x, y)`, index `x·|B| + y`.
    pub z: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "party", rename_all = "lowercase")]
pub enum DualCertificate {
    Bob(BobDual),
    Alice(AliceDual),
}

impl DualCertificate {
    pub fn party(&self) -> Party {
        match self {
            DualCertificate::Bob(_) => Party::Bob,
            DualCertificate::Alice(_) => Party::Alice,
        }
    }

    pub fn outcome(&self) -> Outcome {
        match self {
            DualCertificate::Bob(d) => d.outcome,
            DualCertificate::Alice(d) => d.outcome,
        }
    }
}

fn infeasible(constraint: String, violation: f64) -> Error {
    Error::InfeasibleDual {
        constraint,
        violation,
    }
}

fn check_entries(label: &str, v: &[f64]) -> Result<()> {
    for (i, &x) in v.iter().enumerate() {
        if !x.is_finite() {
            return Err(Error::Domain(format!("{label}[{i}] is not finite")));
        }
        if x < -EPS_ZERO {
            return Err(infeasible(format!("{label}[{i}] >= 0"), -x));
        }
    }
    Ok(())
}

/// Check `Diag(vₐ) ⪰ √β_{t(a)} √β_{t(a)}ᵀ` for both `a`, in its scalar
/// form `Σ_{y ∈ supp} β/v ≤ 1` with `v > 0` on the support.
pub fn check_bob_dual(proto: &BccfProtocol, dual: &BobDual) -> Result<()> {
    let bsz = proto.shape().b_size();
    for a in 0..2 {
        if dual.v[a].len() != bsz {
            return Err(Error::Dimension {
                context: format!("v{a}"),
                expected: bsz,
                actual: dual.v[a].len(),
            });
        }
        check_entries(&format!("v{a}"), &dual.v[a])?;
        let beta = proto.beta(dual.outcome.target(a));
        let mut sum = 0.0;
        for y in beta.support() {
            let v = dual.v[a][y];
            if v <= 0.0 {
                return Err(infeasible(
                    format!("v{a}[{y}] > 0 on the support of beta"),
                    f64::INFINITY,
                ));
            }
            sum += beta.get(y) / v;
        }
        if sum > 1.0 + EPS_FEAS {
            return Err(infeasible(format!("sum of beta/v{a} <= 1"), sum - 1.0));
        }
    }
    Ok(())
}

/// Check `Diag(z^{(y)}) ⪰ ½ β_{t(a),y} √αₐ √αₐᵀ` for every `a` and `y`.
pub fn check_alice_dual(proto: &BccfProtocol, dual: &AliceDual) -> Result<()> {
    let (asz, bsz) = (proto.shape().a_size(), proto.shape().b_size());
    if dual.z.len() != asz * bsz {
        return Err(Error::Dimension {
            context: "z".into(),
            expected: asz * bsz,
            actual: dual.z.len(),
        });
    }
    check_entries("z", &dual.z)?;
    for a in 0..2 {
        let alpha = proto.alpha(a);
        let beta = proto.beta(dual.outcome.target(a));
        for y in beta.support() {
            let mut sum = 0.0;
            for x in alpha.support() {
                let z = dual.z[x * bsz + y];
                if z <= 0.0 {
                    return Err(infeasible(
                        format!("z[{x},{y}] > 0 on the support of alpha{a}"),
                        f64::INFINITY,
                    ));
                }
                sum += 0.5 * beta.get(y) * alpha.get(x) / z;
            }
            if sum > 1.0 + EPS_FEAS {
                return Err(infeasible(format!("constraint (a={a}, y={y})"), sum - 1.0));
            }
        }
    }
    Ok(())
}

/// `w₁,…,wₙ`; level `j` is over `(x₁..xⱼ ; y₁..yⱼ₋₁)`.
///
/// Checks feasibility first.
pub fn bob_dual_levels(proto: &BccfProtocol, dual: &BobDual) -> Result<Vec<Vec<f64>>> {
    check_bob_dual(proto, dual)?;
    let shape = proto.shape();
    let n = shape.rounds();
    let (asz, bsz) = (shape.a_size(), shape.b_size());
    let bn = shape.bob_dims()[n - 1];
    let mut levels = vec![Vec::new(); n];
    let mut wn = vec![f64::NEG_INFINITY; shape.alice_level_len(n)];
    for x in 0..asz {
        let (a0, a1) = (0.5 * proto.alpha(0).get(x), 0.5 * proto.alpha(1).get(x));
        for y in 0..bsz {
            let val = a0 * dual.v[0][y] + a1 * dual.v[1][y];
            let slot = &mut wn[x * shape.b_prefix(n - 1) + y / bn];
            *slot = slot.max(val);
        }
    }
    levels[n - 1] = wn;
    for j in (1..n).rev() {
        let (adim, bdim) = (shape.alice_dims()[j], shape.bob_dims()[j - 1]);
        let bp = shape.b_prefix(j);
        let bp_parent = shape.b_prefix(j - 1);
        let next = &levels[j];
        let mut w = vec![f64::NEG_INFINITY; shape.alice_level_len(j)];
        for xp in 0..shape.a_prefix(j) {
            for yp in 0..bp {
                let sum: f64 = (0..adim).map(|xn| next[(xp * adim + xn) * bp + yp]).sum();
                let slot = &mut w[xp * bp_parent + yp / bdim];
                *slot = slot.max(sum);
            }
        }
        levels[j - 1] = w;
    }
    Ok(levels)
}

/// Upper bound `Σ_{x₁} w₁(x₁)` on Bob's cheating probability.
pub fn eval_dual_bob(proto: &BccfProtocol, dual: &BobDual) -> Result<f64> {
    Ok(bob_dual_levels(proto, dual)?[0].iter().sum())
}

/// `z₁,…,z_{n+1}`; level `j` is over `(x₁..xⱼ₋₁ ; y₁..yⱼ₋₁)`, so `z₁` has
/// a single entry and `z_{n+1}` is the dual itself.
pub fn alice_dual_levels(proto: &BccfProtocol, dual: &AliceDual) -> Result<Vec<Vec<f64>>> {
    check_alice_dual(proto, dual)?;
    let shape = proto.shape();
    let n = shape.rounds();
    let mut levels = vec![Vec::new(); n + 1];
    levels[n] = dual.z.clone();
    for j in (0..n).rev() {
        let (adim, bdim) = (shape.alice_dims()[j], shape.bob_dims()[j]);
        let bp_next = shape.b_prefix(j + 1);
        let next = &levels[j + 1];
        let mut z = vec![f64::NEG_INFINITY; shape.a_prefix(j) * shape.b_prefix(j)];
        for xp in 0..shape.a_prefix(j) {
            for yp in 0..shape.b_prefix(j) {
                for xj in 0..adim {
                    let sum: f64 = (0..bdim)
                        .map(|yj| next[(xp * adim + xj) * bp_next + yp * bdim + yj])
                        .sum();
                    let slot = &mut z[xp * shape.b_prefix(j) + yp];
                    *slot = slot.max(sum);
                }
            }
        }
        levels[j] = z;
    }
    Ok(levels)
}

/// Upper bound `z₁` on Alice's cheating probability.
pub fn eval_dual_alice(proto: &BccfProtocol, dual: &AliceDual) -> Result<f64> {
    Ok(alice_dual_levels(proto, dual)?[0][0])
}

pub fn eval_dual(proto: &BccfProtocol, dual: &DualCertificate) -> Result<f64> {
    match dual {
        DualCertificate::Bob(d) => eval_dual_bob(proto, d),
        DualCertificate::Alice(d) => eval_dual_alice(proto, d),
    }
}

/// Feasible dual built from a primal point.
///
/// Bob's `vₐ` are the optimal multipliers of each fidelity term at the
/// current marginals. Alice's `z_{n+1}` depends only on the mass reaching
/// each transcript: it is the cheapest `z` feasible for both revealed bits
/// against that mass, which is never worse than the entrywise max of the
/// two per-bit multipliers. At a primal optimum both duals are optimal.
pub fn dual_from_primal(
    proto: &BccfProtocol,
    party: Party,
    outcome: Outcome,
    primal: &CheatVars,
) -> Result<DualCertificate> {
    let shape = proto.shape();
    match (party, primal) {
        (Party::Bob, CheatVars::Bob(p)) => {
            let pn = p.terminal();
            if pn.len() != shape.a_size() * shape.b_size() {
                return Err(Error::Dimension {
                    context: "Bob terminal variables".into(),
                    expected: shape.a_size() * shape.b_size(),
                    actual: pn.len(),
                });
            }
            let q = bob_marginals(proto, pn);
            let mut v = bob_multipliers(proto, outcome, &q);
            for (a, va) in v.iter_mut().enumerate() {
                let beta = proto.beta(outcome.target(a));
                let sum: f64 = beta
                    .support()
                    .into_iter()
                    .map(|y| beta.get(y) / va[y])
                    .sum();
                if sum > 1.0 {
                    va.iter_mut().for_each(|x| *x *= sum);
                }
            }
            Ok(DualCertificate::Bob(BobDual { outcome, v }))
        }
        (Party::Alice, CheatVars::Alice(s)) => {
            let (asz, bsz) = (shape.a_size(), shape.b_size());
            if s.terminal.len() != 2 * asz * bsz {
                return Err(Error::Dimension {
                    context: "Alice terminal variables".into(),
                    expected: 2 * asz * bsz,
                    actual: s.terminal.len(),
                });
            }
            let mut z = alice_reveal_gradient(proto, outcome, &reveal_mass(proto, &s.terminal));
            // Restore feasibility lost to rounding.
            for a in 0..2 {
                let alpha = proto.alpha(a);
                let beta = proto.beta(outcome.target(a));
                for y in beta.support() {
                    let sum: f64 = alpha
                        .support()
                        .into_iter()
                        .map(|x| 0.5 * beta.get(y) * alpha.get(x) / z[x * bsz + y])
                        .sum();
                    if sum > 1.0 {
                        for x in 0..asz {
                            z[x * bsz + y] *= sum;
                        }
                    }
                }
            }
            Ok(DualCertificate::Alice(AliceDual { outcome, z }))
        }
        _ => Err(Error::DualPairing(format!(
            "{party:?} dual requested from the other party's variables"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn appendix_bob(outcome: Outcome) -> BobDual {
        let (a, b) = (vec![0.75, 0.0, 1.5], vec![0.75, 1.5, 0.0]);
        let v = match outcome {
            Outcome::One => [a, b],
            Outcome::Zero => [b, a],
        };
        BobDual { outcome, v }
    }

    #[test]
    fn appendix_duals_evaluate_to_three_quarters() {
        let p = BccfProtocol::three_quarters();
        for o in Outcome::BOTH {
            let d = appendix_bob(o);
            assert!((eval_dual_bob(&p, &d).unwrap() - 0.75).abs() < 1e-15);
            let w = bob_dual_levels(&p, &d).unwrap();
            assert_eq!(w[0], vec![0.75, 0.0]);
            let z = AliceDual {
                outcome: o,
                z: vec![0.25, 0.25, 0.25, 0.0, 0.0, 0.0],
            };
            assert!((eval_dual_alice(&p, &z).unwrap() - 0.75).abs() < 1e-15);
        }
    }

    #[test]
    fn appendix_bob_dual_only_fits_one_orientation() {
        let p = BccfProtocol::three_quarters();
        let mut d = appendix_bob(Outcome::One);
        d.outcome = Outcome::Zero;
        assert!(matches!(
            eval_dual_bob(&p, &d),
            Err(Error::InfeasibleDual { .. })
        ));
    }

    #[test]
    fn unit_bob_dual() {
        let p = BccfProtocol::from_vecs(
            vec![2],
            vec![2],
            vec![0.4, 0.6],
            vec![0.7, 0.3],
            vec![0.5, 0.5],
            vec![0.1, 0.9],
        )
        .unwrap();
        let d = BobDual {
            outcome: Outcome::Zero,
            v: [vec![1.0; 2], vec![1.0; 2]],
        };
        let base = eval_dual_bob(&p, &d).unwrap();
        assert!((base - 1.0).abs() < 1e-15);
        let doubled = BobDual {
            outcome: Outcome::Zero,
            v: [vec![2.0; 2], vec![2.0; 2]],
        };
        assert!(eval_dual_bob(&p, &doubled).unwrap() >= base);
    }

    #[test]
    fn classical_style_alice_dual() {
        let p = BccfProtocol::from_vecs(
            vec![2],
            vec![3],
            vec![0.4, 0.6],
            vec![0.7, 0.3],
            vec![0.2, 0.5, 0.3],
            vec![0.6, 0.1, 0.3],
        )
        .unwrap();
        let mut z = vec![0.0; 6];
        for x in 0..2 {
            for y in 0..3 {
                z[x * 3 + y] = 0.5 * p.beta(0).get(y).max(p.beta(1).get(y));
            }
        }
        let val = eval_dual_alice(
            &p,
            &AliceDual {
                outcome: Outcome::Zero,
                z,
            },
        )
        .unwrap();
        assert!((val - crate::classical::alice_info_bound(&p)).abs() < 1e-15);
    }

    #[test]
    fn zero_alice_dual_is_infeasible() {
        let p = BccfProtocol::three_quarters();
        let d = AliceDual {
            outcome: Outcome::Zero,
            z: vec![0.0; 6],
        };
        assert!(matches!(
            eval_dual_alice(&p, &d),
            Err(Error::InfeasibleDual { .. })
        ));
    }
}
