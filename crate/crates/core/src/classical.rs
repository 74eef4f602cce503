//! Classical cheating probabilities.
//!
//! In the classical protocol only the supports of the four distributions
//! matter: the honest party accepts a revealed string iff it lies in the
//! support of the committed distribution. The cheating problems become
//! linear programs over the cheating polytopes, solved exactly by the
//! backward induction in [`crate::polytope`].

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use serde::{Deserialize, Serialize};

use crate::dist::trace_distance;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::polytope::{alice_induction, bob_induction, DeterministicStrategy};
use crate::protocol::{BccfProtocol, Outcome, Party};
use crate::tol::EPS_EQ;

/// The four cheating probabilities of a protocol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheatValues {
    /// Alice forcing outcome 0, 1.
    pub alice: [f64; 2],
    /// Bob forcing outcome 0, 1.
    pub bob: [f64; 2],
}

impl CheatValues {
    pub fn get(&self, party: Party, outcome: Outcome) -> f64 {
        match party {
            Party::Alice => self.alice[outcome.bit()],
            Party::Bob => self.bob[outcome.bit()],
        }
    }

    pub fn max(&self) -> f64 {
        self.alice
            .iter()
            .chain(&self.bob)
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn bias(&self) -> f64 {
        self.max() - 0.5
    }
}

/// The four `(party, outcome)` pairs in report order.
pub const ALL_PAIRS: [(Party, Outcome); 4] = [
    (Party::Alice, Outcome::Zero),
    (Party::Alice, Outcome::One),
    (Party::Bob, Outcome::Zero),
    (Party::Bob, Outcome::One),
];

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalResult {
    pub value: f64,
    pub strategy: DeterministicStrategy,
}

/// Bob's coefficients over `(x, y)`: `½ Σ_a α_{a,x} [y ∈ supp β_{t(a)}]`.
pub fn bob_coefficients(proto: &BccfProtocol, outcome: Outcome) -> Vec<f64> {
    let shape = proto.shape();
    let (asz, bsz) = (shape.a_size(), shape.b_size());
    let mut c = vec![0.0; asz * bsz];
    for a in 0..2 {
        let beta = proto.beta(outcome.target(a));
        let alpha = proto.alpha(a);
        for x in 0..asz {
            for y in 0..bsz {
                if beta.in_support(y) {
                    c[x * bsz + y] += 0.5 * alpha.get(x);
                }
            }
        }
    }
    c
}

/// Alice's coefficients over `(a, x, y)`: `½ β_{t(a),y} [x ∈ supp α_a]`.
pub fn alice_coefficients(proto: &BccfProtocol, outcome: Outcome) -> Vec<f64> {
    let shape = proto.shape();
    let (asz, bsz) = (shape.a_size(), shape.b_size());
    let mut c = vec![0.0; 2 * asz * bsz];
    for a in 0..2 {
        let beta = proto.beta(outcome.target(a));
        let alpha = proto.alpha(a);
        for x in (0..asz).filter(|&x| alpha.in_support(x)) {
            for y in 0..bsz {
                c[a * asz * bsz + x * bsz + y] = 0.5 * beta.get(y);
            }
        }
    }
    c
}

/// Optimal classical cheating probability of `party` forcing `outcome`,
/// with an optimal deterministic strategy.
pub fn classical_cheat(proto: &BccfProtocol, party: Party, outcome: Outcome) -> ClassicalResult {
    let shape = proto.shape();
    let (asz, bsz) = (shape.a_size(), shape.b_size());
    match party {
        Party::Bob => {
            let c = bob_coefficients(proto, outcome);
            let (value, s) = bob_induction(shape, |x, y| c[x * bsz + y]);
            ClassicalResult {
                value,
                strategy: DeterministicStrategy::Bob(s),
            }
        }
        Party::Alice => {
            let c = alice_coefficients(proto, outcome);
            let (value, s) = alice_induction(shape, |a, x, y| c[a * asz * bsz + x * bsz + y]);
            ClassicalResult {
                value,
                strategy: DeterministicStrategy::Alice(s),
            }
        }
    }
}

fn to_rational(v: f64) -> BigRational {
    Ratio::from_float(v).expect("distribution entries are finite")
}

/// [`classical_cheat`] in exact rational arithmetic.
///
/// Every input entry is converted exactly from its binary floating-point
/// value, so the result is the exact optimum for the protocol as stored.
pub fn classical_cheat_exact(proto: &BccfProtocol, party: Party, outcome: Outcome) -> BigRational {
    let shape = proto.shape();
    let (asz, bsz) = (shape.a_size(), shape.b_size());
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let zero = BigRational::from_integer(BigInt::from(0));
    match party {
        Party::Bob => {
            let mut c = vec![zero; asz * bsz];
            for a in 0..2 {
                let beta = proto.beta(outcome.target(a));
                for x in 0..asz {
                    let w = &half * to_rational(proto.alpha(a).get(x));
                    for y in (0..bsz).filter(|&y| beta.in_support(y)) {
                        c[x * bsz + y] += &w;
                    }
                }
            }
            bob_induction(shape, |x, y| c[x * bsz + y].clone()).0
        }
        Party::Alice => {
            let mut c = vec![zero; 2 * asz * bsz];
            for a in 0..2 {
                let beta = proto.beta(outcome.target(a));
                for x in (0..asz).filter(|&x| proto.alpha(a).in_support(x)) {
                    for y in 0..bsz {
                        c[a * asz * bsz + x * bsz + y] = &half * to_rational(beta.get(y));
                    }
                }
            }
            alice_induction(shape, |a, x, y| c[a * asz * bsz + x * bsz + y].clone()).0
        }
    }
}

/// `½ + ½ Δ(β₀, β₁)`: what Alice can achieve by guessing `b` from the
/// revealed string, and an upper bound on her cheating in both models.
pub fn alice_info_bound(proto: &BccfProtocol) -> f64 {
    0.5 + 0.5 * trace_distance(proto.beta(0), proto.beta(1)).expect("same length")
}

/// `½ + ½ Δ` between the marginals of `α₀` and `α₁` on Alice's first message.
pub fn bob_firstmsg_bound(proto: &BccfProtocol) -> f64 {
    let m0 = proto.alpha_prefix(0, 1);
    let m1 = proto.alpha_prefix(1, 1);
    0.5 + 0.25 * m0.iter().zip(m1).map(|(p, q)| (p - q).abs()).sum::<f64>()
}

/// The four classical values and the party that cheats perfectly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalProfile {
    pub values: CheatValues,
    pub perfect_cheater: Party,
    pub bias: f64,
}

pub fn classical_values(proto: &BccfProtocol, exec: Execution) -> CheatValues {
    let v = exec.map(&ALL_PAIRS, |&(p, o)| classical_cheat(proto, p, o).value);
    CheatValues {
        alice: [v[0], v[1]],
        bob: [v[2], v[3]],
    }
}

/// All four classical values, checking that exactly one party can force
/// some outcome with certainty.
pub fn classical_security_profile(proto: &BccfProtocol) -> Result<ClassicalProfile> {
    classical_security_profile_with(proto, Execution::default())
}

pub fn classical_security_profile_with(
    proto: &BccfProtocol,
    exec: Execution,
) -> Result<ClassicalProfile> {
    let values = classical_values(proto, exec);
    let perfect = |v: &[f64; 2]| v.iter().any(|&p| p >= 1.0 - EPS_EQ);
    let perfect_cheater = match (perfect(&values.alice), perfect(&values.bob)) {
        (true, false) => Party::Alice,
        (false, true) => Party::Bob,
        (a, b) => {
            return Err(Error::TheoremViolation(format!(
                "expected exactly one perfect classical cheater (alice perfect: {a}, bob perfect: {b}, values {values:?})"
            )))
        }
    };
    Ok(ClassicalProfile {
        values,
        perfect_cheater,
        bias: values.bias(),
    })
}
