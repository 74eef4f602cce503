//! The protocol model: message dimensions, the four commitment
//! distributions, and the product-index conventions shared by every module.
//!
//! # Index conventions
//!
//! A message string `x = (x₁,…,xₙ) ∈ A₁×…×Aₙ` is flattened row-major with
//! `x₁` the most significant digit; likewise for `y ∈ B`. Arrays over a
//! history of interleaved messages `(x₁,y₁,…,xⱼ,yⱼ)` are stored with the
//! x-prefix as the major index and the y-prefix as the minor index:
//! `index = flat(x₁..xⱼ) · |B₁×…×Bⱼ| + flat(y₁..yⱼ)`. Arrays over `A₀×A×B`
//! (a bit followed by both strings) use `a · |A||B| + x · |B| + y`.

use serde::{Deserialize, Serialize};

use crate::dist::ProbDist;
use crate::error::{Error, Result};

/// The two parties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Party {
    Alice,
    Bob,
}

/// The coin outcome a cheater tries to force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Zero,
    One,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Zero, Outcome::One];

    pub fn bit(self) -> usize {
        match self {
            Outcome::Zero => 0,
            Outcome::One => 1,
        }
    }

    pub fn from_bit(bit: usize) -> Result<Self> {
        match bit {
            0 => Ok(Outcome::Zero),
            1 => Ok(Outcome::One),
            other => Err(Error::Domain(format!(
                "outcome must be 0 or 1, got {other}"
            ))),
        }
    }

    /// Index of Bob's distribution paired with Alice's bit `a`: `a` when
    /// forcing 0 and `ā` when forcing 1.
    pub fn target(self, a: usize) -> usize {
        match self {
            Outcome::Zero => a,
            Outcome::One => 1 - a,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Outcome::Zero => Outcome::One,
            Outcome::One => Outcome::Zero,
        }
    }
}

impl Serialize for Outcome {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.bit() as u8)
    }
}

impl<'de> Deserialize<'de> for Outcome {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let bit = u8::deserialize(d)?;
        Outcome::from_bit(bit as usize).map_err(serde::de::Error::custom)
    }
}

/// Message dimensions and derived product sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    alice_dims: Vec<usize>,
    bob_dims: Vec<usize>,
}

impl Shape {
    pub fn new(alice_dims: Vec<usize>, bob_dims: Vec<usize>) -> Result<Self> {
        if alice_dims.is_empty() {
            return Err(Error::Domain("at least one round is required".into()));
        }
        if alice_dims.len() != bob_dims.len() {
            return Err(Error::Dimension {
                context: "number of rounds (bob_dims)".into(),
                expected: alice_dims.len(),
                actual: bob_dims.len(),
            });
        }
        if alice_dims.iter().chain(&bob_dims).any(|&d| d == 0) {
            return Err(Error::Domain(
                "message dimensions must be at least 1".into(),
            ));
        }
        Ok(Self {
            alice_dims,
            bob_dims,
        })
    }

    pub fn rounds(&self) -> usize {
        self.alice_dims.len()
    }

    pub fn alice_dims(&self) -> &[usize] {
        &self.alice_dims
    }

    pub fn bob_dims(&self) -> &[usize] {
        &self.bob_dims
    }

    /// `|A₁×…×Aⱼ|`; `j = 0` gives 1.
    pub fn a_prefix(&self, j: usize) -> usize {
        self.alice_dims[..j].iter().product()
    }

    /// `|B₁×…×Bⱼ|`; `j = 0` gives 1.
    pub fn b_prefix(&self, j: usize) -> usize {
        self.bob_dims[..j].iter().product()
    }

    /// `|A|`.
    pub fn a_size(&self) -> usize {
        self.a_prefix(self.rounds())
    }

    /// `|B|`.
    pub fn b_size(&self) -> usize {
        self.b_prefix(self.rounds())
    }

    /// Length of Bob's level-`j` array over `(x₁..xⱼ ; y₁..yⱼ)`, `1 ≤ j ≤ n`.
    pub fn bob_level_len(&self, j: usize) -> usize {
        self.a_prefix(j) * self.b_prefix(j)
    }

    /// Length of Alice's level-`j` array over `(x₁..xⱼ ; y₁..yⱼ₋₁)`, `1 ≤ j ≤ n`.
    pub fn alice_level_len(&self, j: usize) -> usize {
        self.a_prefix(j) * self.b_prefix(j - 1)
    }

    /// Flatten digits row-major, most significant first.
    pub fn encode(dims: &[usize], digits: &[usize]) -> Result<usize> {
        if digits.len() > dims.len() {
            return Err(Error::IndexOutOfRange(format!(
                "{} digits for {} positions",
                digits.len(),
                dims.len()
            )));
        }
        let mut idx = 0;
        for (k, (&d, &dim)) in digits.iter().zip(dims).enumerate() {
            if d >= dim {
                return Err(Error::IndexOutOfRange(format!(
                    "digit {k} = {d} >= dimension {dim}"
                )));
            }
            idx = idx * dim + d;
        }
        Ok(idx)
    }

    /// Inverse of [`Shape::encode`] for a full-length index.
    pub fn decode(dims: &[usize], mut idx: usize) -> Vec<usize> {
        let mut digits = vec![0; dims.len()];
        for k in (0..dims.len()).rev() {
            digits[k] = idx % dims[k];
            idx /= dims[k];
        }
        digits
    }
}

/// A prefix of one party's committed message digits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialString {
    pub party: Party,
    pub digits: Vec<usize>,
}

impl PartialString {
    pub fn alice(digits: Vec<usize>) -> Self {
        Self {
            party: Party::Alice,
            digits,
        }
    }

    pub fn bob(digits: Vec<usize>) -> Self {
        Self {
            party: Party::Bob,
            digits,
        }
    }
}

/// On-disk representation of a protocol.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProtocolFile {
    pub alice_dims: Vec<usize>,
    pub bob_dims: Vec<usize>,
    pub alpha0: Vec<f64>,
    pub alpha1: Vec<f64>,
    pub beta0: Vec<f64>,
    pub beta1: Vec<f64>,
}

/// A coin-flipping protocol based on bit commitment.
///
/// Alice commits to `a` with `α_a` over `A`, Bob to `b` with `β_b` over `B`;
/// messages alternate `x₁, y₁, …, xₙ, yₙ` and the outcome is `a ⊕ b`.
#[derive(Debug, Clone, PartialEq)]
pub struct BccfProtocol {
    shape: Shape,
    alpha: [ProbDist; 2],
    beta: [ProbDist; 2],
    /// `x_marg[a][j]`: marginal of `α_a` on `A₁×…×Aⱼ`.
    x_marg: [Vec<Vec<f64>>; 2],
    y_marg: [Vec<Vec<f64>>; 2],
}

fn prefix_marginals(dist: &ProbDist, dims: &[usize]) -> Vec<Vec<f64>> {
    let n = dims.len();
    let mut out = vec![Vec::new(); n + 1];
    out[n] = dist.values().to_vec();
    for j in (0..n).rev() {
        let dim = dims[j];
        out[j] = out[j + 1].chunks(dim).map(|c| c.iter().sum()).collect();
    }
    out
}

impl BccfProtocol {
    pub fn new(
        alice_dims: Vec<usize>,
        bob_dims: Vec<usize>,
        alpha0: ProbDist,
        alpha1: ProbDist,
        beta0: ProbDist,
        beta1: ProbDist,
    ) -> Result<Self> {
        let shape = Shape::new(alice_dims, bob_dims)?;
        for (name, d, expected) in [
            ("alpha0", &alpha0, shape.a_size()),
            ("alpha1", &alpha1, shape.a_size()),
            ("beta0", &beta0, shape.b_size()),
            ("beta1", &beta1, shape.b_size()),
        ] {
            if d.len() != expected {
                return Err(Error::Dimension {
                    context: name.into(),
                    expected,
                    actual: d.len(),
                });
            }
        }
        let x_marg = [
            prefix_marginals(&alpha0, shape.alice_dims()),
            prefix_marginals(&alpha1, shape.alice_dims()),
        ];
        let y_marg = [
            prefix_marginals(&beta0, shape.bob_dims()),
            prefix_marginals(&beta1, shape.bob_dims()),
        ];
        Ok(Self {
            shape,
            alpha: [alpha0, alpha1],
            beta: [beta0, beta1],
            x_marg,
            y_marg,
        })
    }

    /// Build from raw vectors, checking dimensions before normalization so
    /// that a wrong-length array is reported as a dimension error.
    pub fn from_vecs(
        alice_dims: Vec<usize>,
        bob_dims: Vec<usize>,
        alpha0: Vec<f64>,
        alpha1: Vec<f64>,
        beta0: Vec<f64>,
        beta1: Vec<f64>,
    ) -> Result<Self> {
        let shape = Shape::new(alice_dims, bob_dims)?;
        for (name, v, expected) in [
            ("alpha0", &alpha0, shape.a_size()),
            ("alpha1", &alpha1, shape.a_size()),
            ("beta0", &beta0, shape.b_size()),
            ("beta1", &beta1, shape.b_size()),
        ] {
            if v.len() != expected {
                return Err(Error::Dimension {
                    context: name.into(),
                    expected,
                    actual: v.len(),
                });
            }
        }
        Self::new(
            shape.alice_dims,
            shape.bob_dims,
            ProbDist::named("alpha0", alpha0)?,
            ProbDist::named("alpha1", alpha1)?,
            ProbDist::named("beta0", beta0)?,
            ProbDist::named("beta1", beta1)?,
        )
    }

    pub fn from_file(file: ProtocolFile) -> Result<Self> {
        Self::from_vecs(
            file.alice_dims,
            file.bob_dims,
            file.alpha0,
            file.alpha1,
            file.beta0,
            file.beta1,
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ProtocolFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_file(file)
    }

    pub fn to_file(&self) -> ProtocolFile {
        ProtocolFile {
            alice_dims: self.shape.alice_dims().to_vec(),
            bob_dims: self.shape.bob_dims().to_vec(),
            alpha0: self.alpha[0].values().to_vec(),
            alpha1: self.alpha[1].values().to_vec(),
            beta0: self.beta[0].values().to_vec(),
            beta1: self.beta[1].values().to_vec(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("protocol serializes")
    }

    /// The four-round protocol with `α₀ = α₁ = [1,0]`, `β₀ = [½,½,0]`,
    /// `β₁ = [½,0,½]`; every cheating probability equals 3/4.
    pub fn three_quarters() -> Self {
        Self::from_vecs(
            vec![2],
            vec![3],
            vec![1.0, 0.0],
            vec![1.0, 0.0],
            vec![0.5, 0.5, 0.0],
            vec![0.5, 0.0, 0.5],
        )
        .expect("built-in protocol is valid")
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn rounds(&self) -> usize {
        self.shape.rounds()
    }

    pub fn alpha(&self, a: usize) -> &ProbDist {
        &self.alpha[a]
    }

    pub fn beta(&self, b: usize) -> &ProbDist {
        &self.beta[b]
    }

    /// The same protocol with Bob's two distributions exchanged.
    pub fn swapped_betas(&self) -> Self {
        Self::new(
            self.shape.alice_dims().to_vec(),
            self.shape.bob_dims().to_vec(),
            self.alpha[0].clone(),
            self.alpha[1].clone(),
            self.beta[1].clone(),
            self.beta[0].clone(),
        )
        .expect("swapping preserves validity")
    }

    /// Marginal of `α_a` over the first `j` messages, indexed by the x-prefix.
    pub fn alpha_prefix(&self, a: usize, j: usize) -> &[f64] {
        &self.x_marg[a][j]
    }

    pub fn beta_prefix(&self, b: usize, j: usize) -> &[f64] {
        &self.y_marg[b][j]
    }

    /// Honest probability that Alice's first `j` messages are `x_prefix`.
    pub fn x_prefix_prob(&self, j: usize, x_prefix: usize) -> f64 {
        0.5 * (self.x_marg[0][j][x_prefix] + self.x_marg[1][j][x_prefix])
    }

    /// Honest probability that Bob's first `j` messages are `y_prefix`.
    pub fn y_prefix_prob(&self, j: usize, y_prefix: usize) -> f64 {
        0.5 * (self.y_marg[0][j][y_prefix] + self.y_marg[1][j][y_prefix])
    }

    /// Probability that the given prefix is revealed in an honest run.
    pub fn honest_prefix_prob(&self, z: &PartialString) -> Result<f64> {
        let dims = match z.party {
            Party::Alice => self.shape.alice_dims(),
            Party::Bob => self.shape.bob_dims(),
        };
        let idx = Shape::encode(dims, &z.digits)?;
        let j = z.digits.len();
        Ok(match z.party {
            Party::Alice => self.x_prefix_prob(j, idx),
            Party::Bob => self.y_prefix_prob(j, idx),
        })
    }

    /// Outcome distribution `(P[0], P[1], P[abort])` when both parties are
    /// honest: the bits are uniform and independent and nobody aborts.
    pub fn honest_outcome_distribution(&self) -> (f64, f64, f64) {
        let mut p = [0.0; 2];
        for a in 0..2 {
            for b in 0..2 {
                p[a ^ b] += 0.25;
            }
        }
        (p[0], p[1], 0.0)
    }
}
