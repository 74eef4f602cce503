//! Seeded random protocols for property tests, benches and the CLI.

use rand::Rng;

use crate::dist::ProbDist;
use crate::protocol::{BccfProtocol, Shape};

/// A random distribution of length `len`; each entry is zeroed with
/// probability `zero_prob`, but at least one entry stays positive.
pub fn random_dist<R: Rng + ?Sized>(rng: &mut R, len: usize, zero_prob: f64) -> ProbDist {
    let mut v: Vec<f64> = (0..len)
        .map(|_| {
            if rng.gen_bool(zero_prob) {
                0.0
            } else {
                rng.gen_range(0.05..1.0)
            }
        })
        .collect();
    if v.iter().all(|&x| x == 0.0) {
        v[rng.gen_range(0..len)] = 1.0;
    }
    let s: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= s);
    ProbDist::new(v).expect("normalized by construction")
}

/// Random dimensions with `1 ≤ n ≤ max_rounds` and every dim in `1..=max_dim`.
pub fn random_shape<R: Rng + ?Sized>(rng: &mut R, max_rounds: usize, max_dim: usize) -> Shape {
    let n = rng.gen_range(1..=max_rounds);
    let a = (0..n).map(|_| rng.gen_range(1..=max_dim)).collect();
    let b = (0..n).map(|_| rng.gen_range(1..=max_dim)).collect();
    Shape::new(a, b).expect("positive dims")
}

pub fn random_protocol_with_shape<R: Rng + ?Sized>(
    rng: &mut R,
    shape: &Shape,
    zero_prob: f64,
) -> BccfProtocol {
    let (asz, bsz) = (shape.a_size(), shape.b_size());
    BccfProtocol::new(
        shape.alice_dims().to_vec(),
        shape.bob_dims().to_vec(),
        random_dist(rng, asz, zero_prob),
        random_dist(rng, asz, zero_prob),
        random_dist(rng, bsz, zero_prob),
        random_dist(rng, bsz, zero_prob),
    )
    .expect("consistent dimensions")
}

pub fn random_protocol<R: Rng + ?Sized>(
    rng: &mut R,
    max_rounds: usize,
    max_dim: usize,
    zero_prob: f64,
) -> BccfProtocol {
    let shape = random_shape(rng, max_rounds, max_dim);
    random_protocol_with_shape(rng, &shape, zero_prob)
}
