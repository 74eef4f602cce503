//! Oracles shared by the integration tests. None of them go through the
//! library's coefficient, polytope or solver code.

#![allow(dead_code)]

use std::ops::Add;

use bccf::{BccfProtocol, Outcome, Party, Shape};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Zero};

pub fn proto(
    a: &[usize],
    b: &[usize],
    a0: &[f64],
    a1: &[f64],
    b0: &[f64],
    b1: &[f64],
) -> BccfProtocol {
    BccfProtocol::from_vecs(
        a.to_vec(),
        b.to_vec(),
        a0.to_vec(),
        a1.to_vec(),
        b0.to_vec(),
        b1.to_vec(),
    )
    .unwrap()
}

/// Outcome `c` needs Bob's bit `a ⊕ c`.
fn bit_for(outcome: Outcome, a: usize) -> usize {
    a ^ outcome.bit()
}

fn max_of<T: PartialOrd>(it: impl Iterator<Item = T>) -> T {
    it.reduce(|m, v| if v > m { v } else { m })
        .expect("non-empty")
}

/// Game-tree search over explicit message histories: Alice speaks first in
/// every round, chance nodes sum and the cheater's nodes maximize. Leaf
/// weights already carry the honest party's probabilities.
fn search<T, F>(
    shape: &Shape,
    party: Party,
    leaf: &F,
    xs: &mut Vec<usize>,
    ys: &mut Vec<usize>,
) -> T
where
    T: Clone + PartialOrd + Zero + Add<Output = T>,
    F: Fn(usize, usize) -> T,
{
    let j = xs.len();
    if j == shape.rounds() && ys.len() == j {
        let x = Shape::encode(shape.alice_dims(), xs).unwrap();
        let y = Shape::encode(shape.bob_dims(), ys).unwrap();
        return leaf(x, y);
    }
    let (ad, bd) = (shape.alice_dims()[j], shape.bob_dims()[j]);
    let mut child = |xj: usize, yj: usize| {
        xs.push(xj);
        ys.push(yj);
        let v = search(shape, party, leaf, xs, ys);
        xs.pop();
        ys.pop();
        v
    };
    match party {
        Party::Bob => (0..ad).fold(T::zero(), |acc, xj| {
            acc + max_of((0..bd).map(|yj| child(xj, yj)))
        }),
        Party::Alice => {
            max_of((0..ad).map(|xj| (0..bd).fold(T::zero(), |acc, yj| acc + child(xj, yj))))
        }
    }
}

/// Classical cheating probability by exhaustive game-tree search.
pub fn classical_minimax(p: &BccfProtocol, party: Party, outcome: Outcome) -> f64 {
    let leaf = |x: usize, y: usize| -> f64 {
        match party {
            Party::Bob => (0..2)
                .filter(|&a| p.beta(bit_for(outcome, a)).get(y) > 0.0)
                .map(|a| 0.5 * p.alpha(a).get(x))
                .sum(),
            Party::Alice => (0..2)
                .filter(|&a| p.alpha(a).get(x) > 0.0)
                .map(|a| 0.5 * p.beta(bit_for(outcome, a)).get(y))
                .fold(0.0, f64::max),
        }
    };
    search(p.shape(), party, &leaf, &mut Vec::new(), &mut Vec::new())
}

/// [`classical_minimax`] in exact rationals.
pub fn classical_minimax_exact(p: &BccfProtocol, party: Party, outcome: Outcome) -> BigRational {
    let q = |v: f64| BigRational::from_f64(v).unwrap();
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let leaf = |x: usize, y: usize| -> BigRational {
        let terms = (0..2).map(|a| {
            let (mine, theirs) = match party {
                Party::Bob => (p.beta(bit_for(outcome, a)).get(y), p.alpha(a).get(x)),
                Party::Alice => (p.alpha(a).get(x), p.beta(bit_for(outcome, a)).get(y)),
            };
            if mine > 0.0 {
                &half * q(theirs)
            } else {
                BigRational::zero()
            }
        });
        match party {
            Party::Bob => terms.fold(BigRational::zero(), |s, t| s + t),
            Party::Alice => max_of(terms),
        }
    };
    search(p.shape(), party, &leaf, &mut Vec::new(), &mut Vec::new())
}

pub fn fidelity(p: &[f64], q: &[f64]) -> f64 {
    let r: f64 = p.iter().zip(q).map(|(a, b)| (a.max(0.0) * b).sqrt()).sum();
    r * r
}

/// Maximize `f` over `[0,1]^d` on a grid, then on finer grids around the
/// incumbent.
pub fn grid_max(d: usize, f: &dyn Fn(&[f64]) -> f64) -> f64 {
    let (mut lo, mut hi) = (vec![0.0; d], vec![1.0; d]);
    let mut best = f64::NEG_INFINITY;
    let mut arg = vec![0.0; d];
    for round in 0..5 {
        let k = if round == 0 { 40 } else { 20 };
        let mut idx = vec![0usize; d];
        let mut x = vec![0.0; d];
        loop {
            for i in 0..d {
                x[i] = lo[i] + (hi[i] - lo[i]) * idx[i] as f64 / k as f64;
            }
            let v = f(&x);
            if v > best {
                best = v;
                arg.clone_from(&x);
            }
            let mut i = 0;
            while i < d {
                idx[i] += 1;
                if idx[i] <= k {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == d {
                break;
            }
        }
        for i in 0..d {
            let h = 2.0 * (hi[i] - lo[i]) / k as f64;
            lo[i] = (arg[i] - h).max(0.0);
            hi[i] = (arg[i] + h).min(1.0);
        }
    }
    best
}

/// Quantum cheating probability of a one-round 2×2 protocol by grid search
/// over the strategy parameters.
pub fn quantum_grid_2x2(p: &BccfProtocol, party: Party, outcome: Outcome) -> f64 {
    assert_eq!(p.shape().alice_dims(), &[2]);
    assert_eq!(p.shape().bob_dims(), &[2]);
    let alpha = |a: usize| p.alpha(a).values().to_vec();
    let beta = |a: usize| p.beta(bit_for(outcome, a)).values().to_vec();
    match party {
        // Bob replies y = 0 to message x with probability t[x].
        Party::Bob => grid_max(2, &|t| {
            (0..2)
                .map(|a| {
                    let al = alpha(a);
                    let q0 = al[0] * t[0] + al[1] * t[1];
                    0.5 * fidelity(&[q0, 1.0 - q0], &beta(a))
                })
                .sum()
        }),
        // Alice sends x = 0 with probability u and, seeing y, reveals a = 0
        // on a fraction r[x] of her mass at x.
        Party::Alice => grid_max(1, &|u| {
            let m = [u[0], 1.0 - u[0]];
            (0..2)
                .map(|y| {
                    grid_max(2, &|r| {
                        (0..2)
                            .map(|a| {
                                let share = |x: usize| if a == 0 { r[x] } else { 1.0 - r[x] };
                                let s = [m[0] * share(0), m[1] * share(1)];
                                0.5 * beta(a)[y] * fidelity(&s, &alpha(a))
                            })
                            .sum()
                    })
                })
                .sum()
        }),
    }
}
