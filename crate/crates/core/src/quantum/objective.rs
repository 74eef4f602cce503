//! The reduced quantum objectives and their (super)gradients.
//!
//! Bob: `½ Σ_a F(qₐ, β_{t(a)})` with `q_{a,y} = Σ_x α_{a,x} pₙ[x,y]`.
//! Alice: `½ Σ_{a,y} β_{t(a),y} F(s^{(a,y)}, α_a)` where `s^{(a,y)}` is the
//! slice of `s` at fixed `(a, y)`.
//!
//! Both are positively homogeneous of degree one, so `⟨∇f(p), p⟩ = f(p)`.
//! Gradients floor marginals at [`GRAD_FLOOR`] before dividing.

use crate::error::{Error, Result};
use crate::protocol::{BccfProtocol, Outcome};
use crate::tol::{EPS_ZERO, GRAD_FLOOR};

fn check(context: &str, expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::Dimension {
            context: context.into(),
            expected,
            actual,
        });
    }
    Ok(())
}

/// `qₐ = (αₐ ⊗ I)ᵀ pₙ` for both `a`.
pub fn bob_marginals(proto: &BccfProtocol, pn: &[f64]) -> [Vec<f64>; 2] {
    let bsz = proto.shape().b_size();
    let mut q = [vec![0.0; bsz], vec![0.0; bsz]];
    for (a, qa) in q.iter_mut().enumerate() {
        for (x, row) in pn.chunks(bsz).enumerate() {
            let w = proto.alpha(a).get(x);
            if w == 0.0 {
                continue;
            }
            for (qy, p) in qa.iter_mut().zip(row) {
                *qy += w * p;
            }
        }
    }
    q
}

/// Bob's objective from the two marginals.
pub fn bob_value_from_marginals(proto: &BccfProtocol, outcome: Outcome, q: &[Vec<f64>; 2]) -> f64 {
    let mut total = 0.0;
    for (a, qa) in q.iter().enumerate() {
        let beta = proto.beta(outcome.target(a)).values();
        let root: f64 = qa
            .iter()
            .zip(beta)
            .map(|(q, b)| (q.max(0.0) * b).sqrt())
            .sum();
        total += root * root;
    }
    0.5 * total
}

/// `(√F̃ₐ √(β_{t(a),y} / q̃_{a,y}))` for both `a`, with `q̃ = max(q, floor)`.
///
/// These are exactly the dual multipliers `vₐ` built from a primal point.
pub fn bob_multipliers(proto: &BccfProtocol, outcome: Outcome, q: &[Vec<f64>; 2]) -> [Vec<f64>; 2] {
    let mut v = [Vec::new(), Vec::new()];
    for (a, qa) in q.iter().enumerate() {
        let beta = proto.beta(outcome.target(a)).values();
        let floored: Vec<f64> = qa.iter().map(|q| q.max(GRAD_FLOOR)).collect();
        let root: f64 = floored.iter().zip(beta).map(|(q, b)| (q * b).sqrt()).sum();
        v[a] = floored
            .iter()
            .zip(beta)
            .map(|(q, b)| root * (b / q).sqrt())
            .collect();
    }
    v
}

/// Bob's objective at `pₙ` (indexed by `(x, y)`) and its gradient.
pub fn bob_objective(
    proto: &BccfProtocol,
    outcome: Outcome,
    pn: &[f64],
) -> Result<(f64, Vec<f64>)> {
    let (asz, bsz) = (proto.shape().a_size(), proto.shape().b_size());
    check("Bob terminal variables", asz * bsz, pn.len())?;
    let q = bob_marginals(proto, pn);
    let value = bob_value_from_marginals(proto, outcome, &q);
    let v = bob_multipliers(proto, outcome, &q);
    let mut grad = vec![0.0; asz * bsz];
    for (a, va) in v.iter().enumerate() {
        let alpha = proto.alpha(a).values();
        for x in 0..asz {
            let w = 0.5 * alpha[x];
            if w == 0.0 {
                continue;
            }
            for y in 0..bsz {
                grad[x * bsz + y] += w * va[y];
            }
        }
    }
    Ok((value, grad))
}

/// Alice's objective value at `s` (indexed by `(a, x, y)`).
pub fn alice_value(proto: &BccfProtocol, outcome: Outcome, s: &[f64]) -> f64 {
    let (asz, bsz) = (proto.shape().a_size(), proto.shape().b_size());
    let mut total = 0.0;
    for a in 0..2 {
        let alpha = proto.alpha(a).values();
        let beta = proto.beta(outcome.target(a)).values();
        for (y, &b) in beta.iter().enumerate() {
            if b == 0.0 {
                continue;
            }
            let root: f64 = (0..asz)
                .map(|x| (s[a * asz * bsz + x * bsz + y].max(0.0) * alpha[x]).sqrt())
                .sum();
            total += b * root * root;
        }
    }
    0.5 * total
}

/// Alice's gradient; entry `(a,x,y)` is `½ β_{t(a),y} √F̃ √(α_{a,x} / s̃)`.
///
/// These entries are also the per-`a` dual candidates for `z_{n+1}`.
pub fn alice_gradient(proto: &BccfProtocol, outcome: Outcome, s: &[f64]) -> Vec<f64> {
    let (asz, bsz) = (proto.shape().a_size(), proto.shape().b_size());
    let mut grad = vec![0.0; 2 * asz * bsz];
    let mut floored = vec![0.0; asz];
    for a in 0..2 {
        let alpha = proto.alpha(a).values();
        let beta = proto.beta(outcome.target(a)).values();
        for (y, &b) in beta.iter().enumerate() {
            if b == 0.0 {
                continue;
            }
            for x in 0..asz {
                floored[x] = s[a * asz * bsz + x * bsz + y].max(GRAD_FLOOR);
            }
            let root: f64 = (0..asz).map(|x| (floored[x] * alpha[x]).sqrt()).sum();
            for x in 0..asz {
                grad[a * asz * bsz + x * bsz + y] = 0.5 * b * root * (alpha[x] / floored[x]).sqrt();
            }
        }
    }
    grad
}

pub fn alice_objective(
    proto: &BccfProtocol,
    outcome: Outcome,
    s: &[f64],
) -> Result<(f64, Vec<f64>)> {
    let (asz, bsz) = (proto.shape().a_size(), proto.shape().b_size());
    check("Alice terminal variables", 2 * asz * bsz, s.len())?;
    Ok((
        alice_value(proto, outcome, s),
        alice_gradient(proto, outcome, s),
    ))
}

/// Best split of one transcript column between revealing 0 and 1.
///
/// For masses `m` over `x` and weights `uₐ = ½ β_{t(a),y} αₐ`, returns the
/// maximizing `(μ, 1−μ)` of `A(μ) = Σ_x √(m_x (μ u₀ₓ + (1−μ) u₁ₓ))`. `A` is
/// concave. The optimum can sit extremely close to an endpoint, so the
/// search runs on the logit of `μ` to keep relative precision.
pub fn reveal_weight(u0: &[f64], u1: &[f64], m: &[f64]) -> (f64, f64) {
    // Derivatives of A with respect to μ at (μ, ν = 1−μ).
    let slope = |mu: f64, nu: f64| -> (f64, f64) {
        let (mut d1, mut d2) = (0.0, 0.0);
        for ((&a, &b), &mx) in u0.iter().zip(u1).zip(m) {
            let diff = a - b;
            if mx <= 0.0 || diff == 0.0 {
                continue;
            }
            let w = mu * a + nu * b;
            if w <= 0.0 {
                return (
                    if diff > 0.0 {
                        f64::INFINITY
                    } else {
                        f64::NEG_INFINITY
                    },
                    f64::NEG_INFINITY,
                );
            }
            d1 += 0.5 * mx.sqrt() * diff / w.sqrt();
            d2 -= 0.25 * mx.sqrt() * diff * diff / (w * w.sqrt());
        }
        (d1, d2)
    };
    if slope(1.0, 0.0).0 >= 0.0 {
        return (1.0, 0.0);
    }
    if slope(0.0, 1.0).0 <= 0.0 {
        return (0.0, 1.0);
    }
    let split = |l: f64| (1.0 / (1.0 + (-l).exp()), 1.0 / (1.0 + l.exp()));
    let (mut lo, mut hi, mut l) = (-740.0f64, 740.0f64, 0.0f64);
    for _ in 0..200 {
        let (mu, nu) = split(l);
        let (d1, d2) = slope(mu, nu);
        if d1 == 0.0 {
            break;
        }
        if d1 > 0.0 {
            lo = l;
        } else {
            hi = l;
        }
        let mut next = l - d1 / (d2 * mu * nu);
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let done = (next - l).abs() <= 1e-13 || hi - lo <= 1e-13;
        l = next;
        if done {
            break;
        }
    }
    split(l)
}

fn reveal_weights(proto: &BccfProtocol, outcome: Outcome, y: usize) -> [Vec<f64>; 2] {
    [0, 1].map(|a| {
        let b = 0.5 * proto.beta(outcome.target(a)).get(y);
        proto.alpha(a).values().iter().map(|al| b * al).collect()
    })
}

/// Terminal mass `m_{x,y} = s_{0,x,y} + s_{1,x,y}`.
pub fn reveal_mass(proto: &BccfProtocol, s: &[f64]) -> Vec<f64> {
    let n = proto.shape().a_size() * proto.shape().b_size();
    (0..n).map(|i| s[i] + s[n + i]).collect()
}

fn column(m: &[f64], bsz: usize, y: usize) -> Vec<f64> {
    m.iter().skip(y).step_by(bsz).copied().collect()
}

/// Alice's objective maximized over the revealed bit, as a function of the
/// terminal mass `m` over `(x, y)`.
pub fn alice_reveal_value(proto: &BccfProtocol, outcome: Outcome, m: &[f64]) -> f64 {
    let bsz = proto.shape().b_size();
    let mut total = 0.0;
    for y in 0..bsz {
        let [u0, u1] = reveal_weights(proto, outcome, y);
        let my: Vec<f64> = column(m, bsz, y).into_iter().map(|v| v.max(0.0)).collect();
        let (mu, nu) = reveal_weight(&u0, &u1, &my);
        let root: f64 = my
            .iter()
            .zip(u0.iter().zip(&u1))
            .map(|(mx, (a, b))| (mx * (mu * a + nu * b)).sqrt())
            .sum();
        total += root * root;
    }
    total
}

/// Supergradient of [`alice_reveal_value`] at `m`, which is also a feasible
/// `z_{n+1}` with `⟨z, m⟩` equal to the objective.
///
/// On transcripts that carry mass it is the unique such choice. Off the
/// mass it is not unique: coordinates tied to a binding constraint get the
/// floored (large) multiplier, and those tied only to slack constraints
/// share the leftover budget at one common level per column.
pub fn alice_reveal_gradient(proto: &BccfProtocol, outcome: Outcome, m: &[f64]) -> Vec<f64> {
    let (asz, bsz) = (proto.shape().a_size(), proto.shape().b_size());
    let mut z = vec![0.0; asz * bsz];
    for y in 0..bsz {
        let u = reveal_weights(proto, outcome, y);
        let my: Vec<f64> = column(m, bsz, y)
            .into_iter()
            .map(|v| if v > EPS_ZERO { v } else { 0.0 })
            .collect();
        let (mu, nu) = reveal_weight(&u[0], &u[1], &my);
        let w: Vec<f64> = u[0]
            .iter()
            .zip(&u[1])
            .map(|(a, b)| mu * a + nu * b)
            .collect();
        let root: f64 = my.iter().zip(&w).map(|(mx, wx)| (mx * wx).sqrt()).sum();
        let mut free = Vec::new();
        let mut col = vec![0.0; asz];
        for x in 0..asz {
            if root > 0.0 && w[x] > 0.0 {
                col[x] = root * (w[x] / my[x].max(GRAD_FLOOR)).sqrt();
            } else if u[0][x] > 0.0 || u[1][x] > 0.0 {
                free.push(x);
            }
        }
        if !free.is_empty() {
            let mut level: f64 = 0.0;
            for ua in &u {
                let need: f64 = free.iter().map(|&x| ua[x]).sum();
                if need == 0.0 {
                    continue;
                }
                let used: f64 = (0..asz)
                    .filter(|&x| col[x] > 0.0)
                    .map(|x| ua[x] / col[x])
                    .sum();
                level = level.max(need / (1.0 - used).max(f64::MIN_POSITIVE));
            }
            for &x in &free {
                col[x] = level;
            }
        }
        for x in 0..asz {
            z[x * bsz + y] = col[x];
        }
    }
    z
}

/// Split the terminal mass into the optimal `s` over `(a, x, y)`.
pub fn alice_reveal_split(proto: &BccfProtocol, outcome: Outcome, m: &[f64]) -> Vec<f64> {
    let (asz, bsz) = (proto.shape().a_size(), proto.shape().b_size());
    let mut s = vec![0.0; 2 * asz * bsz];
    for y in 0..bsz {
        let [u0, u1] = reveal_weights(proto, outcome, y);
        let my: Vec<f64> = column(m, bsz, y).into_iter().map(|v| v.max(0.0)).collect();
        let (mu, nu) = reveal_weight(&u0, &u1, &my);
        for x in 0..asz {
            let (w0, w1) = (mu * u0[x], nu * u1[x]);
            let share0 = if w0 + w1 > 0.0 { w0 / (w0 + w1) } else { 1.0 };
            s[x * bsz + y] = my[x] * share0;
            s[asz * bsz + x * bsz + y] = my[x] * (1.0 - share0);
        }
    }
    s
}
