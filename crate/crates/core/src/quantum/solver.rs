//! Frank–Wolfe over the cheating polytopes.
//!
//! The iterate is a convex combination of polytope points (the barycenter
//! plus deterministic vertices), kept as an explicit active set so that
//! away steps and pairwise corrections can shift weight off bad vertices.
//! Steps use golden-section search polished by slope bisection.
//!
//! Both objectives are homogeneous, so the gradient at any feasible point
//! is a feasible dual; the best bound seen is kept. If the plain iteration
//! stalls at a kink on the boundary, it continues on the polytope shrunk
//! toward its barycenter, where the objective is smooth, with shrinking
//! factors decreasing toward zero.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::polytope::{lmo_alice, lmo_bob, AliceCheatVars, BobCheatVars, CheatVars};
use crate::protocol::{BccfProtocol, Outcome, Party, Shape};
use crate::quantum::dual::{dual_from_primal, eval_dual, DualCertificate};
use crate::quantum::objective::{
    alice_reveal_gradient, alice_reveal_split, alice_reveal_value, alice_value, bob_marginals,
    bob_objective, bob_value_from_marginals, reveal_mass,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub max_iter: usize,
    pub gap_tol: f64,
    /// When set, start from a seeded random mix of vertices and the
    /// barycenter instead of the barycenter alone.
    pub seed: Option<u64>,
    /// Away steps; plain Frank–Wolfe stalls at `O(1/t)` and rarely reaches
    /// the default tolerance within the iteration budget.
    pub away_step: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            max_iter: 5000,
            gap_tol: 1e-6,
            seed: None,
            away_step: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumSolution {
    pub party: Party,
    pub outcome: Outcome,
    pub primal_value: f64,
    pub dual_value: f64,
    /// `dual_value - primal_value`.
    pub gap: f64,
    pub iterations: usize,
    pub converged: bool,
    pub primal: CheatVars,
    pub dual: DualCertificate,
}

/// Serializable summary of a solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumReport {
    pub party: Party,
    pub outcome: Outcome,
    pub primal_value: f64,
    pub dual_value: f64,
    pub gap: f64,
    pub iterations: usize,
    pub converged: bool,
    pub dual_certificate: DualCertificate,
}

impl QuantumSolution {
    pub fn report(&self) -> QuantumReport {
        QuantumReport {
            party: self.party,
            outcome: self.outcome,
            primal_value: self.primal_value,
            dual_value: self.dual_value,
            gap: self.gap,
            iterations: self.iterations,
            converged: self.converged,
            dual_certificate: self.dual.clone(),
        }
    }
}

/// One party's problem seen through its flattened chain of variables; only
/// the trailing `terminal_len` entries enter the objective.
trait Problem {
    fn terminal_len(&self) -> usize;
    fn value(&self, terminal: &[f64]) -> f64;
    fn gradient(&self, terminal: &[f64]) -> Vec<f64>;
    /// Linear maximizer of `c` over the terminal block: value and flat vertex.
    fn lmo(&self, c: &[f64]) -> Result<(f64, Vec<f64>)>;
    /// `t ↦ value(x + t·d)`; may precompute.
    fn line<'a>(&'a self, x: &[f64], d: &[f64]) -> Box<dyn Fn(f64) -> f64 + 'a>;
    fn barycenter(&self) -> Vec<f64>;
    /// Interior points tried when no vertex direction ascends.
    fn spread_points(&self) -> Vec<Vec<f64>>;
    fn unflatten(&self, flat: &[f64]) -> CheatVars;
}

struct BobProblem<'a> {
    proto: &'a BccfProtocol,
    outcome: Outcome,
}

fn flatten_bob(v: &BobCheatVars) -> Vec<f64> {
    v.levels.concat()
}

fn flatten_alice(v: &AliceCheatVars) -> Vec<f64> {
    let mut out = v.levels.concat();
    out.extend_from_slice(&v.terminal);
    out
}

fn split_levels(flat: &[f64], lens: impl Iterator<Item = usize>) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let mut at = 0;
    for len in lens {
        out.push(flat[at..at + len].to_vec());
        at += len;
    }
    out
}

impl Problem for BobProblem<'_> {
    fn terminal_len(&self) -> usize {
        self.proto.shape().a_size() * self.proto.shape().b_size()
    }

    fn value(&self, terminal: &[f64]) -> f64 {
        bob_value_from_marginals(
            self.proto,
            self.outcome,
            &bob_marginals(self.proto, terminal),
        )
    }

    fn gradient(&self, terminal: &[f64]) -> Vec<f64> {
        bob_objective(self.proto, self.outcome, terminal)
            .expect("terminal length")
            .1
    }

    fn lmo(&self, c: &[f64]) -> Result<(f64, Vec<f64>)> {
        let r = lmo_bob(self.proto.shape(), c)?;
        Ok((r.value, flatten_bob(&r.vertex)))
    }

    fn line<'a>(&'a self, x: &[f64], d: &[f64]) -> Box<dyn Fn(f64) -> f64 + 'a> {
        let t = x.len() - self.terminal_len();
        let qx = bob_marginals(self.proto, &x[t..]);
        let qd = bob_marginals(self.proto, &d[t..]);
        Box::new(move |step| {
            let q = [0, 1].map(|a| {
                qx[a]
                    .iter()
                    .zip(&qd[a])
                    .map(|(u, v)| u + step * v)
                    .collect::<Vec<_>>()
            });
            bob_value_from_marginals(self.proto, self.outcome, &q)
        })
    }

    fn barycenter(&self) -> Vec<f64> {
        flatten_bob(&BobCheatVars::barycenter(self.proto.shape()))
    }

    fn spread_points(&self) -> Vec<Vec<f64>> {
        let mut pts = vec![self.barycenter()];
        pts.extend((0..2).map(|b| flatten_bob(&BobCheatVars::honest(self.proto, b))));
        pts
    }

    fn unflatten(&self, flat: &[f64]) -> CheatVars {
        let shape = self.proto.shape();
        let levels = split_levels(flat, (1..=shape.rounds()).map(|j| shape.bob_level_len(j)));
        CheatVars::Bob(BobCheatVars { levels })
    }
}

struct AliceProblem<'a> {
    proto: &'a BccfProtocol,
    outcome: Outcome,
}

/// Alice's objective depends on her terminal variables only through the
/// mass reaching each transcript; the split between revealed bits is
/// optimized in closed form, which removes the kinks at unused bits.
impl Problem for AliceProblem<'_> {
    fn terminal_len(&self) -> usize {
        2 * self.proto.shape().a_size() * self.proto.shape().b_size()
    }

    fn value(&self, terminal: &[f64]) -> f64 {
        alice_reveal_value(self.proto, self.outcome, &reveal_mass(self.proto, terminal))
    }

    fn gradient(&self, terminal: &[f64]) -> Vec<f64> {
        let z = alice_reveal_gradient(self.proto, self.outcome, &reveal_mass(self.proto, terminal));
        [z.clone(), z].concat()
    }

    fn lmo(&self, c: &[f64]) -> Result<(f64, Vec<f64>)> {
        let r = lmo_alice(self.proto.shape(), c)?;
        Ok((r.value, flatten_alice(&r.vertex)))
    }

    fn line<'a>(&'a self, x: &[f64], d: &[f64]) -> Box<dyn Fn(f64) -> f64 + 'a> {
        let t = x.len() - self.terminal_len();
        let mx = reveal_mass(self.proto, &x[t..]);
        let md = reveal_mass(self.proto, &d[t..]);
        Box::new(move |step| {
            let m: Vec<f64> = mx.iter().zip(&md).map(|(u, v)| u + step * v).collect();
            alice_reveal_value(self.proto, self.outcome, &m)
        })
    }

    fn barycenter(&self) -> Vec<f64> {
        flatten_alice(&AliceCheatVars::barycenter(self.proto.shape()))
    }

    fn spread_points(&self) -> Vec<Vec<f64>> {
        let mut pts = vec![self.barycenter()];
        pts.extend((0..2).map(|a| flatten_alice(&AliceCheatVars::honest(self.proto, a))));
        pts
    }

    fn unflatten(&self, flat: &[f64]) -> CheatVars {
        let shape: &Shape = self.proto.shape();
        let n = shape.rounds();
        let mut levels = split_levels(
            flat,
            (1..=n)
                .map(|j| shape.alice_level_len(j))
                .chain([self.terminal_len()]),
        );
        let mass = reveal_mass(self.proto, &levels.pop().expect("terminal block"));
        let terminal = alice_reveal_split(self.proto, self.outcome, &mass);
        CheatVars::Alice(AliceCheatVars { levels, terminal })
    }
}

const GOLDEN_ITERS: usize = 64;

/// Maximize a concave `phi` on `[0, hi]`.
fn golden_section(phi: &dyn Fn(f64) -> f64, hi: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (0.0, hi);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (phi(c), phi(d));
    for _ in 0..GOLDEN_ITERS {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = phi(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = phi(d);
        }
    }
    let mid = 0.5 * (a + b);
    // Endpoints matter: a full or drop step often sits exactly at `hi`.
    [(0.0, phi(0.0)), (mid, phi(mid)), (hi, phi(hi))]
        .into_iter()
        .fold((0.0, f64::NEG_INFINITY), |best, cand| {
            if cand.1 > best.1 {
                cand
            } else {
                best
            }
        })
        .0
}

const SLOPE_ITERS: usize = 64;

/// Golden-section search, then bisection on the sign of the slope.
///
/// Near a smooth maximum the objective is flat to rounding well before the
/// step is, and any error in the step shows up linearly in the dual.
fn line_search(problem: &dyn Problem, x: &[f64], d: &[f64], hi: f64) -> f64 {
    let phi = problem.line(x, d);
    let gamma = golden_section(&*phi, hi);
    let t0 = x.len() - problem.terminal_len();
    let slope = |s: f64| {
        let p: Vec<f64> = x[t0..]
            .iter()
            .zip(&d[t0..])
            .map(|(a, b)| a + s * b)
            .collect();
        dot(&problem.gradient(&p), &d[t0..])
    };
    let s = slope(gamma);
    if !s.is_finite() || s == 0.0 {
        return gamma;
    }
    let (mut lo, mut up) = (gamma, gamma);
    let mut w = 1e-9 * hi;
    loop {
        let probe = if s > 0.0 {
            (gamma + w).min(hi)
        } else {
            (gamma - w).max(0.0)
        };
        let sp = slope(probe);
        if !sp.is_finite() {
            return gamma;
        }
        if (s > 0.0) == (sp > 0.0) {
            if probe == hi || probe == 0.0 {
                return if phi(probe) >= phi(gamma) {
                    probe
                } else {
                    gamma
                };
            }
            w *= 4.0;
            continue;
        }
        if s > 0.0 {
            up = probe;
        } else {
            lo = probe;
        }
        break;
    }
    for _ in 0..SLOPE_ITERS {
        let mid = 0.5 * (lo + up);
        if mid <= lo || mid >= up {
            break;
        }
        if slope(mid) > 0.0 {
            lo = mid;
        } else {
            up = mid;
        }
    }
    let c = 0.5 * (lo + up);
    if phi(c) >= phi(gamma) {
        c
    } else {
        gamma
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Atom {
    point: Vec<f64>,
    weight: f64,
}

fn initial_atoms(problem: &dyn Problem, seed: Option<u64>) -> Result<Vec<Atom>> {
    let bary = problem.barycenter();
    let Some(seed) = seed else {
        return Ok(vec![Atom {
            point: bary,
            weight: 1.0,
        }]);
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut atoms = vec![Atom {
        point: bary,
        weight: rng.gen_range(0.2..1.0),
    }];
    for _ in 0..4 {
        let c: Vec<f64> = (0..problem.terminal_len())
            .map(|_| rng.gen_range(-1.0..1.0))
            .collect();
        let (_, v) = problem.lmo(&c)?;
        if atoms.iter().all(|a| a.point != v) {
            atoms.push(Atom {
                point: v,
                weight: rng.gen_range(0.2..1.0),
            });
        }
    }
    let total: f64 = atoms.iter().map(|a| a.weight).sum();
    atoms.iter_mut().for_each(|a| a.weight /= total);
    Ok(atoms)
}

fn combine(atoms: &[Atom], len: usize) -> Vec<f64> {
    let mut x = vec![0.0; len];
    for a in atoms {
        for (xi, pi) in x.iter_mut().zip(&a.point) {
            *xi += a.weight * pi;
        }
    }
    x
}

/// Best primal point and best dual candidate seen so far.
///
/// The objective is homogeneous, so its gradient at any point of the
/// polytope is a feasible dual whose bound is the linear maximum of that
/// gradient. `dual_at` is where that gradient was taken.
struct Best {
    primal: f64,
    primal_at: Vec<f64>,
    dual: f64,
    dual_at: Vec<f64>,
}

impl Best {
    fn gap(&self) -> f64 {
        self.dual - self.primal
    }
}

enum Stop {
    Converged,
    Stalled,
    Budget,
}

/// Frank–Wolfe on the polytope shrunk toward its barycenter `bary`, i.e. on
/// `x ↦ f((1−ε)x + ε·bary)`. With `ε > 0` every transcript carries mass and
/// the objective is smooth; the shrunk points are themselves feasible.
fn frank_wolfe(
    problem: &dyn Problem,
    opts: &SolveOptions,
    eps: f64,
    bary: &[f64],
    atoms: &mut Vec<Atom>,
    budget: usize,
    best: &mut Best,
) -> Result<(Stop, usize)> {
    let len = atoms[0].point.len();
    let t0 = len - problem.terminal_len();
    let shrink = |x: &[f64]| -> Vec<f64> {
        if eps == 0.0 {
            x.to_vec()
        } else {
            x.iter()
                .zip(bary)
                .map(|(a, b)| (1.0 - eps) * a + eps * b)
                .collect()
        }
    };
    let mut x = combine(atoms, len);
    let mut iterations = 0;
    loop {
        let y = shrink(&x);
        let value = problem.value(&y[t0..]);
        if value > best.primal {
            best.primal = value;
            best.primal_at.clone_from(&y);
        }
        let g = problem.gradient(&y[t0..]);
        let (lmo_val, vertex) = problem.lmo(&g)?;
        if lmo_val < best.dual {
            best.dual = lmo_val;
            best.dual_at = y.clone();
        }
        if best.gap() <= opts.gap_tol {
            return Ok((Stop::Converged, iterations));
        }
        let gx = dot(&g, &x[t0..]);
        let fw_gap = lmo_val - gx;
        if fw_gap <= opts.gap_tol * 1e-3 {
            return Ok((Stop::Stalled, iterations));
        }
        if iterations >= budget {
            return Ok((Stop::Budget, iterations));
        }
        iterations += 1;

        let away = if opts.away_step && atoms.len() > 1 {
            atoms
                .iter()
                .enumerate()
                .map(|(i, a)| (i, dot(&g, &a.point[t0..])))
                .min_by(|a, b| a.1.total_cmp(&b.1))
        } else {
            None
        };
        let use_away = matches!(away, Some((_, val)) if gx - val > fw_gap);
        // Steps are searched in the shrunk coordinates.
        let search = |d: &[f64], hi: f64| {
            let scaled: Vec<f64> = d.iter().map(|v| (1.0 - eps) * v).collect();
            line_search(problem, &y, &scaled, hi)
        };

        let mut stepped = false;
        if use_away {
            let (idx, _) = away.expect("checked");
            let w = atoms[idx].weight;
            let gmax = w / (1.0 - w);
            let d: Vec<f64> = x
                .iter()
                .zip(&atoms[idx].point)
                .map(|(a, b)| a - b)
                .collect();
            let gamma = search(&d, gmax);
            if gamma > 0.0 {
                for a in atoms.iter_mut() {
                    a.weight *= 1.0 + gamma;
                }
                atoms[idx].weight -= gamma;
                if gamma >= gmax || atoms[idx].weight <= 1e-15 {
                    atoms.swap_remove(idx);
                }
                stepped = true;
            }
        }
        if !stepped {
            let d: Vec<f64> = vertex.iter().zip(&x).map(|(a, b)| a - b).collect();
            let gamma = search(&d, 1.0);
            if gamma >= 1.0 {
                *atoms = vec![Atom {
                    point: vertex,
                    weight: 1.0,
                }];
            } else if gamma > 0.0 {
                for a in atoms.iter_mut() {
                    a.weight *= 1.0 - gamma;
                }
                match atoms.iter_mut().find(|a| a.point == vertex) {
                    Some(a) => a.weight += gamma,
                    None => atoms.push(Atom {
                        point: vertex,
                        weight: gamma,
                    }),
                }
            } else {
                // At a kink every vertex direction can descend while a spread
                // one ascends.
                let here = problem.value(&y[t0..]);
                let best_spread = problem
                    .spread_points()
                    .into_iter()
                    .map(|p| {
                        let d: Vec<f64> = p.iter().zip(&x).map(|(a, b)| a - b).collect();
                        let gamma = search(&d, 1.0);
                        let scaled: Vec<f64> = d.iter().map(|v| (1.0 - eps) * v).collect();
                        let v = problem.line(&y, &scaled)(gamma);
                        (v, gamma, p)
                    })
                    .filter(|(v, gamma, _)| *gamma > 0.0 && *v > here)
                    .max_by(|a, b| a.0.total_cmp(&b.0));
                let Some((_, gamma, point)) = best_spread else {
                    return Ok((Stop::Stalled, iterations));
                };
                for a in atoms.iter_mut() {
                    a.weight *= 1.0 - gamma;
                }
                atoms.push(Atom {
                    point,
                    weight: gamma,
                });
            }
        }
        atoms.retain(|a| a.weight > 0.0);
        let total: f64 = atoms.iter().map(|a| a.weight).sum();
        atoms.iter_mut().for_each(|a| a.weight /= total);
        x = combine(atoms, len);
        for _ in 0..atoms.len().min(INNER_STEPS) {
            if !pairwise_inner(problem, eps, &shrink, atoms, &mut x, t0) {
                break;
            }
        }
    }
}

const INNER_STEPS: usize = 8;

/// Shift weight from the worst to the best atom of the active set.
fn pairwise_inner(
    problem: &dyn Problem,
    eps: f64,
    shrink: &dyn Fn(&[f64]) -> Vec<f64>,
    atoms: &mut Vec<Atom>,
    x: &mut Vec<f64>,
    t0: usize,
) -> bool {
    if atoms.len() < 2 {
        return false;
    }
    let y = shrink(x);
    let g = problem.gradient(&y[t0..]);
    let scores: Vec<f64> = atoms.iter().map(|a| dot(&g, &a.point[t0..])).collect();
    let hi = (0..atoms.len())
        .max_by(|&i, &j| scores[i].total_cmp(&scores[j]))
        .expect("nonempty");
    let lo = (0..atoms.len())
        .min_by(|&i, &j| scores[i].total_cmp(&scores[j]))
        .expect("nonempty");
    if scores[hi] - scores[lo] <= 1e-15 * scores[hi].abs().max(1.0) {
        return false;
    }
    let gmax = atoms[lo].weight;
    let d: Vec<f64> = atoms[hi]
        .point
        .iter()
        .zip(&atoms[lo].point)
        .map(|(a, b)| (1.0 - eps) * (a - b))
        .collect();
    let gamma = line_search(problem, &y, &d, gmax);
    if gamma <= 0.0 {
        return false;
    }
    atoms[hi].weight += gamma;
    atoms[lo].weight -= gamma;
    if gamma >= gmax || atoms[lo].weight <= 1e-15 {
        atoms.swap_remove(lo);
    }
    let len = x.len();
    *x = combine(atoms, len);
    true
}

/// Shrink factors tried, in order, once the plain iteration stops short.
const SMOOTHING: [f64; 6] = [1e-2, 1e-3, 1e-4, 1e-6, 1e-8, 1e-10];

fn solve(problem: &dyn Problem, opts: &SolveOptions) -> Result<(Best, usize)> {
    let mut atoms = initial_atoms(problem, opts.seed)?;
    let bary = problem.barycenter();
    let mut best = Best {
        primal: f64::NEG_INFINITY,
        primal_at: bary.clone(),
        dual: f64::INFINITY,
        dual_at: bary.clone(),
    };
    let mut used = 0;
    let (stop, n) = frank_wolfe(
        problem,
        opts,
        0.0,
        &bary,
        &mut atoms,
        opts.max_iter / 2,
        &mut best,
    )?;
    used += n;
    if matches!(stop, Stop::Converged) {
        return Ok((best, used));
    }
    for (i, &eps) in SMOOTHING.iter().enumerate() {
        let share = (opts.max_iter - used) / (SMOOTHING.len() - i);
        let (stop, n) = frank_wolfe(problem, opts, eps, &bary, &mut atoms, share, &mut best)?;
        used += n;
        if matches!(stop, Stop::Converged) {
            return Ok((best, used));
        }
    }
    Ok((best, used))
}

/// Optimal quantum cheating probability of `party` forcing `outcome`, with
/// a primal point and a dual certificate.
///
/// Running out of iterations is not an error: the best iterate is returned
/// with `converged == false` and the honest gap.
pub fn solve_quantum(
    proto: &BccfProtocol,
    party: Party,
    outcome: Outcome,
    opts: &SolveOptions,
) -> Result<QuantumSolution> {
    let bob = BobProblem { proto, outcome };
    let alice = AliceProblem { proto, outcome };
    let problem: &dyn Problem = match party {
        Party::Bob => &bob,
        Party::Alice => &alice,
    };
    let (best, iterations) = solve(problem, opts)?;
    let primal = problem.unflatten(&best.primal_at);
    let primal_value = match &primal {
        CheatVars::Bob(p) => bob_objective(proto, outcome, p.terminal())?.0,
        CheatVars::Alice(s) => alice_value(proto, outcome, &s.terminal),
    };
    let dual = dual_from_primal(proto, party, outcome, &problem.unflatten(&best.dual_at))?;
    let dual_value = eval_dual(proto, &dual)?;
    let gap = dual_value - primal_value;
    Ok(QuantumSolution {
        party,
        outcome,
        primal_value,
        dual_value,
        gap,
        iterations,
        converged: gap <= opts.gap_tol && gap >= -1e-9,
        primal,
        dual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::membership;

    #[test]
    fn golden_section_finds_interior_and_endpoint_maxima() {
        let t = golden_section(&|t| -(t - 0.3) * (t - 0.3), 1.0);
        assert!((t - 0.3).abs() < 1e-9);
        assert_eq!(golden_section(&|t| t, 2.0), 2.0);
        assert_eq!(golden_section(&|t| -t, 2.0), 0.0);
    }

    #[test]
    fn three_quarters_all_pairs() {
        let p = BccfProtocol::three_quarters();
        for party in [Party::Alice, Party::Bob] {
            for o in Outcome::BOTH {
                let r = solve_quantum(&p, party, o, &SolveOptions::default()).unwrap();
                assert!(r.converged, "{party:?} {o:?}: gap {}", r.gap);
                assert!(
                    (r.primal_value - 0.75).abs() < 1e-6,
                    "{party:?} {o:?}: {}",
                    r.primal_value
                );
                assert!(membership(p.shape(), &r.primal).unwrap().feasible);
            }
        }
    }

    #[test]
    fn seeded_runs_are_reproducible() {
        let p = BccfProtocol::three_quarters();
        let opts = SolveOptions {
            seed: Some(42),
            ..SolveOptions::default()
        };
        let a = solve_quantum(&p, Party::Alice, Outcome::Zero, &opts).unwrap();
        let b = solve_quantum(&p, Party::Alice, Outcome::Zero, &opts).unwrap();
        assert_eq!(a, b);
        assert!((a.primal_value - 0.75).abs() < 1e-6);
    }
}
