//! Bob's and Alice's cheating polytopes.
//!
//! Both polytopes are chains of marginal constraints. Their vertices are
//! exactly the Boolean points, i.e. deterministic strategies, so linear
//! objectives are maximized exactly by backward induction over the message
//! tree. See [`crate::protocol`] for the array layouts.

use std::ops::Add;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::protocol::{BccfProtocol, Party, Shape};
use crate::tol::{EPS_FEAS, EPS_ZERO};

/// Refuse to enumerate more strategies than this.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

/// Bob's variables `p₁,…,pₙ`; level `j` is stored over `(x₁..xⱼ ; y₁..yⱼ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BobCheatVars {
    pub levels: Vec<Vec<f64>>,
}

/// Alice's variables `s₁,…,sₙ, s`; level `j` is stored over
/// `(x₁..xⱼ ; y₁..yⱼ₋₁)` and the terminal `s` over `(a, x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AliceCheatVars {
    pub levels: Vec<Vec<f64>>,
    pub terminal: Vec<f64>,
}

impl BobCheatVars {
    /// `pₙ` over `(x, y)`.
    pub fn terminal(&self) -> &[f64] {
        self.levels.last().expect("at least one level")
    }

    /// Every response uniformly at random.
    pub fn barycenter(shape: &Shape) -> Self {
        let levels = (1..=shape.rounds())
            .map(|j| vec![1.0 / shape.b_prefix(j) as f64; shape.bob_level_len(j)])
            .collect();
        Self { levels }
    }

    /// Bob following `β_b` regardless of Alice's messages.
    pub fn honest(proto: &BccfProtocol, b: usize) -> Self {
        let shape = proto.shape();
        let levels = (1..=shape.rounds())
            .map(|j| {
                let bp = shape.b_prefix(j);
                let marg = proto.beta_prefix(b, j);
                (0..shape.bob_level_len(j)).map(|i| marg[i % bp]).collect()
            })
            .collect();
        Self { levels }
    }
}

impl AliceCheatVars {
    /// Uniform message choices and a uniformly random revealed bit.
    pub fn barycenter(shape: &Shape) -> Self {
        let levels = (1..=shape.rounds())
            .map(|j| vec![1.0 / shape.a_prefix(j) as f64; shape.alice_level_len(j)])
            .collect();
        let terminal = vec![0.5 / shape.a_size() as f64; 2 * shape.a_size() * shape.b_size()];
        Self { levels, terminal }
    }

    /// Alice following `α_a` and revealing `a`.
    pub fn honest(proto: &BccfProtocol, a: usize) -> Self {
        let shape = proto.shape();
        let levels = (1..=shape.rounds())
            .map(|j| {
                let bp = shape.b_prefix(j - 1);
                let marg = proto.alpha_prefix(a, j);
                (0..shape.alice_level_len(j))
                    .map(|i| marg[i / bp])
                    .collect()
            })
            .collect();
        let (asz, bsz) = (shape.a_size(), shape.b_size());
        let mut terminal = vec![0.0; 2 * asz * bsz];
        for x in 0..asz {
            for y in 0..bsz {
                terminal[a * asz * bsz + x * bsz + y] = proto.alpha(a).get(x);
            }
        }
        Self { levels, terminal }
    }
}

/// Outcome of a membership test.
#[derive(Debug, Clone, PartialEq)]
pub struct Membership {
    pub feasible: bool,
    pub max_violation: f64,
    pub worst: String,
}

struct ViolationTracker {
    max: f64,
    worst: String,
}

impl ViolationTracker {
    fn new() -> Self {
        Self {
            max: 0.0,
            worst: String::from("none"),
        }
    }

    fn record(&mut self, amount: f64, what: impl FnOnce() -> String) {
        if amount > self.max {
            self.max = amount;
            self.worst = what();
        }
    }

    fn finish(self) -> Membership {
        Membership {
            feasible: self.max <= EPS_FEAS,
            max_violation: self.max,
            worst: self.worst,
        }
    }
}

fn check_len(context: &str, expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::Dimension {
            context: context.to_string(),
            expected,
            actual,
        });
    }
    Ok(())
}

fn check_nonneg(t: &mut ViolationTracker, label: &str, v: &[f64]) {
    for (i, &x) in v.iter().enumerate() {
        if x < -EPS_ZERO {
            t.record(-x, || format!("{label}[{i}] >= 0"));
        }
    }
}

/// Check Bob's chain constraints `Tr_{B₁}(p₁) = e` and
/// `Tr_{Bⱼ}(pⱼ) = pⱼ₋₁ ⊗ e_{Aⱼ}`.
pub fn membership_bob(shape: &Shape, vars: &BobCheatVars) -> Result<Membership> {
    let n = shape.rounds();
    check_len("Bob levels", n, vars.levels.len())?;
    for j in 1..=n {
        check_len(
            &format!("p{j}"),
            shape.bob_level_len(j),
            vars.levels[j - 1].len(),
        )?;
    }
    let mut t = ViolationTracker::new();
    for j in 1..=n {
        let level = &vars.levels[j - 1];
        check_nonneg(&mut t, &format!("p{j}"), level);
        let (adim, bdim) = (shape.alice_dims()[j - 1], shape.bob_dims()[j - 1]);
        let bp = shape.b_prefix(j);
        let bp_parent = shape.b_prefix(j - 1);
        for xp in 0..shape.a_prefix(j) {
            for y_parent in 0..bp_parent {
                let sum: f64 = (0..bdim)
                    .map(|yj| level[xp * bp + y_parent * bdim + yj])
                    .sum();
                let rhs = if j == 1 {
                    1.0
                } else {
                    vars.levels[j - 2][(xp / adim) * bp_parent + y_parent]
                };
                let r = (sum - rhs).abs();
                t.record(r, || {
                    format!("Tr_B{j}(p{j}) at (x-prefix {xp}, y-prefix {y_parent})")
                });
            }
        }
    }
    Ok(t.finish())
}

/// Check Alice's chain constraints, including `Tr_{A'₀}(s) = sₙ ⊗ e_{Bₙ}`.
pub fn membership_alice(shape: &Shape, vars: &AliceCheatVars) -> Result<Membership> {
    let n = shape.rounds();
    check_len("Alice levels", n, vars.levels.len())?;
    for j in 1..=n {
        check_len(
            &format!("s{j}"),
            shape.alice_level_len(j),
            vars.levels[j - 1].len(),
        )?;
    }
    let (asz, bsz) = (shape.a_size(), shape.b_size());
    check_len("s", 2 * asz * bsz, vars.terminal.len())?;
    let mut t = ViolationTracker::new();
    for j in 1..=n {
        let level = &vars.levels[j - 1];
        check_nonneg(&mut t, &format!("s{j}"), level);
        let adim = shape.alice_dims()[j - 1];
        let bp = shape.b_prefix(j - 1);
        for x_parent in 0..shape.a_prefix(j - 1) {
            for yp in 0..bp {
                let sum: f64 = (0..adim)
                    .map(|xj| level[(x_parent * adim + xj) * bp + yp])
                    .sum();
                let rhs = if j == 1 {
                    1.0
                } else {
                    let bdim_prev = shape.bob_dims()[j - 2];
                    vars.levels[j - 2][x_parent * shape.b_prefix(j - 2) + yp / bdim_prev]
                };
                let r = (sum - rhs).abs();
                t.record(r, || {
                    format!("Tr_A{j}(s{j}) at (x-prefix {x_parent}, y-prefix {yp})")
                });
            }
        }
    }
    check_nonneg(&mut t, "s", &vars.terminal);
    let last = &vars.levels[n - 1];
    let bn = shape.bob_dims()[n - 1];
    let bp = shape.b_prefix(n - 1);
    for x in 0..asz {
        for y in 0..bsz {
            let sum = vars.terminal[x * bsz + y] + vars.terminal[asz * bsz + x * bsz + y];
            let r = (sum - last[x * bp + y / bn]).abs();
            t.record(r, || format!("Tr_A'0(s) at (x {x}, y {y})"));
        }
    }
    Ok(t.finish())
}

/// A deterministic cheating strategy for Bob: at level `j` the table maps
/// the history `(x₁..xⱼ ; y₁..yⱼ₋₁)` to his reply `yⱼ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BobStrategy {
    pub replies: Vec<Vec<usize>>,
}

/// A deterministic cheating strategy for Alice: at level `j` the table maps
/// `(x₁..xⱼ₋₁ ; y₁..yⱼ₋₁)` to her message `xⱼ`, and `reveal` maps the full
/// transcript `(x, y)` (index `x·|B| + y`) to the bit she announces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AliceStrategy {
    pub messages: Vec<Vec<usize>>,
    pub reveal: Vec<usize>,
}

/// Either party's deterministic strategy.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DeterministicStrategy {
    Bob(BobStrategy),
    Alice(AliceStrategy),
}

impl BobStrategy {
    /// The same reply table entry everywhere.
    pub fn constant(shape: &Shape, reply: usize) -> Self {
        let replies = (1..=shape.rounds())
            .map(|j| vec![reply; shape.alice_level_len(j)])
            .collect();
        Self { replies }
    }

    pub fn to_point(&self, shape: &Shape) -> BobCheatVars {
        let n = shape.rounds();
        let mut levels: Vec<Vec<f64>> = Vec::with_capacity(n);
        for j in 1..=n {
            let (adim, bdim) = (shape.alice_dims()[j - 1], shape.bob_dims()[j - 1]);
            let bp = shape.b_prefix(j);
            let bp_parent = shape.b_prefix(j - 1);
            let mut level = vec![0.0; shape.bob_level_len(j)];
            for xp in 0..shape.a_prefix(j) {
                for y_parent in 0..bp_parent {
                    let parent = if j == 1 {
                        1.0
                    } else {
                        levels[j - 2][(xp / adim) * bp_parent + y_parent]
                    };
                    let reply = self.replies[j - 1][xp * bp_parent + y_parent];
                    debug_assert!(reply < bdim);
                    level[xp * bp + y_parent * bdim + reply] = parent;
                }
            }
            levels.push(level);
        }
        BobCheatVars { levels }
    }
}

impl AliceStrategy {
    pub fn to_point(&self, shape: &Shape) -> AliceCheatVars {
        let n = shape.rounds();
        let mut levels: Vec<Vec<f64>> = Vec::with_capacity(n);
        for j in 1..=n {
            let adim = shape.alice_dims()[j - 1];
            let bp = shape.b_prefix(j - 1);
            let mut level = vec![0.0; shape.alice_level_len(j)];
            for x_parent in 0..shape.a_prefix(j - 1) {
                for yp in 0..bp {
                    let parent = if j == 1 {
                        1.0
                    } else {
                        let bdim_prev = shape.bob_dims()[j - 2];
                        levels[j - 2][x_parent * shape.b_prefix(j - 2) + yp / bdim_prev]
                    };
                    let msg = self.messages[j - 1][x_parent * bp + yp];
                    level[(x_parent * adim + msg) * bp + yp] = parent;
                }
            }
            levels.push(level);
        }
        let (asz, bsz) = (shape.a_size(), shape.b_size());
        let bn = shape.bob_dims()[n - 1];
        let bp = shape.b_prefix(n - 1);
        let mut terminal = vec![0.0; 2 * asz * bsz];
        for x in 0..asz {
            for y in 0..bsz {
                let a = self.reveal[x * bsz + y];
                terminal[a * asz * bsz + x * bsz + y] = levels[n - 1][x * bp + y / bn];
            }
        }
        AliceCheatVars { levels, terminal }
    }
}

/// Boolean point of either polytope.
#[derive(Debug, Clone, PartialEq)]
pub enum CheatVars {
    Bob(BobCheatVars),
    Alice(AliceCheatVars),
}

pub fn strategy_to_point(shape: &Shape, strategy: &DeterministicStrategy) -> CheatVars {
    match strategy {
        DeterministicStrategy::Bob(s) => CheatVars::Bob(s.to_point(shape)),
        DeterministicStrategy::Alice(s) => CheatVars::Alice(s.to_point(shape)),
    }
}

pub fn membership(shape: &Shape, vars: &CheatVars) -> Result<Membership> {
    match vars {
        CheatVars::Bob(v) => membership_bob(shape, v),
        CheatVars::Alice(v) => membership_alice(shape, v),
    }
}

/// Backward induction `Σ_{x₁} max_{y₁} … Σ_{xₙ} max_{yₙ} leaf(x, y)`.
///
/// Returns the value and the maximizing strategy; ties go to the smallest
/// reply index. Works over any ordered additive scalar.
pub fn bob_induction<T, F>(shape: &Shape, leaf: F) -> (T, BobStrategy)
where
    T: Clone + PartialOrd + Zero + Add<Output = T>,
    F: Fn(usize, usize) -> T,
{
    let n = shape.rounds();
    let mut replies: Vec<Vec<usize>> = (1..=n).map(|j| vec![0; shape.alice_level_len(j)]).collect();

    fn rec<T, F>(
        shape: &Shape,
        leaf: &F,
        replies: &mut [Vec<usize>],
        j: usize,
        xp: usize,
        yp: usize,
    ) -> T
    where
        T: Clone + PartialOrd + Zero + Add<Output = T>,
        F: Fn(usize, usize) -> T,
    {
        if j == shape.rounds() {
            return leaf(xp, yp);
        }
        let (adim, bdim) = (shape.alice_dims()[j], shape.bob_dims()[j]);
        let bp = shape.b_prefix(j);
        let mut total = T::zero();
        for xj in 0..adim {
            let x_next = xp * adim + xj;
            let mut best: Option<(usize, T)> = None;
            for yj in 0..bdim {
                let v = rec(shape, leaf, replies, j + 1, x_next, yp * bdim + yj);
                if best.as_ref().is_none_or(|(_, b)| v > *b) {
                    best = Some((yj, v));
                }
            }
            let (arg, v) = best.expect("dimension at least 1");
            replies[j][x_next * bp + yp] = arg;
            total = total + v;
        }
        total
    }

    let value = rec(shape, &leaf, &mut replies, 0, 0, 0);
    (value, BobStrategy { replies })
}

/// Backward induction `max_{x₁} Σ_{y₁} … max_{xₙ} Σ_{yₙ} max_a leaf(a, x, y)`.
pub fn alice_induction<T, F>(shape: &Shape, leaf: F) -> (T, AliceStrategy)
where
    T: Clone + PartialOrd + Zero + Add<Output = T>,
    F: Fn(usize, usize, usize) -> T,
{
    let n = shape.rounds();
    let mut messages: Vec<Vec<usize>> = (1..=n)
        .map(|j| vec![0; shape.bob_level_len(j - 1).max(1)])
        .collect();
    for (j, m) in messages.iter_mut().enumerate() {
        m.resize(shape.a_prefix(j) * shape.b_prefix(j), 0);
    }
    let mut reveal = vec![0; shape.a_size() * shape.b_size()];

    struct Ctx<'a, F> {
        shape: &'a Shape,
        leaf: &'a F,
        bsz: usize,
    }

    fn rec<T, F>(
        ctx: &Ctx<'_, F>,
        messages: &mut [Vec<usize>],
        reveal: &mut [usize],
        j: usize,
        xp: usize,
        yp: usize,
    ) -> T
    where
        T: Clone + PartialOrd + Zero + Add<Output = T>,
        F: Fn(usize, usize, usize) -> T,
    {
        let shape = ctx.shape;
        if j == shape.rounds() {
            let v0 = (ctx.leaf)(0, xp, yp);
            let v1 = (ctx.leaf)(1, xp, yp);
            let (a, v) = if v1 > v0 { (1, v1) } else { (0, v0) };
            reveal[xp * ctx.bsz + yp] = a;
            return v;
        }
        let (adim, bdim) = (shape.alice_dims()[j], shape.bob_dims()[j]);
        let bp = shape.b_prefix(j);
        let mut best: Option<(usize, T)> = None;
        for xj in 0..adim {
            let mut sum = T::zero();
            for yj in 0..bdim {
                sum = sum + rec(ctx, messages, reveal, j + 1, xp * adim + xj, yp * bdim + yj);
            }
            if best.as_ref().is_none_or(|(_, b)| sum > *b) {
                best = Some((xj, sum));
            }
        }
        let (arg, v) = best.expect("dimension at least 1");
        messages[j][xp * bp + yp] = arg;
        v
    }

    let ctx = Ctx {
        shape,
        leaf: &leaf,
        bsz: shape.b_size(),
    };
    let value = rec(&ctx, &mut messages, &mut reveal, 0, 0, 0);
    (value, AliceStrategy { messages, reveal })
}

/// Result of a linear maximization over Bob's polytope.
#[derive(Debug, Clone)]
pub struct BobLmo {
    pub value: f64,
    pub strategy: BobStrategy,
    pub vertex: BobCheatVars,
}

/// Result of a linear maximization over Alice's polytope.
#[derive(Debug, Clone)]
pub struct AliceLmo {
    pub value: f64,
    pub strategy: AliceStrategy,
    pub vertex: AliceCheatVars,
}

/// Maximize `⟨c, pₙ⟩` over Bob's polytope; `c` is indexed by `(x, y)`.
pub fn lmo_bob(shape: &Shape, c: &[f64]) -> Result<BobLmo> {
    let bsz = shape.b_size();
    check_len("Bob objective", shape.a_size() * bsz, c.len())?;
    if c.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain(
            "objective coefficients must be finite".into(),
        ));
    }
    let (value, strategy) = bob_induction(shape, |x, y| c[x * bsz + y]);
    let vertex = strategy.to_point(shape);
    Ok(BobLmo {
        value,
        strategy,
        vertex,
    })
}

/// Maximize `⟨c, s⟩` over Alice's polytope; `c` is indexed by `(a, x, y)`.
pub fn lmo_alice(shape: &Shape, c: &[f64]) -> Result<AliceLmo> {
    let (asz, bsz) = (shape.a_size(), shape.b_size());
    check_len("Alice objective", 2 * asz * bsz, c.len())?;
    if c.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain(
            "objective coefficients must be finite".into(),
        ));
    }
    let (value, strategy) = alice_induction(shape, |a, x, y| c[a * asz * bsz + x * bsz + y]);
    let vertex = strategy.to_point(shape);
    Ok(AliceLmo {
        value,
        strategy,
        vertex,
    })
}

/// Radix of every free choice in the total encoding of a strategy.
fn choice_radices(shape: &Shape, party: Party) -> Vec<usize> {
    let n = shape.rounds();
    let mut radices = Vec::new();
    match party {
        Party::Bob => {
            for j in 1..=n {
                radices.extend(std::iter::repeat_n(
                    shape.bob_dims()[j - 1],
                    shape.alice_level_len(j),
                ));
            }
        }
        Party::Alice => {
            for j in 1..=n {
                let histories = shape.a_prefix(j - 1) * shape.b_prefix(j - 1);
                radices.extend(std::iter::repeat_n(shape.alice_dims()[j - 1], histories));
            }
            radices.extend(std::iter::repeat_n(2, shape.a_size() * shape.b_size()));
        }
    }
    radices
}

/// Number of deterministic strategies in the total encoding (every history
/// carries a choice, reachable or not).
pub fn strategy_count(shape: &Shape, party: Party) -> f64 {
    choice_radices(shape, party)
        .iter()
        .map(|&r| r as f64)
        .product()
}

/// Exhaustive, duplicate-free iterator over deterministic strategies.
#[derive(Debug, Clone)]
pub struct StrategyIter {
    shape: Shape,
    party: Party,
    radices: Vec<usize>,
    counter: Vec<usize>,
    done: bool,
}

impl StrategyIter {
    fn build(&self) -> DeterministicStrategy {
        let shape = &self.shape;
        let n = shape.rounds();
        let mut it = self.counter.iter().copied();
        match self.party {
            Party::Bob => {
                let replies = (1..=n)
                    .map(|j| it.by_ref().take(shape.alice_level_len(j)).collect())
                    .collect();
                DeterministicStrategy::Bob(BobStrategy { replies })
            }
            Party::Alice => {
                let messages = (1..=n)
                    .map(|j| {
                        it.by_ref()
                            .take(shape.a_prefix(j - 1) * shape.b_prefix(j - 1))
                            .collect()
                    })
                    .collect();
                let reveal = it.collect();
                DeterministicStrategy::Alice(AliceStrategy { messages, reveal })
            }
        }
    }
}

impl Iterator for StrategyIter {
    type Item = DeterministicStrategy;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let out = self.build();
        // Odometer increment, last choice fastest.
        let mut k = self.counter.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.counter[k] += 1;
            if self.counter[k] < self.radices[k] {
                break;
            }
            self.counter[k] = 0;
        }
        Some(out)
    }
}

/// Enumerate every deterministic strategy of `party`, refusing instances
/// with more than [`ENUMERATION_LIMIT`] strategies.
pub fn enumerate_vertices(shape: &Shape, party: Party) -> Result<StrategyIter> {
    let count = strategy_count(shape, party);
    if count > ENUMERATION_LIMIT as f64 {
        return Err(Error::TooLarge {
            count,
            limit: ENUMERATION_LIMIT,
        });
    }
    let radices = choice_radices(shape, party);
    Ok(StrategyIter {
        shape: shape.clone(),
        party,
        counter: vec![0; radices.len()],
        radices,
        done: false,
    })
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn shape(a: &[usize], b: &[usize]) -> Shape {
        Shape::new(a.to_vec(), b.to_vec()).unwrap()
    }

    #[test]
    fn honest_points_are_members() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let p = crate::random::random_protocol(&mut rng, 3, 3, 0.3);
            for k in 0..2 {
                let bob = membership_bob(p.shape(), &BobCheatVars::honest(&p, k)).unwrap();
                let alice = membership_alice(p.shape(), &AliceCheatVars::honest(&p, k)).unwrap();
                assert!(bob.feasible && alice.feasible, "{bob:?} {alice:?}");
            }
        }
    }

    #[test]
    fn identity_reply_is_diagonal() {
        let s = shape(&[2], &[2]);
        let strat = BobStrategy {
            replies: vec![vec![0, 1]],
        };
        let p = strat.to_point(&s);
        assert_eq!(p.terminal(), &[1.0, 0.0, 0.0, 1.0]);
        let m = membership_bob(&s, &p).unwrap();
        assert!(m.feasible && m.max_violation <= 1e-15);
    }

    #[test]
    fn constant_reply_fills_first_column() {
        let s = shape(&[2], &[2]);
        let p = BobStrategy::constant(&s, 0).to_point(&s);
        assert_eq!(p.terminal(), &[1.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn alice_fixed_message_and_bit() {
        let s = shape(&[2], &[2]);
        let strat = AliceStrategy {
            messages: vec![vec![0]],
            reveal: vec![0; 4],
        };
        let v = strat.to_point(&s);
        assert_eq!(v.levels[0], vec![1.0, 0.0]);
        // a = 0, x = 0, any y.
        assert_eq!(v.terminal, vec![1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert!(membership_alice(&s, &v).unwrap().feasible);
    }

    #[test]
    fn membership_detects_violations() {
        let s = shape(&[2], &[2]);
        let mut p = BobStrategy::constant(&s, 0).to_point(&s);
        p.levels[0][0] += 0.1;
        let m = membership_bob(&s, &p).unwrap();
        assert!(!m.feasible);
        assert!((m.max_violation - 0.1).abs() < 1e-12);

        let zeros = BobCheatVars {
            levels: vec![vec![0.0; 4]],
        };
        assert!(!membership_bob(&s, &zeros).unwrap().feasible);

        let wrong = BobCheatVars {
            levels: vec![vec![0.0; 3]],
        };
        assert!(matches!(
            membership_bob(&s, &wrong),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn barycenters_are_members() {
        let s = shape(&[2, 3], &[3, 2]);
        assert!(
            membership_bob(&s, &BobCheatVars::barycenter(&s))
                .unwrap()
                .feasible
        );
        assert!(
            membership_alice(&s, &AliceCheatVars::barycenter(&s))
                .unwrap()
                .feasible
        );
    }

    #[test]
    fn lmo_bob_examples() {
        let s = shape(&[2], &[2]);
        let r = lmo_bob(&s, &[1.0, 0.0, 0.0, 2.0]).unwrap();
        assert_eq!(r.value, 3.0);
        assert_eq!(r.strategy.replies, vec![vec![0, 1]]);

        let r = lmo_bob(&s, &[0.0; 4]).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.strategy, BobStrategy::constant(&s, 0));

        let s3 = shape(&[2, 3], &[2, 2]);
        let r = lmo_bob(&s3, &[1.0; 24]).unwrap();
        assert_eq!(r.value, 6.0);
        assert!(lmo_bob(&s3, &[1.0; 3]).is_err());
    }

    #[test]
    fn lmo_alice_examples() {
        let s = shape(&[2], &[3]);
        assert_eq!(lmo_alice(&s, &[0.0; 12]).unwrap().value, 0.0);
        let mut c = vec![0.0; 12];
        // a = 1, x = 1, y = 2
        c[6 + 3 + 2] = 0.7;
        let r = lmo_alice(&s, &c).unwrap();
        assert!((r.value - 0.7).abs() < 1e-15);
        assert_eq!(r.strategy.messages[0][0], 1);
        assert_eq!(r.strategy.reveal[3 + 2], 1);
        assert!(lmo_alice(&s, &[0.0; 5]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let s = shape(&[2], &[2]);
        assert_eq!(enumerate_vertices(&s, Party::Bob).unwrap().count(), 4);
        assert_eq!(enumerate_vertices(&s, Party::Alice).unwrap().count(), 32);
        assert_eq!(strategy_count(&s, Party::Alice), 32.0);
        let s1 = shape(&[2], &[1]);
        assert_eq!(enumerate_vertices(&s1, Party::Bob).unwrap().count(), 1);
        let big = shape(&[3, 3, 3], &[3, 3, 3]);
        assert!(matches!(
            enumerate_vertices(&big, Party::Bob),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        let s = shape(&[2, 2], &[2, 1]);
        let all: Vec<_> = enumerate_vertices(&s, Party::Bob).unwrap().collect();
        let unique: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(all.len(), unique.len());
        assert_eq!(all.len() as f64, strategy_count(&s, Party::Bob));
    }

    fn brute_max(shape: &Shape, party: Party, c: &[f64]) -> f64 {
        enumerate_vertices(shape, party)
            .unwrap()
            .map(|st| match strategy_to_point(shape, &st) {
                CheatVars::Bob(p) => dot(c, p.terminal()),
                CheatVars::Alice(s) => dot(c, &s.terminal),
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn lmo_matches_enumeration_on_random_objectives() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let shapes = [
            shape(&[2], &[2]),
            shape(&[3], &[2]),
            shape(&[2, 2], &[2, 1]),
            shape(&[1, 2], &[2, 2]),
            shape(&[2, 1], &[1, 2]),
        ];
        for k in 0..200 {
            let s = &shapes[k % shapes.len()];
            let len = s.a_size() * s.b_size();
            let c: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let r = lmo_bob(s, &c).unwrap();
            assert!((r.value - brute_max(s, Party::Bob, &c)).abs() < 1e-12);
            assert!((dot(&c, r.vertex.terminal()) - r.value).abs() < 1e-12);
            assert!(membership_bob(s, &r.vertex).unwrap().max_violation == 0.0);

            if strategy_count(s, Party::Alice) <= 1e5 {
                let c: Vec<f64> = (0..2 * len).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let r = lmo_alice(s, &c).unwrap();
                assert!((r.value - brute_max(s, Party::Alice, &c)).abs() < 1e-12);
                assert!((dot(&c, &r.vertex.terminal) - r.value).abs() < 1e-12);
                assert!(membership_alice(s, &r.vertex).unwrap().max_violation == 0.0);
            }
        }
    }

    #[test]
    fn lmo_homogeneous_and_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = shape(&[2, 3], &[3, 2]);
        let len = s.a_size() * s.b_size();
        for _ in 0..50 {
            let c: Vec<f64> = (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let base = lmo_bob(&s, &c).unwrap().value;
            let scaled: Vec<f64> = c.iter().map(|v| 2.5 * v).collect();
            assert!((lmo_bob(&s, &scaled).unwrap().value - 2.5 * base).abs() < 1e-12);
            let bumped: Vec<f64> = c.iter().map(|v| v + rng.gen_range(0.0..0.1)).collect();
            assert!(lmo_bob(&s, &bumped).unwrap().value >= base - 1e-15);

            let ca: Vec<f64> = (0..2 * len).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let base = lmo_alice(&s, &ca).unwrap().value;
            let scaled: Vec<f64> = ca.iter().map(|v| 0.5 * v).collect();
            assert!((lmo_alice(&s, &scaled).unwrap().value - 0.5 * base).abs() < 1e-12);
            let bumped: Vec<f64> = ca.iter().map(|v| v + rng.gen_range(0.0..0.1)).collect();
            assert!(lmo_alice(&s, &bumped).unwrap().value >= base - 1e-15);
        }
    }
}
