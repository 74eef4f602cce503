use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::protocol::{BccfProtocol, Outcome};
use crate::quantum::{alice_dual_levels, bob_dual_levels, AliceDual, BobDual};
use crate::tol::EPS_ZERO;

use super::{
    validate, Axis, Configuration, GameKind, Move, MoveKind, PointGame, PointGroup, WeightedPoint,
};

/// `num / den`, with `0` wherever the denominator vanishes; such points
/// always carry zero weight.
fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

fn weighted_mean(points: &[WeightedPoint], axis: Axis) -> f64 {
    let w: f64 = points.iter().map(|p| p.w).sum();
    ratio(points.iter().map(|p| p.w * p.coord(axis)).sum(), w)
}

/// Accumulates transitions; every source must be a point of the current
/// configuration, matched bit for bit.
struct Builder {
    kind: GameKind,
    current: Vec<WeightedPoint>,
    configurations: Vec<Configuration>,
    moves: Vec<Move>,
}

fn key(p: &WeightedPoint) -> (u64, u64, u64) {
    (p.w.to_bits(), p.x.to_bits(), p.y.to_bits())
}

impl Builder {
    fn new(kind: GameKind) -> Self {
        let start = Configuration::start();
        Self {
            kind,
            current: start.points.clone(),
            configurations: vec![start],
            moves: Vec::new(),
        }
    }

    fn push(&mut self, kind: MoveKind, axis: Axis, groups: Vec<PointGroup>) {
        if groups.is_empty() {
            return;
        }
        let mut index: HashMap<_, Vec<usize>> = HashMap::new();
        for (i, p) in self.current.iter().enumerate() {
            index.entry(key(p)).or_default().push(i);
        }
        let mut gone = vec![false; self.current.len()];
        for s in groups.iter().flat_map(|g| &g.sources) {
            let i = index
                .get_mut(&key(s))
                .and_then(Vec::pop)
                .expect("builder sources come from the current configuration");
            gone[i] = true;
        }
        let mut next: Vec<WeightedPoint> = self
            .current
            .iter()
            .zip(&gone)
            .filter(|(_, g)| !**g)
            .map(|(p, _)| *p)
            .collect();
        next.extend(groups.iter().flat_map(|g| g.targets.iter().copied()));
        self.current = next;
        self.configurations
            .push(Configuration::new(self.current.clone()));
        self.moves.push(Move { kind, axis, groups });
    }

    /// A split, or in a classical game a probability split followed by a
    /// raise to the same targets.
    fn split(&mut self, axis: Axis, groups: Vec<PointGroup>) {
        if self.kind == GameKind::Quantum {
            return self.push(MoveKind::Split, axis, groups);
        }
        let (mut flat, mut raise) = (Vec::new(), Vec::new());
        for g in groups {
            let c = g.sources[0].coord(axis);
            let parked: Vec<WeightedPoint> =
                g.targets.iter().map(|t| t.with_coord(axis, c)).collect();
            flat.push(PointGroup {
                sources: g.sources,
                targets: parked.clone(),
            });
            raise.push(PointGroup {
                sources: parked,
                targets: g.targets,
            });
        }
        self.push(MoveKind::ProbSplit, axis, flat);
        self.push(MoveKind::Raise, axis, raise);
    }

    fn finish(self) -> PointGame {
        PointGame {
            kind: self.kind,
            configurations: self.configurations,
            moves: self.moves,
        }
    }
}

/// Points of the current stage indexed by `(x₁..x_jx ; y₁..y_jy)`.
struct Grid {
    jx: usize,
    jy: usize,
    points: Vec<WeightedPoint>,
}

fn check_pairing(bob: &BobDual, alice: &AliceDual) -> Result<()> {
    if bob.outcome != Outcome::One || alice.outcome != Outcome::Zero {
        return Err(Error::DualPairing(
            "a point game pairs Bob forcing 1 with Alice forcing 0".into(),
        ));
    }
    Ok(())
}

fn build(
    proto: &BccfProtocol,
    bob: &BobDual,
    alice: &AliceDual,
    kind: GameKind,
) -> Result<PointGame> {
    check_pairing(bob, alice)?;
    let w = bob_dual_levels(proto, bob)?;
    let z = alice_dual_levels(proto, alice)?;
    let shape = proto.shape();
    let n = shape.rounds();
    let (asz, bsz) = (shape.a_size(), shape.b_size());
    let alpha = |a: usize, x: usize| proto.alpha(a).get(x);
    let beta = |b: usize, y: usize| proto.beta(b).get(y);
    let v = |a: usize, y: usize| bob.v[a][y];
    let zt = |x: usize, y: usize| alice.z[x * bsz + y];
    let py = |y: usize| proto.y_prefix_prob(n, y);
    let mut b = Builder::new(kind);
    let pt = WeightedPoint::new;
    let group = |sources, targets| PointGroup { sources, targets };

    b.push(
        MoveKind::ProbSplit,
        Axis::Horizontal,
        vec![
            group(vec![pt(0.5, 1.0, 0.0)], vec![pt(0.25, 1.0, 0.0); 2]),
            group(
                vec![pt(0.5, 0.0, 1.0)],
                (0..2)
                    .flat_map(|a| (0..bsz).map(move |y| pt(0.25 * beta(a, y), 0.0, 1.0)))
                    .collect(),
            ),
        ],
    );
    // Alice checks Bob's commitment: a split on vₐ against β_ā.
    b.split(
        Axis::Horizontal,
        (0..2)
            .map(|a| {
                group(
                    vec![pt(0.25, 1.0, 0.0)],
                    (0..bsz)
                        .map(|y| pt(0.25 * beta(1 - a, y), v(a, y), 0.0))
                        .collect(),
                )
            })
            .collect(),
    );
    b.push(
        MoveKind::Raise,
        Axis::Horizontal,
        (0..2)
            .flat_map(|a| {
                (0..bsz).map(move |y| {
                    let q = 0.25 * beta(a, y);
                    group(vec![pt(q, 0.0, 1.0)], vec![pt(q, v(a, y), 1.0)])
                })
            })
            .collect(),
    );
    // Bob checks Alice's commitment: a split on z_{n+1}.
    let alice_side = |a: usize, y: usize, x: usize| {
        pt(
            0.25 * beta(a, y) * alpha(a, x),
            v(a, y),
            ratio(2.0 * zt(x, y), beta(a, y)),
        )
    };
    let bob_side =
        |a: usize, y: usize, x: usize| pt(0.25 * beta(1 - a, y) * alpha(a, x), v(a, y), 0.0);
    b.split(
        Axis::Vertical,
        (0..2)
            .flat_map(|a| {
                (0..bsz).map(move |y| {
                    group(
                        vec![pt(0.25 * beta(a, y), v(a, y), 1.0)],
                        (0..asz).map(|x| alice_side(a, y, x)).collect(),
                    )
                })
            })
            .collect(),
    );
    b.push(
        MoveKind::ProbSplit,
        Axis::Vertical,
        (0..2)
            .flat_map(|a| {
                (0..bsz).map(move |y| {
                    group(
                        vec![pt(0.25 * beta(1 - a, y), v(a, y), 0.0)],
                        (0..asz).map(|x| bob_side(a, y, x)).collect(),
                    )
                })
            })
            .collect(),
    );
    // Merging the two sides lands on z_{n+1}/p(y) when Alice's side has
    // weight; otherwise the merge is trivial and a raise follows.
    let mut merges = Vec::new();
    let mut raises = Vec::new();
    let mut stage = HashMap::new();
    for a in 0..2 {
        for y in 0..bsz {
            for x in 0..asz {
                let sources = vec![bob_side(a, y, x), alice_side(a, y, x)];
                let total = sources[0].w + sources[1].w;
                let top = ratio(zt(x, y), py(y));
                let target = if sources[1].w > 0.0 {
                    pt(total, v(a, y), top)
                } else {
                    pt(total, v(a, y), 0.0)
                };
                if target.y != top {
                    raises.push(group(vec![target], vec![pt(total, v(a, y), top)]));
                }
                merges.push(group(sources, vec![target]));
                stage.insert((a, x, y), pt(total, v(a, y), top));
            }
        }
    }
    b.push(MoveKind::Merge, Axis::Vertical, merges);
    b.push(MoveKind::Raise, Axis::Vertical, raises);

    // Merge the revealed bit a.
    let mut merges = Vec::new();
    let mut grid = Grid {
        jx: n,
        jy: n,
        points: Vec::with_capacity(asz * bsz),
    };
    for x in 0..asz {
        for y in 0..bsz {
            let sources = vec![stage[&(0, x, y)], stage[&(1, x, y)]];
            let target = pt(
                sources[0].w + sources[1].w,
                weighted_mean(&sources, Axis::Horizontal),
                sources[0].y,
            );
            grid.points.push(target);
            merges.push(group(sources, vec![target]));
        }
    }
    b.push(MoveKind::Merge, Axis::Horizontal, merges);

    for j in (1..=n).rev() {
        // Align y_j, then merge it on Alice's axis.
        align_last_y(&mut b, &mut grid, proto, &w[j - 1]);
        merge_last_y(&mut b, &mut grid, proto);
        align_last_x(&mut b, &mut grid, proto, &z[j - 1]);
        merge_last_x(&mut b, &mut grid, proto);
    }
    let game = b.finish();
    validate(&game)?;
    Ok(game)
}

/// Raise every point to `w_j / p(x₁..x_j)`, uniformly over `y_j`.
fn align_last_y(b: &mut Builder, grid: &mut Grid, proto: &BccfProtocol, wj: &[f64]) {
    let shape = proto.shape();
    let bd = shape.bob_dims()[grid.jy - 1];
    let bp = shape.b_prefix(grid.jy);
    let mut groups = Vec::new();
    for xp in 0..shape.a_prefix(grid.jx) {
        for yq in 0..bp / bd {
            let top = ratio(wj[xp * (bp / bd) + yq], proto.x_prefix_prob(grid.jx, xp));
            let idx: Vec<usize> = (0..bd).map(|yj| xp * bp + yq * bd + yj).collect();
            let sources: Vec<WeightedPoint> = idx.iter().map(|&i| grid.points[i]).collect();
            let targets: Vec<WeightedPoint> = sources
                .iter()
                .map(|p| p.with_coord(Axis::Horizontal, top))
                .collect();
            for (&i, t) in idx.iter().zip(&targets) {
                grid.points[i] = *t;
            }
            groups.push(PointGroup { sources, targets });
        }
    }
    b.push(MoveKind::Align, Axis::Horizontal, groups);
}

fn merge_last_y(b: &mut Builder, grid: &mut Grid, proto: &BccfProtocol) {
    let shape = proto.shape();
    let bd = shape.bob_dims()[grid.jy - 1];
    let bp = shape.b_prefix(grid.jy);
    let mut groups = Vec::new();
    let mut next = Vec::new();
    for xp in 0..shape.a_prefix(grid.jx) {
        for yq in 0..bp / bd {
            let sources: Vec<WeightedPoint> = (0..bd)
                .map(|yj| grid.points[xp * bp + yq * bd + yj])
                .collect();
            let target = WeightedPoint::new(
                sources.iter().map(|p| p.w).sum(),
                sources[0].x,
                weighted_mean(&sources, Axis::Vertical),
            );
            next.push(target);
            groups.push(PointGroup {
                sources,
                targets: vec![target],
            });
        }
    }
    grid.jy -= 1;
    grid.points = next;
    b.push(MoveKind::Merge, Axis::Vertical, groups);
}

/// Raise every point to `z_j / p(y₁..y_{j-1})`, uniformly over `x_j`.
fn align_last_x(b: &mut Builder, grid: &mut Grid, proto: &BccfProtocol, zj: &[f64]) {
    let shape = proto.shape();
    let ad = shape.alice_dims()[grid.jx - 1];
    let bp = shape.b_prefix(grid.jy);
    let mut groups = Vec::new();
    for xq in 0..shape.a_prefix(grid.jx) / ad {
        for yp in 0..bp {
            let top = ratio(zj[xq * bp + yp], proto.y_prefix_prob(grid.jy, yp));
            let idx: Vec<usize> = (0..ad).map(|xj| (xq * ad + xj) * bp + yp).collect();
            let sources: Vec<WeightedPoint> = idx.iter().map(|&i| grid.points[i]).collect();
            let targets: Vec<WeightedPoint> = sources
                .iter()
                .map(|p| p.with_coord(Axis::Vertical, top))
                .collect();
            for (&i, t) in idx.iter().zip(&targets) {
                grid.points[i] = *t;
            }
            groups.push(PointGroup { sources, targets });
        }
    }
    b.push(MoveKind::Align, Axis::Vertical, groups);
}

fn merge_last_x(b: &mut Builder, grid: &mut Grid, proto: &BccfProtocol) {
    let shape = proto.shape();
    let ad = shape.alice_dims()[grid.jx - 1];
    let bp = shape.b_prefix(grid.jy);
    let mut groups = Vec::new();
    let mut next = Vec::new();
    for xq in 0..shape.a_prefix(grid.jx) / ad {
        for yp in 0..bp {
            let sources: Vec<WeightedPoint> = (0..ad)
                .map(|xj| grid.points[(xq * ad + xj) * bp + yp])
                .collect();
            let target = WeightedPoint::new(
                sources.iter().map(|p| p.w).sum(),
                weighted_mean(&sources, Axis::Horizontal),
                sources[0].y,
            );
            next.push(target);
            groups.push(PointGroup {
                sources,
                targets: vec![target],
            });
        }
    }
    grid.jx -= 1;
    grid.points = next;
    b.push(MoveKind::Merge, Axis::Horizontal, groups);
}

/// The point game of a Bob dual for outcome 1 and an Alice dual for
/// outcome 0, validated before it is returned. Its final point is the pair
/// of dual values.
pub fn build_quantum_game(
    proto: &BccfProtocol,
    bob: &BobDual,
    alice: &AliceDual,
) -> Result<PointGame> {
    build(proto, bob, alice, GameKind::Quantum)
}

/// As [`build_quantum_game`], with every split replaced by a probability
/// split and a raise. Only duals of the classical problems survive
/// validation; see [`classical_bob_dual`] and [`classical_alice_dual`].
pub fn build_classical_game(
    proto: &BccfProtocol,
    bob: &BobDual,
    alice: &AliceDual,
) -> Result<PointGame> {
    build(proto, bob, alice, GameKind::Classical)
}

/// `vₐ = e_{supp β_{t(a)}}`.
pub fn classical_bob_dual(proto: &BccfProtocol, outcome: Outcome) -> BobDual {
    BobDual {
        outcome,
        v: [0, 1].map(|a| proto.beta(outcome.target(a)).support_indicator()),
    }
}

/// `z(x, y) = max_a ½ β_{t(a),y}` over the bits whose `αₐ` contains `x`.
pub fn classical_alice_dual(proto: &BccfProtocol, outcome: Outcome) -> AliceDual {
    let (asz, bsz) = (proto.shape().a_size(), proto.shape().b_size());
    let mut z = vec![0.0; asz * bsz];
    for x in 0..asz {
        for y in 0..bsz {
            z[x * bsz + y] = (0..2)
                .filter(|&a| proto.alpha(a).get(x) > EPS_ZERO)
                .map(|a| 0.5 * proto.beta(outcome.target(a)).get(y))
                .fold(0.0, f64::max);
        }
    }
    AliceDual { outcome, z }
}

/// Two games jointly bounding all four cheating probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct GamePair {
    /// Bob forcing 1 against Alice forcing 0 on the protocol itself.
    pub first: PointGame,
    /// The same on the protocol with `β₀, β₁` swapped, i.e. Bob forcing 0
    /// against Alice forcing 1.
    pub second: PointGame,
    /// `(ζ_{B,0}, ζ_{B,1}, ζ_{A,0}, ζ_{A,1})`.
    pub final_point: [f64; 4],
}

/// Duals are indexed by outcome.
pub fn build_game_pair(
    proto: &BccfProtocol,
    kind: GameKind,
    bob: [&BobDual; 2],
    alice: [&AliceDual; 2],
) -> Result<GamePair> {
    for (o, d) in Outcome::BOTH.iter().zip(bob) {
        if d.outcome != *o {
            return Err(Error::DualPairing(format!(
                "Bob dual {} is for outcome {}",
                o.bit(),
                d.outcome.bit()
            )));
        }
    }
    for (o, d) in Outcome::BOTH.iter().zip(alice) {
        if d.outcome != *o {
            return Err(Error::DualPairing(format!(
                "Alice dual {} is for outcome {}",
                o.bit(),
                d.outcome.bit()
            )));
        }
    }
    let swapped = proto.swapped_betas();
    let bob0 = BobDual {
        outcome: Outcome::One,
        v: bob[0].v.clone(),
    };
    let alice1 = AliceDual {
        outcome: Outcome::Zero,
        z: alice[1].z.clone(),
    };
    let first = build(proto, bob[1], alice[0], kind)?;
    let second = build(&swapped, &bob0, &alice1, kind)?;
    let (zb1, za0) = first.final_point().expect("validated");
    let (zb0, za1) = second.final_point().expect("validated");
    Ok(GamePair {
        first,
        second,
        final_point: [zb0, zb1, za0, za1],
    })
}
