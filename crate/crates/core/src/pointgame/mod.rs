//! Point games built from dual solutions.
//!
//! A point game is a sequence of configurations of weighted points in the
//! nonnegative quadrant, read backwards in protocol time. The horizontal
//! coordinate belongs to Bob and the vertical one to Alice, so a final
//! point `(ζ_B, ζ_A)` bounds Bob forcing 1 and Alice forcing 0.
//!
//! Games are stored literally, zero-weight points included. Comparisons go
//! through [`canonical`], which merges coincident points and drops empty
//! ones; [`PointGame::compressed`] applies the same view to whole games.

mod build;
mod export;
mod validate;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::tol::{EPS_PG, EPS_ZERO};

pub use build::{
    build_classical_game, build_game_pair, build_quantum_game, classical_alice_dual,
    classical_bob_dual, GamePair,
};
pub use validate::{classical_final_point_theorem, validate, verify_move, MoveCheck};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedPoint {
    pub w: f64,
    /// Bob's coordinate.
    pub x: f64,
    /// Alice's coordinate.
    pub y: f64,
}

impl WeightedPoint {
    pub fn new(w: f64, x: f64, y: f64) -> Self {
        Self { w, x, y }
    }

    fn coord(&self, axis: Axis) -> f64 {
        match axis {
            Axis::Horizontal => self.x,
            Axis::Vertical => self.y,
        }
    }

    fn other(&self, axis: Axis) -> f64 {
        match axis {
            Axis::Horizontal => self.y,
            Axis::Vertical => self.x,
        }
    }

    fn with_coord(self, axis: Axis, c: f64) -> Self {
        match axis {
            Axis::Horizontal => Self { x: c, ..self },
            Axis::Vertical => Self { y: c, ..self },
        }
    }

    fn same_place(&self, other: &Self) -> bool {
        close(self.x, other.x) && close(self.y, other.y)
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Configuration {
    pub points: Vec<WeightedPoint>,
}

impl Configuration {
    pub fn new(points: Vec<WeightedPoint>) -> Self {
        Self { points }
    }

    /// `½(1,0) + ½(0,1)`.
    pub fn start() -> Self {
        Self::new(vec![
            WeightedPoint::new(0.5, 1.0, 0.0),
            WeightedPoint::new(0.5, 0.0, 1.0),
        ])
    }

    pub fn total_weight(&self) -> f64 {
        self.points.iter().map(|p| p.w).sum()
    }

    pub fn canonical(&self) -> Configuration {
        Configuration::new(canonical(self.points.iter().copied()))
    }

    /// Largest coordinate over points of positive weight.
    pub fn max_coord(&self) -> f64 {
        self.points
            .iter()
            .filter(|p| p.w > EPS_ZERO)
            .fold(0.0, |m, p| m.max(p.x).max(p.y))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    Raise,
    Merge,
    Split,
    ProbSplit,
    ProbMerge,
    Align,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Horizontal,
    Vertical,
}

/// Points consumed and produced by one application of a move. Raises and
/// aligns pair `sources[i]` with `targets[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointGroup {
    pub sources: Vec<WeightedPoint>,
    pub targets: Vec<WeightedPoint>,
}

/// One transition: a move kind on one axis applied to disjoint groups.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Move {
    pub kind: MoveKind,
    pub axis: Axis,
    pub groups: Vec<PointGroup>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GameKind {
    Quantum,
    /// Only probability splits; point splits are rejected.
    Classical,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointGame {
    pub kind: GameKind,
    pub configurations: Vec<Configuration>,
    /// `moves[i]` leads from `configurations[i]` to `configurations[i + 1]`.
    pub moves: Vec<Move>,
}

impl PointGame {
    /// `(ζ_B, ζ_A)` if the last configuration is a single point.
    pub fn final_point(&self) -> Option<(f64, f64)> {
        let last = self.configurations.last()?.canonical();
        match last.points.as_slice() {
            [p] => Some((p.x, p.y)),
            _ => None,
        }
    }

    /// The same game with empty points dropped, coincident points merged
    /// and trivial groups removed. Each transition is split by the kind a
    /// group actually performs, e.g. a merge with an empty partner is a
    /// raise.
    pub fn compressed(&self) -> PointGame {
        let mut current = canonical(self.configurations[0].points.iter().copied());
        let mut configurations = vec![Configuration::new(current.clone())];
        let mut moves = Vec::new();
        for mv in &self.moves {
            let mut buckets: Vec<(MoveKind, Vec<PointGroup>)> = Vec::new();
            for g in &mv.groups {
                for (kind, group) in reduce_group(mv.kind, g) {
                    match buckets.iter_mut().find(|(k, _)| *k == kind) {
                        Some((_, gs)) => gs.push(group),
                        None => buckets.push((kind, vec![group])),
                    }
                }
            }
            for (kind, groups) in buckets {
                current = apply(&current, &groups);
                configurations.push(Configuration::new(current.clone()));
                moves.push(Move {
                    kind,
                    axis: mv.axis,
                    groups,
                });
            }
        }
        PointGame {
            kind: self.kind,
            configurations,
            moves,
        }
    }
}

fn is_paired(kind: MoveKind) -> bool {
    matches!(kind, MoveKind::Raise | MoveKind::Align)
}

/// Nontrivial parts of a group in canonical form, with their actual kind.
fn reduce_group(kind: MoveKind, g: &PointGroup) -> Vec<(MoveKind, PointGroup)> {
    if is_paired(kind) {
        let pairs: Vec<_> = g
            .sources
            .iter()
            .zip(&g.targets)
            .filter(|(s, t)| s.w > EPS_ZERO && !s.same_place(t))
            .collect();
        let kind = if pairs.len() == 1 {
            MoveKind::Raise
        } else {
            kind
        };
        if pairs.is_empty() {
            return Vec::new();
        }
        return vec![(
            kind,
            PointGroup {
                sources: pairs.iter().map(|(s, _)| **s).collect(),
                targets: pairs.iter().map(|(_, t)| **t).collect(),
            },
        )];
    }
    let sources = canonical(g.sources.iter().copied());
    let targets = canonical(g.targets.iter().copied());
    if same_points(&sources, &targets) {
        return Vec::new();
    }
    let kind = if sources.len() == 1 && targets.len() == 1 {
        MoveKind::Raise
    } else {
        kind
    };
    vec![(kind, PointGroup { sources, targets })]
}

pub(crate) fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= EPS_PG * 1f64.max(a.abs()).max(b.abs())
}

fn same_points(a: &[WeightedPoint], b: &[WeightedPoint]) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b)
            .all(|(p, q)| p.same_place(q) && (p.w - q.w).abs() <= EPS_PG)
}

/// Snap nearly equal values to one representative.
fn snap(values: impl Iterator<Item = f64>) -> HashMap<u64, f64> {
    let mut sorted: Vec<f64> = values.collect();
    sorted.sort_by(f64::total_cmp);
    let mut map = HashMap::new();
    let mut rep = f64::NAN;
    for v in sorted {
        if rep.is_nan() || !close(rep, v) {
            rep = v;
        }
        map.insert(v.to_bits(), rep);
    }
    map
}

/// Sum weights of coincident points (signed weights allowed), then drop
/// those with `|w| ≤ EPS_ZERO`. Sorted by `(x, y)`.
pub fn canonical(points: impl Iterator<Item = WeightedPoint>) -> Vec<WeightedPoint> {
    let points: Vec<WeightedPoint> = points.collect();
    let xs = snap(points.iter().map(|p| p.x));
    let ys = snap(points.iter().map(|p| p.y));
    let mut acc: HashMap<(u64, u64), WeightedPoint> = HashMap::new();
    for p in &points {
        let (x, y) = (xs[&p.x.to_bits()], ys[&p.y.to_bits()]);
        acc.entry((x.to_bits(), y.to_bits()))
            .or_insert(WeightedPoint::new(0.0, x, y))
            .w += p.w;
    }
    let mut out: Vec<WeightedPoint> = acc.into_values().filter(|p| p.w.abs() > EPS_ZERO).collect();
    out.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    out
}

pub(crate) fn negated(p: &WeightedPoint) -> WeightedPoint {
    WeightedPoint { w: -p.w, ..*p }
}

/// `points − sources + targets` in canonical form.
fn apply(points: &[WeightedPoint], groups: &[PointGroup]) -> Vec<WeightedPoint> {
    let removed = groups.iter().flat_map(|g| g.sources.iter().map(negated));
    let added = groups.iter().flat_map(|g| g.targets.iter().copied());
    canonical(points.iter().copied().chain(removed).chain(added))
}
