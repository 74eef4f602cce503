use crate::error::{Error, Result};
use crate::tol::{EPS_PG, EPS_ZERO};

use super::{
    canonical, close, negated, Axis, Configuration, GameKind, Move, MoveKind, PointGame,
    PointGroup, WeightedPoint,
};

/// Rule violations found by [`verify_move`]; empty when the move is valid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MoveCheck {
    pub violations: Vec<String>,
}

impl MoveCheck {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_point(p: &WeightedPoint) -> Result<()> {
    if !(p.w.is_finite() && p.x.is_finite() && p.y.is_finite())
        || p.w < -EPS_ZERO
        || p.x < 0.0
        || p.y < 0.0
    {
        return Err(Error::MalformedMove(format!("bad point {p:?}")));
    }
    Ok(())
}

fn check_arity(kind: MoveKind, g: &PointGroup) -> Result<()> {
    let (s, t) = (g.sources.len(), g.targets.len());
    let ok = match kind {
        MoveKind::Merge | MoveKind::ProbMerge => s >= 1 && t == 1,
        MoveKind::Split | MoveKind::ProbSplit => s == 1 && t >= 1,
        MoveKind::Raise | MoveKind::Align => s >= 1 && s == t,
    };
    if !ok {
        return Err(Error::MalformedMove(format!(
            "{kind:?} with {s} sources and {t} targets"
        )));
    }
    Ok(())
}

fn weight(points: &[WeightedPoint]) -> f64 {
    points.iter().map(|p| p.w).sum()
}

fn positive(points: &[WeightedPoint]) -> impl Iterator<Item = &WeightedPoint> {
    points.iter().filter(|p| p.w > EPS_ZERO)
}

/// Rule violations of one group; empty groups are trivially fine.
fn group_rule(kind: MoveKind, axis: Axis, game: GameKind, g: &PointGroup) -> Option<String> {
    let (ws, wt) = (weight(&g.sources), weight(&g.targets));
    if (ws - wt).abs() > EPS_PG {
        return Some(format!("weight {ws} becomes {wt}"));
    }
    if ws <= EPS_ZERO {
        return None;
    }
    if matches!(kind, MoveKind::Raise | MoveKind::Align) {
        for (s, t) in g.sources.iter().zip(&g.targets) {
            if (s.w - t.w).abs() > EPS_PG {
                return Some(format!("raise changes weight {} to {}", s.w, t.w));
            }
            if s.w <= EPS_ZERO {
                continue;
            }
            if !close(s.other(axis), t.other(axis)) {
                return Some(format!("raise moves the fixed coordinate of {s:?}"));
            }
            if t.coord(axis) < s.coord(axis) && !close(t.coord(axis), s.coord(axis)) {
                return Some(format!("{s:?} lowered to {}", t.coord(axis)));
            }
        }
        if kind == MoveKind::Align {
            let mut tops = positive(&g.targets).map(|t| t.coord(axis));
            if let Some(first) = tops.next() {
                if tops.any(|c| !close(c, first)) {
                    return Some("aligned points end at different coordinates".into());
                }
            }
        }
        return None;
    }

    let all: Vec<&WeightedPoint> = positive(&g.sources).chain(positive(&g.targets)).collect();
    let fixed = all[0].other(axis);
    if all.iter().any(|p| !close(p.other(axis), fixed)) {
        return Some("points do not share the fixed coordinate".into());
    }
    let mean =
        |ps: &[WeightedPoint]| positive(ps).map(|p| p.w * p.coord(axis)).sum::<f64>() / weight(ps);
    match kind {
        MoveKind::Merge => {
            let (m, c) = (mean(&g.sources), g.targets[0].coord(axis));
            (!close(m, c)).then(|| format!("merge lands at {c}, weighted mean is {m}"))
        }
        MoveKind::ProbMerge | MoveKind::ProbSplit => {
            let c = all[0].coord(axis);
            all.iter()
                .any(|p| !close(p.coord(axis), c))
                .then(|| format!("{kind:?} changes a coordinate"))
        }
        MoveKind::Split => {
            let c = g.sources[0].coord(axis);
            if game == GameKind::Classical && positive(&g.targets).any(|t| !close(t.coord(axis), c))
            {
                return Some("point split in a classical game".into());
            }
            let inv: f64 = positive(&g.targets)
                .map(|t| {
                    if t.coord(axis) > 0.0 {
                        t.w / t.coord(axis)
                    } else {
                        f64::INFINITY
                    }
                })
                .sum();
            let harmonic = wt / inv;
            (c > harmonic + EPS_PG)
                .then(|| format!("split source {c} exceeds harmonic mean {harmonic}"))
        }
        MoveKind::Raise | MoveKind::Align => unreachable!(),
    }
}

/// Check that `mv` turns `before` into `after`.
///
/// Points outside the move must be carried over unchanged and each group
/// must obey its rule on `mv.axis`. A source that `before` does not contain
/// is a structural error, not a rule violation.
pub fn verify_move(
    before: &Configuration,
    after: &Configuration,
    mv: &Move,
    game: GameKind,
) -> Result<MoveCheck> {
    for g in &mv.groups {
        check_arity(mv.kind, g)?;
        g.sources
            .iter()
            .chain(&g.targets)
            .try_for_each(check_point)?;
    }
    let sources = mv.groups.iter().flat_map(|g| &g.sources);
    let remaining = canonical(
        before
            .points
            .iter()
            .copied()
            .chain(sources.clone().map(negated)),
    );
    if let Some(p) = remaining.iter().find(|p| p.w < -EPS_PG) {
        return Err(Error::MalformedMove(format!(
            "source weight {} at ({}, {}) not present",
            -p.w, p.x, p.y
        )));
    }

    let mut check = MoveCheck::default();
    let targets = mv.groups.iter().flat_map(|g| g.targets.iter().copied());
    let residual = canonical(
        remaining
            .into_iter()
            .chain(targets)
            .chain(after.points.iter().map(negated)),
    );
    if let Some(p) = residual.iter().find(|p| p.w.abs() > EPS_PG) {
        check.violations.push(format!(
            "configuration mismatch of weight {} at ({}, {})",
            p.w, p.x, p.y
        ));
    }
    for (i, g) in mv.groups.iter().enumerate() {
        if let Some(v) = group_rule(mv.kind, mv.axis, game, g) {
            check.violations.push(format!("group {i}: {v}"));
        }
    }
    Ok(check)
}

fn invalid(transition: usize, reason: impl Into<String>) -> Error {
    Error::InvalidTransition {
        transition,
        reason: reason.into(),
    }
}

/// Replay every transition. Transition `i` is `moves[i]`; the start and end
/// conditions are reported as transition 0 and `moves.len()`.
pub fn validate(game: &PointGame) -> Result<()> {
    if game.configurations.len() != game.moves.len() + 1 {
        return Err(Error::MalformedMove(format!(
            "{} configurations for {} moves",
            game.configurations.len(),
            game.moves.len()
        )));
    }
    let start = Configuration::start().canonical();
    if game.configurations[0].canonical() != start {
        return Err(invalid(0, "does not start at ½(1,0) + ½(0,1)"));
    }
    for (i, mv) in game.moves.iter().enumerate() {
        let (before, after) = (&game.configurations[i], &game.configurations[i + 1]);
        let total = after.total_weight();
        if (total - 1.0).abs() > EPS_PG {
            return Err(invalid(i, format!("total weight {total}")));
        }
        let check = verify_move(before, after, mv, game.kind)?;
        if !check.is_valid() {
            return Err(invalid(i, check.violations.join("; ")));
        }
    }
    match game
        .configurations
        .last()
        .expect("nonempty")
        .canonical()
        .points
        .as_slice()
    {
        [p] if (p.w - 1.0).abs() <= EPS_PG => Ok(()),
        pts => Err(invalid(
            game.moves.len(),
            format!("ends with {} points", pts.len()),
        )),
    }
}

/// In a valid classical game one coordinate of the final point is at least 1.
///
/// Refuses quantum games and games that fail [`validate`].
pub fn classical_final_point_theorem(game: &PointGame) -> Result<bool> {
    if game.kind != GameKind::Classical {
        return Err(Error::Domain("not a classical game".into()));
    }
    validate(game)?;
    let (zb, za) = game.final_point().expect("validated");
    Ok(zb.max(za) >= 1.0 - EPS_PG)
}
