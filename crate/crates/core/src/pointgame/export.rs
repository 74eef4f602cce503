use std::fmt::Write;

use serde::Serialize;

use super::{Axis, GameKind, Move, MoveKind, PointGame, WeightedPoint};

#[derive(Serialize)]
struct MoveJson {
    kind: MoveKind,
    axis: Axis,
}

#[derive(Serialize)]
struct GameJson<'a> {
    kind: GameKind,
    configurations: Vec<&'a [WeightedPoint]>,
    moves: Vec<MoveJson>,
    #[serde(rename = "final")]
    final_point: Option<[f64; 2]>,
}

const PANEL: f64 = 220.0;
const MARGIN: f64 = 30.0;
const PER_ROW: usize = 4;

impl Move {
    /// For example `"horizontal split"`.
    pub fn label(&self) -> String {
        label(self.kind, self.axis)
    }
}

fn label(kind: MoveKind, axis: Axis) -> String {
    let axis = match axis {
        Axis::Horizontal => "horizontal",
        Axis::Vertical => "vertical",
    };
    let kind = match kind {
        MoveKind::Raise => "raise",
        MoveKind::Merge => "merge",
        MoveKind::Split => "split",
        MoveKind::ProbSplit => "prob. split",
        MoveKind::ProbMerge => "prob. merge",
        MoveKind::Align => "align",
    };
    format!("{axis} {kind}")
}

impl PointGame {
    /// `{"kind", "configurations": [[{"w","x","y"}…]…], "moves": [{"kind","axis"}…], "final": [ζ_B, ζ_A]}`.
    pub fn to_json(&self) -> String {
        let doc = GameJson {
            kind: self.kind,
            configurations: self
                .configurations
                .iter()
                .map(|c| c.points.as_slice())
                .collect(),
            moves: self
                .moves
                .iter()
                .map(|m| MoveJson {
                    kind: m.kind,
                    axis: m.axis,
                })
                .collect(),
            final_point: self.final_point().map(|(b, a)| [b, a]),
        };
        serde_json::to_string_pretty(&doc).expect("plain data serializes")
    }

    /// One panel per configuration; disc area is proportional to weight.
    /// Both axes run from 0 to the largest coordinate in the game.
    pub fn to_svg(&self) -> String {
        let top = self
            .configurations
            .iter()
            .map(|c| c.max_coord())
            .fold(1.0, f64::max);
        let panels = self.configurations.len();
        let cols = panels.min(PER_ROW);
        let rows = panels.div_ceil(PER_ROW);
        let cell = PANEL + 2.0 * MARGIN;
        let (width, height) = (cols as f64 * cell, rows as f64 * cell);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
        );
        let _ = writeln!(
            s,
            r#"<rect width="{width}" height="{height}" fill="white"/>"#
        );
        for (i, config) in self.configurations.iter().enumerate() {
            let ox = (i % PER_ROW) as f64 * cell + MARGIN;
            let oy = (i / PER_ROW) as f64 * cell + MARGIN;
            let title = match i {
                0 => "start".to_string(),
                _ => {
                    format!("{i}: {}", self.moves[i - 1].label())
                }
            };
            let _ = writeln!(s, r#"<g transform="translate({ox},{oy})">"#);
            let _ = writeln!(s, r#"<text x="0" y="-10">{title}</text>"#);
            let _ = writeln!(
                s,
                r#"<path d="M0,0 V{PANEL} H{PANEL}" fill="none" stroke="black" stroke-width="1"/>"#
            );
            let _ = writeln!(
                s,
                r#"<text x="0" y="{}" text-anchor="middle">0</text>"#,
                PANEL + 14.0
            );
            let _ = writeln!(
                s,
                r#"<text x="{PANEL}" y="{}" text-anchor="end">{}</text>"#,
                PANEL + 14.0,
                fmt_coord(top)
            );
            let _ = writeln!(
                s,
                r#"<text x="-4" y="4" text-anchor="end">{}</text>"#,
                fmt_coord(top)
            );
            for p in config.canonical().points {
                let cx = p.x / top * PANEL;
                let cy = PANEL - p.y / top * PANEL;
                let r = 18.0 * p.w.sqrt();
                let _ = writeln!(
                    s,
                    r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{r:.3}" fill="steelblue" fill-opacity="0.7"><title>{:.4} at ({}, {})</title></circle>"#,
                    p.w,
                    fmt_coord(p.x),
                    fmt_coord(p.y)
                );
            }
            let _ = writeln!(s, "</g>");
        }
        s.push_str("</svg>\n");
        s
    }
}

fn fmt_coord(v: f64) -> String {
    let s = format!("{v:.4}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}
