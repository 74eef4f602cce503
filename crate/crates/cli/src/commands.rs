use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use bccf::analysis::CorollaryCheck;
use bccf::{
    analyze as run_analysis, build_classical_game, build_game_pair, build_quantum_game,
    classical_alice_dual, classical_bob_dual, classical_final_point_theorem, eval_dual_alice,
    eval_dual_bob, solve_quantum, validate as replay, AliceDual, AnalysisOptions, BccfProtocol,
    BiasReport, BobDual, CheatValues, DualCertificate, Execution, GameKind, Mode, Outcome, Party,
    PointGame, QuantumSolution, SolveOptions,
};

use crate::failure::{self, Failure};

/// Distance allowed between a game's final point and the duals it was built from.
const FINAL_TOL: f64 = 1e-6;

pub fn load(path: &Path) -> Result<BccfProtocol, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    Ok(BccfProtocol::from_json(&text)?)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
    }
    fs::write(path, contents).map_err(|e| Failure::io(path, e))
}

pub fn validate(path: &Path, out: &mut dyn Write) -> Result<(), Failure> {
    let proto = load(path)?;
    writeln!(out, "{}", proto.to_json())?;
    Ok(())
}

fn describe(proto: &BccfProtocol) -> String {
    let s = proto.shape();
    format!(
        "rounds {}, alice dims {:?}, bob dims {:?}",
        s.rounds(),
        s.alice_dims(),
        s.bob_dims()
    )
}

fn pair_line(label: &str, v: &CheatValues) -> String {
    format!(
        "{label:<18} alice→0 {:.9}  alice→1 {:.9}  bob→0 {:.9}  bob→1 {:.9}",
        v.alice[0], v.alice[1], v.bob[0], v.bob[1]
    )
}

fn party(p: Party) -> &'static str {
    match p {
        Party::Alice => "alice",
        Party::Bob => "bob",
    }
}

pub fn format_report(proto: &BccfProtocol, r: &BiasReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "protocol: {}", describe(proto));
    let [p0, p1, abort] = r.honest_outcomes;
    let _ = writeln!(
        s,
        "honest outcome: P[0] {p0:.6}  P[1] {p1:.6}  P[abort] {abort:.6}"
    );
    if let Some(c) = &r.classical {
        let _ = writeln!(s, "{}", pair_line("classical", &c.values));
        let _ = writeln!(
            s,
            "classical bias {:.9}, perfect cheater {}",
            c.bias,
            party(c.perfect_cheater)
        );
    }
    if let Some(q) = &r.quantum {
        let _ = writeln!(s, "{}", pair_line("quantum (primal)", &q.primal));
        let _ = writeln!(s, "{}", pair_line("quantum (dual)", &q.dual));
        for solve in &q.solves {
            let _ = writeln!(
                s,
                "  {}→{}: gap {:.2e} after {} iterations{}",
                party(solve.party),
                solve.outcome.bit(),
                solve.gap,
                solve.iterations,
                if solve.converged {
                    ""
                } else {
                    " (not converged)"
                }
            );
        }
        let _ = writeln!(s, "quantum bias {:.9}", q.bias);
    }
    if let Some(k) = &r.kitaev {
        let _ = writeln!(
            s,
            "kitaev products (dual): c=0 {:.9}  c=1 {:.9}  {}",
            k.certified[0],
            k.certified[1],
            verdict(k.pass)
        );
    }
    if let Some(sat) = &r.saturation {
        let _ = writeln!(
            s,
            "saturation: {}, max |quantum - classical| {:.2e}",
            if sat.saturated {
                "saturated"
            } else {
                "not saturated"
            },
            sat.max_deviation
        );
    }
    if let Some(CorollaryCheck {
        max_dual,
        threshold,
        pass,
        ..
    }) = r.corollary
    {
        let _ = writeln!(
            s,
            "max quantum value {max_dual:.9} vs 1/√2 {threshold:.9}  {}",
            verdict(pass)
        );
    }
    for d in &r.diagnostics {
        let _ = writeln!(s, "note: {d}");
    }
    s
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn theorem_failures(r: &BiasReport) -> Vec<&'static str> {
    let mut bad = Vec::new();
    if r.kitaev.is_some_and(|k| !k.pass) {
        bad.push("kitaev product below 1/2");
    }
    if r.corollary.is_some_and(|c| !c.pass) {
        bad.push("every quantum value below 1/√2");
    }
    if r.saturation
        .is_some_and(|s| s.saturated && !s.classical_match)
    {
        bad.push("saturated protocol with quantum values differing from classical");
    }
    bad
}

pub fn analyze(
    path: &Path,
    mode: Mode,
    json: Option<&Path>,
    solve: SolveOptions,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let proto = load(path)?;
    let opts = AnalysisOptions {
        mode,
        solve,
        exec: Execution::default(),
    };
    let report = run_analysis(&proto, &opts)?;
    out.write_all(format_report(&proto, &report).as_bytes())?;
    if let Some(file) = json {
        let doc = serde_json::json!({
            "protocol": proto.to_file(),
            "mode": mode,
            "seed": solve.seed,
            "max_iter": solve.max_iter,
            "report": report,
        });
        write_file(
            file,
            &(serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"),
        )?;
    }
    if !report.converged() {
        return Err(Failure::new(
            failure::UNCONVERGED,
            format!(
                "a quantum solve did not converge; {}",
                report.diagnostics.join("; ")
            ),
        ));
    }
    let bad = theorem_failures(&report);
    if !bad.is_empty() {
        return Err(Failure::new(failure::THEOREM, bad.join("; ")));
    }
    Ok(())
}

pub struct PointgameArgs {
    pub kind: GameKind,
    pub pair: bool,
    pub literal: bool,
    pub svg: Option<PathBuf>,
    pub json: Option<PathBuf>,
    pub solve: SolveOptions,
}

struct Duals {
    bob: [BobDual; 2],
    alice: [AliceDual; 2],
    /// Primal values from the solver, `None` for classical duals.
    primal: Option<CheatValues>,
    unconverged: Vec<String>,
}

fn solved_duals(proto: &BccfProtocol, opts: &SolveOptions) -> Result<Duals, Failure> {
    let solutions: Vec<QuantumSolution> = Execution::default()
        .map(&bccf::classical::ALL_PAIRS, |&(p, o)| {
            solve_quantum(proto, p, o, opts)
        })
        .into_iter()
        .collect::<bccf::Result<_>>()?;
    let mut bob = Vec::new();
    let mut alice = Vec::new();
    for s in &solutions {
        match &s.dual {
            DualCertificate::Bob(d) => bob.push(d.clone()),
            DualCertificate::Alice(d) => alice.push(d.clone()),
        }
    }
    bob.sort_by_key(|d| d.outcome.bit());
    alice.sort_by_key(|d| d.outcome.bit());
    let value = |p, o: Outcome| {
        solutions
            .iter()
            .find(|s| s.party == p && s.outcome == o)
            .map_or(f64::NAN, |s| s.primal_value)
    };
    Ok(Duals {
        bob: bob.try_into().expect("two bob duals"),
        alice: alice.try_into().expect("two alice duals"),
        primal: Some(CheatValues {
            alice: [
                value(Party::Alice, Outcome::Zero),
                value(Party::Alice, Outcome::One),
            ],
            bob: [
                value(Party::Bob, Outcome::Zero),
                value(Party::Bob, Outcome::One),
            ],
        }),
        unconverged: solutions
            .iter()
            .filter(|s| !s.converged)
            .map(|s| format!("{}→{} gap {:.2e}", party(s.party), s.outcome.bit(), s.gap))
            .collect(),
    })
}

fn classical_duals(proto: &BccfProtocol) -> Duals {
    Duals {
        bob: Outcome::BOTH.map(|o| classical_bob_dual(proto, o)),
        alice: Outcome::BOTH.map(|o| classical_alice_dual(proto, o)),
        primal: None,
        unconverged: Vec::new(),
    }
}

fn check_final(got: f64, want: f64, what: &str) -> Result<(), Failure> {
    if (got - want).abs() > FINAL_TOL {
        return Err(Failure::new(
            failure::POINT_GAME,
            format!("final {what} coordinate {got} does not match dual value {want}"),
        ));
    }
    Ok(())
}

fn format_game(title: &str, game: &PointGame) -> String {
    let mut s = format!("{title}: {} transitions\n", game.moves.len());
    for (i, m) in game.moves.iter().enumerate() {
        let _ = writeln!(s, "  {}: {}", i + 1, m.label());
    }
    if let Some((zb, za)) = game.final_point() {
        let _ = writeln!(s, "  final point ({zb:.9}, {za:.9})");
    }
    s
}

pub fn pointgame(path: &Path, args: &PointgameArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let proto = load(path)?;
    let duals = match args.kind {
        GameKind::Quantum => solved_duals(&proto, &args.solve)?,
        GameKind::Classical => classical_duals(&proto),
    };
    let build = match args.kind {
        GameKind::Quantum => build_quantum_game,
        GameKind::Classical => build_classical_game,
    };

    let swapped = proto.swapped_betas();
    let mut games = vec![(
        "bob→1 vs alice→0",
        build(&proto, &duals.bob[1], &duals.alice[0])?,
    )];
    check_final(
        games[0].1.final_point().expect("validated").0,
        eval_dual_bob(&proto, &duals.bob[1])?,
        "bob",
    )?;
    check_final(
        games[0].1.final_point().expect("validated").1,
        eval_dual_alice(&proto, &duals.alice[0])?,
        "alice",
    )?;
    let mut combined = None;
    if args.pair {
        let pair = build_game_pair(
            &proto,
            args.kind,
            [&duals.bob[0], &duals.bob[1]],
            [&duals.alice[0], &duals.alice[1]],
        )?;
        let want = [
            eval_dual_bob(
                &swapped,
                &BobDual {
                    outcome: Outcome::One,
                    v: duals.bob[0].v.clone(),
                },
            )?,
            eval_dual_bob(&proto, &duals.bob[1])?,
            eval_dual_alice(&proto, &duals.alice[0])?,
            eval_dual_alice(
                &swapped,
                &AliceDual {
                    outcome: Outcome::Zero,
                    z: duals.alice[1].z.clone(),
                },
            )?,
        ];
        for (i, (&got, &want)) in pair.final_point.iter().zip(&want).enumerate() {
            check_final(got, want, ["bob→0", "bob→1", "alice→0", "alice→1"][i])?;
        }
        if let Some(v) = duals.primal {
            let primal = [v.bob[0], v.bob[1], v.alice[0], v.alice[1]];
            if let Some(i) = (0..4).find(|&i| pair.final_point[i] < primal[i] - FINAL_TOL) {
                return Err(Failure::new(
                    failure::POINT_GAME,
                    format!(
                        "pair coordinate {i} = {} is below the primal value {}",
                        pair.final_point[i], primal[i]
                    ),
                ));
            }
        }
        combined = Some(pair.final_point);
        games = vec![
            ("bob→1 vs alice→0", pair.first),
            ("bob→0 vs alice→1", pair.second),
        ];
    }

    if !args.literal {
        games = games
            .into_iter()
            .map(|(t, g)| (t, g.compressed()))
            .collect();
    }
    for (_, g) in &games {
        replay(g)?;
        if g.kind == GameKind::Classical && !classical_final_point_theorem(g)? {
            return Err(Failure::new(
                failure::THEOREM,
                format!(
                    "classical game ends at {:?} with both coordinates below 1",
                    g.final_point()
                ),
            ));
        }
    }

    for (title, g) in &games {
        out.write_all(format_game(title, g).as_bytes())?;
    }
    if let Some(f) = combined {
        writeln!(
            out,
            "pair final point (ζB0, ζB1, ζA0, ζA1) = ({:.9}, {:.9}, {:.9}, {:.9})",
            f[0], f[1], f[2], f[3]
        )?;
    }

    if let Some(file) = &args.json {
        let text = if let Some(f) = combined {
            let parsed: Vec<serde_json::Value> = games
                .iter()
                .map(|(_, g)| serde_json::from_str(&g.to_json()).expect("own output parses"))
                .collect();
            serde_json::to_string_pretty(&serde_json::json!({ "final": f, "games": parsed }))
                .expect("serializes")
        } else {
            games[0].1.to_json()
        };
        write_file(file, &(text + "\n"))?;
    }
    if let Some(dir) = &args.svg {
        fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
        for (i, (_, g)) in games.iter().enumerate() {
            let name = if games.len() == 1 {
                "pointgame.svg".to_string()
            } else {
                format!("pointgame-{}.svg", i + 1)
            };
            write_file(&dir.join(name), &g.to_svg())?;
        }
    }
    if !duals.unconverged.is_empty() {
        return Err(Failure::new(
            failure::UNCONVERGED,
            format!(
                "games were built from unconverged duals: {}",
                duals.unconverged.join(", ")
            ),
        ));
    }
    Ok(())
}
