use std::io::Write;

use bccf::quantum::{alice_dual_levels, bob_dual_levels};
use bccf::{
    analyze, build_classical_game, build_game_pair, build_quantum_game, classical_alice_dual,
    classical_bob_dual, classical_final_point_theorem, eval_dual_alice, eval_dual_bob, AliceDual,
    AnalysisOptions, BccfProtocol, BobDual, DualCertificate, MoveKind, Outcome, Party,
};

use crate::commands::format_report;
use crate::failure::{self, Failure};

const TOL: f64 = 1e-6;

struct Goldens<'a> {
    out: &'a mut dyn Write,
    failed: Vec<String>,
}

impl Goldens<'_> {
    fn check(&mut self, name: &str, ok: bool, detail: String) -> std::io::Result<()> {
        if ok {
            writeln!(self.out, "PASS {name}")
        } else {
            writeln!(self.out, "FAIL {name}: {detail}")?;
            self.failed.push(name.to_string());
            Ok(())
        }
    }

    fn close(&mut self, name: &str, got: &[f64], want: &[f64], tol: f64) -> std::io::Result<()> {
        let ok = got.len() == want.len() && got.iter().zip(want).all(|(g, w)| (g - w).abs() <= tol);
        self.check(name, ok, format!("got {got:?}, want {want:?}"))
    }
}

fn paper_duals() -> ([BobDual; 2], [AliceDual; 2]) {
    let (v0, v1) = (vec![0.75, 0.0, 1.5], vec![0.75, 1.5, 0.0]);
    let bob = [
        BobDual {
            outcome: Outcome::Zero,
            v: [v1.clone(), v0.clone()],
        },
        BobDual {
            outcome: Outcome::One,
            v: [v0, v1],
        },
    ];
    let z = vec![0.25, 0.25, 0.25, 0.0, 0.0, 0.0];
    let alice = Outcome::BOTH.map(|outcome| AliceDual {
        outcome,
        z: z.clone(),
    });
    (bob, alice)
}

pub fn three_quarters(out: &mut dyn Write) -> Result<(), Failure> {
    let proto = BccfProtocol::three_quarters();
    let report = analyze(&proto, &AnalysisOptions::default())?;
    out.write_all(format_report(&proto, &report).as_bytes())?;
    writeln!(out)?;
    let mut g = Goldens {
        out,
        failed: Vec::new(),
    };

    let q = report.quantum.as_ref().expect("quantum mode");
    let quantum = [q.primal.alice, q.primal.bob].concat();
    g.close("quantum values 3/4", &quantum, &[0.75; 4], TOL)?;
    g.check(
        "quantum solves converged",
        report.converged(),
        report.diagnostics.join("; "),
    )?;
    let c = report.classical.as_ref().expect("classical mode");
    g.close(
        "classical values",
        &[c.values.alice, c.values.bob].concat(),
        &[0.75, 0.75, 1.0, 1.0],
        1e-12,
    )?;
    g.check(
        "classical perfect cheater is bob",
        c.perfect_cheater == Party::Bob,
        format!("{:?}", c.perfect_cheater),
    )?;
    match report.kitaev {
        Some(k) => {
            g.close("kitaev products 0.5625", &k.certified, &[0.5625; 2], TOL)?;
            g.check(
                "kitaev products >= 1/2",
                k.pass,
                format!("{:?}", k.certified),
            )?;
        }
        None => g.check("kitaev products 0.5625", false, "check skipped".into())?,
    }
    let cor = report.corollary.expect("quantum mode");
    g.check(
        "max value above 1/√2",
        cor.pass,
        format!("{}", cor.max_dual),
    )?;

    let (bob, alice) = paper_duals();
    for d in &bob {
        let name = format!("paper bob dual for outcome {} bounds 3/4", d.outcome.bit());
        match eval_dual_bob(&proto, d) {
            Ok(v) => g.close(&name, &[v], &[0.75], 1e-12)?,
            Err(e) => g.check(&name, false, e.to_string())?,
        }
    }
    let w = bob_dual_levels(&proto, &bob[1])?;
    g.close("paper w1 = [3/4, 0]", &w[0], &[0.75, 0.0], 1e-12)?;
    for d in &alice {
        let name = format!("paper alice dual for outcome {}: z1 = 3/4", d.outcome.bit());
        match alice_dual_levels(&proto, d) {
            Ok(levels) => g.close(&name, &levels[0], &[0.75], 1e-12)?,
            Err(e) => g.check(&name, false, e.to_string())?,
        }
    }
    for s in &q.solves {
        let paper = match &s.dual_certificate {
            DualCertificate::Bob(d) => eval_dual_bob(&proto, &bob[d.outcome.bit()])?,
            DualCertificate::Alice(d) => eval_dual_alice(&proto, &alice[d.outcome.bit()])?,
        };
        let name = format!(
            "solver dual for {}→{} matches paper bound",
            if s.party == Party::Alice {
                "alice"
            } else {
                "bob"
            },
            s.outcome.bit()
        );
        g.close(&name, &[s.dual_value], &[paper], TOL)?;
    }

    let game = build_quantum_game(&proto, &bob[1], &alice[0])?;
    let short = game.compressed();
    bccf::validate(&short)?;
    let schedule: Vec<(MoveKind, bccf::Axis)> =
        short.moves.iter().map(|m| (m.kind, m.axis)).collect();
    use bccf::Axis::{Horizontal as H, Vertical as V};
    use MoveKind::{Merge, Raise, Split};
    let want = [
        (Split, H),
        (Raise, H),
        (Merge, V),
        (Raise, V),
        (Merge, H),
        (Merge, V),
    ];
    g.check(
        "point game has the six-transition schedule",
        schedule == want,
        format!("{schedule:?}"),
    )?;
    let (zb, za) = short.final_point().expect("validated");
    g.close("point game final point", &[zb, za], &[0.75, 0.75], 1e-9)?;

    let pair = build_game_pair(
        &proto,
        bccf::GameKind::Quantum,
        [&bob[0], &bob[1]],
        [&alice[0], &alice[1]],
    )?;
    g.close(
        "point game pair final point",
        &pair.final_point,
        &[0.75; 4],
        1e-9,
    )?;

    let classical = build_classical_game(
        &proto,
        &classical_bob_dual(&proto, Outcome::One),
        &classical_alice_dual(&proto, Outcome::Zero),
    )?;
    let (zb, za) = classical.final_point().expect("validated");
    g.close(
        "classical point game final point",
        &[zb, za],
        &[1.0, 0.75],
        1e-9,
    )?;
    g.check(
        "classical final point has a coordinate at 1",
        classical_final_point_theorem(&classical)?,
        format!("({zb}, {za})"),
    )?;

    if g.failed.is_empty() {
        writeln!(g.out, "all checks passed")?;
        Ok(())
    } else {
        Err(Failure::new(
            failure::GOLDEN,
            format!("golden mismatch: {}", g.failed.join(", ")),
        ))
    }
}
