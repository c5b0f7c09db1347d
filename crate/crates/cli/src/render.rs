//! Text and JSON renderings of a solve report. Both are pure functions of
//! the report, so output bytes are reproducible.

use crate::RenderConfig;
use rpie::galois::GaloisInfo;
use rpie::game::Game;
use rpie::numberfield::{CoordinateJson, NFElement, NumberField};
use rpie::solver::{Equilibrium, SolveReport, SolveStats};
use serde::Serialize;
use std::fmt::Write;
use std::sync::Arc;

#[derive(Serialize)]
struct FieldJson {
    degree: usize,
    /// Absent for the rationals.
    #[serde(skip_serializing_if = "Option::is_none")]
    minpoly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<String>,
}

#[derive(Serialize)]
struct PlayerJson {
    player: usize,
    coords: Vec<CoordinateJson>,
}

#[derive(Serialize)]
struct EquilibriumJson {
    field: FieldJson,
    profile: Vec<PlayerJson>,
}

#[derive(Serialize)]
struct EliminantJson<'a> {
    variable: &'a str,
    poly: String,
    galois: &'a GaloisInfo,
}

#[derive(Serialize)]
struct StatsJson<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    orbit: Option<&'a SolveStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    naive: Option<&'a SolveStats>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    rpie_verdict: String,
    variable_order: String,
    equilibria: Vec<EquilibriumJson>,
    eliminants: Vec<EliminantJson<'a>>,
    stats: StatsJson<'a>,
}

fn field_json(f: &Arc<NumberField>, digits: usize) -> FieldJson {
    let rational = f.degree() == 1;
    FieldJson {
        degree: f.degree(),
        minpoly: (!rational).then(|| f.modulus().to_string_var("θ")),
        theta: (!rational).then(|| NFElement::theta(f).approx_decimal(digits)),
    }
}

pub fn json(_game: &Game, r: &SolveReport, cfg: &RenderConfig) -> String {
    let equilibria = r
        .equilibria
        .iter()
        .map(|e| EquilibriumJson {
            field: field_json(&e.field, cfg.digits),
            profile: e
                .profile
                .iter()
                .enumerate()
                .map(|(i, p)| PlayerJson {
                    player: i + 1,
                    coords: p.iter().map(|c| CoordinateJson::new(c, cfg.digits, cfg.radicals)).collect(),
                })
                .collect(),
        })
        .collect();
    let eliminants = r
        .eliminants
        .iter()
        .map(|el| EliminantJson {
            variable: &el.variable,
            poly: el.poly.to_string_var(&el.variable),
            galois: &el.galois,
        })
        .collect();
    let out = ReportJson {
        rpie_verdict: r.verdict.to_string(),
        variable_order: r.system.ring().order_string(),
        equilibria,
        eliminants,
        stats: StatsJson {
            orbit: r.orbit_stats.as_ref(),
            naive: r.naive_stats.as_ref(),
        },
    };
    let mut s = serde_json::to_string_pretty(&out).expect("serializable");
    s.push('\n');
    s
}

fn strategy_name(game: &Game, i: usize, j: usize) -> String {
    match game.labels() {
        Some(l) => l[i][j].clone(),
        None => Game::var_name(i, j),
    }
}

fn coordinate(c: &NFElement, cfg: &RenderConfig) -> String {
    let dec = c.approx_decimal(cfg.digits);
    if let Some(r) = c.is_rational() {
        return rpie::rational::fmt_q(&r);
    }
    match c.to_radical().filter(|_| cfg.radicals) {
        Some(rad) => format!("{rad} ≈ {dec}"),
        None => format!("≈ {dec}"),
    }
}

fn equilibrium(out: &mut String, game: &Game, e: &Equilibrium, cfg: &RenderConfig) {
    for (i, p) in e.profile.iter().enumerate() {
        let parts: Vec<String> = p
            .iter()
            .enumerate()
            .map(|(j, c)| format!("{} = {}", strategy_name(game, i, j), coordinate(c, cfg)))
            .collect();
        let _ = writeln!(out, "  player {}: {}", i + 1, parts.join(", "));
    }
}

fn stats_block(out: &mut String, name: &str, s: &SolveStats) {
    let _ = writeln!(out, "stats ({name}):");
    let rows = [
        ("buchberger calls", s.buchberger_calls),
        ("factorizations", s.univariate_factorizations),
        ("  during sampling", s.sampling.factorizations),
        ("  after sampling", s.orbit.factorizations),
        ("substitutions", s.substitutions),
        ("  during sampling", s.sampling.substitutions),
        ("  after sampling", s.orbit.substitutions),
        ("orbit actions", s.orbit_actions),
        ("candidates", s.candidates_generated),
        ("rejected rational", s.candidates_rejected_rational),
        ("rejected complex", s.candidates_rejected_complex),
        ("rejected not Nash", s.candidates_rejected_not_nash),
        ("S-pairs reduced", s.groebner.pairs_reduced),
    ];
    for (k, v) in rows {
        let _ = writeln!(out, "  {k:<20} {v}");
    }
}

pub fn text(game: &Game, r: &SolveReport, cfg: &RenderConfig) -> String {
    let mut out = String::new();
    let counts: Vec<String> = game.strategies().iter().map(|k| k.to_string()).collect();
    let _ = writeln!(out, "game: {} players, strategies {}", game.players(), counts.join("x"));
    let _ = writeln!(out, "order: {}", r.system.ring().order_string());
    let _ = writeln!(out, "Gröbner basis ({} elements):", r.gb.polys.len());
    for p in &r.gb.polys {
        let _ = writeln!(out, "  {p}");
    }
    for el in &r.eliminants {
        let g = &el.galois;
        let solv = match g.solvable {
            Some(true) => "solvable",
            Some(false) => "not solvable",
            None => "solvability unknown",
        };
        let _ = writeln!(
            out,
            "eliminant factor in {}: {}  [group {}, {solv}, {} real root(s)]",
            el.variable,
            el.poly.to_string_var(&el.variable),
            g.group,
            g.real_roots
        );
    }
    let names = r.system.ring().names();
    for s in &r.samples {
        let v = r.system.ring().nvars() - 1;
        let _ = writeln!(out, "sample: {} = {}", names[v], coordinate(&s.coords[v], cfg));
    }
    let _ = writeln!(out, "real solutions of the game system: {}", r.solutions.len());
    let _ = writeln!(out, "totally mixed equilibria: {}", r.equilibria.len());
    for (k, e) in r.equilibria.iter().enumerate() {
        let _ = writeln!(out, "equilibrium {}:", k + 1);
        equilibrium(&mut out, game, e, cfg);
    }
    let _ = writeln!(out, "verdict: {}", r.verdict);
    if cfg.stats {
        if let Some(s) = &r.orbit_stats {
            stats_block(&mut out, "orbit", s);
        }
        if let Some(s) = &r.naive_stats {
            stats_block(&mut out, "naive", s);
        }
    }
    out
}
