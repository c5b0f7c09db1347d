use clap::{Parser, ValueEnum};
use rpie::gamefile::parse_game_file;
use rpie::solver::{solve, Method, SolveError, SolveOptions, DEFAULT_MAX_VARS};
use std::path::PathBuf;
use std::process::ExitCode;

mod render;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Orbit,
    Naive,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Exact totally mixed Nash equilibria of games with rational payoffs.
#[derive(Debug, Parser)]
#[command(name = "rpie", version)]
struct Cli {
    /// Game file (JSON).
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::Orbit)]
    method: MethodArg,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Decimal digits after the point.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..=200))]
    digits: u32,
    /// Render coordinates by radicals where possible (default).
    #[arg(long, overrides_with = "no_radicals")]
    radicals: bool,
    #[arg(long)]
    no_radicals: bool,
    /// Report solver counters; wall times go to standard error.
    #[arg(long)]
    stats: bool,
    /// Variable order, least first, comma separated (e.g. x1_1,x1_2,x2_1,...).
    #[arg(long, value_delimiter = ',')]
    order: Option<Vec<String>>,
    /// Largest number of mixing variables accepted.
    #[arg(long, default_value_t = DEFAULT_MAX_VARS)]
    max_vars: usize,
}

pub struct RenderConfig {
    pub digits: usize,
    pub radicals: bool,
    pub stats: bool,
}

fn exit_code(e: &SolveError) -> u8 {
    match e {
        SolveError::BimatrixUnsupported => 2,
        SolveError::NonGenericGame => 3,
        SolveError::SizeLimit { .. } => 4,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let game = match parse_game_file(&cli.input) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let method = match cli.method {
        MethodArg::Orbit => Method::Orbit,
        MethodArg::Naive => Method::Naive,
        MethodArg::Both => Method::Both,
    };
    let opts = SolveOptions {
        method,
        order: cli.order.clone(),
        max_vars: cli.max_vars,
    };
    let report = match solve(&game, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let cfg = RenderConfig {
        digits: cli.digits as usize,
        radicals: !cli.no_radicals,
        stats: cli.stats,
    };
    let out = match cli.format {
        Format::Json => render::json(&game, &report, &cfg),
        Format::Text => render::text(&game, &report, &cfg),
    };
    print!("{out}");
    if cli.stats {
        for (name, stats) in [("orbit", &report.orbit_stats), ("naive", &report.naive_stats)] {
            if let Some(s) = stats {
                for (phase, t) in &s.timings {
                    eprintln!("{name} {phase}: {:.3} ms", t.as_secs_f64() * 1e3);
                }
            }
        }
    }
    ExitCode::SUCCESS
}
