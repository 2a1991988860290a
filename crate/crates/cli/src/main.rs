//! Command-line front end: build, verify, query and render trigraded
//! Adams-Novikov charts, and run the cobar Cotor computations.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use manss_core::builder::{base_change, query_pi, PageState};
use manss_core::chart::{chart_from_json, chart_to_json, fixture_sha256, load_classical, Page};
use manss_core::cobar::{algnov_e1, cess_e2, cotor, Comodule, ComoduleKind, CotorRange};
use manss_core::steenrod::{AlgebraKind, BaseField, DualAlgebra, EnumBounds, GroundRing};
use manss_core::verify::{run_suites, VerifyConfig};
use manss_core::ExecMode;

#[derive(Parser)]
#[command(
    name = "manss",
    about = "Trigraded Adams-Novikov charts over C and R at odd primes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum BaseArg {
    C,
    R,
}

impl From<BaseArg> for BaseField {
    fn from(b: BaseArg) -> BaseField {
        match b {
            BaseArg::C => BaseField::C,
            BaseArg::R => BaseField::R,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderArg {
    Svg,
    Ascii,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum HopfArg {
    A,
    P,
    E,
}

impl From<HopfArg> for AlgebraKind {
    fn from(h: HopfArg) -> AlgebraKind {
        match h {
            HopfArg::A => AlgebraKind::A,
            HopfArg::P => AlgebraKind::P,
            HopfArg::E => AlgebraKind::E,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    /// Cotor of the chosen Hopf algebra with trivial coefficients.
    Cotor,
    /// Cartan-Eilenberg E2 page (Cotor over P, coefficients P(a_i)).
    Cess,
    /// Algebraic Novikov E1 page (Cotor over P, coefficients Z/l[q_i]).
    Algnov,
}

#[derive(Subcommand)]
enum Command {
    /// Build a trigraded chart from a classical fixture and write chart
    /// JSON (plus an optional rendering and the propagation log).
    Build(BuildArgs),
    /// Compute a trigraded Cotor table by brute-force cobar homology.
    Cotor(CotorArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
    /// Query homotopy groups of a built E-infinity chart.
    Query(QueryArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Classical chart fixture (structured text).
    #[arg(long)]
    fixture: PathBuf,
    /// Base field.
    #[arg(long, value_enum, default_value = "c")]
    base: BaseArg,
    /// Target page: a number r with r = 1 mod 2l-2, or "inf".
    #[arg(long, default_value = "inf")]
    page: String,
    /// Expected prime; checked against the fixture when given.
    #[arg(long)]
    prime: Option<u64>,
    /// Output directory (chart.json, chart.svg/chart.txt, propagation.log).
    #[arg(long, default_value = "manss-out")]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "svg")]
    render: RenderArg,
    /// Annotate glyphs with generator weights.
    #[arg(long)]
    weights: bool,
    /// Drop entries beyond this stem before writing.
    #[arg(long)]
    max_stem: Option<i64>,
    /// Drop entries beyond this filtration before writing.
    #[arg(long)]
    max_filtration: Option<i64>,
    /// Verification after the build: "all", "none", or a comma-separated
    /// suite list.
    #[arg(long, default_value = "none")]
    verify: String,
    /// Seed for the randomized parts of the verification suites.
    #[arg(long, default_value_t = 2026)]
    seed: u64,
    /// Also build over R and check it matches the even-weight part of the
    /// chart over C.
    #[arg(long)]
    compare_bases: bool,
}

#[derive(Args)]
struct CotorArgs {
    #[arg(long, default_value_t = 3)]
    prime: u64,
    #[arg(long, value_enum, default_value = "c")]
    base: BaseArg,
    /// Hopf algebra for plain Cotor tables.
    #[arg(long, value_enum, default_value = "e")]
    hopf: HopfArg,
    #[arg(long, value_enum, default_value = "cotor")]
    table: TableArg,
    /// Largest cobar filtration reported.
    #[arg(long, default_value_t = 3)]
    max_s: usize,
    /// Largest internal degree reported.
    #[arg(long, default_value_t = 12)]
    max_t: i64,
    /// Weight window depth below floor(t/2); default max_s * (l-1).
    #[arg(long)]
    weight_depth: Option<i64>,
    /// Cap on chains per slice.
    #[arg(long, default_value_t = 200_000)]
    max_slice: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the table as chart JSON (relaxed table grid) for
    /// rendering.
    #[arg(long)]
    out_chart: Option<PathBuf>,
    /// Render the table chart next to --out-chart.
    #[arg(long, value_enum, default_value = "none")]
    render: RenderArg,
    /// Annotate glyphs with generator weights.
    #[arg(long)]
    weights: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    fixture: PathBuf,
    /// "all" or a comma-separated subset of the suite names.
    #[arg(long, default_value = "all")]
    suites: String,
    #[arg(long, default_value_t = 2026)]
    seed: u64,
    /// Number of seeded random charts in the randomized suites.
    #[arg(long, default_value_t = 100)]
    random_charts: usize,
    /// Stem bound for the random charts.
    #[arg(long, default_value_t = 20)]
    max_stem: i64,
}

#[derive(Args)]
struct QueryArgs {
    /// A chart JSON written by `manss build` (page must be E-infinity).
    #[arg(long)]
    chart: PathBuf,
    #[arg(long)]
    stem: i64,
    #[arg(long)]
    weight: i64,
}

fn main() -> ExitCode {
    // optional worker cap; everything else is flag-driven
    if let Ok(v) = std::env::var("MANSS_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            manss_core::par::set_worker_cap(n.max(1));
        }
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Cotor(args) => cmd_cotor(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Query(args) => cmd_query(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn parse_page(s: &str, q: i64) -> anyhow::Result<Page> {
    match s {
        "inf" | "infinity" => Ok(Page::Infinity),
        other => {
            let r: i64 = other
                .parse()
                .with_context(|| format!("page '{other}' is neither a number nor 'inf'"))?;
            if r < 2 || r.rem_euclid(q) != 1 {
                bail!("page {r} is not 1 mod q = {q} (or 'inf')");
            }
            Ok(Page::R(r))
        }
    }
}

fn cmd_build(args: BuildArgs) -> anyhow::Result<ExitCode> {
    let text = std::fs::read_to_string(&args.fixture)
        .with_context(|| format!("reading {}", args.fixture.display()))?;
    let classical = manss_core::chart::parse_classical(&text)?;
    if let Some(p) = args.prime {
        if p != classical.prime {
            bail!(
                "--prime {p} disagrees with the fixture prime {}",
                classical.prime
            );
        }
    }
    let base: BaseField = args.base.into();
    let q = 2 * classical.prime as i64 - 2;
    let page = parse_page(&args.page, q)?;

    let state = PageState::build_e2(&classical, base)?;
    let state = match page {
        Page::R(r) => state.propagate(Page::R(r))?,
        Page::Infinity => state.run_to_einf()?,
    };
    let log = state.propagation_log();
    let mut chart = state.into_chart();
    if let Some(max_stem) = args.max_stem {
        chart.entries.retain(|pos, _| pos.stem <= max_stem);
    }
    if let Some(max_s) = args.max_filtration {
        chart.entries.retain(|pos, _| pos.s <= max_s);
    }
    chart.meta.fixture_sha256 = Some(fixture_sha256(text.as_bytes()));
    chart
        .meta
        .build_options
        .insert("base".into(), base.to_string());
    chart
        .meta
        .build_options
        .insert("page".into(), chart.page.to_string());

    std::fs::create_dir_all(&args.out)?;
    let json = chart_to_json(&chart)?;
    std::fs::write(args.out.join("chart.json"), &json)?;
    match args.render {
        RenderArg::Svg => {
            std::fs::write(
                args.out.join("chart.svg"),
                render::svg_chart(&chart, args.weights),
            )?;
        }
        RenderArg::Ascii => {
            std::fs::write(
                args.out.join("chart.txt"),
                render::ascii_chart(&chart, args.weights),
            )?;
        }
        RenderArg::None => {}
    }
    std::fs::write(args.out.join("propagation.log"), &log)?;
    println!(
        "wrote {} entries to {}",
        chart.entries.len(),
        args.out.join("chart.json").display()
    );

    let mut ok = true;
    if args.compare_bases {
        if base != BaseField::C {
            bail!("--compare-bases expects --base c");
        }
        let other = PageState::build_e2(&classical, BaseField::R)?;
        let other = match page {
            Page::R(r) => other.propagate(Page::R(r))?,
            Page::Infinity => other.run_to_einf()?,
        };
        let mapped = base_change(other.chart())?;
        if mapped.entries == chart.entries {
            println!("base comparison: chart over R matches the even-weight part over C");
        } else {
            println!("base comparison: MISMATCH between R and C charts");
            ok = false;
        }
    }
    if args.verify != "none" {
        let suites: Vec<String> = if args.verify == "all" {
            Vec::new()
        } else {
            args.verify
                .split(',')
                .map(|s| s.trim().to_string())
                .collect()
        };
        let config = VerifyConfig::new(classical, args.seed);
        println!("verification seed: {}", args.seed);
        for outcome in run_suites(&config, &suites) {
            println!(
                "{} {}: {}",
                if outcome.passed { "PASS" } else { "FAIL" },
                outcome.name,
                outcome.detail
            );
            ok &= outcome.passed;
        }
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_cotor(args: CotorArgs) -> anyhow::Result<ExitCode> {
    let ring = GroundRing::new(args.base.into(), args.prime)?;
    let alg = DualAlgebra::new(ring, EnumBounds::default());
    let range = CotorRange {
        s_max: args.max_s,
        t_max: args.max_t,
        weight_depth: args.weight_depth,
        max_slice: args.max_slice,
    };
    let table = match args.table {
        TableArg::Cotor => {
            let comodule = Comodule::new(ComoduleKind::Trivial, args.prime)?;
            cotor(
                &alg,
                args.hopf.into(),
                &comodule,
                &range,
                ExecMode::Parallel,
            )?
        }
        TableArg::Cess => cess_e2(&alg, &range, ExecMode::Parallel)?,
        TableArg::Algnov => algnov_e1(&alg, &range, ExecMode::Parallel)?,
    };
    let report = table.report();
    match &args.out {
        Some(path) => std::fs::write(path, &report)?,
        None => print!("{report}"),
    }
    if args.out_chart.is_some() || !matches!(args.render, RenderArg::None) {
        let chart = table.to_chart()?;
        let path = args
            .out_chart
            .unwrap_or_else(|| PathBuf::from("cotor-chart.json"));
        std::fs::write(&path, chart_to_json(&chart)?)?;
        match args.render {
            RenderArg::Svg => {
                std::fs::write(
                    path.with_extension("svg"),
                    render::svg_chart(&chart, args.weights),
                )?;
            }
            RenderArg::Ascii => {
                std::fs::write(
                    path.with_extension("txt"),
                    render::ascii_chart(&chart, args.weights),
                )?;
            }
            RenderArg::None => {}
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let classical = load_classical(&args.fixture)?;
    let mut config = VerifyConfig::new(classical, args.seed);
    config.random_charts = args.random_charts;
    config.random_config.max_stem = args.max_stem;
    let suites: Vec<String> = if args.suites == "all" {
        Vec::new()
    } else {
        args.suites
            .split(',')
            .map(|s| s.trim().to_string())
            .collect()
    };
    println!("seed: {}", args.seed);
    let outcomes = run_suites(&config, &suites);
    let mut ok = true;
    for outcome in &outcomes {
        println!(
            "{} {}: {}",
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.name,
            outcome.detail
        );
        ok &= outcome.passed;
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_query(args: QueryArgs) -> anyhow::Result<ExitCode> {
    let text = std::fs::read_to_string(&args.chart).with_context(|| {
        format!(
            "missing chart {}; run `manss build` first",
            args.chart.display()
        )
    })?;
    let chart = chart_from_json(&text)?;
    let result = query_pi(&chart, args.stem, args.weight)?;
    print!("{}", result.render(chart.ring().ground_symbol()));
    Ok(ExitCode::SUCCESS)
}
