//! Command line front end: corpus generation, frame inspection, cut tables,
//! and law verification with machine-readable reports.
//!
//! Exit codes: 0 when everything checked holds, 1 when a property fails
//! with a counterexample, 2 for unusable input.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use cozero::corpus::{self, CorpusSpec, GeneratorKind, SizeSpec};
use cozero::cozpart;
use cozero::cuts;
use cozero::lattice::Frame;
use cozero::rational::format_rational;
use cozero::report::PropertyReport;
use cozero::verify::{self, Suite, VerifyConfig, ALL_SUITES};

#[derive(Parser)]
#[command(
    name = "cozero",
    version,
    about = "Exact computations over finite frames: step functions, prime-ideal cuts, cozero parts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a corpus of frame files plus a manifest
    Gen(GenArgs),
    /// Summarize one frame file
    Props(PropsArgs),
    /// Print the prime-ideal cut table of a function file
    Cuts(CutsArgs),
    /// Run law suites over frame files and write a consolidated report
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Generator family: all-posets, boolean, chain, topology, random-downset
    #[arg(long)]
    kind: String,
    /// Exact size parameter for the family
    #[arg(long, conflicts_with = "max_size")]
    size: Option<usize>,
    /// Upper size bound; generates every size up to it
    #[arg(long)]
    max_size: Option<usize>,
    /// Seed for the randomized families
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory
    #[arg(long, default_value = "corpus")]
    out: PathBuf,
}

#[derive(Args)]
struct PropsArgs {
    /// Frame file
    frame: PathBuf,
}

#[derive(Args)]
struct CutsArgs {
    /// Frame file
    frame: PathBuf,
    /// Function file over the same frame
    function: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Frame files, or directories containing *.frame.json files
    #[arg(required = true)]
    frames: Vec<PathBuf>,
    /// Suite identifier, repeatable; `all` selects every suite
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Write the sorted report array to this file
    #[arg(long)]
    report: Option<PathBuf>,
    /// Worker threads for the frame pool
    #[arg(long)]
    jobs: Option<usize>,
    /// Sampling seed
    #[arg(long, default_value_t = VerifyConfig::default().seed)]
    seed: u64,
    /// Sampled function pairs per frame
    #[arg(long, default_value_t = VerifyConfig::default().functions_per_frame)]
    functions: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Props(args) => cmd_props(args),
        Command::Cuts(args) => cmd_cuts(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn cmd_gen(args: GenArgs) -> anyhow::Result<ExitCode> {
    let kind: GeneratorKind = args
        .kind
        .parse()
        .map_err(|e: String| anyhow::anyhow!(e))?;
    let size = match (args.size, args.max_size) {
        (Some(n), None) => SizeSpec::Exact(n),
        (None, Some(n)) => SizeSpec::UpTo(n),
        _ => bail!("pass exactly one of --size or --max-size"),
    };
    let spec = CorpusSpec {
        kind,
        size,
        seed: args.seed,
    };
    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    let manifest = corpus::write_corpus(&spec, &args.out)?;
    println!(
        "wrote {} frame files and manifest.json to {}",
        manifest.frames.len(),
        args.out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn load_frame(path: &Path) -> anyhow::Result<Arc<Frame>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    let frame =
        corpus::parse_frame(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(Arc::new(frame))
}

fn cmd_props(args: PropsArgs) -> anyhow::Result<ExitCode> {
    let frame = load_frame(&args.frame)?;
    let part = cozpart::coz_part(&frame, true)?;
    let zd = cozpart::is_zero_dimensional(&frame);
    let ccr = cozpart::is_c_completely_regular(&frame);
    let sigma = cozpart::sigma_frame_check(&part);

    println!("frame: {}", frame.name());
    println!("elements: {}", frame.len());
    println!("center: {} elements", frame.center().len());
    let members: Vec<&str> = part
        .members()
        .iter()
        .map(|&m| frame.element_name(m))
        .collect();
    println!("Coz_c: {{{}}}", members.join(", "));
    println!("zero-dimensional: {}", zd.verdict);
    println!("c-completely regular: {}", ccr.verdict);
    println!(
        "sigma-frame laws: {}",
        if sigma.is_pass() { "pass" } else { "fail" }
    );
    Ok(ExitCode::SUCCESS)
}

fn format_value_set(values: &BTreeSet<cozero::Rational>) -> String {
    let parts: Vec<String> = values.iter().map(|v| format_rational(v)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn cmd_cuts(args: CutsArgs) -> anyhow::Result<ExitCode> {
    let frame = load_frame(&args.frame)?;
    let text = std::fs::read_to_string(&args.function)
        .with_context(|| format!("reading {}", args.function.display()))?;
    let f = corpus::parse_function(&text, &frame)
        .with_context(|| format!("parsing {}", args.function.display()))?;
    let primes = cuts::prime_ideals(&frame)?;

    println!("cut table over {}", frame.name());
    for p in &primes {
        let d = cuts::cut(&f, p)?;
        println!(
            "{}\t{}\tupper {}\tlower {}",
            p.id(),
            format_rational(&d.value),
            if d.upper_attained { "attained" } else { "open" },
            if d.lower_attained { "attained" } else { "open" },
        );
    }
    let through_cuts = cuts::range_via_cuts(&f);
    let attained = f.range_set();
    let agree = through_cuts == attained;
    println!("attained values: {}", format_value_set(&attained));
    println!("values through cuts: {}", format_value_set(&through_cuts));
    println!("agreement: {agree}");
    Ok(if agree {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn resolve_suites(ids: &[String]) -> anyhow::Result<Vec<Suite>> {
    if ids.is_empty() {
        return Ok(ALL_SUITES.to_vec());
    }
    let mut out = Vec::new();
    for id in ids {
        if id == "all" {
            out.extend(ALL_SUITES);
        } else {
            out.push(id.parse::<Suite>().map_err(|e| anyhow::anyhow!(e))?);
        }
    }
    Ok(out)
}

fn collect_frame_files(inputs: &[PathBuf]) -> anyhow::Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let mut found = Vec::new();
            for entry in std::fs::read_dir(input)
                .with_context(|| format!("listing {}", input.display()))?
            {
                let path = entry?.path();
                let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("");
                if name.ends_with(".frame.json") {
                    found.push(path);
                }
            }
            if found.is_empty() {
                bail!("{} contains no .frame.json files", input.display());
            }
            found.sort();
            out.extend(found);
        } else {
            out.push(input.clone());
        }
    }
    Ok(out)
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<ExitCode> {
    let suites = resolve_suites(&args.suites)?;
    let paths = collect_frame_files(&args.frames)?;
    let mut frames = Vec::with_capacity(paths.len());
    for p in &paths {
        frames.push(load_frame(p)?);
    }
    if let Some(jobs) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .ok();
    }
    let cfg = VerifyConfig {
        seed: args.seed,
        functions_per_frame: args.functions,
    };
    let reports = verify::run_suites(&frames, &suites, &cfg);
    if let Some(path) = &args.report {
        let mut text = serde_json::to_string_pretty(&reports)?;
        text.push('\n');
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    println!(
        "{} reports over {} frames in {} suites",
        reports.len(),
        frames.len(),
        suites.len()
    );
    let blocking: Vec<&PropertyReport> = reports
        .iter()
        .filter(|r| verify::report_blocks_success(r))
        .collect();
    if let Some(first) = blocking.first() {
        eprintln!(
            "counterexample: {} {} {}",
            first.frame,
            first.property,
            serde_json::to_string(&first.counterexample)?
        );
        return Ok(ExitCode::from(1));
    }
    println!("all properties hold");
    Ok(ExitCode::SUCCESS)
}
