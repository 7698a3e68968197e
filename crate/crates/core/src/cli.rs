//! Command-line front end. The binary only parses arguments and maps errors
//! to exit codes; everything else lives here so it can be tested in-process.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::adjunctions::Strategy;
use crate::engine::{self, Options};
use crate::frame::{Context, FrameError, Mode, MultiAdjointFrame};
use crate::oracle::oracle_direct;
use crate::qrel::DEFAULT_FIBRE_LIMIT;
use crate::quantaloid::{check_designated, check_residuation};
use crate::Error;

#[derive(Debug, Parser)]
#[command(
    name = "macl",
    version,
    about = "Multi-adjoint concept lattices via quantaloid adjunctions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a frame and the quantaloid built from it.
    CheckFrame(FrameArgs),
    /// Compute the concept lattice of a context.
    Lattice(LatticeArgs),
    /// Print the quantaloid of a frame as JSON.
    ExportQuantaloid(FrameArgs),
}

#[derive(Debug, Args)]
pub struct FrameArgs {
    #[arg(long)]
    pub frame: PathBuf,
    /// Override the mode stored in the frame file.
    #[arg(long)]
    pub mode: Option<Mode>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Dot,
}

#[derive(Debug, Args)]
pub struct LatticeArgs {
    #[command(flatten)]
    pub frame: FrameArgs,
    #[arg(long)]
    pub context: PathBuf,
    /// brute, generators, both or auto.
    #[arg(long, default_value = "both")]
    pub strategy: Strategy,
    #[arg(long, value_enum, default_value = "json")]
    pub out: OutputFormat,
    /// Largest fibre to materialize.
    #[arg(long, default_value_t = DEFAULT_FIBRE_LIMIT, value_parser = positive)]
    pub limit: usize,
    /// Cross-check against direct enumeration (the default).
    #[arg(long, overrides_with = "no_oracle")]
    pub oracle: bool,
    #[arg(long = "no-oracle", overrides_with = "oracle")]
    pub no_oracle: bool,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn load_frame(args: &FrameArgs) -> Result<MultiAdjointFrame, Error> {
    let frame = MultiAdjointFrame::from_json(&read(&args.frame)?)?;
    Ok(match args.mode {
        Some(m) if m != frame.mode() => frame.with_mode(m)?,
        _ => frame,
    })
}

/// Runs one command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Error> {
    let io = |e: std::io::Error| Error::Io(e.to_string());
    match &cli.command {
        Command::CheckFrame(args) => {
            let frame = load_frame(args)?;
            writeln!(
                out,
                "lattices: PASS (|L1|={} |L2|={} |P|={})",
                frame.l1().elements().len(),
                frame.l2().elements().len(),
                frame.p().elements().len()
            )
            .map_err(io)?;
            for (i, t) in frame.triples().iter().enumerate() {
                t.verify_residuation()
                    .map_err(|source| FrameError::Triple { index: i + 1, source })?;
            }
            writeln!(out, "triples: PASS ({} {} triple(s))", frame.len(), frame.mode()).map_err(io)?;
            let q = engine::frame_to_quantaloid(&frame)?;
            for d in q.designated() {
                check_designated(&q, *d, &frame.triples()[d.triple])?;
            }
            check_residuation(&q)?;
            writeln!(out, "quantaloid laws: PASS (objects {})", q.objects().join(" ")).map_err(io)?;
            writeln!(out, "non-trivial: {}", if q.is_nontrivial() { "PASS" } else { "FAIL" }).map_err(io)?;
        }
        Command::ExportQuantaloid(args) => {
            let frame = load_frame(args)?;
            let q = engine::frame_to_quantaloid(&frame)?;
            let text = serde_json::to_string_pretty(&q.to_dump()).expect("dump serializes");
            writeln!(out, "{text}").map_err(io)?;
        }
        Command::Lattice(args) => {
            let frame = load_frame(&args.frame)?;
            let context = Context::from_json(&read(&args.context)?, &frame)?;
            let options = Options {
                strategy: args.strategy,
                limit: args.limit,
            };
            let start = Instant::now();
            let lattice = engine::compute(&frame, &context, options)?;
            let elapsed = start.elapsed();
            if !args.no_oracle {
                let direct = oracle_direct(&frame, &context, args.limit)?;
                let cmp = lattice.compare(&direct);
                if !cmp.is_equal() {
                    return Err(Error::OracleMismatch(cmp.differences));
                }
            }
            match args.out {
                OutputFormat::Json => {
                    let text = serde_json::to_string_pretty(&lattice).expect("lattice serializes");
                    writeln!(out, "{text}").map_err(io)?;
                }
                OutputFormat::Dot => write!(out, "{}", lattice.to_dot()).map_err(io)?,
            }
            writeln!(
                err,
                "{} concepts in {:.3} ms{}",
                lattice.len(),
                elapsed.as_secs_f64() * 1e3,
                if args.no_oracle { "" } else { ", oracle agrees" }
            )
            .map_err(io)?;
        }
    }
    Ok(())
}
