use std::fs;
use std::process::ExitCode;

use braidlo_core::braid::classify_baldwin;
use braidlo_core::diagram::closure_white_graph;
use braidlo_core::lo_checker::NonLOCertificate;
use braidlo_core::parse_braid;
use braidlo_core::pipeline::{
    parse_grid, run_batch, run_pipeline, BatchSummary, PipelineOptions, PipelineReport,
};
use braidlo_core::presentation::AbelianInvariants;
use clap::{Args, Parser, Subcommand};

const INPUT_ERROR: u8 = 2;
const SOUNDNESS: u8 = 3;

/// Non-left-orderability of double branched covers of closed three-braids.
#[derive(Parser)]
#[command(name = "braidlo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the family of a braid word as JSON.
    Classify { braid: String },
    /// Classify, normalize, present and decide a single braid.
    Pipeline {
        braid: String,
        #[command(flatten)]
        flags: Flags,
        /// Print the white graph of the closure in DOT format.
        #[arg(long)]
        dot: bool,
    },
    /// Run every braid or `(m;a;b)` tuple in a grid file.
    Batch {
        file: String,
        #[command(flatten)]
        flags: Flags,
    },
    /// Re-verify a certificate JSON file.
    Recheck { file: String },
}

#[derive(Args)]
struct Flags {
    /// Emit the full report as JSON.
    #[arg(long)]
    json: bool,
    /// Re-verify certificates from their serialized JSON.
    #[arg(long)]
    recheck: bool,
    #[arg(long, default_value_t = 1_000_000)]
    max_cosets: usize,
    /// Word length bound for the positive-cone search (0 disables it).
    #[arg(long, default_value_t = 8)]
    depth: usize,
    /// Omit timing so output is byte-stable.
    #[arg(long)]
    canonical: bool,
}

impl Flags {
    fn options(&self) -> PipelineOptions {
        PipelineOptions {
            max_cosets: self.max_cosets,
            depth: self.depth,
            canonical: self.canonical,
            recheck: self.recheck,
        }
    }
}

fn homology(a: &AbelianInvariants) -> String {
    let mut parts: Vec<String> = a.torsion.iter().map(|t| format!("Z/{t}")).collect();
    parts.extend(std::iter::repeat_n("Z".to_string(), a.free_rank));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn print_report(r: &PipelineReport) {
    let class = r
        .classification
        .as_ref()
        .map(|c| serde_json::to_string(c).unwrap())
        .unwrap_or_else(|| "-".into());
    println!("input:        {}", r.input);
    println!("class:        {class}");
    println!("route:        {}", r.route);
    println!("determinant:  {}", r.determinant);
    println!("H1:           {}", homology(&r.abelian));
    if let Some(o) = r.group_order {
        println!("group order:  {o}");
    }
    let tag = if r.external {
        " [cited, not checked here]"
    } else {
        ""
    };
    println!("verdict:      {}{tag} ({})", r.verdict.as_str(), r.reason);
    for f in &r.soundness_failures {
        println!("SOUNDNESS:    {f}");
    }
}

fn print_summary(s: &BatchSummary) {
    println!("{:<28} {:<20} {:<18} reason", "input", "route", "verdict");
    for r in &s.reports {
        let flag = if r.soundness_failures.is_empty() {
            ""
        } else {
            "  SOUNDNESS FAILURE"
        };
        println!(
            "{:<28} {:<20} {:<18} {}{flag}",
            r.input,
            r.route,
            r.verdict.as_str(),
            r.reason
        );
    }
    println!("total {}", s.total);
    for (v, n) in &s.verdicts {
        println!("  {v}: {n}");
    }
    println!("hypothesis not met: {}", s.hypothesis_not_met);
    println!("soundness failures: {}", s.soundness_failures);
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify { braid } => match parse_braid(&braid) {
            Ok(w) => {
                println!("{}", serde_json::to_string(&classify_baldwin(&w)).unwrap());
                ExitCode::SUCCESS
            }
            Err(e) => fail(INPUT_ERROR, e),
        },
        Command::Pipeline { braid, flags, dot } => {
            let r = match run_pipeline(&braid, &flags.options()) {
                Ok(r) => r,
                Err(e) => return fail(INPUT_ERROR, e),
            };
            if dot {
                let w = parse_braid(&braid).expect("parsed by the pipeline");
                print!(
                    "{}",
                    closure_white_graph(&w)
                        .expect("built by the pipeline")
                        .to_dot()
                );
            } else if flags.json {
                println!("{}", r.to_json());
            } else {
                print_report(&r);
            }
            ExitCode::from(r.exit_code() as u8)
        }
        Command::Batch { file, flags } => {
            let text = match fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => return fail(INPUT_ERROR, format!("{file}: {e}")),
            };
            let entries = match parse_grid(&text) {
                Ok(e) => e,
                Err(e) => return fail(INPUT_ERROR, e),
            };
            let s = run_batch(&entries, &flags.options());
            if flags.json {
                println!("{}", serde_json::to_string_pretty(&s).unwrap());
            } else {
                print_summary(&s);
            }
            ExitCode::from(s.exit_code() as u8)
        }
        Command::Recheck { file } => {
            let text = match fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => return fail(INPUT_ERROR, format!("{file}: {e}")),
            };
            // accepts a bare certificate or a pipeline report carrying one
            let cert = serde_json::from_str::<serde_json::Value>(&text)
                .ok()
                .and_then(|v| v.get("certificate").cloned())
                .map(|c| NonLOCertificate::from_json(&c.to_string()))
                .unwrap_or_else(|| NonLOCertificate::from_json(&text));
            let cert = match cert {
                Ok(c) => c,
                Err(e) => return fail(INPUT_ERROR, e),
            };
            match cert.recheck() {
                Ok(()) => {
                    println!("certificate verified ({} steps)", cert.steps.len());
                    ExitCode::SUCCESS
                }
                Err(e) => fail(SOUNDNESS, format!("certificate rejected: {e}")),
            }
        }
    }
}
