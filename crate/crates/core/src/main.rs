use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use twinwidth::bounds::{girth, is_conference, lb1_witness, srg_detect, srg_lb1};
use twinwidth::families::kneser;
use twinwidth::io::{
    batch_exit_code, batch_run, generate, graph6_records, parse_gen_spec, parse_graph_auto, parse_sequence,
    run_scheme, write_graph6, write_sequence, write_trigraph, Record, Task,
};
use twinwidth::schemes::{
    asym_reduce, certify, girth_reduce, johnson_scheme, latin_grid_scheme, SchemeCertificate,
};
use twinwidth::solver::{tww_exact, tww_greedy, Budget, SolveResult};
use twinwidth::{sequence_width, Trigraph};

#[derive(Parser)]
#[command(name = "tww", version, about = "Twin-width bounds, certificates and solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Input {
    /// Graph file (graph6 or "p tgf" text); stdin when omitted.
    #[arg(short, long)]
    input: Option<PathBuf>,
}

#[derive(clap::Args)]
struct Output {
    /// Output file; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(clap::Args, Clone, Copy)]
struct Limits {
    /// Wall-clock limit in seconds.
    #[arg(long)]
    timeout: Option<f64>,
    /// Search node limit.
    #[arg(long)]
    nodes: Option<u64>,
}

impl Limits {
    fn budget(self) -> Budget {
        Budget { nodes: self.nodes, time: self.timeout.map(Duration::from_secs_f64) }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    G6,
    Tgf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Reduction {
    Girth,
    Asym,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph family member, e.g. `gen johnson 6` or `gen cubic 10`.
    Gen {
        family: String,
        params: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "g6")]
        format: Format,
        #[command(flatten)]
        out: Output,
    },
    /// One-merge lower bound with a witnessing pair.
    Lb1 {
        #[command(flatten)]
        input: Input,
    },
    /// Girth of the underlying graph.
    Girth {
        #[command(flatten)]
        input: Input,
    },
    /// Strongly regular parameters, if any.
    Srg {
        #[command(flatten)]
        input: Input,
    },
    /// Build a certificate: `johnson|kneser|latin <n>` generate their own
    /// graph; `selfcomp|circulant|degenerate|girth|asym` read the input.
    Scheme {
        name: String,
        params: Vec<usize>,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
        /// Write the certificate summary as JSON here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Replay a sequence and check its width against a bound.
    Verify {
        #[arg(long)]
        bound: usize,
        #[arg(long)]
        seq: PathBuf,
        #[command(flatten)]
        input: Input,
    },
    /// Exact twin-width by branch and bound.
    Exact {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limits: Limits,
        /// Write the witness sequence here.
        #[arg(long)]
        seq_out: Option<PathBuf>,
    },
    /// Greedy upper bound.
    Greedy {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        seq_out: Option<PathBuf>,
    },
    /// Partial sequences to girth at least 5 or to an asymmetric quotient.
    Reduce {
        #[arg(value_enum)]
        kind: Reduction,
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Node limit for each automorphism search.
        #[arg(long)]
        nodes: Option<u64>,
    },
    /// Run a task over many graphs, one JSON report per line.
    Batch {
        /// lb1, greedy, exact:<k> or scheme:<name>
        #[arg(long)]
        task: String,
        /// graph6 files (one graph per line).
        #[arg(short, long)]
        input: Vec<PathBuf>,
        /// Inline generators such as johnson:5..12 or cubic:10.
        #[arg(long)]
        gen: Vec<String>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        limits: Limits,
        /// Include per-phase timings (output is then not reproducible).
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        out: Output,
    },
}

/// Failure carrying the process exit code.
struct Failure(u8, String);

fn input_error(e: impl std::fmt::Display) -> Failure {
    Failure(2, e.to_string())
}

fn read_text(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| input_error(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(input_error)?;
            Ok(s)
        }
    }
}

fn read_graph(input: &Input) -> Result<Trigraph, Failure> {
    parse_graph_auto(&read_text(&input.input)?).map_err(input_error)
}

fn write_out(out: &Output, text: &str) -> Result<(), Failure> {
    match &out.output {
        Some(p) => fs::write(p, text).map_err(|e| input_error(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(input_error),
    }
}

fn write_file(path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    if let Some(p) = path {
        fs::write(p, text).map_err(|e| input_error(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn solve_json(r: &SolveResult) -> serde_json::Value {
    json!({ "value": r.value, "status": r.status })
}

fn cert_json(name: &str, c: &SchemeCertificate) -> serde_json::Value {
    json!({
        "v": 1,
        "scheme": name,
        "steps": c.seq.len(),
        "complete": c.seq.is_complete(),
        "claimed_bound": c.claimed_bound,
        "verified_width": c.verified_width,
        "residual_order": c.residual.order(),
        "symmetry_inconclusive": c.symmetry_inconclusive,
    })
}

/// Emits the sequence and sidecar; fails with code 1 if the bound is broken.
fn emit_certificate(name: &str, c: &SchemeCertificate, out: &Output, cert: &Option<PathBuf>) -> Result<(), Failure> {
    write_out(out, &write_sequence(&c.seq).map_err(input_error)?)?;
    let summary = cert_json(name, c).to_string();
    match cert {
        Some(_) => write_file(cert, &(summary + "\n"))?,
        None => eprintln!("{summary}"),
    }
    if c.holds() {
        Ok(())
    } else {
        Err(Failure(1, format!("width {} exceeds claimed bound {}", c.verified_width, c.claimed_bound)))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Gen { family, params, seed, format, out } => {
            let mut text = String::new();
            for (_, g) in generate(&family, &params, seed).map_err(input_error)? {
                match format {
                    Format::G6 => {
                        text.push_str(&write_graph6(&g).map_err(input_error)?);
                        text.push('\n');
                    }
                    Format::Tgf => text.push_str(&write_trigraph(&g)),
                }
            }
            write_out(&out, &text)
        }
        Command::Lb1 { input } => {
            let g = read_graph(&input)?;
            let (value, pair) = lb1_witness(&g).map_err(input_error)?;
            println!("{}", json!({ "lb1": value, "pair": pair }));
            Ok(())
        }
        Command::Girth { input } => {
            let g = read_graph(&input)?;
            println!("{}", json!({ "girth": girth(&g).map_err(input_error)? }));
            Ok(())
        }
        Command::Srg { input } => {
            let g = read_graph(&input)?;
            let value = match srg_detect(&g) {
                Ok(Some(p)) => json!({
                    "srg": { "n": p.n, "d": p.d, "lambda": p.lambda, "mu": p.mu },
                    "conference": is_conference(&p),
                    "lb1_closed_form": srg_lb1(&p).ok(),
                }),
                Ok(None) => json!({ "srg": null }),
                Err(e) => json!({ "srg": null, "reason": e.to_string() }),
            };
            println!("{value}");
            Ok(())
        }
        Command::Scheme { name, params, input, out, cert } => {
            let c = match (name.as_str(), params.as_slice()) {
                ("johnson", [n]) => johnson_scheme(*n).map_err(input_error)?,
                ("kneser", [n]) => {
                    // the complement of J(n,2), so the Johnson sequence applies unchanged
                    let j = johnson_scheme(*n).map_err(input_error)?;
                    certify(&kneser(*n).map_err(input_error)?, j.seq, j.claimed_bound).map_err(input_error)?
                }
                ("latin", [n]) => latin_grid_scheme(*n).map_err(input_error)?,
                (_, []) => run_scheme(&name, &read_graph(&input)?).map_err(input_error)?,
                _ => return Err(input_error(format!("scheme {name} does not take parameters {params:?}"))),
            };
            emit_certificate(&name, &c, &out, &cert)
        }
        Command::Verify { bound, seq, input } => {
            let g = read_graph(&input)?;
            let s = parse_sequence(&read_text(&Some(seq))?).map_err(input_error)?;
            let report = sequence_width(&g, &s).map_err(input_error)?;
            println!(
                "{}",
                json!({
                    "width": report.width,
                    "bound": bound,
                    "complete": s.is_complete(),
                    "argmax_block": report.argmax_block,
                    "ok": report.width <= bound,
                })
            );
            if report.width <= bound {
                Ok(())
            } else {
                Err(Failure(1, format!("width {} exceeds bound {bound}", report.width)))
            }
        }
        Command::Exact { input, limits, seq_out } => {
            let g = read_graph(&input)?;
            let r = tww_exact(&g, limits.budget()).map_err(input_error)?;
            write_file(&seq_out, &write_sequence(&r.witness).map_err(input_error)?)?;
            println!("{}", solve_json(&r));
            Ok(())
        }
        Command::Greedy { input, seq_out } => {
            let g = read_graph(&input)?;
            let r = tww_greedy(&g);
            write_file(&seq_out, &write_sequence(&r.witness).map_err(input_error)?)?;
            println!("{}", solve_json(&r));
            Ok(())
        }
        Command::Reduce { kind, input, out, cert, nodes } => {
            let g = read_graph(&input)?;
            let (name, c) = match kind {
                Reduction::Girth => ("girth", girth_reduce(&g).map_err(input_error)?),
                Reduction::Asym => ("asym", asym_reduce(&g, nodes).map_err(input_error)?),
            };
            emit_certificate(name, &c, &out, &cert)
        }
        Command::Batch { task, input, gen, jobs, seed, limits, timings, out } => {
            let task = Task::parse(&task, limits.budget()).map_err(input_error)?;
            let mut records: Vec<Record> = Vec::new();
            for path in &input {
                match fs::read_to_string(path) {
                    Ok(text) => records.extend(graph6_records(&text, &path.display().to_string())),
                    Err(e) => records.push((path.display().to_string(), Err(e.to_string()))),
                }
            }
            for spec in &gen {
                records.extend(parse_gen_spec(spec, seed).map_err(input_error)?.into_iter().map(|(id, g)| (id, Ok(g))));
            }
            let reports = batch_run(&records, &task, jobs, timings);
            let text: String = reports.iter().map(|r| r.to_json() + "\n").collect();
            write_out(&out, &text)?;
            match batch_exit_code(&reports) {
                0 => Ok(()),
                code => Err(Failure(code as u8, String::new())),
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, message)) => {
            if !message.is_empty() {
                eprintln!("tww: {message}");
            }
            ExitCode::from(code)
        }
    }
}
