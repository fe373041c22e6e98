//! `untangle`: generate, search, analyze and render red-blue matching
//! untangling instances.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 when an audit or bound
//! check fails.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use untangle_cli::render::{render_sequence, render_svg};
use untangle_cli::report::{format_report, table_report};
use untangle_core::engine::{
    enumerate_sequences, longest_untangle, run_greedy_top, run_policy, shortest_untangle, Policy,
    SearchResult,
};
use untangle_core::generators::{
    make_butterfly, make_fence, make_star, sample_random, Perturb, RandomKind,
};
use untangle_core::json::{flips_from_json, flips_to_json, matching_from_json, matching_to_json};
use untangle_core::matching::Flip;
use untangle_core::potential::{default_line_y, inversion_word, phi_k, phi_total};
use untangle_core::sat::{
    assemble_m_phi, decide_via_untangling, derive_embedding, parse_formula, validate_embedding,
};
use untangle_core::tracking::track_sequence;
use untangle_core::Matching;

#[derive(Parser)]
#[command(
    name = "untangle",
    version,
    about = "Untangle straight-line red-blue matchings by flips"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InOut {
    /// Input matching (JSON).
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum PolicyName {
    First,
    Random,
    Topmost,
}

#[derive(Copy, Clone, ValueEnum)]
enum KindName {
    RedOnLine,
    Convex,
    General,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Run the greedy top-segment algorithm (red-on-a-line inputs).
    Greedy(InOut),
    /// Untangle with a flip-choice policy.
    Policy {
        #[command(flatten)]
        io: InOut,
        #[arg(long, value_enum, default_value = "first")]
        policy: PolicyName,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact shortest untangle sequence (breadth-first search).
    Shortest {
        #[command(flatten)]
        io: InOut,
        #[arg(long, default_value_t = 10_000_000)]
        budget: usize,
    },
    /// Exact longest untangle sequence (memoized depth-first search).
    Longest {
        #[command(flatten)]
        io: InOut,
        #[arg(long, default_value_t = 10_000_000)]
        budget: usize,
    },
    /// Enumerate every maximal flip sequence.
    Enumerate {
        #[command(flatten)]
        io: InOut,
        #[arg(long, default_value_t = 10_000)]
        limit: usize,
    },
    /// Print the projection potential table.
    Potential {
        /// Input matching (JSON), red-on-a-line.
        #[arg(long = "in")]
        input: PathBuf,
        /// Restrict to one focal red index.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Track per-pair state trajectories along a flip sequence.
    Track {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compile a monotone planar formula into a hardness matching.
    Reduce {
        #[arg(long)]
        formula: PathBuf,
        /// Approximation factor, a rational like 1 or 3/2.
        #[arg(long, default_value = "1")]
        alpha: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the gadget audit reports (JSON).
        #[arg(long)]
        report: Option<PathBuf>,
        /// Also decide satisfiability by exact search.
        #[arg(long, default_value_t = false)]
        decide: bool,
        #[arg(long, default_value_t = 10_000_000)]
        budget: usize,
    },
    /// Replay and check a flip sequence against a matching.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        seq: PathBuf,
    },
    /// Render a matching (or every step of a sequence) as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        seq: Option<PathBuf>,
        /// Output file; with --seq, a numbered file per frame.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the bound-report suite.
    Report {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10_000_000)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    /// Fully crossing red-on-a-line star.
    Star {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two fully crossing stars looking at one point.
    Butterfly {
        #[arg(long)]
        m: usize,
        /// Break blue-height ties by the documented tiny perturbation.
        #[arg(long, default_value_t = false)]
        perturb: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convex instance whose every untangle sequence has length 3m-2.
    Fence {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random instance.
    Random {
        #[arg(long, value_enum)]
        kind: KindName,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Audit(String),
}

type CliResult<T> = Result<T, CliError>;

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn read_matching(path: &Path) -> CliResult<Matching> {
    let text = fs::read_to_string(path).map_err(usage)?;
    matching_from_json(&text).map_err(usage)
}

fn read_flips(path: &Path) -> CliResult<Vec<Flip>> {
    let text = fs::read_to_string(path).map_err(usage)?;
    flips_from_json(&text).map_err(usage)
}

fn write_or_print(out: &Option<PathBuf>, content: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, content).map_err(usage),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

fn emit_search(io_out: &Option<PathBuf>, label: &str, result: &SearchResult) -> CliResult<()> {
    println!(
        "{label}: length {} (explored {} configurations)",
        result.length, result.explored
    );
    write_or_print(io_out, &flips_to_json(&result.witness.steps))
}

fn parse_alpha(s: &str) -> CliResult<BigRational> {
    untangle_core::geometry::parse_coord(s).map_err(usage)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Gen { family } => {
            let (m, out) = match family {
                GenFamily::Star { n, out } => {
                    if n == 0 {
                        return Err(CliError::Usage("--n must be at least 1".into()));
                    }
                    (make_star(n), out)
                }
                GenFamily::Butterfly { m, perturb, out } => {
                    if m == 0 {
                        return Err(CliError::Usage("--m must be at least 1".into()));
                    }
                    let kind = if perturb {
                        Perturb::Epsilon
                    } else {
                        Perturb::Off
                    };
                    (
                        make_butterfly(m, kind).map_err(|e| CliError::Audit(e.to_string()))?,
                        out,
                    )
                }
                GenFamily::Fence { m, out } => {
                    if m < 2 {
                        return Err(CliError::Usage("--m must be at least 2".into()));
                    }
                    (make_fence(m).0, out)
                }
                GenFamily::Random { kind, n, seed, out } => {
                    if n == 0 {
                        return Err(CliError::Usage("--n must be at least 1".into()));
                    }
                    let kind = match kind {
                        KindName::RedOnLine => RandomKind::RedOnLine,
                        KindName::Convex => RandomKind::Convex,
                        KindName::General => RandomKind::General,
                    };
                    (sample_random(kind, n, seed), out)
                }
            };
            write_or_print(&out, &matching_to_json(&m))
        }
        Command::Greedy(io) => {
            let m = read_matching(&io.input)?;
            let seq = run_greedy_top(&m).map_err(usage)?;
            println!("greedy: {} flips, ends crossing-free", seq.len());
            write_or_print(&io.out, &flips_to_json(&seq.steps))
        }
        Command::Policy { io, policy, seed } => {
            let m = read_matching(&io.input)?;
            let policy = match policy {
                PolicyName::First => Policy::FirstFound,
                PolicyName::Random => Policy::Random(seed),
                PolicyName::Topmost => Policy::TopMost,
            };
            let seq = run_policy(&m, policy);
            println!("policy: {} flips", seq.len());
            write_or_print(&io.out, &flips_to_json(&seq.steps))
        }
        Command::Shortest { io, budget } => {
            let m = read_matching(&io.input)?;
            let result =
                shortest_untangle(&m, budget).map_err(|e| CliError::Audit(e.to_string()))?;
            emit_search(&io.out, "shortest", &result)
        }
        Command::Longest { io, budget } => {
            let m = read_matching(&io.input)?;
            let result =
                longest_untangle(&m, budget).map_err(|e| CliError::Audit(e.to_string()))?;
            emit_search(&io.out, "longest", &result)
        }
        Command::Enumerate { io, limit } => {
            let m = read_matching(&io.input)?;
            let e = enumerate_sequences(&m, limit);
            let mut lengths: Vec<usize> = e.sequences.iter().map(|s| s.len()).collect();
            lengths.sort_unstable();
            let span = match (lengths.first(), lengths.last()) {
                (Some(a), Some(b)) if a == b => format!("all of length {a}"),
                (Some(a), Some(b)) => format!("lengths {a}..{b}"),
                _ => "no sequences".to_string(),
            };
            println!(
                "enumerate: {} maximal sequences{}, {}",
                e.sequences.len(),
                if e.truncated { " (truncated)" } else { "" },
                span
            );
            let doc = serde_json_sequences(&e.sequences, e.truncated);
            write_or_print(&io.out, &doc)
        }
        Command::Potential { input, k } => {
            let m = read_matching(&input)?;
            let line_y = default_line_y(&m);
            println!(
                "projection line y = {}",
                untangle_core::geometry::format_coord(&line_y)
            );
            let ks: Vec<usize> = match k {
                Some(k) if k < m.len() => vec![k],
                Some(k) => {
                    return Err(CliError::Usage(format!("k {k} out of range")));
                }
                None => (0..m.len()).collect(),
            };
            for k in ks {
                let value = phi_k(&m, k).map_err(usage)?;
                let word = inversion_word(&m, k).map_err(usage)?;
                println!("phi[{k}] = {value}  word = {word}");
            }
            println!("phi total = {}", phi_total(&m).map_err(usage)?);
            Ok(())
        }
        Command::Track { input, seq, out } => {
            let m = read_matching(&input)?;
            let steps = read_flips(&seq)?;
            let trace = track_sequence(&m, &steps).map_err(|e| CliError::Audit(e.to_string()))?;
            let doc = trace_to_json(&trace);
            write_or_print(&out, &doc)
        }
        Command::Reduce {
            formula,
            alpha,
            out,
            report,
            decide,
            budget,
        } => {
            let text = fs::read_to_string(&formula).map_err(usage)?;
            let f = parse_formula(&text).map_err(usage)?;
            let alpha = parse_alpha(&alpha)?;
            let k = {
                use num_traits::ToPrimitive;
                let v = f.num_variables() as i64;
                let c = f.num_clauses() as i64;
                (&alpha * BigRational::from_integer((v + 5 * c).into()))
                    .floor()
                    .to_integer()
                    .to_usize()
                    .unwrap_or(0)
                    + 1
            };
            let e = derive_embedding(&f, k);
            let validation = validate_embedding(&f, &e);
            if !validation.is_valid() {
                return Err(CliError::Audit(format!(
                    "embedding invalid: {:?}",
                    validation.violations
                )));
            }
            let asm = assemble_m_phi(&f, &e, &alpha).map_err(|e| CliError::Audit(e.to_string()))?;
            println!(
                "assembled: {} variables, {} clauses, k = {}, {} points, {} initial crossings, max coordinate bits {}",
                f.num_variables(),
                f.num_clauses(),
                asm.k,
                asm.stats.points,
                asm.stats.initial_crossings,
                asm.stats.max_coord_bits
            );
            if let Some(path) = report {
                fs::write(&path, reports_to_json(&asm.reports)).map_err(usage)?;
            }
            if decide {
                let verdict = decide_via_untangling(&asm, budget)
                    .map_err(|e| CliError::Audit(e.to_string()))?;
                println!("decision: {verdict:?}");
            }
            write_or_print(&out, &matching_to_json(&asm.matching))
        }
        Command::Verify { input, seq } => {
            let m = read_matching(&input)?;
            let steps = read_flips(&seq)?;
            let report = untangle_core::engine::verify_sequence(&m, &steps);
            println!(
                "verify: {} of {} steps valid, final crossings {}, deltas {:?}",
                report.valid_prefix,
                steps.len(),
                report.final_crossings,
                report.crossing_deltas
            );
            match report.first_invalid {
                Some(idx) => Err(CliError::Audit(format!("invalid flip at step {idx}"))),
                None => {
                    if report.final_crossings == 0 {
                        println!("sequence is a complete untangle sequence");
                    }
                    Ok(())
                }
            }
        }
        Command::Render { input, seq, out } => {
            let m = read_matching(&input)?;
            match seq {
                None => fs::write(&out, render_svg(&m)).map_err(usage),
                Some(seq_path) => {
                    let steps = read_flips(&seq_path)?;
                    let seq = untangle_core::engine::FlipSequence::replay(m, steps)
                        .map_err(|e| CliError::Audit(e.to_string()))?;
                    let frames = render_sequence(&seq);
                    let stem = out
                        .file_stem()
                        .and_then(|s| s.to_str())
                        .unwrap_or("frame")
                        .to_string();
                    let ext = out.extension().and_then(|s| s.to_str()).unwrap_or("svg");
                    let dir = out.parent().unwrap_or(Path::new("."));
                    for (i, frame) in frames.iter().enumerate() {
                        let path = dir.join(format!("{stem}-{i:04}.{ext}"));
                        fs::write(path, frame).map_err(usage)?;
                    }
                    println!("wrote {} frames", frames.len());
                    Ok(())
                }
            }
        }
        Command::Report {
            max_n,
            trials,
            seed,
            budget,
            out,
        } => {
            let reports = table_report(max_n, trials, seed, budget);
            let (ok, text) = format_report(&reports);
            write_or_print(&out, &text)?;
            if ok {
                Ok(())
            } else {
                Err(CliError::Audit("bound violation in report suite".into()))
            }
        }
    }
}

fn serde_json_sequences(seqs: &[untangle_core::engine::FlipSequence], truncated: bool) -> String {
    let mut out = String::from("{\n  \"truncated\": ");
    out.push_str(if truncated { "true" } else { "false" });
    out.push_str(",\n  \"sequences\": [\n");
    for (i, seq) in seqs.iter().enumerate() {
        let flips: Vec<String> = seq
            .steps
            .iter()
            .map(|f| format!("[{},{}]", f.i, f.j))
            .collect();
        out.push_str(&format!("    [{}]", flips.join(",")));
        out.push_str(if i + 1 < seqs.len() { ",\n" } else { "\n" });
    }
    out.push_str("  ]\n}\n");
    out
}

fn reports_to_json(reports: &[untangle_core::sat::GadgetReport]) -> String {
    let mut out = String::from("[\n");
    for (i, r) in reports.iter().enumerate() {
        let lengths: Vec<String> = r
            .lengths
            .iter()
            .map(|(len, count)| format!("\"{len}\": {count}"))
            .collect();
        out.push_str(&format!(
            "  {{\"id\": \"{}\", \"sequences\": {}, \"lengths\": {{{}}}, \"distinct_ends\": {}, \"verdict\": {}}}{}\n",
            r.id,
            r.sequence_count,
            lengths.join(", "),
            r.distinct_ends,
            r.verdict,
            if i + 1 < reports.len() { "," } else { "" }
        ));
    }
    out.push_str("]\n");
    out
}

fn trace_to_json(trace: &untangle_core::tracking::TrackTrace) -> String {
    use untangle_core::matching::PairState;
    let state_char = |s: PairState| match s {
        PairState::X => 'X',
        PairState::H => 'H',
        PairState::T => 'T',
    };
    let mut out = String::from("{\n  \"slots\": [");
    let slots: Vec<String> = trace
        .slots
        .iter()
        .map(|(i, j)| format!("[{i},{j}]"))
        .collect();
    out.push_str(&slots.join(","));
    out.push_str("],\n  \"trajectories\": [");
    let trajs: Vec<String> = trace
        .states
        .iter()
        .map(|t| {
            let s: String = t.iter().map(|&st| state_char(st)).collect();
            format!("\"{s}\"")
        })
        .collect();
    out.push_str(&trajs.join(","));
    out.push_str("],\n  \"transitions\": {");
    let trans: Vec<String> = trace
        .transitions
        .iter()
        .map(|(&(from, to), &count)| {
            format!("\"{}->{}\": {}", state_char(from), state_char(to), count)
        })
        .collect();
    out.push_str(&trans.join(", "));
    out.push_str("},\n  \"state_degradations\": [");
    let events: Vec<String> = trace
        .ht_events
        .iter()
        .map(|e| format!("{{\"step\": {}, \"slot\": {}}}", e.step, e.slot))
        .collect();
    out.push_str(&events.join(","));
    out.push_str("]\n}\n");
    out
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes (e.g. `untangle … | head`),
    // like any other line-oriented tool.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Let clap print help/version normally; everything else is a
            // usage error with exit code 1.
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    return ExitCode::SUCCESS;
                }
                _ => {
                    eprint!("{e}");
                    return ExitCode::from(1);
                }
            }
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Audit(msg)) => {
            eprintln!("audit failure: {msg}");
            ExitCode::from(2)
        }
    }
}
