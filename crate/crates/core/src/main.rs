use std::io::{self, Read, Write};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use knot_reductivity::enumerate::{enumerate_shadows, EnumOptions, Filters, ProjectionRecord, DEFAULT_BOUND};
use knot_reductivity::hunt::{hunt, Predicate};
use knot_reductivity::reductivity::{
    replay_certificate, ReductivityCertificate, ReductivityKind, ReductivityValue, Witness, DEFAULT_R_CAP,
};
use knot_reductivity::verify::{emit_table, run_suite, Format, Status, TableRow};
use knot_reductivity::{Error, GaussWord};

#[derive(Parser)]
#[command(name = "reductivity", version, about = "Reductivities and related invariants of knot projections")]
struct Cli {
    /// worker threads; 0 uses every core. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// text, csv, jsonl or json
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// largest witness length tried for r
    #[arg(long = "cap-r", global = true, default_value_t = DEFAULT_R_CAP)]
    cap_r: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Range {
    #[arg(long = "max-crossings")]
    max_crossings: usize,
    #[arg(long, default_value = "prime,reduced")]
    filters: String,
    /// refuse crossing numbers above this
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: usize,
}

#[derive(Subcommand)]
enum Command {
    /// All invariants of one word (read from stdin when --word is absent)
    Compute {
        #[arg(long)]
        word: Option<String>,
    },
    /// Every canonical shadow up to a crossing number
    Enumerate(Range),
    /// The t, r, y, i, tau table
    Table(Range),
    /// Check every property over the enumerated shadows
    Verify(Range),
    /// Search for shadows satisfying a predicate such as "t < r"
    Hunt {
        #[arg(long)]
        predicate: String,
        #[arg(long = "max-crossings")]
        max_crossings: usize,
        #[arg(long, default_value = "prime,reduced")]
        filters: String,
        /// seconds
        #[arg(long, default_value_t = 600)]
        budget: u64,
    },
    /// Check a reductivity witness against a word
    Replay {
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        kind: String,
        #[arg(long)]
        witness: String,
    },
}

enum Failure {
    Input(Error),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut out = String::new();
    let outcome = pool.install(|| run(&cli, &mut out));
    let _ = io::stdout().lock().write_all(out.as_bytes());
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_word(arg: &Option<String>) -> Result<GaussWord, Error> {
    match arg {
        Some(w) => w.parse(),
        None => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            text.parse()
        }
    }
}

fn options(r: &Range, cap_r: usize) -> Result<EnumOptions, Error> {
    Ok(EnumOptions {
        filters: Filters::parse(&r.filters)?,
        cap_r,
        bound: r.bound,
    })
}

fn json_line<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable") + "\n"
}

fn json_pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn run(cli: &Cli, out: &mut String) -> Result<(), Failure> {
    let format: Format = cli.format.parse()?;
    match &cli.command {
        Command::Compute { word } => {
            let mut rec = ProjectionRecord::compute(&read_word(word)?, cli.cap_r)?;
            rec.label = None;
            match format {
                Format::Json => out.push_str(&json_pretty(&rec)),
                Format::Jsonl => out.push_str(&json_line(&rec)),
                Format::Csv => out.push_str(&emit_table(std::slice::from_ref(&rec), Format::Csv)?),
                Format::Text => describe(&rec, out),
            }
        }
        Command::Enumerate(range) => {
            let recs = enumerate_shadows(range.max_crossings, &options(range, cli.cap_r)?)?;
            match format {
                Format::Jsonl => recs.iter().for_each(|r| out.push_str(&json_line(r))),
                Format::Json => out.push_str(&json_pretty(&recs)),
                Format::Csv => out.push_str(&emit_table(&recs, Format::Csv)?),
                Format::Text => {
                    for r in &recs {
                        out.push_str(&format!("{}\t{}\n", r.display_label(), r.word));
                    }
                }
            }
        }
        Command::Table(range) => {
            let recs = enumerate_shadows(range.max_crossings, &options(range, cli.cap_r)?)?;
            out.push_str(&emit_table(&recs, format)?);
        }
        Command::Verify(range) => {
            let recs = enumerate_shadows(range.max_crossings, &options(range, cli.cap_r)?)?;
            let report = run_suite(&recs, range.max_crossings);
            match format {
                Format::Json => out.push_str(&json_pretty(&report)),
                Format::Jsonl => report.properties.iter().for_each(|p| out.push_str(&json_line(p))),
                Format::Csv => {
                    out.push_str("property_id,status,counterexamples\n");
                    for p in &report.properties {
                        let status = serde_json::to_value(p.status).expect("status");
                        out.push_str(&format!(
                            "{},{},{}\n",
                            p.property_id,
                            status.as_str().unwrap_or_default(),
                            p.counterexamples.len()
                        ));
                    }
                }
                Format::Text => {
                    for p in &report.properties {
                        let status = serde_json::to_value(p.status).expect("status");
                        out.push_str(&format!(
                            "{:<10} {:<34} {}\n",
                            status.as_str().unwrap_or_default(),
                            p.property_id,
                            p.statement
                        ));
                        for c in p.counterexamples.iter().take(5) {
                            out.push_str(&format!("{:<10} {:<34}   {c}\n", "", ""));
                        }
                    }
                    let failed = report.failures().len();
                    out.push_str(&format!(
                        "{} shadows, {} properties, {} failed\n",
                        report.records,
                        report.properties.len(),
                        failed
                    ));
                }
            }
            if report.properties.iter().any(|p| p.status == Status::Fail) {
                return Err(Failure::Check);
            }
        }
        Command::Hunt {
            predicate,
            max_crossings,
            filters,
            budget,
        } => {
            let pred = Predicate::parse(predicate)?;
            let opts = EnumOptions {
                filters: Filters::parse(filters)?,
                cap_r: cli.cap_r,
                bound: *max_crossings,
            };
            let report = hunt(&pred, *max_crossings, Duration::from_secs(*budget), &opts)?;
            match format {
                Format::Json => out.push_str(&json_pretty(&report)),
                Format::Jsonl => report.findings.iter().for_each(|f| out.push_str(&json_line(f))),
                Format::Csv => {
                    let rows: Vec<TableRow> = report.findings.iter().map(|f| f.row.clone()).collect();
                    let mut w = csv::Writer::from_writer(Vec::new());
                    for r in &rows {
                        w.serialize(r).map_err(|e| Error::InvalidArgument(e.to_string()))?;
                    }
                    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
                    out.push_str(&String::from_utf8(bytes).expect("utf-8"));
                }
                Format::Text => {
                    out.push_str(&report.summary());
                    if report.truncated {
                        out.push_str(" (budget exhausted)");
                    }
                    out.push('\n');
                    for f in &report.findings {
                        let r = &f.row;
                        out.push_str(&format!(
                            "{}\tt={} r={} y={} i={} tau={}\t{}\n",
                            r.label, r.t, r.r, r.y, r.i, r.tau, f.word
                        ));
                    }
                    if !report.undecided.is_empty() {
                        out.push_str(&format!("{} undecided because of capped values\n", report.undecided.len()));
                    }
                }
            }
        }
        Command::Replay { word, kind, witness } => {
            let w = read_word(word)?;
            let kind: ReductivityKind = kind.parse()?;
            let witness = Witness::parse(kind, witness)?;
            let cert = ReductivityCertificate {
                kind,
                value: ReductivityValue::Exact(witness.size()),
                witness: Some(witness),
            };
            let replay = replay_certificate(&w, &cert)?;
            match format {
                Format::Json | Format::Jsonl => {
                    let v = serde_json::json!({
                        "kind": kind,
                        "witness": cert.witness.as_ref().map(|w| w.to_string()),
                        "size": cert.value.exact(),
                        "valid": replay.valid,
                        "final_word": replay.final_word.as_ref().map(|w| w.to_string()),
                        "reason": replay.reason,
                    });
                    if format == Format::Json {
                        out.push_str(&json_pretty(&v));
                    } else {
                        out.push_str(&json_line(&v));
                    }
                }
                _ => {
                    if replay.valid {
                        out.push_str(&format!("valid: {kind} witness of size {}\n", witness_size(&cert)));
                    } else {
                        out.push_str(&format!(
                            "invalid: {}\n",
                            replay.reason.as_deref().unwrap_or("witness does not reduce the word")
                        ));
                    }
                }
            }
            if !replay.valid {
                return Err(Failure::Check);
            }
        }
    }
    Ok(())
}

fn witness_size(cert: &ReductivityCertificate) -> usize {
    cert.witness.as_ref().map_or(0, Witness::size)
}

fn describe(rec: &ProjectionRecord, out: &mut String) {
    let mut line = |k: &str, v: String| out.push_str(&format!("{k:<16}{v}\n"));
    line("word", rec.word.to_string());
    line("crossings", rec.n.to_string());
    line("prime", rec.prime.to_string());
    line("reduced", rec.reduced.to_string());
    for kind in ReductivityKind::ALL {
        let c = rec.certificate(kind);
        let w = c.witness.as_ref().map(|w| format!("  [{w}]")).unwrap_or_default();
        line(kind.name(), format!("{}{w}", c.value));
    }
    line("tau", rec.tau.to_string());
    line("seifert circles", rec.seifert_circles.to_string());
    line("census", serde_json::to_string(&rec.census).expect("census"));
    line("2-cut circles", format!("{} ({} separating)", rec.cut2.count, rec.cut2.separating));
    line("3-cut circles", format!("{} ({} separating)", rec.cut3.count, rec.cut3.separating));
}
