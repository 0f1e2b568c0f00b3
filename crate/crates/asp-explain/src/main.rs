use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use asp_explain::pipeline::{run, OutputFormat, RunConfig};

/// Explain why a ground atom is true or false in an answer set.
#[derive(Parser)]
#[command(name = "asp-explain", version, about)]
struct Cli {
    /// Program file (ASP text).
    #[arg(long)]
    program: PathBuf,

    /// Answer-set file: ground atoms separated by whitespace. When omitted,
    /// the first answer set found by brute-force enumeration is used
    /// (requires a Herbrand base within --oracle-cap).
    #[arg(long)]
    answer_set: Option<PathBuf>,

    /// Ground atom to explain.
    #[arg(long)]
    query: String,

    /// Output artifact.
    #[arg(long, value_enum, default_value_t = OutputFormat::Dot)]
    format: OutputFormat,

    /// Number of optimal assumption sets to explain (blocks separated by
    /// a `---` line).
    #[arg(long, default_value_t = 1)]
    count: usize,

    /// Write the artifact here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Skip answer-set validation.
    #[arg(long)]
    trust_answer_set: bool,

    /// Additional ground atoms of interest, used as grounding seeds
    /// (repeatable).
    #[arg(long = "extra-atom")]
    extra_atom: Vec<String>,

    /// Cap on grounding rounds that invent new integers or deeper terms.
    #[arg(long, default_value_t = 64)]
    arith_depth: usize,

    /// Largest Herbrand base the answer-set oracle will enumerate.
    #[arg(long, default_value_t = 20)]
    oracle_cap: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = RunConfig {
        program: cli.program,
        answer_set: cli.answer_set,
        query: cli.query,
        format: cli.format,
        count: cli.count,
        out: cli.out,
        trust_answer_set: cli.trust_answer_set,
        extra_atoms: cli.extra_atom,
        arith_depth: cli.arith_depth,
        oracle_cap: cli.oracle_cap,
    };
    match run(&config) {
        Ok(output) => {
            if config.out.is_none() {
                print!("{output}");
                if !output.ends_with('\n') {
                    println!();
                }
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
