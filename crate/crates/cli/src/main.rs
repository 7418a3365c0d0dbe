use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use char2qf_cli::{parse, run, Options};

/// Runs a char2qf script from a file or standard input.
#[derive(Parser)]
#[command(name = "char2qf", version)]
struct Args {
    /// Script file; standard input when absent.
    script: Option<PathBuf>,
    /// Evaluate this script text instead of a file.
    #[arg(short = 'e', long = "eval", conflicts_with = "script")]
    eval: Option<String>,
    /// One JSON document per command.
    #[arg(long)]
    json: bool,
    /// Default seed for `verify`.
    #[arg(long)]
    seed: Option<u64>,
    /// Default trial count for `verify`.
    #[arg(long)]
    trials: Option<usize>,
    /// Degree bound for isotropy and descent searches.
    #[arg(long, env = "QF2_BUDGET")]
    budget: Option<usize>,
    /// Per-command time limit.
    #[arg(long = "timeout-ms")]
    timeout_ms: Option<u64>,
    /// Record per-trial wall time in suite reports.
    #[arg(long)]
    timing: bool,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let text = match (&args.eval, &args.script) {
        (Some(s), _) => s.clone(),
        (None, Some(p)) => match std::fs::read_to_string(p) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("cannot read {}: {e}", p.display());
                return ExitCode::from(1);
            }
        },
        (None, None) => {
            let mut s = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut s) {
                eprintln!("cannot read standard input: {e}");
                return ExitCode::from(1);
            }
            s
        }
    };
    let script = match parse(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(1);
        }
    };
    let opts = Options {
        json: args.json,
        seed: args.seed,
        trials: args.trials,
        budget: args.budget,
        timeout_ms: args.timeout_ms,
        timing: args.timing,
    };
    let out = run(&script, &opts);
    for r in &out.records {
        println!("{}", r.render(opts.json));
    }
    ExitCode::from(out.exit_code() as u8)
}
