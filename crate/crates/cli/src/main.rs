//! `qreal`: command-line front end.
//!
//! Exit status: 0 on success, 2 when the library reports a domain or
//! numerical error (a JSON object with `error` and `message` goes to
//! stderr), 64 on usage errors.

mod commands;
mod input;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "qreal", version, about = "q-deformed rational, real and complex numbers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit CSV instead of JSON where a table is available.
    #[arg(long, global = true)]
    pub csv: bool,

    /// Emit JSON (the default).
    #[arg(long, global = true)]
    pub json: bool,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<std::path::PathBuf>,

    /// Seed for randomised subcommands. Output is deterministic for a fixed seed.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct XArg {
    /// `p/q`, `phi`, `arith:s,r`, or a decimal string.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,

    /// Continued fraction digits to extract from a decimal or stream.
    #[arg(long, default_value_t = 40)]
    pub digits: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Negative continued fraction digits of x.
    Encode(XArg),
    /// Value of a word `c1,c2,...`.
    Decode {
        #[arg(long)]
        word: String,
    },
    /// Exact `[x]_q` for rational x.
    Qrational(XArg),
    /// Integer power series of `[x]_q` (or its reciprocal).
    Series {
        #[command(flatten)]
        x: XArg,
        #[arg(long, default_value_t = 30)]
        order: usize,
        #[arg(long)]
        reciprocal: bool,
    },
    /// Numerical `[x]_q` at complex q.
    Eval {
        #[command(flatten)]
        x: XArg,
        /// `re` or `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// auto, d, disk or negative.
        #[arg(long, default_value = "auto")]
        method: String,
    },
    /// Jump of `[.]_q` at a rational x >= 1.
    Jump {
        #[command(flatten)]
        x: XArg,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
    },
    /// Sum of all jumps, numerically or as a truncated series.
    Totaljump {
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 2_000_000_000)]
        budget: usize,
        /// Exact enumeration over words of weight at most K.
        #[arg(long, value_name = "K")]
        formal: Option<u64>,
    },
    /// Critical constants beta, beta_1, beta_2.
    Beta {
        #[arg(long, default_value_t = 0)]
        level: u8,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Root-test estimate of the radius of convergence.
    Radius {
        #[command(flatten)]
        x: XArg,
        #[arg(long, default_value_t = 400)]
        order: usize,
        #[arg(long, default_value_t = 50)]
        window: usize,
        #[arg(long)]
        reciprocal: bool,
    },
    /// Staged construction of a stream with a small radius.
    Counterexample {
        #[arg(long, default_value_t = 3)]
        stages: usize,
        #[arg(long, default_value_t = qreal::q_series::DEFAULT_STAGE_BUDGET)]
        budget: usize,
    },
    /// q-Bessel value of the progression (s, s+r, ...).
    Bessel {
        #[arg(long)]
        s: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// `[tau]_q` in the upper half-plane.
    Qcomplex {
        /// `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Membership of a grid of q in the convergence regions.
    Regionscan {
        #[arg(long, allow_hyphen_values = true, default_value = "-0.5,0.5")]
        re: String,
        #[arg(long, allow_hyphen_values = true, default_value = "-0.5,0.5")]
        im: String,
        #[arg(long, default_value_t = 21)]
        n_re: usize,
        #[arg(long, default_value_t = 21)]
        n_im: usize,
    },
}

const EXIT_DOMAIN: u8 = 2;
const EXIT_USAGE: u8 = 64;

fn configure_threads() {
    if let Some(n) = std::env::var("QREAL_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    let rendered = match commands::run(&cli) {
        Ok(text) => text,
        Err(e) => {
            let obj = serde_json::json!({ "error": e.code(), "message": e.to_string() });
            eprintln!("{obj}");
            return ExitCode::from(EXIT_DOMAIN);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, rendered.as_bytes()),
        None => std::io::stdout().write_all(rendered.as_bytes()),
    };
    match written {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", serde_json::json!({ "error": "IoError", "message": e.to_string() }));
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}
