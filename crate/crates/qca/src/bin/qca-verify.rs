//! Command-line harness: runs a named suite and writes its report.
//!
//! Exit status: 0 when every item passes, 1 when an item fails, 2 for an
//! invalid configuration and 3 when the resource guard refuses the run.

use clap::{Parser, ValueEnum};
use qca::suite::{dump_matrices, parse_params, parse_q_mode, run_suite, SuiteConfig, SuiteError, SuiteId};
use qca::CheckOptions;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "qca-verify", version, about = "Exact verification suites for type C quantum affine R-matrices and their Gauss data")]
struct Args {
    /// ybe, unitarity, crossing, scalar-f, rll, gauss, minors, embedding,
    /// drinfeld, center, main-map, cartan or all.
    #[arg(long)]
    suite: String,
    /// Rank: the auxiliary space has dimension 2n.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Number of tensor factors m of the evaluation module.
    #[arg(long, default_value_t = 2)]
    fusion: usize,
    /// Comma-separated evaluation parameters a_1,...,a_m.
    #[arg(long)]
    params: Option<String>,
    /// symbolic or pinned:<rational>.
    #[arg(long, default_value = "symbolic")]
    q_mode: String,
    /// Truncation order K for series and mode windows.
    #[arg(long, default_value_t = 4)]
    trunc: usize,
    /// Seed choosing the default evaluation parameters.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, env = "QCA_WORKERS")]
    workers: Option<usize>,
    /// Negative control: break one ingredient of every suite.
    #[arg(long)]
    perturb: bool,
    /// Directory for text dumps of Rbar(u) and the fused L(u).
    #[arg(long)]
    dump: Option<PathBuf>,
}

fn config(args: &Args) -> Result<SuiteConfig, SuiteError> {
    let suite: SuiteId = args.suite.parse()?;
    let mut opts = CheckOptions::default().with_mode(parse_q_mode(&args.q_mode)?).with_trunc(args.trunc).with_seed(args.seed);
    if let Some(p) = &args.params {
        opts = opts.with_eval_params(parse_params(p)?);
    }
    if args.perturb {
        opts = opts.perturbed();
    }
    let mut cfg = SuiteConfig::new(suite, args.n, args.fusion, opts);
    cfg.workers = args.workers;
    cfg.validate()?;
    Ok(cfg)
}

fn refusal(e: &SuiteError) -> ExitCode {
    eprintln!("qca-verify: {e}");
    match e {
        SuiteError::TooLarge { .. } => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = match config(&args) {
        Ok(c) => c,
        Err(e) => return refusal(&e),
    };
    if let Some(dir) = &args.dump {
        match dump_matrices(&cfg, dir) {
            Ok(paths) => {
                for p in paths {
                    eprintln!("wrote {}", p.display());
                }
            }
            Err(e) => {
                eprintln!("qca-verify: dump failed: {e}");
                return ExitCode::from(2);
            }
        }
    }
    let report = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e) => return refusal(&e),
    };
    let mut doc = match args.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    if !doc.ends_with('\n') {
        doc.push('\n');
    }
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &doc) {
                eprintln!("qca-verify: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{doc}"),
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        for it in report.items.iter().filter(|i| !i.is_pass()) {
            if let Some(w) = &it.witness {
                eprintln!("FAIL {}: {}", it.id, w.detail);
            }
        }
        ExitCode::from(1)
    }
}
