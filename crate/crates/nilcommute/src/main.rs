use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nilcommute::config::{DEFAULT_PRIME, DEFAULT_TRIALS};
use nilcommute::formats::{paper_layout, PolyMatrixJson};
use nilcommute::runner::run_timed;
use nilcommute::{replay, ExperimentConfig, ExperimentId, Format, HarnessError, HarnessResult, Report};
use nilcommute_core::upsilon::build_upsilon;

#[derive(Parser)]
#[command(name = "nilcommute", version, about = "Experiments on pairs of commuting nilpotent matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stored matrices, the char-3 witness and other fixed claims.
    VerifyPaper(RunArgs),
    /// Block rank laws on random pairs.
    RankLaws(RunArgs),
    /// Generic rank of N_B per partition.
    GenericRank(RunArgs),
    /// Determinant identities of the specialized Upsilon minors.
    UpsilonIdentities(RunArgs),
    /// det mu(I, Upsilon(7,l)) modulo 3 for l = 3, 4.
    Char3Witness(RunArgs),
    /// Evaluated Upsilon columns against A^i B^j v.
    LemmaM(RunArgs),
    /// zeta / zeta-hat round trips on random staircase ideals.
    #[command(alias = "hilbert")]
    HilbertRoundtrip(RunArgs),
    /// Minimum tangent dimensions at random points.
    TangentDim(RunArgs),
    /// Perturbation of B by polynomials in A down to singleton blocks.
    Coarsen(RunArgs),
    /// Print Upsilon(n, l).
    Upsilon {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        /// Emit JSON instead of the aligned text layout.
        #[arg(long)]
        json: bool,
    },
    /// Re-run the counterexamples of a stored report.
    Replay {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Jordan type, e.g. 3,2,2.
    #[arg(long)]
    partition: Option<String>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    /// `all` or one law id such as lemma-3.1.
    #[arg(long)]
    law: Option<String>,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, alias = "roundtrips", default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Record wall-clock time in the report.
    #[arg(long)]
    timing: bool,
    /// Adds a synthetic violation of the named law to trial 0.
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

impl RunArgs {
    fn config(&self, experiment: ExperimentId) -> ExperimentConfig {
        ExperimentConfig {
            experiment,
            n: self.n,
            partition: self.partition.clone(),
            m: self.m,
            l: self.l,
            law: self.law.clone(),
            prime: self.prime,
            trials: self.trials,
            seed: self.seed,
            format: self.format.into(),
            inject_fault: self.inject_fault.clone(),
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> HarnessResult<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| HarnessError::Usage(format!("{}: {e}", p.display()))),
        None => Ok(std::io::stdout().write_all(text.as_bytes())?),
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    }
}

fn main_inner(cli: Cli) -> HarnessResult<i32> {
    let (id, args) = match cli.command {
        Command::Upsilon { n, l, json } => {
            let u = build_upsilon(n, l).map_err(|e| HarnessError::Usage(e.to_string()))?;
            let text = if json {
                PolyMatrixJson::from_matrix(u.vars(), &u.matrix).to_json()
            } else {
                paper_layout(&u.matrix, Some(u.order.pairs()))
            };
            emit(&text, None)?;
            return Ok(0);
        }
        Command::Replay { path, out, format } => {
            let report = replay(&path)?;
            emit(&render(&report, format.into()), out.as_ref())?;
            return Ok(report.exit_code());
        }
        Command::VerifyPaper(a) => (ExperimentId::VerifyPaper, a),
        Command::RankLaws(a) => (ExperimentId::RankLaws, a),
        Command::GenericRank(a) => (ExperimentId::GenericRank, a),
        Command::UpsilonIdentities(a) => (ExperimentId::UpsilonIdentities, a),
        Command::Char3Witness(a) => (ExperimentId::Char3Witness, a),
        Command::LemmaM(a) => (ExperimentId::LemmaM, a),
        Command::HilbertRoundtrip(a) => (ExperimentId::HilbertRoundtrip, a),
        Command::TangentDim(a) => (ExperimentId::TangentDim, a),
        Command::Coarsen(a) => (ExperimentId::Coarsen, a),
    };
    let cfg = args.config(id);
    let report = run_timed(&cfg, args.timing)?;
    emit(&render(&report, cfg.format), args.out.as_ref())?;
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("nilcommute: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
