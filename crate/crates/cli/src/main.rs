//! `centropy`: classify two-qubit states, scan the named families, find
//! orbit optima, build witness operators, run Monte Carlo estimates and the
//! worked dense-coding / state-merging scenarios.
//!
//! Exit codes: 0 success, 2 input validation, 3 I/O, 4 domain precondition
//! (e.g. building a witness for a state inside the class).

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use centropy_core::classes::{
    bd_acvenn_closed_form, classify, is_acvenn, is_al_werner, ClassReport,
};
use centropy_core::demo::{dense_coding_demo, state_merging_demo};
use centropy_core::entropy::{dense_coding_capacity, von_neumann};
use centropy_core::error::Error as CoreError;
use centropy_core::linalg::Side;
use centropy_core::mc::{estimate_extreme, survey, Objective};
use centropy_core::orbit::{min_conditional_entropy, OrbitReportJson};
use centropy_core::states::{bell_diagonal, werner, BellDiagonalParams, DensityMatrix, StateJson};
use centropy_core::witness::{build_witness, eval_witness, WitnessJson};

#[derive(Parser)]
#[command(name = "centropy", version, about = "Two-qubit conditional-entropy toolkit")]
struct Cli {
    /// RNG seed for sampling commands.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Hermiticity/positivity tolerance for state validation.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Write the primary output to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output encoding; defaults to CSV for `scan` and JSON elsewhere.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a state file into the absolute classes.
    Classify {
        /// State JSON file ({"dim":[2,2],"matrix":[[[re,im],..],..]}).
        state: PathBuf,
    },
    /// Tabulate state families over parameter grids.
    #[command(subcommand)]
    Scan(ScanCommand),
    /// Orbit minimum of the conditional entropy for a state file.
    Orbit {
        state: PathBuf,
    },
    /// Build or evaluate separating witness operators.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Monte Carlo extremal estimation over sampled states.
    Mc {
        /// One of max-distance-in-acvenn, min-distance-outside-acvenn,
        /// min-entropy-in-as.
        #[arg(long)]
        objective: String,
        #[arg(long)]
        samples: u64,
        /// Also write a per-sample CSV survey (distance, entropy, class
        /// flags) drawn from the same seed and partition layout.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Worked scenarios that activate a state with a global unitary.
    #[command(subcommand)]
    Demo(DemoCommand),
}

#[derive(Subcommand)]
enum ScanCommand {
    /// Werner family over a uniform p grid (columns:
    /// p,S,cond_A,M,is_acvenn,is_as,is_al,is_ppt_separable).
    Werner {
        #[arg(long)]
        steps: usize,
    },
    /// Bell-diagonal states over a (c1,c2,c3) grid (columns:
    /// c1,c2,c3,inside_tetrahedron,S,is_acvenn,closed_form_agrees).
    BellDiagonal {
        /// Grid points per axis over [-1, 1].
        #[arg(long)]
        grid: usize,
    },
}

#[derive(Subcommand)]
enum WitnessCommand {
    /// Build the tangent-hyperplane witness for a target state file.
    Build {
        target: PathBuf,
    },
    /// Evaluate Tr(W rho) for a witness file and a state file.
    Eval {
        #[arg(long)]
        witness: PathBuf,
        state: PathBuf,
    },
}

#[derive(Subcommand)]
enum DemoCommand {
    /// Dense-coding activation of the two-level mixture with parameters
    /// (a, b).
    DenseCoding {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
    },
    /// State-merging activation of the classical 3/4-1/4 bit mixture.
    StateMerging,
}

/// Failure carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn validation(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        Self {
            code: 4,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(err: CoreError) -> Self {
        match err {
            CoreError::TargetInsideClass(_) | CoreError::EmptyAcceptance(_) => {
                Failure::domain(err.to_string())
            }
            _ => Failure::validation(err.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("centropy: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if cli.tol <= 0.0 {
        return Err(Failure::validation("--tol must be positive"));
    }
    match &cli.command {
        Command::Classify { state } => cmd_classify(&cli, state),
        Command::Scan(scan) => cmd_scan(&cli, scan),
        Command::Orbit { state } => cmd_orbit(&cli, state),
        Command::Witness(witness) => cmd_witness(&cli, witness),
        Command::Mc {
            objective,
            samples,
            dump,
        } => cmd_mc(&cli, objective, *samples, dump.as_deref()),
        Command::Demo(demo) => cmd_demo(&cli, demo),
    }
}

// ---------------------------------------------------------------------------
// commands

/// Classify output: the flat class report plus the dense-coding capacities
/// for both receiver marginals.
#[derive(Serialize)]
struct ClassifyOutput {
    #[serde(flatten)]
    report: ClassReport,
    dense_coding_capacity_a: f64,
    dense_coding_capacity_b: f64,
}

fn cmd_classify(cli: &Cli, path: &Path) -> Result<(), Failure> {
    let rho = read_state(path, cli.tol)?;
    let output = ClassifyOutput {
        report: classify(&rho),
        dense_coding_capacity_a: dense_coding_capacity(&rho, Side::A),
        dense_coding_capacity_b: dense_coding_capacity(&rho, Side::B),
    };
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => emit(cli, &to_json(&output)?),
        Format::Csv => {
            let r = &output.report;
            let mut csv = String::new();
            csv.push_str(
                "s_total,cond_given_a,cond_given_b,m_value,is_cvenn,is_acvenn,\
                 is_ppt_separable,is_abs_separable,is_bell_local,distance_from_i4,\
                 dense_coding_capacity_a,dense_coding_capacity_b\n",
            );
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                sig12(r.s_total),
                sig12(r.cond_given_a),
                sig12(r.cond_given_b),
                sig12(r.m_value),
                r.is_cvenn,
                r.is_acvenn,
                r.is_ppt_separable,
                r.is_abs_separable,
                r.is_bell_local,
                sig12(r.distance_from_i4),
                sig12(output.dense_coding_capacity_a),
                sig12(output.dense_coding_capacity_b),
            );
            emit(cli, &csv)
        }
    }
}

fn cmd_scan(cli: &Cli, scan: &ScanCommand) -> Result<(), Failure> {
    if cli.format == Some(Format::Json) {
        return Err(Failure::validation("scan emits CSV; drop --format json"));
    }
    let csv = match scan {
        ScanCommand::Werner { steps } => scan_werner(*steps)?,
        ScanCommand::BellDiagonal { grid } => scan_bell_diagonal(*grid)?,
    };
    emit(cli, &csv)
}

fn scan_werner(steps: usize) -> Result<String, Failure> {
    if steps < 2 {
        return Err(Failure::validation("--steps must be at least 2"));
    }
    let mut csv = String::from("p,S,cond_A,M,is_acvenn,is_as,is_al,is_ppt_separable\n");
    for k in 0..steps {
        let p = k as f64 / (steps - 1) as f64;
        let rho = werner(p).map_err(Failure::from)?;
        let report = classify(&rho);
        let al = is_al_werner(p).map_err(Failure::from)?;
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{}",
            sig12(p),
            sig12(report.s_total),
            sig12(report.cond_given_a),
            sig12(report.m_value),
            report.is_acvenn,
            report.is_abs_separable,
            al,
            report.is_ppt_separable,
        );
    }
    Ok(csv)
}

fn scan_bell_diagonal(grid: usize) -> Result<String, Failure> {
    if grid < 2 {
        return Err(Failure::validation("--grid must be at least 2 per axis"));
    }
    let coord = |k: usize| -1.0 + 2.0 * k as f64 / (grid - 1) as f64;
    let mut csv =
        String::from("c1,c2,c3,inside_tetrahedron,S,is_acvenn,closed_form_agrees\n");
    for i in 0..grid {
        for j in 0..grid {
            for k in 0..grid {
                let (c1, c2, c3) = (coord(i), coord(j), coord(k));
                let row = match BellDiagonalParams::new(c1, c2, c3) {
                    Err(_) => format!("{},{},{},false,,,", sig12(c1), sig12(c2), sig12(c3)),
                    Ok(params) => {
                        let rho = bell_diagonal(&params).map_err(Failure::from)?;
                        let s = von_neumann(&rho);
                        let member = is_acvenn(&rho);
                        let agrees = match bd_acvenn_closed_form(&params) {
                            Ok(closed) => (closed == member).to_string(),
                            // boundary points have log(0) in the closed form
                            Err(_) => String::new(),
                        };
                        format!(
                            "{},{},{},true,{},{},{}",
                            sig12(c1),
                            sig12(c2),
                            sig12(c3),
                            sig12(s),
                            member,
                            agrees
                        )
                    }
                };
                csv.push_str(&row);
                csv.push('\n');
            }
        }
    }
    Ok(csv)
}

fn cmd_orbit(cli: &Cli, path: &Path) -> Result<(), Failure> {
    require_json(cli, "orbit")?;
    let rho = read_state(path, cli.tol)?;
    let report = min_conditional_entropy(&rho);
    emit(cli, &to_json(&OrbitReportJson::from(&report))?)
}

fn cmd_witness(cli: &Cli, command: &WitnessCommand) -> Result<(), Failure> {
    require_json(cli, "witness")?;
    match command {
        WitnessCommand::Build { target } => {
            let chi = read_state(target, cli.tol)?;
            let witness = build_witness(&chi).map_err(Failure::from)?;
            emit(cli, &to_json(&WitnessJson::from(&witness))?)
        }
        WitnessCommand::Eval { witness, state } => {
            let text = read_file(witness)?;
            let parsed: WitnessJson = serde_json::from_str(&text)
                .map_err(|e| Failure::validation(format!("witness file: {e}")))?;
            let witness = parsed.into_witness().map_err(Failure::from)?;
            let rho = read_state(state, cli.tol)?;
            emit(cli, &format!("{}\n", sig17(eval_witness(&witness, &rho))))
        }
    }
}

fn cmd_mc(cli: &Cli, objective: &str, samples: u64, dump: Option<&Path>) -> Result<(), Failure> {
    require_json(cli, "mc")?;
    if samples == 0 {
        return Err(Failure::validation("--samples must be at least 1"));
    }
    let objective = Objective::from_str(objective).map_err(Failure::from)?;
    let stats = estimate_extreme(objective, samples, cli.seed).map_err(Failure::from)?;
    if let Some(path) = dump {
        let mut csv = String::from(
            "distance,S,is_acvenn,is_abs_separable,is_bell_local,is_ppt_separable\n",
        );
        for row in survey(samples, cli.seed) {
            let _ = writeln!(
                csv,
                "{},{},{},{},{},{}",
                sig12(row.distance),
                sig12(row.s_total),
                row.is_acvenn,
                row.is_abs_separable,
                row.is_bell_local,
                row.is_ppt_separable,
            );
        }
        write_file(path, &csv)?;
    }
    emit(cli, &to_json(&stats)?)
}

fn cmd_demo(cli: &Cli, demo: &DemoCommand) -> Result<(), Failure> {
    require_json(cli, "demo")?;
    match demo {
        DemoCommand::DenseCoding { a, b } => {
            let record = dense_coding_demo(*a, *b).map_err(Failure::from)?;
            emit(cli, &to_json(&record)?)
        }
        DemoCommand::StateMerging => emit(cli, &to_json(&state_merging_demo())?),
    }
}

// ---------------------------------------------------------------------------
// plumbing

fn require_json(cli: &Cli, name: &str) -> Result<(), Failure> {
    if cli.format == Some(Format::Csv) {
        return Err(Failure::validation(format!(
            "{name} emits JSON; drop --format csv"
        )));
    }
    Ok(())
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))
}

fn read_state(path: &Path, tol: f64) -> Result<DensityMatrix, Failure> {
    let text = read_file(path)?;
    let parsed: StateJson = serde_json::from_str(&text)
        .map_err(|e| Failure::validation(format!("state file {}: {e}", path.display())))?;
    parsed
        .into_state_with_tol(tol)
        .map_err(|e| Failure::validation(format!("state file {}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), Failure> {
    std::fs::write(path, content)
        .map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display())))
}

fn emit(cli: &Cli, content: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => write_file(path, content),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| Failure::io(e.to_string()))
        }
    }
}

/// 12 significant digits, the fixed CSV precision.
fn sig12(value: f64) -> String {
    format!("{value:.11e}")
}

/// 17 significant digits: every double round-trips exactly.
fn sig17(value: f64) -> String {
    format!("{value:.16e}")
}

/// JSON with doubles at 17 significant digits.
fn to_json<T: Serialize>(value: &T) -> Result<String, Failure> {
    struct Sig17Formatter;
    impl serde_json::ser::Formatter for Sig17Formatter {
        fn write_f64<W: ?Sized + std::io::Write>(
            &mut self,
            writer: &mut W,
            value: f64,
        ) -> std::io::Result<()> {
            write!(writer, "{value:.16e}")
        }
    }
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17Formatter);
    value
        .serialize(&mut ser)
        .map_err(|e| Failure::io(e.to_string()))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| Failure::io(e.to_string()))
}
