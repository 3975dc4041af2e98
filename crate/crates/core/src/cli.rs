//! The `sqt` command-line front end.
//!
//! States are exchanged as a JSON [`StateDocument`]. Exit codes: 0 for
//! success or a positive verdict, 1 for a negative verdict, 2 for input
//! errors, 3 for internal invariant violations.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::conditions::{check_3qubit, check_general, PerfectVerdict, DEFAULT_TOLERANCE};
use crate::error::Error;
use crate::families::FamilySpec;
use crate::protocol::{
    average_fidelity_mc, haar_random_info_seeded, outcome_table, InfoQubit, McEstimate, OutcomeRecord, Teleporter,
};
use crate::schmidt::{concurrence_oracle, schmidt_form, SchmidtSummary};
use crate::statevec::StateVector;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Largest tolerated gap between the Schmidt-form concurrence and the
/// reduced-density-matrix oracle before `analyze` reports an internal error.
const ORACLE_AGREEMENT: f64 = 1e-9;

/// One pure state on disk. Amplitude `k` belongs to the basis ket whose
/// qubit 0 is the most significant bit of `k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    pub n: usize,
    pub amplitudes: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bob: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl StateDocument {
    pub fn from_state(sv: &StateVector, label: Option<String>) -> Self {
        Self {
            n: sv.num_qubits(),
            amplitudes: sv.amps().iter().map(|a| [a.re, a.im]).collect(),
            bob: None,
            label,
        }
    }

    pub fn to_state(&self) -> crate::Result<StateVector> {
        let amps = self
            .amplitudes
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        StateVector::new(self.n, amps)
    }

    pub fn receiver(&self) -> usize {
        self.bob.unwrap_or(self.n.saturating_sub(1))
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "sqt",
    version,
    about = "Teleportation fidelity and perfect-teleportation checks for n-qubit resource states",
    long_about = "Teleportation fidelity and perfect-teleportation checks for n-qubit resource states.\n\n\
        Amplitude index k holds the ket whose qubit 0 is the most significant bit of k; \
        the receiver defaults to the last qubit (n-1)."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Schmidt form, concurrence and maximal average fidelity.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Perfect-teleportation residuals; exits 0 iff the verdict is true.
    Check {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Outcome table for one information qubit and/or a Monte Carlo average.
    Teleport {
        #[command(flatten)]
        input: InputArgs,
        /// Information qubit as a_re,a_im,b_re,b_im.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "haar")]
        info: Option<Vec<f64>>,
        /// Draw the information qubit Haar-randomly from --seed.
        #[arg(long)]
        haar: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Estimate the average fidelity over this many Haar-random inputs.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Write a named family member as a state document.
    Gen {
        /// ghz, w, separable, entangled, acin, acin-alt, counterexample, random.
        family: String,
        /// Parameters, positional or name=value; complex values as re,im.
        /// A negative complex value needs the name=value form or a leading --.
        #[arg(allow_negative_numbers = true)]
        params: Vec<String>,
        /// Output path; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// State document path, or - for stdin.
    pub file: PathBuf,
    /// Receiver qubit, overriding the document.
    #[arg(long)]
    pub bob: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvariantViolation(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Analyze { input } => cmd_analyze(&input, out),
        Command::Check { input } => cmd_check(&input, out),
        Command::Teleport {
            input,
            info,
            haar,
            seed,
            samples,
        } => cmd_teleport(&input, info.as_deref(), haar, seed, samples, out),
        Command::Gen {
            family,
            params,
            output,
            format,
        } => cmd_gen(&family, &params, output.as_ref(), format, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(err, "internal error: {msg}");
            EXIT_INTERNAL
        }
    }
}

fn load(input: &InputArgs) -> std::result::Result<(StateDocument, StateVector, usize), Failure> {
    let text = if input.file.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(&input.file).map_err(|e| Failure::Input(format!("{}: {e}", input.file.display())))?
    };
    let doc: StateDocument =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", input.file.display())))?;
    let sv = doc.to_state()?;
    let bob = input.bob.unwrap_or_else(|| doc.receiver());
    if bob >= sv.num_qubits() {
        return Err(Error::IndexOutOfRange { index: bob, n: sv.num_qubits() }.into());
    }
    if input.tol.is_nan() || input.tol <= 0.0 {
        return Err(Failure::Input(format!("tolerance must be positive, got {}", input.tol)));
    }
    Ok((doc, sv, bob))
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub label: Option<String>,
    pub n: usize,
    pub bob: usize,
    #[serde(flatten)]
    pub schmidt: SchmidtSummary,
    pub oracle_concurrence: f64,
    pub oracle_delta: f64,
}

pub fn analyze(sv: &StateVector, bob: usize, label: Option<String>) -> crate::Result<AnalyzeReport> {
    let form = schmidt_form(sv, bob)?;
    let oracle = concurrence_oracle(sv, bob)?;
    Ok(AnalyzeReport {
        label,
        n: sv.num_qubits(),
        bob,
        schmidt: form.summary(),
        oracle_concurrence: oracle,
        oracle_delta: (form.concurrence - oracle).abs(),
    })
}

fn cmd_analyze(input: &InputArgs, out: &mut dyn Write) -> CmdResult {
    let (doc, sv, bob) = load(input)?;
    let report = analyze(&sv, bob, doc.label.clone())?;
    match input.format {
        Format::Json => emit_json(out, &report)?,
        Format::Text => {
            let s = &report.schmidt;
            if let Some(label) = &report.label {
                writeln!(out, "label: {label}")?;
            }
            writeln!(out, "qubits: {}  receiver: {}", report.n, report.bob)?;
            writeln!(out, "Abar: {:.6}", s.abar)?;
            writeln!(out, "Bbar: {:.6}", s.bbar)?;
            writeln!(out, "z: {:.6}{:+.6}i", s.z[0], s.z[1])?;
            writeln!(out, "C: {:.6}", s.concurrence)?;
            writeln!(out, "MAF: {:.6}", s.maf)?;
            writeln!(out, "oracle C: {:.6}", report.oracle_concurrence)?;
            writeln!(out, "oracle delta: {:.3e}", report.oracle_delta)?;
        }
    }
    if report.oracle_delta > ORACLE_AGREEMENT {
        return Err(Failure::Internal(format!(
            "concurrence routes disagree by {:e}",
            report.oracle_delta
        )));
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub label: Option<String>,
    pub n: usize,
    pub bob: usize,
    pub general: PerfectVerdict,
    /// Three-qubit amplitude criterion, present only for `n = 3`.
    pub three_qubit: Option<PerfectVerdict>,
    pub verdict: bool,
}

pub fn check(sv: &StateVector, bob: usize, tol: f64, label: Option<String>) -> crate::Result<CheckReport> {
    let general = check_general(sv, bob, tol)?;
    let three_qubit = if sv.num_qubits() == 3 {
        Some(check_3qubit(sv, bob, tol)?)
    } else {
        None
    };
    Ok(CheckReport {
        label,
        n: sv.num_qubits(),
        bob,
        verdict: general.verdict,
        general,
        three_qubit,
    })
}

fn cmd_check(input: &InputArgs, out: &mut dyn Write) -> CmdResult {
    let (doc, sv, bob) = load(input)?;
    let report = check(&sv, bob, input.tol, doc.label.clone())?;
    match input.format {
        Format::Json => emit_json(out, &report)?,
        Format::Text => {
            if let Some(label) = &report.label {
                writeln!(out, "label: {label}")?;
            }
            writeln!(out, "qubits: {}  receiver: {}  tolerance: {:e}", report.n, report.bob, input.tol)?;
            let g = &report.general;
            writeln!(out, "residual_balance: {:.6}", g.residual_balance)?;
            writeln!(out, "residual_overlap: {:.6}", g.residual_overlap)?;
            if let Some(t) = &report.three_qubit {
                writeln!(out, "amplitude residual_balance: {:.6}", t.residual_balance)?;
                writeln!(out, "amplitude residual_overlap: {:.6}", t.residual_overlap)?;
            }
            writeln!(out, "verdict: {}", if report.verdict { "perfect" } else { "not perfect" })?;
        }
    }
    Ok(if report.verdict { EXIT_OK } else { EXIT_VERDICT_FALSE })
}

#[derive(Debug, Serialize)]
pub struct TableReport {
    pub info: InfoQubit,
    pub outcomes: Vec<OutcomeRecord>,
    pub average: f64,
    pub sampled_outcome: usize,
    pub sampled_fidelity: f64,
}

#[derive(Debug, Serialize)]
pub struct TeleportReport {
    pub label: Option<String>,
    pub bob: usize,
    pub concurrence: f64,
    pub table: Option<TableReport>,
    pub monte_carlo: Option<McEstimate>,
    pub closed_form_maf: f64,
}

fn cmd_teleport(
    input: &InputArgs,
    info: Option<&[f64]>,
    haar: bool,
    seed: u64,
    samples: Option<usize>,
    out: &mut dyn Write,
) -> CmdResult {
    let (doc, sv, bob) = load(input)?;
    let info = match (info, haar) {
        (Some(v), _) if v.len() != 4 => {
            return Err(Failure::Input(format!("--info needs 4 numbers a_re,a_im,b_re,b_im, got {}", v.len())))
        }
        (Some(v), _) => Some(InfoQubit::new(Complex64::new(v[0], v[1]), Complex64::new(v[2], v[3]))?),
        (None, true) => Some(haar_random_info_seeded(seed)),
        (None, false) => None,
    };
    if info.is_none() && samples.is_none() {
        return Err(Failure::Input("teleport needs --info, --haar or --samples".into()));
    }
    let sim = Teleporter::new(&sv, bob)?;
    let form = sim.form();
    let table = match info {
        Some(info) => {
            let outcomes = outcome_table(&info, form).to_vec();
            let average = outcomes.iter().map(|o| o.prob * o.fidelity).sum();
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
            let run = sim.run(&info, &mut rng)?;
            let table_fid = outcomes[run.outcome.r].fidelity;
            if (table_fid - run.outcome.fidelity).abs() > 1e-9 {
                return Err(Failure::Internal(format!(
                    "simulated fidelity {} differs from table value {table_fid}",
                    run.outcome.fidelity
                )));
            }
            Some(TableReport {
                info,
                outcomes,
                average,
                sampled_outcome: run.outcome.r,
                sampled_fidelity: run.outcome.fidelity,
            })
        }
        None => None,
    };
    let monte_carlo = match samples {
        Some(n) => Some(average_fidelity_mc(&sv, bob, n, seed)?),
        None => None,
    };
    let report = TeleportReport {
        label: doc.label.clone(),
        bob,
        concurrence: form.concurrence,
        table,
        monte_carlo,
        closed_form_maf: (2.0 + form.concurrence) / 3.0,
    };
    match input.format {
        Format::Json => emit_json(out, &report)?,
        Format::Text => {
            if let Some(label) = &report.label {
                writeln!(out, "label: {label}")?;
            }
            writeln!(out, "receiver: {}  C: {:.6}", report.bob, report.concurrence)?;
            if let Some(t) = &report.table {
                writeln!(
                    out,
                    "info: a = {:.6}{:+.6}i, b = {:.6}{:+.6}i",
                    t.info.a.re, t.info.a.im, t.info.b.re, t.info.b.im
                )?;
                writeln!(out, "{:>2}  {:>9}  {:<8}  {:>9}", "r", "P(r)", "correct", "F(r)")?;
                for o in &t.outcomes {
                    writeln!(out, "{:>2}  {:>9.6}  {:<8}  {:>9.6}", o.r, o.prob, o.correction.label(), o.fidelity)?;
                }
                writeln!(out, "sum P(r)F(r): {:.6}", t.average)?;
                writeln!(
                    out,
                    "sampled run (seed {seed}): r = {}, fidelity {:.6}",
                    t.sampled_outcome, t.sampled_fidelity
                )?;
            }
            if let Some(mc) = &report.monte_carlo {
                writeln!(
                    out,
                    "MC average fidelity: {:.6} ± {:.6} ({} samples)",
                    mc.mean, mc.std_error, mc.samples
                )?;
            }
            writeln!(out, "(2+C)/3: {:.6}", report.closed_form_maf)?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_gen(
    family: &str,
    params: &[String],
    output: Option<&PathBuf>,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    let spec = FamilySpec::parse(family, params)?;
    let sv = spec.build()?;
    let doc = StateDocument::from_state(&sv, Some(spec.to_string()));
    let text = serde_json::to_string_pretty(&doc).map_err(|e| Failure::Internal(e.to_string()))?;
    match output {
        Some(path) => {
            fs::write(path, format!("{text}\n")).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            if format == Format::Text {
                writeln!(out, "wrote {} ({} qubits) to {}", spec, sv.num_qubits(), path.display())?;
            }
        }
        None => writeln!(out, "{text}")?,
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn document_round_trip() {
        let sv = crate::families::w_standard();
        let doc = StateDocument::from_state(&sv, Some("w".into()));
        let text = serde_json::to_string(&doc).unwrap();
        let back: StateDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_state().unwrap(), sv);
        assert_eq!(back.receiver(), 2);
    }

    #[test]
    fn document_rejects_bad_shapes() {
        let bad: std::result::Result<StateDocument, _> = serde_json::from_str(r#"{"n": 1, "amplitudes": [[1, 0, 0]]}"#);
        assert!(bad.is_err());
        let doc: StateDocument = serde_json::from_str(r#"{"n": 2, "amplitudes": [[1, 0], [0, 0]]}"#).unwrap();
        assert!(matches!(doc.to_state(), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn help_exits_zero() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["sqt", "--help"], &mut out, &mut err), EXIT_OK);
        assert!(String::from_utf8(out).unwrap().contains("most significant"));
        assert_eq!(run(["sqt", "bogus"], &mut Vec::new(), &mut err), EXIT_INPUT);
    }
}
