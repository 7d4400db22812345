//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 degenerate state, 3 verification
//! failure.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::Error;
use crate::fock::{entanglement_entropy, TwoModeState};
use crate::optimizer::optimize_bell;
use crate::pseudospin::{bell_expectation, BellAngles};
use crate::scan::{scan_bell, scan_entropy_equal_weight, scan_entropy_single, slice_table, Grid, ScanResult};
use crate::states::{build_psi_nm, build_superposition, PsiNmParams, SuperpositionSpec};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "nphoton", version, about = "Entanglement and CHSH nonlocality of two-mode N-photon states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the Fock amplitudes of a state
    State {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Entanglement entropy of a state from its reduced density matrix
    Entropy {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// CHSH value on the slice theta_a = 0, theta_a' = pi/2, theta_b' = -theta_b
    Bell {
        #[command(flatten)]
        state: StateArgs,
        /// Single slice angle; without it the slice is sampled on --grid
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        theta_b: Option<f64>,
        /// theta_b grid as start:stop:count
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true, default_value = "0:2pi:73")]
        grid: Grid,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Entropy against the entanglement angle
    ScanEntropy {
        #[arg(long, value_enum, default_value_t = Family::Single)]
        family: Family,
        /// gamma grid as start:stop:count
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true, default_value = "0:pi:101")]
        grid: Grid,
        /// Photon numbers for the equal-weight family
        #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
        ns: Vec<u32>,
        /// Cross-check every row against the reduced-density entropy
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Maximal slice CHSH value 2 sqrt(1 + K^2) over (gamma, theta_m)
    ScanBell {
        /// gamma grid as start:stop:count
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true, default_value = "0:pi:101")]
        grid: Grid,
        /// theta_m grid as start:stop:count
        #[arg(long, value_parser = parse_grid, allow_hyphen_values = true, default_value = "0:2pi:101")]
        theta_grid: Grid,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Maximize |<B>| over the measurement directions
    Optimize {
        #[command(flatten)]
        state: StateArgs,
        /// Also search the azimuthal angles
        #[arg(long)]
        include_phi: bool,
        /// Write to a file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the closed-form vs operator cross-checks
    Verify {
        /// Run a single suite
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(verify::SUITES))]
        only: Option<String>,
        /// Write to a file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Single,
    EqualWeight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to a file instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StateArgs {
    /// Total photon number
    #[arg(long)]
    n: Option<u32>,
    /// Photons in the second mode of the first ket
    #[arg(long)]
    m: Option<u32>,
    /// Entanglement angle
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    gamma: Option<f64>,
    /// Relative phase
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true, default_value = "0")]
    theta: f64,
    /// Superpose |psi_N0> .. |psi_NN> with --alphas and --thetas
    #[arg(long, requires = "alphas", conflicts_with = "m")]
    superpose: bool,
    /// Complex coefficients, one per m = 0..N (e.g. 1,0.5-0.2i)
    #[arg(long, value_delimiter = ',', value_parser = parse_complex, allow_hyphen_values = true, requires = "superpose")]
    alphas: Option<Vec<Complex64>>,
    /// Relative phases, one per m = 0..N [default: all 0]
    #[arg(long, value_delimiter = ',', value_parser = parse_angle, allow_hyphen_values = true, requires = "superpose")]
    thetas: Option<Vec<f64>>,
    /// The two-mode vacuum |0,0>
    #[arg(long, conflicts_with_all = ["n", "m", "gamma", "superpose"])]
    vacuum: bool,
}

/// Radians as a decimal literal or a multiple of pi: `pi`, `-pi/4`, `3pi/4`, `3*pi/4`.
pub fn parse_angle(text: &str) -> Result<f64, String> {
    let t = text.trim();
    let value = if let Ok(x) = t.parse::<f64>() {
        x
    } else {
        let bad = || format!("invalid angle {text:?}");
        let (numerator, denominator) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim().parse::<f64>().map_err(|_| bad())?),
            None => (t, 1.0),
        };
        let coefficient = numerator.strip_suffix("pi").ok_or_else(bad)?.trim_end();
        let coefficient = coefficient.strip_suffix('*').unwrap_or(coefficient).trim_end();
        let c = match coefficient {
            "" | "+" => 1.0,
            "-" => -1.0,
            c => c.parse::<f64>().map_err(|_| bad())?,
        };
        if denominator == 0.0 {
            return Err(bad());
        }
        c * PI / denominator
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("angle {text:?} is not finite"))
    }
}

/// `re`, `imi`, or `re+imi` / `re-imi`.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let t = text.trim();
    let bad = || format!("invalid complex number {text:?}");
    let imag = |s: &str| -> Result<f64, String> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            s => s.parse::<f64>().map_err(|_| bad()),
        }
    };
    let z = match t.strip_suffix('i') {
        None => Complex64::new(t.parse::<f64>().map_err(|_| bad())?, 0.0),
        Some(body) => {
            // split at the last sign that is not a leading sign or an exponent sign
            let bytes = body.as_bytes();
            let split = (1..bytes.len())
                .rev()
                .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
            match split {
                Some(i) => Complex64::new(body[..i].parse::<f64>().map_err(|_| bad())?, imag(&body[i..])?),
                None => Complex64::new(0.0, imag(body)?),
            }
        }
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

/// `start:stop:count` with angle expressions for the bounds.
pub fn parse_grid(text: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, count] = parts[..] else {
        return Err(format!("grid {text:?} is not start:stop:count"));
    };
    let count = count
        .trim()
        .parse::<usize>()
        .map_err(|_| format!("invalid grid count {count:?}"))?;
    Grid::new(parse_angle(start)?, parse_angle(stop)?, count).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Domain(Error::ZeroNorm | Error::ZeroState) => EXIT_DEGENERATE,
            Failure::Domain(Error::Verification(_)) => EXIT_VERIFICATION,
            Failure::Domain(_) => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(msg) => f.write_str(msg),
            Failure::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl StateArgs {
    fn build(&self) -> Result<TwoModeState, Failure> {
        if self.vacuum {
            return Ok(TwoModeState::vacuum());
        }
        let n = self.n.ok_or_else(|| Failure::Usage("--n is required (or --vacuum)".into()))?;
        let gamma = self.gamma.ok_or_else(|| Failure::Usage("--gamma is required".into()))?;
        if self.superpose {
            let alphas = self.alphas.clone().unwrap_or_default();
            let thetas = self.thetas.clone().unwrap_or_else(|| vec![0.0; alphas.len()]);
            let spec = SuperpositionSpec::new(n, alphas, gamma, thetas)?;
            return Ok(build_superposition(&spec)?);
        }
        let m = self.m.ok_or_else(|| Failure::Usage("--m is required (or --superpose)".into()))?;
        Ok(build_psi_nm(&PsiNmParams::new(n, m, gamma, self.theta)?)?)
    }
}

/// Rounds to 12 significant digits and drops trailing zeros.
fn significant(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let digits = 11 - x.abs().log10().floor() as i32;
    let text = format!("{:.*}", digits.max(0) as usize, x);
    let text = if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        text
    };
    if text == "-0" {
        "0".into()
    } else {
        text
    }
}

fn complex_literal(z: Complex64) -> String {
    let (re, im) = (significant(z.re), significant(z.im));
    match (re.as_str(), im.as_str()) {
        (_, "0") => re,
        ("0", _) => format!("{im}i"),
        _ if im.starts_with('-') => format!("{re}{im}i"),
        _ => format!("{re}+{im}i"),
    }
}

#[derive(Serialize)]
struct KetRow {
    n1: u32,
    n2: u32,
    re: f64,
    im: f64,
}

/// Kets in order of decreasing first-mode photon number.
fn state_table(s: &TwoModeState, format: Format) -> String {
    let mut kets: Vec<_> = s.iter().map(|(&k, &z)| (k, z)).collect();
    kets.reverse();
    match format {
        Format::Csv => {
            let mut out = String::from("n1,n2,amplitude\n");
            for ((n1, n2), z) in kets {
                out.push_str(&format!("{n1},{n2},{}\n", complex_literal(z)));
            }
            out
        }
        Format::Json => {
            let rows: Vec<KetRow> = kets
                .into_iter()
                .map(|((n1, n2), z)| KetRow { n1, n2, re: z.re, im: z.im })
                .collect();
            serde_json::to_string_pretty(&rows).expect("finite amplitudes serialize") + "\n"
        }
    }
}

fn render(table: &ScanResult, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json() + "\n",
    }
}

fn emit(text: &str, path: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Usage(format!("stdout: {e}"))),
    }
}

fn verify_report(report: &verify::Report) -> String {
    let mut out = String::new();
    for c in &report.checks {
        let status = match (c.diagnostic, c.passed()) {
            (true, _) => "DIAG",
            (false, true) => "PASS",
            (false, false) => "FAIL",
        };
        out.push_str(&format!(
            "{status} [{}] {}: cases={} max_dev={:.3e} tol={:.0e}\n",
            c.suite, c.name, c.cases, c.max_deviation, c.tolerance
        ));
    }
    let failed = report.checks.iter().filter(|c| !c.diagnostic && !c.passed()).count();
    out.push_str(&format!("{} checks, {failed} failed\n", report.checks.len()));
    out
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::State { state, output } => {
            let s = state.build()?;
            emit(&state_table(&s, output.format), output.output.as_ref(), stdout)?;
        }
        Command::Entropy { state, output } => {
            let s = state.build()?;
            let mut table = ScanResult::new(["entropy"]);
            table.push(vec![entanglement_entropy(&s)?])?;
            emit(&render(&table, output.format), output.output.as_ref(), stdout)?;
        }
        Command::Bell { state, theta_b, grid, output } => {
            let s = state.build()?;
            let curve = match theta_b {
                Some(tb) => vec![(tb, bell_expectation(&s, &BellAngles::slice(tb))?)],
                None => grid
                    .values()
                    .into_iter()
                    .map(|tb| bell_expectation(&s, &BellAngles::slice(tb)).map(|v| (tb, v)))
                    .collect::<Result<_, _>>()?,
            };
            emit(&render(&slice_table(&curve)?, output.format), output.output.as_ref(), stdout)?;
        }
        Command::ScanEntropy { family, grid, ns, verify, output } => {
            let table = match family {
                Family::Single => scan_entropy_single(&grid.values(), verify)?,
                Family::EqualWeight => scan_entropy_equal_weight(&grid.values(), &ns, verify)?,
            };
            emit(&render(&table, output.format), output.output.as_ref(), stdout)?;
        }
        Command::ScanBell { grid, theta_grid, output } => {
            let table = scan_bell(&grid.values(), &theta_grid.values());
            emit(&render(&table, output.format), output.output.as_ref(), stdout)?;
        }
        Command::Optimize { state, include_phi, output } => {
            let s = state.build()?;
            let result = optimize_bell(&s, include_phi)?;
            let text = serde_json::to_string_pretty(&result).expect("finite result serializes") + "\n";
            emit(&text, output.as_ref(), stdout)?;
        }
        Command::Verify { only, output } => {
            let report = verify::run(only.as_deref())?;
            emit(&verify_report(&report), output.as_ref(), stdout)?;
            if !report.passed() {
                return Ok(EXIT_VERIFICATION);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses `args` (program name first) and runs the command. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                EXIT_OK
            } else {
                let _ = write!(stderr, "{e}");
                EXIT_USAGE
            };
        }
    };
    match execute(cli, stdout) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {f}");
            f.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("0.5").unwrap(), 0.5);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("pi/4").unwrap(), FRAC_PI_4);
        assert_eq!(parse_angle("-pi/4").unwrap(), -FRAC_PI_4);
        assert_eq!(parse_angle("3pi/4").unwrap(), 3.0 * FRAC_PI_4);
        assert_eq!(parse_angle("3*pi/4").unwrap(), 3.0 * FRAC_PI_4);
        assert_eq!(parse_angle("2pi").unwrap(), 2.0 * PI);
        assert!(parse_angle("pi/0").is_err());
        assert!(parse_angle("tau").is_err());
        assert!(parse_angle("inf").is_err());
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("1").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(parse_complex("0.5+2i").unwrap(), Complex64::new(0.5, 2.0));
        assert_eq!(parse_complex("-1-i").unwrap(), Complex64::new(-1.0, -1.0));
        assert_eq!(parse_complex("-2.5i").unwrap(), Complex64::new(0.0, -2.5));
        assert_eq!(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("1e-3+1e+2i").unwrap(), Complex64::new(1e-3, 1e2));
        assert!(parse_complex("1+").is_err());
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn grids() {
        let g = parse_grid("0:pi/2:3").unwrap();
        assert_eq!(g.values(), vec![0.0, FRAC_PI_4, PI / 2.0]);
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:x").is_err());
        assert!(parse_grid("0:1:0").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Failure::Domain(Error::ZeroNorm).exit_code(), EXIT_DEGENERATE);
        assert_eq!(Failure::Domain(Error::ZeroState).exit_code(), EXIT_DEGENERATE);
        assert_eq!(Failure::Domain(Error::Verification("x".into())).exit_code(), EXIT_VERIFICATION);
        assert_eq!(Failure::Domain(Error::InvalidParams("x".into())).exit_code(), EXIT_USAGE);
        assert_eq!(Failure::Usage("x".into()).exit_code(), EXIT_USAGE);
    }

    #[test]
    fn twelve_digits() {
        assert_eq!(significant(std::f64::consts::FRAC_1_SQRT_2), "0.707106781187");
        assert_eq!(significant(-1.0), "-1");
        assert_eq!(significant(1e-20), "0.00000000000000000001");
        assert_eq!(complex_literal(Complex64::new(0.5, -0.25)), "0.5-0.25i");
        assert_eq!(complex_literal(Complex64::new(0.0, 1.0)), "1i");
    }
}
