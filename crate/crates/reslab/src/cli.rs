//! Command-line front end.
//!
//! Subcommands: `resonances`, `halfbound`, `limit-matrix`, `circle`,
//! `scatter`, `converge`. Results go to stdout or `--out`; JSON for records,
//! CSV for grids and sweeps. Exit codes: 0 success, 1 solver failure,
//! 2 model-hypothesis violation, 64 malformed configuration or usage.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::config;
use crate::convergence::{
    converge_potential_family, converge_rank_two_family, ConvergeError, ConvergenceReport, Schedule,
};
use crate::eps_family::{
    scatter_potential_family, scatter_rank_two_family, PotentialFamilySpec, RankTwoFamilySpec,
};
use crate::halfbound::{find_resonances, half_bound_state, limit_model_potential, Lambda, LimitModel};
use crate::point_interaction::{scatter_pi, PointInteraction, ScatteringData};
use crate::rank_two::{limit_model_rank_two, resonance_circle};
use crate::profile::{gauge_phase, gauge_twist};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SOLVER: i32 = 1;
pub const EXIT_HYPOTHESIS: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser)]
#[command(
    name = "reslab",
    about = "Zero-energy resonances, point-interaction limits and scattering of 1D Schrödinger operators with localized potentials",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan a coupling range for zero-energy resonances of alpha*V.
    Resonances(ResonancesArgs),
    /// Compute the half-bound state at one resonant coupling.
    Halfbound(HalfboundArgs),
    /// Emit the point-interaction limit model of a family.
    #[command(name = "limit-matrix")]
    LimitMatrix(LimitMatrixArgs),
    /// Emit the double-resonance circle of a zero-mean pair.
    Circle(CircleArgs),
    /// Scattering data of a point interaction or of a family at fixed rates.
    Scatter(ScatterArgs),
    /// Convergence sweep of a family against its limit model.
    Converge(ConvergeArgs),
}

#[derive(Args)]
struct ResonancesArgs {
    /// Profile spec file for V.
    #[arg(long)]
    spec: PathBuf,
    /// Coupling range `lo:hi`.
    #[arg(long, allow_hyphen_values = true)]
    range: String,
    /// Number of scan cells.
    #[arg(long, default_value_t = 400)]
    grid: usize,
    /// Miss-value refinement tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HalfboundArgs {
    /// Profile spec file for V.
    #[arg(long)]
    spec: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Write the sampled state as CSV `x,v` here.
    #[arg(long)]
    samples_csv: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LimitMatrixArgs {
    /// Family spec file (potential family, or rank-two with --rank2).
    #[arg(long)]
    spec: PathBuf,
    /// Treat the spec as a rank-two family.
    #[arg(long)]
    rank2: bool,
    /// Shrinking-rate ratio for the potential family: 0, inf or a float.
    #[arg(long, default_value = "1")]
    lambda: Lambda,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CircleArgs {
    /// Rank-two family spec file; f1, f2 and the optional gauge A are used.
    #[arg(long)]
    spec: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScatterArgs {
    /// Point-interaction spec file; scattering over --k-grid as CSV.
    #[arg(long, conflicts_with = "family")]
    model: Option<PathBuf>,
    /// Family kind: `pot` or `rank2`; one ScatteringData record as JSON.
    #[arg(long, value_parser = ["pot", "rank2"])]
    family: Option<String>,
    /// Family spec file.
    #[arg(long, required_if_eq_any = [("family", "pot"), ("family", "rank2")])]
    spec: Option<PathBuf>,
    /// Wavenumber grid `lo:hi:n` (with --model).
    #[arg(long)]
    k_grid: Option<String>,
    /// Single wavenumber (with --family).
    #[arg(long)]
    k: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    nu: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ConvergeArgs {
    /// Family kind: `pot` or `rank2`.
    #[arg(long, value_parser = ["pot", "rank2"])]
    family: String,
    #[arg(long)]
    spec: PathBuf,
    /// Shrinking-rate ratio (potential family only).
    #[arg(long, default_value = "1")]
    lambda: Lambda,
    /// Comma-separated decreasing eps values.
    #[arg(long, value_delimiter = ',')]
    eps_list: Vec<f64>,
    #[arg(long)]
    k: f64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

/// Runs the CLI on explicit arguments and returns the process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Resonances(args) => cmd_resonances(args),
        Command::Halfbound(args) => cmd_halfbound(args),
        Command::LimitMatrix(args) => cmd_limit_matrix(args),
        Command::Circle(args) => cmd_circle(args),
        Command::Scatter(args) => cmd_scatter(args),
        Command::Converge(args) => cmd_converge(args),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

#[derive(Debug)]
struct CmdError {
    code: i32,
    message: String,
}

impl CmdError {
    fn usage(message: impl Into<String>) -> Self {
        CmdError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn solver(message: impl Into<String>) -> Self {
        CmdError {
            code: EXIT_SOLVER,
            message: message.into(),
        }
    }

    fn hypothesis(message: impl Into<String>) -> Self {
        CmdError {
            code: EXIT_HYPOTHESIS,
            message: message.into(),
        }
    }
}

impl From<config::ConfigError> for CmdError {
    fn from(e: config::ConfigError) -> Self {
        CmdError::usage(e.to_string())
    }
}

impl From<ConvergeError> for CmdError {
    fn from(e: ConvergeError) -> Self {
        if e.is_hypothesis_violation() {
            CmdError::hypothesis(e.to_string())
        } else {
            CmdError::solver(e.to_string())
        }
    }
}

impl From<crate::rank_two::RankTwoError> for CmdError {
    fn from(e: crate::rank_two::RankTwoError) -> Self {
        CmdError::hypothesis(e.to_string())
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CmdError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CmdError::solver(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_range(s: &str) -> Result<(f64, f64), CmdError> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 2 {
        return Err(CmdError::usage(format!("range must be `lo:hi`, got `{s}`")));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| CmdError::usage(format!("bad range bound `{}`", parts[0])))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| CmdError::usage(format!("bad range bound `{}`", parts[1])))?;
    Ok((lo, hi))
}

fn parse_k_grid(s: &str) -> Result<Vec<f64>, CmdError> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(CmdError::usage(format!("k grid must be `lo:hi:n`, got `{s}`")));
    }
    let lo: f64 = parts[0]
        .parse()
        .map_err(|_| CmdError::usage("bad k-grid lower bound"))?;
    let hi: f64 = parts[1]
        .parse()
        .map_err(|_| CmdError::usage("bad k-grid upper bound"))?;
    let n: usize = parts[2]
        .parse()
        .map_err(|_| CmdError::usage("bad k-grid count"))?;
    if n == 0 || lo <= 0.0 || lo.is_nan() || hi < lo {
        return Err(CmdError::usage("k grid needs 0 < lo <= hi and n >= 1"));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect())
}

#[derive(Serialize)]
struct HalfBoundRecord {
    alpha: f64,
    theta: f64,
    v_minus: f64,
    v_plus: f64,
}

fn cmd_resonances(args: ResonancesArgs) -> Result<(), CmdError> {
    let v = config::load_profile(&args.spec)?;
    let range = parse_range(&args.range)?;
    let scan = find_resonances(&v, range, args.grid, args.tol)
        .map_err(|e| CmdError::solver(e.to_string()))?;
    for w in &scan.warnings {
        eprintln!("warning: {w}");
    }
    let records: Vec<HalfBoundRecord> = scan
        .roots
        .iter()
        .map(|&alpha| {
            let hbs = half_bound_state(&v, alpha)
                .map_err(|e| CmdError::solver(e.to_string()))?;
            Ok(HalfBoundRecord {
                alpha,
                theta: hbs.theta,
                v_minus: hbs.v_minus,
                v_plus: hbs.v_plus,
            })
        })
        .collect::<Result<_, CmdError>>()?;
    let mut text = serde_json::to_string_pretty(&records).expect("serializable");
    text.push('\n');
    emit(&args.out, &text)
}

fn cmd_halfbound(args: HalfboundArgs) -> Result<(), CmdError> {
    let v = config::load_profile(&args.spec)?;
    let hbs = half_bound_state(&v, args.alpha).map_err(|e| CmdError::hypothesis(e.to_string()))?;
    if let Some(path) = &args.samples_csv {
        let (xs, vs) = hbs.samples();
        let mut csv = String::from("x,v\n");
        for (x, v) in xs.iter().zip(vs.iter()) {
            let _ = writeln!(csv, "{x},{v}");
        }
        fs::write(path, csv)
            .map_err(|e| CmdError::solver(format!("cannot write {}: {e}", path.display())))?;
    }
    let record = HalfBoundRecord {
        alpha: hbs.alpha,
        theta: hbs.theta,
        v_minus: hbs.v_minus,
        v_plus: hbs.v_plus,
    };
    let mut text = serde_json::to_string_pretty(&record).expect("serializable");
    text.push('\n');
    emit(&args.out, &text)
}

#[derive(Serialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
enum LimitRecord {
    PointInteraction {
        phase: f64,
        c11: f64,
        c12: f64,
        c21: f64,
        c22: f64,
    },
    Dirichlet,
}

impl From<&LimitModel> for LimitRecord {
    fn from(m: &LimitModel) -> Self {
        match m {
            LimitModel::PointInteraction(pi) => LimitRecord::from(pi),
            LimitModel::DirichletDecoupled => LimitRecord::Dirichlet,
        }
    }
}

impl From<&PointInteraction> for LimitRecord {
    fn from(pi: &PointInteraction) -> Self {
        LimitRecord::PointInteraction {
            phase: pi.phase,
            c11: pi.c11,
            c12: pi.c12,
            c21: pi.c21,
            c22: pi.c22,
        }
    }
}

fn cmd_limit_matrix(args: LimitMatrixArgs) -> Result<(), CmdError> {
    let record = if args.rank2 {
        let input = config::load_rank_two_family(&args.spec)?;
        let pi = limit_model_rank_two(&input.f1, &input.f2, &input.u, &input.a, input.beta)?;
        LimitRecord::from(&pi)
    } else {
        let input = config::load_potential_family(&args.spec)?;
        let model = limit_model_potential(&input.v, &input.u, &input.a, input.alpha, args.lambda)
            .map_err(|e| CmdError::solver(e.to_string()))?;
        LimitRecord::from(&model)
    };
    let mut text = serde_json::to_string_pretty(&record).expect("serializable");
    text.push('\n');
    emit(&args.out, &text)
}

#[derive(Serialize)]
struct CircleRecord {
    beta0_re: f64,
    beta0_im: f64,
    rho: f64,
    m1: f64,
    m2: f64,
    tau_re: f64,
    tau_im: f64,
}

fn cmd_circle(args: CircleArgs) -> Result<(), CmdError> {
    let input = config::load_rank_two_family(&args.spec)?;
    let gauge = gauge_phase(&input.a).map_err(|e| CmdError::usage(e.to_string()))?;
    let g1 = gauge_twist(&input.f1, &gauge);
    let g2 = gauge_twist(&input.f2, &gauge);
    let circle = resonance_circle(&g1, &g2)?;
    let record = CircleRecord {
        beta0_re: circle.beta0.re,
        beta0_im: circle.beta0.im,
        rho: circle.rho,
        m1: circle.m1,
        m2: circle.m2,
        tau_re: circle.tau.re,
        tau_im: circle.tau.im,
    };
    let mut text = serde_json::to_string_pretty(&record).expect("serializable");
    text.push('\n');
    emit(&args.out, &text)
}

#[derive(Serialize)]
struct ScatterRecord {
    k: f64,
    r_left: [f64; 2],
    t_left: [f64; 2],
    r_right: [f64; 2],
    t_right: [f64; 2],
    abs_t: f64,
    abs_r: f64,
    unitarity_defect: f64,
}

impl From<&ScatteringData> for ScatterRecord {
    fn from(s: &ScatteringData) -> Self {
        let pair = |c: Complex64| [c.re, c.im];
        ScatterRecord {
            k: s.k,
            r_left: pair(s.r_left),
            t_left: pair(s.t_left),
            r_right: pair(s.r_right),
            t_right: pair(s.t_right),
            abs_t: s.t_left.norm(),
            abs_r: s.r_left.norm(),
            unitarity_defect: s.unitarity_defect(),
        }
    }
}

fn cmd_scatter(args: ScatterArgs) -> Result<(), CmdError> {
    match (&args.model, args.family.as_deref()) {
        (Some(model_path), None) => {
            let grid = args
                .k_grid
                .as_deref()
                .ok_or_else(|| CmdError::usage("--model needs --k-grid lo:hi:n"))?;
            let ks = parse_k_grid(grid)?;
            let pi = config::load_point_interaction(model_path)?;
            let mut csv = String::from("k,r_re,r_im,t_re,t_im,t_abs2\n");
            for k in ks {
                let s = scatter_pi(&pi, k).map_err(|e| CmdError::solver(e.to_string()))?;
                let _ = writeln!(
                    csv,
                    "{k},{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}",
                    s.r_left.re,
                    s.r_left.im,
                    s.t_left.re,
                    s.t_left.im,
                    s.t_left.norm_sqr()
                );
            }
            emit(&args.out, &csv)
        }
        (None, Some(kind)) => {
            let spec_path = args
                .spec
                .as_ref()
                .ok_or_else(|| CmdError::usage("--family needs --spec"))?;
            let k = args
                .k
                .ok_or_else(|| CmdError::usage("--family needs --k"))?;
            let eps = args
                .eps
                .ok_or_else(|| CmdError::usage("--family needs --eps"))?;
            let s = match kind {
                "pot" => {
                    let nu = args
                        .nu
                        .ok_or_else(|| CmdError::usage("--family pot needs --nu"))?;
                    let input = config::load_potential_family(spec_path)?;
                    let spec = PotentialFamilySpec::new(
                        input.v0, input.v, input.u, input.a, input.alpha, eps, nu,
                    )
                    .map_err(|e| CmdError::usage(e.to_string()))?;
                    scatter_potential_family(&spec, k)
                        .map_err(|e| CmdError::solver(e.to_string()))?
                }
                "rank2" => {
                    let input = config::load_rank_two_family(spec_path)?;
                    let spec = RankTwoFamilySpec::new(
                        input.v0, input.f1, input.f2, input.u, input.a, input.beta, eps,
                    )
                    .map_err(|e| CmdError::usage(e.to_string()))?;
                    scatter_rank_two_family(&spec, k)
                        .map_err(|e| CmdError::solver(e.to_string()))?
                }
                _ => unreachable!("clap validates the kind"),
            };
            let mut text =
                serde_json::to_string_pretty(&ScatterRecord::from(&s)).expect("serializable");
            text.push('\n');
            emit(&args.out, &text)
        }
        _ => Err(CmdError::usage(
            "scatter needs exactly one of --model or --family",
        )),
    }
}

#[derive(Serialize)]
struct ConvergeJsonReport {
    k: f64,
    lambda: String,
    limit: LimitRecord,
    rows: Vec<ConvergeJsonRow>,
    failures: Vec<ConvergeJsonFailure>,
    monotone_tail: bool,
    final_err: f64,
}

#[derive(Serialize)]
struct ConvergeJsonRow {
    eps: f64,
    nu: f64,
    err: f64,
    abs_t: f64,
    abs_r: f64,
}

#[derive(Serialize)]
struct ConvergeJsonFailure {
    eps: f64,
    nu: f64,
    message: String,
}

fn write_converge_outputs(
    args: &ConvergeArgs,
    limit: LimitRecord,
    report: &ConvergenceReport,
) -> Result<(), CmdError> {
    if let Some(path) = &args.report {
        let json = ConvergeJsonReport {
            k: report.k,
            lambda: args.lambda.to_string(),
            limit,
            rows: report
                .rows
                .iter()
                .map(|r| ConvergeJsonRow {
                    eps: r.eps,
                    nu: r.nu,
                    err: r.err,
                    abs_t: r.abs_t,
                    abs_r: r.abs_r,
                })
                .collect(),
            failures: report
                .failures
                .iter()
                .map(|f| ConvergeJsonFailure {
                    eps: f.eps,
                    nu: f.nu,
                    message: f.message.clone(),
                })
                .collect(),
            monotone_tail: report.monotone_tail,
            final_err: report.final_err,
        };
        let mut text = serde_json::to_string_pretty(&json).expect("serializable");
        text.push('\n');
        fs::write(path, text)
            .map_err(|e| CmdError::solver(format!("cannot write {}: {e}", path.display())))?;
    }
    emit(&args.out, &report.to_csv())
}

fn cmd_converge(args: ConvergeArgs) -> Result<(), CmdError> {
    if args.eps_list.is_empty() {
        return Err(CmdError::usage("--eps-list must not be empty"));
    }
    if args.k <= 0.0 || !args.k.is_finite() {
        return Err(CmdError::usage("--k must be positive"));
    }
    match args.family.as_str() {
        "pot" => {
            let input = config::load_potential_family(&args.spec)?;
            if !input.v0.is_empty() {
                return Err(CmdError::hypothesis(
                    "convergence experiments require v0 = 0 (the limit model assumes free asymptotics)",
                ));
            }
            let schedule = Schedule::new(args.lambda, args.eps_list.clone())?;
            let (model, report) =
                converge_potential_family(&input.v, &input.u, &input.a, input.alpha, &schedule, args.k)?;
            write_converge_outputs(&args, LimitRecord::from(&model), &report)
        }
        "rank2" => {
            let input = config::load_rank_two_family(&args.spec)?;
            if !input.v0.is_empty() {
                return Err(CmdError::hypothesis(
                    "convergence experiments require v0 = 0 (the limit model assumes free asymptotics)",
                ));
            }
            let (pi, report) = converge_rank_two_family(
                &input.f1,
                &input.f2,
                &input.u,
                &input.a,
                input.beta,
                &args.eps_list,
                args.k,
            )?;
            write_converge_outputs(&args, LimitRecord::from(&pi), &report)
        }
        _ => unreachable!("clap validates the kind"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_grid_parsing() {
        assert_eq!(parse_k_grid("1:2:3").unwrap(), vec![1.0, 1.5, 2.0]);
        assert_eq!(parse_k_grid("0.5:0.5:1").unwrap(), vec![0.5]);
        assert!(parse_k_grid("1:2").is_err());
        assert!(parse_k_grid("0:2:3").is_err());
        assert!(parse_k_grid("2:1:3").is_err());
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("-12:1").unwrap(), (-12.0, 1.0));
        assert!(parse_range("1").is_err());
        assert!(parse_range("a:b").is_err());
    }

    #[test]
    fn help_and_usage_exit_codes() {
        assert_eq!(run_cli(["reslab", "--help"]), EXIT_OK);
        assert_eq!(run_cli(["reslab", "bogus-subcommand"]), EXIT_USAGE);
        assert_eq!(run_cli(["reslab", "resonances"]), EXIT_USAGE);
    }
}
