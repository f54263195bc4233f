//! Command runners behind the `fracvar` binary.
//!
//! Each runner writes a human-readable report to `out` and returns the
//! process exit status. Exit codes: 0 success, 1 a verification check
//! failed, 2 usage or parse error, 3 I/O error, 4 solver did not converge.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::domain::{FracOrder, Interval};
use crate::error::Error;
use crate::euler_lagrange::{unweighted_obstruction, Obstruction};
use crate::functional::{Lagrangian, QuadraticCoeffs, VariationalProblem};
use crate::kvfile::{format_number, KvDocument, KvWriter};
use crate::power::{Anchor, PowerSum};
use crate::quadrature::DEFAULT_NODES;
use crate::ritz::{solve_general, solve_quadratic, verify_minimizer, CheckOutcome, SolveResult, SolverOptions};
use crate::special::gamma;
use crate::validation::{by_parts_suite, coefficient_distance, lemma_suite, operator_suite};

/// Environment variable overriding the quadrature node count.
pub const QUAD_N_ENV: &str = "FRACVAR_QUAD_N";

/// Default number of trial modes.
pub const DEFAULT_MODES: usize = 3;

/// Random competitors in the convexity check of `example1`.
pub const EXAMPLE1_TRIALS: usize = 200;

/// Tolerance of `example1` against `t^α` and `Γ(α+1)`.
pub const EXAMPLE1_TOL: f64 = 1e-8;

/// Points at which `example1` compares the trajectory with `t^α`.
pub const EXAMPLE1_POINTS: usize = 1001;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    CheckFailed = 1,
    Usage = 2,
    Io = 3,
    NonConvergence = 4,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug)]
pub struct CliError {
    pub status: ExitStatus,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            status: ExitStatus::Usage,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            status: ExitStatus::Io,
            message: message.into(),
        }
    }

    /// Failure inside the numerical code.
    pub fn compute(e: Error) -> Self {
        Self {
            status: ExitStatus::CheckFailed,
            message: e.to_string(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::io(e.to_string())
    }
}

pub type CliResult = std::result::Result<ExitStatus, CliError>;

/// Quadrature nodes from [`QUAD_N_ENV`], or [`DEFAULT_NODES`] when unset.
pub fn quad_nodes_from_env() -> std::result::Result<usize, CliError> {
    match std::env::var(QUAD_N_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_NODES),
        Err(e) => Err(CliError::usage(format!("{QUAD_N_ENV}: {e}"))),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::usage(format!("{QUAD_N_ENV} must be a positive integer, got '{s}'"))),
        },
    }
}

fn order(alpha: f64) -> std::result::Result<FracOrder, CliError> {
    FracOrder::new(alpha).map_err(|e| CliError::usage(e.to_string()))
}

/// Comma-separated list of orders; the empty string is the empty list.
pub fn parse_alpha_list(s: &str) -> std::result::Result<Vec<f64>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|item| {
            let a: f64 = item
                .trim()
                .parse()
                .map_err(|_| CliError::usage(format!("invalid alpha '{}'", item.trim())))?;
            order(a).map(FracOrder::value)
        })
        .collect()
}

fn write_checks(out: &mut dyn Write, checks: &[CheckOutcome]) -> std::io::Result<()> {
    for c in checks {
        let tag = match (c.passed, c.exercised) {
            (false, _) => "FAIL",
            (true, true) => "PASS",
            (true, false) => "SKIP",
        };
        writeln!(out, "{tag} {}: {}", c.name, c.detail)?;
    }
    Ok(())
}

fn write_solution(out: &mut dyn Write, res: &SolveResult) -> std::io::Result<()> {
    let coeffs: Vec<String> = res.coefficients.iter().map(|&c| format_number(c)).collect();
    writeln!(out, "coefficients = [{}]", coeffs.join(", "))?;
    if let Some(y) = res.trajectory.as_power_sum() {
        writeln!(out, "trajectory: y(t) = {y}")?;
    }
    writeln!(out, "value = {}", format_number(res.value))?;
    let r = &res.residual;
    writeln!(
        out,
        "residual: k = {}, max deviation = {:.3e}, tolerance = {:.3e}, constant = {}",
        format_number(r.k_estimate),
        r.max_deviation,
        r.tolerance,
        r.constant
    )?;
    writeln!(out, "iterations = {}, converged = {}", res.iterations, res.converged)
}

/// Solves the weighted `v²` problem on `[0, 1]` with `y(0) = 0`, `y(1) = 1`
/// and checks the result against `t^α` and `Γ(α+1)`.
pub fn run_example1(alpha: f64, m: usize, out: &mut dyn Write) -> CliResult {
    let alpha = order(alpha)?;
    let quad_n = quad_nodes_from_env()?;
    let a = alpha.value();
    let prob = VariationalProblem::weighted_dirichlet(alpha);
    let opts = SolverOptions {
        quad_n,
        ..SolverOptions::default()
    };
    let res = solve_quadratic(&prob, m, &opts).map_err(CliError::compute)?;
    let expected = gamma(a + 1.0).map_err(CliError::compute)?;

    writeln!(
        out,
        "weighted problem: L = v^2, alpha = {a}, [0, 1], y(0) = 0, y(1) = 1, m = {m}"
    )?;
    write_solution(out, &res)?;
    writeln!(out, "gamma(alpha+1) = {}", format_number(expected))?;

    let mut checks = Vec::new();
    let value_err = (res.value - expected).abs();
    checks.push(CheckOutcome {
        name: "value matches gamma(alpha+1)".into(),
        passed: value_err <= EXAMPLE1_TOL,
        exercised: true,
        detail: format!("|value - gamma(alpha+1)| = {value_err:.3e}"),
    });
    let target = PowerSum::monomial(Interval::unit(), Anchor::Left, 1.0, a).map_err(CliError::compute)?;
    let mut sup = 0.0_f64;
    for i in 0..EXAMPLE1_POINTS {
        let t = i as f64 / (EXAMPLE1_POINTS - 1) as f64;
        let y = res.trajectory.value(t).map_err(CliError::compute)?;
        sup = sup.max((y - t.powf(a)).abs());
    }
    let coeff_err = res
        .trajectory
        .as_power_sum()
        .map(|y| coefficient_distance(&target, y))
        .transpose()
        .map_err(CliError::compute)?
        .unwrap_or(f64::INFINITY);
    checks.push(CheckOutcome {
        name: "solution is t^alpha".into(),
        passed: sup <= EXAMPLE1_TOL && coeff_err <= EXAMPLE1_TOL,
        exercised: true,
        detail: format!(
            "sup |y - t^alpha| = {sup:.3e} over {EXAMPLE1_POINTS} points, coefficient error {coeff_err:.3e}"
        ),
    });
    checks.extend(verify_minimizer(&prob, &res, EXAMPLE1_TRIALS, quad_n).checks);
    write_checks(out, &checks)?;

    let passed = checks.iter().all(|c| c.passed);
    writeln!(out, "{}", if passed { "all checks passed" } else { "some checks failed" })?;
    Ok(if passed {
        ExitStatus::Success
    } else {
        ExitStatus::CheckFailed
    })
}

/// Reports whether the unweighted problem `∫_0^1 (ᶜD^α y)² dt → min`,
/// `y(0) = 0`, `y(1) = 1` has a minimizer with continuous Caputo derivative.
pub fn run_example2(alpha: f64, out: &mut dyn Write) -> CliResult {
    let alpha = order(alpha)?;
    let report = unweighted_obstruction(alpha).map_err(CliError::compute)?;
    writeln!(
        out,
        "unweighted problem: L = (cD^alpha y)^2, alpha = {}, [0, 1], y(0) = 0, y(1) = 1",
        report.alpha
    )?;
    for line in &report.derivation {
        writeln!(out, "  {line}")?;
    }
    match &report.outcome {
        Obstruction::NoSolution => {
            writeln!(out, "no minimizer in F (forced k = {})", report.forced_k.unwrap_or(0.0))?;
            for (t, v) in &report.candidate_samples {
                writeln!(out, "candidate D^alpha y(t) = (1-t)^(alpha-1) at t = {t}: {}", format_number(*v))?;
            }
        }
        Obstruction::Solution { trajectory, value } => {
            writeln!(out, "minimizer: y(t) = {trajectory}")?;
            writeln!(out, "value = {}", format_number(*value))?;
        }
    }
    Ok(ExitStatus::Success)
}

pub const SWEEP_HEADER: &str = "alpha,value,gamma_alpha_plus_1,abs_error,residual_max_deviation,converged";

/// One CSV row per order, in input order.
pub fn sweep_csv(alphas: &[f64], m: usize, quad_n: usize) -> std::result::Result<String, CliError> {
    let orders = alphas.iter().map(|&a| order(a)).collect::<std::result::Result<Vec<_>, _>>()?;
    let opts = SolverOptions {
        quad_n,
        ..SolverOptions::default()
    };
    let mut csv = String::from(SWEEP_HEADER);
    csv.push('\n');
    for alpha in orders {
        let prob = VariationalProblem::weighted_dirichlet(alpha);
        let res = solve_quadratic(&prob, m, &opts).map_err(CliError::compute)?;
        let expected = gamma(alpha.value() + 1.0).map_err(CliError::compute)?;
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            format_number(alpha.value()),
            format_number(res.value),
            format_number(expected),
            format_number((res.value - expected).abs()),
            format_number(res.residual.max_deviation),
            res.converged && res.residual.constant
        ));
    }
    Ok(csv)
}

/// Tabulates `example1` over `alphas` into a CSV file.
pub fn run_sweep(alphas: &[f64], m: usize, path: &Path, out: &mut dyn Write) -> CliResult {
    let quad_n = quad_nodes_from_env()?;
    let csv = sweep_csv(alphas, m, quad_n)?;
    fs::write(path, &csv).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    writeln!(out, "wrote {} rows to {}", alphas.len(), path.display())?;
    Ok(ExitStatus::Success)
}

pub const SUITES: [&str; 4] = ["ops", "lemma", "byparts", "all"];

/// Runs a named property suite; exit 0 iff every check passes.
pub fn run_verify(suite: &str, out: &mut dyn Write) -> CliResult {
    type Suite = fn() -> Vec<CheckOutcome>;
    let groups: Vec<(&str, Suite)> = match suite {
        "ops" => vec![("ops", operator_suite)],
        "lemma" => vec![("lemma", lemma_suite)],
        "byparts" => vec![("byparts", by_parts_suite)],
        "all" => vec![("ops", operator_suite), ("lemma", lemma_suite), ("byparts", by_parts_suite)],
        _ => {
            return Err(CliError::usage(format!(
                "unknown suite '{suite}' (expected one of {})",
                SUITES.join(", ")
            )))
        }
    };
    let mut passed = true;
    for (name, run) in groups {
        writeln!(out, "[{name}]")?;
        let checks = run();
        write_checks(out, &checks)?;
        passed &= checks.iter().all(|c| c.passed);
    }
    writeln!(out, "{}", if passed { "all checks passed" } else { "some checks failed" })?;
    Ok(if passed {
        ExitStatus::Success
    } else {
        ExitStatus::CheckFailed
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    Quadratic,
    General,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Quadratic => "quadratic",
            SolverKind::General => "general",
        }
    }
}

/// Contents of a problem spec file.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub interval: Interval,
    pub alpha: FracOrder,
    pub y_a: f64,
    pub y_b: f64,
    /// Registry key or `expr:<expression>` as written.
    pub lagrangian_key: String,
    pub lagrangian: Lagrangian,
    pub solver: SolverKind,
    pub m: usize,
    pub quad_n: Option<usize>,
    /// Simplex iteration cap for the general solver.
    pub max_iter: Option<usize>,
}

const SPEC_KEYS: [&str; 10] = [
    "interval",
    "alpha",
    "y_a",
    "y_b",
    "lagrangian",
    "coefficients",
    "solver",
    "m",
    "quad_n",
    "max_iter",
];

impl ProblemSpec {
    /// Parses a spec document. Errors carry line and column.
    ///
    /// ```text
    /// interval = 0, 1
    /// alpha = 0.5
    /// y_a = 0
    /// y_b = 1
    /// lagrangian = v2            # or zero, quadratic, expr: <expression>
    /// coefficients = 1, 0, 0, 0, 0   # c_vv, c_uu, c_u, c_v, c_0 for quadratic
    /// solver = quadratic         # optional: quadratic | general
    /// m = 3                      # optional
    /// quad_n = 64                # optional
    /// max_iter = 5000            # optional, general solver only
    /// ```
    pub fn parse(text: &str) -> crate::error::Result<Self> {
        let doc = KvDocument::parse(text)?;
        doc.reject_unknown(&SPEC_KEYS)?;

        let iv_entry = doc.require("interval")?;
        let iv = iv_entry.parse_list()?;
        let interval = match iv.as_slice() {
            [a, b] => Interval::new(*a, *b).map_err(|e| iv_entry.error(e.to_string()))?,
            _ => return Err(iv_entry.error("interval: expected two numbers 'a, b'")),
        };
        let alpha_entry = doc.require("alpha")?;
        let alpha = FracOrder::new(alpha_entry.parse("a number")?)
            .map_err(|e| alpha_entry.error(e.to_string()))?;
        let y_a = doc.require("y_a")?.parse("a number")?;
        let y_b = doc.require("y_b")?.parse("a number")?;

        let l_entry = doc.require("lagrangian")?;
        let key = l_entry.value.clone();
        let lagrangian = if key == "quadratic" {
            let c_entry = doc.get("coefficients").ok_or_else(|| {
                l_entry.error("lagrangian 'quadratic' needs 'coefficients = c_vv, c_uu, c_u, c_v, c_0'")
            })?;
            match c_entry.parse_list()?.as_slice() {
                &[c_vv, c_uu, c_u, c_v, c_0] => Lagrangian::quadratic(QuadraticCoeffs {
                    c_vv,
                    c_uu,
                    c_u,
                    c_v,
                    c_0,
                }),
                _ => return Err(c_entry.error("coefficients: expected five numbers")),
            }
        } else {
            if let Some(c_entry) = doc.get("coefficients") {
                return Err(c_entry.error("coefficients only apply to lagrangian 'quadratic'"));
            }
            Lagrangian::from_registry(&key).map_err(|e| match e {
                Error::Parse { offset, expected, found } => {
                    // offset is relative to the expression after "expr:"
                    let expr_start = key.find(':').map_or(0, |i| {
                        i + 1 + (key[i + 1..].len() - key[i + 1..].trim_start().len())
                    });
                    l_entry.error_at(
                        expr_start + offset,
                        format!("expression: expected {expected}, found {found}"),
                    )
                }
                other => l_entry.error(other.to_string()),
            })?
        };

        let quadratic = lagrangian.quadratic_coeffs().is_some();
        let solver = match doc.get("solver") {
            None if quadratic => SolverKind::Quadratic,
            None => SolverKind::General,
            Some(e) => match e.value.as_str() {
                "quadratic" if quadratic => SolverKind::Quadratic,
                "quadratic" => {
                    return Err(e.error("solver 'quadratic' needs lagrangian v2, zero or quadratic"))
                }
                "general" => SolverKind::General,
                other => return Err(e.error(format!("solver: expected quadratic or general, found '{other}'"))),
            },
        };
        let m = match doc.get("m") {
            Some(e) => e.parse("a nonnegative integer")?,
            None => DEFAULT_MODES,
        };
        let quad_n = match doc.get("quad_n") {
            Some(e) => match e.parse::<usize>("a positive integer")? {
                0 => return Err(e.error("quad_n: expected a positive integer, found '0'")),
                n => Some(n),
            },
            None => None,
        };
        let max_iter = match doc.get("max_iter") {
            Some(e) => Some(e.parse("a nonnegative integer")?),
            None => None,
        };
        Ok(Self {
            interval,
            alpha,
            y_a,
            y_b,
            lagrangian_key: key,
            lagrangian,
            solver,
            m,
            quad_n,
            max_iter,
        })
    }

    pub fn problem(&self) -> crate::error::Result<VariationalProblem> {
        VariationalProblem::new(self.interval, self.alpha, self.y_a, self.y_b, self.lagrangian.clone())
    }
}

/// Result document for a solved spec.
pub fn result_document(spec: &ProblemSpec, quad_n: usize, res: &SolveResult) -> String {
    let mut w = KvWriter::new();
    w.comment("fracvar solve result")
        .text("lagrangian", &spec.lagrangian_key)
        .numbers("interval", &[spec.interval.a(), spec.interval.b()])
        .number("alpha", spec.alpha.value())
        .number("y_a", spec.y_a)
        .number("y_b", spec.y_b)
        .text("solver", spec.solver.name())
        .text("m", spec.m)
        .text("quad_n", quad_n)
        .numbers("coefficients", &res.coefficients)
        .number("value", res.value);
    if let Some(y) = res.trajectory.as_power_sum() {
        let terms: Vec<String> = y
            .terms()
            .iter()
            .map(|t| format!("{} {}", format_number(t.coeff), format_number(t.exponent)))
            .collect();
        w.text("trajectory_terms", terms.join(", "));
    }
    let r = &res.residual;
    w.number("residual_k", r.k_estimate)
        .number("residual_max_deviation", r.max_deviation)
        .number("residual_tolerance", r.tolerance)
        .text("residual_constant", r.constant)
        .text("iterations", res.iterations)
        .text("converged", res.converged);
    w.finish()
}

/// Solves the problem in `spec_path` and writes a result file to `out_path`.
/// A search that stops without converging still writes its result and exits
/// with status 4.
pub fn run_solve(spec_path: &Path, out_path: &Path, out: &mut dyn Write) -> CliResult {
    let text = fs::read_to_string(spec_path)
        .map_err(|e| CliError::io(format!("{}: {e}", spec_path.display())))?;
    let spec = ProblemSpec::parse(&text)
        .map_err(|e| CliError::usage(format!("{}: {e}", spec_path.display())))?;
    let quad_n = match spec.quad_n {
        Some(n) => n,
        None => quad_nodes_from_env()?,
    };
    let prob = spec.problem().map_err(|e| CliError::usage(e.to_string()))?;
    let mut opts = SolverOptions {
        quad_n,
        ..SolverOptions::default()
    };
    if let Some(max_iter) = spec.max_iter {
        opts.max_iter = max_iter;
    }
    let res = match spec.solver {
        SolverKind::Quadratic => solve_quadratic(&prob, spec.m, &opts),
        SolverKind::General => solve_general(&prob, spec.m, &opts),
    }
    .map_err(|e| match e {
        Error::Search { .. } => CliError {
            status: ExitStatus::NonConvergence,
            message: e.to_string(),
        },
        other => CliError::compute(other),
    })?;
    fs::write(out_path, result_document(&spec, quad_n, &res))
        .map_err(|e| CliError::io(format!("{}: {e}", out_path.display())))?;
    writeln!(
        out,
        "{}: value = {}, residual max deviation = {:.3e}, converged = {}, wrote {}",
        spec.lagrangian_key,
        format_number(res.value),
        res.residual.max_deviation,
        res.converged,
        out_path.display()
    )?;
    Ok(if res.converged {
        ExitStatus::Success
    } else {
        ExitStatus::NonConvergence
    })
}
