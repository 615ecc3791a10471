//! The `g2calc` command line: a form-expression language plus one
//! subcommand per verification.
//!
//! Exit codes: 0 when the verdict is true or the identity holds, 1 when it
//! is false (the defect is printed), 2 for usage and parse errors, 3 when a
//! precondition fails (e.g. a 1-form that is not Rochesterian).
//!
//! With `--json` every report line becomes one JSON object
//! `{"command": ..., "key": ..., "value": ...}` whose value is the same
//! canonical text; the last line carries `"exit"`.

mod expr;
mod parser;
mod selftest;

pub use expr::{literal, EvalError, FormExpression, Value};
pub use parser::{parse, parse_field, parse_form, ExprType, ParseError, ParseErrorKind};
pub use selftest::{selftest_cases, SelftestCase, NONEXISTENCE_NOTE};

use clap::{Parser, Subcommand};

use crate::algebra::{format_rational, Polynomial, Rational, RationalMatrix};
use crate::exterior::{DifferentialForm, PolynomialMap, VectorField};
use crate::g2::{self, G2Error, G2Structure, HodgeStar};
use crate::numeric::{self, NumericConfig, NumericError};
use crate::registry::{self, Structure};
use crate::symplectic::{self, SymplecticError, SymplecticStructure};

#[derive(Debug, Parser)]
#[command(
    name = "g2calc",
    version,
    about = "Exact checks for closed G2-structures and their symplectic analogues"
)]
struct Cli {
    /// Emit line-delimited JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Chart dimension for plain forms.
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Structure: phi0, cst or symplectic_std:n.
    #[arg(long, global = true)]
    preset: Option<String>,
    /// Tolerance for numeric verdicts.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// RK4 steps for flows.
    #[arg(long, global = true)]
    steps: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Is d(form) = 0?
    CheckClosed {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Does the field preserve φ (d(X⌟φ) = 0)?
    IsG2Field {
        #[arg(allow_hyphen_values = true)]
        field: String,
    },
    /// Solve X⌟φ = dα for the Rochesterian field of a 1-form.
    Rochesterian {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
    },
    /// The bracket {α, β} = φ(X_α, X_β, ·) and its closure identity.
    Bracket {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(allow_hyphen_values = true)]
        beta: String,
    },
    /// Both sides of the Jacobi-defect identity.
    JacobiDefect {
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(allow_hyphen_values = true)]
        beta: String,
        #[arg(allow_hyphen_values = true)]
        gamma: String,
    },
    /// Split a 2-form into its Ω²₇ and Ω²₁₄ parts.
    Split2 {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Metric and volume recovered from φ.
    Metric {
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Cross product X × Y.
    Cross {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Hodge star for the metric of φ.
    Star {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Is the map (a component list) a G2-morphism, ψ*φ_target = φ?
    Morphism {
        #[arg(allow_hyphen_values = true)]
        map: String,
        /// Components of the inverse, for non-affine maps.
        #[arg(long, allow_hyphen_values = true)]
        inverse: Option<String>,
        /// Structure on the target (defaults to --preset).
        #[arg(long)]
        target: Option<String>,
    },
    /// Restrict π₁*φ₁ − π₂*φ₂ to the graph of the map.
    GraphTest {
        #[arg(allow_hyphen_values = true)]
        map: String,
        #[arg(long)]
        target: Option<String>,
    },
    /// Poisson bracket {f, g} = ω(X_f, X_g).
    Poisson {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// {f,{g,h}} + {g,{h,f}} + {h,{f,g}}.
    PoissonJacobi {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    /// RK4 flow of a field and the drift of the pulled-back structure form.
    Flow {
        #[arg(allow_hyphen_values = true)]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        start: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        t_end: f64,
    },
    /// Run the built-in identity suite.
    Selftest {
        /// List the cases and the statements they check.
        #[arg(long)]
        list: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::CheckClosed { .. } => "check-closed",
            Command::IsG2Field { .. } => "is-g2-field",
            Command::Rochesterian { .. } => "rochesterian",
            Command::Bracket { .. } => "bracket",
            Command::JacobiDefect { .. } => "jacobi-defect",
            Command::Split2 { .. } => "split2",
            Command::Metric { .. } => "metric",
            Command::Cross { .. } => "cross",
            Command::Star { .. } => "star",
            Command::Morphism { .. } => "morphism",
            Command::GraphTest { .. } => "graph-test",
            Command::Poisson { .. } => "poisson",
            Command::PoissonJacobi { .. } => "poisson-jacobi",
            Command::Flow { .. } => "flow",
            Command::Selftest { .. } => "selftest",
        }
    }
}

/// Exit code and the text written to stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn precondition(message: impl Into<String>) -> Failure {
    Failure {
        code: 3,
        message: message.into(),
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        usage(format!("parse error: {e}"))
    }
}

impl From<G2Error> for Failure {
    fn from(e: G2Error) -> Self {
        precondition(e.to_string())
    }
}

impl From<SymplecticError> for Failure {
    fn from(e: SymplecticError) -> Self {
        precondition(e.to_string())
    }
}

impl From<NumericError> for Failure {
    fn from(e: NumericError) -> Self {
        precondition(e.to_string())
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Registry(r) => usage(r.to_string()),
            other => precondition(other.to_string()),
        }
    }
}

impl From<crate::exterior::ExteriorError> for Failure {
    fn from(e: crate::exterior::ExteriorError) -> Self {
        precondition(e.to_string())
    }
}

/// Key/value lines plus an optional verdict.
#[derive(Debug, Default)]
struct Report {
    lines: Vec<(String, String)>,
    verdict: Option<bool>,
}

impl Report {
    fn line(&mut self, key: &str, value: impl ToString) {
        self.lines.push((key.to_string(), value.to_string()));
    }

    fn verdict(mut self, v: bool) -> Self {
        self.verdict = Some(v);
        self
    }
}

struct Context {
    dim: Option<usize>,
    preset: Option<String>,
    tol: Option<f64>,
    steps: Option<usize>,
    config: NumericConfig,
}

impl Context {
    fn structure(&self, name: Option<&str>, default: &str) -> Result<Structure, Failure> {
        registry::structure(name.or(self.preset.as_deref()).unwrap_or(default))
            .map_err(|e| usage(e.to_string()))
    }

    fn g2(&self) -> Result<G2Structure, Failure> {
        self.g2_named(None)
    }

    fn g2_named(&self, name: Option<&str>) -> Result<G2Structure, Failure> {
        if let Some(d) = self.dim.filter(|&d| d != 7) {
            return Err(usage(format!(
                "G2 commands work on 7-dimensional charts, not --dim {d}"
            )));
        }
        match self.structure(name, "phi0")? {
            Structure::G2(g) => Ok(g),
            Structure::Symplectic(_) => Err(usage("this command needs a G2 preset (phi0 or cst)")),
        }
    }

    fn symplectic(&self) -> Result<SymplecticStructure, Failure> {
        let default = format!("symplectic_std:{}", self.dim.unwrap_or(2) / 2);
        match self.structure(None, &default)? {
            Structure::Symplectic(s) => {
                if let Some(d) = self.dim.filter(|&d| d != s.dim()) {
                    return Err(usage(format!(
                        "--dim {d} does not match the {}-dimensional preset",
                        s.dim()
                    )));
                }
                Ok(s)
            }
            Structure::G2(_) => Err(usage(
                "this command needs a symplectic preset (symplectic_std:n)",
            )),
        }
    }

    /// Dimension for plain forms: `--dim`, else the preset's, else 7.
    fn plain_dim(&self) -> Result<usize, Failure> {
        match (self.dim, &self.preset) {
            (Some(d), _) => Ok(d),
            (None, Some(_)) => Ok(self.structure(None, "phi0")?.dim()),
            (None, None) => Ok(7),
        }
    }
}

fn form_arg(input: &str, dim: usize) -> Result<DifferentialForm, Failure> {
    let (e, _) = parse_form(input, dim)?;
    Ok(e.evaluate(dim)?.into_form()?)
}

fn function_arg(input: &str, dim: usize) -> Result<Polynomial, Failure> {
    let (e, degree) = parse_form(input, dim)?;
    if degree != 0 {
        return Err(usage(format!("expected a function, got a {degree}-form")));
    }
    Ok(e.evaluate(dim)?
        .into_form()?
        .as_function()
        .expect("degree 0"))
}

fn field_arg(input: &str, dim: usize) -> Result<VectorField, Failure> {
    Ok(parse_field(input, dim)?.evaluate(dim)?.into_field()?)
}

fn point_arg(input: Option<&str>, dim: usize, default: Vec<f64>) -> Result<Vec<f64>, Failure> {
    let Some(s) = input else {
        return Ok(default);
    };
    let values = s
        .trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| usage(format!("bad coordinate `{}`", v.trim())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.len() != dim {
        return Err(usage(format!(
            "point needs {dim} coordinates, got {}",
            values.len()
        )));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(usage("point coordinates must be finite"));
    }
    Ok(values)
}

/// A component list; affine maps get a certified inverse automatically.
fn map_arg(input: &str, inverse: Option<&str>, dim: usize) -> Result<PolynomialMap, Failure> {
    let components = field_arg(input, dim)?.components().to_vec();
    let affine = components.iter().all(|c| c.degree().is_none_or(|d| d <= 1));
    if affine && inverse.is_none() {
        let mut m = RationalMatrix::zeros(dim, dim);
        let mut offset = Vec::with_capacity(dim);
        for (i, c) in components.iter().enumerate() {
            for j in 1..=dim {
                m[(i, j - 1)] = c
                    .partial(j)
                    .map_err(crate::exterior::ExteriorError::from)?
                    .constant_term();
            }
            offset.push(c.constant_term());
        }
        return Ok(PolynomialMap::affine(&m, &offset)?);
    }
    let map = PolynomialMap::new(dim, components)?;
    match inverse {
        Some(inv) => {
            let inv = PolynomialMap::new(dim, field_arg(inv, dim)?.components().to_vec())?;
            Ok(map.with_inverse(inv)?)
        }
        None => Ok(map),
    }
}

fn rational_row(values: &[Rational]) -> String {
    format!(
        "[{}]",
        values
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(", ")
    )
}

fn float_row(values: &[f64]) -> String {
    format!(
        "[{}]",
        values
            .iter()
            .map(|v| format!("{v}"))
            .collect::<Vec<_>>()
            .join(", ")
    )
}

fn sci(v: f64) -> String {
    format!("{v:.3e}")
}

fn execute(cmd: &Command, ctx: &Context) -> Result<Report, Failure> {
    let mut r = Report::default();
    match cmd {
        Command::CheckClosed { form } => {
            let dim = ctx.plain_dim()?;
            let a = form_arg(form, dim)?;
            r.line("form", &a);
            if a.is_top_degree() {
                r.line("d", "(top degree, closed)");
                return Ok(r.verdict(true));
            }
            let d = a.exterior_derivative()?;
            r.line("d", &d);
            Ok(r.verdict(d.is_zero()))
        }
        Command::IsG2Field { field } => {
            let g = ctx.g2()?;
            let x = field_arg(field, 7)?;
            let report = g2::is_g2_vector_field(&g, &x)?;
            r.line("field", &x);
            r.line("d(X⌟φ)", &report.certificate);
            r.line("L_X φ", &report.lie_derivative);
            Ok(r.verdict(report.is_g2))
        }
        Command::Rochesterian { alpha } => {
            let g = ctx.g2()?;
            let a = form_arg(alpha, 7)?;
            r.line("alpha", &a);
            r.line("d(alpha)", a.exterior_derivative()?);
            match g2::rochesterian_field_of(&g, &a) {
                Ok(x) => {
                    r.line("field", &x);
                    Ok(r.verdict(true))
                }
                Err(G2Error::NotRochesterian(residual)) => {
                    r.line("omega14_part", &residual);
                    Ok(r.verdict(false))
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Bracket { alpha, beta } => {
            let g = ctx.g2()?;
            let report = g2::rochesterian_bracket(&g, &form_arg(alpha, 7)?, &form_arg(beta, 7)?)?;
            r.line("X_alpha", &report.x_alpha);
            r.line("X_beta", &report.x_beta);
            r.line("bracket", &report.bracket);
            r.line("bracket_field", &report.bracket_field);
            r.line("d(bracket)", report.bracket.exterior_derivative()?);
            Ok(r.verdict(report.closure_holds))
        }
        Command::JacobiDefect { alpha, beta, gamma } => {
            let g = ctx.g2()?;
            let j = g2::jacobi_defect(
                &g,
                &form_arg(alpha, 7)?,
                &form_arg(beta, 7)?,
                &form_arg(gamma, 7)?,
            )?;
            r.line("lhs", &j.lhs);
            r.line("rhs", &j.rhs);
            r.line("difference", j.lhs.checked_sub(&j.rhs)?);
            Ok(r.verdict(j.holds()))
        }
        Command::Split2 { form } => {
            let g = ctx.g2()?;
            let s = g2::split_two_form(&g, &form_arg(form, 7)?)?;
            r.line("omega7", &s.omega7);
            r.line("omega14", &s.omega14);
            if let Some(w) = &s.witness_field {
                r.line("witness", w);
            }
            Ok(r)
        }
        Command::Metric { point } => {
            let g = ctx.g2()?;
            let p = point_arg(point.as_deref(), 7, vec![0.0; 7])?;
            let m = g2::metric_from_phi(&g, &p)?;
            r.line("point", float_row(&p));
            match &m.exact_gram {
                Some(exact) => {
                    for i in 0..7 {
                        r.line("g", rational_row(exact.row(i)));
                    }
                }
                None => {
                    for row in &m.gram {
                        r.line("g", float_row(row));
                    }
                }
            }
            r.line("sqrt_det_g", m.volume_coefficient);
            r.line("exact", m.exact_gram.is_some());
            Ok(r)
        }
        Command::Cross { x, y, point } => {
            let g = ctx.g2()?;
            let (x, y) = (field_arg(x, 7)?, field_arg(y, 7)?);
            if point.is_none() && g.has_constant_coefficients() {
                if let Ok(f) = g2::cross_product_field(&g, &x, &y) {
                    r.line("cross", f);
                    return Ok(r);
                }
            }
            let p = point_arg(point.as_deref(), 7, vec![0.0; 7])?;
            let c = g2::cross_product(&g, &x, &y, &p)?;
            r.line("point", float_row(&p));
            match &c.exact {
                Some(v) => r.line("cross", rational_row(v)),
                None => r.line("cross", float_row(&c.values)),
            }
            Ok(r)
        }
        Command::Star { form, point } => {
            let g = ctx.g2()?;
            let p = point_arg(point.as_deref(), 7, vec![0.0; 7])?;
            let a = form_arg(form, 7)?;
            match g2::hodge_star(&g, &a, &p)? {
                HodgeStar::Exact(s) => {
                    r.line("star", &s);
                    for (idx, c) in s.terms() {
                        r.line("term", DifferentialForm::term(c.clone(), &idx.to_vec())?);
                    }
                }
                HodgeStar::Numeric { coefficients, .. } => {
                    r.line("point", float_row(&p));
                    for (idx, c) in coefficients {
                        r.line("term", format!("{c} {idx}"));
                    }
                }
            }
            Ok(r)
        }
        Command::Morphism {
            map,
            inverse,
            target,
        } => {
            let src = ctx.g2()?;
            let dst = ctx.g2_named(target.as_deref())?;
            let psi = map_arg(map, inverse.as_deref(), 7)?;
            let report = g2::is_g2_morphism(&src, &dst, &psi)?;
            r.line("map", &psi);
            r.line("defect", &report.defect);
            Ok(r.verdict(report.is_morphism))
        }
        Command::GraphTest { map, target } => {
            let g1 = ctx.g2()?;
            let g2s = ctx.g2_named(target.as_deref())?;
            let psi = map_arg(map, None, 7)?;
            let report = g2::graph_criterion(&g1, &g2s, &psi)?;
            r.line("restricted", &report.restricted);
            r.line("direct", &report.direct);
            r.line("paths_agree", report.paths_agree);
            Ok(r.verdict(report.vanishes))
        }
        Command::Poisson { f, g } => {
            let s = ctx.symplectic()?;
            let (f, g) = (function_arg(f, s.dim())?, function_arg(g, s.dim())?);
            r.line("X_f", symplectic::hamiltonian_field(&s, &f)?);
            r.line("X_g", symplectic::hamiltonian_field(&s, &g)?);
            r.line("bracket", symplectic::poisson_bracket(&s, &f, &g)?);
            Ok(r)
        }
        Command::PoissonJacobi { f, g, h } => {
            let s = ctx.symplectic()?;
            let dim = s.dim();
            let sum = symplectic::poisson_jacobi_check(
                &s,
                &function_arg(f, dim)?,
                &function_arg(g, dim)?,
                &function_arg(h, dim)?,
            )?;
            r.line("jacobi_sum", &sum);
            Ok(r.verdict(sum.is_zero()))
        }
        Command::Flow {
            field,
            start,
            t_end,
        } => {
            let structure = ctx.structure(None, "phi0")?;
            let dim = structure.dim();
            let x = field_arg(field, dim)?;
            let default_start = (1..=dim).map(|i| 0.1 * i as f64).collect();
            let p = point_arg(start.as_deref(), dim, default_start)?;
            let steps = ctx.steps.unwrap_or(ctx.config.steps);
            let tol = ctx.tol.unwrap_or(ctx.config.g2_drift);
            let flow = numeric::integrate_flow(&x, structure.form(), &p, *t_end, steps)?;
            r.line("field", &x);
            r.line("steps", steps);
            r.line("t_end", t_end);
            r.line("end_point", float_row(flow.end_point()));
            if let Some(t) = flow.blow_up {
                r.line("blow_up_at", t);
            }
            r.line("max_drift", sci(flow.max_drift()));
            r.line("tolerance", sci(tol));
            Ok(r.verdict(flow.blow_up.is_none() && flow.max_drift() <= tol))
        }
        Command::Selftest { list } => {
            let cases = selftest_cases();
            if *list {
                for c in &cases {
                    r.line(c.name, c.statement);
                }
                r.line("not_tested", NONEXISTENCE_NOTE);
                return Ok(r);
            }
            let seed = numeric::seed_from_env();
            r.line("seed", seed);
            let mut all = true;
            for c in &cases {
                let outcome = (c.run)(seed);
                all &= outcome.is_ok();
                match outcome {
                    Ok(detail) => r.line("PASS", format!("{} ({detail})", c.name)),
                    Err(detail) => r.line("FAIL", format!("{}: {detail}", c.name)),
                }
            }
            r.line("not_tested", NONEXISTENCE_NOTE);
            Ok(r.verdict(all))
        }
    }
}

fn render(command: &str, report: &Report, json: bool, code: i32) -> String {
    let mut out = String::new();
    for (k, v) in &report.lines {
        if json {
            out.push_str(
                &serde_json::json!({ "command": command, "key": k, "value": v }).to_string(),
            );
        } else {
            out.push_str(&format!("{k}: {v}"));
        }
        out.push('\n');
    }
    match (json, report.verdict) {
        (true, v) => {
            let value = v.map_or_else(|| "done".to_string(), |b| b.to_string());
            out.push_str(&serde_json::json!({ "command": command, "key": "verdict", "value": value, "exit": code }).to_string());
            out.push('\n');
        }
        (false, Some(v)) => out.push_str(&format!("verdict: {v}\n")),
        (false, None) => {}
    }
    out
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = if e.use_stderr() { 2 } else { 0 };
            return if code == 0 {
                CommandOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CommandOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let ctx = Context {
        dim: cli.dim,
        preset: cli.preset.clone(),
        tol: cli.tol,
        steps: cli.steps,
        config: NumericConfig::default(),
    };
    let name = cli.command.name();
    match execute(&cli.command, &ctx) {
        Ok(report) => {
            let code = match report.verdict {
                Some(false) => 1,
                _ => 0,
            };
            CommandOutput {
                code,
                stdout: render(name, &report, cli.json, code),
                stderr: String::new(),
            }
        }
        Err(f) => {
            if cli.json {
                let line = serde_json::json!({ "command": name, "key": "error", "value": f.message, "exit": f.code });
                CommandOutput {
                    code: f.code,
                    stdout: format!("{line}\n"),
                    stderr: String::new(),
                }
            } else {
                CommandOutput {
                    code: f.code,
                    stdout: String::new(),
                    stderr: format!("error: {}\n", f.message),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CommandOutput {
        run_command(std::iter::once("g2calc").chain(args.iter().copied()))
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            run(&[
                "is-g2-field",
                "--preset",
                "phi0",
                "[0,x3,-x2,x5,-x4,-2*x7,2*x6]"
            ])
            .code,
            0
        );
        assert_eq!(run(&["is-g2-field", "[x1,0,0,0,0,0,0]"]).code, 1);
        assert_eq!(run(&["check-closed", "dx[1"]).code, 2);
        assert_eq!(run(&["bracket", "x2*dx[3]", "x1*dx[2]"]).code, 3);
        assert_eq!(run(&["rochesterian", "x2*dx[3]"]).code, 1);
        assert_eq!(run(&["frobnicate"]).code, 2);
        assert_eq!(run(&["metric", "--preset", "nope"]).code, 2);
    }

    #[test]
    fn star_prints_each_term() {
        let out = run(&["star", "--preset", "phi0", "@phi0"]);
        assert_eq!(out.code, 0);
        assert_eq!(
            out.stdout
                .lines()
                .filter(|l| l.starts_with("term: "))
                .count(),
            7
        );
        assert!(out.stdout.contains("term: + (1) dx[4,5,6,7]"));
    }

    #[test]
    fn json_wraps_canonical_text() {
        let out = run(&["--json", "check-closed", "x1*dx[2]"]);
        assert_eq!(out.code, 1);
        let last: serde_json::Value =
            serde_json::from_str(out.stdout.lines().last().unwrap()).unwrap();
        assert_eq!(last["exit"], 1);
        let first: serde_json::Value =
            serde_json::from_str(out.stdout.lines().next().unwrap()).unwrap();
        assert_eq!(first["value"], "+ (x1) dx[2]");
    }
}
