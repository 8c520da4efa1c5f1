//! `ganita` command-line front end.
//!
//! Exit codes: 0 on success, 1 when a verification in the run fails, 2 on a
//! usage error (including arguments outside an operation's domain).

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::batch;
use crate::cyclic_geometry::{
    brahmagupta_radicand, brahmagupta_theorem_sides, crude_area, diagonal_lengths_sq, has_vanishing_side,
    orthodiagonal_generator, segments_and_portions, shoelace_area, xii24_verify, CircleParam,
};
use crate::exact_numbers::{sqrt_decimal, sqrt_exact, Rational};
use crate::report::{render_report, Format, Report};
use crate::scale_calculus::derive_i59_trace;
use crate::sulva_rules::{
    i59_bracket, implied_pi, pi_error, pi_reference, quadrature_ratio_i58, quadrature_ratio_i59,
    quadrature_ratio_i60, sqrt2_i61, verify_decompositions, IdentityReport, Verdict,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ganita", version, about = "Exact checks of the Sulba circle rules and Brahmagupta's cyclic quadrilateral")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Args)]
pub struct Options {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Fractional digits of decimal annotations.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..=1000))]
    pub precision: u32,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..=100_000))]
    pub count: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DeriveTarget {
    I59,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum VerifyTarget {
    Identities,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PiRule {
    I58,
    I59,
    I60,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum QuadAction {
    Demo,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reconstruct a rule as a scale-calculus derivation.
    Derive { target: DeriveTarget },
    /// Exact identity checks around 1224/1393.
    Verify { target: VerifyTarget },
    /// The I.61-62 value of sqrt 2.
    Sqrt2,
    /// The value of pi implied by a quadrature rule.
    Pi { rule: PiRule },
    /// Brahmagupta's exact area from four sides.
    Area {
        #[command(flatten)]
        sides: Sides,
    },
    /// Brahmagupta's crude area from four sides in cyclic order.
    Crude {
        #[command(flatten)]
        sides: Sides,
    },
    /// Generated orthodiagonal cyclic quadrilaterals.
    Quad { action: QuadAction },
    /// The half-oblong chain on the diameter through P(t), apex P(u).
    Xii24 {
        #[arg(allow_hyphen_values = true)]
        t: Rational,
        #[arg(allow_hyphen_values = true)]
        u: Rational,
        /// Circle radius.
        #[arg(allow_hyphen_values = true, default_value = "1")]
        r: Rational,
    },
}

/// Four side lengths. Separate positionals, so options may follow them.
#[derive(Debug, Args)]
pub struct Sides {
    #[arg(allow_hyphen_values = true)]
    a: Rational,
    #[arg(allow_hyphen_values = true)]
    b: Rational,
    #[arg(allow_hyphen_values = true)]
    c: Rational,
    #[arg(allow_hyphen_values = true)]
    d: Rational,
}

/// What a subcommand produced.
enum Output {
    Report(Report),
    Json(String, bool),
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    let opts = &cli.options;
    match dispatch(&cli.command, opts) {
        Ok(Output::Report(report)) => {
            let _ = write!(out, "{}", render_report(&report, opts.format, opts.precision));
            if report.failed() {
                EXIT_FAILED
            } else {
                EXIT_OK
            }
        }
        Ok(Output::Json(text, failed)) => {
            let _ = writeln!(out, "{text}");
            if failed {
                EXIT_FAILED
            } else {
                EXIT_OK
            }
        }
        Err(UsageError(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: &Command, opts: &Options) -> Result<Output, UsageError> {
    Ok(match command {
        Command::Derive { target: DeriveTarget::I59 } => derive_i59(opts),
        Command::Verify { target: VerifyTarget::Identities } => verify_identities(opts),
        Command::Sqrt2 => Output::Report(sqrt2_report(opts.precision)?),
        Command::Pi { rule } => Output::Report(pi_report(*rule, opts.precision)?),
        Command::Area { sides } => Output::Report(area_report(sides)?),
        Command::Crude { sides } => Output::Report(crude_report(sides)?),
        Command::Quad { action: QuadAction::Demo } => Output::Report(quad_demo(opts.seed, opts.count as usize)),
        Command::Xii24 { t, u, r } => Output::Report(xii24_report(t, u, r)?),
    })
}

fn pair(p: [u64; 2]) -> String {
    format!("({}, {})", p[0], p[1])
}

fn derive_i59(opts: &Options) -> Output {
    let trace = derive_i59_trace();
    let valid = trace.validate();
    if opts.format == Format::Json {
        let text = serde_json::to_string_pretty(&trace).expect("trace serializes");
        return Output::Json(text, valid.is_err());
    }
    let mut report = Report::new("I.59 as a scale-calculus derivation");
    for (i, step) in trace.steps().iter().enumerate() {
        let section = report.section(format!("step {}", i + 1));
        section.text("description", &step.description);
        section.text(
            "before",
            step.before.as_ref().map_or("none".to_string(), |c| c.to_string()),
        );
        section.text("after", step.after.to_string());
        section.rational("ratio", &step.after.as_ratio());
        section.text("anchor", &step.anchor);
    }
    let fin = trace.final_correspondence();
    let summary = report.section("result");
    summary.text("final", fin.to_string());
    if let Ok(removal) = fin.removal_form() {
        summary.text("removal", format!("{} (remove {} of {} parts)", pair([removal.whole, removal.removed]), removal.removed, removal.whole));
    }
    summary.rational("side over diameter", &fin.as_ratio());
    summary.check("trace consistency", valid.is_ok(), valid.err().map_or(String::new(), |e| e.to_string()));
    Output::Report(report)
}

/// Residuals the three decompositions must reproduce, written with their
/// unreduced denominators.
fn expected_residuals() -> [Rational; 3] {
    [
        Rational::new(-41, 8 * 29 * 6 * 8 * 1393),
        Rational::zero(),
        Rational::new(1, 8 * 29 * 6 * 8 * 17),
    ]
}

fn identity_ok(report: &IdentityReport, expected: &Rational) -> bool {
    let verdict_ok = (report.verdict == Verdict::ExactEqual) == expected.is_zero();
    verdict_ok && &report.residual == expected && &report.left - &report.right == report.residual
}

fn verify_identities(opts: &Options) -> Output {
    let reports = verify_decompositions();
    let expected = expected_residuals();
    let all_ok = reports.iter().zip(&expected).all(|(r, e)| identity_ok(r, e));
    if opts.format == Format::Json {
        let text = serde_json::to_string_pretty(&reports).expect("reports serialize");
        return Output::Json(text, !all_ok);
    }
    let mut report = Report::new("Exact identities around 1224/1393");
    for (r, e) in reports.iter().zip(&expected) {
        let verdict = match r.verdict {
            Verdict::ExactEqual => "exact-equal",
            Verdict::DiffersByResidual => "differs-by-residual",
        };
        report
            .section(&r.name)
            .rational("left", &r.left)
            .rational("right", &r.right)
            .rational("residual", &r.residual)
            .text("residual, unreduced", &r.legend)
            .text("verdict", verdict)
            .check("matches closed form", identity_ok(r, e), format!("expected {e}"));
    }
    Output::Report(report)
}

fn sqrt2_report(precision: u32) -> Result<Report, UsageError> {
    let rule = sqrt2_i61();
    let mut report = Report::new("sqrt 2 after I.61-62");
    let terms = report.section("terms");
    for (i, t) in rule.term_list.iter().enumerate() {
        terms.rational(format!("term {}", i + 1), t);
    }
    let two = Rational::integer(2);
    let excess = rule.value.square() - &two;
    report
        .section("value")
        .rational("sum", &rule.value)
        .rational("square minus 2", &excess)
        .text("sqrt 2", sqrt_decimal(&two, precision)?.text)
        .check("upper approximant", excess.is_positive(), "value squared exceeds 2");
    Ok(report)
}

fn pi_report(rule: PiRule, precision: u32) -> Result<Report, UsageError> {
    let (name, ratio) = match rule {
        PiRule::I58 => ("I.58 inverted with sqrt 2 = 577/408", quadrature_ratio_i58()),
        PiRule::I59 => ("I.59", quadrature_ratio_i59()),
        PiRule::I60 => ("I.60", quadrature_ratio_i60()),
    };
    let pi = implied_pi(&ratio)?;
    let mut report = Report::new(format!("pi implied by {name}"));
    let section = report.section("side over diameter");
    section.rational("s/d", &ratio);
    if let PiRule::I59 = rule {
        section.rational("bracket 28 + 1/6 - 1/48", &i59_bracket().value);
    }
    report
        .section("implied pi = 4 (s/d)^2")
        .rational("implied pi", &pi)
        .text("reference pi", pi_reference().to_decimal(precision).text)
        .text("implied minus pi", pi_error(&pi, precision).text);
    Ok(report)
}

fn sides_array(sides: &Sides) -> [Rational; 4] {
    [sides.a.clone(), sides.b.clone(), sides.c.clone(), sides.d.clone()]
}

fn area_report(sides: &Sides) -> Result<Report, UsageError> {
    let [a, b, c, d] = sides_array(sides);
    let radicand = brahmagupta_radicand(&a, &b, &c, &d)?;
    let mut report = Report::new(format!("Exact area for sides {a}, {b}, {c}, {d}"));
    let section = report.section("area = sqrt((s-a)(s-b)(s-c)(s-d))");
    section.rational("radicand", &radicand);
    match sqrt_exact(&radicand) {
        Ok(area) => section.rational("area", &area),
        Err(_) => section.text("area", format!("not rational, ~ {}", sqrt_decimal(&radicand, 12)?)),
    };
    if has_vanishing_side(&[a, b, c, d]) {
        section.text("note", "one side vanishes: this is Heron's triangle formula, not a quadrilateral");
    }
    Ok(report)
}

fn crude_report(sides: &Sides) -> Result<Report, UsageError> {
    let [a, b, c, d] = sides_array(sides);
    let crude = crude_area(&a, &b, &c, &d)?;
    let swapped = crude_area(&a, &c, &b, &d)?;
    let mut report = Report::new(format!("Crude area for sides {a}, {b}, {c}, {d}"));
    let section = report.section("product of half-sums of opposite sides");
    section.rational("crude area", &crude);
    section.rational("crude area, order a c b d", &swapped);
    if let Ok(radicand) = brahmagupta_radicand(&a, &b, &c, &d) {
        match sqrt_exact(&radicand) {
            Ok(exact) => section.rational("exact area", &exact),
            Err(_) => section.rational("exact area squared", &radicand),
        };
    }
    Ok(report)
}

fn quad_demo(seed: u64, count: usize) -> Report {
    let quads = orthodiagonal_generator(seed, count);
    let checks = batch::check_quads(&quads);
    let mut report = Report::new(format!("Orthodiagonal cyclic quadrilaterals, seed {seed}"));
    for (i, (quad, check)) in quads.iter().zip(&checks).enumerate() {
        let sp = segments_and_portions(quad);
        let (d1, d2) = diagonal_lengths_sq(quad);
        let section = report.section(format!("quad {}", i + 1));
        section.quad("vertices", quad);
        section.rational("radius", quad.radius());
        section.rational("diagonal AC squared", &d1);
        section.rational("diagonal BD squared", &d2);
        section.rational("portion on AC", &sp.ac.cut);
        section.rational("portion on BD", &sp.bd.cut);
        if let Ok(area) = shoelace_area(quad) {
            section.rational("area", &area);
        }
        section.check("segments are portions", check.segments_equal_portions, "");
        section.check("agrees with dot product", check.orthogonal == check.segments_equal_portions, "");
        if let Ok(sides) = brahmagupta_theorem_sides(quad) {
            let hits: Vec<String> = sides.iter().map(|s| s.hit.to_string()).collect();
            section.text("midpoints hit", hits.join(" "));
        }
        section.check("perpendicular bisects opposite side", check.theorem == Some(true), "all four sides");
        section.check("Brahmagupta area = shoelace area", check.area_oracle == Some(true), "");
    }
    report
}

fn xii24_report(t: &Rational, u: &Rational, r: &Rational) -> Result<Report, UsageError> {
    let rep = xii24_verify(&CircleParam::Finite(t.clone()), &CircleParam::Finite(u.clone()), r)?;
    let mut report = Report::new(format!("Half-oblong on the diameter through P({t}), apex P({u}), r = {r}"));
    report
        .section("figure")
        .text("A", rep.a.to_string())
        .text("B", rep.b.to_string())
        .text("C", rep.c.to_string())
        .text("foot H", rep.foot.to_string())
        .rational("lambda", &rep.lambda);
    report
        .section("squared lengths")
        .rational("a^2 = AB^2", &rep.a_sq)
        .rational("b^2 = BC^2", &rep.b_sq)
        .rational("gamma^2 = AC^2", &rep.gamma_sq)
        .rational("alpha^2 = AH^2", &rep.alpha_sq)
        .rational("beta^2 = HC^2", &rep.beta_sq)
        .rational("h^2 = BH^2", &rep.h_sq);
    let checks = report.section("derivation");
    for c in &rep.checks {
        checks.check(&c.name, c.holds, format!("{} vs {}", c.left, c.right));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("ganita").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn derive_json() {
        let (code, out, _) = run_args(&["derive", "i59", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["final"], serde_json::json!([232, 204]));
        assert_eq!(v["steps"].as_array().unwrap().len(), 7);
        assert!(out.contains("removing 4 x 7 = 28"));
    }

    #[test]
    fn derive_text() {
        let (code, out, _) = run_args(&["derive", "i59"]);
        assert_eq!(code, 0);
        assert!(out.contains("removal: (232, 28)"));
        assert!(out.contains("trace consistency: PASS"));
    }

    #[test]
    fn verify_identities_cmd() {
        let (code, out, _) = run_args(&["verify", "identities", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 3);
        assert_eq!(v[1]["verdict"], "exact-equal");
        assert_eq!(v[0]["residual"], "-41/15512448");
        let (code, md, _) = run_args(&["verify", "identities", "--format", "markdown"]);
        assert_eq!(code, 0);
        assert!(md.contains("-41/(8·29·6·8·1393)"));
    }

    #[test]
    fn sqrt2_and_pi() {
        let (code, out, _) = run_args(&["sqrt2"]);
        assert_eq!(code, 0);
        assert!(out.contains("577/408"));
        let (code, out, _) = run_args(&["pi", "i60"]);
        assert_eq!(code, 0);
        assert!(out.contains("676/225"));
        assert!(out.contains("3.004444444444"));
        let (_, out, _) = run_args(&["pi", "i59", "--precision", "4"]);
        assert!(out.contains("3.0883"));
    }

    #[test]
    fn area_and_crude() {
        let (code, out, _) = run_args(&["area", "3", "4", "5", "0"]);
        assert_eq!(code, 0);
        assert!(out.contains("radicand: 36/1"));
        assert!(out.contains("area: 6/1"));
        assert!(out.contains("Heron"));
        let (code, out, _) = run_args(&["crude", "1", "1", "7", "7"]);
        assert_eq!(code, 0);
        assert!(out.contains("crude area: 16/1"));
        assert!(out.contains("crude area, order a c b d: 7/1"));
        let (code, _, err) = run_args(&["area", "1", "1", "1", "5"]);
        assert_eq!(code, 2);
        assert!(err.contains("do not form"));
        let (code, _, _) = run_args(&["area", "1/0", "1", "1", "1"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn quad_demo_cmd() {
        let (code, out, _) = run_args(&["quad", "demo", "--seed", "1", "--count", "20"]);
        assert_eq!(code, 0);
        assert_eq!(out.matches("perpendicular bisects opposite side: PASS").count(), 20);
        assert!(!out.contains("FAIL"));
    }

    #[test]
    fn xii24_cmd() {
        let (code, out, _) = run_args(&["xii24", "0", "3/4", "5/2"]);
        assert_eq!(code, 0);
        assert!(out.contains("h^2 = BH^2: 144/25"));
        assert_eq!(out.matches("PASS").count(), 4);
        let (code, _, _) = run_args(&["xii24", "-1/2", "-3"]);
        assert_eq!(code, 0);
        let (code, _, _) = run_args(&["xii24", "2", "2"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&[]).0, 2);
        assert_eq!(run_args(&["nope"]).0, 2);
        assert_eq!(run_args(&["pi", "i61"]).0, 2);
        assert_eq!(run_args(&["crude", "1", "2"]).0, 2);
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("Usage"));
    }
}
