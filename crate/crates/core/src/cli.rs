//! The `flagein` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 painted node does not give a two-summand space.
//!
//! Exact rationals are rendered as `"p/q"` strings (plain integers as `"p"`);
//! floating-point values appear only in fields ending in `_approx`.

use std::io::Write;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::einstein::{
    t_closed_form, t_oracle, volume_and_constant, CurvatureModel, InvariantMetric,
};
use crate::flagspace::{enumerate_spaces, reference_dims, PaintedDiagram, TwoSummandSpace};
use crate::hessian::{
    classify_model, constrained_first_derivative, kaehler_determinant_closed_form,
    non_kaehler_determinant_closed_form, AffinePoly, CriticalPointReport, MetricKind,
};
use crate::rootsys::{expected_positive_root_count, Family, LieType, RootSystem, RootVec};
use crate::weights::{highest_weight, to_weight_basis, weyl_dim};
use crate::{Error, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_TWO_SUMMAND: i32 = 3;

/// Serde adapter writing a [`Rational`] as `"p/q"`.
pub mod rational_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

mod rational_vec_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::Rational;

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

const NUMBERING_HELP: &str = "\
Nodes use Bourbaki numbering:
  B_l, C_l : chain 1 - 2 - ... - (l-1) = l   (B: l short, C: l long)
  D_l      : chain 1 - ... - (l-2), fork to l-1 and l
  E_l      : chain 1 - 3 - 4 - 5 - ... - l, node 2 attached to 4
  F4       : 1 - 2 => 3 - 4   (1, 2 long)
  G2       : 1 <= 2           (1 long)
Two-summand nodes (mark 2): B_l p>=2; C_l p<=l-1; D_l 2<=p<=l-2;
E6 2,3,5; E7 1,2,6; E8 1,8; F4 1,4; G2 1.";

#[derive(Debug, Parser)]
#[command(
    name = "flagein",
    version,
    about = "Invariant Einstein metrics on flag manifolds with two isotropy summands"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ListFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the two-summand spaces of a Lie type.
    List {
        family: String,
        rank: usize,
        /// Merge painted nodes related by a diagram automorphism.
        #[arg(long)]
        dedup: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: ListFormat,
    },
    /// Full analysis of one painted diagram.
    #[command(after_help = NUMBERING_HELP)]
    Analyze {
        family: String,
        rank: usize,
        node: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Run every cross-check on all spaces up to the given rank.
    Verify { max_rank: usize },
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::List {
            family,
            rank,
            dedup,
            format,
        } => parse_type(&family, rank).and_then(|t| cmd_list(t, dedup, format, out)),
        Command::Analyze {
            family,
            rank,
            node,
            format,
        } => parse_type(&family, rank).and_then(|t| cmd_analyze(t, node, format, out)),
        Command::Verify { max_rank } => cmd_verify(max_rank, out),
    };
    match result {
        Ok(code) => code,
        Err(CliError { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::HeightNotTwo { .. } => EXIT_NOT_TWO_SUMMAND,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn io_err(e: impl std::fmt::Display) -> CliError {
    CliError {
        code: EXIT_USAGE,
        message: format!("write failed: {e}"),
    }
}

fn parse_type(family: &str, rank: usize) -> Result<LieType, CliError> {
    let f: Family = family.parse()?;
    Ok(LieType::new(f, rank)?)
}

/// One row of `flagein list`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListRow {
    pub painted_node: usize,
    pub orbit: Vec<usize>,
    pub k_label: String,
    pub d1: u64,
    pub d2: u64,
    #[serde(with = "rational_str")]
    pub t: Rational,
    #[serde(with = "rational_str")]
    pub non_kaehler_x2: Rational,
}

pub fn list_rows(t: LieType, dedup: bool) -> Vec<ListRow> {
    let rs = Arc::new(RootSystem::new(t));
    enumerate_spaces(&rs, dedup)
        .iter()
        .map(|s| {
            let sols = CurvatureModel::for_space(s).einstein_metrics();
            ListRow {
                painted_node: s.painted(),
                orbit: s.orbit().to_vec(),
                k_label: s.k_description().to_owned(),
                d1: s.d1(),
                d2: s.d2(),
                t: sols.t,
                non_kaehler_x2: sols.non_kaehler.x2().clone(),
            }
        })
        .collect()
}

pub fn cmd_list(
    t: LieType,
    dedup: bool,
    format: ListFormat,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let rows = list_rows(t, dedup);
    match format {
        ListFormat::Json => {
            let s = serde_json::to_string_pretty(&rows).map_err(io_err)?;
            writeln!(out, "{s}").map_err(io_err)?;
        }
        ListFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "painted_node",
                "orbit",
                "k_label",
                "d1",
                "d2",
                "t",
                "non_kaehler_x2",
            ])
            .map_err(io_err)?;
            for r in &rows {
                w.write_record([
                    r.painted_node.to_string(),
                    join_nodes(&r.orbit),
                    r.k_label.clone(),
                    r.d1.to_string(),
                    r.d2.to_string(),
                    r.t.to_string(),
                    r.non_kaehler_x2.to_string(),
                ])
                .map_err(io_err)?;
            }
            let bytes = w.into_inner().map_err(io_err)?;
            out.write_all(&bytes).map_err(io_err)?;
        }
        ListFormat::Text => {
            writeln!(out, "{t}: {} two-summand space(s)", rows.len()).map_err(io_err)?;
            if !rows.is_empty() {
                writeln!(
                    out,
                    "{:>4}  {:<8}  {:<24}  {:>5}  {:>5}  {:>10}  {:>10}",
                    "node", "orbit", "K", "d1", "d2", "t", "x2"
                )
                .map_err(io_err)?;
            }
            for r in &rows {
                writeln!(
                    out,
                    "{:>4}  {:<8}  {:<24}  {:>5}  {:>5}  {:>10}  {:>10}",
                    r.painted_node,
                    join_nodes(&r.orbit),
                    r.k_label,
                    r.d1,
                    r.d2,
                    r.t.to_string(),
                    r.non_kaehler_x2.to_string()
                )
                .map_err(io_err)?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn join_nodes(nodes: &[usize]) -> String {
    nodes
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub lie_type: String,
    pub family: Family,
    pub rank: usize,
    pub painted_node: usize,
    pub orbit: Vec<usize>,
    pub k_label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureConstant {
    #[serde(with = "rational_str")]
    pub closed_form: Rational,
    #[serde(with = "rational_str")]
    pub oracle: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandEntry {
    pub level: usize,
    pub highest_weight_roots: RootVec,
    pub highest_weight_root_label: String,
    #[serde(with = "rational_vec_str")]
    pub highest_weight_fundamental: Vec<Rational>,
    pub highest_weight_fundamental_label: String,
    pub root_count: usize,
    pub weyl_dim_complex: u64,
    pub dim_real: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EinsteinEntry {
    pub kind: MetricKind,
    pub metric: InvariantMetric,
    #[serde(with = "rational_str")]
    pub scalar_curvature: Rational,
    #[serde(with = "rational_str")]
    pub volume: Rational,
    pub dim: u64,
    pub kappa_approx: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalPointEntry {
    #[serde(flatten)]
    pub report: CriticalPointReport,
    pub hessian_closed_form: AffinePoly,
    pub closed_form_matches: bool,
}

/// Everything `flagein analyze` reports for one space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub space: SpaceDescriptor,
    pub d1: u64,
    pub d2: u64,
    pub t: StructureConstant,
    pub summands: Vec<SummandEntry>,
    pub einstein_metrics: Vec<EinsteinEntry>,
    pub critical_points: Vec<CriticalPointEntry>,
    pub notes: Vec<String>,
}

// Non-Kähler c-coefficient printed in the literature for E6/SU(5)×SU(2)×U(1).
const LITERATURE_E6_SLOPE: (&str, i64, i64) = (
    "53687091200000/22876792454961",
    53687091200000,
    22876792454961,
);

pub fn analyze(ts: &TwoSummandSpace) -> Result<AnalysisReport, Error> {
    let rs = ts.root_system();
    let t_type = ts.lie_type();
    let model = CurvatureModel::for_space(ts);
    let sols = model.einstein_metrics();

    let rk_plus = ts.grading_class(0)?;
    let mut summands = Vec::new();
    for n in 1..=2 {
        let lambda = highest_weight(ts, n)?;
        let weight = to_weight_basis(rs, &lambda)?;
        let dim = weyl_dim(rs, rk_plus, &lambda)?;
        summands.push(SummandEntry {
            level: n,
            highest_weight_root_label: lambda.to_string(),
            highest_weight_roots: lambda,
            highest_weight_fundamental_label: weight.to_string(),
            highest_weight_fundamental: weight.0,
            root_count: ts.grading_class(n as i64)?.len(),
            weyl_dim_complex: dim,
            dim_real: 2 * dim,
        });
    }

    let mut einstein_metrics = Vec::new();
    let mut critical_points = Vec::new();
    for (g, closed) in [
        (
            &sols.kaehler,
            kaehler_determinant_closed_form(ts.d1(), ts.d2()),
        ),
        (
            &sols.non_kaehler,
            non_kaehler_determinant_closed_form(ts.d1(), ts.d2()),
        ),
    ] {
        let s = model.scalar_curvature(g);
        let vol = volume_and_constant(ts.d1(), ts.d2(), g, &s);
        einstein_metrics.push(EinsteinEntry {
            kind: MetricKind::of(g),
            metric: g.clone(),
            scalar_curvature: s,
            volume: vol.volume,
            dim: vol.dim,
            kappa_approx: vol.kappa_approx,
        });
        let report = classify_model(&model, g)?;
        critical_points.push(CriticalPointEntry {
            closed_form_matches: report.hessian_poly == closed,
            report,
            hessian_closed_form: closed,
        });
    }

    let mut notes = vec![
        "multiplier_c is the Lagrange multiplier c = -S/(nV) of grad S = c grad V; \
         kappa_approx is the Ricci constant S/n of the volume-one metric on the same ray"
            .to_owned(),
    ];
    let all_min = critical_points
        .iter()
        .all(|c| c.report.bordered_verdict == crate::hessian::BorderedVerdict::LocalMin);
    if !all_min {
        notes.push(
            "at the derived multiplier (c < 0) the verdicts differ from the conditional \
             statement that both Einstein metrics are local minima, which assumes c > 0"
                .to_owned(),
        );
    }
    if (ts.d1(), ts.d2()) == (40, 10) && t_type.family() == Family::E {
        let (label, n, d) = LITERATURE_E6_SLOPE;
        let computed = &critical_points[1].report.hessian_poly.slope;
        let printed = Rational::new((-n).into(), d.into());
        notes.push(format!(
            "non-Kähler determinant c-coefficient: computed {computed}, literature value -{label} \
             (ratio {})",
            printed / computed
        ));
    }

    Ok(AnalysisReport {
        space: SpaceDescriptor {
            lie_type: t_type.to_string(),
            family: t_type.family(),
            rank: t_type.rank(),
            painted_node: ts.painted(),
            orbit: ts.orbit().to_vec(),
            k_label: ts.k_description().to_owned(),
        },
        d1: ts.d1(),
        d2: ts.d2(),
        t: StructureConstant {
            closed_form: t_closed_form(ts.d1(), ts.d2()),
            oracle: t_oracle(ts),
        },
        summands,
        einstein_metrics,
        critical_points,
        notes,
    })
}

pub fn render_report_json(report: &AnalysisReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn render_report_text(r: &AnalysisReport) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let sp = &r.space;
    let _ = writeln!(
        s,
        "{} painted at node {} (orbit {}): G/K with K = {}",
        sp.lie_type,
        sp.painted_node,
        join_nodes(&sp.orbit),
        sp.k_label
    );
    let _ = writeln!(s, "d1 = {}, d2 = {}", r.d1, r.d2);
    let _ = writeln!(
        s,
        "t = {} (closed form), {} (structure constants)",
        r.t.closed_form, r.t.oracle
    );
    for m in &r.summands {
        let _ = writeln!(
            s,
            "m{}: highest weight {} = {}; Weyl dim_C = {}, roots = {}, dim_R = {}",
            m.level,
            m.highest_weight_root_label,
            m.highest_weight_fundamental_label,
            m.weyl_dim_complex,
            m.root_count,
            m.dim_real
        );
    }
    for (e, c) in r.einstein_metrics.iter().zip(&r.critical_points) {
        let cp = &c.report;
        let kind = match e.kind {
            MetricKind::Kaehler => "Kähler",
            MetricKind::NonKaehler => "non-Kähler",
        };
        let _ = writeln!(
            s,
            "{kind} Einstein metric (x1, x2) = ({}, {})",
            e.metric.x1(),
            e.metric.x2()
        );
        let _ = writeln!(
            s,
            "  S = {}, V = {}, n = {}, kappa_approx = {}",
            e.scalar_curvature, e.volume, e.dim, e.kappa_approx
        );
        let _ = writeln!(s, "  multiplier c = {}", cp.multiplier_c);
        let (poly, expanded) = (cp.hessian_poly.to_string(), cp.hessian_poly.expanded());
        let shown = if poly == expanded {
            poly
        } else {
            format!("{poly} = {expanded}")
        };
        let _ = writeln!(
            s,
            "  |H| = {shown} (closed form {}, {})",
            c.hessian_closed_form.expanded(),
            if c.closed_form_matches {
                "match"
            } else {
                "MISMATCH"
            }
        );
        let _ = writeln!(
            s,
            "  |H| at c = {} -> {:?}",
            cp.hessian_value, cp.bordered_verdict
        );
        let _ = writeln!(
            s,
            "  D2 along volume level set = {} -> {:?}",
            cp.oracle_d2, cp.oracle_verdict
        );
    }
    for n in &r.notes {
        let _ = writeln!(s, "note: {n}");
    }
    s
}

pub fn cmd_analyze(
    t: LieType,
    node: usize,
    format: ReportFormat,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let rs = Arc::new(RootSystem::new(t));
    let ts = PaintedDiagram::new(rs, node)?.validate()?;
    let report = analyze(&ts)?;
    let text = match format {
        ReportFormat::Json => render_report_json(&report) + "\n",
        ReportFormat::Text => render_report_text(&report),
    };
    out.write_all(text.as_bytes()).map_err(io_err)?;
    Ok(EXIT_OK)
}

/// Outcome of one named cross-check on one object.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: &'static str,
    pub subject: String,
    pub failure: Option<String>,
}

fn outcome(check: &'static str, subject: &str, failure: Option<String>) -> CheckOutcome {
    CheckOutcome {
        check,
        subject: subject.to_owned(),
        failure,
    }
}

fn expect(ok: bool, msg: impl FnOnce() -> String) -> Option<String> {
    if ok {
        None
    } else {
        Some(msg())
    }
}

/// Lie types swept by `verify`: classical families up to `max_rank` and the
/// exceptional types of rank at most `max_rank`.
pub fn verify_types(max_rank: usize) -> Vec<LieType> {
    let mut types = Vec::new();
    for l in 1..=max_rank {
        for f in [Family::A, Family::B, Family::C, Family::D] {
            if let Ok(t) = LieType::new(f, l) {
                types.push(t);
            }
        }
    }
    for (f, l) in [
        (Family::G, 2),
        (Family::F, 4),
        (Family::E, 6),
        (Family::E, 7),
        (Family::E, 8),
    ] {
        if l <= max_rank {
            types.push(LieType::new(f, l).expect("valid"));
        }
    }
    types
}

/// Root-system level checks: root count and Killing self-consistency.
pub fn check_root_system(rs: &RootSystem) -> Vec<CheckOutcome> {
    let name = rs.lie_type().to_string();
    let count = rs.positive_roots().len();
    let want = expected_positive_root_count(rs.lie_type());
    let mut out = vec![outcome(
        "root count",
        &name,
        expect(count == want, || {
            format!("{count} positive roots, expected {want}")
        }),
    )];
    let k = rs.killing_scale();
    let bad: Vec<String> = (1..=rs.rank())
        .map(|i| rs.simple_root(i))
        .filter(|a| rs.form(a, a) / k != rs.killing_sum(a) / (k * k))
        .map(|a| a.to_string())
        .collect();
    out.push(outcome(
        "Killing self-consistency",
        &name,
        expect(bad.is_empty(), || format!("fails for {}", bad.join(", "))),
    ));
    out
}

/// Every per-space cross-check.
pub fn check_space(ts: &TwoSummandSpace) -> Vec<CheckOutcome> {
    let subject = format!("{} node {}", ts.lie_type(), ts.painted());
    let rs = ts.root_system();
    let (d1, d2) = (ts.d1(), ts.d2());
    let mut out = Vec::new();

    let sizes: Vec<usize> = (0..=2)
        .map(|n| ts.grading_class(n).map_or(0, <[_]>::len))
        .collect();
    out.push(outcome(
        "partition",
        &subject,
        expect(
            sizes.iter().sum::<usize>() == rs.positive_roots().len() && d1 > 0 && d2 > 0,
            || format!("level sizes {sizes:?}"),
        ),
    ));

    let rk = ts.grading_class(0).expect("level 0");
    let weyl: Vec<Result<u64, Error>> = (1..=2)
        .map(|n| highest_weight(ts, n).and_then(|l| weyl_dim(rs, rk, &l)))
        .collect();
    let reference = reference_dims(ts.lie_type(), ts.painted());
    let triple_ok = matches!((&weyl[0], &weyl[1]), (Ok(w1), Ok(w2)) if 2 * w1 == d1 && 2 * w2 == d2)
        && reference == Some((d1, d2));
    out.push(outcome(
        "dimension triple",
        &subject,
        expect(triple_ok, || {
            format!("roots ({d1}, {d2}), Weyl {weyl:?}, reference {reference:?}")
        }),
    ));

    let t = t_closed_form(d1, d2);
    let oracle = t_oracle(ts);
    out.push(outcome(
        "t oracle",
        &subject,
        expect(oracle == t, || {
            format!("oracle {oracle} vs closed form {t}")
        }),
    ));
    out.push(outcome("bracket grading", &subject, {
        let v = ts.bracket_violations();
        expect(v.is_empty(), || v.join("; "))
    }));

    let model = CurvatureModel::new(d1, d2, t);
    let sols = model.einstein_metrics();
    for (g, closed, label) in [
        (
            &sols.kaehler,
            kaehler_determinant_closed_form(d1, d2),
            "Kähler",
        ),
        (
            &sols.non_kaehler,
            non_kaehler_determinant_closed_form(d1, d2),
            "non-Kähler",
        ),
    ] {
        let who = format!("{subject} {label}");
        let poly = model.einstein_polynomial(g.x1(), g.x2());
        out.push(outcome(
            "Einstein polynomial",
            &who,
            expect(poly.is_zero(), || format!("residual {poly}")),
        ));
        let s = model.scalar_curvature(g);
        out.push(outcome(
            "positive scalar curvature",
            &who,
            expect(s.is_positive(), || format!("S = {s}")),
        ));
        let first = constrained_first_derivative(&model, g);
        out.push(outcome(
            "criticality",
            &who,
            expect(first.is_zero(), || format!("S1 + S2·x2' = {first}")),
        ));
        let report = match classify_model(&model, g) {
            Ok(r) => r,
            Err(e) => {
                out.push(outcome("classification", &who, Some(e.to_string())));
                continue;
            }
        };
        let (r1, r2) = model.lagrange_residuals(g, &report.multiplier_c);
        out.push(outcome(
            "Lagrange system",
            &who,
            expect(r1.is_zero() && r2.is_zero(), || {
                format!("residuals {r1}, {r2}")
            }),
        ));
        out.push(outcome(
            "determinant closed form",
            &who,
            expect(report.hessian_poly == closed, || {
                format!(
                    "determinant {} vs closed form {closed}",
                    report.hessian_poly
                )
            }),
        ));
        let (h, d) = (&report.hessian_value, &report.oracle_d2);
        let dual = h.is_zero() || d.is_zero() || h.signum() == -d.signum();
        out.push(outcome(
            "sign duality",
            &who,
            expect(dual, || format!("|H| = {h}, D2 = {d}")),
        ));
    }
    out
}

#[derive(Debug, Clone, Default)]
pub struct VerifySummary {
    pub types: usize,
    pub spaces: Vec<String>,
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifySummary {
    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| o.failure.is_some())
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

pub fn run_verification(max_rank: usize) -> VerifySummary {
    let types = verify_types(max_rank);
    let systems: Vec<Arc<RootSystem>> = types
        .par_iter()
        .map(|&t| Arc::new(RootSystem::new(t)))
        .collect();
    let spaces: Vec<TwoSummandSpace> = systems
        .iter()
        .flat_map(|rs| enumerate_spaces(rs, false))
        .collect();
    let mut outcomes: Vec<CheckOutcome> = systems
        .iter()
        .flat_map(|rs| check_root_system(rs))
        .collect();
    let per_space: Vec<Vec<CheckOutcome>> = spaces.par_iter().map(check_space).collect();
    outcomes.extend(per_space.into_iter().flatten());
    VerifySummary {
        types: types.len(),
        spaces: spaces
            .iter()
            .map(|s| format!("{} node {}", s.lie_type(), s.painted()))
            .collect(),
        outcomes,
    }
}

pub fn cmd_verify(max_rank: usize, out: &mut dyn Write) -> Result<i32, CliError> {
    if max_rank < 2 {
        return Err(CliError {
            code: EXIT_USAGE,
            message: format!("max_rank must be at least 2, got {max_rank}"),
        });
    }
    let summary = run_verification(max_rank);
    writeln!(
        out,
        "verified {} Lie types, {} two-summand spaces",
        summary.types,
        summary.spaces.len()
    )
    .map_err(io_err)?;
    let mut names: Vec<&'static str> = Vec::new();
    for o in &summary.outcomes {
        if !names.contains(&o.check) {
            names.push(o.check);
        }
    }
    for name in names {
        let all: Vec<&CheckOutcome> = summary
            .outcomes
            .iter()
            .filter(|o| o.check == name)
            .collect();
        let failed = all.iter().filter(|o| o.failure.is_some()).count();
        let status = if failed == 0 { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "{status} {name}: {}/{} passed",
            all.len() - failed,
            all.len()
        )
        .map_err(io_err)?;
    }
    for f in summary.failures() {
        writeln!(
            out,
            "  witness [{}] {}: {}",
            f.check,
            f.subject,
            f.failure.as_deref().unwrap_or("")
        )
        .map_err(io_err)?;
    }
    if summary.passed() {
        writeln!(out, "all checks passed").map_err(io_err)?;
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_VERIFY_FAILED)
    }
}
