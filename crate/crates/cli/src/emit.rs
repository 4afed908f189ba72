//! Rendering of results as aligned tables, JSON or CSV.
//!
//! Tables round to 12 significant digits. JSON and CSV print the shortest
//! text that parses back to the same double.

use std::collections::BTreeMap;

use serde::Serialize;

use diamond_core::properties::CheckReport;
use diamond_core::quadrature::{IntegralKind, IntegralResult, Side};
use diamond_core::timescale::PointInfo;

use crate::{Comparison, DerivativeReport, OutputFormat};

const TABLE_DIGITS: usize = 12;

/// Rendered output of a command.
#[derive(Debug, Clone, Default)]
pub struct Emitted {
    pub text: String,
    /// Diagnostics for standard error that do not change the exit status.
    pub notes: String,
    pub all_passed: bool,
}

impl Emitted {
    fn ok(text: String) -> Self {
        Emitted {
            text,
            notes: String::new(),
            all_passed: true,
        }
    }
}

/// `x` rounded to `digits` significant digits, printed without trailing zeros.
pub fn format_sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .expect("formatted float parses");
    if rounded == 0.0 {
        return "0".to_string();
    }
    let abs = rounded.abs();
    if (1e-5..1e15).contains(&abs) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

fn num(x: f64) -> String {
    format_sig(x, TABLE_DIGITS)
}

/// Full-precision text for CSV cells.
fn exact(x: f64) -> String {
    format!("{x}")
}

pub(crate) fn kind_name(kind: IntegralKind) -> &'static str {
    match kind {
        IntegralKind::Delta => "delta",
        IntegralKind::Nabla => "nabla",
        IntegralKind::DiamondAlpha(_) => "diamond-alpha",
        IntegralKind::Diamond => "diamond",
    }
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Delta => "delta",
        Side::Nabla => "nabla",
    }
}

/// Left-aligned columns separated by two spaces.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(&mut headers.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}

fn key_values(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    pairs
        .iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn csv(headers: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
}

#[derive(Serialize)]
struct IntegralDoc<'a> {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(flatten)]
    result: &'a IntegralResult,
}

const TERM_HEADERS: [&str; 4] = ["t", "side", "weight", "contribution"];

pub(crate) fn integral(r: &IntegralResult, kind: IntegralKind, format: OutputFormat) -> Emitted {
    let alpha = match kind {
        IntegralKind::DiamondAlpha(a) => Some(a),
        _ => None,
    };
    let text = match format {
        OutputFormat::Json => json(&IntegralDoc {
            kind: kind_name(kind),
            alpha,
            result: r,
        }),
        OutputFormat::Csv => csv(
            &TERM_HEADERS,
            r.scattered_terms.iter().map(|t| {
                vec![
                    exact(t.t),
                    side_name(t.side).into(),
                    exact(t.weight),
                    exact(t.contribution),
                ]
            }),
        ),
        OutputFormat::Table => {
            let mut pairs = vec![("kind", kind_name(kind).to_string())];
            if let Some(a) = alpha {
                pairs.push(("alpha", num(a)));
            }
            pairs.extend([
                ("value", num(r.value)),
                ("err_estimate", num(r.err_estimate)),
                ("continuous_part", num(r.continuous_part)),
                ("discrete_part", num(r.discrete_part)),
            ]);
            let mut s = key_values(&pairs);
            if !r.scattered_terms.is_empty() {
                s.push('\n');
                let rows: Vec<Vec<String>> = r
                    .scattered_terms
                    .iter()
                    .map(|t| {
                        vec![
                            num(t.t),
                            side_name(t.side).into(),
                            num(t.weight),
                            num(t.contribution),
                        ]
                    })
                    .collect();
                s.push_str(&table(&TERM_HEADERS, &rows));
            }
            s
        }
    };
    Emitted::ok(text)
}

pub(crate) fn derivative(d: &DerivativeReport, format: OutputFormat) -> Emitted {
    let text = match format {
        OutputFormat::Json => json(d),
        OutputFormat::Csv => csv(
            &["t", "kind", "alpha", "value"],
            [vec![
                exact(d.t),
                d.kind.clone(),
                d.alpha.map(exact).unwrap_or_default(),
                exact(d.value),
            ]],
        ),
        OutputFormat::Table => {
            let mut pairs = vec![("kind", d.kind.clone()), ("t", num(d.t))];
            if let Some(a) = d.alpha {
                pairs.push(("alpha", num(a)));
            }
            pairs.push(("value", num(d.value)));
            key_values(&pairs)
        }
    };
    Emitted::ok(text)
}

pub const GAMMA_HEADERS: [&str; 7] = ["t", "class", "sigma", "rho", "mu", "nu", "gamma"];

pub(crate) fn gamma_table(rows: &[PointInfo], format: OutputFormat) -> Emitted {
    let cells = |p: &PointInfo, f: fn(f64) -> String| {
        vec![
            f(p.t),
            p.class.to_string(),
            f(p.sigma),
            f(p.rho),
            f(p.mu),
            f(p.nu),
            f(p.gamma),
        ]
    };
    let text = match format {
        OutputFormat::Json => json(rows),
        OutputFormat::Csv => csv(&GAMMA_HEADERS, rows.iter().map(|p| cells(p, exact))),
        OutputFormat::Table => {
            let body: Vec<Vec<String>> = rows.iter().map(|p| cells(p, num)).collect();
            table(&GAMMA_HEADERS, &body)
        }
    };
    Emitted::ok(text)
}

const CHECK_HEADERS: [&str; 7] = [
    "name",
    "lhs",
    "rhs",
    "slack",
    "tolerance",
    "passed",
    "error",
];

/// Check reports; `summarize` collapses randomized trials to one table row
/// per check name (JSON and CSV always list every report).
pub(crate) fn checks(reports: &[CheckReport], format: OutputFormat, summarize: bool) -> Emitted {
    let all_passed = reports.iter().all(|r| r.passed);
    let row = |r: &CheckReport, f: fn(f64) -> String| {
        vec![
            r.name.clone(),
            f(r.lhs),
            f(r.rhs),
            f(r.slack),
            f(r.tolerance),
            r.passed.to_string(),
            r.error.clone().unwrap_or_default(),
        ]
    };
    let text = match format {
        OutputFormat::Json => json(reports),
        OutputFormat::Csv => csv(&CHECK_HEADERS, reports.iter().map(|r| row(r, exact))),
        OutputFormat::Table if summarize => summary_table(reports),
        OutputFormat::Table => {
            let body: Vec<Vec<String>> = reports.iter().map(|r| row(r, num)).collect();
            let headers = if reports.iter().any(|r| r.error.is_some()) {
                &CHECK_HEADERS[..]
            } else {
                &CHECK_HEADERS[..6]
            };
            table(headers, &body)
        }
    };
    Emitted {
        text,
        notes: String::new(),
        all_passed,
    }
}

fn summary_table(reports: &[CheckReport]) -> String {
    // name -> (runs, passed, smallest slack + tolerance)
    let mut by_name: BTreeMap<&str, (usize, usize, f64)> = BTreeMap::new();
    let mut order: Vec<&str> = Vec::new();
    for r in reports {
        let entry = by_name.entry(&r.name).or_insert_with(|| {
            order.push(&r.name);
            (0, 0, f64::INFINITY)
        });
        entry.0 += 1;
        entry.1 += r.passed as usize;
        let margin = r.slack + r.tolerance;
        entry.2 = if margin.is_nan() {
            f64::NAN
        } else {
            entry.2.min(margin)
        };
    }
    let rows: Vec<Vec<String>> = order
        .iter()
        .map(|name| {
            let (runs, passed, margin) = by_name[name];
            vec![
                name.to_string(),
                runs.to_string(),
                passed.to_string(),
                (runs - passed).to_string(),
                num(margin),
            ]
        })
        .collect();
    let mut s = table(&["name", "runs", "passed", "failed", "min_margin"], &rows);
    let failures: Vec<&CheckReport> = reports.iter().filter(|r| !r.passed).collect();
    if !failures.is_empty() {
        s.push_str("\nfailures\n");
        for r in failures {
            let trial = r.witnesses.get("trial").copied().unwrap_or(f64::NAN);
            let why = r.error.clone().unwrap_or_else(|| {
                format!(
                    "lhs {} > rhs {} + {}",
                    num(r.lhs),
                    num(r.rhs),
                    num(r.tolerance)
                )
            });
            s.push_str(&format!("trial {trial}  {}  {why}\n", r.name));
        }
    }
    s
}

pub(crate) fn comparison(c: &Comparison, format: OutputFormat) -> Emitted {
    let text = match format {
        OutputFormat::Json => json(c),
        OutputFormat::Csv => csv(
            &["kind", "alpha", "value", "err_estimate"],
            [
                vec![
                    "diamond".into(),
                    String::new(),
                    exact(c.diamond.value),
                    exact(c.diamond.err_estimate),
                ],
                vec![
                    "diamond-alpha".into(),
                    exact(c.alpha),
                    exact(c.diamond_alpha.value),
                    exact(c.diamond_alpha.err_estimate),
                ],
                vec![
                    "difference".into(),
                    String::new(),
                    exact(c.difference),
                    String::new(),
                ],
            ],
        ),
        OutputFormat::Table => table(
            &["kind", "alpha", "value", "err_estimate"],
            &[
                vec![
                    "diamond".into(),
                    String::new(),
                    num(c.diamond.value),
                    num(c.diamond.err_estimate),
                ],
                vec![
                    "diamond-alpha".into(),
                    num(c.alpha),
                    num(c.diamond_alpha.value),
                    num(c.diamond_alpha.err_estimate),
                ],
                vec![
                    "difference".into(),
                    String::new(),
                    num(c.difference),
                    String::new(),
                ],
            ],
        ),
    };
    Emitted::ok(text)
}
