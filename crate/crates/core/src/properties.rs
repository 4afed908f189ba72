//! Executable checks of the mean value theorem, the Hölder, Cauchy-Schwarz
//! and Minkowski inequalities, and the nine basic properties of the diamond
//! integral.
//!
//! Every check is phrased as `lhs <= rhs + tolerance`. Tolerances come from
//! the quadrature error estimates of the integrals involved, pushed through
//! the outer powers and products, plus a small relative allowance for
//! rounding, and never drop below [`TOL_FLOOR`].

use std::cell::RefCell;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::RealFn;
use crate::quadrature::{diamond_integral, IntegralResult, QuadConfig};
use crate::timescale::{GridPart, TimeScale};

pub const TOL_FLOOR: f64 = 1e-9;

/// Relative allowance for floating-point rounding in sums of many terms.
const ROUNDING: f64 = 1e-12;

/// Uniform subintervals per continuum piece when sampling for extrema.
const SAMPLES_PER_PIECE: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    #[serde(deserialize_with = "nan_if_null")]
    pub lhs: f64,
    #[serde(deserialize_with = "nan_if_null")]
    pub rhs: f64,
    /// `rhs - lhs`; negative when the inequality is violated before tolerance.
    #[serde(deserialize_with = "nan_if_null")]
    pub slack: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub witnesses: BTreeMap<String, f64>,
    /// Set when the check could not be evaluated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// JSON has no NaN; failed reports serialize their sides as `null`.
fn nan_if_null<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

impl CheckReport {
    pub fn new(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let tolerance = tolerance.max(TOL_FLOOR);
        CheckReport {
            name: name.to_string(),
            lhs,
            rhs,
            slack: rhs - lhs,
            tolerance,
            passed: lhs <= rhs + tolerance,
            witnesses: BTreeMap::new(),
            error: None,
        }
    }

    /// A failed report for a check that raised an error.
    pub fn failed(name: &str, err: &Error) -> Self {
        CheckReport {
            name: name.to_string(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            slack: f64::NAN,
            tolerance: TOL_FLOOR,
            passed: false,
            witnesses: BTreeMap::new(),
            error: Some(err.to_string()),
        }
    }

    pub fn witness(mut self, name: &str, value: f64) -> Self {
        self.witnesses.insert(name.to_string(), value);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderExponents {
    pub p: f64,
    pub q: f64,
}

impl HolderExponents {
    pub fn new(p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 1.0) {
            return Err(Error::ExponentOutOfRange(p));
        }
        Ok(HolderExponents {
            p,
            q: p / (p - 1.0),
        })
    }
}

/// Points of `[a, b] ∩ T` used to estimate extrema: every scattered point,
/// both range ends, and 65 evenly spaced points on each continuum piece.
pub fn sample_points(ts: &TimeScale, a: f64, b: f64) -> Result<Vec<f64>> {
    let (a, b) = ordered(a, b);
    let mut out = vec![a, b];
    for part in ts.grid(a, b)? {
        match part {
            GridPart::Point(p) => out.push(p.t),
            GridPart::Interval { lo, hi } => {
                let n = SAMPLES_PER_PIECE;
                out.extend((0..=n).map(|k| {
                    if k == n {
                        hi
                    } else {
                        lo + (hi - lo) * k as f64 / n as f64
                    }
                }));
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    Ok(out)
}

fn ordered(a: f64, b: f64) -> (f64, f64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn check_endpoints(ts: &TimeScale, a: f64, b: f64) -> Result<()> {
    for t in [a, b] {
        if !ts.contains(t) {
            return Err(Error::PointNotInScale { t });
        }
    }
    if ts.is_single_point() {
        return Err(Error::DegenerateRange);
    }
    Ok(())
}

fn sup_abs<F: RealFn + ?Sized>(f: &F, samples: &[f64]) -> Result<f64> {
    let mut s: f64 = 0.0;
    for &t in samples {
        s = s.max(f.eval(t)?.abs());
    }
    Ok(s)
}

/// `(∫|h|^p ◊)^{1/p}` with bounds implied by the quadrature error.
#[derive(Debug, Clone, Copy)]
struct Norm {
    value: f64,
    lower: f64,
    upper: f64,
}

/// The integrand is divided by its sampled sup before raising to `p`, which
/// keeps large exponents finite.
fn lp_norm<F: RealFn + ?Sized>(
    ts: &TimeScale,
    h: &F,
    a: f64,
    b: f64,
    p: f64,
    samples: &[f64],
    cfg: &QuadConfig,
) -> Result<Norm> {
    let sup = sup_abs(h, samples)?;
    let s = if sup > 0.0 { sup } else { 1.0 };
    let powered = |t: f64| -> Result<f64> { Ok((h.eval(t)?.abs() / s).powf(p)) };
    let r = diamond_integral(ts, &powered, a, b, cfg)?;
    let root = |x: f64| s * x.max(0.0).powf(1.0 / p);
    Ok(Norm {
        value: root(r.value),
        lower: root(r.value - r.err_estimate),
        upper: root(r.value + r.err_estimate),
    })
}

/// Finds a sample where `g < 0` and one where `g > 0`, if both exist.
fn sign_change<F: RealFn + ?Sized>(g: &F, samples: &[f64]) -> Result<Option<(f64, f64)>> {
    let (mut neg, mut pos) = (None, None);
    for &t in samples {
        let v = g.eval(t)?;
        if v < 0.0 && neg.is_none() {
            neg = Some(t);
        }
        if v > 0.0 && pos.is_none() {
            pos = Some(t);
        }
    }
    Ok(neg.zip(pos))
}

/// Mean value theorem: for one-signed `g` there is `K` in `[m, M]`, the range
/// of `f` over `[a, b] ∩ T`, with `∫fg◊ = K ∫g◊`.
///
/// Reports `lhs = max(m - K, K - M)` against `rhs = 0`. When `∫g◊` vanishes
/// any `K` works; the report then checks `|∫fg◊| <= tolerance` instead and
/// takes `K = (m + M) / 2`.
pub fn mean_value_k<F, G>(
    ts: &TimeScale,
    f: &F,
    g: &G,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<CheckReport>
where
    F: RealFn + ?Sized,
    G: RealFn + ?Sized,
{
    check_endpoints(ts, a, b)?;
    if a == b {
        return Err(Error::DegenerateRange);
    }
    let (a, b) = ordered(a, b);
    let samples = sample_points(ts, a, b)?;
    if let Some((t_neg, t_pos)) = sign_change(g, &samples)? {
        return Err(Error::SignChange { t_neg, t_pos });
    }

    let f_values = RefCell::new(Vec::new());
    let fg = |t: f64| -> Result<f64> {
        let fv = f.eval(t)?;
        f_values.borrow_mut().push(fv);
        Ok(fv * g.eval(t)?)
    };
    let int_fg = diamond_integral(ts, &fg, a, b, cfg)?;
    let int_g = diamond_integral(ts, g, a, b, cfg)?;

    let mut values = f_values.into_inner();
    for &t in &samples {
        values.push(f.eval(t)?);
    }
    let m = values.iter().copied().fold(f64::INFINITY, f64::min);
    let big_m = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let f_bound = m.abs().max(big_m.abs());

    let g_tol = (int_g.err_estimate + ROUNDING * int_g.value.abs()).max(TOL_FLOOR);
    let report = if int_g.value.abs() <= g_tol {
        let tol = int_fg.err_estimate
            + f_bound * (int_g.value.abs() + g_tol)
            + ROUNDING * int_fg.value.abs();
        CheckReport::new("mean-value", int_fg.value.abs(), 0.0, tol).witness("K", 0.5 * (m + big_m))
    } else {
        let k = int_fg.value / int_g.value;
        let tol = (int_fg.err_estimate + k.abs() * int_g.err_estimate) / int_g.value.abs()
            + ROUNDING * k.abs().max(f_bound);
        CheckReport::new("mean-value", (m - k).max(k - big_m), 0.0, tol).witness("K", k)
    };
    Ok(report
        .witness("m", m)
        .witness("M", big_m)
        .witness("int_g", int_g.value)
        .witness("int_fg", int_fg.value)
        .witness("err_g", int_g.err_estimate)
        .witness("err_fg", int_fg.err_estimate))
}

/// Hölder: `∫|fg|◊ <= (∫|f|^p◊)^{1/p} (∫|g|^q◊)^{1/q}`.
#[allow(clippy::too_many_arguments)]
pub fn holder_check<F, G>(
    ts: &TimeScale,
    f: &F,
    g: &G,
    a: f64,
    b: f64,
    p: f64,
    cfg: &QuadConfig,
) -> Result<CheckReport>
where
    F: RealFn + ?Sized,
    G: RealFn + ?Sized,
{
    let HolderExponents { p, q } = HolderExponents::new(p)?;
    let (lhs, nf, ng) = holder_parts(ts, f, g, a, b, p, q, cfg)?;
    let rhs = nf.value * ng.value;
    let tol = lhs.err_estimate + (rhs - nf.lower * ng.lower) + ROUNDING * (lhs.value + rhs);
    Ok(CheckReport::new("holder", lhs.value, rhs, tol)
        .witness("p", p)
        .witness("q", q)
        .witness("norm_f_p", nf.value)
        .witness("norm_g_q", ng.value))
}

#[allow(clippy::too_many_arguments)]
fn holder_parts<F, G>(
    ts: &TimeScale,
    f: &F,
    g: &G,
    a: f64,
    b: f64,
    p: f64,
    q: f64,
    cfg: &QuadConfig,
) -> Result<(IntegralResult, Norm, Norm)>
where
    F: RealFn + ?Sized,
    G: RealFn + ?Sized,
{
    check_endpoints(ts, a, b)?;
    let (a, b) = ordered(a, b);
    let samples = sample_points(ts, a, b)?;
    let fg = |t: f64| -> Result<f64> { Ok((f.eval(t)? * g.eval(t)?).abs()) };
    let lhs = diamond_integral(ts, &fg, a, b, cfg)?;
    let nf = lp_norm(ts, f, a, b, p, &samples, cfg)?;
    let ng = lp_norm(ts, g, a, b, q, &samples, cfg)?;
    Ok((lhs, nf, ng))
}

/// Cauchy-Schwarz: `∫|fg|◊ <= sqrt(∫f²◊ · ∫g²◊)`.
pub fn cauchy_schwarz_check<F, G>(
    ts: &TimeScale,
    f: &F,
    g: &G,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<CheckReport>
where
    F: RealFn + ?Sized,
    G: RealFn + ?Sized,
{
    check_endpoints(ts, a, b)?;
    let (a, b) = ordered(a, b);
    let fg = |t: f64| -> Result<f64> { Ok((f.eval(t)? * g.eval(t)?).abs()) };
    let f2 = |t: f64| -> Result<f64> { Ok(f.eval(t)?.powi(2)) };
    let g2 = |t: f64| -> Result<f64> { Ok(g.eval(t)?.powi(2)) };
    let lhs = diamond_integral(ts, &fg, a, b, cfg)?;
    let int_f2 = diamond_integral(ts, &f2, a, b, cfg)?;
    let int_g2 = diamond_integral(ts, &g2, a, b, cfg)?;
    let rhs = (int_f2.value * int_g2.value).sqrt();
    let lower = ((int_f2.value - int_f2.err_estimate).max(0.0)
        * (int_g2.value - int_g2.err_estimate).max(0.0))
    .sqrt();
    let tol = lhs.err_estimate + (rhs - lower) + ROUNDING * (lhs.value + rhs);
    Ok(CheckReport::new("cauchy-schwarz", lhs.value, rhs, tol)
        .witness("int_f2", int_f2.value)
        .witness("int_g2", int_g2.value))
}

/// Minkowski: `‖f + g‖_p <= ‖f‖_p + ‖g‖_p` for the diamond `L^p` norm.
#[allow(clippy::too_many_arguments)]
pub fn minkowski_check<F, G>(
    ts: &TimeScale,
    f: &F,
    g: &G,
    a: f64,
    b: f64,
    p: f64,
    cfg: &QuadConfig,
) -> Result<CheckReport>
where
    F: RealFn + ?Sized,
    G: RealFn + ?Sized,
{
    let HolderExponents { p, .. } = HolderExponents::new(p)?;
    check_endpoints(ts, a, b)?;
    let (a, b) = ordered(a, b);
    let samples = sample_points(ts, a, b)?;
    let sum = |t: f64| -> Result<f64> { Ok(f.eval(t)? + g.eval(t)?) };
    let ns = lp_norm(ts, &sum, a, b, p, &samples, cfg)?;
    let nf = lp_norm(ts, f, a, b, p, &samples, cfg)?;
    let ng = lp_norm(ts, g, a, b, p, &samples, cfg)?;
    let rhs = nf.value + ng.value;
    let tol = (ns.upper - ns.value) + (rhs - nf.lower - ng.lower) + ROUNDING * (ns.value + rhs);
    Ok(CheckReport::new("minkowski", ns.value, rhs, tol)
        .witness("p", p)
        .witness("norm_f_p", nf.value)
        .witness("norm_g_p", ng.value))
}

/// Names of the nine suite items, in order.
pub const SUITE_ITEMS: [&str; 9] = [
    "empty-range",
    "split-additivity",
    "antisymmetry",
    "sum-linearity",
    "scalar-linearity",
    "product-integrable",
    "power-integrable",
    "monotonicity",
    "triangle",
];

/// Exponents used for the `|f|^p` integrability item.
const POWER_ITEM_EXPONENTS: [f64; 2] = [1.5, 3.0];

/// The nine basic properties of the diamond integral, one report each.
///
/// Equalities are reported as `|difference| <= 0`. The tolerance of every
/// item is the sum of the error estimates involved plus
/// `100 * rel_tol * (1 + |lambda|) * (∫|f|◊ + ∫|g|◊)`.
#[allow(clippy::too_many_arguments)]
pub fn property_suite<F, G>(
    ts: &TimeScale,
    f: &F,
    g: &G,
    a: f64,
    b: f64,
    c: f64,
    lambda: f64,
    cfg: &QuadConfig,
) -> Vec<CheckReport>
where
    F: RealFn + ?Sized,
    G: RealFn + ?Sized,
{
    let int =
        |h: &dyn Fn(f64) -> Result<f64>, lo: f64, hi: f64| diamond_integral(ts, &h, lo, hi, cfg);
    let fe = |t: f64| f.eval(t);
    let ge = |t: f64| g.eval(t);

    let slack_scale = || -> Result<f64> {
        let fa = int(&|t| Ok(f.eval(t)?.abs()), a, b)?;
        let ga = int(&|t| Ok(g.eval(t)?.abs()), a, b)?;
        Ok(100.0 * cfg.rel_tol * (1.0 + lambda.abs()) * (fa.value + ga.value))
    };
    // a failure here resurfaces in the items that integrate the same function
    let extra = slack_scale().unwrap_or(0.0);

    let equality = |name: &str, x: &IntegralResult, y: &IntegralResult, errs: f64| {
        let diff = (x.value - y.value).abs();
        let tol = errs + extra + ROUNDING * (x.value.abs() + y.value.abs());
        CheckReport::new(name, diff, 0.0, tol)
    };

    let items: [Box<dyn Fn() -> Result<CheckReport> + '_>; 9] = [
        Box::new(|| {
            let r = int(&fe, a, a)?;
            Ok(CheckReport::new(SUITE_ITEMS[0], r.value.abs(), 0.0, 0.0).witness("a", a))
        }),
        Box::new(|| {
            if !(a <= c && c <= b) {
                return Err(Error::InvalidConfig(format!(
                    "split point c = {c} must satisfy a <= c <= b"
                )));
            }
            let whole = int(&fe, a, b)?;
            let left = int(&fe, a, c)?;
            let right = int(&fe, c, b)?;
            let mut joined = left.clone();
            joined.value = left.value + right.value;
            let errs = whole.err_estimate + left.err_estimate + right.err_estimate;
            Ok(equality(SUITE_ITEMS[1], &whole, &joined, errs)
                .witness("c", c)
                .witness("int_a_b", whole.value)
                .witness("int_a_c", left.value)
                .witness("int_c_b", right.value))
        }),
        Box::new(|| {
            let fwd = int(&fe, a, b)?;
            let back = int(&fe, b, a)?;
            let mut neg = back.clone();
            neg.value = -back.value;
            Ok(equality(SUITE_ITEMS[2], &fwd, &neg, 0.0)
                .witness("int_a_b", fwd.value)
                .witness("int_b_a", back.value))
        }),
        Box::new(|| {
            let sum = int(&|t| Ok(f.eval(t)? + g.eval(t)?), a, b)?;
            let fi = int(&fe, a, b)?;
            let gi = int(&ge, a, b)?;
            let mut parts = fi.clone();
            parts.value = fi.value + gi.value;
            let errs = sum.err_estimate + fi.err_estimate + gi.err_estimate;
            Ok(equality(SUITE_ITEMS[3], &sum, &parts, errs)
                .witness("int_f_plus_g", sum.value)
                .witness("int_f", fi.value)
                .witness("int_g", gi.value))
        }),
        Box::new(|| {
            let scaled = int(&|t| Ok(lambda * f.eval(t)?), a, b)?;
            let fi = int(&fe, a, b)?;
            let mut prod = fi.clone();
            prod.value = lambda * fi.value;
            let errs = scaled.err_estimate + lambda.abs() * fi.err_estimate;
            Ok(equality(SUITE_ITEMS[4], &scaled, &prod, errs)
                .witness("lambda", lambda)
                .witness("int_lambda_f", scaled.value)
                .witness("int_f", fi.value))
        }),
        Box::new(|| {
            let r = int(&|t| Ok(f.eval(t)? * g.eval(t)?), a, b)?;
            Ok(CheckReport::new(SUITE_ITEMS[5], 0.0, 0.0, 0.0).witness("int_fg", r.value))
        }),
        Box::new(|| {
            let mut report = CheckReport::new(SUITE_ITEMS[6], 0.0, 0.0, 0.0);
            for p in POWER_ITEM_EXPONENTS {
                let r = int(&|t| Ok(f.eval(t)?.abs().powf(p)), a, b)?;
                report = report.witness(&format!("int_abs_f_pow_{p}"), r.value);
            }
            Ok(report)
        }),
        Box::new(|| {
            let lo = int(&|t| Ok(f.eval(t)?.min(g.eval(t)?)), a, b)?;
            let hi = int(&|t| Ok(f.eval(t)?.max(g.eval(t)?)), a, b)?;
            let tol = lo.err_estimate
                + hi.err_estimate
                + extra
                + ROUNDING * (lo.value.abs() + hi.value.abs());
            Ok(CheckReport::new(SUITE_ITEMS[7], lo.value, hi.value, tol))
        }),
        Box::new(|| {
            let fi = int(&fe, a, b)?;
            let fa = int(&|t| Ok(f.eval(t)?.abs()), a, b)?;
            let tol = fi.err_estimate + fa.err_estimate + extra + ROUNDING * fa.value;
            Ok(CheckReport::new(
                SUITE_ITEMS[8],
                fi.value.abs(),
                fa.value,
                tol,
            ))
        }),
    ];

    let common = |r: CheckReport| r.witness("a", a).witness("b", b);
    items
        .iter()
        .enumerate()
        .map(|(i, item)| {
            let outcome = check_endpoints(ts, a, b)
                .and_then(|_| {
                    ts.contains(c)
                        .then_some(())
                        .ok_or(Error::PointNotInScale { t: c })
                })
                .and_then(|_| item());
            match outcome {
                Ok(r) => common(r),
                Err(e) => common(CheckReport::failed(SUITE_ITEMS[i], &e)),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_func, parse_scale};

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    fn mixed() -> TimeScale {
        parse_scale("[0,1] u {2,4}").unwrap()
    }

    #[test]
    fn holder_equality_on_mixed_scale() {
        let one = parse_func("1").unwrap();
        let r = holder_check(&mixed(), &one, &one, 0.0, 4.0, 2.0, &cfg()).unwrap();
        assert!(r.passed);
        assert!((r.lhs - 17.0 / 3.0).abs() < 1e-9);
        assert!((r.rhs - 17.0 / 3.0).abs() < 1e-9);
        assert!(r.slack.abs() <= r.tolerance);
        assert_eq!(r.witnesses["q"], 2.0);
    }

    #[test]
    fn holder_rejects_small_exponent() {
        let one = parse_func("1").unwrap();
        for p in [1.0, 0.5, f64::NAN] {
            assert!(matches!(
                holder_check(&mixed(), &one, &one, 0.0, 4.0, p, &cfg()),
                Err(Error::ExponentOutOfRange(_))
            ));
        }
        let h = HolderExponents::new(3.0).unwrap();
        assert!((1.0 / h.p + 1.0 / h.q - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_function_passes_trivially() {
        let zero = parse_func("0").unwrap();
        let g = parse_func("t^2 + 1").unwrap();
        let r = holder_check(&mixed(), &zero, &g, 0.0, 4.0, 3.0, &cfg()).unwrap();
        assert!(r.passed);
        assert_eq!(r.lhs, 0.0);
        let cs = cauchy_schwarz_check(&mixed(), &zero, &zero, 0.0, 4.0, &cfg()).unwrap();
        assert!(cs.passed);
        assert_eq!((cs.lhs, cs.rhs), (0.0, 0.0));
    }

    #[test]
    fn cauchy_schwarz_on_integer_window() {
        let z = parse_scale("hZ(1;-10;10)").unwrap();
        let t = parse_func("t").unwrap();
        let one = parse_func("1").unwrap();
        let r = cauchy_schwarz_check(&z, &t, &one, 0.0, 2.0, &cfg()).unwrap();
        assert!(r.passed);
        assert_eq!(r.lhs, 2.0);
        assert!((r.rhs - 6f64.sqrt()).abs() < 1e-12);
        assert_eq!(r.witnesses["int_f2"], 3.0);
        assert_eq!(r.witnesses["int_g2"], 2.0);
    }

    #[test]
    fn minkowski_equality_cases() {
        let one = parse_func("1").unwrap();
        let r = minkowski_check(&mixed(), &one, &one, 0.0, 4.0, 2.0, &cfg()).unwrap();
        let expected = 2.0 * (17.0f64 / 3.0).sqrt();
        assert!((r.lhs - expected).abs() < 1e-9);
        assert!((r.rhs - expected).abs() < 1e-9);
        assert!(r.passed);

        let f = parse_func("sin(3*t) + t").unwrap();
        let zero = parse_func("0").unwrap();
        let r = minkowski_check(&mixed(), &f, &zero, 0.0, 4.0, 3.5, &cfg()).unwrap();
        assert_eq!(r.lhs, r.rhs);
        assert!(r.passed);
    }

    #[test]
    fn mean_value_on_integer_window() {
        let z = parse_scale("hZ(1;-10;10)").unwrap();
        let f = parse_func("t^2").unwrap();
        let one = parse_func("1").unwrap();
        let r = mean_value_k(&z, &f, &one, 0.0, 2.0, &cfg()).unwrap();
        assert!(r.passed);
        assert_eq!(r.witnesses["K"], 1.5);
        assert_eq!(r.witnesses["m"], 0.0);
        assert_eq!(r.witnesses["M"], 4.0);
        assert_eq!(r.witnesses["int_fg"], 3.0);
        assert_eq!(r.witnesses["int_g"], 2.0);
    }

    #[test]
    fn mean_value_special_cases() {
        let c = parse_func("2.5").unwrap();
        let g = parse_func("exp(t)").unwrap();
        let r = mean_value_k(&mixed(), &c, &g, 0.0, 4.0, &cfg()).unwrap();
        assert!((r.witnesses["K"] - 2.5).abs() < 1e-12);
        assert!(r.passed);

        let f = parse_func("t^3").unwrap();
        let zero = parse_func("0").unwrap();
        let r = mean_value_k(&mixed(), &f, &zero, 0.0, 4.0, &cfg()).unwrap();
        assert!(r.passed);
        assert_eq!(r.witnesses["int_fg"], 0.0);
        assert_eq!(r.witnesses["K"], 32.0);

        let mixed_sign = parse_func("t - 1.5").unwrap();
        assert!(matches!(
            mean_value_k(&mixed(), &f, &mixed_sign, 0.0, 4.0, &cfg()),
            Err(Error::SignChange { .. })
        ));
        assert_eq!(
            mean_value_k(&mixed(), &f, &c, 2.0, 2.0, &cfg()),
            Err(Error::DegenerateRange)
        );
    }

    #[test]
    fn suite_examples() {
        let one = parse_func("1").unwrap();
        let reports = property_suite(&mixed(), &one, &one, 0.0, 4.0, 1.0, 2.0, &cfg());
        assert_eq!(reports.len(), 9);
        for (r, name) in reports.iter().zip(SUITE_ITEMS) {
            assert_eq!(r.name, name);
            assert!(r.passed, "{r:?}");
        }
        let split = &reports[1];
        assert!((split.witnesses["int_a_c"] - 1.0).abs() < 1e-12);
        assert!((split.witnesses["int_c_b"] - 14.0 / 3.0).abs() < 1e-12);

        let z = parse_scale("hZ(1;-10;10)").unwrap();
        let f = parse_func("t - 1").unwrap();
        let reports = property_suite(&z, &f, &one, 0.0, 2.0, 1.0, -1.0, &cfg());
        let tri = &reports[8];
        assert_eq!((tri.lhs, tri.rhs), (0.0, 1.0));
        assert!(reports.iter().all(|r| r.passed));
    }

    #[test]
    fn suite_isolates_failures() {
        let z = parse_scale("hZ(1;-3;3)").unwrap();
        let f = parse_func("t").unwrap();
        let g = parse_func("1/t").unwrap();
        let reports = property_suite(&z, &f, &g, -2.0, 2.0, 0.0, 3.0, &cfg());
        assert!(reports[0].passed);
        assert!(reports[2].passed);
        assert!(!reports[3].passed);
        assert!(reports[3]
            .error
            .as_deref()
            .unwrap()
            .contains("division by zero"));
    }
}
