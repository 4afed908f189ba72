//! Delta, nabla, diamond-alpha and diamond integrals over `[a, b]` of a time
//! scale.
//!
//! Every integral is assembled from the same two ingredients, produced by
//! [`TimeScale::grid`]:
//!
//! * continuum pieces, integrated with adaptive Simpson;
//! * scattered points, each contributing `weight * f(t)`. On the delta side
//!   the terms sit at right-scattered `t ∈ [a, b)` with weight `mu(t)`; on the
//!   nabla side at left-scattered `t ∈ (a, b]` with weight `nu(t)`.
//!
//! The diamond-alpha and diamond integrals scale each side by a weight: the
//! constants `alpha` / `1 - alpha`, or the pointwise `gamma(t)` /
//! `1 - gamma(t)`. Inside a continuum piece every point is dense, so the
//! pointwise weight is the constant `1/2` there; the true endpoint value of
//! `gamma` is carried by the scattered term.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::RealFn;
use crate::timescale::{GridPart, ScatteredPoint, TimeScale};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Cap on adaptive bisection depth.
    pub max_depth: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_depth: 40,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if self.rel_tol > 0.0 && self.abs_tol > 0.0 && self.max_depth >= 1 {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!("{self:?}")))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Delta,
    Nabla,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteredTerm {
    pub t: f64,
    pub side: Side,
    pub weight: f64,
    pub contribution: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralResult {
    pub value: f64,
    /// Bounds the continuous part only; scattered sums are exact up to rounding.
    pub err_estimate: f64,
    pub continuous_part: f64,
    pub discrete_part: f64,
    pub scattered_terms: Vec<ScatteredTerm>,
}

impl IntegralResult {
    fn zero() -> Self {
        IntegralResult {
            value: 0.0,
            err_estimate: 0.0,
            continuous_part: 0.0,
            discrete_part: 0.0,
            scattered_terms: Vec::new(),
        }
    }

    fn negated(mut self) -> Self {
        self.value = -self.value;
        self.continuous_part = -self.continuous_part;
        self.discrete_part = -self.discrete_part;
        for term in &mut self.scattered_terms {
            term.weight = -term.weight;
            term.contribution = -term.contribution;
        }
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntegralKind {
    Delta,
    Nabla,
    DiamondAlpha(f64),
    Diamond,
}

/// Per-side weighting of the integrand.
#[derive(Clone, Copy)]
enum Weight {
    Const(f64),
    Gamma,
    OneMinusGamma,
}

impl Weight {
    fn continuum(self) -> f64 {
        match self {
            Weight::Const(c) => c,
            Weight::Gamma | Weight::OneMinusGamma => 0.5,
        }
    }

    fn at(self, p: &ScatteredPoint) -> f64 {
        match self {
            Weight::Const(c) => c,
            Weight::Gamma => p.gamma,
            Weight::OneMinusGamma => 1.0 - p.gamma,
        }
    }
}

pub fn delta_integral<F: RealFn + ?Sized>(
    ts: &TimeScale,
    f: &F,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<IntegralResult> {
    assemble(ts, f, a, b, cfg, Weight::Const(1.0), Weight::Const(0.0))
}

pub fn nabla_integral<F: RealFn + ?Sized>(
    ts: &TimeScale,
    f: &F,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<IntegralResult> {
    assemble(ts, f, a, b, cfg, Weight::Const(0.0), Weight::Const(1.0))
}

/// `alpha * delta + (1 - alpha) * nabla`, combined term by term.
pub fn diamond_alpha_integral<F: RealFn + ?Sized>(
    ts: &TimeScale,
    f: &F,
    a: f64,
    b: f64,
    alpha: f64,
    cfg: &QuadConfig,
) -> Result<IntegralResult> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    assemble(
        ts,
        f,
        a,
        b,
        cfg,
        Weight::Const(alpha),
        Weight::Const(1.0 - alpha),
    )
}

/// Delta integral of `gamma * f` plus nabla integral of `(1 - gamma) * f`.
pub fn diamond_integral<F: RealFn + ?Sized>(
    ts: &TimeScale,
    f: &F,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<IntegralResult> {
    assemble(ts, f, a, b, cfg, Weight::Gamma, Weight::OneMinusGamma)
}

pub fn integrate<F: RealFn + ?Sized>(
    ts: &TimeScale,
    f: &F,
    a: f64,
    b: f64,
    kind: IntegralKind,
    cfg: &QuadConfig,
) -> Result<IntegralResult> {
    match kind {
        IntegralKind::Delta => delta_integral(ts, f, a, b, cfg),
        IntegralKind::Nabla => nabla_integral(ts, f, a, b, cfg),
        IntegralKind::DiamondAlpha(alpha) => diamond_alpha_integral(ts, f, a, b, alpha, cfg),
        IntegralKind::Diamond => diamond_integral(ts, f, a, b, cfg),
    }
}

fn assemble<F: RealFn + ?Sized>(
    ts: &TimeScale,
    f: &F,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
    delta_w: Weight,
    nabla_w: Weight,
) -> Result<IntegralResult> {
    cfg.validate()?;
    if !ts.contains(a) {
        return Err(Error::PointNotInScale { t: a });
    }
    if !ts.contains(b) {
        return Err(Error::PointNotInScale { t: b });
    }
    if ts.is_single_point() {
        return Err(Error::DegenerateRange);
    }
    if a == b {
        return Ok(IntegralResult::zero());
    }
    if b < a {
        return Ok(assemble(ts, f, b, a, cfg, delta_w, nabla_w)?.negated());
    }

    let parts = ts.grid(a, b)?;

    let mut riemann = 0.0;
    let mut riemann_err = 0.0;
    for part in &parts {
        if let GridPart::Interval { lo, hi } = *part {
            let (v, e) = adaptive_simpson(f, lo, hi, cfg)?;
            riemann += v;
            riemann_err += e;
        }
    }
    let (cd, cn) = (delta_w.continuum(), nabla_w.continuum());
    let continuous_part = cd * riemann + cn * riemann;
    let err_estimate = (cd.abs() + cn.abs()) * riemann_err;

    let mut terms = Vec::new();
    let mut delta_sum = 0.0;
    let mut nabla_sum = 0.0;
    for part in &parts {
        let GridPart::Point(p) = part else { continue };
        let dw = if p.t < b && p.mu > 0.0 {
            delta_w.at(p) * p.mu
        } else {
            0.0
        };
        let nw = if p.t > a && p.nu > 0.0 {
            nabla_w.at(p) * p.nu
        } else {
            0.0
        };
        if dw == 0.0 && nw == 0.0 {
            continue;
        }
        let fv = f.eval(p.t)?;
        if dw != 0.0 {
            let c = dw * fv;
            delta_sum += c;
            terms.push(ScatteredTerm {
                t: p.t,
                side: Side::Delta,
                weight: dw,
                contribution: c,
            });
        }
        if nw != 0.0 {
            let c = nw * fv;
            nabla_sum += c;
            terms.push(ScatteredTerm {
                t: p.t,
                side: Side::Nabla,
                weight: nw,
                contribution: c,
            });
        }
    }
    let discrete_part = delta_sum + nabla_sum;

    Ok(IntegralResult {
        value: continuous_part + discrete_part,
        err_estimate,
        continuous_part,
        discrete_part,
        scattered_terms: terms,
    })
}

/// Uniform panels each piece starts from before adaptive refinement.
const INITIAL_PANELS: usize = 16;

/// Adaptive Simpson on `[lo, hi]` with the `|S2 - S1| / 15` error estimate.
/// Returns `(value, error estimate)`.
pub fn adaptive_simpson<F: RealFn + ?Sized>(
    f: &F,
    lo: f64,
    hi: f64,
    cfg: &QuadConfig,
) -> Result<(f64, f64)> {
    if lo == hi {
        return Ok((0.0, 0.0));
    }
    let width = (hi - lo) / INITIAL_PANELS as f64;
    let mut nodes = Vec::with_capacity(2 * INITIAL_PANELS + 1);
    for k in 0..=2 * INITIAL_PANELS {
        let t = if k == 2 * INITIAL_PANELS {
            hi
        } else {
            lo + k as f64 * width / 2.0
        };
        nodes.push((t, f.eval(t)?));
    }
    let panels: Vec<Panel> = (0..INITIAL_PANELS)
        .map(|i| {
            let (a, fa) = nodes[2 * i];
            let (m, fm) = nodes[2 * i + 1];
            let (b, fb) = nodes[2 * i + 2];
            Panel {
                a,
                m,
                b,
                fa,
                fm,
                fb,
                whole: simpson(a, b, fa, fm, fb),
            }
        })
        .collect();

    // tolerance relative to the magnitude of the integrand, not of the
    // (possibly cancelling) integral
    let magnitude: f64 = panels
        .iter()
        .map(|p| simpson(p.a, p.b, p.fa.abs(), p.fm.abs(), p.fb.abs()))
        .sum();
    let tol = cfg.abs_tol.max(cfg.rel_tol * magnitude);

    let mut value = 0.0;
    let mut err = 0.0;
    for p in panels {
        let (v, e) = refine(f, p, tol / INITIAL_PANELS as f64, 0, cfg)?;
        value += v;
        err += e;
    }
    Ok((value, err))
}

#[derive(Clone, Copy)]
struct Panel {
    a: f64,
    m: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn refine<F: RealFn + ?Sized>(
    f: &F,
    p: Panel,
    tol: f64,
    depth: usize,
    cfg: &QuadConfig,
) -> Result<(f64, f64)> {
    let lm = 0.5 * (p.a + p.m);
    let rm = 0.5 * (p.m + p.b);
    let flm = f.eval(lm)?;
    let frm = f.eval(rm)?;
    let left = simpson(p.a, p.m, p.fa, flm, p.fm);
    let right = simpson(p.m, p.b, p.fm, frm, p.fb);
    let diff = left + right - p.whole;
    let err = diff.abs() / 15.0;
    let rounding = 64.0 * f64::EPSILON * (left.abs() + right.abs());
    if err <= tol || diff.abs() <= rounding {
        return Ok((left + right + diff / 15.0, err));
    }
    if depth + 1 >= cfg.max_depth || !(p.a < lm && lm < p.m && p.m < rm && rm < p.b) {
        return Err(Error::QuadratureFailure {
            lo: p.a,
            hi: p.b,
            err,
            tol,
        });
    }
    let l = refine(
        f,
        Panel {
            a: p.a,
            m: lm,
            b: p.m,
            fa: p.fa,
            fm: flm,
            fb: p.fm,
            whole: left,
        },
        tol / 2.0,
        depth + 1,
        cfg,
    )?;
    let r = refine(
        f,
        Panel {
            a: p.m,
            m: rm,
            b: p.b,
            fa: p.fm,
            fm: frm,
            fb: p.fb,
            whole: right,
        },
        tol / 2.0,
        depth + 1,
        cfg,
    )?;
    Ok((l.0 + r.0, l.1 + r.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_func, parse_scale};

    fn cfg() -> QuadConfig {
        QuadConfig::default()
    }

    fn run(kind: IntegralKind, scale: &str, f: &str, a: f64, b: f64) -> IntegralResult {
        let ts = parse_scale(scale).unwrap();
        let f = parse_func(f).unwrap();
        integrate(&ts, &f, a, b, kind, &cfg()).unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(
            run(IntegralKind::Delta, "hZ(1;-3;5)", "t^2", 0.0, 2.0).value,
            1.0
        );
        let r = run(IntegralKind::Delta, "[0,1]", "t^2", 0.0, 1.0);
        assert!((r.value - 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(r.discrete_part, 0.0);
        let r = run(IntegralKind::Delta, "[0,1] u {2,4}", "1", 1.0, 4.0);
        assert_eq!(r.value, 3.0);
        assert_eq!(r.scattered_terms.len(), 2);
    }

    #[test]
    fn nabla_examples() {
        assert_eq!(
            run(IntegralKind::Nabla, "hZ(1;-3;5)", "t^2", 0.0, 2.0).value,
            5.0
        );
        assert_eq!(
            run(IntegralKind::Nabla, "[0,1] u {2,4}", "1", 1.0, 4.0).value,
            3.0
        );
        assert_eq!(
            run(IntegralKind::Nabla, "[0,1] u {2,4}", "1", 2.0, 2.0).value,
            0.0
        );
    }

    #[test]
    fn diamond_alpha_examples() {
        for alpha in [0.0, 0.25, 0.5, 1.0] {
            let r = run(
                IntegralKind::DiamondAlpha(alpha),
                "[0,1] u {2,4}",
                "1",
                0.0,
                4.0,
            );
            assert!((r.value - 4.0).abs() < 1e-12, "{alpha}: {}", r.value);
        }
        let d = run(IntegralKind::Delta, "[0,1] u {2,4}", "t^3", 0.0, 4.0);
        let a1 = run(
            IntegralKind::DiamondAlpha(1.0),
            "[0,1] u {2,4}",
            "t^3",
            0.0,
            4.0,
        );
        assert_eq!(d, a1);
        assert_eq!(
            run(
                IntegralKind::DiamondAlpha(0.5),
                "hZ(1;-3;5)",
                "t^2",
                0.0,
                2.0
            )
            .value,
            3.0
        );
    }

    #[test]
    fn diamond_examples() {
        assert_eq!(
            run(IntegralKind::Diamond, "hZ(1;-3;5)", "t^2", 0.0, 2.0).value,
            3.0
        );
        let r = run(IntegralKind::Diamond, "[0,1] u {2,4}", "1", 0.0, 4.0);
        assert!((r.value - 17.0 / 3.0).abs() < 1e-12);
        assert_eq!(r.value, r.continuous_part + r.discrete_part);
        let r = run(IntegralKind::Diamond, "[0,1]", "t^2", 0.0, 1.0);
        assert!((r.value - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn diamond_on_a_bounded_integer_window_sees_the_edges() {
        // at the window's extremes gamma is 1 and 0, not 1/2
        let r = run(IntegralKind::Diamond, "{0,1,2}", "t^2", 0.0, 2.0);
        assert_eq!(r.value, 5.0);
    }

    #[test]
    fn orientation_and_empty_range() {
        let fwd = run(IntegralKind::Diamond, "[0,1] u {2,4}", "t + 1", 0.0, 4.0);
        let back = run(IntegralKind::Diamond, "[0,1] u {2,4}", "t + 1", 4.0, 0.0);
        assert_eq!(fwd.value, -back.value);
        assert_eq!(
            fwd.scattered_terms[0].weight,
            -back.scattered_terms[0].weight
        );
        let zero = run(IntegralKind::Diamond, "[0,1] u {2,4}", "t + 1", 2.0, 2.0);
        assert_eq!(zero.value, 0.0);
        assert!(zero.scattered_terms.is_empty());
    }

    #[test]
    fn errors() {
        let ts = parse_scale("[0,1] u {2,4}").unwrap();
        let f = parse_func("1/(t - 2)").unwrap();
        assert!(matches!(
            delta_integral(&ts, &f, 0.0, 3.0, &cfg()),
            Err(Error::PointNotInScale { t }) if t == 3.0
        ));
        assert!(matches!(
            delta_integral(&ts, &f, 0.0, 4.0, &cfg()),
            Err(Error::Domain { .. })
        ));
        assert!(matches!(
            diamond_alpha_integral(&ts, &f, 0.0, 1.0, -0.1, &cfg()),
            Err(Error::AlphaOutOfRange(_))
        ));
        let one = parse_scale("{1}").unwrap();
        assert_eq!(
            diamond_integral(&one, &f, 1.0, 1.0, &cfg()),
            Err(Error::DegenerateRange)
        );
        let unit = parse_scale("[0,1]").unwrap();
        let spike = parse_func("1/sqrt(t)").unwrap();
        let tight = QuadConfig {
            max_depth: 4,
            ..cfg()
        };
        assert!(matches!(
            delta_integral(&unit, &spike, 1e-300, 1.0, &tight),
            Err(Error::QuadratureFailure { .. })
        ));
    }

    #[test]
    fn simpson_handles_smooth_and_kinked_integrands() {
        let (v, e) = adaptive_simpson(
            &parse_func("sin(t)").unwrap(),
            0.0,
            std::f64::consts::PI,
            &cfg(),
        )
        .unwrap();
        assert!((v - 2.0).abs() < 1e-10 && e < 1e-9);
        let (v, _) =
            adaptive_simpson(&parse_func("abs(t - 0.3)").unwrap(), 0.0, 1.0, &cfg()).unwrap();
        assert!((v - (0.045 + 0.245)).abs() < 1e-10);
        let (v, _) = adaptive_simpson(&parse_func("t^4").unwrap(), -1.0, 2.0, &cfg()).unwrap();
        assert!((v - 33.0 / 5.0).abs() < 1e-9);
    }
}
