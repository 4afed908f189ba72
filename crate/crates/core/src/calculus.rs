//! Delta, nabla and diamond-alpha derivatives.
//!
//! At scattered points the derivatives are exact difference quotients over
//! the gap. At dense points they are limits of difference quotients taken
//! inside the containing continuum segment, refined with a Richardson table.

use crate::error::{Error, Result};
use crate::expr::RealFn;
use crate::timescale::{KappaDomain, TimeScale};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeConfig {
    /// Initial finite-difference step at dense points.
    pub dense_step_h0: f64,
    /// Step reduction factor between refinements.
    pub shrink: f64,
    /// Stop when successive extrapolated estimates differ by less than
    /// `tol * max(1, |estimate|)`.
    pub tol: f64,
    pub max_iters: usize,
}

impl Default for DerivativeConfig {
    fn default() -> Self {
        DerivativeConfig {
            dense_step_h0: 1e-4,
            shrink: 0.5,
            tol: 1e-8,
            max_iters: 30,
        }
    }
}

impl DerivativeConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.dense_step_h0 > 0.0
            && self.dense_step_h0.is_finite()
            && self.shrink > 0.0
            && self.shrink < 1.0
            && self.tol > 0.0
            && self.max_iters >= 1;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!("{self:?}")))
        }
    }
}

/// Room available to the left and right of `t` inside its segment.
fn room(ts: &TimeScale, t: f64) -> (f64, f64) {
    let seg = ts
        .segments()
        .iter()
        .find(|s| s.contains(t))
        .expect("caller checked membership");
    (t - seg.lo, seg.hi - t)
}

pub fn delta_derivative<F: RealFn + ?Sized>(
    ts: &TimeScale,
    f: &F,
    t: f64,
    cfg: &DerivativeConfig,
) -> Result<f64> {
    cfg.validate()?;
    ts.check_kappa(t, KappaDomain::Delta)?;
    let sigma = ts.sigma(t)?;
    if sigma > t {
        return Ok((f.eval(sigma)? - f.eval(t)?) / (sigma - t));
    }
    dense_limit(f, t, room(ts, t), cfg)
}

pub fn nabla_derivative<F: RealFn + ?Sized>(
    ts: &TimeScale,
    f: &F,
    t: f64,
    cfg: &DerivativeConfig,
) -> Result<f64> {
    cfg.validate()?;
    ts.check_kappa(t, KappaDomain::Nabla)?;
    let rho = ts.rho(t)?;
    if rho < t {
        return Ok((f.eval(t)? - f.eval(rho)?) / (t - rho));
    }
    dense_limit(f, t, room(ts, t), cfg)
}

/// `alpha * f^delta(t) + (1 - alpha) * f^nabla(t)` on `T^kappa_kappa`.
pub fn diamond_alpha_derivative<F: RealFn + ?Sized>(
    ts: &TimeScale,
    f: &F,
    t: f64,
    alpha: f64,
    cfg: &DerivativeConfig,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    ts.check_kappa(t, KappaDomain::Both)?;
    let delta = delta_derivative(ts, f, t, cfg)?;
    let nabla = nabla_derivative(ts, f, t, cfg)?;
    Ok(alpha * delta + (1.0 - alpha) * nabla)
}

#[derive(Clone, Copy)]
enum Stencil {
    Central,
    Forward,
    Backward,
}

/// Derivative at a dense point, using only points of the segment.
fn dense_limit<F: RealFn + ?Sized>(
    f: &F,
    t: f64,
    (left, right): (f64, f64),
    cfg: &DerivativeConfig,
) -> Result<f64> {
    let h0 = cfg.dense_step_h0;
    let (stencil, h0) = if left >= h0 && right >= h0 {
        (Stencil::Central, h0)
    } else if right >= left && right > 0.0 {
        (Stencil::Forward, h0.min(right))
    } else if left > 0.0 {
        (Stencil::Backward, h0.min(left))
    } else {
        return Err(Error::EmptyDomain);
    };

    let quotient = |h: f64| -> Result<f64> {
        Ok(match stencil {
            Stencil::Central => (f.eval(t + h)? - f.eval(t - h)?) / (2.0 * h),
            Stencil::Forward => (f.eval(t + h)? - f.eval(t)?) / h,
            Stencil::Backward => (f.eval(t)? - f.eval(t - h)?) / h,
        })
    };
    // error expansion exponents: h^2, h^4, ... (central) or h, h^2, ... (one-sided)
    let order_step = match stencil {
        Stencil::Central => 2,
        Stencil::Forward | Stencil::Backward => 1,
    };
    let ratio = 1.0 / cfg.shrink;
    const MAX_COLUMNS: usize = 8;

    let mut prev_row = vec![quotient(h0)?];
    let mut h = h0;
    let mut last_change = f64::INFINITY;
    for _ in 0..cfg.max_iters {
        h *= cfg.shrink;
        let mut row = Vec::with_capacity(prev_row.len() + 1);
        row.push(quotient(h)?);
        for j in 1..=prev_row.len().min(MAX_COLUMNS) {
            let factor = ratio.powi((order_step * j) as i32) - 1.0;
            let refined = row[j - 1] + (row[j - 1] - prev_row[j - 1]) / factor;
            row.push(refined);
        }
        let best = *row.last().unwrap();
        let prev_best = *prev_row.last().unwrap();
        last_change = (best - prev_best).abs();
        if last_change < cfg.tol * best.abs().max(1.0) {
            return Ok(best);
        }
        prev_row = row;
    }
    Err(Error::NoConvergence {
        t,
        iters: cfg.max_iters,
        last_change,
    })
}
