//! Seeded random inputs for property checks: scales on a dyadic grid,
//! integer-coefficient polynomials, points and ranges of a scale.
//!
//! Every trial draws from its own ChaCha stream, so results depend only on
//! `(seed, trial)` and trials can run in parallel.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::expr::{parse_func, FuncExpr};
use crate::properties::{
    cauchy_schwarz_check, holder_check, mean_value_k, minkowski_check, property_suite, CheckReport,
};
use crate::quadrature::QuadConfig;
use crate::timescale::{Segment, TimeScale};

/// Grid spacing of random scale endpoints and random points.
pub const GRID: f64 = 1.0 / 16.0;

/// Random scales live in `[-GRID_HALF_WIDTH, GRID_HALF_WIDTH]` grid units.
const GRID_HALF_WIDTH: i64 = 48;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Up to `max_segments` disjoint segments with endpoints on the `1/16` grid.
/// Never a single point.
pub fn random_scale<R: Rng>(rng: &mut R, max_segments: usize) -> TimeScale {
    let k = rng.gen_range(1..=max_segments.max(1));
    let span = (2 * GRID_HALF_WIDTH + 1) as usize;
    let mut ticks: Vec<i64> = index::sample(rng, span, 2 * k)
        .into_iter()
        .map(|i| i as i64 - GRID_HALF_WIDTH)
        .collect();
    ticks.sort_unstable();
    let mut segs = Vec::with_capacity(k);
    for pair in ticks.chunks(2) {
        let lo = pair[0] as f64 * GRID;
        let hi = pair[1] as f64 * GRID;
        // distinct ticks keep the gaps positive; collapse some segments to points
        if k > 1 && rng.gen_bool(0.4) {
            segs.push(Segment::point(lo).expect("finite"));
        } else {
            segs.push(Segment::new(lo, hi).expect("ordered"));
        }
    }
    TimeScale::new(segs).expect("nonempty")
}

/// Between 2 and `max_points` distinct points on the `1/8` grid.
pub fn random_discrete_scale<R: Rng>(rng: &mut R, max_points: usize) -> TimeScale {
    let n = rng.gen_range(2..=max_points.max(2));
    let pts = index::sample(rng, 81, n)
        .into_iter()
        .map(|i| (i as f64 - 40.0) / 8.0);
    TimeScale::points(pts).expect("nonempty")
}

/// `h Z ∩ [h*lo, h*hi]` for a random window of at least 3 points.
pub fn random_hz_window<R: Rng>(rng: &mut R, h: f64) -> TimeScale {
    let lo = rng.gen_range(-12..=0);
    let hi = rng.gen_range(lo + 2..=lo + 24);
    TimeScale::uniform(h, lo as f64 * h, hi as f64 * h).expect("valid window")
}

/// Source text of a polynomial of degree at most `max_degree` with small
/// coefficients that are multiples of `1/4`.
pub fn random_poly_src<R: Rng>(rng: &mut R, max_degree: u32) -> String {
    let degree = rng.gen_range(0..=max_degree);
    let mut terms = Vec::new();
    for d in 0..=degree {
        let c = rng.gen_range(-12..=12) as f64 / 4.0;
        if c == 0.0 && d != degree {
            continue;
        }
        terms.push(match d {
            0 => format!("{c}"),
            1 => format!("{c} * t"),
            _ => format!("{c} * t^{d}"),
        });
    }
    terms.join(" + ").replace("+ -", "- ")
}

pub fn random_poly<R: Rng>(rng: &mut R, max_degree: u32) -> FuncExpr {
    parse_func(&random_poly_src(rng, max_degree)).expect("generated source parses")
}

/// A function of one sign: `±(c + (u + v t)^2)` with `c >= 0`, or
/// occasionally the zero function.
pub fn random_one_signed<R: Rng>(rng: &mut R) -> FuncExpr {
    if rng.gen_bool(0.05) {
        return FuncExpr::constant(0.0);
    }
    let c = rng.gen_range(0..=8) as f64 / 4.0;
    let u = rng.gen_range(-8..=8) as f64 / 4.0;
    let v = rng.gen_range(-8..=8) as f64 / 4.0;
    let sign = if rng.gen_bool(0.5) { "" } else { "-" };
    parse_func(&format!("{sign}({c} + ({u} + {v} * t)^2)")).expect("generated source parses")
}

/// A point of `ts`: a scattered point or a grid point of some segment.
pub fn random_point<R: Rng>(rng: &mut R, ts: &TimeScale) -> f64 {
    let segs = ts.segments();
    let s = segs[rng.gen_range(0..segs.len())];
    if s.is_point() {
        return s.lo;
    }
    let steps = ((s.hi - s.lo) / GRID).round() as i64;
    match rng.gen_range(0..4) {
        0 => s.lo,
        1 => s.hi,
        _ => (s.lo + rng.gen_range(0..=steps) as f64 * GRID).min(s.hi),
    }
}

/// `n` points of `ts` in nondecreasing order, the first strictly below the
/// last.
pub fn random_sorted_points<R: Rng>(rng: &mut R, ts: &TimeScale, n: usize) -> Vec<f64> {
    loop {
        let mut pts: Vec<f64> = (0..n).map(|_| random_point(rng, ts)).collect();
        pts.sort_by(f64::total_cmp);
        if pts[0] < pts[n - 1] {
            return pts;
        }
    }
}

/// `(a, b)` with `a < b`, both in `ts`.
pub fn random_range<R: Rng>(rng: &mut R, ts: &TimeScale) -> (f64, f64) {
    let p = random_sorted_points(rng, ts, 2);
    (p[0], p[1])
}

/// `p` in `(1, 5]`.
pub fn random_exponent<R: Rng>(rng: &mut R) -> f64 {
    5.0 - 4.0 * rng.gen::<f64>()
}

/// Runs `trial` for indices `0..trials` in parallel, each with its own
/// stream, and concatenates the reports in trial order.
pub fn run_trials<T, F>(seed: u64, trials: u64, trial: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, &mut ChaCha8Rng) -> Vec<T> + Sync,
{
    (0..trials)
        .into_par_iter()
        .flat_map_iter(|i| trial(i, &mut trial_rng(seed, i)))
        .collect()
}

/// One randomized verification trial: the nine-item suite, Hölder,
/// Cauchy-Schwarz, Minkowski and the mean value theorem on a random scale
/// with random polynomial integrands.
pub fn verification_trial<R: Rng>(rng: &mut R, cfg: &QuadConfig) -> Vec<CheckReport> {
    let ts = random_scale(rng, 8);
    let f = random_poly(rng, 4);
    let g = random_poly(rng, 4);
    let w = random_one_signed(rng);
    let pts = random_sorted_points(rng, &ts, 3);
    let (a, c, b) = (pts[0], pts[1], pts[2]);
    let lambda = rng.gen_range(-16..=16) as f64 / 4.0;
    let p = random_exponent(rng);

    let tag = |r: CheckReport| r.witness("a", a).witness("b", b);
    let or_failed = |name: &str, r: crate::Result<CheckReport>| match r {
        Ok(r) => tag(r),
        Err(e) => tag(CheckReport::failed(name, &e)),
    };
    let mut out = property_suite(&ts, &f, &g, a, b, c, lambda, cfg);
    out.push(or_failed("holder", holder_check(&ts, &f, &g, a, b, p, cfg)));
    out.push(or_failed(
        "cauchy-schwarz",
        cauchy_schwarz_check(&ts, &f, &g, a, b, cfg),
    ));
    out.push(or_failed(
        "minkowski",
        minkowski_check(&ts, &f, &g, a, b, p, cfg),
    ));
    out.push(or_failed(
        "mean-value",
        mean_value_k(&ts, &f, &w, a, b, cfg),
    ));
    out
}

/// `trials` independent verification trials from `seed`.
pub fn randomized_verification(seed: u64, trials: u64, cfg: &QuadConfig) -> Vec<CheckReport> {
    run_trials(seed, trials, |i, rng| {
        verification_trial(rng, cfg)
            .into_iter()
            .map(|r| r.witness("trial", i as f64))
            .collect()
    })
}
