mod support;

use diamond_core::quadrature::{integrate, IntegralKind, QuadConfig};
use diamond_core::random::trial_rng;
use diamond_core::{parse_func, TimeScale};
use rand::Rng;

use support::oracle::{self, Kind, Poly};

fn core_kind(kind: Kind) -> IntegralKind {
    match kind {
        Kind::Delta => IntegralKind::Delta,
        Kind::Nabla => IntegralKind::Nabla,
        Kind::DiamondAlphaQuarters(a) => IntegralKind::DiamondAlpha(a as f64 / 4.0),
        Kind::Diamond => IntegralKind::Diamond,
    }
}

#[test]
fn all_kinds_match_exact_sums_on_discrete_scales() {
    let cfg = QuadConfig::default();
    for trial in 0..300 {
        let mut rng = trial_rng(11, trial);
        let xs = oracle::random_eighths(&mut rng, 2, 12);
        let exact_pts: Vec<_> = xs.iter().map(|&x| oracle::q(x, 8)).collect();
        let ts = TimeScale::points(xs.iter().map(|&x| x as f64 / 8.0)).unwrap();
        let poly = Poly::random(&mut rng, 4);
        let f = parse_func(&poly.src()).unwrap();
        let i = rng.gen_range(0..xs.len());
        let j = rng.gen_range(i..xs.len());
        let (a, b) = (xs[i] as f64 / 8.0, xs[j] as f64 / 8.0);
        for kind in [
            Kind::Delta,
            Kind::Nabla,
            Kind::DiamondAlphaQuarters(rng.gen_range(0..=4)),
            Kind::Diamond,
        ] {
            let (exact, mag) = oracle::integral(&exact_pts, &poly, i, j, kind);
            let want = oracle::to_f64(&exact);
            let got = integrate(&ts, &f, a, b, core_kind(kind), &cfg).unwrap();
            let bound = 16.0 * f64::EPSILON * mag;
            assert!(
                (got.value - want).abs() <= bound,
                "trial {trial} {kind:?} on {ts} [{a}, {b}] f = {}: {} vs {want}",
                poly.src(),
                got.value
            );
            assert_eq!(got.continuous_part, 0.0);
            let back = integrate(&ts, &f, b, a, core_kind(kind), &cfg).unwrap();
            assert_eq!(back.value, -got.value);
        }
    }
}

#[test]
fn bounded_window_edge_effect() {
    // gamma is 1 at a right-scattered minimum and 0 at a left-scattered maximum
    let pts: Vec<_> = (0..=2).map(|k| oracle::q(k, 1)).collect();
    let t2 = Poly {
        quarters: vec![0, 0, 4],
    };
    let (exact, _) = oracle::integral(&pts, &t2, 0, 2, Kind::Diamond);
    assert_eq!(oracle::to_f64(&exact), 5.0);
    let ts = TimeScale::points([0.0, 1.0, 2.0]).unwrap();
    let f = parse_func("t^2").unwrap();
    let r = integrate(
        &ts,
        &f,
        0.0,
        2.0,
        IntegralKind::Diamond,
        &QuadConfig::default(),
    )
    .unwrap();
    assert_eq!(r.value, 5.0);
}
