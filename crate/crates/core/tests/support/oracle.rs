//! Exact rational reference sums for purely discrete scales.
//!
//! Written directly from the jump operators of a sorted point list; shares
//! no code with the library. Points are multiples of 1/8 and polynomial
//! coefficients multiples of 1/4, so every quantity is an exact rational.

#![allow(dead_code)]

use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};
use rand::seq::index;
use rand::Rng;

pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Polynomial with coefficients `quarters[d] / 4`.
#[derive(Debug, Clone)]
pub struct Poly {
    pub quarters: Vec<i64>,
}

impl Poly {
    pub fn random<R: Rng>(rng: &mut R, max_degree: usize) -> Self {
        let degree = rng.gen_range(0..=max_degree);
        Poly {
            quarters: (0..=degree).map(|_| rng.gen_range(-12..=12)).collect(),
        }
    }

    pub fn src(&self) -> String {
        let terms: Vec<String> = self
            .quarters
            .iter()
            .enumerate()
            .map(|(d, c)| format!("({c} / 4) * t^{d}"))
            .collect();
        terms.join(" + ")
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.quarters.iter().rev() {
            acc = acc * t + q(*c, 4);
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kind {
    Delta,
    Nabla,
    /// Weight `num / 4`.
    DiamondAlphaQuarters(i64),
    Diamond,
}

/// `k` distinct points `x / 8` with `x` in `[-40, 40]`, sorted.
pub fn random_eighths<R: Rng>(rng: &mut R, min_points: usize, max_points: usize) -> Vec<i64> {
    let n = rng.gen_range(min_points..=max_points);
    let mut xs: Vec<i64> = index::sample(rng, 81, n)
        .into_iter()
        .map(|i| i as i64 - 40)
        .collect();
    xs.sort_unstable();
    xs
}

/// Exact integral from `pts[i]` to `pts[j]` (`i <= j`) and the f64 sum of
/// absolute term values, for judging rounding.
pub fn integral(
    pts: &[BigRational],
    f: &Poly,
    i: usize,
    j: usize,
    kind: Kind,
) -> (BigRational, f64) {
    let n = pts.len();
    let sigma = |k: usize| {
        if k + 1 < n {
            pts[k + 1].clone()
        } else {
            pts[k].clone()
        }
    };
    let rho = |k: usize| {
        if k > 0 {
            pts[k - 1].clone()
        } else {
            pts[k].clone()
        }
    };
    let gamma = |k: usize| {
        let span = sigma(k) - rho(k);
        (sigma(k) - &pts[k]) / span
    };
    let one = q(1, 1);
    let (mut total, mut mag) = (BigRational::zero(), 0.0);
    let mut add = |term: BigRational| {
        mag += term.abs().to_f64().unwrap();
        total += term;
    };
    for k in i..j {
        let mu = sigma(k) - &pts[k];
        let w = match kind {
            Kind::Delta => one.clone(),
            Kind::Nabla => BigRational::zero(),
            Kind::DiamondAlphaQuarters(a) => q(a, 4),
            Kind::Diamond => gamma(k),
        };
        add(w * mu * f.eval(&pts[k]));
    }
    for k in i + 1..=j {
        let nu = pts[k].clone() - rho(k);
        let w = match kind {
            Kind::Delta => BigRational::zero(),
            Kind::Nabla => one.clone(),
            Kind::DiamondAlphaQuarters(a) => one.clone() - q(a, 4),
            Kind::Diamond => one.clone() - gamma(k),
        };
        add(w * nu * f.eval(&pts[k]));
    }
    (total, mag)
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap()
}
