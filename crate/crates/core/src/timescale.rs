//! Bounded time scales and their point operators.
//!
//! A [`TimeScale`] is stored as an ordered list of disjoint closed
//! [`Segment`]s separated by strictly positive gaps. A degenerate segment
//! (`lo == hi`) is an isolated point; everything else is a continuum piece.
//! The jump operators follow the usual conventions at the extremes:
//! `sigma(max) = max` and `rho(min) = min`.

use std::fmt;

use serde::Serialize;

use crate::error::{DomainName, Error, Result};

/// Snap tolerance used when building a scale from user input.
pub const EPS_POINT: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
}

impl Segment {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::InvalidSegment { lo, hi });
        }
        Ok(Segment { lo, hi })
    }

    pub fn point(t: f64) -> Result<Self> {
        Segment::new(t, t)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }
}

/// Classification of a point by the behaviour of the jump operators.
///
/// `LeftEndpointDense` / `RightEndpointDense` are the extremes of the scale
/// when they bound a continuum piece: both graininesses vanish there (by the
/// jump conventions) but the point only has neighbours on one side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointClass {
    Dense,
    RightScatteredLeftDense,
    LeftScatteredRightDense,
    Isolated,
    LeftEndpointDense,
    RightEndpointDense,
}

impl PointClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            PointClass::Dense => "dense",
            PointClass::RightScatteredLeftDense => "right-scattered-left-dense",
            PointClass::LeftScatteredRightDense => "left-scattered-right-dense",
            PointClass::Isolated => "isolated",
            PointClass::LeftEndpointDense => "left-endpoint-dense",
            PointClass::RightEndpointDense => "right-endpoint-dense",
        }
    }

    /// Both graininesses vanish, so `gamma = 1/2`.
    pub fn is_dense(&self) -> bool {
        matches!(
            self,
            PointClass::Dense | PointClass::LeftEndpointDense | PointClass::RightEndpointDense
        )
    }
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which extremum rule to apply in [`TimeScale::kappa_domain`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KappaDomain {
    /// `T^kappa`: drop a left-scattered maximum.
    Delta,
    /// `T_kappa`: drop a right-scattered minimum.
    Nabla,
    /// `T^kappa_kappa`: both.
    Both,
}

impl From<KappaDomain> for DomainName {
    fn from(k: KappaDomain) -> Self {
        match k {
            KappaDomain::Delta => DomainName::Delta,
            KappaDomain::Nabla => DomainName::Nabla,
            KappaDomain::Both => DomainName::Both,
        }
    }
}

/// Everything the point operators know about one point of a scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointInfo {
    pub t: f64,
    pub class: PointClass,
    pub sigma: f64,
    pub rho: f64,
    pub mu: f64,
    pub nu: f64,
    pub gamma: f64,
}

/// A scattered point emitted by [`TimeScale::grid`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScatteredPoint {
    pub t: f64,
    pub mu: f64,
    pub nu: f64,
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "part", rename_all = "kebab-case")]
pub enum GridPart {
    Interval { lo: f64, hi: f64 },
    Point(ScatteredPoint),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeScale {
    segments: Vec<Segment>,
}

impl TimeScale {
    /// Builds a canonical scale, merging overlapping segments and segments
    /// closer than [`EPS_POINT`].
    pub fn new(segments: impl IntoIterator<Item = Segment>) -> Result<Self> {
        Self::with_tolerance(segments, EPS_POINT)
    }

    pub fn with_tolerance(segments: impl IntoIterator<Item = Segment>, eps: f64) -> Result<Self> {
        let mut segs: Vec<Segment> = segments.into_iter().collect();
        for s in &segs {
            Segment::new(s.lo, s.hi)?;
        }
        if segs.is_empty() {
            return Err(Error::EmptyScale);
        }
        segs.sort_by(|x, y| x.lo.total_cmp(&y.lo).then(x.hi.total_cmp(&y.hi)));

        let mut merged: Vec<Segment> = Vec::with_capacity(segs.len());
        for s in segs {
            match merged.last_mut() {
                Some(last) if s.lo <= last.hi + eps => {
                    if s.hi > last.hi {
                        last.hi = s.hi;
                    }
                }
                _ => merged.push(s),
            }
        }
        Ok(TimeScale { segments: merged })
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Self::new([Segment::new(lo, hi)?])
    }

    pub fn points(points: impl IntoIterator<Item = f64>) -> Result<Self> {
        let segs = points
            .into_iter()
            .map(Segment::point)
            .collect::<Result<Vec<_>>>()?;
        Self::new(segs)
    }

    /// The window `{a, a+h, ..., b}` of `hZ` (shifted so that it starts at `a`).
    pub fn uniform(h: f64, a: f64, b: f64) -> Result<Self> {
        Self::points(uniform_points(h, a, b)?)
    }

    pub fn union(&self, other: &TimeScale) -> Result<Self> {
        Self::new(self.segments.iter().chain(other.segments.iter()).copied())
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn min(&self) -> f64 {
        self.segments[0].lo
    }

    pub fn max(&self) -> f64 {
        self.segments[self.segments.len() - 1].hi
    }

    pub fn is_single_point(&self) -> bool {
        self.segments.len() == 1 && self.segments[0].is_point()
    }

    /// True when every segment is an isolated point.
    pub fn is_discrete(&self) -> bool {
        self.segments.iter().all(Segment::is_point)
    }

    /// The points of a purely discrete scale, in increasing order.
    pub fn discrete_points(&self) -> Option<Vec<f64>> {
        self.is_discrete()
            .then(|| self.segments.iter().map(|s| s.lo).collect())
    }

    fn locate(&self, t: f64) -> Option<usize> {
        let idx = self.segments.partition_point(|s| s.hi < t);
        (idx < self.segments.len() && self.segments[idx].contains(t)).then_some(idx)
    }

    fn locate_or_err(&self, t: f64) -> Result<usize> {
        self.locate(t).ok_or(Error::PointNotInScale { t })
    }

    pub fn contains(&self, t: f64) -> bool {
        self.locate(t).is_some()
    }

    /// The stored point nearest to `t`, provided it lies within `eps`.
    pub fn snap(&self, t: f64, eps: f64) -> Option<f64> {
        if self.contains(t) {
            return Some(t);
        }
        self.segments
            .iter()
            .flat_map(|s| [s.lo, s.hi])
            .filter(|p| (p - t).abs() <= eps)
            .min_by(|x, y| (x - t).abs().total_cmp(&(y - t).abs()))
    }

    pub fn sigma(&self, t: f64) -> Result<f64> {
        let i = self.locate_or_err(t)?;
        Ok(self.sigma_at(i, t))
    }

    pub fn rho(&self, t: f64) -> Result<f64> {
        let i = self.locate_or_err(t)?;
        Ok(self.rho_at(i, t))
    }

    fn sigma_at(&self, i: usize, t: f64) -> f64 {
        let seg = self.segments[i];
        if t < seg.hi {
            t
        } else {
            self.segments.get(i + 1).map_or(t, |next| next.lo)
        }
    }

    fn rho_at(&self, i: usize, t: f64) -> f64 {
        let seg = self.segments[i];
        if t > seg.lo {
            t
        } else if i == 0 {
            t
        } else {
            self.segments[i - 1].hi
        }
    }

    /// Forward graininess `sigma(t) - t`.
    pub fn mu(&self, t: f64) -> Result<f64> {
        Ok(self.sigma(t)? - t)
    }

    /// Backward graininess `t - rho(t)`.
    pub fn nu(&self, t: f64) -> Result<f64> {
        Ok(t - self.rho(t)?)
    }

    pub fn classify(&self, t: f64) -> Result<PointClass> {
        Ok(self.info(t)?.class)
    }

    /// `1/2` at dense points, `(sigma - t) / (sigma - rho)` elsewhere.
    pub fn gamma(&self, t: f64) -> Result<f64> {
        Ok(self.info(t)?.gamma)
    }

    pub fn info(&self, t: f64) -> Result<PointInfo> {
        let i = self.locate_or_err(t)?;
        Ok(self.info_at(i, t))
    }

    fn info_at(&self, i: usize, t: f64) -> PointInfo {
        let sigma = self.sigma_at(i, t);
        let rho = self.rho_at(i, t);
        let mu = sigma - t;
        let nu = t - rho;
        let seg = self.segments[i];
        let class = match (mu > 0.0, nu > 0.0) {
            (true, true) => PointClass::Isolated,
            (true, false) => PointClass::RightScatteredLeftDense,
            (false, true) => PointClass::LeftScatteredRightDense,
            (false, false) => {
                if t == self.min() && t < seg.hi {
                    PointClass::LeftEndpointDense
                } else if t == self.max() && t > seg.lo {
                    PointClass::RightEndpointDense
                } else {
                    PointClass::Dense
                }
            }
        };
        let gamma = if class.is_dense() {
            0.5
        } else {
            (sigma - t) / (sigma - rho)
        };
        PointInfo {
            t,
            class,
            sigma,
            rho,
            mu,
            nu,
            gamma,
        }
    }

    /// Checks that `t` lies in the requested derivative domain.
    pub fn check_kappa(&self, t: f64, kind: KappaDomain) -> Result<()> {
        let i = self.locate_or_err(t)?;
        if self.is_single_point() {
            return Err(Error::EmptyDomain);
        }
        let drop_max = matches!(kind, KappaDomain::Delta | KappaDomain::Both)
            && t == self.max()
            && self.rho_at(i, t) < t;
        let drop_min = matches!(kind, KappaDomain::Nabla | KappaDomain::Both)
            && t == self.min()
            && self.sigma_at(i, t) > t;
        if drop_max || drop_min {
            return Err(Error::PointNotInDomain {
                t,
                domain: kind.into(),
            });
        }
        Ok(())
    }

    /// `T^kappa`, `T_kappa` or their intersection.
    pub fn kappa_domain(&self, kind: KappaDomain) -> Result<TimeScale> {
        if self.is_single_point() {
            return Err(Error::EmptyDomain);
        }
        let mut segs = self.segments.clone();
        // With at least two segments, a degenerate last (first) segment is
        // necessarily left- (right-) scattered.
        if matches!(kind, KappaDomain::Delta | KappaDomain::Both) && segs[segs.len() - 1].is_point()
        {
            segs.pop();
        }
        if matches!(kind, KappaDomain::Nabla | KappaDomain::Both) && self.segments[0].is_point() {
            segs.remove(0);
        }
        if segs.is_empty() {
            return Err(Error::EmptyDomain);
        }
        Ok(TimeScale { segments: segs })
    }

    /// Walks `[a, b] ∩ T` left to right, emitting maximal continuum pieces and
    /// every scattered point (a point with `mu > 0` or `nu > 0`).
    pub fn grid(&self, a: f64, b: f64) -> Result<Vec<GridPart>> {
        let ia = self.locate_or_err(a)?;
        let ib = self.locate_or_err(b)?;
        if a >= b {
            return Ok(Vec::new());
        }
        let mut parts = Vec::new();
        let push_point = |parts: &mut Vec<GridPart>, i: usize, t: f64| {
            let info = self.info_at(i, t);
            if (info.mu > 0.0 || info.nu > 0.0) && a <= t && t <= b {
                parts.push(GridPart::Point(ScatteredPoint {
                    t,
                    mu: info.mu,
                    nu: info.nu,
                    gamma: info.gamma,
                }));
            }
        };
        for i in ia..=ib {
            let seg = self.segments[i];
            if seg.is_point() {
                push_point(&mut parts, i, seg.lo);
                continue;
            }
            push_point(&mut parts, i, seg.lo);
            let lo = seg.lo.max(a);
            let hi = seg.hi.min(b);
            if lo < hi {
                parts.push(GridPart::Interval { lo, hi });
            }
            push_point(&mut parts, i, seg.hi);
        }
        Ok(parts)
    }
}

pub(crate) fn uniform_points(h: f64, a: f64, b: f64) -> Result<Vec<f64>> {
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::InvalidStep { h });
    }
    if !a.is_finite() || !b.is_finite() || a > b {
        return Err(Error::InvalidSegment { lo: a, hi: b });
    }
    let steps = ((b - a) / h + EPS_POINT).floor();
    if steps > 1e7 {
        return Err(Error::InvalidStep { h });
    }
    let n = steps as usize;
    let mut pts: Vec<f64> = (0..=n).map(|k| a + k as f64 * h).collect();
    if let Some(last) = pts.last_mut() {
        if (*last - b).abs() <= EPS_POINT * b.abs().max(1.0) {
            *last = b;
        }
    }
    Ok(pts)
}

impl fmt::Display for TimeScale {
    /// Prints in the textual scale grammar, grouping runs of isolated points.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut run: Vec<f64> = Vec::new();
        let flush = |f: &mut fmt::Formatter<'_>, run: &mut Vec<f64>, first: &mut bool| {
            if run.is_empty() {
                return Ok(());
            }
            if !*first {
                f.write_str(" u ")?;
            }
            *first = false;
            let items: Vec<String> = run.iter().map(|p| format!("{p:?}")).collect();
            write!(f, "{{{}}}", items.join(", "))?;
            run.clear();
            Ok(())
        };
        for s in &self.segments {
            if s.is_point() {
                run.push(s.lo);
                continue;
            }
            flush(f, &mut run, &mut first)?;
            if !first {
                f.write_str(" u ")?;
            }
            first = false;
            write!(f, "[{:?}, {:?}]", s.lo, s.hi)?;
        }
        flush(f, &mut run, &mut first)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> TimeScale {
        TimeScale::new([
            Segment::new(0.0, 1.0).unwrap(),
            Segment::point(2.0).unwrap(),
            Segment::point(4.0).unwrap(),
        ])
        .unwrap()
    }

    fn integers(lo: i32, hi: i32) -> TimeScale {
        TimeScale::points((lo..=hi).map(f64::from)).unwrap()
    }

    #[test]
    fn membership() {
        let ts = example();
        assert!(ts.contains(0.5));
        assert!(!ts.contains(3.0));
        assert!(integers(0, 10).contains(7.0));
        assert!(!integers(0, 10).contains(7.5));
    }

    #[test]
    fn jump_operators() {
        let ts = example();
        assert_eq!(ts.sigma(1.0).unwrap(), 2.0);
        assert_eq!(ts.sigma(4.0).unwrap(), 4.0);
        assert_eq!(ts.sigma(0.3).unwrap(), 0.3);
        assert_eq!(ts.rho(2.0).unwrap(), 1.0);
        assert_eq!(ts.rho(0.0).unwrap(), 0.0);
        assert_eq!(ts.rho(1.0).unwrap(), 1.0);
        assert_eq!(ts.sigma(3.0), Err(Error::PointNotInScale { t: 3.0 }));
        assert!(ts.rho(-1.0).is_err());
    }

    #[test]
    fn graininess() {
        let ts = example();
        assert_eq!(ts.mu(2.0).unwrap(), 2.0);
        assert_eq!(ts.nu(2.0).unwrap(), 1.0);
        let z = integers(-3, 3);
        for t in -2..=2 {
            assert_eq!(z.mu(f64::from(t)).unwrap(), 1.0);
            assert_eq!(z.nu(f64::from(t)).unwrap(), 1.0);
        }
        let unit = TimeScale::interval(0.0, 1.0).unwrap();
        assert_eq!(unit.mu(0.5).unwrap(), 0.0);
        assert_eq!(unit.nu(0.5).unwrap(), 0.0);
    }

    #[test]
    fn classification() {
        let ts = example();
        assert_eq!(
            ts.classify(1.0).unwrap(),
            PointClass::RightScatteredLeftDense
        );
        assert_eq!(ts.classify(2.0).unwrap(), PointClass::Isolated);
        assert_eq!(ts.classify(0.5).unwrap(), PointClass::Dense);
        assert_eq!(ts.classify(0.0).unwrap(), PointClass::LeftEndpointDense);
        assert_eq!(
            ts.classify(4.0).unwrap(),
            PointClass::LeftScatteredRightDense
        );
        let tail = TimeScale::new([
            Segment::point(0.0).unwrap(),
            Segment::new(1.0, 2.0).unwrap(),
        ])
        .unwrap();
        assert_eq!(
            tail.classify(1.0).unwrap(),
            PointClass::LeftScatteredRightDense
        );
        assert_eq!(tail.classify(2.0).unwrap(), PointClass::RightEndpointDense);
    }

    #[test]
    fn gamma_closed_form() {
        let ts = example();
        assert_eq!(ts.gamma(1.0).unwrap(), 1.0);
        assert_eq!(ts.gamma(2.0).unwrap(), 2.0 / 3.0);
        assert_eq!(ts.gamma(4.0).unwrap(), 0.0);
        assert_eq!(ts.gamma(0.5).unwrap(), 0.5);
        // the worked example's weight sum
        let g = |t| ts.gamma(t).unwrap();
        let total = 1.0 + g(1.0) + 2.0 * g(2.0) + (1.0 - g(2.0)) + 2.0 * (1.0 - g(4.0));
        assert!((total - 17.0 / 3.0).abs() < 1e-15);

        let z = integers(-5, 5);
        for t in -4..=4 {
            assert_eq!(z.gamma(f64::from(t)).unwrap(), 0.5);
        }
        assert_eq!(z.gamma(-5.0).unwrap(), 1.0);
        assert_eq!(z.gamma(5.0).unwrap(), 0.0);
    }

    #[test]
    fn kappa_domains() {
        let ts = example();
        let expect = TimeScale::new([
            Segment::new(0.0, 1.0).unwrap(),
            Segment::point(2.0).unwrap(),
        ])
        .unwrap();
        assert_eq!(ts.kappa_domain(KappaDomain::Delta).unwrap(), expect);
        assert_eq!(ts.kappa_domain(KappaDomain::Nabla).unwrap(), ts);

        let unit = TimeScale::interval(0.0, 1.0).unwrap();
        assert_eq!(unit.kappa_domain(KappaDomain::Both).unwrap(), unit);

        let z = integers(0, 2);
        assert_eq!(z.kappa_domain(KappaDomain::Nabla).unwrap(), integers(1, 2));
        assert_eq!(z.kappa_domain(KappaDomain::Both).unwrap(), integers(1, 1));

        let two = integers(0, 1);
        assert_eq!(two.kappa_domain(KappaDomain::Both), Err(Error::EmptyDomain));
        let one = integers(3, 3);
        assert_eq!(
            one.kappa_domain(KappaDomain::Delta),
            Err(Error::EmptyDomain)
        );
        assert_eq!(
            one.check_kappa(3.0, KappaDomain::Delta),
            Err(Error::EmptyDomain)
        );

        assert!(ts.check_kappa(4.0, KappaDomain::Delta).is_err());
        assert!(ts.check_kappa(4.0, KappaDomain::Nabla).is_ok());
        assert!(z.check_kappa(0.0, KappaDomain::Nabla).is_err());
        assert!(z.check_kappa(0.0, KappaDomain::Delta).is_ok());
    }

    #[test]
    fn grid_decomposition() {
        let ts = example();
        let parts = ts.grid(0.0, 4.0).unwrap();
        assert_eq!(
            parts,
            vec![
                GridPart::Interval { lo: 0.0, hi: 1.0 },
                GridPart::Point(ScatteredPoint {
                    t: 1.0,
                    mu: 1.0,
                    nu: 0.0,
                    gamma: 1.0
                }),
                GridPart::Point(ScatteredPoint {
                    t: 2.0,
                    mu: 2.0,
                    nu: 1.0,
                    gamma: 2.0 / 3.0
                }),
                GridPart::Point(ScatteredPoint {
                    t: 4.0,
                    mu: 0.0,
                    nu: 2.0,
                    gamma: 0.0
                }),
            ]
        );
        let unit = TimeScale::interval(0.0, 1.0).unwrap();
        assert_eq!(
            unit.grid(0.0, 1.0).unwrap(),
            vec![GridPart::Interval { lo: 0.0, hi: 1.0 }]
        );
        assert!(ts.grid(2.0, 2.0).unwrap().is_empty());
        assert!(ts.grid(0.0, 3.0).is_err());
        // sub-range of a continuum piece
        assert_eq!(
            unit.grid(0.25, 0.5).unwrap(),
            vec![GridPart::Interval { lo: 0.25, hi: 0.5 }]
        );
    }

    #[test]
    fn canonical_form() {
        let a = TimeScale::new([
            Segment::point(4.0).unwrap(),
            Segment::new(0.5, 1.0).unwrap(),
            Segment::point(2.0).unwrap(),
            Segment::new(0.0, 0.5).unwrap(),
            Segment::point(0.75).unwrap(),
        ])
        .unwrap();
        assert_eq!(a, example());
        assert!(Segment::new(1.0, 0.0).is_err());
        assert!(Segment::new(f64::NAN, 0.0).is_err());
        assert_eq!(TimeScale::new([]), Err(Error::EmptyScale));
    }

    #[test]
    fn snapping() {
        let ts = TimeScale::uniform(0.1, 0.0, 1.0).unwrap();
        assert_eq!(ts.segments().len(), 11);
        let p = ts.snap(0.3, EPS_POINT).unwrap();
        assert!(ts.contains(p));
        assert!(ts.snap(0.35, EPS_POINT).is_none());
    }

    #[test]
    fn uniform_windows() {
        assert_eq!(TimeScale::uniform(1.0, 0.0, 2.0).unwrap(), integers(0, 2));
        assert!(matches!(
            TimeScale::uniform(0.0, 0.0, 2.0),
            Err(Error::InvalidStep { .. })
        ));
        assert!(matches!(
            TimeScale::uniform(-1.0, 0.0, 2.0),
            Err(Error::InvalidStep { .. })
        ));
        assert!(TimeScale::uniform(1.0, 2.0, 0.0).is_err());
    }

    #[test]
    fn display_uses_scale_grammar() {
        assert_eq!(example().to_string(), "[0.0, 1.0] u {2.0, 4.0}");
        assert_eq!(integers(0, 2).to_string(), "{0.0, 1.0, 2.0}");
    }
}
