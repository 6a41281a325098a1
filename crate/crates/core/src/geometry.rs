//! Points, lines, disk-line intervals and instance validation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative slack used only when checking emitted solutions.
pub const VERIFY_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightedPoint {
    pub id: usize,
    pub x: f64,
    pub y: f64,
    pub w: f64,
}

impl WeightedPoint {
    pub fn new(id: usize, x: f64, y: f64, w: f64) -> Self {
        WeightedPoint { id, x, y, w }
    }

    pub fn unit(id: usize, x: f64, y: f64) -> Self {
        WeightedPoint { id, x, y, w: 1.0 }
    }
}

/// Closed segment `[lo, hi]` on a line, in that line's own coordinate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "interval [{lo}, {hi}] is reversed");
        Interval { lo, hi }
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    /// Intersection with `[lo, hi]`, `None` when empty.
    pub fn clip(&self, lo: f64, hi: f64) -> Option<Interval> {
        let a = self.lo.max(lo);
        let b = self.hi.min(hi);
        (a <= b).then_some(Interval { lo: a, hi: b })
    }

    pub fn mirrored(&self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

/// Which of the two constraining lines a stab sits on.
///
/// For the axis layouts `L1` is the x-axis and `L2` the y-axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LineTag {
    L1,
    L2,
}

impl LineTag {
    pub fn other(self) -> LineTag {
        match self {
            LineTag::L1 => LineTag::L2,
            LineTag::L2 => LineTag::L1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LineLayout {
    /// Horizontal lines `y = y1` (L1) and `y = y2` (L2), with `y1 > y2`.
    Parallel { y1: f64, y2: f64 },
    /// Full x- and y-axes.
    Perpendicular,
    /// Rays `x >= 0` on the x-axis and `y >= 0` on the y-axis.
    Corner,
    /// Full x-axis plus the ray `y <= 0` on the y-axis.
    TJunction,
}

impl LineLayout {
    pub fn is_axes(&self) -> bool {
        !matches!(self, LineLayout::Parallel { .. })
    }

    /// Admissible coordinate range of a stab on `line`.
    pub fn range(&self, line: LineTag) -> (f64, f64) {
        const INF: f64 = f64::INFINITY;
        match (self, line) {
            (LineLayout::Parallel { .. }, _) | (LineLayout::Perpendicular, _) => (-INF, INF),
            (LineLayout::Corner, _) => (0.0, INF),
            (LineLayout::TJunction, LineTag::L1) => (-INF, INF),
            (LineLayout::TJunction, LineTag::L2) => (-INF, 0.0),
        }
    }

    /// Planar location of a stab at `position` on `line`.
    pub fn planar(&self, line: LineTag, position: f64) -> (f64, f64) {
        match (self, line) {
            (LineLayout::Parallel { y1, .. }, LineTag::L1) => (position, *y1),
            (LineLayout::Parallel { y2, .. }, LineTag::L2) => (position, *y2),
            (_, LineTag::L1) => (position, 0.0),
            (_, LineTag::L2) => (0.0, position),
        }
    }

    /// The part of `line` within weighted distance `r` of `p`, clipped to the admissible range.
    pub fn interval(&self, p: &WeightedPoint, line: LineTag, r: f64) -> Option<Interval> {
        let raw = match (self, line) {
            (LineLayout::Parallel { y1, .. }, LineTag::L1) => interval_on_horizontal_line(p, *y1, r),
            (LineLayout::Parallel { y2, .. }, LineTag::L2) => interval_on_horizontal_line(p, *y2, r),
            (_, LineTag::L1) => interval_on_horizontal_line(p, 0.0, r),
            (_, LineTag::L2) => interval_on_vertical_line(p, 0.0, r),
        }?;
        let (lo, hi) = self.range(line);
        raw.clip(lo, hi)
    }

    /// Both intervals of `p` at radius `r`.
    pub fn intervals(&self, p: &WeightedPoint, r: f64) -> (Option<Interval>, Option<Interval>) {
        (self.interval(p, LineTag::L1, r), self.interval(p, LineTag::L2, r))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub points: Vec<WeightedPoint>,
    pub layout: LineLayout,
    pub k: usize,
}

impl Instance {
    pub fn new(points: Vec<WeightedPoint>, layout: LineLayout, k: usize) -> Self {
        Instance { points, layout, k }
    }

    /// Builds an instance from bare coordinates, numbering points in order with unit weight.
    pub fn unweighted(coords: &[(f64, f64)], layout: LineLayout, k: usize) -> Self {
        let points = coords.iter().enumerate().map(|(i, &(x, y))| WeightedPoint::unit(i, x, y)).collect();
        Instance { points, layout, k }
    }

    pub fn weighted(coords: &[(f64, f64, f64)], layout: LineLayout, k: usize) -> Self {
        let points = coords.iter().enumerate().map(|(i, &(x, y, w))| WeightedPoint::new(i, x, y, w)).collect();
        Instance { points, layout, k }
    }

    /// Sorts points by x, ties by id.
    pub fn sort_points(&mut self) {
        self.points.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.id.cmp(&b.id)));
    }

    pub fn is_sorted(&self) -> bool {
        self.points.windows(2).all(|w| (w[0].x, w[0].id) <= (w[1].x, w[1].id))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Center {
    pub line: LineTag,
    pub position: f64,
    pub x: f64,
    pub y: f64,
}

impl Center {
    pub fn on(layout: &LineLayout, line: LineTag, position: f64) -> Self {
        let (x, y) = layout.planar(line, position);
        Center { line, position, x, y }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub radius: f64,
    pub centers: Vec<Center>,
}

impl Solution {
    pub fn from_stabs(layout: &LineLayout, radius: f64, stabs: &[(LineTag, f64)]) -> Self {
        let centers = stabs.iter().map(|&(line, pos)| Center::on(layout, line, pos)).collect();
        Solution { radius, centers }
    }
}

/// Outcome of a single (k, r) decision.
#[derive(Clone, Debug, PartialEq)]
pub struct FeasibilityResult {
    pub feasible: bool,
    /// Exact minimum number of centers, when the decider computes it.
    pub min_count: Option<usize>,
    pub solution: Option<Solution>,
}

impl FeasibilityResult {
    pub fn infeasible() -> Self {
        FeasibilityResult { feasible: false, min_count: None, solution: None }
    }
}

/// `[p.x - s, p.x + s]` where the disk of radius `r / p.w` meets `y = line_y`.
pub fn interval_on_horizontal_line(p: &WeightedPoint, line_y: f64, r: f64) -> Option<Interval> {
    chord(p.x, (p.y - line_y).abs(), r / p.w)
}

/// Transpose of [`interval_on_horizontal_line`] for the line `x = line_x`, in y coordinates.
pub fn interval_on_vertical_line(p: &WeightedPoint, line_x: f64, r: f64) -> Option<Interval> {
    chord(p.y, (p.x - line_x).abs(), r / p.w)
}

fn chord(center: f64, dist: f64, radius: f64) -> Option<Interval> {
    if radius < dist {
        return None;
    }
    let s = (radius * radius - dist * dist).max(0.0).sqrt();
    Some(Interval { lo: center - s, hi: center + s })
}

pub fn weighted_distance(p: &WeightedPoint, q: (f64, f64)) -> f64 {
    p.w * (p.x - q.0).hypot(p.y - q.1)
}

/// Largest weighted distance from a point to its nearest center (0 for no points, infinity for no centers).
pub fn max_weighted_distance(points: &[WeightedPoint], centers: &[Center]) -> f64 {
    points
        .iter()
        .map(|p| centers.iter().map(|c| weighted_distance(p, (c.x, c.y))).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// True when `centers` fit the budget and cover every point within `radius` up to [`VERIFY_EPS`].
pub fn verify_cover(inst: &Instance, radius: f64, centers: &[Center]) -> bool {
    if centers.len() > inst.k {
        return false;
    }
    let limit = radius * (1.0 + VERIFY_EPS);
    inst.points.iter().all(|p| centers.iter().any(|c| weighted_distance(p, (c.x, c.y)) <= limit))
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InstanceError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("point {id}: weight {w} is not positive")]
    NonPositiveWeight { id: usize, w: f64 },
    #[error("point {id}: coordinates or weight are not finite")]
    NonFinite { id: usize },
    #[error("point {id}: axis layouts require unit weights, got {w}")]
    WeightedAxisLayout { id: usize, w: f64 },
    #[error("parallel layout needs y1 > y2, got y1 = {y1}, y2 = {y2}")]
    LinesNotOrdered { y1: f64, y2: f64 },
    #[error("point ids must be unique and dense in [0, n); offending id {id}")]
    BadIds { id: usize },
}

/// Checks weights, ids, layout constraints and k.
pub fn validate_instance(inst: &Instance) -> Result<(), InstanceError> {
    if inst.k == 0 {
        return Err(InstanceError::ZeroK);
    }
    if let LineLayout::Parallel { y1, y2 } = inst.layout {
        if !y1.is_finite() || !y2.is_finite() || y1 <= y2 {
            return Err(InstanceError::LinesNotOrdered { y1, y2 });
        }
    }
    let n = inst.points.len();
    let mut seen = vec![false; n];
    for p in &inst.points {
        if !(p.x.is_finite() && p.y.is_finite() && p.w.is_finite()) {
            return Err(InstanceError::NonFinite { id: p.id });
        }
        if p.w <= 0.0 {
            return Err(InstanceError::NonPositiveWeight { id: p.id, w: p.w });
        }
        if inst.layout.is_axes() && p.w != 1.0 {
            return Err(InstanceError::WeightedAxisLayout { id: p.id, w: p.w });
        }
        if p.id >= n || seen[p.id] {
            return Err(InstanceError::BadIds { id: p.id });
        }
        seen[p.id] = true;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn horizontal_intervals() {
        let iv = interval_on_horizontal_line(&WeightedPoint::new(0, 3.0, 4.0, 1.0), 0.0, 5.0).unwrap();
        assert!(approx(iv.lo, 0.0) && approx(iv.hi, 6.0));
        let iv = interval_on_horizontal_line(&WeightedPoint::new(0, 0.0, 2.0, 2.0), 0.0, 4.0).unwrap();
        assert_eq!((iv.lo, iv.hi), (0.0, 0.0));
        assert!(interval_on_horizontal_line(&WeightedPoint::new(0, 0.0, 3.0, 1.0), 0.0, 2.0).is_none());
    }

    #[test]
    fn vertical_intervals() {
        let iv = interval_on_vertical_line(&WeightedPoint::unit(0, 4.0, 3.0), 0.0, 5.0).unwrap();
        assert!(approx(iv.lo, 0.0) && approx(iv.hi, 6.0));
        let iv = interval_on_vertical_line(&WeightedPoint::unit(0, 1.0, 0.0), 0.0, 1.0).unwrap();
        assert_eq!((iv.lo, iv.hi), (0.0, 0.0));
        assert!(interval_on_vertical_line(&WeightedPoint::unit(0, 2.0, 0.0), 0.0, 1.0).is_none());
    }

    #[test]
    fn distances() {
        assert_eq!(weighted_distance(&WeightedPoint::new(0, 0.0, 0.0, 2.0), (3.0, 4.0)), 10.0);
        assert_eq!(weighted_distance(&WeightedPoint::new(0, 1.5, -2.0, 7.0), (1.5, -2.0)), 0.0);
        assert_eq!(weighted_distance(&WeightedPoint::new(0, 1.0, 1.0, 0.5), (1.0, 0.0)), 0.5);
    }

    #[test]
    fn validation() {
        let par = LineLayout::Parallel { y1: 1.0, y2: 0.0 };
        let ok = Instance::unweighted(&[(0.0, 0.0), (1.0, 0.5), (2.0, 1.0)], par, 1);
        assert_eq!(validate_instance(&ok), Ok(()));
        let zero = Instance::weighted(&[(0.0, 0.0, 1.0), (1.0, 0.0, 0.0)], par, 1);
        assert_eq!(validate_instance(&zero), Err(InstanceError::NonPositiveWeight { id: 1, w: 0.0 }));
        let heavy = Instance::weighted(&[(0.0, 0.0, 2.0)], LineLayout::Perpendicular, 1);
        assert_eq!(validate_instance(&heavy), Err(InstanceError::WeightedAxisLayout { id: 0, w: 2.0 }));
        let flipped = Instance::unweighted(&[], LineLayout::Parallel { y1: 0.0, y2: 1.0 }, 1);
        assert!(validate_instance(&flipped).is_err());
    }

    #[test]
    fn sorting_breaks_ties_by_id() {
        let mut inst = Instance::unweighted(&[(2.0, 0.0), (1.0, 0.0), (1.0, 5.0)], LineLayout::Perpendicular, 1);
        inst.points.swap(1, 2);
        inst.sort_points();
        let ids: Vec<_> = inst.points.iter().map(|p| p.id).collect();
        assert_eq!(ids, vec![1, 2, 0]);
        assert!(inst.is_sorted());
    }

    #[test]
    fn ray_clipping() {
        let p = WeightedPoint::unit(0, -0.5, 5.0);
        assert!(LineLayout::Corner.interval(&p, LineTag::L1, 1.0).is_none());
        let iv = LineLayout::Corner.interval(&p, LineTag::L2, 1.0).unwrap();
        assert!(approx(iv.lo, 5.0 - 0.75f64.sqrt()));
        let q = WeightedPoint::unit(0, 0.3, 0.5);
        let iv = LineLayout::TJunction.interval(&q, LineTag::L2, 1.0).unwrap();
        assert_eq!(iv.hi, 0.0);
    }

    #[test]
    fn intervals_grow_with_radius() {
        let p = WeightedPoint::new(0, 0.7, 2.3, 1.7);
        let mut prev: Option<Interval> = None;
        for i in 0..200 {
            let r = i as f64 * 0.05;
            let cur = interval_on_horizontal_line(&p, 0.0, r);
            if let (Some(a), Some(b)) = (prev, cur) {
                assert!(b.lo <= a.lo && a.hi <= b.hi);
            }
            assert!(prev.is_none() || cur.is_some());
            if let Some(c) = cur {
                assert!(approx(c.lo + c.hi, 2.0 * p.x));
            }
            prev = cur;
        }
    }
}
