//! Unweighted deciders for centers on the coordinate axes, two rays (corner), or the
//! x-axis plus the lower y-ray (T-junction).
//!
//! Points that only one axis can reach are handled by the outside-in greedy. Its stabs
//! at distance at least `r` from the origin can always be kept: every point reachable
//! from both axes has an interval reaching within `r` of the origin, so moving a stab
//! outward never covers anything extra. The innermost group left over on each half-axis
//! contains the point at distance `r`; it collapses to the intersection of its
//! intervals and joins the points of the center square in a residual problem solved by
//! sweeping a lone center along one axis.

mod tree;

pub use tree::{greedy_piercing, ActiveSet, ColoredIntervalTree, ShortestIntervalHeap};

use crate::frontier::{sweep_min_piercing, SweepOptions};
use crate::geometry::{Center, FeasibilityResult, Instance, Interval, LineLayout, LineTag, Solution, WeightedPoint};

type Item = (Option<Interval>, Option<Interval>);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Classification {
    /// `|x| > r`: only x-axis centers can reach these.
    pub x_mandatory: Vec<usize>,
    /// `|y| > r`: only y-axis centers can reach these.
    pub y_mandatory: Vec<usize>,
    pub square: Vec<usize>,
    pub dead: Vec<usize>,
}

pub fn classify_points(points: &[WeightedPoint], r: f64) -> Classification {
    let mut c = Classification::default();
    for p in points {
        match (p.x.abs() > r, p.y.abs() > r) {
            (true, true) => c.dead.push(p.id),
            (true, false) => c.x_mandatory.push(p.id),
            (false, true) => c.y_mandatory.push(p.id),
            (false, false) => c.square.push(p.id),
        }
    }
    c
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Positive,
    Negative,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AxisCover {
    pub count: usize,
    /// Outermost first.
    pub stabs: Vec<f64>,
    /// Ids from either input list pierced by some stab.
    pub covered: Vec<usize>,
}

/// Outside-in greedy on one half-axis: stab at the inner endpoint of the outermost
/// interval not yet pierced. `others` only contribute to `covered`.
pub fn greedy_axis_cover(mandatory: &[(usize, Interval)], others: &[(usize, Interval)], side: Side) -> AxisCover {
    let flip = |iv: &Interval| if side == Side::Positive { *iv } else { iv.mirrored() };
    let mut ivs: Vec<Interval> = mandatory.iter().map(|(_, iv)| flip(iv)).collect();
    ivs.sort_by(|a, b| b.lo.total_cmp(&a.lo).then(b.hi.total_cmp(&a.hi)));
    let mut stabs: Vec<f64> = Vec::new();
    for iv in &ivs {
        if stabs.last().is_none_or(|&s| s > iv.hi) {
            stabs.push(iv.lo);
        }
    }
    let covered = mandatory
        .iter()
        .chain(others)
        .filter(|(_, iv)| {
            let iv = flip(iv);
            stabs.iter().any(|&s| iv.contains(s))
        })
        .map(|(id, _)| *id)
        .collect();
    if side == Side::Negative {
        for s in &mut stabs {
            *s = -*s;
        }
    }
    AxisCover { count: stabs.len(), stabs, covered }
}

fn axis_item(iv: Interval, line: LineTag) -> Item {
    match line {
        LineTag::L1 => (Some(iv), None),
        LineTag::L2 => (None, Some(iv)),
    }
}

fn get(item: &Item, line: LineTag) -> Option<Interval> {
    match line {
        LineTag::L1 => item.0,
        LineTag::L2 => item.1,
    }
}

fn pierced_by(item: &Item, stabs: &[(LineTag, f64)]) -> bool {
    stabs.iter().any(|&(line, t)| get(item, line).is_some_and(|iv| iv.contains(t)))
}

/// Fixes the safe outside-in stabs and returns them with the residual items.
fn reduce(items: &[Item], r: f64) -> (Vec<(LineTag, f64)>, Vec<Item>) {
    let mut fixed: Vec<(LineTag, f64)> = Vec::new();
    let mut residual: Vec<Item> = Vec::new();
    for line in [LineTag::L1, LineTag::L2] {
        let mut halves: [Vec<(usize, Interval)>; 2] = [Vec::new(), Vec::new()];
        for (i, it) in items.iter().enumerate() {
            if get(it, line.other()).is_some() {
                continue;
            }
            let iv = get(it, line).expect("dead items are rejected before reduction");
            if iv.lo > 0.0 {
                halves[0].push((i, iv));
            } else if iv.hi < 0.0 {
                halves[1].push((i, iv));
            } else {
                residual.push(*it);
            }
        }
        for (half, side) in halves.iter().zip([Side::Positive, Side::Negative]) {
            let cover = greedy_axis_cover(half, &[], side);
            let keep: Vec<f64> = cover.stabs.iter().copied().take_while(|s| s.abs() >= r).collect();
            let rest: Vec<Interval> =
                half.iter().map(|(_, iv)| *iv).filter(|iv| !keep.iter().any(|&s| iv.contains(s))).collect();
            fixed.extend(keep.iter().map(|&s| (line, s)));
            let anchor = if side == Side::Positive { r } else { -r };
            if !rest.is_empty() && rest.iter().all(|iv| iv.contains(anchor)) {
                let lo = rest.iter().map(|iv| iv.lo).fold(f64::NEG_INFINITY, f64::max);
                let hi = rest.iter().map(|iv| iv.hi).fold(f64::INFINITY, f64::min);
                residual.push(axis_item(Interval::new(lo, hi), line));
            } else {
                residual.extend(rest.into_iter().map(|iv| axis_item(iv, line)));
            }
        }
    }
    residual.extend(items.iter().filter(|it| it.0.is_some() && it.1.is_some() && !pierced_by(it, &fixed)).copied());
    (fixed, residual)
}

/// Minimum stabs on `line` for the given intervals, with positions.
fn one_axis(ivs: impl Iterator<Item = Interval>, line: LineTag) -> Vec<(LineTag, f64)> {
    let mut v: Vec<Interval> = ivs.collect();
    greedy_piercing(&mut v).into_iter().map(|t| (line, t)).collect()
}

/// Covers `items` with at most `budget` stabs where at least one axis gets at most one stab.
fn solve_residual(items: &[Item], budget: usize, four: Option<&[(LineTag, f64)]>) -> Option<Vec<(LineTag, f64)>> {
    if items.is_empty() {
        return Some(Vec::new());
    }
    if let Some(f) = four {
        if budget >= f.len() {
            return Some(f.to_vec());
        }
    }
    for line in [LineTag::L1, LineTag::L2] {
        if items.iter().all(|it| get(it, line).is_some()) {
            let stabs = one_axis(items.iter().filter_map(|it| get(it, line)), line);
            if stabs.len() <= budget {
                return Some(stabs);
            }
        }
    }
    if budget == 0 {
        return None;
    }
    for lone in [LineTag::L2, LineTag::L1] {
        if let Some(s) = lone_sweep(items, lone, budget - 1) {
            return Some(s);
        }
    }
    None
}

/// One stab on `lone`; the items it misses must be pierced on the other axis with at most `m` stabs.
fn lone_sweep(items: &[Item], lone: LineTag, m: usize) -> Option<Vec<(LineTag, f64)>> {
    let other = lone.other();
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for it in items.iter().filter(|it| get(it, other).is_none()) {
        let iv = get(it, lone)?;
        lo = lo.max(iv.lo);
        hi = hi.min(iv.hi);
    }
    if lo > hi {
        return None;
    }
    // Items that may still need the other axis, indexed densely.
    let flex: Vec<(Option<Interval>, Interval)> =
        items.iter().filter_map(|it| get(it, other).map(|o| (get(it, lone), o))).collect();
    let mut events: Vec<f64> = flex
        .iter()
        .filter_map(|(l, _)| *l)
        .flat_map(|iv| [iv.lo, iv.hi])
        .chain([lo, hi])
        .filter(|t| t.is_finite() && lo <= *t && *t <= hi)
        .collect();
    events.sort_by(f64::total_cmp);
    events.dedup();
    if events.is_empty() {
        events.push(if lo.is_finite() {
            lo
        } else if hi.is_finite() {
            hi
        } else {
            0.0
        });
    }
    let mut samples = Vec::with_capacity(2 * events.len());
    for (i, &t) in events.iter().enumerate() {
        if i > 0 {
            samples.push(events[i - 1] + (t - events[i - 1]) / 2.0);
        }
        samples.push(t);
    }

    let other_ivs: Vec<Interval> = flex.iter().map(|(_, o)| *o).collect();
    let mut enter: Vec<usize> = (0..flex.len()).filter(|&i| flex[i].0.is_some()).collect();
    enter.sort_by(|&a, &b| flex[a].0.unwrap().lo.total_cmp(&flex[b].0.unwrap().lo));
    let mut exit = enter.clone();
    exit.sort_by(|&a, &b| flex[a].0.unwrap().hi.total_cmp(&flex[b].0.unwrap().hi));
    let mut covered = vec![false; flex.len()];
    let mut set = (m <= 2).then(|| ActiveSet::new(&other_ivs));
    if let Some(s) = set.as_mut() {
        for i in 0..flex.len() {
            s.activate(i);
        }
    }
    let (mut ei, mut xi) = (0, 0);
    for &t in &samples {
        while ei < enter.len() && flex[enter[ei]].0.unwrap().lo <= t {
            let i = enter[ei];
            ei += 1;
            if flex[i].0.unwrap().hi >= t {
                covered[i] = true;
                if let Some(s) = set.as_mut() {
                    s.deactivate(i);
                }
            }
        }
        while xi < exit.len() && flex[exit[xi]].0.unwrap().hi < t {
            let i = exit[xi];
            xi += 1;
            if covered[i] {
                covered[i] = false;
                if let Some(s) = set.as_mut() {
                    s.activate(i);
                }
            }
        }
        let ok = match &set {
            Some(s) => s.min_stabs_at_most(m),
            None => {
                let mut act: Vec<Interval> = (0..flex.len()).filter(|&i| !covered[i]).map(|i| other_ivs[i]).collect();
                greedy_piercing(&mut act).len() <= m
            }
        };
        if ok {
            let mut stabs = vec![(lone, t)];
            stabs.extend(one_axis((0..flex.len()).filter(|&i| !covered[i]).map(|i| other_ivs[i]), other));
            debug_assert!(stabs.len() <= m + 1);
            return Some(stabs);
        }
    }
    None
}

fn four_centers(r: f64) -> [(LineTag, f64); 4] {
    [(LineTag::L1, r), (LineTag::L1, -r), (LineTag::L2, r), (LineTag::L2, -r)]
}

/// Covers the square points not in `excluded` with at most `budget` centers on the full axes.
pub fn solve_center_square(
    square_points: &[WeightedPoint],
    excluded: &[usize],
    budget: usize,
    r: f64,
) -> (bool, Vec<Center>) {
    let layout = LineLayout::Perpendicular;
    let items: Vec<Item> =
        square_points.iter().filter(|p| !excluded.contains(&p.id)).map(|p| layout.intervals(p, r)).collect();
    match solve_residual(&items, budget, Some(&four_centers(r))) {
        Some(stabs) => (true, stabs.iter().map(|&(l, t)| Center::on(&layout, l, t)).collect()),
        None => (false, Vec::new()),
    }
}

fn items_of(inst: &Instance, r: f64) -> Option<Vec<Item>> {
    let items: Vec<Item> = inst.points.iter().map(|p| inst.layout.intervals(p, r)).collect();
    items.iter().all(|it| it.0.is_some() || it.1.is_some()).then_some(items)
}

fn reduced_decision(inst: &Instance, r: f64, four: Option<&[(LineTag, f64)]>) -> FeasibilityResult {
    let Some(items) = items_of(inst, r) else {
        return FeasibilityResult::infeasible();
    };
    let (mut stabs, residual) = reduce(&items, r);
    if stabs.len() > inst.k {
        return FeasibilityResult::infeasible();
    }
    match solve_residual(&residual, inst.k - stabs.len(), four) {
        Some(extra) => {
            stabs.extend(extra);
            FeasibilityResult {
                feasible: true,
                min_count: None,
                solution: Some(Solution::from_stabs(&inst.layout, r, &stabs)),
            }
        }
        None => FeasibilityResult::infeasible(),
    }
}

/// (k, r) decision for unweighted points and centers on the full coordinate axes.
pub fn decide_perpendicular(inst: &Instance, r: f64) -> FeasibilityResult {
    assert_eq!(inst.layout, LineLayout::Perpendicular);
    reduced_decision(inst, r, Some(&four_centers(r)))
}

/// (k, r) decision for centers on the rays `x >= 0` and `y >= 0`.
///
/// On two rays from a common origin, ordering points by the larger of their interval
/// left endpoints never puts an interval entirely right of a later one on either ray,
/// so the frontier sweep applies and returns the exact minimum.
pub fn decide_corner(inst: &Instance, r: f64) -> FeasibilityResult {
    assert_eq!(inst.layout, LineLayout::Corner);
    let items: Vec<Item> = inst.points.iter().map(|p| inst.layout.intervals(p, r)).collect();
    let key = |it: &Item| match it {
        (Some(a), Some(b)) => a.lo.max(b.lo),
        (Some(a), None) | (None, Some(a)) => a.lo,
        (None, None) => f64::NEG_INFINITY,
    };
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by(|&a, &b| key(&items[a]).total_cmp(&key(&items[b])).then(a.cmp(&b)));
    let out = sweep_min_piercing(&items, &order, SweepOptions::default());
    crate::frontier::to_result(inst, r, &out)
}

/// (k, r) decision for centers on the x-axis and the ray `y <= 0`.
pub fn decide_tjunction(inst: &Instance, r: f64) -> FeasibilityResult {
    assert_eq!(inst.layout, LineLayout::TJunction);
    reduced_decision(inst, r, None)
}
