//! Radius minimization by bisection over the monotone deciders.

use crate::frontier::decide_parallel;
use crate::geometry::{weighted_distance, FeasibilityResult, Instance, LineLayout, Solution};
use crate::perpendicular::{decide_corner, decide_perpendicular, decide_tjunction};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

/// Dispatches to the decider for the instance layout.
pub fn decide(inst: &Instance, r: f64) -> FeasibilityResult {
    match inst.layout {
        LineLayout::Parallel { .. } => decide_parallel(inst, r),
        LineLayout::Perpendicular => decide_perpendicular(inst, r),
        LineLayout::Corner => decide_corner(inst, r),
        LineLayout::TJunction => decide_tjunction(inst, r),
    }
}

/// `hi` is the radius at which one center at a fixed admissible position covers everything.
pub fn initial_bracket(inst: &Instance) -> Bracket {
    let worst = |c: (f64, f64)| inst.points.iter().map(|p| weighted_distance(p, c)).fold(0.0, f64::max);
    let hi = match inst.layout {
        LineLayout::Parallel { y1, y2 } => {
            let (lo_x, hi_x) =
                inst.points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.x), b.max(p.x)));
            let mid = if inst.points.is_empty() { 0.0 } else { lo_x + (hi_x - lo_x) / 2.0 };
            worst((mid, y1)).min(worst((mid, y2)))
        }
        _ => worst((0.0, 0.0)),
    };
    Bracket { lo: 0.0, hi }
}

/// Smallest feasible radius up to `rel_tol`, with the number of decider calls.
pub fn minimize_radius<F: FnMut(f64) -> bool>(mut feasible: F, bracket: Bracket, rel_tol: f64) -> (f64, usize) {
    assert!(rel_tol > 0.0);
    let mut calls = 1;
    if feasible(bracket.lo) {
        return (bracket.lo, calls);
    }
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    // The bracket is feasible in exact arithmetic; rounding in the intervals can push it just over.
    calls += 1;
    while !feasible(hi) {
        lo = hi;
        hi = if hi > 0.0 { hi * (1.0 + 1e-6) } else { f64::MIN_POSITIVE };
        calls += 1;
    }
    while hi - lo > rel_tol * hi.max(1.0) {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        calls += 1;
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (hi, calls)
}

/// Radius at which two intervals on a line just touch, solved from above.
fn touching_radius(hw: [(f64, f64); 2], d: f64) -> Option<f64> {
    let f = |r: f64| hw.iter().map(|&(w, h)| ((r / w).powi(2) - h * h).max(0.0).sqrt()).sum::<f64>();
    let r0 = hw.iter().map(|&(w, h)| w * h).fold(0.0, f64::max);
    if f(r0) >= d {
        return None;
    }
    let (mut lo, mut hi) = (r0, hw.iter().map(|&(w, h)| w * (h * h + d * d).sqrt()).fold(0.0, f64::max));
    while hi - lo > 1e-12 * hi.max(1.0) {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) >= d {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// Tangency radii and pairwise touching radii on each line, sorted and deduplicated.
pub fn candidate_radii_parallel(inst: &Instance) -> Vec<f64> {
    let LineLayout::Parallel { y1, y2 } = inst.layout else {
        panic!("candidate radii need a parallel layout");
    };
    let mut pts = inst.points.clone();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.id.cmp(&b.id)));
    let mut out = vec![0.0];
    for line in [y1, y2] {
        out.extend(pts.iter().map(|p| p.w * (p.y - line).abs()));
        for (i, p) in pts.iter().enumerate() {
            for q in &pts[i + 1..] {
                let d = q.x - p.x;
                if d > 0.0 {
                    out.extend(touching_radius([(p.w, (p.y - line).abs()), (q.w, (q.y - line).abs())], d));
                }
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    pub rel_tol: f64,
    pub exact_candidates: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { rel_tol: 1e-9, exact_candidates: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveReport {
    pub solution: Option<Solution>,
    pub decider_calls: usize,
    pub min_count: Option<usize>,
}

pub fn solve(inst: &Instance) -> SolveReport {
    solve_with(inst, SolveOptions::default())
}

pub fn solve_with(inst: &Instance, opts: SolveOptions) -> SolveReport {
    let mut calls = 0;
    let mut feasible = |r: f64| {
        calls += 1;
        decide(inst, r).feasible
    };
    let mut bracket = initial_bracket(inst);
    if opts.exact_candidates && matches!(inst.layout, LineLayout::Parallel { .. }) {
        // A candidate can miss feasibility by an ulp, so the list only narrows the bracket
        // to one gap and bisection finishes inside it.
        let cands = candidate_radii_parallel(inst);
        let idx = cands.partition_point(|&r| !feasible(r));
        if idx == 0 {
            bracket = Bracket { lo: 0.0, hi: 0.0 };
        } else if idx < cands.len() {
            bracket = Bracket { lo: cands[idx - 1], hi: cands[idx] };
        }
    }
    let r = minimize_radius(&mut feasible, bracket, opts.rel_tol).0;
    let res = decide(inst, r);
    calls += 1;
    SolveReport { solution: res.solution, decider_calls: calls, min_count: res.min_count }
}
