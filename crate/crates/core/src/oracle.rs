//! Exhaustive reference solvers for small instances.
//!
//! Any stab can slide right to the nearest right endpoint of an interval it
//! pierces without losing anything, so right endpoints are the only candidate
//! positions. Minimum cover over those candidates is computed by a DP over
//! subsets of points.

use thiserror::Error;

use crate::geometry::{Instance, Interval, LineLayout, LineTag, WeightedPoint};
use crate::optimizer::initial_bracket;

/// Largest point count the oracles accept.
pub const MAX_ORACLE_POINTS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("oracle accepts at most {max} points, got {n}")]
    TooManyPoints { n: usize, max: usize },
    #[error("resolution must be positive, got {0}")]
    BadResolution(f64),
}

fn guard(n: usize) -> Result<(), OracleError> {
    if n > MAX_ORACLE_POINTS {
        return Err(OracleError::TooManyPoints { n, max: MAX_ORACLE_POINTS });
    }
    Ok(())
}

/// Right-endpoint candidates per line, sorted and deduplicated.
pub fn stab_candidates(items: &[(Option<Interval>, Option<Interval>)]) -> [Vec<f64>; 2] {
    let mut out = [Vec::new(), Vec::new()];
    for (a, b) in items {
        if let Some(i) = a {
            out[0].push(i.hi);
        }
        if let Some(i) = b {
            out[1].push(i.hi);
        }
    }
    for v in &mut out {
        v.sort_by(f64::total_cmp);
        v.dedup();
    }
    out
}

/// Exact minimum number of stabs covering every item, `None` if some item has no interval.
pub fn min_cover(items: &[(Option<Interval>, Option<Interval>)]) -> Option<usize> {
    let n = items.len();
    assert!(n <= 20, "subset DP over {n} items");
    if items.iter().any(|(a, b)| a.is_none() && b.is_none()) {
        return None;
    }
    let cands = stab_candidates(items);
    let mut masks: Vec<u32> = Vec::new();
    for (line, list) in cands.iter().enumerate() {
        for &t in list {
            let mut m = 0u32;
            for (i, it) in items.iter().enumerate() {
                let iv = if line == 0 { it.0 } else { it.1 };
                if iv.is_some_and(|iv| iv.contains(t)) {
                    m |= 1 << i;
                }
            }
            masks.push(m);
        }
    }
    masks.sort_unstable();
    masks.dedup();
    let full = (1u32 << n) - 1;
    let mut dist = vec![u8::MAX; 1 << n];
    dist[0] = 0;
    for m in 0..=full {
        let d = dist[m as usize];
        if d == u8::MAX {
            continue;
        }
        for &c in &masks {
            let next = (m | c) as usize;
            if dist[next] > d + 1 {
                dist[next] = d + 1;
            }
        }
    }
    Some(dist[full as usize] as usize)
}

/// Minimum stabs on `y = lines.0` (L1) and `y = lines.1` (L2); `None` if some disk misses
/// both lines or the minimum exceeds `cap`.
pub fn brute_force_min_piercing_two_lines(
    points: &[WeightedPoint],
    lines: (f64, f64),
    r: f64,
    cap: usize,
) -> Result<Option<usize>, OracleError> {
    guard(points.len())?;
    let layout = LineLayout::Parallel { y1: lines.0, y2: lines.1 };
    let items: Vec<_> = points.iter().map(|p| layout.intervals(p, r)).collect();
    Ok(min_cover(&items).filter(|&m| m <= cap))
}

/// Exact minimum number of centers for any layout, rays respected.
pub fn brute_force_min_count(inst: &Instance, r: f64) -> Result<Option<usize>, OracleError> {
    guard(inst.points.len())?;
    let items: Vec<_> = inst.points.iter().map(|p| inst.layout.intervals(p, r)).collect();
    Ok(min_cover(&items))
}

/// Whether `k` centers on the axes (or rays) of `layout` cover all points within `r`.
pub fn brute_force_perpendicular(
    points: &[WeightedPoint],
    r: f64,
    k: usize,
    layout: LineLayout,
) -> Result<bool, OracleError> {
    let inst = Instance { points: points.to_vec(), layout, k };
    Ok(brute_force_min_count(&inst, r)?.is_some_and(|m| m <= k))
}

/// Smallest multiple of `resolution` at which the instance is feasible.
pub fn grid_search_radius(inst: &Instance, resolution: f64) -> Result<f64, OracleError> {
    if resolution.is_nan() || resolution <= 0.0 {
        return Err(OracleError::BadResolution(resolution));
    }
    guard(inst.points.len())?;
    let feasible =
        |m: u64| -> bool { brute_force_min_count(inst, m as f64 * resolution).unwrap().is_some_and(|c| c <= inst.k) };
    let hi_r = initial_bracket(inst).hi;
    let mut hi = (hi_r / resolution).ceil() as u64;
    while !feasible(hi) {
        hi = hi * 2 + 1;
    }
    if feasible(0) {
        return Ok(0.0);
    }
    let mut lo = 0u64;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi as f64 * resolution)
}

/// Clipped intervals of every point, for callers that want the raw oracle inputs.
pub fn item_intervals(inst: &Instance, r: f64) -> Vec<(Option<Interval>, Option<Interval>)> {
    inst.points
        .iter()
        .map(|p| (inst.layout.interval(p, LineTag::L1, r), inst.layout.interval(p, LineTag::L2, r)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_buddy_point() {
        let pts = [WeightedPoint::unit(0, 0.0, 1.0)];
        assert_eq!(brute_force_min_piercing_two_lines(&pts, (2.0, 0.0), 1.5, 6), Ok(Some(1)));
    }

    #[test]
    fn two_disjoint_on_lower_line() {
        let pts = [WeightedPoint::unit(0, 0.0, 0.0), WeightedPoint::unit(1, 10.0, 0.0)];
        assert_eq!(brute_force_min_piercing_two_lines(&pts, (5.0, 0.0), 1.0, 6), Ok(Some(2)));
        assert_eq!(brute_force_min_piercing_two_lines(&pts, (5.0, 0.0), 1.0, 1), Ok(None));
    }

    #[test]
    fn size_guard() {
        let pts: Vec<_> = (0..13).map(|i| WeightedPoint::unit(i, i as f64, 0.0)).collect();
        assert!(brute_force_min_piercing_two_lines(&pts, (1.0, 0.0), 1.0, 6).is_err());
    }

    #[test]
    fn perpendicular_corners() {
        let pts: Vec<_> = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| WeightedPoint::unit(i, x, y))
            .collect();
        assert_eq!(brute_force_perpendicular(&pts, 1.0, 2, LineLayout::Perpendicular), Ok(true));
        assert_eq!(brute_force_perpendicular(&pts, 1.0, 1, LineLayout::Perpendicular), Ok(false));
        let far = [WeightedPoint::unit(0, 5.0, 5.0)];
        assert_eq!(brute_force_perpendicular(&far, 1.0, 6, LineLayout::Perpendicular), Ok(false));
    }

    #[test]
    fn grid_search_examples() {
        let par = LineLayout::Parallel { y1: 100.0, y2: 0.0 };
        let inst = Instance::unweighted(&[(0.0, 0.0), (4.0, 0.0)], par, 1);
        let r = grid_search_radius(&inst, 1e-4).unwrap();
        assert!((r - 2.0).abs() < 1.5e-4, "{r}");
        let on_lines = Instance::unweighted(&[(0.0, 0.0), (3.0, 100.0)], par, 2);
        assert_eq!(grid_search_radius(&on_lines, 1e-4), Ok(0.0));
    }

    #[test]
    fn invariant_under_permutation_and_translation() {
        let par = LineLayout::Parallel { y1: 2.0, y2: 0.0 };
        let coords = [(0.0, 0.5, 1.0), (1.7, 1.2, 2.0), (3.1, 0.1, 0.7), (4.0, 1.9, 1.3), (6.5, 0.9, 1.0)];
        let base = min_cover(&item_intervals(&Instance::weighted(&coords, par, 1), 0.9));
        let mut rev: Vec<_> = coords.iter().rev().map(|&(x, y, w)| (x + 13.25, y, w)).collect();
        rev.rotate_left(2);
        assert_eq!(min_cover(&item_intervals(&Instance::weighted(&rev, par, 1), 0.9)), base);
    }
}
