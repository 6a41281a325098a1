//! Frontier-configuration sweep for piercing interval pairs on two lines.
//!
//! Each item carries an optional interval on each line; the sweep finds the
//! minimum number of stabs such that every item has one of its intervals
//! stabbed. Items must arrive in an order where an earlier interval never lies
//! entirely to the right of a later one on the same line. Sorting weighted
//! points by x gives such an order for two parallel lines.

use std::collections::BTreeMap;
use std::ops::Bound::{self, Excluded, Included, Unbounded};
use std::rc::Rc;

use ordered_float::OrderedFloat;

use crate::geometry::{FeasibilityResult, Instance, Interval, LineLayout, LineTag, Solution};

type Key = OrderedFloat<f64>;

/// Position of a stab that has not been placed yet. Compares below every real position.
pub const ABSENT: f64 = f64::NEG_INFINITY;

/// Persistent list of fixed stabs, newest first.
#[derive(Debug)]
pub struct PierceChain {
    pub line: LineTag,
    pub position: f64,
    pub parent: Chain,
}

pub type Chain = Option<Rc<PierceChain>>;

impl Drop for PierceChain {
    // Chains get as long as the answer; unlink them in a loop instead of recursively.
    fn drop(&mut self) {
        let mut next = self.parent.take();
        while let Some(rc) = next {
            next = match Rc::try_unwrap(rc) {
                Ok(mut node) => node.parent.take(),
                Err(_) => None,
            };
        }
    }
}

fn push(chain: &Chain, line: LineTag, position: f64) -> Chain {
    Some(Rc::new(PierceChain { line, position, parent: chain.clone() }))
}

fn chain_len(chain: &Chain) -> usize {
    let mut n = 0;
    let mut cur = chain;
    while let Some(node) = cur {
        n += 1;
        cur = &node.parent;
    }
    n
}

/// A class of partial solutions: `z` stabs, the rightmost one on each line still free
/// to move left down to `x1` / `x2`.
#[derive(Clone, Debug)]
pub struct Configuration {
    pub x1: f64,
    pub x2: f64,
    pub z: u32,
    pub chain: Chain,
}

impl Configuration {
    pub fn new(x1: f64, x2: f64, z: u32) -> Self {
        Configuration { x1, x2, z, chain: None }
    }

    fn component(&self, line: LineTag) -> f64 {
        match line {
            LineTag::L1 => self.x1,
            LineTag::L2 => self.x2,
        }
    }
}

/// Closed-form domination test between two configurations of the same prefix.
///
/// A full tie at equal count dominates both ways; callers keep the incumbent.
pub fn dominates(c1: &Configuration, c2: &Configuration) -> bool {
    if c1.z + 2 <= c2.z {
        true
    } else if c1.z == c2.z {
        c1.x1 >= c2.x1 && c1.x2 >= c2.x2
    } else if c1.z + 1 == c2.z {
        c1.x1 >= c2.x1 || c1.x2 >= c2.x2
    } else {
        false
    }
}

/// Members of one count: x1 strictly ascending, x2 strictly descending.
#[derive(Clone, Debug, Default)]
struct Staircase {
    by_x1: BTreeMap<Key, (f64, Chain)>,
    by_x2: BTreeMap<Key, Key>,
}

impl Staircase {
    fn insert(&mut self, x1: f64, x2: f64, chain: Chain) {
        self.by_x1.insert(OrderedFloat(x1), (x2, chain));
        self.by_x2.insert(OrderedFloat(x2), OrderedFloat(x1));
    }

    fn remove(&mut self, x1: Key) {
        if let Some((x2, _)) = self.by_x1.remove(&x1) {
            self.by_x2.remove(&OrderedFloat(x2));
        }
    }

    fn max_x1(&self) -> f64 {
        self.by_x1.last_key_value().map_or(ABSENT, |(k, _)| k.0)
    }

    fn max_x2(&self) -> f64 {
        self.by_x2.last_key_value().map_or(ABSENT, |(k, _)| k.0)
    }

    fn len(&self) -> usize {
        self.by_x1.len()
    }
}

#[derive(Clone, Debug, Default)]
pub struct FrontierSet {
    levels: BTreeMap<u32, Staircase>,
    created: usize,
}

/// Best replacement found so far for one line: (count, other component, chain).
type Candidate = Option<(u32, f64, Chain)>;

fn better(cand: &Candidate, z: u32, other: f64) -> bool {
    match cand {
        None => true,
        Some((cz, co, _)) => z < *cz || (z == *cz && other > *co),
    }
}

fn lower_max(a: Bound<Key>, b: Bound<Key>) -> Bound<Key> {
    match (a, b) {
        (Unbounded, x) | (x, Unbounded) => x,
        (Included(p), Included(q)) => Included(p.max(q)),
        (Excluded(p), Excluded(q)) => Excluded(p.max(q)),
        (Included(p), Excluded(q)) | (Excluded(q), Included(p)) => {
            if p > q {
                Included(p)
            } else {
                Excluded(q)
            }
        }
    }
}

fn upper_min(a: Bound<Key>, b: Bound<Key>) -> Bound<Key> {
    match (a, b) {
        (Unbounded, x) | (x, Unbounded) => x,
        (Included(p), Included(q)) => Included(p.min(q)),
        (Excluded(p), Excluded(q)) => Excluded(p.min(q)),
        (Included(p), Excluded(q)) | (Excluded(q), Included(p)) => {
            if p < q {
                Included(p)
            } else {
                Excluded(q)
            }
        }
    }
}

fn nonempty(lo: &Bound<Key>, hi: &Bound<Key>) -> bool {
    match (lo, hi) {
        (Unbounded, _) | (_, Unbounded) => true,
        (Included(a), Included(b)) => a <= b,
        (Included(a), Excluded(b)) | (Excluded(a), Included(b)) | (Excluded(a), Excluded(b)) => a < b,
    }
}

type Range = (Bound<Key>, Bound<Key>);

impl FrontierSet {
    /// The frontier of the empty prefix: a single configuration with no stabs.
    pub fn new() -> Self {
        let mut f = FrontierSet::default();
        f.levels.entry(0).or_default().insert(ABSENT, ABSENT, None);
        f.created = 1;
        f
    }

    /// Builds a frontier from explicit members, pruning dominated ones.
    pub fn from_members(members: &[Configuration]) -> Self {
        let mut f = FrontierSet::default();
        for c in members {
            f.insert_pruned(c.x1, c.x2, c.z, c.chain.clone());
        }
        f
    }

    pub fn len(&self) -> usize {
        self.levels.values().map(Staircase::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Configurations inserted since construction, including the initial one.
    pub fn created(&self) -> usize {
        self.created
    }

    /// Members ordered by count, then x1.
    pub fn members(&self) -> Vec<Configuration> {
        let mut out = Vec::with_capacity(self.len());
        for (&z, s) in &self.levels {
            for (x1, (x2, chain)) in &s.by_x1 {
                out.push(Configuration { x1: x1.0, x2: *x2, z, chain: chain.clone() });
            }
        }
        out
    }

    /// A member of minimum count.
    pub fn extract_best(&self) -> Option<Configuration> {
        let (&z, s) = self.levels.iter().next()?;
        let (x1, (x2, chain)) = s.by_x1.iter().next()?;
        Some(Configuration { x1: x1.0, x2: *x2, z, chain: chain.clone() })
    }

    /// Update for an item whose only nonempty interval is `j`, on `line`.
    pub fn apply_nonbuddy(&mut self, j: Interval, line: LineTag) {
        match line {
            LineTag::L1 => self.apply(Some(j), None),
            LineTag::L2 => self.apply(None, Some(j)),
        }
    }

    /// Update for an item with intervals on both lines.
    pub fn apply_buddy(&mut self, j1: Interval, j2: Interval) {
        self.apply(Some(j1), Some(j2))
    }

    /// Processes one item. Members stabbing neither interval are removed; each line with a
    /// nonempty interval contributes its best replacement built from the removed members.
    pub fn apply(&mut self, j1: Option<Interval>, j2: Option<Interval>) {
        assert!(j1.is_some() || j2.is_some(), "item with no interval reached the frontier");
        let mut cand1: Candidate = None;
        let mut cand2: Candidate = None;
        let mut emptied = Vec::new();
        for (&z, stair) in self.levels.iter_mut() {
            let doomed = doomed_ranges(stair, j1, j2);
            let mut keys = Vec::new();
            for (lo, hi) in doomed {
                for (x1, (x2, chain)) in stair.by_x1.range((lo, hi)) {
                    keys.push(*x1);
                    if let Some(j) = j1 {
                        let fresh = x1.0 < j.lo;
                        let cz = z + fresh as u32;
                        if better(&cand1, cz, *x2) {
                            let ch =
                                if fresh && x1.0 != ABSENT { push(chain, LineTag::L1, x1.0) } else { chain.clone() };
                            cand1 = Some((cz, *x2, ch));
                        }
                    }
                    if let Some(j) = j2 {
                        let fresh = *x2 < j.lo;
                        let cz = z + fresh as u32;
                        if better(&cand2, cz, x1.0) {
                            let ch = if fresh && *x2 != ABSENT { push(chain, LineTag::L2, *x2) } else { chain.clone() };
                            cand2 = Some((cz, x1.0, ch));
                        }
                    }
                }
            }
            for k in keys {
                stair.remove(k);
            }
            if stair.len() == 0 {
                emptied.push(z);
            }
        }
        for z in emptied {
            self.levels.remove(&z);
        }
        if let (Some(j), Some((z, x2, chain))) = (j1, cand1) {
            self.insert_pruned(j.hi, x2, z, chain);
        }
        if let (Some(j), Some((z, x1, chain))) = (j2, cand2) {
            self.insert_pruned(x1, j.hi, z, chain);
        }
    }

    /// Inserts `(a, b; z)` unless some member dominates it, removing members it dominates.
    fn insert_pruned(&mut self, a: f64, b: f64, z: u32, chain: Chain) -> bool {
        if let Some((&zmin, _)) = self.levels.first_key_value() {
            if zmin + 2 <= z {
                return false;
            }
        }
        if z >= 1 {
            if let Some(s) = self.levels.get(&(z - 1)) {
                if s.max_x1() >= a || s.max_x2() >= b {
                    return false;
                }
            }
        }
        let (ka, kb) = (OrderedFloat(a), OrderedFloat(b));
        if let Some(s) = self.levels.get_mut(&z) {
            if let Some((_, (x2, _))) = s.by_x1.range(ka..).next() {
                if *x2 >= b {
                    return false;
                }
            }
            let gone: Vec<Key> =
                s.by_x1.range(..=ka).rev().take_while(|(_, (x2, _))| *x2 <= b).map(|(k, _)| *k).collect();
            for k in gone {
                s.remove(k);
            }
        }
        if let Some(s) = self.levels.get_mut(&(z + 1)) {
            let mut gone: Vec<Key> = s.by_x1.range(..=ka).map(|(k, _)| *k).collect();
            gone.extend(s.by_x2.range(..=kb).map(|(_, x1)| *x1));
            for k in gone {
                s.remove(k);
            }
            if s.len() == 0 {
                self.levels.remove(&(z + 1));
            }
        }
        let _ = self.levels.split_off(&(z + 2));
        self.levels.entry(z).or_default().insert(a, b, chain);
        self.created += 1;
        true
    }

    /// Checks the structural invariants of a frontier; `Err` describes the first violation.
    pub fn check_invariants(&self) -> Result<(), String> {
        let m = self.members();
        if m.is_empty() {
            return Err("frontier is empty".into());
        }
        let zmin = m.iter().map(|c| c.z).min().unwrap();
        let zmax = m.iter().map(|c| c.z).max().unwrap();
        if zmax > zmin + 1 {
            return Err(format!("counts {zmin} and {zmax} differ by more than one"));
        }
        for (i, a) in m.iter().enumerate() {
            if a.z as usize != chain_len(&a.chain) + (a.x1 != ABSENT) as usize + (a.x2 != ABSENT) as usize {
                return Err(format!("count {} does not match the stabs of ({}, {})", a.z, a.x1, a.x2));
            }
            for (j, b) in m.iter().enumerate() {
                if i == j {
                    continue;
                }
                if dominates(a, b) {
                    return Err(format!("({}, {}; {}) dominates ({}, {}; {})", a.x1, a.x2, a.z, b.x1, b.x2, b.z));
                }
                if a.z == b.z && (a.x1 < b.x1) != (a.x2 > b.x2) {
                    return Err(format!(
                        "equal-count members ({}, {}) and ({}, {}) do not cross",
                        a.x1, a.x2, b.x1, b.x2
                    ));
                }
                if a.z == b.z + 1 && !(a.x1 > b.x1 && a.x2 > b.x2) {
                    return Err(format!("count {} member not strictly above count {} member", a.z, b.z));
                }
            }
        }
        Ok(())
    }
}

/// Ranges of x1 holding the members that stab neither `j1` nor `j2`.
fn doomed_ranges(stair: &Staircase, j1: Option<Interval>, j2: Option<Interval>) -> Vec<Range> {
    let all: Range = (Unbounded, Unbounded);
    let outside1: Vec<Range> = match j1 {
        None => vec![all],
        Some(j) => vec![(Unbounded, Excluded(OrderedFloat(j.lo))), (Excluded(OrderedFloat(j.hi)), Unbounded)],
    };
    let outside2: Vec<Range> = match j2 {
        None => vec![all],
        Some(j) => {
            let mut v = Vec::with_capacity(2);
            if let Some((_, x1)) = stair.by_x2.range((Excluded(OrderedFloat(j.hi)), Unbounded)).next() {
                v.push((Unbounded, Included(*x1)));
            }
            if let Some((_, x1)) = stair.by_x2.range(..OrderedFloat(j.lo)).next_back() {
                v.push((Included(*x1), Unbounded));
            }
            v
        }
    };
    let mut out = Vec::with_capacity(4);
    for a in &outside1 {
        for b in &outside2 {
            let lo = lower_max(a.0, b.0);
            let hi = upper_min(a.1, b.1);
            if nonempty(&lo, &hi) {
                out.push((lo, hi));
            }
        }
    }
    out
}

/// The fixed and rightmost stabs of `c`, oldest first.
pub fn reconstruct_solution(c: &Configuration) -> Vec<(LineTag, f64)> {
    let mut out = Vec::with_capacity(c.z as usize);
    let mut cur = &c.chain;
    while let Some(node) = cur {
        out.push((node.line, node.position));
        cur = &node.parent;
    }
    out.reverse();
    for line in [LineTag::L1, LineTag::L2] {
        let x = c.component(line);
        if x != ABSENT {
            out.push((line, x));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SweepOptions {
    /// Run the quadratic invariant check after every item.
    pub check_invariants: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepStats {
    pub configs_created: usize,
    pub max_frontier: usize,
    pub invariant_violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PiercingOutcome {
    /// `None` when some item has no interval at all.
    pub min_count: Option<usize>,
    pub stabs: Vec<(LineTag, f64)>,
    pub stats: SweepStats,
}

/// Minimum piercing of interval pairs processed in the given order.
pub fn sweep_min_piercing(
    items: &[(Option<Interval>, Option<Interval>)],
    order: &[usize],
    opts: SweepOptions,
) -> PiercingOutcome {
    let mut stats = SweepStats::default();
    if order.iter().any(|&i| items[i].0.is_none() && items[i].1.is_none()) {
        return PiercingOutcome { min_count: None, stabs: Vec::new(), stats };
    }
    let mut f = FrontierSet::new();
    stats.max_frontier = 1;
    for &i in order {
        let (j1, j2) = items[i];
        f.apply(j1, j2);
        stats.max_frontier = stats.max_frontier.max(f.len());
        if opts.check_invariants {
            if let Err(e) = f.check_invariants() {
                stats.invariant_violations.push(format!("after item {i}: {e}"));
            }
        }
    }
    stats.configs_created = f.created();
    let best = f.extract_best().expect("frontier never empties");
    PiercingOutcome { min_count: Some(best.z as usize), stabs: reconstruct_solution(&best), stats }
}

/// Exact (k, r) decision for weighted points and two parallel lines.
pub fn decide_parallel(inst: &Instance, r: f64) -> FeasibilityResult {
    decide_parallel_with(inst, r, SweepOptions::default()).0
}

pub fn decide_parallel_with(inst: &Instance, r: f64, opts: SweepOptions) -> (FeasibilityResult, SweepStats) {
    assert!(matches!(inst.layout, LineLayout::Parallel { .. }), "decide_parallel needs a parallel layout");
    let items: Vec<_> = inst.points.iter().map(|p| inst.layout.intervals(p, r)).collect();
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by(|&a, &b| {
        let (p, q) = (&inst.points[a], &inst.points[b]);
        p.x.total_cmp(&q.x).then(p.id.cmp(&q.id))
    });
    let out = sweep_min_piercing(&items, &order, opts);
    (to_result(inst, r, &out), out.stats)
}

pub(crate) fn to_result(inst: &Instance, r: f64, out: &PiercingOutcome) -> FeasibilityResult {
    match out.min_count {
        None => FeasibilityResult::infeasible(),
        Some(m) => {
            let feasible = m <= inst.k;
            let solution = feasible.then(|| Solution::from_stabs(&inst.layout, r, &out.stabs));
            FeasibilityResult { feasible, min_count: Some(m), solution }
        }
    }
}
